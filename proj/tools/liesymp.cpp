// liesymp: JSON reports on Lie algebra cocycles, their integrability and the
// orbits of the induced affine actions.

#include "liesymp/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

namespace {

using liesymp::Error;
using liesymp::ErrorCode;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

liesymp::RationalVector parse_covector(const std::string& text) {
  liesymp::RationalVector out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(liesymp::parse_rational(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::usage, "cli", "cannot parse '" + item + "' in --alpha");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int emit(const std::string& verb, const liesymp::Report& report, const std::string& out_path, bool pretty) {
  const std::string text = liesymp::wrap_report(verb, report, utc_timestamp()).dump(pretty ? 2 : -1) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return liesymp::exit_usage;
    }
    out << text;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie algebra cocycles, symplectic group cocycles and affine coadjoint orbits"};
  app.require_subcommand(1);

  liesymp::RunConfig config;
  std::string alpha_text, eta_text, out_path;
  bool pretty = false;

  const std::map<std::string, std::string> descriptions{
      {"info", "Summarize a model and its notable cocycles"},
      {"h2", "Second Chevalley-Eilenberg cohomology"},
      {"extend", "Central extension by a cocycle"},
      {"theta", "Evaluate the group cocycle integrating a Lie algebra cocycle"},
      {"neeb", "Loop holonomy and the integrability verdict"},
      {"orbit", "Coadjoint, affine (with --cocycle) or extended (with --eta) orbit form"},
      {"verify", "Run every invariant check on one model"}};

  for (const auto& verb : liesymp::verbs()) {
    CLI::App* sub = app.add_subcommand(verb, descriptions.at(verb));
    auto* model = sub->add_option("--model", config.model, "Catalog model name");
    sub->add_option("--file", config.file, "Model bundle JSON")->excludes(model);
    sub->add_option("--cocycle", config.cocycle, "Notable cocycle name, or a matrix as JSON text or file");
    sub->add_option("--alpha", alpha_text, "Covector as comma-separated rationals, e.g. 0,1/2,1");
    sub->add_option("--eta", eta_text, "Central coordinate for the extended orbit");
    sub->add_option("--seed", config.seed, "Seed for sampled elements")->default_val(0);
    sub->add_option("--tol-rank", config.tol_rank, "Relative singular value cutoff")->default_val(config.tol_rank);
    sub->add_option("--quad-tol", config.quad_tol, "Quadrature tolerance")->default_val(config.quad_tol);
    sub->add_option("--path", config.path, "theta: path segments as JSON text or file");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_flag("--pretty", pretty, "Indent the JSON");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    const Error err(ErrorCode::usage, "cli", e.what());
    return emit("usage", liesymp::error_report(err), "", false);
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (!alpha_text.empty()) config.alpha = parse_covector(alpha_text);
    if (!eta_text.empty()) {
      try {
        config.eta = liesymp::parse_rational(eta_text);
      } catch (const std::exception&) {
        throw Error(ErrorCode::usage, "cli", "cannot parse --eta '" + eta_text + "'");
      }
    }
    return emit(verb, liesymp::run_verb(verb, config), out_path, pretty);
  } catch (const Error& e) {
    return emit(verb, liesymp::error_report(e), out_path, pretty);
  } catch (const std::exception& e) {
    return emit(verb, liesymp::error_report(Error(ErrorCode::invariant_failure, "cli", e.what())), out_path, pretty);
  }
}
