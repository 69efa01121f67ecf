#include "liesymp/error.hpp"
#include "liesymp/linalg.hpp"

#include <catch_amalgamated.hpp>

#include <limits>

using namespace liesymp;

TEST_CASE("rationals parse from fractions, integers and exact decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-1e-3") == Rational(-1, 1000));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("double conversion is exact") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(0.1).get_d() == 0.1);
  CHECK(rational_from_double(0.1) != Rational(1, 10));
  CHECK_THROWS_AS(rational_from_double(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("exact rank, kernel and solve") {
  RationalMatrix m(3, 3);
  // rows (1 2 3), (2 4 6), (0 1 1): rank 2
  const int v[3][3] = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = v[r][c];
  CHECK(m.rank() == 2);

  const auto kernel = m.nullspace();
  REQUIRE(kernel.size() == 1);
  const RationalVector image = m.apply(kernel[0]);
  for (const auto& q : image) CHECK(q == 0);

  const auto x = m.solve({Rational(1), Rational(2), Rational(0)});
  REQUIRE(x);
  CHECK(m.apply(*x) == RationalVector{Rational(1), Rational(2), Rational(0)});
  CHECK_FALSE(m.solve({Rational(1), Rational(0), Rational(0)}));
}

TEST_CASE("numerical rank refuses decisions near the cutoff") {
  Eigen::MatrixXd clear = Eigen::MatrixXd::Identity(3, 3);
  clear(2, 2) = 1e-15;
  const RankDecision d = numerical_rank(clear, kDefaultTolRank, "test");
  CHECK(d.rank == 2);
  CHECK(d.margin >= kRankMarginFactor);

  Eigen::MatrixXd murky = Eigen::MatrixXd::Identity(3, 3);
  murky(2, 2) = 3e-9;
  try {
    numerical_rank(murky, kDefaultTolRank, "test");
    FAIL("expected an indeterminate rank");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::indeterminate_rank);
  }
  CHECK(numerical_rank_unchecked(murky, kDefaultTolRank).margin < kRankMarginFactor);
}
