import math

import numpy as np
import pytest

import liesymp


def test_catalog_names():
    assert liesymp.list_models() == [
        "abelian2", "torus2", "heisenberg3", "se2", "se2_cover", "sl2", "galilei_1_1", "oscillator",
    ]


def test_h2_dimensions():
    dims = {name: liesymp.get_model(name).algebra.h2()["dim_h2"] for name in ("abelian2", "heisenberg3", "sl2", "se2")}
    assert dims == {"abelian2": 1, "heisenberg3": 2, "sl2": 0, "se2": 1}


def test_extension_of_the_plane_is_heisenberg():
    plane = liesymp.get_model("abelian2")
    c = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert plane.algebra.is_cocycle(c)
    ext = plane.algebra.central_extend(c)
    assert ext.same_structure(liesymp.get_model("heisenberg3").algebra)


def test_holonomy_verdicts():
    assert liesymp.holonomy(liesymp.get_model("torus2"), "area")["verdict"] == "obstructed"
    torus = liesymp.holonomy(liesymp.get_model("torus2"), "area")
    assert all(abs(n - 1.0) < 1e-8 for n in torus["norms"])
    assert liesymp.holonomy(liesymp.get_model("se2"), "translations")["verdict"] == "integrable"


def test_theta_closed_form_on_se2():
    se2 = liesymp.get_model("se2")
    t1, t2, phi = 0.4, -1.3, 0.9
    path = [(np.array([0.0, t1, t2]), 1.0), (np.array([phi, 0.0, 0.0]), 1.0)]
    theta = liesymp.theta(se2, "translations", path)
    assert np.allclose(theta, [0.5 * (t1 * t1 + t2 * t2), -t2, t1], atol=1e-9)
    assert np.allclose(liesymp.theta(se2, "translations", path, canonical=False), theta, atol=1e-9)


def test_endpoint_of_full_turn_is_identity():
    se2 = liesymp.get_model("se2")
    g = liesymp.endpoint(se2, [(np.array([2 * math.pi, 0.0, 0.0]), 1.0)])
    assert np.allclose(g, np.eye(3), atol=1e-12)


def test_cocycle_residual():
    assert liesymp.cocycle_residual(liesymp.get_model("galilei_1_1"), "mass", 20, 1) <= 1e-8


def test_orbit_form():
    h = liesymp.get_model("heisenberg3").algebra
    o = h.kks_form(["0", "0", "1"])
    assert o["orbit_dim"] == 2
    assert o["form"][0][1] == 1.0


def test_run_matches_cli_exit_codes():
    body, code = liesymp.run("neeb", "torus2", "area")
    assert code == 2
    assert body["verdict"] == "obstructed"
    body, code = liesymp.run("orbit", "heisenberg3", alpha=[0, 0, 1])
    assert code == 0
    assert body["orbit_dim"] == 2


def test_errors_carry_codes():
    with pytest.raises(liesymp.LiesympError) as info:
        liesymp.get_model("poincare")
    assert info.value.code == "catalog.unknown_model"
    body, code = liesymp.run("h2", "poincare")
    assert code == 1
    assert body["error"]["code"] == "catalog.unknown_model"


def test_import_round_trip():
    m = liesymp.get_model("se2")
    back = liesymp.import_model(m.to_json())
    assert back.algebra.same_structure(m.algebra)
    assert back.cocycles == m.cocycles
