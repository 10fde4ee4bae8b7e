import json
import math

import numpy as np
import pytest

import splitbc

DIFFUSION = {
    "problem": {"kind": "diffusion", "n": 30, "reaction": "exp_um1", "b_left": 1,
                "initial": "one_plus_sin_pi"},
    "run": {"T": 0.05, "taus": [1e-2, 5e-3, 2.5e-3], "schemes": ["tdbc2", "cec2"]},
}


def test_phi_family_recurrence():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((6, 6))
    phis = splitbc.phi_family(a, 0.5)
    assert len(phis) == 4
    assert np.allclose(phis[0], splitbc.matrix_exponential(0.5 * a), atol=1e-12)
    resid = 0.5 * a @ phis[2] + np.eye(6) - phis[1]
    assert np.abs(resid).max() < 1e-11


def test_observed_order_and_grid():
    assert splitbc.observed_order(4e-4, 1e-4) == pytest.approx(2.0)
    assert splitbc.observed_order(0.0, 1.0) is None
    assert splitbc.grid_nodes(4) == pytest.approx([0.2, 0.4, 0.6, 0.8])
    assert splitbc.grid_nodes(4, one_sided=True)[-1] == pytest.approx(1.0)
    assert "cos_u" in splitbc.reaction_names()


def test_convergence_orders():
    rep = splitbc.convergence(DIFFUSION)
    assert set(rep) == {"local", "global"}
    rows = [r for r in rep["global"]["rows"] if r["scheme"] == "cec2"]
    assert len(rows) == 3
    assert rows[0]["observed_order"] is None
    assert 1.5 < rows[-1]["observed_order"] < 2.5


def test_run_writes_csv(tmp_path):
    files = splitbc.run("convergence", DIFFUSION, tmp_path)
    assert {p.split("/")[-1] for p in files} == {
        "convergence_local.csv", "convergence_global.csv", "meta.json"}
    header = (tmp_path / "convergence_global.csv").read_text().splitlines()[0]
    assert header == "scheme,tau,error_linf,observed_order"
    meta = json.loads((tmp_path / "meta.json").read_text())
    assert meta["command"] == "convergence"


def test_errors_map_to_python():
    bad = json.loads(json.dumps(DIFFUSION))
    bad["problem"]["reaction"] = "nope"
    with pytest.raises(splitbc.ConfigError):
        splitbc.convergence(bad)
    with pytest.raises(ValueError):
        splitbc.convergence("{ not json")


def test_trace_rows():
    cfg = json.loads(json.dumps(DIFFUSION))
    cfg["run"]["taus"] = [1e-2]
    rows = splitbc.trace(cfg)["rows"]
    assert rows[0]["local"] == rows[0]["global"]
    assert all(math.isfinite(r["global"]) for r in rows)
