import json

import numpy as np
import pytest

import flowlab


def vortex(grid, m):
    x, y = grid.coords()
    z = x[None, :] + 1j * y[:, None]
    return z**m if m >= 0 else np.conj(z) ** (-m)


def test_grid():
    g = flowlab.Grid2D.centered(5, 1.0)
    assert (g.nx, g.ny, g.dx) == (5, 5, 0.5)
    x, y = g.coords()
    assert x[0] == -1.0 and y[-1] == 1.0
    with pytest.raises(flowlab.FlowlabError):
        flowlab.Grid2D(2, 5, 0.0, 0.0, 1.0, 1.0)


@pytest.mark.parametrize("m", [-2, -1, 1, 2])
def test_windings(m):
    g = flowlab.Grid2D.centered(129, 1.0)
    psi = vortex(g, m)
    assert flowlab.loop_winding(psi, g, (0.0, 0.0), 0.5) == m
    nodes = flowlab.detect_nodes(psi, g, classify=False)
    assert sum(n["m"] for n in nodes) == m


def test_simple_node_is_finite_positive():
    g = flowlab.Grid2D.centered(257, 1.0)
    nodes = flowlab.detect_nodes(vortex(g, 1), g)
    assert len(nodes) == 1
    assert nodes[0]["regularity"] == "FinitePositive"
    assert nodes[0]["delta_rho_estimate"] == pytest.approx(4.0, abs=1e-12)


def test_kinematics_mask_node():
    g = flowlab.Grid2D.centered(65, 1.0)
    f = flowlab.kinematic_fields(vortex(g, 1), g)
    assert f["v"].shape == (65, 65, 2)
    assert np.isnan(f["theta"][32, 32])
    x, y = g.coords()
    far = np.hypot(x[None, :], y[:, None]) > 0.5
    gap = np.abs(f["Q"] - flowlab.quantum_potential_direct(f["rho"], g))[far]
    assert np.nanmax(gap) < 0.05


def test_shape_mismatch():
    g = flowlab.Grid2D.centered(9, 1.0)
    with pytest.raises(flowlab.FlowlabError):
        flowlab.laplacian(np.zeros((8, 9)), g)


def test_penalty_and_drift():
    assert flowlab.penalty_balance_at_core(1.0, 0.1, 1.0, 1.0) == pytest.approx(1.6, rel=1e-15)
    _, integer = flowlab.density_drift(1.0, [0.0, 0.1, 1.0], N=64, nphi=256)
    _, half = flowlab.density_drift(0.5, [0.0, 0.5], N=64, nphi=256)
    assert integer < 1e-12
    assert half > 0.01


def test_regularized_core():
    g = flowlab.Grid2D.centered(201, 2.0)
    r = flowlab.regularize_flow(1.0, 1.0, g)
    assert r["omega_analytic"][100, 100] == pytest.approx(2.0)
    assert r["omega"][100, 150] == pytest.approx(r["omega_analytic"][100, 150], rel=1e-2)


def test_synth_split_zero():
    spec = {"kind": "split_double_zero", "grid": {"nx": 129, "ny": 129, "x0": -1, "y0": -1, "dx": 1 / 64, "dy": 1 / 64},
            "epsilon": 0.1}
    psi, g, warnings = flowlab.synth(json.dumps(spec))
    assert psi.shape == (129, 129)
    assert warnings == []
    assert flowlab.loop_winding(psi, g, (0.0, 0.0), 0.5) == 2


def test_cli_usage_exit():
    code, out, err = flowlab.run_cli(["analyze"])
    assert code == 1
    assert json.loads(err)["error"]["exit_code"] == 1
