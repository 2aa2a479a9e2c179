"""Smoke tests for the python bindings (built module on PYTHONPATH)."""

import json
import math

import pytest

parhyp = pytest.importorskip("parhyp")


def test_warping_values():
    flat = parhyp.WarpingDescriptor.space_form(0.0)
    assert parhyp.eval_warping(flat, 2.0) == 2.0
    hyp = parhyp.WarpingDescriptor.space_form(-1.0)
    assert parhyp.eval_warping(hyp, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-12)
    assert parhyp.radial_curvature(hyp, 2.0) == pytest.approx(-1.0, rel=1e-12)
    assert parhyp.eta(flat, 2.0) == 0.5
    assert parhyp.sphere_volume(3, flat, 1.0) == pytest.approx(4.0 * math.pi)


def test_domain_errors_map_to_python():
    sphere = parhyp.WarpingDescriptor.space_form(1.0)
    with pytest.raises(parhyp.DomainError):
        parhyp.eval_warping(sphere, 10.0)


def test_classify_model():
    flat = parhyp.WarpingDescriptor.space_form(0.0)
    verdict = json.loads(parhyp.classify_model(2, flat, 2))
    assert verdict["outcome"] == "parabolic"
    verdict = json.loads(parhyp.classify_model(3, flat, 3))
    assert verdict["outcome"] == "hyperbolic"


def test_classify_submanifold_from_config_json():
    problem = {
        "m": 2,
        "warping": {"family": "space_form", "b": -1.0},
        "curvature_bound": "both",
        "h": {"kind": "constant", "value": 0.4, "bound": "upper"},
        "rho": 1.0,
    }
    verdict = json.loads(parhyp.classify_submanifold(json.dumps(problem)))
    assert verdict["outcome"] == "hyperbolic"
    assert verdict["certificate"]["rule"] == "T2B"


def test_potential_and_capacity():
    flat = parhyp.WarpingDescriptor.space_form(0.0)
    h = parhyp.RadialProfile.zero()
    psi = parhyp.potential_closed_form(2, flat, h, None, 1.0, 4.0, 2.0)
    assert psi == pytest.approx(0.5, abs=1e-10)

    value, err = parhyp.drifted_capacity(3, flat, h, None, 1.0, 4.0)
    assert value == pytest.approx(16.0 * math.pi / 3.0, rel=1e-9)
    assert err < 1e-8

    grid, values = parhyp.potential_bvp(2, flat, h, None, 1.0, 4.0, 512)
    assert len(grid) == 512
    assert values[0] == 0.0 and values[-1] == 1.0

    lim = parhyp.capacity_limit(2, flat, h, None, 1.0)
    assert lim["integral"] == "divergent"
    assert lim["value"] == 0.0


def test_weights_and_balance():
    flat = parhyp.WarpingDescriptor.space_form(0.0)
    h = parhyp.RadialProfile.zero()
    rep = parhyp.balance(2, flat, h)
    assert rep["class"] == "non_negative"
    lam = parhyp.lambda_plain(2, flat, h, 1.0, 5.0)
    assert lam == pytest.approx(0.2, rel=1e-10)
    g = parhyp.RadialProfile.constant(1.0 / math.sqrt(2.0), role="g")
    lam_g = parhyp.lambda_tangency(2, flat, h, g, 1.0, 2.0)
    assert lam_g == pytest.approx(0.125, rel=1e-10)


def test_simulation_determinism():
    out1 = parhyp.simulate_hitting(lambda r: 1.0 / r, 1.0, 4.0, 2.0,
                                   n_paths=2000, seed=7, dt_max=1e-3, threads=1)
    out2 = parhyp.simulate_hitting(lambda r: 1.0 / r, 1.0, 4.0, 2.0,
                                   n_paths=2000, seed=7, dt_max=1e-3, threads=4)
    assert out1["p_hat"] == out2["p_hat"]
    assert abs(out1["p_hat"] - 0.5) < 5 * out1["std_err"]


def test_network_conductance():
    flat = parhyp.WarpingDescriptor.space_form(0.0)
    res = parhyp.effective_conductance(2, flat, 1.0, math.e, 64, 64)
    assert res["conductance"] == pytest.approx(2.0 * math.pi, rel=0.01)


def test_catalog():
    entry = json.loads(parhyp.catalog("cone:0.7853981633974483"))
    assert entry["verdict"]["outcome"] == "parabolic"
    with pytest.raises(parhyp.UnknownExampleError):
        parhyp.catalog("moebius:1")
