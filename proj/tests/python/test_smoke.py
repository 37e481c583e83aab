import math

import numpy as np
import pytest

import pottsmix as pm


def test_generate_and_objective():
    inst = pm.generate(n=6, k=3, cs=1.5, seed=4)
    assert inst.n == 6
    assert inst.k == 3
    assert abs(pm.coupling_strength(inst.A) - 1.5) <= 1e-12
    np.testing.assert_allclose(inst.A, inst.A.T)
    f = pm.objective(inst, [1, 2, 3, 1, 2, 3])
    assert math.isfinite(f)


def test_objective_closed_form():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    inst = pm.MrfInstance(A=a, H=np.zeros((2, 2)), k=2)
    assert pm.objective(inst, [1, 1]) == pytest.approx(2.0)
    assert pm.objective(inst, [1, 2]) == pytest.approx(-2.0)


def test_json_round_trip():
    inst = pm.generate(n=5, k=2, cs=2.0, seed=1)
    back = pm.MrfInstance.from_json(inst.to_json())
    np.testing.assert_array_equal(np.asarray(back.A), np.asarray(inst.A))
    np.testing.assert_array_equal(np.asarray(back.H), np.asarray(inst.H))


def test_simplex_frame_gram():
    frame = pm.simplex_frame(4, 5)
    r = np.asarray(frame.r)
    gram = r.T @ r
    np.testing.assert_allclose(np.diag(gram), 1.0, atol=1e-12)
    off = gram[~np.eye(4, dtype=bool)]
    np.testing.assert_allclose(off, -1.0 / 3.0, atol=1e-12)


def test_solve_and_round():
    inst = pm.generate(n=7, k=3, cs=2.0, seed=9)
    res = pm.solve_m4(inst, seed=9)
    v = np.asarray(res.solution.v)
    assert v.shape == (pm.rank_bound(7, 3), 7)
    np.testing.assert_allclose(np.linalg.norm(v, axis=0), 1.0, atol=1e-9)
    batch = pm.round_batch(inst, res.solution.v, res.frame, 200, 9)
    assert len(batch.samples) == 200
    assert all(1 <= x <= 3 for x in batch.best)
    assert batch.best_value == pytest.approx(pm.objective(inst, batch.best))

    exact = pm.enumerate_exact(inst)
    assert batch.best_value <= exact.mode_value + 1e-9


def test_solve_m4_plus_feasibility():
    inst = pm.generate(n=6, k=4, cs=1.0, seed=3)
    res = pm.solve_m4_plus(inst, seed=3)
    z = np.asarray(res.solution.z)
    assert z.min() >= 0.0
    v = np.asarray(res.solution.v)
    np.testing.assert_allclose(np.linalg.norm(v, axis=0), 1.0, atol=1e-9)
    relaxed = pm.relaxed_objective(inst, res.projector.frame(), res.solution.v)
    assert res.solution.objective_value == pytest.approx(relaxed, abs=1e-9)


def test_partition_estimate_full_support_is_exact():
    inst = pm.generate(n=3, k=2, cs=0.4, seed=6)
    frame = pm.simplex_frame(2, 3)
    # Columns orthogonal to the frame axis keep every configuration reachable
    # under rounding; frame-aligned columns can starve some configurations.
    rng = np.random.default_rng(0)
    v = rng.standard_normal((3, 3))
    v[0, :] = 0.0
    v /= np.linalg.norm(v, axis=0)
    est = pm.estimate_z(inst, v, frame, 3000, 2)
    exact = pm.enumerate_exact(inst)
    assert est.full_support
    assert est.log_z_hat == pytest.approx(exact.log_z, abs=1e-10)


def test_ais_runs_and_is_reasonable():
    inst = pm.generate(n=8, k=2, cs=1.0, seed=12)
    exact = pm.enumerate_exact(inst)
    res = pm.ais_estimate(inst, K=25, cycles=1, samples=100, seed=5)
    assert abs(res.log_z_hat - exact.log_z) < 1.0
    assert pm.objective(inst, res.best_config) == res.best_value


def test_binary_lift_matches_spin_model():
    rng = np.random.default_rng(0)
    a = rng.uniform(-1, 1, size=(4, 4))
    a = (a + a.T) / 2
    h = rng.uniform(-1, 1, size=4)
    inst = pm.binary_to_multiclass(a, h)
    for mask in range(16):
        s = np.array([1.0 if (mask >> i) & 1 else -1.0 for i in range(4)])
        x = [1 if (mask >> i) & 1 else 2 for i in range(4)]
        assert pm.objective(inst, x) == pytest.approx(s @ a @ s + h @ s)


def test_mass_covered_bounds():
    inst = pm.generate(n=5, k=2, cs=2.0, seed=8)
    res = pm.solve_m4(inst, seed=8)
    batch = pm.round_batch(inst, res.solution.v, res.frame, 500, 1)
    cov = pm.mass_covered(inst, batch.unique_set)
    assert 0.0 < cov <= 1.0 + 1e-12
