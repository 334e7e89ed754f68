import numpy as np
import pytest
from scipy.special import jv

import spinrelax as sr
from spinrelax.errors import BadArguments, PlanMismatch

from conftest import random_model, random_state


def dense_propagate(handle, amplitudes, t):
    evals, vecs = np.linalg.eigh(handle.build_dense())
    return vecs @ (np.exp(-1j * evals * t) * (vecs.conj().T @ amplitudes))


@pytest.mark.parametrize("z", [0.3, 1.0, 5.0, 12.6, 40.0])
def test_bessel_sequence_against_scipy(z):
    ours = sr.bessel_j_sequence(z, 50)
    assert np.abs(ours - jv(np.arange(51), z)).max() < 1e-14


def test_plan_scalar_identity():
    """At T_k(1) = 1 the coefficient sum must equal exp(-i R tau)."""
    plan = sr.plan_step(1.0, 1.0)
    assert plan.order <= 25
    assert abs(plan.coeffs.sum() - np.exp(-1j)) < 1e-14


@pytest.mark.parametrize("z", [0.5, 2.0, 7.3, 12.6, 25.0])
def test_plan_scalar_identity_sweep(z):
    plan = sr.plan_step(1.0, z)
    assert abs(plan.coeffs.sum() - np.exp(-1j * z)) < 1e-13


def test_plan_small_tau_is_identity():
    plan = sr.plan_step(1.0, 1e-12)
    assert abs(plan.coeffs[0] - 1.0) < 1e-15
    assert np.abs(plan.coeffs[1:]).max() <= 1e-12  # J_1(z) ~ z/2


def test_plan_order_window():
    plan = sr.plan_step(1.0, 12.6)
    assert 12.6 <= plan.order <= 12.6 + 60
    assert plan.tail_bound < 1e-14


def test_plan_bad_arguments():
    with pytest.raises(BadArguments):
        sr.plan_step(0.0, 1.0)
    with pytest.raises(BadArguments):
        sr.plan_step(1.0, -1.0)
    with pytest.raises(BadArguments):
        sr.plan_step(1.0, 1.0, tol=1e-5)


def test_evolve_matches_dense_oracle():
    p, table = random_model(2, 4, seed=31)
    h = sr.HamiltonianHandle(p, table)
    plan = sr.plan_step(h.spectral_bound(), np.pi / 10)
    psi = random_state(p, 0)
    exact = dense_propagate(h, psi.amplitudes, np.pi / 10)
    out = sr.evolve(h, psi, plan)
    assert np.abs(out.amplitudes - exact).max() <= 1e-10


def test_time_step_independence():
    p, table = random_model(3, 3, seed=32)
    h = sr.HamiltonianHandle(p, table)
    tau = np.pi / 10
    p1 = sr.plan_step(h.spectral_bound(), tau)
    p2 = sr.plan_step(h.spectral_bound(), 2 * tau)
    psi = random_state(p, 1)
    twice = sr.evolve(h, sr.evolve(h, psi, p1), p1)
    once = sr.evolve(h, psi, p2)
    assert np.abs(twice.amplitudes - once.amplitudes).max() <= 1e-10


def test_reversibility_via_composition():
    """Forward then backward evolution returns the input."""
    p, table = random_model(2, 3, seed=33)
    h = sr.HamiltonianHandle(p, table)
    psi = random_state(p, 2)
    fwd = sr.evolve(h, psi, sr.plan_step(h.spectral_bound(), 0.7))
    back = dense_propagate(h, fwd.amplitudes, -0.7)
    assert np.abs(back - psi.amplitudes).max() <= 1e-10


def test_unitarity_drift_500_steps():
    p, table = random_model(2, 4, seed=34)
    h = sr.HamiltonianHandle(p, table)
    plan = sr.plan_step(h.spectral_bound(), np.pi / 10)
    psi = random_state(p, 3)
    e0 = h.energy_expectation(psi)
    for _ in range(500):
        psi = sr.evolve(h, psi, plan)
    assert abs(psi.norm - 1.0) <= 1e-10
    assert abs(h.energy_expectation(psi) - e0) <= 1e-9 * max(1.0, abs(e0))


def test_plan_mismatch_rejected():
    p, table = random_model(3, 3, seed=35)
    h = sr.HamiltonianHandle(p, table)
    weak_plan = sr.plan_step(h.spectral_bound() / 2, 0.1)
    with pytest.raises(PlanMismatch):
        sr.evolve(h, random_state(p, 0), weak_plan)
