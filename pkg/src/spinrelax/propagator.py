"""Chebyshev polynomial propagator for exp(-i H tau).

With the spectrum rescaled to [-1, 1] by the energy radius R, the
propagator expands as sum_k (2 - delta_k0) (-i)^k J_k(R tau) T_k(H / R),
summed with the standard three-term Chebyshev recurrence. The Bessel
sequence comes from Miller's downward recurrence.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import BadArguments, PlanMismatch
from .hamiltonian import HamiltonianHandle
from .spinspace import StateVector

log = logging.getLogger(__name__)

DEFAULT_TAIL_TOL = 1e-14
_RESCALE = 1e250


def bessel_j_sequence(z: float, nmax: int) -> np.ndarray:
    """J_0(z)..J_nmax(z) by downward recurrence, normalized with
    J_0 + 2 * sum_m J_{2m} = 1."""
    if z < 0:
        raise BadArguments("bessel argument must be nonnegative")
    if z == 0.0:
        out = np.zeros(nmax + 1)
        out[0] = 1.0
        return out
    start = int(max(nmax, z)) + 2 * int(np.sqrt(50.0 * (nmax + 1))) + 20
    vals = np.zeros(start + 2)
    vals[start + 1] = 0.0
    vals[start] = 1e-30
    for k in range(start, 0, -1):
        vals[k - 1] = (2.0 * k / z) * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > _RESCALE:
            vals[k - 1:] /= _RESCALE
    norm = vals[0] + 2.0 * vals[2::2].sum()
    return vals[: nmax + 1] / norm


@dataclass(frozen=True)
class ChebyshevPlan:
    radius: float            # energy radius R the plan was built for
    tau: float               # time step
    order: int               # truncation order K
    coeffs: np.ndarray       # complex coefficients c_0..c_K
    tail_bound: float        # sum_{k>K} 2|J_k(R tau)|


def plan_step(radius: float, tau: float, tol: float = DEFAULT_TAIL_TOL) -> ChebyshevPlan:
    """Truncation order and coefficients for one step of exp(-i H tau)."""
    if radius <= 0 or tau <= 0:
        raise BadArguments("radius and tau must be positive")
    if not (0 < tol <= 1e-10):
        raise BadArguments("tol must be in (0, 1e-10]")
    z = radius * tau
    margin = 120
    while True:
        nmax = int(np.ceil(z)) + margin
        bess = bessel_j_sequence(z, nmax)
        tails = 2.0 * np.cumsum(np.abs(bess[::-1]))[::-1]  # tails[k] = 2*sum_{m>=k}|J_m|
        order = None
        for k in range(max(1, int(np.ceil(z))), nmax):
            if abs(bess[k]) < 1e-2 * tol and tails[k + 1] < tol:
                order = k
                break
        if order is not None:
            break
        margin *= 2
        if margin > 1 << 16:
            raise BadArguments("chebyshev order search failed to converge")
    coeffs = np.empty(order + 1, dtype=np.complex128)
    coeffs[0] = bess[0]
    coeffs[1:] = 2.0 * (-1j) ** np.arange(1, order + 1) * bess[1: order + 1]
    return ChebyshevPlan(radius, tau, order, coeffs, float(tails[order + 1]))


def evolve(h: HamiltonianHandle, psi: StateVector, plan: ChebyshevPlan) -> StateVector:
    """One step of exp(-i H tau) via the three-term Chebyshev recurrence."""
    if plan.radius < h.spectral_bound() * (1 - 1e-12):
        raise PlanMismatch("plan radius below the Hamiltonian spectral bound")
    inv_r = 1.0 / plan.radius
    phi_prev = np.asarray(psi.amplitudes, dtype=np.complex128)
    phi_cur = h.apply_array(phi_prev) * inv_r
    out = plan.coeffs[0] * phi_prev + plan.coeffs[1] * phi_cur
    for k in range(2, plan.order + 1):
        phi_next = 2.0 * inv_r * h.apply_array(phi_cur) - phi_prev
        out += plan.coeffs[k] * phi_next
        phi_prev, phi_cur = phi_cur, phi_next
    norm = np.linalg.norm(out)
    if abs(norm - 1.0) > 1e-12:
        log.warning("chebyshev step norm drift %.3e, renormalizing", norm - 1.0)
        out /= norm
    return StateVector(psi.partition, out)
