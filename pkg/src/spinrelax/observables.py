"""Reduced density matrix, thermometry metrics, and the local density of states."""

from dataclasses import dataclass

import numpy as np

from .eigensolve import SpectrumS
from .errors import BadGrid, BasisMismatch, DimensionMismatch
from .spinspace import StateVector

BASIS_COMPUTATIONAL = "computational"
BASIS_EIGEN = "eigen"

RHO_FLOOR = 1e-12


@dataclass
class ReducedDensityMatrix:
    matrix: np.ndarray
    basis: str


@dataclass
class MetricsSample:
    t: float
    energy: float        # E_S = Tr(rho H_S)
    b: float             # effective inverse temperature (nan when invalid)
    delta: float         # distance to the Boltzmann diagonal at b
    sigma: float         # off-diagonal magnitude
    mu: float            # spread of populations within degenerate subspaces
    b_valid: bool


def reduced_density(psi: StateVector) -> ReducedDensityMatrix:
    """Partial trace over the environment: rho_ij = sum_p conj(c(i,p)) c(j,p)."""
    coeff = np.asarray(psi.amplitudes).reshape(psi.partition.dim_e, psi.partition.dim_s)
    return ReducedDensityMatrix(coeff.conj().T @ coeff, BASIS_COMPUTATIONAL)


def to_eigenbasis(rho: ReducedDensityMatrix, spectrum: SpectrumS) -> ReducedDensityMatrix:
    if rho.basis != BASIS_COMPUTATIONAL:
        raise BasisMismatch("expected a computational-basis density matrix")
    u = spectrum.vectors
    return ReducedDensityMatrix(u.conj().T @ rho.matrix @ u, BASIS_EIGEN)


def metrics(rho: ReducedDensityMatrix, spectrum: SpectrumS, t: float,
            rho_floor: float = RHO_FLOOR) -> MetricsSample:
    """Thermometry metrics of an eigenbasis density matrix at one time point."""
    if rho.basis != BASIS_EIGEN:
        raise BasisMismatch("metrics require the eigenbasis density matrix")
    mat = rho.matrix
    evals = spectrum.eigenvalues
    diag = mat.diagonal().real
    sigma = float(np.sqrt(np.sum(np.abs(np.triu(mat, 1)) ** 2)))
    energy = float(np.dot(evals, diag))

    # pairwise log-population slope over non-degenerate, populated pairs
    i_idx, j_idx = np.triu_indices(len(evals), 1)
    admissible = (np.abs(evals[i_idx] - evals[j_idx]) > spectrum.eps_deg) \
        & (diag[i_idx] > rho_floor) & (diag[j_idx] > rho_floor)
    if np.any(admissible):
        i_a, j_a = i_idx[admissible], j_idx[admissible]
        slopes = (np.log(diag[i_a]) - np.log(diag[j_a])) / (evals[j_a] - evals[i_a])
        b = float(np.mean(slopes))
        boltz = np.exp(-b * evals)
        boltz /= boltz.sum()
        delta = float(np.sqrt(np.sum((diag - boltz) ** 2)))
        b_valid = True
    else:
        b = float("nan")
        delta = float("nan")
        b_valid = False

    mu_sq = 0.0
    for cls in spectrum.classes:
        pops = diag[cls]
        mu_sq += float(np.sum((pops - pops.mean()) ** 2))
    return MetricsSample(t, energy, b, delta, sigma, float(np.sqrt(mu_sq)), b_valid)


def autocorrelation(psi0: StateVector, psi_t: StateVector) -> complex:
    a0 = np.asarray(psi0.amplitudes)
    at = np.asarray(psi_t.amplitudes)
    if a0.shape != at.shape:
        raise DimensionMismatch("state dimensions differ")
    return complex(np.vdot(a0, at))


@dataclass
class LdosResult:
    energies: np.ndarray   # uniform grid of cell centers over [-R, R]
    weights: np.ndarray    # normalized so that sum(weights) * dE = 1
    eta: float

    @property
    def spacing(self) -> float:
        return float(self.energies[1] - self.energies[0])


def ldos(overlaps: np.ndarray, tau: float, radius: float, eta: float = 0.25,
         n_bins: int = None) -> LdosResult:
    """Windowed Fourier transform of the autocorrelation series f_m at t = m*tau.

    The series is extended Hermitianly to negative times and damped by a
    Gaussian window of relative width eta; peaks land at the eigenenergies
    of states overlapping the initial state.
    """
    overlaps = np.asarray(overlaps, dtype=np.complex128)
    m = overlaps.shape[0]
    if m < 64:
        raise BadGrid("need at least 64 autocorrelation samples")
    if tau <= 0 or radius <= 0 or eta <= 0:
        raise BadGrid("tau, radius and eta must be positive")
    if n_bins is None:
        n_bins = m
    t = np.arange(m) * tau
    window = np.exp(-(t / (eta * m * tau)) ** 2)
    # null the truncation edge (offset-Gaussian window) to keep ringing tiny
    edge = np.exp(-(1.0 / eta) ** 2)
    window = (window - edge) / (1.0 - edge)
    de = 2.0 * radius / n_bins
    energies = -radius + (np.arange(n_bins) + 0.5) * de
    damped = window * overlaps
    phases = np.exp(1j * np.outer(energies, t[1:]))
    weights = (tau / (2.0 * np.pi)) * (damped[0].real + 2.0 * (phases @ damped[1:]).real)
    weights /= weights.sum() * de
    return LdosResult(energies, weights, eta)
