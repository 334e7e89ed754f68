"""Dense diagonalization of the system Hamiltonian and iterative ground states.

The dense path feeds the thermometry eigenbasis; the Lanczos path produces
seeded ground states (including random combinations over a degenerate
ground multiplet) for spaces too large to diagonalize.
"""

from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .errors import NoConvergence, NotHermitian, TooLarge

DENSE_MAX_DIM = 1 << 12
LANCZOS_MAX_ITER = 500


def degeneracy_tolerance(eigenvalues: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.max(np.abs(eigenvalues), initial=0.0)))


def _degeneracy_classes(eigenvalues: np.ndarray, eps: float) -> List[List[int]]:
    classes = [[0]]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i] - eigenvalues[i - 1] <= eps:
            classes[-1].append(i)
        else:
            classes.append([i])
    return classes


@dataclass
class SpectrumS:
    eigenvalues: np.ndarray   # ascending
    vectors: np.ndarray       # orthonormal columns
    classes: List[List[int]]  # indices grouped by degeneracy
    eps_deg: float


def eig_dense(matrix: np.ndarray, eps_deg: float = None) -> SpectrumS:
    """Full spectrum with deterministic ordering and phase convention."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    n = matrix.shape[0]
    if n > DENSE_MAX_DIM:
        raise TooLarge(f"dense diagonalization refused at dimension {n}")
    scale = max(1.0, float(np.abs(matrix).max(initial=0.0)))
    if np.abs(matrix - matrix.conj().T).max(initial=0.0) > 1e-12 * scale:
        raise NotHermitian("matrix is not Hermitian to 1e-12")
    evals, vecs = np.linalg.eigh(matrix)
    # fixed phase: largest-magnitude component of each column real positive
    for j in range(n):
        i = int(np.argmax(np.abs(vecs[:, j])))
        phase = vecs[i, j] / abs(vecs[i, j])
        vecs[:, j] *= phase.conjugate()
    if eps_deg is None:
        eps_deg = degeneracy_tolerance(evals)
    return SpectrumS(evals, vecs, _degeneracy_classes(evals, eps_deg), eps_deg)


def _lanczos_lowest(matvec: Callable, dim: int, start: np.ndarray,
                    deflate: List[np.ndarray], tol: float, max_iter: int):
    """Lowest Ritz pair with full reorthogonalization, deflated against
    previously found vectors."""
    basis = []
    alphas, betas = [], []
    v = start.astype(np.complex128).copy()
    for d in deflate:
        v -= np.vdot(d, v) * d
    v /= np.linalg.norm(v)
    for it in range(max_iter):
        basis.append(v)
        w = matvec(v)
        alphas.append(np.vdot(v, w).real)
        # full reorthogonalization against the Krylov basis and deflation space
        for d in deflate:
            w -= np.vdot(d, w) * d
        q = np.array(basis).T
        w -= q @ (q.conj().T @ w)
        w -= q @ (q.conj().T @ w)
        beta = np.linalg.norm(w)
        tmat = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
        tvals, tvecs = np.linalg.eigh(tmat)
        residual = abs(beta * tvecs[-1, 0])
        if residual <= tol or beta <= 1e-14:
            vec = q @ tvecs[:, 0]
            vec /= np.linalg.norm(vec)
            return float(tvals[0]), vec
        betas.append(beta)
        v = w / beta
    raise NoConvergence(f"lanczos did not reach residual {tol} in {max_iter} iterations")


@dataclass
class GroundResult:
    vector: np.ndarray
    energy: float
    multiplicity: int


def lanczos_ground(matvec: Callable, dim: int, seed: int = 0, eps_deg: float = None,
                   tol: float = 1e-10, max_iter: int = LANCZOS_MAX_ITER) -> GroundResult:
    """Ground state by deflated Lanczos restarts; degenerate multiplets are
    returned as a seeded random combination of their orthonormal members."""
    rng = np.random.default_rng(seed)

    def random_start():
        return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)

    energy0, vec = _lanczos_lowest(matvec, dim, random_start(), [], tol, max_iter)
    members = [vec]
    if eps_deg is None:
        eps_deg = 1e-9 * max(1.0, abs(energy0))
    while len(members) < dim:
        try:
            energy, vec = _lanczos_lowest(matvec, dim, random_start(), members, tol, max_iter)
        except NoConvergence:
            break
        if energy > energy0 + eps_deg:
            break
        members.append(vec)
    if len(members) == 1:
        return GroundResult(members[0], energy0, 1)
    # orthonormalize the multiplet, then take a random unit combination
    q, _ = np.linalg.qr(np.array(members).T)
    coeff = rng.standard_normal(len(members)) + 1j * rng.standard_normal(len(members))
    combo = q @ coeff
    combo /= np.linalg.norm(combo)
    return GroundResult(combo, energy0, len(members))
