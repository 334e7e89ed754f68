"""Matrix-free application of H = H_S + H_E + H_SE to state vectors.

Each two-spin term -c * S_a^alpha * S_b^alpha acts via bit arithmetic on
the basis index: zz terms are diagonal (-c/4 times the sign of the bit
parity), xx and yy terms flip bits a and b. Terms sharing a site pair are
fused into one flip kernel with parity-dependent coefficients.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .model import CouplingTable
from .spinspace import StatePartition, StateVector

try:
    from numba import njit, prange
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

DENSE_MAX_DIM = 1 << 12

SECTOR_FILTERS = ("ALL", "S", "E", "SE")


@dataclass
class _Kernel:
    diag: np.ndarray      # float64[D], summed zz action
    masks: np.ndarray     # int64[P], xor mask flipping bits a and b
    apos: np.ndarray      # int64[P]
    bpos: np.ndarray      # int64[P]
    coef_eq: np.ndarray   # float64[P], flip coefficient when bits a,b are equal
    coef_ne: np.ndarray   # float64[P], flip coefficient when they differ


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _flip_apply(psi, diag, masks, apos, bpos, coef_eq, coef_ne, out):
        dim = psi.shape[0]
        npairs = masks.shape[0]
        for k in prange(dim):
            acc = diag[k] * psi[k]
            for p in range(npairs):
                j = k ^ masks[p]
                if ((k >> apos[p]) ^ (k >> bpos[p])) & 1:
                    acc += coef_ne[p] * psi[j]
                else:
                    acc += coef_eq[p] * psi[j]
            out[k] = acc
        return out

else:  # pragma: no cover - numpy fallback

    def _flip_apply(psi, diag, masks, apos, bpos, coef_eq, coef_ne, out):
        dim = psi.shape[0]
        k = np.arange(dim)
        out[:] = diag * psi
        for p in range(masks.shape[0]):
            differ = ((k >> apos[p]) ^ (k >> bpos[p])) & 1
            coef = np.where(differ, coef_ne[p], coef_eq[p])
            out += coef * psi[k ^ masks[p]]
        return out


def _build_kernel(partition: StatePartition, terms) -> _Kernel:
    dim = partition.dim
    k = np.arange(dim, dtype=np.int64)
    diag = np.zeros(dim)
    pair_xy = {}
    for t in terms:
        if t.axis == "z":
            sign = 1.0 - 2.0 * (((k >> t.a) ^ (k >> t.b)) & 1)
            diag += -0.25 * t.strength * sign
        else:
            cx, cy = pair_xy.setdefault((t.a, t.b), [0.0, 0.0])
            if t.axis == "x":
                pair_xy[(t.a, t.b)][0] = cx + t.strength
            else:
                pair_xy[(t.a, t.b)][1] = cy + t.strength
    pairs = sorted(pair_xy)
    masks = np.array([(1 << a) | (1 << b) for a, b in pairs], dtype=np.int64)
    apos = np.array([a for a, _ in pairs], dtype=np.int64)
    bpos = np.array([b for _, b in pairs], dtype=np.int64)
    # matrix element of -cx SxSx - cy SySy between k and k^mask:
    #   -cx/4 + cy/4 when bits a,b agree, -cx/4 - cy/4 when they differ
    coef_eq = np.array([-0.25 * pair_xy[p][0] + 0.25 * pair_xy[p][1] for p in pairs])
    coef_ne = np.array([-0.25 * pair_xy[p][0] - 0.25 * pair_xy[p][1] for p in pairs])
    keep = (coef_eq != 0) | (coef_ne != 0)
    return _Kernel(diag, masks[keep], apos[keep], bpos[keep], coef_eq[keep], coef_ne[keep])


class HamiltonianHandle:
    """Applies the Hamiltonian of a coupling table without materializing it."""

    def __init__(self, partition: StatePartition, table: CouplingTable):
        self.partition = partition
        self.table = table
        self._kernels = {}

    def _kernel(self, sector: str) -> _Kernel:
        if sector not in SECTOR_FILTERS:
            raise ValueError(f"unknown sector filter {sector!r}")
        if sector not in self._kernels:
            self._kernels[sector] = _build_kernel(self.partition, self.table.filtered(sector))
        return self._kernels[sector]

    def apply_array(self, psi: np.ndarray, sector: str = "ALL",
                    out: np.ndarray = None) -> np.ndarray:
        if psi.shape != (self.partition.dim,):
            raise DimensionMismatch("state dimension does not match Hamiltonian")
        ker = self._kernel(sector)
        if out is None:
            out = np.empty_like(psi)
        return _flip_apply(psi, ker.diag, ker.masks, ker.apos, ker.bpos,
                           ker.coef_eq, ker.coef_ne, out)

    def apply(self, psi: StateVector, sector: str = "ALL") -> StateVector:
        return StateVector(psi.partition,
                           self.apply_array(np.asarray(psi.amplitudes), sector))

    def build_dense(self, sector: str = "ALL") -> np.ndarray:
        """Dense matrix with M @ psi == apply(psi); oracle and eigensolver input."""
        dim = self.partition.dim
        if dim > DENSE_MAX_DIM:
            raise TooLarge(f"dense build refused at dimension {dim} > {DENSE_MAX_DIM}")
        ker = self._kernel(sector)
        mat = np.diag(ker.diag).astype(np.complex128)
        k = np.arange(dim)
        for p in range(ker.masks.shape[0]):
            differ = (((k >> ker.apos[p]) ^ (k >> ker.bpos[p])) & 1).astype(bool)
            coef = np.where(differ, ker.coef_ne[p], ker.coef_eq[p])
            mat[k ^ ker.masks[p], k] += coef
        return mat

    def spectral_bound(self, sector: str = "ALL") -> float:
        """Rigorous bound on the spectral radius: sum of term radii |c|/4."""
        return sum(abs(t.strength) for t in self.table.filtered(sector)) / 4.0

    def energy_expectation(self, psi: StateVector, sector: str = "ALL") -> float:
        amps = np.asarray(psi.amplitudes)
        val = np.vdot(amps, self.apply_array(amps, sector))
        assert abs(val.imag) <= 1e-12 * max(1.0, abs(val.real))
        return float(val.real)
