"""Hilbert-space indexing and initial-state constructors.

Basis convention: a global basis index k encodes system spins in the
low-order bits and environment spins in the high-order bits,
k = i + dim_s * p, with bit value 0 meaning spin up.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, InvalidKind, OutOfRange

MAX_SYSTEM_SPINS = 10
MAX_ENV_SPINS = 26

NORM_TOL = 1e-12


class InitialStateKind(Enum):
    GROUND = "GROUND"
    RANDOM = "RANDOM"
    UU = "UU"
    UD = "UD"
    RR = "RR"


@dataclass(frozen=True)
class StatePartition:
    """Sizes of the system/environment Hilbert spaces and the index map."""

    n_s: int
    n_e: int

    def __post_init__(self):
        if not (1 <= self.n_s <= MAX_SYSTEM_SPINS):
            raise OutOfRange(f"system spin count {self.n_s} outside [1, {MAX_SYSTEM_SPINS}]")
        if not (0 <= self.n_e <= MAX_ENV_SPINS):
            raise OutOfRange(f"environment spin count {self.n_e} outside [0, {MAX_ENV_SPINS}]")

    @property
    def dim_s(self) -> int:
        return 1 << self.n_s

    @property
    def dim_e(self) -> int:
        return 1 << self.n_e

    @property
    def dim(self) -> int:
        return self.dim_s * self.dim_e

    @property
    def n_total(self) -> int:
        return self.n_s + self.n_e

    def index(self, i: int, p: int) -> int:
        """Global index of system basis state i with environment basis state p."""
        return i + self.dim_s * p

    def split(self, k: int):
        """Inverse of index(): k -> (i, p)."""
        return k % self.dim_s, k // self.dim_s


def partition_new(n_s: int, n_e: int) -> StatePartition:
    return StatePartition(n_s, n_e)


@dataclass
class StateVector:
    """Pure state of the whole closed system, unit norm."""

    partition: StatePartition
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.partition.dim,):
            raise DimensionMismatch(
                f"amplitude length {self.amplitudes.shape} != partition dimension {self.partition.dim}"
            )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _sector_spins(partition: StatePartition, sector: str) -> int:
    if sector == "system":
        return partition.n_s
    if sector == "environment":
        return partition.n_e
    raise ValueError(f"unknown sector {sector!r}")


def make_basis_state(partition: StatePartition, kind: InitialStateKind, sector: str) -> np.ndarray:
    """Computational basis states: UU (all up) and UD (Neel pattern up-down-up-down...)."""
    n = _sector_spins(partition, sector)
    if kind == InitialStateKind.UU:
        idx = 0
    elif kind == InitialStateKind.UD:
        if n < 2:
            raise InvalidKind("UD needs at least 2 spins")
        # odd sites down: bit s set for odd s
        idx = sum(1 << s for s in range(1, n, 2))
    else:
        raise InvalidKind(f"{kind} is not a basis-state kind")
    state = np.zeros(1 << n, dtype=np.complex128)
    state[idx] = 1.0
    return state


def make_random_state(partition: StatePartition, kind: InitialStateKind, sector: str, seed) -> np.ndarray:
    """Seeded random states: RANDOM (Haar on the sector sphere) and RR (product of
    Bloch-uniform single-spin states)."""
    n = _sector_spins(partition, sector)
    rng = np.random.default_rng(seed)
    if kind == InitialStateKind.RANDOM:
        dim = 1 << n
        state = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return state / np.linalg.norm(state)
    if kind == InitialStateKind.RR:
        state = np.ones(1, dtype=np.complex128)
        for _ in range(n):
            cos_theta = rng.uniform(-1.0, 1.0)
            phi = rng.uniform(0.0, 2.0 * np.pi)
            half = np.arccos(cos_theta) / 2.0
            qubit = np.array([np.cos(half), np.exp(1j * phi) * np.sin(half)])
            # new spin occupies the next-higher bit
            state = (qubit[:, None] * state[None, :]).ravel()
        return state
    raise InvalidKind(f"{kind} is not a random-state kind")


def tensor_product(system_state: np.ndarray, env_state: np.ndarray,
                   partition: StatePartition) -> StateVector:
    """Whole-system product state, amplitudes[i + dim_s*p] = s[i] * e[p]."""
    system_state = np.asarray(system_state, dtype=np.complex128)
    env_state = np.asarray(env_state, dtype=np.complex128)
    if system_state.shape != (partition.dim_s,):
        raise DimensionMismatch("system factor length does not match partition")
    if env_state.shape != (partition.dim_e,):
        raise DimensionMismatch("environment factor length does not match partition")
    amplitudes = (env_state[:, None] * system_state[None, :]).ravel()
    return StateVector(partition, amplitudes)
