"""Coupling-table construction for the three Hamiltonian sectors.

Each sector is a sum of two-spin exchange terms -c * S_a^alpha * S_b^alpha.
Global site numbering: system sites 0..n_s-1, environment sites n_s..n_s+n_e-1.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import BadTopology
from .spinspace import StatePartition

AXES = ("x", "y", "z")


class SymmetryClass(Enum):
    XY = "xy"
    HEISENBERG = "heisenberg"
    HEISENBERG_TYPE = "heisenberg-type"
    ISING = "ising"


class Topology(Enum):
    RING = "ring"
    TRIANGULAR = "triangular"
    FULL = "full"


# 2x3 triangular strip used when n == 6 and no explicit bond list is given.
TRIANGULAR_6_BONDS = ((0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5), (1, 3), (2, 4))


@dataclass(frozen=True, order=True)
class Term:
    sector: str          # "S", "E" or "SE"
    a: int               # global site index, a < b
    b: int
    axis: str            # "x", "y" or "z"
    strength: float


@dataclass(frozen=True)
class CouplingTable:
    terms: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    def filtered(self, sector: str) -> Tuple[Term, ...]:
        if sector == "ALL":
            return self.terms
        return tuple(t for t in self.terms if t.sector == sector)


@dataclass(frozen=True)
class SectorSpec:
    symmetry: SymmetryClass
    topology: Topology
    magnitude: float
    seed: int = 0
    bonds: Optional[Tuple[Tuple[int, int], ...]] = None


@dataclass(frozen=True)
class CouplingSpec:
    symmetry: SymmetryClass
    magnitude: float
    seed: int = 0


@dataclass(frozen=True)
class ModelSpec:
    partition: StatePartition
    system: SectorSpec
    environment: SectorSpec
    coupling: CouplingSpec


def _topology_bonds(topology: Topology, n: int,
                    override: Optional[Sequence[Tuple[int, int]]]) -> Tuple[Tuple[int, int], ...]:
    if override is not None:
        bonds = {tuple(sorted(b)) for b in override}
        for a, b in bonds:
            if not (0 <= a < b < n):
                raise BadTopology(f"bond ({a},{b}) outside site range 0..{n - 1}")
        return tuple(sorted(bonds))
    if topology == Topology.RING:
        bonds = {tuple(sorted((i, (i + 1) % n))) for i in range(n)} if n >= 2 else set()
        return tuple(sorted(bonds))
    if topology == Topology.FULL:
        return tuple((i, j) for i in range(n) for j in range(i + 1, n))
    if topology == Topology.TRIANGULAR:
        if n != 6:
            raise BadTopology("triangular topology is only defined for n=6 unless bonds are given")
        return TRIANGULAR_6_BONDS
    raise BadTopology(f"unknown topology {topology}")


def _axis_strengths(symmetry: SymmetryClass, magnitude: float, rng) -> dict:
    """Per-axis strengths for one bond; heisenberg-type draws each axis independently."""
    if symmetry == SymmetryClass.XY:
        return {"x": magnitude, "y": magnitude}
    if symmetry == SymmetryClass.HEISENBERG:
        return {"x": magnitude, "y": magnitude, "z": magnitude}
    if symmetry == SymmetryClass.ISING:
        return {"z": magnitude}
    if symmetry == SymmetryClass.HEISENBERG_TYPE:
        m = abs(magnitude)
        return {axis: rng.uniform(-m, m) for axis in AXES}
    raise ValueError(f"unknown symmetry class {symmetry}")


def _sector_terms(sector: str, bonds, symmetry, magnitude, seed):
    if magnitude == 0:
        return []
    rng = np.random.default_rng(seed)
    terms = []
    for a, b in bonds:
        for axis, strength in _axis_strengths(symmetry, magnitude, rng).items():
            terms.append(Term(sector, a, b, axis, float(strength)))
    return terms


def build_model(spec: ModelSpec) -> CouplingTable:
    """Deterministic coupling table for H = H_S + H_E + H_SE."""
    n_s, n_e = spec.partition.n_s, spec.partition.n_e
    terms = []
    bonds_s = _topology_bonds(spec.system.topology, n_s, spec.system.bonds)
    terms += _sector_terms("S", bonds_s, spec.system.symmetry,
                           spec.system.magnitude, spec.system.seed)
    bonds_e = tuple((a + n_s, b + n_s) for a, b in
                    _topology_bonds(spec.environment.topology, n_e, spec.environment.bonds))
    terms += _sector_terms("E", bonds_e, spec.environment.symmetry,
                           spec.environment.magnitude, spec.environment.seed)
    bonds_se = tuple((s, e) for s in range(n_s) for e in range(n_s, n_s + n_e))
    terms += _sector_terms("SE", bonds_se, spec.coupling.symmetry,
                           spec.coupling.magnitude, spec.coupling.seed)
    return CouplingTable(tuple(terms))


def sector_table(table: CouplingTable, partition: StatePartition, sector: str) -> CouplingTable:
    """Single-sector table with local site numbering (environment sites shifted to 0)."""
    shift = partition.n_s if sector == "E" else 0
    return CouplingTable(tuple(
        Term(t.sector, t.a - shift, t.b - shift, t.axis, t.strength)
        for t in table.filtered(sector)))


DUMP_HEADER = "# sector a b axis strength"


def dump_model(table: CouplingTable) -> str:
    """Canonical lossless listing; lines sorted lexicographically."""
    lines = [f"{t.sector} {t.a} {t.b} {t.axis} {t.strength!r}" for t in table.terms]
    return "\n".join([DUMP_HEADER] + sorted(lines)) + "\n"


def parse_model(text: str) -> CouplingTable:
    terms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        sector, a, b, axis, strength = line.split()
        terms.append(Term(sector, int(a), int(b), axis, float(strength)))
    return CouplingTable(tuple(terms))
