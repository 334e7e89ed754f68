"""Matrix-free simulator of closed spin-1/2 system+bath dynamics with
Chebyshev time propagation and canonical-relaxation thermometry."""

from .spinspace import (InitialStateKind, StatePartition, StateVector,
                        make_basis_state, make_random_state, partition_new,
                        tensor_product)
from .model import (CouplingSpec, CouplingTable, ModelSpec, SectorSpec,
                    SymmetryClass, Term, Topology, build_model, dump_model,
                    parse_model, sector_table)
from .hamiltonian import HamiltonianHandle
from .propagator import ChebyshevPlan, bessel_j_sequence, evolve, plan_step
from .eigensolve import GroundResult, SpectrumS, eig_dense, lanczos_ground
from .observables import (LdosResult, MetricsSample, ReducedDensityMatrix,
                          autocorrelation, ldos, metrics, reduced_density,
                          to_eigenbasis)
from .fitting import FitResult, fit_relaxation

__all__ = [
    "InitialStateKind", "StatePartition", "StateVector", "make_basis_state",
    "make_random_state", "partition_new", "tensor_product",
    "CouplingSpec", "CouplingTable", "ModelSpec", "SectorSpec", "SymmetryClass",
    "Term", "Topology", "build_model", "dump_model", "parse_model", "sector_table",
    "HamiltonianHandle",
    "ChebyshevPlan", "bessel_j_sequence", "evolve", "plan_step",
    "GroundResult", "SpectrumS", "eig_dense", "lanczos_ground",
    "LdosResult", "MetricsSample", "ReducedDensityMatrix", "autocorrelation",
    "ldos", "metrics", "reduced_density", "to_eigenbasis",
    "FitResult", "fit_relaxation",
]

__version__ = "0.1.0"
