import numpy as np
import pytest

import spinrelax as sr


def random_model(n_s, n_e, seed, j=-1.0, omega=1.0, delta=0.3,
                 system_symmetry=sr.SymmetryClass.HEISENBERG,
                 system_topology=sr.Topology.RING,
                 coupling_symmetry=sr.SymmetryClass.HEISENBERG_TYPE):
    partition = sr.partition_new(n_s, n_e)
    spec = sr.ModelSpec(
        partition,
        sr.SectorSpec(system_symmetry, system_topology, j, seed),
        sr.SectorSpec(sr.SymmetryClass.HEISENBERG_TYPE, sr.Topology.FULL, omega, seed + 1),
        sr.CouplingSpec(coupling_symmetry, delta, seed + 2),
    )
    return partition, sr.build_model(spec)


def random_state(partition, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(partition.dim) + 1j * rng.standard_normal(partition.dim)
    return sr.StateVector(partition, v / np.linalg.norm(v))


@pytest.fixture
def fig1_system():
    """Heisenberg ring, J=-1, n_s=4: four distinct eigenvalues."""
    partition, table = random_model(4, 0, seed=0, omega=0.0, delta=0.0)
    return partition, sr.HamiltonianHandle(partition, table)
