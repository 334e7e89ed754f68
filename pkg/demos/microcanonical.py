"""Conserved-energy counterexample: when the system-bath coupling is uniform
isotropic Heisenberg, [H_S, H] = 0 and the system cannot exchange energy.

Coherence still dies (sigma -> 0), but the populations only equalize inside
each degenerate energy subspace (mu -> 0) while staying non-Boltzmann
(delta stays finite). Takes about a minute (n_e = 10).
"""

import numpy as np

import spinrelax as sr
from spinrelax.cli import RunSpec, run_trajectory

partition = sr.partition_new(4, 10)
spec = RunSpec(
    model=sr.ModelSpec(
        partition,
        sr.SectorSpec(sr.SymmetryClass.HEISENBERG, sr.Topology.RING, -5.0, 111),
        sr.SectorSpec(sr.SymmetryClass.HEISENBERG_TYPE, sr.Topology.FULL, 0.15, 222),
        sr.CouplingSpec(sr.SymmetryClass.HEISENBERG, 0.075, 333)),
    initial_s=sr.InitialStateKind.UD,
    initial_e=sr.InitialStateKind.RANDOM,
    tau=np.pi / 10, steps=200, master_seed=8,
    out=None, ldos_out=None, fit="none", dump_couplings=None)

print(f"propagating {spec.steps} steps at D = 2^{partition.n_total} "
      "(uniform Heisenberg coupling => E_S conserved) ...")
spectrum, rows, _, _, _ = run_trajectory(spec)

e0 = rows[0][1].energy
print("\n step        E_S       delta     sigma        mu")
for step in (0, 25, 50, 100, 150, 200):
    s = rows[step][1]
    print(f"{step:5d} {s.energy:11.6f} {s.delta:9.4f} {s.sigma:9.4f} {s.mu:9.4f}")
print(f"\nE_S drift over the run: {max(abs(s.energy - e0) for _, s, _ in rows):.2e}")

print("\nfinal populations, grouped by energy subspace (equal within, "
      "non-Boltzmann across):")
for cls in spectrum.classes:
    pops = rows[-1][2][cls]
    print(f"  E = {spectrum.eigenvalues[cls[0]]:6.2f}  "
          + " ".join(f"{p:.4f}" for p in pops))
