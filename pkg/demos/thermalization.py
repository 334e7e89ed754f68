"""Desk-scale thermalization run: a Heisenberg ring coupled to a spin-glass
bath relaxes to the Boltzmann distribution.

Watch sigma (coherence) die first, then b settle on its plateau: the
decoherence time T2 comes out shorter than the energy-relaxation time T1.
Takes about a minute (n_e = 10, D = 2^14).
"""

import numpy as np

import spinrelax as sr
from spinrelax.cli import RunSpec, fit_report, run_trajectory

partition = sr.partition_new(4, 10)
spec = RunSpec(
    model=sr.ModelSpec(
        partition,
        sr.SectorSpec(sr.SymmetryClass.HEISENBERG, sr.Topology.RING, -1.0, 101),
        sr.SectorSpec(sr.SymmetryClass.HEISENBERG_TYPE, sr.Topology.FULL, 1.0, 202),
        sr.CouplingSpec(sr.SymmetryClass.HEISENBERG_TYPE, 0.3, 303)),
    initial_s=sr.InitialStateKind.UD,
    initial_e=sr.InitialStateKind.RANDOM,
    tau=np.pi / 10, steps=200, master_seed=7,
    out=None, ldos_out=None, fit="none", dump_couplings=None)

print(f"propagating {spec.steps} steps of tau = pi/10 at D = 2^{partition.n_total} ...")
spectrum, rows, _, _, _ = run_trajectory(spec)

print("\n step      E_S        b     delta     sigma        mu")
for step in (0, 10, 25, 50, 100, 150, 200):
    s = rows[step][1]
    print(f"{step:5d} {s.energy:9.4f} {s.b:8.4f} {s.delta:9.4f} {s.sigma:9.4f} {s.mu:9.4f}")

print("\nexponential relaxation fits:")
for line in fit_report(rows, spec.tau, "exp"):
    print(" ", line)

end = rows[-1][1]
print(f"\nfinal populations vs Boltzmann at b = {end.b:.4f}:")
boltz = np.exp(-end.b * spectrum.eigenvalues)
boltz /= boltz.sum()
for e, p, q in zip(spectrum.eigenvalues, rows[-1][2], boltz):
    print(f"  E = {e:5.2f}   p = {p:.4f}   canonical = {q:.4f}")
