"""Config-driven command line: run trajectories, print spectra, compute the
LDOS, and re-fit metric tables.

Config format (ini-style, # comments):

    [system]       n, symmetry, topology, bonds, J, initial, seed
    [environment]  n, symmetry, topology, bonds, Omega, initial, seed
    [coupling]     symmetry, Delta, seed
    [run]          tau, steps, seed, out, ldos_out, fit, dump_couplings

All randomness derives from the master seed in [run] through fixed
per-purpose subseeds (see PURPOSES); sector seeds given explicitly in the
config override the derived ones.
"""

import argparse
import configparser
import hashlib
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import errors
from .eigensolve import GroundResult, SpectrumS, eig_dense, lanczos_ground
from .errors import ConfigError
from .fitting import fit_relaxation
from .hamiltonian import DENSE_MAX_DIM, HamiltonianHandle
from .model import (CouplingSpec, CouplingTable, ModelSpec, SectorSpec,
                    SymmetryClass, Topology, build_model, dump_model, sector_table)
from .observables import autocorrelation, ldos, metrics, reduced_density, to_eigenbasis
from .propagator import plan_step, evolve
from .spinspace import (InitialStateKind, StatePartition, StateVector,
                        make_basis_state, make_random_state, partition_new,
                        tensor_product)

DEFAULT_TAU = np.pi / 10.0

# fixed purpose ids for subseed derivation from the master seed
PURPOSES = {
    "system_couplings": 0,
    "environment_couplings": 1,
    "se_couplings": 2,
    "system_initial": 3,
    "environment_initial": 4,
}


def subseed(master: int, purpose: str) -> int:
    return int(np.random.SeedSequence(entropy=master,
                                      spawn_key=(PURPOSES[purpose],)).generate_state(1)[0])


@dataclass
class RunSpec:
    model: ModelSpec
    initial_s: InitialStateKind
    initial_e: InitialStateKind
    tau: float
    steps: int
    master_seed: int
    out: Optional[str]
    ldos_out: Optional[str]
    fit: str                   # none | exp | gauss
    dump_couplings: Optional[str]


def _parse_bonds(text: str):
    bonds = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            a, b = chunk.split("-")
            bonds.append((int(a), int(b)))
        except ValueError:
            raise ConfigError(f"bad bond entry {chunk!r} (expected 'a-b')")
    return tuple(bonds)


def _get(section, key, convert, default=None, required=False):
    if key not in section:
        if required:
            raise ConfigError(f"missing key '{key}' in section [{section.name}]")
        return default
    try:
        return convert(section[key])
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"bad value for '{key}' in [{section.name}]: {exc}")


def _symmetry(text):
    return SymmetryClass(text.strip().lower())


def _topology(text):
    return Topology(text.strip().lower())


def _initial(text):
    return InitialStateKind(text.strip().upper())


def parse_config(text: str, overrides=()) -> RunSpec:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), strict=False)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse failure: {exc}")
    for item in overrides:
        try:
            dotted, value = item.split("=", 1)
            section, key = dotted.split(".", 1)
        except ValueError:
            raise ConfigError(f"bad override {item!r} (expected section.key=value)")
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section.strip(), key.strip(), value.strip())
    for name in ("system", "environment", "run"):
        if not parser.has_section(name):
            raise ConfigError(f"missing section [{name}]")

    sys_sec = parser["system"]
    env_sec = parser["environment"]
    cpl_sec = parser["coupling"] if parser.has_section("coupling") else {}
    run_sec = parser["run"]

    master_seed = _get(run_sec, "seed", int, default=0)
    n_s = _get(sys_sec, "n", int, required=True)
    n_e = _get(env_sec, "n", int, required=True)
    partition = partition_new(n_s, n_e)

    system = SectorSpec(
        symmetry=_get(sys_sec, "symmetry", _symmetry, required=True),
        topology=_get(sys_sec, "topology", _topology, default=Topology.RING),
        magnitude=_get(sys_sec, "j", float, required=True),
        seed=_get(sys_sec, "seed", int, default=subseed(master_seed, "system_couplings")),
        bonds=_get(sys_sec, "bonds", _parse_bonds),
    )
    environment = SectorSpec(
        symmetry=_get(env_sec, "symmetry", _symmetry, required=True),
        topology=_get(env_sec, "topology", _topology, default=Topology.FULL),
        magnitude=_get(env_sec, "omega", float, required=True),
        seed=_get(env_sec, "seed", int, default=subseed(master_seed, "environment_couplings")),
        bonds=_get(env_sec, "bonds", _parse_bonds),
    )
    if isinstance(cpl_sec, dict) and not cpl_sec:
        coupling = CouplingSpec(SymmetryClass.HEISENBERG_TYPE, 0.0,
                                subseed(master_seed, "se_couplings"))
    else:
        coupling = CouplingSpec(
            symmetry=_get(cpl_sec, "symmetry", _symmetry,
                          default=SymmetryClass.HEISENBERG_TYPE),
            magnitude=_get(cpl_sec, "delta", float, required=True),
            seed=_get(cpl_sec, "seed", int, default=subseed(master_seed, "se_couplings")),
        )
    fit_kind = _get(run_sec, "fit", str, default="none").strip().lower()
    if fit_kind not in ("none", "exp", "gauss"):
        raise ConfigError(f"bad value for 'fit' in [run]: {fit_kind!r}")
    return RunSpec(
        model=ModelSpec(partition, system, environment, coupling),
        initial_s=_get(sys_sec, "initial", _initial, default=InitialStateKind.RANDOM),
        initial_e=_get(env_sec, "initial", _initial, default=InitialStateKind.RANDOM),
        tau=_get(run_sec, "tau", float, default=DEFAULT_TAU),
        steps=_get(run_sec, "steps", int, default=100),
        master_seed=master_seed,
        out=_get(run_sec, "out", str),
        ldos_out=_get(run_sec, "ldos_out", str),
        fit=fit_kind,
        dump_couplings=_get(run_sec, "dump_couplings", str),
    )


def resolved_config_lines(spec: RunSpec):
    """Canonical key=value rendering of the resolved run, for output headers."""
    m = spec.model
    return [
        f"[system] n={m.partition.n_s} symmetry={m.system.symmetry.value}"
        f" topology={m.system.topology.value} J={m.system.magnitude!r}"
        f" initial={spec.initial_s.value} seed={m.system.seed}"
        + (f" bonds={','.join(f'{a}-{b}' for a, b in m.system.bonds)}" if m.system.bonds else ""),
        f"[environment] n={m.partition.n_e} symmetry={m.environment.symmetry.value}"
        f" topology={m.environment.topology.value} Omega={m.environment.magnitude!r}"
        f" initial={spec.initial_e.value} seed={m.environment.seed}"
        + (f" bonds={','.join(f'{a}-{b}' for a, b in m.environment.bonds)}"
           if m.environment.bonds else ""),
        f"[coupling] symmetry={m.coupling.symmetry.value}"
        f" Delta={m.coupling.magnitude!r} seed={m.coupling.seed}",
        f"[run] tau={spec.tau!r} steps={spec.steps} seed={spec.master_seed} fit={spec.fit}",
    ]


def _sector_state(spec: RunSpec, table: CouplingTable, sector: str) -> np.ndarray:
    partition = spec.model.partition
    kind = spec.initial_s if sector == "system" else spec.initial_e
    label = "S" if sector == "system" else "E"
    n = partition.n_s if sector == "system" else partition.n_e
    seed = subseed(spec.master_seed,
                   "system_initial" if sector == "system" else "environment_initial")
    if kind in (InitialStateKind.UU, InitialStateKind.UD):
        return make_basis_state(partition, kind, sector)
    if kind in (InitialStateKind.RANDOM, InitialStateKind.RR):
        return make_random_state(partition, kind, sector, seed)
    # GROUND: dense below the guard, Lanczos above
    local = sector_table(table, partition, label)
    handle = HamiltonianHandle(partition_new(max(n, 1), 0), local)
    dim = 1 << n
    if dim <= DENSE_MAX_DIM:
        spectrum = eig_dense(handle.build_dense())
        members = spectrum.vectors[:, spectrum.classes[0]]
        if members.shape[1] == 1:
            return members[:, 0].astype(np.complex128)
        rng = np.random.default_rng(seed)
        coeff = rng.standard_normal(members.shape[1]) + 1j * rng.standard_normal(members.shape[1])
        combo = members @ coeff
        return combo / np.linalg.norm(combo)
    result: GroundResult = lanczos_ground(lambda v: handle.apply_array(v), dim, seed=seed)
    return result.vector


def system_spectrum(spec: RunSpec, table: CouplingTable) -> SpectrumS:
    partition = spec.model.partition
    handle = HamiltonianHandle(partition_new(partition.n_s, 0),
                               sector_table(table, partition, "S"))
    return eig_dense(handle.build_dense())


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _write_metrics_csv(path, spec, table_hash, spectrum, rows):
    n = len(spectrum.eigenvalues)
    header = ["step", "t", "E_S", "b", "delta", "sigma", "mu"] \
        + [f"p_{i + 1}" for i in range(n)]
    lines = ["# spinrelax metrics"]
    lines += [f"# {line}" for line in resolved_config_lines(spec)]
    lines.append(f"# couplings_sha256={table_hash}")
    lines.append(",".join(header))
    for step, sample, diag in rows:
        values = [str(step), _fmt(sample.t), _fmt(sample.energy), _fmt(sample.b),
                  _fmt(sample.delta), _fmt(sample.sigma), _fmt(sample.mu)]
        values += [_fmt(p) for p in diag]
        lines.append(",".join(values))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_ldos_csv(path, spec, table_hash, result):
    lines = ["# spinrelax ldos"]
    lines += [f"# {line}" for line in resolved_config_lines(spec)]
    lines.append(f"# couplings_sha256={table_hash}")
    lines.append("E,ldos")
    for e, w in zip(result.energies, result.weights):
        lines.append(f"{_fmt(e)},{_fmt(w)}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def run_trajectory(spec: RunSpec, collect_overlaps: bool = False):
    """Propagate one trajectory, sampling metrics at t = m*tau for m = 0..steps.

    Returns (spectrum, rows, overlaps, table, table_hash) where each row is
    (step, MetricsSample, eigenbasis populations in ascending-energy order).
    """
    table = build_model(spec.model)
    table_hash = hashlib.sha256(dump_model(table).encode()).hexdigest()
    spectrum = system_spectrum(spec, table)
    handle = HamiltonianHandle(spec.model.partition, table)
    psi = tensor_product(_sector_state(spec, table, "system"),
                         _sector_state(spec, table, "environment"),
                         spec.model.partition)
    radius = handle.spectral_bound()
    plan = plan_step(max(radius, 1e-12), spec.tau) if radius > 0 else None
    psi0 = psi
    rows = []
    overlaps = []
    for step in range(spec.steps + 1):
        rho = to_eigenbasis(reduced_density(psi), spectrum)
        sample = metrics(rho, spectrum, step * spec.tau)
        rows.append((step, sample, rho.matrix.diagonal().real.copy()))
        if collect_overlaps:
            overlaps.append(autocorrelation(psi0, psi))
        if step < spec.steps and plan is not None:
            psi = evolve(handle, psi, plan)
    return spectrum, rows, np.array(overlaps), table, table_hash


def fit_report(rows, tau, model):
    """Exponential (or Gaussian) relaxation fits of sigma(t) and b(t)."""
    t = np.array([s.t for _, s, _ in rows])
    sigma = np.array([s.sigma for _, s, _ in rows])
    b = np.array([s.b for _, s, _ in rows])
    lines = []
    fit_sigma = fit_relaxation(t, sigma, model)
    lines.append(f"sigma: y_inf={fit_sigma.offset:.6g} A={fit_sigma.amplitude:.6g}"
                 f" T2={fit_sigma.time_constant / tau:.6g} tau"
                 f" rms={fit_sigma.residual:.3g}"
                 + (" (degenerate)" if fit_sigma.degenerate else ""))
    valid = np.isfinite(b)
    if valid.sum() >= 8:
        fit_b = fit_relaxation(t[valid], b[valid], model)
        lines.append(f"b:     y_inf={fit_b.offset:.6g} B={fit_b.amplitude:.6g}"
                     f" T1={fit_b.time_constant / tau:.6g} tau"
                     f" rms={fit_b.residual:.3g}"
                     + (" (degenerate)" if fit_b.degenerate else ""))
    return lines


def _cmd_run(args):
    spec = parse_config(open(args.config, encoding="utf-8").read(), args.set or ())
    want_ldos = spec.ldos_out is not None
    spectrum, rows, overlaps, table, table_hash = run_trajectory(spec, want_ldos)
    if spec.dump_couplings:
        with open(spec.dump_couplings, "w", encoding="utf-8") as fh:
            fh.write(dump_model(table))
    out = spec.out or "metrics.csv"
    _write_metrics_csv(out, spec, table_hash, spectrum, rows)
    if want_ldos:
        handle = HamiltonianHandle(spec.model.partition, table)
        result = ldos(overlaps, spec.tau, handle.spectral_bound())
        _write_ldos_csv(spec.ldos_out, spec, table_hash, result)
    if spec.fit != "none":
        for line in fit_report(rows, spec.tau, spec.fit):
            print(line)
    print(f"wrote {out} ({len(rows)} samples)")
    return 0


def _cmd_spectrum(args):
    spec = parse_config(open(args.config, encoding="utf-8").read(), args.set or ())
    table = build_model(spec.model)
    spectrum = system_spectrum(spec, table)
    print("index,E")
    for i, e in enumerate(spectrum.eigenvalues):
        print(f"{i + 1},{_fmt(e)}")
    print("# degeneracy classes: "
          + " ".join("{" + ",".join(str(i + 1) for i in cls) + "}"
                     for cls in spectrum.classes))
    return 0


def _cmd_ldos(args):
    spec = parse_config(open(args.config, encoding="utf-8").read(), args.set or ())
    _, _, overlaps, table, table_hash = run_trajectory(spec, collect_overlaps=True)
    handle = HamiltonianHandle(spec.model.partition, table)
    result = ldos(overlaps, spec.tau, handle.spectral_bound())
    out = spec.ldos_out or "ldos.csv"
    _write_ldos_csv(out, spec, table_hash, result)
    print(f"wrote {out} ({len(result.energies)} bins)")
    return 0


def read_metrics_csv(path):
    """Columns of a metrics CSV as a dict of arrays (populations under 'p')."""
    header = None
    data = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
            else:
                data.append([float(x) for x in line.split(",")])
    if header is None:
        raise ConfigError(f"no header row in {path}")
    arr = np.array(data)
    cols = {name: arr[:, i] for i, name in enumerate(header) if not name.startswith("p_")}
    cols["p"] = arr[:, [i for i, n in enumerate(header) if n.startswith("p_")]]
    return cols


def _cmd_fit(args):
    cols = read_metrics_csv(args.metrics)
    y = cols[args.column]
    valid = np.isfinite(y)
    result = fit_relaxation(cols["t"][valid], y[valid], args.model)
    print(f"column={args.column} model={result.model}")
    print(f"y_inf={result.offset:.8g}")
    print(f"amplitude={result.amplitude:.8g}")
    print(f"time_constant={result.time_constant:.8g}")
    print(f"rms_residual={result.residual:.4g}")
    if result.degenerate:
        print("degenerate=true")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="spinrelax",
                                     description="closed spin-1/2 thermalization simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="propagate a trajectory and write metrics")
    p_run.add_argument("config")
    p_run.add_argument("--set", action="append", metavar="section.key=value")
    p_run.set_defaults(func=_cmd_run)

    p_spec = sub.add_parser("spectrum", help="print the system-sector spectrum")
    p_spec.add_argument("config")
    p_spec.add_argument("--set", action="append", metavar="section.key=value")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_ldos = sub.add_parser("ldos", help="compute the local density of states")
    p_ldos.add_argument("config")
    p_ldos.add_argument("--set", action="append", metavar="section.key=value")
    p_ldos.set_defaults(func=_cmd_ldos)

    p_fit = sub.add_parser("fit", help="re-fit an existing metrics CSV")
    p_fit.add_argument("metrics")
    p_fit.add_argument("--column", default="sigma")
    p_fit.add_argument("--model", default="exp", choices=["exp", "gauss"])
    p_fit.set_defaults(func=_cmd_fit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (errors.OutOfRange, errors.TooLarge, errors.BadTopology) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except (errors.SpinRelaxError, FloatingPointError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
