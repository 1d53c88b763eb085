"""Command-line entry point: verify | sharp | wave | selftest | corpus.

Outputs are deterministic given config + seed: CSV bodies are byte-identical
across reruns (17 significant digits, no timestamps); run provenance lives
in a separate metadata.json.  Exit codes: 0 ok, 1 inequality violation or
Picard divergence, 2 config/schema error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .extremal import (TrialFamily, bump_scale_family, inverse_power_family,
                       power_gaussian_family, rayleigh_maximize)
from .functions import generate_corpus
from .inequalities import (InequalitySpec, THEOREMS, admissible, verify_corpus)
from .measure import weighted_lp_norm
from .spectral import classical_fourier_reference
from .waveeq import PicardDivergenceError, WaveConfig, solve_linear, solve_nonlinear, x_norm
from .workbench import Workbench, radial_workbench, rank1_workbench

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

CSV_SCHEMAS = {
    "version": 1,
    "records.csv": ["function_id", "lhs", "rhs", "ratio", "notes"],
    "trace.csv (verify/sharp)": ["evaluation", "best_ratio"],
    "trace.csv (wave)": ["t", "h1_norm", "dt_norm"],
    "snapshots.csv": ["t", "x", "u"],
    "norms.csv": ["function_id", "p", "a", "value"],
}


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _write_json(path: Path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)}")


def _require(cfg: dict, path: str, typ, where: str = "$"):
    cur = cfg
    parts = path.split(".")
    for i, part in enumerate(parts):
        if not isinstance(cur, dict) or part not in cur:
            raise ConfigError(f"{where}.{'.'.join(parts[: i + 1])}: missing required field")
        cur = cur[part]
    if typ is float and isinstance(cur, (int, float)) and not isinstance(cur, bool):
        return float(cur)
    if typ is int and isinstance(cur, int) and not isinstance(cur, bool):
        return cur
    if not isinstance(cur, typ) or isinstance(cur, bool) and typ is not bool:
        raise ConfigError(f"{where}.{path}: expected {typ.__name__}, got {type(cur).__name__}")
    return cur


def _build_workbench(cfg: dict) -> Workbench:
    mode = _require(cfg, "mode.type", str)
    m = cfg["mode"]
    kw = {}
    for name in ("rmax", "resolution", "xi_max", "xi_resolution"):
        if name in m:
            kw[name] = m[name]
    if mode == "radial":
        return radial_workbench(int(m.get("N", 3)), float(m.get("gamma", 0.0)), **kw)
    if mode == "rank1":
        kw.pop("rmax", None)
        if "rmax" in m:
            kw["xmax"] = m["rmax"]
        return rank1_workbench(float(m.get("k", 0.0)), **kw)
    raise ConfigError(f"$.mode.type: unknown mode {mode!r}")


def _build_corpus(cfg: dict, seed_override: int | None, mode: str):
    c = cfg.get("corpus", {})
    seed = int(c.get("seed", seed_override if seed_override is not None else 0))
    if seed_override is not None:
        seed = seed_override
    count = int(c.get("count", 10))
    families = c.get("families", ["Gaussian", "DilatedGaussian", "HermiteGaussian"])
    constraints = c.get("constraints", {})
    return generate_corpus(seed, count, families, constraints, mode=mode), seed


def cmd_verify(cfg: dict, out: Path, seed: int | None) -> int:
    wb = _build_workbench(cfg)
    spec = InequalitySpec(_require(cfg, "spec.theorem", str), _require(cfg, "spec.params", dict))
    rep = admissible(spec)
    corpus, seed_used = _build_corpus(cfg, seed, wb.mode)
    summary = {
        "command": "verify",
        "spec": spec.to_dict(),
        "seed": seed_used,
        "admissible": rep.admissible,
        "failed_conditions": [
            {"id": c.cid, "statement": c.statement, "residual": c.residual}
            for c in rep.failed
        ],
    }
    if not rep.admissible:
        _write_json(out / "summary.json", summary)
        return EXIT_OK
    result = verify_corpus(spec, corpus, wb)
    _write_csv(out / "records.csv",
               ["function_id", "lhs", "rhs", "ratio", "notes"],
               [(r.function_id, r.lhs, r.rhs, r.ratio, r.notes) for r in result.records])
    summary.update({
        "direction": result.direction,
        "known_bound": result.known_bound,
        "sup_ratio": result.empirical_constant,
        "violations": [r.function_id for r in result.violations],
    })
    _write_json(out / "summary.json", summary)
    return EXIT_VIOLATION if result.violations else EXIT_OK


_FAMILY_BUILDERS = {
    "PowerGaussian": power_gaussian_family,
    "InversePower": inverse_power_family,
    "BumpScale": bump_scale_family,
}


def cmd_sharp(cfg: dict, out: Path, seed: int | None) -> int:
    fam_cfg = cfg.get("family", {})
    tag = fam_cfg.get("tag", "PowerGaussian")
    if tag not in _FAMILY_BUILDERS:
        raise ConfigError(f"$.family.tag: unknown family {tag!r}")
    if tag == "InversePower":
        # heavy tails need the wide geometric rule
        mode = cfg.setdefault("mode", {"type": "radial"})
        if float(mode.get("rmax", 0.0)) < 1e12:
            mode["rmax"] = 1e30
            mode["resolution"] = max(int(mode.get("resolution", 0)), 3000)
    wb = _build_workbench(cfg)
    spec = InequalitySpec(_require(cfg, "spec.theorem", str), _require(cfg, "spec.params", dict))
    builder = _FAMILY_BUILDERS[tag]
    family: TrialFamily = builder(**{k: tuple(v) for k, v in fam_cfg.get("box", {}).items()})
    opt = cfg.get("optimizer", {})
    ceiling = THEOREMS[spec.theorem].known_bound(spec.params)
    result = rayleigh_maximize(
        spec, family, wb,
        max_iter=int(opt.get("max_iters", 120)),
        tol=float(opt.get("tolerance", 1e-4)),
        restarts=int(opt.get("restarts", 3)),
        seed=int(opt.get("seed", seed if seed is not None else 0)),
        ceiling=ceiling)
    _write_json(out / "summary.json", {
        "command": "sharp",
        "spec": spec.to_dict(),
        "family": {"tag": tag, "box": {k: list(v) for k, v in family.box.items()}},
        **result.to_dict(),
    })
    _write_csv(out / "trace.csv", ["evaluation", "best_ratio"],
               list(enumerate(result.trace)))
    return EXIT_OK


def cmd_wave(cfg: dict, out: Path, seed: int | None) -> int:
    w = cfg.get("wave", {})
    grid = w.get("grid", {})
    time = w.get("time", {})
    config = WaveConfig(
        b=float(_require(cfg, "wave.b", float)),
        m=float(_require(cfg, "wave.m", float)),
        epsilon=float(w.get("epsilon", 1.0)),
        p=None if w.get("p") is None else float(w["p"]),
        mode=w.get("mode", "rank1"),
        k=float(w.get("k", 0.0)),
        N=int(w.get("N", 1)),
        gamma=float(w.get("gamma", 0.0)),
        x_max=float(grid.get("x_max", 18.0)),
        nx=int(grid.get("nx", 360)),
        xi_max=float(grid.get("xi_max", 24.0)),
        nxi=int(grid.get("nxi", 360)),
        t_final=float(time.get("T", 10.0)),
        dt=float(time.get("dt", 0.01)),
    )
    data = w.get("data", {})
    scale = float(data.get("gaussian_scale", 1.0))

    def u0(x):
        return np.exp(-0.5 * (np.asarray(x) / scale) ** 2)
    u1 = None

    divergence = None
    if config.p is None:
        sol = solve_linear(config, u0, u1)
    else:
        try:
            sol = solve_nonlinear(config, u0, u1)
        except PicardDivergenceError as exc:
            divergence = exc
            sol = None
    if sol is not None:
        _write_csv(out / "trace.csv", ["t", "h1_norm", "dt_norm"],
                   zip(sol.times, sol.h1_trace, sol.dt_trace))
        rows = []
        for row, ti in zip(sol.snapshots, sol.snapshot_indices):
            for xval, uval in zip(sol.x_nodes, row):
                rows.append((sol.times[ti], xval, uval))
        _write_csv(out / "snapshots.csv", ["t", "x", "u"], rows)
        summary = {
            "command": "wave",
            "config": {k: v for k, v in vars(config).items() if not k.startswith("_")},
            "delta_fit": sol.delta_fit,
            "fit_residual": sol.fit_residual,
            "iterations": sol.iterations,
            "contraction_factors": sol.contraction_factors,
            "converged": sol.converged,
            "x_norm": x_norm(sol.times, sol.h1_trace, sol.dt_trace, max(sol.delta_fit * 0.9, 1e-6)),
        }
        _write_json(out / "summary.json", summary)
        return EXIT_OK
    _write_json(out / "summary.json", {
        "command": "wave",
        "divergence": True,
        "epsilon": divergence.epsilon,
        "diff_xnorms": divergence.diffs,
    })
    return EXIT_VIOLATION


def cmd_selftest(cfg: dict, out: Path, seed: int | None) -> int:
    """Plancherel + k=0 Fourier equivalence + integration by parts."""
    from .dunkl import integration_by_parts_residual
    from .functions import PolyGauss1D, gaussian
    from .measure import rank1_quadrature
    from .rootsys import build_root_system

    lines = []
    ok = True
    corpus = generate_corpus(seed if seed is not None else 1, 6,
                             ["Gaussian", "DilatedGaussian", "HermiteGaussian"],
                             mode="rank1")
    for k in (0.0, 0.3, 0.5, 1.0, 2.5):
        wb = rank1_workbench(k)
        worst = 0.0
        for f in corpus:
            fld = wb.spectral(f)
            worst = max(worst, abs(fld.l2() / wb.norm(f, 2.0) - 1.0))
        passed = worst < 1e-6
        ok &= passed
        lines.append(f"plancherel k={k:g}: max relative error {worst:.3e} "
                     f"[{'pass' if passed else 'FAIL'}]")

    wb0 = rank1_workbench(0.0)
    f = corpus[2]
    ref = classical_fourier_reference(f.value, wb0.xi_quad.nodes, wb0.quad.rmax)
    err = float(np.max(np.abs(wb0.spectral(f).values - ref)))
    passed = err < 1e-7
    ok &= passed
    lines.append(f"fourier k=0 agreement: max abs error {err:.3e} [{'pass' if passed else 'FAIL'}]")

    rs = build_root_system("Rank1Z2", 1, [0.5])
    quad = rank1_quadrature(0.5, 14.0, 420)
    g1 = PolyGauss1D((0.0, 1.0), 1.0)        # odd: x e^{-x²/2}
    g2 = gaussian("rank1", s=1.4)
    resid = integration_by_parts_residual(rs, g1.value, g2.value, quad, 0)
    passed = resid < 1e-6
    ok &= passed
    lines.append(f"integration by parts residual: {resid:.3e} [{'pass' if passed else 'FAIL'}]")

    for ln in lines:
        print(ln)
    calibration = rank1_workbench(0.5).transform.calibration_report()
    _write_json(out / "summary.json", {"command": "selftest", "ok": ok,
                                       "checks": lines, "calibration": calibration})
    return EXIT_OK if ok else EXIT_NUMERICAL


def cmd_corpus(cfg: dict, out: Path, seed: int | None) -> int:
    mode = cfg.get("mode", {}).get("type", "radial")
    wb = _build_workbench(cfg) if "mode" in cfg else radial_workbench(3, 0.0)
    corpus, seed_used = _build_corpus(cfg, seed, wb.mode)
    _write_json(out / "corpus.json", {"seed": seed_used,
                                      "members": [f.to_dict() for f in corpus]})
    norms_cfg = cfg.get("norms", [{"p": 2.0, "a": 0.0}])
    rows = []
    for f in corpus:
        for nc in norms_cfg:
            p, a = float(nc.get("p", 2.0)), float(nc.get("a", 0.0))
            rows.append((f.fid, p, a, weighted_lp_norm(f, p, a, wb.quad)))
    _write_csv(out / "norms.csv", ["function_id", "p", "a", "value"], rows)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "sharp": cmd_sharp,
    "wave": cmd_wave,
    "selftest": cmd_selftest,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dunklkit",
        description="Dunkl-operator workbench: inequality verification, "
                    "sharp-constant probes, damped wave simulations")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", type=str, default=None, help="JSON config path")
    parser.add_argument("--seed", type=int, default=None, help="override corpus/optimizer seed")
    parser.add_argument("--out", type=str, default="out", help="output directory")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker hint (DUNKLKIT_JOBS env overrides; computations "
                             "are vectorized, the hint is recorded in metadata)")
    args = parser.parse_args(argv)

    cfg = {}
    try:
        if args.config is not None:
            with open(args.config) as fh:
                try:
                    cfg = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise ConfigError(f"{args.config}:{exc.lineno}:{exc.colno}: {exc.msg}")
        elif args.command in ("verify", "sharp", "wave"):
            raise ConfigError(f"--config is required for {args.command!r}")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    from .inequalities import AdmissibilityError
    from .rootsys import RootSystemError
    from .waveeq import WaveConfigError

    jobs = os.environ.get("DUNKLKIT_JOBS", args.jobs)
    try:
        code = COMMANDS[args.command](cfg, out, args.seed)
    except (ConfigError, AdmissibilityError, RootSystemError, WaveConfigError,
            KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FloatingPointError, ArithmeticError, RuntimeError, TypeError,
            ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    _write_json(Path(args.out) / "metadata.json", {
        "tool": "dunklkit",
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "jobs": jobs,
        "numpy": np.__version__,
        "csv_schemas": CSV_SCHEMAS,
    })
    return code


if __name__ == "__main__":
    sys.exit(main())
