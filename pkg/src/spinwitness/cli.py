"""Command-line front end.

Subcommands
    table           exact bound table for a list of odd K
    verify          run the full self-verification suite on one ensemble
    noise-sweep     closed form vs brute-force channel across a noise grid
    simulate        Monte-Carlo protocol run with a detection verdict
    seesaw          product-state maximization over every bipartition
    general-witness odd-function witness coupling and separable bound

Every command is deterministic given its flags (seeds included).  Rational
quantities are printed both as "num/den" strings and as 17-significant-digit
floats.  When --out is given, a sibling <out>.manifest.json records the
command, parameters, package version, timestamp, and output checksum.
Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from .classical import classical_score
from .noise import NoiseModel, apply_depolarizing, detection_thresholds, noisy_score_global, noisy_score_local
from .protocol import ProtocolConfig, run_protocol, run_protocol_subensembles
from .seesaw import enumerate_bipartitions, seesaw_maximize
from .spin import SpinEnsemble, collective_operator
from .states import ghz_like, ghz_mixture
from .witness import (
    build_qk_closed_form,
    build_qk_direct,
    generalized_witness,
    phase_for_ghz,
    score,
    witness_report,
)
from .spin import rotate_about_z

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_spins(text: str) -> SpinEnsemble:
    try:
        spins = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise UsageError(f"cannot parse ensemble spec {text!r}; expected e.g. '0.5,0.5,0.5'")
    if not spins:
        raise UsageError("empty ensemble spec")
    try:
        return SpinEnsemble(spins)
    except ValueError as exc:
        raise UsageError(str(exc))


def _parse_grid(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid {text!r} must be start:stop:step or comma-separated values")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise UsageError(f"cannot parse grid {text!r}")
        if step <= 0 or stop < start:
            raise UsageError("grid needs step > 0 and stop >= start")
        return [float(v) for v in np.arange(start, stop + step / 2, step)]
    try:
        values = [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}")
    if not values:
        raise UsageError("empty grid")
    return values


def _parse_subensembles(text: str, n: int) -> tuple[tuple[int, ...], ...]:
    groups = []
    for chunk in text.split("|"):
        try:
            members = tuple(sorted(int(p) - 1 for p in chunk.split(",") if p.strip() != ""))
        except ValueError:
            raise UsageError(f"cannot parse subensembles {text!r}; expected e.g. '1|2,3' (1-based)")
        groups.append(members)
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(n)):
        raise UsageError(f"subensembles {text!r} do not partition particles 1..{n}")
    return tuple(groups)


def _emit(args, *, json_obj=None, csv_header=None, csv_rows=None, text=None) -> None:
    fmt = getattr(args, "format", None)
    if text is not None:
        payload = text
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        payload = buf.getvalue()
    else:
        payload = json.dumps(json_obj, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        manifest = {
            "command": args.command,
            "params": {
                k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out") and v is not None
            },
            "seed": getattr(args, "seed", None),
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "sha256": hashlib.sha256(payload.encode("utf-8")).hexdigest(),
        }
        with open(str(out) + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(json.dumps(manifest, indent=2) + "\n")
    else:
        sys.stdout.write(payload)


def cmd_table(args) -> int:
    rows, ok = [], 0
    for k in args.K:
        if k < 1 or k % 2 == 0:
            rows.append({"K": k, "error": f"K={k} is not a positive odd integer"})
            continue
        rep = witness_report(k)
        ok += 1
        rows.append(
            {
                "K": k,
                "P_max": _frac(rep.P_max),
                "P_max_float": rep.P_max_float,
                "P_sep": _frac(rep.P_sep),
                "P_sep_float": rep.P_sep_float,
                "P_classical": _frac(rep.P_classical),
                "P_classical_float": rep.P_classical_float,
                "gap": _frac(rep.gap),
                "gap_float": rep.gap_float,
            }
        )
    header = [
        "K", "P_max", "P_max_float", "P_sep", "P_sep_float",
        "P_classical", "P_classical_float", "gap", "gap_float", "error",
    ]
    csv_rows = [
        [row.get("K"), row.get("P_max", ""), _fmt(row["P_max_float"]) if "P_max_float" in row else "",
         row.get("P_sep", ""), _fmt(row["P_sep_float"]) if "P_sep_float" in row else "",
         row.get("P_classical", ""), _fmt(row["P_classical_float"]) if "P_classical_float" in row else "",
         row.get("gap", ""), _fmt(row["gap_float"]) if "gap_float" in row else "", row.get("error", "")]
        for row in rows
    ]
    _emit(args, json_obj={"schema": SCHEMA_VERSION, "command": "table", "rows": rows},
          csv_header=header, csv_rows=csv_rows)
    return 0 if ok > 0 else 1


def _verify_checks(ensemble: SpinEnsemble, restarts: int, seed: int) -> list[tuple[str, bool, str]]:
    checks = []
    rep = witness_report(ensemble.K)

    direct = build_qk_direct(ensemble)
    closed = build_qk_closed_form(ensemble)
    dev = float(np.abs(direct.Q - closed.Q).max())
    checks.append(("cross-construction", dev < 1e-10, f"max entry deviation {dev:.2e}"))

    eigs = np.linalg.eigvalsh(closed.Q)
    expected = np.sort(np.concatenate([[rep.P_max_float, 1 - rep.P_max_float], np.full(ensemble.dim - 2, 0.5)]))
    spec_dev = float(np.abs(np.sort(eigs) - expected).max())
    checks.append(("spectrum", spec_dev < 1e-10, f"eigenvalue deviation {spec_dev:.2e}"))

    J = collective_operator(ensemble)
    sym_x = float(np.abs(rotate_about_z(direct.Q, J.Jx, np.pi) - direct.Q).max())
    sym_z = float(np.abs(rotate_about_z(direct.Q, J.Jz, 2 * np.pi / ensemble.K) - direct.Q).max())
    checks.append(("symmetry", max(sym_x, sym_z) < 1e-10, f"pi-about-x {sym_x:.2e}, 2pi/K-about-z {sym_z:.2e}"))

    if ensemble.N >= 2:
        values = [
            seesaw_maximize(direct, bip, restarts=restarts, seed=seed).best_value
            for bip in enumerate_bipartitions(ensemble)
        ]
        dev_bound = max(abs(v - rep.P_sep_float) for v in values)
        overshoot = max(v - rep.P_sep_float for v in values)
        spread = max(values) - min(values)
        passed = dev_bound < 1e-6 and overshoot <= 1e-9 and spread < 1e-6
        checks.append(
            ("seesaw", passed, f"{len(values)} bipartitions, max |value - P_sep| {dev_bound:.2e}, spread {spread:.2e}")
        )
    else:
        checks.append(("seesaw", True, "single particle: no bipartitions to check"))

    state = ghz_like(ensemble, phi=np.pi * (ensemble.K - 1) / 2)
    worst = 0.0
    for p in (0.0, 0.1, 0.25, 0.5, 0.9):
        noisy = apply_depolarizing(state, NoiseModel("global", p_global=p))
        worst = max(worst, abs(score(noisy, direct) - noisy_score_global(ensemble.K, p)))
        noisy = apply_depolarizing(state, NoiseModel("local", p_locals=(p,) * ensemble.N))
        worst = max(worst, abs(score(noisy, direct) - noisy_score_local(ensemble, (p,) * ensemble.N)))
    checks.append(("noise-closed-form", worst < 1e-10, f"max closed-form vs channel deviation {worst:.2e}"))
    return checks


def cmd_verify(args) -> int:
    ensemble = _parse_spins(args.spins)
    checks = _verify_checks(ensemble, args.restarts, args.seed)
    lines = [
        f"ensemble {','.join(_fmt(j) for j in ensemble.spins)}  K={ensemble.K}  dim={ensemble.dim}",
    ]
    for name, passed, detail in checks:
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    all_pass = all(p for _, p, _ in checks)
    lines.append("all checks passed" if all_pass else "verification FAILED")
    _emit(args, text="\n".join(lines) + "\n")
    return 0 if all_pass else 1


def cmd_noise_sweep(args) -> int:
    ensemble = _parse_spins(args.spins)
    grid = _parse_grid(args.grid)
    if any(not 0 <= p <= 1 for p in grid):
        raise UsageError("noise grid values must lie in [0, 1]")
    rep = witness_report(ensemble.K)
    phi = np.pi * (ensemble.K - 1) / 2  # the state the zero-offset witness detects
    state = ghz_like(ensemble, phi=phi)
    witness = build_qk_direct(ensemble)
    rows = []
    for p in grid:
        if args.model == "global":
            closed = noisy_score_global(ensemble.K, p)
            noisy = apply_depolarizing(state, NoiseModel("global", p_global=p))
        else:
            closed = noisy_score_local(ensemble, (p,) * ensemble.N)
            noisy = apply_depolarizing(state, NoiseModel("local", p_locals=(p,) * ensemble.N))
        brute = score(noisy, witness)
        rows.append({"p": p, "closed_form_score": closed, "brute_force_score": brute,
                     "detected": bool(closed > rep.P_sep_float)})
    json_rows = [
        {"p": r["p"], "closed_form_score": r["closed_form_score"],
         "brute_force_score": r["brute_force_score"], "detected": r["detected"]}
        for r in rows
    ]
    csv_rows = [[_fmt(r["p"]), _fmt(r["closed_form_score"]), _fmt(r["brute_force_score"]),
                 str(r["detected"]).lower()] for r in rows]
    _emit(
        args,
        json_obj={"schema": SCHEMA_VERSION, "command": "noise-sweep", "model": args.model,
                  "spins": list(ensemble.spins), "sep_bound": _frac(rep.P_sep), "rows": json_rows},
        csv_header=["p", "closed_form_score", "brute_force_score", "detected"],
        csv_rows=csv_rows,
    )
    return 0


def cmd_simulate(args) -> int:
    if args.spins:
        ensemble = _parse_spins(args.spins)
    elif args.K:
        if args.K < 1 or args.K % 2 == 0:
            raise UsageError(f"--K must be a positive odd integer, got {args.K}")
        ensemble = SpinEnsemble((0.5,) * args.K)
    else:
        raise UsageError("simulate needs --spins or --K")
    K = ensemble.K
    phi = args.phi if args.phi is not None else np.pi * (K - 1) / 2
    theta = phase_for_ghz(phi, K)
    state = ghz_mixture(ensemble) if args.state == "mixture" else ghz_like(ensemble, phi=phi)
    if args.p is not None or args.p_list is not None:
        if args.model == "local" or args.p_list is not None:
            ps = [float(x) for x in args.p_list.split(",")] if args.p_list else [args.p] * ensemble.N
            if len(ps) != ensemble.N:
                raise UsageError(f"--p-list needs {ensemble.N} entries")
            state = apply_depolarizing(state, NoiseModel("local", p_locals=tuple(ps)))
        else:
            state = apply_depolarizing(state, NoiseModel("global", p_global=args.p))
    subensembles = _parse_subensembles(args.subensembles, ensemble.N) if args.subensembles else None
    config = ProtocolConfig(
        ensemble=ensemble, state=state, rounds=args.rounds, seed=args.seed,
        theta_offset=theta, subensembles=subensembles,
    )
    estimate = run_protocol_subensembles(config) if subensembles else run_protocol(config)
    rep = witness_report(K)
    verdict = "GME-detected" if estimate.ci_low > rep.P_sep_float else "inconclusive"
    obj = {
        "schema": SCHEMA_VERSION,
        "command": "simulate",
        "spins": list(ensemble.spins),
        "K": K,
        "phi": float(phi),
        "theta_offset": float(theta),
        "state": args.state,
        "rounds": args.rounds,
        "seed": args.seed,
        "subensembles": [list(g) for g in subensembles] if subensembles else None,
        "p_hat": estimate.p_hat,
        "ci_low": estimate.ci_low,
        "ci_high": estimate.ci_high,
        "per_k_counts": [list(pair) for pair in estimate.per_k_counts],
        "sep_bound": _frac(rep.P_sep),
        "sep_bound_float": rep.P_sep_float,
        "verdict": verdict,
    }
    _emit(args, json_obj=obj)
    return 0


def cmd_seesaw(args) -> int:
    ensemble = _parse_spins(args.spins)
    if ensemble.N < 2:
        raise UsageError("seesaw needs at least two particles")
    rep = witness_report(ensemble.K)
    witness = build_qk_direct(ensemble)
    rows = []
    for bip in enumerate_bipartitions(ensemble):
        result = seesaw_maximize(witness, bip, restarts=args.restarts, seed=args.seed)
        label = ",".join(str(i + 1) for i in bip.subset_J) + "|" + ",".join(str(i + 1) for i in bip.complement)
        rows.append({"bipartition": label, "best_value": result.best_value,
                     "iterations": result.iterations, "converged": result.converged})
    values = [r["best_value"] for r in rows]
    spread = max(values) - min(values)
    all_ok = all(abs(v - rep.P_sep_float) < 1e-6 and v <= rep.P_sep_float + 1e-9 for v in values)
    obj = {
        "schema": SCHEMA_VERSION, "command": "seesaw", "spins": list(ensemble.spins),
        "sep_bound": _frac(rep.P_sep), "sep_bound_float": rep.P_sep_float,
        "spread": spread, "rows": rows,
    }
    csv_rows = [[r["bipartition"], _fmt(r["best_value"]), r["iterations"], str(r["converged"]).lower()]
                for r in rows]
    _emit(args, json_obj=obj, csv_header=["bipartition", "best_value", "iterations", "converged"],
          csv_rows=csv_rows)
    return 0 if all_ok else 1


_F_ODD_CHOICES = {
    "sign": lambda x: float(np.sign(x)),
    "half-sign": lambda x: float(np.sign(x)) / 2,
    "linear": lambda x: float(x),
    "cubic": lambda x: float(x) ** 3,
}


def cmd_general_witness(args) -> int:
    ensemble = _parse_spins(args.spins)
    gw = generalized_witness(ensemble, args.f0, _F_ODD_CHOICES[args.f_odd])
    rep = witness_report(ensemble.K)
    obj = {
        "schema": SCHEMA_VERSION, "command": "general-witness", "spins": list(ensemble.spins),
        "f0": args.f0, "f_odd": args.f_odd, "f_K": gw.f_K, "sep_bound": gw.sep_bound,
        "pos_witness_sep_bound_float": rep.P_sep_float,
    }
    _emit(args, json_obj=obj,
          csv_header=["f0", "f_odd", "f_K", "sep_bound"],
          csv_rows=[[_fmt(args.f0), args.f_odd, _fmt(gw.f_K), _fmt(gw.sep_bound)]])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinwitness", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--out", help="write output here (plus a sibling .manifest.json)")
        p.add_argument("--format", choices=["csv", "json"], default=fmt_default)

    p = sub.add_parser("table", help="exact bound table per K")
    p.add_argument("--K", type=int, nargs="+", required=True)
    common(p, fmt_default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="self-verification suite for one ensemble")
    p.add_argument("--spins", required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("noise-sweep", help="noisy scores across a grid")
    p.add_argument("--spins", required=True)
    p.add_argument("--model", choices=["global", "local"], default="global")
    p.add_argument("--grid", default="0:1:0.05")
    common(p, fmt_default="csv")
    p.set_defaults(func=cmd_noise_sweep)

    p = sub.add_parser("simulate", help="Monte-Carlo protocol run")
    p.add_argument("--spins")
    p.add_argument("--K", type=int)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--state", choices=["ghz", "mixture"], default="ghz")
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subensembles")
    p.add_argument("--model", choices=["global", "local"], default="global")
    p.add_argument("--p", type=float)
    p.add_argument("--p-list", dest="p_list")
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("seesaw", help="bipartition product-state maximization")
    p.add_argument("--spins", required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_seesaw)

    p = sub.add_parser("general-witness", help="odd-function witness bound")
    p.add_argument("--spins", required=True)
    p.add_argument("--f0", type=float, default=0.5)
    p.add_argument("--f-odd", dest="f_odd", choices=sorted(_F_ODD_CHOICES), default="half-sign")
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_general_witness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
