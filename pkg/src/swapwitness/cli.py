"""Command-line front end: seeded, reproducible runs with JSON/CSV output."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .experiments import (EXPERIMENTAL_THRESHOLD, HARDWARE750, ExperimentConfig,
                          exp_bell_table, exp_detection_rate, exp_noise_ci,
                          exp_omega_sweep, exp_random_states, exp_werner_sweep,
                          trial_rng)
from .oracle import run_all_checks
from .photonic import NoiseModel, PrepPhases, estimate_p1, run_circuit, solve_phases
from .qstate import BELL_KINDS, PureTwoQubitState, bell_state
from .witness import effective_threshold, randomness_bound, witness

NOISE_PRESETS = {"hardware750": HARDWARE750}


def _parse_complex(token: str) -> complex:
    try:
        return complex(token.strip().replace("i", "j") or "0")
    except ValueError as exc:
        raise ValueError(f"malformed complex amplitude {token!r}") from exc


def parse_state(text: str) -> PureTwoQubitState:
    """Comma-separated amplitudes in (alpha, gamma, delta, beta) order."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("state must have four comma-separated amplitudes")
    a, g, d, b = (_parse_complex(p) for p in parts)
    norm = np.sqrt(abs(a) ** 2 + abs(g) ** 2 + abs(d) ** 2 + abs(b) ** 2)
    if abs(norm - 1.0) > 1e-3:
        raise ValueError(f"state norm {norm:.6f} is too far from 1")
    return PureTwoQubitState(alpha=a / norm, gamma=g / norm,
                             delta=d / norm, beta=b / norm)


def parse_phases(text: str) -> PrepPhases:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 12:
        raise ValueError("expected 12 comma-separated phases")
    return PrepPhases.from_array([float(p) for p in parts])


def parse_noise(args) -> NoiseModel | None:
    if args.noise and args.noise_preset:
        raise ValueError("--noise and --noise-preset are mutually exclusive")
    if args.noise_preset:
        try:
            return NOISE_PRESETS[args.noise_preset]
        except KeyError:
            raise ValueError(f"unknown noise preset {args.noise_preset!r}") from None
    if args.noise:
        parts = args.noise.split(",")
        if len(parts) != 3:
            raise ValueError("--noise expects t2,r2,sigma")
        return NoiseModel(t2=float(parts[0]), r2=float(parts[1]), sigma=float(parts[2]))
    return None


def _float_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapwitness",
                                     description="SWAP-test entanglement witness toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=750)
        p.add_argument("--shots", type=int, default=100_000)
        p.add_argument("--exact", action="store_true",
                       help="use exact probabilities instead of sampled shots")
        p.add_argument("--trials", type=int, default=1)
        p.add_argument("--noise", type=str, default=None, metavar="T2,R2,SIGMA")
        p.add_argument("--noise-preset", type=str, default=None,
                       choices=sorted(NOISE_PRESETS))
        p.add_argument("--threshold", type=float, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("bell", help="Bell-state table with noise CIs")
    add_common(p)
    p.add_argument("--draws", type=int, default=10_000)

    p = sub.add_parser("omega-sweep", help="sweep (|01>+e^{iw}|10>)/sqrt(2)")
    add_common(p)
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--omegas", type=str, default=None)

    p = sub.add_parser("random-states", help="random-phase confusion matrix")
    add_common(p)
    p.add_argument("--states", type=int, default=2050)

    p = sub.add_parser("werner", help="Werner-like mixed-state sweep")
    add_common(p)
    p.add_argument("--strategy", choices=("real_time", "post_processing"),
                   default="post_processing")
    p.add_argument("--ps", type=str, default=None,
                   help="comma-separated mixing weights (default 0,0.1,...,1)")

    p = sub.add_parser("detection-rate", help="Haar-random detection fraction")
    add_common(p)
    p.add_argument("--preprocessing", action="store_true")

    p = sub.add_parser("noise-ci", help="App-style 2-sigma interval for one setting")
    add_common(p)
    p.add_argument("--bell", type=str, default=None, choices=BELL_KINDS)
    p.add_argument("--phases", type=str, default=None)
    p.add_argument("--draws", type=int, default=10_000)

    p = sub.add_parser("verify", help="run every brute-force oracle check")
    add_common(p)
    p.add_argument("--guessing-samples", type=int, default=1000)

    p = sub.add_parser("witness-one", help="single-state witness verdict")
    add_common(p)
    p.add_argument("--state", type=str, default=None,
                   help="alpha,gamma,delta,beta with complex entries like 0.5+0.5i")
    p.add_argument("--phases", type=str, default=None,
                   help="12 preparation phases")
    return parser


def _config_dict(cfg: ExperimentConfig, extra: dict) -> dict:
    noise = None
    if cfg.noise is not None:
        noise = {"t2": cfg.noise.t2, "r2": cfg.noise.r2, "sigma": cfg.noise.sigma}
    out = {"seed": cfg.seed, "shots": cfg.shots, "trials": cfg.trials,
           "noise": noise, "threshold": cfg.threshold, "workers": cfg.workers}
    out.update(extra)
    return out


def _dispatch(args) -> tuple[ExperimentConfig, dict, list[dict], dict, int]:
    noise = parse_noise(args)
    threshold = args.threshold
    if threshold is None:
        threshold = EXPERIMENTAL_THRESHOLD if args.command == "random-states" else (
            effective_threshold(noise) if noise is not None else 0.5)
    cfg = ExperimentConfig(seed=args.seed,
                           shots=None if args.exact else args.shots,
                           trials=args.trials, noise=noise,
                           threshold=threshold, workers=args.workers)
    exit_code = 0

    if args.command == "bell":
        records = exp_bell_table(cfg, n_draws=args.draws)
        summary = {r["state"]: r["p1_theory"] for r in records}
        extra = {"draws": args.draws}

    elif args.command == "omega-sweep":
        omegas = (_float_list(args.omegas) if args.omegas
                  else np.linspace(-np.pi, np.pi, args.points).tolist())
        records = exp_omega_sweep(cfg, omegas)
        resid = [r["p1_sim"] - r["p1_theory"] for r in records]
        summary = {"rmse": float(np.sqrt(np.mean(np.square(resid))))}
        extra = {"omegas": omegas}

    elif args.command == "random-states":
        matrix, records = exp_random_states(cfg, n_states=args.states)
        dist = [abs(r["p1_sim"] - r["p1_theory"]) for r in records]
        summary = {"tp": matrix.tp, "tn": matrix.tn, "fp": matrix.fp,
                   "fn": matrix.fn, "excluded": matrix.excluded,
                   "undecided": matrix.undecided, "accuracy": matrix.accuracy,
                   "precision": matrix.precision, "recall": matrix.recall,
                   "distance_mean": float(np.mean(dist)),
                   "distance_median": float(np.median(dist))}
        extra = {"states": args.states}

    elif args.command == "werner":
        ps = _float_list(args.ps) if args.ps else np.linspace(0, 1, 11).tolist()
        records, slope, intercept = exp_werner_sweep(cfg, ps, args.strategy)
        summary = {"m": slope, "q": intercept, "strategy": args.strategy}
        extra = {"ps": ps, "strategy": args.strategy}

    elif args.command == "detection-rate":
        result = exp_detection_rate(cfg, n_states=args.trials,
                                    preprocessing=args.preprocessing)
        records = [result]
        summary = {"fraction": result["fraction"]}
        extra = {"preprocessing": args.preprocessing}

    elif args.command == "noise-ci":
        if (args.bell is None) == (args.phases is None):
            raise ValueError("provide exactly one of --bell or --phases")
        phases = (solve_phases(bell_state(args.bell)) if args.bell
                  else parse_phases(args.phases))
        mean, lo, hi = exp_noise_ci(cfg, phases, n_draws=args.draws)
        records = [{"p1_mean": mean, "ci_low": lo, "ci_high": hi}]
        summary = records[0]
        extra = {"draws": args.draws,
                 "phases": phases.as_array().tolist(),
                 "bell": args.bell}

    elif args.command == "verify":
        rng = trial_rng(cfg.seed, 0)
        records = []
        for report, tol in run_all_checks(rng, nm=noise,
                                          guessing_samples=args.guessing_samples):
            passed = report.error <= tol
            if not passed:
                exit_code = 1
            records.append({"label": report.label,
                            "claimed": report.claimed_value,
                            "found": report.found_value,
                            "error": report.error,
                            "tolerance": tol,
                            "passed": passed})
        summary = {"checks": len(records),
                   "failures": sum(not r["passed"] for r in records)}
        extra = {"guessing_samples": args.guessing_samples}

    elif args.command == "witness-one":
        if (args.state is None) == (args.phases is None):
            raise ValueError("provide exactly one of --state or --phases")
        if args.state:
            state = parse_state(args.state)
            p1 = 0.5 * abs(state.gamma - state.delta) ** 2
        else:
            phases = parse_phases(args.phases)
            p1 = estimate_p1(run_circuit(phases))
        verdict = witness(p1, threshold=cfg.threshold, nm=noise)
        rb = randomness_bound(p1, nm=noise)
        records = [{"p1": verdict.p1, "threshold": verdict.threshold,
                    "entangled": verdict.entangled,
                    "concurrence_lower_bound": verdict.concurrence_lower_bound,
                    "guessing_probability_upper": rb.guessing_probability_upper,
                    "min_entropy_lower": rb.min_entropy_lower}]
        summary = records[0]
        extra = {"state": args.state, "phases": args.phases}

    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {args.command!r}")

    return cfg, extra, records, summary, exit_code


def render_json(manifest: dict, records: list[dict], summary: dict) -> str:
    return json.dumps({"manifest": manifest, "records": records,
                       "summary": summary}, indent=2, sort_keys=True)


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def render_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    if records:
        fields = list(records[0].keys())
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for rec in records:
            writer.writerow([_csv_cell(rec.get(f)) for f in fields])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = datetime.now(timezone.utc).isoformat()
    try:
        cfg, extra, records, summary, exit_code = _dispatch(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    manifest = {"subcommand": args.command,
                "config": _config_dict(cfg, extra),
                "version": __version__,
                "started_at": started,
                "finished_at": datetime.now(timezone.utc).isoformat()}
    text = (render_json(manifest, records, summary) if args.format == "json"
            else render_csv(records))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
