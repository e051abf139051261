"""Command-line driver: ``tetratomo {tomo,scan-correlations,wigner-sets,qkd}``.

Exit codes: 0 success, 1 property violation, 2 usage error, 3 I/O error.
The output directory defaults to ``$TETRATOMO_OUTPUT_DIR`` (or the current
directory) when ``--out`` is not given.
"""
import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .correlations import verify_properties_abc
from .pauli import BELL_NAMES, bell_state
from .qkd import SessionParams, capability_report, run_session, tomographic_check
from .serialize import complex_matrix_from_json, dumps, rows_csv, table_csv
from .sim import STREAM_VERSION, estimate, joint_table, sample_counts, werner, with_white_noise
from .striations import canonical_grid_operators, enumerate_quartit_wigner_sets, find_striations
from .wigner import enumerate_qubit_wigner_sets, pauli_orbit, qubit_set_axioms, quartit_wigner

OUTPUT_DIR_ENV = "TETRATOMO_OUTPUT_DIR"
CONFIGS = {"tt": ("even", "even"), "ta": ("even", "odd")}


class UsageError(Exception):
    pass


def _meta(command: str, config: dict, seed=None) -> dict:
    return {
        "tool": "tetratomo",
        "version": __version__,
        "command": command,
        "stream": STREAM_VERSION,
        "seed": seed,
        "config": config,
    }


def _output_path(args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / default_name


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _sibling(path: Path, tag: str, ext: str) -> Path:
    return path.with_name(f"{path.stem}_{tag}.{ext}")


def resolve_state(spec: str):
    """Return ``(rho, reference_rho, resolved_spec)`` for a state specification.

    ``spec`` is a Bell name, ``werner:<v>``, or ``file:<path>`` / a path to a
    JSON density matrix (rows of ``[re, im]`` pairs, optionally under a
    ``"rho"`` key).
    """
    if spec in BELL_NAMES:
        rho = bell_state(spec)
        return rho, rho, spec
    if spec.startswith("werner:"):
        try:
            v = float(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad Werner visibility in {spec!r}")
        if not 0.0 <= v <= 1.0:
            raise UsageError("Werner visibility must lie in [0, 1]")
        return werner(v), bell_state("psi-minus"), f"werner:{v!r}"
    path = spec[5:] if spec.startswith("file:") else spec
    if not Path(path).exists():
        raise UsageError(f"unknown state specification {spec!r}")
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        rho = complex_matrix_from_json(doc["rho"] if isinstance(doc, dict) else doc)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot read a density matrix from {path}: {exc}")
    if rho.shape != (4, 4):
        raise UsageError("state file must hold a 4x4 density matrix")
    return rho, rho, f"file:{path}"


def cmd_tomo(args) -> int:
    if args.shots < 1:
        raise UsageError("--shots must be at least 1")
    rho, ref, resolved = resolve_state(args.state)
    if args.noise is not None:
        if not 0.0 <= args.noise <= 1.0:
            raise UsageError("--noise must lie in [0, 1]")
        rho = with_white_noise(rho, args.noise)
    parities = CONFIGS[args.config]
    table = joint_table(rho, *parities)
    counts = sample_counts(table, args.shots, args.seed)
    est = estimate(counts)
    W_theory = quartit_wigner(ref, *parities)
    fid = est.fidelity_vs(W_theory)

    config = {"state": resolved, "config": args.config, "shots": args.shots,
              "noise": args.noise, "format": args.format}
    meta = _meta("tomo", config, args.seed)
    results = {
        "joint_counts": counts.counts,
        "W_hat": est.W_hat.values,
        "W_theory": W_theory.values,
        "fidelity": fid,
        "min_eigenvalue": est.min_eigenvalue,
        "eigenvalues": list(est.eigenvalues),
        "rho_hat": est.rho_hat,
    }
    path = _output_path(args, "tomo." + args.format)
    if args.format == "json":
        _write(path, dumps({"meta": meta, "inputs": config, "results": results}))
    else:
        for name in ("joint_counts", "W_hat", "W_theory"):
            _write(_sibling(path, name, "csv"), table_csv(results[name], meta))
        summary = [("fidelity", fid), ("min_eigenvalue", est.min_eigenvalue)]
        _write(_sibling(path, "summary", "csv"), rows_csv(["key", "value"], summary, meta))
    print(f"fidelity={fid:.6f} min_eigenvalue={est.min_eigenvalue:.6f}")
    return 0


def cmd_scan_correlations(args) -> int:
    report = verify_properties_abc()
    rows = []
    for c in report.candidates:
        rows.append({
            "permutation": list(c.perm.mapping),
            "permutation_parity": c.perm.parity,
            "config": c.config,
            "mode": c.mode,
            "eigenvalues": list(c.eigenvalues),
            "min_eigenvalue": c.min_eigenvalue,
            "status": c.status,
            "physical": c.physical,
            "maximally_entangled": c.maximally_entangled(),
        })
    counts = report.physical_counts()
    meta = _meta("scan-correlations", {"format": args.format})
    path = _output_path(args, "scan-correlations." + args.format)
    if args.format == "json":
        results = {"candidates": rows, "physical_counts": counts, "violations": report.violations, "ok": report.ok}
        _write(path, dumps({"meta": meta, "inputs": {}, "results": results}))
    else:
        header = ["permutation", "config", "mode", "min_eigenvalue", "status", "physical", "maximally_entangled"]
        body = [["".join(map(str, r["permutation"])), r["config"], r["mode"], r["min_eigenvalue"],
                 r["status"], r["physical"], r["maximally_entangled"]] for r in rows]
        _write(path, rows_csv(header, body, meta))
    print(" ".join(f"{k}:{v}" for k, v in counts.items()))
    for v in report.violations:
        print("violation:", v, file=sys.stderr)
    return 0 if report.ok else 1


def cmd_wigner_sets(args) -> int:
    groups = enumerate_qubit_wigner_sets()
    qubit = [
        {"signs": s.signs, "parity": s.parity, "axioms": qubit_set_axioms(s), "pauli_orbit": pauli_orbit(s)}
        for parity in ("even", "odd") for s in groups[parity]
    ]
    products = enumerate_quartit_wigner_sets()
    quartit = [
        {"signs_a": p.signs_a, "signs_b": p.signs_b, "parity_a": p.parity_a, "parity_b": p.parity_b,
         "axioms": p.axioms, "valid": p.valid,
         "axis_maps": None if p.structure is None else p.structure.axis_maps,
         "striation_kinds": None if p.structure is None else p.structure.counts()}
        for p in products
    ]
    canonical = find_striations(canonical_grid_operators("even", "odd"))
    canon = [{"direction": s.direction, "kind": s.kind, "lines": s.lines} for s in canonical.striations]
    n_valid = sum(p.valid for p in products)
    counts = canonical.counts()
    ok = len(qubit) == 8 and n_valid == 32 and counts == {"factorizable": 3, "entangled": 2}

    meta = _meta("wigner-sets", {"format": args.format})
    path = _output_path(args, "wigner-sets." + args.format)
    if args.format == "json":
        results = {"qubit_sets": qubit, "product_sets": quartit, "valid_product_sets": n_valid,
                   "canonical_ta_striations": canon, "canonical_ta_counts": counts}
        _write(path, dumps({"meta": meta, "inputs": {}, "results": results}))
    else:
        header = ["signs_a", "signs_b", "parity_a", "parity_b", "valid"]
        body = [["".join("+" if s > 0 else "-" for s in q["signs_a"]),
                 "".join("+" if s > 0 else "-" for s in q["signs_b"]),
                 q["parity_a"], q["parity_b"], q["valid"]] for q in quartit]
        _write(path, rows_csv(header, body, meta))
    print(f"qubit_sets={len(qubit)} valid_product_sets={n_valid} "
          f"canonical_ta={counts['factorizable']} factorizable + {counts['entangled']} entangled")
    return 0 if ok else 1


def cmd_qkd(args) -> int:
    if args.pairs < 1:
        raise UsageError("--pairs must be at least 1")
    if args.noise is not None and not 0.0 <= args.noise <= 1.0:
        raise UsageError("--noise must lie in [0, 1]")
    if not 0.0 < args.sacrifice <= 1.0:
        raise UsageError("--sacrifice must lie in (0, 1]")
    params = SessionParams(pairs=args.pairs, grant=args.grant, noise=args.noise,
                           seed=args.seed, config=args.config.upper())
    transcript = run_session(params)
    report = capability_report(transcript)
    if transcript.announcements is not None:
        check = tomographic_check(transcript, args.sacrifice)
        report["tomographic_check"] = {"rounds": check.rounds, "fidelity": check.fidelity,
                                       "alarm": check.alarm, "threshold": check.threshold,
                                       "W_hat": check.W_hat.values}
    config = {"pairs": args.pairs, "grant": args.grant, "noise": args.noise, "config": args.config,
              "sacrifice": args.sacrifice, "format": args.format}
    meta = _meta("qkd", config, args.seed)
    path = _output_path(args, "qkd." + args.format)
    if args.format == "json":
        _write(_sibling(path, "transcript", "json"),
               dumps({"meta": meta, "inputs": config, "results": transcript.to_dict()}))
        _write(_sibling(path, "report", "json"), dumps({"meta": meta, "inputs": config, "results": report}))
    else:
        ann = transcript.announcements
        rows = [[r, 2 * c[0] + c[1], a, b, "" if ann is None else 2 * ann[r][0] + ann[r][1]]
                for r, (c, a, b) in enumerate(zip(transcript.charles_choices, transcript.alice_outcomes,
                                                  transcript.bob_outcomes))]
        _write(_sibling(path, "transcript", "csv"),
               rows_csv(["round", "charles", "alice", "bob", "announcement"], rows, meta))
        flat = [(k, v) for k, v in report.items() if not isinstance(v, dict) and v is not None]
        if "tomographic_check" in report:
            flat += [(f"tomographic_check.{k}", v) for k, v in report["tomographic_check"].items()
                     if k != "W_hat"]
        _write(_sibling(path, "report", "csv"), rows_csv(["key", "value"], flat, meta))
    post = report["post_announcement_mi"]
    print(f"pre_announcement_mi={report['pre_announcement_mi']:.6f} "
          f"post_announcement_mi={'absent' if post is None else f'{post:.6f}'} "
          f"charles_alice_mi={report['charles_alice_mi']:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tetratomo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tetratomo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output file (CSV output derives sibling files from its stem)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("tomo", help="simulate double-tetrahedron tomography of a two-qubit state")
    p.add_argument("--state", default="psi-minus",
                   help="Bell name (psi-minus, psi-plus, phi-minus, phi-plus), werner:<v> or file:<path>")
    p.add_argument("--config", choices=sorted(CONFIGS), default="tt")
    p.add_argument("--shots", type=int, default=40000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, help="white-noise visibility applied to the state")
    common(p)
    p.set_defaults(func=cmd_tomo)

    p = sub.add_parser("scan-correlations", help="sweep the 96 symmetric-correlation candidates")
    common(p)
    p.set_defaults(func=cmd_scan_correlations)

    p = sub.add_parser("wigner-sets", help="enumerate phase-point sets and their striations")
    common(p)
    p.set_defaults(func=cmd_wigner_sets)

    p = sub.add_parser("qkd", help="run a source-controlled key distribution session")
    p.add_argument("--pairs", type=int, default=100000)
    grant = p.add_mutually_exclusive_group()
    grant.add_argument("--grant", dest="grant", action="store_true", default=True)
    grant.add_argument("--deny", dest="grant", action="store_false")
    p.add_argument("--noise", type=float, help="Werner visibility of the source")
    p.add_argument("--config", choices=sorted(CONFIGS), default="tt")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sacrifice", type=float, default=0.25,
                   help="fraction of granted rounds used for the tomographic check")
    common(p)
    p.set_defaults(func=cmd_qkd)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tetratomo: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"tetratomo: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
