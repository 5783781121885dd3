"""Command-line driver.

Usage: ``endok <command> <input-file> [--json] [--seed N]``.

Commands operate on a job file (see :mod:`endok.parse` for the grammar)
and print deterministic text, or a stable JSON document with ``--json``.
Exit codes: 0 success, 1 input error, 2 verification failure
(verify-additivity or oracle-check found a mismatch).
"""

import argparse
import json
import random
import sys
from pathlib import Path

from .bruteforce import k0_class_oracle, random_vector
from .errors import ParseError
from .factor import DEFAULT_SEED
from .ktheory import (
    k0_class,
    kelley_spanier_split,
    lambda_t,
    tilde_to_free_abelian,
    verify_additivity,
)
from .linalg import charpoly
from .parse import field_to_string, parse_input
from .poly import render_monomial

COMMANDS = (
    "class",
    "charpoly",
    "split",
    "decompose",
    "radical",
    "annihilator",
    "verify-additivity",
    "tilde-mul",
    "tilde-map",
    "oracle-check",
)

ADDITIVITY_TRIALS = 4


def _cmd_class(job, rng):
    t = job.tuple()
    cls = k0_class(t, rng)
    payload = {
        "field": field_to_string(t.field),
        "nvars": t.nvars,
        "dim": t.dim,
        "class": cls.to_json_entries(),
    }
    return cls.lines(), payload, 0


def _cmd_charpoly(job, rng):
    t = job.tuple()
    lines = []
    mats = []
    for m in t.mats:
        c = charpoly(m)
        lam = lambda_t(m)
        lines.append(f"charpoly {c}")
        lines.append(f"lambda {lam}")
        mats.append({"charpoly": str(c), "lambda": str(lam)})
    payload = {
        "field": field_to_string(t.field),
        "nvars": t.nvars,
        "dim": t.dim,
        "matrices": mats,
    }
    return lines, payload, 0


def _cmd_split(job, rng):
    t = job.tuple()
    rank, tilde = kelley_spanier_split(t)
    lines = [f"rank {rank}", f"tilde {tilde}"]
    payload = {
        "field": field_to_string(t.field),
        "dim": t.dim,
        "rank": rank,
        "tilde": {"num": str(tilde.num), "den": str(tilde.den)},
    }
    return lines, payload, 0


def _cmd_decompose(job, rng):
    t = job.tuple()
    lines = []
    pieces = []
    for i, (sub, piece, key) in enumerate(t._local_pieces(rng), 1):
        gens = ", ".join(key.ideal.generator_strings())
        lines.append(
            f"piece {i}: dim {piece.dim}, key [{gens}], residue {key.residue_degree}"
        )
        pieces.append(
            {
                "dim": piece.dim,
                "generators": list(key.ideal.generator_strings()),
                "residue_degree": key.residue_degree,
            }
        )
    payload = {
        "field": field_to_string(t.field),
        "nvars": t.nvars,
        "dim": t.dim,
        "pieces": pieces,
    }
    return lines, payload, 0


def _cmd_radical(job, rng):
    t = job.tuple()
    rad = t.radical_submodule()
    layers = t.radical_filtration()
    dims = [layer.dim for layer in layers]
    lines = [f"radical dim {rad.dim}"]
    if rad.dim:
        F = t.field
        rows = ";".join(
            "[" + ",".join(F.render(x) for x in row) + "]" for row in rad.space.basis
        )
        lines.append(f"basis [{rows}]")
    lines.append("layers " + " ".join(str(d) for d in dims) if dims else "layers")
    payload = {
        "field": field_to_string(t.field),
        "nvars": t.nvars,
        "dim": t.dim,
        "radical_dim": rad.dim,
        "radical_basis": [
            [t.field.render(x) for x in row] for row in rad.space.basis
        ],
        "layer_dims": dims,
    }
    return lines, payload, 0


def _cmd_annihilator(job, rng):
    t = job.tuple()
    ideal = t.annihilator_ideal()
    lines = [f"generator {g}" for g in ideal.generator_strings()]
    monos = [render_monomial(m, t.nvars) or "1" for m in ideal.standard_monomials]
    lines.append("standard " + ", ".join(monos) if monos else "standard")
    lines.append(f"dimension {ideal.quotient_dim}")
    payload = {
        "field": field_to_string(t.field),
        "nvars": t.nvars,
        "dim": t.dim,
        "generators": list(ideal.generator_strings()),
        "standard_monomials": monos,
        "dimension": ideal.quotient_dim,
    }
    return lines, payload, 0


def _cmd_verify_additivity(job, rng):
    t = job.tuple()
    submodules = []
    vectors = [random_vector(t.field, t.dim, rng) for _ in range(3)]
    for v in vectors:
        submodules.append(t.generated_submodule([v]))
    if len(vectors) >= 2:
        submodules.append(t.generated_submodule(vectors[:2]))
    failures = []
    for i, s in enumerate(submodules):
        if not verify_additivity(t, s, rng):
            failures.append(i)
    payload = {
        "field": field_to_string(t.field),
        "dim": t.dim,
        "ok": not failures,
        "submodules": len(submodules),
        "failures": failures,
    }
    if failures:
        lines = [f"additivity FAILED for submodule {i}" for i in failures]
        return lines, payload, 2
    return [f"additivity ok ({len(submodules)} submodules)"], payload, 0


def _cmd_tilde_mul(job, rng):
    if not job.tildes:
        raise ValueError("tilde-mul needs at least one num/den pair")
    acc = job.tildes[0]
    for other in job.tildes[1:]:
        acc = acc * other
    payload = {
        "field": field_to_string(job.field),
        "tilde": {"num": str(acc.num), "den": str(acc.den)},
    }
    return [f"tilde {acc}"], payload, 0


def _cmd_tilde_map(job, rng):
    if len(job.tildes) != 1:
        raise ValueError("tilde-map needs exactly one num/den pair")
    cls = tilde_to_free_abelian(job.tildes[0], rng)
    payload = {
        "field": field_to_string(job.field),
        "nvars": 1,
        "class": cls.to_json_entries(),
    }
    return cls.lines(), payload, 0


def _cmd_oracle_check(job, rng):
    t = job.tuple()
    cls = k0_class(t, rng)
    oracle = k0_class_oracle(t)
    match = cls == oracle
    lines = ["class:"]
    lines += cls.lines()
    lines.append("oracle:")
    lines += oracle.lines()
    lines.append("oracle ok" if match else "oracle MISMATCH")
    payload = {
        "field": field_to_string(t.field),
        "nvars": t.nvars,
        "dim": t.dim,
        "class": cls.to_json_entries(),
        "oracle": oracle.to_json_entries(),
        "match": match,
    }
    return lines, payload, 0 if match else 2


_HANDLERS = {
    "class": _cmd_class,
    "charpoly": _cmd_charpoly,
    "split": _cmd_split,
    "decompose": _cmd_decompose,
    "radical": _cmd_radical,
    "annihilator": _cmd_annihilator,
    "verify-additivity": _cmd_verify_additivity,
    "tilde-mul": _cmd_tilde_mul,
    "tilde-map": _cmd_tilde_map,
    "oracle-check": _cmd_oracle_check,
}


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="endok",
        description="Exact K0 invariants of commuting matrix tuples over Q and F_p.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help="job file path, or '-' for stdin")
    ap.add_argument("--json", action="store_true", help="emit stable JSON")
    ap.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for randomized subroutines (default %(default)s)",
    )
    args = ap.parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.input).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    try:
        job = parse_input(text)
        lines, payload, code = _HANDLERS[args.command](job, rng)
    except (ParseError, ValueError, ZeroDivisionError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        out = "\n".join(lines)
        if out:
            print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
