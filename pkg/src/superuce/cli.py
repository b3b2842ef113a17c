"""Command line interface.

Subcommands operate either on an algebra file (--file), on a builtin
matrix family (--family/--m/--n/--coeff), or on a directed system of
matrix families (--chain/--system).  Reports are emitted as JSON (the
default) or as flat text; apart from the timing block the JSON output
is byte-identical across runs on the same input.

Exit codes: 0 on success, 1 when a mathematical check or validation
fails, 2 on usage or input errors.

Algebra file format (JSON)::

    {
      "kind": "lie" | "assoc",
      "basis": [{"name": "h", "parity": "even"}, ...],
      "products": [{"left": "h", "right": "e",
                    "result": [{"basis": "e", "num": "2", "den": "1"}]}],
      "unit": [{"basis": "1", "num": "1", "den": "1"}]      # assoc only
    }

Pairs absent from "products" are zero; nothing is symmetrized or
completed behind the caller's back.  Rational numbers are written as
{"num": "...", "den": "..."} decimal strings everywhere.

Chain shorthand: ``sl:5..7:Q[t]/(t^2)`` (or ``sl:3,2..5,2:Q``) builds
the corner-embedding chain of sl families from the start size to the
end size, incrementing the even block first, then the odd block.

System file format (JSON)::

    {
      "kind": "sl",
      "coeff": "Q",
      "members": [[5, 0], [6, 0], [7, 0]],
      "relation": [[0, 1], [1, 2]]
    }

Members are indexed by position; every related pair gets the corner
embedding as its transition map.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
import warnings
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import __version__
from .algebra import (
    AssocSuperalgebra,
    GradedBasis,
    InvalidAlgebraError,
    LieSuperalgebra,
    centre,
    derived_subalgebra,
    is_perfect,
    validate_assoc,
    validate_lie,
)
from .cyclic import cyclic_pairs, hc1
from .limits import DirectedPoset, DirectedSystem, limit_u, theorem_verify
from .matrices import (
    build_family,
    coefficient_algebra,
    corner_embedding,
    h_iso_check,
    steinberg_check,
    tau_cocycle,
)
from .uce import UceMemo, build_uce, h2, validate_cocycle

FAMILY_KINDS = ("gl", "sl", "osp", "p", "sq")


class InputError(Exception):
    """Bad file contents or inconsistent arguments (exit code 2)."""


# ------------------------------------------------------------------ rationals

def rational_to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, dict):
        try:
            return Fraction(int(obj["num"]), int(obj["den"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {obj!r}: {exc}") from None
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {obj!r}: {exc}") from None
    raise InputError(f"bad rational {obj!r}")


def vector_to_json(v, labels) -> list:
    return [{"basis": labels[k], **rational_to_json(x)} for k, x in sorted(v.items())]


# -------------------------------------------------------------- algebra files

def parse_algebra(data: dict, validate: bool = True):
    """Build a Lie or associative superalgebra from the file format."""
    if not isinstance(data, dict):
        raise InputError("algebra file must be a JSON object")
    kind = data.get("kind")
    if kind not in ("lie", "assoc"):
        raise InputError("\"kind\" must be \"lie\" or \"assoc\"")
    raw_basis = data.get("basis")
    if not isinstance(raw_basis, list) or not raw_basis:
        raise InputError("\"basis\" must be a non-empty list")
    labels, parities = [], []
    for entry in raw_basis:
        name = entry.get("name") if isinstance(entry, dict) else None
        par = entry.get("parity") if isinstance(entry, dict) else None
        if not isinstance(name, str) or par not in ("even", "odd"):
            raise InputError(f"bad basis entry {entry!r}")
        labels.append(name)
        parities.append(0 if par == "even" else 1)
    if len(set(labels)) != len(labels):
        raise InputError("duplicate basis names")
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)

    table = [[{} for _ in range(d)] for _ in range(d)]
    for entry in data.get("products", []):
        try:
            i = index[entry["left"]]
            j = index[entry["right"]]
        except (KeyError, TypeError):
            raise InputError(f"bad product entry {entry!r}") from None
        cell = {}
        for term in entry.get("result", []):
            try:
                k = index[term["basis"]]
            except (KeyError, TypeError):
                raise InputError(f"bad product term {term!r}") from None
            x = rational_from_json(term)
            if x:
                cell[k] = cell.get(k, Fraction(0)) + x
        table[i][j] = {k: x for k, x in cell.items() if x}

    basis = GradedBasis(labels, parities)
    if kind == "lie":
        return LieSuperalgebra(basis, table, validate=validate)
    raw_unit = data.get("unit")
    if not isinstance(raw_unit, list):
        raise InputError("associative algebra file needs a \"unit\" list")
    unit = {}
    for term in raw_unit:
        try:
            k = index[term["basis"]]
        except (KeyError, TypeError):
            raise InputError(f"bad unit term {term!r}") from None
        x = rational_from_json(term)
        if x:
            unit[k] = x
    return AssocSuperalgebra(basis, table, unit, validate=validate)


def algebra_to_json(alg) -> dict:
    """Inverse of parse_algebra, with products sorted by basis order."""
    labels = alg.basis.labels
    out = {
        "kind": "assoc" if isinstance(alg, AssocSuperalgebra) else "lie",
        "basis": [{"name": lab, "parity": "odd" if p else "even"}
                  for lab, p in zip(labels, alg.basis.parities)],
        "products": [],
    }
    for i in range(alg.dim):
        for j in range(alg.dim):
            cell = alg.table[i][j]
            if cell:
                out["products"].append({
                    "left": labels[i], "right": labels[j],
                    "result": vector_to_json(cell, labels),
                })
    if isinstance(alg, AssocSuperalgebra):
        out["unit"] = vector_to_json(alg.unit, labels)
    return out


# ------------------------------------------------------------------- arguments

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superuce",
        description="Exact central extensions of finite-dimensional Lie superalgebras over Q.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, need_algebra=True):
        p.add_argument("--file", help="algebra file (JSON)")
        p.add_argument("--family", choices=FAMILY_KINDS, help="builtin matrix family")
        p.add_argument("--m", type=int, default=None, help="even block size")
        p.add_argument("--n", type=int, default=0, help="odd block size (default 0)")
        p.add_argument("--coeff", default="Q", help="coefficient algebra name (default Q)")

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("validate", help="check the axioms of an algebra file or family")
    add_input(p)
    add_format(p)

    p = sub.add_parser("uce", help="build the universal central extension")
    add_input(p)
    p.add_argument("--table", action="store_true", help="include structure constants in the report")
    add_format(p)

    p = sub.add_parser("h2", help="dimension and basis of the second homology")
    add_input(p)
    add_format(p)

    p = sub.add_parser("hc1", help="first cyclic homology of an associative superalgebra")
    p.add_argument("--file", help="algebra file (JSON, kind assoc)")
    p.add_argument("--coeff", default=None, help="builtin coefficient algebra name")
    add_format(p)

    p = sub.add_parser("centre", help="centre of a Lie superalgebra")
    add_input(p)
    add_format(p)

    p = sub.add_parser("perfect", help="is the algebra perfect? (exit 1 if not)")
    add_input(p)
    add_format(p)

    p = sub.add_parser("construct", help="emit a builtin family as an algebra file")
    add_input(p)
    add_format(p)

    p = sub.add_parser("cocycle-check", help="validate the supertrace cocycle on sl(m,n;A)")
    add_input(p)
    add_format(p)

    p = sub.add_parser("steinberg-check", help="Steinberg presentation checks inside the extension")
    add_input(p)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)

    p = sub.add_parser("h-iso-check", help="compare the extension of sl(m,n;A) with sl + HC1(A)")
    add_input(p)
    add_format(p)

    p = sub.add_parser("limit-check", help="verify the colimit comparison for a chain or system")
    p.add_argument("--chain", help="shorthand like sl:5..7:Q, or a bare span like 5..7 with --family/--coeff")
    p.add_argument("--family", choices=("gl", "sl"), help="family for a bare-span --chain")
    p.add_argument("--coeff", default="Q", help="coefficient algebra name (default Q)")
    p.add_argument("--system", help="system file (JSON)")
    add_format(p)

    return parser


def _threads_from_env() -> int:
    raw = os.environ.get("UCE_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise InputError(f"UCE_THREADS must be a positive integer, got {raw!r}") from None
    if k < 1:
        raise InputError(f"UCE_THREADS must be a positive integer, got {raw!r}")
    return k


def _load_json(path: str) -> Tuple[dict, bytes]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(raw.decode("utf-8")), raw
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _resolve_algebra(args, validate: bool = True):
    """(algebra or None, family or None, digest bytes). Exactly one input source."""
    if args.file and args.family:
        raise InputError("pass --file or --family, not both")
    if args.file:
        data, raw = _load_json(args.file)
        return parse_algebra(data, validate=validate), None, raw
    if args.family:
        if args.m is None:
            raise InputError("--family needs --m (and --n for a super block)")
        coeff = coefficient_algebra(args.coeff)
        fam = build_family(args.family, args.m, args.n, coeff, validate=validate)
        digest = f"{args.family}:{args.m},{args.n}:{args.coeff}".encode()
        return fam.algebra, fam, digest
    raise InputError("no input: pass --file or --family")


def _parse_chain(text: str):
    try:
        kind, span, coeff = text.split(":", 2)
        start, end = span.split("..")

        def size(tok):
            if "," in tok:
                a, b = tok.split(",")
                return int(a), int(b)
            return int(tok), 0

        m1, n1 = size(start)
        m2, n2 = size(end)
    except ValueError:
        raise InputError(f"bad chain {text!r}; expected kind:m[,n]..M[,N]:coeff") from None
    if kind not in ("gl", "sl"):
        raise InputError("chains are supported for gl and sl families")
    if m2 < m1 or n2 < n1:
        raise InputError("chain must be non-decreasing in both blocks")
    members = [(m1, n1)]
    m, n = m1, n1
    while m < m2:
        m += 1
        members.append((m, n))
    while n < n2:
        n += 1
        members.append((m, n))
    return kind, members, coeff


def _family_system(kind: str, members, coeff_name: str, relation=None) -> DirectedSystem:
    coeff = coefficient_algebra(coeff_name)
    fams = [build_family(kind, m, n, coeff) for m, n in members]
    idx = list(range(len(fams)))
    if relation is None:
        relation = [(a, b) for a in idx for b in idx[a + 1:]]
    poset = DirectedPoset(idx, relation)
    morphisms = {}
    for i, j in poset.pairs():
        if i != j:
            morphisms[(i, j)] = corner_embedding(fams[i], fams[j])
    return DirectedSystem(poset, {i: fams[i].algebra for i in idx}, morphisms)


def _resolve_system(args) -> Tuple[DirectedSystem, bytes]:
    if bool(args.chain) == bool(args.system):
        raise InputError("pass exactly one of --chain or --system")
    if args.chain:
        text = args.chain
        if ":" not in text:
            if not args.family:
                raise InputError("a bare-span --chain needs --family (and usually --coeff)")
            text = f"{args.family}:{text}:{args.coeff}"
        kind, members, coeff = _parse_chain(text)
        return _family_system(kind, members, coeff), text.encode()
    data, raw = _load_json(args.system)
    try:
        kind = data["kind"]
        coeff = data["coeff"]
        members = [tuple(map(int, mn)) for mn in data["members"]]
        relation = [tuple(pair) for pair in data.get("relation", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad system file: {exc}") from None
    if kind not in ("gl", "sl"):
        raise InputError("system files support gl and sl families")
    return _family_system(kind, members, coeff, relation or None), raw


# -------------------------------------------------------------------- commands

def _cmd_validate(args):
    if args.file and args.family:
        raise InputError("pass --file or --family, not both")
    if args.file:
        data, digest = _load_json(args.file)
        alg = parse_algebra(data, validate=False)
        report = validate_assoc(alg) if isinstance(alg, AssocSuperalgebra) else validate_lie(alg)
    else:
        _, fam, digest = _resolve_algebra(args, validate=False)
        report = validate_lie(fam.algebra)
    results = {
        "valid": report.ok,
        "violations": [{"law": law, "where": where, "detail": detail}
                       for law, where, detail in report.violations],
    }
    return results, (0 if report.ok else 1), digest


def _require_lie(alg):
    if not isinstance(alg, LieSuperalgebra):
        raise InputError("this command needs a Lie superalgebra input")
    return alg


def _cmd_uce(args):
    alg, _, digest = _resolve_algebra(args)
    alg = _require_lie(alg)
    ext = build_uce(alg)
    perfect = is_perfect(alg)
    results = {
        "dim_input": alg.dim,
        "perfect": perfect,
        "dim_uce": ext.dim,
        "dim_kernel": ext.dim - ext.u.rank(),
        "basis": list(ext.lie.basis.labels),
        "parities": ["odd" if p else "even" for p in ext.lie.basis.parities],
    }
    if perfect:
        results["centrally_closed"] = results["dim_kernel"] == 0 and ext.u.is_bijective()
    if args.table:
        labels = ext.lie.basis.labels
        results["table"] = [
            {"left": labels[i], "right": labels[j],
             "result": vector_to_json(ext.lie.table[i][j], labels)}
            for i in range(ext.dim) for j in range(ext.dim) if ext.lie.table[i][j]
        ]
    return results, 0, digest


def _cmd_h2(args):
    alg, _, digest = _resolve_algebra(args)
    alg = _require_lie(alg)
    perfect = is_perfect(alg)
    ext = build_uce(alg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        space = h2(ext)
    results = {
        "dim_input": alg.dim,
        "perfect": perfect,
        "dim_h2": space.dim,
        "vectors": [vector_to_json(v, ext.lie.basis.labels) for v in space.vectors],
    }
    if not perfect:
        results["warning"] = "algebra is not perfect; reported space is the kernel of the canonical map"
    return results, 0, digest


def _cmd_hc1(args):
    if bool(args.file) == bool(args.coeff):
        raise InputError("pass exactly one of --file or --coeff")
    if args.file:
        data, digest = _load_json(args.file)
        alg = parse_algebra(data)
        if not isinstance(alg, AssocSuperalgebra):
            raise InputError("hc1 needs an associative superalgebra (kind assoc)")
    else:
        alg = coefficient_algebra(args.coeff)
        digest = args.coeff.encode()
    pairs = cyclic_pairs(alg)
    space = hc1(alg, pairs=pairs)
    results = {
        "dim_input": alg.dim,
        "supercommutative": alg.is_supercommutative(),
        "dim_pairs": pairs.dim,
        "dim_hc1": space.dim,
        "vectors": [vector_to_json(v, pairs.basis.labels) for v in space.vectors],
    }
    return results, 0, digest


def _cmd_centre(args):
    alg, _, digest = _resolve_algebra(args)
    alg = _require_lie(alg)
    z = centre(alg)
    results = {
        "dim_input": alg.dim,
        "dim_centre": z.dim,
        "vectors": [vector_to_json(v, alg.basis.labels) for v in z.vectors],
    }
    return results, 0, digest


def _cmd_perfect(args):
    alg, _, digest = _resolve_algebra(args)
    alg = _require_lie(alg)
    der = derived_subalgebra(alg)
    ok = der.dim == alg.dim
    results = {"dim_input": alg.dim, "dim_derived": der.dim, "perfect": ok}
    return results, (0 if ok else 1), digest


def _cmd_construct(args):
    alg, fam, digest = _resolve_algebra(args)
    if fam is None:
        raise InputError("construct needs --family")
    results = {
        "dim": alg.dim,
        "kind": fam.kind,
        "m": fam.m,
        "n": fam.n,
        "coeff": args.coeff,
        "algebra": algebra_to_json(alg),
    }
    return results, 0, digest


def _family_args(args, minimum=1):
    if args.file:
        raise InputError("this command works on builtin sl families; pass --family sl")
    if args.family != "sl":
        raise InputError("this command works on sl families only")
    if args.m is None:
        raise InputError("--family needs --m")
    if args.m + args.n < minimum:
        raise InputError(f"need m + n >= {minimum}")
    return args.m, args.n, coefficient_algebra(args.coeff)


def _cmd_cocycle_check(args):
    m, n, coeff = _family_args(args, minimum=2)
    fam = build_family("sl", m, n, coeff)
    tau = tau_cocycle(m, n, coeff, fam=fam)
    report = validate_cocycle(tau)
    results = {
        "dim_sl": fam.algebra.dim,
        "target_dim": len(tau.target.labels),
        "valid": report.ok,
        "violations": [{"law": law, "where": where, "detail": detail}
                       for law, where, detail in report.violations],
    }
    digest = f"sl:{m},{n}:{args.coeff}".encode()
    return results, (0 if report.ok else 1), digest


def _cmd_steinberg(args):
    m, n, coeff = _family_args(args, minimum=3)
    rep = steinberg_check(m, n, coeff, seed=args.seed)
    results = {
        "dim_uce": rep.dim_uce,
        "generators": rep.generators,
        "independence_of_k": rep.independence_of_k,
        "linearity": rep.linearity,
        "relations": rep.relations,
        "generation": rep.generation,
        "ok": rep.ok,
    }
    digest = f"sl:{m},{n}:{args.coeff}:seed={args.seed}".encode()
    return results, (0 if rep.ok else 1), digest


def _cmd_h_iso(args):
    m, n, coeff = _family_args(args, minimum=5)
    rep = h_iso_check(m, n, coeff)
    results = {
        "dim_sl": rep.dim_sl,
        "dim_uce": rep.dim_uce,
        "dim_extension": rep.dim_extension,
        "dim_h2": rep.dim_h2,
        "dim_hc1": rep.dim_hc1,
        "is_morphism": rep.is_morphism,
        "commutes_with_projections": rep.commutes_with_projections,
        "bijective": rep.bijective,
        "ok": rep.ok,
    }
    digest = f"sl:{m},{n}:{args.coeff}".encode()
    return results, (0 if rep.ok else 1), digest


def _cmd_limit_check(args):
    system, digest = _resolve_system(args)
    memo = UceMemo()
    rep = theorem_verify(system, memo)
    vrep = limit_u(system, memo)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        h2_dims = [h2(system.algebras[i], memo=memo).dim for i in system.poset.elements]
    results = {
        "members": len(system.poset.elements),
        "dim_colim": rep.dim_colim,
        "dim_uce_of_colim": rep.dim_uce_of_colim,
        "dim_colim_of_uce": rep.dim_colim_of_uce,
        "phi_is_morphism": rep.phi_is_morphism,
        "phi_bijective": rep.phi_bijective,
        "psi_after_phi_is_id": rep.psi_after_phi_is_id,
        "phi_after_psi_is_id": rep.phi_after_psi_is_id,
        "h2_dims": h2_dims,
        "h2_of_colim_dim": rep.h2_of_colim_dim,
        "h2_colim_of_kernels_dim": rep.h2_colim_of_kernels_dim,
        "h2_restriction_bijective": rep.h2_restriction_bijective,
        "projection_kernel_dim": vrep.kernel_dim,
        "projection_kernel_central": vrep.kernel_central,
        "projection_surjective": vrep.surjective,
        "ok": rep.ok and vrep.kernel_central,
    }
    return results, (0 if results["ok"] else 1), digest


_COMMANDS = {
    "validate": _cmd_validate,
    "uce": _cmd_uce,
    "h2": _cmd_h2,
    "hc1": _cmd_hc1,
    "centre": _cmd_centre,
    "perfect": _cmd_perfect,
    "construct": _cmd_construct,
    "cocycle-check": _cmd_cocycle_check,
    "steinberg-check": _cmd_steinberg,
    "h-iso-check": _cmd_h_iso,
    "limit-check": _cmd_limit_check,
}


# ------------------------------------------------------------------- reporting

def _argument_echo(args) -> dict:
    skip = {"command", "format"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None or value is False:
            continue
        out[key] = value
    return out


def emit_report(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(report, stream, indent=2, sort_keys=False)
        stream.write("\n")
        return
    stream.write(f"command: {report['command']}\n")
    for key, value in report["results"].items():
        if isinstance(value, (dict, list)):
            stream.write(f"{key}: {json.dumps(value)}\n")
        else:
            stream.write(f"{key}: {value}\n")
    stream.write(f"elapsed: {report['timing']['seconds']:.3f}s\n")


def run(argv: Sequence[str]) -> Tuple[dict, int]:
    """Parse argv, execute, and return (report, exit_code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = _threads_from_env()
    started = time.perf_counter()
    results, code, digest = _COMMANDS[args.command](args)
    elapsed = time.perf_counter() - started
    report = {
        "command": args.command,
        "version": __version__,
        "arguments": _argument_echo(args),
        "uce_threads": threads,
        "input_digest": hashlib.sha256(digest).hexdigest(),
        "results": results,
        "timing": {"seconds": round(elapsed, 6)},
    }
    return report, code


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        report, code = run(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidAlgebraError as exc:
        print(f"invalid algebra:\n{exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # precondition violations from the math layer (bad sizes, unknown
        # coefficient names, non-perfect members) are argument errors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fmt = "json"
    for i, tok in enumerate(argv):
        if tok == "--format" and i + 1 < len(argv):
            fmt = argv[i + 1]
        elif tok.startswith("--format="):
            fmt = tok.split("=", 1)[1]
    emit_report(report, fmt, sys.stdout)
    return code
