"""Command-line entry point: translate, measure, verify, generate, prime, circuit."""

from __future__ import annotations

import argparse
import hashlib
import math
import random
import sys
from collections.abc import Sequence
from pathlib import Path

from . import circuits, measures, verify, xortrans
from .core import (
    BOTTOM_SET,
    CapExceeded,
    ClauseSet,
    FormatError,
    emit_dimacs,
    emit_xnf,
    n_clauses,
    parse_dimacs,
    parse_xnf,
    variables,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
MODES = ("x0", "x1", "xstar", "x2", "auto")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"expected a comma-separated integer list, got {text!r}") from None


# translate

def choose_mode(F: ClauseSet) -> str:
    """acyclic -> x1, two clauses -> x2, otherwise xstar."""
    if xortrans.xor_acyclic(F):
        return "x1"
    if n_clauses(F) == 2:
        C, D = sorted(F, key=sorted)
        try:
            xortrans.x2_parts(C, D)
            return "x2"
        except ValueError:
            pass
    return "xstar"


def _fresh_comments(split: xortrans.Splitting) -> list[str]:
    return [
        "fresh " + " ".join(map(str, ys)) + " splits " + xortrans.format_xor(C)
        for C, ys in split.auxiliary
    ]


def translate(F: ClauseSet, mode: str, order: Sequence[int] | None = None) -> tuple[ClauseSet, list[str]]:
    """CNF translation of an XOR-clause-set plus header comment lines."""
    if mode == "auto":
        mode = choose_mode(F)
    comments = [f"mode {mode}"]
    if mode == "x0":
        return xortrans.X0_set(F), comments
    if mode == "x1":
        split = xortrans.split_xor_set(F, order)
        return xortrans.X0_set(split.pieces), comments + _fresh_comments(split)
    if not xortrans.xor_sat(F):
        return BOTTOM_SET, comments + ["input XOR system is unsatisfiable"]
    if mode == "xstar":
        sums = xortrans.F_star(F)
        split = xortrans.split_xor_set(sums, order, max(variables(F), default=0) + 1)
        comments.append(f"sum-clauses {len(sums)}")
        return xortrans.X0_set(split.pieces), comments + _fresh_comments(split)
    if mode == "x2":
        if n_clauses(F) != 2:
            raise ValueError(f"x2 needs exactly 2 XOR-clauses, got {n_clauses(F)}")
        C, D = sorted(F, key=sorted)
        parts = xortrans.x2_parts(C, D)
        split = xortrans.split_xor_set([parts.shared, parts.left, parts.right], order, parts.s + 1)
        comments.append(f"fresh {parts.s} shared-sum")
        return xortrans.X0_set(split.pieces), comments + _fresh_comments(split)
    raise ValueError(f"unknown mode {mode!r}")


def cmd_translate(args) -> int:
    text = _read(args.input)
    F = parse_xnf(text)
    order = _int_list(args.order) if args.order else None
    G, comments = translate(F, args.mode, order)
    comments.append("source sha256 " + hashlib.sha256(text.encode()).hexdigest())
    _write(emit_dimacs(G, comments), args.output)
    return EXIT_OK


# measure

def _scope(text: str, F: ClauseSet) -> list[int] | None:
    if text == "all":
        return None
    V = _int_list(text)
    missing = set(V) - variables(F)
    if missing:
        raise ValueError(f"scope variables {sorted(missing)} do not occur in the input")
    return V


def cmd_measure(args) -> int:
    F = parse_dimacs(_read(args.input))
    V = _scope(args.scope, F)
    kinds = args.kinds.split(",")
    for kind in kinds:
        if kind not in measures.KINDS:
            raise ValueError(f"unknown measure kind {kind!r}")
    lines = []
    for kind in kinds:
        report = measures.measure(kind, F, V, method=args.method, cap=args.cap_n, cap_k=args.cap_k)
        lines.append(report.to_text())
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# verify

def load_function(path: str) -> verify.SemanticFunction:
    """XNF (XOR semantics), circuit text, or DIMACS (CNF semantics)."""
    text = _read(path)
    lines = [ln.strip() for ln in text.splitlines()]
    head = next((ln for ln in lines if ln and ln != "c" and not ln.startswith("c ")), "")
    if head.startswith("circuit"):
        return verify.SemanticFunction.from_circuit(circuits.parse_circuit(text))
    if head.startswith("p xnf") or any(ln.startswith("x ") for ln in lines):
        return verify.SemanticFunction.from_xor(parse_xnf(text))
    return verify.SemanticFunction.from_cnf(parse_dimacs(text))


def cmd_verify(args) -> int:
    F = parse_dimacs(_read(args.rep))
    f = load_function(args.spec)
    props = args.props.split(",")
    verdicts = [verify.check(p, F, f) for p in props]
    _write("".join(v.to_text() + "\n" for v in verdicts), args.output)
    return EXIT_OK if all(verdicts) else EXIT_FAIL


# generate

def generate(kind: str, params: Sequence[str], seed: int | None = None) -> str:
    def ints(count: int) -> list[int]:
        if len(params) != count:
            raise ValueError(f"{kind} takes {count} integer parameter(s)")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise ValueError(f"{kind} parameters must be integers") from None

    if kind == "tn":
        (n,) = ints(1)
        if n < 3:
            raise ValueError("tn needs n >= 3")
        return emit_dimacs(xortrans.generate_Tn(n), [f"generated tn {n}"])
    if kind in ("ak", "akprime"):
        (k,) = ints(1)
        if k < 1:
            raise ValueError(f"{kind} needs k >= 1")
        F = measures.full_clauses(k) if kind == "ak" else measures.full_clauses_extended(k)
        return emit_dimacs(F, [f"generated {kind} {k}"])
    if kind in ("dipole", "bouquet"):
        (n,) = ints(1)
        if n < 1:
            raise ValueError(f"{kind} needs n >= 1")
        G = xortrans.dipole(n) if kind == "dipole" else xortrans.bouquet(range(1, n + 1))
        return emit_xnf(xortrans.tseitin_xor(G), [f"generated {kind} {n}"])
    if kind == "msp-relax":
        if len(params) != 1:
            raise ValueError("msp-relax takes one MSP file")
        M = xortrans.parse_msp(_read(params[0]))
        comments = [f"generated msp-relax n={M.n} m={M.m}"]
        for i, (zs, _) in enumerate(xortrans.msp_relax_groups(M), start=1):
            comments.append(f"system {i} relaxation " + " ".join(map(str, zs)))
        return emit_xnf(xortrans.msp_relax(M), comments)
    if kind == "random-xor":
        n, c, length = ints(3)
        if not 1 <= length <= n or c < 1:
            raise ValueError("random-xor needs 1 <= length <= n and c >= 1")
        if c > sum(math.comb(n, i) << i for i in range(1, length + 1)):
            raise ValueError("random-xor asks for more distinct clauses than exist")
        rng = random.Random(seed)
        F = set()
        while len(F) < c:
            vs = rng.sample(range(1, n + 1), rng.randint(1, length))
            F.add(frozenset(v if rng.random() < 0.5 else -v for v in vs))
        return emit_xnf(F, [f"generated random-xor {n} {c} {length} seed {seed}"])
    raise ValueError(f"unknown generator {kind!r}")


def cmd_generate(args) -> int:
    _write(generate(args.kind, args.params, args.seed), args.output)
    return EXIT_OK


# prime, circuit

def cmd_prime(args) -> int:
    F = parse_dimacs(_read(args.input))
    P = measures.prime_implicates(F, method=args.method)
    _write(emit_dimacs(P, ["prime implicates"]), args.output)
    return EXIT_OK


def cmd_circuit(args) -> int:
    if args.op == "ur2mono":
        F = parse_dimacs(_read(args.input))
        V = _scope(args.scope, F)
        _write(circuits.emit_circuit(circuits.ur_to_monotone(F, V if V is not None else variables(F))), args.output)
        return EXIT_OK
    C = circuits.parse_circuit(_read(args.input))
    if args.op == "tseitin":
        out = circuits.tseitin(C)
    elif args.op == "tseitin-reduced":
        out = circuits.reduced_tseitin(C)
    elif args.op == "mono2ur":
        out = circuits.monotone_to_ur(C, reduced=args.reduced)
    elif args.op == "forcing":
        out = circuits.to_forcing(C)
    else:
        raise ValueError(f"unknown circuit operation {args.op!r}")
    _write(emit_dimacs(out, [f"circuit {args.op}"]), args.output)
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xorcnf", description=__doc__)
    parser.add_argument("--threads", type=_positive, default=1, help="worker bound (runs single-threaded)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="XNF to CNF")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--order", help="variable order for splitting, e.g. 3,1,2")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("measure", help="hd / phd / whd / wid of a CNF")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--scope", default="all")
    p.add_argument("--kinds", default="hd,phd,whd")
    p.add_argument("--method", choices=("auto", "primes", "enumerate"), default="auto")
    p.add_argument("--cap-n", type=_positive, default=measures.DEFAULT_SCOPE_CAP,
                   help="largest scope for the enumeration route")
    p.add_argument("--cap-k", type=_positive, default=None, help="largest level to try")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", help="check representation properties")
    p.add_argument("rep")
    p.add_argument("spec", help="XNF, circuit, or DIMACS file describing f")
    p.add_argument("-o", "--output")
    p.add_argument("--props", default="representation,GAC")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="instance generators")
    p.add_argument("kind", choices=("tn", "dipole", "bouquet", "ak", "akprime", "msp-relax", "random-xor"))
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("prime", help="prime implicates of a CNF")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--method", choices=("auto", "premise", "consensus"), default="consensus")
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("circuit", help="circuit translations")
    p.add_argument("op", choices=("tseitin", "tseitin-reduced", "ur2mono", "mono2ur", "forcing"))
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--scope", default="all", help="designated variables for ur2mono")
    p.add_argument("--reduced", action="store_true", help="mono2ur with the reduced translation")
    p.set_defaults(func=cmd_circuit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
