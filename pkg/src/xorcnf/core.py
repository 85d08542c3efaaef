"""Clause-set algebra: literals, clauses, clause-sets, partial assignments, DIMACS/XNF."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from typing import Union

Literal = int
Clause = frozenset
ClauseSet = frozenset

EMPTY_CLAUSE: Clause = frozenset()
TOP: ClauseSet = frozenset()
BOTTOM_SET: ClauseSet = frozenset({EMPTY_CLAUSE})


class FormatError(ValueError):
    """Malformed input file; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(RuntimeError):
    """An enumeration or search bound was hit; never silently truncated."""

    def __init__(self, what: str, cap: int, size: int | None = None):
        self.cap = cap
        self.size = size
        detail = f" (size {size})" if size is not None else ""
        super().__init__(f"{what} exceeds cap {cap}{detail}")


def var(lit: Literal) -> int:
    return lit if lit > 0 else -lit


def lit_key(lit: Literal) -> tuple[int, bool]:
    """Sort key: by variable, positive literal first."""
    return (lit if lit > 0 else -lit, lit < 0)


def sorted_literals(lits: Iterable[Literal]) -> list[Literal]:
    return sorted(lits, key=lit_key)


def clause_key(clause: Iterable[Literal]) -> tuple:
    return tuple(lit_key(x) for x in sorted_literals(clause))


def sorted_clauses(F: Iterable[Clause]) -> list[Clause]:
    return sorted(F, key=clause_key)


def make_clause(lits: Iterable[Literal]) -> Clause:
    """Build a clause, rejecting zero literals and clashing pairs."""
    c = frozenset(int(x) for x in lits)
    if 0 in c:
        raise ValueError("literal 0 is not allowed")
    for x in c:
        if -x in c:
            raise ValueError(f"clashing literals {var(x)} and -{var(x)}")
    return c


def make_clause_set(clauses: Iterable[Iterable[Literal]]) -> ClauseSet:
    return frozenset(make_clause(c) for c in clauses)


def variables(F: Iterable[Iterable[Literal]]) -> frozenset[int]:
    return frozenset(var(x) for c in F for x in c)


def clause_variables(C: Iterable[Literal]) -> frozenset[int]:
    return frozenset(var(x) for x in C)


def literals_of(F: Iterable[Iterable[Literal]]) -> frozenset[Literal]:
    return frozenset(x for c in F for x in c)


def n_vars(F: ClauseSet) -> int:
    return len(variables(F))


def n_clauses(F: ClauseSet) -> int:
    return len(F)


def n_literals(F: ClauseSet) -> int:
    return sum(len(c) for c in F)


def max_var(F: Iterable[Iterable[Literal]]) -> int:
    return max((var(x) for c in F for x in c), default=0)


def complement(C: Iterable[Literal]) -> Clause:
    return frozenset(-x for x in C)


def is_horn(F: ClauseSet) -> bool:
    return all(sum(1 for x in c if x > 0) <= 1 for c in F)


class PartialAssignment(Mapping):
    """Immutable map from variables to bits."""

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        items = dict(mapping or {})
        for v, b in items.items():
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"variable must be a positive integer, got {v!r}")
            if b not in (0, 1):
                raise ValueError(f"value for variable {v} must be 0 or 1, got {b!r}")
        self._map = {v: int(items[v]) for v in sorted(items)}
        self._hash = None

    @classmethod
    def from_literals(cls, lits: Iterable[Literal]) -> "PartialAssignment":
        """The assignment making every given literal true."""
        m: dict[int, int] = {}
        for x in lits:
            v, b = var(x), int(x > 0)
            if m.get(v, b) != b:
                raise ValueError(f"clashing literals for variable {v}")
            m[v] = b
        return cls(m)

    @classmethod
    def falsifying(cls, C: Iterable[Literal]) -> "PartialAssignment":
        """phi_C: sets every literal of C to 0."""
        return cls.from_literals(-x for x in C)

    def __getitem__(self, v: int) -> int:
        return self._map[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, PartialAssignment):
            return self._map == other._map
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{v}->{b}" for v, b in self._map.items())
        return f"PartialAssignment({{{body}}})"

    def true_literals(self) -> frozenset[Literal]:
        return frozenset(v if b else -v for v, b in self._map.items())

    def value(self, lit: Literal) -> int | None:
        b = self._map.get(var(lit))
        if b is None:
            return None
        return b if lit > 0 else 1 - b

    def sort_key(self) -> tuple:
        """Lexicographic key over the true literals in canonical order."""
        return clause_key(self.true_literals())

    def to_dimacs(self) -> str:
        lits = sorted_literals(self.true_literals())
        return "v " + " ".join(str(x) for x in lits + [0])


def apply(phi: Mapping[int, int], F: Iterable[Clause]) -> ClauseSet:
    """phi * F: drop satisfied clauses, delete falsified literals."""
    if not isinstance(phi, PartialAssignment):
        phi = PartialAssignment(phi)
    return apply_literals(phi.true_literals(), F)


def apply_literals(true_lits: Iterable[Literal], F: Iterable[Clause]) -> ClauseSet:
    """Apply the assignment making the given (consistent) literals true."""
    t = frozenset(true_lits)
    if not t:
        return frozenset(F)
    f = frozenset(-x for x in t)
    out = set()
    for c in F:
        if c.isdisjoint(t):
            out.add(c - f if not c.isdisjoint(f) else c)
    return frozenset(out)


def compose(phi: Mapping[int, int], psi: Mapping[int, int]) -> PartialAssignment:
    """Left-biased union: phi's values win on shared variables."""
    m = dict(psi)
    m.update(phi)
    return PartialAssignment(m)


def pure_clause(F: Iterable[Clause]) -> Clause:
    """The set of literals occurring in F whose complement does not occur."""
    lits = literals_of(F)
    return frozenset(x for x in lits if -x not in lits)


def subsumption_eliminate(F: Iterable[Clause]) -> ClauseSet:
    """Remove every clause that is a strict superset of another clause."""
    kept: list[Clause] = []
    for c in sorted(set(F), key=len):
        if not any(k <= c for k in kept):
            kept.append(c)
    return frozenset(kept)


def _parse_ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise FormatError(f"non-integer token ({exc})", lineno) from None


def _parse_lines(text: Union[str, bytes], allow_xor: bool, require_xor: bool):
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    cnf: list[Clause] = []
    xor: list[Clause] = []
    header = None
    pending: list[int] = []
    pending_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise FormatError("duplicate header", lineno)
            if len(tokens) != 4 or tokens[1] not in ("cnf", "xnf"):
                raise FormatError(f"malformed header {line!r}", lineno)
            nums = _parse_ints(tokens[2:], lineno)
            if min(nums) < 0:
                raise FormatError("negative count in header", lineno)
            header = tuple(nums)
            continue
        if header is None:
            raise FormatError("clause before 'p' header", lineno)
        if tokens[0] == "x":
            if not allow_xor:
                raise FormatError("XOR clause in CNF input", lineno)
            if pending:
                raise FormatError("XOR clause starts inside an unterminated clause", lineno)
            values = _parse_ints(tokens[1:], lineno)
            if not values or values[-1] != 0 or 0 in values[:-1]:
                raise FormatError("XOR clause must be one line ending in a single 0", lineno)
            xor.append(_checked_clause(values[:-1], header, lineno))
            continue
        if require_xor:
            raise FormatError("expected an XOR clause line starting with 'x'", lineno)
        for value in _parse_ints(tokens, lineno):
            if not pending:
                pending_line = lineno
            if value == 0:
                cnf.append(_checked_clause(pending, header, pending_line))
                pending = []
            else:
                pending.append(value)
    if pending:
        raise FormatError("last clause lacks terminating 0", pending_line)
    return header, cnf, xor


def _checked_clause(values: list[int], header: tuple, lineno: int) -> Clause:
    try:
        clause = make_clause(values)
    except ValueError as exc:
        raise FormatError(str(exc), lineno) from None
    if any(var(x) > header[0] for x in clause):
        raise FormatError(f"variable exceeds header bound {header[0]}", lineno)
    return clause


def parse_dimacs(text: Union[str, bytes]) -> ClauseSet:
    """Parse DIMACS CNF text into a clause-set."""
    _, cnf, _ = _parse_lines(text, allow_xor=False, require_xor=False)
    return frozenset(cnf)


def parse_xnf(text: Union[str, bytes]) -> ClauseSet:
    """Parse XNF text (lines 'x lits 0') into an XOR-clause-set."""
    _, _, xor = _parse_lines(text, allow_xor=True, require_xor=True)
    return frozenset(xor)


def _format_clause(prefix: str, c: Iterable[Literal]) -> str:
    body = " ".join(str(x) for x in sorted_literals(c))
    return f"{prefix}{body} 0" if body else f"{prefix}0"


def emit_dimacs(F: Iterable[Clause], comments: Iterable[str] = ()) -> str:
    clauses = sorted_clauses(F)
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {max_var(clauses)} {len(clauses)}")
    lines.extend(_format_clause("", c) for c in clauses)
    return "\n".join(lines) + "\n"


def emit_xnf(F: Iterable[Clause], comments: Iterable[str] = ()) -> str:
    clauses = sorted_clauses(F)
    lines = [f"c {c}" for c in comments]
    lines.append(f"p xnf {max_var(clauses)} {len(clauses)}")
    lines.extend(_format_clause("x ", c) for c in clauses)
    return "\n".join(lines) + "\n"


def format_clause_set(F: Iterable[Clause]) -> str:
    """Compact human-readable form, e.g. {{1,-2},{3}}."""
    inner = ",".join("{" + ",".join(str(x) for x in sorted_literals(c)) + "}" for c in sorted_clauses(F))
    return "{" + inner + "}"
