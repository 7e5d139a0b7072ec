"""3-SAT instances: evaluation, DIMACS io, brute-force oracles, corpora.

A clause is a tuple of signed variable indices (DIMACS convention, 1-based,
at most 3 literals).  Assignments are bitstrings with variable j at string
position j-1.
"""

from __future__ import annotations

import itertools
import random

from .bits import check_bits
from .errors import FormatError, ShapeError

Clause = tuple[int, ...]


def _canon_clause(lits, num_vars: int) -> Clause:
    seen = []
    for lit in lits:
        if not isinstance(lit, int) or lit == 0:
            raise FormatError(f"literal must be a nonzero integer, got {lit!r}")
        if not 1 <= abs(lit) <= num_vars:
            raise FormatError(f"literal {lit} references a variable outside [1, {num_vars}]")
        if lit not in seen:
            seen.append(lit)
    if len(seen) > 3:
        raise FormatError(f"clause has {len(seen)} literals, at most 3 allowed")
    return tuple(sorted(seen, key=lambda l: (abs(l), l < 0)))


class ThreeSatInstance:
    """A CNF formula with clauses of width <= 3.

    Clauses are canonicalized on construction (literals sorted, duplicates
    within a clause dropped).  An empty clause list is trivially satisfiable;
    an empty clause (width 0) is unsatisfiable.
    """

    __slots__ = ("num_vars", "clauses")

    def __init__(self, num_vars: int, clauses) -> None:
        if num_vars < 0:
            raise FormatError("num_vars must be nonnegative")
        self.num_vars = num_vars
        self.clauses: tuple[Clause, ...] = tuple(_canon_clause(c, num_vars) for c in clauses)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ThreeSatInstance)
            and self.num_vars == other.num_vars
            and self.clauses == other.clauses
        )

    def __hash__(self) -> int:
        return hash((self.num_vars, self.clauses))

    def __repr__(self) -> str:
        return f"ThreeSatInstance(num_vars={self.num_vars}, clauses={list(self.clauses)})"


def eval_assignment(inst: ThreeSatInstance, assignment: str) -> bool:
    """True iff the assignment satisfies every clause.

    The assignment may be longer than num_vars; extra bits are ignored.
    """
    check_bits(assignment, name="assignment")
    if len(assignment) < inst.num_vars:
        raise ShapeError(
            f"assignment has {len(assignment)} bits, instance needs {inst.num_vars}"
        )
    for clause in inst.clauses:
        for lit in clause:
            if (assignment[abs(lit) - 1] == "1") == (lit > 0):
                break
        else:
            return False
    return True


# -- bit-parallel assignment enumeration ------------------------------------
#
# The set of satisfying assignments over {0,1}^p is materialized as one big
# integer: bit v is set iff the assignment with integer value v (MSB-first,
# variable j at weight 2^(p-j)) satisfies the formula.

_VAR_MASKS: dict[tuple[int, int], int] = {}


def _var_mask(p: int, j: int) -> int:
    # assignments v whose bit (p-j) is set, as a 2^p-bit mask
    key = (p, j)
    cached = _VAR_MASKS.get(key)
    if cached is not None:
        return cached
    b = p - j
    chunk = ((1 << (1 << b)) - 1) << (1 << b)
    period = 1 << (b + 1)
    mask = chunk * (((1 << (1 << p)) - 1) // ((1 << period) - 1))
    _VAR_MASKS[key] = mask
    return mask


def satisfying_mask(inst: ThreeSatInstance, p: int) -> int:
    """Big-int mask of all satisfying assignments in {0,1}^p.

    p may exceed num_vars; the extra variables are unconstrained.
    """
    if p < inst.num_vars:
        raise ShapeError(f"p={p} smaller than num_vars={inst.num_vars}")
    full = (1 << (1 << p)) - 1
    mask = full
    for clause in inst.clauses:
        sat = 0
        for lit in clause:
            m = _var_mask(p, abs(lit))
            sat |= m if lit > 0 else (full ^ m)
        mask &= sat
        if not mask:
            break
    return mask


def brute_force_sat(inst: ThreeSatInstance) -> bool:
    """Independent satisfiability oracle: direct evaluation of all assignments."""
    n = inst.num_vars
    for v in range(1 << n):
        if eval_assignment(inst, format(v, f"0{n}b") if n else ""):
            return True
    return False


def solutions(inst: ThreeSatInstance) -> list[str]:
    """All satisfying assignments in lexicographic order (direct evaluation)."""
    n = inst.num_vars
    out = []
    for v in range(1 << n):
        a = format(v, f"0{n}b") if n else ""
        if eval_assignment(inst, a):
            out.append(a)
    return out


# -- DIMACS ------------------------------------------------------------------


def parse_dimacs(text: str) -> ThreeSatInstance:
    """Parse standard DIMACS CNF.  Clauses with more than 3 literals are rejected."""
    num_vars = None
    declared_clauses = None
    lits: list[int] = []
    clauses: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"line {lineno}: bad problem line {line!r}")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: bad problem line {line!r}") from None
            continue
        if num_vars is None:
            raise FormatError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"line {lineno}: bad token {tok!r}") from None
            if lit == 0:
                clauses.append(lits)
                lits = []
            else:
                lits.append(lit)
    if num_vars is None:
        raise FormatError("missing 'p cnf' header")
    if lits:
        raise FormatError("last clause not terminated by 0")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise FormatError(
            f"header declares {declared_clauses} clauses, found {len(clauses)}"
        )
    return ThreeSatInstance(num_vars, clauses)


def to_dimacs(inst: ThreeSatInstance) -> str:
    lines = [f"p cnf {inst.num_vars} {len(inst.clauses)}"]
    for clause in inst.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


# -- corpora -----------------------------------------------------------------


def clause_universe(num_vars: int, max_width: int = 3) -> list[Clause]:
    """All canonical clauses over distinct variables, widths 1..max_width."""
    out = []
    for width in range(1, min(max_width, num_vars, 3) + 1):
        for vs in itertools.combinations(range(1, num_vars + 1), width):
            for signs in itertools.product((1, -1), repeat=width):
                out.append(tuple(s * v for v, s in zip(vs, signs)))
    return [_canon_clause(c, num_vars) for c in out]


def exhaustive_formulas(num_vars: int, max_clauses: int) -> list[ThreeSatInstance]:
    """Every formula with up to max_clauses distinct clauses from the universe."""
    universe = clause_universe(num_vars)
    out = []
    for k in range(max_clauses + 1):
        for subset in itertools.combinations(universe, k):
            out.append(ThreeSatInstance(num_vars, subset))
    return out


def random_instance(
    rng: random.Random, num_vars: int, num_clauses: int, width: int = 3
) -> ThreeSatInstance:
    """Random formula: fixed clause count, distinct variables per clause."""
    if width > num_vars:
        raise ShapeError(f"clause width {width} exceeds num_vars {num_vars}")
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return ThreeSatInstance(num_vars, clauses)
