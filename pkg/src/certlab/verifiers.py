"""NP-style verifiers, the fixed-width formula encoding, and certificate oracles.

The lex-oracle machinery answers "is there an accepted certificate among the
lexicographically first k?" and is the only nondeterminism primitive the rest
of the package uses.  first_certificate pins the lexicographically first
accepted certificate with a p-call binary search over that oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import bits_of_rank, bits_to_int, check_bits, int_to_bits, lex_rank
from .errors import BudgetError, ConfigError, FormatError, ShapeError
from .sat import ThreeSatInstance, eval_assignment, satisfying_mask

DEFAULT_BUDGET_BITS = 24


class StepCounter:
    """Per-invocation cost accounting: oracle calls and modeled scan steps."""

    __slots__ = ("oracle_calls", "steps")

    def __init__(self) -> None:
        self.oracle_calls = 0
        self.steps = 0

    def __repr__(self) -> str:
        return f"StepCounter(oracle_calls={self.oracle_calls}, steps={self.steps})"


@dataclass(frozen=True)
class LexQuery:
    """A (instance, rank threshold) query against Lex of a verifier."""

    instance: str
    k: int


class Verifier:
    """Deterministic certificate checker for instances of length n.

    Subclasses implement check(z, w).  A subclass may also provide
    accept_mask(z) returning the big-int mask of accepted certificates
    (bit v set iff the certificate with integer value v is accepted);
    the oracles below use it as a fast exhaustive-enumeration path.
    """

    name: str
    n: int
    p: int

    def check(self, z: str, w: str) -> bool:
        raise NotImplementedError


@dataclass
class FnVerifier(Verifier):
    """Verifier backed by an arbitrary check function (tests, custom languages)."""

    name: str
    n: int
    p: int
    fn: object

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ConfigError("certificate length p must be >= 1")

    def check(self, z: str, w: str) -> bool:
        return bool(self.fn(z, w))


# -- fixed-width binary encoding of formulas ----------------------------------


@dataclass(frozen=True)
class FormulaEncoding:
    """Fixed-width bit layout for formulas with up to max_vars variables and
    max_clauses clauses; see README for the field table.

    Layout (MSB first): num_vars | clause_count | max_clauses clause blocks.
    Each clause block holds 3 literal slots of (present, polarity, var index);
    unused slots and unused blocks are all-zero.  The all-zero string decodes
    to the canonical degenerate formula (0 variables, no clauses).
    """

    max_vars: int
    max_clauses: int

    def __post_init__(self) -> None:
        if self.max_vars < 1 or self.max_clauses < 0:
            raise ConfigError("max_vars must be >= 1 and max_clauses >= 0")

    @property
    def num_vars_bits(self) -> int:
        return self.max_vars.bit_length()

    @property
    def clause_count_bits(self) -> int:
        return max(1, self.max_clauses.bit_length())

    @property
    def var_bits(self) -> int:
        return max(1, (self.max_vars - 1).bit_length())

    @property
    def slot_bits(self) -> int:
        return 2 + self.var_bits

    @property
    def clause_bits(self) -> int:
        return 3 * self.slot_bits

    @property
    def width(self) -> int:
        return self.num_vars_bits + self.clause_count_bits + self.max_clauses * self.clause_bits

    def encode(self, inst: ThreeSatInstance) -> str:
        if inst.num_vars > self.max_vars:
            raise ConfigError(f"instance has {inst.num_vars} vars, encoding allows {self.max_vars}")
        if len(inst.clauses) > self.max_clauses:
            raise ConfigError(
                f"instance has {len(inst.clauses)} clauses, encoding allows {self.max_clauses}"
            )
        parts = [
            int_to_bits(inst.num_vars, self.num_vars_bits),
            int_to_bits(len(inst.clauses), self.clause_count_bits),
        ]
        for clause in inst.clauses:
            block = []
            for lit in clause:
                block.append("1" + ("1" if lit > 0 else "0") + int_to_bits(abs(lit) - 1, self.var_bits))
            block.extend("0" * self.slot_bits for _ in range(3 - len(clause)))
            parts.append("".join(block))
        parts.extend("0" * self.clause_bits for _ in range(self.max_clauses - len(inst.clauses)))
        return "".join(parts)

    def decode(self, bits: str) -> ThreeSatInstance:
        check_bits(bits, name="encoded formula")
        if len(bits) != self.width:
            raise FormatError(f"encoded formula must have {self.width} bits, got {len(bits)}")
        pos = 0

        def take(k: int) -> str:
            nonlocal pos
            out = bits[pos : pos + k]
            pos += k
            return out

        num_vars = bits_to_int(take(self.num_vars_bits))
        if num_vars > self.max_vars:
            raise FormatError(f"num_vars field {num_vars} exceeds {self.max_vars}")
        count = bits_to_int(take(self.clause_count_bits))
        if count > self.max_clauses:
            raise FormatError(f"clause count field {count} exceeds {self.max_clauses}")
        clauses = []
        for b in range(self.max_clauses):
            lits = []
            ended = False
            for _ in range(3):
                present, polarity, var_field = take(1), take(1), take(self.var_bits)
                if present == "0":
                    if polarity != "0" or bits_to_int(var_field) != 0:
                        raise FormatError("nonzero bits in an absent literal slot")
                    ended = True
                    continue
                if b >= count or ended:
                    raise FormatError("literal slot set outside the declared clause layout")
                var = bits_to_int(var_field) + 1
                if var > num_vars:
                    raise FormatError(f"literal references variable {var} > num_vars {num_vars}")
                lits.append(var if polarity == "1" else -var)
            clauses.append(tuple(lits))
        try:
            return ThreeSatInstance(num_vars, clauses[:count])
        except FormatError:
            raise
        except Exception as exc:  # pragma: no cover - defensive
            raise FormatError(str(exc)) from exc


def encode_3sat(encoding: FormulaEncoding, inst: ThreeSatInstance) -> str:
    return encoding.encode(inst)


def decode_3sat(encoding: FormulaEncoding, bits: str) -> ThreeSatInstance:
    return encoding.decode(bits)


class ThreeSatVerifier(Verifier):
    """Certificate checker for encoded formulas: the certificate is an
    assignment to max_vars variables; bits beyond an instance's declared
    num_vars are ignored.  Malformed instance strings reject everything.

    Decoded instances and satisfying-assignment masks are memoized per z;
    the memo is idempotent (same key always maps to the same value), so
    concurrent readers stay consistent.
    """

    def __init__(self, encoding: FormulaEncoding, name: str = "3sat") -> None:
        self.encoding = encoding
        self.name = name
        self.n = encoding.width
        self.p = encoding.max_vars
        self._instances: dict[str, ThreeSatInstance | None] = {}
        self._masks: dict[str, int] = {}

    def instance_for(self, z: str) -> ThreeSatInstance | None:
        if z not in self._instances:
            try:
                self._instances[z] = self.encoding.decode(z)
            except FormatError:
                self._instances[z] = None
        return self._instances[z]

    def check(self, z: str, w: str) -> bool:
        inst = self.instance_for(z)
        if inst is None:
            return False
        return eval_assignment(inst, w)

    def accept_mask(self, z: str) -> int:
        mask = self._masks.get(z)
        if mask is None:
            inst = self.instance_for(z)
            mask = 0 if inst is None else satisfying_mask(inst, self.p)
            self._masks[z] = mask
        return mask


# -- oracles -------------------------------------------------------------------


def verify(v: Verifier, z: str, w: str) -> bool:
    """Run the verifier's deterministic check; shape errors on bad lengths."""
    check_bits(z, length=v.n, name="instance")
    check_bits(w, length=v.p, name="certificate")
    return bool(v.check(z, w))


def lex_verify(v: Verifier, query: LexQuery, w: str) -> bool:
    """Accept iff the certificate is within the first k strings and accepted."""
    if not 1 <= query.k <= (1 << v.p):
        raise ShapeError(f"rank threshold {query.k} out of [1, 2^{v.p}]")
    check_bits(query.instance, length=v.n, name="instance")
    check_bits(w, length=v.p, name="certificate")
    return lex_rank(w) <= query.k and verify(v, query.instance, w)


def _check_budget(v: Verifier, budget_bits: int) -> None:
    if v.p > budget_bits:
        raise BudgetError(
            f"certificate length {v.p} exceeds enumeration budget of {budget_bits} bits"
        )


def nondet_oracle(v: Verifier, z: str, *, budget_bits: int = DEFAULT_BUDGET_BITS) -> bool:
    """Deterministic 2^p simulation of the nondeterministic oracle."""
    check_bits(z, length=v.n, name="instance")
    _check_budget(v, budget_bits)
    mask_fn = getattr(v, "accept_mask", None)
    if mask_fn is not None:
        return mask_fn(z) != 0
    return any(v.check(z, int_to_bits(val, v.p)) for val in range(1 << v.p))


def lex_oracle(
    v: Verifier,
    z: str,
    k: int,
    *,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    counter: StepCounter | None = None,
) -> bool:
    """Accept iff some certificate of rank <= k is accepted.

    Exhaustive scan in rank order with early exit; the counter records one
    oracle call plus the number of candidates the scan inspects (the mask
    fast path computes the same count without looping).
    """
    check_bits(z, length=v.n, name="instance")
    if not 1 <= k <= (1 << v.p):
        raise ShapeError(f"rank threshold {k} out of [1, 2^{v.p}]")
    _check_budget(v, budget_bits)
    mask_fn = getattr(v, "accept_mask", None)
    if mask_fn is not None:
        hits = mask_fn(z) & ((1 << k) - 1)
        accept = hits != 0
        scanned = ((hits & -hits).bit_length()) if accept else k
    else:
        accept = False
        scanned = k
        for rank in range(1, k + 1):
            if v.check(z, bits_of_rank(rank, v.p)):
                accept, scanned = True, rank
                break
    if counter is not None:
        counter.oracle_calls += 1
        counter.steps += scanned
    return accept


def first_certificate(
    v: Verifier,
    z: str,
    *,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    counter: StepCounter | None = None,
) -> str | None:
    """Lexicographically first accepted certificate, or None.

    Binary search for the minimal k with an accepted certificate of rank <= k;
    exactly p lex-oracle calls, then one direct verify to assert consistency.
    """
    check_bits(z, length=v.n, name="instance")
    _check_budget(v, budget_bits)
    lo, hi = 1, 1 << v.p
    while lo < hi:
        mid = (lo + hi) // 2
        if lex_oracle(v, z, mid, budget_bits=budget_bits, counter=counter):
            hi = mid
        else:
            lo = mid + 1
    w = bits_of_rank(lo, v.p)
    return w if verify(v, z, w) else None


def naive_first_certificate(
    v: Verifier, z: str, *, budget_bits: int = DEFAULT_BUDGET_BITS
) -> str | None:
    """Reference scan in rank order; test oracle for first_certificate."""
    check_bits(z, length=v.n, name="instance")
    _check_budget(v, budget_bits)
    for rank in range(1, (1 << v.p) + 1):
        w = bits_of_rank(rank, v.p)
        if v.check(z, w):
            return w
    return None
