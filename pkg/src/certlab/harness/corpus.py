"""Formula corpora and their encodings, built from config."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigError
from ..sat import ThreeSatInstance, exhaustive_formulas, parse_dimacs, random_instance
from ..verifiers import FormulaEncoding, ThreeSatVerifier
from .config import get_int, get_str


@dataclass
class Corpus:
    instances: list[ThreeSatInstance]
    encoding: FormulaEncoding
    verifier: ThreeSatVerifier


def exhaustive_two_var_corpus() -> Corpus:
    """All formulas with up to 3 distinct clauses over 2 variables (93 of them)."""
    encoding = FormulaEncoding(max_vars=2, max_clauses=3)
    return Corpus(exhaustive_formulas(2, 3), encoding, ThreeSatVerifier(encoding))


def single_clause_corpus() -> Corpus:
    """Tiny corpus (2 variables, at most one clause): small enough that the
    whole example domain is exhaustively enumerable."""
    encoding = FormulaEncoding(max_vars=2, max_clauses=1)
    return Corpus(exhaustive_formulas(2, 1), encoding, ThreeSatVerifier(encoding))


def random_corpus(seed: int | str, count: int, vars_min: int = 3, vars_max: int = 4) -> Corpus:
    """Seeded random formulas; clause count equals the variable count, which
    keeps every instance satisfiable with many certificates (k width-3 clauses
    rule out at most k*2^(v-3) of the 2^v assignments)."""
    if not 3 <= vars_min <= vars_max:
        raise ConfigError("random corpus needs 3 <= vars_min <= vars_max")
    rng = random.Random(f"corpus:{seed}")
    instances = []
    for _ in range(count):
        v = rng.randint(vars_min, vars_max)
        instances.append(random_instance(rng, v, num_clauses=v, width=3))
    encoding = FormulaEncoding(max_vars=vars_max, max_clauses=vars_max)
    return Corpus(instances, encoding, ThreeSatVerifier(encoding))


def dimacs_corpus(paths: list[str]) -> Corpus:
    instances = []
    for path in paths:
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"DIMACS file not found: {path}")
        instances.append(parse_dimacs(p.read_text()))
    if not instances:
        raise ConfigError("DIMACS corpus needs at least one file")
    max_vars = max(inst.num_vars for inst in instances)
    max_clauses = max(len(inst.clauses) for inst in instances)
    encoding = FormulaEncoding(max_vars=max(1, max_vars), max_clauses=max(1, max_clauses))
    return Corpus(instances, encoding, ThreeSatVerifier(encoding))


def build_corpus(cfg: dict[str, str], seed: int | str) -> Corpus:
    kind = get_str(cfg, "corpus.kind", "exhaustive2var")
    if kind == "exhaustive2var":
        return exhaustive_two_var_corpus()
    if kind == "single_clause":
        return single_clause_corpus()
    if kind == "random":
        return random_corpus(
            seed,
            count=get_int(cfg, "corpus.count", 200),
            vars_min=get_int(cfg, "corpus.vars_min", 3),
            vars_max=get_int(cfg, "corpus.vars_max", 4),
        )
    if kind == "dimacs":
        paths = [tok.strip() for tok in get_str(cfg, "corpus.paths").split(",") if tok.strip()]
        return dimacs_corpus(paths)
    raise ConfigError(f"unknown corpus.kind {kind!r}")


def decider_corpus(cfg: dict[str, str], seed: int | str) -> list[Corpus]:
    """The end-to-end decider corpus: the exhaustive 2-variable corpus plus
    seeded random 3-4 variable formulas (each with its own encoding)."""
    return [
        exhaustive_two_var_corpus(),
        random_corpus(seed, count=get_int(cfg, "corpus.count", 200)),
    ]


def forcing_formula(num_vars: int = 16, forced: int = 8, extra: int = 4) -> ThreeSatInstance:
    """Formula whose lexicographically first satisfying assignment has high
    rank: unit clauses force the leading variables to 1, then a few wide
    clauses over the remaining variables keep it nontrivial (and satisfiable:
    the all-ones assignment always works)."""
    clauses = [(v,) for v in range(1, forced + 1)]
    rng = random.Random("forcing")
    free = range(forced + 1, num_vars + 1)
    pool = list(free) if len(free) >= 3 else list(range(1, num_vars + 1))
    width = min(3, len(pool))
    for _ in range(extra):
        vs = rng.sample(pool, width)
        signs = [rng.random() < 0.5 for _ in vs]
        clause = tuple(v if s else -v for v, s in zip(vs, signs))
        # keep the all-ones assignment satisfying
        if all(l < 0 for l in clause):
            clause = (abs(clause[0]),) + clause[1:]
        clauses.append(clause)
    return ThreeSatInstance(num_vars, clauses)
