"""PAC framework: finite-support distributions, samples, hypotheses, and the
batch learners (few-sample/slow, sparse ERM/fast, junta, enumeration ERM).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .bits import check_bits
from .codes import CodeParams
from .concepts import (
    CertConcept,
    DecisionTree,
    ExampleLayout,
    build_decision_tree,
    dt_eval,
)
from .errors import ConfigError, DataInconsistencyError, ShapeError
from .verifiers import DEFAULT_BUDGET_BITS, StepCounter, Verifier

WEIGHT_TOLERANCE = 1e-9


class Distribution:
    """Finite-support distribution over equal-length example points."""

    __slots__ = ("points", "weights")

    def __init__(self, points, weights) -> None:
        self.points = tuple(points)
        self.weights = tuple(float(w) for w in weights)
        if len(self.points) != len(self.weights):
            raise ConfigError("points and weights must have equal length")
        if any(w < 0 for w in self.weights):
            raise ConfigError("weights must be nonnegative")
        if self.points:
            length = len(self.points[0])
            for pt in self.points:
                check_bits(pt, length=length, name="support point")
        if abs(sum(self.weights) - 1.0) > WEIGHT_TOLERANCE:
            raise ConfigError(f"weights sum to {sum(self.weights)}, expected 1")

    @classmethod
    def uniform(cls, points) -> "Distribution":
        pts = list(points)
        if not pts:
            raise ConfigError("uniform distribution needs a nonempty support")
        return cls(pts, [1.0 / len(pts)] * len(pts))

    @classmethod
    def point_mass(cls, point: str) -> "Distribution":
        return cls([point], [1.0])

    def draw(self, rng: random.Random, m: int) -> list[str]:
        if m < 0:
            raise ConfigError("sample size must be nonnegative")
        if m == 0:
            return []
        if not self.points:
            raise ConfigError("cannot sample from an empty support")
        return rng.choices(self.points, weights=self.weights, k=m)


@dataclass(frozen=True)
class LabeledSample:
    pairs: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if self.pairs:
            length = len(self.pairs[0][0])
            for x, y in self.pairs:
                check_bits(x, length=length, name="sample point")
                if y not in (0, 1):
                    raise ShapeError(f"label must be 0/1, got {y!r}")

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def example_len(self) -> int:
        if not self.pairs:
            raise ShapeError("empty sample has no example length")
        return len(self.pairs[0][0])


def draw_sample(dist: Distribution, concept, m: int, rng: random.Random) -> LabeledSample:
    """m i.i.d. draws from the distribution, labeled by the concept."""
    return LabeledSample(tuple((x, int(concept(x))) for x in dist.draw(rng, m)))


def error_of(dist: Distribution, f, h) -> float:
    """Exact weighted disagreement Pr_{x~D}[f(x) != h(x)] over the support."""
    return sum(w for x, w in zip(dist.points, dist.weights) if int(f(x)) != int(h(x)))


# -- hypotheses -----------------------------------------------------------------


class ConstantHypothesis:
    __slots__ = ("bit",)

    def __init__(self, bit: int) -> None:
        self.bit = int(bit)

    def __call__(self, x: str) -> int:
        return self.bit

    @property
    def size(self) -> int:
        return 1

    def __repr__(self) -> str:
        return f"ConstantHypothesis({self.bit})"


class TableHypothesis:
    """1 exactly on an explicit finite set of points; 0 elsewhere."""

    __slots__ = ("ones",)

    def __init__(self, ones) -> None:
        self.ones = frozenset(ones)

    def __call__(self, x: str) -> int:
        return 1 if x in self.ones else 0

    @property
    def size(self) -> int:
        return max(1, len(self.ones))

    def __repr__(self) -> str:
        return f"TableHypothesis(<{len(self.ones)} ones>)"


class JuntaHypothesis:
    """Depends only on the leading index bits; a table over all 2^ell values."""

    __slots__ = ("bits", "layout")

    def __init__(self, bits, layout: ExampleLayout) -> None:
        self.bits = tuple(int(b) for b in bits)
        self.layout = layout
        if len(self.bits) != 1 << layout.ell:
            raise ShapeError("junta table must cover all index values")

    def __call__(self, x: str) -> int:
        check_bits(x, length=self.layout.example_len, name="example")
        return self.bits[int(x[: self.layout.ell], 2)]

    @property
    def size(self) -> int:
        return len(self.bits)


class TreeHypothesis:
    __slots__ = ("tree",)

    def __init__(self, tree: DecisionTree) -> None:
        self.tree = tree

    def __call__(self, x: str) -> int:
        return dt_eval(self.tree, x)

    @property
    def size(self) -> int:
        return self.tree.size


# -- learners -------------------------------------------------------------------


def few_sample_learner(
    sample: LabeledSample,
    verifier: Verifier,
    params: CodeParams,
    *,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    counter: StepCounter | None = None,
):
    """Claim-style slow learner: a single 1-labeled example pins the instance,
    an exponential-time certificate search pins the concept exactly."""
    ones = [x for x, y in sample.pairs if y == 1]
    if not ones:
        return ConstantHypothesis(0)
    prefixes = {x[: verifier.n] for x in ones}
    if len(prefixes) > 1:
        raise DataInconsistencyError("1-labeled examples carry conflicting instance prefixes")
    z = next(iter(prefixes))
    concept = CertConcept(verifier, z, params, budget_bits=budget_bits, counter=counter)
    for x, y in sample.pairs:
        if concept(x) != y:
            raise DataInconsistencyError("sample is not labeled by any certificate concept")
    return TreeHypothesis(build_decision_tree(concept))


def sparse_erm(sample: LabeledSample, *, counter: StepCounter | None = None):
    """One-pass table ERM: predict 1 exactly on the sample's 1-points."""
    ones: set[str] = set()
    zeros: set[str] = set()
    for x, y in sample.pairs:
        (ones if y == 1 else zeros).add(x)
    conflict = ones & zeros
    if conflict:
        raise DataInconsistencyError(f"contradictory labels for {sorted(conflict)[:3]}")
    if counter is not None:
        counter.steps += sample.m
    return TableHypothesis(ones)


def junta_learner(
    sample: LabeledSample, layout: ExampleLayout, *, counter: StepCounter | None = None
):
    """Learn a table over the 2^ell index values; unobserved indices map to 0."""
    table: dict[int, int] = {}
    for x, y in sample.pairs:
        check_bits(x, length=layout.example_len, name="sample point")
        idx = int(x[: layout.ell], 2)
        prev = table.get(idx)
        if prev is not None and prev != y:
            raise DataInconsistencyError(f"index {idx} observed with both labels")
        table[idx] = y
    if counter is not None:
        counter.steps += sample.m
    bits = tuple(table.get(i, 0) for i in range(1 << layout.ell))
    return JuntaHypothesis(bits, layout)


def erm_learner(stream, sample: LabeledSample):
    """First enumerated tree with zero empirical error (enumeration order
    breaks ties); the realizable setting guarantees one exists."""
    for _z, tree in stream:
        if all(dt_eval(tree, x) == y for x, y in sample.pairs):
            return TreeHypothesis(tree)
    raise DataInconsistencyError("no enumerated concept is consistent with the sample")


# -- trial harness ----------------------------------------------------------------


@dataclass
class LearnerReport:
    hypothesis: object
    samples_used: int
    wall_s: float
    steps: int


def run_learner(learner, sample: LabeledSample, rng: random.Random) -> LearnerReport:
    """Time one learner invocation; the learner may tick the provided counter."""
    counter = StepCounter()
    t0 = time.perf_counter()
    hyp = learner(sample, rng, counter)
    wall = time.perf_counter() - t0
    return LearnerReport(hypothesis=hyp, samples_used=sample.m, wall_s=wall, steps=counter.steps)


@dataclass
class SuiteResult:
    success_rate: float
    mean_error: float
    errors: tuple[float, ...]
    mean_steps: float
    wall_s: float


def pac_trial_suite(
    learner,
    concept,
    dist: Distribution,
    eps: float,
    m: int,
    trials: int,
    master_seed: int | str,
) -> SuiteResult:
    """Empirical estimate of the PAC success event Pr[error <= eps].

    learner(sample, rng, counter) -> hypothesis.  Trial t draws from a
    private generator seeded by (master_seed, t); results are deterministic.
    """
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    errors = []
    successes = 0
    total_steps = 0
    t0 = time.perf_counter()
    for t in range(trials):
        rng = random.Random(f"{master_seed}:{t}")
        sample = draw_sample(dist, concept, m, rng)
        counter = StepCounter()
        hyp = learner(sample, rng, counter)
        err = error_of(dist, concept, hyp)
        errors.append(err)
        total_steps += counter.steps
        if err <= eps + 1e-12:
            successes += 1
    wall = time.perf_counter() - t0
    return SuiteResult(
        success_rate=successes / trials,
        mean_error=sum(errors) / trials,
        errors=tuple(errors),
        mean_steps=total_steps / trials,
        wall_s=wall,
    )
