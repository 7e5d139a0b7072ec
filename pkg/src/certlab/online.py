"""Online (mistake-bound) learning: the single-mistake learner for the
certificate class, the sorted-list learner for sparse classes, an optimal
adversary (Littlestone dimension) oracle, and the online-to-PAC conversion.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .codes import CodeParams
from .concepts import CertConcept
from .errors import AdversaryInconsistencyError, BudgetError, ConfigError
from .paclearn import ConstantHypothesis, LabeledSample, TableHypothesis
from .verifiers import DEFAULT_BUDGET_BITS, StepCounter, Verifier

#: Sample-count constant for the online-to-PAC conversion; artifact constant,
#: validated empirically by the property suite.
ONLINE_TO_PAC_KAPPA = 20


@dataclass
class OnlineRound:
    point: str
    prediction: int
    true_label: int
    mistake: bool
    elapsed_s: float


@dataclass
class OnlineRunLog:
    rounds: tuple[OnlineRound, ...]

    @property
    def mistakes(self) -> int:
        return sum(1 for r in self.rounds if r.mistake)


class SingleMistakeLearner:
    """Predicts 0 until the first 1-labeled example, then brute-forces the
    instance's first certificate and predicts the exact concept thereafter.
    Total mistakes <= 1 against any consistent adversary."""

    def __init__(
        self,
        verifier: Verifier,
        params: CodeParams,
        *,
        budget_bits: int = DEFAULT_BUDGET_BITS,
        counter: StepCounter | None = None,
    ) -> None:
        self.verifier = verifier
        self.params = params
        self.budget_bits = budget_bits
        self.counter = counter
        self.concept: CertConcept | None = None

    def predict(self, x: str) -> int:
        return 0 if self.concept is None else self.concept(x)

    def observe(self, x: str, label: int) -> None:
        if self.concept is not None:
            if self.concept(x) != label:
                raise AdversaryInconsistencyError(
                    "label contradicts the identified concept"
                )
            return
        if label != 1:
            return
        z = x[: self.verifier.n]
        concept = CertConcept(
            self.verifier, z, self.params, budget_bits=self.budget_bits, counter=self.counter
        )
        if concept(x) != 1:
            raise AdversaryInconsistencyError(
                "1-label is consistent with no certificate concept"
            )
        self.concept = concept

    def current_hypothesis(self):
        return ConstantHypothesis(0) if self.concept is None else self.concept

    def fork(self) -> "SingleMistakeLearner":
        other = SingleMistakeLearner(
            self.verifier, self.params, budget_bits=self.budget_bits, counter=self.counter
        )
        other.concept = self.concept
        return other

    def state_key(self):
        return ("pre",) if self.concept is None else ("locked", self.concept.z)


class SortedListLearner:
    """Predicts 1 exactly on the sorted list of 1-points seen so far; inserts
    on mistakes.  Mistakes never exceed the target's sparsity; per-round work
    is one binary search plus an optional insert."""

    def __init__(self, sparsity_bound: int) -> None:
        self.sparsity_bound = sparsity_bound
        self.ones: list[str] = []
        self.last_comparisons = 0

    def _search(self, x: str) -> tuple[bool, int]:
        lo, hi = 0, len(self.ones)
        comparisons = 0
        while lo < hi:
            mid = (lo + hi) // 2
            comparisons += 1
            if self.ones[mid] < x:
                lo = mid + 1
            elif self.ones[mid] > x:
                hi = mid
            else:
                self.last_comparisons = comparisons
                return True, mid
        self.last_comparisons = comparisons
        return False, lo

    def predict(self, x: str) -> int:
        found, _ = self._search(x)
        return 1 if found else 0

    def observe(self, x: str, label: int) -> None:
        if label != 1:
            return
        found, pos = self._search(x)
        if not found:
            self.ones.insert(pos, x)

    def current_hypothesis(self):
        return TableHypothesis(frozenset(self.ones))

    def fork(self) -> "SortedListLearner":
        other = SortedListLearner(self.sparsity_bound)
        other.ones = list(self.ones)
        return other

    def state_key(self):
        return tuple(self.ones)


def run_online(learner, rounds) -> OnlineRunLog:
    """Feed (point, label) rounds to a learner, logging predictions and mistakes."""
    log = []
    for x, label in rounds:
        t0 = time.perf_counter()
        pred = learner.predict(x)
        mistake = pred != label
        learner.observe(x, label)
        log.append(OnlineRound(x, pred, int(label), mistake, time.perf_counter() - t0))
    return OnlineRunLog(tuple(log))


# -- adversaries -----------------------------------------------------------------


def exhaustive_adversary_max_mistakes(
    make_learner, concepts, domain, max_rounds: int
) -> int:
    """Most mistakes any consistent adversary can extract within max_rounds.

    Full game-tree search over (point, label) moves; the adversary must keep
    the version space nonempty.  Memoized on (learner state, version space,
    rounds left), so the learner must expose fork() and state_key().
    """
    concepts = list(concepts)
    domain = list(domain)
    labels = [tuple(int(c(x)) for x in domain) for c in concepts]
    memo: dict[tuple, int] = {}

    def best(learner, vs: frozenset[int], rounds_left: int) -> int:
        if rounds_left == 0 or not vs:
            return 0
        key = (learner.state_key(), vs, rounds_left)
        cached = memo.get(key)
        if cached is not None:
            return cached
        out = 0
        for xi, x in enumerate(domain):
            for label in (0, 1):
                nvs = frozenset(ci for ci in vs if labels[ci][xi] == label)
                if not nvs:
                    continue
                child = learner.fork()
                pred = child.predict(x)
                child.observe(x, label)
                got = (1 if pred != label else 0) + best(child, nvs, rounds_left - 1)
                if got > out:
                    out = got
        memo[key] = out
        return out

    return best(make_learner(), frozenset(range(len(concepts))), max_rounds)


def random_consistent_adversary(
    rng: random.Random, learner, concepts, domain, rounds: int
) -> OnlineRunLog:
    """Random adversary that keeps the version space nonempty each round."""
    concepts = list(concepts)
    domain = list(domain)
    vs = set(range(len(concepts)))
    log = []
    for _ in range(rounds):
        x = rng.choice(domain)
        options = []
        for label in (0, 1):
            nvs = {ci for ci in vs if int(concepts[ci](x)) == label}
            if nvs:
                options.append((label, nvs))
        if not options:
            raise AdversaryInconsistencyError("version space emptied")
        label, nvs = rng.choice(options)
        t0 = time.perf_counter()
        pred = learner.predict(x)
        learner.observe(x, label)
        log.append(OnlineRound(x, pred, label, pred != label, time.perf_counter() - t0))
        vs = nvs
    return OnlineRunLog(tuple(log))


# -- Littlestone dimension ----------------------------------------------------------


def ldim_oracle(concepts, domain, *, max_depth: int = 3, max_domain: int = 16) -> int:
    """Optimal mistake bound via minimax game-tree search.

    Returns min(Ldim, max_depth): the adversary presents a point on which the
    surviving version space splits, the learner predicts optimally, and a
    mistake is forced on the branch the adversary keeps.  Exact whenever the
    result is below max_depth.
    """
    domain = list(domain)
    concepts = list(concepts)
    if len(domain) > max_domain or max_depth > 6:
        raise BudgetError(
            f"ldim search over {len(domain)} points at depth {max_depth} exceeds budget"
        )
    labels = [tuple(int(c(x)) for x in domain) for c in concepts]
    memo: dict[tuple, int] = {}

    def value(vs: frozenset[int], depth: int) -> int:
        if depth == 0 or len(vs) <= 1:
            return 0
        key = (vs, depth)
        cached = memo.get(key)
        if cached is not None:
            return cached
        out = 0
        for xi in range(len(domain)):
            v0 = frozenset(ci for ci in vs if labels[ci][xi] == 0)
            v1 = vs - v0
            if v0 and v1:
                got = 1 + min(value(v0, depth - 1), value(v1, depth - 1))
                if got > out:
                    out = got
        memo[key] = out
        return out

    return value(frozenset(range(len(concepts))), max_depth)


# -- online-to-PAC conversion ---------------------------------------------------------


class OnlineToPacLearner:
    """Conservative conversion: run the online learner over the i.i.d. sample,
    update only on mistakes, and return the hypothesis with the longest
    consecutive error-free run.  Sample count ceil(kappa*(m + ln(1/delta))/eps)."""

    def __init__(
        self,
        make_learner,
        mistake_bound: int,
        eps: float,
        delta: float,
        kappa: int = ONLINE_TO_PAC_KAPPA,
    ) -> None:
        if not 0 < eps < 1 or not 0 < delta < 1:
            raise ConfigError("eps and delta must lie in (0, 1)")
        self.make_learner = make_learner
        self.mistake_bound = mistake_bound
        self.eps = eps
        self.delta = delta
        self.kappa = kappa
        self.sample_size = math.ceil(kappa * (mistake_bound + math.log(1 / delta)) / eps)

    def learn(self, sample: LabeledSample):
        learner = self.make_learner()
        current = learner.current_hypothesis()
        best_hyp, best_streak = current, -1
        streak = 0
        for x, y in sample.pairs:
            if current(x) == y:
                streak += 1
                continue
            if streak > best_streak:
                best_hyp, best_streak = current, streak
            learner.observe(x, y)
            current = learner.current_hypothesis()
            streak = 0
        if streak > best_streak:
            best_hyp = current
        return best_hyp

    def __call__(self, sample: LabeledSample, rng=None, counter=None):
        return self.learn(sample)
