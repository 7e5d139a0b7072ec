"""The learner-to-decider reduction: challenge rounds with Merlin-supplied
labels, the one-sided randomized simulation that enumerates all proofs, and
the assembled SAT decider.

Soundness is structural: the final step always runs the verifier on the
decoded certificate, so an unsatisfiable instance is rejected for every seed
and every proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .bits import int_to_bits, random_bits
from .codes import CodeParams, get_code
from .concepts import CertConcept, ExampleLayout, UnifCertConcept
from .errors import BudgetError, CertlabError, ConfigError
from .paclearn import LabeledSample
from .sat import ThreeSatInstance
from .verifiers import DEFAULT_BUDGET_BITS, ThreeSatVerifier, Verifier, verify


def learner_error_target(params: CodeParams, variant: str = "standard"):
    """Error the plugged-in learner is nominally asked for, derived from the
    code contract: eps_star for the standard rounds, eps_star/100 for the
    uniform rounds (whose single random readout needs the Markov slack)."""
    eps = params.eps_star
    if variant == "standard":
        return eps
    if variant == "uniform":
        return eps / 100
    raise ConfigError(f"unknown variant {variant!r}")


class HonestMerlin:
    """Answers with the true concept labels (computed via the first certificate)."""


@dataclass(frozen=True)
class FixedProofMerlin:
    """Answers with a fixed m-bit label string, one bit per requested example."""

    labels: str


class ExhaustiveMerlin:
    """Marker: the caller enumerates every label string (rtime_decide only)."""


@dataclass
class AmTranscript:
    seed: str
    indices: tuple[str, ...]
    merlin_labels: str
    hypothesis: object
    y: str
    w_tilde: str
    verdict: int
    failed: bool = False

    def digest(self) -> str:
        wt = f"0x{int(self.w_tilde, 2):x}" if self.w_tilde else "-"
        return (
            f"seed={self.seed} idx={','.join(self.indices)} "
            f"labels={self.merlin_labels or '-'} wtilde={wt} verdict={self.verdict}"
        )


def _verdict(verifier: Verifier, z: str, w: str) -> int:
    mask_fn = getattr(verifier, "accept_mask", None)
    if mask_fn is not None:
        return (mask_fn(z) >> int(w, 2)) & 1
    return 1 if verify(verifier, z, w) else 0


def _query_codeword(hypothesis, layout: ExampleLayout, fixed_part: str) -> tuple[str, int]:
    """Query the hypothesis on every index value; return (y string, int of the
    first cp positions)."""
    bits = []
    y_int = 0
    for val in range(1 << layout.ell):
        b = int(hypothesis(layout.join(fixed_part, int_to_bits(val, layout.ell))))
        bits.append("1" if b else "0")
        if b and val < layout.cp:
            y_int |= 1 << val
    return "".join(bits), y_int


def am_round(
    z: str,
    verifier: Verifier,
    learner,
    merlin,
    params: CodeParams,
    rng: random.Random,
    m: int,
    *,
    seed_label: str = "",
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> AmTranscript:
    """One protocol round: draw m uniform indices, ask Merlin for labels, run
    the learner, read a codeword off the hypothesis, decode, verify."""
    layout = ExampleLayout.standard(verifier.n, params, verifier.p)
    code = get_code(params, verifier.p)
    indices = tuple(random_bits(rng, layout.ell) for _ in range(m))
    points = [z + i for i in indices]

    if isinstance(merlin, HonestMerlin):
        concept = CertConcept(verifier, z, params, budget_bits=budget_bits)
        labels = "".join(str(concept(x)) for x in points)
    elif isinstance(merlin, FixedProofMerlin):
        if len(merlin.labels) != m:
            raise ConfigError(f"fixed proof must have {m} labels")
        labels = merlin.labels
    else:
        raise ConfigError("am_round requires an honest or fixed-proof Merlin")

    sample = LabeledSample(tuple(zip(points, (int(b) for b in labels))))
    try:
        hypothesis = learner(sample, rng, None)
    except CertlabError:
        return AmTranscript(seed_label, indices, labels, None, "", "", 0, failed=True)
    y, y_int = _query_codeword(hypothesis, layout, z)
    w_tilde = format(code.decode_value(y_int), f"0{verifier.p}b")
    return AmTranscript(
        seed_label, indices, labels, hypothesis, y, w_tilde, _verdict(verifier, z, w_tilde)
    )


def am_round_uniform(
    z: str,
    verifier: Verifier,
    learner,
    merlin,
    params: CodeParams,
    rng: random.Random,
    m: int,
    *,
    seed_label: str = "",
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> AmTranscript:
    """Uniform-distribution round: full examples (index, x) are drawn uniformly,
    and the codeword is read at a single uniformly random trailing x."""
    layout = ExampleLayout.uniform(verifier.n, params, verifier.p)
    code = get_code(params, verifier.p)
    points = tuple(random_bits(rng, layout.example_len) for _ in range(m))
    indices = tuple(x[: layout.ell] for x in points)

    if isinstance(merlin, HonestMerlin):
        concept = UnifCertConcept(verifier, z, params, budget_bits=budget_bits)
        labels = "".join(str(concept(x)) for x in points)
    elif isinstance(merlin, FixedProofMerlin):
        if len(merlin.labels) != m:
            raise ConfigError(f"fixed proof must have {m} labels")
        labels = merlin.labels
    else:
        raise ConfigError("am_round_uniform requires an honest or fixed-proof Merlin")

    sample = LabeledSample(tuple(zip(points, (int(b) for b in labels))))
    x_star = random_bits(rng, layout.n)
    try:
        hypothesis = learner(sample, rng, None)
    except CertlabError:
        return AmTranscript(seed_label, indices, labels, None, "", "", 0, failed=True)
    y, y_int = _query_codeword(hypothesis, layout, x_star)
    w_tilde = format(code.decode_value(y_int), f"0{verifier.p}b")
    return AmTranscript(
        seed_label, indices, labels, hypothesis, y, w_tilde, _verdict(verifier, z, w_tilde)
    )


# -- the one-sided decider -------------------------------------------------------


@dataclass(frozen=True)
class DeciderConfig:
    m: int
    r: int
    code_params: CodeParams
    cap_bits: int = 16
    variant: str = "standard"  # or "uniform"

    def __post_init__(self) -> None:
        if self.m < 0 or self.r < 1:
            raise ConfigError("need m >= 0 and r >= 1")
        if self.m > self.cap_bits:
            raise BudgetError(f"2^{self.m} proofs exceed the 2^{self.cap_bits} cap")
        if self.variant not in ("standard", "uniform"):
            raise ConfigError(f"unknown variant {self.variant!r}")


@dataclass
class RepetitionRecord:
    rep: int
    accept: bool
    proofs_run: int
    digest: str


@dataclass
class DeciderResult:
    accept: bool
    repetitions: list[RepetitionRecord]
    proof_space: int
    proofs_run: int


def rtime_decide(
    z: str,
    verifier: Verifier,
    config: DeciderConfig,
    learner,
    master_seed: int | str,
) -> DeciderResult:
    """Accept iff any enumerated proof makes any repetition's round accept.

    Per repetition, one seed fixes the example draws; all 2^m label strings
    are then tried as fixed proofs.  Label strings are enumerated up to
    consistency: strings assigning different labels to the same drawn example
    point make every learner here fail (reject), so enumerating one label per
    distinct point covers the whole proof space.  One-sided by construction:
    the verifier check at the end rejects every proof for a false instance.
    """
    params = config.code_params
    if config.variant == "uniform":
        layout = ExampleLayout.uniform(verifier.n, params, verifier.p)
    else:
        layout = ExampleLayout.standard(verifier.n, params, verifier.p)
    code = get_code(params, verifier.p)
    mask_fn = getattr(verifier, "accept_mask", None)

    reps: list[RepetitionRecord] = []
    total_run = 0
    accepted = False
    for rep in range(config.r):
        rng = random.Random(f"{master_seed}:rep{rep}")
        if config.variant == "uniform":
            points = [random_bits(rng, layout.example_len) for _ in range(config.m)]
            fixed_part = random_bits(rng, layout.n)
        else:
            points = [z + random_bits(rng, layout.ell) for _ in range(config.m)]
            fixed_part = z
        distinct = sorted(set(points))
        slot = {pt: j for j, pt in enumerate(distinct)}

        rep_accept = False
        rep_digest = ""
        proofs_run = 0
        for assignment in product((0, 1), repeat=len(distinct)):
            proofs_run += 1
            labels = tuple(assignment[slot[pt]] for pt in points)
            sample = LabeledSample(tuple(zip(points, labels)))
            try:
                hypothesis = learner(sample, rng, None)
            except CertlabError:
                continue
            y, y_int = _query_codeword(hypothesis, layout, fixed_part)
            w_val = code.decode_value(y_int)
            if mask_fn is not None:
                verdict = (mask_fn(z) >> w_val) & 1
            else:
                verdict = 1 if verify(verifier, z, format(w_val, f"0{verifier.p}b")) else 0
            if verdict:
                w_tilde = format(w_val, f"0{verifier.p}b")
                idx = tuple(
                    pt[layout.n :] if config.variant == "standard" else pt[: layout.ell]
                    for pt in points
                )
                t = AmTranscript(
                    f"{master_seed}:rep{rep}",
                    idx,
                    "".join(str(b) for b in labels),
                    hypothesis,
                    y,
                    w_tilde,
                    1,
                )
                rep_accept = True
                rep_digest = t.digest()
                break
        total_run += proofs_run
        reps.append(RepetitionRecord(rep, rep_accept, proofs_run, rep_digest))
        if rep_accept:
            accepted = True
            break
    return DeciderResult(
        accept=accepted,
        repetitions=reps,
        proof_space=config.r * (1 << config.m),
        proofs_run=total_run,
    )


@dataclass
class DeciderReport:
    instance: ThreeSatInstance
    accept: bool
    result: DeciderResult

    def lines(self) -> list[str]:
        out = [
            f"instance vars={self.instance.num_vars} clauses={len(self.instance.clauses)} "
            f"accept={int(self.accept)} proofs_run={self.result.proofs_run} "
            f"proof_space={self.result.proof_space}"
        ]
        for rec in self.result.repetitions:
            line = f"  rep={rec.rep} accept={int(rec.accept)} proofs={rec.proofs_run}"
            if rec.digest:
                line += f" {rec.digest}"
            out.append(line)
        return out


def sat_decider(
    inst: ThreeSatInstance,
    verifier: ThreeSatVerifier,
    config: DeciderConfig,
    learner,
    master_seed: int | str,
) -> DeciderReport:
    """Encode the formula and run the one-sided decider against it."""
    z = verifier.encoding.encode(inst)
    result = rtime_decide(z, verifier, config, learner, master_seed)
    return DeciderReport(instance=inst, accept=result.accept, result=result)
