"""The six experiment commands behind the CLI.

Every command is deterministic given its config (seeds included); CSV output
is byte-stable across re-runs.  Wall-clock readings go to the plain-text
summaries only, never into CSV.
"""

from __future__ import annotations

import math
import random
from pathlib import Path

from ..bits import int_to_bits
from ..codes import (
    DEFAULT_CODE_PARAMS,
    REDUCTION_CODE_PARAMS,
    CodeParams,
    corrupt,
    get_code,
    radius_recovery,
)
from ..concepts import (
    CertConcept,
    cert_class_vc,
    distinct_concept_count,
    enumerate_class,
    parse_tree,
    serialize_tree,
)
from ..errors import ConfigError
from ..online import ldim_oracle
from ..paclearn import (
    Distribution,
    few_sample_learner,
    junta_learner,
    pac_trial_suite,
    sparse_erm,
)
from ..reduction import DeciderConfig, sat_decider
from ..sat import brute_force_sat
from ..verifiers import ThreeSatVerifier
from .config import get_float, get_fraction, get_int, get_int_list, get_str
from .corpus import Corpus, build_corpus, forcing_formula
from ..verifiers import FormulaEncoding


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", newline="\n")


def code_params_from(cfg: dict[str, str], default: CodeParams) -> CodeParams:
    if "code.c" not in cfg and "code.eps_star" not in cfg:
        return default
    return CodeParams(
        c=get_int(cfg, "code.c", default.c),
        eps_star=get_fraction(cfg, "code.eps_star", default.eps_star),
    )


# -- learner adapters (uniform signature: (sample, rng, counter) -> hypothesis) --


def make_few_sample(verifier, params, budget_bits: int = 24):
    def learn(sample, rng, counter):
        return few_sample_learner(
            sample, verifier, params, budget_bits=budget_bits, counter=counter
        )

    return learn


def make_sparse_erm():
    def learn(sample, rng, counter):
        return sparse_erm(sample, counter=counter)

    return learn


def make_junta(layout):
    def learn(sample, rng, counter):
        return junta_learner(sample, layout, counter=counter)

    return learn


LEARNER_FACTORIES = {"few_sample", "sparse_erm"}


def resolve_learner(name: str, verifier, params):
    if name == "few_sample":
        return make_few_sample(verifier, params)
    if name == "sparse_erm":
        return make_sparse_erm()
    raise ConfigError(f"unknown learner {name!r} (choose from {sorted(LEARNER_FACTORIES)})")


# -- distribution suite -----------------------------------------------------------


def useless_point(concept: CertConcept) -> str:
    """A fixed example whose prefix mismatches the concept's instance."""
    lay = concept.layout
    z = concept.z
    flipped = ("1" if z[0] == "0" else "0") + z[1:]
    return flipped + "0" * lay.ell


def distribution_suite(concept: CertConcept) -> list[tuple[str, Distribution]]:
    """The adversarial distributions every batch-learner criterion runs against:
    uniform on useful points, 90% mass on one useless point, and point masses."""
    lay = concept.layout
    useful = [concept.z + int_to_bits(v, lay.ell) for v in range(1 << lay.ell)]
    far = useless_point(concept)
    ones = concept.one_points()
    suite = [
        ("uniform_useful", Distribution.uniform(useful)),
        (
            "useless_mass",
            Distribution([far] + useful, [0.9] + [0.1 / len(useful)] * len(useful)),
        ),
        ("pm_useful", Distribution.point_mass(ones[0] if ones else useful[0])),
        ("pm_useless", Distribution.point_mass(far)),
    ]
    return suite


# -- commands -----------------------------------------------------------------------


def cmd_enumerate(cfg: dict[str, str], out_dir: Path, seed) -> int:
    corpus = build_corpus(cfg, seed)
    params = code_params_from(cfg, DEFAULT_CODE_PARAMS)
    zs = [corpus.encoding.encode(inst) for inst in corpus.instances]
    lines = []
    for z, tree in enumerate_class(corpus.verifier, params, zs):
        text = serialize_tree(tree)
        reparsed = parse_tree(text)
        if serialize_tree(reparsed) != text:
            return 1
        lines.append(f"{z} {text}")
    (out_dir / "trees.txt").write_text("\n".join(lines) + "\n")
    return 0 if len(lines) == len(corpus.instances) else 1


def probe_domain(concepts: list[CertConcept], limit: int = 16) -> list[str]:
    pts: list[str] = []
    seen = set()

    def add(x: str) -> None:
        if x not in seen and len(pts) < limit:
            seen.add(x)
            pts.append(x)

    for c in concepts:
        if c.enc is None:
            continue
        ones = c.one_points()
        for x in ones[:2]:
            add(x)
        lay = c.layout
        zeros = [v for v in range(1 << lay.ell) if (v >= lay.cp or v not in c.support)]
        for v in zeros[:1]:
            add(c.z + int_to_bits(v, lay.ell))
        if len(pts) >= limit - 2:
            break
    for c in concepts[:2]:
        add(useless_point(c))
    return pts


def cmd_vcdim(cfg: dict[str, str], out_dir: Path, seed) -> int:
    corpus = build_corpus(cfg, seed)
    params = code_params_from(cfg, DEFAULT_CODE_PARAMS)
    concepts = [
        CertConcept(corpus.verifier, corpus.encoding.encode(inst), params)
        for inst in corpus.instances
    ]
    report = cert_class_vc(concepts)
    n_distinct = distinct_concept_count(concepts)
    probe = probe_domain(concepts)
    ldim = ldim_oracle(concepts, probe, max_depth=3) if probe else 0
    log_bound = math.log2(n_distinct) if n_distinct else 0.0
    ok = report.dimension <= log_bound + 1e-9 and ldim >= report.dimension
    lines = [
        f"concepts = {len(concepts)}",
        f"distinct_concepts = {n_distinct}",
        f"vc_dimension = {report.dimension}",
        f"shattered_singleton = {report.shattered_singleton or '-'}",
        f"candidate_points = {report.candidate_points}",
        f"pairs_checked = {report.pairs_checked}",
        f"ldim = {ldim} (probe of {len(probe)} points, depth 3)",
        f"vc_le_log2_class_size = {report.dimension} <= {_fmt(log_bound)}: {'ok' if ok else 'VIOLATED'}",
    ]
    (out_dir / "dimension_report.txt").write_text("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_codes_test(cfg: dict[str, str], out_dir: Path, seed) -> int:
    params = code_params_from(cfg, DEFAULT_CODE_PARAMS)
    lengths = get_int_list(cfg, "codes.lengths", [8, 12])
    samples = get_int(cfg, "codes.samples", 2000)
    exhaustive_limit = get_int(cfg, "codes.exhaustive_limit", 0)
    lines = [f"code: c={params.c} eps_star={params.eps_star}"]
    ok = True
    for m in lengths:
        code = get_code(params, m)
        rng = random.Random(f"codes-test:{seed}:{m}")
        # zero-corruption round trips
        clean = True
        for _ in range(100):
            x = int_to_bits(rng.getrandbits(m), m)
            clean = clean and code.decode(code.encode(x)) == x
        res = radius_recovery(
            params, m, exhaustive_limit=exhaustive_limit, samples=samples, seed=seed
        )
        # beyond-radius inputs must not crash
        x = int_to_bits(rng.getrandbits(m), m)
        y = corrupt(code.encode(x), range(code.contract_radius + 1))
        code.decode(y)
        ok = ok and clean and res.recovered == res.tested
        lines.append(
            f"m={m} len={code.codeword_len} distance={code.distance} "
            f"contract_radius={code.contract_radius} certified_radius={code.radius} "
            f"patterns={res.tested} recovered={res.recovered} "
            f"mode={'exhaustive' if res.exhaustive else 'sampled'} clean_roundtrip={clean}"
        )
    (out_dir / "radius_report.txt").write_text("\n".join(lines) + "\n")
    return 0 if ok else 1


def _target_concept(corpus: Corpus, params: CodeParams) -> CertConcept:
    fallback = None
    for inst in corpus.instances:
        z = corpus.encoding.encode(inst)
        concept = CertConcept(corpus.verifier, z, params)
        if concept.enc is not None:
            if concept.sparsity > 0:
                return concept
            fallback = fallback or concept
    if fallback is not None:
        return fallback
    raise ConfigError("corpus has no satisfiable instance to learn")


LEARN_CSV_HEADER = ["n", "p", "learner", "distribution", "m", "trials", "success_rate", "mean_error", "mean_steps"]


def cmd_learn(cfg: dict[str, str], out_dir: Path, seed) -> int:
    corpus = build_corpus(cfg, seed)
    params = code_params_from(cfg, DEFAULT_CODE_PARAMS)
    eps = get_float(cfg, "learn.eps", 0.1)
    trials = get_int(cfg, "learn.trials", 200)
    budgets = get_int_list(cfg, "learn.m", [47])
    names = [s.strip() for s in get_str(cfg, "learn.learners", "few_sample,sparse_erm").split(",")]
    min_success = get_float(cfg, "learn.min_success", 0.0)
    concept = _target_concept(corpus, params)
    v = corpus.verifier
    rows = []
    ok = True
    for name in names:
        learner = resolve_learner(name, v, params)
        for m in budgets:
            for dist_name, dist in distribution_suite(concept):
                res = pac_trial_suite(
                    learner, concept, dist, eps, m, trials, f"{seed}:{name}:{m}:{dist_name}"
                )
                rows.append(
                    (v.n, v.p, name, dist_name, m, trials, res.success_rate, res.mean_error, res.mean_steps)
                )
                if res.success_rate < min_success:
                    ok = False
    write_csv(out_dir / "learn.csv", LEARN_CSV_HEADER, rows)
    return 0 if ok else 1


def cmd_reduce(cfg: dict[str, str], out_dir: Path, seed) -> int:
    corpus = build_corpus(cfg, seed)
    params = code_params_from(cfg, REDUCTION_CODE_PARAMS)
    variant = get_str(cfg, "decider.variant", "standard")
    config = DeciderConfig(
        m=get_int(cfg, "decider.m", 12),
        r=get_int(cfg, "decider.r", 5),
        code_params=params,
        cap_bits=get_int(cfg, "decider.cap_bits", 16),
        variant=variant,
    )
    v = corpus.verifier
    if variant == "uniform":
        from ..concepts import ExampleLayout

        learner = make_junta(ExampleLayout.uniform(v.n, params, v.p))
    else:
        learner = make_sparse_erm()
    from ..reduction import learner_error_target

    lines = [
        f"decider: m={config.m} r={config.r} variant={variant} "
        f"code=(c={params.c}, eps_star={params.eps_star}) "
        f"learner_error_target={learner_error_target(params, variant)}"
    ]
    false_accepts = 0
    sat_total = 0
    sat_accepted = 0
    for i, inst in enumerate(corpus.instances):
        truth = brute_force_sat(inst)
        report = sat_decider(inst, v, config, learner, f"{seed}:{i}")
        if report.accept and not truth:
            false_accepts += 1
        if truth:
            sat_total += 1
            sat_accepted += int(report.accept)
        lines.append(f"[{i}] sat={int(truth)} " + report.lines()[0])
        lines.extend(report.lines()[1:])
    rate = (sat_accepted / sat_total) if sat_total else 1.0
    lines.append(
        f"summary: instances={len(corpus.instances)} satisfiable={sat_total} "
        f"accept_rate_on_sat={_fmt(rate)} false_accepts={false_accepts}"
    )
    (out_dir / "decider_report.txt").write_text("\n".join(lines) + "\n")
    return 0 if false_accepts == 0 else 1


TRADEOFF_CSV_HEADER = ["n", "p", "learner", "m", "trials", "success_rate", "mean_error", "mean_steps"]


def cmd_tradeoff(cfg: dict[str, str], out_dir: Path, seed) -> int:
    params = code_params_from(cfg, DEFAULT_CODE_PARAMS)
    num_vars = get_int(cfg, "tradeoff.vars", 16)
    formula = forcing_formula(num_vars=num_vars, forced=max(1, num_vars // 2), extra=4)
    encoding = FormulaEncoding(max_vars=num_vars, max_clauses=len(formula.clauses))
    verifier = ThreeSatVerifier(encoding)
    concept = CertConcept(verifier, encoding.encode(formula), params)
    if concept.enc is None:
        raise ConfigError("tradeoff formula must be satisfiable")
    eps = get_float(cfg, "tradeoff.eps", 0.1)
    trials = get_int(cfg, "tradeoff.trials", 5)
    budgets = get_int_list(cfg, "tradeoff.m", [1, 2, 4, 8, 16, 47])
    factor = get_float(cfg, "tradeoff.factor", 100.0)
    dist = distribution_suite(concept)[0][1]  # uniform on useful points
    rows = []
    walls = []
    stats: dict[tuple[str, int], float] = {}
    for name in ("few_sample", "sparse_erm"):
        learner = resolve_learner(name, verifier, params)
        for m in budgets:
            res = pac_trial_suite(learner, concept, dist, eps, m, trials, f"{seed}:{name}:{m}")
            rows.append(
                (verifier.n, verifier.p, name, m, trials, res.success_rate, res.mean_error, res.mean_steps)
            )
            walls.append((name, m, res.wall_s))
            stats[(name, m)] = res.mean_steps
    write_csv(out_dir / "tradeoff.csv", TRADEOFF_CSV_HEADER, rows)
    largest = max(budgets)
    slow = stats[("few_sample", largest)]
    fast = max(stats[("sparse_erm", largest)], 1e-12)
    ratio = slow / fast
    ok = ratio >= factor
    lines = [
        f"p = {verifier.p}, largest budget m = {largest}",
        f"few_sample mean steps = {_fmt(slow)}",
        f"sparse_erm mean steps = {_fmt(fast)}",
        f"step ratio = {_fmt(ratio)} (required >= {_fmt(factor)}): {'ok' if ok else 'BELOW THRESHOLD'}",
        "wall clock (informational, excluded from CSV):",
    ]
    lines.extend(f"  {name} m={m}: {wall:.4f}s" for name, m, wall in walls)
    (out_dir / "tradeoff_summary.txt").write_text("\n".join(lines) + "\n")
    return 0 if ok else 1
