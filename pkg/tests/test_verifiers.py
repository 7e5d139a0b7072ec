import random

import pytest

from certlab.bits import int_to_bits
from certlab.errors import BudgetError, ConfigError, FormatError, ShapeError
from certlab.sat import ThreeSatInstance, exhaustive_formulas
from certlab.verifiers import (
    FnVerifier,
    FormulaEncoding,
    LexQuery,
    StepCounter,
    ThreeSatVerifier,
    first_certificate,
    lex_oracle,
    lex_verify,
    naive_first_certificate,
    nondet_oracle,
    verify,
)

ENC2 = FormulaEncoding(max_vars=2, max_clauses=3)
V2 = ThreeSatVerifier(ENC2)
PHI0 = ThreeSatInstance(2, [(1, 2), (-1, 2)])
PHI_UNSAT = ThreeSatInstance(2, [(1,), (-1,)])
Z0 = ENC2.encode(PHI0)
Z_UNSAT = ENC2.encode(PHI_UNSAT)


def test_verify_examples():
    assert verify(V2, Z0, "01")
    assert not verify(V2, Z0, "00")
    for v in range(4):
        assert not verify(V2, Z_UNSAT, int_to_bits(v, 2))


def test_verify_shape_errors():
    with pytest.raises(ShapeError):
        verify(V2, Z0[:-1], "01")
    with pytest.raises(ShapeError):
        verify(V2, Z0, "0")


def test_lex_verify_examples():
    assert lex_verify(V2, LexQuery(Z0, 4), "01")
    assert not lex_verify(V2, LexQuery(Z0, 1), "01")
    for v in range(4):
        assert not lex_verify(V2, LexQuery(Z_UNSAT, 4), int_to_bits(v, 2))
    with pytest.raises(ShapeError):
        lex_verify(V2, LexQuery(Z0, 5), "01")


def test_lex_verify_equals_conjunction_exhaustively():
    # generic verifier at p = 8: all (k, w) pairs against rank <= k AND check
    accept = {13, 77, 200, 255}
    v = FnVerifier("tt", n=1, p=8, fn=lambda z, w: int(w, 2) in accept)
    words = [int_to_bits(val, 8) for val in range(256)]
    for k in range(1, 257):
        q = LexQuery("0", k)
        for val, w in enumerate(words):
            expected = (val + 1 <= k) and (val in accept)
            assert lex_verify(v, q, w) == expected


def test_nondet_oracle_examples():
    assert nondet_oracle(V2, Z0)
    assert not nondet_oracle(V2, Z_UNSAT)
    assert nondet_oracle(V2, ENC2.encode(ThreeSatInstance(2, [])))  # empty formula


def test_nondet_oracle_budget():
    v = FnVerifier("big", n=1, p=30, fn=lambda z, w: False)
    with pytest.raises(BudgetError):
        nondet_oracle(v, "0")


def test_lex_oracle_examples():
    assert not lex_oracle(V2, Z0, 1)
    assert lex_oracle(V2, Z0, 2)
    assert not lex_oracle(V2, Z_UNSAT, 4)


def test_first_certificate_examples():
    assert first_certificate(V2, Z0) == "01"
    assert first_certificate(V2, Z_UNSAT) is None
    enc1 = FormulaEncoding(max_vars=1, max_clauses=1)
    v1 = ThreeSatVerifier(enc1)
    z = enc1.encode(ThreeSatInstance(1, [(1,)]))
    assert first_certificate(v1, z) == "1"


def test_first_certificate_matches_naive_scan_on_corpus():
    for inst in exhaustive_formulas(2, 2):
        z = ENC2.encode(inst)
        assert first_certificate(V2, z) == naive_first_certificate(V2, z)


def test_first_certificate_matches_naive_scan_generic_p12():
    # generic verifiers (no mask fast path), random accept sets, exhaustive
    # rank-order scan as the reference oracle at p = 12
    rng = random.Random(3)
    for trial in range(12):
        accept = {rng.randrange(1 << 12) for _ in range(rng.choice([0, 1, 3, 40]))}
        v = FnVerifier(f"tt{trial}", n=1, p=12, fn=lambda z, w, a=accept: int(w, 2) in a)
        got = first_certificate(v, "1")
        want = naive_first_certificate(v, "1")
        assert got == want
        if accept:
            assert got == int_to_bits(min(accept), 12)


def test_first_certificate_uses_at_most_p_oracle_calls():
    for inst in exhaustive_formulas(2, 3):
        c = StepCounter()
        first_certificate(V2, ENC2.encode(inst), counter=c)
        assert c.oracle_calls <= V2.p


def test_mask_path_equals_generic_path():
    # wrap the 3-SAT verifier so the oracles lose the mask fast path
    for inst in exhaustive_formulas(2, 2):
        z = ENC2.encode(inst)
        plain = FnVerifier("wrapped", n=V2.n, p=V2.p, fn=V2.check)
        assert nondet_oracle(V2, z) == nondet_oracle(plain, z)
        assert first_certificate(V2, z) == first_certificate(plain, z)
        for k in (1, 2, 3, 4):
            c_fast, c_slow = StepCounter(), StepCounter()
            assert lex_oracle(V2, z, k, counter=c_fast) == lex_oracle(
                plain, z, k, counter=c_slow
            )
            assert c_fast.steps == c_slow.steps  # modeled scan cost matches real scan


def test_lex_oracle_counts_scanned_candidates():
    c = StepCounter()
    assert lex_oracle(V2, Z0, 4, counter=c)
    assert c.oracle_calls == 1
    assert c.steps == 2  # early exit at rank 2 ("01")
    c = StepCounter()
    assert not lex_oracle(V2, Z_UNSAT, 3, counter=c)
    assert c.steps == 3  # full scan of ranks 1..3


# -- formula encoding ----------------------------------------------------------


def test_encoding_round_trip_exhaustive_two_var():
    corpus = exhaustive_formulas(2, 3)
    encoded = [ENC2.encode(f) for f in corpus]
    assert len(set(encoded)) == len(corpus)  # injectivity
    for f, z in zip(corpus, encoded):
        assert len(z) == ENC2.width
        assert ENC2.decode(z) == f


def test_encoding_all_zero_is_canonical_degenerate():
    inst = ENC2.decode("0" * ENC2.width)
    assert inst.num_vars == 0
    assert inst.clauses == ()


def test_encoding_rejects_malformed():
    with pytest.raises(FormatError):
        ENC2.decode("1" * (ENC2.width - 1))  # wrong length
    # stray polarity bit inside an absent slot
    z = list("0" * ENC2.width)
    z[ENC2.num_vars_bits + ENC2.clause_count_bits + 1] = "1"
    with pytest.raises(FormatError):
        ENC2.decode("".join(z))
    # clause count pointing past provided clauses is fine only if slots empty;
    # a present literal in an uncounted block must fail
    good = ENC2.encode(PHI0)
    tail_start = ENC2.num_vars_bits + ENC2.clause_count_bits + 2 * ENC2.clause_bits
    bad = good[:tail_start] + "11" + good[tail_start + 2 :]
    with pytest.raises(FormatError):
        ENC2.decode(bad)


def test_encoding_rejects_out_of_range_instances():
    with pytest.raises(ConfigError):
        ENC2.encode(ThreeSatInstance(3, [(3,)]))
    with pytest.raises(ConfigError):
        ENC2.encode(ThreeSatInstance(2, [(1,), (2,), (-1,), (-2,)]))


def test_encoding_var_reference_above_num_vars_rejected():
    # craft: num_vars=1 but a literal slot referencing variable 2
    enc = FormulaEncoding(max_vars=2, max_clauses=1)
    bits = (
        int_to_bits(1, enc.num_vars_bits)
        + int_to_bits(1, enc.clause_count_bits)
        + "11" + "1"  # present, positive, var index 1 -> variable 2
        + "0" * (2 * enc.slot_bits)
    )
    with pytest.raises(FormatError):
        enc.decode(bits)


def test_three_sat_verifier_rejects_on_malformed_instance():
    junk = "1" * V2.n
    try:
        V2.encoding.decode(junk)
        decodable = True
    except FormatError:
        decodable = False
    if not decodable:
        assert not verify(V2, junk, "00")
        assert not nondet_oracle(V2, junk)
