import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from certlab.bits import int_to_bits
from certlab.codes import (
    DEFAULT_CODE_PARAMS,
    REDUCTION_CODE_PARAMS,
    CodeParams,
    LinearCode,
    corrupt,
    decode,
    encode,
    get_code,
    radius_recovery,
)
from certlab.errors import ConfigError, ShapeError


def test_params_validation():
    with pytest.raises(ConfigError):
        CodeParams(c=1, eps_star=Fraction(1, 4))
    with pytest.raises(ConfigError):
        CodeParams(c=8, eps_star=Fraction(1, 2))
    with pytest.raises(ConfigError):
        CodeParams(c=8, eps_star=Fraction(0))
    with pytest.raises(ConfigError):
        CodeParams(c=2, eps_star=Fraction(1, 8))  # eps*c*2 = 1/2 < 1


def test_rate_is_exact():
    for m in (2, 5, 8, 12, 16):
        cw = encode(DEFAULT_CODE_PARAMS, int_to_bits(1, m))
        assert len(cw.bits) == DEFAULT_CODE_PARAMS.c * m
        assert cw.source_len == m


def test_round_trip_random_messages():
    rng = random.Random(11)
    for m in (8, 12, 16):
        code = get_code(DEFAULT_CODE_PARAMS, m)
        trials = 1000 if m == 8 else 200
        for _ in range(trials):
            x = int_to_bits(rng.getrandbits(m), m)
            assert code.decode(code.encode(x)) == x


def test_encode_injective_on_all_length8_messages():
    code = get_code(DEFAULT_CODE_PARAMS, 8)
    words = {code.encode(int_to_bits(v, 8)) for v in range(256)}
    assert len(words) == 256


def test_pairwise_distance_exceeds_twice_contract_radius_m8():
    code = get_code(DEFAULT_CODE_PARAMS, 8)
    bound = 2 * code.contract_radius
    cws = code.codewords()
    # linear code: pairwise distances are weights of the nonzero codewords
    assert min(w.bit_count() for w in cws[1:]) == code.distance
    assert code.distance > bound
    rng = random.Random(5)
    for _ in range(300):
        a, b = rng.randrange(256), rng.randrange(256)
        if a != b:
            assert (cws[a] ^ cws[b]).bit_count() > bound


def test_certified_radius_covers_contract_for_all_supported_lengths():
    for params in (DEFAULT_CODE_PARAMS, REDUCTION_CODE_PARAMS):
        for m in range(2, 17):
            code = get_code(params, m)
            assert code.radius >= code.contract_radius
            assert code.distance >= 2 * code.contract_radius + 1


def test_unsupported_lengths_fail_fast():
    with pytest.raises(ConfigError):
        get_code(DEFAULT_CODE_PARAMS, 1)
    with pytest.raises(ConfigError):
        get_code(DEFAULT_CODE_PARAMS, 17)
    with pytest.raises(ConfigError):
        get_code(DEFAULT_CODE_PARAMS, 32)


def test_decode_within_contract_radius_sampled():
    rng = random.Random(23)
    for params, m in ((DEFAULT_CODE_PARAMS, 8), (REDUCTION_CODE_PARAMS, 4)):
        code = get_code(params, m)
        n = code.codeword_len
        for _ in range(400):
            x = int_to_bits(rng.getrandbits(m), m)
            k = rng.randint(0, code.contract_radius)
            y = corrupt(code.encode(x), rng.sample(range(n), k))
            assert code.decode(y) == x


def test_radius_recovery_exhaustive_small():
    # weight <= 1 at m=2 under the reduction preset: all 9 patterns
    res = radius_recovery(REDUCTION_CODE_PARAMS, 2, exhaustive_limit=10**6)
    assert res.exhaustive
    assert res.tested == 1 + 8
    assert res.recovered == res.tested


def test_radius_recovery_sampled_m12():
    res = radius_recovery(DEFAULT_CODE_PARAMS, 12, exhaustive_limit=10, samples=10_000, seed=1)
    assert not res.exhaustive
    assert res.tested == 10_000
    assert res.recovered == res.tested


def test_beyond_radius_decode_never_crashes():
    code = get_code(DEFAULT_CODE_PARAMS, 8)
    rng = random.Random(2)
    for k in range(1, 4):
        x = int_to_bits(rng.getrandbits(8), 8)
        y = corrupt(code.encode(x), rng.sample(range(64), code.contract_radius + k))
        out = code.decode(y)
        assert len(out) == 8  # may differ from x; contract boundary


def test_decode_shape_errors():
    with pytest.raises(ShapeError):
        decode(DEFAULT_CODE_PARAMS, "010")  # not divisible by c
    code = get_code(DEFAULT_CODE_PARAMS, 8)
    with pytest.raises(ShapeError):
        code.decode("0" * 63)


def test_corrupt_examples():
    y = "0110100"
    assert corrupt(y, set()) == y
    assert corrupt(corrupt(y, {0, 3}), {0, 3}) == y
    with pytest.raises(ShapeError):
        corrupt(y, {7})


@settings(max_examples=60)
@given(st.integers(0, 2**24 - 1), st.sets(st.integers(0, 23)))
def test_corrupt_flips_exactly_the_positions(value, positions):
    y = int_to_bits(value, 24)
    out = corrupt(y, positions)
    diff = {i for i, (a, b) in enumerate(zip(y, out)) if a != b}
    assert diff == set(positions)


def test_construction_is_deterministic():
    a = LinearCode(DEFAULT_CODE_PARAMS, 8)
    b = LinearCode(DEFAULT_CODE_PARAMS, 8)
    assert a.generator_rows == b.generator_rows
    assert a.distance == b.distance
    assert get_code(DEFAULT_CODE_PARAMS, 8) is get_code(DEFAULT_CODE_PARAMS, 8)


def test_module_level_encode_decode():
    cw = encode(DEFAULT_CODE_PARAMS, "10110010")
    assert decode(DEFAULT_CODE_PARAMS, cw.bits) == "10110010"
