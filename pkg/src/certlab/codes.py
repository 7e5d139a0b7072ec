"""Binary error-correcting codes with exhaustively verified distance.

Each supported message length gets its own linear code: rate exactly 1/c,
generator found by seeded random search, minimum distance certified by a
Gray-code scan over all nonzero codewords, decoding by nearest codeword.
The contract radius floor(eps_star*c*m) is what callers may rely on; the
certified radius (d-1)//2 is usually larger and is exported alongside.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .bits import check_bits
from .errors import ConfigError, ShapeError

MIN_MESSAGE_LEN = 2
MAX_MESSAGE_LEN = 16


@dataclass(frozen=True)
class CodeParams:
    """Rate denominator c and correctable-fraction contract eps_star."""

    c: int
    eps_star: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.c, int) or self.c <= 1:
            raise ConfigError("rate denominator c must be an integer > 1")
        eps = Fraction(self.eps_star)
        object.__setattr__(self, "eps_star", eps)
        if not Fraction(0) < eps < Fraction(1, 2):
            raise ConfigError("eps_star must lie in (0, 1/2)")
        if eps * self.c * MIN_MESSAGE_LEN < 1:
            raise ConfigError(
                f"eps_star*c*m < 1 at the smallest supported length m={MIN_MESSAGE_LEN}"
            )

    def contract_radius(self, message_len: int) -> int:
        """floor(eps_star * c * m): the adversarial error count decode must fix."""
        return int(self.eps_star * self.c * message_len)

    def codeword_len(self, message_len: int) -> int:
        return self.c * message_len


#: Module-wide default used by the concept class and learner suites.
DEFAULT_CODE_PARAMS = CodeParams(c=8, eps_star=Fraction(1, 16))

#: Preset used by the decider pipelines, where the sample budget is small
#: and a shorter codeword keeps the index space coverable (see notes).
REDUCTION_CODE_PARAMS = CodeParams(c=4, eps_star=Fraction(1, 8))


@dataclass(frozen=True)
class Codeword:
    bits: str
    source_len: int


def _min_weight(rows: list[int]) -> int:
    # Gray-code walk over all nonzero message values; one XOR per step.
    acc = 0
    best = 1 << 62
    for i in range(1, 1 << len(rows)):
        acc ^= rows[(i & -i).bit_length() - 1]
        w = acc.bit_count()
        if w < best:
            best = w
            if best == 0:
                break
    return best


def _search_attempts(k: int) -> tuple[int, int]:
    """(baseline attempts, hard cap): sample the baseline for quality, then
    keep sampling until the contract target is met or the cap is reached."""
    if k <= 4:
        return 4000, 8000
    if k <= 8:
        return 400, 2000
    if k <= 12:
        return 60, 600
    return 12, 400


class LinearCode:
    """One [c*m, m] binary linear code with certified minimum distance."""

    def __init__(self, params: CodeParams, message_len: int) -> None:
        if not MIN_MESSAGE_LEN <= message_len <= MAX_MESSAGE_LEN:
            raise ConfigError(
                f"message length {message_len} unsupported "
                f"(supported: {MIN_MESSAGE_LEN}..{MAX_MESSAGE_LEN})"
            )
        self.params = params
        self.message_len = message_len
        self.codeword_len = params.codeword_len(message_len)
        self.contract_radius = params.contract_radius(message_len)
        rng = random.Random(f"certlab-code-c{params.c}-eps{params.eps_star}-m{message_len}")
        target = 2 * self.contract_radius + 1
        baseline, cap = _search_attempts(message_len)
        best_rows, best_d = None, -1
        for attempt in range(cap):
            rows = [rng.getrandbits(self.codeword_len) for _ in range(message_len)]
            d = _min_weight(rows)
            if d > best_d:
                best_rows, best_d = rows, d
            if attempt + 1 >= baseline and best_d >= target:
                break
        assert best_rows is not None
        self.generator_rows = best_rows
        self.distance = best_d
        self.radius = (best_d - 1) // 2
        if self.radius < self.contract_radius:
            raise ConfigError(
                f"search found distance {best_d} at length {message_len}, "
                f"below the contract radius {self.contract_radius}"
            )
        self._codewords: list[int] | None = None

    def codewords(self) -> list[int]:
        """All 2^m codewords, indexed by message value (built lazily)."""
        if self._codewords is None:
            k = self.message_len
            cws = [0] * (1 << k)
            for v in range(1, 1 << k):
                low = v & (v - 1)
                j = k - (v & -v).bit_length()  # MSB-first message bit index
                cws[v] = cws[low] ^ self.generator_rows[j]
            self._codewords = cws
        return self._codewords

    # codeword int bit i <-> codeword string position i
    def _to_str(self, cw: int) -> str:
        return format(cw, f"0{self.codeword_len}b")[::-1]

    def encode_value(self, value: int) -> int:
        acc = 0
        for j in range(self.message_len):
            if (value >> (self.message_len - 1 - j)) & 1:
                acc ^= self.generator_rows[j]
        return acc

    def encode(self, x: str) -> str:
        check_bits(x, length=self.message_len, name="message")
        return self._to_str(self.encode_value(int(x, 2)))

    def decode_value(self, y_int: int) -> int:
        """Nearest codeword by Hamming distance; ties broken toward the
        lexicographically smallest message.  Exact within `radius`."""
        best_v, best_d = 0, (y_int).bit_count()
        for v, cw in enumerate(self.codewords()):
            d = (y_int ^ cw).bit_count()
            if d < best_d:
                best_v, best_d = v, d
        return best_v

    def decode(self, y: str) -> str:
        check_bits(y, length=self.codeword_len, name="received word")
        v = self.decode_value(int(y[::-1], 2) if y else 0)
        return format(v, f"0{self.message_len}b")


_CODE_CACHE: dict[tuple[int, Fraction, int], LinearCode] = {}


def get_code(params: CodeParams, message_len: int) -> LinearCode:
    key = (params.c, params.eps_star, message_len)
    code = _CODE_CACHE.get(key)
    if code is None:
        code = LinearCode(params, message_len)
        _CODE_CACHE[key] = code
    return code


def encode(params: CodeParams, x: str) -> Codeword:
    code = get_code(params, len(x))
    return Codeword(bits=code.encode(x), source_len=len(x))


def decode(params: CodeParams, y: str) -> str:
    check_bits(y, name="received word")
    if len(y) % params.c != 0:
        raise ShapeError(f"received word length {len(y)} not divisible by c={params.c}")
    return get_code(params, len(y) // params.c).decode(y)


def corrupt(y: str, positions) -> str:
    """Flip exactly the given positions of y (test utility for the corruption oracle)."""
    check_bits(y, name="y")
    pos = set(positions)
    out = list(y)
    for p in pos:
        if not 0 <= p < len(y):
            raise ShapeError(f"corruption position {p} out of range for length {len(y)}")
        out[p] = "1" if out[p] == "0" else "0"
    return "".join(out)


@dataclass(frozen=True)
class RadiusResult:
    tested: int
    recovered: int
    exhaustive: bool


def _pattern_count(n: int, radius: int) -> int:
    total = 0
    for w in range(radius + 1):
        c = 1
        for i in range(w):
            c = c * (n - i) // (i + 1)
        total += c
    return total


def radius_recovery(
    params: CodeParams,
    message_len: int,
    *,
    exhaustive_limit: int = 10**6,
    samples: int = 10**4,
    seed: int | str = 0,
) -> RadiusResult:
    """Unique-decoding check at the contract radius.

    If the number of corruption patterns of weight <= floor(eps_star*c*m) is
    within exhaustive_limit, every pattern is tried (message cycled
    deterministically per pattern); otherwise `samples` seeded random
    radius-weight patterns are tried against random messages.  Linearity plus
    the certified distance make per-pattern single-message checks equivalent
    to checking all messages.
    """
    code = get_code(params, message_len)
    n = code.codeword_len
    radius = code.contract_radius
    codewords = code.codewords()
    n_msgs = 1 << message_len
    tested = recovered = 0
    if _pattern_count(n, radius) <= exhaustive_limit:
        idx = 0
        for w in range(radius + 1):
            for positions in itertools.combinations(range(n), w):
                pattern = 0
                for p in positions:
                    pattern |= 1 << p
                val = idx % n_msgs
                idx += 1
                tested += 1
                if code.decode_value(codewords[val] ^ pattern) == val:
                    recovered += 1
        return RadiusResult(tested=tested, recovered=recovered, exhaustive=True)
    rng = random.Random(f"radius:{seed}:{params.c}:{message_len}")
    for _ in range(samples):
        val = rng.randrange(n_msgs)
        positions = rng.sample(range(n), radius)
        pattern = 0
        for p in positions:
            pattern |= 1 << p
        tested += 1
        if code.decode_value(codewords[val] ^ pattern) == val:
            recovered += 1
    return RadiusResult(tested=tested, recovered=recovered, exhaustive=False)
