"""Kissing-number lower bounds from binary codes via Constructions A and B.

Construction A places unit-radius-scaled spheres at every x in Z^n with
x mod 2 in C; Construction B additionally asks 4 | sum(x) and needs all
codewords of even weight. The number of spheres touching the one at a
codeword x depends on the weight profile A_i(x) and the minimum distance d.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path

import numpy as np

from kissing import catalog
from kissing.analysis import SphericalCode
from kissing.config import DEFAULTS
from kissing.errors import (
    InconsistentLengths,
    InvalidInput,
    OddWeightCodeword,
    SelfCheckFailed,
    TooLarge,
    UnsupportedConfiguration,
)
from kissing.report import BoundReport


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinaryCode:
    """A binary code of length n; codeword bit i is coordinate i."""

    n: int
    words: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput(f"code length must be >= 1, got {self.n}")
        words = tuple(sorted(set(self.words)))
        if not words:
            raise InvalidInput("code must contain at least one word")
        if words[-1] >> self.n:
            raise InconsistentLengths(f"codeword {words[-1]:b} is longer than n={self.n}")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_strings(cls, strings, name: str = "") -> "BinaryCode":
        strings = [s.strip() for s in strings]
        lengths = {len(s) for s in strings}
        if len(lengths) != 1:
            raise InconsistentLengths(f"codewords have differing lengths {sorted(lengths)}")
        words = []
        for s in strings:
            if set(s) - {"0", "1"}:
                raise InvalidInput(f"codeword {s!r} must contain only 0 and 1")
            words.append(sum(1 << i for i, ch in enumerate(s) if ch == "1"))
        return cls(n=lengths.pop(), words=tuple(words), name=name)

    def to_strings(self) -> list[str]:
        return ["".join("1" if (w >> i) & 1 else "0" for i in range(self.n)) for w in self.words]

    @property
    def M(self) -> int:
        return len(self.words)

    @cached_property
    def rank(self) -> int:
        """Dimension of the GF(2) span of the words."""
        basis: list[int] = []
        for w in self.words:
            for b in basis:
                w = min(w, w ^ b)
            if w:
                basis.append(w)
        return len(basis)

    @property
    def linear(self) -> bool:
        return self.words[0] == 0 and self.M == 1 << self.rank

    @property
    def even(self) -> bool:
        return all(w.bit_count() % 2 == 0 for w in self.words)

    @cached_property
    def d(self) -> int | None:
        """Minimum distance; None for a single-word code."""
        if self.M < 2:
            return None
        if self.linear:
            return min(w.bit_count() for w in self.words if w)
        return min((a ^ b).bit_count() for a, b in itertools.combinations(self.words, 2))


@dataclass(frozen=True)
class WeightProfile:
    """A_i(x): number of codewords at distance i from the centre x."""

    center: int
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class CodeParams:
    n: int
    M: int
    d: int | None
    profile: WeightProfile


def weight_profile(code: BinaryCode, center: int = 0) -> WeightProfile:
    counts = [0] * (code.n + 1)
    for w in code.words:
        counts[(w ^ center).bit_count()] += 1
    return WeightProfile(center=center, counts=tuple(counts))


def code_params(code: BinaryCode, center: int | None = None) -> CodeParams:
    """(n, M, d) and the weight profile at ``center`` (default: 0 if a codeword, else the first word)."""
    if center is None:
        center = 0 if code.words[0] == 0 else code.words[0]
    return CodeParams(n=code.n, M=code.M, d=code.d, profile=weight_profile(code, center))


def _centers(code: BinaryCode) -> tuple[int, ...]:
    # Linear codes look the same from every codeword.
    return (0,) if code.linear else code.words


def construction_a_count(n: int, d: int | None, a_d: int) -> int:
    if d is not None and d < 4:
        return 2**d * a_d
    if d == 4:
        return 2 * n + 16 * a_d
    return 2 * n


def construction_b_count(n: int, d: int | None, a_d: int) -> int:
    if d is not None and d < 8:
        return 2 ** (d - 1) * a_d
    if d == 8:
        return 2 * n * (n - 1) + 128 * a_d
    return 2 * n * (n - 1)


def _best_center(code: BinaryCode, count) -> tuple[int, int]:
    best = None
    for x in _centers(code):
        a_d = weight_profile(code, x)[code.d] if code.d is not None else 0
        value = count(code.n, code.d, a_d)
        if best is None or value > best[1]:
            best = (x, value)
    return best


def construction_a_kissing(code: BinaryCode) -> int:
    """Touching spheres in the Construction A packing, maximised over codeword centres."""
    return _best_center(code, construction_a_count)[1]


def _require_even(code: BinaryCode) -> None:
    odd = next((w for w in code.words if w.bit_count() % 2), None)
    if odd is not None:
        word = "".join("1" if (odd >> i) & 1 else "0" for i in range(code.n))
        raise OddWeightCodeword(f"Construction B needs even weights; {word} has odd weight")


def construction_b_kissing(code: BinaryCode) -> int:
    _require_even(code)
    return _best_center(code, construction_b_count)[1]


def leech_kissing(code: BinaryCode) -> int:
    """Minimal vectors of the Leech lattice built on the Golay code.

    Construction B gives the even part; the odd coset adds n * M vectors of
    shape (-+3, +-1^23).
    """
    if (code.n, code.M, code.d) != (24, 4096, 8):
        raise UnsupportedConfiguration(
            f"Leech count needs a (24, 4096, 8) code, got ({code.n}, {code.M}, {code.d})"
        )
    return construction_b_kissing(code) + code.n * code.M


# ---------------------------------------------------------------------------
# Contact vectors
# ---------------------------------------------------------------------------


def _check_enumerable(code: BinaryCode, limit: int) -> None:
    if code.n > limit:
        raise TooLarge(f"contact enumeration is limited to n <= {limit}, got {code.n}")


def _sign_patterns(support: list[int], n: int):
    for signs in itertools.product((1, -1), repeat=len(support)):
        v = [0] * n
        for i, sign in zip(support, signs):
            v[i] = sign
        yield v


def _support(word: int, n: int) -> list[int]:
    return [i for i in range(n) if (word >> i) & 1]


def _as_code(vectors: list[list[int]], radius_sq: int, name: str) -> SphericalCode:
    rows = np.array(sorted(set(map(tuple, vectors))), dtype=float) / np.sqrt(radius_sq)
    return SphericalCode(rows, name=name)


def construction_a_contact_vectors(
    code: BinaryCode, limit: int = DEFAULTS.constructions.max_enumeration_length
) -> SphericalCode:
    """Unit vectors towards the spheres touching the best centre, sorted lexicographically."""
    _check_enumerable(code, limit)
    x, expected = _best_center(code, construction_a_count)
    n, d = code.n, code.d
    vectors: list[list[int]] = []
    if d is not None and d <= 4:
        for c in code.words:
            diff = c ^ x
            if diff.bit_count() == d:
                vectors.extend(_sign_patterns(_support(diff, n), n))
    if d is None or d >= 4:
        for i in range(n):
            for sign in (2, -2):
                v = [0] * n
                v[i] = sign
                vectors.append(v)
    radius_sq = min(4, d) if d is not None else 4
    result = _as_code(vectors, radius_sq, f"construction_a({code.name or 'code'})")
    if len(result) != expected:
        raise SelfCheckFailed(f"enumerated {len(result)} contact vectors, formula gives {expected}")
    return result


def construction_b_contact_vectors(
    code: BinaryCode, limit: int = DEFAULTS.constructions.max_enumeration_length
) -> SphericalCode:
    _require_even(code)
    _check_enumerable(code, limit)
    x, expected = _best_center(code, construction_b_count)
    n, d = code.n, code.d
    vectors: list[list[int]] = []
    if d is not None and d <= 8:
        for c in code.words:
            diff = c ^ x
            if diff.bit_count() == d:
                vectors.extend(v for v in _sign_patterns(_support(diff, n), n) if sum(v) % 4 == 0)
    if d is None or d >= 8:
        for i, j in itertools.combinations(range(n), 2):
            for si, sj in itertools.product((2, -2), repeat=2):
                v = [0] * n
                v[i], v[j] = si, sj
                vectors.append(v)
    radius_sq = min(8, d) if d is not None else 8
    result = _as_code(vectors, radius_sq, f"construction_b({code.name or 'code'})")
    if len(result) != expected:
        raise SelfCheckFailed(f"enumerated {len(result)} contact vectors, formula gives {expected}")
    return result


# ---------------------------------------------------------------------------
# Built-in codes and code files
# ---------------------------------------------------------------------------


def builtin_code(name: str) -> BinaryCode:
    """Named code from the catalogue, checked against its documented parameters."""
    entry, args = catalog.lookup(name, catalog.BINARY)
    code = BinaryCode(n=entry.expected(*args)[0], words=tuple(entry.build(*args)), name=name)
    n, M, d, a_d = entry.expected(*args)
    got = (code.n, code.M, code.d, weight_profile(code, code.words[0])[code.d] if code.d else 1)
    if got != (n, M, d, a_d):
        raise SelfCheckFailed(f"{name}: expected (n, M, d, A_d) = {(n, M, d, a_d)}, got {got}")
    logger.debug("Loaded %s: n=%d M=%d d=%s", name, code.n, code.M, code.d)
    return code


def load_code_file(path: str | Path) -> BinaryCode:
    """One codeword per line as 0/1 characters; blank lines and '#' comments are skipped."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise InvalidInput(f"cannot read code file {path}: {exc}") from exc
    words = [line.strip() for line in lines if line.strip() and not line.lstrip().startswith("#")]
    if not words:
        raise InvalidInput(f"code file {path} has no codewords")
    return BinaryCode.from_strings(words, name=path.name)


def construction_report(code: BinaryCode, construction: str) -> BoundReport:
    """Lower bound on the kissing number in dimension n from one construction."""
    if construction == "a":
        value = construction_a_kissing(code)
    elif construction == "b":
        value = construction_b_kissing(code)
    elif construction == "leech":
        value = leech_kissing(code)
    else:
        raise InvalidInput(f"unknown construction {construction!r}")
    params = code_params(code)
    return BoundReport(
        n=code.n,
        s=0.5,
        method="construction",
        value=value,
        rigorous=True,
        kind="lower",
        certificate={
            "construction": construction,
            "code": code.name,
            "M": code.M,
            "d": code.d,
            "linear": code.linear,
            "weight_profile": list(params.profile.counts),
        },
    )


def even_weight_lower_bound(n: int) -> BoundReport:
    """D_n kissing number 2n(n-1) from Construction A on the even-weight code.

    A_2(0) = C(n, 2) is known in closed form, so the 2^(n-1) words are not
    enumerated.
    """
    value = construction_a_count(n, 2, comb(n, 2))
    return BoundReport(
        n=n,
        s=0.5,
        method="construction",
        value=value,
        rigorous=True,
        kind="lower",
        certificate={"construction": "a", "code": f"even_weight({n})", "d": 2, "A_d": comb(n, 2)},
    )
