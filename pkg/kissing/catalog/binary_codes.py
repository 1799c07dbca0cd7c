"""Small binary codes: repetition, even-weight and Hamming.

Codewords are ints; bit i is coordinate i.
"""

from math import comb

from kissing.catalog import BINARY, CatalogEntry
from kissing.errors import OutOfRange


def span(generators: list[int]) -> list[int]:
    """All GF(2) combinations of ``generators``."""
    words = {0}
    for g in generators:
        words |= {w ^ g for w in words}
    return sorted(words)


def bits_to_int(bits) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b)


def _check_length(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise OutOfRange(f"code length must be >= {minimum}, got {n}")


def repetition(n: int) -> list[int]:
    _check_length(n)
    return [0, (1 << n) - 1]


def even_weight(n: int) -> list[int]:
    _check_length(n, 2)
    return [w for w in range(1 << n) if w.bit_count() % 2 == 0]


# [7,4,3] Hamming code, systematic generator [I | P]
HAMMING7_GENERATOR = [
    (1, 0, 0, 0, 1, 1, 0),
    (0, 1, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 1, 1),
    (0, 0, 0, 1, 1, 1, 1),
]


def hamming7() -> list[int]:
    return span([bits_to_int(row) for row in HAMMING7_GENERATOR])


def ext_hamming8() -> list[int]:
    """Hamming [7,4,3] with an overall parity bit appended."""
    return sorted(w | ((w.bit_count() % 2) << 7) for w in hamming7())


REPETITION = CatalogEntry(
    name="repetition",
    kind=BINARY,
    build=repetition,
    expected=lambda n: (n, 2, n, 1),
    parametric=True,
    description="{0^n, 1^n}",
)

EVEN_WEIGHT = CatalogEntry(
    name="even_weight",
    kind=BINARY,
    build=even_weight,
    expected=lambda n: (n, 1 << (n - 1), 2, comb(n, 2)),
    parametric=True,
    description="all words of even weight; Construction A gives D_n",
)

HAMMING7 = CatalogEntry(
    name="hamming7",
    kind=BINARY,
    build=hamming7,
    expected=lambda: (7, 16, 3, 7),
    description="[7,4,3] Hamming code",
)

EXT_HAMMING8 = CatalogEntry(
    name="ext_hamming8",
    kind=BINARY,
    build=ext_hamming8,
    expected=lambda: (8, 16, 4, 14),
    description="[8,4,4] extended Hamming code; Construction A gives E8",
)
