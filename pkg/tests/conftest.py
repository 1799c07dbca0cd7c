from fractions import Fraction

import pytest

from kissing.polynomials import Polynomial


HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def sharp_polynomial_8() -> Polynomial:
    """(t+1)(t+1/2)^2 t^2 (t-1/2): the degree-6 certificate for tau_8 = 240."""
    return Polynomial.from_roots([-1, -HALF, -HALF, 0, 0, HALF])


def sharp_polynomial_24() -> Polynomial:
    """(t+1)(t+1/2)^2 (t+1/4)^2 t^2 (t-1/4)^2 (t-1/2): the certificate for tau_24 = 196560."""
    return Polynomial.from_roots([-1, -HALF, -HALF, -QUARTER, -QUARTER, 0, 0, QUARTER, QUARTER, HALF])


@pytest.fixture
def write_lines(tmp_path):
    def write(name: str, lines) -> str:
        path = tmp_path / name
        path.write_text("\n".join(str(x) for x in lines) + "\n")
        return str(path)

    return write
