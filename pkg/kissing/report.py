"""BoundReport: the common output of every bound computation."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np


METHODS = ("levenshtein", "lp", "fejes-toth", "coxeter-boroczky", "musin", "construction")

# Float bounds within this relative distance below an integer floor to it.
FLOOR_SLACK = 1e-9


def jsonable(obj: Any) -> Any:
    """Convert Fractions, numpy scalars/arrays and tuples into JSON-safe values."""
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def exact_strings(values) -> list[str]:
    return [str(Fraction(v)) for v in values]


@dataclass(frozen=True)
class BoundReport:
    """A computed bound on A(n, s) (``kind="upper"``) or a constructive lower bound."""

    n: int
    s: Any
    method: str
    value: Any
    rigorous: bool
    certificate: dict = field(default_factory=dict)
    kind: str = "upper"
    notes: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return isinstance(self.value, (int, Fraction))

    @property
    def floor_value(self) -> int:
        if self.exact:
            return math.floor(self.value)
        value = float(self.value)
        return math.floor(value + FLOOR_SLACK * max(1.0, abs(value)))

    def to_dict(self) -> dict[str, Any]:
        data = {
            "n": self.n,
            "s": float(self.s) if self.s is not None else None,
            "method": self.method,
            "kind": self.kind,
            "value": float(self.value),
            "floor_value": self.floor_value,
            "rigorous": self.rigorous,
            "certificate": jsonable(self.certificate),
            "notes": list(self.notes),
        }
        if isinstance(self.value, Fraction):
            data["value_exact"] = str(self.value)
        if isinstance(self.s, Fraction):
            data["s_exact"] = str(self.s)
        return data


def certificate_payload(n, s, polynomial, expansion, bound, rigorous: bool) -> dict[str, Any]:
    """Delsarte certificate in the documented JSON schema."""
    payload = {
        "n": n,
        "s": float(s),
        "degree": polynomial.degree,
        "monomial_coeffs": [float(c) for c in polynomial.coeffs],
        "gegenbauer_coeffs": [float(c) for c in expansion.coeffs],
        "bound": float(bound),
        "rigorous": rigorous,
    }
    if polynomial.exact:
        payload["monomial_coeffs_exact"] = exact_strings(polynomial.coeffs)
        payload["gegenbauer_coeffs_exact"] = exact_strings(expansion.coeffs)
        payload["bound_exact"] = str(Fraction(bound))
    return payload
