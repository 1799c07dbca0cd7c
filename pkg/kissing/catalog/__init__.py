"""Built-in binary and spherical codes.

Every module in this package defines ``CatalogEntry`` objects at module level;
they are collected here by name. Entries return raw data (integer codewords or
an array of vectors) and the expected parameters used for the load-time
self-check; wrapping into ``BinaryCode`` / ``SphericalCode`` happens in
``kissing.constructions`` and ``kissing.analysis``.
"""

import importlib
import pkgutil
import re
from dataclasses import dataclass
from typing import Any, Callable

from kissing.errors import UnknownCode


BINARY = "binary"
SPHERICAL = "spherical"

_NAME = re.compile(r"^\s*([a-z_][a-z0-9_]*)\s*(?:\(\s*(\d+)\s*\))?\s*$")


@dataclass(frozen=True)
class CatalogEntry:
    """A named code; ``build(*args)`` returns its data, ``expected(*args)`` its parameters.

    For binary codes ``expected`` gives (n, M, d, A_d(0)); for spherical codes
    (n, size, s).
    """

    name: str
    kind: str
    build: Callable[..., Any]
    expected: Callable[..., tuple]
    parametric: bool = False
    description: str = ""


entries: dict[str, CatalogEntry] = {}
for _info in pkgutil.iter_modules(__path__, __name__ + "."):
    if _info.ispkg:
        continue
    _mod = importlib.import_module(_info.name)
    for _attr in vars(_mod).values():
        if isinstance(_attr, CatalogEntry):
            entries[_attr.name] = _attr


def parse_name(name: str) -> tuple[str, tuple[int, ...]]:
    """Split ``"even_weight(3)"`` into ``("even_weight", (3,))``."""
    match = _NAME.match(name)
    if not match:
        raise UnknownCode(f"malformed code name {name!r}")
    base, arg = match.groups()
    return base, (int(arg),) if arg is not None else ()


def lookup(name: str, kind: str) -> tuple[CatalogEntry, tuple[int, ...]]:
    base, args = parse_name(name)
    entry = entries.get(base)
    if entry is None or entry.kind != kind:
        known = ", ".join(sorted(e.name for e in entries.values() if e.kind == kind))
        raise UnknownCode(f"unknown {kind} code {name!r}; known: {known}")
    if entry.parametric != bool(args):
        form = f"{base}(N)" if entry.parametric else base
        raise UnknownCode(f"code {name!r} must be written as {form}")
    return entry, args


def names(kind: str) -> list[str]:
    return sorted(f"{e.name}(N)" if e.parametric else e.name for e in entries.values() if e.kind == kind)
