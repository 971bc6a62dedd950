"""Picard lattice of the blow-up of the plane in r points.

Classes are written ``(a; b_1, ..., b_r)`` for ``a L + b_1 E_1 + ... + b_r E_r``.
The intersection form is ``diag(1, -1, ..., -1)``.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError

__all__ = [
    "Surface",
    "DivisorClass",
    "intersect",
    "degree",
    "canonical_class",
    "anticanonical_class",
    "perm_canonical",
    "orbit_size",
    "parse_class",
]


@dataclass(frozen=True)
class Surface:
    """Del Pezzo surface S_r, the plane blown up in r general points."""

    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or not 1 <= self.r <= 8:
            raise ValueError(f"r must be an integer in 1..8, got {self.r!r}")

    @property
    def degree(self) -> int:
        return 9 - self.r

    def require_cox(self) -> None:
        if not 4 <= self.r <= 8:
            raise ValueError(f"Cox ring computations need 4 <= r <= 8, got r={self.r}")

    def zero(self) -> "DivisorClass":
        return DivisorClass(0, (0,) * self.r)

    def line(self) -> "DivisorClass":
        return DivisorClass(1, (0,) * self.r)

    def exceptional(self, i: int) -> "DivisorClass":
        """E_i, with 1-based index as in the usual notation."""
        if not 1 <= i <= self.r:
            raise IndexError(i)
        b = [0] * self.r
        b[i - 1] = 1
        return DivisorClass(0, tuple(b))

    def cls(self, a: int, *b: int) -> "DivisorClass":
        if len(b) != self.r:
            raise DimensionError(f"expected {self.r} exceptional coefficients, got {len(b)}")
        return DivisorClass(a, tuple(b))


@dataclass(frozen=True, order=True)
class DivisorClass:
    """An integer class ``a L + sum b_i E_i``.

    Ordering is lexicographic on ``(a, b_1, ..., b_r)``; this is the
    deterministic class order used for tie-breaking everywhere.
    """

    a: int
    b: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.b, tuple):
            object.__setattr__(self, "b", tuple(self.b))

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "DivisorClass":
        return cls(int(coords[0]), tuple(int(x) for x in coords[1:]))

    @property
    def r(self) -> int:
        return len(self.b)

    @property
    def surface(self) -> Surface:
        return Surface(self.r)

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.a,) + self.b

    def _check(self, other: "DivisorClass") -> None:
        if len(other.b) != len(self.b):
            raise DimensionError(f"classes on S_{self.r} and S_{other.r} cannot be combined")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.a + other.a, tuple(x + y for x, y in zip(self.b, other.b)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.a - other.a, tuple(x - y for x, y in zip(self.b, other.b)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, tuple(-x for x in self.b))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.a, tuple(k * x for x in self.b))

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> int:
        self._check(other)
        return self.a * other.a - sum(x * y for x, y in zip(self.b, other.b))

    @property
    def square(self) -> int:
        return self.dot(self)

    @property
    def degree(self) -> int:
        """Anticanonical degree ``-K . D = 3a + sum b_i``."""
        return 3 * self.a + sum(self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and not any(self.b)

    def to_json(self) -> dict:
        return {"r": self.r, "a": self.a, "b": list(self.b)}

    @classmethod
    def from_json(cls, obj: dict | str) -> "DivisorClass":
        if isinstance(obj, str):
            obj = json.loads(obj)
        b = tuple(int(x) for x in obj["b"])
        if "r" in obj and int(obj["r"]) != len(b):
            raise DimensionError(f"r={obj['r']} but b has length {len(b)}")
        return cls(int(obj["a"]), b)

    def __str__(self) -> str:
        return f"({self.a}; {', '.join(str(x) for x in self.b)})"


def parse_class(text: str, r: int | None = None) -> DivisorClass:
    """Parse ``"2;-1,-1,-2,0,0"`` (the CLI notation)."""
    text = text.strip().strip("()")
    try:
        head, _, tail = text.partition(";")
        a = int(head)
        b = tuple(int(x) for x in tail.split(",") if x.strip()) if tail.strip() else ()
    except ValueError as exc:
        raise ValueError(f"cannot parse divisor class {text!r}; expected 'a;b1,...,br'") from exc
    if r is not None and len(b) != r:
        raise DimensionError(f"class {text!r} has {len(b)} exceptional coefficients, expected {r}")
    return DivisorClass(a, b)


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    return d1.dot(d2)


def degree(d: DivisorClass) -> int:
    return d.degree


def canonical_class(s: Surface) -> DivisorClass:
    return DivisorClass(-3, (1,) * s.r)


def anticanonical_class(s: Surface) -> DivisorClass:
    return DivisorClass(3, (-1,) * s.r)


def orbit_size(b: Iterable[int]) -> int:
    """Number of distinct rearrangements of the exceptional coefficients."""
    b = list(b)
    n = math.factorial(len(b))
    for m in Counter(b).values():
        n //= math.factorial(m)
    return n


def perm_canonical(d: DivisorClass) -> tuple[DivisorClass, int]:
    """Representative with non-increasing b, and the size of its S_r-orbit."""
    return DivisorClass(d.a, tuple(sorted(d.b, reverse=True))), orbit_size(d.b)
