"""Nefness, effectivity and h^0 of divisor classes on S_r.

A class that meets some (-1)-curve negatively contains it as a fixed
component, so removing that curve leaves h^0 unchanged and lowers the degree
by one. Nef classes have no higher cohomology and h^0 follows from
Riemann-Roch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .curves import minus_one_curves
from .lattice import DivisorClass

__all__ = ["ReductionTrace", "is_nef", "h0", "h0_with_trace", "is_effective", "nef_h0"]


@dataclass(frozen=True)
class ReductionTrace:
    steps: list[tuple[DivisorClass, DivisorClass]] = field(default_factory=list)
    terminal: DivisorClass | None = None
    terminal_kind: str = "nef"  # "nef" or "negative-degree"


def _first_negative(d: DivisorClass) -> DivisorClass | None:
    for e in minus_one_curves(d.surface):
        if d.dot(e) < 0:
            return e
    return None


def is_nef(d: DivisorClass) -> bool:
    """True iff ``D.E >= 0`` for every (-1)-curve E."""
    return all(d.dot(e) >= 0 for e in minus_one_curves(d.surface))


def nef_h0(d: DivisorClass) -> int:
    """Riemann-Roch value ``(D^2 + deg D + 2) / 2`` for a nef class."""
    num = d.square + d.degree + 2
    assert num % 2 == 0, d
    return num // 2


def h0_with_trace(d: DivisorClass) -> tuple[int, ReductionTrace]:
    steps = []
    while True:
        if d.degree < 0:
            return 0, ReductionTrace(steps, d, "negative-degree")
        if d.is_zero():
            return 1, ReductionTrace(steps, d, "nef")
        e = _first_negative(d)
        if e is None:
            if d.degree == 0:
                # -K is ample, so 0 is the only effective class of degree 0
                return 0, ReductionTrace(steps, d, "nef")
            return nef_h0(d), ReductionTrace(steps, d, "nef")
        steps.append((d, e))
        d = d - e


@lru_cache(maxsize=1 << 18)
def h0(d: DivisorClass) -> int:
    """Dimension of H^0(S_r, O(D)) via the (-1)-curve reduction."""
    return h0_with_trace(d)[0]


def is_effective(d: DivisorClass) -> bool:
    return h0(d) > 0
