"""Distinguished curve classes on S_r and the Cox generator list."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .lattice import DivisorClass, Surface, anticanonical_class

__all__ = [
    "CurveInventory",
    "minus_one_curves",
    "minus_one_from_types",
    "numerical_classes",
    "generator_classes",
    "roots",
    "conics",
    "twisted_cubics",
    "cox_generators",
    "inventory",
    "MINUS_ONE_TYPES",
    "MINUS_ONE_COUNTS",
    "CONIC_COUNTS",
    "CUBIC_COUNTS",
    "GENERATOR_COUNTS",
]

# (-1)-curve types up to permutation of the points: (a, multiplicities, minimal r)
MINUS_ONE_TYPES = [
    (0, (-1,), 1),
    (1, (1, 1), 2),
    (2, (1, 1, 1, 1, 1), 5),
    (3, (2, 1, 1, 1, 1, 1, 1), 7),
    (4, (2, 2, 2, 1, 1, 1, 1, 1), 8),
    (5, (2, 2, 2, 2, 2, 2, 1, 1), 8),
    (6, (3, 2, 2, 2, 2, 2, 2, 2), 8),
]
MINUS_ONE_COUNTS = {0: 0, 1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
CONIC_COUNTS = {3: 3, 4: 5, 5: 10, 6: 27, 7: 126, 8: 2160}
CUBIC_COUNTS = {3: 2, 4: 5, 5: 16, 6: 72, 7: 576, 8: 17520}
GENERATOR_COUNTS = {4: 10, 5: 16, 6: 27, 7: 56, 8: 242}


def numerical_classes(s: Surface, square: int, deg: int) -> list[DivisorClass]:
    """Every class with D^2 = square and -K.D = deg, nef or not."""
    return _solutions(s.r, square, deg)


def _solutions(r: int, square: int, deg: int) -> list[DivisorClass]:
    """All classes with D^2 = square and -K.D = deg.

    Cauchy-Schwarz on the b-part bounds the search: with s = deg - 3a and
    q = a^2 - square we need s^2 <= r q and |b_i| <= sqrt(q).
    """
    out = []
    # s^2 <= r q  <=>  (9 - r) a^2 - 6 deg a + deg^2 + r square <= 0
    a_max = 3 * abs(deg) + 2 * math.isqrt(max(0, -square) * r + deg * deg) + 4
    for a in range(-a_max, a_max + 1):
        q = a * a - square
        s = deg - 3 * a
        if q < 0 or s * s > r * q:
            continue
        bound = math.isqrt(q)
        values = range(bound, -bound - 1, -1)
        for b in itertools.combinations_with_replacement(values, r):
            if sum(b) == s and sum(x * x for x in b) == q:
                for perm in set(itertools.permutations(b)):
                    out.append(DivisorClass(a, perm))
    return sorted(out)


@lru_cache(maxsize=None)
def _minus_one(r: int) -> tuple[DivisorClass, ...]:
    return tuple(_solutions(r, -1, 1))


def minus_one_curves(s: Surface) -> tuple[DivisorClass, ...]:
    """All (-1)-classes on S_r, sorted in class order."""
    return _minus_one(s.r)


def minus_one_from_types(s: Surface) -> set[DivisorClass]:
    """Expand the classical type list; an independent route to the same set."""
    out = set()
    for a, mult, rmin in MINUS_ONE_TYPES:
        if s.r < rmin:
            continue
        b = tuple(-m for m in mult) + (0,) * (s.r - len(mult))
        for perm in set(itertools.permutations(b)):
            out.add(DivisorClass(a, perm))
    return out


@lru_cache(maxsize=None)
def _roots(r: int) -> tuple[DivisorClass, ...]:
    return tuple(_solutions(r, -2, 0))


def roots(s: Surface) -> tuple[DivisorClass, ...]:
    return _roots(s.r)


def _nef_slice_classes(s: Surface, t: int, square: int) -> tuple[DivisorClass, ...]:
    from .cohomology import is_nef
    from .enumeration import effective_slice

    out = []
    for rep in effective_slice(s, t).representatives():
        if rep.square == square and is_nef(rep):
            out.extend(_expand_orbit(rep))
    return tuple(sorted(out))


def _expand_orbit(d: DivisorClass) -> list[DivisorClass]:
    return [DivisorClass(d.a, b) for b in set(itertools.permutations(d.b))]


@lru_cache(maxsize=None)
def _conics(r: int) -> tuple[DivisorClass, ...]:
    return _nef_slice_classes(Surface(r), 2, 0)


@lru_cache(maxsize=None)
def _cubics(r: int) -> tuple[DivisorClass, ...]:
    return _nef_slice_classes(Surface(r), 3, 1)


def conics(s: Surface) -> tuple[DivisorClass, ...]:
    """Nef classes with Q^2 = 0 and degree 2."""
    if s.r < 3:
        raise ValueError("conics are enumerated for 3 <= r <= 8")
    return _conics(s.r)


def twisted_cubics(s: Surface) -> tuple[DivisorClass, ...]:
    """Nef classes with C^2 = 1 and degree 3."""
    if s.r < 3:
        raise ValueError("twisted cubics are enumerated for 3 <= r <= 8")
    return _cubics(s.r)


@lru_cache(maxsize=None)
def _generators(r: int) -> tuple[tuple[DivisorClass, int], ...]:
    gens = [(e, 0) for e in _minus_one(r)]
    if r == 8:
        k = anticanonical_class(Surface(8))
        gens += [(k, 0), (k, 1)]
    return tuple(sorted(gens))


def cox_generators(s: Surface) -> tuple[tuple[DivisorClass, int], ...]:
    """Generator slots ``(class, basis_index)`` of Cox(S_r) in class order.

    Every (-1)-class appears once; on S_8 the class -K appears twice because
    h^0(-K) = 2.
    """
    s.require_cox()
    return _generators(s.r)


def generator_classes(s: Surface) -> tuple[DivisorClass, ...]:
    """Distinct generator classes (the -K slot of S_8 counted once)."""
    out = list(_minus_one(s.r))
    if s.r == 8:
        out.append(anticanonical_class(s))
    return tuple(sorted(out))


@dataclass(frozen=True)
class CurveInventory:
    r: int
    minus_one: frozenset
    roots: frozenset
    conics: frozenset
    cubics: frozenset
    generators: tuple


@lru_cache(maxsize=None)
def inventory(r: int) -> CurveInventory:
    s = Surface(r)
    return CurveInventory(
        r=r,
        minus_one=frozenset(minus_one_curves(s)),
        roots=frozenset(roots(s)) if r >= 2 else frozenset(),
        conics=frozenset(conics(s)) if r >= 3 else frozenset(),
        cubics=frozenset(twisted_cubics(s)) if r >= 3 else frozenset(),
        generators=cox_generators(s) if r >= 4 else (),
    )
