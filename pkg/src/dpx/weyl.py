"""Weyl group W_r acting on Pic(S_r) by reflections in roots.

Simple roots are ``L - E1 - E2 - E3`` and ``E_i - E_{i+1}``; any conjugate
choice yields the same orbits. Orbits are materialized as explicit sets.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cohomology import is_nef
from .curves import minus_one_curves, twisted_cubics, conics
from .errors import CapacityError
from .lattice import DivisorClass, Surface, anticanonical_class

__all__ = [
    "simple_roots",
    "gram_matrix",
    "reflect",
    "orbit",
    "NefOrbit",
    "nef_orbit_types",
    "describe",
]


def simple_roots(s: Surface) -> list[DivisorClass]:
    r = s.r
    out = []
    if r >= 3:
        out.append(DivisorClass(1, (-1, -1, -1) + (0,) * (r - 3)))
    for i in range(r - 1):
        b = [0] * r
        b[i], b[i + 1] = 1, -1
        out.append(DivisorClass(0, tuple(b)))
    return out


def gram_matrix(s: Surface) -> list[list[int]]:
    """Negated intersection matrix of the simple roots (a Cartan matrix)."""
    alpha = simple_roots(s)
    return [[-x.dot(y) for y in alpha] for x in alpha]


def _is_root(alpha: DivisorClass) -> bool:
    return alpha.square == -2 and alpha.degree == 0


def reflect(d: DivisorClass, alpha: DivisorClass) -> DivisorClass:
    """s_alpha(D) = D + (D.alpha) alpha."""
    if not _is_root(alpha):
        raise ValueError(f"{alpha} is not a root (need square -2, degree 0)")
    return d + d.dot(alpha) * alpha


def orbit(d: DivisorClass, cap: int = 100_000) -> frozenset[DivisorClass]:
    """Closure of {d} under the simple reflections."""
    gens = simple_roots(d.surface)
    seen = {d}
    queue = deque([d])
    while queue:
        x = queue.popleft()
        for alpha in gens:
            k = x.dot(alpha)
            if k == 0:
                continue
            y = x + k * alpha
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapacityError(f"W-orbit of {d} exceeds cap {cap}")
                queue.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class NefOrbit:
    representative: DivisorClass
    name: str
    members: frozenset
    size: int


def describe(d: DivisorClass) -> str:
    """Name a nef class by a decomposition into conics, cubics and (-1)-curves."""
    s = d.surface
    if d.is_zero():
        return "0"
    k = anticanonical_class(s)
    for m in range(1, 4):
        if d == m * k:
            return "-K" if m == 1 else f"-{m}K"
    curves = minus_one_curves(s)
    if d in set(curves):
        return "E"
    if s.r >= 3:
        qs, cs = set(conics(s)), set(twisted_cubics(s))
        if d in qs:
            return "Q"
        if d in cs:
            return "C"
        for m in (2, 3):
            if d.a % m == 0 and all(x % m == 0 for x in d.b):
                part = DivisorClass(d.a // m, tuple(x // m for x in d.b))
                if part in qs:
                    return f"{m}Q"
                if part in cs:
                    return f"{m}C"
        for c in sorted(cs):
            rest = d - c
            if rest in set(curves):
                return f"C+E (C.E={c.dot(rest)})"
            if rest in qs:
                return f"C+Q (C.Q={c.dot(rest)})"
            if rest in cs:
                return f"C+C' (C.C'={c.dot(rest)})"
        for q in sorted(qs):
            rest = d - q
            if rest in set(curves):
                return f"Q+E (Q.E={q.dot(rest)})"
            if rest in qs:
                return f"Q+Q' (Q.Q'={q.dot(rest)})"
    return str(d)


def nef_orbit_types(s: Surface, t: int, cap: int = 100_000) -> list[NefOrbit]:
    """Partition the nef classes of degree t into W_r-orbits."""
    from .enumeration import effective_slice

    nef = {d for d in effective_slice(s, t).classes() if is_nef(d)}
    out = []
    while nef:
        rep = min(nef)
        orb = orbit(rep, cap)
        if not orb <= nef:
            raise AssertionError(f"orbit of {rep} leaves the nef slice")
        nef -= orb
        out.append(NefOrbit(rep, describe(rep), orb, len(orb)))
    return sorted(out, key=lambda o: (o.size, o.representative))
