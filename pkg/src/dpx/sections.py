"""Plane-curve model of H^0(S_r, D) over exact rationals.

A class ``a L - sum m_i E_i`` has sections the degree-a forms vanishing to
order m_i at p_i. A positive coefficient on E_i imposes nothing (the
exceptional curve is a fixed component), which is the stripping step.
Under this identification multiplying sections is multiplying forms.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

try:
    from flint import nmod_mat
except ImportError:  # pragma: no cover
    nmod_mat = None

from .cohomology import h0
from .curves import cox_generators, minus_one_curves
from .errors import ConsistencyError, GenericityError
from .lattice import DivisorClass, Surface, anticanonical_class
from .linalg import PRIME, Q, kernel_basis, rank, rank_mod_p

__all__ = [
    "PointConfig",
    "SectionSpace",
    "Section",
    "monomials",
    "random_general_points",
    "certify",
    "section_space",
    "multiply",
    "coordinates",
    "generator_sections",
]


@lru_cache(maxsize=None)
def monomials(a: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent vectors of degree-a monomials in x, y, z (x-major order)."""
    if a < 0:
        return ()
    return tuple((i, j, a - i - j) for i in range(a, -1, -1) for j in range(a - i, -1, -1))


@lru_cache(maxsize=None)
def _index(a: int) -> dict:
    return {m: k for k, m in enumerate(monomials(a))}


def _falling(e: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= e - t
    return out


@lru_cache(maxsize=4096)
def _condition_block(p: tuple[int, int, int], a: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``d^alpha f (p) = 0`` for all |alpha| < m, over degree-a coefficients."""
    rows = []
    mons = monomials(a)
    for k in range(m):
        for alpha in monomials(k):
            row = []
            for e in mons:
                if e[0] < alpha[0] or e[1] < alpha[1] or e[2] < alpha[2]:
                    row.append(0)
                    continue
                c = _falling(e[0], alpha[0]) * _falling(e[1], alpha[1]) * _falling(e[2], alpha[2])
                row.append(c * p[0] ** (e[0] - alpha[0]) * p[1] ** (e[1] - alpha[1]) * p[2] ** (e[2] - alpha[2]))
            rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=4096)
def _condition_block_mod(p: tuple[int, int, int], a: int, m: int) -> np.ndarray:
    rows = _condition_block(p, a, m)
    return np.array([[x % PRIME for x in row] for row in rows], dtype=np.int64).reshape(-1, len(monomials(a)))


def _conditions(d: DivisorClass, points) -> list:
    rows = []
    for p, bi in zip(points, d.b):
        if bi < 0:
            rows.extend(_condition_block(p, d.a, -bi))
    return rows


def model_dimension(d: DivisorClass, points, exact: bool = True) -> int:
    """Dimension of the degree-a forms with the multiplicity conditions of d."""
    if d.a < 0:
        return 0
    n = len(monomials(d.a))
    rows = _conditions(d, points)
    if not rows:
        return n
    if exact:
        return n - rank(rows)
    blocks = [_condition_block_mod(p, d.a, -bi) for p, bi in zip(points, d.b) if bi < 0]
    stacked = np.vstack(blocks)
    if nmod_mat is not None:
        return n - nmod_mat(stacked.tolist(), PRIME).rank()
    return n - _rank_mod_p_array(stacked)


def _rank_mod_p_array(a: np.ndarray, p: int = PRIME) -> int:
    a = a.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if len(below):
            a[below] = (a[below] - (a[below, c, None] * a[r]) % p) % p
        r += 1
    return r


@dataclass(frozen=True)
class PointConfig:
    """r points of the plane with integer homogeneous coordinates."""

    r: int
    points: tuple
    seed: int | None = None
    height: int = 100
    certificate: tuple = ()

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "seed": self.seed,
            "height": self.height,
            "points": [list(p) for p in self.points],
            "certificate": list(self.certificate),
        }

    @classmethod
    def from_json(cls, obj: dict | str, recertify: bool = True) -> "PointConfig":
        if isinstance(obj, str):
            obj = json.loads(obj)
        pts = tuple(tuple(int(x) for x in p) for p in obj["points"])
        pc = cls(int(obj["r"]), pts, obj.get("seed"), int(obj.get("height", 100)), tuple(obj.get("certificate", ())))
        if recertify:
            pc = cls(pc.r, pc.points, pc.seed, pc.height, tuple(certify(pc.points)))
        return pc


def _det3(p, q, s) -> int:
    return (p[0] * (q[1] * s[2] - q[2] * s[1]) - p[1] * (q[0] * s[2] - q[2] * s[0])
            + p[2] * (q[0] * s[1] - q[1] * s[0]))


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def certify(points: Sequence[tuple[int, int, int]], full: bool | None = None,
            sample: int = 2000) -> list[str]:
    """Run the genericity checks; raise GenericityError on the first failure.

    Classical checks: distinct points, no three collinear, no six on a conic,
    no cubic through eight of them singular at one. Operational check: the
    model dimension equals h^0 for every (-1)-class and every effective
    class of degree <= 3. On S_8 (9361 + 131041 such classes) each degree
    is sampled unless ``full``.
    """
    from .enumeration import effective_slice

    r = len(points)
    s = Surface(r)
    cert = []
    for p, q in combinations(points, 2):
        if _cross(p, q) == (0, 0, 0):
            raise GenericityError(f"points {p} and {q} coincide")
    cert.append("distinct")
    for p, q, u in combinations(points, 3):
        if _det3(p, q, u) == 0:
            raise GenericityError(f"points {p}, {q}, {u} are collinear")
    cert.append("no 3 collinear")
    if r >= 6:
        for six in combinations(points, 6):
            if rank([_condition_block(p, 2, 1)[0] for p in six]) < 6:
                raise GenericityError(f"points {six} lie on a conic")
        cert.append("no 6 on a conic")
    if r == 8:
        for i in range(8):
            b = [-1] * 8
            b[i] = -2
            if model_dimension(DivisorClass(3, tuple(b)), points) != 0:
                raise GenericityError(f"a cubic through all points is singular at point {i + 1}")
        cert.append("no cubic through 8 points singular at one")
    for e in minus_one_curves(s):
        if model_dimension(e, points) != 1:
            raise GenericityError(f"(-1)-class {e} has model dimension != 1")
    cert.append("(-1)-classes: dimension 1")
    if r >= 3:
        if full is None:
            full = r <= 7
        checked = 0
        for t in (2, 3):
            sl = effective_slice(s, t)
            classes = [(d, int(h)) for rep, h in zip(sl.representatives(), sl.h0)
                       for d in _orbit_of(rep)]
            if not full and len(classes) > sample:
                classes = random.Random(0).sample(classes, sample)
            for d, want in classes:
                # h0 <= dim over Q <= dim mod p, so equality mod p is exact
                if model_dimension(d, points, exact=False) != want and model_dimension(d, points) != want:
                    raise GenericityError(f"class {d}: model dimension differs from h0 = {want}")
                checked += 1
        cert.append(f"effective degree<=3: {'all' if full else 'sampled'} {checked} classes match h0")
    return cert


def _orbit_of(rep: DivisorClass) -> list[DivisorClass]:
    from itertools import permutations

    return [DivisorClass(rep.a, b) for b in sorted(set(permutations(rep.b)), reverse=True)]


def _random_point(rng: random.Random, height: int) -> tuple[int, int, int]:
    from math import gcd

    p1, q1 = rng.randint(-height, height), rng.randint(1, height)
    p2, q2 = rng.randint(-height, height), rng.randint(1, height)
    v = (p1 * q2, p2 * q1, q1 * q2)
    g = gcd(gcd(abs(v[0]), abs(v[1])), v[2])
    return tuple(x // g for x in v)


def random_general_points(s: Surface, seed: int = 0, height: int = 100, tries: int = 20,
                          full: bool | None = None) -> PointConfig:
    """Draw r rational points of bounded height and certify them; deterministic per seed."""
    return _random_general_points(s.r, seed, height, tries, full)


@lru_cache(maxsize=None)
def _random_general_points(r, seed, height, tries, full) -> PointConfig:
    rng = random.Random(seed)
    last = None
    for _ in range(tries):
        pts = tuple(_random_point(rng, height) for _ in range(r))
        try:
            cert = certify(pts, full=full)
        except GenericityError as exc:
            last = exc
            continue
        return PointConfig(r, pts, seed, height, tuple(cert))
    raise GenericityError(f"no certified configuration after {tries} draws: {last}")


# sections ------------------------------------------------------------------

@dataclass(frozen=True)
class SectionSpace:
    """Exact basis of H^0(D) as degree-a forms.

    ``stripped`` zeroes the positive b_i; ``prefix`` records them. Basis
    vectors are in reduced column-echelon form: vector k is 1 at monomial
    ``free[k]`` and 0 at the other free monomials.
    """

    cls: DivisorClass
    stripped: DivisorClass
    prefix: tuple
    basis: tuple
    free: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def section(self, k: int) -> "Section":
        return Section(self.cls, self.basis[k])


@dataclass(frozen=True)
class Section:
    cls: DivisorClass
    form: tuple  # coefficients over monomials(cls.a)

    def as_dict(self) -> dict:
        mons = monomials(self.cls.a)
        return {mons[k]: c for k, c in enumerate(self.form) if c != 0}


def section_space(d: DivisorClass, pc: PointConfig) -> SectionSpace:
    return _section_space(d, pc.points)


@lru_cache(maxsize=1 << 16)
def _section_space(d: DivisorClass, points) -> SectionSpace:
    stripped = DivisorClass(d.a, tuple(min(x, 0) for x in d.b))
    prefix = tuple(max(x, 0) for x in d.b)
    want = h0(d)
    if want == 0 or d.a < 0:
        return SectionSpace(d, stripped, prefix, (), ())
    n = len(monomials(d.a))
    basis = kernel_basis(_conditions(stripped, points), n)
    if len(basis) != want:
        raise GenericityError(f"H0({d}) has model dimension {len(basis)}, expected {want}")
    free = tuple(next(k for k in range(n) if v[k] == 1 and all(w[k] == 0 for w in basis if w is not v))
                 for v in basis)
    return SectionSpace(d, stripped, prefix, tuple(tuple(v) for v in basis), free)


def _multiply_forms(f: Sequence, a1: int, g: Sequence, a2: int) -> list:
    m1, m2 = monomials(a1), monomials(a2)
    idx = _index(a1 + a2)
    out = [Q(0)] * len(idx)
    gnz = [(m2[j], c) for j, c in enumerate(g) if c != 0]
    for i, c in enumerate(f):
        if c == 0:
            continue
        e = m1[i]
        for e2, c2 in gnz:
            out[idx[(e[0] + e2[0], e[1] + e2[1], e[2] + e2[2])]] += c * c2
    return out


def coordinates(form: Sequence, space: SectionSpace) -> list:
    """Coordinates of a form in the basis of ``space``; raises if it is not in the span."""
    coords = [Q(form[k]) for k in space.free]
    n = len(form)
    for j in range(n):
        v = sum((c * b[j] for c, b in zip(coords, space.basis) if c != 0), Q(0))
        if v != form[j]:
            raise ConsistencyError(f"product is not a section of {space.cls}")
    return coords


def multiply(s1: Section, s2: Section, pc: PointConfig) -> list:
    """Coordinates of s1 * s2 in section_space(D1 + D2)."""
    target = section_space(s1.cls + s2.cls, pc)
    prod = _multiply_forms(s1.form, s1.cls.a, s2.form, s2.cls.a)
    return coordinates(prod, target)


def generator_sections(pc: PointConfig) -> list[Section]:
    """One section per generator slot, aligned with ``cox_generators``."""
    s = Surface(pc.r)
    out = []
    for cls, idx in cox_generators(s):
        out.append(section_space(cls, pc).section(idx))
    return out
