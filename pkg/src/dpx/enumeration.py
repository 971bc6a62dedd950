"""Degree slices of effective classes and the Hilbert data of Cox(S_r).

Cox(S_r) is generated in anticanonical degree 1, so the effective classes of
degree t are exactly the sums of t generator classes. Slices are stored as
permutation-canonical representatives (non-increasing b) with orbit sizes;
the generator set is permutation invariant, so adding every generator to
every representative and re-canonicalizing produces the next slice.
"""
from __future__ import annotations

import logging
import math
import os
import shutil
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .curves import GENERATOR_COUNTS, generator_classes, minus_one_curves
from .errors import CapacityError, ConsistencyError
from .lattice import DivisorClass, Surface

log = logging.getLogger(__name__)

__all__ = [
    "DegreeSlice",
    "SliceEnumerator",
    "HilbertData",
    "effective_slice",
    "hilbert_value",
    "hilbert_polynomial",
    "interpolate",
    "degree_and_genus",
    "b_alternating",
    "k_polynomial",
    "expected_reg_pd",
    "hilbert_data",
    "get_enumerator",
    "evaluate",
    "duality_nodes",
    "parse_bytes",
]

DEFAULT_MEMORY = 2 * 1024**3


def _memory_budget() -> int:
    env = os.environ.get("DPX_MEMORY_BUDGET")
    return parse_bytes(env) if env else DEFAULT_MEMORY


def parse_bytes(text: str | int) -> int:
    if isinstance(text, int):
        return text
    text = text.strip().upper().rstrip("B")
    mult = {"K": 1024, "M": 1024**2, "G": 1024**3}
    if text and text[-1] in mult:
        return int(float(text[:-1]) * mult[text[-1]])
    return int(text)


def _sort_b_desc(rows: np.ndarray) -> None:
    rows[:, 1:] = -np.sort(-rows[:, 1:], axis=1)


def _orbit_sizes(rows: np.ndarray) -> np.ndarray:
    """Multinomial r! / prod(m!) for rows whose b-part is sorted."""
    b = rows[:, 1:]
    r = b.shape[1]
    run = np.ones(len(rows), dtype=np.int64)
    denom = np.ones(len(rows), dtype=np.int64)
    for j in range(1, r):
        run = np.where(b[:, j] == b[:, j - 1], run + 1, 1)
        denom *= run
    return math.factorial(r) // denom


class _Codec:
    """Packs a class into one int64, preserving lexicographic order.

    Used only when every coordinate range fits; otherwise rows are
    deduplicated directly (slower, no width limit).
    """

    def __init__(self, lo: np.ndarray, hi: np.ndarray):
        self.lo = lo.astype(np.int64)
        widths = (hi - lo + 1).astype(np.int64)
        self.bits = [max(1, int(w - 1).bit_length()) for w in widths]
        self.ok = sum(self.bits) <= 63
        self.shifts = []
        acc = 0
        for bits in reversed(self.bits):
            self.shifts.append(acc)
            acc += bits
        self.shifts.reverse()

    def encode(self, rows: np.ndarray) -> np.ndarray:
        key = np.zeros(len(rows), dtype=np.int64)
        for j, sh in enumerate(self.shifts):
            key |= (rows[:, j].astype(np.int64) - self.lo[j]) << sh
        return key

    def decode(self, keys: np.ndarray) -> np.ndarray:
        out = np.empty((len(keys), len(self.bits)), dtype=np.int64)
        for j, (sh, bits) in enumerate(zip(self.shifts, self.bits)):
            out[:, j] = ((keys >> sh) & ((1 << bits) - 1)) + self.lo[j]
        return out


@dataclass
class DegreeSlice:
    """Effective classes of anticanonical degree t, compressed by permutations.

    ``reps`` rows are ``(a, b_1..b_r)`` with b non-increasing, in class order.
    """

    r: int
    t: int
    reps: np.ndarray
    orbit: np.ndarray
    h0: np.ndarray

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def total(self) -> int:
        """Sum of orbit_size * h0, i.e. the Hilbert function value H_r(t)."""
        return int(sum(int(o) * int(h) for o, h in zip(self.orbit, self.h0)))

    @property
    def n_classes(self) -> int:
        return int(self.orbit.sum())

    def representatives(self) -> Iterator[DivisorClass]:
        for row in self.reps:
            yield DivisorClass.from_coords(row.tolist())

    def entries(self) -> dict[DivisorClass, tuple[int, int]]:
        return {
            DivisorClass.from_coords(row.tolist()): (int(o), int(h))
            for row, o, h in zip(self.reps, self.orbit, self.h0)
        }

    def classes(self) -> Iterator[DivisorClass]:
        """Expand every orbit (lazy)."""
        import itertools

        for row in self.reps:
            a = int(row[0])
            for b in sorted(set(itertools.permutations(row[1:].tolist())), reverse=True):
                yield DivisorClass(a, b)

    def lookup(self, d: DivisorClass) -> tuple[int, int] | None:
        """(orbit_size, h0) of the orbit containing d, or None if absent."""
        key = np.array([[d.a] + sorted(d.b, reverse=True)], dtype=np.int64)
        hit = np.nonzero((self.reps == key).all(axis=1))[0]
        if len(hit) == 0:
            return None
        i = int(hit[0])
        return int(self.orbit[i]), int(self.h0[i])


class SliceEnumerator:
    """Builds and caches slices 0, 1, 2, ... for one surface.

    ``memory_budget`` bounds the working set of a single expansion step; the
    deduplicated keys of finished chunks spill to ``spill_dir`` once they
    exceed half of it.
    """

    def __init__(self, r: int, memory_budget: int | None = None, spill_dir: str | None = None,
                 max_classes: int | None = None):
        if not 3 <= r <= 8:
            raise ValueError("slice enumeration needs 3 <= r <= 8")
        self.r = r
        self.surface = Surface(r)
        self.memory_budget = memory_budget or _memory_budget()
        self.spill_dir = spill_dir
        self.max_classes = max_classes
        self.gens = np.array([g.coords for g in generator_classes(self.surface)], dtype=np.int64)
        curves = np.array([e.coords for e in minus_one_curves(self.surface)], dtype=np.int64)
        form = np.array([1] + [-1] * r, dtype=np.int64)
        self._curves = curves
        self._curves_dual = (curves * form).T.copy()
        self._form = form
        zero = np.zeros((1, r + 1), dtype=np.int64)
        self._slices: list[DegreeSlice] = [
            DegreeSlice(r, 0, zero, np.ones(1, dtype=np.int64), np.ones(1, dtype=np.int64))
        ]

    def codec(self, t: int) -> _Codec:
        lo = np.minimum(self.gens.min(axis=0) * t, 0)
        hi = np.maximum(self.gens.max(axis=0) * t, 0)
        return _Codec(lo, hi)

    def slice(self, t: int) -> DegreeSlice:
        if t < 0:
            raise ValueError("degree must be non-negative")
        while len(self._slices) <= t:
            self._slices.append(self._next(self._slices[-1]))
        return self._slices[t]

    # expansion -----------------------------------------------------------

    def _chunk_rows(self) -> int:
        g, w = len(self.gens), self.r + 1
        # sums array + sort scratch + keys, all int64
        per_rep = g * (2 * w + 2) * 8
        return max(1, self.memory_budget // (2 * per_rep))

    def _expand_keys(self, prev: DegreeSlice, codec: _Codec) -> np.ndarray:
        chunk = self._chunk_rows()
        spilled: list[str] = []
        held: list[np.ndarray] = []
        held_bytes = 0
        tmp = None
        try:
            for start in range(0, len(prev.reps), chunk):
                block = prev.reps[start:start + chunk]
                sums = (block[:, None, :] + self.gens[None, :, :]).reshape(-1, self.r + 1)
                _sort_b_desc(sums)
                keys = np.unique(codec.encode(sums))
                del sums
                held.append(keys)
                held_bytes += keys.nbytes
                if held_bytes > self.memory_budget // 2:
                    merged = np.unique(np.concatenate(held))
                    held, held_bytes = [], 0
                    if tmp is None:
                        tmp = tempfile.mkdtemp(prefix="dpx-slice-", dir=self.spill_dir)
                    path = os.path.join(tmp, f"chunk{len(spilled)}.npy")
                    np.save(path, merged)
                    spilled.append(path)
                    log.info("spilled %d keys to %s", len(merged), path)
            parts = [np.load(p) for p in spilled] + held
            return np.unique(np.concatenate(parts))
        finally:
            if tmp is not None:
                shutil.rmtree(tmp, ignore_errors=True)

    def _expand_rows(self, prev: DegreeSlice) -> np.ndarray:
        sums = (prev.reps[:, None, :] + self.gens[None, :, :]).reshape(-1, self.r + 1)
        _sort_b_desc(sums)
        return np.unique(sums, axis=0)

    def _next(self, prev: DegreeSlice) -> DegreeSlice:
        t = prev.t + 1
        codec = self.codec(t)
        if codec.ok:
            reps = codec.decode(self._expand_keys(prev, codec))
        else:
            reps = self._expand_rows(prev)
        orbit = _orbit_sizes(reps)
        if self.max_classes is not None and len(reps) > self.max_classes:
            raise CapacityError(
                f"slice t={t} of S_{self.r} has {len(reps)} representatives, "
                f"over the cap of {self.max_classes}"
            )
        h0 = self._h0(reps, prev, codec)
        log.info("S_%d slice t=%d: %d representatives", self.r, t, len(reps))
        return DegreeSlice(self.r, t, reps, orbit, h0)

    def _h0(self, reps: np.ndarray, prev: DegreeSlice, codec: _Codec) -> np.ndarray:
        """h^0 by one reduction step into the previous slice, or Riemann-Roch."""
        out = np.empty(len(reps), dtype=np.int64)
        if codec.ok:
            prev_keys = codec.encode(prev.reps)
            order = np.argsort(prev_keys)
            prev_keys = prev_keys[order]
            prev_h0 = prev.h0[order]
        step = max(1, (self.memory_budget // 8) // (8 * len(self._curves)))
        for start in range(0, len(reps), step):
            block = reps[start:start + step]
            dots = block @ self._curves_dual
            neg = dots < 0
            nef = ~neg.any(axis=1)
            deg = 3 * block[:, 0] + block[:, 1:].sum(axis=1)
            sq = block[:, 0] ** 2 - (block[:, 1:] ** 2).sum(axis=1)
            res = np.zeros(len(block), dtype=np.int64)
            res[nef] = (sq[nef] + deg[nef] + 2) // 2
            idx = np.nonzero(~nef)[0]
            if len(idx):
                first = neg[idx].argmax(axis=1)
                reduced = block[idx] - self._curves[first]
                _sort_b_desc(reduced)
                if codec.ok:
                    k = codec.encode(reduced)
                    pos = np.searchsorted(prev_keys, k)
                    pos = np.minimum(pos, len(prev_keys) - 1)
                    found = prev_keys[pos] == k
                    if not found.all():
                        bad = DivisorClass.from_coords(reduced[~found][0].tolist())
                        raise ConsistencyError(f"reduced class {bad} missing from slice {prev.t}")
                    res[idx] = prev_h0[pos]
                else:
                    table = {tuple(row): int(h) for row, h in zip(prev.reps.tolist(), prev.h0)}
                    res[idx] = [table[tuple(row)] for row in reduced.tolist()]
            out[start:start + step] = res
        if (out < 1).any():
            raise ConsistencyError("a slice entry has h0 < 1")
        return out


_ENUMERATORS: dict[int, SliceEnumerator] = {}


def get_enumerator(r: int) -> SliceEnumerator:
    if r not in _ENUMERATORS:
        _ENUMERATORS[r] = SliceEnumerator(r)
    return _ENUMERATORS[r]


def effective_slice(s: Surface, t: int) -> DegreeSlice:
    """Effective classes of degree t on S_r with orbit sizes and h^0."""
    return get_enumerator(s.r).slice(t)


def hilbert_value(s: Surface, t: int) -> int:
    """H_r(t) = dim Cox(S_r)_t, by direct enumeration."""
    if t < 0:
        return 0
    return effective_slice(s, t).total


# Hilbert polynomial --------------------------------------------------------

def interpolate(points: dict[int, int | Fraction]) -> list[Fraction]:
    """Exact Lagrange interpolation; coefficients in increasing degree."""
    xs = sorted(points)
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis  # multiply by t
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = Fraction(points[xi]) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate(coeffs: list[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def duality_nodes(s: Surface) -> dict[int, int]:
    """Values of P_r at negative t forced by Gorenstein duality.

    With omega = O(r - 9) on X_r (dimension r + 2) Serre duality gives
    P(t) = (-1)^r P(r - 9 - t), and every cohomology group of O(t)
    vanishes for r - 9 < t < 0.
    """
    r = s.r
    nodes = {t: 0 for t in range(r - 8, 0)}
    for t in range(0, r - 2):
        nodes[r - 9 - t] = (-1) ** r * hilbert_value(s, t)
    return nodes


@lru_cache(maxsize=None)
def _polynomial(r: int, method: str) -> tuple[Fraction, ...]:
    s = Surface(r)
    if method == "direct":
        pts = {t: hilbert_value(s, t) for t in range(r + 3)}
        coeffs = interpolate(pts)
    elif method == "duality":
        pts = {t: hilbert_value(s, t) for t in range(r - 2)}
        pts.update(duality_nodes(s))
        xs = sorted(pts)
        # one node more than the degree needs; the spare one is a check
        spare = xs[0]
        coeffs = interpolate({x: pts[x] for x in xs[1:]})
        if evaluate(coeffs, spare) != pts[spare]:
            raise ConsistencyError(f"S_{r}: duality nodes are not interpolated by one polynomial")
    else:
        raise ValueError(f"unknown interpolation method {method!r}")
    if len(coeffs) != r + 3:
        raise ConsistencyError(f"S_{r}: Hilbert polynomial has degree {len(coeffs) - 1}, expected {r + 2}")
    return tuple(coeffs)


def hilbert_polynomial(s: Surface, method: str = "auto") -> list[Fraction]:
    """Hilbert polynomial of Cox(S_r), coefficients in increasing degree.

    ``direct`` interpolates H_r at t = 0..r+2 (enumeration up to t = r+2);
    ``duality`` uses H_r(0..r-3) together with the values forced by
    Gorenstein duality.
    ``auto`` means ``direct``; ``duality`` serves as an independent check.
    """
    s.require_cox()
    if method == "auto":
        method = "direct"
    return list(_polynomial(s.r, method))


def degree_and_genus(s: Surface) -> tuple[int, int]:
    lead = hilbert_polynomial(s)[-1] * math.factorial(s.r + 2)
    if lead.denominator != 1:
        raise ConsistencyError(f"non-integral degree {lead}")
    d = int(lead)
    return d, (s.r - 4) * d + 1


def expected_reg_pd(s: Surface) -> tuple[int, int]:
    s.require_cox()
    n = GENERATOR_COUNTS[s.r] - 1
    return 2 * (s.r - 3), n - s.r - 2


def b_alternating(s: Surface, extra: int = 3) -> list[int]:
    """B_j for j = 0..reg+pd, from H(j) = P(j).

    Indices past reg+pd are computed too (``extra`` of them) and must vanish.
    """
    reg, pd = expected_reg_pd(s)
    n = GENERATOR_COUNTS[s.r] - 1
    poly = hilbert_polynomial(s)
    top = reg + pd
    bs: list[int] = []
    for j in range(top + extra + 1):
        h = evaluate(poly, j)
        if h.denominator != 1:
            raise ConsistencyError(f"P({j}) = {h} is not an integer")
        bj = int(h) - sum(bk * math.comb(n + j - k, n) for k, bk in enumerate(bs))
        bs.append(bj)
    if any(bs[top + 1:]):
        raise ConsistencyError(f"B_j does not vanish past j = {top}: {bs[top + 1:]}")
    return bs[: top + 1]


def k_polynomial(s: Surface) -> list[int]:
    """Numerator of the Hilbert series over (1 - t)^(N+1)."""
    return b_alternating(s)


@dataclass
class HilbertData:
    r: int
    values: list[int]
    polynomial: list[Fraction]
    B: list[int]
    K: list[int]
    d: int
    g: int
    reg: int
    pd: int
    extra: dict = field(default_factory=dict)


def hilbert_data(s: Surface, t_max: int | None = None) -> HilbertData:
    t_max = s.r - 3 if t_max is None else t_max
    values = [hilbert_value(s, t) for t in range(t_max + 1)]
    poly = hilbert_polynomial(s)
    for t, v in enumerate(values):
        if evaluate(poly, t) != v:
            raise ConsistencyError(f"S_{s.r}: P({t}) != H({t})")
    d, g = degree_and_genus(s)
    bs = b_alternating(s)
    reg, pd = expected_reg_pd(s)
    return HilbertData(s.r, values, poly, bs, list(bs), d, g, reg, pd)
