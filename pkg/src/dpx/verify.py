"""Reference checks: every published table, recomputed and compared.

``run_checks`` drives both ``dpx verify-paper`` and the acceptance tests.
Each check records expected and computed values, wall time and its budget.
"""
from __future__ import annotations

import random
import resource
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import reference as ref
from .cohomology import h0, is_nef
from .curves import conics, minus_one_curves, numerical_classes, roots, twisted_cubics
from .enumeration import (
    b_alternating,
    degree_and_genus,
    effective_slice,
    evaluate,
    expected_reg_pd,
    hilbert_polynomial,
    hilbert_value,
)
from .lattice import DivisorClass, Surface, anticanonical_class, parse_class
from .sections import model_dimension, random_general_points
from .syzygy import (
    KoszulComplex,
    betti_diagram,
    dual_class,
    extra_relations,
    green_lazarsfeld_index,
    ideal_generator_count,
    ideal_generator_count_by_conics,
    pfaffian_structure_check,
    verify_ideal_generators,
)
from .weyl import nef_orbit_types, orbit, reflect

SECTIONS = ("curves", "hilbert", "polynomial", "genus", "bsequence", "ideal",
            "witnesses", "betti", "gl", "properties")
ALL_R = (4, 5, 6, 7, 8)


@dataclass
class Check:
    section: str
    r: int | None
    name: str
    expected: object
    computed: object
    passed: bool
    seconds: float = 0.0
    budget: float | None = None
    note: str = ""

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds <= self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        where = f"S_{self.r} " if self.r else ""
        timing = f"{self.seconds:.1f}s" + (f"/{self.budget:.0f}s" if self.budget else "")
        text = f"{tag} [{self.section}] {where}{self.name}: expected {self.expected}, computed {self.computed} ({timing})"
        if self.passed and not self.within_budget:
            text += " over budget"
        if self.note:
            text += f" -- {self.note}"
        return text

    def to_json(self) -> dict:
        return {
            "section": self.section, "r": self.r, "name": self.name,
            "expected": _plain(self.expected), "computed": _plain(self.computed),
            "passed": self.passed, "seconds": round(self.seconds, 3),
            "budget": self.budget, "ok": self.ok, "note": self.note,
        }


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def _timed(section, r, name, expected, fn: Callable, budget=None, compare=None, note="") -> Check:
    start = time.perf_counter()
    try:
        computed = fn()
        passed = compare(computed) if compare else computed == expected
    except Exception as exc:  # a failing computation is a failed check, not a crash
        computed, passed = f"{type(exc).__name__}: {exc}", False
    return Check(section, r, name, expected, computed, passed, time.perf_counter() - start, budget, note)


def peak_rss_bytes() -> int:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


# sections ------------------------------------------------------------------

def check_curves(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        yield _timed("curves", r, "(-1)-curves", ref.MINUS_ONE[r], lambda: len(minus_one_curves(s)), 10)
        yield _timed("curves", r, "conics", ref.CONICS[r], lambda: len(conics(s)), 10)
        cubics = _timed("curves", r, "twisted cubics", ref.CUBICS[r], lambda: len(twisted_cubics(s)), 10)
        if not cubics.passed:
            numeric = numerical_classes(s, 1, 3)
            non_nef = len(numeric) - len(twisted_cubics(s))
            cubics.note = (f"{len(numeric)} classes have C^2 = 1, -K.C = 3; "
                           f"{non_nef} of them are not nef (e.g. {min(set(numeric) - set(twisted_cubics(s)))})")
        yield cubics


def check_hilbert(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        budget = 900 if r == 8 else 60
        yield _timed("hilbert", r, f"H(1..{r - 3})", ref.HILBERT_VALUES[r],
                     lambda: [hilbert_value(s, t) for t in range(1, r - 2)], budget)
        if r == 8:
            rss = peak_rss_bytes()
            yield Check("hilbert", r, "peak memory <= 4 GB", "<= 4.0 GB", f"{rss / 1024**3:.2f} GB",
                        rss <= 4 * 1024**3)


def check_polynomial(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        yield _timed("polynomial", r, "coefficients", [str(c) for c in ref.hilbert_polynomial(r)],
                     lambda: [str(c) for c in hilbert_polynomial(s)], 900 if r == 8 else 120)
        yield _timed("polynomial", r, "duality route agrees", True,
                     lambda: hilbert_polynomial(s, "duality") == hilbert_polynomial(s, "direct"))
        top = r + 5 if r <= 6 else r - 3
        poly = ref.hilbert_polynomial(r)
        yield _timed("polynomial", r, f"P(t) = H(t) for t = 0..{top}", True,
                     lambda: all(evaluate(poly, t) == hilbert_value(s, t) for t in range(top + 1)),
                     300 if r <= 6 else None)


def check_genus(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        yield _timed("genus", r, "(d, g)", ref.DEGREE_GENUS[r], lambda: degree_and_genus(s))
        yield _timed("genus", r, "g = (r-4)d + 1", True,
                     lambda: degree_and_genus(s)[1] == (r - 4) * degree_and_genus(s)[0] + 1)


def _palindromic(s: Surface) -> bool:
    reg, pd = expected_reg_pd(s)
    bs = b_alternating(s)
    return all(bs[j] == (-1) ** pd * bs[pd + reg - j] for j in range(len(bs)))


def check_bsequence(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        if r in ref.B_SEQUENCE:
            yield _timed("bsequence", r, "B_j", ref.B_SEQUENCE[r], lambda: b_alternating(s))
        yield _timed("bsequence", r, "B_j = (-1)^pd B_(pd+reg-j)", True, lambda: _palindromic(s))


def check_ideal(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        yield _timed("ideal", r, "generator count", ref.IDEAL_GENERATORS[r], lambda: ideal_generator_count(s))
        yield _timed("ideal", r, "conic decomposition", ref.IDEAL_GENERATORS[r],
                     lambda: ideal_generator_count_by_conics(s)[0])
        if r <= 6:
            yield _timed("ideal", r, "kernel dimensions (all degree-2 multidegrees)", ref.IDEAL_GENERATORS[r],
                         lambda: verify_ideal_generators(s, random_general_points(s))["total"], 120)
        elif r == 7:
            k = anticanonical_class(s)
            yield _timed("ideal", r, "kernel at -K", 25,
                         lambda: len(extra_relations(s, random_general_points(s), [k])[k]), 600)
        else:
            k2 = 2 * anticanonical_class(s)
            yield _timed("ideal", r, "kernel at -2K", 119,
                         lambda: len(extra_relations(s, random_general_points(s), [k2])[k2]), 600)


def check_witnesses(rs) -> Iterator[Check]:
    table = {4: ref.S4_WITNESSES, 5: ref.S5_WITNESSES}
    for r in rs:
        if r not in table:
            continue
        s = Surface(r)
        for i, text, want in table[r]:
            d = parse_class(text, r)
            yield _timed("witnesses", r, f"b_{i},{d}", want,
                         lambda: KoszulComplex(d, random_general_points(s)).betti(i), 300)


def check_betti(rs) -> Iterator[Check]:
    for r in rs:
        if r not in ref.BETTI_ROWS:
            continue
        s = Surface(r)
        holder = {}

        def build():
            holder["d"] = betti_diagram(s)
            return holder["d"].rows()

        yield _timed("betti", r, "diagram", ref.BETTI_ROWS[r], build, 300)
        if "d" in holder:
            checks = holder["d"].checks
            yield Check("betti", r, "koszul / duality / alternating sums", True,
                        all(v is True for k, v in checks.items() if isinstance(v, bool)),
                        all(v is True for k, v in checks.items() if isinstance(v, bool)),
                        note=checks.get("method", ""))
        if r == 4:
            yield _timed("betti", r, "Pfaffian structure (5x5 skew, Pfaffians span relations)", True,
                         lambda: pfaffian_structure_check(random_general_points(s)).ok, 120)


def check_gl(rs) -> Iterator[Check]:
    for r in rs:
        s = Surface(r)
        if r in (4, 5):
            yield _timed("gl", r, "index (computed)", ref.GL_INDEX[r],
                         lambda: green_lazarsfeld_index(s)["index"], 300)
        elif r == 6:
            yield _timed("gl", r, "witness b_2,2Q >= 1", ">= 1",
                         lambda: green_lazarsfeld_index(s)["witness"]["value"], 600,
                         compare=lambda v: isinstance(v, int) and v >= 1,
                         note="upper bound computed; lower bound is the cited quadric-generation theorem")


# properties ------------------------------------------------------------------

def _oracle_samples(r: int, n: int = 500, seed: int = 0) -> list[DivisorClass]:
    s = Surface(r)
    if r in (4, 5):
        return [d for t in range(5) for d in effective_slice(s, t).classes()]
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        a = rng.randint(0, 8)
        b = [rng.randint(-max(a, 1), 1) for _ in range(r)]
        out.append(s.cls(a, *b))
    return out


def oracle_mismatches(r: int, n: int = 500, seed: int = 0) -> list[DivisorClass]:
    """Classes where h0 disagrees with the plane-curve model (mod-p upper bound,
    exact recount on disagreement)."""
    pc = random_general_points(Surface(r))
    bad = []
    for d in _oracle_samples(r, n, seed):
        if model_dimension(d, pc.points, exact=False) != h0(d) and model_dimension(d, pc.points) != h0(d):
            bad.append(d)
    return bad


def reflection_defects(r: int, n: int = 200, seed: int = 0) -> int:
    s = Surface(r)
    rng = random.Random(seed)
    rts = roots(s)
    k = anticanonical_class(s)
    bad = 0
    for _ in range(n):
        x = s.cls(rng.randint(-5, 5), *[rng.randint(-5, 5) for _ in range(r)])
        y = s.cls(rng.randint(-5, 5), *[rng.randint(-5, 5) for _ in range(r)])
        a = rng.choice(rts)
        if reflect(x, a).dot(reflect(y, a)) != x.dot(y) or reflect(k, a) != k:
            bad += 1
    return bad


def _s5_records():
    s = Surface(5)
    return [rec for rec in betti_diagram(s).records if rec.method == "koszul" and rec.value > 0]


def nefness_violations() -> list:
    out = []
    for r in (4, 5):
        for rec in betti_diagram(Surface(r)).records:
            if rec.method == "koszul" and rec.value > 0 and rec.D.degree == rec.i + 1 and not is_nef(rec.D):
                out.append((rec.i, str(rec.D)))
    return out


def weyl_invariance_failures(members: int = 3, seed: int = 0) -> list:
    rng = random.Random(seed)
    out = []
    for r, table in ((4, ref.S4_WITNESSES), (5, ref.S5_WITNESSES)):
        pc = random_general_points(Surface(r))
        for i, text, want in table:
            d = parse_class(text, r)
            orb = sorted(orbit(d))
            for e in rng.sample(orb, min(members, len(orb))):
                got = KoszulComplex(e, pc).betti(i)
                if got != want:
                    out.append((i, str(e), got, want))
    return out


def h0_orbit_failures() -> list:
    out = []
    for r in (4, 5, 6):
        s = Surface(r)
        for t in (1, 2, 3, 4):
            for orb in nef_orbit_types(s, t):
                vals = {h0(e) for e in orb.members}
                if len(vals) != 1:
                    out.append((r, t, str(orb.representative), sorted(vals)))
    return out


def check_properties(rs) -> Iterator[Check]:
    for r in rs:
        n = 500
        label = "every effective class of degree <= 4" if r in (4, 5) else f"{n} random classes, 0 <= a <= 8"
        yield _timed("properties", r, f"h0 = model dimension ({label})", [], lambda: oracle_mismatches(r, n), 300)
        yield _timed("properties", r, "reflections preserve the form and fix -K", 0, lambda: reflection_defects(r))
    if 4 in rs or 5 in rs:
        yield _timed("properties", None, "positive b_i,D with deg D = i+1 are nef (S_4, S_5)", [], nefness_violations)
        yield _timed("properties", None, "Weyl invariance of b_i,D on 3 orbit members", [], weyl_invariance_failures, 600)
    if 5 in rs:
        yield _timed("properties", 5, "degree-4 nef classes: Weyl orbits", ref.S5_DEGREE4_NEF_ORBITS,
                     lambda: len(nef_orbit_types(Surface(5), 4)))
    yield _timed("properties", None, "h0 constant on Weyl orbits (r <= 6, t <= 4)", [], h0_orbit_failures, 300)


_RUNNERS = {
    "curves": check_curves,
    "hilbert": check_hilbert,
    "polynomial": check_polynomial,
    "genus": check_genus,
    "bsequence": check_bsequence,
    "ideal": check_ideal,
    "witnesses": check_witnesses,
    "betti": check_betti,
    "gl": check_gl,
    "properties": check_properties,
}


def iter_checks(rs=ALL_R, sections=SECTIONS) -> Iterator[Check]:
    for name in sections:
        if name not in _RUNNERS:
            raise ValueError(f"unknown section {name!r}; choose from {', '.join(SECTIONS)}")
        yield from _RUNNERS[name](tuple(rs))


def run_checks(rs=ALL_R, sections=SECTIONS) -> list[Check]:
    return list(iter_checks(rs, sections))
