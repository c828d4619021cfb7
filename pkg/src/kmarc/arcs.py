"""Star-sets, KM-arc verification and the exponent-set criteria.

A KM-arc of type t is a set of q+t points meeting every line in 0, 2 or
t points.  Working with star-sets through the origin, the KM property
can be decided four ways: a direct line census, vanishing powers of the
bilinear form, and vanishing power sums over either exponent set D or E.
The census is the ground truth; the algebraic routes must agree with it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .gf2tower import FieldTower
from .plane import Line, bilinear


@dataclass(frozen=True)
class PointSet:
    """A duplicate-free, canonically ordered set of affine points of K."""

    tower: FieldTower
    points: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self, claimed_t: int | None = None) -> dict:
        obj = {
            "tower": self.tower.to_json(),
            "points": [self.tower.to_hex(p) for p in self.points],
        }
        if claimed_t is not None:
            obj["claimed_t"] = claimed_t
        return obj


def point_set(tower: FieldTower, points) -> PointSet:
    pts = sorted(points)
    if len(pts) != len(set(pts)):
        raise ValueError("duplicate points")
    if any(not 0 <= p < tower.order for p in pts):
        raise ValueError("point out of field range")
    return PointSet(tower, tuple(pts))


def point_set_from_json(obj: dict) -> tuple[PointSet, int | None]:
    from .gf2tower import tower_from_json

    tower = tower_from_json(obj["tower"])
    ps = point_set(tower, (tower.from_hex(s) for s in obj["points"]))
    t = obj.get("claimed_t")
    return ps, (int(t) if t is not None else None)


@dataclass(frozen=True)
class ArcReport:
    """Outcome of the direct line census."""

    is_star_set: bool
    t: int | None
    histogram: dict[int, int]
    verdict: str  # "km_arc" or "not_km_arc"
    witness: Line | None = None

    @property
    def is_km_arc(self) -> bool:
        return self.verdict == "km_arc"

    def to_json(self, tower: FieldTower) -> dict:
        obj = {
            "is_star_set": self.is_star_set,
            "t": self.t,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "verdict": self.verdict,
        }
        if self.witness is not None:
            obj["witness"] = self.witness.to_json(tower)
        return obj


@dataclass(frozen=True)
class ExponentSet:
    kind: str  # "D", "Dprime" or "E"
    m: int
    values: tuple[int, ...]


def preceq(i: int, k: int) -> bool:
    """Binary domination: every set bit of i is set in k (Lucas: C(k,i) odd)."""
    return i & ~k == 0


def gen_exponents(kind: str, m: int) -> ExponentSet:
    """Exact enumeration of the exponent sets D, D' and E."""
    if not 1 <= m <= 8:
        raise ValueError("m must satisfy 1 <= m <= 8")
    q = 1 << m
    if kind == "D":
        values = {
            i * q + k - i
            for k in range(1, q - 1)
            for i in range((k - 1) // 2 + 1)
            if preceq(i, k)
        }
    elif kind == "Dprime":
        values = {
            k + (q - 1) * i
            for k in range(1, q)
            for i in range(k + 1)
            if preceq(i, k)
        }
    elif kind == "E":
        values = set()
        stack = [(0, 0)]
        while stack:
            j, acc = stack.pop()
            if j == m:
                if acc:
                    values.add(acc)
                continue
            for x in (0, 1, q):
                stack.append((j + 1, acc + (x << j)))
    else:
        raise ValueError(f"unknown exponent-set kind {kind!r}")
    return ExponentSet(kind, m, tuple(sorted(values)))


def power_sum(H: PointSet, d: int) -> int:
    """pi_d(H) = sum of y^d over the set (0^d = 0 for d >= 1)."""
    if d < 1:
        raise ValueError("power sums need d >= 1")
    t = H.tower
    acc = 0
    for y in H.points:
        acc ^= t.pow(y, d)
    return acc


def classify_star_set(H: PointSet) -> tuple[bool, int | None]:
    """Star-set test: q/t + 1 rays through 0, t points on each."""
    t = H.tower
    if 0 in H.points:  # 0 is the nucleus, never a point
        return False, None
    size = len(H.points)
    tt = size - t.q
    if tt < 1 or t.q % tt != 0:
        return False, None
    rays = Counter(t.polar_direction(p) for p in H.points)
    if len(rays) != t.q // tt + 1 or any(c != tt for c in rays.values()):
        return False, None
    return True, tt


def line_census(H: PointSet) -> Counter:
    """Intersection counts for all q^2+q+1 lines (keyed by Line)."""
    t = H.tower
    counts = Counter()
    for u in t.unit_circle():
        for y in H.points:
            counts[Line.polar(u, bilinear(t, u, y))] += 1
    counts[Line.at_infinity()] = 0
    return counts


def verify_direct(H: PointSet, t: int) -> ArcReport:
    """Ground-truth census over every line of PG(2,q)."""
    tw = H.tower
    if t < 0 or len(H.points) != tw.q + t:
        raise ValueError(f"expected {tw.q + t} points for type {t}, "
                         f"got {len(H.points)}")
    counts = line_census(H)
    total_lines = tw.q * (tw.q + 1) + 1
    histogram = Counter(counts.values())
    histogram[0] += total_lines - len(counts)
    is_star, star_t = classify_star_set(H)
    bad = next((line for line, c in counts.items() if c not in (0, 2, t)), None)
    if bad is None:
        return ArcReport(is_star, star_t, dict(histogram), "km_arc")
    return ArcReport(is_star, star_t, dict(histogram), "not_km_arc", bad)


def _require_star(H: PointSet) -> int:
    is_star, t = classify_star_set(H)
    if not is_star or t < 2:
        raise ValueError("input is not a star-set of type t >= 2")
    if t == H.tower.q:
        raise ValueError("type t = q sets are outside the KM-arc framework")
    return t


def verify_bracket(H: PointSet, extended: bool = False) -> bool:
    """Vanishing of sum <v,y>^k over H for all v in S, 1 <= k <= q-2.

    With extended=True the exponent k = q-1 is checked as well.
    """
    _require_star(H)
    t = H.tower
    kmax = t.q - 1 if extended else t.q - 2
    for v in t.unit_circle():
        vals = [bilinear(t, v, y) for y in H.points]
        acc = list(vals)
        for _k in range(1, kmax + 1):
            s = 0
            for a in acc:
                s ^= a
            if s != 0:
                return False
            acc = [t.mul(a, b) for a, b in zip(acc, vals)]
    return True


def verify_power_sums(H: PointSet, kind: str) -> bool:
    """pi_d(H) = 0 for every d in the exponent set D or E."""
    if kind not in ("D", "E"):
        raise ValueError("kind must be 'D' or 'E'")
    _require_star(H)
    exps = gen_exponents(kind, H.tower.m)
    return all(power_sum(H, d) == 0 for d in exps.values)


def bracket_power_expand(tower: FieldTower, a: int, b: int, k: int,
                         form: str = "low") -> int:
    """<a,b>^k via the odd-binomial expansion over i, low or high range.

    The term for index i is <a^(iq+k-i), b^(iq+k-i)> and survives exactly
    when C(k,i) is odd; exponents step by q-1 as i increases.
    """
    t = tower
    q = t.q
    if not 1 <= k <= q - 1:
        raise ValueError("k must satisfy 1 <= k <= q-1")
    if form == "low":
        lo, hi = 0, (k - 1) // 2
    elif form == "high":
        lo, hi = (k + 1 + 1) // 2 if k % 2 else k // 2 + 1, k
    else:
        raise ValueError(f"unknown form {form!r}")
    # a^(iq+k-i) = a^k * (a^(q-1))^i, likewise for b
    pa = t.pow(a, k + lo * (q - 1)) if a else 0
    pb = t.pow(b, k + lo * (q - 1)) if b else 0
    sa = t.pow(a, q - 1) if a else 0
    sb = t.pow(b, q - 1) if b else 0
    acc = 0
    for i in range(lo, hi + 1):
        if preceq(i, k):
            acc ^= bilinear(t, pa, pb)
        pa = t.mul(pa, sa)
        pb = t.mul(pb, sb)
    return acc


def is_vandermonde(tower: FieldTower, T) -> bool:
    """Power sums of orders 1..|T|-2 all vanish."""
    elems = list(T)
    if len(elems) != len(set(elems)):
        raise ValueError("duplicate elements")
    if not 1 < len(elems) < tower.order:
        raise ValueError("size must satisfy 1 < |T| < field size")
    for k in range(1, len(elems) - 1):
        acc = 0
        for y in elems:
            acc ^= tower.pow(y, k)
        if acc != 0:
            return False
    return True


def t_secants(H: PointSet, t: int) -> list[Line]:
    """The q/t + 1 lines through the nucleus 0 meeting H in t points."""
    report = verify_direct(H, t)
    if not report.is_km_arc or t < 2:
        raise ValueError("not a verified KM-arc of type t >= 2")
    tw = H.tower
    rays = Counter(tw.polar_direction(p) for p in H.points)
    secants = [Line.polar(u, 0) for u in sorted(rays) if rays[u] == t]
    assert len(secants) == tw.q // t + 1
    return secants


def secant_inverse_check(H: PointSet, t: int) -> bool:
    """Check that the inverse set of every t-secant cut is Vandermonde."""
    tw = H.tower
    for line in t_secants(H, t):
        on_line = [y for y in H.points
                   if bilinear(tw, line.u, y) == line.mu]
        if not is_vandermonde(tw, [tw.inv(y) for y in on_line]):
            return False
    return True


# -- star-set sampling for equivalence testing ------------------------

def random_star_set(tower: FieldTower, t: int, rng: random.Random) -> PointSet:
    """A uniform-ish random star-set of type t (rarely a KM-arc)."""
    q = tower.q
    if t < 2 or q % t != 0 or t >= q:
        raise ValueError("t must be a proper divisor of q with 2 <= t < q")
    dirs = rng.sample(tower.unit_circle(), q // t + 1)
    lams = [lam for lam in tower.field_F() if lam]
    pts = []
    for u in dirs:
        for lam in rng.sample(lams, t):
            pts.append(tower.mul(lam, u))
    return point_set(tower, pts)


def mutate_star_set(H: PointSet, rng: random.Random) -> PointSet:
    """Move one point along its ray; preserves the star-set shape."""
    tw = H.tower
    pts = list(H.points)
    idx = rng.randrange(len(pts))
    lam, u = tw.polar_decompose(pts[idx])
    ray = {tw.polar_decompose(p)[0] for p in pts
           if tw.polar_direction(p) == u}
    free = [l for l in tw.field_F() if l and l not in ray]
    pts[idx] = tw.mul(rng.choice(free), u)
    return point_set(tw, pts)
