"""Named collineations stabilizing the H_r family, orbits and closures.

The maps theta, sigma', E_{a,b}, psi and rho_{gamma,s,t} are realized as
3x3 matrices over F (sigma' with a Frobenius twist) acting through the
homogeneous coordinates of the plane module.  On top of them: set
stabilization tests, orbit partitions, elation enumeration for the
translation-arc property, and BFS group closures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2tower import FieldTower
from .plane import (Collineation, Line, ProjPoint, apply_collineation,
                    bilinear, identity_collineation, to_homogeneous)
from .arcs import PointSet, t_secants, verify_direct
from .constructions import recurrence_set, trace_kernel


class ClosureOverflowError(RuntimeError):
    """Group closure exceeded its element cap."""


@dataclass(frozen=True)
class NamedMap:
    name: str
    params: dict
    collineation: Collineation

    def __hash__(self):
        return hash((self.name, self.collineation.canonical_key()))


def collineation_order(c: Collineation, cap: int = 1 << 20) -> int:
    acc = c
    k = 1
    while not acc.is_identity():
        acc = acc.compose(c)
        k += 1
        if k > cap:
            raise ClosureOverflowError("order exceeds cap")
    return k


def line_covector(tower: FieldTower, line: Line) -> tuple[int, int, int]:
    """Homogeneous coefficients (a,b,c) with aX + bY + cZ = 0 on the line."""
    if line.infinity:
        return (0, 0, 1)
    return (bilinear(tower, line.u, 1),
            bilinear(tower, line.u, tower.i_elem),
            line.mu)


def make_theta(tower: FieldTower) -> NamedMap:
    """Cyclic permutation of U; generates C_{r+1}."""
    b = recurrence_set(tower).b
    coll = Collineation(tower, ((0, 1, 0), (1, b, 0), (0, 0, 1)), 0)
    assert collineation_order(coll) == tower.r + 1
    return NamedMap("theta", {"b": b}, coll)


def make_sigma_prime(tower: FieldTower) -> NamedMap:
    """Semilinear map (x,y) -> (x^2 + y^2, b*y^2); sigma'^m is linear.

    Field squaring z -> z^2 has coordinates (x^2 + delta*y^2, y^2), so
    composing with the published 2x2 factor leaves the matrix below once
    the Frobenius is taken coordinate-wise.
    """
    b = recurrence_set(tower).b
    coll = Collineation(
        tower, ((1, 1, 0), (0, b, 0), (0, 0, 1)), 1)
    acc = coll
    for _ in range(tower.m - 1):
        acc = acc.compose(coll)
    assert acc.frob == 0  # (sigma')^m lies in the linear group
    return NamedMap("sigma_prime", {"b": b}, coll)


def make_elation(tower: FieldTower, a: int, b: int) -> NamedMap:
    """E_{a,b}: z -> z / (<z, b + a*i> + 1), an elation with centre 0."""
    if not (tower.in_F(a) and tower.in_F(b)):
        raise ValueError("elation parameters a, b must lie in F")
    coll = Collineation(tower, ((1, 0, 0), (0, 1, 0), (a, b, 1)), 0)
    w = b ^ tower.mul(a, tower.i_elem)
    for z in range(1, min(tower.order, 51)):
        den = bilinear(tower, z, w) ^ 1
        img = apply_collineation(coll, ProjPoint.affine(z))
        if den == 0:
            assert img.at_infinity
        else:
            assert not img.at_infinity
            assert img.value == tower.mul(z, tower.inv(den))
    return NamedMap("elation", {"a": a, "b": b}, coll)


def make_psi(tower: FieldTower) -> NamedMap:
    """(x,y) -> (x + b*y, y); an involutive elation with axis l0."""
    b = recurrence_set(tower).b
    coll = Collineation(tower, ((1, b, 0), (0, 1, 0), (0, 0, 1)), 0)
    assert collineation_order(coll) == 2
    return NamedMap("psi", {"b": b}, coll)


def _smallest_with_rel_trace(tower: FieldTower, target: int) -> int:
    return next(x for x in sorted(tower.field_F())
                if tower.rel_trace(x) == target)


def make_rho(tower: FieldTower, gamma: int | None = None,
             s: int | None = None, t: int | None = None) -> NamedMap:
    """diag(gamma, 1/gamma) with a shear row; order r-1 for primitive gamma."""
    if gamma is None:
        gamma = _smallest_primitive_fprime(tower)
    if gamma == 0 or not tower.in_Fprime(gamma):
        raise ValueError("gamma must lie in F'*")
    gamma_inv = tower.inv(gamma)
    if s is None:
        s = _smallest_with_rel_trace(tower, gamma ^ 1)
    if t is None:
        t = _smallest_with_rel_trace(tower, gamma_inv ^ 1)
    if tower.rel_trace(s) != gamma ^ 1 or tower.rel_trace(t) != gamma_inv ^ 1:
        raise ValueError("trace conditions on s, t violated")
    coll = Collineation(
        tower, ((gamma, 0, 0), (0, gamma_inv, 0), (s, t, 1)), 0)
    if _order_in_fprime(tower, gamma) == tower.r - 1:
        assert collineation_order(coll) == tower.r - 1
    return NamedMap("rho", {"gamma": gamma, "s": s, "t": t}, coll)


def make_tau(tower: FieldTower, trace_target: int | None = None) -> NamedMap:
    """Conjugation-flavoured involution completing the U stabilizer.

    For h = 1 this is conjugation z -> z^q, linear on the coordinates:
    (x,y) -> (x+y, y).  For larger h it is the published shear with a
    third-row entry t of prescribed relative trace.
    """
    if tower.h == 1 and trace_target is None:
        coll = Collineation(tower, ((1, 1, 0), (0, 1, 0), (0, 0, 1)), 0)
        return NamedMap("tau", {}, coll)
    if trace_target is None:
        raise ValueError("tau needs a trace target when h > 1")
    t = _smallest_with_rel_trace(tower, trace_target)
    coll = Collineation(tower, ((1, 1, 0), (0, 1, 0), (0, t, 1)), 0)
    return NamedMap("tau", {"t": t}, coll)


def _order_in_fprime(tower: FieldTower, x: int) -> int:
    acc, k = x, 1
    while acc != 1:
        acc = tower.mul(acc, x)
        k += 1
    return k


def _smallest_primitive_fprime(tower: FieldTower) -> int:
    r = tower.r
    if r == 2:
        return 1
    return next(x for x in tower.field_Fprime()
                if x and _order_in_fprime(tower, x) == r - 1)


def make_named(tower: FieldTower, name: str, **params) -> NamedMap:
    """Dispatch constructor for the named maps."""
    builders = {
        "theta": make_theta,
        "sigma_prime": make_sigma_prime,
        "elation": make_elation,
        "psi": make_psi,
        "rho": make_rho,
        "tau": make_tau,
    }
    if name not in builders:
        raise ValueError(f"unknown map {name!r}")
    return builders[name](tower, **params)


def stabilizes(m, H: PointSet) -> bool:
    """True iff the point-image of H equals H as a set."""
    coll = m.collineation if isinstance(m, NamedMap) else m
    target = set(H.points)
    for p in H.points:
        img = apply_collineation(coll, ProjPoint.affine(p))
        if img.at_infinity or img.value not in target:
            return False
    return True


def orbits(generators, X) -> list[list[ProjPoint]]:
    """Partition X into orbits under the generated group (closure BFS)."""
    colls = [g.collineation if isinstance(g, NamedMap) else g
             for g in generators]
    pool = set(X)
    for g in colls:
        for p in pool:
            if apply_collineation(g, p) not in pool:
                raise ValueError("generators do not map X into itself")
    out = []
    remaining = set(pool)
    for start in sorted(pool):
        if start not in remaining:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            p = frontier.pop()
            for g in colls:
                q = apply_collineation(g, p)
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        out.append(sorted(orbit))
        remaining -= orbit
    return out


def elations_with_axis(tower: FieldTower, axis: Line) -> list[Collineation]:
    """All q^2 elations (identity included) with the given axis.

    They are the maps I + v*w^T with w the axis covector and w.v = 0.
    """
    w = line_covector(tower, axis)
    kernel = _kernel_basis(tower, w)
    out = []
    for lam1 in tower.field_F():
        for lam2 in tower.field_F():
            v = tuple(tower.mul(lam1, kernel[0][j]) ^ tower.mul(lam2, kernel[1][j])
                      for j in range(3))
            mat = tuple(
                tuple((1 if i == j else 0) ^ tower.mul(v[i], w[j])
                      for j in range(3))
                for i in range(3)
            )
            out.append(Collineation(tower, mat, 0))
    return out


def _kernel_basis(tower: FieldTower, w: tuple[int, int, int]):
    """A basis of the 2-dim kernel of v -> w.v over F."""
    a, b, c = w
    if c:
        ci = tower.inv(c)
        return [(1, 0, tower.mul(a, ci)), (0, 1, tower.mul(b, ci))]
    if b:
        return [(1, tower.mul(a, tower.inv(b)), 0), (0, 0, 1)]
    return [(0, 1, 0), (0, 0, 1)]


def _stabilizing_elations(tower, axis, H: PointSet) -> list[Collineation]:
    triples = [to_homogeneous(tower, ProjPoint.affine(p)) for p in H.points]
    keys = {_triple_key(tower, tr) for tr in triples}
    out = []
    for e in elations_with_axis(tower, axis):
        if all(_triple_key(tower, e.apply_triple(tr)) in keys
               for tr in triples):
            out.append(e)
    return out


def _triple_key(tower, tr):
    x, y, z = tr
    pivot = z or y or x
    if pivot != 1:
        s = tower.inv(pivot)
        x, y, z = tower.mul(x, s), tower.mul(y, s), tower.mul(z, s)
    return (x, y, z)


def verify_translation_arc(H: PointSet, t: int, l0: Line) -> str:
    """Classify H against the elation group with axis l0.

    Returns "translation" if the stabilizing elations are transitive on
    H minus l0, "elation_only" if they are transitive on every other
    t-secant's intersection, else "neither".
    """
    tw = H.tower
    if t <= 2:
        raise ValueError("translation property is defined for t > 2")
    secants = t_secants(H, t)  # also verifies the KM property
    if l0 not in secants:
        raise ValueError("l0 is not a t-secant of H")
    group = _stabilizing_elations(tw, l0, H)
    on_l0 = {p for p in H.points if bilinear(tw, l0.u, p) == l0.mu}
    off = sorted(set(H.points) - on_l0)
    orbit = {_image_affine(g, off[0]) for g in group}
    if orbit == set(off):
        return "translation"
    for sec in secants:
        if sec == l0:
            continue
        cut = sorted(p for p in H.points
                     if bilinear(tw, sec.u, p) == sec.mu)
        orb = {_image_affine(g, cut[0]) for g in group}
        if not set(cut) <= orb:
            return "neither"
    return "elation_only"


def _image_affine(coll: Collineation, p: int) -> int:
    img = apply_collineation(coll, ProjPoint.affine(p))
    assert not img.at_infinity
    return img.value


def group_closure(generators, cap: int = 10 ** 6) -> int:
    """Order of the generated group by BFS closure; errors past cap."""
    colls = [g.collineation if isinstance(g, NamedMap) else g
             for g in generators]
    if not colls:
        return 1
    tower = colls[0].tower
    colls = colls + [identity_collineation(tower)]
    seen = {c.canonical_key(): c for c in colls}
    frontier = list(seen.values())
    while frontier:
        new = []
        for g in colls:
            for x in frontier:
                y = g.compose(x)
                key = y.canonical_key()
                if key not in seen:
                    seen[key] = y
                    new.append(y)
                    if len(seen) > cap:
                        raise ClosureOverflowError(
                            f"closure exceeds cap {cap}")
        frontier = new
    return len(seen)


def elation_group(tower: FieldTower) -> list[NamedMap]:
    """The group {E_{a,b} : Tr(a) = Tr(b) = 0} of order (q/r)^2."""
    v0 = trace_kernel(tower)
    return [make_elation(tower, a, b) for a in v0 for b in v0]


def group_closure_mod_elations(tower: FieldTower, generators,
                               cap: int = 10 ** 6) -> int:
    """Order of the closure of the generators modulo the group E above.

    Coset representatives are canonicalized by reducing the third matrix
    row over all left factors E_{a,b}, Tr(a) = Tr(b) = 0.
    """
    colls = [g.collineation if isinstance(g, NamedMap) else g
             for g in generators]
    v0 = trace_kernel(tower)

    def coset_key(c: Collineation):
        best = None
        r1, r2, r3 = c.matrix
        ar1 = {a: tuple(tower.mul(a, x) for x in r1) for a in v0}
        br2 = {b: tuple(tower.mul(b, x) for x in r2) for b in v0}
        for a in v0:
            p1 = ar1[a]
            for b in v0:
                p2 = br2[b]
                flat = r1 + r2 + tuple(r3[j] ^ p1[j] ^ p2[j]
                                       for j in range(3))
                pivot = next(x for x in flat if x)
                if pivot != 1:
                    s = tower.inv(pivot)
                    flat = tuple(tower.mul(x, s) for x in flat)
                key = (flat, c.frob)
                if best is None or key < best:
                    best = key
        return best

    ident = identity_collineation(tower)
    seen = {coset_key(ident): ident}
    for c in colls:
        seen.setdefault(coset_key(c), c)
    frontier = list(seen.values())
    while frontier:
        new = []
        for g in colls:
            for x in frontier:
                y = g.compose(x)
                key = coset_key(y)
                if key not in seen:
                    seen[key] = y
                    new.append(y)
                    if len(seen) > cap:
                        raise ClosureOverflowError(
                            f"closure exceeds cap {cap}")
        frontier = new
    return len(seen)
