"""The polar presentation of PG(2,q).

Affine points are elements of K, infinite points are directions u on the
unit circle S.  Affine lines are L(u, mu) = {x : <u,x> + mu = 0} with
u in S, mu in F; the line at infinity is a distinct variant.  Collineations
are 3x3 matrices over F with a Frobenius twist, acting through the
homogeneous coordinates (<i,x> : <1,x> : 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2tower import FieldTower


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of PG(2,q): affine element of K or direction u in S."""

    at_infinity: bool
    value: int

    @staticmethod
    def affine(x: int) -> "ProjPoint":
        return ProjPoint(False, x)

    @staticmethod
    def infinite(u: int) -> "ProjPoint":
        return ProjPoint(True, u)


@dataclass(frozen=True)
class Line:
    """L(u, mu), or the line at infinity when infinity is set."""

    infinity: bool = False
    u: int = 0
    mu: int = 0

    @staticmethod
    def polar(u: int, mu: int) -> "Line":
        return Line(False, u, mu)

    @staticmethod
    def at_infinity() -> "Line":
        return Line(True)

    def to_json(self, tower: FieldTower) -> dict:
        if self.infinity:
            return {"infinity": True}
        return {"u_hex": tower.to_hex(self.u), "mu_hex": tower.to_hex(self.mu)}

    @staticmethod
    def from_json(obj: dict, tower: FieldTower) -> "Line":
        if obj.get("infinity"):
            return Line.at_infinity()
        return Line.polar(tower.from_hex(obj["u_hex"]),
                          tower.from_hex(obj["mu_hex"]))


def bilinear(tower: FieldTower, x: int, y: int) -> int:
    """<x, y> = x*y^q + x^q*y; alternating, symmetric, values in F."""
    return tower.mul(x, tower.conj(y)) ^ tower.mul(tower.conj(x), y)


def coords(tower: FieldTower, z: int) -> tuple[int, int]:
    """(x, y) in F x F with z = x + y*i."""
    return bilinear(tower, tower.i_elem, z), bilinear(tower, 1, z)


def incident(tower: FieldTower, line: Line, p: ProjPoint) -> bool:
    if line.infinity:
        return p.at_infinity
    if p.at_infinity:
        return bilinear(tower, line.u, p.value) == 0
    return bilinear(tower, line.u, p.value) == line.mu


def line_points(tower: FieldTower, line: Line) -> list[ProjPoint]:
    """The q affine points of L(u, mu), in canonical order."""
    if line.infinity:
        raise ValueError("line at infinity carries no affine points")
    # <u, u*i> = u^(q+1) * T(i) = 1, so mu*u*i is a particular solution;
    # the kernel of x -> <u, x> is the ray u*F.
    base = tower.mul(line.mu, tower.mul(line.u, tower.i_elem))
    pts = sorted(base ^ tower.mul(lam, line.u) for lam in tower.field_F())
    assert len(pts) == tower.q
    return [ProjPoint.affine(x) for x in pts]


def line_through(tower: FieldTower, p: ProjPoint, s: ProjPoint) -> Line:
    """The unique line through two distinct points."""
    if p == s:
        raise ValueError("line_through needs two distinct points")
    if p.at_infinity and s.at_infinity:
        return Line.at_infinity()
    if p.at_infinity:
        p, s = s, p
    if s.at_infinity:
        u = s.value
    else:
        u = tower.polar_direction(p.value ^ s.value)
    return Line.polar(u, bilinear(tower, u, p.value))


def all_lines(tower: FieldTower):
    """All q^2 + q + 1 lines of PG(2,q)."""
    yield Line.at_infinity()
    for u in tower.unit_circle():
        for mu in tower.field_F():
            yield Line.polar(u, mu)


def to_homogeneous(tower: FieldTower, p: ProjPoint) -> tuple[int, int, int]:
    """Normalized homogeneous coordinates over F."""
    if p.at_infinity:
        x, y = coords(tower, p.value)
        return _normalize_triple(tower, (x, y, 0))
    x, y = coords(tower, p.value)
    return (x, y, 1)


def _normalize_triple(tower: FieldTower,
                      t: tuple[int, int, int]) -> tuple[int, int, int]:
    x, y, z = t
    if (x, y, z) == (0, 0, 0):
        raise ValueError("(0:0:0) is not a projective point")
    pivot = z or y or x
    if pivot == 1:
        return (x, y, z)
    s = tower.inv(pivot)
    return (tower.mul(x, s), tower.mul(y, s), tower.mul(z, s))


def from_homogeneous(tower: FieldTower, t: tuple[int, int, int]) -> ProjPoint:
    x, y, z = _normalize_triple(tower, t)
    if z != 0:
        return ProjPoint.affine(tower.from_coords(x, y))
    return ProjPoint.infinite(tower.polar_direction(tower.from_coords(x, y)))


@dataclass(frozen=True)
class Collineation:
    """Semilinear map: coordinate-wise x -> x^(2^e), then the matrix.

    The matrix is a 3x3 tuple over F acting on column vectors; the
    Frobenius exponent is reduced mod m since entries live in F.
    """

    tower: FieldTower
    matrix: tuple[tuple[int, int, int], ...]
    frob: int = 0

    def __post_init__(self):
        object.__setattr__(self, "frob", self.frob % self.tower.m)
        if self._det() == 0:
            raise ValueError("collineation matrix is singular")

    def _det(self) -> int:
        t = self.tower
        (a, b, c), (d, e, f), (g, h, i) = self.matrix
        return (t.mul(a, t.mul(e, i)) ^ t.mul(a, t.mul(f, h))
                ^ t.mul(b, t.mul(d, i)) ^ t.mul(b, t.mul(f, g))
                ^ t.mul(c, t.mul(d, h)) ^ t.mul(c, t.mul(e, g)))

    def apply_triple(self, v: tuple[int, int, int]) -> tuple[int, int, int]:
        t = self.tower
        if self.frob:
            e = 1 << self.frob
            v = tuple(t.pow(c, e) for c in v)
        return tuple(
            t.mul(row[0], v[0]) ^ t.mul(row[1], v[1]) ^ t.mul(row[2], v[2])
            for row in self.matrix
        )

    def compose(self, other: "Collineation") -> "Collineation":
        """self after other: (M1,e1).compose(M2,e2) = (M1*phi^e1(M2), e1+e2)."""
        t = self.tower
        e = 1 << self.frob
        m2 = [[t.pow(c, e) for c in row] for row in other.matrix]
        prod = tuple(
            tuple(
                t.mul(r1[0], m2[0][j]) ^ t.mul(r1[1], m2[1][j])
                ^ t.mul(r1[2], m2[2][j])
                for j in range(3)
            )
            for r1 in self.matrix
        )
        return Collineation(t, prod, self.frob + other.frob)

    def inverse(self) -> "Collineation":
        t = self.tower
        M = self.matrix
        det_inv = t.inv(self._det())

        def cof(i, j):
            rows = [r for k, r in enumerate(M) if k != i]
            cols = [[c for l, c in enumerate(r) if l != j] for r in rows]
            return t.mul(cols[0][0], cols[1][1]) ^ t.mul(cols[0][1], cols[1][0])

        adj = tuple(
            tuple(t.mul(det_inv, cof(j, i)) for j in range(3))
            for i in range(3)
        )
        e_inv = (-self.frob) % t.m
        exp = 1 << e_inv
        adj = tuple(tuple(t.pow(c, exp) for c in row) for row in adj)
        return Collineation(t, adj, e_inv)

    def canonical_key(self):
        """Projective canonical form: scale so first nonzero entry is 1."""
        t = self.tower
        flat = [c for row in self.matrix for c in row]
        pivot = next(c for c in flat if c)
        if pivot != 1:
            s = t.inv(pivot)
            flat = [t.mul(c, s) for c in flat]
        return (tuple(flat), self.frob)

    def is_identity(self) -> bool:
        key, frob = self.canonical_key()
        return frob == 0 and key == (1, 0, 0, 0, 1, 0, 0, 0, 1)

    def to_json(self) -> dict:
        th = self.tower.to_hex
        return {
            "matrix": [[th(c) for c in row] for row in self.matrix],
            "frobenius": self.frob,
        }

    @staticmethod
    def from_json(obj: dict, tower: FieldTower) -> "Collineation":
        mat = tuple(tuple(tower.from_hex(c) for c in row)
                    for row in obj["matrix"])
        return Collineation(tower, mat, int(obj.get("frobenius", 0)))


def identity_collineation(tower: FieldTower) -> Collineation:
    return Collineation(tower, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), 0)


def apply_collineation(c: Collineation, p: ProjPoint) -> ProjPoint:
    return from_homogeneous(c.tower, c.apply_triple(to_homogeneous(c.tower, p)))


def scaling_collineation(tower: FieldTower, c: int) -> Collineation:
    """Multiplication by c in K* as a collineation in homogeneous form."""
    if c == 0:
        raise ValueError("scaling by zero")
    # z = x*1 + y*i maps to x*(c*1) + y*(c*i); columns are their coordinates
    c1_x, c1_y = coords(tower, c)
    ci_x, ci_y = coords(tower, tower.mul(c, tower.i_elem))
    return Collineation(
        tower,
        ((c1_x, ci_x, 0), (c1_y, ci_y, 0), (0, 0, 1)),
        0,
    )
