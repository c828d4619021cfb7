"""Exact arithmetic in the field chain GF(2) < F' < F < K.

K = GF(2^(2m)), F = GF(2^m), F' = GF(2^h) with h | m, and the
intermediate quadratic extension K' = GF(2^(2h)) of F'.

Field elements are plain Python ints holding the coefficient bit-vector
of the residue polynomial (low bit = constant term).  All interpretation
happens through a FieldTower, which fixes the modulus, the element i
with trace 1 over F, and a multiplicative generator.  Addition is xor;
the tower provides multiplication, inversion, powers and the polar
machinery (unit circle, lambda*u decomposition).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(p: int, m: int) -> int:
    """Remainder of p modulo m, both polynomials over GF(2) as ints."""
    dm = _poly_degree(m)
    while p.bit_length() - 1 >= dm and p:
        p ^= m << (p.bit_length() - 1 - dm)
    return p


def is_irreducible(p: int) -> bool:
    """Exhaustive divisor search; intended for degrees up to 16."""
    d = _poly_degree(p)
    if d < 1:
        return False
    if d == 1:
        return True
    if p & 1 == 0:  # divisible by z
        return False
    for cand in range(2, 1 << (d // 2 + 1)):
        if _poly_degree(cand) >= 1 and _poly_mod(p, cand) == 0:
            return False
    return True


def default_modulus(degree: int) -> int:
    """Smallest irreducible polynomial of the given degree (int order)."""
    for p in range(1 << degree, 1 << (degree + 1)):
        if is_irreducible(p):
            return p
    raise AssertionError("no irreducible polynomial found")


def _factorize(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldTower:
    """Arithmetic context for GF(2) < F' < F < K with q = 2^m, r = 2^h."""

    m: int
    h: int
    modulus: int
    i_elem: int = field(default=0)
    delta: int = field(default=0)
    generator: int = field(default=0)

    # -- derived sizes ------------------------------------------------

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def r(self) -> int:
        return 1 << self.h

    @property
    def order(self) -> int:
        """|K| = 2^(2m)."""
        return 1 << self.n

    # -- core arithmetic ----------------------------------------------

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        """Carry-less shift-xor multiplication with modular reduction."""
        acc = 0
        mod = self.modulus
        top = 1 << self.n
        while y:
            if y & 1:
                acc ^= x
            y >>= 1
            x <<= 1
            if x & top:
                x ^= mod
        return acc

    def sqr(self, x: int) -> int:
        return self.mul(x, x)

    def pow(self, x: int, e: int) -> int:
        """x**e; exponents for nonzero bases reduce mod 2^(2m)-1."""
        if x == 0:
            return 0 if e > 0 else 1
        e %= self.order - 1
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, x)
            e >>= 1
            x = self.mul(x, x)
        return acc

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inversion of zero")
        return self.pow(x, self.order - 2)

    def sqrt(self, x: int) -> int:
        """Unique square root in characteristic 2: x^(2^(2m-1))."""
        return self.pow(x, 1 << (self.n - 1))

    # -- conjugation, traces, norms -----------------------------------

    def conj(self, x: int) -> int:
        """x^q, the conjugate over F."""
        return self.pow(x, self.q)

    def trace_KF(self, x: int) -> int:
        """T(x) = x + x^q, lies in F."""
        return x ^ self.conj(x)

    def norm_KF(self, x: int) -> int:
        """N(x) = x * x^q, lies in F."""
        return self.mul(x, self.conj(x))

    def rel_trace(self, x: int) -> int:
        """Relative trace F -> F': x + x^r + ... + x^(q/r)."""
        if not self.in_F(x):
            raise ValueError("rel_trace argument must lie in F")
        acc = 0
        y = x
        for _ in range(self.m // self.h):
            acc ^= y
            y = self.pow(y, self.r)
        return acc

    # -- subfield membership ------------------------------------------

    def in_F(self, x: int) -> bool:
        return self.pow(x, self.q) == x

    def in_Fprime(self, x: int) -> bool:
        return self.pow(x, self.r) == x

    def in_Kprime(self, x: int) -> bool:
        return self.pow(x, self.r * self.r) == x

    # -- subfield / subgroup enumerations -----------------------------

    def _subgroup(self, size: int) -> list[int]:
        """The unique multiplicative subgroup of K* of the given order."""
        assert (self.order - 1) % size == 0
        g = self.pow(self.generator, (self.order - 1) // size)
        out = set()
        x = 1
        for _ in range(size):
            out.add(x)
            x = self.mul(x, g)
        assert len(out) == size
        return sorted(out)

    @functools.cache
    def field_F(self) -> tuple[int, ...]:
        return (0, *self._subgroup(self.q - 1))

    @functools.cache
    def field_Fprime(self) -> tuple[int, ...]:
        return (0, *self._subgroup(self.r - 1))

    @functools.cache
    def field_Kprime(self) -> tuple[int, ...]:
        return (0, *self._subgroup(self.r * self.r - 1))

    @functools.cache
    def unit_circle(self, level: str = "full") -> tuple[int, ...]:
        """S (norm-1 elements, size q+1) or S' (size r+1), sorted."""
        if level == "full":
            return tuple(self._subgroup(self.q + 1))
        if level == "sub":
            return tuple(self._subgroup(self.r + 1))
        raise ValueError(f"unknown unit-circle level {level!r}")

    # -- polar coordinates --------------------------------------------

    def polar_decompose(self, x: int) -> tuple[int, int]:
        """Unique (lambda, u) with x = lambda*u, lambda in F*, u in S."""
        if x == 0:
            raise ValueError("zero has no polar decomposition")
        xb = self.conj(x)
        lam = self.sqrt(self.mul(x, xb))
        u = self.sqrt(self.mul(x, self.inv(xb)))
        return lam, u

    def polar_direction(self, x: int) -> int:
        """The u-component of the polar decomposition."""
        return self.polar_decompose(x)[1]

    # -- coordinates over F relative to 1, i --------------------------

    def from_coords(self, x: int, y: int) -> int:
        """The element x + y*i for x, y in F."""
        return x ^ self.mul(y, self.i_elem)

    # -- serialization ------------------------------------------------

    @property
    def hex_width(self) -> int:
        return (self.n + 3) // 4

    def to_hex(self, x: int) -> str:
        return format(x, f"0{self.hex_width}x")

    def from_hex(self, s: str) -> int:
        x = int(s, 16)
        if x >= self.order:
            raise ValueError(f"element {s!r} out of range for 2m={self.n}")
        return x

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "h": self.h,
            "modulus_hex": format(self.modulus, "x"),
            "i_hex": self.to_hex(self.i_elem),
        }


def _multiplicative_order(tower: FieldTower, x: int) -> int:
    n = tower.order - 1
    order = n
    for p in _factorize(n):
        while order % p == 0 and tower.pow(x, order // p) == 1:
            order //= p
    return order


@functools.lru_cache(maxsize=None)
def make_tower(m: int, h: int, modulus: int | None = None) -> FieldTower:
    """Build the arithmetic context for q = 2^m, r = 2^h.

    The default modulus is the smallest irreducible polynomial of degree
    2m in integer order; i is the smallest element with T(i) = 1 and the
    generator is the smallest primitive element of K*.
    """
    if not 1 <= m <= 8:
        raise ValueError("m must satisfy 1 <= m <= 8")
    if h < 1 or m % h != 0:
        raise ValueError("h must be a positive divisor of m")
    n = 2 * m
    if modulus is None:
        modulus = default_modulus(n)
    else:
        if _poly_degree(modulus) != n:
            raise ValueError(f"modulus must have degree {n}")
        if not is_irreducible(modulus):
            raise ValueError("modulus is reducible over GF(2)")

    tower = FieldTower(m=m, h=h, modulus=modulus)

    i_elem = next(x for x in range(tower.order) if tower.trace_KF(x) == 1)
    delta = tower.norm_KF(i_elem)
    assert tower.in_F(delta)
    generator = next(
        x for x in range(2, tower.order)
        if _multiplicative_order(tower, x) == tower.order - 1
    )
    return FieldTower(
        m=m, h=h, modulus=modulus,
        i_elem=i_elem, delta=delta, generator=generator,
    )


def tower_from_json(obj: dict) -> FieldTower:
    tower = make_tower(int(obj["m"]), int(obj["h"]),
                       int(obj["modulus_hex"], 16))
    if "i_hex" in obj and tower.from_hex(obj["i_hex"]) != tower.i_elem:
        raise ValueError("tower i element does not match canonical choice")
    return tower
