"""The quadratic extension GF(2^(2m)) = GF(2^m)(w) with w^2 = w + 1.

Elements z = x + w*y are encoded as the canonical integer x + 2^m * y,
so a tower element is again a plain int and tables over GF(2^(2m)) are
indexed directly by it.  Conjugation bar(z) = z^(2^m) is the coordinate
map (x, y) -> (x + y, y) because bar(w) = w + 1.  The basis {1, w} only
works for odd m, which is the only case the constructions here need.
"""

from __future__ import annotations

from .errors import DivisionByZero
from .gf2m import FieldCtx


class TowerCtx:
    """GF(2^n) with n = 2m, layered over a FieldCtx with odd m."""

    def __init__(self, base: FieldCtx):
        if base.m % 2 == 0:
            raise ValueError("tower construction requires odd m so {1, w} is a basis")
        self.base = base
        self.m = base.m
        self.n = 2 * base.m
        self.order = 1 << self.n
        self.mask = self.order - 1
        self.omega = 1 << self.m          # w
        self.omega2 = (1 << self.m) | 1   # w^2 = w + 1

    def __eq__(self, other):
        return isinstance(other, TowerCtx) and self.base == other.base

    def __hash__(self):
        return hash(("tower", self.base))

    def __repr__(self):
        return f"TowerCtx(n={self.n}, base={self.base!r})"

    # -- encoding

    def join(self, x: int, y: int) -> int:
        return x | (y << self.m)

    def split(self, z: int) -> tuple[int, int]:
        return z & self.base.mask, z >> self.m

    def embed(self, x: int) -> int:
        """Embed a base-field element (y = 0)."""
        return x

    # -- arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def bar(self, z: int) -> int:
        """Conjugation z -> z^(2^m), i.e. (x, y) -> (x + y, y)."""
        y = z >> self.m
        return z ^ y

    def mul(self, z1: int, z2: int) -> int:
        m = self.m
        fm = self.base.mul
        x1, y1 = z1 & self.base.mask, z1 >> m
        x2, y2 = z2 & self.base.mask, z2 >> m
        xx = fm(x1, x2)
        yy = fm(y1, y2)
        # Karatsuba: x1*y2 + x2*y1 = (x1+y1)(x2+y2) + xx + yy
        cross = fm(x1 ^ y1, x2 ^ y2) ^ xx ^ yy
        return (xx ^ yy) | ((cross ^ yy) << m)

    def sqr(self, z: int) -> int:
        m = self.m
        x, y = z & self.base.mask, z >> m
        x2 = self.base.mul(x, x)
        y2 = self.base.mul(y, y)
        return (x2 ^ y2) | (y2 << m)

    def norm(self, z: int) -> int:
        """z * bar(z) in the base field: x^2 + xy + y^2."""
        x, y = z & self.base.mask, z >> self.m
        return self.base.mul(x, x) ^ self.base.mul(x, y) ^ self.base.mul(y, y)

    def inv(self, z: int) -> int:
        if z == 0:
            raise DivisionByZero("inverse of 0 in GF(2^n)")
        ninv = self.base.inv(self.norm(z))
        x, y = z & self.base.mask, z >> self.m
        # bar(z) / norm(z)
        return self.base.mul(x ^ y, ninv) | (self.base.mul(y, ninv) << self.m)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, z: int, e: int) -> int:
        if e < 0:
            z = self.inv(z)
            e = -e
        if z == 0:
            return 0 if e else 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, z)
            z = self.sqr(z)
            e >>= 1
        return r

    def frob_pow(self, z: int, k: int) -> int:
        """z^(2^k); the Frobenius has order n = 2m here."""
        for _ in range(k % self.n):
            z = self.sqr(z)
        return z

    # -- traces

    def trace_rel(self, z: int) -> int:
        """Relative trace to the base field: z + bar(z) = y."""
        return z >> self.m

    def trace_abs_n(self, z: int) -> int:
        """Absolute trace of GF(2^n) via transitivity: Tr_m(z + bar(z))."""
        return self.base.trace_abs(z >> self.m)

    # -- common interface shared with FieldCtx

    @property
    def degree(self) -> int:
        return self.n

    def absolute_trace(self, z: int) -> int:
        return self.trace_abs_n(z)

    def elements(self):
        return range(self.order)
