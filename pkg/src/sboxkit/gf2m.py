"""Arithmetic in GF(2^m) with polynomial-basis encoding.

Elements are plain ints: bit i is the coefficient of x^i, so the hex
value of an element is its usual S-box-literature notation.  Addition is
xor.  Multiplication is carry-less multiply followed by reduction modulo
an irreducible polynomial; for m <= 16 log/antilog tables are built at
construction and used instead.
"""

from __future__ import annotations

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    ReducibleModulus,
    UnsupportedDegree,
)

# Built-in irreducible moduli, keyed by degree.
DEFAULT_MODULI = {
    3: 0b1011,            # x^3 + x + 1
    5: 0b100101,          # x^5 + x^2 + 1
    7: 0b10000011,        # x^7 + x + 1
    9: 0b1000000011,      # x^9 + x + 1
    11: 0b100000000101,   # x^11 + x^2 + 1
}

_TABLE_LIMIT = 16  # log/antilog tables only below this many bits


def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(p: int, m: int) -> int:
    """Remainder of polynomial p modulo polynomial m over GF(2)."""
    dm = _pdeg(m)
    while p.bit_length() - 1 >= dm and p:
        p ^= m << (p.bit_length() - 1 - dm)
    return p


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    p = 0
    while b:
        if b & 1:
            p ^= a
        a <<= 1
        b >>= 1
    return p


def is_irreducible(modulus: int) -> bool:
    """Check irreducibility over GF(2).

    A degree-m polynomial is irreducible iff it shares no factor with
    x^(2^i) + x for 1 <= i <= m/2 (that product covers every irreducible
    polynomial of degree <= m/2, and a reducible degree-m polynomial must
    have a factor of degree <= m/2).
    """
    m = _pdeg(modulus)
    if m < 1 or not modulus & 1:
        return False
    r = 0b10  # the polynomial x
    for _ in range(m // 2):
        r = _pmod(_clmul(r, r), modulus)  # r = x^(2^i) mod modulus
        if _pgcd(r ^ 0b10, modulus) != 1:
            return False
    return True


class FieldCtx:
    """A concrete GF(2^m): degree, modulus and optional lookup tables.

    Immutable after construction; safe to share across workers.
    """

    def __init__(self, m: int, modulus: int, use_tables: bool | None = None):
        if not 2 <= m <= 32:
            raise UnsupportedDegree(f"m={m} outside supported range [2, 32]")
        if _pdeg(modulus) != m:
            raise DegreeMismatch(
                f"modulus {modulus:#x} has degree {_pdeg(modulus)}, expected {m}")
        if not modulus & 1 or not is_irreducible(modulus):
            raise ReducibleModulus(f"modulus {modulus:#x} is reducible over GF(2)")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self.mask = self.order - 1
        self._exp = None
        self._log = None
        if use_tables is None:
            use_tables = m <= _TABLE_LIMIT
        if use_tables:
            self._build_tables()

    # -- identity / hashing (contexts are value objects keyed by (m, modulus))

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __repr__(self):
        return f"FieldCtx(m={self.m}, modulus={self.modulus:#x})"

    # -- table construction

    def _build_tables(self):
        size = self.order - 1
        for g in range(2, self.order):
            exp = [0] * (2 * size)
            log = [0] * self.order
            val = 1
            ok = True
            for i in range(size):
                if val == 1 and i > 0:
                    ok = False  # order of g divides i < size: not a generator
                    break
                exp[i] = val
                log[val] = i
                val = self._mul_raw(val, g)
            if ok and val == 1:
                for i in range(size, 2 * size):
                    exp[i] = exp[i - size]
                self._exp = tuple(exp)
                self._log = tuple(log)
                return
        raise AssertionError("no multiplicative generator found")  # pragma: no cover

    # -- core arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def _mul_raw(self, a: int, b: int) -> int:
        return _pmod(_clmul(a, b), self.modulus)

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(2^m)")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e with e any integer (negative e inverts first)."""
        if e < 0:
            a = self.inv(a)
            e = -e
        if self._exp is not None and a != 0:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        if a == 0:
            return 0 if e else 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frob_pow(self, a: int, k: int) -> int:
        """a^(2^k) by repeated squaring; the Frobenius has order m."""
        for _ in range(k % self.m):
            a = self.mul(a, a)
        return a

    def trace_abs(self, a: int) -> int:
        """Absolute trace to GF(2): sum of the m conjugates of a."""
        acc = 0
        t = a
        for _ in range(self.m):
            acc ^= t
            t = self.mul(t, t)
        return acc

    # -- common interface shared with TowerCtx (used by the equation solvers)

    @property
    def degree(self) -> int:
        return self.m

    def absolute_trace(self, a: int) -> int:
        return self.trace_abs(a)

    def elements(self):
        return range(self.order)


def create_field(m: int, modulus="default", use_tables: bool | None = None) -> FieldCtx:
    """Build a GF(2^m) context; modulus is an int or the keyword "default"."""
    if modulus == "default":
        if m not in DEFAULT_MODULI:
            raise UnsupportedDegree(f"no built-in modulus for m={m}")
        modulus = DEFAULT_MODULI[m]
    return FieldCtx(m, modulus, use_tables=use_tables)
