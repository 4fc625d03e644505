"""Constructive solvers for the three equation families the butterfly
analysis leans on.

* quadratics x^2 + ax + b over any GF(2^e): solvable iff the absolute
  trace of b/a^2 vanishes, and then has exactly two roots differing by a;
* Artin-Schreier equations x^(2^k) + x = a with gcd(k, e) = 1: zero or
  two roots differing by 1;
* the linearized equation L(x) = x^(2^k) + mu*bar(x) + (mu+1)*x + nu = 0
  over GF(2^(2m)), classified without enumeration into 0 / 2 / 4 roots
  and solved exactly by reduction to a base-field equation in z = x +
  bar(x), a compatibility filter, and an Artin-Schreier lift.

Roots are produced through a cached GF(2) linear solve for the map
x -> x^(2^k) + x, so every returned set is exact and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotCoprime, ZeroLinearCoefficient
from .gf2m import FieldCtx
from .tower import TowerCtx


def _solve_gf2_linear(cols: list[int], target: int, nbits: int):
    """Solve M*x = target over GF(2), M given by its column images.

    Returns (particular solution or None, kernel basis as a list of ints).
    """
    rows = []
    for i in range(nbits):
        r = 0
        for j in range(nbits):
            r |= ((cols[j] >> i) & 1) << j
        r |= ((target >> i) & 1) << nbits
        rows.append(r)
    pivots = {}
    for col in range(nbits):
        piv = None
        for r in range(len(rows)):
            if r not in pivots.values() and (rows[r] >> col) & 1:
                piv = r
                break
        if piv is None:
            continue
        pivots[col] = piv
        for r in range(len(rows)):
            if r != piv and (rows[r] >> col) & 1:
                rows[r] ^= rows[piv]
    for r in range(len(rows)):
        if rows[r] == 1 << nbits:
            return None, _kernel_basis(rows, pivots, nbits)
    sol = 0
    for col, r in pivots.items():
        if (rows[r] >> nbits) & 1:
            sol |= 1 << col
    return sol, _kernel_basis(rows, pivots, nbits)


def _kernel_basis(rows, pivots, nbits):
    basis = []
    free = [c for c in range(nbits) if c not in pivots]
    for fc in free:
        v = 1 << fc
        for col, r in pivots.items():
            if (rows[r] >> fc) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


class _ArtinSchreier:
    """Cached solver for x^(2^k) + x = a over a fixed field context."""

    def __init__(self, ctx, k: int):
        n = ctx.degree
        if gcd(k, n) != 1:
            raise NotCoprime(f"k={k} not coprime to field degree {n}")
        self.ctx = ctx
        self.k = k
        cols = [ctx.frob_pow(1 << j, k) ^ (1 << j) for j in range(n)]
        self._cols = cols
        # Row-reduce once with a zero target; per-query we redo elimination
        # on the cached columns (n <= 32, this is cheap and keeps the code
        # obviously correct).
        _, kernel = _solve_gf2_linear(cols, 0, n)
        assert sorted(kernel) == [1], "kernel of x^(2^k)+x must be {0,1}"

    def solve(self, a: int) -> set[int]:
        sol, _ = _solve_gf2_linear(self._cols, a, self.ctx.degree)
        if sol is None:
            return set()
        return {sol, sol ^ 1}


_AS_CACHE: dict[tuple, _ArtinSchreier] = {}


def _as_solver(ctx, k: int) -> _ArtinSchreier:
    key = (ctx, k)
    if key not in _AS_CACHE:
        _AS_CACHE[key] = _ArtinSchreier(ctx, k)
    return _AS_CACHE[key]


def solve_artin_schreier(ctx, k: int, a: int) -> set[int]:
    """All roots of x^(2^k) + x = a; empty or a pair differing by 1."""
    return _as_solver(ctx, k).solve(a)


def solve_quadratic(ctx, a: int, b: int) -> set[int]:
    """All roots of x^2 + ax + b over ctx; requires a != 0.

    Substituting x = a*t reduces to t^2 + t = b/a^2, so the equation is
    solvable (with two roots differing by a) iff that value has zero
    absolute trace.
    """
    if a == 0:
        raise ZeroLinearCoefficient("x^2 + b has a unique root; use the square root")
    c = ctx.mul(b, ctx.inv(ctx.mul(a, a)))
    roots = solve_artin_schreier(ctx, 1, c)
    return {ctx.mul(a, t) for t in roots}


@dataclass(frozen=True)
class LInstance:
    """One equation x^(2^k) + mu*bar(x) + (mu+1)*x + nu = 0 over GF(2^2m)."""

    tower: TowerCtx
    k: int
    mu: int
    nu: int

    def __post_init__(self):
        if self.k % 2 == 0:
            raise NotCoprime(f"k={self.k} must be odd")
        if gcd(self.k, self.tower.m) != 1:
            raise NotCoprime(f"k={self.k} not coprime to m={self.tower.m}")


@dataclass(frozen=True)
class LClassification:
    count: int          # predicted number of roots: 0, 2 or 4
    xi: int             # base-field xi with xi^(2^k-1) = 1 + mu + bar(mu)
    delta: int          # base-field (nu + bar(nu)) / xi^(2^k)
    lam: int            # tower lambda with lambda^(2^k) + lambda = mu*xi
    branch: str         # "case-1(i)" | "case-1(ii)" | "case-2" | "none"


def _xi_of(base: FieldCtx, k: int, s: int) -> int:
    # Unique solution of xi^(2^k - 1) = s in GF(2^m): the exponent map is a
    # bijection because gcd(2^k - 1, 2^m - 1) = 2^gcd(k, m) - 1 = 1.
    e = pow((1 << k) - 1, -1, base.order - 1)
    return base.pow(s, e)


def _lambda_of(tower: TowerCtx, k: int, rhs: int) -> int:
    roots = solve_artin_schreier(tower, k, rhs)
    assert roots, "lambda equation must be solvable (Tr of mu*xi vanishes)"
    return min(roots)


def _compat_sum(tower: TowerCtx, k: int, mu: int, nu: int, z: int) -> int:
    """sum_{i<m} (mu*z + nu)^(2^(ki)) + z, evaluated in the tower."""
    w = tower.mul(mu, tower.embed(z)) ^ nu
    acc = 0
    t = w
    for _ in range(tower.m):
        acc ^= t
        t = tower.frob_pow(t, k)
    return acc ^ tower.embed(z)


def classify_L(inst: LInstance) -> LClassification:
    """Predict the root count of L(x) = 0 without enumerating.

    Case 1+mu+bar(mu) = 0: two roots iff the m-term compatibility sum of
    the unique base-field candidate z matches nu + bar(nu).  Otherwise
    xi, delta and lambda decide: Tr(delta) != 0 gives zero roots;
    lambda + bar(lambda) = xi + 1 gives two; lambda + bar(lambda) = xi
    gives four exactly when Tr_n(lambda^(2^k) * bar(nu) / xi^(2^k)) = 0.
    """
    tw, k, mu, nu = inst.tower, inst.k, inst.mu, inst.nu
    base = tw.base
    s_t = 1 ^ mu ^ tw.bar(mu)
    assert tw.trace_rel(s_t) == 0
    s = s_t & base.mask
    nu_rel = tw.trace_rel(nu)  # nu + bar(nu), a base element

    if s == 0:
        # branch (1)(i): unique z with z^(2^k) = nu + bar(nu)
        t = tw.mul(tw.frob_pow(mu, k), tw.embed(nu_rel)) ^ tw.frob_pow(nu, k)
        acc = 0
        for _ in range(tw.m):
            acc ^= t
            t = tw.frob_pow(t, k)
        if acc == tw.embed(nu_rel):
            return LClassification(2, 0, 0, 0, "case-1(i)")
        return LClassification(0, 0, 0, 0, "none")

    xi = _xi_of(base, k, s)
    xik = base.frob_pow(xi, k)
    delta = base.div(nu_rel, xik)
    lam = _lambda_of(tw, k, tw.mul(mu, tw.embed(xi)))
    lam_rel = tw.trace_rel(lam)  # lambda + bar(lambda)
    assert lam_rel in (xi, xi ^ 1), "lambda + bar(lambda) must be xi or xi+1"

    if base.trace_abs(delta) != 0:
        return LClassification(0, xi, delta, lam, "none")
    if lam_rel == xi ^ 1:
        return LClassification(2, xi, delta, lam, "case-1(ii)")
    second = tw.trace_abs_n(
        tw.div(tw.mul(tw.frob_pow(lam, k), tw.bar(nu)), tw.embed(xik)))
    if second == 0:
        return LClassification(4, xi, delta, lam, "case-2")
    return LClassification(0, xi, delta, lam, "none")


def solve_L(inst: LInstance) -> set[int]:
    """Exact root set of L(x) = 0 via the z-reduction.

    Solve the base-field equation z^(2^k) + (1+mu+bar(mu))*z + nu+bar(nu)
    = 0, keep the z whose compatibility sum vanishes, and lift each
    survivor through x^(2^k) + x = mu*z + nu over the tower.
    """
    tw, k, mu, nu = inst.tower, inst.k, inst.mu, inst.nu
    base = tw.base
    s = (1 ^ mu ^ tw.bar(mu)) & base.mask
    nu_rel = tw.trace_rel(nu)

    if s == 0:
        # unique 2^k-th root in the base field
        zs = [base.frob_pow(nu_rel, (-k) % base.m)]
    else:
        xi = _xi_of(base, k, s)
        delta = base.div(nu_rel, base.frob_pow(xi, k))
        zs = [base.mul(xi, rho) for rho in solve_artin_schreier(base, k, delta)]

    roots: set[int] = set()
    for z in zs:
        if _compat_sum(tw, k, mu, nu, z) != 0:
            continue
        rhs = tw.mul(mu, tw.embed(z)) ^ nu
        lift = solve_artin_schreier(tw, k, rhs)
        assert len(lift) == 2, "surviving z must lift to an Artin-Schreier pair"
        roots |= lift
    return roots
