"""Butterfly constructions over GF(2^m) x GF(2^m) and their univariate form.

The bivariate kernel is R(x, y) = (x + alpha*y)^(2^k+1) + (beta*y)^(2^k+1).
From it we build the closed butterfly V(x, y) = (R(x, y), R(y, x)) and the
open butterfly H(x, y) = (R(y, Ry^-1(x)), Ry^-1(x)), both as lookup tables
over the canonical encoding x + 2^m * y.

For odd k the closed butterfly is affine equivalent to the univariate
quadrinomial

    F(x) = c1*x^(2^k+1) + c2*bar(x)^(2^k+1) + c3*x^(2^k)*bar(x)
           + c4*x*bar(x)^(2^k)

on GF(2^(2m)), with coefficients driven either by a single base-field
parameter theta (through (alpha, beta) = (1, theta^2) / (1+theta+theta^2))
or by e-coefficients of a raw (alpha, beta) pair via c_i = e_i *
alpha^-(2^k+1).  Both coefficient routes are computed and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import NotCoprime, ThetaYieldsTrivialPair
from .gf2m import FieldCtx
from .tower import TowerCtx
from .analysis import SBoxTable


def normalize_k(m: int, k: int) -> int:
    """Return k if odd, else the equivalent odd exponent m - k."""
    if not 1 <= k < m or gcd(k, m) != 1:
        raise NotCoprime(f"k={k} must satisfy 1 <= k < m and gcd(k, m) = 1")
    return k if k % 2 == 1 else m - k


def theta_to_alpha_beta(base: FieldCtx, theta: int) -> tuple[int, int]:
    """(alpha, beta) = (1/(1+theta+theta^2), theta^2/(1+theta+theta^2)).

    The pair always satisfies alpha^2 + beta^2 + alpha*beta + 1 = 0; the
    denominator never vanishes for odd m.  theta = 1 collapses to the
    excluded pair (1, 1).
    """
    if theta == 0:
        raise ThetaYieldsTrivialPair("theta must be nonzero")
    if theta == 1:
        raise ThetaYieldsTrivialPair("theta = 1 gives alpha = beta = 1")
    s = 1 ^ theta ^ base.mul(theta, theta)
    sinv = base.inv(s)
    alpha = sinv
    beta = base.mul(base.mul(theta, theta), sinv)
    assert condition_holds(base, alpha, beta)
    return alpha, beta


def condition_holds(base: FieldCtx, alpha: int, beta: int) -> bool:
    """Whether alpha^2 + beta^2 + alpha*beta + 1 = 0."""
    return base.mul(alpha, alpha) ^ base.mul(beta, beta) ^ base.mul(alpha, beta) ^ 1 == 0


@dataclass(frozen=True)
class ButterflyParams:
    """One fully determined instance.

    theta is present when built through the parametrization (required for
    the univariate form and all diagnostics); alpha/beta are present when a
    bivariate pair is known (always, except theta = 1).  Bivariate tables
    accept any k coprime to m; the univariate machinery needs odd k.
    """

    tower: TowerCtx
    k: int
    alpha: int | None = None
    beta: int | None = None
    theta: int | None = None
    condition: bool | None = None

    def __post_init__(self):
        m = self.tower.m
        if not 1 <= self.k < m or gcd(self.k, m) != 1:
            raise NotCoprime(f"k={self.k} invalid for m={m}")
        if self.alpha is None and self.theta is None:
            raise ValueError("need theta or an (alpha, beta) pair")

    @property
    def base(self) -> FieldCtx:
        return self.tower.base

    def require_odd_k(self):
        if self.k % 2 == 0:
            raise NotCoprime(f"k={self.k} is even; univariate form needs odd k "
                             f"(use normalize_k)")

    def require_pair(self) -> tuple[int, int]:
        if self.alpha is None:
            raise ValueError("instance has no (alpha, beta) pair (theta = 1?)")
        return self.alpha, self.beta

    def require_theta(self) -> int:
        if self.theta is None:
            raise ValueError("instance was built from a raw pair; theta unknown")
        return self.theta


def from_theta(base_or_tower, k: int, theta: int, normalize: bool = True) -> ButterflyParams:
    """Primary constructor: theta in GF(2^m)^* indexes the instance.

    theta = 1 is admitted for the univariate form only (no valid bivariate
    pair exists there).
    """
    tower = base_or_tower if isinstance(base_or_tower, TowerCtx) else TowerCtx(base_or_tower)
    if normalize:
        k = normalize_k(tower.m, k)
    if theta == 0 or theta >= tower.base.order:
        raise ValueError("theta must be a nonzero base-field element")
    if theta == 1:
        return ButterflyParams(tower, k, theta=1, condition=None)
    alpha, beta = theta_to_alpha_beta(tower.base, theta)
    return ButterflyParams(tower, k, alpha=alpha, beta=beta, theta=theta, condition=True)


def from_alpha_beta(base_or_tower, k: int, alpha: int, beta: int,
                    normalize: bool = False) -> ButterflyParams:
    """Raw-pair constructor, used by the necessity sweeps.

    alpha and beta must lie outside GF(2); the instance records whether
    the pair satisfies alpha^2 + beta^2 + alpha*beta + 1 = 0.  When it
    does, the matching theta = (alpha + beta + 1)/alpha is recovered so
    the univariate machinery applies.
    """
    tower = base_or_tower if isinstance(base_or_tower, TowerCtx) else TowerCtx(base_or_tower)
    base = tower.base
    if normalize:
        k = normalize_k(tower.m, k)
    if alpha in (0, 1) or beta in (0, 1):
        raise ValueError("alpha, beta must lie outside GF(2)")
    cond = condition_holds(base, alpha, beta)
    theta = None
    if cond:
        theta = base.div(alpha ^ beta ^ 1, alpha)
        t_alpha, t_beta = theta_to_alpha_beta(base, theta)
        assert (t_alpha, t_beta) == (alpha, beta)
    return ButterflyParams(tower, k, alpha=alpha, beta=beta, theta=theta, condition=cond)


# -- bivariate side -----------------------------------------------------------


def _pow_2k1(base: FieldCtx, x: int, k: int) -> int:
    """x^(2^k + 1)."""
    return base.mul(base.frob_pow(x, k), x)


def R_eval(params: ButterflyParams, x: int, y: int) -> int:
    alpha, beta = params.require_pair()
    base, k = params.base, params.k
    return _pow_2k1(base, x ^ base.mul(alpha, y), k) ^ _pow_2k1(base, base.mul(beta, y), k)


def closed_butterfly_table(params: ButterflyParams) -> SBoxTable:
    """V(x, y) = (R(x, y), R(y, x)) over the canonical encoding.

    A permutation exactly when the pair condition holds (Remark-2 sweeps
    rely on building it for failing pairs too).
    """
    tw = params.tower
    order = tw.base.order
    m = tw.m
    rows = [[R_eval(params, x, y) for x in range(order)] for y in range(order)]
    out = np.empty(tw.order, dtype=np.int32)
    for y in range(order):
        ry = rows[y]
        for x in range(order):
            out[x | (y << m)] = ry[x] | (rows[x][y] << m)
    return SBoxTable(tw.n, out)


def open_butterfly_table(params: ButterflyParams) -> SBoxTable:
    """H(x, y) = (R(y, u), u) with u = Ry^-1(x); always an involution.

    Ry is inverted in closed form: u = (x + (beta*y)^(2^k+1))^d + alpha*y
    with d the inverse of 2^k + 1 modulo 2^m - 1.
    """
    alpha, beta = params.require_pair()
    tw, base, k = params.tower, params.base, params.k
    order, m = base.order, tw.m
    d = pow((1 << k) + 1, -1, base.order - 1)
    out = np.empty(tw.order, dtype=np.int32)
    for y in range(order):
        w = _pow_2k1(base, base.mul(beta, y), k)
        ay = base.mul(alpha, y)
        for x in range(order):
            u = base.pow(x ^ w, d) ^ ay
            out[x | (y << m)] = R_eval(params, y, u) | (u << m)
    return SBoxTable(tw.n, out)


# -- univariate side ----------------------------------------------------------


@dataclass(frozen=True)
class CoeffSet:
    """e- and c-coefficients of the quadrinomial; e is None when no
    bivariate pair exists (theta = 1)."""

    e: tuple[int, int, int, int] | None
    c: tuple[int, int, int, int]


@lru_cache(maxsize=None)
def coeffs(params: ButterflyParams) -> CoeffSet:
    """Both coefficient tuples, cross-checked when both routes exist."""
    params.require_odd_k()
    base, k = params.base, params.k
    e = None
    c_from_e = None
    if params.alpha is not None and params.condition:
        alpha, beta = params.alpha, params.beta
        ak = base.frob_pow(alpha, k)
        a2k1 = _pow_2k1(base, alpha, k)
        b2k1 = _pow_2k1(base, beta, k)
        e = (1 ^ alpha ^ a2k1 ^ b2k1,
             1 ^ ak ^ a2k1 ^ b2k1,
             1 ^ alpha ^ ak,
             alpha ^ ak ^ a2k1 ^ b2k1)
        scale = base.inv(a2k1)
        c_from_e = tuple(base.mul(ei, scale) for ei in e)
    c = None
    if params.theta is not None:
        th = params.theta
        th2 = base.mul(th, th)
        s = 1 ^ th ^ th2                      # 1 + theta + theta^2
        t = th ^ th2                          # theta + theta^2
        t2k1 = _pow_2k1(base, t, k)           # (theta+theta^2)^(2^k+1)
        th2k1sq = base.mul(_pow_2k1(base, th, k), _pow_2k1(base, th, k))  # theta^(2(2^k+1))
        c = (s ^ t2k1 ^ th2k1sq,
             base.frob_pow(s, k) ^ t2k1 ^ th2k1sq,
             1 ^ t2k1,
             _pow_2k1(base, s, k) ^ t2k1 ^ th2k1sq)
    if c is not None and c_from_e is not None:
        assert c == c_from_e, "theta-form and e-form coefficients disagree"
    return CoeffSet(e, c if c is not None else c_from_e)


def F_eval(params: ButterflyParams, z: int) -> int:
    """The quadrinomial at one point of GF(2^(2m))."""
    cs = coeffs(params).c
    return _F_eval_c(params.tower, params.k, cs, z)


def _F_eval_c(tw: TowerCtx, k: int, cs, z: int) -> int:
    c1, c2, c3, c4 = cs
    zb = tw.bar(z)
    zk = tw.frob_pow(z, k)
    zbk = tw.bar(zk)
    out = tw.mul(tw.embed(c1), tw.mul(zk, z))
    out ^= tw.mul(tw.embed(c2), tw.mul(zbk, zb))
    out ^= tw.mul(tw.embed(c3), tw.mul(zk, zb))
    out ^= tw.mul(tw.embed(c4), tw.mul(z, zbk))
    return out


def univariate_table(params: ButterflyParams) -> SBoxTable:
    params.require_odd_k()
    tw = params.tower
    cs = coeffs(params).c
    out = np.fromiter(
        (_F_eval_c(tw, params.k, cs, z) for z in range(tw.order)),
        dtype=np.int32, count=tw.order)
    return SBoxTable(tw.n, out)


def G_eval(params: ButterflyParams, z: int) -> int:
    """The e-coefficient quadrinomial; F(z) = alpha^-(2^k+1) * G(z)."""
    e = coeffs(params).e
    if e is None:
        raise ValueError("no e-coefficients without a bivariate pair")
    return _F_eval_c(params.tower, params.k, e, z)
