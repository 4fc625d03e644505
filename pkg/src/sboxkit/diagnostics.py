"""Difference-equation machinery for the univariate quadrinomial F.

For a direction a != 0 the difference F(x+a) + F(x) = b reduces, after
the substitution x -> ax and one conjugate elimination, to a linearized
equation x^(2^k) + mu*bar(x) + (1+mu)*x + nu = 0 whose data (tau_i, v_i,
mu, xi, lambda) all have closed forms in theta and gamma = bar(a)/a.
This module computes every quantity by its defining route and by its
closed form, solves the difference equation exactly, and evaluates the
boomerang trace criteria per element of Z_a = {a, eta_a, a + eta_a}.

Everything here returns pure data; rendering is the CLI's job.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .butterfly import ButterflyParams, F_eval, coeffs
from .errors import ZeroB, ZeroDirection
from .solvers import LInstance, solve_L


@dataclass(frozen=True)
class DiffCoeffs:
    """tau/v coefficient vectors of the reduced difference equation."""

    tau: tuple[int, int, int, int, int]
    v: tuple[int, int, int, int]


@dataclass(frozen=True)
class MuXiLambda:
    mu: int       # tower
    xi: int       # base field
    lam: int      # tower
    gamma: int    # bar(a)/a


def _prep(params: ButterflyParams):
    params.require_odd_k()
    params.require_theta()
    return params.tower, params.base, params.k, coeffs(params).c


def diff_coeffs(params: ButterflyParams, a: int, b: int) -> DiffCoeffs:
    """Coefficients after substituting x -> ax into the difference equation.

    The structural identities (v1+v2+v3 = 0, tau1+tau2 = tau3+tau4 =
    tau5+b, v4 = v1 + tau1*bar(b) + bar(tau2)*b, the three bilinear
    relations, and v1 != 0) are asserted on every call.
    """
    if a == 0:
        raise ZeroDirection("difference direction a must be nonzero")
    tw, base, k, (c1, c2, c3, c4) = _prep(params)
    ab = tw.bar(a)
    ak = tw.frob_pow(a, k)
    abk = tw.bar(ak)
    a2k1 = tw.mul(ak, a)          # a^(2^k+1)
    ab2k1 = tw.mul(abk, ab)       # bar(a)^(2^k+1)
    aabk = tw.mul(a, abk)         # a * bar(a)^(2^k)
    akab = tw.mul(ak, ab)         # a^(2^k) * bar(a)
    t1 = tw.mul(c2, ab2k1) ^ tw.mul(c4, aabk)
    t2 = tw.mul(c1, a2k1) ^ tw.mul(c3, akab)
    t3 = tw.mul(c2, ab2k1) ^ tw.mul(c3, akab)
    t4 = tw.mul(c1, a2k1) ^ tw.mul(c4, aabk)
    t5 = F_eval(params, a) ^ b
    t1b, t2b, t3b, t4b, t5b = (tw.bar(t) for t in (t1, t2, t3, t4, t5))
    v1 = tw.mul(t1, t1b) ^ tw.mul(t2, t2b)
    v2 = tw.mul(t1, t4b) ^ tw.mul(t2b, t3)
    v3 = tw.mul(t1, t3b) ^ tw.mul(t2b, t4)
    v4 = tw.mul(t1, t5b) ^ tw.mul(t2b, t5)
    assert v1 ^ v2 ^ v3 == 0
    assert t1 ^ t2 == t3 ^ t4 == t5 ^ b
    assert v4 == v1 ^ tw.mul(t1, tw.bar(b)) ^ tw.mul(t2b, b)
    assert tw.mul(t1, tw.bar(v3)) ^ tw.mul(t2, v2) ^ tw.mul(t3, v1) == 0
    assert tw.mul(t1, tw.bar(v2)) ^ tw.mul(t2, v3) ^ tw.mul(t4, v1) == 0
    assert tw.mul(t1, tw.bar(v4)) ^ tw.mul(t2, v4) ^ tw.mul(t5, v1) == 0
    assert v1 != 0, "v1 vanished: contradicts the v1-nonvanishing lemma"
    return DiffCoeffs((t1, t2, t3, t4, t5), (v1, v2, v3, v4))


def _mu_closed(params: ButterflyParams, gamma: int) -> int:
    """mu = v2/v1 in closed form, as a rational function of theta and gamma."""
    tw, base, k, _ = _prep(params)
    th = params.theta
    th2 = base.mul(th, th)
    th2k = base.frob_pow(th2, k)                      # (theta^2)^(2^k)
    thk = base.frob_pow(th, k)                        # theta^(2^k)
    gk = tw.frob_pow(gamma, k)
    w = base.mul(base.frob_pow(th ^ 1, k), th ^ 1) ^ 1  # (theta+1)^(2^k+1) + 1
    num = tw.mul(tw.embed(base.mul(th2, thk ^ 1)), gk)
    num ^= tw.mul(tw.embed(base.mul(th2k, th ^ 1)), gamma)
    num ^= tw.embed(base.mul(w, w))
    den = base.mul(th2k, _xi_denominator(params, gamma))
    return tw.mul(num, tw.inv(tw.embed(den)))


def _xi_denominator(params: ButterflyParams, gamma: int) -> int:
    """(theta+1)(bar(gamma)+gamma) + theta^2, a base-field element."""
    tw, base = params.tower, params.base
    th = params.theta
    grel = tw.trace_rel(gamma)
    return base.mul(th ^ 1, grel) ^ base.mul(th, th)


def mu_xi_lambda(params: ButterflyParams, a: int) -> MuXiLambda:
    """The closed forms, cross-checked against the v2/v1 definition.

    xi = ((theta+1)(bar(gamma)+gamma) + theta^2) / theta^2 and
    lambda = (1+theta)*bar(a)/(a*theta^2) + 1/theta^2 + omega satisfy
    lambda^(2^k) + lambda = mu*xi and lambda + bar(lambda) = xi, and
    1 + mu + bar(mu) = xi^(2^k - 1) never vanishes.
    """
    if a == 0:
        raise ZeroDirection("direction a must be nonzero")
    tw, base, k, _ = _prep(params)
    th = params.theta
    gamma = tw.mul(tw.bar(a), tw.inv(a))
    mu = _mu_closed(params, gamma)
    dc = diff_coeffs(params, a, 0)
    assert mu == tw.mul(dc.v[1], tw.inv(dc.v[0])), "closed-form mu != v2/v1"
    th2inv = base.inv(base.mul(th, th))
    xi = base.mul(_xi_denominator(params, gamma), th2inv)
    lam = tw.mul(tw.embed(base.mul(th ^ 1, th2inv)), gamma) ^ tw.embed(th2inv) ^ tw.omega
    assert tw.frob_pow(lam, k) ^ lam == tw.mul(mu, tw.embed(xi))
    assert tw.trace_rel(lam) == xi
    s = 1 ^ mu ^ tw.bar(mu)
    assert s != 0 and s == tw.embed(_pow_2km1(base, xi, k))
    return MuXiLambda(mu, xi, lam, gamma)


def _pow_2km1(base, x: int, k: int) -> int:
    """x^(2^k - 1)."""
    return base.mul(base.frob_pow(x, k), base.inv(x)) if x else 0


def solve_difference(params: ButterflyParams, a: int, b: int) -> set[int]:
    """All x with F(x+a) + F(x) = b; the size is always 0 or 4.

    Forms the reduced linearized equation (mu = v2/v1, nu = v4/v1), hands
    it to the exact solver and maps roots back through x -> ax.
    """
    if a == 0:
        raise ZeroDirection("direction a must be nonzero")
    tw, _, k, _ = _prep(params)
    dc = diff_coeffs(params, a, b)
    v1, v2, _, v4 = dc.v
    v1inv = tw.inv(v1)
    mu = tw.mul(v2, v1inv)
    nu = tw.mul(v4, v1inv)
    t1, t2 = dc.tau[0], dc.tau[1]
    assert nu == tw.mul(tw.mul(t1, tw.bar(b)) ^ tw.mul(tw.bar(t2), b), v1inv) ^ 1
    roots = solve_L(LInstance(tw, k, mu, nu))
    assert len(roots) in (0, 4), "difference equation root count outside {0, 4}"
    return {tw.mul(a, r) for r in roots}


def kernel_H(params: ButterflyParams, a: int) -> set[int]:
    """Kernel {0, a, eta_a, a + eta_a} of H_a(x) = F(x+a) + F(x) + F(a)."""
    mxl = mu_xi_lambda(params, a)
    tw = params.tower
    eta = tw.mul(a, mxl.lam)
    out = {0, a, eta, a ^ eta}
    assert len(out) == 4
    return out


def eta_of(params: ButterflyParams, a: int) -> int:
    """eta_a = a * lambda = phi(a)."""
    return params.tower.mul(a, mu_xi_lambda(params, a).lam)


# -- the Z_a invariants -------------------------------------------------------


def E_eval(params: ButterflyParams, z: int) -> int:
    """E(z) = (theta+1)(z^2 + bar(z)^2) + theta^2 * z * bar(z), base-valued."""
    tw, base, _, _ = _prep(params)
    th = params.theta
    z2rel = tw.trace_rel(tw.sqr(z))       # z^2 + bar(z)^2
    return base.mul(th ^ 1, z2rel) ^ base.mul(base.mul(th, th), tw.norm(z))


def phi_eval(params: ButterflyParams, z: int) -> int:
    """phi(z) = (1+theta)*bar(z)/theta^2 + (1/theta^2 + omega)*z."""
    tw, base, _, _ = _prep(params)
    th = params.theta
    th2inv = base.inv(base.mul(th, th))
    out = tw.mul(tw.embed(base.mul(th ^ 1, th2inv)), tw.bar(z))
    return out ^ tw.mul(tw.embed(th2inv) ^ tw.omega, z)


def H_eval(params: ButterflyParams, z: int) -> int:
    """H(z) = bar(phi(z))^(2^k) (c2*bar(z) + c4*z) + phi(z)^(2^k) (c1*z + c3*bar(z))."""
    tw, base, k, (c1, c2, c3, c4) = _prep(params)
    ph = phi_eval(params, z)
    zb = tw.bar(z)
    out = tw.mul(tw.frob_pow(tw.bar(ph), k), tw.mul(c2, zb) ^ tw.mul(c4, z))
    out ^= tw.mul(tw.frob_pow(ph, k), tw.mul(c1, z) ^ tw.mul(c3, zb))
    return out


# -- boomerang trace reports --------------------------------------------------


@dataclass(frozen=True)
class ZEntry:
    """Per-z data for one element of Z_a."""

    z: int
    gamma: int
    mu: int
    nu: int
    xi: int
    lam: int
    delta: int
    tr_delta: int
    tr_delta_closed: int
    tr_second: int
    tr_second_closed: int
    count: int                    # solutions of H_z(x) = F(z) + b: 0 or 4

    def as_dict(self) -> dict:
        return {
            "z": f"{self.z:#x}", "gamma": f"{self.gamma:#x}",
            "mu": f"{self.mu:#x}", "nu": f"{self.nu:#x}",
            "xi": f"{self.xi:#x}", "lambda": f"{self.lam:#x}",
            "delta": f"{self.delta:#x}",
            "tr_delta": self.tr_delta, "tr_second": self.tr_second,
            "count": self.count,
        }


@dataclass(frozen=True)
class BoomerangReport:
    a: int
    b: int
    eta_a: int
    entries: tuple[ZEntry, ZEntry, ZEntry]
    s_count: int                  # sum of per-z counts = S_F(a, b)

    def as_dict(self) -> dict:
        return {
            "a": f"{self.a:#x}", "b": f"{self.b:#x}", "eta_a": f"{self.eta_a:#x}",
            "z_entries": [e.as_dict() for e in self.entries],
            "s_count": self.s_count,
        }


def _nu_closed(params: ButterflyParams, z: int, b: int) -> int:
    """nu_z = 1 + [(c1*bar(z)+c3*z)b + (c2*bar(z)+c4*z)bar(b)] / [z^(2^k) *
    (theta^2)^(2^k) (1+theta+theta^(2^k))^2 E(z)]."""
    tw, base, k, (c1, c2, c3, c4) = _prep(params)
    th = params.theta
    zb = tw.bar(z)
    num = tw.mul(tw.mul(c1, zb) ^ tw.mul(c3, z), b)
    num ^= tw.mul(tw.mul(c2, zb) ^ tw.mul(c4, z), tw.bar(b))
    s = 1 ^ th ^ base.frob_pow(th, k)
    assert s != 0, "1 + theta + theta^(2^k) vanished (impossible for odd m)"
    e = E_eval(params, z)
    assert e != 0, "E(z) vanished on a nonzero z"
    den_base = base.mul(base.frob_pow(base.mul(th, th), k), base.mul(base.mul(s, s), e))
    den = tw.mul(tw.frob_pow(z, k), tw.embed(den_base))
    return 1 ^ tw.mul(num, tw.inv(den))


def boomerang_traces(params: ButterflyParams, a: int, b: int) -> BoomerangReport:
    """Per-z trace criteria over Z_a = {a, eta_a, a + eta_a} for b != 0.

    For each z both routes of each trace are computed and must agree:
    Tr(Delta_z) definitionally and as Tr_n(F(z)*bar(b) / ((1+theta+
    theta^(2^k))^2 E(z)^(2^k+1))); the second criterion definitionally and
    as Tr_n(H(z)*bar(b) / (same denominator)) + 1.  The per-z solution
    count (0 or 4) follows from the two criteria; their sum is S_F(a, b).
    The report also witnesses sum_z Tr(Delta_z) = 0, and that when all
    three Delta-traces vanish every second trace equals 1.
    """
    if a == 0:
        raise ZeroDirection("direction a must be nonzero")
    if b == 0:
        raise ZeroB("boomerang criteria need b != 0")
    tw, base, k, _ = _prep(params)
    th = params.theta
    eta = eta_of(params, a)
    s = 1 ^ th ^ base.frob_pow(th, k)
    entries = []
    for z in (a, eta, a ^ eta):
        mxl = mu_xi_lambda(params, z)
        nu = _nu_closed(params, z, b)
        dc = diff_coeffs(params, z, b)
        v1inv = tw.inv(dc.v[0])
        assert nu == tw.mul(dc.v[3], v1inv), "closed-form nu != v4/v1"
        xik = base.frob_pow(mxl.xi, k)
        delta = base.div(tw.trace_rel(nu), xik)
        tr_delta = base.trace_abs(delta)
        e21 = base.mul(base.frob_pow(E_eval(params, z), k), E_eval(params, z))
        den = base.mul(base.mul(s, s), e21)
        tr_delta_closed = tw.trace_abs_n(
            tw.mul(tw.mul(F_eval(params, z), tw.bar(b)), tw.inv(tw.embed(den))))
        assert tr_delta == tr_delta_closed
        tr_second = tw.trace_abs_n(
            tw.div(tw.mul(tw.frob_pow(mxl.lam, k), tw.bar(nu)), tw.embed(xik)))
        tr_second_closed = tw.trace_abs_n(
            tw.mul(tw.mul(H_eval(params, z), tw.bar(b)), tw.inv(tw.embed(den)))) ^ 1
        assert tr_second == tr_second_closed
        count = 4 if (tr_delta == 0 and tr_second == 0) else 0
        entries.append(ZEntry(z, mxl.gamma, mxl.mu, nu, mxl.xi, mxl.lam, delta,
                              tr_delta, tr_delta_closed, tr_second,
                              tr_second_closed, count))
    assert entries[0].tr_delta ^ entries[1].tr_delta ^ entries[2].tr_delta == 0
    if all(e.tr_delta == 0 for e in entries):
        assert all(e.tr_second == 1 for e in entries)
    s_count = sum(e.count for e in entries)
    assert s_count <= 4
    return BoomerangReport(a, b, eta, tuple(entries), s_count)
