import itertools
import random

import pytest

from sboxkit import (
    E_eval,
    F_eval,
    H_eval,
    bct_lqsl,
    boomerang_traces,
    diff_coeffs,
    from_theta,
    kernel_H,
    mu_xi_lambda,
    solve_difference,
    univariate_table,
)
from sboxkit.diagnostics import eta_of, phi_eval
from sboxkit.errors import ZeroB, ZeroDirection
from sboxkit.solvers import LInstance, solve_L

from oracles import tau_equation_eval


def brute_difference(params, a, b):
    tw = params.tower
    return {x for x in range(tw.order)
            if F_eval(params, x ^ a) ^ F_eval(params, x) == b}


def test_zero_direction_rejected(t6):
    p = from_theta(t6, 1, 2)
    with pytest.raises(ZeroDirection):
        diff_coeffs(p, 0, 1)
    with pytest.raises(ZeroDirection):
        solve_difference(p, 0, 1)
    with pytest.raises(ZeroB):
        boomerang_traces(p, 3, 0)


def test_diff_coeff_properties(t6, t10):
    """Properties (i)-(iv) and v1 != 0 are asserted inside diff_coeffs;
    exercise them exhaustively at n = 6 and sampled at n = 10."""
    for theta in range(1, 8):
        p = from_theta(t6, 1, theta)
        for a in range(1, 64):
            diff_coeffs(p, a, a ^ 17)
    rnd = random.Random(0)
    for k in (1, 3):
        for _ in range(250):
            p = from_theta(t10, k, rnd.randrange(1, 32))
            diff_coeffs(p, rnd.randrange(1, 1024), rnd.randrange(1024))


def test_diff_coeff_b0(t6):
    # b = 0: tau5 = F(a) and v4 = v1
    p = from_theta(t6, 1, 2)
    for a in range(1, 64):
        dc = diff_coeffs(p, a, 0)
        assert dc.tau[4] == F_eval(p, a)
        assert dc.v[3] == dc.v[0]


def test_v1_nonzero_all_directions_n6(t6):
    for theta in range(1, 8):
        p = from_theta(t6, 1, theta)
        for a in range(1, 64):
            assert diff_coeffs(p, a, 0).v[0] != 0


def test_mu_xi_lambda_base_field_direction(t6):
    # a in the base field: gamma = 1, xi = 1
    p = from_theta(t6, 1, 5)
    for a in range(1, 8):
        mxl = mu_xi_lambda(p, a)
        assert mxl.gamma == 1 and mxl.xi == 1


def test_mu_xi_lambda_invariants_exhaustive(t6):
    """Closed forms vs definitional routes for every a; the invariants
    (lambda equation, relative trace, nonvanishing) assert internally."""
    for theta in range(1, 8):
        p = from_theta(t6, 1, theta)
        tw = p.tower
        for a in range(1, 64):
            mxl = mu_xi_lambda(p, a)
            dc = diff_coeffs(p, a, 0)
            assert mxl.mu == tw.mul(dc.v[1], tw.inv(dc.v[0]))
            assert tw.frob_pow(mxl.lam, 1) ^ mxl.lam \
                == tw.mul(mxl.mu, tw.embed(mxl.xi))
            assert tw.trace_rel(mxl.lam) == mxl.xi


def test_lemma31_same_roots_exhaustive_n6(t6):
    """The tau-equation and the reduced linearized equation have identical
    root sets for every (a, b) at n = 6."""
    p = from_theta(t6, 1, 2)
    tw = p.tower
    for a in range(1, 64):
        for b in range(0, 64, 5):
            dc = diff_coeffs(p, a, b)
            v1inv = tw.inv(dc.v[0])
            mu = tw.mul(dc.v[1], v1inv)
            nu = tw.mul(dc.v[3], v1inv)
            tau_roots = {x for x in range(64)
                         if tau_equation_eval(tw, 1, dc.tau, x) == 0}
            assert tau_roots == solve_L(LInstance(tw, 1, mu, nu))


def test_lemma31_sampled_n10(t10):
    p = from_theta(t10, 3, 9)
    tw = p.tower
    rnd = random.Random(1)
    for _ in range(30):
        a, b = rnd.randrange(1, 1024), rnd.randrange(1024)
        dc = diff_coeffs(p, a, b)
        v1inv = tw.inv(dc.v[0])
        mu, nu = tw.mul(dc.v[1], v1inv), tw.mul(dc.v[3], v1inv)
        tau_roots = {x for x in range(1024)
                     if tau_equation_eval(tw, 3, dc.tau, x) == 0}
        assert tau_roots == solve_L(LInstance(tw, 3, mu, nu))


def test_solve_difference_brute_n6(t6):
    p = from_theta(t6, 1, 2)
    rnd = random.Random(2)
    nonzero = 0
    for _ in range(300):
        a, b = rnd.randrange(1, 64), rnd.randrange(64)
        got = solve_difference(p, a, b)
        assert got == brute_difference(p, a, b)
        assert len(got) in (0, 4)
        nonzero += bool(got)
    assert nonzero > 0


def test_difference_count_law_exhaustive_n6(t6):
    """|solutions| in {0, 4} for every (a, b) pair (63 x 64), theta = g."""
    p = from_theta(t6, 1, 2)
    for a in range(1, 64):
        for b in range(64):
            assert len(solve_difference(p, a, b)) in (0, 4)


def test_permutation_via_b0(t6, t10):
    # F(x+a) + F(x) = 0 has no solutions: F is a permutation
    for tw, thetas, k in ((t6, range(1, 8), 1), (t10, (2, 11, 30), 3)):
        for theta in thetas:
            p = from_theta(tw, k, theta)
            for a in (1, tw.order // 3, tw.order - 1):
                assert solve_difference(p, a, 0) == set()


def test_kernel_H_exhaustive(t6):
    for theta in range(1, 8):
        p = from_theta(t6, 1, theta)
        for a in range(1, 64):
            ker = kernel_H(p, a)
            eta = eta_of(p, a)
            assert ker == {0, a, eta, a ^ eta}
            Fa = F_eval(p, a)
            brute = {x for x in range(64)
                     if F_eval(p, x ^ a) ^ F_eval(p, x) ^ Fa == 0}
            assert ker == brute


def test_eta_is_phi_of_a(t6):
    p = from_theta(t6, 1, 3)
    for a in range(1, 64):
        assert eta_of(p, a) == phi_eval(p, a)


def test_E_properties(t6):
    p = from_theta(t6, 1, 2)
    assert E_eval(p, 0) == 0
    for z in range(1, 64):
        e = E_eval(p, z)
        assert e != 0
        assert e == E_eval(p, t6.bar(z))
        assert e < 8  # base-field valued


def test_E_invariance_on_Za(t6):
    for theta in range(1, 8):
        p = from_theta(t6, 1, theta)
        for a in range(1, 64):
            eta = eta_of(p, a)
            assert E_eval(p, a) == E_eval(p, eta) == E_eval(p, a ^ eta) != 0


def test_H_F_identities(t6, t10):
    for tw, thetas, k, directions in (
            (t6, range(1, 8), 1, range(1, 64)),
            (t10, (2, 9, 31), 1, [1, 77, 500, 1023]),
            (t10, (2, 9, 31), 3, [3, 100, 999])):
        for theta in thetas:
            p = from_theta(tw, k, theta)
            for a in directions:
                eta = eta_of(p, a)
                assert H_eval(p, a) == F_eval(p, a ^ eta)
                assert H_eval(p, eta) == F_eval(p, a)
                assert H_eval(p, a ^ eta) == F_eval(p, eta)


def test_sum_F_over_Za_vanishes(t6):
    for theta in range(1, 8):
        p = from_theta(t6, 1, theta)
        for a in range(1, 64):
            eta = eta_of(p, a)
            assert F_eval(p, a) ^ F_eval(p, eta) ^ F_eval(p, a ^ eta) == 0


def test_boomerang_traces_exhaustive_n6(t6):
    """Every closed-form/definitional agreement plus the aggregate facts
    assert inside boomerang_traces; S_F from the criteria matches both the
    pair count and the per-z brute counts.  Both trace patterns occur."""
    p = from_theta(t6, 1, 2)
    F = univariate_table(p)
    all_zero = one_zero = 0
    for a, b in itertools.product(range(1, 64), range(1, 64)):
        rep = boomerang_traces(p, a, b)
        assert rep.s_count == bct_lqsl(F, a, b)
        for e in rep.entries:
            assert e.count in (0, 4)
            assert e.count == len(solve_difference(p, e.z, b))
        zeros = sum(1 for e in rep.entries if e.tr_delta == 0)
        assert zeros in (1, 3)
        if zeros == 3:
            all_zero += 1
            assert rep.s_count == 0
        else:
            one_zero += 1
    assert all_zero > 0 and one_zero > 0


def test_boomerang_traces_sampled_n10(t10):
    rnd = random.Random(5)
    for k in (1, 3):
        for _ in range(150):
            p = from_theta(t10, k, rnd.randrange(1, 32))
            rep = boomerang_traces(p, rnd.randrange(1, 1024),
                                   rnd.randrange(1, 1024))
            assert rep.s_count in (0, 4)
            assert sum(e.tr_delta for e in rep.entries) % 2 == 0
