import itertools
import random

import pytest

from sboxkit import (
    LInstance,
    classify_L,
    create_field,
    solve_artin_schreier,
    solve_L,
    solve_quadratic,
)
from sboxkit.errors import NotCoprime, ZeroLinearCoefficient
from sboxkit.solvers import _xi_of

from oracles import enumerate_L_roots, L_eval


def quad_roots_brute(ctx, a, b):
    return {x for x in ctx.elements()
            if ctx.mul(x, x) ^ ctx.mul(a, x) ^ b == 0}


def test_quadratic_examples(f8):
    assert solve_quadratic(f8, 1, 1) == set()   # Tr(1) = 1 for odd m
    assert solve_quadratic(f8, 1, 0) == {0, 1}
    with pytest.raises(ZeroLinearCoefficient):
        solve_quadratic(f8, 0, 3)


def test_quadratic_brute_gf64(t6):
    rnd = random.Random(0)
    for _ in range(200):
        a, b = rnd.randrange(1, 64), rnd.randrange(64)
        roots = solve_quadratic(t6, a, b)
        assert roots == quad_roots_brute(t6, a, b)
        assert bool(roots) == (t6.trace_abs_n(t6.div(b, t6.mul(a, a))) == 0)
        if roots:
            r1, r2 = sorted(roots)
            assert r1 ^ r2 == a


def test_artin_schreier_examples(f8):
    assert solve_artin_schreier(f8, 1, 0) == {0, 1}
    g = 0b010
    assert solve_artin_schreier(f8, 1, f8.mul(g, g) ^ g) == {g, g ^ 1}
    one_trace = next(a for a in range(8) if f8.trace_abs(a) == 1)
    assert solve_artin_schreier(f8, 1, one_trace) == set()


def test_artin_schreier_matches_trace_criterion(f8, t6):
    for ctx, ks in ((f8, (1, 2)), (t6, (1, 5))):
        for k in ks:
            for a in ctx.elements():
                roots = solve_artin_schreier(ctx, k, a)
                brute = {x for x in ctx.elements()
                         if ctx.frob_pow(x, k) ^ x == a}
                assert roots == brute
                assert (len(roots) == 2) == (ctx.absolute_trace(a) == 0)


def test_artin_schreier_not_coprime(t6):
    with pytest.raises(NotCoprime):
        solve_artin_schreier(t6, 2, 1)  # gcd(2, 6) != 1
    with pytest.raises(NotCoprime):
        LInstance(t6, 3, 0, 0)          # k must stay coprime to m
    with pytest.raises(NotCoprime):
        LInstance(t6, 2, 0, 0)          # and odd


def test_L_trivial_instance(t6):
    inst = LInstance(t6, 1, 0, 0)
    cls = classify_L(inst)
    assert cls.count == 2 and cls.branch == "case-1(ii)"
    assert solve_L(inst) == {0, 1}


def test_L_exhaustive_n6(t6):
    """classify_L and solve_L against enumeration: all 2^12 pairs, k = 1."""
    for mu, nu in itertools.product(range(64), repeat=2):
        inst = LInstance(t6, 1, mu, nu)
        brute = enumerate_L_roots(t6, 1, mu, nu)
        assert len(brute) in (0, 2, 4)
        assert classify_L(inst).count == len(brute)
        assert solve_L(inst) == brute


def test_L_four_root_structure(t6):
    """nu = 0 with the lambda branch: roots are {0, 1, lambda, lambda+1};
    with count >= 2, roots pair up as cosets of {0, 1}."""
    seen4 = 0
    for mu in range(64):
        inst = LInstance(t6, 1, mu, 0)
        cls = classify_L(inst)
        roots = solve_L(inst)
        if cls.count == 4:
            seen4 += 1
            assert roots == {0, 1, cls.lam, cls.lam ^ 1}
        for r in roots:
            assert r ^ 1 in roots
    assert seen4 > 0


def test_L_sampled_n10(t10):
    rnd = random.Random(3)
    for k in (1, 3):
        for _ in range(150):
            mu, nu = rnd.randrange(1024), rnd.randrange(1024)
            inst = LInstance(t10, k, mu, nu)
            brute = enumerate_L_roots(t10, k, mu, nu)
            assert classify_L(inst).count == len(brute)
            assert solve_L(inst) == brute
            for r in solve_L(inst):
                assert L_eval(t10, k, mu, nu, r) == 0


def test_lambda_consistency_and_choice_invariance(t6):
    """lambda solves its defining equation; lambda + bar(lambda) is xi or
    xi + 1; and the case-2 criterion does not depend on which of the two
    lambda candidates is used (when Tr(delta) = 0)."""
    base = t6.base
    for mu in range(64):
        s = (1 ^ mu ^ t6.bar(mu)) & 7
        if s == 0:
            continue
        xi = _xi_of(base, 1, s)
        rhs = t6.mul(mu, xi)
        lams = sorted({lam for lam in range(64)
                       if t6.frob_pow(lam, 1) ^ lam == rhs})
        assert len(lams) == 2 and lams[0] ^ 1 == lams[1]
        for lam in lams:
            assert t6.trace_rel(lam) in (xi, xi ^ 1)
        for nu in (0, 9, 33):
            delta = base.div(t6.trace_rel(nu), base.frob_pow(xi, 1))
            if base.trace_abs(delta) != 0:
                continue
            xik = base.frob_pow(xi, 1)
            tr = [t6.trace_abs_n(t6.div(t6.mul(t6.frob_pow(lam, 1), t6.bar(nu)),
                                        xik)) for lam in lams]
            assert tr[0] == tr[1]


def test_kernel_image_duality(t6):
    """For fixed mu the linear part has kernel size kappa in {2, 4}; exactly
    2^n / kappa right-hand sides are solvable, each with kappa roots."""
    for mu in (0, 3, 21, 47, 63):
        kappa = len(solve_L(LInstance(t6, 1, mu, 0)))
        assert kappa in (2, 4)
        solvable = [nu for nu in range(64)
                    if classify_L(LInstance(t6, 1, mu, nu)).count > 0]
        assert len(solvable) == 64 // kappa
        for nu in solvable[:8]:
            assert len(solve_L(LInstance(t6, 1, mu, nu))) == kappa
