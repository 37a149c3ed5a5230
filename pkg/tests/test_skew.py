import random

import pytest
import sympy

from qogz.laurent import LaurentRing
from qogz.reflection import AlgebraSpec, embed, enumerate_group, gamma_generators, group_mul, product_generators
from qogz.scalars import Scalar
from qogz.skew import (MonoidResult, SkewAlgebra, act_on_skew, commutator, monoid_generates, render_delta, skew_mul,
                       skew_support)

RING = LaurentRing((2, 1), 1)
ALG = SkewAlgebra(RING)
q = RING.scalar(Scalar.q())


def test_commutation_rule():
    d, x = ALG.delta(1, 1), ALG.x(1, 1)
    assert skew_mul(d, x) == skew_mul(x, d) * q.inverse()
    assert skew_mul(ALG.delta(1, 1, -1), x) == skew_mul(x, ALG.delta(1, 1, -1)) * q
    assert skew_mul(d, ALG.x(2, 1)) == skew_mul(ALG.x(2, 1), d)


def test_commutator_examples():
    d, x = ALG.delta(1, 1), ALG.x(1, 1)
    a = d * x + ALG.x(1, 2) ** 2
    assert commutator(a, a).is_zero()
    assert commutator(d, ALG.x(2, 1)).is_zero()
    assert commutator(d, x) == skew_mul(x, d) * (q.inverse() - 1)


def test_support():
    assert skew_support(ALG.zero()) == set()
    a = ALG.x(1, 1) * ALG.delta(1, 1) + ALG.delta(1, 2)
    assert skew_support(a) == {(1, 0, 0), (0, 1, 0)}
    assert render_delta(RING, (1, 0, -2)) == "d[1,1]^1*d[2,1]^-2"


def test_right_coefficients_normalize():
    c = RING.x(1, 1, 3) + RING.x(2, 1)
    u = (2, 0, 0)
    # delta^u c = shift_u(c) delta^u, x_11 picks up q^{-2} per power
    left = ALG.right(u, c)
    assert left.coefficient(u) == RING.x(1, 1, 3) * RING.q(-6) + RING.x(2, 1)


def random_element(alg, rng, terms=2):
    ring = alg.ring
    out = alg.zero()
    for _ in range(terms):
        u = tuple(rng.randint(-1, 1) for _ in range(alg.dim))
        c = ring.monomial([rng.randint(-2, 2) for _ in range(ring.nx)], rng.randint(-3, 3), qexp=rng.randint(-1, 1))
        if rng.random() < 0.3:
            c = c / (ring.x(1, 1) + rng.randint(1, 3))
        out = out + alg.left(c, u)
    return out


def test_associativity():
    rng = random.Random(1)
    for _ in range(100):
        a, b, c = (random_element(ALG, rng) for _ in range(3))
        assert skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c))
        assert skew_mul(a, b + c) == skew_mul(a, b) + skew_mul(a, c)


def operator_apply(elem, f, syms, qs):
    """(c delta^u)(f) = c * f(q^{-u} x): an independent operator model of the algebra."""
    out = 0
    for u, c in elem.terms.items():
        shifted = f.subs({s: qs ** (-e) * s for s, e in zip(syms, u)}, simultaneous=True)
        out += c.to_sympy() * shifted
    return out


def test_product_matches_operator_composition():
    rng = random.Random(4)
    syms = [sympy.Symbol(f"x{k}_{i}") for k, i in RING.variables]
    qs = sympy.Symbol("q")
    f = syms[0] ** 3 * syms[1] ** 5 * syms[2] ** 7
    for _ in range(10):
        a, b = random_element(ALG, rng), random_element(ALG, rng)
        lhs = operator_apply(skew_mul(a, b), f, syms, qs)
        rhs = operator_apply(a, operator_apply(b, f, syms, qs), syms, qs)
        assert sympy.cancel(lhs - rhs) == 0


def test_flipped_shift_sign_breaks_commutation_but_not_associativity():
    flipped = SkewAlgebra(RING, shift_sign=1)
    d, x = flipped.delta(1, 1), flipped.x(1, 1)
    assert skew_mul(d, x) != skew_mul(x, d) * q.inverse()
    rng = random.Random(2)
    a, b, c = (random_element(flipped, rng) for _ in range(3))
    assert skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c))


@pytest.mark.parametrize("spec", [AlgebraSpec((2, 1), 2, 1), AlgebraSpec((2, 2), 4, 2), AlgebraSpec((3, 1), 3, 3)], ids=str)
def test_action_is_multiplicative_left_action(spec):
    alg = SkewAlgebra(spec.ring)
    rng = random.Random(7)
    gens = [g for _, g in product_generators(spec)]
    for _ in range(10):
        a, b = random_element(alg, rng), random_element(alg, rng)
        g, h = rng.choice(gens), rng.choice(gens)
        assert act_on_skew(g, skew_mul(a, b)) == skew_mul(act_on_skew(g, a), act_on_skew(g, b))
        assert act_on_skew(g * h, a) == act_on_skew(g, act_on_skew(h, a))


def test_action_examples():
    spec = AlgebraSpec((2, 1), 1, 1)
    alg = SkewAlgebra(spec.ring)
    from qogz.reflection import group_make

    g = embed(group_make((1, 0), (0, 0), 1, 1, 2), 1, spec)
    assert act_on_skew(g, alg.delta(1, 1)) == alg.delta(1, 2)
    assert act_on_skew(g, alg.x(1, 1) * alg.delta(1, 1)) == alg.x(1, 2) * alg.delta(1, 2)
    s = alg.scalar(spec.ring.scalar(Scalar.q_power(2) + 3))
    assert act_on_skew(g, s) == s


@pytest.mark.parametrize("spec", [AlgebraSpec((2, 2), 4, 2), AlgebraSpec((1, 2, 3), 3, 3), AlgebraSpec((3, 2), 2, 1)], ids=str)
def test_gamma_is_fixed_in_skew_algebra(spec):
    alg = SkewAlgebra(spec.ring)
    for _, gamma in gamma_generators(spec):
        for _, g in product_generators(spec):
            assert act_on_skew(g, alg.scalar(gamma)) == alg.scalar(gamma)


def test_monoid_generates_examples():
    assert monoid_generates([(1, 0), (-1, 0), (0, 1), (0, -1)], 2) is MonoidResult.TRUE
    assert monoid_generates([(1,)], 1) is MonoidResult.FALSE
    assert monoid_generates([(1, 1), (-1, 0), (0, -1)], 2) is MonoidResult.TRUE


def test_monoid_generates_lattice_failures():
    assert monoid_generates([(2,), (-2,)], 1) is MonoidResult.FALSE
    assert monoid_generates([(1, 0), (-1, 0)], 2) is MonoidResult.FALSE
    assert monoid_generates([(1, 0, 5)], [0]) is MonoidResult.FALSE


def test_monoid_generates_sub_coordinates():
    S = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]
    assert monoid_generates(S, [0, 1]) is MonoidResult.TRUE


def test_monoid_bfs_oracle():
    # reaching -s needs many steps: s = (1,0), t = (-5, 1), u = (0, -1)
    S = [(1, 0), (-5, 1), (0, -1)]
    assert monoid_generates(S, 2, radius=8) is MonoidResult.TRUE
    # a short radius cannot finish; no separating functional exists, so the answer is unknown
    assert monoid_generates(S, 2, radius=2) is MonoidResult.UNKNOWN
    # a half-plane: the functional (1, 0) separates
    assert monoid_generates([(1, 0), (0, 1), (0, -1), (1, 5)], 2) is MonoidResult.FALSE
