import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from qogz.laurent import LaurentRing, RatFunc
from qogz.noether import (NotInvariantError, QuantumTorus, WeylFieldParams, eigenspace_decompose, power_map_step1,
                          psi, psi_iso_check, qtorus_act, random_invariant, random_torus_element, reconstruct,
                          reynolds, weyl_field_parameters)
from qogz.ogz import PASS, skew_algebra
from qogz.reflection import AlgebraSpec, SpecError, enumerate_group, generating_set, group_make, is_invariant
from qogz.scalars import Scalar
from qogz.skew import skew_mul


def test_torus_relations():
    T = QuantumTorus(2, 1)
    q = T.ring.scalar(Scalar.q())
    x1, x2, y1, y2 = T.x(1), T.x(2), T.y(1), T.y(2)
    assert skew_mul(y1, x1) == skew_mul(x1, y1) * q
    assert skew_mul(y1, x2) == skew_mul(x2, y1)
    assert skew_mul(y1, y2) == skew_mul(y2, y1)
    assert T.monomial([1, 0], [1, 0]) == skew_mul(x1, y1)
    T3 = QuantumTorus(1, 1, q_exp=3)
    assert skew_mul(T3.y(1), T3.x(1)) == skew_mul(T3.x(1), T3.y(1)) * T3.ring.q(3)


def test_qtorus_act_examples():
    T = QuantumTorus(2, 4)
    g = group_make((1, 0), (1, 0), 4, 1, 2)
    zeta = T.ring.scalar(Scalar.zeta(4))
    assert qtorus_act(g, T.x(1)) == T.x(2) * zeta
    assert qtorus_act(g, T.x(2)) == T.x(1)
    assert qtorus_act(g, T.y(1)) == T.y(2)
    with pytest.raises(ValueError):
        qtorus_act(group_make((0, 1, 2), (0, 0, 0), 4, 1, 3), T.x(1))


def test_qtorus_act_is_an_action():
    T = QuantumTorus(2, 3)
    rng = random.Random(3)
    elems = enumerate_group(3, 1, 2)
    for _ in range(10):
        a, b = random_torus_element(T, rng), random_torus_element(T, rng)
        g, h = rng.choice(elems), rng.choice(elems)
        assert qtorus_act(g, skew_mul(a, b)) == skew_mul(qtorus_act(g, a), qtorus_act(g, b))
        assert qtorus_act(g * h, a) == qtorus_act(g, qtorus_act(h, a))


@pytest.mark.parametrize("m,n", [(2, 2), (3, 1), (4, 2)])
def test_power_map_is_homomorphism_onto_diagonal_invariants(m, n):
    src = QuantumTorus(n, m, q_exp=m)
    dst = QuantumTorus(n, m)
    rng = random.Random(m * 10 + n)
    diagonal = [g for g in enumerate_group(m, 1, n) if g.perm == tuple(range(n))]
    for _ in range(8):
        a, b = random_torus_element(src, rng), random_torus_element(src, rng)
        pa, pb = power_map_step1(a, dst), power_map_step1(b, dst)
        assert power_map_step1(skew_mul(a, b), dst) == skew_mul(pa, pb)
        assert all(qtorus_act(g, pa) == pa for g in diagonal)


def test_power_map_example():
    src, dst = QuantumTorus(1, 2, q_exp=2), QuantumTorus(1, 2)
    assert power_map_step1(src.x(1), dst) == dst.x(1, 2)
    assert power_map_step1(src.y(1), dst) == dst.y(1)
    with pytest.raises(ValueError):
        power_map_step1(dst.x(1), src)


def test_reynolds_projects_onto_invariants():
    T = QuantumTorus(2, 2)
    elems = enumerate_group(2, 2, 2)
    rng = random.Random(5)
    for _ in range(5):
        f = reynolds(random_torus_element(T, rng), elems)
        assert all(qtorus_act(g, f) == f for g in generating_set(2, 2, 2))
        assert reynolds(f, elems) == f


def test_eigenspace_examples():
    ring = LaurentRing((2,), 2)
    x1, x2 = ring.x(1, 1), ring.x(1, 2)
    one = RatFunc.from_poly(ring.one)
    assert eigenspace_decompose(RatFunc.from_poly(x1 * x2), 2, 2, 2) == [0, one]
    f = RatFunc.from_poly(x1 ** 2 + x2 ** 2)
    assert eigenspace_decompose(f, 2, 2, 2) == [f, 0]
    ring4 = LaurentRing((2,), 4)
    assert eigenspace_decompose(RatFunc.from_poly(ring4.one), 4, 4, 2) == [RatFunc.from_poly(ring4.one), 0, 0, 0]


def test_eigenspace_rejects_non_invariant():
    ring = LaurentRing((2,), 2)
    with pytest.raises(NotInvariantError):
        eigenspace_decompose(RatFunc.from_poly(ring.x(1, 1)), 2, 2, 2)


@pytest.mark.parametrize("m,p,n", [(2, 2, 2), (4, 2, 2), (3, 3, 2), (3, 1, 2)])
def test_decomposition_reconstructs(m, p, n):
    T = QuantumTorus(n, m)
    rng = random.Random(f"{m}{p}{n}")
    for _ in range(5):
        f = random_invariant(T, p, rng)
        comps = eigenspace_decompose(f, m, p, n)
        assert len(comps) == p
        assert reconstruct(comps, m, p, n) == f
        assert all(is_invariant(c, (m, 1, n)) for c in comps)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-3, 3).filter(bool)), min_size=1, max_size=3))
def test_decomposition_of_symmetrized_laurent_polynomials(terms):
    m, p, n = 4, 2, 2
    ring = LaurentRing((n,), m)
    f = ring.zero
    for a, b, c in terms:
        f = f + ring.monomial([2 * a, 2 * b], c)
    f = reynolds(RatFunc.from_poly(f), enumerate_group(m, p, n))
    comps = eigenspace_decompose(f, m, p, n)
    assert reconstruct(comps, m, p, n) == f
    assert all(is_invariant(c, (m, 1, n)) for c in comps)


@pytest.mark.parametrize("r", [(1, 1), (2, 1), (3, 1)], ids=str)
@pytest.mark.parametrize("mp", [(2, 2), (4, 2), (3, 3)], ids=str)
def test_psi_checks(r, mp):
    spec = AlgebraSpec(r, *mp)
    recs = psi_iso_check(1, spec)
    assert recs and all(x.status == PASS for x in recs)


def test_psi_example():
    spec = AlgebraSpec((2, 1), 2, 2)
    T = QuantumTorus(2, 2)
    alg = skew_algebra(spec)
    assert psi(T.x(2), 1, spec) == alg.x(1, 2)
    assert psi(T.y(1), 1, spec) == alg.delta(1, 1, -1)
    with pytest.raises(ValueError):
        psi(QuantumTorus(3, 2).x(1), 1, spec)
    with pytest.raises(SpecError):
        psi_iso_check(2, spec)


def test_parameter_examples():
    assert weyl_field_parameters("invariant-field", (4, 2, 3)) == WeylFieldParams((2, 4, 4), 0)
    assert weyl_field_parameters("fraction-field", AlgebraSpec((1, 2, 3), 2, 2)) == WeylFieldParams((1, 1, 2), 3)
    for m, p in [(1, 1), (4, 2), (3, 3), (6, 2)]:
        assert weyl_field_parameters("fraction-field", AlgebraSpec((1, 1), m, p)) == WeylFieldParams((m // p,), 1)
    with pytest.raises(SpecError):
        weyl_field_parameters("invariant-field", (4, 3, 2))
    with pytest.raises(ValueError):
        weyl_field_parameters("other", (1, 1, 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_gl_family_counts(n):
    m, p = 4, 2
    params = weyl_field_parameters("fraction-field", AlgebraSpec(tuple(range(1, n + 1)), m, p))
    assert params.counts() == Counter({m // p: n - 1, m: n * (n - 1) // 2 - (n - 1)}) - Counter()
    assert params.base_transcendence_degree == n


@given(st.lists(st.integers(1, 4), min_size=2, max_size=5), st.sampled_from([(1, 1), (2, 2), (4, 2), (6, 3)]))
def test_pair_count_is_half_the_rank(r, mp):
    spec = AlgebraSpec(tuple(r), *mp)
    params = weyl_field_parameters("fraction-field", spec)
    # the fraction field has transcendence degree 2*sum(r[:-1]) + r[-1] over the base
    assert 2 * params.pairs + params.base_transcendence_degree == 2 * sum(r[:-1]) + r[-1]
    assert params.counts()[spec.mp] >= spec.n - 1
