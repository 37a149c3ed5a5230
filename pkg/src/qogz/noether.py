"""Quantum Laurent polynomial algebras with G(m,p,n) action and the Noether-problem reduction steps.

A quantum torus on pairs (x_i, y_i) with y_i x_j = Q^{[i=j]} x_j y_i is a skew algebra over a
one-row Laurent ring with y_i stored as delta_i^{-1}; Q = q^{q_exp}.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly, LaurentRing, RatFunc, transfer
from .ogz import CheckRecord, FAIL, PASS, _record, skew_algebra
from .reflection import (AlgebraSpec, GroupElement, SpecError, coset_rep_and_epsilon, embed,
                         enumerate_group, generating_set, group_order, named_generators, DEFAULT_MAX_GROUP_SIZE)
from .scalars import Scalar
from .skew import SkewAlgebra, SkewElement, act_on_skew, skew_mul


class NotInvariantError(ValueError):
    pass


class QuantumTorus:
    """Generators x_i^{+-1}, y_i^{+-1} (1 <= i <= n) over Q(zeta_m)(q) with parameter q^{q_exp}."""

    def __init__(self, n: int, m: int = 1, q_exp: int = 1):
        self.n = n
        self.m = m
        self.q_exp = q_exp
        self.ring = LaurentRing((n,), m)
        self.alg = SkewAlgebra(self.ring, q_exp)

    def __repr__(self):
        return f"QuantumTorus(n={self.n}, m={self.m}, q_exp={self.q_exp})"

    def x(self, i: int, e: int = 1) -> SkewElement:
        return self.alg.x(1, i, e)

    def y(self, i: int, e: int = 1) -> SkewElement:
        return self.alg.delta(1, i, -e)

    def monomial(self, xexps: Sequence[int], yexps: Sequence[int], coeff=1) -> SkewElement:
        """coeff * x^xexps * y^yexps."""
        c = self.ring.monomial(list(xexps)) * self.ring.const(1)
        return self.alg.left(RatFunc.from_poly(c) * coeff, tuple(-e for e in yexps))

    def one(self) -> SkewElement:
        return self.alg.one()

    def owns(self, a: SkewElement) -> bool:
        return a.alg is self.alg


def qtorus_act(g: GroupElement, a: SkewElement) -> SkewElement:
    """g(x_i) = zeta^{a_i} x_{sigma(i)}, g(y_i) = y_{sigma(i)}."""
    if a.alg.ring.rows != (g.n,):
        raise ValueError(f"{g} does not act on {a.alg}")
    return act_on_skew(g, a)


def power_map_step1(a: SkewElement, target: QuantumTorus) -> SkewElement:
    """x_i -> x_i^m, y_i -> y_i from the torus over q^m into ``target`` (over q)."""
    src = a.alg
    m = src.q_exp // target.q_exp if target.q_exp else 0
    if src.ring is not target.ring or src.q_exp != m * target.q_exp or m < 1:
        raise ValueError(f"power map needs a source over q^(m*{target.q_exp}) in the same ring; got {src}")
    out = {u: c.substitute(scale=m) for u, c in a.terms.items()}
    return SkewElement(target.alg, out)


def reynolds(a, elements: Sequence[GroupElement]):
    """(1/|G|) sum_g g(a) over an explicit list of group elements."""
    from .reflection import act_on_poly

    acc = None
    for g in elements:
        t = act_on_skew(g, a) if isinstance(a, SkewElement) else act_on_poly(g, a)
        acc = t if acc is None else acc + t
    return acc * Fraction(1, len(elements))


def random_torus_element(torus: QuantumTorus, rng: random.Random, terms: int = 3, spread: int = 2,
                         p: int | None = None) -> SkewElement:
    """Random sparse element.  With ``p`` given, x-exponents are drawn congruent to a common
    multiple of m/p modulo m, the only monomials whose G(m,p,n)-average can be nonzero."""
    m = torus.m
    out = torus.alg.zero()
    for _ in range(terms):
        if p is None:
            xe = [rng.randint(-spread, spread) for _ in range(torus.n)]
        else:
            base = (m // p) * rng.randrange(p)
            xe = [base + m * rng.randint(-1, 1) for _ in range(torus.n)]
        ye = [rng.randint(-1, 1) for _ in range(torus.n)]
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        qpow = Scalar.q_power(rng.randint(-1, 1), m)
        out = out + torus.monomial(xe, ye, torus.ring.scalar(qpow * c))
    return out


def random_invariant(torus: QuantumTorus, p: int, rng: random.Random, max_size: int = DEFAULT_MAX_GROUP_SIZE,
                     attempts: int = 100) -> SkewElement:
    """A nonzero G(m,p,n)-invariant obtained by averaging random elements over the whole group."""
    elems = enumerate_group(torus.m, p, torus.n, max_size)
    for _ in range(attempts):
        f = reynolds(random_torus_element(torus, rng, p=p), elems)
        if not f.is_zero():
            return f
    raise RuntimeError("could not produce a nonzero invariant")


def _act(g, f):
    from .reflection import act_on_poly

    return act_on_skew(g, f) if isinstance(f, SkewElement) else act_on_poly(g, f)


def _is_fixed(f, gens) -> bool:
    return all(_act(g, f) == f for g in gens)


def _product_monomial(f, m: int, p: int, n: int, k: int):
    """(x_1...x_n)^{k m/p} in the same kind as f."""
    ring = f.alg.ring if isinstance(f, SkewElement) else f.ring
    mono = ring.monomial([k * (m // p)] * n)
    return f.alg.scalar(mono) if isinstance(f, SkewElement) else RatFunc.from_poly(mono)


def eigenspace_decompose(f, m: int, p: int, n: int) -> list:
    """(f_0, ..., f_{p-1}) with f = sum_k f_k (x_1...x_n)^{k m/p} and each f_k G(m,1,n)-invariant.

    f may be a torus element or a Laurent polynomial / fraction in n variables; it must be
    G(m,p,n)-invariant."""
    if not _is_fixed(f, generating_set(m, p, n)):
        raise NotInvariantError("input is not G(m,p,n)-invariant")
    alpha, eps = coset_rep_and_epsilon(m, p, n)
    ring = f.alg.ring if isinstance(f, SkewElement) else f.ring
    images = [f]
    for _ in range(1, p):
        images.append(_act(alpha, images[-1]))
    comps = []
    for k in range(p):
        acc = None
        for j, img in enumerate(images):
            t = img * ring.scalar(eps ** (-k * j))
            acc = t if acc is None else acc + t
        acc = acc * Fraction(1, p)
        inv = _product_monomial(f, m, p, n, -k)
        comps.append(skew_mul(acc, inv) if isinstance(f, SkewElement) else acc * inv)
    return comps


def reconstruct(components: Sequence, m: int, p: int, n: int):
    acc = None
    for k, c in enumerate(components):
        mono = _product_monomial(c, m, p, n, k)
        t = skew_mul(c, mono) if isinstance(c, SkewElement) else c * mono
        acc = t if acc is None else acc + t
    return acc


def psi(a: SkewElement, k: int, spec: AlgebraSpec) -> SkewElement:
    """x_i -> x_{ki}, y_i -> (delta^{ki})^{-1} from the torus on r_k pairs into the skew algebra of spec."""
    alg = skew_algebra(spec)
    rk = spec.row_length(k)
    if a.alg.ring.rows != (rk,) or a.alg.q_exp != 1 or a.alg.ring.m != spec.m:
        raise ValueError(f"{a.alg} is not the torus for row {k} of {spec}")
    positions = [spec.ring.var_pos[(k, i)] for i in range(1, rk + 1)]
    out = {}
    for u, c in a.terms.items():
        v = [0] * alg.dim
        for j, e in enumerate(u):
            v[positions[j]] = e
        out[tuple(v)] = transfer(c, spec.ring, positions)
    return SkewElement(alg, out)


def psi_iso_check(k: int, spec: AlgebraSpec, suite: str = "psi-equivariance") -> list[CheckRecord]:
    if not 1 <= k <= spec.n - 1:
        raise SpecError(f"row {k} out of range for {spec}")
    rk = spec.row_length(k)
    P = QuantumTorus(rk, spec.m)
    records = []
    gens_x = {f"x{i}": P.x(i) for i in range(1, rk + 1)}
    gens_y = {f"y{i}": P.y(i) for i in range(1, rk + 1)}
    img = {name: psi(a, k, spec) for name, a in {**gens_x, **gens_y}.items()}
    inv = {name: psi(a ** -1, k, spec) for name, a in {**gens_x, **gens_y}.items()}
    alg = skew_algebra(spec)
    q = spec.ring.scalar(Scalar.q(spec.m))
    for name in img:
        d = skew_mul(img[name], inv[name]) - alg.one()
        records.append(_record(suite, spec, f"row{k} {name}*{name}^-1=1", d.is_zero(), str(d)))
    for i in range(1, rk + 1):
        for j in range(1, rk + 1):
            xi, xj, yi, yj = img[f"x{i}"], img[f"x{j}"], img[f"y{i}"], img[f"y{j}"]
            if i < j:
                d = skew_mul(xi, xj) - skew_mul(xj, xi)
                records.append(_record(suite, spec, f"row{k} x{i}x{j}=x{j}x{i}", d.is_zero(), str(d)))
                d = skew_mul(yi, yj) - skew_mul(yj, yi)
                records.append(_record(suite, spec, f"row{k} y{i}y{j}=y{j}y{i}", d.is_zero(), str(d)))
            rhs = skew_mul(xj, yi) * (q if i == j else 1)
            d = skew_mul(yi, xj) - rhs
            records.append(_record(suite, spec, f"row{k} y{i}x{j}=q^{int(i == j)}x{j}y{i}", d.is_zero(), str(d)))
    for gname, g in named_generators(spec.m, spec.p, rk):
        G = embed(g, k, spec)
        for name, a in {**gens_x, **gens_y}.items():
            for e in (1, -1):
                ae = a if e == 1 else a ** -1
                d = psi(qtorus_act(g, ae), k, spec) - act_on_skew(G, psi(ae, k, spec))
                records.append(_record(suite, spec, f"row{k} equivariance g={gname} {name}^{e}", d.is_zero(), str(d)))
    return records


@dataclass(frozen=True)
class WeylFieldParams:
    """Exponents k_i of the parameters q^{k_i} of the quantum Weyl field, and the transcendence
    degree of the centre over the base field."""

    qbar: tuple[int, ...]
    base_transcendence_degree: int

    def counts(self) -> Counter:
        return Counter(self.qbar)

    @property
    def pairs(self) -> int:
        return len(self.qbar)

    def __str__(self):
        return f"qbar=({','.join(map(str, self.qbar))}) base_degree={self.base_transcendence_degree}"


def weyl_field_parameters(kind: str, inputs) -> WeylFieldParams:
    """kind "invariant-field": inputs (m, p, n), invariants of the Weyl field of G(m,p,n);
    kind "fraction-field": inputs an AlgebraSpec, the fraction field of U_q^{m,p}(r)."""
    if kind == "invariant-field":
        m, p, n = inputs
        if m < 1 or p < 1 or n < 1 or m % p:
            raise SpecError(f"invalid (m,p,n) = {inputs}")
        return WeylFieldParams((m // p,) + (m,) * (n - 1), 0)
    if kind == "fraction-field":
        spec = inputs if isinstance(inputs, AlgebraSpec) else AlgebraSpec(*inputs)
        n = spec.n
        extra = sum(spec.r[:-1]) - (n - 1)
        return WeylFieldParams((spec.mp,) * (n - 1) + (spec.m,) * extra, spec.r[-1])
    raise ValueError(f"unknown kind {kind!r}")
