"""Quantum OGZ generators X_k^+- = sum_i (delta^{ki})^{+-1} A_{ki}^+- and checks on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .laurent import LaurentPoly, RatFunc, frac_normalize
from .reflection import (AlgebraSpec, SpecError, act_on_poly, gamma_generators, product_generators)
from .scalars import Scalar, mp_q_number
from .skew import (MonoidResult, SkewAlgebra, SkewElement, commutator, monoid_generates, skew_mul,
                   skew_support, act_on_skew, render_support)

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"


@dataclass(frozen=True, order=True)
class CheckRecord:
    suite: str
    spec: str
    check_id: str
    status: str
    witness: str = ""


def _record(suite, spec, check_id, ok: bool, witness: str = "", assert_mode: bool = True) -> CheckRecord:
    if assert_mode:
        return CheckRecord(suite, str(spec), check_id, PASS if ok else FAIL, "" if ok else witness)
    return CheckRecord(suite, str(spec), check_id, INFO, "holds" if ok else f"differs: {witness}")


def skew_algebra(spec: AlgebraSpec, shift_sign: int = -1) -> SkewAlgebra:
    return SkewAlgebra(spec.ring, 1, shift_sign)


def _check_var(spec: AlgebraSpec, v):
    k, i = v
    if not (1 <= k <= spec.n and 1 <= i <= spec.r[k - 1]):
        raise IndexError(f"x[{k},{i}] is not a variable of {spec}")


def build_B(u, v, spec: AlgebraSpec) -> RatFunc:
    """(x_u/x_v)^{-m/p} ((x_u/x_v)^m - 1) / (q^{-m/p} (q^m - 1))."""
    if u == v:
        raise ValueError("build_B needs distinct variables")
    _check_var(spec, u)
    _check_var(spec, v)
    ring = spec.ring
    m, mp = spec.m, spec.mp
    t = ring.x(*u) * ring.x(*v, -1)
    num = t ** m * t ** (-mp) - t ** (-mp)
    num = num * ring.q(mp)
    den = ring.q(m) - 1
    return frac_normalize(num, den)


def _sign_value(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def build_A(k: int, i: int, sign, spec: AlgebraSpec, prefactor: bool = True) -> RatFunc:
    """A_{ki}^+- = -+ x_{ki}^{-(m/p)(r_{k+-1} - r_k)} prod_j B(x_{k+-1,j}, x_{ki}) / prod_{j != i} B(x_{kj}, x_{ki})."""
    s = _sign_value(sign)
    if not (1 <= k <= spec.n - 1 and 1 <= i <= spec.r[k - 1]):
        raise IndexError(f"A[{k},{i}] out of range for {spec}")
    return _build_A(k, i, s, spec, prefactor)


@lru_cache(maxsize=4096)
def _build_A(k, i, s, spec, prefactor):
    ring = spec.ring
    acc = ring.one * (-s)
    if prefactor:
        acc = acc * ring.x(k, i, -spec.mp * (spec.row_length(k + s) - spec.row_length(k)))
    for j in range(1, spec.row_length(k + s) + 1):
        acc = acc * build_B((k + s, j), (k, i), spec)
    for j in range(1, spec.r[k - 1] + 1):
        if j != i:
            acc = acc / build_B((k, j), (k, i), spec)
    return acc


def build_X(k: int, sign, spec: AlgebraSpec, prefactor: bool = True, shift_sign: int = -1) -> SkewElement:
    """sum_i (delta^{ki})^{+-1} A_{ki}^+-, stored with left coefficients."""
    s = _sign_value(sign)
    if not 1 <= k <= spec.n - 1:
        raise IndexError(f"X[{k}] out of range for {spec}")
    alg = skew_algebra(spec, shift_sign)
    out = alg.zero()
    for i in range(1, spec.r[k - 1] + 1):
        u = alg.delta_vector({(k, i): s})
        out = out + alg.right(u, build_A(k, i, s, spec, prefactor))
    return out


@dataclass
class OgzGenerators:
    X_plus: list[SkewElement]
    X_minus: list[SkewElement]
    gammas: list[tuple[str, LaurentPoly]]


def ogz_generators(spec: AlgebraSpec, prefactor: bool = True) -> OgzGenerators:
    return OgzGenerators([build_X(k, +1, spec, prefactor) for k in range(1, spec.n)],
                         [build_X(k, -1, spec, prefactor) for k in range(1, spec.n)],
                         gamma_generators(spec))


def _sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


def verify_invariance(spec: AlgebraSpec, prefactor: bool = True, suite: str = "invariance") -> list[CheckRecord]:
    """g(X_k^+-) = X_k^+- and g(A_{ki}^+-) = A_{k sigma_k(i)}^+- for each generator g of G."""
    records = []
    gens = product_generators(spec)
    for k in range(1, spec.n):
        for s in (1, -1):
            X = build_X(k, s, spec, prefactor)
            As = {i: build_A(k, i, s, spec, prefactor) for i in range(1, spec.r[k - 1] + 1)}
            for label, g in gens:
                diff = act_on_skew(g, X) - X
                records.append(_record(suite, spec, f"X[{k},{_sign_str(s)}] g={label}", diff.is_zero(), str(diff)))
                sigma = g.components[k - 1].perm
                for i, A in As.items():
                    d = act_on_poly(g, A) - As[sigma[i - 1] + 1]
                    records.append(_record(suite, spec, f"A[{k},{i},{_sign_str(s)}] g={label}", d.is_zero(), str(d)))
    for label, gamma in gamma_generators(spec):
        for glabel, g in gens:
            d = act_on_poly(g, gamma) - gamma
            records.append(_record(suite, spec, f"{label} g={glabel}", d.is_zero(), str(d)))
    return records


def expected_support(spec: AlgebraSpec) -> set[tuple[int, ...]]:
    alg = skew_algebra(spec)
    return {alg.delta_vector({(k, i): s}) for k in range(1, spec.n) for i in range(1, spec.r[k - 1] + 1) for s in (1, -1)}


def m_coordinates(spec: AlgebraSpec) -> list[int]:
    """Positions of the delta generators of rows 1..n-1 (the subgroup M)."""
    ring = spec.ring
    return [ring.var_pos[(k, i)] for k in range(1, spec.n) for i in range(1, spec.r[k - 1] + 1)]


def verify_galois_support(spec: AlgebraSpec, radius: int = 6, suite: str = "galois-support") -> list[CheckRecord]:
    records = []
    union = set()
    for k in range(1, spec.n):
        for s in (1, -1):
            X = build_X(k, s, spec)
            supp = skew_support(X)
            alg = X.alg
            want = {alg.delta_vector({(k, i): s}) for i in range(1, spec.r[k - 1] + 1)}
            records.append(_record(suite, spec, f"supp X[{k},{_sign_str(s)}]", supp == want,
                                   f"got {render_support(alg.ring, supp)}"))
            union |= supp
    records.append(_record(suite, spec, "support-union", union == expected_support(spec), f"got {render_support(spec.ring, union)}"))
    result = monoid_generates(union, m_coordinates(spec), radius)
    records.append(_record(suite, spec, "monoid-generates-M", result is MonoidResult.TRUE, result.value))
    return records


def cartan_commutator(k: int, spec: AlgebraSpec) -> SkewElement:
    return commutator(build_X(k, +1, spec), build_X(k, -1, spec))


def serre_combination(k: int, l: int, sign, spec: AlgebraSpec) -> SkewElement:
    """X_k^2 X_l - [2]^{m,p} X_k X_l X_k + X_l X_k^2 for X = X^sign."""
    Xk = build_X(k, sign, spec)
    Xl = build_X(l, sign, spec)
    two = spec.ring.scalar(mp_q_number(2, spec.m, spec.p))
    XkXl = skew_mul(Xk, Xl)
    XlXk = skew_mul(Xl, Xk)
    return skew_mul(Xk, XkXl) - skew_mul(XkXl, Xk) * two + skew_mul(XlXk, Xk)


def verify_serre_and_cross(spec: AlgebraSpec, suite: str = "gl-relations") -> list[CheckRecord]:
    """Asserted for r = (1, 2, ..., n); computed and reported (INFO) for any other signature."""
    strict = spec.is_gl_type()
    records = []
    alg = skew_algebra(spec)
    zero_delta = alg.zero_delta
    for k in range(1, spec.n):
        c = cartan_commutator(k, spec)
        supp = skew_support(c)
        records.append(_record(suite, spec, f"cartan[{k}] support", supp <= {zero_delta},
                               f"support {render_support(spec.ring, supp)}", strict))
    for k in range(1, spec.n):
        for l in range(1, spec.n):
            if k == l:
                continue
            c = commutator(build_X(k, +1, spec), build_X(l, -1, spec))
            records.append(_record(suite, spec, f"cross[X{k}+,X{l}-]", c.is_zero(), str(c), strict))
            if abs(k - l) == 1:
                for s in (1, -1):
                    r = serre_combination(k, l, s, spec)
                    records.append(_record(suite, spec, f"serre[{k},{l},{_sign_str(s)}]", r.is_zero(), str(r), strict))
            elif k < l:
                for s in (1, -1):
                    c = commutator(build_X(k, s, spec), build_X(l, s, spec))
                    records.append(_record(suite, spec, f"commute[X{k}{_sign_str(s)},X{l}{_sign_str(s)}]",
                                           c.is_zero(), str(c), strict))
    return records


# --- quantized Heisenberg algebra for r = (1, 1) ---

@dataclass
class HeisenbergSolution:
    X: SkewElement
    Y: SkewElement
    K: SkewElement
    L: SkewElement
    description: str


def _unit_candidates(radius: int):
    """Unit scalars +-q^j, |j| <= radius, in a fixed order."""
    for j in sorted(range(-radius, radius + 1), key=lambda t: (abs(t), -t)):
        for sgn in (1, -1):
            yield sgn, j


def heisenberg_relations(X, Y, K, L, which: str = "literal") -> dict[str, SkewElement]:
    """Residues (left minus right) of the defining relations plus centrality of L.

    ``which="literal"`` uses XY = (qK - q^{-1}K^{-1})/(q - q^{-1}); ``which="consistent"`` uses
    XY = (q^{-1}K - qK^{-1})/(q - q^{-1}), the form compatible with the other relations."""
    alg = X.alg
    ring = alg.ring
    q = ring.scalar(Scalar.q(ring.m))
    qi = q.inverse()
    bracket = (q - qi).inverse()
    Ki = K ** -1
    res = {
        "K*K^-1=1": skew_mul(K, Ki) - alg.one(),
        "K^-1*K=1": skew_mul(Ki, K) - alg.one(),
        "YX": skew_mul(Y, X) - (K - Ki) * bracket,
        "KXK^-1=qX": skew_mul(skew_mul(K, X), Ki) - X * q,
        "KYK^-1=q^-1Y": skew_mul(skew_mul(K, Y), Ki) - Y * qi,
    }
    if which == "literal":
        res["XY"] = skew_mul(X, Y) - (K * q - Ki * qi) * bracket
    elif which == "consistent":
        res["XY"] = skew_mul(X, Y) - (K * qi - Ki * q) * bracket
    else:
        raise ValueError(f"unknown relation set {which!r}")
    for name, G in (("X", X), ("Y", Y), ("K", K)):
        res[f"[L,{name}]"] = commutator(L, G)
    return res


def _mono(alg, a: int, b: int):
    return alg.scalar(alg.ring.monomial({(1, 1): a, (2, 1): b}))


def _lattice_coords(vec, basis):
    """Integer (s, t) with s*basis[0] + t*basis[1] = vec, or None (2x2, exact)."""
    (a, b), (c, d) = basis
    det = a * d - b * c
    if det == 0:
        return None
    x, y = vec
    s_num, t_num = x * d - y * c, a * y - b * x
    if s_num % det or t_num % det:
        return None
    return s_num // det, t_num // det


def _mutual_generation(spec: AlgebraSpec, sol: HeisenbergSolution, xe, ye, ke) -> tuple[bool, str]:
    """Rebuild each original generator from (X, Y, K, L) and vice versa, and compare exactly.

    xe, ye, ke are the monomial exponents used in X = X_1^+ * c_X x^xe, Y = X_1^- * c_Y x^ye, K = kappa x^ke."""
    alg = sol.X.alg
    mp = spec.mp
    Xp, Xm = build_X(1, +1, spec), build_X(1, -1, spec)
    # monomials x^e reachable as K^s L^t times a scalar
    basis = (tuple(ke), (0, mp))

    def monomial_word(e):
        st = _lattice_coords(e, basis)
        if st is None:
            return None
        s, t = st
        w = (sol.K ** s) * (sol.L ** t)
        (u, c), = w.terms.items()
        target = _mono(alg, *e)
        ratio = c / target.terms[alg.zero_delta]
        if not _is_scalar(ratio):
            return None
        return w * ratio.inverse()

    problems = []
    # originals in terms of new generators
    for label, gamma in gamma_generators(spec):
        e = tuple(gamma.shift[:2]) if gamma.is_monomial() else None
        w = monomial_word(e) if e else None
        if w is None or w != alg.scalar(gamma):
            problems.append(label)
    for label, orig, new, e in (("X1+", Xp, sol.X, xe), ("X1-", Xm, sol.Y, ye)):
        inv = monomial_word(tuple(-x for x in e))
        if inv is None:
            problems.append(label)
            continue
        rebuilt = new * inv
        ratio = None
        if set(rebuilt.terms) == set(orig.terms) and len(orig.terms) == 1:
            (u, c), = rebuilt.terms.items()
            ratio = orig.terms[u] / c
        if ratio is None or not _is_scalar(ratio):
            problems.append(label)
    # new generators in terms of originals: monomials must lie in the lattice of the gammas
    gamma_basis = ((mp, 0), (0, mp))
    for label, e in (("X", xe), ("Y", ye), ("K", ke), ("L", (0, mp))):
        if _lattice_coords(tuple(e), gamma_basis) is None:
            problems.append(f"{label} not a word in the originals")
    return (not problems), ("ok" if not problems else "missing: " + ", ".join(problems))


def _is_scalar(rf: RatFunc) -> bool:
    return not rf.is_zero() and rf.num.is_x_free() and rf.den.is_x_free()


def search_heisenberg(spec: AlgebraSpec, which: str = "literal", radius: int | None = None):
    """Ansatz search X = X_1^+ x^a, Y = c X_1^- x^b, K = kappa x^e, L = x_{21}^{m/p}.

    Y X must be a two-term element of L with monomials x^{+-e}; that fixes e, and kappa runs over
    +-q^j.  Returns (solution or None, best partial candidate, residues of that candidate)."""
    if spec.r != (1, 1):
        raise SpecError(f"the Heisenberg check needs r = (1,1), got {spec}")
    m, mp = spec.m, spec.mp
    radius = 2 * m if radius is None else radius
    alg = skew_algebra(spec)
    ring = spec.ring
    Xp, Xm = build_X(1, +1, spec), build_X(1, -1, spec)
    L = _mono(alg, 0, mp)
    q = Scalar.q(m)
    bracket = ring.scalar((q - q.inverse()).inverse())
    # smallest exponents first, so the reported solution is the simplest one
    box = sorted(itertools.product(range(-radius, radius + 1), repeat=2), key=lambda e: (abs(e[0]) + abs(e[1]), e))
    best = None
    for xe in box:
        X = Xp * _mono(alg, *xe)
        for ye in box:
            Y0 = Xm * _mono(alg, *ye)
            W = skew_mul(Y0, X)
            if set(W.terms) != {alg.zero_delta}:
                continue
            w = W.terms[alg.zero_delta]
            if not w.den.is_x_free():
                continue
            exps = sorted(w.num.x_coefficients())
            if len(exps) != 2 or tuple(-a for a in exps[0]) != exps[1]:
                continue
            for ke in exps[::-1]:
                if any(abs(a) > radius for a in ke):
                    continue
                M = RatFunc.from_poly(ring.monomial({(1, 1): ke[0], (2, 1): ke[1]}))
                for sgn, j in _unit_candidates(radius):
                    kappa = Scalar.q_power(j, m) * sgn
                    K = alg.scalar(M * ring.scalar(kappa))
                    # choose the scalar of Y so the x^ke parts of YX and (K - K^-1)/(q - q^-1) agree
                    part = ring.scalar(w.num.x_coefficients()[tuple(ke)]) / w.den
                    c = ring.scalar(kappa) * bracket / part
                    if not _is_scalar(c):
                        continue
                    Y = Y0 * c
                    sol = HeisenbergSolution(X, Y, K, L, f"X=X1+*x^{xe} Y=({c})*X1-*x^{ye} K=({kappa})*x^{ke} L=x21^{mp}")
                    res = heisenberg_relations(X, Y, K, L, which)
                    bad = {name: r for name, r in res.items() if not r.is_zero()}
                    ok_gen, gen_msg = _mutual_generation(spec, sol, xe, ye, ke)
                    if not ok_gen:
                        bad["generation"] = gen_msg
                    if not bad:
                        return sol, sol, {}
                    if best is None or len(bad) < len(best[1]):
                        best = (sol, bad)
    if best is None:
        return None, None, {"search": "no candidate satisfies the YX relation shape"}
    return None, best[0], best[1]


def verify_heisenberg(spec: AlgebraSpec, which: str = "literal", suite: str = "heisenberg",
                      radius: int | None = None) -> list[CheckRecord]:
    """Asserted for (m, p) = (2, 2); other (m, p) are reported only."""
    strict = (spec.m, spec.p) == (2, 2)
    sol, best, residues = search_heisenberg(spec, which, radius)
    records = []
    if sol is not None:
        records.append(_record(suite, spec, f"solution[{which}]", True, "", strict))
        records.append(CheckRecord(suite, str(spec), f"solution[{which}] found", INFO, sol.description))
        return records
    witness = "; ".join(f"{name}: {r}" for name, r in sorted(residues.items()))
    if best is not None:
        witness = f"best candidate {best.description}; failing {witness}"
    records.append(_record(suite, spec, f"solution[{which}]", False, witness, strict))
    return records
