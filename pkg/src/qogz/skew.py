"""The skew group algebra L * Z^{|r|}: left-coefficient sums of delta monomials.

delta^u x^e = q^{-<u,e>} x^e delta^u, so (c delta^u)(d delta^v) = c * shift_u(d) * delta^{u+v}
where shift_u sends x_j to q^{-u_j} x_j.  ``q_exp`` replaces q by q^{q_exp} in that rule
(a quantum torus over q^m uses q_exp = m).  ``shift_sign`` exists only so tests can
check that flipping the convention is detected.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentPoly, LaurentRing, RatFunc, as_ratfunc
from .reflection import GroupElement, GroupError, ProductGroupElement, _as_product, act_on_poly

DeltaMonomial = tuple[int, ...]


class SkewAlgebra:
    _cache: dict = {}

    def __new__(cls, ring: LaurentRing, q_exp: int = 1, shift_sign: int = -1):
        key = (ring, q_exp, shift_sign)
        obj = cls._cache.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj.ring = ring
            obj.q_exp = q_exp
            obj.shift_sign = shift_sign
            obj.dim = ring.nx
            obj.zero_delta = (0,) * ring.nx
            cls._cache[key] = obj
        return obj

    def __reduce__(self):
        return (SkewAlgebra, (self.ring, self.q_exp, self.shift_sign))

    def __repr__(self):
        extra = "" if self.q_exp == 1 else f", q_exp={self.q_exp}"
        extra += "" if self.shift_sign == -1 else f", shift_sign={self.shift_sign}"
        return f"SkewAlgebra({self.ring}{extra})"

    def shift(self, u: DeltaMonomial, c: RatFunc) -> RatFunc:
        """shift_u(c): conjugation delta^u c delta^{-u}."""
        if not any(u):
            return c
        s = self.shift_sign * self.q_exp
        return c.substitute(qexps=[s * a for a in u])

    # constructors
    def element(self, terms: Mapping[DeltaMonomial, object] | None = None) -> "SkewElement":
        out = {}
        for u, c in (terms or {}).items():
            c = as_ratfunc(self.ring, c)
            if not c.is_zero():
                out[tuple(u)] = c
        return SkewElement(self, out)

    def scalar(self, c) -> "SkewElement":
        return self.element({self.zero_delta: c})

    def one(self) -> "SkewElement":
        return self.scalar(1)

    def zero(self) -> "SkewElement":
        return SkewElement(self, {})

    def x(self, k: int, i: int, e: int = 1) -> "SkewElement":
        return self.scalar(self.ring.x(k, i, e))

    def delta_vector(self, exps: Mapping[tuple[int, int], int]) -> DeltaMonomial:
        u = [0] * self.dim
        for v, e in exps.items():
            u[self.ring.var_pos[v]] += e
        return tuple(u)

    def delta(self, k: int, i: int, e: int = 1) -> "SkewElement":
        return self.element({self.delta_vector({(k, i): e}): 1})

    def left(self, c, u: DeltaMonomial) -> "SkewElement":
        """c * delta^u."""
        return self.element({tuple(u): c})

    def right(self, u: DeltaMonomial, c) -> "SkewElement":
        """delta^u * c, normalized to a left coefficient."""
        return self.element({tuple(u): self.shift(tuple(u), as_ratfunc(self.ring, c))})


def render_delta(ring: LaurentRing, u: DeltaMonomial) -> str:
    parts = [f"d[{k},{i}]^{u[j]}" for j, (k, i) in enumerate(ring.variables) if u[j]]
    return "*".join(parts) if parts else "1"


def render_support(ring: LaurentRing, S: Iterable[DeltaMonomial]) -> str:
    return "{" + ", ".join(render_delta(ring, u) for u in sorted(S, reverse=True)) + "}"


class SkewElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: SkewAlgebra, terms: dict[DeltaMonomial, RatFunc]):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other) -> "SkewElement":
        if isinstance(other, SkewElement):
            if other.alg is not self.alg:
                raise ValueError(f"algebra mismatch: {self.alg} vs {other.alg}")
            return other
        c = as_ratfunc(self.alg.ring, other)
        if c is NotImplemented:
            return NotImplemented
        return self.alg.scalar(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for u, c in o.terms.items():
            s = out.get(u)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(u, None)
            else:
                out[u] = s
        return SkewElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewElement(self.alg, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return skew_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return skew_mul(o, self)

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only single-term elements are inverted")
            (u, c), = self.terms.items()
            nu = tuple(-a for a in u)
            # (c delta^u)^{-1} = delta^{-u} c^{-1}
            return self.alg.right(nu, c.inverse()) ** (-e)
        out = self.alg.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            o = self._coerce(other)
            if o is NotImplemented:
                return NotImplemented
            other = o
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, u: DeltaMonomial) -> RatFunc:
        return self.terms.get(tuple(u), self.alg.ring.zero)

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.alg.ring
        parts = []
        for u in sorted(self.terms, reverse=True):
            c = str(self.terms[u])
            parts.append(f"({c})" + (f"*{render_delta(ring, u)}" if any(u) else ""))
        return " + ".join(parts)

    __repr__ = __str__


def skew_mul(a: SkewElement, b: SkewElement) -> SkewElement:
    if a.alg is not b.alg:
        raise ValueError(f"algebra mismatch: {a.alg} vs {b.alg}")
    alg = a.alg
    acc: dict[DeltaMonomial, list] = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = tuple(x + y for x, y in zip(u, v))
            acc.setdefault(w, []).append(c * alg.shift(u, d))
    out = {}
    for w, cs in acc.items():
        s = cs[0]
        for c in cs[1:]:
            s = s + c
        if not s.is_zero():
            out[w] = s
    return SkewElement(alg, out)


def commutator(a: SkewElement, b: SkewElement) -> SkewElement:
    return skew_mul(a, b) - skew_mul(b, a)


def skew_support(a: SkewElement) -> set[DeltaMonomial]:
    return set(a.terms)


def act_on_skew(g: GroupElement | ProductGroupElement, a: SkewElement, row: int = 1) -> SkewElement:
    """g(c delta^u) = g(c) delta^{g u}, with g(delta^{ki}) = delta^{k sigma_k(i)}."""
    alg = a.alg
    pg = _as_product(g, alg.ring, row)
    targets = pg.var_targets()
    out = {}
    for u, c in a.terms.items():
        v = [0] * alg.dim
        for j, e in enumerate(u):
            v[targets[j]] += e
        out[tuple(v)] = act_on_poly(pg, c)
    return SkewElement(alg, out)


class MonoidResult(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self is MonoidResult.TRUE


def _lattice_is_full(vectors: list[tuple[int, ...]], dim: int) -> bool:
    if dim == 0:
        return True
    if len(vectors) < dim:
        return False
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    factors = invariant_factors(Matrix(vectors), domain=ZZ)
    return len([f for f in factors if f != 0]) == dim and all(abs(int(f)) == 1 for f in factors if f != 0)


def _separating_functional(vectors: list[tuple[int, ...]], dim: int):
    """A rational w with w.s >= 0 for all s and sum(w.s) = 1, or None.

    Such w shows the cone of the vectors is a proper half-space subset, so the monoid is not a group."""
    from sympy import Rational, symbols
    from sympy.solvers.simplex import lpmin

    if dim == 0:
        return None
    ws = symbols(f"w0:{dim}")
    cons = [sum(s[j] * ws[j] for j in range(dim)) >= 0 for s in vectors]
    cons.append(sum(sum(s[j] * ws[j] for j in range(dim)) for s in vectors) >= 1)
    try:
        # free variables; minimize nothing in particular
        _, sol = lpmin(0 * ws[0], cons + [w >= -10**6 for w in ws] + [w <= 10**6 for w in ws])
    except Exception:
        return None
    w = [Fraction(int(Rational(sol[x]).p), int(Rational(sol[x]).q)) for x in ws]
    dots = [sum(Fraction(s[j]) * w[j] for j in range(dim)) for s in vectors]
    if all(d >= 0 for d in dots) and sum(dots) >= 1:
        return tuple(w)
    return None


def monoid_generates(S: Iterable[Sequence[int]], target: int | Sequence[int], radius: int = 6) -> MonoidResult:
    """Does the monoid generated by S equal the lattice M?

    ``target`` is either the dimension d (M = Z^d) or the list of coordinates spanning M inside
    the ambient Z^N (vectors must vanish elsewhere).  Returns TRUE, FALSE or UNKNOWN."""
    S = [tuple(int(x) for x in s) for s in S]
    if isinstance(target, int):
        coords = list(range(target))
        if any(len(s) != target for s in S):
            raise ValueError("vector length does not match the dimension")
    else:
        coords = list(target)
        for s in S:
            if any(s[j] for j in range(len(s)) if j not in set(coords)):
                return MonoidResult.FALSE
    vecs = sorted({tuple(s[j] for j in coords) for s in S if any(s[j] for j in coords)})
    dim = len(coords)
    if not _lattice_is_full(vecs, dim):
        return MonoidResult.FALSE
    if dim == 0:
        return MonoidResult.TRUE
    vset = set(vecs)
    missing = [s for s in vecs if tuple(-x for x in s) not in vset]
    if not missing:
        return MonoidResult.TRUE
    # bounded search for -s in the monoid
    reached = set(vecs)
    frontier = set(vecs)
    wanted = {tuple(-x for x in s) for s in missing}
    for _ in range(radius - 1):
        if wanted <= reached:
            break
        nxt = set()
        for a in frontier:
            for s in vecs:
                b = tuple(x + y for x, y in zip(a, s))
                if b not in reached:
                    nxt.add(b)
        reached |= nxt
        frontier = nxt
    if wanted <= reached:
        return MonoidResult.TRUE
    if _separating_functional(vecs, dim) is not None:
        return MonoidResult.FALSE
    return MonoidResult.UNKNOWN
