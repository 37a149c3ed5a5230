"""Complex reflection groups G(m,p,n) and products of them acting on Laurent rings.

An element (sigma, a) acts by x_i -> zeta_m^{a_i} x_{sigma(i)}.  Composition is
chosen so that this is a left action:
(sigma, a)(tau, b) = (sigma tau, c) with c_i = b_i + a_{tau(i)}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .laurent import LaurentPoly, LaurentRing, RatFunc, elementary_symmetric
from .scalars import Scalar

DEFAULT_MAX_GROUP_SIZE = 10**5


class GroupError(ValueError):
    pass


class GroupTooLargeError(GroupError):
    pass


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    """Signature r = (r_1..r_n) with parameters (m, p), p | m."""

    r: tuple[int, ...]
    m: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if not self.r:
            raise SpecError("signature must have at least one row")
        if any(x < 1 for x in self.r):
            raise SpecError(f"row lengths must be positive: {self.r}")
        if self.m < 1 or self.p < 1 or self.m % self.p:
            raise SpecError(f"need p | m with m, p positive; got m={self.m}, p={self.p}")

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def mp(self) -> int:
        return self.m // self.p

    @property
    def ring(self) -> LaurentRing:
        return LaurentRing(self.r, self.m)

    def row_length(self, k: int) -> int:
        """r_k with r_0 = 0 (and 0 beyond row n)."""
        return self.r[k - 1] if 1 <= k <= self.n else 0

    def is_gl_type(self) -> bool:
        return self.r == tuple(range(1, self.n + 1))

    def __str__(self):
        return f"r={','.join(map(str, self.r))} m={self.m} p={self.p}"


def group_order(m: int, p: int, n: int) -> int:
    return m**n * math.factorial(n) // p


@dataclass(frozen=True)
class GroupElement:
    """(sigma, a) in G(m,p,n); perm is 0-based, exps reduced mod m."""

    perm: tuple[int, ...]
    exps: tuple[int, ...]
    m: int
    p: int
    n: int

    def __str__(self):
        return f"perm=[{','.join(str(s + 1) for s in self.perm)}] exps=[{','.join(map(str, self.exps))}] ({self.m},{self.p},{self.n})"

    def params(self):
        return (self.m, self.p, self.n)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and not any(self.exps)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def inverse(self) -> "GroupElement":
        return group_inv(self)


def group_make(perm: Sequence[int], exps: Sequence[int], m: int, p: int, n: int, one_based: bool = False) -> GroupElement:
    """Validated element of G(m,p,n); ``perm`` lists images of 0..n-1 (or 1..n if one_based)."""
    if m < 1 or p < 1 or m % p:
        raise GroupError(f"need p | m; got m={m}, p={p}")
    perm = tuple(int(s) - (1 if one_based else 0) for s in perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise GroupError(f"not a permutation of {n} points: {perm}")
    if len(exps) != n:
        raise GroupError(f"exponent vector must have length {n}")
    exps = tuple(int(a) % m for a in exps)
    if sum(exps) % p:
        raise GroupError(f"exponents {exps} sum to {sum(exps)}, not divisible by p={p}")
    return GroupElement(perm, exps, m, p, n)


def identity(m: int, p: int, n: int) -> GroupElement:
    return GroupElement(tuple(range(n)), (0,) * n, m, p, n)


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.params() != h.params():
        raise GroupError(f"parameter mismatch {g.params()} vs {h.params()}")
    perm = tuple(g.perm[t] for t in h.perm)
    exps = tuple((h.exps[i] + g.exps[h.perm[i]]) % g.m for i in range(g.n))
    return GroupElement(perm, exps, g.m, g.p, g.n)


def group_inv(g: GroupElement) -> GroupElement:
    inv = [0] * g.n
    for i, s in enumerate(g.perm):
        inv[s] = i
    exps = tuple((-g.exps[inv[i]]) % g.m for i in range(g.n))
    return GroupElement(tuple(inv), exps, g.m, g.p, g.n)


def named_generators(m: int, p: int, n: int) -> list[tuple[str, GroupElement]]:
    """Adjacent transpositions s_j, the twist t = diag(zeta^p, 1, ...) if p < m,
    and s1' = ((12), (1, -1)) if p > 1.  For n = 1 only t remains."""
    if m % p:
        raise GroupError(f"need p | m; got m={m}, p={p}")
    gens = []
    for j in range(n - 1):
        perm = list(range(n))
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
        gens.append((f"s{j + 1}", GroupElement(tuple(perm), (0,) * n, m, p, n)))
    if p < m:
        gens.append(("t", GroupElement(tuple(range(n)), (p % m,) + (0,) * (n - 1), m, p, n)))
    if p > 1 and n >= 2:
        perm = (1, 0) + tuple(range(2, n))
        gens.append(("s1'", GroupElement(perm, (1, m - 1) + (0,) * (n - 2), m, p, n)))
    return gens


def generating_set(m: int, p: int, n: int) -> list[GroupElement]:
    return [g for _, g in named_generators(m, p, n)]


def closure(gens: Iterable[GroupElement], m: int, p: int, n: int, limit: int = DEFAULT_MAX_GROUP_SIZE) -> set[GroupElement]:
    seen = {identity(m, p, n)}
    frontier = list(seen)
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group_mul(g, a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise GroupTooLargeError(f"closure exceeds {limit} elements")
        frontier = nxt
    return seen


@lru_cache(maxsize=64)
def _enumerate(m: int, p: int, n: int) -> tuple[GroupElement, ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        for exps in itertools.product(range(m), repeat=n):
            if sum(exps) % p == 0:
                out.append(GroupElement(perm, exps, m, p, n))
    return tuple(out)


def enumerate_group(m: int, p: int, n: int, max_size: int = DEFAULT_MAX_GROUP_SIZE) -> list[GroupElement]:
    if m % p:
        raise GroupError(f"need p | m; got m={m}, p={p}")
    size = group_order(m, p, n)
    if size > max_size:
        raise GroupTooLargeError(f"|G({m},{p},{n})| = {size} exceeds the limit {max_size}")
    return list(_enumerate(m, p, n))


@dataclass(frozen=True)
class ProductGroupElement:
    """An element of G(m,p,r_1) x ... x G(m,p,r_n); component k acts on row k."""

    components: tuple[GroupElement, ...]

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(g.n for g in self.components)

    @property
    def m(self) -> int:
        return self.components[0].m

    def __mul__(self, other: "ProductGroupElement") -> "ProductGroupElement":
        if self.rows != other.rows:
            raise GroupError("row structure mismatch")
        return ProductGroupElement(tuple(group_mul(a, b) for a, b in zip(self.components, other.components)))

    def inverse(self) -> "ProductGroupElement":
        return ProductGroupElement(tuple(group_inv(g) for g in self.components))

    def __str__(self):
        return " x ".join(str(g) for g in self.components)

    @cached_property
    def _maps(self):
        targets, zexps = [], []
        offset = 0
        for g in self.components:
            targets.extend(offset + s for s in g.perm)
            zexps.extend(g.exps)
            offset += g.n
        return targets, zexps

    def var_targets(self) -> list[int]:
        """Flat position of the image variable for each flat variable position."""
        return self._maps[0]

    def var_zexps(self) -> list[int]:
        return self._maps[1]


def embed(g: GroupElement, k: int, spec: AlgebraSpec) -> ProductGroupElement:
    """The element acting as g on row k and trivially elsewhere."""
    if g.n != spec.row_length(k) or (g.m, g.p) != (spec.m, spec.p):
        raise GroupError(f"{g} does not fit row {k} of {spec}")
    comps = tuple(g if j == k else identity(spec.m, spec.p, rj) for j, rj in enumerate(spec.r, 1))
    return ProductGroupElement(comps)


def product_generators(spec: AlgebraSpec) -> list[tuple[str, ProductGroupElement]]:
    """Generators of G = prod_k G(m,p,r_k), labelled "k:name"."""
    out = []
    for k, rk in enumerate(spec.r, 1):
        for name, g in named_generators(spec.m, spec.p, rk):
            out.append((f"{k}:{name}", embed(g, k, spec)))
    return out


def _as_product(g, ring: LaurentRing, row: int) -> ProductGroupElement:
    if isinstance(g, ProductGroupElement):
        if g.rows != ring.rows:
            raise GroupError(f"group rows {g.rows} do not match ring rows {ring.rows}")
        return g
    if not 1 <= row <= len(ring.rows) or ring.rows[row - 1] != g.n:
        raise IndexError(f"{g} cannot act on row {row} of {ring}")
    comps = tuple(g if j == row else identity(g.m, g.p, rj) for j, rj in enumerate(ring.rows, 1))
    return ProductGroupElement(comps)


def act_on_poly(g: GroupElement | ProductGroupElement, f: LaurentPoly | RatFunc, row: int = 1):
    """g(x_{ki}) = zeta^{a_{ki}} x_{k sigma_k(i)}; a bare GroupElement acts on ``row``."""
    ring = f.ring
    pg = _as_product(g, ring, row)
    if pg.m != ring.m and any(pg.var_zexps()):
        if ring.m % pg.m:
            raise GroupError(f"zeta_{pg.m} is not available in {ring}")
    zexps = pg.var_zexps()
    if pg.m != ring.m:
        zexps = [a * (ring.m // pg.m) for a in zexps]
    return f.substitute(targets=pg.var_targets(), zexps=zexps if any(zexps) else None)


def is_invariant(f, group) -> bool:
    """True if every generator fixes f.

    ``group`` may be an (m, p, n) triple (acting on row 1), an AlgebraSpec, or a list of
    (Product)GroupElements."""
    if isinstance(group, AlgebraSpec):
        gens = [g for _, g in product_generators(group)]
    elif isinstance(group, tuple) and len(group) == 3 and all(isinstance(v, int) for v in group):
        gens = generating_set(*group)
    else:
        gens = list(group)
    from .skew import SkewElement, act_on_skew

    for g in gens:
        if isinstance(f, SkewElement):
            if act_on_skew(g, f) != f:
                return False
        elif act_on_poly(g, f) != f:
            return False
    return True


def gamma_generators(spec: AlgebraSpec) -> list[tuple[str, LaurentPoly]]:
    """e_d(x_{k1}^m, ..., x_{kr_k}^m) for 1 <= d < r_k and (x_{k1}...x_{kr_k})^{+-m/p}, per row."""
    ring = spec.ring
    out = []
    for k, rk in enumerate(spec.r, 1):
        powers = [ring.x(k, i, spec.m) for i in range(1, rk + 1)]
        for d in range(1, rk):
            out.append((f"gamma[{k},{d}]", elementary_symmetric(d, powers)))
        exps = {(k, i): spec.mp for i in range(1, rk + 1)}
        out.append((f"gamma[{k},{rk}]", ring.monomial(exps)))
        out.append((f"gamma[{k},{rk}]^-1", ring.monomial({v: -e for v, e in exps.items()})))
    return out


def coset_rep_and_epsilon(m: int, p: int, n: int) -> tuple[GroupElement, Scalar]:
    """alpha = diag(zeta_m, 1, ..., 1) in G(m,1,n) and eps = (zeta_m)^{m/p}, a primitive p-th root of unity.

    For p = 1 the quotient is trivial and alpha is the identity."""
    if m % p:
        raise GroupError(f"need p | m; got m={m}, p={p}")
    if p == 1:
        return identity(m, 1, n), Scalar.one(m)
    alpha = GroupElement(tuple(range(n)), (1,) + (0,) * (n - 1), m, 1, n)
    return alpha, Scalar.zeta(m, m // p)
