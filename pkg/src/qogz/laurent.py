"""Sparse Laurent polynomials and their fractions over Q(zeta_m)(q).

Internally q is an ordinary (Laurent) variable and zeta_m is a further variable
``z`` kept reduced modulo the cyclotomic polynomial, so every element lives in a
``flint.fmpq_mpoly`` ring over Q.  A :class:`LaurentPoly` is a monomial shift
times a polynomial with no monomial factor in the x's or q.  A :class:`RatFunc`
is a reduced fraction whose denominator has no monomial factor and leading
coefficient 1 (graded lex, x[1,1] > x[1,2] > ... > x[n,r_n] > q).

GCDs are computed by FLINT when zeta does not occur and by sympy's
algebraic-field gcd otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint

from ._parse import parse_expression
from .scalars import CyclotomicRational, Scalar, cyclotomic_polynomial, totient

VarIndex = tuple[int, int]


class DivisionByZeroError(ZeroDivisionError):
    pass


def _fmpq(c) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


def _frac(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class LaurentRing:
    """Variables x[k,i] (1 <= i <= rows[k-1]), q, and zeta_m."""

    _cache: dict = {}

    def __new__(cls, rows: Sequence[int], m: int = 1):
        key = (tuple(int(r) for r in rows), int(m))
        obj = cls._cache.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj._setup(*key)
            cls._cache[key] = obj
        return obj

    def _setup(self, rows: tuple[int, ...], m: int):
        if m < 1 or any(r < 0 for r in rows):
            raise ValueError(f"bad ring parameters rows={rows}, m={m}")
        self.rows = rows
        self.m = m
        self.phi = totient(m)
        self.variables: list[VarIndex] = [(k, i) for k, r in enumerate(rows, 1) for i in range(1, r + 1)]
        self.var_pos = {v: j for j, v in enumerate(self.variables)}
        self.nx = len(self.variables)
        self.qpos = self.nx
        self.nl = self.nx + 1
        names = [f"x{k}_{i}" for k, i in self.variables] + ["q"]
        self.zpos = None
        if self.phi > 1:
            names.append("z")
            self.zpos = self.nl
        self.nvars = len(names)
        self.ctx = flint.fmpq_mpoly_ctx.get(tuple(names), "deglex")
        self._zero_exp = (0,) * self.nl
        self._one = self.ctx.from_dict({(0,) * self.nvars: 1})
        if self.zpos is not None:
            self._phi_poly = self.ctx.from_dict(
                {self._zexp(j): c for j, c in enumerate(cyclotomic_polynomial(m)) if c})
        self.one = RatFunc(self, LaurentPoly(self, self._zero_exp, self._one), LaurentPoly(self, self._zero_exp, self._one))
        self.zero = RatFunc(self, LaurentPoly(self, self._zero_exp, self.ctx.from_dict({})), self.one.den)

    def __repr__(self):
        return f"LaurentRing(rows={self.rows}, m={self.m})"

    def __reduce__(self):
        return (LaurentRing, (self.rows, self.m))

    # --- raw flint helpers ---
    def _zexp(self, j: int) -> tuple[int, ...]:
        e = [0] * self.nvars
        e[self.zpos] = j
        return tuple(e)

    def _mono(self, exps: Sequence[int]) -> flint.fmpq_mpoly:
        return self.ctx.term(exp_vec=tuple(exps) + (0,) * (self.nvars - len(exps)), coeff=flint.fmpq(1))

    def _reduce(self, p: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
        if self.zpos is not None and not p.is_zero() and p.degrees()[self.zpos] >= self.phi:
            p = divmod(p, self._phi_poly)[1]
        return p

    def _has_z(self, p: flint.fmpq_mpoly) -> bool:
        return self.zpos is not None and not p.is_zero() and p.degrees()[self.zpos] > 0

    def _is_const(self, p: flint.fmpq_mpoly) -> bool:
        """True if p has no x or q dependence (a Q(zeta) constant)."""
        return p.is_zero() or not any(p.degrees()[: self.nl])

    def _cyclo_poly(self, c: CyclotomicRational) -> flint.fmpq_mpoly:
        if self.zpos is None:
            return self.ctx.from_dict({(0,) * self.nvars: _fmpq(c.to_rational())})
        if c.m != self.m:
            if not c.is_rational():
                raise ValueError(f"coefficient in Q(zeta_{c.m}) does not belong to Q(zeta_{self.m})")
            c = CyclotomicRational.rational(c.coeffs[0], self.m)
        return self.ctx.from_dict({self._zexp(j): _fmpq(v) for j, v in enumerate(c.coeffs) if v})

    def _poly_cyclo(self, p: flint.fmpq_mpoly) -> CyclotomicRational:
        coeffs = [Fraction(0)] * self.phi
        for exps, c in p.to_dict().items():
            coeffs[exps[self.zpos] if self.zpos is not None else 0] += _frac(c)
        return CyclotomicRational(coeffs, self.m)

    def zeta_power(self, a: int) -> flint.fmpq_mpoly:
        a %= self.m
        if self.zpos is None:
            return self.ctx.from_dict({(0,) * self.nvars: -1 if (self.m == 2 and a) else 1})
        return self._reduce(self.ctx.from_dict({self._zexp(a): 1}))

    def _lc(self, p: flint.fmpq_mpoly):
        """Q(zeta)-valued leading coefficient in graded lex on (x..., q), as a flint constant."""
        if not self._has_z(p):
            return p.leading_coefficient()
        best = None
        acc = {}
        for exps, c in p.to_dict().items():
            key = (sum(exps[: self.nl]), exps[: self.nl])
            if best is None or key > best:
                best, acc = key, {}
            if key == best:
                acc[self._zexp(exps[self.zpos])] = c
        return self.ctx.from_dict(acc)

    def _const_inverse(self, c):
        if isinstance(c, flint.fmpq):
            return self.ctx.from_dict({(0,) * self.nvars: 1 / c})
        return self._cyclo_poly(self._poly_cyclo(c).inverse())

    def _gcd(self, a: flint.fmpq_mpoly, b: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
        if self._is_const(a) or self._is_const(b):
            return self._one
        if not (self._has_z(a) or self._has_z(b)):
            return a.gcd(b)
        return _algebraic_gcd(self, a, b)

    def _exquo(self, a: flint.fmpq_mpoly, g: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
        if g.is_one():
            return a
        if not self._has_z(g):
            # g has rational coefficients, so division is coefficientwise in the zeta basis
            return a / g
        return _algebraic_exquo(self, a, g)

    # --- public constructors ---
    def x(self, k: int, i: int, e: int = 1) -> "LaurentPoly":
        try:
            pos = self.var_pos[(k, i)]
        except KeyError:
            raise IndexError(f"x[{k},{i}] is not a variable of {self}") from None
        shift = [0] * self.nl
        shift[pos] = e
        return LaurentPoly(self, tuple(shift), self._one)

    def monomial(self, exps: Mapping[VarIndex, int] | Sequence[int], coeff=1, qexp: int = 0) -> "LaurentPoly":
        shift = [0] * self.nl
        if isinstance(exps, Mapping):
            for v, e in exps.items():
                shift[self.var_pos[v]] += e
        else:
            shift[: self.nx] = list(exps)
        shift[self.qpos] += qexp
        c = self.constant_poly(coeff)
        return LaurentPoly.make(self, tuple(shift), c)

    def q(self, e: int = 1) -> "LaurentPoly":
        shift = [0] * self.nl
        shift[self.qpos] = e
        return LaurentPoly(self, tuple(shift), self._one)

    def zeta(self, a: int = 1) -> "LaurentPoly":
        return LaurentPoly(self, self._zero_exp, self.zeta_power(a))

    def constant_poly(self, c) -> flint.fmpq_mpoly:
        if isinstance(c, CyclotomicRational):
            return self._cyclo_poly(c)
        if isinstance(c, (int, Fraction, flint.fmpq)):
            return self.ctx.from_dict({(0,) * self.nvars: _fmpq(c)} if c else {})
        raise TypeError(f"not a Q(zeta) constant: {c!r}")

    def const(self, c) -> "LaurentPoly":
        return LaurentPoly(self, self._zero_exp, self.constant_poly(c))

    def scalar(self, s: Scalar | int | Fraction | CyclotomicRational) -> "RatFunc":
        """Embed an element of Q(zeta)(q)."""
        if not isinstance(s, Scalar):
            return RatFunc.from_poly(self.const(s))
        if s.m != self.m:
            s = s._with_m(self.m)

        def upoly(coeffs):
            acc = self.ctx.from_dict({})
            for k, c in enumerate(coeffs):
                if not c.is_zero():
                    acc += self._cyclo_poly(c) * self._mono([0] * self.qpos + [k])
            return LaurentPoly.make(self, self._zero_exp, acc)

        return RatFunc._from_coprime(self, upoly(s.num), upoly(s.den))

    def parse(self, text: str) -> "RatFunc":
        """Parse expressions in q, z and x[k,i] (the rendering format)."""

        def atom(name, args):
            if name == "q" and not args:
                return RatFunc.from_poly(self.q())
            if name == "z" and not args:
                return RatFunc.from_poly(self.zeta())
            if name == "x" and len(args) == 2:
                return RatFunc.from_poly(self.x(*args))
            raise ValueError(f"unknown symbol {name}{list(args) if args else ''}")

        return as_ratfunc(self, parse_expression(text, lambda f: self.scalar(f), atom))


# --- algebraic-field gcd (zeta present) through sympy ---

@lru_cache(maxsize=None)
def _sympy_field(m: int):
    import sympy

    K = sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / m))
    if [int(c) for c in K.mod.to_list()] != list(reversed(cyclotomic_polynomial(m))):
        raise RuntimeError(f"unexpected minimal polynomial for zeta_{m}")
    return K


@lru_cache(maxsize=None)
def _sympy_gens(n: int):
    import sympy

    return sympy.symbols(f"v0:{n}")


def _to_sympy_poly(ring: LaurentRing, p):
    import sympy

    K = _sympy_field(ring.m)
    groups: dict = {}
    for exps, c in p.to_dict().items():
        row = groups.setdefault(exps[: ring.nl], [Fraction(0)] * ring.phi)
        row[exps[ring.zpos]] += _frac(c)
    rep = {e: K.new([sympy.QQ(v.numerator, v.denominator) for v in reversed(cs)]) for e, cs in groups.items()}
    return sympy.Poly.from_dict(rep, *_sympy_gens(ring.nl), domain=K)


def _from_sympy_poly(ring: LaurentRing, sp_poly):
    out = {}
    for mono, c in sp_poly.rep.to_dict().items():
        coeffs = list(reversed(c.to_list()))
        for j, v in enumerate(coeffs):
            if v:
                out[tuple(mono) + (j,)] = flint.fmpq(int(v.numerator), int(v.denominator))
    return ring._reduce(ring.ctx.from_dict(out))


def _algebraic_gcd(ring, a, b):
    g = _to_sympy_poly(ring, a).gcd(_to_sympy_poly(ring, b))
    return _from_sympy_poly(ring, g)


def _algebraic_exquo(ring, a, g):
    return _from_sympy_poly(ring, _to_sympy_poly(ring, a).exquo(_to_sympy_poly(ring, g)))


class LaurentPoly:
    """x^shift * poly, with poly free of monomial factors in the x's and q."""

    __slots__ = ("ring", "shift", "poly")

    def __init__(self, ring: LaurentRing, shift: tuple[int, ...], poly: flint.fmpq_mpoly):
        self.ring = ring
        self.shift = shift
        self.poly = poly

    @classmethod
    def make(cls, ring: LaurentRing, shift: Sequence[int], poly: flint.fmpq_mpoly) -> "LaurentPoly":
        if poly.is_zero():
            return cls(ring, ring._zero_exp, poly)
        content = poly.term_content().monoms()[0][: ring.nl]
        if any(content):
            poly = poly / ring._mono(content)
            shift = tuple(s + c for s, c in zip(shift, content))
        return cls(ring, tuple(shift), poly)

    @classmethod
    def from_terms(cls, ring: LaurentRing, terms: Mapping[tuple[int, ...], object]) -> "LaurentPoly":
        """Build from {full exponent tuple (x..., q[, z]): rational coefficient}; exponents may be negative."""
        if not terms:
            return cls(ring, ring._zero_exp, ring.ctx.from_dict({}))
        low = [min(e[j] for e in terms) for j in range(ring.nl)]
        d = {}
        for e, c in terms.items():
            key = tuple(e[j] - low[j] for j in range(ring.nl)) + tuple(e[ring.nl:])
            d[key] = d.get(key, 0) + _fmpq(c)
        poly = ring._reduce(ring.ctx.from_dict(d))
        return cls.make(ring, tuple(low), poly)

    # predicates
    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_one(self) -> bool:
        return self.poly.is_one() and not any(self.shift)

    def is_monomial(self) -> bool:
        """A Q(zeta)-constant times a monomial in x and q."""
        return not self.is_zero() and self.ring._is_const(self.poly)

    def is_x_free(self) -> bool:
        return not any(self.shift[: self.ring.nx]) and not any(self.poly.degrees()[: self.ring.nx])

    # arithmetic
    def _check(self, other: "LaurentPoly"):
        if other.ring is not self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _aligned(self, other: "LaurentPoly"):
        if self.is_zero():
            return other.shift, self.poly, other.poly
        if other.is_zero():
            return self.shift, self.poly, other.poly
        low = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        r = self.ring
        pa = self.poly if low == self.shift else self.poly * r._mono([a - l for a, l in zip(self.shift, low)])
        pb = other.poly if low == other.shift else other.poly * r._mono([a - l for a, l in zip(other.shift, low)])
        return low, pa, pb

    def __add__(self, other):
        other = as_laurent(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        low, pa, pb = self._aligned(other)
        return LaurentPoly.make(self.ring, low, pa + pb)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, self.shift, -self.poly)

    def __sub__(self, other):
        other = as_laurent(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        low, pa, pb = self._aligned(other)
        return LaurentPoly.make(self.ring, low, pa - pb)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = as_laurent(self.ring, other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly(self.ring, self.ring._zero_exp, self.ring.ctx.from_dict({}))
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        return LaurentPoly(self.ring, shift, self.ring._reduce(self.poly * other.poly))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RatFunc.from_poly(self) / other

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            inv = self.ring._const_inverse(self.ring._lc(self.poly))
            base = LaurentPoly(self.ring, tuple(-s for s in self.shift), inv)
            return base ** (-e)
        result = LaurentPoly(self.ring, self.ring._zero_exp, self.ring._one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = as_laurent(self.ring, other)
            if other is NotImplemented:
                return NotImplemented
        return self.ring is other.ring and self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        return hash((self.shift, tuple(sorted(self.poly.to_dict().items()))))

    # structure
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """{full exponent tuple (x..., q[, z]): rational coefficient} with the shift applied."""
        r = self.ring
        out = {}
        for exps, c in self.poly.to_dict().items():
            out[tuple(int(exps[j] + self.shift[j]) for j in range(r.nl)) + tuple(int(e) for e in exps[r.nl:])] = _frac(c)
        return out

    def x_coefficients(self) -> dict[tuple[int, ...], Scalar]:
        """{x exponent tuple: Scalar coefficient}."""
        r = self.ring
        groups: dict = {}
        for e, c in self.terms().items():
            row = groups.setdefault(e[: r.nx], {})
            qe = e[r.qpos]
            ze = e[r.zpos] if r.zpos is not None else 0
            row.setdefault(qe, [Fraction(0)] * r.phi)[ze] += c
        out = {}
        for xe, qterms in groups.items():
            kmin = min(qterms)
            kmax = max(qterms)
            num = [CyclotomicRational(qterms.get(k, [0]), r.m) for k in range(kmin, kmax + 1)]
            den = [0] * (-kmin) + [1] if kmin < 0 else [1]
            if kmin > 0:
                num = [0] * kmin + num
            out[xe] = Scalar(num, den, m=r.m)
        return out

    def support(self) -> set[tuple[int, ...]]:
        return set(self.x_coefficients())

    def substitute(self, targets: Sequence[int] | None = None, qexps: Sequence[int] | None = None,
                   zexps: Sequence[int] | None = None, factors: Sequence | None = None,
                   scale: int = 1) -> "LaurentPoly":
        """Monomial substitution x_j -> zeta^zexps[j] * q^qexps[j] * factors[j] * x_{targets[j]}^scale."""
        r = self.ring
        if self.is_zero():
            return self
        nx, nl = r.nx, r.nl
        out: dict = {}
        extra = []
        for exps, c in self.poly.to_dict().items():
            e = [exps[j] + self.shift[j] for j in range(nl)]
            new = [0] * r.nvars
            qe = e[r.qpos]
            ze = exps[r.zpos] if r.zpos is not None else 0
            fac = None
            for j in range(nx):
                ej = e[j]
                if not ej:
                    continue
                new[targets[j] if targets is not None else j] += ej * scale
                if qexps is not None:
                    qe += qexps[j] * ej
                if zexps is not None:
                    ze += zexps[j] * ej
                if factors is not None and factors[j] is not None:
                    f = factors[j] ** ej
                    fac = f if fac is None else fac * f
            new[r.qpos] = qe
            ze %= r.m
            if r.zpos is None:
                if r.m == 2 and ze:
                    c = -c
            else:
                new[r.zpos] = ze
            if fac is None:
                key = tuple(new)
                out[key] = out.get(key, 0) + c
            else:
                extra.append((tuple(new), c, fac))
        if extra:
            for key, c, fac in extra:
                for j, v in enumerate(fac.coeffs if r.zpos is not None else [fac.to_rational()]):
                    if v:
                        k2 = list(key)
                        if r.zpos is not None:
                            k2[r.zpos] += j
                        k2 = tuple(k2)
                        out[k2] = out.get(k2, 0) + c * _fmpq(v)
        out = {k: v for k, v in out.items() if v}
        return LaurentPoly.from_terms(r, out)

    def to_sympy(self):
        import sympy

        r = self.ring
        xs = [sympy.Symbol(f"x{k}_{i}") for k, i in r.variables]
        qs = sympy.Symbol("q")
        zs = sympy.exp(2 * sympy.pi * sympy.I / r.m)
        acc = 0
        for e, c in self.terms().items():
            t = sympy.Rational(c.numerator, c.denominator) * qs ** e[r.qpos]
            for j in range(r.nx):
                t *= xs[j] ** e[j]
            if r.zpos is not None:
                t *= zs ** e[r.zpos]
            acc += t
        return acc

    def __str__(self):
        coeffs = self.x_coefficients()
        if not coeffs:
            return "0"
        r = self.ring
        items = sorted(coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        parts = []
        for xe, s in items:
            mono = "*".join(f"x[{k},{i}]^{xe[j]}" for j, (k, i) in enumerate(r.variables) if xe[j])
            cs = str(s)
            if not mono:
                wrap = len(items) > 1 and (" " in cs or "/" in cs)
                parts.append(f"({cs})" if wrap else cs)
            elif s.is_one():
                parts.append(mono)
            elif s == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if (" " in cs or "/" in cs) else f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def as_laurent(ring: LaurentRing, v):
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, (int, Fraction, CyclotomicRational)):
        return ring.const(v)
    if isinstance(v, Scalar):
        rf = ring.scalar(v)
        if rf.den.is_one():
            return rf.num
        raise ValueError(f"scalar {v} is not a Laurent polynomial in q")
    return NotImplemented


def as_ratfunc(ring: LaurentRing, v) -> "RatFunc":
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, LaurentPoly):
        return RatFunc.from_poly(v)
    if isinstance(v, Scalar):
        return ring.scalar(v)
    if isinstance(v, (int, Fraction, CyclotomicRational)):
        return RatFunc.from_poly(ring.const(v))
    return NotImplemented


class RatFunc:
    """A reduced fraction num/den of Laurent polynomials (an element of Q(zeta)(q)(x))."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: LaurentRing, num: LaurentPoly, den: LaurentPoly):
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p.ring, p, p.ring.one.den)

    @classmethod
    def _finish(cls, ring, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        """Normalize the leading coefficient of a content-free, shift-free denominator."""
        if num.is_zero():
            return ring.zero
        lc = ring._lc(den.poly)
        if not (lc == 1):
            inv = ring._const_inverse(lc)
            num = LaurentPoly(ring, num.shift, ring._reduce(num.poly * inv))
            den = LaurentPoly(ring, den.shift, ring._reduce(den.poly * inv))
        return cls(ring, num, den)

    @classmethod
    def _from_coprime(cls, ring, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        """num/den already coprime up to units; only monomial and leading-coefficient normalization."""
        if den.is_zero():
            raise DivisionByZeroError("zero denominator")
        if any(den.shift):
            num = LaurentPoly(ring, tuple(a - b for a, b in zip(num.shift, den.shift)), num.poly)
            den = LaurentPoly(ring, ring._zero_exp, den.poly)
        return cls._finish(ring, num, den)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        """True when this lies in the Laurent ring over Q(zeta)(q), i.e. the denominator is free of x."""
        return self.den.is_x_free()

    def _coerce(self, other):
        o = as_ratfunc(self.ring, other)
        if o is not NotImplemented and o.ring is not self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {o.ring}")
        return o

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        r = self.ring
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.poly == d.poly:
            n = a + c
            if n.is_zero():
                return r.zero
            if b.is_one():
                return RatFunc(r, n, b)
            g = r._gcd(n.poly, b.poly)
            return RatFunc._finish(r, _divp(n, g), _divp(b, g))
        g = r._gcd(b.poly, d.poly)
        b1 = _divp(b, g)
        d1 = _divp(d, g)
        n = a * d1 + c * b1
        if n.is_zero():
            return r.zero
        den = b * d1
        h = r._gcd(n.poly, g.poly if isinstance(g, LaurentPoly) else g)
        return RatFunc._finish(r, _divp(n, h), _divp(den, h))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ring, -self.num, self.den)

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
        r = self.ring
        if self.is_zero() or o.is_zero():
            return r.zero
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return RatFunc(r, a * c, b)
        g1 = r._gcd(a.poly, d.poly)
        g2 = r._gcd(c.poly, b.poly)
        return RatFunc._finish(r, _divp(a, g1) * _divp(c, g2), _divp(b, g2) * _divp(d, g1))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero rational function")
        r = self.ring
        num = LaurentPoly(r, tuple(-s for s in self.num.shift), self.den.poly)
        den = LaurentPoly(r, r._zero_exp, self.num.poly)
        return RatFunc._finish(r, num, den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.den.is_one():
            return RatFunc(self.ring, self.num ** e, self.den)
        # coprime powers stay coprime
        return RatFunc._finish(self.ring, self.num ** e, self.den ** e)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            o = other
        else:
            o = as_ratfunc(self.ring, other)
            if o is NotImplemented:
                return NotImplemented
        return self.ring is o.ring and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def substitute(self, **kw) -> "RatFunc":
        """Apply a monomial automorphism (see :meth:`LaurentPoly.substitute`) to numerator and denominator."""
        return RatFunc._from_coprime(self.ring, self.num.substitute(**kw), self.den.substitute(**kw))

    def to_sympy(self):
        return self.num.to_sympy() / self.den.to_sympy()

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _divp(p: LaurentPoly, g) -> LaurentPoly:
    if isinstance(g, LaurentPoly):
        g = g.poly
    if g.is_one():
        return p
    return LaurentPoly(p.ring, p.shift, p.ring._exquo(p.poly, g))


# --- spec-level operations ---

def frac_normalize(num, den) -> RatFunc:
    """Canonical reduced form of num/den."""
    num = num if isinstance(num, (LaurentPoly, RatFunc)) else None
    if num is None:
        raise TypeError("frac_normalize expects Laurent polynomials")
    ring = num.ring
    if isinstance(num, RatFunc) or isinstance(den, RatFunc):
        return as_ratfunc(ring, num) / as_ratfunc(ring, den)
    if den.is_zero():
        raise DivisionByZeroError("zero denominator")
    if num.is_zero():
        return ring.zero
    shift = tuple(a - b for a, b in zip(num.shift, den.shift))
    g = ring._gcd(num.poly, den.poly)
    n = LaurentPoly(ring, shift, ring._exquo(num.poly, g))
    d = LaurentPoly(ring, ring._zero_exp, ring._exquo(den.poly, g))
    return RatFunc._finish(ring, n, d)


def elementary_symmetric(d: int, args: Sequence) -> LaurentPoly | RatFunc:
    """e_d(args); e_0 = 1."""
    if not 0 <= d <= len(args):
        raise ValueError(f"degree {d} out of range for {len(args)} arguments")
    if not args:
        raise ValueError("need at least one argument to determine the ring")
    ring = args[0].ring
    one = ring.one if any(isinstance(a, RatFunc) for a in args) else ring.const(1)
    e = [one] + [one * 0] * d
    for a in args:
        for j in range(d, 0, -1):
            e[j] = e[j] + e[j - 1] * a
    return e[d]


def _unit_parts(ring: LaurentRing, coeff) -> tuple[int, CyclotomicRational | None]:
    """Split a substitution coefficient c * q^b (c in Q(zeta)) into (b, c)."""
    if isinstance(coeff, Scalar):
        if len(coeff.den) == 1 and len(coeff.num) == 1:
            return 0, coeff.num[0]
        nz = [k for k, c in enumerate(coeff.num) if not c.is_zero()]
        dz = [k for k, c in enumerate(coeff.den) if not c.is_zero()]
        if len(nz) != 1 or len(dz) != 1:
            raise ValueError(f"substitution coefficient {coeff} is not a unit monomial in q")
        return nz[0] - dz[0], coeff.num[nz[0]] / coeff.den[dz[0]]
    if isinstance(coeff, CyclotomicRational):
        return 0, coeff
    return 0, CyclotomicRational.rational(coeff, ring.m)


def monomial_substitute(f: LaurentPoly | RatFunc, mapping: Mapping[VarIndex, tuple]) -> LaurentPoly | RatFunc:
    """Apply x_v -> c_v * x_{t_v} for mapping {v: (c_v, t_v)}; c_v = (Q(zeta) constant) * q^b.

    Variables absent from ``mapping`` must not occur in ``f``."""
    ring = f.ring
    present = set()
    base = f.num if isinstance(f, RatFunc) else f
    for part in ([f.num, f.den] if isinstance(f, RatFunc) else [f]):
        for e in part.terms():
            present.update(j for j in range(ring.nx) if e[j])
    for j in present:
        if ring.variables[j] not in mapping:
            raise KeyError(f"unmapped variable x[{ring.variables[j][0]},{ring.variables[j][1]}]")
    targets = list(range(ring.nx))
    qexps = [0] * ring.nx
    factors: list = [None] * ring.nx
    for v, (c, t) in mapping.items():
        j = ring.var_pos[v]
        targets[j] = ring.var_pos[t]
        b, cyc = _unit_parts(ring, c)
        qexps[j] = b
        if cyc != 1:
            if cyc.is_zero():
                raise ValueError("zero substitution coefficient")
            factors[j] = cyc
    del base
    kw = dict(targets=targets, qexps=qexps, factors=factors if any(x is not None for x in factors) else None)
    if isinstance(f, RatFunc):
        return f.substitute(**kw)
    return f.substitute(**kw)


def transfer(f: LaurentPoly | RatFunc, target: LaurentRing, positions: Sequence[int]):
    """Rename variables into another ring: source variable j becomes target variable positions[j].

    Both rings must share the cyclotomic field."""
    src = f.ring
    if src.m != target.m:
        raise ValueError(f"cannot transfer between Q(zeta_{src.m}) and Q(zeta_{target.m})")
    if isinstance(f, RatFunc):
        return RatFunc._from_coprime(target, transfer(f.num, target, positions), transfer(f.den, target, positions))
    out = {}
    for e, c in f.terms().items():
        new = [0] * target.nvars
        for j in range(src.nx):
            new[positions[j]] += e[j]
        new[target.qpos] = e[src.qpos]
        if src.zpos is not None:
            new[target.zpos] = e[src.zpos]
        key = tuple(new)
        out[key] = out.get(key, 0) + c
    return LaurentPoly.from_terms(target, {k: v for k, v in out.items() if v})
