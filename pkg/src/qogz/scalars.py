"""Exact arithmetic in Q(zeta_m)(q), q an indeterminate."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union

from ._parse import parse_expression

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    # a, b low->high; b monic
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _int_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _reduce_mod_phi(coeffs: Sequence[Rational], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = [Fraction(v) for v in coeffs]
    for top in range(len(c) - 1, deg - 1, -1):
        t = c[top]
        if t:
            c[top] = Fraction(0)
            for j in range(deg):
                c[top - deg + j] -= t * phi[j]
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


class CyclotomicRational:
    """An element of Q(zeta_m), stored as its reduced residue mod Phi_m in the power basis."""

    __slots__ = ("m", "coeffs")

    def __init__(self, coeffs: Sequence[Rational], m: int):
        self.m = m
        self.coeffs = _reduce_mod_phi(coeffs, m)

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...], m: int) -> "CyclotomicRational":
        obj = cls.__new__(cls)
        obj.m = m
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, value: Rational, m: int = 1) -> "CyclotomicRational":
        deg = totient(m)
        return cls._raw((Fraction(value),) + (Fraction(0),) * (deg - 1), m)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicRational":
        k %= m
        return cls([0] * k + [1], m)

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # coercion
    def _coerce(self, other) -> "CyclotomicRational | None":
        if isinstance(other, CyclotomicRational):
            if other.m == self.m:
                return other
            if other.is_rational():
                return CyclotomicRational.rational(other.coeffs[0], self.m)
            if self.is_rational():
                return None
            raise ValueError(f"cannot mix Q(zeta_{self.m}) and Q(zeta_{other.m})")
        if isinstance(other, (int, Fraction)):
            return CyclotomicRational.rational(other, self.m)
        return NotImplemented

    def _binary(self, other, fn, reflected=False):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a = self
        if o is None:  # self rational, other in a different field
            a = CyclotomicRational.rational(self.coeffs[0], other.m)
            o = other
        return fn(o, a) if reflected else fn(a, o)

    @staticmethod
    def _add(a, b):
        return CyclotomicRational._raw(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.m)

    @staticmethod
    def _sub(a, b):
        return CyclotomicRational._raw(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.m)

    @staticmethod
    def _mul(a, b):
        if b.is_rational():
            r = b.coeffs[0]
            return CyclotomicRational._raw(tuple(x * r for x in a.coeffs), a.m)
        if a.is_rational():
            r = a.coeffs[0]
            return CyclotomicRational._raw(tuple(x * r for x in b.coeffs), a.m)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicRational(prod, a.m)

    def __add__(self, other):
        return self._binary(other, self._add)

    def __radd__(self, other):
        return self._binary(other, self._add, reflected=True)

    def __sub__(self, other):
        return self._binary(other, self._sub)

    def __rsub__(self, other):
        return self._binary(other, self._sub, reflected=True)

    def __mul__(self, other):
        return self._binary(other, self._mul)

    def __rmul__(self, other):
        return self._binary(other, self._mul, reflected=True)

    def __neg__(self):
        return CyclotomicRational._raw(tuple(-x for x in self.coeffs), self.m)

    def inverse(self) -> "CyclotomicRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        if self.is_rational():
            return CyclotomicRational.rational(1 / self.coeffs[0], self.m)
        # extended Euclid: find u with u*self = 1 mod Phi_m
        r0, r1 = _trim([Fraction(v) for v in cyclotomic_polynomial(self.m)]), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = _fdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _fsub(s0, _fmul(quo, s1))
        inv_c = 1 / r1[0]
        return CyclotomicRational([c * inv_c for c in s1], self.m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return CyclotomicRational.rational(self.coeffs[0], other.m) * other.inverse()
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicRational.rational(1, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicRational):
            if other.m == self.m:
                return self.coeffs == other.coeffs
            return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero (zeta power, rational coefficient) pairs, highest power first."""
        return [(j, c) for j, c in reversed(list(enumerate(self.coeffs))) if c]

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        return _render_sum([(c, _monomial_str(j, 0)) for j, c in self.terms()])

    def __repr__(self):
        return f"CyclotomicRational({str(self)!r}, m={self.m})"


def cyclo_reduce(poly_in_zeta: Sequence[Rational], m: int) -> CyclotomicRational:
    """Residue of sum(c_j zeta^j) modulo Phi_m (coefficients lowest degree first)."""
    if m < 1:
        raise ValueError("m must be positive")
    return CyclotomicRational(list(poly_in_zeta), m)


# --- dense univariate helpers over Fraction (used for Q(zeta) inversion) ---

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _fsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _fdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for j, bj in enumerate(b):
            a[d + j] -= c * bj
        _trim(a)
    return _trim(q), a


# --- univariate polynomials in q over Q(zeta_m): tuples lowest degree first ---

def _upoly_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return tuple(p)


def _upoly_add(a, b, zero):
    n = max(len(a), len(b))
    return _upoly_trim((a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n))


def _upoly_neg(a):
    return tuple(-c for c in a)


def _upoly_mul(a, b, zero):
    if not a or not b:
        return ()
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _upoly_trim(out)


def _upoly_divmod(a, b, zero):
    a = list(a)
    quo = [zero] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        d = len(a) - len(b)
        quo[d] = c
        for j, bj in enumerate(b):
            a[d + j] = a[d + j] - c * bj
        a = list(_upoly_trim(a))
    return _upoly_trim(quo), tuple(a)


def _upoly_monic(a):
    inv = a[-1].inverse()
    return tuple(c * inv for c in a)


def _upoly_gcd(a, b, zero):
    while b:
        _, r = _upoly_divmod(a, b, zero)
        a, b = b, r
    return _upoly_monic(a) if a else a


class Scalar:
    """A rational function num(q)/den(q) over Q(zeta_m), kept reduced with monic denominator."""

    __slots__ = ("m", "num", "den")

    def __init__(self, num: Sequence, den: Sequence = None, m: int = 1):
        self.m = m
        zero = CyclotomicRational.rational(0, m)
        one = CyclotomicRational.rational(1, m)
        n = _upoly_trim(self._lift(c) for c in num)
        d = _upoly_trim(self._lift(c) for c in den) if den is not None else (one,)
        if not d:
            raise ZeroDivisionError("Scalar with zero denominator")
        if not n:
            self.num, self.den = (), (one,)
            return
        g = _upoly_gcd(d, n, zero)
        if len(g) > 1:
            n = _upoly_divmod(n, g, zero)[0]
            d = _upoly_divmod(d, g, zero)[0]
        lc = d[-1].inverse()
        self.num = tuple(c * lc for c in n)
        self.den = tuple(c * lc for c in d)

    def _lift(self, c) -> CyclotomicRational:
        if isinstance(c, CyclotomicRational):
            if c.m != self.m:
                if not c.is_rational():
                    raise ValueError("coefficient from a different cyclotomic field")
                return CyclotomicRational.rational(c.coeffs[0], self.m)
            return c
        return CyclotomicRational.rational(c, self.m)

    @classmethod
    def _raw(cls, num, den, m):
        obj = cls.__new__(cls)
        obj.m, obj.num, obj.den = m, num, den
        return obj

    # constructors
    @classmethod
    def one(cls, m: int = 1) -> "Scalar":
        return cls([1], m=m)

    @classmethod
    def zero(cls, m: int = 1) -> "Scalar":
        return cls([], m=m)

    @classmethod
    def q(cls, m: int = 1) -> "Scalar":
        return cls([0, 1], m=m)

    @classmethod
    def q_power(cls, k: int, m: int = 1) -> "Scalar":
        if k >= 0:
            return cls([0] * k + [1], m=m)
        return cls([1], [0] * (-k) + [1], m=m)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Scalar":
        return cls([CyclotomicRational.zeta(m, k)], m=m)

    @classmethod
    def from_value(cls, v, m: int = 1) -> "Scalar":
        if isinstance(v, Scalar):
            return v._with_m(m) if v.m != m else v
        if isinstance(v, CyclotomicRational):
            return cls([v], m=v.m if v.m != 1 else m)
        return cls([v], m=m)

    def _with_m(self, m: int) -> "Scalar":
        if not self.is_cyclo_rational_coeffs():
            raise ValueError(f"cannot move scalar from Q(zeta_{self.m}) to Q(zeta_{m})")
        lift = lambda p: tuple(CyclotomicRational.rational(c.coeffs[0], m) for c in p)
        return Scalar._raw(lift(self.num), lift(self.den), m)

    def is_cyclo_rational_coeffs(self) -> bool:
        return all(c.is_rational() for c in self.num + self.den)

    # predicates
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return len(self.num) == 1 and len(self.den) == 1 and self.num[0] == 1

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> CyclotomicRational:
        if not self.is_constant():
            raise ValueError(f"{self} depends on q")
        return self.num[0] if self.num else CyclotomicRational.rational(0, self.m)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.m == self.m:
                return self, other
            if other.is_cyclo_rational_coeffs():
                return self, other._with_m(self.m)
            if self.is_cyclo_rational_coeffs():
                return self._with_m(other.m), other
            raise ValueError("scalars over different cyclotomic fields")
        if isinstance(other, (int, Fraction)):
            return self, Scalar([other], m=self.m)
        if isinstance(other, CyclotomicRational):
            return self._coerce(Scalar([other], m=other.m))
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        zero = CyclotomicRational.rational(0, a.m)
        if a.den == b.den:
            return Scalar(_upoly_add(a.num, b.num, zero), a.den, m=a.m)
        n = _upoly_add(_upoly_mul(a.num, b.den, zero), _upoly_mul(b.num, a.den, zero), zero)
        return Scalar(n, _upoly_mul(a.den, b.den, zero), m=a.m)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(_upoly_neg(self.num), self.den, self.m)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[1] + (-pair[0])

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        zero = CyclotomicRational.rational(0, a.m)
        return Scalar(_upoly_mul(a.num, b.num, zero), _upoly_mul(a.den, b.den, zero), m=a.m)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero scalar")
        return Scalar(self.den, self.num, m=self.m)

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] * pair[1].inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[1] * pair[0].inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Scalar.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        pair = self._coerce(other) if not isinstance(other, str) else None
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self.is_cyclo_rational_coeffs():
            return hash((tuple(c.coeffs[0] for c in self.num), tuple(c.coeffs[0] for c in self.den)))
        return hash((self.m, tuple(c.coeffs for c in self.num), tuple(c.coeffs for c in self.den)))

    def __str__(self):
        num = _render_upoly(self.num)
        if len(self.den) == 1:
            return num
        return f"({num})/({_render_upoly(self.den)})"

    def __repr__(self):
        return f"Scalar({str(self)!r}, m={self.m})"


def _monomial_str(zexp: int, qexp: int) -> str:
    parts = []
    if zexp:
        parts.append(f"z^{zexp}")
    if qexp == 1:
        parts.append("q")
    elif qexp:
        parts.append(f"q^{qexp}")
    return "*".join(parts)


def _render_sum(items: list[tuple[Fraction, str]]) -> str:
    """Render [(coefficient, monomial text)] as a signed sum; '' monomial means constant."""
    if not items:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _render_upoly(p) -> str:
    items = []
    for k in range(len(p) - 1, -1, -1):
        for j, c in p[k].terms():
            items.append((c, _monomial_str(j, k)))
    return _render_sum(items)


def parse_scalar(text: str, m: int = 1) -> Scalar:
    """Parse the rendering produced by ``str(Scalar)`` (names: q, z)."""

    def atom(name, args):
        if args:
            raise ValueError(f"unexpected index on {name}")
        if name == "q":
            return Scalar.q(m)
        if name == "z":
            return Scalar.zeta(m)
        raise ValueError(f"unknown symbol {name!r}")

    return Scalar.from_value(parse_expression(text, lambda f: Scalar([f], m=m), atom), m)


def mp_q_number(x: int, m: int, p: int) -> Scalar:
    """The (m,p)-form q-number q^{-xm/p}(q^{xm}-1) / (q^{-m/p}(q^m-1))."""
    if m < 1 or p < 1 or m % p:
        raise ValueError(f"need p | m, got m={m}, p={p}")
    s = m // p
    numer = Scalar.q_power(-x * s) * (Scalar.q_power(x * m) - 1)
    denom = Scalar.q_power(-s) * (Scalar.q_power(m) - 1)
    return numer / denom
