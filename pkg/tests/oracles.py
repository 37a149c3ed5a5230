"""Independent exact models used as test oracles.

Generators act as difference operators on functions of the x variables, with
(delta^{ki})^{s} f (x) = f(x with x_ki replaced by q^{-s} x_ki).  Everything is evaluated
at rational points with Fraction arithmetic, so nothing here shares code with the package."""

from fractions import Fraction


def row_len(r, a):
    return r[a - 1] if 1 <= a <= len(r) else 0


def B(pt, u, v, m, p, q):
    mp = m // p
    t = pt[u] / pt[v]
    return t ** (-mp) * (t ** m - 1) / (q ** (-mp) * (q ** m - 1))


def A(pt, r, m, p, q, k, i, s, prefactor=True):
    mp = m // p
    out = Fraction(-s)
    if prefactor:
        out *= pt[(k, i)] ** (-mp * (row_len(r, k + s) - row_len(r, k)))
    for j in range(1, row_len(r, k + s) + 1):
        out *= B(pt, (k + s, j), (k, i), m, p, q)
    for j in range(1, row_len(r, k) + 1):
        if j != i:
            out /= B(pt, (k, j), (k, i), m, p, q)
    return out


def shifted(pt, var, s, q):
    new = dict(pt)
    new[var] = pt[var] * q ** (-s)
    return new


def X_op(r, m, p, q, k, s, f):
    """The operator sum_i (delta^{ki})^s A_{ki}^s applied to f (a function of the point)."""
    def g(pt):
        tot = Fraction(0)
        for i in range(1, row_len(r, k) + 1):
            sp = shifted(pt, (k, i), s, q)
            tot += A(sp, r, m, p, q, k, i, s) * f(sp)
        return tot
    return g


def monomial_fn(exps):
    def f(pt):
        out = Fraction(1)
        for v, e in exps.items():
            out *= pt[v] ** e
        return out
    return f


def eval_laurent(poly, pt, q):
    ring = poly.ring
    tot = Fraction(0)
    for e, c in poly.terms().items():
        if ring.zpos is not None and e[ring.zpos]:
            raise ValueError("root of unity present; evaluate over Q only")
        t = c * q ** e[ring.qpos]
        for j, v in enumerate(ring.variables):
            t *= pt[v] ** e[j]
        tot += t
    return tot


def eval_ratfunc(rf, pt, q):
    return eval_laurent(rf.num, pt, q) / eval_laurent(rf.den, pt, q)


def skew_as_operator(a, q, f):
    """Apply a skew element sum c_u delta^u to f as a difference operator."""
    ring = a.alg.ring

    def g(pt):
        tot = Fraction(0)
        for u, c in a.terms.items():
            sp = dict(pt)
            for j, v in enumerate(ring.variables):
                if u[j]:
                    sp[v] = sp[v] * q ** (-u[j])
            tot += eval_ratfunc(c, pt, q) * f(sp)
        return tot
    return g


def random_point(variables, rng):
    return {v: Fraction(rng.randint(2, 40), rng.randint(1, 7)) for v in variables}
