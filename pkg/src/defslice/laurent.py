"""Exact integer Laurent polynomial arithmetic.

Knot Alexander polynomials are kept in the symmetric normal form
a_i = a_{-i} with value 1 at t = 1.  All operations are exact; division
raises if the quotient is not an honest integer Laurent polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class LaurentPoly:
    """Sparse integer Laurent polynomial, stored as {exponent: coefficient}.

    Instances are immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        acc = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for e, a in items:
            e, a = int(e), int(a)
            if a:
                acc[e] = acc.get(e, 0) + a
        object.__setattr__(self, "_c", {e: a for e, a in acc.items() if a})

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def monomial(cls, e, a=1):
        return cls({e: a})

    def coeff(self, e):
        return self._c.get(e, 0)

    def items(self):
        """Sorted (exponent, coefficient) pairs."""
        return sorted(self._c.items())

    def is_zero(self):
        return not self._c

    @property
    def degree(self):
        """Top exponent, or None for the zero polynomial."""
        return max(self._c) if self._c else None

    @property
    def min_exp(self):
        return min(self._c) if self._c else None

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        out = dict(self._c)
        for e, a in other._c.items():
            out[e] = out.get(e, 0) + a
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + a1 * a2
        return LaurentPoly(out)

    def shift(self, k):
        """Multiply by t**k."""
        return LaurentPoly({e + k: a for e, a in self._c.items()})

    def subst_power(self, p):
        """Substitute t -> t**p."""
        return LaurentPoly({e * p: a for e, a in self._c.items()})

    def eval_at_one(self):
        return sum(self._c.values())

    def is_symmetric(self):
        return all(self.coeff(-e) == a for e, a in self._c.items())

    def pretty(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            mag = abs(a)
            if e == 0:
                term = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                term = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(term if a > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if a > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.pretty()})"


def div_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact Laurent division; raises ValueError on any nonzero remainder."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero()
    shift = num.min_exp - den.min_exp
    a = num.shift(-num.min_exp)
    b = den.shift(-den.min_exp)
    da, db = a.degree, b.degree
    if da < db:
        raise ValueError("not divisible: degree too small")
    ac = [a.coeff(i) for i in range(da + 1)]
    bc = [b.coeff(i) for i in range(db + 1)]
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        lead = ac[k + db]
        if lead % bc[db] != 0:
            raise ValueError("not divisible: leading coefficient")
        c = lead // bc[db]
        q[k] = c
        if c:
            for j in range(db + 1):
                ac[k + j] -= c * bc[j]
    if any(ac):
        raise ValueError("not divisible: nonzero remainder")
    return LaurentPoly({k + shift: c for k, c in enumerate(q)})


def symmetric_normalized(p: LaurentPoly) -> LaurentPoly:
    """Recenter so a_i = a_{-i} and fix the sign so the value at t=1 is 1.

    Raises ValueError when no such normalization exists.
    """
    if p.is_zero():
        raise ValueError("zero polynomial cannot be normalized")
    lo, hi = p.min_exp, p.degree
    if (lo + hi) % 2:
        raise ValueError("polynomial cannot be centered symmetrically")
    c = p.shift(-(lo + hi) // 2)
    if not c.is_symmetric():
        raise ValueError("polynomial is not palindromic")
    v = c.eval_at_one()
    if v == 1:
        return c
    if v == -1:
        return -c
    raise ValueError(f"value at t=1 is {v}, expected +-1")


@lru_cache(maxsize=None)
def torus_alexander(p: int, q: int) -> LaurentPoly:
    """Alexander polynomial of the (p,q)-torus knot, symmetric normalized.

    Computed as (t^(pq)-1)(t-1)/((t^p-1)(t^q-1)); trivial cases (p = 1 or
    |q| <= 1) give 1.  The polynomial does not see mirroring, so q < 0 is
    folded to |q|.
    """
    q = abs(q)
    if p < 1:
        raise ValueError("torus parameter p must be >= 1")
    if p == 1 or q <= 1:
        return LaurentPoly.one()
    if gcd(p, q) != 1:
        raise ValueError(f"torus parameters must be coprime, got ({p},{q})")
    t = LaurentPoly.monomial
    one = LaurentPoly.one()
    num = (t(p * q) - one) * (t(1) - one)
    den = (t(p) - one) * (t(q) - one)
    return symmetric_normalized(div_exact(num, den))


def torsion_coefficient(poly: LaurentPoly, j: int) -> int:
    """j-th torsion coefficient sum_{i>=1} i*a_{j+i} of a symmetric polynomial."""
    if j < 0:
        raise ValueError("torsion index must be >= 0")
    d = poly.degree
    if d is None or d <= j:
        return 0
    return sum(i * poly.coeff(j + i) for i in range(1, d - j + 1))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly:
    """n-th cyclotomic polynomial (ordinary polynomial, exponents >= 0)."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    poly = LaurentPoly.monomial(n) - LaurentPoly.one()
    for d in range(1, n):
        if n % d == 0:
            poly = div_exact(poly, cyclotomic(d))
    return poly


def vanishes_at_unit_root(poly: LaurentPoly, x) -> bool:
    """Exact test of poly(e^(2*pi*i*x)) == 0 for rational x.

    e^(2*pi*i*x) is a primitive n-th root of unity for n the reduced
    denominator of x, so the value vanishes iff the n-th cyclotomic
    polynomial divides poly.
    """
    if poly.is_zero():
        return True
    x = Fraction(x)
    n = x.denominator
    base = poly.shift(-poly.min_exp)
    if n == 1:
        return base.eval_at_one() == 0
    phi = cyclotomic(n)
    dp = phi.degree
    r = [base.coeff(i) for i in range(base.degree + 1)]
    pc = [phi.coeff(i) for i in range(dp + 1)]
    # phi is monic, so remainder stays integral
    for k in range(len(r) - 1, dp - 1, -1):
        c = r[k]
        if c:
            for j in range(dp + 1):
                r[k - dp + j] -= c * pc[j]
    return not any(r)
