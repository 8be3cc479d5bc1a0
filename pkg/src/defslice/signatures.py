"""Levine-Tristram signature functions as exact step functions.

Angles are rationals x in (0, 1/2], parameterizing omega = e^(2*pi*i*x);
the other half of the circle is implied by sigma(conj(omega)) = sigma(omega).
A SigFn stores its jump list; values are defined only at regular points,
and a query at a jump point raises with both one-sided limits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .certificates import CertificateGapError, resolve_db
from .knotexpr import (
    Atom,
    Cable,
    CableSignError,
    Mirror,
    Sum,
    normalize,
    torus_params,
)
from .laurent import LaurentPoly

HALF = Fraction(1, 2)


class JumpPointError(ValueError):
    """Signature queried at a jump angle; carries both one-sided limits."""

    def __init__(self, x, left, right):
        self.x = x
        self.left = left
        self.right = right
        super().__init__(
            f"x = {x} is a jump point (left limit {left}, right limit {right})"
        )


class SignatureUnavailable(CertificateGapError):
    """An atom has no signature rule (not a torus knot, Alexander != 1)."""


@dataclass(frozen=True)
class SigFn:
    """Piecewise-constant function on (0, 1/2] with value 0 near 0+.

    jumps is a sorted tuple of (x, delta) with rational x in (0, 1/2] and
    nonzero even delta; the value at regular x is the sum of deltas at
    jump points below x.
    """

    jumps: tuple = ()

    def __post_init__(self):
        prev = Fraction(0)
        for x, delta in self.jumps:
            if not (0 < x <= HALF):
                raise ValueError(f"jump at {x} outside (0, 1/2]")
            if x <= prev:
                raise ValueError("jumps must be strictly increasing")
            if delta == 0 or delta % 2:
                raise ValueError(f"jump deltas must be even and nonzero, got {delta}")
            prev = x

    @classmethod
    def zero(cls) -> "SigFn":
        return cls(())

    @property
    def is_zero(self) -> bool:
        return not self.jumps

    def value(self, x) -> int:
        """Value at a regular rational angle x in (0, 1/2]."""
        x = Fraction(x)
        if not (0 < x <= HALF):
            raise ValueError(f"angle {x} outside (0, 1/2]")
        acc = 0
        for xj, delta in self.jumps:
            if xj < x:
                acc += delta
            elif xj == x:
                raise JumpPointError(x, acc, acc + delta)
            else:
                break
        return acc

    def at_minus_one(self) -> int:
        """Value at omega = -1 (x = 1/2)."""
        return self.value(HALF)

    def pieces(self):
        """(lo, hi, value) triples: value holds on the open interval (lo, hi).

        The last piece ends at 1/2 and its value also holds at x = 1/2
        whenever 1/2 is not itself a jump point.
        """
        out = []
        acc = 0
        prev = Fraction(0)
        for x, delta in self.jumps:
            if x > prev:
                out.append((prev, x, acc))
            acc += delta
            prev = x
        if prev < HALF:
            out.append((prev, HALF, acc))
        return out

    def scale(self, m: int) -> "SigFn":
        if m == 0:
            return SigFn.zero()
        return SigFn(tuple((x, m * d) for x, d in self.jumps))

    def __neg__(self) -> "SigFn":
        return self.scale(-1)

    def __add__(self, other: "SigFn") -> "SigFn":
        acc = dict(self.jumps)
        for x, d in other.jumps:
            acc[x] = acc.get(x, 0) + d
        return SigFn(tuple(sorted((x, d) for x, d in acc.items() if d)))


@lru_cache(maxsize=None)
def sigma_torus(p: int, q: int) -> SigFn:
    """Signature function of the positive torus knot T(p,q).

    Counting form: at a regular angle x, each pair (i,j) in
    [1,p-1] x [1,q-1] contributes -1 when i/p + j/q lies in (x, x+1) and
    +1 otherwise; this yields a jump of +2 at s when s < 1 and -2 at s-1
    when s > 1.
    """
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise ValueError(f"need coprime p,q >= 1, got ({p},{q})")
    if p == 1 or q == 1:
        return SigFn.zero()
    jumps = {}
    for i in range(1, p):
        for j in range(1, q):
            s = Fraction(i, p) + Fraction(j, q)
            if s < 1:
                x, delta = s, 2
            else:
                x, delta = s - 1, -2
            if x <= HALF:
                jumps[x] = jumps.get(x, 0) + delta
    return SigFn(tuple(sorted((x, d) for x, d in jumps.items() if d)))


def _cable_sigma(base: SigFn, p: int, q: int) -> SigFn:
    # sigma_{K_{p,q}}(omega) = sigma_K(omega^p) + sigma_{T(p,q)}(omega)
    tor = sigma_torus(p, q)
    if base.is_zero:
        return tor
    cuts = {x for x, _ in tor.jumps}
    for u, _ in base.jumps:
        for m in range(p):
            for cand in (Fraction(m + u, p), Fraction(m + 1 - u, p)):
                if 0 < cand <= HALF:
                    cuts.add(cand)
    for m in range(1, p + 1):
        cand = Fraction(m, 2 * p)  # folding points of x -> p*x mod 1
        if cand <= HALF:
            cuts.add(cand)
    cuts = sorted(cuts)
    bounds = [Fraction(0)] + cuts
    if not cuts or cuts[-1] < HALF:
        bounds.append(HALF)

    def composite(x):
        y = (p * x) % 1
        yh = y if y <= HALF else 1 - y
        bv = 0 if yh == 0 else base.value(yh)
        return bv + (0 if tor.is_zero else tor.value(x))

    values = [composite((a + b) / 2) for a, b in zip(bounds, bounds[1:])]
    if values[0] != 0:
        raise AssertionError("cable signature must vanish near x = 0")
    jumps = []
    for idx in range(1, len(values)):
        delta = values[idx] - values[idx - 1]
        if delta:
            jumps.append((bounds[idx], delta))
    return SigFn(tuple(jumps))


def sigma(e, db=None) -> SigFn:
    """Signature function of an expression.

    Torus atoms use the counting form; atoms with Alexander polynomial 1
    have identically zero signature; other atoms have no rule and raise
    SignatureUnavailable.  Sum adds, Mirror negates, Cable reparameterizes
    and adds the torus term.
    """
    db = resolve_db(db)
    return _sigma(normalize(e), db)


def _sigma(e, db):
    if isinstance(e, Atom):
        tq = torus_params(e.name)
        if tq is not None:
            return sigma_torus(*tq)
        cert = db.get(e.name)
        if cert.alexander == LaurentPoly.one():
            # no roots on the unit circle, so the signature vanishes
            return SigFn.zero()
        raise SignatureUnavailable(f"atom {e.name!r} has no signature rule")
    if isinstance(e, Mirror):
        return -_sigma(e.child, db)
    if isinstance(e, Sum):
        out = SigFn.zero()
        for p in e.parts:
            out = out + _sigma(p, db)
        return out
    if isinstance(e, Cable):
        if e.q <= 0:
            raise CableSignError(f"cable with q={e.q} <= 0 has no signature rule")
        return _cable_sigma(_sigma(e.companion, db), e.p, e.q)
    raise TypeError(f"not a knot expression: {e!r}")


@dataclass(frozen=True)
class CombinationCheck:
    """Result of the brute-force signature independence check."""

    bound: int
    count: int
    dependent: tuple

    @property
    def independent(self) -> bool:
        return not self.dependent

    def summary(self) -> str:
        if self.independent:
            return f"independent at level {self.bound} ({self.count} combinations checked)"
        vecs = ", ".join(str(v) for v in self.dependent)
        return f"dependent combinations with identically zero signature: {vecs}"


def signature_combination_check(knots, bound: int, db=None) -> CombinationCheck:
    """Search coefficient vectors with |m_i| <= bound whose combination has
    identically zero signature function.

    A vanishing combination defeats this concordance-order obstruction;
    finding none certifies independence at the given level (a necessary
    condition, not a proof of linear independence).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    db = resolve_db(db)
    sigs = [sigma(k, db) for k in knots]
    dependent = []
    count = 0
    for vec in itertools.product(range(-bound, bound + 1), repeat=len(sigs)):
        if not any(vec):
            continue
        count += 1
        total = SigFn.zero()
        for m, s in zip(vec, sigs):
            if m:
                total = total + s.scale(m)
        if total.is_zero:
            dependent.append(vec)
    return CombinationCheck(bound=bound, count=count, dependent=tuple(dependent))
