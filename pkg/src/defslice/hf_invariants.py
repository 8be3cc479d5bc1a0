"""Concordance invariants driven by the surgery correction-term calculus.

Computes tau, the V-sequence, nu+, d1, lens-space correction terms and
Ni-Wu surgery correction terms.  Values are exact integers or rationals
where the rule system pins them, and sound integer/rational intervals
otherwise: every interval is a guaranteed enclosure of the true invariant
under the certificate axioms, so "unknown" is a wide interval, never a
sentinel.

Rules used, besides per-atom certificates:
  * L-space atoms: V_j equals the j-th torsion coefficient of Alexander.
  * Wu's cabling formula (without the spurious factor of 2 in front of
    the maximum) for cables with q >= 1.
  * Connected-sum subadditivity V_{m+n}(K # J) <= V_m(K) + V_n(J) and the
    derived lower bound V_0(A # B) >= V_0(A) - V_0(B*).
  * Monotonicity V_k - 1 <= V_{k+1} <= V_k, closed to a fixed point.
  * V_k = 0 for k at or above a derivable genus bound.
  * The Whitehead-double substitution axiom, for V_0/nu+ queries only.
  * tau <= nu+ and tau(K) = -tau(K*) for interval fallbacks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .certificates import nu_equiv_reduce, resolve_db
from .knotexpr import (
    Atom,
    Cable,
    CableSignError,
    Mirror,
    Sum,
    check_positive_cables,
    mirror,
    normalize,
)
from .laurent import LaurentPoly, torsion_coefficient, torus_alexander

PARTITION_BUDGET = 12


class ContradictionError(ValueError):
    """An intersection of constraints came out empty."""


@dataclass(frozen=True)
class IntInterval:
    """Closed integer interval; None endpoints mean -inf / +inf."""

    lo: int | None
    hi: int | None

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ContradictionError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, v: int) -> "IntInterval":
        return cls(v, v)

    @classmethod
    def unknown(cls) -> "IntInterval":
        return cls(None, None)

    @property
    def is_exact(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"interval {self} is not exact")
        return self.lo

    def __add__(self, other: "IntInterval") -> "IntInterval":
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return IntInterval(lo, hi)

    def __neg__(self) -> "IntInterval":
        return IntInterval(
            None if self.hi is None else -self.hi,
            None if self.lo is None else -self.lo,
        )

    def intersect(self, other: "IntInterval") -> "IntInterval":
        lo = other.lo if self.lo is None else self.lo if other.lo is None else max(self.lo, other.lo)
        hi = other.hi if self.hi is None else self.hi if other.hi is None else min(self.hi, other.hi)
        return IntInterval(lo, hi)

    def max_with(self, other: "IntInterval") -> "IntInterval":
        """Enclosure of max(x, y) over x in self, y in other."""
        lo = other.lo if self.lo is None else self.lo if other.lo is None else max(self.lo, other.lo)
        hi = None if self.hi is None or other.hi is None else max(self.hi, other.hi)
        return IntInterval(lo, hi)

    def contains(self, v: int) -> bool:
        return (self.lo is None or self.lo <= v) and (self.hi is None or v <= self.hi)

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"


@dataclass(frozen=True)
class RatInterval:
    """Closed rational interval; None endpoints mean -inf / +inf."""

    lo: Fraction | None
    hi: Fraction | None

    @property
    def is_exact(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError(f"interval {self} is not exact")
        return self.lo

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"


@dataclass(frozen=True)
class VSeq:
    """Interval-valued V-sequence: explicit prefix plus a tail rule.

    entries[k] encloses V_k for k < len(entries).  If zero_from is an
    integer, V_k = 0 exactly for every k >= zero_from (and the prefix is
    materialized at least that far); otherwise the tail beyond the prefix
    is only constrained by monotonicity.
    """

    entries: tuple
    zero_from: int | None

    def at(self, k: int) -> IntInterval:
        if k < 0:
            raise ValueError("V-sequence index must be >= 0")
        if k < len(self.entries):
            return self.entries[k]
        if self.zero_from is not None:
            return IntInterval.exact(0)
        last = self.entries[-1]
        d = k - (len(self.entries) - 1)
        return IntInterval(max(0, last.lo - d), last.hi)

    @property
    def v0(self) -> IntInterval:
        return self.entries[0]

    def first_possible_zero(self) -> int:
        for k, iv in enumerate(self.entries):
            if iv.lo == 0:
                return k
        if self.zero_from is not None:
            return len(self.entries)
        return len(self.entries) - 1 + self.entries[-1].lo

    def first_certain_zero(self) -> int | None:
        for k, iv in enumerate(self.entries):
            if iv.hi == 0:
                return k
        if self.zero_from is not None:
            return len(self.entries)
        return None

    def closed(self) -> "VSeq":
        """Re-run the monotonicity closure (a fixed point: no-op when sound)."""
        return _close(list(self.entries), self.zero_from)


def _close(entries, zero_from) -> VSeq:
    """Monotonicity closure: V_k >= 0, V_{k+1} <= V_k <= V_{k+1} + 1.

    When a zero tail is known, one explicit zero entry is materialized so
    the backward pass propagates the tail into the prefix.
    """
    n = len(entries)
    length = max(n, 1, zero_from + 1 if zero_from is not None else 0)
    los, his = [], []
    for k in range(length):
        if k < n:
            lo = entries[k].lo if entries[k].lo is not None else 0
            hi = entries[k].hi
        else:
            lo, hi = 0, None
        lo = max(lo, 0)
        if zero_from is not None and k >= zero_from:
            if lo > 0 or (hi is not None and hi < 0):
                raise ContradictionError(
                    f"V_{k} constrained to {entries[k]} but the tail is zero"
                )
            lo, hi = 0, 0
        los.append(lo)
        his.append(hi)
    changed = True
    while changed:
        changed = False
        for k in range(1, length):
            if his[k - 1] is not None and (his[k] is None or his[k] > his[k - 1]):
                his[k] = his[k - 1]
                changed = True
            if los[k] < los[k - 1] - 1:
                los[k] = los[k - 1] - 1
                changed = True
        for k in range(length - 2, -1, -1):
            if his[k + 1] is not None and (his[k] is None or his[k] > his[k + 1] + 1):
                his[k] = his[k + 1] + 1
                changed = True
            if los[k] < los[k + 1]:
                los[k] = los[k + 1]
                changed = True
    out = []
    for lo, hi in zip(los, his):
        if hi is not None and lo > hi:
            raise ContradictionError("V-sequence bounds are inconsistent")
        out.append(IntInterval(lo, hi))
    return VSeq(tuple(out), zero_from)


def torsion_coefficients(poly: LaurentPoly, j: int) -> int:
    """t_j = sum_{i>=1} i*a_{j+i} for a symmetric polynomial with value 1 at t=1."""
    if j < 0:
        raise ValueError("torsion index must be >= 0")
    if not poly.is_symmetric() or poly.eval_at_one() != 1:
        raise ValueError("torsion coefficients need a symmetric polynomial with value 1 at t=1")
    return torsion_coefficient(poly, j)


def wu_phi(p: int, q: int, i: int) -> int:
    """phi_{p,q}(i) = (i - (p-1)(q-1)/2) mod q, for 0 <= i <= pq/2."""
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise ValueError(f"need coprime p,q >= 1, got ({p},{q})")
    if i < 0 or 2 * i > p * q:
        raise ValueError(f"index {i} outside 0 <= i <= {p}*{q}/2")
    return (i - (p - 1) * (q - 1) // 2) % q


@lru_cache(maxsize=None)
def _lens_raw(p: int, q: int, i: int) -> Fraction:
    # Two-term recursion descending the Euclidean algorithm; O(log p) depth.
    if p == 1:
        return Fraction(0)
    return (
        Fraction(-1, 4)
        + Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q)
        - _lens_raw(q, p % q, i % q)
    )


def _detect_orientation() -> int:
    # The recursion admits two orientation conventions; pick the one that
    # reproduces the pinned q=1 identities, and refuse to run otherwise.
    for sign in (1, -1):
        ok = 4 * sign * _lens_raw(2, 1, 0) == 1
        for n in range(1, 11):
            if not ok:
                break
            ok = (
                4 * sign * _lens_raw(2 * n, 1, n) == -1
                and 4 * sign * _lens_raw(2 * n + 2, 1, n) == 1 - Fraction(2 * n, n + 1)
            )
        if ok:
            return sign
    raise RuntimeError(
        "lens-space recursion failed its orientation self-test; "
        "no sign choice reproduces the pinned identities"
    )


_ORIENT = _detect_orientation()


def lens_d(p: int, q: int, i: int) -> Fraction:
    """Correction term d of p/q-surgery on the unknot at Spin^c label i."""
    if p < 1 or q < 1:
        raise ValueError(f"need p, q > 0, got ({p},{q})")
    if gcd(p, q) != 1:
        raise ValueError(f"need gcd(p,q)=1, got ({p},{q})")
    if i < 0 or i > p - 1:
        raise ValueError(f"Spin^c label {i} outside 0..{p - 1}")
    return _ORIENT * _lens_raw(p, q, i)


@lru_cache(maxsize=None)
def _torus_vseq(p: int, q: int) -> VSeq:
    # Exact V-sequence of the positive torus knot T(p,q), q >= 1.
    if p == 1 or q == 1:
        return VSeq((IntInterval.exact(0),), 0)
    alex = torus_alexander(p, q)
    g = (p - 1) * (q - 1) // 2
    entries = [IntInterval.exact(torsion_coefficient(alex, j)) for j in range(g)]
    return _close(entries, g)


class Evaluator:
    """One evaluation session: shared memo tables over an immutable database.

    An Evaluator is not thread-safe; the module-level functions make a fresh
    one per call, which is always safe.  Reusing an instance across queries
    of the same report or suite amortizes the memoized V-sequence work.
    """

    def __init__(self, db=None, partition_budget: int = PARTITION_BUDGET):
        self.db = resolve_db(db)
        self.budget = partition_budget
        self._vs = {}
        self._vs_public = {}
        self._gen = {}
        self._tau_memo = {}
        self._flag_memo = {}
        self._nu_memo = {}

    # -- genus bound -------------------------------------------------

    def _genus(self, e):
        if e in self._gen:
            return self._gen[e]
        if isinstance(e, Atom):
            g = self.db.get(e.name).genus
        elif isinstance(e, Mirror):
            g = self._genus(e.child)
        elif isinstance(e, Sum):
            g = 0
            for p in e.parts:
                gp = self._genus(p)
                if gp is None:
                    g = None
                    break
                g += gp
        elif isinstance(e, Cable):
            gc = self._genus(e.companion)
            g = None if gc is None else e.p * gc + (e.p - 1) * (e.q - 1) // 2
        else:
            raise TypeError(f"not a knot expression: {e!r}")
        self._gen[e] = g
        return g

    def genus_bound(self, e):
        """Upper bound for the genus (exact for certificate-complete input)."""
        e = normalize(e)
        check_positive_cables(e)
        return self._genus(e)

    # -- V-sequence ---------------------------------------------------

    def _vseq(self, e, need_lower=True):
        key = (e, need_lower)
        cached = self._vs.get(key)
        if cached is not None:
            return cached
        if isinstance(e, Atom):
            res = self._vseq_atom(e)
        elif isinstance(e, Mirror):
            res = self._vseq_mirror(e)
        elif isinstance(e, Sum):
            res = self._vseq_sum(e, need_lower)
        elif isinstance(e, Cable):
            res = self._vseq_cable(e)
        else:
            raise TypeError(f"not a knot expression: {e!r}")
        self._vs[key] = res
        return res

    def _vseq_atom(self, e):
        cert = self.db.get(e.name)
        if cert.lspace:
            g = cert.genus
            entries = [
                IntInterval.exact(torsion_coefficient(cert.alexander, j)) for j in range(g)
            ]
            return _close(entries, g)
        e0 = (
            IntInterval.exact(cert.v0)
            if cert.v0 is not None
            else IntInterval(0, None)
        )
        return _close([e0], cert.genus)

    def _vseq_mirror(self, e):
        c = e.child
        if isinstance(c, Atom):
            cert = self.db.get(c.name)
            e0 = (
                IntInterval.exact(cert.v0_mirror)
                if cert.v0_mirror is not None
                else IntInterval(0, None)
            )
            return _close([e0], cert.genus)
        # no rule for V of a mirrored cable: genus tail only
        return _close([IntInterval(0, None)], self._genus(c))

    def _vseq_sum(self, e, need_lower):
        parts = e.parts
        seqs = [self._vseq(p, need_lower=False) for p in parts]
        zf = self._genus(e)
        if zf is not None:
            length = max(zf, 1)
        else:
            length = max(2, min(64, sum(len(s.entries) for s in seqs)))
        # upper bounds: min-plus fold of V_{m+n} <= V_m + V_n over all splits
        his = [seqs[0].at(k).hi for k in range(length)]
        for s in seqs[1:]:
            nxt = [s.at(k).hi for k in range(length)]
            out = []
            for k in range(length):
                best = None
                for m in range(k + 1):
                    x, y = his[m], nxt[k - m]
                    if x is None or y is None:
                        continue
                    v = x + y
                    if best is None or v < best:
                        best = v
                out.append(best)
            his = out
        lo0 = 0
        if need_lower:
            lo0 = self._sum_lower_v0(parts)
        entries = [IntInterval(lo0 if k == 0 else 0, his[k]) for k in range(length)]
        return _close(entries, zf)

    def _sum_lower_v0(self, parts):
        # V_0(A # B) >= V_0(A) - V_0(B*), over two-block partitions (A, B).
        r = len(parts)
        if r <= self.budget:
            masks = range(1, (1 << r) - 1)
        else:
            masks = []
            for i in range(r):
                masks.append(1 << i)
                masks.append(((1 << r) - 1) ^ (1 << i))
        best = 0
        seen = set()
        for mask in masks:
            a_parts = tuple(parts[i] for i in range(r) if mask >> i & 1)
            b_parts = tuple(parts[i] for i in range(r) if not (mask >> i & 1))
            key = (a_parts, b_parts)
            if key in seen:
                continue
            seen.add(key)
            a_expr = a_parts[0] if len(a_parts) == 1 else Sum(a_parts)
            b_star = tuple(normalize(Mirror(b)) for b in b_parts)
            b_expr = b_star[0] if len(b_star) == 1 else Sum(b_star)
            lo_a = self._vseq(a_expr, need_lower=True).at(0).lo
            hi_b = self._vseq(b_expr, need_lower=False).at(0).hi
            if hi_b is not None and lo_a - hi_b > best:
                best = lo_a - hi_b
        return best

    def _vseq_cable(self, e):
        if e.q <= 0:
            raise CableSignError(f"cable with q={e.q} <= 0 has no V-sequence rule")
        cseq = self._vseq(e.companion, need_lower=True)
        tor = _torus_vseq(e.p, e.q)
        entries = []
        for i in range(e.p * e.q // 2 + 1):
            ph = wu_phi(e.p, e.q, i)
            a = cseq.at(ph // e.p)
            b = cseq.at((e.p + e.q - 1 - ph) // e.p)
            mx = a.max_with(b)
            t = tor.at(i).value
            entries.append(
                IntInterval(t + mx.lo, None if mx.hi is None else t + mx.hi)
            )
        return _close(entries, self._genus(e))

    def v_seq(self, e) -> VSeq:
        """Sound interval V-sequence of the expression."""
        e = normalize(e)
        cached = self._vs_public.get(e)
        if cached is not None:
            return cached
        check_positive_cables(e)
        base = self._vseq(e, need_lower=True)
        red = nu_equiv_reduce(e)
        if red != e:
            # the substitution axiom transports V_0 exactly
            rb = self._vseq(red, need_lower=True)
            e0 = base.at(0).intersect(rb.at(0))
            if e0 != base.at(0):
                base = _close([e0] + list(base.entries[1:]), base.zero_from)
        self._vs_public[e] = base
        return base

    # -- nu+ and tau --------------------------------------------------

    def _nu_raw(self, e):
        # nu+ bounds from the V-sequence alone (no tau refinement)
        cached = self._nu_memo.get(e)
        if cached is not None:
            return cached
        seqs = [self._vseq(e, need_lower=True)]
        red = nu_equiv_reduce(e)
        if red != e:
            seqs.append(self._vseq(red, need_lower=True))
        lo = max(s.first_possible_zero() for s in seqs)
        certain = [s.first_certain_zero() for s in seqs]
        certain = [c for c in certain if c is not None]
        hi = min(certain) if certain else None
        res = IntInterval(lo, hi)  # lo > hi means inconsistent certificates
        self._nu_memo[e] = res
        return res

    def _flag(self, e):
        # does the tau = genus property propagate to this expression?
        cached = self._flag_memo.get(e)
        if cached is not None:
            return cached
        if isinstance(e, Atom):
            cert = self.db.get(e.name)
            res = cert.tau_equals_genus or cert.lspace
        elif isinstance(e, Mirror):
            res = self._flag(e.child) and self._genus(e.child) == 0
        elif isinstance(e, Sum):
            res = all(self._flag(p) for p in e.parts)
        else:
            res = e.q >= 1 and self._flag(e.companion)
        self._flag_memo[e] = res
        return res

    def _tau_window(self, e):
        # fallback enclosure from tau <= nu+ and tau(K) = -tau(K*)
        hi = self._nu_raw(e).hi
        lo_src = self._nu_raw(mirror(e)).hi
        lo = None if lo_src is None else -lo_src
        return IntInterval(lo, hi)

    def _tau(self, e):
        cached = self._tau_memo.get(e)
        if cached is not None:
            return cached
        if isinstance(e, Atom):
            cert = self.db.get(e.name)
            res = (
                IntInterval.exact(cert.tau)
                if cert.tau is not None
                else self._tau_window(e)
            )
        elif isinstance(e, Mirror):
            res = -self._tau(e.child)
        elif isinstance(e, Sum):
            acc = IntInterval.exact(0)
            for p in e.parts:
                acc = acc + self._tau(p)
            if not acc.is_exact:
                acc = acc.intersect(self._tau_window(e))
            res = acc
        elif isinstance(e, Cable):
            if e.q <= 0:
                raise CableSignError(f"cable with q={e.q} <= 0 has no tau rule")
            if self._flag(e.companion):
                base = self._tau(e.companion).value
                res = IntInterval.exact(e.p * base + (e.p - 1) * (e.q - 1) // 2)
            else:
                res = self._tau_window(e)
        else:
            raise TypeError(f"not a knot expression: {e!r}")
        self._tau_memo[e] = res
        return res

    def tau(self, e) -> IntInterval:
        """tau: exact where the homomorphism/cabling rules apply, else an enclosure."""
        e = normalize(e)
        check_positive_cables(e)
        return self._tau(e)

    def nu_plus(self, e) -> IntInterval:
        """nu+ = min{k >= 0 : V_k = 0}, enclosed from the V-sequence and tau."""
        e = normalize(e)
        check_positive_cables(e)
        raw = self._nu_raw(e)
        t = self._tau(e)
        lo = raw.lo
        if t.lo is not None and t.lo > lo:
            lo = t.lo
        lo = max(lo, 0)
        if raw.hi is not None and lo > raw.hi:
            raise ContradictionError(
                "certificate data inconsistent: tau lower bound exceeds the nu+ upper bound"
            )
        return IntInterval(lo, raw.hi)

    def d1(self, e) -> IntInterval:
        """d of +1-surgery: d1 = -2*V_0, always <= 0 and even where exact."""
        v0 = self.v_seq(e).at(0)
        lo = None if v0.hi is None else -2 * v0.hi
        return IntInterval(lo, -2 * v0.lo)

    def surgery_d(self, e, p: int, q: int, i: int) -> RatInterval:
        """Correction term of p/q-surgery on the expression at Spin^c label i.

        d(S^3_{p/q}(K), i) = d(S^3_{p/q}(O), i)
                             - 2 max{V_{floor(i/q)}, V_{floor((p+q-1-i)/q)}}.
        """
        base = lens_d(p, q, i)  # validates p, q, i
        s = self.v_seq(e)
        mx = s.at(i // q).max_with(s.at((p + q - 1 - i) // q))
        lo = None if mx.hi is None else base - 2 * mx.hi
        return RatInterval(lo, base - 2 * mx.lo)


def _as_evaluator(db) -> Evaluator:
    return db if isinstance(db, Evaluator) else Evaluator(db)


def v_seq(e, db=None) -> VSeq:
    return _as_evaluator(db).v_seq(e)


def tau(e, db=None) -> IntInterval:
    return _as_evaluator(db).tau(e)


def nu_plus(e, db=None) -> IntInterval:
    return _as_evaluator(db).nu_plus(e)


def d1(e, db=None) -> IntInterval:
    return _as_evaluator(db).d1(e)


def surgery_d(e, p: int, q: int, i: int, db=None) -> RatInterval:
    return _as_evaluator(db).surgery_d(e, p, q, i)


def genus_bound(e, db=None):
    return _as_evaluator(db).genus_bound(e)
