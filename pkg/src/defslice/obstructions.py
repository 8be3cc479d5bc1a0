"""Obstructions to smooth sliceness in definite 4-manifolds, plus kinkiness.

Every verdict is conservative: a rule fires only on a certified interval
separation, never on a point estimate of an uncertain value, and
"inconclusive" never asserts sliceness.  Reason chains record which rule
fired with its numeric evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import CertificateGapError
from .hf_invariants import ContradictionError, IntInterval, _as_evaluator
from .knotexpr import Cable, CableSignError, Mirror, Sum, alexander, mirror, normalize
from .laurent import vanishes_at_unit_root
from .signatures import SignatureUnavailable, sigma

# rule identifiers, stable across output formats
RULE_V0 = "v0_positive"
RULE_TAU_POS = "tau_positive"
RULE_MIRROR_V0 = "mirror_v0_positive"
RULE_TAU_NEG = "tau_negative"
RULE_A = "d1_nonzero_and_tau_negative"
RULE_B = "mirror_d1_nonzero_and_tau_positive"
RULE_C = "signature_both_signs"
RULE_COMBINED = "one_sided_combination"
RULE_COMPOSITE = "composite_cable_construction"

_STATEMENTS = {
    RULE_V0: "V_0 > 0 forces d1 = -2*V_0 < 0, while sliceness in a "
    "negative-definite 4-manifold forces d1 = 0",
    RULE_TAU_POS: "tau > 0, while sliceness in a negative-definite 4-manifold "
    "forces tau <= 0",
    RULE_MIRROR_V0: "the mirror has d1 < 0, while sliceness in a "
    "positive-definite 4-manifold makes the mirror slice in a negative-definite one",
    RULE_TAU_NEG: "tau < 0, while sliceness in a positive-definite 4-manifold "
    "forces tau >= 0",
    RULE_A: "d1 != 0 rules out negative-definite targets and tau < 0 rules out "
    "positive-definite targets (mirror argument)",
    RULE_B: "d1 of the mirror != 0 rules out positive-definite targets and "
    "tau > 0 rules out negative-definite targets",
    RULE_C: "the Levine-Tristram signature takes values >= 2 and <= -2 at "
    "regular angles away from Alexander roots, which no knot slice in a "
    "definite 4-manifold can do",
    RULE_COMBINED: "both one-sided verdicts are obstructed",
    RULE_COMPOSITE: "V_0 drops under the mirrored (n,1)-cable summand while "
    "tau goes negative, so d1 != 0 and tau < 0 for the composite",
}

OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"


@dataclass
class Reason:
    rule: str
    statement: str
    evidence: dict


@dataclass
class Verdict:
    target: str  # negative_definite | positive_definite | any_definite
    status: str  # obstructed | inconclusive
    reasons: list

    @property
    def obstructed(self) -> bool:
        return self.status == OBSTRUCTED


@dataclass(frozen=True)
class KinkinessBound:
    k_plus_lo: int
    k_minus_lo: int


def _reason(rule, **evidence) -> Reason:
    return Reason(rule=rule, statement=_STATEMENTS[rule], evidence=evidence)


def _verdict(target, reasons) -> Verdict:
    return Verdict(
        target=target,
        status=OBSTRUCTED if reasons else INCONCLUSIVE,
        reasons=reasons,
    )


def obstruct_negative_definite(e, db=None) -> Verdict:
    """Obstruct sliceness in every negative-definite 4-manifold."""
    ev = _as_evaluator(db)
    e = normalize(e)
    reasons = []
    d = ev.d1(e)
    if d.hi is not None and d.hi < 0:
        reasons.append(_reason(RULE_V0, d1=d, v0=ev.v_seq(e).at(0)))
    t = ev.tau(e)
    if t.lo is not None and t.lo >= 1:
        reasons.append(_reason(RULE_TAU_POS, tau=t))
    return _verdict("negative_definite", reasons)


def obstruct_positive_definite(e, db=None) -> Verdict:
    """Obstruct sliceness in every positive-definite 4-manifold (mirror dual)."""
    ev = _as_evaluator(db)
    e = normalize(e)
    reasons = []
    dm = ev.d1(mirror(e))
    if dm.hi is not None and dm.hi < 0:
        reasons.append(_reason(RULE_MIRROR_V0, d1_mirror=dm))
    t = ev.tau(e)
    if t.hi is not None and t.hi <= -1:
        reasons.append(_reason(RULE_TAU_NEG, tau=t))
    return _verdict("positive_definite", reasons)


def _signature_evidence(e, ev):
    """Evidence for the mixed-sign signature rule, or None.

    Looks for regular rational angles avoiding Alexander-polynomial roots
    where sigma is >= 2 and <= -2; root avoidance is checked exactly via
    the cyclotomic factorization.
    """
    try:
        fn = sigma(e, ev.db)
        alex = alexander(e, ev.db)
    except (SignatureUnavailable, CertificateGapError, CableSignError):
        return None
    pos = neg = None
    for lo, hi, value in fn.pieces():
        if pos is None and value >= 2:
            x = _regular_sample(lo, hi, alex)
            if x is not None:
                pos = (x, value)
        if neg is None and value <= -2:
            x = _regular_sample(lo, hi, alex)
            if x is not None:
                neg = (x, value)
        if pos and neg:
            return {
                "positive_at": pos[0],
                "positive_value": pos[1],
                "negative_at": neg[0],
                "negative_value": neg[1],
            }
    return None


def _regular_sample(lo, hi, alex):
    # rational point of (lo, hi) that is not a root angle of alex
    for k in range(1, 64):
        x = lo + (hi - lo) / (1 << k)
        if not vanishes_at_unit_root(alex, x):
            return x
    return None


def obstruct_definite(e, db=None) -> Verdict:
    """Obstruct sliceness in every definite 4-manifold.

    Fires on: (a) d1 != 0 certified with tau <= -1; (b) the mirror-dual
    form; (c) the signature taking both signs; else on both one-sided
    verdicts being obstructed.
    """
    ev = _as_evaluator(db)
    e = normalize(e)
    reasons = []
    d = ev.d1(e)
    t = ev.tau(e)
    if d.hi is not None and d.hi < 0 and t.hi is not None and t.hi <= -1:
        reasons.append(_reason(RULE_A, d1=d, tau=t))
    dm = ev.d1(mirror(e))
    if dm.hi is not None and dm.hi < 0 and t.lo is not None and t.lo >= 1:
        reasons.append(_reason(RULE_B, d1_mirror=dm, tau=t))
    sig_ev = _signature_evidence(e, ev)
    if sig_ev is not None:
        reasons.append(_reason(RULE_C, **sig_ev))
    if not reasons:
        neg = obstruct_negative_definite(e, ev)
        pos = obstruct_positive_definite(e, ev)
        if neg.obstructed and pos.obstructed:
            reasons.append(
                _reason(
                    RULE_COMBINED,
                    negative_rules=[r.rule for r in neg.reasons],
                    positive_rules=[r.rule for r in pos.reasons],
                )
            )
    return _verdict("any_definite", reasons)


@dataclass
class HypothesisCheck:
    name: str
    certified: bool
    evidence: dict


@dataclass
class CompositeReport:
    """Hypothesis audit and verdict for K # (J_{n,1})* composites."""

    expression: object
    hypotheses: list
    verdict: Verdict

    @property
    def all_certified(self) -> bool:
        return all(h.certified for h in self.hypotheses)


def composite_cable_obstruction(K, J, n: int, db=None) -> CompositeReport:
    """Check V_0(K) > V_0(J), tau(K) >= 1, tau(J) >= 1, tau(K) < n*tau(J);
    when all four are certified, the composite K # (J_{n,1})* is obstructed
    in every definite 4-manifold.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ev = _as_evaluator(db)
    K = normalize(K)
    J = normalize(J)
    v0K = ev.v_seq(K).at(0)
    v0J = ev.v_seq(J).at(0)
    tK = ev.tau(K)
    tJ = ev.tau(J)
    checks = [
        HypothesisCheck(
            "V0(K) > V0(J)",
            v0J.hi is not None and v0K.lo > v0J.hi,
            {"v0_K": v0K, "v0_J": v0J},
        ),
        HypothesisCheck("tau(K) >= 1", tK.lo is not None and tK.lo >= 1, {"tau_K": tK}),
        HypothesisCheck("tau(J) >= 1", tJ.lo is not None and tJ.lo >= 1, {"tau_J": tJ}),
        HypothesisCheck(
            "tau(K) < n*tau(J)",
            tK.hi is not None and tJ.lo is not None and tK.hi < n * tJ.lo,
            {"tau_K": tK, "n_tau_J_lo": None if tJ.lo is None else n * tJ.lo},
        ),
    ]
    expr = normalize(Sum((K, Mirror(Cable(n, 1, J)))))
    if all(c.certified for c in checks):
        verdict = Verdict(
            target="any_definite",
            status=OBSTRUCTED,
            reasons=[
                _reason(
                    RULE_COMPOSITE,
                    v0_K=v0K,
                    v0_J=v0J,
                    tau_K=tK,
                    tau_J=tJ,
                    n=n,
                )
            ],
        )
    else:
        verdict = Verdict(target="any_definite", status=INCONCLUSIVE, reasons=[])
    return CompositeReport(expression=expr, hypotheses=checks, verdict=verdict)


def kinkiness_bounds(e, db=None) -> KinkinessBound:
    """Lower bounds for the minimal numbers of positive/negative kinks.

    nu+ <= k+ and -k- <= tau <= k+, applied to the knot and its mirror.
    """
    ev = _as_evaluator(db)
    e = normalize(e)
    np_e = ev.nu_plus(e)
    np_m = ev.nu_plus(mirror(e))
    t = ev.tau(e)
    k_plus = max(0, np_e.lo or 0, t.lo if t.lo is not None else 0)
    k_minus = max(0, np_m.lo or 0, -t.hi if t.hi is not None else 0)
    return KinkinessBound(k_plus_lo=k_plus, k_minus_lo=k_minus)


@dataclass(frozen=True)
class RefinedBounds:
    tau: IntInterval
    nu_plus: IntInterval
    nu_plus_mirror: IntInterval


def crossing_change_bounds(e, pos: int, neg: int, db=None) -> RefinedBounds:
    """Refine invariants from declared crossing-change data.

    The declaration is that some knot concordant to e becomes slice after
    pos positive and neg negative crossing changes; then tau lies in
    [-neg, pos], nu+ <= pos and nu+ of the mirror <= neg.  A resulting
    empty interval raises ContradictionError: the declaration is
    inconsistent with the computed invariants.
    """
    if pos < 0 or neg < 0:
        raise ValueError("crossing-change counts must be >= 0")
    ev = _as_evaluator(db)
    e = normalize(e)
    try:
        t = ev.tau(e).intersect(IntInterval(-neg, pos))
        n_e = ev.nu_plus(e).intersect(IntInterval(0, pos))
        n_m = ev.nu_plus(mirror(e)).intersect(IntInterval(0, neg))
    except ContradictionError as exc:
        raise ContradictionError(
            f"crossing-change declaration (pos={pos}, neg={neg}) contradicts "
            f"the computed invariants: {exc}"
        ) from None
    return RefinedBounds(tau=t, nu_plus=n_e, nu_plus_mirror=n_m)
