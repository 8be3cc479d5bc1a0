"""Exact quadratic-form toolkit for the connected-sum cobordism replay.

Verifies, in exact rational arithmetic, the bookkeeping behind the
V_n(K # J) <= V_0(K) + V_n(J) bound: the three-handle intersection form,
its characteristic class, the square and restriction split of c_1, the
signatures, the pairings with the capped surface classes, and the final
cancellation of the definite-cobordism inequality down to the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hf_invariants import lens_d


@dataclass(frozen=True)
class QMatrix:
    """Symmetric integer matrix (an intersection form in a handle basis)."""

    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        for r in self.rows:
            if len(r) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class CharVector:
    """Integer class in the dual (cocore) basis.

    Characteristic for Q iff v.x = x^T Q x (mod 2) for all x, which in the
    dual pairing reduces to v_i = Q_ii (mod 2).
    """

    coords: tuple

    @classmethod
    def of(cls, *coords) -> "CharVector":
        return cls(tuple(int(c) for c in coords))


def is_characteristic(Q: QMatrix, v: CharVector) -> bool:
    if len(v.coords) != Q.n:
        return False
    return all((v.coords[i] - Q.rows[i][i]) % 2 == 0 for i in range(Q.n))


def _solve(Q: QMatrix, rhs):
    """Solve Q x = rhs over the rationals; raises ValueError when singular."""
    n = Q.n
    a = [[Fraction(Q.rows[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def c1_square(Q: QMatrix, v: CharVector) -> Fraction:
    """v^T Q^{-1} v for a characteristic v given in the cocore basis."""
    if not is_characteristic(Q, v):
        raise ValueError(f"{v.coords} is not characteristic for the form")
    x = _solve(Q, v.coords)
    return sum((Fraction(c) * xi for c, xi in zip(v.coords, x)), Fraction(0))


def signature_of_form(Q: QMatrix):
    """Exact inertia (n_plus, n_minus, n_zero) by symmetric congruence."""
    n = Q.n
    a = [[Fraction(Q.rows[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            k = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if k is not None:
                a[i], a[k] = a[k], a[i]
                for row in a:
                    row[i], row[k] = row[k], row[i]
            else:
                k = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if k is None:
                    zero += 1
                    continue
                # a_ii = a_kk = 0, a_ik != 0: make the diagonal nonzero
                for j in range(n):
                    a[i][j] += a[k][j]
                for j in range(n):
                    a[j][i] += a[j][k]
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if a[j][i] != 0:
                f = a[j][i] / d
                for k2 in range(n):
                    a[j][k2] -= f * a[i][k2]
                for k2 in range(n):
                    a[k2][j] -= f * a[k2][i]
    return (pos, neg, zero)


def cobordism_form(n: int) -> QMatrix:
    """Intersection form of the three-handle diagram gluing a 2-framed and a
    2n-framed handle into a (2n+2)-framed connected-sum handle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return QMatrix.from_rows([[2, 0, 1], [0, 2 * n, 1], [1, 1, 0]])


@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str


@dataclass
class CobordismReport:
    n: int
    items: list
    skipped: tuple
    c1_sq: Fraction
    c1_outside: Fraction
    c1_cobordism: Fraction
    sigma_total: int
    sigma_outside: int
    sigma_cobordism: int
    b2_cobordism: int

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)


def bcg_cobordism_check(n: int) -> CobordismReport:
    """Replay the negative-definite cobordism arithmetic for parameter n >= 1.

    All six checks run in exact rational arithmetic; any failure indicates
    an implementation or sign-convention error, not a mathematical one.
    """
    Q = cobordism_form(n)
    v = CharVector.of(-2, 0, 0)
    items = []

    char_ok = is_characteristic(Q, v)
    items.append(
        CheckItem(
            "characteristic_vector",
            char_ok,
            f"v = {v.coords} has v_i = Q_ii (mod 2)",
        )
    )

    c1 = c1_square(Q, v)
    items.append(
        CheckItem("c1_square", c1 == Fraction(2, n + 1), f"c1^2 = {c1} (expected 2/(n+1))")
    )

    # restriction to the boundary-sum piece: dual coordinates (-2, 0) on diag(2, 2n)
    outside = QMatrix.from_rows([[2, 0], [0, 2 * n]])
    c1_out = c1_square(outside, CharVector.of(-2, 0))
    c1_w = c1 - c1_out
    split_ok = c1_out == 2 and c1_w == Fraction(-2 * n, n + 1)
    items.append(
        CheckItem(
            "restriction_split",
            split_ok,
            f"c1^2 = {c1_out} + ({c1_w}) (expected 2 + (-2n/(n+1)))",
        )
    )

    inertia_total = signature_of_form(Q)
    inertia_out = signature_of_form(outside)
    sigma_total = inertia_total[0] - inertia_total[1]
    sigma_out = inertia_out[0] - inertia_out[1]
    sigma_w = sigma_total - sigma_out
    rank_total = inertia_total[0] + inertia_total[1]
    rank_out = inertia_out[0] + inertia_out[1]
    b2_w = rank_total - rank_out
    items.append(
        CheckItem(
            "signature_and_b2",
            inertia_total == (2, 1, 0) and sigma_w == -1 and b2_w == 1,
            f"inertia {inertia_total}, sigma(W) = {sigma_total} - {sigma_out} = {sigma_w}, "
            f"b2(W) = {b2_w}",
        )
    )

    surfaces = {"F_K": (1, 0, 0), "F_J": (0, 1, 0), "F_KJ": (1, -1, 2 * n)}
    pairings = {
        name: sum(c * f for c, f in zip(v.coords, fv)) for name, fv in surfaces.items()
    }
    framings = {"F_K": 2, "F_J": 2 * n, "F_KJ": 2 * n + 2}
    labels = {name: (pairings[name] + framings[name]) // 2 for name in surfaces}
    pairings_ok = (
        pairings == {"F_K": -2, "F_J": 0, "F_KJ": -2}
        and labels == {"F_K": 0, "F_J": n, "F_KJ": n}
    )
    items.append(
        CheckItem(
            "pairings_and_spinc_labels",
            pairings_ok,
            f"<c1, F> = {pairings}, Spin^c labels = {labels}",
        )
    )

    # inequality reduction: c1(s|_W)^2 + b2(W) <= 4d(Y_2) - 4d(Y_1), with the
    # surgery formula substituted at labels (0, n, n).  The lens terms and the
    # cobordism data must cancel exactly, leaving 0 <= 8(V_0(K)+V_n(J)-V_n(K#J)).
    idx_k = min(0, 2)
    idx_j = min(n, n)
    idx_kj = min(n, n + 2)
    lens_part = (
        4 * lens_d(2 * n + 2, 1, n) - 4 * lens_d(2, 1, 0) - 4 * lens_d(2 * n, 1, n)
    )
    constant = lens_part - (c1_w + b2_w)
    reduction_ok = constant == 0 and (idx_k, idx_j, idx_kj) == (0, n, n)
    items.append(
        CheckItem(
            "inequality_reduction",
            reduction_ok,
            f"constant terms cancel to {constant}; residue is "
            f"0 <= 8*(V_{idx_k}(K) + V_{idx_j}(J) - V_{idx_kj}(K#J))",
        )
    )

    return CobordismReport(
        n=n,
        items=items,
        skipped=("V_0(K # J) <= V_0(K) + V_0(J) handle diagram: unavailable, not replayed",),
        c1_sq=c1,
        c1_outside=c1_out,
        c1_cobordism=c1_w,
        sigma_total=sigma_total,
        sigma_outside=sigma_out,
        sigma_cobordism=sigma_w,
        b2_cobordism=b2_w,
    )
