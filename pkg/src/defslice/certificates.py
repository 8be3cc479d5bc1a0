"""Per-atom invariant certificates and the V_0-preserving substitution axiom.

Certificates are axioms, not computations: each generator knot carries the
invariant data we take as given (tau, genus, L-space flag, Alexander
polynomial, V_0 values).  Torus knot certificates are derived on demand;
user atoms are loaded from a JSON registry.  The database is immutable
after construction, so concurrent reads are safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .knotexpr import (
    Atom,
    KnotExpr,
    Sum,
    WHITEHEAD_TREFOIL,
    normalize,
    torus_atom,
    torus_params,
)
from .laurent import LaurentPoly, symmetric_normalized, torsion_coefficient, torus_alexander


class CertificateError(ValueError):
    pass


class UnknownAtomError(CertificateError):
    pass


class CertificateGapError(CertificateError):
    """An evaluation needed certificate data the atom does not carry."""


@dataclass(frozen=True)
class AtomCertificate:
    name: str
    tau: int | None = None
    genus: int | None = None
    tau_equals_genus: bool = False
    lspace: bool = False
    alexander: LaurentPoly | None = None
    v0: int | None = None
    v0_mirror: int | None = None
    topologically_slice: bool = False

    def __post_init__(self):
        if self.genus is not None and self.genus < 0:
            raise CertificateError(f"{self.name}: genus must be >= 0")
        if self.v0 is not None and self.v0 < 0:
            raise CertificateError(f"{self.name}: v0 must be >= 0")
        if self.v0_mirror is not None and self.v0_mirror < 0:
            raise CertificateError(f"{self.name}: v0_mirror must be >= 0")
        if self.tau_equals_genus and (
            self.tau is None or self.genus is None or self.tau != self.genus
        ):
            raise CertificateError(
                f"{self.name}: tau_equals_genus requires tau and genus present and equal"
            )
        if self.alexander is not None:
            if not self.alexander.is_symmetric() or self.alexander.eval_at_one() != 1:
                raise CertificateError(
                    f"{self.name}: Alexander polynomial must be symmetric with value 1 at t=1"
                )
        if self.lspace:
            # L-space knots: V_k data comes from the Alexander polynomial and
            # tau = genus = its top exponent.
            if self.alexander is None:
                raise CertificateError(f"{self.name}: L-space atom needs an Alexander polynomial")
            deg = self.alexander.degree or 0
            if self.tau != deg or self.genus != deg:
                raise CertificateError(
                    f"{self.name}: L-space atom needs tau = genus = {deg}"
                )


def builtin(name: str) -> AtomCertificate:
    """Certificate for a built-in atom: O, T(p,q) with coprime p,q >= 2,
    or the positively-clasped untwisted Whitehead double of the trefoil."""
    if name == "O":
        return AtomCertificate(
            name="O",
            tau=0,
            genus=0,
            tau_equals_genus=True,
            lspace=True,
            alexander=LaurentPoly.one(),
            v0=0,
            v0_mirror=0,
            topologically_slice=True,
        )
    if name == WHITEHEAD_TREFOIL:
        return AtomCertificate(
            name=name,
            tau=1,
            genus=1,
            tau_equals_genus=True,
            lspace=False,
            alexander=LaurentPoly.one(),
            v0=1,
            topologically_slice=True,
        )
    tq = torus_params(name)
    if tq is not None:
        p, q = tq
        if p < 2 or q < 2:
            raise UnknownAtomError(f"torus atom requires p,q >= 2: {name}")
        alex = torus_alexander(p, q)  # validates coprimality
        g = (p - 1) * (q - 1) // 2
        return AtomCertificate(
            name=name,
            tau=g,
            genus=g,
            tau_equals_genus=True,
            lspace=True,
            alexander=alex,
            v0=torsion_coefficient(alex, 0),
        )
    raise UnknownAtomError(f"unknown atom name: {name}")


class CertificateDB:
    """Immutable mapping atom name -> certificate, over the built-ins."""

    def __init__(self, atoms=()):
        self._atoms = {c.name: c for c in atoms}

    def get(self, name: str) -> AtomCertificate:
        if name in self._atoms:
            return self._atoms[name]
        return builtin(name)

    def knows(self, name: str) -> bool:
        try:
            self.get(name)
            return True
        except UnknownAtomError:
            return False

    def with_atom(self, cert: AtomCertificate) -> "CertificateDB":
        """New database with one certificate added or replaced."""
        atoms = dict(self._atoms)
        atoms[cert.name] = cert
        return CertificateDB(atoms.values())

    def names(self):
        return sorted(self._atoms)


_DEFAULT = CertificateDB()


def default_db() -> CertificateDB:
    return _DEFAULT


def resolve_db(db) -> CertificateDB:
    """Accept None, a CertificateDB, or anything carrying a .db attribute."""
    if db is None:
        return _DEFAULT
    if isinstance(db, CertificateDB):
        return db
    inner = getattr(db, "db", None)
    if isinstance(inner, CertificateDB):
        return inner
    raise TypeError(f"cannot resolve certificate database from {db!r}")


def _poly_from_pairs(pairs):
    return symmetric_normalized(LaurentPoly((int(e), int(a)) for e, a in pairs))


def load_registry(path) -> CertificateDB:
    """Load user atoms from a JSON registry file.

    Schema: {"atoms": [{"name": str, "tau": int?, "genus": int?,
    "tau_equals_genus": bool?, "lspace": bool?,
    "alexander": [[exp, coeff], ...]?, "v0": int?, "v0_mirror": int?,
    "topologically_slice": bool?}, ...]}.

    Records replace any built-in certificate of the same name, so a record
    must be complete on its own.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"registry file {path} is not valid JSON: {exc}") from None
    records = data.get("atoms", [])
    atoms = []
    for rec in records:
        if "name" not in rec:
            raise CertificateError(f"registry record without a name: {rec!r}")
        alex = None
        if rec.get("alexander") is not None:
            try:
                alex = _poly_from_pairs(rec["alexander"])
            except ValueError as exc:
                raise CertificateError(f"{rec['name']}: bad Alexander data: {exc}") from None
        atoms.append(
            AtomCertificate(
                name=rec["name"],
                tau=rec.get("tau"),
                genus=rec.get("genus"),
                tau_equals_genus=bool(rec.get("tau_equals_genus", False)),
                lspace=bool(rec.get("lspace", False)),
                alexander=alex,
                v0=rec.get("v0"),
                v0_mirror=rec.get("v0_mirror"),
                topologically_slice=bool(rec.get("topologically_slice", False)),
            )
        )
    return CertificateDB(atoms)


@dataclass(frozen=True)
class NuEquivalenceAxiom:
    """Record that lhs and rhs have nu+(lhs # rhs*) = nu+(rhs # lhs*) = 0.

    Such a pair shares V_0 and nu+; the engine uses exactly that strength
    and nothing more (in particular not tau or signatures).
    """

    lhs: KnotExpr
    rhs: KnotExpr


def whitehead_axiom(k: int) -> NuEquivalenceAxiom:
    """The k-fold sum of Wh(T(2,3)) shares V_0 and nu+ with T(2,2k+1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    wh = Atom(WHITEHEAD_TREFOIL)
    lhs = wh if k == 1 else Sum(tuple([wh] * k))
    return NuEquivalenceAxiom(lhs=lhs, rhs=torus_atom(2, 2 * k + 1))


def nu_equiv_reduce(e: KnotExpr) -> KnotExpr:
    """Replace the group of Wh(T(2,3)) summands at the root by T(2,2k+1).

    The result is valid ONLY as input to V_0 and nu+ evaluation; tau and
    signatures of the reduced expression are unrelated to the original.
    Non-Whitehead summands are kept untouched, in order.
    """
    e = normalize(e)
    wh = Atom(WHITEHEAD_TREFOIL)
    if e == wh:
        return torus_atom(2, 3)
    if not isinstance(e, Sum):
        return e
    k = sum(1 for p in e.parts if p == wh)
    if k == 0:
        return e
    replacement = torus_atom(2, 2 * k + 1)
    parts = []
    placed = False
    for p in e.parts:
        if p == wh:
            if not placed:
                parts.append(replacement)
                placed = True
        else:
            parts.append(p)
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))
