"""Symbolic knot expressions: atoms, mirrors, connected sums, cables.

Expression grammar (whitespace-insensitive):

    expr := term ('#' term)*
    term := INT '*' term | atom | 'mirror(' expr ')' | term '*'
          | 'cable(' INT ',' INT ',' expr ')' | '(' expr ')'
    atom := 'O' | 'T(' INT ',' INT ')' | 'Wh(' atom ')' | IDENT

Normal form: no mirror directly above a mirror or a connected sum, sums
are flattened, cables of the unknot collapse to torus atoms.  Expressions
are immutable after construction and safe to share between evaluations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Union

from .laurent import LaurentPoly, torus_alexander


class ParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class CableSignError(ValueError):
    """Raised when an invariant rule is asked about a cable with q <= 0.

    Such cables are representable, but none of the evaluation rules are
    stated for them, so every invariant operation rejects them.
    """


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be nonempty")


@dataclass(frozen=True)
class Mirror:
    child: "KnotExpr"


@dataclass(frozen=True)
class Sum:
    parts: tuple

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("connected sum needs at least two summands")


@dataclass(frozen=True)
class Cable:
    p: int
    q: int
    companion: "KnotExpr"

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"cable requires p >= 1, got p={self.p}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"cable requires gcd(p,q)=1, got ({self.p},{self.q})")


KnotExpr = Union[Atom, Mirror, Sum, Cable]

UNKNOT = Atom("O")
WHITEHEAD_TREFOIL = "Wh(T(2,3))"

_TORUS_NAME = re.compile(r"^T\((\d+),(\d+)\)$")


def torus_params(name: str):
    """(p, q) for a torus atom name like 'T(2,3)', else None."""
    m = _TORUS_NAME.match(name)
    if not m:
        return None
    return int(m.group(1)), int(m.group(2))


def torus_atom(p: int, q: int) -> Atom:
    return Atom(f"T({p},{q})")


def normalize(e: KnotExpr) -> KnotExpr:
    """Rewrite to normal form; idempotent, knot type unchanged."""
    if isinstance(e, Atom):
        return e
    if isinstance(e, Mirror):
        c = normalize(e.child)
        if isinstance(c, Mirror):
            return c.child
        if isinstance(c, Sum):
            return normalize(Sum(tuple(Mirror(p) for p in c.parts)))
        return Mirror(c)
    if isinstance(e, Sum):
        parts = []
        for p in e.parts:
            n = normalize(p)
            parts.extend(n.parts if isinstance(n, Sum) else (n,))
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))
    if isinstance(e, Cable):
        c = normalize(e.companion)
        if e.p == 1:
            return c
        if c == UNKNOT:
            if e.q >= 2:
                return torus_atom(e.p, e.q)
            if e.q in (0, 1):
                return UNKNOT
        return Cable(e.p, e.q, c)
    raise TypeError(f"not a knot expression: {e!r}")


def mirror(e: KnotExpr) -> KnotExpr:
    return normalize(Mirror(e))


def check_positive_cables(e: KnotExpr):
    """Raise CableSignError if any cable in the expression has q <= 0."""
    if isinstance(e, Mirror):
        check_positive_cables(e.child)
    elif isinstance(e, Sum):
        for p in e.parts:
            check_positive_cables(p)
    elif isinstance(e, Cable):
        if e.q <= 0:
            raise CableSignError(
                f"cable with q={e.q} <= 0 is outside every evaluation rule"
            )
        check_positive_cables(e.companion)


def render(e: KnotExpr) -> str:
    """Textual form; parse(render(e)) == e for normalized expressions."""
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, Mirror):
        inner = render(e.child)
        if isinstance(e.child, (Sum, Mirror)):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(e, Cable):
        return f"cable({e.p},{e.q},{render(e.companion)})"
    if isinstance(e, Sum):
        return " # ".join(
            f"({render(p)})" if isinstance(p, Sum) else render(p) for p in e.parts
        )
    raise TypeError(f"not a knot expression: {e!r}")


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[#(),*])"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, db):
        self.tokens = tokens
        self.i = 0
        self.db = db

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.peek()
        if val != value:
            got = repr(val) if val is not None else "end of input"
            raise ParseError(f"expected {value!r}, got {got}", pos)
        self.i += 1
        return pos

    def expect_int(self):
        kind, val, pos = self.peek()
        if kind != "int":
            got = repr(val) if val is not None else "end of input"
            raise ParseError(f"expected integer, got {got}", pos)
        self.i += 1
        return int(val), pos

    def parse_expr(self):
        terms = [self.parse_term()]
        while self.peek()[1] == "#":
            self.next()
            terms.append(self.parse_term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def parse_term(self):
        kind, val, pos = self.peek()
        if kind == "int":
            k, kpos = self.expect_int()
            self.expect("*")
            sub = self.parse_term()
            if k < 1:
                raise ParseError(f"multiplicity must be >= 1, got {k}", kpos)
            e = sub if k == 1 else Sum(tuple([sub] * k))
        elif val == "(":
            self.next()
            e = self.parse_expr()
            self.expect(")")
        elif val == "mirror":
            self.next()
            self.expect("(")
            e = Mirror(self.parse_expr())
            self.expect(")")
        elif val == "cable":
            self.next()
            self.expect("(")
            p, ppos = self.expect_int()
            self.expect(",")
            q, _ = self.expect_int()
            self.expect(",")
            companion = self.parse_expr()
            self.expect(")")
            try:
                e = Cable(p, q, companion)
            except ValueError as exc:
                raise ParseError(str(exc), ppos) from None
        else:
            e = self.parse_atom()
        while self.peek()[1] == "*":
            self.next()
            e = Mirror(e)
        return e

    def parse_atom(self):
        kind, val, pos = self.peek()
        if kind != "ident":
            got = repr(val) if val is not None else "end of input"
            raise ParseError(f"expected a knot atom, got {got}", pos)
        self.next()
        if val == "O":
            return UNKNOT
        if val == "T" and self.peek()[1] == "(":
            self.next()
            p, ppos = self.expect_int()
            self.expect(",")
            q, qpos = self.expect_int()
            self.expect(")")
            if p < 2 or q < 2:
                raise ParseError(f"torus atom requires p,q >= 2, got ({p},{q})", ppos)
            if gcd(p, q) != 1:
                raise ParseError(f"torus atom requires gcd(p,q)=1, got ({p},{q})", ppos)
            return torus_atom(p, q)
        if val == "Wh" and self.peek()[1] == "(":
            self.next()
            inner = self.parse_atom()
            self.expect(")")
            if inner != Atom("T(2,3)"):
                raise ParseError(
                    f"unknown atom name: Wh({inner.name}) "
                    "(only Wh(T(2,3)) is available)",
                    pos,
                )
            return Atom(WHITEHEAD_TREFOIL)
        if self.db.knows(val):
            return Atom(val)
        raise ParseError(f"unknown atom name: {val}", pos)


def parse(text: str, db=None) -> KnotExpr:
    """Parse an expression string and return the normalized expression."""
    from . import certificates

    db = certificates.resolve_db(db)
    tokens = _tokenize(text)
    parser = _Parser(tokens, db)
    e = parser.parse_expr()
    kind, val, pos = parser.peek()
    if kind is not None:
        raise ParseError(f"trailing input {val!r}", pos)
    return normalize(e)


def alexander(e: KnotExpr, db=None) -> LaurentPoly:
    """Alexander polynomial, exact and symmetric-normalized.

    Multiplicative under connected sum, fixed by mirroring, and for cables
    Delta_{K_{p,q}}(t) = Delta_K(t^p) * Delta_{T(p,q)}(t).  Atom values
    come from the certificate database.
    """
    from . import certificates

    db = certificates.resolve_db(db)
    return _alex(normalize(e), db)


def _alex(e, db):
    if isinstance(e, Atom):
        cert = db.get(e.name)
        if cert.alexander is None:
            from .certificates import CertificateGapError

            raise CertificateGapError(
                f"atom {e.name!r} has no Alexander polynomial in its certificate"
            )
        return cert.alexander
    if isinstance(e, Mirror):
        return _alex(e.child, db)
    if isinstance(e, Sum):
        out = LaurentPoly.one()
        for p in e.parts:
            out = out * _alex(p, db)
        return out
    if isinstance(e, Cable):
        return _alex(e.companion, db).subst_power(e.p) * torus_alexander(e.p, e.q)
    raise TypeError(f"not a knot expression: {e!r}")


def topologically_slice_certified(e: KnotExpr, db=None) -> bool:
    """True iff the Alexander polynomial is 1.

    False means "not certified by this criterion", not "not topologically
    slice".
    """
    return alexander(e, db) == LaurentPoly.one()
