"""Hypothesis strategies for random knot expressions."""

from hypothesis import strategies as st

from defslice.knotexpr import Atom, Cable, Mirror, Sum, WHITEHEAD_TREFOIL

ATOM_NAMES = ["O", "T(2,3)", "T(2,5)", "T(3,4)", WHITEHEAD_TREFOIL]

atoms = st.sampled_from(ATOM_NAMES).map(Atom)

# coprime (p, q) pairs with q >= 1, kept small so V-sequences stay short
_CABLE_PQ = [(2, 1), (2, 3), (3, 1), (3, 2), (4, 1), (2, 5), (5, 1)]
_CABLE_PQ_ANY = _CABLE_PQ + [(2, -1), (3, -2), (2, -3)]


def _extend(children, cable_pq):
    return st.one_of(
        children.map(Mirror),
        st.tuples(children, children).map(lambda t: Sum(t)),
        st.tuples(children, children, children).map(lambda t: Sum(t)),
        st.tuples(st.sampled_from(cable_pq), children).map(
            lambda t: Cable(t[0][0], t[0][1], t[1])
        ),
    )


def expressions(max_leaves=5):
    """Random expressions with cables restricted to q >= 1."""
    return st.recursive(atoms, lambda c: _extend(c, _CABLE_PQ), max_leaves=max_leaves)


def expressions_any_cable(max_leaves=5):
    """Random expressions that may contain cables with q <= 0."""
    return st.recursive(atoms, lambda c: _extend(c, _CABLE_PQ_ANY), max_leaves=max_leaves)
