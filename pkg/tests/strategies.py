"""Hypothesis strategies and brute-force oracles shared by the tests."""

import random

from hypothesis import strategies as st

from qforms.groups import FiniteGroup, FreeAbelianGroup, InfiniteDihedralGroup
from qforms.rings import FormParameter, GroupRing
from qforms.sampling import group_radius, small_finite_groups

FINITE = small_finite_groups()
GROUPS = FINITE + [
    FreeAbelianGroup(1, (1,)),
    FreeAbelianGroup(1, (-1,)),
    FreeAbelianGroup(2, (1, -1)),
    InfiniteDihedralGroup(1, 1),
    InfiniteDihedralGroup(-1, 1),
    InfiniteDihedralGroup(-1, -1),
]

groups = st.sampled_from(GROUPS)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def elements_of(ring, height=5, size=4):
    elems = ring.group.elements(group_radius(ring.group))
    term = st.tuples(st.sampled_from(elems), st.integers(-height, height))
    return st.lists(term, max_size=size).map(ring.element)


@st.composite
def ring_and_elements(draw, count=3, group=None):
    g = draw(groups) if group is None else group
    ring = GroupRing(g)
    return (ring,) + tuple(draw(elements_of(ring)) for _ in range(count))


def forms():
    return groups.map(lambda g: FormParameter(GroupRing(g)))


def rng_from(seed):
    return random.Random(seed)


# -- oracles -----------------------------------------------------------------


def regular_representation_product(group, x, y):
    """x * y over a finite group through the left regular representation.

    L(x) is the |G| x |G| integer matrix with L(x)[k][h] = x_g where g h = k;
    the product is L(x) applied to the coefficient vector of y.
    """
    n = group.order
    xv = [x.coefficient(g) for g in range(n)]
    yv = [y.coefficient(g) for g in range(n)]
    L = [[0] * n for _ in range(n)]
    for h in range(n):
        for k in range(n):
            g = group.mul(k, group.inv(h))
            L[k][h] = xv[g]
    return [sum(L[k][h] * yv[h] for h in range(n)) for k in range(n)]


def in_lambda_min(x):
    """Membership in {a - a-bar} checked without the reduction code.

    x lies in Lambda_min iff x is skew (conj x = -x) and each self-inverse
    g with omega(g) = -1 carries an even coefficient.
    """
    if x.conj() != -x:
        return False
    group = x.ring.group
    for g, c in x.terms:
        if group.inv(g) == g and group.char(g) == -1 and c % 2:
            return False
    return True


def matrix_product_oracle(M, cols_list):
    """Compose column tuples by explicit matrix multiplication (rightmost first)."""
    from qforms.forms import Vector
    from qforms.transvections import apply_matrix

    basis = M.basis()
    cur = list(basis)
    for cols in reversed(cols_list):
        cur = [apply_matrix(cols, c) for c in cur]
    return tuple(Vector(c.coords) for c in cur)
