"""Hyperbolic pairs: completion of a unimodular isotropic vector, and
transitivity of the elementary transvection subgroup checked by search.

The search works on M = V _|_ H(P), P free of rank r, with basis order
V, p_1..p_r, q_1..q_r. The generator families are the transvections
sigma_{u,a,v} with (u, v) drawn from

    EU_P        u, v in P           EU_Pbar    u, v in P-bar
    HE_P_Pbar   u in P, v in P-bar  HE_Pbar_P  u in P-bar, v in P
    EU_P_V      u in P, v in V      EU_Pbar_V  u in P-bar, v in V

(P-bar is the span of the q_i). Over a finite coefficient ring these are
finite sets, and breadth-first search over pairs (p, q) either connects
two pairs or proves they are not connected within the given depth.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field

from .errors import InternalCheckFailed, PreconditionViolation, Unsupported
from .forms import QuadraticModule, Vector, hyperbolic, is_unimodular, orthogonal_sum, \
    zero_module
from .transvections import Transvection, compose, matrix_of


@dataclass(frozen=True)
class HyperbolicPair:
    p: Vector
    q: Vector

    def check(self, M):
        if not M.mu_of(self.p).is_zero():
            raise PreconditionViolation("p_isotropic", "mu(p) != 0")
        if not M.mu_of(self.q).is_zero():
            raise PreconditionViolation("q_isotropic", "mu(q) != 0")
        if M.inner(self.p, self.q) != M.ring.one:
            raise PreconditionViolation("pairing", "<p, q> != 1")
        return self

    def is_valid(self, M):
        try:
            self.check(M)
        except PreconditionViolation:
            return False
        return True


def complete_pair(M, p, y=None):
    """Return a hyperbolic pair (p, q) given p isotropic and <p, y> a unit.

    y is rescaled so that <p, y> = 1 and then corrected by the canonical
    representative c of mu(y): q = y - c p. Without ``y`` a dual vector is
    looked up with :func:`is_unimodular`.
    """
    ring = M.ring
    if not M.form.lambda_is_one:
        raise PreconditionViolation("lambda", "completion is implemented for lambda = +1")
    if not M.mu_of(p).is_zero():
        raise PreconditionViolation("p_isotropic", "mu(p) != 0")
    if y is None:
        res = is_unimodular(M, p)
        if not res.status:
            raise PreconditionViolation("p_unimodular", f"no dual vector found ({res.reason})")
        y = res.witness
    s = M.inner(p, y)
    s_inv = s.trivial_unit_inverse()
    if s_inv is None:
        raise PreconditionViolation("witness_unit", f"<p, y> = {s!r} is not a trivial unit")
    y = s_inv.conj() * y
    c = M.mu_of(y)
    q = y - c * p
    pair = HyperbolicPair(p, q)
    if not pair.is_valid(M):
        raise InternalCheckFailed("completed pair fails its own check")
    return pair


# -- the search setting ------------------------------------------------------


FAMILIES = ("EU_P", "EU_Pbar", "HE_P_Pbar", "HE_Pbar_P", "EU_P_V", "EU_Pbar_V")

_SLOTS = {
    "EU_P": ("P", "P"),
    "EU_Pbar": ("Pbar", "Pbar"),
    "HE_P_Pbar": ("P", "Pbar"),
    "HE_Pbar_P": ("Pbar", "P"),
    "EU_P_V": ("P", "V"),
    "EU_Pbar_V": ("Pbar", "V"),
}


@dataclass
class BassModule:
    """V _|_ H(P) with rank(P) = r, plus index bookkeeping."""

    V: QuadraticModule
    r: int
    module: QuadraticModule = field(init=False)

    def __post_init__(self):
        self.module = orthogonal_sum(self.V, hyperbolic(self.V.form, self.r))

    @classmethod
    def over(cls, form, r, V=None):
        return cls(V if V is not None else zero_module(form), r)

    @property
    def ring(self):
        return self.module.ring

    def indices(self, space):
        kv = self.V.rank
        if space == "V":
            return list(range(kv))
        if space == "P":
            return list(range(kv, kv + self.r))
        if space == "Pbar":
            return list(range(kv + self.r, kv + 2 * self.r))
        raise Unsupported(f"unknown subspace {space!r}")

    def standard_pair(self, i=0):
        kv = self.V.rank
        M = self.module
        return HyperbolicPair(M.e(kv + i), M.e(kv + self.r + i))


def coefficient_pool(ring, height=1, cap=4096):
    """The finite set of scalars searched over.

    Over Z/m with a finite group this is the whole ring; over Z it is
    {c g : |c| <= height, g within radius one of the identity}.
    """
    group = ring.group
    if ring.modulus is not None:
        if group.kind != "finite":
            raise Unsupported("finite coefficient rings need a finite group")
        m = ring.modulus
        if m ** group.order > cap:
            raise Unsupported(f"(Z/{m})[G] has more than {cap} elements")
        elems = group.elements()
        return [ring.element(zip(elems, cs)) for cs in itertools.product(range(m), repeat=len(elems))]
    out = [ring.zero]
    for g in group.elements(1):
        for c in range(1, height + 1):
            out.append(ring.basis(g, c))
            out.append(ring.basis(g, -c))
    return out


def span_vectors(M, idx, pool):
    """All vectors supported on ``idx`` with coordinates in ``pool``."""
    z = M.ring.zero
    for cs in itertools.product(pool, repeat=len(idx)):
        coords = [z] * M.rank
        for i, c in zip(idx, cs):
            coords[i] = c
        yield Vector(coords)


@dataclass
class Generator:
    family: str
    transvection: Transvection

    def __call__(self, x):
        return self.transvection(x)


def enumerate_generators(bm, family, pool=None, height=1):
    """All valid, non-identity transvections of a family with entries in the pool.

    Deduplicated by matrix; order is the enumeration order of (u, v, a).
    """
    if family not in _SLOTS:
        raise Unsupported(f"unknown generator family {family!r}")
    M = bm.module
    ring = M.ring
    pool = pool if pool is not None else coefficient_pool(ring, height)
    us, vs = (bm.indices(s) for s in _SLOTS[family])
    if not us or not vs:
        return []
    ident = tuple(M.basis())
    seen = {ident}
    out = []
    v_list = list(span_vectors(M, vs, pool))
    for u in span_vectors(M, us, pool):
        if u.is_zero() or not M.mu_of(u).is_zero():
            continue
        for v in v_list:
            if not M.inner(u, v).is_zero():
                continue
            mv = M.mu_of(v)
            for a in pool:
                if not M.form.reduce(mv - a).is_zero():
                    continue
                t = Transvection(M, u, a, v, family)
                mat = matrix_of(t)
                if mat in seen:
                    continue
                seen.add(mat)
                out.append(Generator(family, t.check()))
    return out


def all_generators(bm, families=FAMILIES, pool=None, height=1):
    """Generators of all families; a matrix already produced by an earlier family is dropped."""
    out, seen = [], set()
    for fam in families:
        for g in enumerate_generators(bm, fam, pool, height):
            mat = matrix_of(g.transvection)
            if mat not in seen:
                seen.add(mat)
                out.append(g)
    return out


@dataclass
class TransportResult:
    status: str  # "found", "exhausted" or "budget"
    word: list = None  # product order: word[-1] is applied first
    depth: int = 0
    visited: int = 0
    warnings: list = field(default_factory=list)

    @property
    def found(self):
        return self.status == "found"


def _state(pair):
    return (pair.p, pair.q)


def _low_rank_warning(bm):
    if bm.r < 2:
        msg = (f"rank(P) = {bm.r} < 2: transitivity on hyperbolic pairs is not expected "
               "at this rank; unreachable pairs are findings, not errors")
        warnings.warn(msg, stacklevel=3)
        return [msg]
    return []


def orbit(bm, source, generators, max_depth=8, node_budget=100_000, stop_at=None):
    """Breadth-first orbit of ``source``; returns (parents, depth_reached, status).

    ``parents`` maps each state to (previous state, generator index) or None
    for the source.
    """
    start = _state(source)
    parents = {start: None}
    frontier = deque([start])
    depth = 0
    if stop_at is not None and start == stop_at:
        return parents, 0, "found"
    while frontier and depth < max_depth:
        depth += 1
        nxt = deque()
        for st in frontier:
            p, q = st
            for gi, g in enumerate(generators):
                new = (g(p), g(q))
                if new in parents:
                    continue
                parents[new] = (st, gi)
                if stop_at is not None and new == stop_at:
                    return parents, depth, "found"
                if len(parents) > node_budget:
                    return parents, depth, "budget"
                nxt.append(new)
        frontier = nxt
    return parents, depth, ("closed" if not frontier else "exhausted")


def _word(parents, state, generators):
    word = []
    while parents[state] is not None:
        prev, gi = parents[state]
        word.append(generators[gi])
        state = prev
    # collected from the last step backwards, which is already product order
    return word


def transport(bm, source, target, generators=None, max_depth=8, node_budget=100_000, height=1):
    """Find a shortest word in the generators carrying ``source`` to ``target``."""
    M = bm.module
    source.check(M)
    target.check(M)
    notes = _low_rank_warning(bm)
    if generators is None:
        generators = all_generators(bm, height=height)
    goal = _state(target)
    parents, depth, status = orbit(bm, source, generators, max_depth, node_budget, stop_at=goal)
    if status != "found":
        status = "budget" if status == "budget" else "exhausted"
        return TransportResult(status, None, depth, len(parents), notes)
    word = _word(parents, goal, generators)
    cols = compose(M, [g.transvection for g in word])
    from .transvections import apply_matrix

    if (apply_matrix(cols, source.p), apply_matrix(cols, source.q)) != goal:
        raise InternalCheckFailed("transport word does not map source to target")
    return TransportResult("found", word, len(word), len(parents), notes)


def enumerate_hyperbolic_pairs(bm, pool=None):
    """Every hyperbolic pair with coordinates in the pool (brute force)."""
    M = bm.module
    pool = pool if pool is not None else coefficient_pool(M.ring)
    idx = list(range(M.rank))
    vecs = list(span_vectors(M, idx, pool))
    iso = [x for x in vecs if M.mu_of(x).is_zero()]
    one = M.ring.one
    return [HyperbolicPair(p, q) for p in iso for q in iso if M.inner(p, q) == one]
