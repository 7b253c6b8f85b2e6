"""Stability bounds for virtually abelian fundamental groups, and the
ring-theoretic certificates behind them at bounded degree.

pi sits in 1 -> Gamma -> pi -> G -> 1 with Gamma = Z^n and G finite. With
A0 = Z[Gamma^omega], R = A0^G and R0 the subring generated by norms
r * conj(r), the stable range is d = n + 1 and X, Y become homeomorphic
after n + 2 copies of S^2 x S^2 (d plus the one summand split off first).

Krull dimensions are not computed; d comes from the formula. The
certificates here are finite checks up to a stated degree, never proofs
for all degrees, and every report says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidElement, PreconditionViolation
from .groups import FiniteGroup, FreeAbelianGroup, InfiniteDihedralGroup
from .rings import GroupRing


# -- integer linear algebra --------------------------------------------------


def int_det(m):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_matmul(x, y):
    return [[sum(x[i][t] * y[t][j] for t in range(len(y))) for j in range(len(y[0]))]
            for i in range(len(x))]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class IntegerLattice:
    """Z-span of sparse integer vectors, kept in echelon form.

    Each echelon row remembers how it was combined from the inserted
    generators, so membership queries come with an explicit witness.
    """

    def __init__(self, order):
        self.order = order  # coordinate -> position
        self.rows = {}  # pivot coordinate -> (vector, combination)

    def _first(self, vec):
        return min(vec, key=self.order.__getitem__) if vec else None

    @staticmethod
    def _axpy(x, a, y, b):
        """a*x + b*y for sparse dicts."""
        out = {}
        for k, v in x.items():
            out[k] = a * v
        for k, v in y.items():
            out[k] = out.get(k, 0) + b * v
        return {k: v for k, v in out.items() if v}

    def insert(self, vec, label):
        vec = {k: v for k, v in vec.items() if v}
        comb = {label: 1}
        while vec:
            k = self._first(vec)
            if k not in self.rows:
                if vec[k] < 0:
                    vec = {c: -v for c, v in vec.items()}
                    comb = {c: -v for c, v in comb.items()}
                self.rows[k] = (vec, comb)
                return
            rvec, rcomb = self.rows[k]
            a, b = vec[k], rvec[k]
            g, s, t = _xgcd(a, b)
            if g < 0:
                g, s, t = -g, -s, -t
            # new pivot row s*vec + t*row has entry g; the remainder has entry 0
            piv, pcomb = self._axpy(vec, s, rvec, t), self._axpy(comb, s, rcomb, t)
            rem, rcomb2 = self._axpy(vec, b // g, rvec, -(a // g)), \
                self._axpy(comb, b // g, rcomb, -(a // g))
            self.rows[k] = (piv, pcomb)
            vec, comb = rem, rcomb2

    def solve(self, target):
        """A combination of inserted labels equal to ``target``, or None."""
        vec = {k: v for k, v in target.items() if v}
        comb = {}
        while vec:
            k = self._first(vec)
            if k not in self.rows:
                return None
            rvec, rcomb = self.rows[k]
            q, r = divmod(vec[k], rvec[k])
            if r:
                return None
            vec = self._axpy(vec, 1, rvec, -q)
            comb = self._axpy(comb, 1, rcomb, q)
        return comb


# -- virtually abelian input -------------------------------------------------


@dataclass
class VirtuallyAbelianInput:
    """Gamma = Z^n normal of finite index, quotient G acting by integer matrices.

    ``G.omega`` gives the character on chosen coset representatives (the
    extension is assumed split when checking that it is a homomorphism);
    ``omega_gamma`` gives it on the basis of Gamma.
    """

    n: int
    G: FiniteGroup
    action: list
    omega_gamma: tuple = None
    A0: GroupRing = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n
        if self.omega_gamma is None:
            self.omega_gamma = (1,) * n
        self.omega_gamma = tuple(self.omega_gamma)
        if len(self.action) != self.G.order:
            raise InvalidElement("need one action matrix per element of G")
        self.action = [[[int(x) for x in row] for row in m] for m in self.action]
        for g, m in enumerate(self.action):
            if len(m) != n or any(len(row) != n for row in m):
                raise InvalidElement(f"action matrix {g} is not {n}x{n}")
            if int_det(m) not in (1, -1):
                raise InvalidElement(f"action matrix {g} is not invertible over Z")
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        if n and self.action[0] != ident:
            raise InvalidElement("the identity of G must act trivially")
        for g, h in itertools.product(range(self.G.order), repeat=2):
            if n and self.action[self.G.mul(g, h)] != int_matmul(self.action[g], self.action[h]):
                raise InvalidElement(f"action is not a homomorphism at ({g}, {h})")
        self.A0 = GroupRing(FreeAbelianGroup(n, self.omega_gamma))
        gamma = self.A0.group
        for g in range(self.G.order):
            for i in range(n):
                e = tuple(int(i == j) for j in range(n))
                if gamma.char(self.act_exponent(g, e)) != gamma.char(e):
                    raise InvalidElement("omega on Gamma is not invariant under G")

    def act_exponent(self, g, v):
        m = self.action[g]
        return tuple(sum(m[i][j] * v[j] for j in range(self.n)) for i in range(self.n))

    def act(self, g, x):
        return self.A0.element((self.act_exponent(g, v), c) for v, c in x.terms)

    def is_fixed(self, x):
        return all(self.act(g, x) == x for g in range(self.G.order))

    @classmethod
    def infinite_dihedral(cls, omega_a=1, omega_b=1):
        """D_infinity = Z x| C2 with u = ab and the reflection a."""
        # omega(u) = omega(a) omega(b); the coset representative of the
        # nontrivial element is a
        G = FiniteGroup.cyclic(2, omega_a)
        return cls(1, G, [[[1]], [[-1]]], (omega_a * omega_b,))

    @classmethod
    def finite(cls, G):
        return cls(0, G, [[] for _ in range(G.order)], ())

    @classmethod
    def free_abelian(cls, n, omega=None):
        return cls(n, FiniteGroup.cyclic(1), [[[int(i == j) for j in range(n)] for i in range(n)]],
                   omega)


# -- stability bound ---------------------------------------------------------


@dataclass(frozen=True)
class StabilityBound:
    n: int
    d: int
    summands: int


def stability_bound(source):
    """(d, summands) = (n + 1, n + 2) from the rank n of a free-abelian subgroup of finite index.

    ``source`` may be a VirtuallyAbelianInput, one of the group classes,
    or a shortcut: "finite", "infinite_dihedral", ("free_abelian", n).
    """
    if isinstance(source, VirtuallyAbelianInput):
        n = source.n
    elif isinstance(source, FiniteGroup) or source == "finite":
        n = 0
    elif isinstance(source, InfiniteDihedralGroup) or source == "infinite_dihedral":
        n = 1
    elif isinstance(source, FreeAbelianGroup):
        n = source.rank
    elif isinstance(source, tuple) and len(source) == 2 and source[0] == "free_abelian":
        n = int(source[1])
    else:
        raise PreconditionViolation("bound_input", f"cannot read a rank from {source!r}")
    if n < 0:
        raise PreconditionViolation("bound_input", "rank must be non-negative")
    return StabilityBound(n, n + 1, n + 2)


# -- invariant and norm generators --------------------------------------------


def degree(x):
    """Largest total absolute exponent in the support of a Laurent polynomial."""
    return max((sum(map(abs, v)) for v, _ in x.terms), default=0)


def monomials(n, bound):
    vs = [v for v in itertools.product(range(-bound, bound + 1), repeat=n)
          if sum(map(abs, v)) <= bound]
    return sorted(vs, key=lambda v: (sum(map(abs, v)), v))


@dataclass
class GeneratorsCertificate:
    ring: str  # "R" or "R0"
    generators: list
    degree_bound: int
    trace: list
    closure: dict = field(default_factory=dict)
    bounded = True


def invariant_generators(inp, degree_bound=4):
    """Orbit sums of the Laurent monomials of degree <= bound; each checked G-fixed."""
    if degree_bound < 1:
        raise PreconditionViolation("degree_bound", "degree bound must be at least 1")
    seen = set()
    gens, trace = [], []
    for v in monomials(inp.n, degree_bound):
        orb = frozenset(inp.act_exponent(g, v) for g in range(inp.G.order))
        if orb in seen:
            continue
        seen.add(orb)
        x = inp.A0.element((w, 1) for w in orb)
        if not inp.is_fixed(x):
            raise PreconditionViolation("invariance", f"orbit sum of {v} is not G-fixed")
        gens.append(x)
        trace.append(f"orbit{v}")
    return GeneratorsCertificate("R", gens, degree_bound, trace,
                                 {"all_fixed": True, "orbits": len(gens)})


def norm(x):
    return x * x.conj()


def norm_generators(inp, cert_R, degree_bound=4):
    """Norms of R-generators and of pairwise sums, closed under products up to the bound."""
    gens = cert_R.generators
    found, trace = {}, []

    def add(x, why):
        if x.is_zero() or x in found or degree(x) > degree_bound:
            return False
        if not inp.is_fixed(x):
            raise PreconditionViolation("invariance", f"{why} is not G-fixed")
        found[x] = why
        trace.append(why)
        return True

    add(inp.A0.one, "N(1)")
    for i, r in enumerate(gens):
        add(norm(r), f"N(r{i})")
    for i, j in itertools.combinations(range(len(gens)), 2):
        add(norm(gens[i] + gens[j]), f"N(r{i}+r{j})")
    changed = True
    while changed:
        changed = False
        current = list(found.items())
        for (x, wx), (y, wy) in itertools.combinations_with_replacement(current, 2):
            if degree(x) + degree(y) <= degree_bound or degree(x * y) <= degree_bound:
                if add(x * y, f"({wx})*({wy})"):
                    changed = True
    return GeneratorsCertificate("R0", list(found), degree_bound, trace,
                                 {"all_fixed": True, "closed_under_products": True})


# -- finite generation as a module --------------------------------------------


@dataclass
class FGReport:
    passed: bool
    degree_bound: int
    per_degree: dict
    failures: list
    witnesses: dict
    cosets: int
    truncated: bool = False
    bounded: bool = True
    note: str = "bounded certificate: only monomials up to degree_bound are checked"


def ring_monomials(ring_gens, cap_degree, max_count=5000):
    """Products of ring generators with degree <= cap_degree, labelled by exponent tuples."""
    gens = [g for g in ring_gens if degree(g) > 0]
    if not ring_gens:
        return [], False
    one = ring_gens[0].ring.one
    out = {one: ()}
    frontier = [(one, ())]
    truncated = False
    while frontier:
        nxt = []
        for x, lab in frontier:
            for i, g in enumerate(gens):
                y = x * g
                if degree(y) > cap_degree or y in out:
                    continue
                if len(out) >= max_count:
                    truncated = True
                    continue
                out[y] = lab + (i,)
                nxt.append((y, lab + (i,)))
        frontier = nxt
    return list(out.items()), truncated


def verify_fg_module(ring_gens, candidates, degree_bound=4, cosets=1):
    """Check that every monomial (coset, u^v) with |v| <= bound is a combination
    sum r_k c_k with r_k in the ring generated by ``ring_gens``.

    ``candidates`` are (coset, A0-element) pairs; a bare element means coset 0.
    """
    cands = [c if isinstance(c, tuple) else (0, c) for c in candidates]
    if not ring_gens or not cands:
        raise PreconditionViolation("fg_input", "need ring generators and candidates")
    A0 = ring_gens[0].ring
    for _, c in cands:
        if c.ring != A0:
            raise PreconditionViolation("fg_context", "candidate over a different ring")
    for g in ring_gens:
        if g.ring != A0:
            raise PreconditionViolation("fg_context", "ring generator over a different ring")
    n = A0.group.rank
    max_cand = max(degree(c) for _, c in cands)
    prods, truncated = ring_monomials(ring_gens, degree_bound + max_cand)

    span = []
    for (r, lab), (ci, (coset, c)) in itertools.product(prods, enumerate(cands)):
        x = r * c
        if not x.is_zero():
            span.append(((lab, ci), {(coset, v): k for v, k in x.terms}))
    coords = sorted({k for _, vec in span for k in vec}
                    | {(cs, v) for cs in range(cosets) for v in monomials(n, degree_bound)},
                    key=lambda k: (k[0], sum(map(abs, k[1])), k[1]))
    lattice = IntegerLattice({k: i for i, k in enumerate(coords)})
    for lab, vec in span:
        lattice.insert(vec, lab)
    span_of = dict(span)

    per_degree, failures, witnesses = {}, [], {}
    for coset in range(cosets):
        for v in monomials(n, degree_bound):
            d = sum(map(abs, v))
            comb = lattice.solve({(coset, v): 1})
            ok = comb is not None
            if ok:
                # recompute the combination from scratch before believing it
                acc = {}
                for lab, k in comb.items():
                    for key, val in span_of[lab].items():
                        acc[key] = acc.get(key, 0) + k * val
                ok = {key: val for key, val in acc.items() if val} == {(coset, v): 1}
            per_degree[d] = per_degree.get(d, True) and ok
            if ok:
                witnesses[(coset, v)] = comb
            else:
                failures.append({"coset": coset, "monomial": v, "degree": d})
    return FGReport(not failures, degree_bound, dict(sorted(per_degree.items())), failures,
                    witnesses, cosets, truncated)
