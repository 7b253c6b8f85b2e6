"""Free quadratic modules over a unitary group ring, stored as Gram matrices.

A vector ``x = sum a_i e_i`` is a :class:`Vector` of left coefficients.
The form is ``<x, y> = sum_ij a_i G_ij conj(b_j)``, so
``<ax, by> = a <x, y> conj(b)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .errors import ContextMismatch, PreconditionViolation
from .rings import FormParameter, RingElement


class Vector:
    """Coordinates of a module element; immutable and hashable."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, ring, n):
        return cls([ring.zero] * n)

    @classmethod
    def basis(cls, ring, n, i, c=None):
        coords = [ring.zero] * n
        coords[i] = ring.one if c is None else c
        return cls(coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other):
        if not isinstance(other, Vector):
            raise TypeError(f"expected a Vector, got {type(other).__name__}")
        if len(other) != len(self):
            raise ContextMismatch(f"vector lengths {len(self)} and {len(other)} differ")

    def __add__(self, other):
        self._check(other)
        return Vector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return Vector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Vector(-a for a in self.coords)

    def __rmul__(self, scalar):
        # left scalar action
        if isinstance(scalar, RingElement):
            return Vector(scalar * a for a in self.coords)
        if isinstance(scalar, int):
            return Vector(a * scalar for a in self.coords)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, Vector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def concat(self, other):
        return Vector(self.coords + other.coords)

    def __repr__(self):
        return f"Vector({list(self.coords)!r})"


# -- matrices over A (lists of rows) -----------------------------------------


def identity_matrix(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def mat_mul(x, y, ring):
    n, k = len(x), len(y)
    m = len(y[0]) if y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero
            for t in range(k):
                if x[i][t].terms and y[t][j].terms:
                    acc = acc + x[i][t] * y[t][j]
            row.append(acc)
        out.append(row)
    return out


def conj_transpose(x):
    if not x:
        return []
    return [[x[i][j].conj() for i in range(len(x))] for j in range(len(x[0]))]


def block_diag(x, y, ring):
    n, m = len(x), len(y)
    out = [list(row) + [ring.zero] * m for row in x]
    out += [[ring.zero] * n + list(row) for row in y]
    return out


def freeze(matrix):
    return tuple(tuple(row) for row in matrix)


@dataclass(frozen=True)
class QuadraticModule:
    """(M, <.,.>, mu) with M free of rank ``rank`` over ``form.ring``.

    ``mu`` holds the refinement on basis vectors as reduced representatives.
    ``inverse_gram`` is an optional nonsingularity certificate.
    """

    form: FormParameter
    gram: tuple
    mu: tuple
    inverse_gram: tuple = None
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        gram = freeze(self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise PreconditionViolation("gram_shape", "Gram matrix must be square")
        if len(self.mu) != n:
            raise PreconditionViolation("mu_shape", "need one refinement value per basis vector")
        ring = self.form.ring
        for x in itertools.chain(itertools.chain.from_iterable(gram), self.mu):
            if x.ring != ring:
                raise ContextMismatch("Gram/mu entry over a different ring")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "mu", tuple(self.form.reduce(m) for m in self.mu))
        if self.inverse_gram is not None:
            object.__setattr__(self, "inverse_gram", freeze(self.inverse_gram))
        if self.validate:
            self.check()

    @property
    def ring(self):
        return self.form.ring

    @property
    def rank(self):
        return len(self.gram)

    def check(self):
        lam = self.form.lam
        n = self.rank
        for i in range(n):
            for j in range(i, n):
                if self.gram[j][i] != lam * self.gram[i][j].conj():
                    raise PreconditionViolation(
                        "hermitian", f"G[{j}][{i}] != lambda * conj(G[{i}][{j}])"
                    )
        for i in range(n):
            m = self.mu[i]
            if not self.form.reduce(m + lam * m.conj() - self.gram[i][i]).is_zero():
                raise PreconditionViolation(
                    "refinement", f"G[{i}][{i}] is not mu + lambda conj(mu) mod Lambda"
                )
        if self.inverse_gram is not None and not self.certificate_ok():
            raise PreconditionViolation("certificate", "inverse_gram is not a two-sided inverse")

    def certificate_ok(self):
        if self.inverse_gram is None:
            return False
        ident = identity_matrix(self.ring, self.rank)
        return (
            mat_mul(self.gram, self.inverse_gram, self.ring) == ident
            and mat_mul(self.inverse_gram, self.gram, self.ring) == ident
        )

    @property
    def nonsingular(self):
        return self.inverse_gram is not None

    def vector(self, coords):
        v = Vector(coords)
        if len(v) != self.rank:
            raise ContextMismatch(f"vector of length {len(v)} in a rank-{self.rank} module")
        return v

    def zero(self):
        return Vector.zero(self.ring, self.rank)

    def e(self, i, c=None):
        return Vector.basis(self.ring, self.rank, i, c)

    def basis(self):
        return [self.e(i) for i in range(self.rank)]

    def _len(self, x):
        if len(x) != self.rank:
            raise ContextMismatch(f"vector of length {len(x)} in a rank-{self.rank} module")

    def gram_times_conj(self, y):
        """The column G conj(y), so that <x, y> = sum_i x_i (G conj(y))_i."""
        self._len(y)
        ring = self.ring
        ybar = [b.conj() for b in y.coords]
        col = []
        for row in self.gram:
            acc = ring.zero
            for g, b in zip(row, ybar):
                if g.terms and b.terms:
                    acc = acc + g * b
            col.append(acc)
        return col

    def inner(self, x, y):
        self._len(x)
        col = self.gram_times_conj(y)
        acc = self.ring.zero
        for a, c in zip(x.coords, col):
            if a.terms and c.terms:
                acc = acc + a * c
        return acc

    def mu_of(self, x):
        """Reduced refinement value, expanded from mu on the basis.

        mu(sum a_i e_i) = sum_i a_i mu_i conj(a_i) + sum_{i<j} a_i G_ij conj(a_j)  (mod Lambda)
        """
        self._len(x)
        ring = self.ring
        acc = ring.zero
        a = x.coords
        abar = [c.conj() for c in a]
        for i in range(self.rank):
            if not a[i].terms:
                continue
            if self.mu[i].terms:
                acc = acc + a[i] * self.mu[i] * abar[i]
            for j in range(i + 1, self.rank):
                g = self.gram[i][j]
                if g.terms and a[j].terms:
                    acc = acc + a[i] * g * abar[j]
        return self.form.reduce(acc)

    def __repr__(self):
        return f"QuadraticModule(rank={self.rank}, {self.ring})"


def inner(M, x, y):
    return M.inner(x, y)


def mu(M, x):
    return M.mu_of(x)


def hyperbolic(form, k):
    """H(A^k) with basis p_1..p_k, q_1..q_k; <p_i, q_j> = delta_ij."""
    ring = form.ring
    if not form.lambda_is_one:
        raise PreconditionViolation("lambda", "the hyperbolic construction here is the (+1) one")
    n = 2 * k
    gram = [[ring.zero] * n for _ in range(n)]
    for i in range(k):
        gram[i][k + i] = ring.one
        gram[k + i][i] = ring.one
    return QuadraticModule(form, gram, [ring.zero] * n, inverse_gram=gram)


def zero_module(form):
    return QuadraticModule(form, (), (), inverse_gram=())


def orthogonal_sum(M1, M2):
    if M1.form != M2.form:
        raise ContextMismatch("orthogonal sum of modules over different unitary rings")
    ring = M1.ring
    inv = None
    if M1.inverse_gram is not None and M2.inverse_gram is not None:
        inv = block_diag(M1.inverse_gram, M2.inverse_gram, ring)
    return QuadraticModule(
        M1.form,
        block_diag(M1.gram, M2.gram, ring),
        M1.mu + M2.mu,
        inverse_gram=inv,
        validate=False,
    )


def permute(M, order):
    """Reorder the basis: new e_i is old e_{order[i]}."""
    if sorted(order) != list(range(M.rank)):
        raise PreconditionViolation("permutation", "order must be a permutation of the basis")
    gram = [[M.gram[i][j] for j in order] for i in order]
    inv = None
    if M.inverse_gram is not None:
        inv = [[M.inverse_gram[i][j] for j in order] for i in order]
    return QuadraticModule(M.form, gram, [M.mu[i] for i in order], inverse_gram=inv)


def change_basis(M, B, B_inv=None):
    """The same module in the basis e'_i = sum_j B[i][j] e_j.

    Given ``B_inv`` the nonsingularity certificate is carried along as
    (B_inv)^* G^-1 B_inv.
    """
    ring = M.ring
    gram = mat_mul(mat_mul(B, M.gram, ring), conj_transpose(B), ring)
    mus = [M.mu_of(Vector(row)) for row in B]
    inv = None
    if B_inv is not None and M.inverse_gram is not None:
        inv = mat_mul(mat_mul(conj_transpose(B_inv), M.inverse_gram, ring), B_inv, ring)
    return QuadraticModule(M.form, gram, mus, inverse_gram=inv)


def coords_in_basis(x, B_inv, ring):
    """Coordinates of x (old basis) in the basis e' = B e, i.e. x B^-1."""
    n = len(x)
    out = []
    for j in range(n):
        acc = ring.zero
        for i in range(n):
            if x[i].terms and B_inv[i][j].terms:
                acc = acc + x[i] * B_inv[i][j]
        out.append(acc)
    return Vector(out)


def is_isotropic(M, x):
    return M.mu_of(x).is_zero()


@dataclass
class Unimodularity:
    status: bool  # None means the bounded search was inconclusive
    witness: Vector = None
    reason: str = ""

    def __bool__(self):
        return bool(self.status)


def _augmentation(x):
    return sum(c for _, c in x.terms)


def is_unimodular(M, x, witness=None, bound=2):
    """Decide whether some y has <x, y> = 1.

    Three-valued: ``status`` is True (with a witness y), False (proved
    impossible via the augmentation A -> Z), or None when the bounded
    search over small vectors finds nothing.
    """
    ring = M.ring
    if witness is not None:
        ok = M.inner(x, witness) == ring.one
        return Unimodularity(ok, witness if ok else None, "witness checked")

    # <x, y> = sum_j (x G)_j conj(y_j): the row x G carries everything
    row = []
    for j in range(M.rank):
        acc = ring.zero
        for i in range(M.rank):
            if x[i].terms and M.gram[i][j].terms:
                acc = acc + x[i] * M.gram[i][j]
        row.append(acc)

    if M.inverse_gram is not None:
        for i, a in enumerate(x.coords):
            ainv = a.trivial_unit_inverse()
            if ainv is None:
                continue
            # conj(y_j) = (G^-1)_{j i} a_i^-1 gives sum_j (xG)_j (G^-1)_{ji} a_i^-1 = 1
            y = Vector((M.inverse_gram[j][i] * ainv).conj() for j in range(M.rank))
            if M.inner(x, y) == ring.one:
                return Unimodularity(True, y, f"dual of unit coordinate {i}")

    # the augmentation is a ring map A -> Z (or Z/m); 1 must lie in the ideal of the row
    g = ring.modulus or 0
    for c in row:
        g = gcd(g, _augmentation(c))
    if g != 1:
        return Unimodularity(False, None, f"augmentation ideal is ({g})")

    support = set()
    for c in row:
        for h in c.support():
            support.add(ring.group.inv(h))
    support.add(ring.group.identity)
    support = sorted(support, key=ring.group.key)
    mags = [c for c in range(-bound, bound + 1) if c]
    scalars = [ring.zero]
    for size in (1, 2):
        for gs in itertools.combinations(support, size):
            for cs in itertools.product(mags, repeat=size):
                scalars.append(ring.element(zip(gs, cs)))
    positions = [j for j in range(M.rank) if row[j].terms]
    for j in positions:
        for s in scalars:
            if (row[j] * s.conj()) == ring.one:
                return Unimodularity(True, M.e(j, s), "bounded search")
    for j, k in itertools.combinations(positions, 2):
        for s in scalars:
            for t in scalars:
                if row[j] * s.conj() + row[k] * t.conj() == ring.one:
                    y = M.e(j, s) + M.e(k, t)
                    return Unimodularity(True, y, "bounded search")
    return Unimodularity(None, None, "bounded search exhausted")
