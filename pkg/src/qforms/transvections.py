"""Unitary transvections sigma_{u,a,v} and their composites.

For lambda = +1 the map is

    x  ->  x + <x, v> u - <x, u> v - <x, u> a u

defined when <u, v> = 0, mu(u) = 0 and mu(v) = [a]. Pairings take x in the
first slot, which is the slot our form is linear in, so the map is A-linear
for left scalars and is determined by the images of the basis vectors.

Composites are written as products: ``compose(M, [s, t])`` is ``s o t``,
i.e. the rightmost factor is applied first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ContextMismatch, PreconditionViolation
from .forms import QuadraticModule, Vector


@dataclass(frozen=True, eq=False)
class Transvection:
    """A triple (u, a, v) on ``module``.

    Constructing this class directly skips validation (useful for mutation
    tests); :func:`make_transvection` is the checked entry point.
    """

    module: QuadraticModule
    u: Vector
    a: object
    v: Vector
    label: str = field(default="", compare=False)

    @cached_property
    def _u_col(self):
        return self.module.gram_times_conj(self.u)

    @cached_property
    def _v_col(self):
        return self.module.gram_times_conj(self.v)

    @cached_property
    def _lam_bar(self):
        return self.module.form.lam.conj()

    def __call__(self, x):
        return apply(self, x)

    def check(self):
        """Raise PreconditionViolation naming the first failed condition."""
        M = self.module
        if len(self.u) != M.rank or len(self.v) != M.rank:
            raise PreconditionViolation("dimension", "u and v must lie in the module")
        if not M.form.lambda_is_one:
            raise PreconditionViolation("lambda", "transvections are implemented for lambda = +1")
        if not M.inner(self.u, self.v).is_zero():
            raise PreconditionViolation("u_v_orthogonal", "<u, v> != 0")
        if not M.mu_of(self.u).is_zero():
            raise PreconditionViolation("u_isotropic", "mu(u) != 0 in A/Lambda")
        if not M.form.reduce(M.mu_of(self.v) - self.a).is_zero():
            raise PreconditionViolation("a_represents_mu_v", "mu(v) != [a] in A/Lambda")
        return self

    def is_valid(self):
        try:
            self.check()
        except PreconditionViolation:
            return False
        return True

    def inverse(self):
        """sigma_{u, conj(a), -v}; see tests/test_transvections.py for the brute-force derivation."""
        return Transvection(self.module, self.u, self.a.conj(), -self.v, label=self.label + "^-1")

    def __repr__(self):
        return f"Transvection(u={self.u!r}, a={self.a!r}, v={self.v!r})"


def make_transvection(M, u, a, v, label=""):
    return Transvection(M, M.vector(u), a, M.vector(v), label).check()


def identity_transvection(M):
    return Transvection(M, M.zero(), M.ring.zero, M.zero(), "id")


def _dot(x, col, ring):
    acc = ring.zero
    for a, c in zip(x, col):
        if a.terms and c.terms:
            acc = acc + a * c
    return acc


def apply(t, x):
    M = t.module
    if len(x) != M.rank:
        raise ContextMismatch(f"vector of length {len(x)} in a rank-{M.rank} module")
    ring = M.ring
    xv = _dot(x.coords, t._v_col, ring)  # <x, v>
    xu = _dot(x.coords, t._u_col, ring)  # <x, u>
    if not xv.terms and not xu.terms:
        return x
    lb = t._lam_bar
    u_coef = xv - lb * xu * t.a
    v_coef = -(lb * xu)
    return Vector(
        xi + u_coef * ui + v_coef * vi for xi, ui, vi in zip(x.coords, t.u.coords, t.v.coords)
    )


def apply_matrix(columns, x):
    """Image of x under the A-linear map whose j-th column is the image of e_j."""
    n = len(x)
    if len(columns) != n:
        raise ContextMismatch("matrix and vector sizes differ")
    ring = columns[0][0].ring if n and len(columns[0]) else None
    out = [ring.zero] * len(columns[0]) if n else []
    for a, col in zip(x.coords, columns):
        if a.terms:
            out = [o + a * c if c.terms else o for o, c in zip(out, col.coords)]
    return Vector(out)


def _apply_any(f, x):
    if isinstance(f, Transvection):
        return apply(f, x)
    return apply_matrix(f, x)


def matrix_of(t):
    """Columns (as Vectors) of the images of the basis vectors."""
    return tuple(apply(t, e) for e in t.module.basis())


def compose(M, maps):
    """Matrix (tuple of image columns) of maps[0] o maps[1] o ... o maps[-1].

    Entries may be Transvections or column tuples.
    """
    for f in maps:
        if isinstance(f, Transvection) and f.module is not M and f.module != M:
            raise ContextMismatch("transvection lives on a different module")
    cols = M.basis()
    for f in reversed(maps):
        cols = [_apply_any(f, c) for c in cols]
    return tuple(cols)


def identity_columns(M):
    return tuple(M.basis())


@dataclass
class IsometryReport:
    passed: bool
    checked: int
    counterexample: dict = None


def verify_isometry(t, samples=20, rng=None, height=2):
    """Check form and refinement preservation on basis pairs plus random samples."""
    M = t.module
    from .sampling import random_vector

    rng = rng or random.Random(0)
    basis = M.basis()
    pairs = [(x, y) for x in basis for y in basis]
    for _ in range(samples):
        pairs.append((random_vector(rng, M, height), random_vector(rng, M, height)))
    images = {}

    def img(x):
        if x not in images:
            images[x] = apply(t, x)
        return images[x]

    checked = 0
    for x, y in pairs:
        checked += 1
        before, after = M.inner(x, y), M.inner(img(x), img(y))
        if before != after:
            return IsometryReport(False, checked, {"check": "form", "x": x, "y": y,
                                                   "before": before, "after": after})
    for x in list(images):
        checked += 1
        before, after = M.mu_of(x), M.mu_of(img(x))
        if before != after:
            return IsometryReport(False, checked, {"check": "mu", "x": x,
                                                   "before": before, "after": after})
    return IsometryReport(True, checked)


def columns_equal(c1, c2):
    return tuple(c1) == tuple(c2)
