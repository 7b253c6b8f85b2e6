"""Random instances for the test suite, the acceptance run and the scripts.

Everything takes an explicit ``random.Random`` so runs are reproducible.
The generators build valid objects by construction (isotropic vectors are
images of isotropic basis vectors under random isometries, nonsingular
modules are hyperbolic-type blocks in a random basis), so that validity is
never established by the code under test alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import QuadraticModule, Vector, change_basis, coords_in_basis, hyperbolic, \
    orthogonal_sum
from .groups import FiniteGroup, FreeAbelianGroup, InfiniteDihedralGroup
from .rings import FormParameter, GroupRing


def small_finite_groups():
    """Finite groups of order <= 6 with a selection of characters."""
    s3 = [(1, 0, 2), (1, 2, 0)]
    klein = FiniteGroup([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
                        [1, -1, -1, 1])
    return [
        FiniteGroup.cyclic(1),
        FiniteGroup.cyclic(2, 1),
        FiniteGroup.cyclic(2, -1),
        FiniteGroup.cyclic(3),
        FiniteGroup.cyclic(4, -1),
        klein,
        FiniteGroup.cyclic(6, -1),
        FiniteGroup.from_permutations(s3, signed=False),
        FiniteGroup.from_permutations(s3, signed=True),
    ]


_FINITE = None


def random_group(rng, kind=None):
    global _FINITE
    kind = kind or rng.choice(["finite", "free_abelian", "infinite_dihedral"])
    if kind == "finite":
        if _FINITE is None:
            _FINITE = small_finite_groups()
        return rng.choice(_FINITE)
    if kind == "free_abelian":
        n = rng.randint(1, 2)
        return FreeAbelianGroup(n, tuple(rng.choice([1, -1]) for _ in range(n)))
    return InfiniteDihedralGroup(rng.choice([1, -1]), rng.choice([1, -1]))


def group_radius(group):
    """Element radius used when sampling: words of length <= 3 in D_infinity."""
    return {"finite": 1, "free_abelian": 1, "infinite_dihedral": 3}[group.kind]


def random_form(rng, kind=None):
    return FormParameter(GroupRing(random_group(rng, kind)))


def random_scalar(rng, ring, height=3, size=3, radius=None):
    radius = group_radius(ring.group) if radius is None else radius
    elems = ring.group.elements(radius)
    terms = []
    for _ in range(rng.randint(0, size)):
        c = rng.randint(-height, height)
        if c:
            terms.append((rng.choice(elems), c))
    return ring.element(terms)


def random_unit(rng, ring, radius=None):
    radius = group_radius(ring.group) if radius is None else radius
    return ring.basis(rng.choice(ring.group.elements(radius)), rng.choice([1, -1]))


def random_vector(rng, M, height=3, size=2):
    return M.vector(random_scalar(rng, M.ring, height, size) for _ in range(M.rank))


def random_module(rng, form, rank, height=2):
    """A quadratic module with random refinement and off-diagonal entries."""
    ring = form.ring
    mus = [random_scalar(rng, ring, height, 2) for _ in range(rank)]
    gram = [[ring.zero] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = mus[i] + mus[i].conj()
        for j in range(i + 1, rank):
            g = random_scalar(rng, ring, height, 2)
            gram[i][j] = g
            gram[j][i] = g.conj()
    return QuadraticModule(form, gram, mus)


def block(rng, form, kind):
    """A nonsingular rank-2 block with basis (e, f) where f is isotropic."""
    ring = form.ring
    if kind == "hyperbolic":
        return hyperbolic(form, 1)
    if kind == "twist":
        m = random_scalar(rng, ring, 2, 2)
        x = m + m.conj()
        gram = [[x, ring.one], [ring.one, ring.zero]]
        inv = [[ring.zero, ring.one], [ring.one, -x]]
        return QuadraticModule(form, gram, [m, ring.zero], inverse_gram=inv)
    # twisted unit pairing <e, f> = g
    g = random_unit(rng, ring)
    gbar = g.conj()
    gram = [[ring.zero, g], [gbar, ring.zero]]
    inv = [[ring.zero, gbar.trivial_unit_inverse()], [g.trivial_unit_inverse(), ring.zero]]
    return QuadraticModule(form, gram, [ring.zero, ring.zero], inverse_gram=inv)


@dataclass
class BlockModule:
    """An orthogonal sum of rank-2 blocks, before any change of basis.

    Block b occupies indices 2b (vector e_b) and 2b + 1 (isotropic f_b);
    <f_b, e_b> is a unit.
    """

    module: QuadraticModule
    blocks: int

    def e(self, b):
        return 2 * b

    def f(self, b):
        return 2 * b + 1


def random_block_module(rng, form, blocks, kinds=("hyperbolic", "twist", "unit")):
    M = None
    for _ in range(blocks):
        B = block(rng, form, rng.choice(kinds))
        M = B if M is None else orthogonal_sum(M, B)
    if M is None:
        M = QuadraticModule(form, (), (), inverse_gram=())
    return BlockModule(M, blocks)


def random_block_isometry(rng, bm, steps=2, height=2):
    """A list of valid transvections on a block module (applied right to left)."""
    from .transvections import Transvection

    M = bm.module
    out = []
    for _ in range(steps):
        b = rng.randrange(bm.blocks)
        along, partner = bm.f(b), bm.e(b)
        # e_b may serve as u only when it is isotropic (not in twist blocks)
        if M.gram[partner][partner].is_zero() and M.mu[partner].is_zero() and rng.random() < 0.5:
            along, partner = partner, along
        u = M.e(along, random_unit(rng, M.ring))
        w = random_vector(rng, M, height, 1)
        w = Vector(M.ring.zero if i == partner else x for i, x in enumerate(w.coords))
        out.append(Transvection(M, u, M.mu_of(w), w).check())
    return out


def apply_all(maps, x):
    for t in reversed(maps):
        x = t(x)
    return x


def random_elementary_basis(rng, ring, n, steps=2, height=1):
    """(B, B^-1) with B a product of elementary matrices I + c E_kl."""
    from .forms import identity_matrix, mat_mul

    B = identity_matrix(ring, n)
    B_inv = identity_matrix(ring, n)
    if n < 2:
        return B, B_inv
    for _ in range(steps):
        k, l = rng.sample(range(n), 2)
        c = random_scalar(rng, ring, height, 1)
        E = identity_matrix(ring, n)
        E[k][l] = c
        E_inv = identity_matrix(ring, n)
        E_inv[k][l] = -c
        B = mat_mul(B, E, ring)
        B_inv = mat_mul(E_inv, B_inv, ring)
    return B, B_inv


@dataclass
class NonsingularSample:
    """A nonsingular module with an isotropic vector p and a unit-pairing partner y."""

    module: QuadraticModule
    p: Vector
    y: Vector
    orth: Vector  # a vector orthogonal to p


def random_nonsingular(rng, form, blocks=1, basis_steps=1, isometry_steps=2, scale_p=False):
    bm = random_block_module(rng, form, blocks)
    M0 = bm.module
    ring = form.ring
    phi = random_block_isometry(rng, bm, isometry_steps)
    s = random_unit(rng, ring) if not scale_p else random_scalar(rng, ring, 2, 2)
    p = M0.e(bm.f(0), s)
    z = random_vector(rng, M0, 2, 2)
    orth = Vector(ring.zero if i == bm.e(0) else x for i, x in enumerate(z.coords))
    y = M0.e(bm.e(0), random_unit(rng, ring)) + orth
    p, y, orth = (apply_all(phi, x) for x in (p, y, orth))
    B, B_inv = random_elementary_basis(rng, ring, M0.rank, basis_steps)
    M = change_basis(M0, B, B_inv)
    return NonsingularSample(
        M, *(coords_in_basis(x, B_inv, ring) for x in (p, y, orth))
    )


def random_transvection(rng, form=None, v_rank=None, k=2, height=2):
    """A valid transvection on V _|_ H(k) with a random (possibly singular) V.

    Returns (transvection, partner) where partner w has <u, w> a nonzero
    multiple; the construction is u = phi(alpha p_1), v = phi(z) with z
    orthogonal to p_1, for a random isometry phi.
    """
    from .transvections import Transvection

    form = form or random_form(rng)
    ring = form.ring
    v_rank = rng.randint(0, 2) if v_rank is None else v_rank
    V = random_module(rng, form, v_rank)
    M = orthogonal_sum(V, hyperbolic(form, k))
    bm = _hyperbolic_view(M, v_rank, k)
    phi = random_block_isometry(rng, bm, 2, height)
    alpha = random_scalar(rng, ring, height, 2)
    while alpha.is_zero():
        alpha = random_scalar(rng, ring, height, 2)
    u0 = M.e(v_rank, alpha)
    z = random_vector(rng, M, height, 2)
    z = Vector(ring.zero if i == v_rank + k else x for i, x in enumerate(z.coords))
    u, v = apply_all(phi, u0), apply_all(phi, z)
    c = random_scalar(rng, ring, height, 2)
    a = M.mu_of(v) + c - c.conj()
    t = Transvection(M, u, a, v).check()
    return t, phi, bm


class _hyperbolic_view(BlockModule):
    """Treat V _|_ H(k) as blocks (q_i, p_i) for the isometry sampler.

    Only the hyperbolic planes are used as blocks; V is carried along.
    """

    def __init__(self, M, offset, k):
        super().__init__(M, k)
        self.offset = offset
        self.k = k

    def e(self, b):
        return self.offset + self.k + b

    def f(self, b):
        return self.offset + b


def random_factorization_input(rng, form=None, kind=None, height=3):
    """A valid input for :func:`qforms.factorization.factorize`.

    dim V0 is 0 or 2 (rank-one nonsingular blocks rarely exist over Z[pi]),
    dim V1 is 0..2, the P+ coefficient of p has height <= ``height``.
    """
    from .factorization import FactorizationInput
    from .forms import zero_module

    form = form or random_form(rng, kind)
    ring = form.ring
    if rng.random() < 0.75:
        s = random_nonsingular(rng, form, blocks=1, scale_p=True)
        V0, p0, v0 = s.module, s.p, s.orth
    else:
        V0, p0, v0 = zero_module(form), Vector(()), Vector(())
    V1 = random_module(rng, form, rng.randint(0, 2))
    v1 = random_vector(rng, V1, height, 2)
    c = random_scalar(rng, ring, height, 3)
    z = ring.zero
    p = Vector(p0.coords + (z,) * V1.rank + (c, z))
    v = Vector(v0.coords + v1.coords + (z, z))
    inp = FactorizationInput(V0, V1, p, ring.zero, v)
    d = random_scalar(rng, ring, 2, 2)
    inp.a = inp.target_module.mu_of(v) + d - d.conj()
    return inp
