"""Quadratic modules: hyperbolic forms, sums, predicates and the certificate."""

import pytest
from hypothesis import given, settings

from qforms.errors import ContextMismatch, PreconditionViolation
from qforms.forms import (QuadraticModule, Vector, change_basis, coords_in_basis, hyperbolic,
                          inner, is_isotropic, is_unimodular, mu, orthogonal_sum, permute,
                          zero_module)
from qforms.groups import TRIVIAL_GROUP, FiniteGroup
from qforms.rings import FormParameter, GroupRing
from qforms.sampling import random_module, random_nonsingular, random_vector

from strategies import forms, rng_from, seeds

ZFORM = FormParameter(GroupRing(TRIVIAL_GROUP))
C2m = FormParameter(GroupRing(FiniteGroup.cyclic(2, -1)))


def test_inner_of_p_plus_q():
    H = hyperbolic(ZFORM, 1)
    x = H.e(0) + H.e(1)
    assert inner(H, x, x) == ZFORM.ring.scalar(2)
    assert inner(H, H.zero(), x).is_zero()


def test_mu_polarization_example():
    H = hyperbolic(ZFORM, 1)
    assert mu(H, H.e(0) + H.e(1)) == ZFORM.ring.one


@given(forms(), seeds)
def test_mu_of_multiple_of_p_is_zero(form, seed):
    rng = rng_from(seed)
    from qforms.sampling import random_scalar

    H = hyperbolic(form, 1)
    a = random_scalar(rng, form.ring)
    assert mu(H, a * H.e(0)).is_zero()


def test_hyperbolic_rank_one_twisted():
    H = hyperbolic(C2m, 1)
    A = C2m.ring
    assert H.gram == ((A.zero, A.one), (A.one, A.zero))
    assert H.mu == (A.zero, A.zero)
    assert H.certificate_ok()


def test_hyperbolic_rank_zero():
    H = hyperbolic(ZFORM, 0)
    assert H.rank == 0 and H.certificate_ok()


def test_hyperbolic_rank_two():
    H = hyperbolic(ZFORM, 2)
    A = ZFORM.ring
    expected = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    assert [[H.gram[i][j].coefficient(0) for j in range(4)] for i in range(4)] == expected
    assert H.certificate_ok()
    assert all(x.ring == A for row in H.gram for x in row)


def test_sum_with_zero_module():
    H = hyperbolic(C2m, 1)
    assert orthogonal_sum(H, zero_module(C2m)) == H
    assert orthogonal_sum(zero_module(C2m), H) == H


def test_hyperbolic_sum_is_permuted_hyperbolic_two():
    H1 = hyperbolic(C2m, 1)
    HH = orthogonal_sum(H1, H1)  # basis p1 q1 p2 q2
    assert permute(HH, [0, 2, 1, 3]) == hyperbolic(C2m, 2)


@settings(max_examples=30, deadline=None)
@given(forms(), seeds)
def test_blocks_are_orthogonal(form, seed):
    rng = rng_from(seed)
    M1 = random_module(rng, form, 2)
    M2 = random_module(rng, form, 1)
    M = orthogonal_sum(M1, M2)
    x = random_vector(rng, M1).concat(M2.zero())
    y = M1.zero().concat(random_vector(rng, M2))
    assert M.inner(x, y).is_zero()
    assert M.mu_of(x + y) == form.reduce(M.mu_of(x) + M.mu_of(y))


def test_sum_over_different_forms_rejected():
    with pytest.raises(ContextMismatch):
        orthogonal_sum(hyperbolic(ZFORM, 1), hyperbolic(C2m, 1))


@settings(max_examples=40, deadline=None)
@given(forms(), seeds)
def test_sesquilinear_hermitian_and_refinement(form, seed):
    rng = rng_from(seed)
    from qforms.sampling import random_scalar

    M = random_module(rng, form, 3)
    x, y = random_vector(rng, M), random_vector(rng, M)
    a, b = random_scalar(rng, form.ring), random_scalar(rng, form.ring)
    assert M.inner(a * x, b * y) == a * M.inner(x, y) * b.conj()
    assert M.inner(y, x) == M.inner(x, y).conj()
    assert M.inner(x + y, x) == M.inner(x, x) + M.inner(y, x)
    # polarization and the quadratic property of mu
    assert form.reduce(M.mu_of(x + y) - M.mu_of(x) - M.mu_of(y) - M.inner(x, y)).is_zero()
    assert M.mu_of(a * x) == form.reduce(a * M.mu_of(x) * a.conj())
    # <x, x> = mu(x) + conj mu(x) modulo Lambda
    m = M.mu_of(x)
    assert form.reduce(m + m.conj() - M.inner(x, x)).is_zero()


def test_invalid_modules_are_rejected():
    A = ZFORM.ring
    with pytest.raises(PreconditionViolation) as e:
        QuadraticModule(ZFORM, [[A.zero, A.one], [A.zero, A.zero]], [A.zero, A.zero])
    assert e.value.condition == "hermitian"
    with pytest.raises(PreconditionViolation) as e:
        QuadraticModule(ZFORM, [[A.scalar(2)]], [A.zero])
    assert e.value.condition == "refinement"
    with pytest.raises(PreconditionViolation) as e:
        QuadraticModule(ZFORM, [[A.scalar(2)]], [A.one], inverse_gram=[[A.one]])
    assert e.value.condition == "certificate"


@settings(max_examples=30, deadline=None)
@given(forms(), seeds)
def test_random_nonsingular_samples(form, seed):
    rng = rng_from(seed)
    s = random_nonsingular(rng, form, blocks=2, basis_steps=3)
    M = s.module
    assert M.certificate_ok()
    assert M.inner(s.p, s.y) != form.ring.zero
    assert M.mu_of(s.p).is_zero()
    assert M.inner(s.p, s.orth).is_zero()


def test_coords_in_basis_round_trip():
    from qforms.forms import identity_matrix

    A = ZFORM.ring
    H = hyperbolic(ZFORM, 1)
    B = identity_matrix(A, 2)
    B[0][1] = A.scalar(3)
    B_inv = identity_matrix(A, 2)
    B_inv[0][1] = A.scalar(-3)
    H2 = change_basis(H, B, B_inv)
    x = H.e(0, A.scalar(2)) + H.e(1, A.scalar(5))
    y = H.e(1)
    x2, y2 = (coords_in_basis(v, B_inv, A) for v in (x, y))
    assert H2.inner(x2, y2) == H.inner(x, y)
    assert H2.mu_of(x2) == H.mu_of(x)


def test_isotropic_examples():
    H = hyperbolic(ZFORM, 1)
    assert is_isotropic(H, H.e(0))
    assert not is_isotropic(H, H.e(0) + H.e(1))
    assert is_isotropic(H, H.zero())


def test_unimodular_with_witness():
    H = hyperbolic(C2m, 1)
    res = is_unimodular(H, H.e(0), witness=H.e(1))
    assert res.status is True


def test_unimodular_search_finds_dual():
    H = hyperbolic(C2m, 2)
    x = H.e(0) + H.e(3, C2m.ring.basis(1, 3))
    res = is_unimodular(H, x)
    assert res.status is True
    assert H.inner(x, res.witness) == C2m.ring.one


def test_twice_p_is_not_unimodular():
    H = hyperbolic(ZFORM, 1)
    x = H.e(0, ZFORM.ring.scalar(2))
    res = is_unimodular(H, x)
    assert res.status is False
    # exhaustive small search agrees: every value <2p, y> is even
    for a in range(-4, 5):
        for b in range(-4, 5):
            y = H.vector([ZFORM.ring.scalar(a), ZFORM.ring.scalar(b)])
            assert H.inner(x, y).coefficient(0) % 2 == 0


@settings(max_examples=20, deadline=None)
@given(forms(), seeds)
def test_p_plus_unimodular_in_v0_plus_p(form, seed):
    # p0 = p' + 1 p+ in V0 + H(P+) pairs to 1 with q+
    rng = rng_from(seed)
    s = random_nonsingular(rng, form, blocks=1, scale_p=True)
    M = orthogonal_sum(s.module, hyperbolic(form, 1))
    k = s.module.rank
    p0 = s.p.concat(Vector([form.ring.one, form.ring.zero]))
    q_plus = M.e(k + 1)
    assert is_unimodular(M, p0, witness=q_plus).status is True
    assert is_unimodular(M, p0).status is True


def test_vector_length_checked():
    H = hyperbolic(ZFORM, 1)
    with pytest.raises(ContextMismatch):
        H.inner(H.e(0), Vector([ZFORM.ring.one]))
