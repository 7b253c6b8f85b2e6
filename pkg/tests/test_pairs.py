"""Completing hyperbolic pairs and transporting them by elementary transvections."""

import random
import warnings

import pytest
from hypothesis import given, settings

from qforms.errors import PreconditionViolation
from qforms.forms import hyperbolic
from qforms.groups import TRIVIAL_GROUP, FiniteGroup
from qforms.pairs import (FAMILIES, BassModule, HyperbolicPair, all_generators, complete_pair,
                          coefficient_pool, enumerate_generators, enumerate_hyperbolic_pairs,
                          orbit, transport)
from qforms.rings import FormParameter, GroupRing
from qforms.sampling import random_nonsingular
from qforms.transvections import apply_matrix, compose

from strategies import forms, rng_from, seeds

ZFORM = FormParameter(GroupRing(TRIVIAL_GROUP))


def mod_form(m, group=TRIVIAL_GROUP):
    return FormParameter(GroupRing(group, modulus=m))


# -- completion -----------------------------------------------------------------


def test_standard_pair_unchanged():
    H = hyperbolic(ZFORM, 1)
    p, q = H.basis()
    assert complete_pair(H, p, q) == HyperbolicPair(p, q)


def test_isotropic_witness_kept():
    H = hyperbolic(ZFORM, 2)  # p1 p2 q1 q2
    p1, p2, q1, q2 = H.basis()
    pair = complete_pair(H, p1, q1 + p2)
    assert pair.q == q1 + p2
    assert pair.is_valid(H)


def test_witness_with_nonzero_mu_is_corrected():
    H = hyperbolic(ZFORM, 1)
    p, q = H.basis()
    assert H.mu_of(q + p) == ZFORM.ring.one
    assert complete_pair(H, p, q + p).q == q


def test_unit_pairing_is_normalized():
    form = FormParameter(GroupRing(FiniteGroup.cyclic(3)))
    H = hyperbolic(form, 1)
    p, q = H.basis()
    g = form.ring.basis(1, -1)
    pair = complete_pair(H, p, g * q)
    assert H.inner(pair.p, pair.q) == form.ring.one
    assert H.mu_of(pair.q).is_zero()


@settings(max_examples=40, deadline=None)
@given(forms(), seeds)
def test_random_completion(form, seed):
    rng = rng_from(seed)
    s = random_nonsingular(rng, form, blocks=rng.randint(1, 2), basis_steps=2)
    pair = complete_pair(s.module, s.p, s.y)
    M = s.module
    assert M.inner(pair.p, pair.q) == form.ring.one
    assert M.mu_of(pair.q).is_zero()
    assert pair.p == s.p


def test_completion_preconditions():
    H = hyperbolic(ZFORM, 1)
    p, q = H.basis()
    with pytest.raises(PreconditionViolation) as e:
        complete_pair(H, p + q, q)
    assert e.value.condition == "p_isotropic"
    with pytest.raises(PreconditionViolation) as e:
        complete_pair(H, p, 2 * ZFORM.ring.one * q)
    assert e.value.condition == "witness_unit"
    with pytest.raises(PreconditionViolation) as e:
        complete_pair(H, ZFORM.ring.scalar(2) * p)
    assert e.value.condition == "p_unimodular"


def test_completion_without_witness():
    H = hyperbolic(ZFORM, 2)
    p1 = H.e(0)
    pair = complete_pair(H, p1)
    assert pair.is_valid(H)


# -- generators -------------------------------------------------------------------


def test_rank_one_p_family_is_trivial():
    bm = BassModule.over(ZFORM, 1)
    assert enumerate_generators(bm, "EU_P", height=2) == []


def test_rank_one_mod_two_all_families_deterministic():
    bm = BassModule.over(mod_form(2), 1)
    first = [(g.family, g.transvection.u, g.transvection.v) for g in all_generators(bm)]
    second = [(g.family, g.transvection.u, g.transvection.v) for g in all_generators(bm)]
    assert first == second
    assert len(first) == 0  # over a field with trivial group no rank-1 family acts


def test_v_families_empty_without_v():
    bm = BassModule.over(mod_form(2), 2)
    assert enumerate_generators(bm, "EU_P_V") == []
    assert enumerate_generators(bm, "EU_Pbar_V") == []


def test_generators_are_valid_and_distinct():
    bm = BassModule.over(mod_form(2), 2)
    gens = all_generators(bm)
    mats = set()
    for g in gens:
        assert g.transvection.is_valid()
        mats.add(compose(bm.module, [g.transvection]))
    assert len(mats) == len(gens)
    assert {g.family for g in gens} <= set(FAMILIES)


def test_v_families_nonempty_with_hyperbolic_v():
    form = mod_form(2)
    bm = BassModule(hyperbolic(form, 1), 1)
    assert enumerate_generators(bm, "EU_P_V")


def test_coefficient_pool_mod_m():
    pool = coefficient_pool(GroupRing(FiniteGroup.cyclic(2), modulus=3))
    assert len(pool) == 9 and len(set(pool)) == 9


# -- transport ---------------------------------------------------------------------


def test_source_equal_target_gives_empty_word():
    bm = BassModule.over(mod_form(2), 2)
    s = bm.standard_pair()
    res = transport(bm, s, s)
    assert res.found and res.word == []


def test_transport_word_maps_source_to_target():
    bm = BassModule.over(mod_form(2), 2)
    M = bm.module
    s = bm.standard_pair()
    pairs = enumerate_hyperbolic_pairs(bm)
    target = pairs[len(pairs) // 2]
    res = transport(bm, s, target)
    assert res.found
    cols = compose(M, [g.transvection for g in res.word])
    assert apply_matrix(cols, s.p) == target.p
    assert apply_matrix(cols, s.q) == target.q


def test_mod_two_rank_two_transitive():
    bm = BassModule.over(mod_form(2), 2)
    pairs = enumerate_hyperbolic_pairs(bm)
    gens = all_generators(bm)
    parents, _, status = orbit(bm, bm.standard_pair(), gens, max_depth=20)
    assert status == "closed"
    reached = {st for st in parents}
    assert all((pr.p, pr.q) in reached for pr in pairs)
    assert len(reached) == len(pairs)


def test_low_rank_warns_and_reports():
    bm = BassModule.over(mod_form(3), 1)
    pairs = enumerate_hyperbolic_pairs(bm)
    s = bm.standard_pair()
    other = next(pr for pr in pairs if (pr.p, pr.q) != (s.p, s.q))
    with pytest.warns(UserWarning, match="rank"):
        res = transport(bm, s, other, max_depth=4)
    assert res.status == "exhausted"
    assert res.warnings


def test_node_budget_reported():
    bm = BassModule.over(mod_form(3), 2)
    pairs = enumerate_hyperbolic_pairs(bm)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        res = transport(bm, bm.standard_pair(), pairs[-1], node_budget=3)
    assert res.status in ("budget", "found")


def test_invalid_target_rejected():
    bm = BassModule.over(mod_form(2), 2)
    M = bm.module
    with pytest.raises(PreconditionViolation):
        transport(bm, bm.standard_pair(), HyperbolicPair(M.e(0), M.e(1)))


def test_random_nonsingular_pairs_over_z():
    rng = random.Random(2)
    for _ in range(10):
        s = random_nonsingular(rng, ZFORM, blocks=2)
        assert complete_pair(s.module, s.p, s.y).is_valid(s.module)
