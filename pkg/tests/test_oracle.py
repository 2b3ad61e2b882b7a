
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catlaw.fincat import (
    NatTransData,
    chain_category,
    compose_functors,
    cyclic_group,
    identity_functor,
    poset_category,
    validate_functor,
    validate_nat_trans,
)
from catlaw.monad import ComonadData, validate_comonad
from catlaw.oracle import (
    DEFAULT_BOUND,
    bound_override,
    closure_operators,
    count_monotone_maps,
    default_bound,
    enumerate_comonads,
    enumerate_dist_laws,
    enumerate_functors,
    enumerate_monads,
    enumerate_nat_trans,
    interior_operators,
    raw_dist_law,
)
from catlaw.report import EnumerationBoundError

from conftest import SMALL_CATEGORIES, functor_accept_set, law_accept_set, monad_accept_set, posets, typed_candidates


# -- frozen brute-force counts ----------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_functors_on_chain_are_monotone_maps(n):
    c = chain_category(n)
    assert sum(1 for _ in enumerate_functors(c)) == count_monotone_maps(n)


def test_frozen_counts():
    assert [count_monotone_maps(n) for n in (1, 2, 3, 4)] == [1, 3, 10, 35]
    assert len(closure_operators(3)) == 4
    assert len(interior_operators(3)) == 4
    z2 = cyclic_group(2)
    assert sum(1 for _ in enumerate_functors(z2)) == 2
    assert sum(1 for _ in enumerate_monads(z2)) == 2
    assert sum(1 for _ in enumerate_comonads(z2)) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monads_on_chain_are_closure_operators(n):
    c = chain_category(n)
    found = sorted(m.T.object_map for m in enumerate_monads(c))
    assert found == sorted(closure_operators(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_comonads_on_chain_are_interior_operators(n):
    c = chain_category(n)
    found = sorted(g.G.object_map for g in enumerate_comonads(c))
    assert found == sorted(interior_operators(n))


@given(posets())
@settings(max_examples=30, deadline=None)
def test_functor_stream_is_valid_and_distinct(rel):
    c = poset_category(rel)
    fs = list(enumerate_functors(c))
    assert len(fs) == len(set(fs))
    assert all(validate_functor(F).ok for F in fs)
    assert identity_functor(c) in fs


def test_streams_are_lexicographic():
    c = chain_category(3)
    fs = [F.object_map for F in enumerate_functors(c)]
    assert fs == sorted(fs)


# -- oracle equivalence ------------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_functor_accept_set_equals_stream(name):
    c = SMALL_CATEGORIES[name]()
    assert functor_accept_set(c, typed=c.n_morphisms > 4) == set(enumerate_functors(c))


@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_monad_accept_set_equals_stream(name):
    c = SMALL_CATEGORIES[name]()
    assert monad_accept_set(c) == set(enumerate_monads(c))


@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_comonad_accept_set_equals_stream(name):
    c = SMALL_CATEGORIES[name]()
    Id = identity_functor(c)
    accepted = set()
    for G in enumerate_functors(c):
        GG = compose_functors(G, G)
        for delta in typed_candidates(c, G.object_map, GG.object_map):
            for eps in typed_candidates(c, G.object_map, c.objects):
                w = ComonadData(G, NatTransData(G, GG, delta), NatTransData(G, Id, eps))
                if validate_comonad(w).ok:
                    accepted.add(w)
    assert accepted == set(enumerate_comonads(c))


@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_law_accept_set_equals_stream(name):
    c = SMALL_CATEGORIES[name]()
    companions = list(enumerate_functors(c)) + list(enumerate_comonads(c))
    pairs = 0
    for T in enumerate_monads(c):
        for G in companions:
            assert law_accept_set(T, G) == set(enumerate_dist_laws(T, G))
            pairs += 1
    assert pairs > 0


def test_raw_law_check_on_z2():
    # for mu = eta = s and G = Id the pentagon forces l = e: with l = s it reads s = e
    c = cyclic_group(2)
    S = next(m for m in enumerate_monads(c) if m.mu.components == (1,))
    Id = identity_functor(c)
    assert raw_dist_law(S, Id, (0,))
    assert not raw_dist_law(S, Id, (1,))


def test_nat_trans_stream_matches_validator():
    c = chain_category(3)
    fs = list(enumerate_functors(c))
    for F in fs[::3]:
        for G in fs[::2]:
            emitted = set(enumerate_nat_trans(F, G))
            accepted = {NatTransData(F, G, comps)
                        for comps in typed_candidates(c, F.object_map, G.object_map)
                        if validate_nat_trans(NatTransData(F, G, comps)).ok}
            assert emitted == accepted


# -- enumeration ceiling -----------------------------------------------------

def test_bound_exceeded_raises():
    c = chain_category(7)  # 28 morphisms
    with pytest.raises(EnumerationBoundError):
        next(enumerate_functors(c))
    assert next(enumerate_functors(c, bound=30)) is not None


def test_env_bound(monkeypatch):
    monkeypatch.setenv("CATLAW_BOUND", "5")
    assert default_bound() == 5
    with pytest.raises(EnumerationBoundError):
        next(enumerate_functors(chain_category(3)))
    monkeypatch.delenv("CATLAW_BOUND")
    assert default_bound() == DEFAULT_BOUND == 24


def test_override_beats_env(monkeypatch):
    monkeypatch.setenv("CATLAW_BOUND", "5")
    with bound_override(40):
        assert default_bound() == 40
        with bound_override(3):
            assert default_bound() == 3
        assert default_bound() == 40
    assert default_bound() == 5
    with bound_override(None):
        assert default_bound() == 5


@given(st.integers(1, 5))
def test_identity_monad_always_present(n):
    c = chain_category(n)
    assert any(m.T == identity_functor(c) for m in enumerate_monads(c))
