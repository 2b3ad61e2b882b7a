import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catlaw.distlaw import DistLawData, make_dist_law, validate_dist_law
from catlaw.fincat import (
    compose_functors,
    functor_power,
    identity_functor,
    identity_nat_trans,
    thin_transformation,
    validate_functor,
)
from catlaw.monad import (
    MonadMapAcross,
    build_em,
    make_comonad,
    make_monad,
    validate_comonad,
    validate_monad,
    validate_monad_map_across,
)
from catlaw.oracle import enumerate_comonads, enumerate_functors, enumerate_monads, enumerate_nat_trans
from catlaw.pro import (
    WGen,
    WId,
    WPar,
    WSeq,
    WordError,
    alpha_power,
    braided_tower,
    builtin_pros,
    check_composition_pasting,
    check_cube,
    check_decomposition,
    check_law_multigons,
    check_mixed_heptagon,
    check_multigon,
    check_power_lemma,
    check_yang_baxter,
    comonad_from_representation,
    compose_pair_maps,
    counital_pro,
    equivariant_from_law,
    eval_word,
    find_strong_braidings,
    format_word,
    generate_multigon,
    identity_pair_map,
    iterated_law,
    iterated_law_recursive,
    iterated_law_t_side,
    lifted_zeta,
    make_presentation,
    make_representation,
    monad_from_representation,
    monoid_pro,
    parse_word,
    representation_from_comonad,
    representation_from_monad,
    tower_comonad,
    validate_equivariant_rep,
    validate_pair_map,
    validate_pair_transformation,
    validate_representation,
    word_arity,
)
from catlaw.report import PreconditionError

from conftest import SMALL_CATEGORIES, THEOREM_CATEGORIES, all_laws, pair_maps


# -- words ---------------------------------------------------------------------

def words(gens=("mu", "eta", "delta", "eps")):
    leaf = st.one_of(st.sampled_from(gens).map(WGen), st.integers(1, 3).map(WId))
    return st.recursive(leaf, lambda inner: st.one_of(
        st.builds(WSeq, inner, inner), st.builds(WPar, inner, inner)), max_leaves=8)


def _flat(w):
    """Word tree up to associativity of "." and "+", which formatting does not record."""
    if isinstance(w, (WSeq, WPar)):
        kind = type(w)
        parts = []
        for child in ((w.outer, w.inner) if kind is WSeq else (w.left, w.right)):
            f = _flat(child)
            parts.extend(f[1] if isinstance(f, tuple) and f[0] == kind.__name__ else [f])
        return (kind.__name__, tuple(parts))
    return w


@given(words())
def test_format_parse_roundtrip(w):
    assert _flat(parse_word(format_word(w))) == _flat(w)


@given(words())
def test_format_is_fixpoint(w):
    s = format_word(w)
    assert format_word(parse_word(s)) == s


def test_precedence():
    assert parse_word("mu . mu + id") == WSeq(WGen("mu"), WPar(WGen("mu"), WId(1)))
    assert parse_word("id(3)") == WId(3)
    assert format_word(parse_word("mu . (eta + id)")) == "mu . (eta + id)"


@pytest.mark.parametrize("text,col", [("mu . ", 4), ("mu + (", 6), ("mu $", 3), ("(mu", 3)])
def test_parse_errors_are_positioned(text, col):
    # positions are 0-based offsets; end of input sits after the last non-blank character
    with pytest.raises(WordError) as e:
        parse_word(text)
    assert e.value.position == col


def test_arities():
    m, c = monoid_pro(), counital_pro()
    assert word_arity(parse_word("id(3)"), m) == (3, 3)
    assert word_arity(parse_word("(eps + id) . delta"), c) == (1, 1)
    assert word_arity(parse_word("mu . (mu + id)"), m) == (3, 1)
    assert word_arity(parse_word("eta + eta"), m) == (0, 2)
    with pytest.raises(WordError) as e:
        word_arity(parse_word("delta . eps"), c)
    assert format_word(e.value.subterm) == "delta . eps"
    with pytest.raises(WordError):
        word_arity(parse_word("nu"), m)


def test_builtin_presentations():
    pros = builtin_pros()
    for p in pros.values():
        assert len(p.generators) == 2
        assert len(p.relations) == 3
    assert monoid_pro().arity("mu") == (2, 1)
    assert counital_pro().arity("eps") == (1, 0)


def test_relation_arity_mismatch_rejected():
    with pytest.raises(WordError):
        make_presentation([("m", 2, 1)], [("m", "id")])


# -- representations --------------------------------------------------------------

def test_eval_examples(closure112, interior011):
    rc = representation_from_comonad(interior011)
    assert eval_word(parse_word("(eps + id) . delta"), rc) == identity_nat_trans(interior011.G)
    rm = representation_from_monad(closure112)
    assert eval_word(parse_word("mu . (eta + id)"), rm) == identity_nat_trans(closure112.T)
    # on a thin category every word is the unique transformation between its powers
    w = eval_word(parse_word("mu . (mu + id) . (id + eta + id)"), rm)
    assert w == thin_transformation(functor_power(closure112.T, 2), closure112.T)


@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_representation_matches_monad_and_comonad_laws(name):
    c = SMALL_CATEGORIES[name]()
    for m in enumerate_monads(c):
        r = representation_from_monad(m)
        assert validate_representation(r).ok
        assert monad_from_representation(r) == m
    for g in enumerate_comonads(c):
        r = representation_from_comonad(g)
        assert validate_representation(r).ok
        assert comonad_from_representation(r) == g


@pytest.mark.parametrize("name", ["chain2", "chain3", "Z2", "Z3"])
def test_monoid_relations_agree_with_validate_monad(name):
    c = SMALL_CATEGORIES[name]()
    Id = identity_functor(c)
    for T in enumerate_functors(c):
        TT = compose_functors(T, T)
        for mu in enumerate_nat_trans(TT, T):
            for eta in enumerate_nat_trans(Id, T):
                m = make_monad(T, mu.components, eta.components)
                r = make_representation(monoid_pro(), T, {"mu": mu, "eta": eta})
                assert validate_representation(r).ok == validate_monad(m).ok


def test_broken_mu_on_z2_fails_unit_relations(z2):
    # with T = Id every mu is associative, so a broken mu shows up in the unit relations
    r = make_representation(monoid_pro(), identity_functor(z2), {"mu": [1], "eta": [0]})
    rep = validate_representation(r)
    failed = rep.failed_laws()
    assert failed == ["mu . (eta + id) = id", "mu . (id + eta) = id"]
    assert rep.failures[0].witness == {"object": 0}


def test_interchange_is_checked(z2):
    r = representation_from_monad(make_monad(identity_functor(z2), [1], [1]))
    assert eval_word(parse_word("mu + eta"), r).components == (0,)


# -- iterated laws ------------------------------------------------------------------

def test_iterated_small_cases(closure112, interior011):
    TG = compose_functors(closure112.T, interior011.G)
    GT = compose_functors(interior011.G, closure112.T)
    d = make_dist_law(closure112, interior011, thin_transformation(TG, GT).components)
    assert iterated_law(d, 1) == d.l
    assert iterated_law(d, 0) == identity_nat_trans(d.T)
    assert iterated_law_t_side(d, 0) == identity_nat_trans(d.G)
    T, G2 = d.T, functor_power(d.G, 2)
    assert iterated_law(d, 2) == thin_transformation(compose_functors(T, G2), compose_functors(G2, T))


def test_identity_braiding_powers_are_identities(chain3):
    G = enumerate_comonads(chain3).__next__()
    GG = compose_functors(G.G, G.G)
    d = DistLawData(G, G, identity_nat_trans(GG))
    for n in range(1, 5):
        assert iterated_law(d, n) == identity_nat_trans(functor_power(G.G, n + 1))


@pytest.mark.parametrize("name", sorted(THEOREM_CATEGORIES))
def test_decomposition(name):
    c = THEOREM_CATEGORIES[name]()
    for d in all_laws(c):
        rep = check_decomposition(d, bound=2)
        assert rep.ok, rep
        for n in range(1, 5):
            assert iterated_law(d, n) == iterated_law_recursive(d, n)


# -- multigons --------------------------------------------------------------------

def test_multigon_shapes(closure112, interior011):
    TG = compose_functors(closure112.T, interior011.G)
    GT = compose_functors(interior011.G, closure112.T)
    d = make_dist_law(closure112, interior011, thin_transformation(TG, GT).components)
    rc = representation_from_comonad(interior011)
    rm = representation_from_monad(closure112)
    shapes = {g: generate_multigon(g, d, rc, "G").edge_count for g in ("delta", "eps")}
    shapes.update({g: generate_multigon(g, d, rm, "T").edge_count for g in ("mu", "eta")})
    assert shapes == {"delta": 5, "eps": 3, "mu": 5, "eta": 3}
    for p in builtin_pros().values():
        for g, n, m in p.generators:
            r = rc if p.name == "counital" else rm
            side = "G" if p.name == "counital" else "T"
            mg = generate_multigon(g, d, r, side)
            assert mg.edge_count == n + m + 2
            assert check_multigon(mg).ok
            assert mg.as_dict()["edges"] == n + m + 2


@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_monoid_multigons_coincide_with_law_checks(name):
    c = SMALL_CATEGORIES[name]()
    fun = list(enumerate_functors(c))
    rename = {"multigon:mu": "pentagon", "multigon:eta": "unit"}
    for m in enumerate_monads(c):
        r = representation_from_monad(m)
        for G in fun:
            for l in enumerate_nat_trans(compose_functors(m.T, G), compose_functors(G, m.T)):
                d = DistLawData(m, G, l)
                a = set(validate_dist_law(d).failed_laws())
                b = {rename[x] for x in validate_equivariant_rep(r, d).failed_laws()}
                assert a == b


@pytest.mark.parametrize("name", sorted(THEOREM_CATEGORIES))
def test_counital_multigons_coincide_with_law_checks(name):
    c = THEOREM_CATEGORIES[name]()
    rename = {"multigon:delta": "comultiplication", "multigon:eps": "counit"}
    for m in enumerate_monads(c):
        for g in enumerate_comonads(c):
            rc = representation_from_comonad(g)
            for l in enumerate_nat_trans(compose_functors(m.T, g.G), compose_functors(g.G, m.T)):
                d = DistLawData(m, g, l)
                a = set(validate_dist_law(d).failed_laws()) & set(rename.values())
                b = {rename[x] for x in check_law_multigons(d, rc, "G").failed_laws()}
                assert a == b


# -- maps of pairs -------------------------------------------------------------------

def test_identity_pair_map(closure112, interior011):
    TG = compose_functors(closure112.T, interior011.G)
    GT = compose_functors(interior011.G, closure112.T)
    d = make_dist_law(closure112, interior011, thin_transformation(TG, GT).components)
    P = equivariant_from_law(d)
    p = identity_pair_map(P)
    assert validate_pair_map(p).ok
    for n in range(4):
        assert alpha_power(p, n) == identity_nat_trans(functor_power(P.T, n))
        assert check_power_lemma(p, p, n).ok
    assert compose_pair_maps(p, p) == p
    for g in ("mu", "eta"):
        assert check_mixed_heptagon(p, g).ok
    assert check_cube(identity_nat_trans(p.K), p, p).ok


@pytest.mark.parametrize("name", ["chain2", "Z2"])
def test_pair_map_validity_is_monad_map_plus_hexagon(name):
    c = SMALL_CATEGORIES[name]()
    hexagon_failures = 0
    for p in pair_maps(c):
        rep = validate_pair_map(p)
        mm = MonadMapAcross(p.K, p.alpha, monad_from_representation(p.T.rep), monad_from_representation(p.S.rep))
        hexagon_ok = "hexagon" not in rep.failed_laws()
        hexagon_failures += not hexagon_ok
        assert rep.ok == (validate_monad_map_across(mm).ok and hexagon_ok)
    if name == "Z2":
        assert hexagon_failures > 0


@pytest.mark.parametrize("name", ["chain2", "Z2"])
def test_pair_map_theorems(name):
    c = SMALL_CATEGORIES[name]()
    valid = [p for p in pair_maps(c) if validate_pair_map(p).ok]
    assert valid
    for p in valid:
        for g in ("mu", "eta"):
            assert check_mixed_heptagon(p, g).ok
        emS = build_em(monad_from_representation(p.S.rep))
        emT = build_em(monad_from_representation(p.T.rep))
        z = lifted_zeta(p, emS, emT)
        assert validate_functor(z.source).ok
    rng = random.Random(0)
    for a in valid:
        for b in rng.sample(valid, min(len(valid), 12)):
            if b.S != a.T:
                continue
            assert check_composition_pasting(a, b).ok
            ab = compose_pair_maps(a, b)
            assert validate_pair_map(ab).ok
            for n in range(4):
                assert check_power_lemma(a, b, n).ok
            for c2 in rng.sample(valid, min(len(valid), 4)):
                if c2.S == b.T:
                    assert compose_pair_maps(ab, c2) == compose_pair_maps(a, compose_pair_maps(b, c2))


def test_heptagon_skips_nullary_generator(closure112):
    p = identity_pair_map(equivariant_from_law(make_dist_law(
        closure112, identity_functor(closure112.base), identity_nat_trans(closure112.T).components)))
    rep = check_mixed_heptagon(p, "eta")
    assert rep.ok and rep.counts == {"skipped": 1}


def test_cube_over_z2():
    c = SMALL_CATEGORIES["Z2"]()
    valid = [p for p in pair_maps(c) if validate_pair_map(p).ok]
    cubes = 0
    for p1 in valid:
        for p2 in valid:
            if (p1.T, p1.S) != (p2.T, p2.S):
                continue
            for s in enumerate_nat_trans(p1.K, p2.K):
                if validate_pair_transformation(s, p1, p2).ok:
                    assert check_cube(s, p1, p2).ok
                    cubes += 1
                else:
                    with pytest.raises(PreconditionError):
                        check_cube(s, p1, p2)
    assert cubes > 0


# -- braidings -------------------------------------------------------------------------

def test_identity_braiding(chain3):
    for G in enumerate_comonads(chain3):
        GG = compose_functors(G.G, G.G)
        assert check_yang_baxter(identity_nat_trans(GG), G).ok


@pytest.mark.parametrize("name", sorted(SMALL_CATEGORIES))
def test_braided_towers(name):
    c = SMALL_CATEGORIES[name]()
    found = 0
    for G in enumerate_comonads(c):
        for l in find_strong_braidings(G):
            for n in (1, 2, 3):
                d = braided_tower(l, G, n)
                assert validate_comonad(tower_comonad(l, G, n)).ok
                assert validate_dist_law(d).ok
            found += 1
    assert found > 0


def test_tower_refuses_non_braiding(z2):
    G = make_comonad(identity_functor(z2), [0], [0])
    assert validate_comonad(G).ok
    # l = s breaks the counit conditions
    l = enumerate_nat_trans(G.G, G.G)
    bad = [t for t in l if t.components == (1,)][0]
    with pytest.raises(PreconditionError):
        braided_tower(bad, G, 2)


def test_nu_dependent_projection_impossible_on_z2(z2):
    # each monad on Z2 has exactly one algebra, so no transformation can depend on the action
    for m in enumerate_monads(z2):
        assert len(build_em(m).algebras) == 1
