from collections import defaultdict
from itertools import product

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from catlaw.distlaw import DistLawData, DistrMorphism, same_base_monad_maps, validate_dist_law, validate_distr_morphism
from catlaw.fincat import (
    FunctorData,
    NatTransData,
    chain_category,
    compose_functors,
    cyclic_group,
    identity_functor,
    monoid_category,
    poset_category,
    product_category,
    validate_functor,
)
from catlaw.monad import ComonadData, MonadData, closure_monad, interior_comonad, make_monad, validate_monad
from catlaw.oracle import enumerate_comonads, enumerate_dist_laws, enumerate_functors, enumerate_monads, enumerate_nat_trans
from catlaw.pro import PairMapData, equivariant_from_law


@pytest.fixture
def chain3():
    return chain_category(3, "C3")


@pytest.fixture
def z2():
    return cyclic_group(2, "Z2")


@pytest.fixture
def closure112(chain3):
    return closure_monad(chain3, [1, 1, 2], "T")


@pytest.fixture
def interior011(chain3):
    return interior_comonad(chain3, [0, 1, 1], "G")


@pytest.fixture
def z2_monad(z2):
    return make_monad(identity_functor(z2), [1], [1], "S")


# small categories that keep exhaustive sweeps fast
SMALL_CATEGORIES = {
    "chain2": lambda: chain_category(2),
    "chain3": lambda: chain_category(3),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "left-zero": lambda: monoid_category([[0, 1, 2], [1, 1, 1], [2, 2, 2]]),
    "V": lambda: poset_category([[1, 1, 1], [0, 1, 0], [0, 0, 1]]),
    "chain2xZ2": lambda: product_category(chain_category(2), cyclic_group(2)),
}


@st.composite
def posets(draw, max_size=4):
    """Random partial orders on ``0..n-1`` compatible with the natural order."""
    n = draw(st.integers(1, max_size))
    rel = [[a == b for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            rel[a][b] = draw(st.booleans())
    for k, a, b in product(range(n), repeat=3):
        if rel[a][k] and rel[k][b]:
            rel[a][b] = True
    return rel


@st.composite
def transformation_monoids(draw, points=3, max_size=10):
    """The monoid of self-maps of ``points`` points generated by a few random maps."""
    gens = draw(st.lists(st.tuples(*[st.integers(0, points - 1)] * points), min_size=1, max_size=2))
    ident = tuple(range(points))
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = tuple(g[f[i]] for i in range(points))
                if h not in elems:
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
        if len(elems) > max_size:
            break
    assume(len(elems) <= max_size)
    index = {e: i for i, e in enumerate(elems)}
    # table[g][f] = g after f
    table = [[index[tuple(g[f[i]] for i in range(points))] for f in elems] for g in elems]
    return table


def typed_candidates(B, sources, targets):
    """Every tuple of morphisms with ``component[x] : sources[x] -> targets[x]``."""
    return product(*[B.hom(a, b) for a, b in zip(sources, targets)])


def all_laws(c, with_comonads=False):
    """Every law ``T G ⇒ G T`` for enumerated monads and functors (or comonads) on ``c``."""
    companions = list(enumerate_comonads(c)) if with_comonads else list(enumerate_functors(c))
    for m in enumerate_monads(c):
        for G in companions:
            yield from enumerate_dist_laws(m, G)


def law_pairs(c):
    """Pairs of laws sharing a companion, the objects of one category of laws."""
    by_companion = defaultdict(list)
    for d in all_laws(c):
        by_companion[d.companion].append(d)
    for laws in by_companion.values():
        for d in laws:
            for d2 in laws:
                yield d, d2


def distr_morphisms(c):
    """Every morphism of laws ``d -> d2`` over a shared companion."""
    for d, d2 in law_pairs(c):
        for alpha in same_base_monad_maps(d.monad, d2.monad):
            m = DistrMorphism(d, d2, alpha)
            if validate_distr_morphism(m).ok:
                yield m


THEOREM_CATEGORIES = {"chain3": lambda: chain_category(3), "Z2": lambda: cyclic_group(2)}


# -- candidate sets accepted by the validators --------------------------------

def functor_accept_set(c, typed=True):
    """Functors accepted by the validator among all candidate tables."""
    out = set()
    objs = list(product(c.objects, repeat=c.n_objects))
    for om in objs:
        if typed:
            mors = typed_candidates(c, [om[c.src[f]] for f in range(c.n_morphisms)],
                                    [om[c.tgt[f]] for f in range(c.n_morphisms)])
        else:
            mors = product(range(c.n_morphisms), repeat=c.n_morphisms)
        for mm in mors:
            F = FunctorData(c, c, tuple(om), tuple(mm))
            if validate_functor(F).ok:
                out.add(F)
    return out


def monad_accept_set(c):
    out = set()
    Id = identity_functor(c)
    for T in enumerate_functors(c):
        TT = compose_functors(T, T)
        for mu in typed_candidates(c, TT.object_map, T.object_map):
            for eta in typed_candidates(c, c.objects, T.object_map):
                m = MonadData(T, NatTransData(TT, T, mu), NatTransData(Id, T, eta))
                if validate_monad(m).ok:
                    out.add(m)
    return out


def law_accept_set(T, G):
    Tf, Gf = T.T, G.G if isinstance(G, ComonadData) else G
    TG, GT = compose_functors(Tf, Gf), compose_functors(Gf, Tf)
    out = set()
    for comps in typed_candidates(T.base, TG.object_map, GT.object_map):
        d = DistLawData(T, G, NatTransData(TG, GT, comps))
        if validate_dist_law(d).ok:
            out.add(d)
    return out


def pairs_on(c):
    return [equivariant_from_law(d) for d in all_laws(c)]


def pair_maps(c):
    P = pairs_on(c)
    for T in P:
        for S in P:
            for K in enumerate_functors(c):
                for zeta in enumerate_nat_trans(compose_functors(K, S.G), compose_functors(T.G, K)):
                    for alpha in enumerate_nat_trans(compose_functors(T.T, K), compose_functors(K, S.T)):
                        yield PairMapData(K, zeta, alpha, T, S)
