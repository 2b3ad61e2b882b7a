"""Distributive laws ``l : T G ⇒ G T``, Beck's law/lift bijection and the category distr(M, G).

``T`` is usually a monad; a comonad in the ``T`` slot is accepted too, which
is what the braided towers produce. The companion ``G`` is either a bare
endofunctor or a comonad. Comonad companions get the two extra axioms

* counit: ``εT ∘ l = Tε`` as transformations ``T G ⇒ T``;
* comultiplication: ``δT ∘ l = Gl ∘ lG ∘ Tδ`` as transformations ``T G ⇒ G G T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .fincat import (
    FinCategory,
    FunctorData,
    NatTransData,
    compare,
    compose_functors,
    identity_functor,
    identity_nat_trans,
    make_functor,
    validate_nat_trans,
    vcompose,
    whisker,
    whisker_left,
    whisker_right,
)
from .monad import (
    ComonadData,
    EMConstruction,
    MonadData,
    build_em,
    em_functor_from_map,
    iter_em_functors_over,
    map_from_em_functor,
    validate_monad_map_same_base,
)
from .report import BoundaryError, PreconditionError, Report


def underlying(x: FunctorData | MonadData | ComonadData) -> FunctorData:
    if isinstance(x, MonadData):
        return x.T
    if isinstance(x, ComonadData):
        return x.G
    return x


@dataclass(frozen=True)
class DistLawData:
    monad: MonadData | ComonadData
    companion: FunctorData | ComonadData
    l: NatTransData
    name: str = field(default="", compare=False)

    @property
    def T(self) -> FunctorData:
        return underlying(self.monad)

    @property
    def G(self) -> FunctorData:
        return underlying(self.companion)

    @property
    def base(self) -> FinCategory:
        return self.T.source

    def __repr__(self):
        return f"<DistLaw {self.name or 'l'} components={list(self.l.components)}>"


def make_dist_law(monad, companion, components, name: str = "") -> DistLawData:
    T, G = underlying(monad), underlying(companion)
    l = NatTransData(compose_functors(T, G), compose_functors(G, T), tuple(components), name)
    return DistLawData(monad, companion, l, name)


def identity_law(monad: MonadData) -> DistLawData:
    """The law for ``G = Id`` with identity components."""
    Id = identity_functor(monad.base)
    return DistLawData(monad, Id, identity_nat_trans(monad.T), "id")


def validate_dist_law(d: DistLawData) -> Report:
    T, G, l = d.T, d.G, d.l
    if T.source != G.source or not T.is_endo or not G.is_endo:
        raise BoundaryError("T and G must be endofunctors of one category")
    TG, GT = compose_functors(T, G), compose_functors(G, T)
    if l.source != TG or l.target != GT:
        raise BoundaryError("l must be a transformation TG => GT")
    rep = Report(f"distributive law {d.name}".strip())
    rep.merge(validate_nat_trans(l), "l:")
    if not rep.ok:
        return rep
    m = d.monad
    if isinstance(m, MonadData):
        lhs = vcompose(whisker_left(G, m.mu), whisker_right(l, T), whisker_left(T, l))
        compare(rep, "pentagon", lhs, vcompose(l, whisker_right(m.mu, G)))
        compare(rep, "unit", vcompose(l, whisker_right(m.eta, G)), whisker_left(G, m.eta))
    elif isinstance(m, ComonadData):
        lhs = vcompose(whisker_left(G, m.delta), l)
        rhs = vcompose(whisker_right(l, T), whisker_left(T, l), whisker_right(m.delta, G))
        compare(rep, "left-comultiplication", lhs, rhs)
        compare(rep, "left-counit", vcompose(whisker_left(G, m.epsilon), l), whisker_right(m.epsilon, G))
    c = d.companion
    if isinstance(c, ComonadData):
        compare(rep, "counit", vcompose(whisker_right(c.epsilon, T), l), whisker_left(T, c.epsilon))
        lhs = vcompose(whisker_right(c.delta, T), l)
        rhs = vcompose(whisker_left(G, l), whisker_right(l, G), whisker_left(T, c.delta))
        compare(rep, "comultiplication", lhs, rhs)
    return rep


# -- Beck ---------------------------------------------------------------------

def _check_em(d: DistLawData, em: EMConstruction) -> None:
    if em.monad != d.monad:
        raise BoundaryError("the EM construction belongs to a different monad")


def lift_from_law(d: DistLawData, em: EMConstruction) -> FunctorData:
    """``G̃(M, ν) = (GM, G(ν)∘l_M)``."""
    _check_em(d, em)
    validate_dist_law(d).require()
    G, c = d.G, d.base
    obj = []
    for x, nu in em.algebras:
        a = em.algebra_index(G.object_map[x], c.table[G.morphism_map[nu]][d.l.components[x]])
        if a is None:
            raise PreconditionError(f"G̃ of algebra ({x}, {nu}) is not an algebra")
        obj.append(a)
    mor = [em.arrow_index(obj[a], obj[b], G.morphism_map[f]) for a, b, f in em.arrows]
    return make_functor(em.em, em.em, obj, mor, f"{G.name or 'G'}~")


def lift_comonad(d: DistLawData, em: EMConstruction) -> ComonadData:
    """The lifted comonad ``(G̃, δ̃, ε̃)`` whose components are ``δ_M`` and ``ε_M``."""
    c = d.companion
    if not isinstance(c, ComonadData):
        raise BoundaryError("companion is not a comonad")
    Gt = lift_from_law(d, em)
    GtGt = compose_functors(Gt, Gt)
    delta, eps = [], []
    rep = Report("lift_comonad")
    for a, (x, _) in enumerate(em.algebras):
        f = em.arrow_index(Gt.object_map[a], GtGt.object_map[a], c.delta.components[x])
        e = em.arrow_index(Gt.object_map[a], a, c.epsilon.components[x])
        if f is None:
            rep.fail("delta-lifts", {"algebra": a})
        if e is None:
            rep.fail("epsilon-lifts", {"algebra": a})
        delta.append(f)
        eps.append(e)
    rep.require()
    return ComonadData(Gt, NatTransData(Gt, GtGt, tuple(delta)),
                       NatTransData(Gt, identity_functor(em.em), tuple(eps)), Gt.name)


def law_from_lift(Gt: FunctorData, em: EMConstruction, companion: FunctorData | ComonadData) -> DistLawData:
    """``l_M = U(ε_{G̃ F M}) ∘ T G(η_M)``."""
    G = underlying(companion)
    if Gt.source != em.em or Gt.target != em.em:
        raise BoundaryError("the lift must be an endofunctor of the EM category")
    if compose_functors(em.U, Gt) != compose_functors(G, em.U):
        raise BoundaryError("U G̃ != G U")
    T, c, eta = em.monad.T, em.base, em.monad.eta.components
    comps = []
    for x in c.objects:
        a = Gt.object_map[em.free(x)]
        comps.append(c.table[em.action(a)][T.morphism_map[G.morphism_map[eta[x]]]])
    return make_dist_law(em.monad, companion, comps, "l")


def law_from_lift_composite(Gt: FunctorData, em: EMConstruction,
                            companion: FunctorData | ComonadData) -> NatTransData:
    """``U ε G̃ F ∘ T G η`` assembled from whiskered 2-cells, to cross-check law_from_lift."""
    G = underlying(companion)
    first = whisker_left(compose_functors(em.monad.T, G), em.unit)
    second = whisker(em.U, em.counit_nat, compose_functors(Gt, em.F))
    return vcompose(second, first)


def enumerate_lifts(em: EMConstruction, companion: FunctorData | ComonadData) -> Iterator[FunctorData]:
    """Every ``G̃`` on the EM category with ``U G̃ = G U``.

    For a comonad companion only lifts along which ``δ`` and ``ε`` lift too.
    """
    G = underlying(companion)
    for Gt in iter_em_functors_over(em, em, G):
        if isinstance(companion, ComonadData) and not _comonad_lifts(Gt, em, companion):
            continue
        yield Gt.named(f"{G.name or 'G'}~")


def _comonad_lifts(Gt: FunctorData, em: EMConstruction, c: ComonadData) -> bool:
    GtGt = compose_functors(Gt, Gt)
    for a, (x, _) in enumerate(em.algebras):
        if em.arrow_index(Gt.object_map[a], GtGt.object_map[a], c.delta.components[x]) is None:
            return False
        if em.arrow_index(Gt.object_map[a], a, c.epsilon.components[x]) is None:
            return False
    return True


def check_beck_roundtrip(T: MonadData, companion: FunctorData | ComonadData, bound: int | None = None) -> Report:
    """Enumerate all laws and all lifts; both composites must be identities."""
    from .oracle import enumerate_dist_laws

    em = build_em(T)
    rep = Report("beck")
    laws = list(enumerate_dist_laws(T, companion, bound))
    lifts = list(enumerate_lifts(em, companion))
    rep.counts["laws"] = len(laws)
    rep.counts["lifts"] = len(lifts)
    for i, d in enumerate(laws):
        back = law_from_lift(lift_from_law(d, em), em, companion)
        if back.l != d.l:
            rep.fail("law-lift-law", {"law": i})
    for i, Gt in enumerate(lifts):
        d = law_from_lift(Gt, em, companion)
        if not validate_dist_law(d).ok:
            rep.fail("lift-gives-law", {"lift": i})
            continue
        if lift_from_law(d, em) != Gt:
            rep.fail("lift-law-lift", {"lift": i})
    if len(laws) != len(lifts):
        rep.fail("bijection", {"laws": len(laws), "lifts": len(lifts)})
    return rep


# -- the category distr(M, G) -------------------------------------------------

@dataclass(frozen=True)
class DistrMorphism:
    source: DistLawData
    target: DistLawData
    alpha: NatTransData
    name: str = field(default="", compare=False)


def validate_distr_morphism(m: DistrMorphism) -> Report:
    d, d2, alpha = m.source, m.target, m.alpha
    if d.companion != d2.companion:
        raise BoundaryError("both laws must share the companion G")
    rep = Report(f"distr morphism {m.name}".strip())
    rep.merge(validate_monad_map_same_base(alpha, d.monad, d2.monad))
    if not rep.ok:
        return rep
    G = d.G
    compare(rep, "distr-square", vcompose(whisker_left(G, alpha), d.l), vcompose(d2.l, whisker_right(alpha, G)))
    return rep


def identity_distr_morphism(d: DistLawData) -> DistrMorphism:
    return DistrMorphism(d, d, identity_nat_trans(d.T))


def compose_distr_morphisms(m2: DistrMorphism, m1: DistrMorphism) -> DistrMorphism:
    if m1.target != m2.source:
        raise BoundaryError("morphisms do not chain")
    return DistrMorphism(m1.source, m2.target, vcompose(m2.alpha, m1.alpha))


def check_halpha_equivariance(m: DistrMorphism, em: EMConstruction, em2: EMConstruction) -> Report:
    """``H^α G̃' = G̃ H^α`` as functors ``em(T') → em(T)``."""
    validate_distr_morphism(m).require()
    H = em_functor_from_map(m.alpha, em, em2)
    Gt, Gt2 = lift_from_law(m.source, em), lift_from_law(m.target, em2)
    rep = Report("H^alpha equivariance")
    lhs, rhs = compose_functors(H, Gt2), compose_functors(Gt, H)
    for a in em2.em.objects:
        if lhs.object_map[a] != rhs.object_map[a]:
            rep.fail("equivariance", {"algebra": a})
            break
    if rep.ok and lhs != rhs:
        rep.fail("equivariance", {"morphisms": True})
    return rep


def _counit_leg(H: FunctorData, em: EMConstruction, em2: EMConstruction) -> NatTransData:
    """``U ε H F' : T T' ⇒ T'``."""
    return whisker(em.U, em.counit_nat, compose_functors(H, em2.F))


def check_mixed_pentagon_H(d: DistLawData, d2: DistLawData, H: FunctorData,
                           em: EMConstruction, em2: EMConstruction) -> Report:
    """The mixed pentagon ``l' ∘ (UεHF')G = G(UεHF') ∘ lT' ∘ Tl'``.

    Requires ``UH = U'`` and ``G̃ H = H G̃'``.
    """
    if compose_functors(em.U, H) != em2.U:
        raise PreconditionError("UH != U'")
    Gt, Gt2 = lift_from_law(d, em), lift_from_law(d2, em2)
    if compose_functors(Gt, H) != compose_functors(H, Gt2):
        raise PreconditionError("H does not intertwine the lifts")
    G, T, T2 = d.G, d.T, d2.T
    v = _counit_leg(H, em, em2)
    lhs = vcompose(d2.l, whisker_right(v, G))
    rhs = vcompose(whisker_left(G, v), whisker_right(d.l, T2), whisker_left(T, d2.l))
    rep = Report("mixed pentagon (functor)")
    compare(rep, "mixed-pentagon-H", lhs, rhs)
    return rep


def _mult_leg(alpha: NatTransData, T2: MonadData) -> NatTransData:
    """``μ' ∘ α T' : T T' ⇒ T'``."""
    return vcompose(T2.mu, whisker_right(alpha, T2.T))


def check_mixed_pentagon_alpha(m: DistrMorphism) -> Report:
    """The mixed pentagon ``l' ∘ (μ'∘αT')G = G(μ'∘αT') ∘ lT' ∘ Tl'``."""
    validate_distr_morphism(m).require()
    d, d2 = m.source, m.target
    G, T, T2 = d.G, d.T, d2.T
    v = _mult_leg(m.alpha, d2.monad)
    lhs = vcompose(d2.l, whisker_right(v, G))
    rhs = vcompose(whisker_left(G, v), whisker_right(d.l, T2), whisker_left(T, d2.l))
    rep = Report("mixed pentagon (map)")
    compare(rep, "mixed-pentagon-alpha", lhs, rhs)
    return rep


def check_vertical_agreement(alpha: NatTransData, em: EMConstruction, em2: EMConstruction) -> Report:
    """For ``H = H^α``: ``UεHF' = μ'∘αT'`` and the unwhiskered ``UεH = U'ε'∘α U'``."""
    H = em_functor_from_map(alpha, em, em2)
    rep = Report("vertical agreement")
    compare(rep, "vertical-agreement", _counit_leg(H, em, em2), _mult_leg(alpha, em2.monad))
    lhs = whisker(em.U, em.counit_nat, H)
    rhs = vcompose(whisker_left(em2.U, em2.counit_nat), whisker_right(alpha, em2.U))
    compare(rep, "vertical-agreement-U", lhs, rhs)
    return rep


def same_base_monad_maps(T: MonadData, T2: MonadData, bound: int | None = None) -> list[NatTransData]:
    from .oracle import enumerate_nat_trans

    return [a for a in enumerate_nat_trans(T.T, T2.T, bound)
            if validate_monad_map_same_base(a, T, T2).ok]


def check_contravariant_functoriality(c: FinCategory, companion: FunctorData | ComonadData | None = None,
                                      bound: int | None = None) -> Report:
    """``α^id = id`` and ``α^{H∘H'} = α^{H'}∘α^H`` over every composable pair.

    With a companion ``G`` the objects are law-carrying monads and only
    functors intertwining the lifts are used.
    """
    from .oracle import enumerate_dist_laws, enumerate_monads

    monads = list(enumerate_monads(c, bound))
    ems = [build_em(m) for m in monads]
    nodes: list[tuple[int, FunctorData | None]] = []
    for i, m in enumerate(monads):
        if companion is None:
            nodes.append((i, None))
        else:
            for d in enumerate_dist_laws(m, companion, bound):
                nodes.append((i, lift_from_law(d, ems[i])))
    rep = Report("contravariant functoriality")
    homs: dict[tuple[int, int], list[FunctorData]] = {}
    for p, (i, Gi) in enumerate(nodes):
        for q, (j, Gj) in enumerate(nodes):
            hs = []
            for H in iter_em_functors_over(ems[i], ems[j]):
                if Gi is not None and compose_functors(Gi, H) != compose_functors(H, Gj):
                    continue
                hs.append(H)
            homs[(p, q)] = hs
    for p, (i, _) in enumerate(nodes):
        a = map_from_em_functor(identity_functor(ems[i].em), ems[i], ems[i])
        if a != identity_nat_trans(monads[i].T):
            rep.fail("identity", {"node": p})
    pairs = 0
    for (p, q), hs in homs.items():
        for (q2, r), hs2 in homs.items():
            if q2 != q:
                continue
            i, j, k = nodes[p][0], nodes[q][0], nodes[r][0]
            for H in hs:
                aH = map_from_em_functor(H, ems[i], ems[j])
                for H2 in hs2:
                    aH2 = map_from_em_functor(H2, ems[j], ems[k])
                    both = map_from_em_functor(compose_functors(H, H2), ems[i], ems[k])
                    pairs += 1
                    if both != vcompose(aH2, aH):
                        rep.fail("composition", {"source": r, "middle": q, "target": p})
    rep.counts["objects"] = len(nodes)
    rep.counts["composable_pairs"] = pairs
    return rep


def check_equivariance_transfer(d: DistLawData, d2: DistLawData, bound: int | None = None) -> Report:
    """Hom-set bijection for distr(M, G): ``α`` is a distr morphism iff ``H^α`` intertwines the lifts."""
    em, em2 = build_em(d.monad), build_em(d2.monad)
    Gt, Gt2 = lift_from_law(d, em), lift_from_law(d2, em2)
    rep = Report("equivariance transfer")
    morphisms = 0
    for alpha in same_base_monad_maps(d.monad, d2.monad, bound):
        H = em_functor_from_map(alpha, em, em2)
        square = validate_distr_morphism(DistrMorphism(d, d2, alpha)).ok
        equivariant = compose_functors(H, Gt2) == compose_functors(Gt, H)
        if square != equivariant:
            rep.fail("alpha-vs-H", {"alpha": list(alpha.components)})
        morphisms += square
    intertwiners = 0
    for H in iter_em_functors_over(em, em2):
        if compose_functors(H, Gt2) != compose_functors(Gt, H):
            continue
        intertwiners += 1
        alpha = map_from_em_functor(H, em, em2)
        if not validate_distr_morphism(DistrMorphism(d, d2, alpha)).ok:
            rep.fail("corollary", {"H": list(H.object_map)})
    rep.counts["distr_morphisms"] = morphisms
    rep.counts["intertwiners"] = intertwiners
    if morphisms != intertwiners:
        rep.fail("hom-bijection", {"distr_morphisms": morphisms, "intertwiners": intertwiners})
    return rep
