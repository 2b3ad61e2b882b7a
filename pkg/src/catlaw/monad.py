"""Monads, comonads, Eilenberg-Moore categories and maps of monads.

Same-base maps use the orientation ``α : T ⇒ T'`` with
``α∘μ = μ'∘α T'∘T α`` and ``α∘η = η'``; they induce
``H^α : em(T') → em(T)``. Maps across categories are pairs
``(K, α)`` with ``K : M → N``, ``α : T K ⇒ K S`` for a monad ``S`` on ``M``
and ``T`` on ``N``; they induce ``em(S) → em(T)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator

from .fincat import (
    NONE,
    FinCategory,
    FunctorData,
    NatTransData,
    compare,
    compose,
    compose_all,
    compose_functors,
    identity_functor,
    identity_nat_trans,
    make_functor,
    thin_functor,
    thin_transformation,
    validate_category,
    validate_functor,
    validate_nat_trans,
    vcompose,
    whisker,
    whisker_left,
    whisker_right,
)
from .report import BoundaryError, PreconditionError, Report


@dataclass(frozen=True)
class MonadData:
    T: FunctorData
    mu: NatTransData
    eta: NatTransData
    name: str = field(default="", compare=False)

    @property
    def base(self) -> FinCategory:
        return self.T.source

    def __repr__(self):
        return (f"<Monad {self.name or 'T'} T={list(self.T.object_map)} "
                f"mu={list(self.mu.components)} eta={list(self.eta.components)}>")


@dataclass(frozen=True)
class ComonadData:
    G: FunctorData
    delta: NatTransData
    epsilon: NatTransData
    name: str = field(default="", compare=False)

    @property
    def base(self) -> FinCategory:
        return self.G.source

    def __repr__(self):
        return (f"<Comonad {self.name or 'G'} G={list(self.G.object_map)} "
                f"delta={list(self.delta.components)} epsilon={list(self.epsilon.components)}>")


def make_monad(T: FunctorData, mu, eta, name: str = "") -> MonadData:
    TT = compose_functors(T, T)
    Id = identity_functor(T.source)
    return MonadData(T, NatTransData(TT, T, tuple(mu)), NatTransData(Id, T, tuple(eta)), name)


def make_comonad(G: FunctorData, delta, epsilon, name: str = "") -> ComonadData:
    GG = compose_functors(G, G)
    Id = identity_functor(G.source)
    return ComonadData(G, NatTransData(G, GG, tuple(delta)), NatTransData(G, Id, tuple(epsilon)), name)


def identity_monad(c: FinCategory) -> MonadData:
    Id = identity_functor(c)
    return MonadData(Id, identity_nat_trans(Id), identity_nat_trans(Id), "Id")


def identity_comonad(c: FinCategory) -> ComonadData:
    Id = identity_functor(c)
    return ComonadData(Id, identity_nat_trans(Id), identity_nat_trans(Id), "Id")


def closure_monad(c: FinCategory, object_map, name: str = "") -> MonadData:
    """Monad on a thin category with every structure map forced by thinness."""
    T = thin_functor(c, c, object_map, name)
    TT = compose_functors(T, T)
    return MonadData(T, thin_transformation(TT, T), thin_transformation(identity_functor(c), T), name)


def interior_comonad(c: FinCategory, object_map, name: str = "") -> ComonadData:
    G = thin_functor(c, c, object_map, name)
    GG = compose_functors(G, G)
    return ComonadData(G, thin_transformation(G, GG), thin_transformation(G, identity_functor(c)), name)


def _typing(rep: Report, label: str, t: NatTransData, source: FunctorData, target: FunctorData) -> None:
    if t.source != source or t.target != target:
        raise BoundaryError(f"{label} has the wrong source or target functor")
    rep.merge(validate_nat_trans(t), f"{label}:")


def validate_monad(m: MonadData) -> Report:
    T, mu, eta = m.T, m.mu, m.eta
    if T.source != T.target:
        raise BoundaryError("a monad needs an endofunctor")
    rep = Report(f"monad {m.name}".strip())
    rep.merge(validate_functor(T), "T:")
    if not rep.ok:
        return rep
    TT = compose_functors(T, T)
    _typing(rep, "mu", mu, TT, T)
    _typing(rep, "eta", eta, identity_functor(m.base), T)
    if not rep.ok:
        return rep
    compare(rep, "associativity", vcompose(mu, whisker_left(T, mu)), vcompose(mu, whisker_right(mu, T)))
    idT = identity_nat_trans(T)
    compare(rep, "left-unit", vcompose(mu, whisker_right(eta, T)), idT)
    compare(rep, "right-unit", vcompose(mu, whisker_left(T, eta)), idT)
    return rep


def validate_comonad(c: ComonadData) -> Report:
    G, delta, eps = c.G, c.delta, c.epsilon
    if G.source != G.target:
        raise BoundaryError("a comonad needs an endofunctor")
    rep = Report(f"comonad {c.name}".strip())
    rep.merge(validate_functor(G), "G:")
    if not rep.ok:
        return rep
    GG = compose_functors(G, G)
    _typing(rep, "delta", delta, G, GG)
    _typing(rep, "epsilon", eps, G, identity_functor(c.base))
    if not rep.ok:
        return rep
    compare(rep, "coassociativity", vcompose(whisker_right(delta, G), delta),
            vcompose(whisker_left(G, delta), delta))
    idG = identity_nat_trans(G)
    compare(rep, "left-counit", vcompose(whisker_right(eps, G), delta), idG)
    compare(rep, "right-counit", vcompose(whisker_left(G, eps), delta), idG)
    return rep


# -- Eilenberg-Moore ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EMConstruction:
    """The category of algebras of a monad, materialised as a FinCategory.

    ``algebras[a] = (carrier, action)`` and ``arrows[f] = (a, b, underlying)``;
    ``counit[a]`` is the em-morphism ``F U a → a`` whose underlying arrow is
    the action of ``a``.
    """

    monad: MonadData
    em: FinCategory
    algebras: tuple[tuple[int, int], ...]
    arrows: tuple[tuple[int, int, int], ...]
    U: FunctorData
    F: FunctorData
    unit: NatTransData
    counit: tuple[int, ...]

    @property
    def base(self) -> FinCategory:
        return self.monad.base

    @cached_property
    def _algebra_index(self) -> dict[tuple[int, int], int]:
        return {a: i for i, a in enumerate(self.algebras)}

    @cached_property
    def _arrow_index(self) -> dict[tuple[int, int, int], int]:
        return {a: i for i, a in enumerate(self.arrows)}

    def algebra_index(self, carrier: int, action: int) -> int | None:
        return self._algebra_index.get((carrier, action))

    def arrow_index(self, a: int, b: int, f: int) -> int | None:
        return self._arrow_index.get((a, b, f))

    def carrier(self, a: int) -> int:
        return self.algebras[a][0]

    def action(self, a: int) -> int:
        return self.algebras[a][1]

    def free(self, x: int) -> int:
        return self.F.object_map[x]

    def algebras_on(self, carrier: int) -> list[int]:
        return [a for a, (m, _) in enumerate(self.algebras) if m == carrier]

    @cached_property
    def counit_nat(self) -> NatTransData:
        FU = compose_functors(self.F, self.U)
        return NatTransData(FU, identity_functor(self.em), self.counit, "epsilon")

    def __repr__(self):
        return f"<EM of {self.monad.name or 'T'}: {len(self.algebras)} algebras, {len(self.arrows)} morphisms>"


def is_algebra(m: MonadData, carrier: int, action: int) -> bool:
    c, T = m.base, m.T
    if c.src[action] != T.object_map[carrier] or c.tgt[action] != carrier:
        return False
    if c.table[action][m.eta.components[carrier]] != c.identity[carrier]:
        return False
    return (c.table[action][T.morphism_map[action]]
            == c.table[action][m.mu.components[carrier]])


def build_em(m: MonadData, name: str = "") -> EMConstruction:
    validate_monad(m).require()
    c, T = m.base, m.T
    algebras = [(x, nu) for x in c.objects for nu in c.hom(T.object_map[x], x) if is_algebra(m, x, nu)]
    arrows = []
    for a, (ma, nua) in enumerate(algebras):
        for b, (mb, nub) in enumerate(algebras):
            for f in c.hom(ma, mb):
                if c.table[f][nua] == c.table[nub][T.morphism_map[f]]:
                    arrows.append((a, b, f))
    arrow_index = {t: i for i, t in enumerate(arrows)}
    alg_index = {t: i for i, t in enumerate(algebras)}
    identity = [arrow_index[(a, a, c.identity[x])] for a, (x, _) in enumerate(algebras)]
    k = len(arrows)
    table = [[NONE] * k for _ in range(k)]
    for g, (b2, cc, gu) in enumerate(arrows):
        for f, (a, b, fu) in enumerate(arrows):
            if b == b2:
                table[g][f] = arrow_index[(a, cc, c.table[gu][fu])]
    em = FinCategory.from_tables(len(algebras), [(a, b) for a, b, _ in arrows], identity, table,
                                 name or (f"EM({m.name})" if m.name else "EM"))
    U = make_functor(em, c, [x for x, _ in algebras], [f for _, _, f in arrows], "U")
    free_obj = [alg_index[(T.object_map[x], m.mu.components[x])] for x in c.objects]
    free_mor = [arrow_index[(free_obj[c.src[f]], free_obj[c.tgt[f]], T.morphism_map[f])]
                for f in range(c.n_morphisms)]
    F = make_functor(c, em, free_obj, free_mor, "F")
    unit = NatTransData(identity_functor(c), compose_functors(U, F), m.eta.components, "eta")
    counit = tuple(arrow_index[(free_obj[x], a, nu)] for a, (x, nu) in enumerate(algebras))
    return EMConstruction(m, em, tuple(algebras), tuple(arrows), U, F, unit, counit)


def validate_em(E: EMConstruction) -> Report:
    """Check every EMConstruction invariant, including both triangle identities."""
    m, c = E.monad, E.base
    rep = Report("em")
    rep.merge(validate_category(E.em), "em:")
    rep.merge(validate_functor(E.U), "U:")
    rep.merge(validate_functor(E.F), "F:")
    for a, (x, nu) in enumerate(E.algebras):
        if not is_algebra(m, x, nu):
            rep.fail("algebra", {"algebra": a})
    for f, (a, b, u) in enumerate(E.arrows):
        if c.table[u][E.action(a)] != c.table[E.action(b)][m.T.morphism_map[u]]:
            rep.fail("algebra-morphism", {"morphism": f})
    if compose_functors(E.U, E.F) != m.T:
        rep.fail("UF=T", {})
    rep.merge(validate_nat_trans(E.counit_nat), "counit:")
    U, F, eps, eta = E.U, E.F, E.counit_nat, E.unit
    compare(rep, "triangle-U", vcompose(whisker_left(U, eps), whisker_right(eta, U)), identity_nat_trans(U))
    compare(rep, "triangle-F", vcompose(whisker_right(eps, F), whisker_left(F, eta)), identity_nat_trans(F))
    return rep


def enumerate_algebras(m: MonadData) -> list[tuple[int, int]]:
    """Brute-force algebra scan over every morphism of the base."""
    c, out = m.base, []
    for x in c.objects:
        for nu in range(c.n_morphisms):
            if c.src[nu] == m.T.object_map[x] and c.tgt[nu] == x and is_algebra(m, x, nu):
                out.append((x, nu))
    return out


# -- maps of monads on one base ----------------------------------------------

def validate_monad_map_same_base(alpha: NatTransData, source: MonadData, target: MonadData) -> Report:
    if source.base != target.base:
        raise BoundaryError("monads live on different categories")
    if alpha.source != source.T or alpha.target != target.T:
        raise BoundaryError("alpha must go from the source monad's functor to the target's")
    rep = Report(f"monad map {alpha.name}".strip())
    rep.merge(validate_nat_trans(alpha), "alpha:")
    if not rep.ok:
        return rep
    T, T2 = source.T, target.T
    both = vcompose(whisker_right(alpha, T2), whisker_left(T, alpha))
    compare(rep, "multiplicativity", vcompose(alpha, source.mu), vcompose(target.mu, both))
    compare(rep, "unit", vcompose(alpha, source.eta), target.eta)
    return rep


def em_functor_from_map(alpha: NatTransData, em: EMConstruction, em2: EMConstruction) -> FunctorData:
    """``H^α : em(T') → em(T)``, ``(M, ν') ↦ (M, ν'∘α_M)``.

    ``em`` belongs to the source monad ``T`` of ``alpha``; ``em2`` to ``T'``.
    """
    validate_monad_map_same_base(alpha, em.monad, em2.monad).require()
    c = em.base
    obj = []
    for x, nu2 in em2.algebras:
        a = em.algebra_index(x, c.table[nu2][alpha.components[x]])
        if a is None:
            raise PreconditionError(f"H^alpha image of algebra ({x}, {nu2}) is not an algebra")
        obj.append(a)
    mor = [em.arrow_index(obj[a], obj[b], f) for a, b, f in em2.arrows]
    return make_functor(em2.em, em.em, obj, mor, "H")


def map_from_em_functor(H: FunctorData, em: EMConstruction, em2: EMConstruction) -> NatTransData:
    """``α^H = U ε H F' ∘ T η'`` for ``H : em(T') → em(T)`` with ``U H = U'``."""
    if H.source != em2.em or H.target != em.em:
        raise BoundaryError("H must go from em(T') to em(T)")
    if compose_functors(em.U, H) != em2.U:
        raise BoundaryError("H does not commute with the forgetful functors (UH != U')")
    c, T = em.base, em.monad.T
    comps = []
    for x in c.objects:
        a = H.object_map[em2.free(x)]
        comps.append(c.table[em.action(a)][T.morphism_map[em2.monad.eta.components[x]]])
    return NatTransData(T, em2.monad.T, tuple(comps), "alpha^H")


def map_from_em_functor_composite(H: FunctorData, em: EMConstruction, em2: EMConstruction) -> NatTransData:
    """The same transformation assembled from whiskered 2-cells rather than by lookup."""
    if compose_functors(em.U, H) != em2.U:
        raise BoundaryError("UH != U'")
    first = whisker_left(em.monad.T, em2.unit)
    second = whisker(em.U, em.counit_nat, compose_functors(H, em2.F))
    return vcompose(second, first)


def check_epsP_identity(H: FunctorData, em: EMConstruction, em2: EMConstruction) -> Report:
    """``Hε' ∘ εHF'UH ∘ Fη'UH = εH`` for ``H : em(T') → em(T)`` with ``UH = U'``."""
    if compose_functors(em.U, H) != em2.U:
        raise BoundaryError("UH != U'")
    F, U, F2 = em.F, em.U, em2.F
    eps, eps2, eta2 = em.counit_nat, em2.counit_nat, em2.unit
    UH = compose_functors(U, H)
    lhs = vcompose(whisker_left(H, eps2),
                   whisker_right(eps, compose_all(H, F2, U, H)),
                   whisker(F, eta2, UH))
    rep = Report("eps-identity")
    compare(rep, "eps-identity", lhs, whisker_right(eps, H))
    return rep


# -- maps of monads across categories ----------------------------------------

@dataclass(frozen=True)
class MonadMapAcross:
    """``(K, α) : T → S`` with ``K : M → N``, ``α : T K ⇒ K S``."""

    K: FunctorData
    alpha: NatTransData
    T: MonadData
    S: MonadData
    zeta: NatTransData | None = None
    name: str = field(default="", compare=False)


def identity_monad_map(m: MonadData) -> MonadMapAcross:
    Id = identity_functor(m.base)
    return MonadMapAcross(Id, identity_nat_trans(m.T), m, m)


def validate_monad_map_across(mm: MonadMapAcross) -> Report:
    K, alpha, T, S = mm.K, mm.alpha, mm.T, mm.S
    if K.source != S.base or K.target != T.base:
        raise BoundaryError("K must go from the base of S to the base of T")
    TK, KS = compose_functors(T.T, K), compose_functors(K, S.T)
    if alpha.source != TK or alpha.target != KS:
        raise BoundaryError("alpha must be a transformation TK => KS")
    rep = Report(f"monad map {mm.name}".strip())
    rep.merge(validate_functor(K), "K:")
    rep.merge(validate_nat_trans(alpha), "alpha:")
    if not rep.ok:
        return rep
    lhs = vcompose(whisker_left(K, S.mu), whisker_right(alpha, S.T), whisker_left(T.T, alpha))
    compare(rep, "multiplicativity", lhs, vcompose(alpha, whisker_right(T.mu, K)))
    compare(rep, "unit", vcompose(alpha, whisker_right(T.eta, K)), whisker_left(K, S.eta))
    return rep


def synthesize_monad_maps(K: FunctorData, T: MonadData, S: MonadData) -> list[MonadMapAcross]:
    """All ``α`` making ``(K, α)`` a map of monads; empty when none exists."""
    from .oracle import enumerate_nat_trans

    TK, KS = compose_functors(T.T, K), compose_functors(K, S.T)
    out = []
    for alpha in enumerate_nat_trans(TK, KS):
        mm = MonadMapAcross(K, alpha, T, S)
        if validate_monad_map_across(mm).ok:
            out.append(mm)
    return out


def compose_monad_maps(outer: MonadMapAcross, inner: MonadMapAcross) -> MonadMapAcross:
    """``(K, α) ∘ (L, β) = (L∘K, Lα ∘ βK)`` for ``(K, α) : T → S``, ``(L, β) : V → T``."""
    K, alpha, L, beta = outer.K, outer.alpha, inner.K, inner.alpha
    if inner.S != outer.T or L.source != K.target:
        raise BoundaryError("maps do not chain")
    gamma = vcompose(whisker_left(L, alpha), whisker_right(beta, K))
    return MonadMapAcross(compose_functors(L, K), gamma, inner.T, outer.S)


def compose_monad_maps_pasted(outer: MonadMapAcross, inner: MonadMapAcross) -> NatTransData:
    """The composite 2-cell read off the pasting diagram: ``L α`` after ``β K``, through ``L T K``."""
    K, alpha, L, beta = outer.K, outer.alpha, inner.K, inner.alpha
    c = L.target
    comps = []
    for x in K.source.objects:
        b = beta.components[K.object_map[x]]
        comps.append(compose(c, L.morphism_map[alpha.components[x]], b))
    return NatTransData(compose_functors(inner.T.T, compose_functors(L, K)),
                        compose_functors(compose_functors(L, K), outer.S.T), tuple(comps))


def em_lift_across(mm: MonadMapAcross, emS: EMConstruction, emT: EMConstruction) -> FunctorData:
    """``H^α : em(S) → em(T)``, ``(M, ν) ↦ (KM, K(ν)∘α_M)``."""
    validate_monad_map_across(mm).require()
    K, alpha, N = mm.K, mm.alpha, mm.T.base
    obj = []
    for x, nu in emS.algebras:
        a = emT.algebra_index(K.object_map[x], N.table[K.morphism_map[nu]][alpha.components[x]])
        if a is None:
            raise PreconditionError(f"image of algebra ({x}, {nu}) is not a T-algebra")
        obj.append(a)
    mor = [emT.arrow_index(obj[a], obj[b], K.morphism_map[f]) for a, b, f in emS.arrows]
    return make_functor(emS.em, emT.em, obj, mor, "H")


def map_from_em_across(K: FunctorData, H: FunctorData, emS: EMConstruction, emT: EMConstruction) -> MonadMapAcross:
    """``α^H = U^T ε^T H F^S ∘ T K η^S`` for ``H`` with ``U^T H = K U^S``."""
    if compose_functors(emT.U, H) != compose_functors(K, emS.U):
        raise BoundaryError("H does not satisfy U^T H = K U^S")
    N, T, S = emT.base, emT.monad, emS.monad
    comps = []
    for x in emS.base.objects:
        a = H.object_map[emS.free(x)]
        comps.append(N.table[emT.action(a)][T.T.morphism_map[K.morphism_map[S.eta.components[x]]]])
    alpha = NatTransData(compose_functors(T.T, K), compose_functors(K, S.T), tuple(comps), "alpha^H")
    return MonadMapAcross(K, alpha, T, S)


def validate_map_transformation(sigma: NatTransData, m1: MonadMapAcross, m2: MonadMapAcross) -> Report:
    """``σ : K ⇒ L`` with ``β∘Tσ = σS∘α`` for maps ``(K, α)``, ``(L, β)``."""
    if m1.T != m2.T or m1.S != m2.S:
        raise BoundaryError("the two maps must share source and target monads")
    if sigma.source != m1.K or sigma.target != m2.K:
        raise BoundaryError("sigma must go from K to L")
    rep = Report(f"map transformation {sigma.name}".strip())
    rep.merge(validate_nat_trans(sigma), "sigma:")
    if not rep.ok:
        return rep
    lhs = vcompose(m2.alpha, whisker_left(m1.T.T, sigma))
    rhs = vcompose(whisker_right(sigma, m1.S.T), m1.alpha)
    compare(rep, "transformation-square", lhs, rhs)
    return rep


def lift_transformation(sigma: NatTransData, m1: MonadMapAcross, m2: MonadMapAcross,
                        emS: EMConstruction, emT: EMConstruction) -> NatTransData:
    """``σ̃ = σ U^S : H^α ⇒ H^β``; each component is checked to be an algebra morphism."""
    validate_map_transformation(sigma, m1, m2).require()
    H1, H2 = em_lift_across(m1, emS, emT), em_lift_across(m2, emS, emT)
    comps = []
    rep = Report("lift_transformation")
    for a, (x, _) in enumerate(emS.algebras):
        f = emT.arrow_index(H1.object_map[a], H2.object_map[a], sigma.components[x])
        if f is None:
            rep.fail("algebra-morphism", {"algebra": a})
            comps.append(NONE)
        else:
            comps.append(f)
    rep.require()
    return NatTransData(H1, H2, tuple(comps), "sigma~")


def project_transformation(theta: NatTransData, m1: MonadMapAcross, m2: MonadMapAcross,
                           emS: EMConstruction, emT: EMConstruction) -> NatTransData:
    """``θ_* : K ⇒ L`` with ``(θ_*)_M = U^T θ_(M, ν)``.

    The components must not depend on ``ν``; objects carrying no algebra get
    the first component (in id order) making ``θ_*`` a transformation of maps.
    """
    H1, H2 = em_lift_across(m1, emS, emT), em_lift_across(m2, emS, emT)
    if theta.source != H1 or theta.target != H2:
        raise BoundaryError("theta must go from H^alpha to H^beta")
    M = emS.base
    comps: dict[int, int] = {}
    seen: dict[int, int] = {}
    for a, (x, _) in enumerate(emS.algebras):
        u = emT.arrows[theta.components[a]][2]
        if x in comps and comps[x] != u:
            rep = Report("project_transformation")
            rep.fail("nu-independence", {"algebra": seen[x], "other": a})
            raise PreconditionError("theta depends on the algebra structure", rep)
        comps.setdefault(x, u)
        seen.setdefault(x, a)
    free_objects = [x for x in M.objects if x not in comps]
    K, L, N = m1.K, m2.K, m1.T.base
    choices = [N.hom(K.object_map[x], L.object_map[x]) for x in free_objects]
    for pick in product(*choices):
        full = dict(comps)
        full.update(zip(free_objects, pick))
        sigma = NatTransData(K, L, tuple(full[x] for x in M.objects), "theta_*")
        if validate_map_transformation(sigma, m1, m2).ok:
            return sigma
    raise PreconditionError("no transformation of maps projects from theta")


def iter_em_functors_over(em: EMConstruction, em2: EMConstruction, K: FunctorData | None = None) -> Iterator[FunctorData]:
    """Every functor ``H : em2 → em`` with ``U H = K U2`` (``K`` defaults to the identity)."""
    from .oracle import enumerate_functors_constrained

    def carrier_image(a):
        x = em2.carrier(a)
        return K.object_map[x] if K is not None else x

    def under(f):
        u = em2.arrows[f][2]
        return K.morphism_map[u] if K is not None else u

    obj_choices = [em.algebras_on(carrier_image(a)) for a in em2.em.objects]

    def mor_choices(f, ha, hb):
        g = em.arrow_index(ha, hb, under(f))
        return () if g is None else (g,)

    for H in enumerate_functors_constrained(em2.em, em.em, obj_choices, mor_choices):
        yield H.named("H")
