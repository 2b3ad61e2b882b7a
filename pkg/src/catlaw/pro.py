"""PRO presentations, strict representations by endofunctors, and the diagrams they generate.

A representation sends object ``n`` to ``T^n`` and a generator ``τ : n → m``
to a transformation ``T^n ⇒ T^m``. Tensor ``a + b`` is horizontal
composition with the left summand outermost.

A law ``l : T G ⇒ G T`` between a PRO-structured ``T`` and an action
generator ``G`` yields one multigon per generator. On the ``T`` side a
generator ``τ : n → m`` gives ``Gτ ∘ l_[n] = l_[m] ∘ τG``, where
``l_[n] = lT^{n-1} ∘ … ∘ T^{n-1}l``; on the ``G`` side a generator
``δ : n → m`` of ``G``'s own PRO gives ``δT ∘ l^(n) = l^(m) ∘ Tδ``, where
``l^(n) = G^{n-1}l ∘ … ∘ lG^{n-1}``.
"""
from __future__ import annotations

import re
from types import SimpleNamespace
from dataclasses import dataclass, field
from typing import Any, Union

from .fincat import (
    FinCategory,
    FunctorData,
    NatTransData,
    compare,
    compose_functors,
    functor_power,
    identity_functor,
    identity_nat_trans,
    validate_functor,
    validate_nat_trans,
    vcompose,
    whisker,
    whisker_left,
    whisker_right,
)
from .monad import ComonadData, MonadData, MonadMapAcross, make_comonad, make_monad
from .report import BoundaryError, CatlawError, PreconditionError, Report


class WordError(CatlawError):
    """An ill-typed or unparsable PRO word; ``subterm`` locates the problem."""

    def __init__(self, message: str, subterm: Any = None, position: int | None = None):
        super().__init__(message)
        self.subterm = subterm
        self.position = position


class InterchangeError(CatlawError):
    pass


# -- words ----------------------------------------------------------------------

@dataclass(frozen=True)
class WId:
    n: int = 1


@dataclass(frozen=True)
class WGen:
    name: str


@dataclass(frozen=True)
class WSeq:
    """``outer ∘ inner``."""
    outer: "ProWord"
    inner: "ProWord"


@dataclass(frozen=True)
class WPar:
    left: "ProWord"
    right: "ProWord"


ProWord = Union[WId, WGen, WSeq, WPar]

_WORD_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[().+]))")


def parse_word(text: str) -> ProWord:
    """Parse ``mu . (mu + id)``; ``+`` binds tighter than ``.`` (composition)."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        while text[pos].isspace():
            pos += 1
        m = _WORD_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordError(f"unexpected character {text[pos]!r}", position=pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text))

    def take(value=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise WordError(f"expected {value or 'a term'} at column {tok[2] + 1}", position=tok[2])
        i += 1
        return tok

    def seq():
        w = par()
        while peek()[1] == ".":
            take(".")
            w = WSeq(w, par())
        return w

    def par():
        w = atom()
        while peek()[1] == "+":
            take("+")
            w = WPar(w, atom())
        return w

    def atom():
        kind, value, p = peek()
        if value == "(":
            take("(")
            w = seq()
            take(")")
            return w
        if kind == "name":
            take()
            if value == "id":
                if peek()[1] == "(" and i + 1 < len(tokens) and tokens[i + 1][0] == "num":
                    take("(")
                    n = int(take()[1])
                    take(")")
                    return WId(n)
                return WId(1)
            return WGen(value)
        raise WordError(f"expected a term at column {p + 1}", position=p)

    w = seq()
    if i != len(tokens):
        raise WordError(f"trailing input at column {tokens[i][2] + 1}", position=tokens[i][2])
    return w


def format_word(w: ProWord) -> str:
    if isinstance(w, WId):
        return "id" if w.n == 1 else f"id({w.n})"
    if isinstance(w, WGen):
        return w.name
    if isinstance(w, WSeq):
        outer, inner = format_word(w.outer), format_word(w.inner)
        if isinstance(w.outer, WPar):
            outer = f"({outer})"
        if isinstance(w.inner, WPar):
            inner = f"({inner})"
        return f"{outer} . {inner}"
    left = format_word(w.left)
    right = format_word(w.right)
    if isinstance(w.left, WSeq):
        left = f"({left})"
    if isinstance(w.right, (WSeq, WPar)):
        right = f"({right})"
    return f"{left} + {right}"


# -- presentations -------------------------------------------------------------

@dataclass(frozen=True)
class ProPresentation:
    generators: tuple[tuple[str, int, int], ...]
    relations: tuple[tuple[ProWord, ProWord], ...]
    name: str = field(default="", compare=False)

    def arity(self, gen: str) -> tuple[int, int]:
        for g, n, m in self.generators:
            if g == gen:
                return n, m
        raise WordError(f"unknown generator {gen!r}", WGen(gen))

    @property
    def generator_names(self) -> list[str]:
        return [g for g, _, _ in self.generators]


def make_presentation(generators, relations, name: str = "") -> ProPresentation:
    gens = tuple((str(g), int(n), int(m)) for g, n, m in generators)
    rels = tuple((parse_word(a) if isinstance(a, str) else a, parse_word(b) if isinstance(b, str) else b)
                 for a, b in relations)
    p = ProPresentation(gens, rels, name)
    for k, (a, b) in enumerate(p.relations):
        if word_arity(a, p) != word_arity(b, p):
            raise WordError(f"relation {k} has sides of different arity", (a, b))
    return p


def word_arity(w: ProWord, p: ProPresentation) -> tuple[int, int]:
    if isinstance(w, WId):
        return w.n, w.n
    if isinstance(w, WGen):
        return p.arity(w.name)
    if isinstance(w, WSeq):
        n1, m1 = word_arity(w.inner, p)
        n2, m2 = word_arity(w.outer, p)
        if m1 != n2:
            raise WordError(f"cannot compose {format_word(w.outer)} after {format_word(w.inner)}: "
                            f"middle arities {m1} and {n2} differ", w)
        return n1, m2
    n1, m1 = word_arity(w.left, p)
    n2, m2 = word_arity(w.right, p)
    return n1 + n2, m1 + m2


def monoid_pro() -> ProPresentation:
    return make_presentation(
        [("mu", 2, 1), ("eta", 0, 1)],
        [("mu . (mu + id)", "mu . (id + mu)"),
         ("mu . (eta + id)", "id"),
         ("mu . (id + eta)", "id")],
        "monoid")


def counital_pro() -> ProPresentation:
    return make_presentation(
        [("delta", 1, 2), ("eps", 1, 0)],
        [("(delta + id) . delta", "(id + delta) . delta"),
         ("(eps + id) . delta", "id"),
         ("(id + eps) . delta", "id")],
        "counital")


def builtin_pros() -> dict[str, ProPresentation]:
    return {"monoid": monoid_pro(), "counital": counital_pro()}


# -- representations -----------------------------------------------------------

@dataclass(frozen=True)
class ProRepresentation:
    presentation: ProPresentation
    T: FunctorData
    images: tuple[tuple[str, NatTransData], ...]
    name: str = field(default="", compare=False)

    @property
    def base(self) -> FinCategory:
        return self.T.source

    def image(self, gen: str) -> NatTransData:
        for g, t in self.images:
            if g == gen:
                return t
        raise WordError(f"representation has no image for {gen!r}", WGen(gen))

    def power(self, n: int) -> FunctorData:
        return functor_power(self.T, n)


def make_representation(presentation: ProPresentation, T: FunctorData, images: dict[str, Any],
                        name: str = "") -> ProRepresentation:
    """Images may be NatTransData or raw component lists (typed from the arities)."""
    out = []
    for g, n, m in presentation.generators:
        t = images[g]
        if not isinstance(t, NatTransData):
            t = NatTransData(functor_power(T, n), functor_power(T, m), tuple(t), g)
        out.append((g, t))
    return ProRepresentation(presentation, T, tuple(out), name)


def representation_from_monad(m: MonadData) -> ProRepresentation:
    return ProRepresentation(monoid_pro(), m.T, (("mu", m.mu), ("eta", m.eta)), m.name)


def representation_from_comonad(c: ComonadData) -> ProRepresentation:
    return ProRepresentation(counital_pro(), c.G, (("delta", c.delta), ("eps", c.epsilon)), c.name)


def monad_from_representation(r: ProRepresentation) -> MonadData:
    return make_monad(r.T, r.image("mu").components, r.image("eta").components, r.name)


def comonad_from_representation(r: ProRepresentation) -> ComonadData:
    return make_comonad(r.T, r.image("delta").components, r.image("eps").components, r.name)


def eval_word(w: ProWord, r: ProRepresentation) -> NatTransData:
    """Evaluate a word to a transformation ``T^n ⇒ T^m``, asserting interchange for ``+``."""
    n, m = word_arity(w, r.presentation)
    if isinstance(w, WId):
        return identity_nat_trans(functor_power(r.T, w.n))
    if isinstance(w, WGen):
        return r.image(w.name)
    if isinstance(w, WSeq):
        return vcompose(eval_word(w.outer, r), eval_word(w.inner, r))
    a, b = eval_word(w.left, r), eval_word(w.right, r)
    n2, m2 = word_arity(w.right, r.presentation)
    _, m1 = word_arity(w.left, r.presentation)
    T = r.T
    first = vcompose(whisker_left(functor_power(T, m1), b), whisker_right(a, functor_power(T, n2)))
    n1 = n - n2
    other = vcompose(whisker_right(a, functor_power(T, m2)), whisker_left(functor_power(T, n1), b))
    if first.components != other.components:
        raise InterchangeError(f"interchange fails for {format_word(w)}")
    return first


def validate_representation(r: ProRepresentation) -> Report:
    T = r.T
    if T.source != T.target:
        raise BoundaryError("representations act by endofunctors")
    rep = Report(f"representation {r.name}".strip())
    rep.merge(validate_functor(T), "T:")
    names = {g for g, _ in r.images}
    for g, n, m in r.presentation.generators:
        if g not in names:
            raise BoundaryError(f"no image for generator {g}")
        t = r.image(g)
        if t.source != functor_power(T, n) or t.target != functor_power(T, m):
            raise BoundaryError(f"image of {g} is not a transformation T^{n} => T^{m}")
        rep.merge(validate_nat_trans(t), f"{g}:")
    if not rep.ok:
        return rep
    for a, b in r.presentation.relations:
        compare(rep, f"{format_word(a)} = {format_word(b)}", eval_word(a, r), eval_word(b, r))
    return rep


# -- iterated laws -------------------------------------------------------------

def iterated_law(d, n: int) -> NatTransData:
    """``l^(n) = G^{n-1}l ∘ … ∘ GlG^{n-2} ∘ lG^{n-1} : T G^n ⇒ G^n T``; ``l^(0) = id_T``."""
    T, G, l = d.T, d.G, d.l
    if n == 0:
        return identity_nat_trans(T)
    steps = [whisker(functor_power(G, k), l, functor_power(G, n - 1 - k)) for k in range(n)]
    return vcompose(*reversed(steps))


def iterated_law_t_side(d, n: int) -> NatTransData:
    """``l_[n] = lT^{n-1} ∘ … ∘ T^{n-1}l : T^n G ⇒ G T^n``; ``l_[0] = id_G``."""
    T, G, l = d.T, d.G, d.l
    if n == 0:
        return identity_nat_trans(G)
    steps = [whisker(functor_power(T, n - 1 - k), l, functor_power(T, k)) for k in range(n)]
    return vcompose(*reversed(steps))


def iterated_law_recursive(d, n: int) -> NatTransData:
    """``l^(n) = G^{n-1}l ∘ l^(n-1)G`` unrolled from ``l^(1) = l``."""
    T, G, l = d.T, d.G, d.l
    if n == 0:
        return identity_nat_trans(T)
    out = l
    for k in range(2, n + 1):
        out = vcompose(whisker_left(functor_power(G, k - 1), l), whisker_right(out, G))
    return out


def check_decomposition(d, bound: int = 3) -> Report:
    """``l^(n+m) = G^n l^(m) ∘ l^(n) G^m`` for ``1 ≤ n, m ≤ bound``, and the one-step recursion."""
    G = d.G
    rep = Report("decomposition")
    for n in range(1, bound + 1):
        for m in range(1, bound + 1):
            lhs = iterated_law(d, n + m)
            rhs = vcompose(whisker_left(functor_power(G, n), iterated_law(d, m)),
                           whisker_right(iterated_law(d, n), functor_power(G, m)))
            compare(rep, f"split-{n}+{m}", lhs, rhs)
    for n in range(1, 2 * bound + 1):
        compare(rep, f"recursion-{n}", iterated_law(d, n), iterated_law_recursive(d, n))
    return rep


# -- multigons -----------------------------------------------------------------

@dataclass
class Edge:
    label: str
    cell: NatTransData

    def as_dict(self) -> dict[str, Any]:
        return {"label": self.label, "source": list(self.cell.source.object_map),
                "target": list(self.cell.target.object_map), "components": list(self.cell.components)}


@dataclass
class Multigon:
    generator: str
    arity: tuple[int, int]
    side: str
    top: list[Edge]
    bottom: list[Edge]

    @property
    def edge_count(self) -> int:
        return len(self.top) + len(self.bottom)

    def composites(self) -> tuple[NatTransData, NatTransData]:
        return (vcompose(*reversed([e.cell for e in self.top])),
                vcompose(*reversed([e.cell for e in self.bottom])))

    def as_dict(self) -> dict[str, Any]:
        return {"generator": self.generator, "arity": list(self.arity), "side": self.side,
                "edges": self.edge_count,
                "top": [e.as_dict() for e in self.top], "bottom": [e.as_dict() for e in self.bottom]}


def _pw(name: str, k: int) -> str:
    return "" if k == 0 else (name if k == 1 else f"{name}^{k}")


def _label(left: str, mid: str, right: str) -> str:
    return " ".join(p for p in (left, mid, right) if p)


def generate_multigon(gen: str, d, r: ProRepresentation, side: str = "G") -> Multigon:
    """The ``(n+m+2)``-gon for generator ``gen : n → m`` of ``r``.

    ``side="G"`` reads ``r`` as the structure on the companion ``G``;
    ``side="T"`` reads it as the structure on ``T``.
    """
    T, G, l = d.T, d.G, d.l
    n, m = r.presentation.arity(gen)
    tau = r.image(gen)
    if side == "G":
        if r.T != G:
            raise BoundaryError("representation does not act by the companion G")

        def run(k):
            return [Edge(_label(_pw("G", j), "l", _pw("G", k - 1 - j)),
                         whisker(functor_power(G, j), l, functor_power(G, k - 1 - j))) for j in range(k)]

        top = run(n) + [Edge(f"{gen} T", whisker_right(tau, T))]
        bottom = [Edge(f"T {gen}", whisker_left(T, tau))] + run(m)
    elif side == "T":
        if r.T != T:
            raise BoundaryError("representation does not act by T")

        def run(k):
            return [Edge(_label(_pw("T", k - 1 - j), "l", _pw("T", j)),
                         whisker(functor_power(T, k - 1 - j), l, functor_power(T, j))) for j in range(k)]

        top = run(n) + [Edge(f"G {gen}", whisker_left(G, tau))]
        bottom = [Edge(f"{gen} G", whisker_right(tau, G))] + run(m)
    else:
        raise ValueError("side must be 'G' or 'T'")
    return Multigon(gen, (n, m), side, top, bottom)


def check_multigon(mg: Multigon) -> Report:
    rep = Report(f"multigon {mg.generator}")
    a, b = mg.composites()
    compare(rep, f"multigon:{mg.generator}", a, b)
    rep.counts["edges"] = mg.edge_count
    return rep


def check_law_multigons(d, r: ProRepresentation, side: str) -> Report:
    rep = Report(f"{side}-side multigons")
    for g in r.presentation.generator_names:
        rep.merge(check_multigon(generate_multigon(g, d, r, side)))
    return rep


@dataclass(frozen=True)
class EquivariantRep:
    """A representation ``T`` together with a law ``l : T G ⇒ G T`` for the action generator ``G``."""

    rep: ProRepresentation
    G: FunctorData
    l: NatTransData
    name: str = field(default="", compare=False)

    @property
    def T(self) -> FunctorData:
        return self.rep.T

    @property
    def base(self) -> FinCategory:
        return self.rep.base


def equivariant_rep(r: ProRepresentation, G: FunctorData, components, name: str = "") -> EquivariantRep:
    l = NatTransData(compose_functors(r.T, G), compose_functors(G, r.T), tuple(components), name)
    return EquivariantRep(r, G, l, name)


def equivariant_from_law(d) -> EquivariantRep:
    """View a law on a monad as an equivariant representation of the monoid PRO."""
    return EquivariantRep(representation_from_monad(d.monad), d.G, d.l, d.name)


def validate_equivariant_rep(r: ProRepresentation | EquivariantRep, d=None) -> Report:
    """Every ``T``-side multigon; for the monoid PRO these are the pentagon (``mu``) and triangle (``eta``)."""
    if isinstance(r, EquivariantRep):
        d, r = r, r.rep
    if d.T != r.T:
        raise BoundaryError("law and representation disagree on T")
    rep = Report("equivariant representation")
    rep.merge(validate_nat_trans(d.l), "l:")
    if rep.ok:
        rep.merge(check_law_multigons(d, r, "T"))
    return rep


# -- maps of pairs ---------------------------------------------------------------

def _fun(x) -> FunctorData:
    if isinstance(x, MonadData):
        return x.T
    if isinstance(x, ComonadData):
        return x.G
    if isinstance(x, (EquivariantRep, ProRepresentation)):
        return x.T
    return x


def _image(x, gen: str) -> NatTransData:
    if isinstance(x, EquivariantRep):
        return x.rep.image(gen)
    if isinstance(x, ProRepresentation):
        return x.image(gen)
    if isinstance(x, MonadData):
        return {"mu": x.mu, "eta": x.eta}[gen]
    raise BoundaryError("no PRO structure")


@dataclass(frozen=True)
class PairMapData:
    """``(K, ζ, α) : (T, l^T) → (S, l^S)`` with ``K : M → N``, ``ζ : K G_M ⇒ G_N K``, ``α : T K ⇒ K S``."""

    K: FunctorData
    zeta: NatTransData
    alpha: NatTransData
    T: EquivariantRep
    S: EquivariantRep
    name: str = field(default="", compare=False)


def make_pair_map(K: FunctorData, zeta, alpha, T: EquivariantRep, S: EquivariantRep, name: str = "") -> PairMapData:
    if not isinstance(zeta, NatTransData):
        zeta = NatTransData(compose_functors(K, S.G), compose_functors(T.G, K), tuple(zeta))
    if not isinstance(alpha, NatTransData):
        alpha = NatTransData(compose_functors(T.T, K), compose_functors(K, S.T), tuple(alpha))
    return PairMapData(K, zeta, alpha, T, S, name)


def identity_pair_map(P: EquivariantRep) -> PairMapData:
    Id = identity_functor(P.base)
    return PairMapData(Id, identity_nat_trans(P.G), identity_nat_trans(P.T), P, P, "id")


def alpha_power(p, n: int) -> NatTransData:
    """``α^(n) = αS^{n-1} ∘ … ∘ T^{n-1}α : T^n K ⇒ K S^n``; ``α^(0) = id_K``."""
    K, alpha = p.K, p.alpha
    T, S = _fun(p.T), _fun(p.S)
    if n == 0:
        return identity_nat_trans(K)
    steps = [whisker(functor_power(T, n - 1 - j), alpha, functor_power(S, j)) for j in range(n)]
    return vcompose(*reversed(steps))


def _pair_boundaries(p: PairMapData) -> None:
    K, T, S = p.K, p.T, p.S
    if K.source != S.base or K.target != T.base:
        raise BoundaryError("K must go from the base of S to the base of T")
    if p.zeta.source != compose_functors(K, S.G) or p.zeta.target != compose_functors(T.G, K):
        raise BoundaryError("zeta must be K G_M => G_N K")
    if p.alpha.source != compose_functors(T.T, K) or p.alpha.target != compose_functors(K, S.T):
        raise BoundaryError("alpha must be T K => K S")
    if T.rep.presentation != S.rep.presentation:
        raise BoundaryError("both sides must represent the same PRO")


def hexagon_sides(p: PairMapData) -> tuple[NatTransData, NatTransData]:
    """``G_N α ∘ l^T K ∘ T ζ`` and ``ζ S ∘ K l^S ∘ α G_M``."""
    K, zeta, alpha, T, S = p.K, p.zeta, p.alpha, p.T, p.S
    top = vcompose(whisker_left(T.G, alpha), whisker_right(T.l, K), whisker_left(T.T, zeta))
    bottom = vcompose(whisker_right(zeta, S.T), whisker_left(K, S.l), whisker_right(alpha, S.G))
    return top, bottom


def validate_pair_map(p: PairMapData) -> Report:
    _pair_boundaries(p)
    rep = Report(f"pair map {p.name}".strip())
    rep.merge(validate_functor(p.K), "K:")
    rep.merge(validate_nat_trans(p.zeta), "zeta:")
    rep.merge(validate_nat_trans(p.alpha), "alpha:")
    if not rep.ok:
        return rep
    compare(rep, "hexagon", *hexagon_sides(p))
    for g, n, m in p.T.rep.presentation.generators:
        lhs = vcompose(whisker_left(p.K, p.S.rep.image(g)), alpha_power(p, n))
        rhs = vcompose(alpha_power(p, m), whisker_right(p.T.rep.image(g), p.K))
        compare(rep, f"multigon:{g}", lhs, rhs)
    return rep


def check_power_lemma(outer, inner, n: int) -> Report:
    """``L α^(n) ∘ β^(n) K = (Lα ∘ βK)^(n)`` for ``outer = (K, α)``, ``inner = (L, β)``."""
    K, L = outer.K, inner.K
    composite = vcompose(whisker_left(L, outer.alpha), whisker_right(inner.alpha, K))

    c = SimpleNamespace(K=compose_functors(L, K), alpha=composite, T=inner.T, S=outer.S)
    rep = Report(f"power lemma n={n}")
    lhs = vcompose(whisker_left(L, alpha_power(outer, n)), whisker_right(alpha_power(inner, n), K))
    compare(rep, f"power-lemma-{n}", lhs, alpha_power(c, n))
    return rep


def compose_pair_maps(outer: PairMapData, inner: PairMapData) -> PairMapData:
    """``(L∘K, ζ^L K ∘ L ζ^K, L α ∘ β K)`` for ``outer = (K, ζ^K, α) : T → S``, ``inner = (L, ζ^L, β) : V → T``."""
    K, L = outer.K, inner.K
    if inner.S != outer.T or L.source != K.target:
        raise BoundaryError("pair maps do not chain")
    zeta = vcompose(whisker_right(inner.zeta, K), whisker_left(L, outer.zeta))
    alpha = vcompose(whisker_left(L, outer.alpha), whisker_right(inner.alpha, K))
    return PairMapData(compose_functors(L, K), zeta, alpha, inner.T, outer.S)


def check_composition_pasting(outer: PairMapData, inner: PairMapData) -> Report:
    """Check each cell of the pasting that proves the composite hexagon."""
    K, zK, alpha, T, S = outer.K, outer.zeta, outer.alpha, outer.T, outer.S
    L, zL, beta, V = inner.K, inner.zeta, inner.alpha, inner.T
    GM, GN, GP = S.G, T.G, V.G
    rep = Report("composition pasting")
    # naturality of beta against zeta^K
    compare(rep, "cell-beta-naturality",
            vcompose(whisker_right(beta, compose_functors(GN, K)), whisker(compose_functors(V.T, L), zK)),
            vcompose(whisker(compose_functors(L, T.T), zK), whisker_right(beta, compose_functors(K, GM))))
    # hexagon of the inner map, whiskered by K
    ht, hb = hexagon_sides(inner)
    compare(rep, "cell-inner-hexagon", whisker_right(ht, K), whisker_right(hb, K))
    # hexagon of the outer map, under L
    ot, ob = hexagon_sides(outer)
    compare(rep, "cell-outer-hexagon", whisker_left(L, ot), whisker_left(L, ob))
    # naturality of zeta^L against alpha
    compare(rep, "cell-zeta-naturality",
            vcompose(whisker(compose_functors(GP, L), alpha), whisker_right(zL, compose_functors(T.T, K))),
            vcompose(whisker_right(zL, compose_functors(K, S.T)), whisker(compose_functors(L, GN), alpha)))
    comp = compose_pair_maps(outer, inner)
    compare(rep, "outer-hexagon", *hexagon_sides(comp))
    return rep


def check_mixed_heptagon(p: PairMapData, gen: str) -> Report:
    """For ``τ : n → p`` (``n ≥ 1``), with ``v = Kτ^S ∘ αS^{n-1}``:
    ``G_N v ∘ l^T K S^{n-1} ∘ T ζ S^{n-1} ∘ T K l^S_[n-1] = ζ S^p ∘ K l^S_[p] ∘ v G_M``.
    """
    K, zeta, alpha, T, S = p.K, p.zeta, p.alpha, p.T, p.S
    n, q = T.rep.presentation.arity(gen)
    rep = Report(f"mixed heptagon {gen}")
    if n == 0:
        rep.counts["skipped"] = 1
        return rep
    Sf = S.T
    Sn1 = functor_power(Sf, n - 1)
    v = vcompose(whisker_left(K, S.rep.image(gen)), whisker_right(alpha, Sn1))
    lhs = vcompose(whisker_left(T.G, v),
                   whisker_right(T.l, compose_functors(K, Sn1)),
                   whisker(T.T, zeta, Sn1),
                   whisker_left(compose_functors(T.T, K), iterated_law_t_side(S, n - 1)))
    rhs = vcompose(whisker_right(zeta, functor_power(Sf, q)),
                   whisker_left(K, iterated_law_t_side(S, q)),
                   whisker_right(v, S.G))
    compare(rep, f"mixed-heptagon:{gen}", lhs, rhs)
    return rep


def validate_pair_transformation(sigma: NatTransData, p1: PairMapData, p2: PairMapData) -> Report:
    """``β∘Tσ = σS∘α`` and the equivariance square ``G_N σ ∘ ζ^K = ζ^L ∘ σ G_M``."""
    if p1.T != p2.T or p1.S != p2.S:
        raise BoundaryError("pair maps must share their pairs")
    if sigma.source != p1.K or sigma.target != p2.K:
        raise BoundaryError("sigma must go from K to L")
    rep = Report(f"pair transformation {sigma.name}".strip())
    rep.merge(validate_nat_trans(sigma), "sigma:")
    if not rep.ok:
        return rep
    T, S = p1.T, p1.S
    compare(rep, "transformation-square", vcompose(p2.alpha, whisker_left(T.T, sigma)),
            vcompose(whisker_right(sigma, S.T), p1.alpha))
    compare(rep, "equivariance-square", vcompose(whisker_left(T.G, sigma), p1.zeta),
            vcompose(p2.zeta, whisker_right(sigma, S.G)))
    return rep


def check_cube(sigma: NatTransData, p1: PairMapData, p2: PairMapData) -> Report:
    """Each face of the cube, then equality of the two outer paths ``T K G_M ⇒ G_N L S``."""
    validate_pair_transformation(sigma, p1, p2).require()
    K, L, zK, zL, a, b = p1.K, p2.K, p1.zeta, p2.zeta, p1.alpha, p2.alpha
    T, S = p1.T, p1.S
    Tf, Sf, GN, GM, lT, lS = T.T, S.T, T.G, S.G, T.l, S.l
    rep = Report("cube")
    # top face: T ζ then l^T K, moved along T σ
    compare(rep, "top-left", vcompose(whisker(Tf, whisker_left(GN, sigma)), whisker_left(Tf, zK)),
            vcompose(whisker_left(Tf, zL), whisker(Tf, sigma, GM)))
    compare(rep, "top-right", vcompose(whisker(GN, whisker_left(Tf, sigma)), whisker_right(lT, K)),
            vcompose(whisker_right(lT, L), whisker(Tf, whisker_left(GN, sigma))))
    # bottom face: K l^S then ζ S, moved along σ S
    compare(rep, "bottom-left", vcompose(whisker_right(sigma, compose_functors(GM, Sf)), whisker_left(K, lS)),
            vcompose(whisker_left(L, lS), whisker_right(sigma, compose_functors(Sf, GM))))
    compare(rep, "bottom-right", vcompose(whisker(GN, sigma, Sf), whisker_right(zK, Sf)),
            vcompose(whisker_right(zL, Sf), whisker_right(sigma, compose_functors(GM, Sf))))
    # side faces: the transformation square, whiskered by G on either side
    compare(rep, "left", vcompose(whisker_right(b, GM), whisker(Tf, sigma, GM)),
            vcompose(whisker_right(sigma, compose_functors(Sf, GM)), whisker_right(a, GM)))
    compare(rep, "right", vcompose(whisker_left(GN, b), whisker(GN, whisker_left(Tf, sigma))),
            vcompose(whisker(GN, sigma, Sf), whisker_left(GN, a)))
    # back and front: the hexagons of α and β
    compare(rep, "back", *hexagon_sides(p1))
    compare(rep, "front", *hexagon_sides(p2))
    path1 = vcompose(whisker(GN, sigma, Sf), whisker_left(GN, a), whisker_right(lT, K), whisker_left(Tf, zK))
    path2 = vcompose(whisker_right(zL, Sf), whisker_left(L, lS), whisker_right(b, GM), whisker(Tf, sigma, GM))
    compare(rep, "outer", path1, path2)
    return rep


def vcompose_pair_transformations(s2: NatTransData, s1: NatTransData) -> NatTransData:
    return vcompose(s2, s1)


def hcompose_pair_transformations(s2: NatTransData, s1: NatTransData, outer2: PairMapData,
                                  inner2: PairMapData) -> NatTransData:
    """``s2 * s1`` for ``s1 : K ⇒ K'`` (outer maps) and ``s2 : L ⇒ L'`` (inner maps)."""
    return vcompose(whisker_right(s2, s1.target), whisker_left(s2.source, s1))


# -- lifting pair data to EM categories -----------------------------------------

def lifted_zeta(p: PairMapData, emS, emT) -> NatTransData:
    """For monoid-PRO pairs: the 2-cell ``H^α G̃^M ⇒ G̃^N H^α`` with components ``ζ_M``."""
    from .distlaw import DistLawData, lift_from_law
    from .monad import em_lift_across

    mS, mT = emS.monad, emT.monad
    mm = MonadMapAcross(p.K, p.alpha, mT, mS)
    H = em_lift_across(mm, emS, emT)
    GtM = lift_from_law(DistLawData(emS.monad, p.S.G, p.S.l), emS)
    GtN = lift_from_law(DistLawData(emT.monad, p.T.G, p.T.l), emT)
    src, tgt = compose_functors(H, GtM), compose_functors(GtN, H)
    comps = []
    rep = Report("lifted zeta")
    for a, (x, _) in enumerate(emS.algebras):
        f = emT.arrow_index(src.object_map[a], tgt.object_map[a], p.zeta.components[x])
        if f is None:
            rep.fail("algebra-morphism", {"algebra": a})
        comps.append(f)
    rep.require()
    return NatTransData(src, tgt, tuple(comps), "zeta~")


# -- strong braidings ------------------------------------------------------------

def check_yang_baxter(l: NatTransData, G: FunctorData | ComonadData) -> Report:
    """``Gl ∘ lG ∘ Gl = lG ∘ Gl ∘ lG`` for ``l : G G ⇒ G G``."""
    G = _fun(G)
    rep = Report("yang-baxter")
    lhs = vcompose(whisker_left(G, l), whisker_right(l, G), whisker_left(G, l))
    rhs = vcompose(whisker_right(l, G), whisker_left(G, l), whisker_right(l, G))
    compare(rep, "yang-baxter", lhs, rhs)
    return rep


def is_strong_braiding(l: NatTransData, G: ComonadData) -> Report:
    from .distlaw import DistLawData, validate_dist_law

    rep = Report("strong braiding")
    rep.merge(validate_dist_law(DistLawData(G, G, l)))
    if rep.ok:
        rep.merge(check_yang_baxter(l, G))
    return rep


def find_strong_braidings(G: ComonadData, bound: int | None = None) -> list[NatTransData]:
    from .oracle import enumerate_nat_trans

    GG = compose_functors(G.G, G.G)
    return [l for l in enumerate_nat_trans(GG, GG, bound) if is_strong_braiding(l, G).ok]


@dataclass(frozen=True)
class _Law:
    T: FunctorData
    G: FunctorData
    l: NatTransData


def tower_comonad(l: NatTransData, G: ComonadData, n: int) -> ComonadData:
    """``G^n`` with the composite comonad structure built from ``l^(p)``, ``p < n``."""
    if n == 1:
        return G
    prev = tower_comonad(l, G, n - 1)
    lam = iterated_law(_Law(G.G, G.G, l), n - 1)
    A, B = G.G, prev.G
    AB = compose_functors(A, B)
    from .fincat import hcompose

    delta = vcompose(whisker(A, lam, B), hcompose(G.delta, prev.delta))
    eps = hcompose(G.epsilon, prev.epsilon)
    return ComonadData(AB, NatTransData(AB, compose_functors(AB, AB), delta.components),
                       NatTransData(AB, identity_functor(G.base), eps.components), f"G^{n}")


def braided_tower(l: NatTransData, G: ComonadData, n: int):
    """The law ``l^(n) : G G^n ⇒ G^n G`` between ``G`` and the tower comonad ``G^n``."""
    from .distlaw import DistLawData

    yb = is_strong_braiding(l, G)
    if not yb.ok:
        raise PreconditionError("not a strong braiding", yb)
    Gn = tower_comonad(l, G, n)
    ln = iterated_law(_Law(G.G, G.G, l), n)
    return DistLawData(G, Gn, NatTransData(compose_functors(G.G, Gn.G), compose_functors(Gn.G, G.G),
                                           ln.components), f"l^({n})")
