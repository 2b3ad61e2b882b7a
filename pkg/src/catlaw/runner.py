"""Elaborate a parsed document into library objects and run its checks."""
from __future__ import annotations

import difflib
import json
from dataclasses import dataclass, field
from typing import Any, Callable

from . import distlaw as dl
from . import monad as mo
from . import oracle
from . import pro
from .dsl import THIN, Quoted, SpecDocument, SpecError, Stmt
from .fincat import (
    FinCategory,
    FunctorData,
    NatTransData,
    chain_category,
    compare,
    compose_all,
    compose_functors,
    cyclic_group,
    functor_power,
    identity_functor,
    make_functor,
    monoid_category,
    poset_category,
    product_category,
    thin_functor,
    thin_transformation,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from .monad import ComonadData, MonadData
from .report import CatlawError, PreconditionError, Report

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["checks", "summary"],
    "properties": {
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "op", "status", "witnesses", "counts"],
                "properties": {
                    "name": {"type": "string"},
                    "op": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "error"]},
                    "witnesses": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["law", "witness"],
                            "properties": {"law": {"type": "string"}, "witness": {"type": "object"},
                                           "detail": {"type": "string"}},
                        },
                    },
                    "counts": {"type": "object", "additionalProperties": {"type": "integer"}},
                    "line": {"type": "integer"},
                    "col": {"type": "integer"},
                    "error": {"type": "string"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "passed", "failed", "errors", "exit_code"],
            "properties": {k: {"type": "integer"} for k in ("total", "passed", "failed", "errors", "exit_code")},
        },
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}


# -- environment ------------------------------------------------------------------

@dataclass
class Lift:
    functor: FunctorData
    em: mo.EMConstruction
    companion: FunctorData | ComonadData
    law: dl.DistLawData | None = None


@dataclass
class Env:
    doc: SpecDocument
    objects: dict[str, tuple[str, Any]] = field(default_factory=dict)
    _ems: dict[int, mo.EMConstruction] = field(default_factory=dict)

    def error(self, s: Stmt, message: str, key: str | None = None) -> SpecError:
        line, col = s.pos(key)
        return SpecError(message, line, col, self.doc.source)

    def lookup(self, s: Stmt, name: str, kinds: tuple[str, ...], key: str | None = None) -> Any:
        if name not in self.objects:
            close = difflib.get_close_matches(name, list(self.objects), n=3)
            hint = f"; did you mean {', '.join(close)}?" if close else ""
            raise self.error(s, f"unknown name {name!r}{hint}", key)
        kind, obj = self.objects[name]
        if kind not in kinds:
            raise self.error(s, f"{name!r} is a {kind}, expected {' or '.join(kinds)}", key)
        return obj

    def lookup_name(self, name: str, kinds: tuple[str, ...]) -> Any:
        """Lookup for command-line arguments, where there is no source position."""
        if name not in self.objects or self.objects[name][0] not in kinds:
            have = self.names_of(*kinds)
            raise CatlawError(f"no {' or '.join(kinds)} named {name!r}; declared: {', '.join(have) or 'none'}")
        return self.objects[name][1]

    def names_of(self, *kinds: str) -> list[str]:
        return [n for n, (k, _) in self.objects.items() if k in kinds]

    def kind_of(self, name: str) -> str | None:
        hit = self.objects.get(name)
        return hit[0] if hit else None

    def em(self, m: MonadData) -> mo.EMConstruction:
        key = id(m)
        if key not in self._ems:
            self._ems[key] = mo.build_em(m)
        return self._ems[key]

    def functor(self, s: Stmt, name: str, key: str | None = None) -> FunctorData:
        return dl.underlying(self.lookup(s, name, ("functor", "monad", "comonad"), key))


def _check_list(env: Env, s: Stmt, key: str, values, length: int, limit: int, what: str) -> None:
    if len(values) != length:
        raise env.error(s, f"{what} has {len(values)} entries, expected {length}", key)
    for v in values:
        if not 0 <= v < limit:
            raise env.error(s, f"{what} entry {v} is out of range 0..{limit - 1}", key)


def _nat(env: Env, s: Stmt, key: str, F: FunctorData, G: FunctorData, comps, name: str = "") -> NatTransData:
    if F.source != G.source or F.target != G.target:
        raise env.error(s, "source and target functors do not share categories", key)
    if comps == THIN:
        try:
            return thin_transformation(F, G, name)
        except CatlawError as e:
            raise env.error(s, f"no thin transformation: {e}", key) from None
    _check_list(env, s, key, comps, F.source.n_objects, F.target.n_morphisms, "component list")
    return NatTransData(F, G, tuple(comps), name)


def _fexpr(env: Env, s: Stmt, key: str, parts, category: FinCategory | None) -> FunctorData:
    fs: list[FunctorData | None] = []
    for n, k in parts:
        if n == "Id":
            fs.append(None)
            continue
        F = env.functor(s, n, key)
        fs.append(functor_power(F, k) if k != 1 else F)
    cats = [F.source for F in fs if F is not None]
    base = category or (cats[0] if cats else None)
    if base is None:
        raise env.error(s, "cannot infer the category of Id; add 'on CATEGORY'", key)
    out = [F if F is not None else identity_functor(base) for F in fs]
    try:
        return compose_all(*out) if len(out) > 1 else out[0]
    except CatlawError as e:
        raise env.error(s, str(e), key) from None


def _elab_category(env: Env, s: Stmt) -> FinCategory:
    g = s.get
    form = g("form")
    if form == "chain":
        if g("n") < 1:
            raise env.error(s, "a chain needs at least one object", "n")
        return chain_category(g("n"), s.name)
    if form == "cyclic":
        if g("n") < 1:
            raise env.error(s, "cyclic order must be positive", "n")
        return cyclic_group(g("n"), s.name)
    try:
        if form == "poset":
            return poset_category(g("leq"), s.name)
        if form == "monoid":
            return monoid_category(g("table"), g("unit"), s.name)
        if form == "explicit":
            n = g("objects")
            src, tgt, ident, table = g("src"), g("tgt"), g("identity"), g("table")
            if len(src) != len(tgt):
                raise env.error(s, "src and tgt lists differ in length", "tgt")
            return FinCategory.from_tables(n, list(zip(src, tgt)), ident, table, s.name)
        a, b = (env.lookup(s, x, ("category",), "factors") for x in g("factors"))
        return product_category(a, b, s.name)
    except SpecError:
        raise
    except CatlawError as e:
        raise env.error(s, str(e), "form") from None


def _elab_functor(env: Env, s: Stmt) -> FunctorData:
    g = s.get
    form = g("form")
    if form == "compose":
        fs = [env.functor(s, n, "factors") for n in g("factors")]
        for outer, inner in zip(fs, fs[1:]):
            if inner.target != outer.source:
                raise env.error(s, "factors do not compose", "factors")
        return compose_all(*fs).named(s.name)
    if form == "power":
        F = env.functor(s, g("of"), "of")
        if not F.is_endo:
            raise env.error(s, "only endofunctors have powers", "of")
        return functor_power(F, g("n")).named(s.name)
    if g("source") is None:
        raise env.error(s, "functor needs 'on CATEGORY' or ': SOURCE -> TARGET'")
    A = env.lookup(s, g("source"), ("category",), "source")
    B = env.lookup(s, g("target"), ("category",), "target")
    if form == "id":
        if A != B:
            raise env.error(s, "identity functor needs one category", "form")
        return identity_functor(A).named(s.name)
    obj = g("objects")
    _check_list(env, s, "objects", obj, A.n_objects, B.n_objects, "object map")
    if g("arrows") is None:
        if not B.is_thin:
            raise env.error(s, f"target {B.name or ''} is not thin; give 'arrows [...]'", "objects")
        try:
            return thin_functor(A, B, obj, s.name)
        except CatlawError as e:
            raise env.error(s, f"object map is not monotone: {e}", "objects") from None
    _check_list(env, s, "arrows", g("arrows"), A.n_morphisms, B.n_morphisms, "morphism map")
    return make_functor(A, B, obj, g("arrows"), s.name)


def _elab_nattrans(env: Env, s: Stmt) -> NatTransData:
    cat = env.lookup(s, s.get("category"), ("category",), "category") if s.get("category") else None
    F = _fexpr(env, s, "source", s.get("source"), cat)
    G = _fexpr(env, s, "target", s.get("target"), cat)
    return _nat(env, s, "components", F, G, s.get("components"), s.name)


def _elab_structure(env: Env, s: Stmt, is_monad: bool):
    g = s.get
    form = g("form")
    short = "closure" if is_monad else "interior"
    if form in (short, "identity"):
        if not g("category"):
            raise env.error(s, f"{form} needs 'on CATEGORY'", "form")
        c = env.lookup(s, g("category"), ("category",), "category")
        if form == "identity":
            return mo.identity_monad(c) if is_monad else mo.identity_comonad(c)
        obj = g("objects")
        _check_list(env, s, "objects", obj, c.n_objects, c.n_objects, f"{short} object map")
        if not c.is_thin:
            raise env.error(s, f"{short} needs a thin category", "category")
        try:
            return (mo.closure_monad if is_monad else mo.interior_comonad)(c, obj, s.name)
        except CatlawError as e:
            raise env.error(s, f"{short} {list(obj)} has no forced structure: {e}", "objects") from None
    F = env.functor(s, g("functor"), "functor")
    if not F.is_endo:
        raise env.error(s, "needs an endofunctor", "functor")
    Id, FF = identity_functor(F.source), compose_functors(F, F)
    if is_monad:
        mu = _nat(env, s, "mu", FF, F, g("mu"), "mu")
        eta = _nat(env, s, "eta", Id, F, g("eta"), "eta")
        return MonadData(F.named(s.name), mu, eta, s.name)
    delta = _nat(env, s, "delta", F, FF, g("delta"), "delta")
    eps = _nat(env, s, "eps", F, Id, g("eps"), "eps")
    return ComonadData(F.named(s.name), delta, eps, s.name)


def _companion(env: Env, s: Stmt, name: str, key: str):
    obj = env.lookup(s, name, ("functor", "comonad"), key)
    if isinstance(obj, FunctorData) and not obj.is_endo:
        raise env.error(s, "companion must be an endofunctor", key)
    return obj


def _elab_distlaw(env: Env, s: Stmt) -> dl.DistLawData:
    m = env.lookup(s, s.get("monad"), ("monad", "comonad"), "monad")
    G = _companion(env, s, s.get("companion"), "companion")
    T, Gf = dl.underlying(m), dl.underlying(G)
    if T.source != Gf.source:
        raise env.error(s, "monad and companion live on different categories", "companion")
    l = _nat(env, s, "components", compose_functors(T, Gf), compose_functors(Gf, T), s.get("components"), s.name)
    return dl.DistLawData(m, G, l, s.name)


def _elab_distmap(env: Env, s: Stmt) -> dl.DistrMorphism:
    d = env.lookup(s, s.get("source"), ("distlaw",), "source")
    d2 = env.lookup(s, s.get("target"), ("distlaw",), "target")
    alpha = _nat(env, s, "components", d.T, d2.T, s.get("components"), s.name)
    return dl.DistrMorphism(d, d2, alpha, s.name)


def _elab_monadmap(env: Env, s: Stmt) -> mo.MonadMapAcross:
    T = env.lookup(s, s.get("source"), ("monad",), "source")
    S = env.lookup(s, s.get("target"), ("monad",), "target")
    K = env.functor(s, s.get("functor"), "functor")
    if K.source != S.base or K.target != T.base:
        raise env.error(s, "K must go from the base of the target monad to the base of the source", "functor")
    alpha = _nat(env, s, "components", compose_functors(T.T, K), compose_functors(K, S.T),
                 s.get("components"), s.name)
    return mo.MonadMapAcross(K, alpha, T, S, name=s.name)


def _elab_pro(env: Env, s: Stmt) -> pro.ProPresentation:
    form = s.get("form")
    if form in ("monoid", "counital"):
        return pro.builtin_pros()[form]
    gens = s.get("generators")
    seen = set()
    for g, n, m in gens:
        if g in seen or g == "id":
            raise env.error(s, f"generator name {g!r} is reserved or repeated", "generators")
        if n < 0 or m < 0:
            raise env.error(s, "arities must be non-negative", "generators")
        seen.add(g)
    try:
        return pro.make_presentation(gens, [(a.text, b.text) for a, b in s.get("relations")], s.name)
    except pro.WordError as e:
        raise env.error(s, f"bad relation: {e}", "relations") from None


def _elab_representation(env: Env, s: Stmt) -> pro.ProRepresentation:
    P = env.lookup(s, s.get("pro"), ("pro",), "pro")
    form = s.get("form")
    if form == "monad":
        r = pro.representation_from_monad(env.lookup(s, s.get("of"), ("monad",), "of"))
    elif form == "comonad":
        r = pro.representation_from_comonad(env.lookup(s, s.get("of"), ("comonad",), "of"))
    else:
        T = env.functor(s, s.get("of"), "of")
        if not T.is_endo:
            raise env.error(s, "representations act by endofunctors", "of")
        given = dict(s.get("images"))
        images = []
        for g, n, m in P.generators:
            if g not in given:
                raise env.error(s, f"no image for generator {g!r}", "form")
            key = "image:" + g
            images.append((g, _nat(env, s, key, functor_power(T, n), functor_power(T, m), given[g], g)))
        extra = set(given) - set(P.generator_names)
        if extra:
            raise env.error(s, f"unknown generator {sorted(extra)[0]!r}", "image:" + sorted(extra)[0])
        return pro.ProRepresentation(P, T, tuple(images), s.name)
    if r.presentation != P:
        raise env.error(s, f"{s.get('of')!r} represents the {r.presentation.name} PRO, not {P.name or s.get('pro')}",
                        "pro")
    return pro.ProRepresentation(r.presentation, r.T, r.images, s.name)


def _elab_pair(env: Env, s: Stmt) -> pro.EquivariantRep:
    if s.get("form") == "law":
        d = env.lookup(s, s.get("law"), ("distlaw",), "law")
        if not isinstance(d.monad, MonadData):
            raise env.error(s, "pairs built from laws need a monad", "law")
        return pro.EquivariantRep(pro.representation_from_monad(d.monad), d.G, d.l, s.name)
    r = env.lookup(s, s.get("rep"), ("representation",), "rep")
    G = env.functor(s, s.get("action"), "action")
    if G.source != r.base or not G.is_endo:
        raise env.error(s, "action generator must be an endofunctor of the representation's base", "action")
    l = _nat(env, s, "components", compose_functors(r.T, G), compose_functors(G, r.T), s.get("components"), s.name)
    return pro.EquivariantRep(r, G, l, s.name)


def _elab_pairmap(env: Env, s: Stmt) -> pro.PairMapData:
    T = env.lookup(s, s.get("source"), ("pair",), "source")
    S = env.lookup(s, s.get("target"), ("pair",), "target")
    K = env.functor(s, s.get("functor"), "functor")
    if K.source != S.base or K.target != T.base:
        raise env.error(s, "K must go from the base of the target pair to the base of the source pair", "functor")
    zeta = _nat(env, s, "zeta", compose_functors(K, S.G), compose_functors(T.G, K), s.get("zeta"), "zeta")
    alpha = _nat(env, s, "alpha", compose_functors(T.T, K), compose_functors(K, S.T), s.get("alpha"), "alpha")
    return pro.PairMapData(K, zeta, alpha, T, S, s.name)


def _elab_transformation(env: Env, s: Stmt):
    a = env.lookup(s, s.get("source"), ("pairmap", "monadmap"), "source")
    b = env.lookup(s, s.get("target"), ("pairmap", "monadmap"), "target")
    if type(a) is not type(b):
        raise env.error(s, "both ends must be pair maps or both monad maps", "target")
    sigma = _nat(env, s, "components", a.K, b.K, s.get("components"), s.name)
    return (sigma, a, b)


def _elab_lift(env: Env, s: Stmt) -> Lift:
    if s.get("form") == "of":
        d = env.lookup(s, s.get("law"), ("distlaw",), "law")
        if not isinstance(d.monad, MonadData):
            raise env.error(s, "lifts need a monad", "law")
        em = env.em(d.monad)
        try:
            return Lift(dl.lift_from_law(d, em), em, d.companion, d)
        except CatlawError as e:
            raise env.error(s, f"cannot lift {s.get('law')}: {e}", "law") from None
    m = env.lookup(s, s.get("monad"), ("monad",), "monad")
    G = _companion(env, s, s.get("companion"), "companion")
    try:
        em = env.em(m)
    except CatlawError as e:
        raise env.error(s, f"no EM category: {e}", "monad") from None
    E = em.em
    obj = s.get("objects")
    _check_list(env, s, "objects", obj, E.n_objects, E.n_objects, "algebra map")
    arrows = s.get("arrows")
    if arrows is None:
        if not E.is_thin:
            raise env.error(s, "EM category is not thin; give 'arrows [...]'", "objects")
        try:
            F = thin_functor(E, E, obj, s.name)
        except CatlawError as e:
            raise env.error(s, str(e), "objects") from None
    else:
        _check_list(env, s, "arrows", arrows, E.n_morphisms, E.n_morphisms, "arrow map")
        F = make_functor(E, E, obj, arrows, s.name)
    return Lift(F, em, G)


_ELAB: dict[str, Callable[[Env, Stmt], Any]] = {
    "category": _elab_category, "functor": _elab_functor, "nattrans": _elab_nattrans,
    "monad": lambda e, s: _elab_structure(e, s, True), "comonad": lambda e, s: _elab_structure(e, s, False),
    "distlaw": _elab_distlaw, "distmap": _elab_distmap, "monadmap": _elab_monadmap, "pro": _elab_pro,
    "representation": _elab_representation, "pair": _elab_pair, "pairmap": _elab_pairmap,
    "transformation": _elab_transformation, "lift": _elab_lift,
}


def elaborate(doc: SpecDocument) -> Env:
    env = Env(doc)
    for s in doc.declarations:
        try:
            obj = _ELAB[s.kind](env, s)
        except SpecError:
            raise
        except CatlawError as e:
            raise env.error(s, str(e)) from None
        env.objects[s.name] = (s.kind, obj)
    for s in doc.checks:
        _bind_check(env, s)
    return env


# -- checks ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OpSpec:
    name: str
    args: tuple[str, ...]
    run: Callable[..., Report]
    primary: str | None = None
    doc: str = ""


OPS: dict[str, OpSpec] = {}

_ARG_KINDS = {
    "category": ("category",), "functor": ("functor", "monad", "comonad"), "nattrans": ("nattrans",),
    "monad": ("monad",), "comonad": ("comonad",), "companion": ("functor", "comonad"),
    "law": ("distlaw",), "distmap": ("distmap",), "monadmap": ("monadmap",), "pro": ("pro",),
    "rep": ("representation",), "pair": ("pair",), "pairmap": ("pairmap",),
    "transformation": ("transformation",), "lift": ("lift",),
}


def op(name: str, *args: str, primary: str | None = None):
    def deco(fn):
        OPS[name] = OpSpec(name, args, fn, primary, (fn.__doc__ or "").strip().splitlines()[0] if fn.__doc__ else "")
        return fn
    return deco


def _bind_check(env: Env, s: Stmt) -> list[Any]:
    spec = OPS.get(s.name)
    if spec is None:
        close = difflib.get_close_matches(s.name, list(OPS), n=3)
        hint = f"; did you mean {', '.join(close)}?" if close else ""
        raise env.error(s, f"unknown check {s.name!r}{hint}", "op")
    given = list(s.get("args"))
    required = [a for a in spec.args if not a.endswith("?")]
    if not len(required) <= len(given) <= len(spec.args):
        raise env.error(s, f"{s.name} takes {_signature(spec)}", "op")
    if s.get("expect") is not None and spec.primary is None:
        raise env.error(s, f"{s.name} has no count to compare with 'expect'", "expect")
    out = []
    for i, (kind, value) in enumerate(zip(spec.args, given)):
        kind = kind.rstrip("?")
        key = f"arg{i}"
        if kind == "int":
            if not isinstance(value, int):
                raise env.error(s, f"argument {i + 1} of {s.name} must be an integer", key)
            out.append(value)
        elif kind == "word":
            if not isinstance(value, Quoted):
                raise env.error(s, f"argument {i + 1} of {s.name} must be a quoted word", key)
            try:
                out.append(pro.parse_word(value.text))
            except pro.WordError as e:
                line, col = s.pos(key)
                off = (e.position or 0) + 1
                raise SpecError(f"in word: {e}", line, col + off, env.doc.source) from None
        elif kind == "gen":
            if not isinstance(value, str):
                raise env.error(s, f"argument {i + 1} of {s.name} must be a generator name", key)
            out.append(value)
        else:
            if not isinstance(value, str):
                raise env.error(s, f"argument {i + 1} of {s.name} must be a name", key)
            obj = env.lookup(s, value, _ARG_KINDS[kind], key)
            out.append(dl.underlying(obj) if kind == "functor" else obj)
    return out


def _signature(spec: OpSpec) -> str:
    return " ".join(f"[{a[:-1]}]" if a.endswith("?") else a for a in spec.args) or "no arguments"


@op("validate_category", "category", primary="morphisms")
def _c_category(env, c):
    """Identity and composition laws of a category."""
    rep = validate_category(c)
    rep.counts.update(objects=c.n_objects, morphisms=c.n_morphisms)
    return rep


@op("validate_functor", "functor")
def _c_functor(env, F):
    """Functor laws."""
    return validate_functor(F)


@op("validate_nat_trans", "nattrans")
def _c_nat(env, t):
    """Naturality."""
    return validate_nat_trans(t)


@op("validate_monad", "monad")
def _c_monad(env, m):
    """Associativity and unit laws of a monad."""
    return mo.validate_monad(m)


@op("validate_comonad", "comonad")
def _c_comonad(env, c):
    """Coassociativity and counit laws of a comonad."""
    return mo.validate_comonad(c)


@op("validate_em", "monad", primary="algebras")
def _c_em(env, m):
    """Build the Eilenberg-Moore category and check it together with its adjunction."""
    em = env.em(m)
    rep = mo.validate_em(em)
    rep.counts.update(algebras=len(em.algebras), morphisms=len(em.arrows))
    return rep


def _count(n: int) -> Report:
    rep = Report("count")
    rep.counts["count"] = n
    return rep


@op("count_algebras", "monad", primary="count")
def _c_count_alg(env, m):
    """Algebras by brute force, cross-checked against the EM construction."""
    brute = mo.enumerate_algebras(m)
    rep = _count(len(brute))
    em = env.em(m)
    if sorted(brute) != sorted(em.algebras):
        rep.fail("em-vs-brute-force", {"em": len(em.algebras), "brute_force": len(brute)})
    return rep


@op("count_functors", "category", primary="count")
def _c_count_fun(env, c):
    """Endofunctors of a category."""
    return _count(sum(1 for _ in oracle.enumerate_functors(c)))


@op("count_monads", "category", primary="count")
def _c_count_monads(env, c):
    """Monads on a category."""
    return _count(sum(1 for _ in oracle.enumerate_monads(c)))


@op("count_comonads", "category", primary="count")
def _c_count_comonads(env, c):
    """Comonads on a category."""
    return _count(sum(1 for _ in oracle.enumerate_comonads(c)))


@op("count_laws", "monad", "companion", primary="count")
def _c_count_laws(env, m, G):
    """Distributive laws between a monad and a companion."""
    return _count(sum(1 for _ in oracle.enumerate_dist_laws(m, G)))


@op("count_lifts", "monad", "companion", primary="count")
def _c_count_lifts(env, m, G):
    """Lifts of a companion to the EM category."""
    return _count(sum(1 for _ in dl.enumerate_lifts(env.em(m), G)))


@op("count_braidings", "comonad", primary="count")
def _c_count_braidings(env, c):
    """Strong braidings on a comonad."""
    return _count(len(pro.find_strong_braidings(c)))


@op("validate_dist_law", "law")
def _c_law(env, d):
    """Pentagon and unit, plus the comonad axioms when present."""
    return dl.validate_dist_law(d)


@op("lift_from_law", "law", primary="algebras")
def _c_lift(env, d):
    """Lift the companion to the EM category and check it."""
    em = env.em(d.monad)
    Gt = dl.lift_from_law(d, em)
    rep = Report("lift")
    rep.merge(validate_functor(Gt), "lift:")
    if compose_functors(em.U, Gt) != compose_functors(d.G, em.U):
        rep.fail("U-commutation", {})
    if isinstance(d.companion, ComonadData):
        rep.merge(mo.validate_comonad(dl.lift_comonad(d, em)), "lifted comonad:")
    rep.counts["algebras"] = len(em.algebras)
    return rep


@op("law_from_lift", "lift")
def _c_law_from_lift(env, L: Lift):
    """Recover the law from a lift and check both round trips."""
    d = dl.law_from_lift(L.functor, L.em, L.companion)
    rep = Report("law from lift")
    rep.merge(dl.validate_dist_law(d))
    if not rep.ok:
        return rep
    if dl.lift_from_law(d, L.em) != L.functor:
        rep.fail("lift-roundtrip", {})
    if L.law is not None:
        compare(rep, "law-roundtrip", d.l, L.law.l)
    return rep


@op("beck_roundtrip", "monad", "companion", primary="laws")
def _c_beck(env, m, G):
    """Count laws and lifts; both round trips must be identities."""
    return dl.check_beck_roundtrip(m, G)


def _ems(env, m: dl.DistrMorphism):
    return env.em(m.source.monad), env.em(m.target.monad)


@op("validate_distr_morphism", "distmap")
def _c_distmap(env, m):
    """Monad-map laws and the square with the two laws."""
    return dl.validate_distr_morphism(m)


@op("halpha_equivariance", "distmap")
def _c_halpha(env, m):
    """The functor induced on EM categories intertwines the lifts."""
    return dl.check_halpha_equivariance(m, *_ems(env, m))


@op("mixed_pentagon_H", "distmap")
def _c_d1m(env, m):
    """Mixed pentagon for the induced functor between EM categories."""
    em, em2 = _ems(env, m)
    dl.validate_distr_morphism(m).require()
    H = mo.em_functor_from_map(m.alpha, em, em2)
    return dl.check_mixed_pentagon_H(m.source, m.target, H, em, em2)


@op("mixed_pentagon_alpha", "distmap")
def _c_d1ma(env, m):
    """Mixed pentagon for a morphism of laws."""
    return dl.check_mixed_pentagon_alpha(m)


@op("vertical_agreement", "distmap")
def _c_vertical(env, m):
    """The counit leg equals the multiplication leg."""
    dl.validate_distr_morphism(m).require()
    return dl.check_vertical_agreement(m.alpha, *_ems(env, m))


@op("eps_identity", "distmap")
def _c_eps(env, m):
    """Counit identity for the induced functor."""
    em, em2 = _ems(env, m)
    dl.validate_distr_morphism(m).require()
    return mo.check_epsP_identity(mo.em_functor_from_map(m.alpha, em, em2), em, em2)


@op("correspondence", "monad", "monad", primary="maps")
def _c_corr(env, T, T2):
    """Monad maps and functors over the forgetful functors determine each other."""
    em, em2 = env.em(T), env.em(T2)
    rep = Report("correspondence")
    maps = dl.same_base_monad_maps(T, T2)
    for a in maps:
        if mo.map_from_em_functor(mo.em_functor_from_map(a, em, em2), em, em2) != a:
            rep.fail("alpha-roundtrip", {"alpha": list(a.components)})
    hs = list(mo.iter_em_functors_over(em, em2))
    for H in hs:
        if mo.em_functor_from_map(mo.map_from_em_functor(H, em, em2), em, em2) != H:
            rep.fail("H-roundtrip", {"H": list(H.object_map)})
    rep.counts.update(maps=len(maps), functors=len(hs))
    if len(maps) != len(hs):
        rep.fail("bijection", {"maps": len(maps), "functors": len(hs)})
    return rep


@op("contravariant_functoriality", "category", "companion?", primary="composable_pairs")
def _c_contra(env, c, G=None):
    """Identities and composites of induced functors go to identities and reversed composites."""
    return dl.check_contravariant_functoriality(c, G)


@op("equivariance_transfer", "law", "law", primary="distr_morphisms")
def _c_transfer(env, d, d2):
    """Morphisms of laws correspond to intertwining functors."""
    return dl.check_equivariance_transfer(d, d2)


@op("validate_monad_map", "monadmap")
def _c_monadmap(env, mm):
    """Multiplicativity and unit of a map of monads."""
    return mo.validate_monad_map_across(mm)


@op("validate_representation", "rep")
def _c_rep(env, r):
    """Every relation of the PRO holds in the representation."""
    return pro.validate_representation(r)


@op("word_arity", "pro", "word", "int?", "int?")
def _c_arity(env, P, w, n=None, m=None):
    """Arity of a word, optionally compared with an expected pair."""
    a, b = pro.word_arity(w, P)
    rep = Report("arity")
    rep.counts.update(source=a, target=b)
    if (n is not None and n != a) or (m is not None and m != b):
        rep.fail("arity", {"source": a, "target": b}, f"expected {n} -> {m}")
    return rep


@op("eval_word", "rep", "word", "word")
def _c_eval(env, r, w1, w2):
    """Two words evaluate to the same transformation."""
    rep = Report("eval")
    if pro.word_arity(w1, r.presentation) != pro.word_arity(w2, r.presentation):
        rep.fail("arity", {}, "the words have different arities")
        return rep
    compare(rep, f"{pro.format_word(w1)} = {pro.format_word(w2)}", pro.eval_word(w1, r), pro.eval_word(w2, r))
    return rep


@op("validate_equivariant_rep", "pair")
def _c_equivariant(env, p):
    """One multigon per generator of the pair's PRO."""
    return pro.validate_equivariant_rep(p)


@op("multigon", "law", "rep", "gen", primary="edges")
def _c_multigon(env, d, r, gen):
    """Generate and check the multigon of one generator."""
    side = "G" if r.T == d.G else "T"
    return pro.check_multigon(pro.generate_multigon(gen, d, r, side))


@op("decomposition", "law", "int?", primary="checked")
def _c_decomp(env, d, bound=3):
    """Iterated laws split along sums and agree with the one-step recursion."""
    rep = pro.check_decomposition(d, bound)
    rep.counts["checked"] = bound * bound + 2 * bound
    return rep


@op("validate_pair_map", "pairmap")
def _c_pairmap(env, p):
    """Hexagon and one multigon per generator."""
    return pro.validate_pair_map(p)


@op("power_lemma", "pairmap", "pairmap", "int")
def _c_power(env, outer, inner, n):
    """Powers of a composite map are composites of powers."""
    rep = Report("power lemma")
    for k in range(n + 1):
        rep.merge(pro.check_power_lemma(outer, inner, k))
    return rep


@op("compose_pair_maps", "pairmap", "pairmap")
def _c_compose(env, outer, inner):
    """The composite is a pair map, cell by cell."""
    pro.validate_pair_map(outer).require()
    pro.validate_pair_map(inner).require()
    rep = pro.check_composition_pasting(outer, inner)
    rep.merge(pro.validate_pair_map(pro.compose_pair_maps(outer, inner)), "composite:")
    return rep


@op("mixed_heptagon", "pairmap", "gen")
def _c_heptagon(env, p, gen):
    """Mixed heptagon for one generator."""
    pro.validate_pair_map(p).require()
    return pro.check_mixed_heptagon(p, gen)


@op("validate_pair_transformation", "transformation")
def _c_pairtrans(env, t):
    """Transformation square, plus the equivariance square for pair maps."""
    sigma, a, b = t
    if isinstance(a, mo.MonadMapAcross):
        return mo.validate_map_transformation(sigma, a, b)
    return pro.validate_pair_transformation(sigma, a, b)


@op("cube", "transformation")
def _c_cube(env, t):
    """Every face of the cube, then its outer equality."""
    sigma, a, b = t
    if not isinstance(a, pro.PairMapData):
        raise PreconditionError("cube needs a transformation of pair maps")
    pro.validate_pair_map(a).require()
    pro.validate_pair_map(b).require()
    return pro.check_cube(sigma, a, b)


def _braiding(d: dl.DistLawData) -> ComonadData:
    if not (isinstance(d.monad, ComonadData) and d.monad == d.companion):
        raise PreconditionError("a braiding is a law between a comonad and itself")
    return d.monad


@op("yang_baxter", "law")
def _c_yb(env, d):
    """Braid relation for a law of a comonad over itself."""
    return pro.check_yang_baxter(d.l, _braiding(d))


@op("braided_tower", "law", "int", primary="levels")
def _c_tower(env, d, n):
    """Every level of the tower is a comonad carrying a law."""
    G = _braiding(d)
    rep = Report("braided tower")
    for k in range(1, n + 1):
        t = pro.braided_tower(d.l, G, k)
        rep.merge(mo.validate_comonad(t.companion), f"G^{k}:")
        rep.merge(dl.validate_dist_law(t), f"l^({k}):")
    rep.counts["levels"] = n
    return rep


# -- running ------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    op: str
    status: str
    witnesses: list[dict[str, Any]]
    counts: dict[str, int]
    line: int
    col: int = 1
    error: str = ""

    def as_dict(self) -> dict[str, Any]:
        d = {"name": self.name, "op": self.op, "status": self.status, "witnesses": self.witnesses,
             "counts": self.counts, "line": self.line, "col": self.col}
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class RunResult:
    checks: list[CheckResult] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.diagnostics or any(c.status == "error" for c in self.checks):
            return 2
        if any(c.status == "fail" for c in self.checks):
            return 1
        return 0

    def summary(self) -> dict[str, int]:
        st = [c.status for c in self.checks]
        return {"total": len(st), "passed": st.count("pass"), "failed": st.count("fail"),
                "errors": st.count("error"), "exit_code": self.exit_code}


def _check_name(s: Stmt) -> str:
    parts = [s.name] + [f'"{a.text}"' if isinstance(a, Quoted) else str(a) for a in s.get("args")]
    return " ".join(parts)


def run_check(env: Env, s: Stmt) -> CheckResult:
    spec = OPS[s.name]
    name = _check_name(s)
    try:
        args = _bind_check(env, s)
        rep = spec.run(env, *args)
    except PreconditionError as e:
        wit = [f.as_dict() for f in e.report.failures] if e.report is not None else []
        return CheckResult(name, s.name, "error", wit, {}, s.line, s.col, f"precondition failed: {e}")
    except pro.WordError as e:
        keys = [f"arg{i}" for i, a in enumerate(s.get("args")) if isinstance(a, Quoted)]
        line, col = s.pos(keys[0] if keys else None)
        return CheckResult(name, s.name, "error", [], {}, line, col, f"ill-typed word: {e}")
    except CatlawError as e:
        return CheckResult(name, s.name, "error", [], {}, s.line, s.col, str(e))
    expect = s.get("expect")
    if expect is not None:
        got = rep.counts.get(spec.primary)
        if got != expect:
            rep.fail("expected-count", {spec.primary: got}, f"expected {expect}")
    return CheckResult(name, s.name, "pass" if rep.ok else "fail",
                       [f.as_dict() for f in rep.failures], dict(rep.counts), s.line, s.col)


def run_checks(doc: SpecDocument, bound: int | None = None) -> RunResult:
    """Elaborate ``doc`` and run its checks in document order."""
    result = RunResult()
    if bound is None:
        bound = doc.options.get("bound")
    with oracle.bound_override(bound):
        try:
            env = elaborate(doc)
        except SpecError as e:
            result.diagnostics.append(str(e))
            return result
        for s in doc.checks:
            result.checks.append(run_check(env, s))
    return result


def run_text(text: str, source: str = "", bound: int | None = None) -> RunResult:
    from .dsl import parse_spec

    try:
        doc = parse_spec(text, source)
    except SpecError as e:
        return RunResult(diagnostics=[str(e)])
    return run_checks(doc, bound)


def emit_report(res: RunResult, format: str = "text") -> bytes:
    if format == "json":
        payload = {"checks": [c.as_dict() for c in res.checks], "summary": res.summary()}
        if res.diagnostics:
            payload["diagnostics"] = list(res.diagnostics)
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    lines = [f"error: {d}" for d in res.diagnostics]
    for c in res.checks:
        counts = " ".join(f"{k}={v}" for k, v in sorted(c.counts.items()))
        where = f"  ({c.line}:{c.col})" if c.status != "pass" else ""
        lines.append(f"{c.status.upper():5} {c.name}" + (f"  [{counts}]" if counts else "") + where)
        if c.error:
            lines.append(f"      {c.error}")
        for w in c.witnesses:
            where = ", ".join(f"{k}={v}" for k, v in w["witness"].items())
            detail = f": {w['detail']}" if w.get("detail") else ""
            lines.append(f"      {w['law']} at {where or '-'}{detail}")
    s = res.summary()
    lines.append(f"{s['total']} checks: {s['passed']} passed, {s['failed']} failed, {s['errors']} errors")
    return ("\n".join(lines) + "\n").encode()
