"""Finite categories, functors and natural transformations as dense tables.

Objects are ``0..n-1``; morphisms are ``0..k-1`` with source/target tables
and a flat composition table ``table[g][f] == g∘f`` holding ``-1`` for
non-composable pairs. Every value is immutable, and equality is structural
table equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .report import BoundaryError, ComposabilityError, Report, StructureError

NONE = -1


@dataclass(frozen=True)
class FinCategory:
    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_tables(cls, n_objects: int, arrows: Sequence[Sequence[int]],
                    identity: Sequence[int], table: Sequence[Sequence[int]],
                    name: str = "") -> "FinCategory":
        return cls(int(n_objects),
                   tuple(int(a[0]) for a in arrows),
                   tuple(int(a[1]) for a in arrows),
                   tuple(int(i) for i in identity),
                   tuple(tuple(int(x) for x in row) for row in table),
                   name)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> list[tuple[int, int, int]]:
        return [(f, self.src[f], self.tgt[f]) for f in range(self.n_morphisms)]

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for f in range(self.n_morphisms):
            homs.setdefault((self.src[f], self.tgt[f]), []).append(f)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs.get((a, b), ())

    @cached_property
    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    def compose(self, g: int, f: int) -> int:
        return compose(self, g, f)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FinCategory{label} objects={self.n_objects} morphisms={self.n_morphisms}>"


def _check_index(value: int, bound: int, what: str) -> None:
    if not isinstance(value, int) or not 0 <= value < bound:
        raise StructureError(f"{what}: index {value!r} outside 0..{bound - 1}")


def _check_structure(c: FinCategory) -> None:
    k = c.n_morphisms
    if c.n_objects < 0:
        raise StructureError("negative object count")
    if len(c.tgt) != k:
        raise StructureError(f"source table has {k} entries, target table {len(c.tgt)}")
    for f in range(k):
        _check_index(c.src[f], c.n_objects, f"source of morphism {f}")
        _check_index(c.tgt[f], c.n_objects, f"target of morphism {f}")
    if len(c.identity) != c.n_objects:
        raise StructureError(f"identity table has {len(c.identity)} entries for {c.n_objects} objects")
    for x, i in enumerate(c.identity):
        _check_index(i, k, f"identity of object {x}")
    if len(c.table) != k or any(len(row) != k for row in c.table):
        raise StructureError(f"composition table must be {k}x{k}")
    for g in range(k):
        for f in range(k):
            v = c.table[g][f]
            if v != NONE:
                _check_index(v, k, f"composite ({g}, {f})")


def validate_category(c: FinCategory) -> Report:
    """Check the category axioms by scanning the tables.

    Out-of-range indices raise :class:`StructureError`; axiom violations are
    reported with the witnessing morphisms.
    """
    _check_structure(c)
    rep = Report(f"category {c.name}".strip())
    k = c.n_morphisms
    for x in c.objects:
        i = c.identity[x]
        if c.src[i] != x or c.tgt[i] != x:
            rep.fail("identity-typing", {"object": x, "identity": i})
    for g in range(k):
        for f in range(k):
            v = c.table[g][f]
            composable = c.tgt[f] == c.src[g]
            if composable != (v != NONE):
                rep.fail("composition-domain", {"g": g, "f": f},
                         "defined on a non-composable pair" if v != NONE else "missing composite")
            elif v != NONE and (c.src[v] != c.src[f] or c.tgt[v] != c.tgt[g]):
                rep.fail("composition-typing", {"g": g, "f": f, "composite": v})
    for f in range(k):
        left = c.table[c.identity[c.tgt[f]]][f]
        if left != f:
            rep.fail("left-identity", {"morphism": f, "identity": c.identity[c.tgt[f]]},
                     f"id∘f = {left}")
        right = c.table[f][c.identity[c.src[f]]]
        if right != f:
            rep.fail("right-identity", {"morphism": f, "identity": c.identity[c.src[f]]},
                     f"f∘id = {right}")
    for f in range(k):
        for g in range(k):
            gf = c.table[g][f]
            if gf == NONE:
                continue
            for h in range(k):
                hg = c.table[h][g]
                if hg == NONE:
                    continue
                a, b = c.table[h][gf], c.table[hg][f]
                if a != b:
                    rep.fail("associativity", {"h": h, "g": g, "f": f}, f"{a} != {b}")
    rep.counts["morphisms"] = k
    return rep


def compose(c: FinCategory, g: int, f: int) -> int:
    """Return ``g∘f``."""
    k = c.n_morphisms
    _check_index(g, k, "morphism g")
    _check_index(f, k, "morphism f")
    if c.tgt[f] != c.src[g]:
        raise ComposabilityError(
            f"cannot compose {g}∘{f}: target {c.tgt[f]} of {f} is not source {c.src[g]} of {g}")
    v = c.table[g][f]
    if v == NONE:
        raise ComposabilityError(f"composition table has no entry for {g}∘{f}")
    return v


def compose_path(c: FinCategory, morphisms: Iterable[int]) -> int:
    """Compose ``[h, g, f]`` as ``h∘g∘f``."""
    ms = list(morphisms)
    out = ms[-1]
    for g in reversed(ms[:-1]):
        out = compose(c, g, out)
    return out


# -- constructors ------------------------------------------------------------

def poset_category(leq: Sequence[Sequence[bool | int]], name: str = "") -> FinCategory:
    """Thin category of a preorder given by its relation matrix.

    Morphisms are numbered by ``(source, target)`` in lexicographic order.
    """
    n = len(leq)
    if any(len(row) != n for row in leq):
        raise StructureError("relation matrix must be square")
    rel = [[bool(v) for v in row] for row in leq]
    for a in range(n):
        if not rel[a][a]:
            raise StructureError(f"relation is not reflexive at {a}")
        for b in range(n):
            for c in range(n):
                if rel[a][b] and rel[b][c] and not rel[a][c]:
                    raise StructureError(f"relation is not transitive at {a}, {b}, {c}")
    arrows = [(a, b) for a in range(n) for b in range(n) if rel[a][b]]
    index = {ab: i for i, ab in enumerate(arrows)}
    identity = [index[(a, a)] for a in range(n)]
    k = len(arrows)
    table = [[NONE] * k for _ in range(k)]
    for g, (b2, c) in enumerate(arrows):
        for f, (a, b) in enumerate(arrows):
            if b == b2:
                table[g][f] = index[(a, c)]
    return FinCategory.from_tables(n, arrows, identity, table, name)


def chain_category(n: int, name: str = "") -> FinCategory:
    return poset_category([[a <= b for b in range(n)] for a in range(n)], name or f"chain{n}")


def monoid_category(mult: Sequence[Sequence[int]], unit: int = 0, name: str = "") -> FinCategory:
    """One-object category of a finite monoid; ``mult[g][f]`` is the product ``g·f``."""
    k = len(mult)
    return FinCategory.from_tables(1, [(0, 0)] * k, [unit], mult, name)


def cyclic_group(n: int, name: str = "") -> FinCategory:
    return monoid_category([[(a + b) % n for b in range(n)] for a in range(n)], 0, name or f"Z{n}")


def product_category(a: FinCategory, b: FinCategory, name: str = "") -> FinCategory:
    """Cartesian product; morphism ``(f, g)`` gets id ``f * b.n_morphisms + g``."""
    kb = b.n_morphisms
    arrows, identity = [], []
    for f in range(a.n_morphisms):
        for g in range(kb):
            arrows.append((a.src[f] * b.n_objects + b.src[g], a.tgt[f] * b.n_objects + b.tgt[g]))
    for x in a.objects:
        for y in b.objects:
            identity.append(a.identity[x] * kb + b.identity[y])
    k = len(arrows)
    table = [[NONE] * k for _ in range(k)]
    for g1, g2, f1, f2 in product(range(a.n_morphisms), range(kb), range(a.n_morphisms), range(kb)):
        u, v = a.table[g1][f1], b.table[g2][f2]
        if u != NONE and v != NONE:
            table[g1 * kb + g2][f1 * kb + f2] = u * kb + v
    return FinCategory.from_tables(a.n_objects * b.n_objects, arrows, identity, table, name)


def unique_morphism(c: FinCategory, a: int, b: int) -> int:
    hs = c.hom(a, b)
    if len(hs) != 1:
        raise BoundaryError(f"expected exactly one morphism {a}->{b} in {c.name or 'category'}, found {len(hs)}")
    return hs[0]


# -- functors ----------------------------------------------------------------

@dataclass(frozen=True)
class FunctorData:
    source: FinCategory
    target: FinCategory
    object_map: tuple[int, ...]
    morphism_map: tuple[int, ...]
    name: str = field(default="", compare=False)

    def ob(self, x: int) -> int:
        return self.object_map[x]

    def mor(self, f: int) -> int:
        return self.morphism_map[f]

    @property
    def is_endo(self) -> bool:
        return self.source == self.target

    def named(self, name: str) -> "FunctorData":
        return FunctorData(self.source, self.target, self.object_map, self.morphism_map, name)

    def __repr__(self):
        label = self.name or "F"
        return f"<Functor {label} objects={list(self.object_map)} morphisms={list(self.morphism_map)}>"


def make_functor(source: FinCategory, target: FinCategory, object_map: Sequence[int],
                 morphism_map: Sequence[int], name: str = "") -> FunctorData:
    return FunctorData(source, target, tuple(int(x) for x in object_map),
                       tuple(int(f) for f in morphism_map), name)


def thin_functor(source: FinCategory, target: FinCategory, object_map: Sequence[int],
                 name: str = "") -> FunctorData:
    """Functor into a thin category; each morphism goes to the unique arrow between images."""
    if not target.is_thin:
        raise BoundaryError("morphism map can only be inferred for a thin target")
    if len(object_map) != source.n_objects:
        raise StructureError(f"object map has {len(object_map)} entries, expected {source.n_objects}")
    mor = [unique_morphism(target, object_map[source.src[f]], object_map[source.tgt[f]])
           for f in range(source.n_morphisms)]
    return make_functor(source, target, object_map, mor, name)


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, tuple(c.objects), tuple(range(c.n_morphisms)), "Id")


def _check_functor_structure(F: FunctorData) -> None:
    _check_structure(F.source)
    _check_structure(F.target)
    if len(F.object_map) != F.source.n_objects:
        raise StructureError(f"object map has {len(F.object_map)} entries, expected {F.source.n_objects}")
    if len(F.morphism_map) != F.source.n_morphisms:
        raise StructureError(f"morphism map has {len(F.morphism_map)} entries, expected {F.source.n_morphisms}")
    for x in F.object_map:
        _check_index(x, F.target.n_objects, "object image")
    for f in F.morphism_map:
        _check_index(f, F.target.n_morphisms, "morphism image")


def validate_functor(F: FunctorData) -> Report:
    _check_functor_structure(F)
    A, B = F.source, F.target
    rep = Report(f"functor {F.name}".strip())
    for f in range(A.n_morphisms):
        Ff = F.morphism_map[f]
        if B.src[Ff] != F.object_map[A.src[f]] or B.tgt[Ff] != F.object_map[A.tgt[f]]:
            rep.fail("typing", {"morphism": f, "image": Ff})
    for x in A.objects:
        if F.morphism_map[A.identity[x]] != B.identity[F.object_map[x]]:
            rep.fail("identity", {"object": x})
    for g in range(A.n_morphisms):
        for f in range(A.n_morphisms):
            gf = A.table[g][f]
            if gf == NONE:
                continue
            rhs = B.table[F.morphism_map[g]][F.morphism_map[f]]
            if rhs == NONE or rhs != F.morphism_map[gf]:
                rep.fail("composition", {"g": g, "f": f})
    return rep


def compose_functors(G: FunctorData, F: FunctorData) -> FunctorData:
    """Return ``G∘F`` (apply ``F`` first)."""
    if F.target != G.source:
        raise BoundaryError(f"cannot compose {G.name or 'G'}∘{F.name or 'F'}: categories differ")
    name = f"{G.name}{F.name}" if G.name and F.name else ""
    return FunctorData(F.source, G.target,
                       tuple(G.object_map[x] for x in F.object_map),
                       tuple(G.morphism_map[f] for f in F.morphism_map), name)


def compose_all(*functors: FunctorData) -> FunctorData:
    """``compose_all(A, B, C) == A∘B∘C``."""
    out = functors[-1]
    for G in reversed(functors[:-1]):
        out = compose_functors(G, out)
    return out


def functor_power(T: FunctorData, n: int) -> FunctorData:
    if n < 0:
        raise ValueError("power must be non-negative")
    if T.source != T.target:
        raise BoundaryError("powers need an endofunctor")
    out = identity_functor(T.source)
    for _ in range(n):
        out = compose_functors(T, out)
    if T.name:
        out = out.named(f"{T.name}^{n}")
    return out


# -- natural transformations -------------------------------------------------

@dataclass(frozen=True)
class NatTransData:
    source: FunctorData
    target: FunctorData
    components: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def domain(self) -> FinCategory:
        return self.source.source

    @property
    def codomain(self) -> FinCategory:
        return self.source.target

    def __getitem__(self, x: int) -> int:
        return self.components[x]

    def named(self, name: str) -> "NatTransData":
        return NatTransData(self.source, self.target, self.components, name)

    def __repr__(self):
        return f"<NatTrans {self.name or 't'} components={list(self.components)}>"


def make_nat_trans(F: FunctorData, G: FunctorData, components: Sequence[int], name: str = "") -> NatTransData:
    return NatTransData(F, G, tuple(int(c) for c in components), name)


def thin_transformation(F: FunctorData, G: FunctorData, name: str = "") -> NatTransData:
    """The unique candidate ``F ⇒ G`` over a thin codomain."""
    if F.source != G.source or F.target != G.target:
        raise BoundaryError("functors must share source and target")
    comps = [unique_morphism(F.target, F.object_map[x], G.object_map[x]) for x in F.source.objects]
    return NatTransData(F, G, tuple(comps), name)


def identity_nat_trans(F: FunctorData) -> NatTransData:
    return NatTransData(F, F, tuple(F.target.identity[F.object_map[x]] for x in F.source.objects),
                        f"id_{F.name}" if F.name else "id")


def validate_nat_trans(t: NatTransData) -> Report:
    F, G = t.source, t.target
    if F.source != G.source or F.target != G.target:
        raise BoundaryError("transformation between functors with different source/target")
    _check_functor_structure(F)
    _check_functor_structure(G)
    A, B = F.source, F.target
    if len(t.components) != A.n_objects:
        raise StructureError(f"{len(t.components)} components for {A.n_objects} objects")
    for c in t.components:
        _check_index(c, B.n_morphisms, "component")
    rep = Report(f"transformation {t.name}".strip())
    for x in A.objects:
        c = t.components[x]
        if B.src[c] != F.object_map[x] or B.tgt[c] != G.object_map[x]:
            rep.fail("component-typing", {"object": x, "component": c})
    if rep.failures:
        return rep
    for f in range(A.n_morphisms):
        x, y = A.src[f], A.tgt[f]
        lhs = B.table[G.morphism_map[f]][t.components[x]]
        rhs = B.table[t.components[y]][F.morphism_map[f]]
        if lhs == NONE or lhs != rhs:
            rep.fail("naturality", {"morphism": f})
    return rep


def _require_same(a: FunctorData, b: FunctorData, what: str) -> None:
    if a != b:
        raise BoundaryError(f"{what}: {a.name or a.object_map} does not match {b.name or b.object_map}")


def vcompose(*ts: NatTransData) -> NatTransData:
    """Vertical composite; ``vcompose(b, a) == b∘a`` requires ``a.target == b.source``."""
    out = ts[-1]
    for t in reversed(ts[:-1]):
        _require_same(out.target, t.source, "vertical composition")
        B = t.codomain
        comps = tuple(B.table[t.components[x]][out.components[x]] for x in t.domain.objects)
        out = NatTransData(out.source, t.target, comps)
    return out


def whisker_left(F: FunctorData, t: NatTransData) -> NatTransData:
    """``F t``: component at ``x`` is ``F(t_x)``."""
    if t.codomain != F.source:
        raise BoundaryError("whisker_left: functor source differs from transformation codomain")
    return NatTransData(compose_functors(F, t.source), compose_functors(F, t.target),
                        tuple(F.morphism_map[c] for c in t.components))


def whisker_right(t: NatTransData, F: FunctorData) -> NatTransData:
    """``t F``: component at ``x`` is ``t_{F x}``."""
    if F.target != t.domain:
        raise BoundaryError("whisker_right: functor target differs from transformation domain")
    return NatTransData(compose_functors(t.source, F), compose_functors(t.target, F),
                        tuple(t.components[F.object_map[x]] for x in F.source.objects))


def whisker(left: FunctorData | None, t: NatTransData, right: FunctorData | None = None) -> NatTransData:
    """``left t right`` with either side optional."""
    if right is not None:
        t = whisker_right(t, right)
    if left is not None:
        t = whisker_left(left, t)
    return t


def hcompose(t2: NatTransData, t1: NatTransData) -> NatTransData:
    """Horizontal composite ``t2 * t1 : G F ⇒ G' F'`` computed as ``t2 F' ∘ G t1``."""
    return vcompose(whisker_right(t2, t1.target), whisker_left(t2.source, t1))


def hcompose_other(t2: NatTransData, t1: NatTransData) -> NatTransData:
    """The same composite evaluated as ``G' t1 ∘ t2 F``."""
    return vcompose(whisker_left(t2.target, t1), whisker_right(t2, t1.source))


def check_interchange(t2: NatTransData, t1: NatTransData) -> Report:
    rep = Report("interchange")
    compare(rep, "interchange", hcompose(t2, t1), hcompose_other(t2, t1))
    return rep


def nat_trans_equal(t1: NatTransData, t2: NatTransData) -> bool:
    if t1.source != t2.source or t1.target != t2.target:
        raise BoundaryError("cannot compare transformations with different boundaries")
    return t1.components == t2.components


def compare(rep: Report, law: str, lhs: NatTransData, rhs: NatTransData) -> bool:
    """Record the first object where two parallel transformations differ."""
    if lhs.source != rhs.source or lhs.target != rhs.target:
        raise BoundaryError(f"{law}: the two sides have different boundaries")
    for x, (a, b) in enumerate(zip(lhs.components, rhs.components)):
        if a != b:
            rep.fail(law, {"object": x}, f"{a} != {b}")
            return False
    return True


def assert_functors_equal(a: FunctorData, b: FunctorData, what: str) -> None:
    _require_same(a, b, what)
