"""Brute-force enumerators used as ground truth.

The law checks here read the composition tables directly and never go
through the validators or the 2-cell algebra of :mod:`catlaw.fincat`, so
the two routes stay independent. Streams come out in lexicographic order of
their tables.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from itertools import product
from typing import Callable, Iterator, Sequence

from .fincat import NONE, FinCategory, FunctorData, NatTransData, compose_functors, identity_functor
from .monad import ComonadData, MonadData
from .report import EnumerationBoundError

DEFAULT_BOUND = 24
_override: list[int] = []


def default_bound() -> int:
    """Innermost :func:`bound_override`, else ``CATLAW_BOUND``, else 24."""
    if _override:
        return _override[-1]
    env = os.environ.get("CATLAW_BOUND")
    return int(env) if env else DEFAULT_BOUND


@contextmanager
def bound_override(n: int | None):
    if n is None:
        yield
        return
    _override.append(int(n))
    try:
        yield
    finally:
        _override.pop()


def _guard(c: FinCategory, bound: int | None) -> None:
    limit = default_bound() if bound is None else bound
    if c.n_morphisms > limit:
        raise EnumerationBoundError(
            f"category has {c.n_morphisms} morphisms, enumeration ceiling is {limit}")


def enumerate_functors_constrained(
        source: FinCategory, target: FinCategory,
        object_choices: Sequence[Sequence[int]] | None = None,
        morphism_choices: Callable[[int, int, int], Sequence[int]] | None = None,
        bound: int | None = None) -> Iterator[FunctorData]:
    """Backtracking search over object maps, then morphism maps, in id order."""
    _guard(source, bound)
    _guard(target, bound)
    A, B = source, target
    k = A.n_morphisms
    if object_choices is None:
        object_choices = [range(B.n_objects)] * A.n_objects
    # composable triples (g, f, g∘f) checked once their largest id is assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(k)]
    for g in range(k):
        for f in range(k):
            gf = A.table[g][f]
            if gf != NONE:
                checks[max(g, f, gf)].append((g, f, gf))
    identities = {A.identity[x]: x for x in A.objects}

    for obj in product(*object_choices):
        mor = [NONE] * k

        def options(f):
            a, b = obj[A.src[f]], obj[A.tgt[f]]
            if f in identities:
                return (B.identity[a],)
            if morphism_choices is None:
                return B.hom(a, b)
            return [h for h in morphism_choices(f, a, b) if B.src[h] == a and B.tgt[h] == b]

        def rec(i):
            if i == k:
                yield tuple(mor)
                return
            for h in options(i):
                mor[i] = h
                if all(B.table[mor[g]][mor[f]] == mor[gf] for g, f, gf in checks[i]):
                    yield from rec(i + 1)
            mor[i] = NONE

        for m in rec(0):
            yield FunctorData(A, B, tuple(obj), m)


def enumerate_functors(c: FinCategory, target: FinCategory | None = None,
                       bound: int | None = None) -> Iterator[FunctorData]:
    """All functors ``c → target`` (endofunctors by default), each exactly once."""
    return enumerate_functors_constrained(c, c if target is None else target, bound=bound)


def enumerate_nat_trans(F: FunctorData, G: FunctorData, bound: int | None = None) -> Iterator[NatTransData]:
    A, B = F.source, F.target
    _guard(A, bound)
    _guard(B, bound)
    n = A.n_objects
    checks: list[list[int]] = [[] for _ in range(n)]
    for f in range(A.n_morphisms):
        checks[max(A.src[f], A.tgt[f])].append(f)
    comps = [NONE] * n

    def natural(f):
        x, y = A.src[f], A.tgt[f]
        return B.table[G.morphism_map[f]][comps[x]] == B.table[comps[y]][F.morphism_map[f]]

    def rec(x):
        if x == n:
            yield NatTransData(F, G, tuple(comps))
            return
        for h in B.hom(F.object_map[x], G.object_map[x]):
            comps[x] = h
            if all(natural(f) for f in checks[x]):
                yield from rec(x + 1)
        comps[x] = NONE

    yield from rec(0)


def _raw(B: FinCategory, *path: int) -> int:
    """Compose ``path[0]∘path[1]∘...`` by table lookup, NONE on any gap."""
    out = path[-1]
    for g in reversed(path[:-1]):
        if out == NONE:
            return NONE
        out = B.table[g][out]
    return out


def raw_monad_laws(T: FunctorData, mu: Sequence[int], eta: Sequence[int]) -> bool:
    B = T.source
    for x in B.objects:
        Tx = T.object_map[x]
        if _raw(B, mu[x], T.morphism_map[mu[x]]) != _raw(B, mu[x], mu[Tx]):
            return False
        if _raw(B, mu[x], T.morphism_map[eta[x]]) != B.identity[Tx]:
            return False
        if _raw(B, mu[x], eta[Tx]) != B.identity[Tx]:
            return False
    return True


def raw_comonad_laws(G: FunctorData, delta: Sequence[int], eps: Sequence[int]) -> bool:
    B = G.source
    for x in B.objects:
        Gx = G.object_map[x]
        if _raw(B, delta[Gx], delta[x]) != _raw(B, G.morphism_map[delta[x]], delta[x]):
            return False
        if _raw(B, eps[Gx], delta[x]) != B.identity[Gx]:
            return False
        if _raw(B, G.morphism_map[eps[x]], delta[x]) != B.identity[Gx]:
            return False
    return True


def enumerate_monads(c: FinCategory, bound: int | None = None) -> Iterator[MonadData]:
    Id = identity_functor(c)
    for T in enumerate_functors(c, bound=bound):
        TT = compose_functors(T, T)
        etas = list(enumerate_nat_trans(Id, T, bound))
        if not etas:
            continue
        for eta in etas:
            for mu in enumerate_nat_trans(TT, T, bound):
                if raw_monad_laws(T, mu.components, eta.components):
                    yield MonadData(T, mu, eta)


def enumerate_comonads(c: FinCategory, bound: int | None = None) -> Iterator[ComonadData]:
    Id = identity_functor(c)
    for G in enumerate_functors(c, bound=bound):
        GG = compose_functors(G, G)
        for eps in enumerate_nat_trans(G, Id, bound):
            for delta in enumerate_nat_trans(G, GG, bound):
                if raw_comonad_laws(G, delta.components, eps.components):
                    yield ComonadData(G, delta, eps)


def raw_dist_law(T: MonadData, G: FunctorData | ComonadData, l: Sequence[int]) -> bool:
    """Pentagon and unit (plus the comonad pair when ``G`` carries one), by table lookup."""
    comonad = G if isinstance(G, ComonadData) else None
    Gf = comonad.G if comonad else G
    B = T.base
    Tm, mu, eta = T.T, T.mu.components, T.eta.components
    for x in B.objects:
        Tx, Gx = Tm.object_map[x], Gf.object_map[x]
        lhs = _raw(B, Gf.morphism_map[mu[x]], l[Tx], Tm.morphism_map[l[x]])
        if lhs == NONE or lhs != _raw(B, l[x], mu[Gx]):
            return False
        if _raw(B, l[x], eta[Gx]) != Gf.morphism_map[eta[x]]:
            return False
        if comonad:
            d, e = comonad.delta.components, comonad.epsilon.components
            if _raw(B, e[Tx], l[x]) != Tm.morphism_map[e[x]]:
                return False
            if _raw(B, d[Tx], l[x]) != _raw(B, Gf.morphism_map[l[x]], l[Gx], Tm.morphism_map[d[x]]):
                return False
    return True


def enumerate_dist_laws(T: MonadData, G: FunctorData | ComonadData, bound: int | None = None):
    """All laws ``l : T G ⇒ G T`` for the monad ``T`` and companion ``G``."""
    from .distlaw import DistLawData

    Gf = G.G if isinstance(G, ComonadData) else G
    for l in enumerate_nat_trans(compose_functors(T.T, Gf), compose_functors(Gf, T.T), bound):
        if raw_dist_law(T, G, l.components):
            yield DistLawData(T, G, l)


def count_monotone_maps(n: int) -> int:
    """Monotone self-maps of an ``n``-chain, by direct count."""
    return sum(1 for m in product(range(n), repeat=n) if all(m[i] <= m[i + 1] for i in range(n - 1)))


def closure_operators(n: int) -> list[tuple[int, ...]]:
    """Inflationary, idempotent, monotone self-maps of an ``n``-chain."""
    out = []
    for m in product(range(n), repeat=n):
        if (all(m[i] <= m[i + 1] for i in range(n - 1)) and all(m[i] >= i for i in range(n))
                and all(m[m[i]] == m[i] for i in range(n))):
            out.append(m)
    return out


def interior_operators(n: int) -> list[tuple[int, ...]]:
    out = []
    for m in product(range(n), repeat=n):
        if (all(m[i] <= m[i + 1] for i in range(n - 1)) and all(m[i] <= i for i in range(n))
                and all(m[m[i]] == m[i] for i in range(n))):
            out.append(m)
    return out
