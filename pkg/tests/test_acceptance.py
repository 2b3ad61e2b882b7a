"""Acceptance criteria 1-9, one test each; every test prints a single PASS/FAIL line."""
import json
import random
import time
from collections import Counter

import jsonschema

from catlaw import CORPUS
from catlaw.cli import main
from catlaw.distlaw import (
    DistLawData,
    check_beck_roundtrip,
    check_contravariant_functoriality,
    check_mixed_pentagon_alpha,
    check_mixed_pentagon_H,
    check_vertical_agreement,
    same_base_monad_maps,
    validate_dist_law,
)
from catlaw.fincat import compose_functors, functor_power, vcompose, whisker_left, whisker_right
from catlaw.monad import (
    build_em,
    check_epsP_identity,
    em_functor_from_map,
    iter_em_functors_over,
    make_monad,
    map_from_em_functor,
    validate_comonad,
)
from catlaw.oracle import enumerate_comonads, enumerate_dist_laws, enumerate_functors, enumerate_monads, enumerate_nat_trans
from catlaw.pro import (
    check_composition_pasting,
    check_cube,
    check_law_multigons,
    check_mixed_heptagon,
    check_power_lemma,
    compose_pair_maps,
    find_strong_braidings,
    generate_multigon,
    braided_tower,
    iterated_law,
    iterated_law_recursive,
    representation_from_comonad,
    representation_from_monad,
    tower_comonad,
    validate_equivariant_rep,
    validate_pair_map,
    validate_pair_transformation,
)
from catlaw.runner import REPORT_SCHEMA

from conftest import (
    SMALL_CATEGORIES,
    THEOREM_CATEGORIES,
    all_laws,
    distr_morphisms,
    functor_accept_set,
    law_accept_set,
    monad_accept_set,
    pair_maps,
)

# composable pairs of pair maps checked per category; Z2 and chain2 are exhaustive below it
COMPOSITION_SAMPLE = 20000


def verdict(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_beck_bijection(capsys):
    start = time.monotonic()
    pairs = laws = 0
    bad = []
    for name, make in THEOREM_CATEGORIES.items():
        c = make()
        for T in enumerate_monads(c):
            for G in enumerate_functors(c):
                rep = check_beck_roundtrip(T, G)
                pairs += 1
                laws += rep.counts["laws"]
                if not rep.ok or rep.counts["laws"] != rep.counts["lifts"]:
                    bad.append((name, rep))
    elapsed = time.monotonic() - start
    ok = not bad and elapsed < 60
    verdict(capsys, 1, ok, f"{pairs} (monad, functor) pairs, {laws} laws = lifts, {elapsed:.1f}s, failures {bad[:1]}")


def test_criterion_2_oracle_equivalence(capsys):
    mismatches = []
    counted = Counter()
    for name, make in THEOREM_CATEGORIES.items():
        c = make()
        if functor_accept_set(c, typed=c.n_morphisms > 4) != set(enumerate_functors(c)):
            mismatches.append((name, "functors"))
        if monad_accept_set(c) != set(enumerate_monads(c)):
            mismatches.append((name, "monads"))
        companions = list(enumerate_functors(c)) + list(enumerate_comonads(c))
        for T in enumerate_monads(c):
            for G in companions:
                emitted = set(enumerate_dist_laws(T, G))
                if law_accept_set(T, G) != emitted:
                    mismatches.append((name, "laws", T, G))
                counted["pairs"] += 1
                counted["laws"] += len(emitted)
    verdict(capsys, 2, not mismatches,
            f"functor, monad and law sets equal on chain3 and Z2 ({counted['pairs']} (T, G) pairs, "
            f"{counted['laws']} laws); mismatches {mismatches[:1]}")


def brute_algebra_count(m):
    c, T, t = m.base, m.T, m.base.table
    return sum(1 for x in range(c.n_objects) for nu in range(c.n_morphisms)
               if c.src[nu] == T.object_map[x] and c.tgt[nu] == x
               and t[nu][m.eta.components[x]] == c.identity[x]
               and t[nu][T.morphism_map[nu]] == t[nu][m.mu.components[x]])


def test_criterion_3_em_counts(capsys):
    from catlaw.fincat import chain_category, cyclic_group, identity_functor
    from catlaw.monad import closure_monad

    closure = closure_monad(chain_category(3), [1, 1, 2])
    z2 = cyclic_group(2)
    s_monad = make_monad(identity_functor(z2), [1], [1])
    n1, n2 = len(build_em(closure).em.objects), len(build_em(s_monad).em.objects)
    ok = (n1, n2) == (2, 1) and (brute_algebra_count(closure), brute_algebra_count(s_monad)) == (2, 1)
    verdict(capsys, 3, ok, f"closure [1,1,2] has {n1} algebras, Z2 (mu = eta = s) has {n2}; brute force agrees")


def test_criterion_4_correspondence(capsys):
    failures = []
    maps = functors = pairs = 0
    for name, make in THEOREM_CATEGORIES.items():
        c = make()
        monads = list(enumerate_monads(c))
        ems = [build_em(m) for m in monads]
        for i in range(len(monads)):
            for j in range(len(monads)):
                for a in same_base_monad_maps(monads[i], monads[j]):
                    maps += 1
                    if map_from_em_functor(em_functor_from_map(a, ems[i], ems[j]), ems[i], ems[j]) != a:
                        failures.append((name, "alpha", i, j))
                for H in iter_em_functors_over(ems[i], ems[j]):
                    functors += 1
                    if em_functor_from_map(map_from_em_functor(H, ems[i], ems[j]), ems[i], ems[j]) != H:
                        failures.append((name, "H", i, j))
        for G in [None] + list(enumerate_comonads(c)):
            rep = check_contravariant_functoriality(c, G)
            pairs += rep.counts["composable_pairs"]
            if not rep.ok:
                failures.append((name, "functoriality", rep))
    verdict(capsys, 4, not failures and maps == functors,
            f"{maps} maps, {functors} functors, {pairs} composable pairs; failures {failures[:1]}")


def _pair_map_theorems(c, rng):
    """Heptagon, power lemma, composition and cube over every valid pair map on ``c``."""
    counts = Counter()
    failures = []
    valid = [p for p in pair_maps(c) if validate_pair_map(p).ok]
    counts["pair_maps"] = len(valid)
    for p in valid:
        for g in ("mu", "eta"):
            if not check_mixed_heptagon(p, g).ok:
                failures.append(("heptagon", g))
            counts["heptagon"] += 1
    composable = [(a, b) for a in valid for b in valid if b.S == a.T]
    if len(composable) > COMPOSITION_SAMPLE:
        composable = rng.sample(composable, COMPOSITION_SAMPLE)
    for a, b in composable:
        if not check_composition_pasting(a, b).ok or not validate_pair_map(compose_pair_maps(a, b)).ok:
            failures.append(("composition",))
        counts["composition"] += 1
        for n in range(4):
            if not check_power_lemma(a, b, n).ok:
                failures.append(("power", n))
            counts["power"] += 1
    groups = {}
    for p in valid:
        groups.setdefault((p.T, p.S), []).append(p)
    for ps in groups.values():
        for p1 in ps:
            for p2 in ps:
                for s in enumerate_nat_trans(p1.K, p2.K):
                    if validate_pair_transformation(s, p1, p2).ok:
                        if not check_cube(s, p1, p2).ok:
                            failures.append(("cube",))
                        counts["cube"] += 1
    return counts, failures


def test_criterion_5_theorem_suites(capsys):
    rng = random.Random(2024)
    counts = Counter()
    failures = []
    for name, make in THEOREM_CATEGORIES.items():
        c = make()
        for m in distr_morphisms(c):
            em, em2 = build_em(m.source.monad), build_em(m.target.monad)
            H = em_functor_from_map(m.alpha, em, em2)
            for label, rep in (("D1M", check_mixed_pentagon_H(m.source, m.target, H, em, em2)),
                               ("D1Ma", check_mixed_pentagon_alpha(m)),
                               ("vertical", check_vertical_agreement(m.alpha, em, em2))):
                counts[label] += 1
                if not rep.ok:
                    failures.append((name, label))
        monads = list(enumerate_monads(c))
        ems = [build_em(x) for x in monads]
        for i in range(len(monads)):
            for j in range(len(monads)):
                for H in iter_em_functors_over(ems[i], ems[j]):
                    counts["eps-identity"] += 1
                    if not check_epsP_identity(H, ems[i], ems[j]).ok:
                        failures.append((name, "eps-identity"))
    for name in ("chain2", "Z2", "chain3"):
        pc, pf = _pair_map_theorems(SMALL_CATEGORIES[name](), rng)
        counts.update({f"{k}": v for k, v in pc.items()})
        failures += [(name,) + f for f in pf]
    summary = ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))
    verdict(capsys, 5, not failures and all(counts.values()), f"{summary}; failures {failures[:1]}")


def test_criterion_6_multigons(capsys):
    shapes = {}
    mismatched = []
    compared = 0
    rename = {"multigon:mu": "pentagon", "multigon:eta": "unit"}
    for name, make in THEOREM_CATEGORIES.items():
        c = make()
        fun = list(enumerate_functors(c))
        for m in enumerate_monads(c):
            r = representation_from_monad(m)
            for G in fun:
                for l in enumerate_nat_trans(compose_functors(m.T, G), compose_functors(G, m.T)):
                    d = DistLawData(m, G, l)
                    a = set(validate_dist_law(d).failed_laws())
                    b = {rename[x] for x in validate_equivariant_rep(r, d).failed_laws()}
                    compared += 1
                    if a != b:
                        mismatched.append((name, l))
            for g in enumerate_comonads(c):
                rc = representation_from_comonad(g)
                d = next(iter(enumerate_dist_laws(m, g)), None)
                if d is None:
                    continue
                for gen in ("delta", "eps"):
                    shapes[gen] = generate_multigon(gen, d, rc, "G").edge_count
                if not check_law_multigons(d, rc, "G").ok:
                    mismatched.append((name, "counital", d))
    ok = shapes == {"delta": 5, "eps": 3} and not mismatched
    verdict(capsys, 6, ok, f"delta {shapes.get('delta')}-gon, eps {shapes.get('eps')}-gon; "
                          f"{compared} candidates give identical pass/fail sets; mismatches {mismatched[:1]}")


def test_criterion_7_iterated_law(capsys):
    bad = []
    laws = 0
    for name, make in THEOREM_CATEGORIES.items():
        for d in all_laws(make(), with_comonads=False):
            laws += 1
            G = d.G
            for n in range(1, 5):
                if iterated_law(d, n) != iterated_law_recursive(d, n):
                    bad.append((name, n))
                for k in range(1, n):
                    split = vcompose(whisker_left(functor_power(G, k), iterated_law(d, n - k)),
                                     whisker_right(iterated_law(d, k), functor_power(G, n - k)))
                    if split != iterated_law(d, n):
                        bad.append((name, n, k))
    verdict(capsys, 7, not bad and laws > 0, f"{laws} laws, n <= 4, every split agrees; failures {bad[:1]}")


def test_criterion_8_braided_tower(capsys):
    braidings = 0
    bad = []
    for name, make in SMALL_CATEGORIES.items():
        for G in enumerate_comonads(make()):
            for l in find_strong_braidings(G):
                braidings += 1
                for n in (1, 2, 3):
                    if not (validate_comonad(tower_comonad(l, G, n)).ok
                            and validate_dist_law(braided_tower(l, G, n)).ok):
                        bad.append((name, n))
    verdict(capsys, 8, braidings > 0 and not bad,
            f"{braidings} strong braidings, towers n <= 3 all valid; failures {bad[:1]}")


def test_criterion_9_cli(capsys):
    from catlaw.runner import OPS
    from catlaw.dsl import parse_file

    good = sorted(CORPUS.glob("*.cat"))
    broken = sorted((CORPUS / "broken").glob("*.cat"))
    problems = []
    used = set()
    for path in good + broken:
        code = main(["check", str(path), "--format", "json"])
        out = capsys.readouterr().out
        report = json.loads(out)
        try:
            jsonschema.validate(report, REPORT_SCHEMA)
        except jsonschema.ValidationError as e:
            problems.append((path.name, "schema", e.message))
        if path in good:
            used |= {s.name for s in parse_file(path).checks}
            if code != 0:
                problems.append((path.name, code))
        else:
            positioned = report.get("diagnostics") or [
                c for c in report["checks"] if c["status"] != "pass" and c.get("line")]
            if code not in (1, 2) or not positioned:
                problems.append((path.name, code))
    missing = set(OPS) - used
    ok = len(good) >= 10 and len(broken) >= 5 and not problems and not missing
    verdict(capsys, 9, ok, f"{len(good)} documents exit 0, {len(broken)} broken exit 1 or 2 with positions, "
                          f"JSON schema-valid; uncovered ops {sorted(missing)}; problems {problems[:1]}")
