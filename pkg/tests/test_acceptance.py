"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from itertools import product
from math import prod
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import GRAPH_DIR, corpus_paths, invalid_cases  # noqa: E402
from oracles import TruncPoly, character_oracle, lr_oracle, parts_of  # noqa: E402
from vertexforge.amplitudes import (  # noqa: E402
    c_tilde_framed, c_tilde_framed_by_hurwitz, f_graph_general, f_graph_regular, g_one, g_three, g_two,
    resolve_class,
)
from vertexforge.exact import ExactScalar, parse_q_expression as Q, q_power  # noqa: E402
from vertexforge.fixtures import builtin_fixture_path, run_fixture_suite  # noqa: E402
from vertexforge.ftcy import (  # noqa: E402
    EffectiveClass, GraphValidationError, degenerate, effective_classes, full_resolution, full_smoothing, glue,
    load_graph, normalize, parse_graph, serialize_graph, smooth, splitting_types, wedge,
)
from vertexforge.hurwitz import cut_join_residual, hurwitz_number, phi_q, phi_series  # noqa: E402
from vertexforge.partitions import (  # noqa: E402
    EMPTY, Partition, PartitionTriple, partitions, partitions_up_to, triples_up_to, z,
)
from vertexforge.symchar import character, lr_coefficient  # noqa: E402
from vertexforge.vertex import w_one, w_three, w_tilde, w_two  # noqa: E402

# time limits in seconds
TABLE_LIMIT = 120
SWEEP_LIMIT = 600


def c1_lowdegree_table():
    start = time.perf_counter()
    results = run_fixture_suite(builtin_fixture_path())
    named = [
        (PartitionTriple((1,), (1,), (1,)), "(q^4-q^3+q^2-q+1)/(q^(1/2)*(q-1)^3)"),
        (PartitionTriple((2,), (2,), (2,)),
         "q(q^10-3q^8+3q^7+2q^6-5q^5+2q^4+3q^3-3q^2+1)/((q^2-1)^3(q-1)^3)"),
    ]
    named_ok = all(w_tilde(t) == Q(expr) for t, expr in named)
    elapsed = time.perf_counter() - start
    passed = sum(r.ok for r in results)
    ok = passed == len(results) and len(results) >= 38 and named_ok and elapsed < TABLE_LIMIT
    return ok, f"{passed}/{len(results)} identities by field equality in {elapsed:.1f}s"


def c2_conjecture_sweep():
    start = time.perf_counter()
    triples = list(triples_up_to(3, include_empty=True))
    bad = [t for t in triples if w_tilde(t) != w_three(t)]
    elapsed = time.perf_counter() - start
    ok = len(triples) == 343 and not bad and elapsed <= SWEEP_LIMIT
    shown = ", ".join(str(t) for t in bad[:5])
    return ok, f"{len(triples)} triples, {len(bad)} mismatches{' ' + shown if bad else ''} in {elapsed:.1f}s"


def c3_orthogonality():
    failures = 0
    for d in range(9):
        ps = partitions(d)
        for a, b in product(ps, repeat=2):
            s = sum(Fraction(character(a, r) * character(b, r), z(r)) for r in ps)
            dual = sum(character(nu, a) * character(nu, b) for nu in ps)
            failures += s != (a == b)
            failures += dual != (z(a) if a == b else 0)
    return failures == 0, f"d <= 8, {failures} failures"


def c4_oracles():
    lr_bad = lr_count = 0
    for n in range(7):
        for a in range(n + 1):
            for mu, nu in product(parts_of(a), parts_of(n - a)):
                expected = lr_oracle(mu, nu)
                for eta in parts_of(n):
                    lr_count += 1
                    lr_bad += lr_coefficient(Partition(eta), Partition(mu), Partition(nu)) != expected[eta]
    ch_bad = ch_count = 0
    for d in range(1, 6):
        for nu, mu in product(parts_of(d), repeat=2):
            ch_count += 1
            ch_bad += character(Partition(nu), Partition(mu)) != character_oracle(nu, mu)
    ok = lr_bad == 0 and ch_bad == 0
    return ok, f"LR {lr_count} checked/{lr_bad} wrong (|eta| <= 6); characters {ch_count} checked/{ch_bad} wrong"


def c5_hurwitz():
    cache = {}

    def phi(a, b, n):
        if (a, b, n) not in cache:
            cache[a, b, n] = phi_q(a, b, n)
        return cache[a, b, n]

    sum_bad = 0
    for d in range(6):
        ps = partitions(d)
        for a, b in product(ps, repeat=2):
            for n1, n2 in product(range(-2, 3), repeat=2):
                total = ExactScalar.zero()
                for nu in ps:
                    total = total + phi(a, nu, n1) * phi(nu, b, n2) * z(nu)
                sum_bad += total != phi(a, b, n1 + n2)
    init_bad = 0
    for d in range(7):
        for a, b in product(partitions(d), repeat=2):
            init_bad += phi_series(a, b, 0)[0] != (Fraction(1, z(a)) if a == b else 0)
    h1 = hurwitz_number(2, (1,), (1,))
    h2 = hurwitz_number(2, (2,), (1, 1))
    ok = sum_bad == 0 and init_bad == 0 and h1 == 1 and h2 == Fraction(1, 2)
    return ok, f"sum formula {sum_bad} failures, initial values {init_bad} failures, H = {h1}, {h2}"


def c6_cut_and_join():
    plus = cut_join_residual(3, 5, "+")
    minus = cut_join_residual(3, 5, "-")
    ok = plus.is_zero() and minus.is_zero()
    return ok, f"residual terms: + side {len(plus.terms)}, - side {len(minus.terms)}"


def c7_vertex_identities():
    bad = 0
    pool = list(partitions_up_to(4))
    for mu, nu in product(pool, repeat=2):
        expected = q_power(Fraction(nu.kappa(), 2)) * w_two(mu, nu.transpose())
        for t in (PartitionTriple(mu, nu, ()), PartitionTriple((), mu, nu), PartitionTriple(nu, (), mu)):
            bad += w_three(t) != expected
        bad += w_two(mu, nu) != w_two(nu, mu)
    bad += sum(w_two(mu, EMPTY) != w_one(mu) for mu in pool)
    cyc = 0
    for t in triples_up_to(3, include_empty=True):
        cyc += w_tilde(t) != w_tilde(t.rotate(1)) or w_tilde(t) != w_tilde(t.rotate(2))
    return bad == 0 and cyc == 0, f"vertex identities {bad} failures, cyclic symmetry {cyc} failures"


def c8_gluing():
    g = load_graph(GRAPH_DIR / "bivalent_chain.ftcy")
    smoothed, _ = full_smoothing(g)
    resolved, vmap = full_resolution(g)
    classes = effective_classes(g, 2)
    bad = 0
    for c in classes:
        degrees = dict(c.degrees)
        sc = EffectiveClass(tuple((eid, degrees[eid]) for eid in smoothed.edges), c.boundary)
        general = f_graph_general(g, c)
        split = ExactScalar.zero()
        for sigma in splitting_types(g, c):
            split = split + f_graph_regular(resolved, resolve_class(g, c, sigma, vmap)) * prod(
                z(s) for s in sigma.values())
        bad += general != f_graph_regular(smoothed, sc) or general != split
    return bad == 0, f"{len(classes)} classes with degrees <= 2, {bad} failures"


def c9_framing():
    rng = random.Random(20061031)
    tuples = rng.sample(list(product((-1, 0, 1, 2), repeat=3)), 8)
    bad = count = 0
    for mu in product(partitions_up_to(2), repeat=3):
        for n in tuples:
            count += 1
            bad += c_tilde_framed(mu, n) != c_tilde_framed_by_hurwitz(mu, n)
    return bad == 0, f"{count} comparisons over 8 framing tuples, {bad} failures"


def c10_hodge():
    bad = 0
    pool = list(partitions_up_to(4))
    for w in ((1, 1), (1, 2)):
        for a, b in product(pool, repeat=2):
            if not a and not b:
                continue
            bad += g_three((a, b, ()), w) != g_two(a, b, w)
            if not b:
                bad += g_three((a, (), ()), w) != g_one(a, w)
    sym = 0
    for mu in product(partitions_up_to(2), repeat=3):
        if not any(mu):
            continue
        t = PartitionTriple(*mu)
        for w1, w2 in ((1, 1), (1, 2), (2, -5)):
            g = g_three(t, (w1, w2))
            sym += g_three(t, (2 * w1, 2 * w2)) != g or g_three(t, (3 * w1, 3 * w2)) != g
            sym += g_three(t.rotate(1), (w2, -w1 - w2)) != g
    return bad == 0 and sym == 0, f"reductions {bad} failures, scaling/cyclic {sym} failures"


def c11_exponential_identity():
    # x_m = p1_m, y_m = p3_2m, variables with m <= 6, total degree <= 8
    max_index, max_degree = 6, 8
    x = {m: TruncPoly.var(f"x{m}", max_degree) for m in range(1, max_index + 1)}
    y = {m: TruncPoly.var(f"y{m}", max_degree) for m in range(1, max_index + 1)}

    def lhs(sign):
        s = TruncPoly(max_degree=max_degree)
        for m in range(1, max_index + 1):
            s = s + (x[m] * y[m]).scale(Fraction(sign * (-1) ** (m - 1), m))
        return s.exp()

    rhs = TruncPoly(max_degree=max_degree)
    for n in range(max_index * (max_degree // 2) + 1):
        for mu in partitions(n):
            if (mu and mu[0] > max_index) or 2 * len(mu) > max_degree:
                continue
            term = TruncPoly.const(Fraction((-1) ** (n - len(mu)), z(mu)), max_degree)
            for part in mu:
                term = term * x[part] * y[part]
            rhs = rhs + term
    holds = lhs(+1) == rhs
    negated = lhs(-1) == rhs
    detail = (f"exp(+sum) form {'holds' if holds else 'fails'} on {len(rhs.terms)} monomials; "
              f"negated-exponent form {'holds' if negated else 'fails'}")
    return holds, detail


def _norm_lines(text):
    return [" ".join(raw.split("#", 1)[0].split()) for raw in text.splitlines() if raw.split("#", 1)[0].strip()]


def c12_graph_toolkit():
    problems = []
    graphs = {p.name: load_graph(p) for p in corpus_paths()}
    for name, g in graphs.items():
        text = (GRAPH_DIR / name).read_text(encoding="utf-8")
        out = serialize_graph(g)
        if _norm_lines(out) != _norm_lines(text) or serialize_graph(parse_graph(out)) != out:
            problems.append(f"{name}: serialization")
        for eid in g.edges:
            oe = (eid, 1)
            f0 = next(f for f in product(range(-2, 3), repeat=2) if wedge(g.p(oe), f) == 1)
            d = degenerate(g, oe, f0, vertex="fresh")
            if not smooth(d, "fresh").isomorphic(g):
                problems.append(f"{name}: smooth after degenerate at {eid}")
        for v in g.bivalent:
            e1, _ = sorted(g.incoming(v))
            if not degenerate(smooth(g, v), e1, g.f(e1)).isomorphic(g):
                problems.append(f"{name}: degenerate after smooth at {v}")
            n = normalize(g, v, ("s1", "s2"))
            if not glue(n, "s1", "s2").isomorphic(g):
                problems.append(f"{name}: glue after normalize at {v}")
            if not normalize(glue(n, "s1", "s2", name="t"), "t", ("s1", "s2")).isomorphic(n):
                problems.append(f"{name}: normalize after glue at {v}")
    rejected = 0
    cases = invalid_cases()
    for path, label in cases:
        try:
            load_graph(path)
        except GraphValidationError as exc:
            labels = [v.label for v in exc.violations]
            if labels == [label]:
                rejected += 1
            else:
                problems.append(f"{path.name}: got {labels}")
        else:
            problems.append(f"{path.name}: accepted")
    ok = not problems and rejected == len(cases) == 10
    detail = f"{len(graphs)} corpus graphs, {rejected}/{len(cases)} invalid files rejected with the right label"
    if problems:
        detail += "; " + "; ".join(problems[:4])
    return ok, detail


CRITERIA = [
    ("C1", "low-degree table", c1_lowdegree_table),
    ("C2", "W-tilde = W sweep, |mu^i| <= 3", c2_conjecture_sweep),
    ("C3", "character orthogonality", c3_orthogonality),
    ("C4", "LR and character oracles", c4_oracles),
    ("C5", "Hurwitz sum formula and initial values", c5_hurwitz),
    ("C6", "cut-and-join residual", c6_cut_and_join),
    ("C7", "vertex identities and cyclic symmetry", c7_vertex_identities),
    ("C8", "gluing formula on the bivalent chain", c8_gluing),
    ("C9", "framing routes agree", c9_framing),
    ("C10", "Hodge generating functions", c10_hodge),
    ("C11", "exponential series identity", c11_exponential_identity),
    ("C12", "graph toolkit", c12_graph_toolkit),
]


def _line(key, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {key} {title}: {detail}"


@pytest.mark.parametrize("key, title, fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(key, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(key, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for key, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(key, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
