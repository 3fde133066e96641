"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest -v -s tests/test_acceptance.py``.  Every sweep is
exhaustive at its stated size bound and uses exact integer arithmetic.
"""

import itertools
import math

from multisym import algebra, cli, posets, series, trees, verify
from multisym.algebra import (
    LinearCombo,
    apply_linear_map,
    coaction_monomial,
    coinvariant_basis,
    check_fiber_monomial_sum,
    from_monomial,
    product_fund,
    product_msym,
    to_monomial,
)
from multisym.posets import (
    bileveled_section_pair,
    check_galois,
    check_interval_retract,
    tree_section_pair,
)
from multisym.trees import (
    bileveled_of_composition,
    bileveled_of_perm,
    enumerate_family,
    parse_perm,
    parse_tree,
    qsym_composition,
    render,
)

M4_COVER_EDGE_COUNT = 32  # regression value, frozen from the built order


def report(num, name, ok):
    print(f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({name}) failed"


def beta_key(word):
    return render(bileveled_of_perm(parse_perm(word)))


def test_criterion_01_dimensions():
    ok = True
    for n in range(0, 7):
        ok &= len(enumerate_family("S", n)) == math.factorial(n)
        ok &= len(enumerate_family("Y", n)) == series.catalan(n)
    ok &= [len(enumerate_family("M", n)) for n in range(1, 7)] == [1, 2, 6, 21, 80, 322]
    ok &= counts_match_series(6)
    report(1, "dimensions", ok)


def counts_match_series(n_max):
    s = series.counts("S", n_max)
    y = series.counts("Y", n_max)
    m = series.counts("M", n_max)
    return all(len(enumerate_family("S", n)) == s[n]
               and len(enumerate_family("Y", n)) == y[n]
               and (n == 0 or len(enumerate_family("M", n)) == m[n])
               for n in range(0, n_max + 1))


def test_criterion_02_hasse_reproduction(capsys):
    code = cli.main(["hasse", "--family", "M", "--n", "4"])
    out = capsys.readouterr().out
    lines = out.splitlines()
    vertices = [l for l in lines if l.endswith('";') and "->" not in l]
    edges = [l for l in lines if "->" in l]
    order = posets.bileveled_order(4)
    ok = (code == 0
          and len(vertices) == 21
          and len(edges) == M4_COVER_EDGE_COUNT
          and order.minimum() == beta_key("1234")
          and order.maximum() == beta_key("4321"))
    report(2, "four-node order diagram", ok)


def test_criterion_03_fiber_structure():
    result = verify.suite_fibers(6)
    report(3, "fibers are intervals with pinned sections", result.passed)


def test_criterion_04_interval_retract():
    ok = True
    for n in range(1, 6):
        rep = check_interval_retract(bileveled_section_pair(n))
        ok &= rep.clauses_hold and rep.passed
    report(4, "interval retract with Möbius transfer", ok)


def test_criterion_05_fiber_monomial_sums():
    ok = all(check_fiber_monomial_sum(key).passed
             for n in range(1, 5) for key in enumerate_family("M", n))
    report(5, "fiber sums of monomial words", ok)


def test_criterion_06_monomial_coaction():
    ok = verify.suite_thm3(5).passed
    ok &= len(coaction_monomial(beta_key("3241")).terms) == 2
    ok &= len(coaction_monomial(beta_key("35421")).terms) == 3
    report(6, "closed-form monomial coaction", ok)


def test_criterion_07_hopf_module_axiom():
    result = verify.suite_hopf_module(b_max=3, s_max=2)
    report(7, "module/comodule compatibility", result.passed)


def test_criterion_08_coinvariants():
    quotient = series.series_quotient(series.counts("M", 5), series.counts("Y", 5))
    counts = [len(coinvariant_basis(n)) for n in range(1, 6)]
    ok = counts == [1, 1, 3, 11, 44]
    ok &= counts == [quotient[n] for n in range(1, 6)]
    for n in range(1, 6):
        for key in coinvariant_basis(n):
            ok &= coaction_monomial(key).terms == {(key, "."): 1}
    report(8, "coinvariant keys and the quotient series", ok)


def test_criterion_09_tree_fiber_intervals():
    result = verify.suite_tamari_oracle(5)
    report(9, "tree fibers as weak-order intervals", result.passed)


def test_criterion_10_monomial_tree_property():
    ok = True
    for n in range(1, 5):
        for sigma in enumerate_family("S", n):
            image = to_monomial(apply_linear_map(
                "tau", from_monomial(LinearCombo("S", "M", {sigma: 1}))))
            t = render(trees.tree_of_perm(parse_perm(sigma)))
            if trees.render_perm(trees.max_word(parse_tree(t))) == sigma:
                ok &= image.terms == {t: 1}
            else:
                ok &= image.terms == {}
    report(10, "monomial words under the tree map", ok)


def test_criterion_11_galois_tree_pair():
    ok = all(check_galois(tree_section_pair(n)).passed for n in range(1, 5))
    report(11, "tree pair adjunction and Möbius transfer", ok)


def test_criterion_11_bileveled_adjunction_fails_at_size_three():
    # Known red: the adjunction provably holds at size three (all 36 pairs
    # satisfy it, checked against an independent order implementation) and
    # first fails at size four; the next test pins the size-four failure.
    rep = check_galois(bileveled_section_pair(3))
    report(11, "bileveled adjunction failure at size three",
           not rep.adjunction_holds)


def test_criterion_11_bileveled_admits_no_adjunction():
    failures = [n for n in range(2, 5)
                if not check_galois(bileveled_section_pair(n)).adjunction_holds]
    report(11, "bileveled pair admits no adjunction (family level)",
           failures == [4])


def test_criterion_12_compositions():
    ok = qsym_composition(bileveled_of_perm(parse_perm("43521"))) == (2, 3)
    ok &= bileveled_of_composition((1, 2, 1, 4)) == bileveled_of_perm(parse_perm("56478321"))
    for n in range(1, 7):
        sizes = {}
        for key in enumerate_family("M", n):
            parts = qsym_composition(parse_tree(key))
            sizes[parts] = sizes.get(parts, 0) + 1
        ok &= sum(sizes.values()) == series.bileveled_count(n)
        ok &= len(sizes) == 2 ** (n - 1)
        ok &= all(count >= 1 for count in sizes.values())
    report(12, "composition fibers", ok)


def _combo_mul(family, a, b):
    out = {}
    for x, cx in a.items():
        for y, cy in b.items():
            prod = product_msym(x, y) if family == "M" else product_fund(family, x, y)
            for k, c in prod.terms.items():
                out[k] = out.get(k, 0) + cx * cy * c
    return {k: v for k, v in out.items() if v}


def _associativity(family, max_total):
    for da in range(0, max_total + 1):
        for db in range(0, max_total + 1 - da):
            for dc in range(0, max_total + 1 - da - db):
                for a in enumerate_family(family, da):
                    for b in enumerate_family(family, db):
                        for c in enumerate_family(family, dc):
                            ab = _combo_mul(family, {a: 1}, {b: 1})
                            bc = _combo_mul(family, {b: 1}, {c: 1})
                            if _combo_mul(family, ab, {c: 1}) != _combo_mul(family, {a: 1}, bc):
                                return False
    return True


def _coassociativity(family, max_degree):
    for n in range(0, max_degree + 1):
        for key in enumerate_family(family, n):
            lhs, rhs = {}, {}
            for (x, y), c in algebra.coproduct_fund(family, key).terms.items():
                for (x1, x2), d in algebra.coproduct_fund(family, x).terms.items():
                    lhs[(x1, x2, y)] = lhs.get((x1, x2, y), 0) + c * d
                for (y1, y2), d in algebra.coproduct_fund(family, y).terms.items():
                    rhs[(x, y1, y2)] = rhs.get((x, y1, y2), 0) + c * d
            if lhs != rhs:
                return False
    return True


def _word_action_axiom(max_total):
    for dw, dw2, ds in itertools.product((1, 2), (1, 2), (1, 2)):
        if dw + dw2 + ds > max_total:
            continue
        for w in enumerate_family("S", dw):
            for w2 in enumerate_family("S", dw2):
                for s in enumerate_family("M", ds):
                    lhs = {}
                    for key, c in product_fund("S", w, w2).terms.items():
                        for k2, d in algebra.action_ssym(key, s).terms.items():
                            lhs[k2] = lhs.get(k2, 0) + c * d
                    rhs = {}
                    for key, c in algebra.action_ssym(w2, s).terms.items():
                        for k2, d in algebra.action_ssym(w, key).terms.items():
                            rhs[k2] = rhs.get(k2, 0) + c * d
                    if lhs != rhs:
                        return False
    return True


def _tree_action_axiom(max_total):
    for db in (1, 2):
        for ds, ds2 in itertools.product((0, 1, 2), repeat=2):
            if db + ds + ds2 > max_total:
                continue
            for b in enumerate_family("M", db):
                for s in enumerate_family("Y", ds):
                    for s2 in enumerate_family("Y", ds2):
                        lhs = {}
                        for key, c in algebra.action_ysym(b, s).terms.items():
                            for k2, d in algebra.action_ysym(key, s2).terms.items():
                                lhs[k2] = lhs.get(k2, 0) + c * d
                        rhs = {}
                        for key, c in product_fund("Y", s, s2).terms.items():
                            for k2, d in algebra.action_ysym(b, key).terms.items():
                                rhs[k2] = rhs.get(k2, 0) + c * d
                        if lhs != rhs:
                            return False
    return True


def _coaction_coassociativity(max_degree):
    for n in range(1, max_degree + 1):
        for key in enumerate_family("M", n):
            lhs, rhs = {}, {}
            for (m, y), c in algebra.coaction(key).terms.items():
                for (m1, y1), d in algebra.coaction(m).terms.items():
                    lhs[(m1, y1, y)] = lhs.get((m1, y1, y), 0) + c * d
                for (y1, y2), d in algebra.coproduct_fund("Y", y).terms.items():
                    rhs[(m, y1, y2)] = rhs.get((m, y1, y2), 0) + c * d
            if lhs != rhs:
                return False
    return True


def _projection_respects_products(max_total):
    for dw in (1, 2, 3):
        for dw2 in (1, 2, 3):
            if dw + dw2 > max_total:
                continue
            for w in enumerate_family("S", dw):
                for w2 in enumerate_family("S", dw2):
                    image = {}
                    for key, c in product_fund("S", w, w2).terms.items():
                        k = beta_key(key)
                        image[k] = image.get(k, 0) + c
                    if image != product_msym(beta_key(w), beta_key(w2)).terms:
                        return False
    return True


def test_criterion_13_algebra_sanity():
    ok = _associativity("S", 5) and _associativity("Y", 5)
    ok &= _coassociativity("S", 5) and _coassociativity("Y", 5)
    ok &= _word_action_axiom(4) and _tree_action_axiom(4)
    ok &= _coaction_coassociativity(4)
    ok &= _projection_respects_products(4)
    report(13, "algebra axiom sweeps", ok)
