from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from multicross.formulas import (
    CONJECTURED,
    FAMILIES,
    PROVED_ELSEWHERE,
    PROVED_IN_PAPER,
    best_lower_bound,
    euler_lower_bound,
    family_formula,
    get_family,
    known_bipartite_cr,
    match_family,
    zarankiewicz,
)
from multicross.graph import complete_multipartite

from oracles import closed_forms, floor_product


def test_zarankiewicz_examples():
    assert zarankiewicz(5, 5) == 16
    assert zarankiewicz(4, 4) == 4
    assert all(zarankiewicz(1, n) == 0 for n in range(1, 30))
    with pytest.raises(ValueError):
        zarankiewicz(0, 3)


def test_zarankiewicz_matches_oracle():
    for m in range(1, 21):
        for n in range(1, 21):
            assert zarankiewicz(m, n) == floor_product(m, n)


@given(st.integers(1, 50), st.integers(1, 50))
def test_zarankiewicz_symmetric(m, n):
    assert zarankiewicz(m, n) == zarankiewicz(n, m)


@given(st.integers(1, 50), st.integers(2, 50))
def test_zarankiewicz_recurrence(m, n):
    assert zarankiewicz(m, n) - zarankiewicz(m, n - 1) == (m // 2) * ((m - 1) // 2) * ((n - 1) // 2)


def test_known_bipartite():
    e = known_bipartite_cr(5, 3)
    assert e.value == 4 and e.status == PROVED_ELSEWHERE
    assert known_bipartite_cr(6, 6).value == 36
    assert known_bipartite_cr(7, 7) is None
    assert known_bipartite_cr(7, 9) is None
    assert known_bipartite_cr(9, 6).value == zarankiewicz(9, 6)


def test_family_examples():
    e = family_formula("K1111n", 4)
    assert (e.value, e.status) == (8, PROVED_IN_PAPER)
    assert family_formula("K122n", 2).value == 3
    e = family_formula("K24n", 3)
    assert (e.value, e.status, e.conjectural) == (12, CONJECTURED, True)
    with pytest.raises(ValueError):
        family_formula("K9n", 2)
    with pytest.raises(ValueError):
        family_formula("K13n", 0)


def test_statuses():
    conj = {c for c, f in FAMILIES.items() if f.status == CONJECTURED}
    assert conj == {"K113n", "K24n"}
    for c in ("K1111n", "K122n", "K1112n", "K14n", "K13n"):
        assert FAMILIES[c].status == PROVED_IN_PAPER
    assert FAMILIES["K23n"].status == PROVED_ELSEWHERE


@pytest.mark.parametrize("code", ["K1111n", "K122n", "K1112n", "K14n", "K13n", "K23n", "K113n", "K24n"])
def test_closed_forms_match_oracle(code):
    for n in range(1, 51):
        assert family_formula(code, n).value == closed_forms(code, n)


@pytest.mark.parametrize("code", list(FAMILIES))
def test_monotone_in_n(code):
    vals = [family_formula(code, n).value for n in range(1, 51)]
    assert all(v >= 0 for v in vals)
    assert vals == sorted(vals)


def test_euler_examples():
    assert euler_lower_bound(complete_multipartite([1] * 5)) == 1
    k33 = complete_multipartite([3, 3])
    # the general bound max(0, 9 - 18 + 6) is 0; the bipartite one gives 9 - 12 + 4 = 1
    assert max(0, 9 - 18 + 6) == 0 and euler_lower_bound(k33) == 1
    assert euler_lower_bound(complete_multipartite([1] * 4)) == 0


def test_best_lower_bound_examples():
    assert best_lower_bound(complete_multipartite([1, 2, 2, 3])) >= 4
    assert best_lower_bound(complete_multipartite([1, 1, 1, 1, 2])) == 2
    assert best_lower_bound(complete_multipartite([2, 3])) == 0


def test_lower_bound_skips_merges_for_subgraphs():
    g = complete_multipartite([1, 2, 2, 3])
    h = g.without_edges([g.edges[0]])
    assert best_lower_bound(h) == euler_lower_bound(h)


@pytest.mark.parametrize("code", list(FAMILIES))
def test_lower_bound_below_formula(code):
    fam = get_family(code)
    for n in range(1, 13):
        assert best_lower_bound(fam.graph(n)) <= fam.value(n)


def test_match_family():
    g = complete_multipartite([2, 1, 2, 5])
    e = match_family(g)
    assert (e.family, e.n, e.value) == ("K122n", 5, family_formula("K122n", 5).value)
    assert match_family(complete_multipartite([3, 3, 3, 3])) is None
