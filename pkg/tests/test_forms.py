import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from samples import g_anbn, random_rlg

from omegalang.core import AcceptanceMode, RefusedError, six_modes
from omegalang.forms import (DOLLAR, cfg_epsilon_free, dollar_form_problems, has_no_epsilon,
                             is_separated, is_short_rlg, rlg_short_form, separate_terminals,
                             separation_image, to_dollar_boundary)
from omegalang.grammars import make_grammar
from omegalang.oracle import bounded_member, contradicts, enumerate_lassos


def rules(g):
    return {(p.label, " ".join(p.lhs), " ".join(p.rhs)) for p in g.productions}


def fs(*sets):
    return frozenset(frozenset(s) for s in sets)


def agree(g, h, modes, corpus, bound=200):
    for w in corpus:
        for m in modes:
            assert not contradicts(bounded_member(g, w, m, bound), bounded_member(h, w, m, bound)), (w, m)


# -------------------------------------------------------------- short form

def test_short_form_example():
    g = make_grammar([("p1", "S", "abS")], family=[{"p1"}])
    s = rlg_short_form(g)
    assert len(s.productions) == 2 and is_short_rlg(s)
    (l1, _, r1), (l2, _, r2) = sorted(rules(s))
    mid = r1.split()[1]
    assert r1 == f"a {mid}" and r2 == "b S"
    assert s.family.members == fs({l1, l2})


def test_short_form_terminal_only():
    s = rlg_short_form(make_grammar([("p1", "S", "ab")]))
    assert sorted(r for _, _, r in rules(s))[1] == "b"


def test_short_form_keeps_short_grammar():
    g = make_grammar([("p1", "S", "aS"), ("p2", "S", "b")], family=[{"p1"}])
    s = rlg_short_form(g)
    assert rules(s) == rules(g) and s.family == g.family


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 100_000))
def test_short_form_preserves_language(seed):
    g = random_rlg(random.Random(seed))
    s = rlg_short_form(g)
    assert is_short_rlg(s)
    agree(g, s, six_modes("leftmost"), enumerate_lassos("ab", 2, 2), 64)


# -------------------------------------------------------------- epsilon-free

def test_epsilon_free_example():
    g = make_grammar([("p1", "S", "AS"), ("p2", "A", ""), ("p3", "S", "a")], family=[{"p1", "p2"}])
    e = cfg_epsilon_free(g, AcceptanceMode("inf", "subseteq", "normal"))
    assert has_no_epsilon(e)
    assert {(" ".join(p.lhs), " ".join(p.rhs)) for p in e.productions} == {
        ("S", "A S"), ("S", "S"), ("S", "a")}
    assert len(e.productions) == 3


def test_epsilon_free_input_is_relabelled_only():
    g = g_anbn()
    e = cfg_epsilon_free(g, AcceptanceMode("inf", "eq", "normal"))
    assert sorted((p.lhs, p.rhs) for p in e.productions) == sorted((p.lhs, p.rhs) for p in g.productions)


@pytest.mark.parametrize("sigma, rho", [("ran", "cap"), ("ran", "eq")])
def test_epsilon_free_refusals(sigma, rho):
    g = make_grammar([("p1", "S", "AS"), ("p2", "A", "")], family=[{"p1"}])
    with pytest.raises(RefusedError, match="open problem"):
        cfg_epsilon_free(g, AcceptanceMode(sigma, rho, "leftmost"))


# -------------------------------------------------------------- separation

def test_separation_of_terminal_production():
    g = make_grammar([("p1", "S", "aS")], family=[{"p1"}], class_tag="PSG")
    s = separate_terminals(g)
    assert is_separated(s)
    img = separation_image(g)["p1"]
    assert len(img) == 2 and "p1" in img
    (new,) = img - {"p1"}
    helper = s.production(new)
    assert helper.rhs == ("a",) and s.production("p1").rhs == (helper.lhs[0], "S")


def test_separation_of_erasing_production():
    g = make_grammar([("p1", "AB", "")], start="A", family=[{"p1"}])
    s = separate_terminals(g)
    p1 = s.production("p1")
    assert len(p1.rhs) == 1 and p1.rhs[0] in s.nonterminals
    assert any(p.lhs == p1.rhs and p.rhs == () for p in s.productions)


def test_separation_leaves_nonterminal_productions():
    g = make_grammar([("p1", "AB", "BA")], start="A", family=[{"p1"}])
    assert separation_image(g)["p1"] == {"p1"}


# -------------------------------------------------------------- $-boundary

def test_dollar_example():
    g = make_grammar([("p1", "S", "aS"), ("p2", "S", "a")], family=[{"p1"}], class_tag="CSG")
    d = to_dollar_boundary(g, AcceptanceMode("inf", "cap", "normal"))
    r = {(" ".join(p.lhs), " ".join(p.rhs)) for p in d.productions}
    abar = next(x for x in d.nonterminals if x.startswith("a"))
    assert (d.start, f"{DOLLAR} S") in r
    assert ("S", f"{abar} S") in r
    assert (f"{DOLLAR} {abar}", f"a {DOLLAR}") in r
    assert d.family.members == g.family.members
    assert dollar_form_problems(d) == []


def test_dollar_inf_eq_family():
    g = make_grammar([("p1", "S", "aS"), ("p2", "S", "bS")], family=[{"p1"}], class_tag="CSG")
    d = to_dollar_boundary(g, AcceptanceMode("inf", "eq", "normal"))
    p4 = {p.label for p in d.productions if p.lhs[0] == DOLLAR}
    assert d.family.members == {frozenset({"p1"}) | h for h in
                                [frozenset(x) for x in ({"p_a"}, {"p_b"}, {"p_a", "p_b"})]}
    assert p4 == {"p_a", "p_b"}


@pytest.mark.parametrize("mode", six_modes("normal"), ids=lambda m: m.short)
def test_dollar_agrees(mode):
    g = make_grammar([("p1", "S", "abS")], family=[{"p1"}])
    d = to_dollar_boundary(g, mode)
    assert dollar_form_problems(d) == []
    agree(g, d, [mode], enumerate_lassos("ab", 2, 2))


def test_dollar_refuses_leftmost():
    with pytest.raises(RefusedError):
        to_dollar_boundary(g_anbn(), AcceptanceMode("inf", "cap", "leftmost"))
