import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from samples import a_infb, g_ab_dollar, g_anbn, g_rl, pda_count, random_fsa, tm_right

from omegalang.automata import BLANK, OmegaPDA, validate
from omegalang.core import AcceptanceMode, DesignatedFamily, parse_lasso, six_modes
from omegalang.forms import to_dollar_boundary
from omegalang.grammars import make_grammar
from omegalang.oracle import (bounded_member, certificate_check, contradicts, enumerate_lassos,
                              fsa_lasso_member)
from omegalang.translate import (case5_restart_ok, cfg_nl_to_pda, cfg_to_pda, decode_fold_symbol,
                                 decode_track_symbol, fold_symbol, fsa_to_rlg, k_folded_version,
                                 mwtm_to_2tm, pda_to_cfg, psg_to_2tm, psg_to_pda_leftmost, rlg_to_fsa,
                                 sample_copier, tm_to_csg, track_alphabet_size, track_symbol,
                                 two_tape_to_one)

IC = AcceptanceMode("inf", "cap", "leftmost")


def agree(a, b, ma, mb, corpus, bound=200):
    for w in corpus:
        va, vb = bounded_member(a, w, ma, bound), bounded_member(b, w, mb, bound)
        assert not contradicts(va, vb), (w, va, vb)


# ------------------------------------------------------------ regular

def test_rlg_to_fsa_example():
    f = rlg_to_fsa(g_rl(), IC)
    assert len(f.states) == 3
    m = IC.with_pi("none")
    assert fsa_lasso_member(f, parse_lasso("(ab)^w"), m)
    assert not fsa_lasso_member(f, parse_lasso("(a)^w"), m)


def test_fsa_to_rlg_example():
    g = fsa_to_rlg(a_infb(), AcceptanceMode("inf", "cap"))
    assert len(g.productions) == 4
    assert all(len(p.rhs) == 2 and p.rhs[0] in "ab" for p in g.productions)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(six_modes()))
def test_fsa_to_rlg_matches_exact(seed, mode):
    a = random_fsa(random.Random(seed), max_states=3)
    g = fsa_to_rlg(a, mode)
    for w in enumerate_lassos("ab", 2, 2):
        v = bounded_member(g, w, mode.with_pi("leftmost"), 64)
        exact = fsa_lasso_member(a, w, mode)
        assert not (v.accepted and not exact) and not (v.rejected and exact), (w, v, exact)


# ------------------------------------------------------------ context-free

def test_cfg_to_pda_state_count():
    p = cfg_to_pda(g_anbn(), AcceptanceMode("inf", "eq", "leftmost"))
    assert len(p.states) == 1 + len(g_anbn().productions)
    assert validate(p) == []


def test_pda_to_cfg_nonterminal_count():
    d = pda_count()
    g = pda_to_cfg(d, AcceptanceMode("inf", "cap"))
    assert len(g.nonterminals) == 1 + len(d.states) ** 2 * len(d.stack_alphabet)


def test_pda_to_cfg_small_alphabet():
    d = OmegaPDA(["p", "r"], "a", ["Z"], [("p", "a", "Z", "r", ("Z",)), ("r", "a", "Z", "p", ("Z",))],
                 "p", "Z", DesignatedFamily(["p", "r"], [{"r"}]))
    g = pda_to_cfg(d, AcceptanceMode("inf", "cap"))
    assert len(g.nonterminals) == 5
    assert bounded_member(g, parse_lasso("(a)^w"), IC).accepted


def test_cfg_pda_examples():
    g = g_anbn()
    m = AcceptanceMode("inf", "eq", "leftmost")
    pda = cfg_to_pda(g, m)
    for text, want in [("(ab)^w", "Accepted"), ("aabb(ab)^w", "Accepted"),
                       ("aab(ab)^w", "Rejected"), ("b(ab)^w", "Rejected")]:
        w = parse_lasso(text)
        assert bounded_member(g, w, m).kind == want, text
        assert bounded_member(pda, w, m.with_pi("none")).kind == want, text


def test_psg_to_pda_leftmost_states():
    g = make_grammar([("p1", "AB", "aB")], start="A")
    p = psg_to_pda_leftmost(g, IC)
    assert "q[p1,A]" in p.states and "q[p1,AB]" in p.states


# ------------------------------------------------------------ non-leftmost CF

def test_cfg_nl_state_counts():
    g = g_anbn(family=({"p1", "p3"},))
    sub = cfg_nl_to_pda(g, AcceptanceMode("inf", "subseteq", "normal"))
    assert len(sub.states) == 1 + len(g.productions)
    assert len(cfg_nl_to_pda(g, AcceptanceMode("inf", "cap", "normal")).states) == 3
    assert len(cfg_nl_to_pda(g, AcceptanceMode("ran", "cap", "normal")).states) == 2


@pytest.mark.parametrize("mode", six_modes("normal"), ids=lambda m: m.short)
def test_cfg_nl_agrees(mode):
    g = g_anbn()
    p = cfg_nl_to_pda(g, mode)
    assert validate(p) == []
    agree(g, p, mode, mode.with_pi("none"), enumerate_lassos("ab", 2, 2), 400)


def test_case5_restart_logs():
    good = ["start", "[q1,{p1,p3},{}]", "[q1,{p1,p3},{p1}]", "[q1,{p1,p3},{p1,p3}]",
            "[qbar,{p1,p3}]", "[q1,{p1,p3},{}]"]
    assert case5_restart_ok([]) and case5_restart_ok(good)
    assert not case5_restart_ok(["[q1,{p1,p3},{}]", "[q1,{p1,p3},{p1}]", "[qbar,{p1,p3}]"])
    assert not case5_restart_ok(["[qbar,{p1}]"])
    assert not case5_restart_ok(["[q1,{p1},{}]", "[q1,{p1},{p1}]", "[q1,{p1},{}]#2"][:2] +
                                ["[q1,{p1},{p3}]"])


# ------------------------------------------------------------ Turing machines

def test_tm_to_csg_count():
    g = tm_to_csg(tm_right(), AcceptanceMode("inf", "cap", "normal"))
    assert len(g.productions) == 15
    assert all(len(p.rhs) >= len(p.lhs) for p in g.productions)


def test_tm_to_csg_agrees():
    tm = tm_right()
    m = AcceptanceMode("inf", "cap", "normal")
    g = tm_to_csg(tm, m)
    agree(tm, g, m.with_pi("none"), m, enumerate_lassos("ab", 1, 2), 400)


def test_psg_to_2tm_example():
    m = AcceptanceMode("inf", "cap", "normal")
    d = to_dollar_boundary(g_ab_dollar(), m)
    tm = psg_to_2tm(d, m)
    assert tm.tapes == 2 and validate(tm) == []
    agree(d, tm, m, m.with_pi("none"), enumerate_lassos("ab", 1, 2), 400)


@pytest.mark.parametrize("mode", six_modes("normal"), ids=lambda m: m.short)
def test_psg_to_2tm_accepts_with_certificate(mode):
    # S -> ā b̄ S inserts two cells per step; the machine must emit past $
    d = to_dollar_boundary(g_ab_dollar(), mode)
    v = bounded_member(psg_to_2tm(d, mode), parse_lasso("(ab)^w"), mode.with_pi("none"), 400)
    assert v.accepted and certificate_check(v.certificate)


def test_track_symbols_round_trip():
    s = track_symbol([("a", True), (BLANK, False)], left_end=True)
    assert decode_track_symbol(s, 2) == ((("a", True), (BLANK, False)), True)
    assert track_alphabet_size(3, 2) == 16
    assert track_alphabet_size(3, 3) == 4 ** 2 * 4 * 2


def test_mwtm_identity_for_two_tapes():
    tm = sample_copier(2)
    assert mwtm_to_2tm(tm) is tm


def test_mwtm_three_tapes():
    tm = sample_copier(3)
    t2 = mwtm_to_2tm(tm)
    assert t2.tapes == 2 and validate(t2) == []
    assert set(tm.states) <= set(t2.states)


# ------------------------------------------------------------ folding

def test_fold_examples():
    tape = list("abcdefgh")
    got = k_folded_version(tape, 3)
    assert got[:4] == [(BLANK, BLANK), (BLANK, BLANK), ("c", "b"), ("d", "a")]
    assert got[4:] == [(x, BLANK) for x in "efgh"]
    assert k_folded_version(list("abcd"), 2) == [(BLANK, BLANK), ("b", "a"), ("c", BLANK),
                                                  ("d", BLANK)]


def test_fold_brute_force():
    # every cell j >= k carries a_j on top; below, cell j mirrors 2k-j-1 for j < 2k-1
    for k in (2, 3, 4):
        for n in range(0, 7):
            for tape in itertools.product("ab", repeat=n):
                got = k_folded_version(tape, k)
                for j, (top, bot) in enumerate(got, 1):
                    a = lambda i: tape[i - 1] if 1 <= i <= n else BLANK
                    assert top == (a(j) if j >= k else BLANK)
                    assert bot == (a(2 * k - j - 1) if k <= j <= 2 * k - 2 else BLANK)


def test_fold_symbol_round_trip():
    s = fold_symbol("a", True, "b", False, BLANK, True, fs=True, le=True)
    assert decode_fold_symbol(s) == ("a", True, "b", False, BLANK, True, True, False, True)
    assert decode_fold_symbol("a") == ("a", False, BLANK, False, BLANK, False, False, False, False)


def test_two_tape_to_one_shape():
    one = two_tape_to_one(sample_copier(2))
    assert one.tapes == 1 and validate(one) == []
    assert set(sample_copier(2).states) <= set(one.states)
