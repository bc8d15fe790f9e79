import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegalang.core import (AcceptanceMode, DesignatedFamily, LassoWord, OccurrenceProfile,
                            OmegaError, SetConstraint, ValidationError, format_lasso,
                            lasso_normalize, parse_lasso, profile_of, satisfies, six_modes)


def expand(w: LassoWord, n: int) -> tuple:
    out = list(w.stem)
    while len(out) < n:
        out += w.loop
    return tuple(out[:n])


# -------------------------------------------------------------- profiles

@pytest.mark.parametrize("prefix, cycle, ran, inf", [
    (["p1"], ["p2", "p3"], {"p1", "p2", "p3"}, {"p2", "p3"}),
    ([], ["q0"], {"q0"}, {"q0"}),
    (["a", "b", "a"], ["b"], {"a", "b"}, {"b"}),
])
def test_profile_of(prefix, cycle, ran, inf):
    p = profile_of(prefix, cycle)
    assert p.ran == frozenset(ran)
    assert p.inf == frozenset(inf)


def test_profile_of_empty_cycle():
    with pytest.raises(OmegaError, match="non-eventually-infinite"):
        profile_of(["a"], [])


@pytest.mark.parametrize("mode, prof, fam, want", [
    (("inf", "cap"), ({"q1"}, {"q1"}), [{"q1"}], True),
    (("ran", "eq"), ({"p1"}, {"p1"}), [{"p1", "p2"}], False),
    (("inf", "subseteq"), ({"q1"}, {"q1"}), [{"q1", "q2"}], True),
])
def test_satisfies_examples(mode, prof, fam, want):
    universe = set().union(*fam) | prof[0]
    got = satisfies(AcceptanceMode(*mode), OccurrenceProfile(*prof), DesignatedFamily(universe, fam))
    assert got is want


def test_empty_family_accepts_nothing():
    p = OccurrenceProfile({"a"}, {"a"})
    assert not any(satisfies(m, p, DesignatedFamily({"a"}, [])) for m in six_modes())


# -------------------------------------------------------------- set blocks

small_sets = st.frozensets(st.sampled_from("abcde"), max_size=5)


@given(small_sets, small_sets, st.lists(small_sets, max_size=3), small_sets)
def test_constraint_contains_matches_enumeration(lower, upper, hits, probe):
    c = SetConstraint(lower, upper, hits)
    members = set(c.enumerate())
    assert c.contains(probe) == (probe in members)
    assert c.nonempty() == bool(members)


@given(st.lists(small_sets, max_size=3), st.lists(st.tuples(small_sets, small_sets), max_size=2),
       small_sets, st.sampled_from(six_modes()))
def test_family_with_blocks_agrees_with_listing(explicit, blocks, s, mode):
    cons = [SetConstraint(lo, lo | up) for lo, up in blocks]
    fam = DesignatedFamily("abcde", explicit, cons)
    listed = DesignatedFamily("abcde", fam.members)
    prof = OccurrenceProfile(s, s)
    assert satisfies(mode, prof, fam) == satisfies(mode, prof, listed)


# -------------------------------------------------------------- lassos

@pytest.mark.parametrize("u, v, nu, nv", [
    ("ab", "abab", "", "ab"),
    ("", "a", "", "a"),
    ("aab", "ab", "a", "ab"),
    # aab(ba)^w = aabbab... is already canonical; it is not a(ab)^w = aabab...
    ("aab", "ba", "aab", "ba"),
])
def test_lasso_normalize_examples(u, v, nu, nv):
    w = lasso_normalize(LassoWord(tuple(u), tuple(v)))
    assert (w.stem, w.loop) == (tuple(nu), tuple(nv))
    assert expand(w, 12) == expand(LassoWord(tuple(u), tuple(v)), 12)


lasso_parts = st.tuples(st.text("ab", max_size=4), st.text("ab", min_size=1, max_size=4))


@given(lasso_parts)
def test_normalize_preserves_the_word(parts):
    w = LassoWord(tuple(parts[0]), tuple(parts[1]))
    n = lasso_normalize(w)
    assert expand(n, 40) == expand(w, 40)
    assert lasso_normalize(n) == n
    assert len(n.loop) <= len(w.loop) and len(n.stem) <= len(w.stem)


@given(lasso_parts, lasso_parts)
def test_normalize_is_canonical(p1, p2):
    w1 = LassoWord(tuple(p1[0]), tuple(p1[1]))
    w2 = LassoWord(tuple(p2[0]), tuple(p2[1]))
    # two lassos with stems and loops this short agree everywhere iff they agree on 40 symbols
    same = expand(w1, 40) == expand(w2, 40)
    assert same == (lasso_normalize(w1) == lasso_normalize(w2))


@given(lasso_parts)
def test_format_parse_round_trip(parts):
    w = LassoWord(tuple(parts[0]), tuple(parts[1]))
    assert parse_lasso(format_lasso(w)) == w


def test_parse_multi_and_errors():
    w = parse_lasso("x y (z)^w", multi=True)
    assert w.stem == ("x", "y") and w.loop == ("z",)
    for bad in ("ab", "a()^w", "(a"):
        with pytest.raises(ValidationError):
            parse_lasso(bad)


def test_modes():
    assert len(six_modes()) == 6
    assert AcceptanceMode("inf", "eq", "leftmost").short == "inf eq l"
    with pytest.raises(ValidationError):
        AcceptanceMode("sometimes", "cap")


def test_family_members_listing():
    fam = DesignatedFamily("abc", [{"a"}], [SetConstraint({"b"}, {"b", "c"})])
    assert fam.members == frozenset(map(frozenset, [{"a"}, {"b"}, {"b", "c"}]))
    assert fam.contains({"b", "c"}) and not fam.contains({"c"})
