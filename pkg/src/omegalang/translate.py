"""Translations between omega-grammars and omega-automata, and between machines.

Every translation returns the target device together with a designated
family rebuilt for the requested acceptance mode, so that the
(sigma, rho)-language of the target equals the (sigma, rho, pi)-language
of the source.  Families stay in block form whenever listing them would
blow up.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from typing import Callable, Iterable

from .automata import BLANK, EPS, OmegaFSA, OmegaPDA, OmegaTM, fresh_name
from .core import (AcceptanceMode, DesignatedFamily, RefusedError, ResourceError,
                   SetConstraint, ValidationError)
from .forms import (_separate, is_short_rlg, rlg_short_form, to_dollar_boundary,
                    DOLLAR)
from .grammars import Analysis, OmegaGrammar, Production, classify, var_to_prod_family

CASE5_MAX_F = 4

PROVENANCE = {
    "thm6.1": "rlg_to_fsa (right-linear grammar to finite automaton)",
    "thm6.1r": "fsa_to_rlg (finite automaton to right-linear grammar)",
    "thm6.2": "cfg_to_pda (leftmost context-free grammar to pushdown automaton)",
    "thm6.2r": "pda_to_cfg (pushdown automaton to context-free grammar, triple construction)",
    "thm6.3": "psg_to_pda_leftmost (leftmost phrase-structure grammar to pushdown automaton)",
    "thm7.2": "cfg_nl_to_pda (non-leftmost context-free grammar to pushdown automaton)",
    "lem-tm-csg": "tm_to_csg (Turing machine to context-sensitive grammar)",
    "lem-psg-2tm": "psg_to_2tm (phrase-structure grammar to two-tape Turing machine)",
    "fold": "two_tape_to_one (relative folding of the second tape)",
}


# ----------------------------------------------------------------- helpers

def _prod_kind(g: OmegaGrammar) -> OmegaGrammar:
    return var_to_prod_family(g) if g.repetition == "variable" else g


def _union(sets) -> frozenset:
    out = set()
    for s in sets:
        out |= s
    return frozenset(out)


def _family(fam: DesignatedFamily, rho: str, universe, up: Callable,
            hit: Callable | None = None, extra=(), must=(), must_groups=()) -> DesignatedFamily:
    """Rebuild ``fam`` over a new universe.

    ``up(x)`` is the set of target elements that may occur because ``x``
    occurs, ``hit(x)`` the set of which at least one occurs exactly when
    ``x`` does.  ``extra`` are bookkeeping elements that may occur in any
    run, ``must`` those occurring in every run, ``must_groups`` groups of
    which every run hits at least one element.
    """
    hit = hit or up
    extra, must = frozenset(extra), frozenset(must)
    explicit, blocks = [], []
    for c in fam.blocks():
        upper = _union(up(x) for x in c.upper)
        if rho == "cap":
            explicit.append(_union(hit(x) for x in c.upper))
            continue
        if rho == "subseteq":
            explicit.append(upper | extra | must)
            continue
        groups = [_union(hit(x) for x in [y]) for y in c.lower]
        groups += [_union(hit(x) for x in h) for h in c.hits]
        groups += [frozenset(g) for g in must_groups]
        lower = set(must)
        rest = []
        for g in groups:
            if len(g) == 1:
                lower |= g
            else:
                rest.append(g)
        blk = SetConstraint(lower, upper | extra | must, rest)
        if not blk.nonempty():
            continue
        if blk.lower == blk.upper:
            explicit.append(blk.lower)
        else:
            blocks.append(blk)
    return DesignatedFamily(universe, explicit, blocks)


def _state_names(labels, reserved) -> dict:
    """q_k for production p_k; falls back to q_<label>."""
    taken = set(reserved)
    out = {}
    for lbl in labels:
        base = "q" + lbl[1:] if re.fullmatch(r"p\w+", lbl) else f"q_{lbl}"
        name = base if base not in taken else fresh_name(base, taken)
        taken.add(name)
        out[lbl] = name
    return out


def _need_pi(mode: AcceptanceMode, pi: str, what: str):
    if mode.pi != pi:
        raise RefusedError(f"{what} needs derivation policy {pi}, got {mode.pi}")


# ------------------------------------------------------------- RLG <-> FSA

def rlg_to_fsa(g: OmegaGrammar, mode: AcceptanceMode) -> OmegaFSA:
    """State q_k remembers that p_k was the production just applied."""
    if g.class_tag != "RLG" and classify(g) != "RLG":
        raise ValidationError("rlg_to_fsa needs a right-linear grammar")
    g = _prod_kind(g)
    if not is_short_rlg(g):
        g = rlg_short_form(g)
    N = set(g.nonterminals)
    q0 = "q0"
    names = _state_names(g.labels, {q0})
    by_head = g.by_head()
    trans = [(q0, EPS, names[p.label]) for p in by_head.get(g.start, ())]
    for p in g.productions:
        if not p.rhs or p.rhs[-1] not in N:
            continue
        a = p.rhs[0] if len(p.rhs) == 2 else EPS
        for n in by_head.get(p.rhs[-1], ()):
            trans.append((names[p.label], a, names[n.label]))
    states = [q0] + [names[l] for l in g.labels]
    ran_extra = (q0,) if mode.sigma == "ran" else ()
    fam = _family(g.family, mode.rho, states, lambda x: {names[x]},
                  extra=ran_extra if mode.rho == "subseteq" else (),
                  must=ran_extra if mode.rho == "eq" else ())
    return OmegaFSA(states, g.terminals, trans, q0, fam, name=g.name)


def fsa_to_rlg(fsa: OmegaFSA, mode: AcceptanceMode) -> OmegaGrammar:
    """One nonterminal per state and one production per transition."""
    taken = set(fsa.alphabet)
    nt = {}
    for q in fsa.states:
        name = f"S_{q}"
        while name in taken:
            name += "'"
        taken.add(name)
        nt[q] = name
    prods, leaving = [], {q: set() for q in fsa.states}
    for src, a, dst in fsa.transitions:
        label = f"p[{src},{a or 'eps'},{dst}]"
        prods.append(Production(label, (nt[src],), ((a,) if a else ()) + (nt[dst],)))
        leaving[src].add(label)
    fam = _family(fsa.family, mode.rho, [p.label for p in prods],
                  lambda q: leaving[q])
    return OmegaGrammar([nt[q] for q in fsa.states], fsa.alphabet, prods, nt[fsa.start],
                        fam, "production", "RLG", fsa.name)


# ------------------------------------------------------------- CFG <-> PDA

def cfg_to_pda(g: OmegaGrammar, mode: AcceptanceMode) -> OmegaPDA:
    """The automaton runs the leftmost derivation on its stack."""
    if mode.pi == "normal":
        raise RefusedError("cfg_to_pda simulates leftmost derivations; "
                           "use cfg_nl_to_pda for pi = normal")
    _need_pi(mode, "leftmost", "cfg_to_pda")
    if g.class_tag not in ("RLG", "CFG"):
        raise ValidationError("cfg_to_pda needs a context-free grammar")
    g = _prod_kind(g)
    q0 = "q0"
    names = _state_names(g.labels, {q0} | set(g.nonterminals) | set(g.terminals))
    trans = [(q0, a, a, q0, ()) for a in g.terminals]
    for p in g.productions:
        trans.append((q0, EPS, p.head, names[p.label], (p.head,)))
        trans.append((names[p.label], EPS, p.head, q0, p.rhs))
    states = [q0] + [names[l] for l in g.labels]
    fam = _family(g.family, mode.rho, states, lambda x: {names[x]},
                  extra=(q0,) if mode.rho == "subseteq" else (),
                  must=(q0,) if mode.rho == "eq" else ())
    gamma = tuple(g.nonterminals) + tuple(g.terminals)
    return OmegaPDA(states, g.terminals, gamma, trans, q0, g.start, fam, name=g.name)


def pda_to_cfg(pda: OmegaPDA, mode: AcceptanceMode) -> OmegaGrammar:
    """Triple construction: [q,B,r] derives what pops B while going from q to r."""
    Q = list(pda.states)
    taken = set(pda.alphabet)

    def trip(q, B, r):
        return f"[{q},{B},{r}]"

    S = "S" if "S" not in taken else fresh_name("S", taken)
    nts = [S] + [trip(q, B, r) for q in Q for B in pda.stack_alphabet for r in Q]
    prods, Ps, by_state = [], set(), {q: set() for q in Q}
    for r in Q:
        label = f"ps[{r}]"
        prods.append(Production(label, (S,), (trip(pda.start, pda.start_stack, r),)))
        Ps.add(label)
    for n, (q, a, B, q1, push) in enumerate(pda.transitions, start=1):
        term = (a,) if a else ()
        if not push:
            label = f"p{n}"
            prods.append(Production(label, (trip(q, B, q1),), term))
            by_state[q].add(label)
            continue
        for ends in itertools.product(Q, repeat=len(push)):
            chain, cur = [], q1
            for Bi, e in zip(push, ends):
                chain.append(trip(cur, Bi, e))
                cur = e
            label = f"p{n}[{','.join(ends)}]"
            prods.append(Production(label, (trip(q, B, ends[-1]),), term + tuple(chain)))
            by_state[q].add(label)
    key = (mode.sigma, mode.rho)
    extra, groups = (), ()
    if key == ("ran", "subseteq"):
        extra = Ps
    elif key == ("ran", "eq"):
        extra, groups = Ps, (Ps,)
    fam = _family(pda.family, mode.rho, [p.label for p in prods], lambda q: by_state[q],
                  extra=extra, must_groups=groups)
    return OmegaGrammar(nts, pda.alphabet, prods, S, fam, "production", "CFG", pda.name)


# ------------------------------------------------------ PSG (leftmost) -> PDA

def psg_to_pda_leftmost(g: OmegaGrammar, mode: AcceptanceMode) -> OmegaPDA:
    """Pop a guessed left-hand side symbol by symbol, then push the right-hand side."""
    _need_pi(mode, "leftmost", "psg_to_pda_leftmost")
    g = _prod_kind(g)
    taken = set(g.nonterminals) | set(g.terminals)
    Z0 = "Z0" if "Z0" not in taken else fresh_name("Z0", taken)
    gamma = tuple(g.nonterminals) + tuple(g.terminals) + (Z0,)
    qs, q0 = "q0'", "q0"

    def pref(p, k):
        return f"q[{p.label},{''.join(p.lhs[:k]) if all(len(x) == 1 for x in p.lhs) else '.'.join(p.lhs[:k])}]"

    trans = [(qs, EPS, Z0, q0, (g.start, Z0))]
    trans += [(q0, a, a, q0, ()) for a in g.terminals]
    states = [qs, q0]
    Qi, full = {}, {}
    for p in g.productions:
        chain = [pref(p, k) for k in range(1, len(p.lhs) + 1)]
        Qi[p.label] = set(chain)
        full[p.label] = chain[-1]
        states += [s for s in chain if s not in states]
        trans.append((q0, EPS, p.lhs[0], chain[0], ()))
        for k in range(1, len(p.lhs)):
            trans.append((chain[k - 1], EPS, p.lhs[k], chain[k], ()))
        for X in gamma:
            trans.append((chain[-1], EPS, X, q0, p.rhs + (X,)))
    key = (mode.sigma, mode.rho)
    if key in (("ran", "subseteq"), ("ran", "eq")):
        base = (qs, q0)
    elif key in (("inf", "subseteq"), ("inf", "eq")):
        base = (q0,)
    else:
        base = ()
    fam = _family(g.family, mode.rho, states, lambda x: Qi[x], hit=lambda x: {full[x]},
                  extra=base if mode.rho == "subseteq" else (),
                  must=base if mode.rho == "eq" else ())
    return OmegaPDA(states, g.terminals, gamma, trans, qs, Z0, fam, name=g.name)


# ------------------------------------------------- CFG (non-leftmost) -> PDA

def _fmt(s) -> str:
    return "{" + ",".join(sorted(map(str, s))) + "}"


def _fmt_family(h) -> str:
    return "{" + "".join(_fmt(k) for k in sorted(h, key=lambda k: (len(k), sorted(k)))) + "}"


def _ordered(sets) -> list:
    """Sets in a fixed order, so that state discovery is reproducible."""
    return sorted(sets, key=lambda k: (len(k), sorted(map(str, k))))


def _nl_normal(g: OmegaGrammar) -> OmegaGrammar:
    """Productions A -> beta (beta non-empty over N) or A -> a / A -> eps."""
    if g.class_tag not in ("RLG", "CFG"):
        raise ValidationError("cfg_nl_to_pda needs a context-free grammar")
    return _separate(_prod_kind(g), "CFG", keep_unit=True)[0]


class _Builder:
    """Accumulates PDA transitions over states discovered on the fly."""

    def __init__(self, start):
        self.states = [start]
        self.seen = {start}
        self.trans = []
        self.todo = [start]

    def add(self, q, a, top, r, push):
        self.trans.append((q, a, top, r, tuple(push)))
        if r not in self.seen:
            self.seen.add(r)
            self.states.append(r)
            self.todo.append(r)


def _splits(prods, N):
    """(p, gamma1, gamma2) for every cut of a right-hand side over N into two non-empty parts."""
    for p in prods:
        if len(p.rhs) >= 2 and all(x in N for x in p.rhs):
            for k in range(1, len(p.rhs)):
                yield p, p.rhs[:k], p.rhs[k:]


def _case_cap(g, F, an, Z, sigma):
    """Cases (inf, cap) and (ran, cap): a small counter remembers recent F-productions."""
    N = set(g.nonterminals)
    levels = (0, 1, 2) if sigma == "inf" else (0, 1)

    def f(i, p):
        if sigma == "ran":
            return 1 if i == 1 or p.label in F else 0
        if i == 2:
            return 2
        return 1 if i == 0 and p.label in F else 0

    def st(i):
        return f"[q0,{i}]"

    b = _Builder(st(0))
    for i in levels:
        for p in g.productions:
            if len(p.rhs) == 1 and p.rhs[0] not in N or not p.rhs:
                b.add(st(i), p.rhs[0] if p.rhs else EPS, p.head, st(f(i, p)), ())
            else:
                b.add(st(i), EPS, p.head, st(f(i, p)), p.rhs)
        for p, g1, g2 in _splits(g.productions, N):
            if sigma == "inf" and any(K & F for K in an.sp(g2)):
                b.add(st(i), EPS, p.head, st(2), g1 + (Z,))
            if any(K & F for K in an.tr(g2)):
                b.add(st(i), EPS, p.head, st(1), g1 + (Z,))
    for i in levels:
        if st(i) not in b.seen:
            b.seen.add(st(i))
            b.states.append(st(i))
    good = [st(1), st(2)] if sigma == "inf" else [st(1)]
    return b, [SetConstraint(good, good)] if sigma == "ran" else [SetConstraint((), good, [good])]


def _case_inf_eq(g, F, an, Z):
    """Case (inf, eq): guess the unreached contribution, then cycle through restarts."""
    N = set(g.nonterminals)
    F = frozenset(F)
    sp_f = {g2: frozenset(K for K in an.sp(g2) if K <= F)
            for _, _, g2 in _splits(g.productions, N)}

    def s0(H):
        return f"[q0,{_fmt_family(H)}]"

    def s1(K, H):
        return f"[q1,{_fmt(K)},{_fmt(H)}]"

    def sb(K):
        return f"[qbar,{_fmt(K)}]"

    start_h = frozenset({frozenset()})
    b = _Builder(s0(start_h))
    kinds = {s0(start_h): ("q0", start_h)}
    while b.todo:
        name = b.todo.pop()
        tag, *args = kinds[name]

        def go(q, a, top, target, push, kind):
            kinds.setdefault(target, kind)
            b.add(q, a, top, target, push)

        if tag == "q0":
            H = args[0]
            for p in g.productions:
                unit = not p.rhs or len(p.rhs) == 1 and p.rhs[0] not in N
                go(name, (p.rhs[0] if p.rhs else EPS) if unit else EPS, p.head, name,
                   () if unit else p.rhs, ("q0", H))
            for p, g1, g2 in _splits(g.productions, N):
                if sp_f[g2]:
                    H1 = frozenset(K1 | K2 for K1 in H for K2 in sp_f[g2])
                    go(name, EPS, p.head, s0(H1), g1 + (Z,), ("q0", H1))
            for K in _ordered(H):
                for A in g.nonterminals:
                    go(name, EPS, A, s1(F - K, frozenset()), (A,), ("q1", F - K, frozenset()))
        elif tag == "q1":
            K, H = args
            for p in g.productions:
                if p.label not in F:
                    continue
                H2 = H | {p.label}
                unit = not p.rhs or len(p.rhs) == 1 and p.rhs[0] not in N
                go(name, (p.rhs[0] if p.rhs else EPS) if unit else EPS, p.head, s1(K, H2),
                   () if unit else p.rhs, ("q1", K, H2))
            for p, g1, g2 in _splits(g.productions, N):
                if p.label not in F:
                    continue
                for H1 in _ordered(an.tr1(g2, F)):
                    H2 = H | H1 | {p.label}
                    go(name, EPS, p.head, s1(K, H2), g1 + (Z,), ("q1", K, H2))
            if K <= H:
                for A in g.nonterminals:
                    go(name, EPS, A, sb(K), (A,), ("qbar", K))
        else:
            K = args[0]
            for A in g.nonterminals:
                go(name, EPS, A, s1(K, frozenset()), (A,), ("q1", K, frozenset()))
    bars = [q for q in b.states if kinds[q][0] == "qbar"]
    return b, [SetConstraint((), b.states, [bars])] if bars else []


def _case_ran_eq(g, U, targets, an, Z):
    """Case (ran, eq): only productions of U, the state collects what has been used.

    ``targets`` are the designated sets sharing the production pool ``U``.
    """
    N = set(g.nonterminals)
    U = frozenset(U)

    def st(H):
        return f"[q0,{_fmt(H)}]"

    b = _Builder(st(frozenset()))
    sets = {st(frozenset()): frozenset()}
    while b.todo:
        name = b.todo.pop()
        H = sets[name]
        for p in g.productions:
            if p.label not in U:
                continue
            H2 = H | {p.label}
            sets.setdefault(st(H2), H2)
            unit = not p.rhs or len(p.rhs) == 1 and p.rhs[0] not in N
            b.add(name, (p.rhs[0] if p.rhs else EPS) if unit else EPS, p.head, st(H2),
                  () if unit else p.rhs)
        for p, g1, g2 in _splits(g.productions, N):
            if p.label not in U:
                continue
            for K in _ordered(an.tr1(g2, U)):
                H2 = H | K | {p.label}
                sets.setdefault(st(H2), H2)
                b.add(name, EPS, p.head, st(H2), g1 + (Z,))
    blocks = []
    for F in targets:
        if st(F) in b.seen:
            below = [q for q in b.states if sets[q] <= F]
            blocks.append(SetConstraint([st(F)], below))
    return b, blocks


def cfg_nl_to_pda(g: OmegaGrammar, mode: AcceptanceMode, max_f: int = CASE5_MAX_F,
                  tr_empty: bool = True) -> OmegaPDA:
    """Pushdown automaton for the (sigma, rho, normal)-language of a CFG.

    The automaton runs the reached part of a derivation leftmost on its
    stack and accounts for the unreached parts (suffixes that are never
    rewritten into terminals) through the SP / TR analyses.
    """
    if mode.pi == "leftmost":
        raise RefusedError("cfg_nl_to_pda is for pi = normal; use cfg_to_pda for leftmost")
    key = (mode.sigma, mode.rho)
    if mode.rho == "subseteq":
        pda = cfg_to_pda(g, mode.with_pi("leftmost"))
        return pda
    gn = _nl_normal(g)
    an = Analysis(gn, tr_empty=tr_empty)
    N = set(gn.nonterminals)
    taken = N | set(gn.terminals)
    Z = "Z" if "Z" not in taken else fresh_name("Z", taken)
    gamma = tuple(gn.nonterminals) + (Z,)
    if key == ("inf", "eq"):
        g0 = _prod_kind(g)
        for F in g0.family.sorted_members():
            if len(F) > max_f:
                raise ResourceError(f"case (inf, eq) needs |F| <= {max_f}, got |F| = {len(F)}")
    machines = []
    if mode.rho == "cap":
        for U in sorted({c.upper for c in gn.family.blocks()}, key=_fmt):
            machines.append(_case_cap(gn, U, an, Z, mode.sigma))
    elif key == ("ran", "eq"):
        for c in sorted(gn.family.blocks(), key=lambda c: (_fmt(c.upper), _fmt(c.lower))):
            machines.append(_case_ran_eq(gn, c.upper, sorted(c.enumerate(), key=_fmt), an, Z))
    else:
        for F in gn.family.sorted_members():
            machines.append(_case_inf_eq(gn, F, an, Z))
    if not machines:
        machines.append((_Builder("[q0]"), []))
    if len(machines) == 1:
        b, blocks = machines[0]
        fam = DesignatedFamily(b.states, (), blocks)
        return OmegaPDA(b.states, gn.terminals, gamma, b.trans, b.states[0], gn.start, fam,
                        name=g.name)
    # union over the members of the family: an epsilon-dispatch start state
    start = "start"
    states, trans, blocks = [start], [], []
    for k, (b, blks) in enumerate(machines, start=1):
        ren = {q: f"{q}#{k}" for q in b.states}
        states += [ren[q] for q in b.states]
        trans.append((start, EPS, gn.start, ren[b.states[0]], (gn.start,)))
        trans += [(ren[q], a, z, ren[r], push) for q, a, z, r, push in b.trans]
        for c in blks:
            lower = {ren[x] for x in c.lower}
            upper = {ren[x] for x in c.upper}
            if mode.sigma == "ran" and mode.rho != "cap":
                lower.add(start)
                upper.add(start)
            blocks.append(SetConstraint(lower, upper, [{ren[x] for x in h} for h in c.hits]))
    fam = DesignatedFamily(states, (), blocks)
    return OmegaPDA(states, gn.terminals, gamma, trans, start, gn.start, fam, name=g.name)


_CASE5 = re.compile(r"^\[(q1|qbar),(\{[^{}]*\})(?:,(\{[^{}]*\}))?\](?:#\d+)?$")


def _parse_set(text: str) -> frozenset:
    body = text.strip()[1:-1]
    return frozenset(x for x in body.split(",") if x)


def case5_restart_ok(states: Iterable) -> bool:
    """Check a run log of a case (inf, eq) automaton.

    Every entry into ``[qbar,K]`` must come after the production sets
    accumulated since the last ``[q1,K,{}]`` cover ``K``.
    """
    acc = None
    for q in states:
        m = _CASE5.match(str(q))
        if not m:
            continue
        K = _parse_set(m.group(2))
        if m.group(1) == "q1":
            H = _parse_set(m.group(3))
            if not H:
                acc = set()
            if acc is None or not acc <= H:
                return False
            acc = set(H)
        else:
            if acc is None or not K <= acc:
                return False
            acc = None
    return True


# ---------------------------------------------------------------- TM -> CSG

def tm_to_csg(tm: OmegaTM, mode: AcceptanceMode) -> OmegaGrammar:
    """Grammar whose forms are ``w $ <cells with the head state inside> S1``.

    Cells ``[a,A]`` carry the input symbol ``a`` and the current tape symbol
    ``A``; ``$`` releases the input symbol of a cell as a terminal once the
    machine has moved past it.
    """
    if tm.tapes != 1:
        raise ValidationError("tm_to_csg needs a single-tape machine (fold it first)")
    sigma = list(tm.alphabet)
    # a first-tape cell only ever holds an input symbol or a symbol some
    # transition reads or writes
    used = set(sigma)
    for _, (A,), _, (C,), _ in tm.transitions:
        used |= {A, C}
    gamma = [x for x in tm.tape_alphabet if x in used]
    Q = list(tm.states)
    taken = set(sigma) | set(Q)

    def fresh(base):
        name = base if base not in taken else fresh_name(base, taken)
        taken.add(name)
        return name

    S, S1, D = fresh("S"), fresh("S1"), fresh(DOLLAR)

    def cell(a, A):
        return f"[{a},{A}]"

    cells = [cell(a, A) for a in sigma for A in gamma]
    groups = {i: [] for i in range(1, 7)}
    state_prods = {q: set() for q in Q}
    prods = []

    def add(group, lhs, rhs, q=None):
        label = f"p{group}.{len(groups[group]) + 1}"
        groups[group].append(label)
        prods.append(Production(label, lhs, rhs))
        if q is not None:
            state_prods[q].add(label)

    add(1, (S,), (D, tm.start, S1))
    for a in sigma:
        add(2, (S1,), (cell(a, a), S1))
    for q, (A,), p, (C,), (mv,) in tm.transitions:
        if mv == "R":
            for a in sigma:
                add(3, (q, cell(a, A)), (cell(a, C), p), q)
    for q, (A,), p, (C,), (mv,) in tm.transitions:
        if mv == "L":
            for a in sigma:
                for b in sigma:
                    for B in gamma:
                        add(4, (cell(b, B), q, cell(a, A)), (p, cell(b, B), cell(a, C)), q)
    for q, (A,), p, (C,), (mv,) in tm.transitions:
        if mv == "S":
            for a in sigma:
                add(5, (q, cell(a, A)), (p, cell(a, C)), q)
    for a in sigma:
        for A in gamma:
            add(6, (D, cell(a, A)), (a, D))
    P1, P2, P6 = (frozenset(groups[i]) for i in (1, 2, 6))
    key = (mode.sigma, mode.rho)
    if key == ("ran", "subseteq"):
        extra, groups_ = P1 | P2 | P6, ()
    elif key == ("inf", "subseteq"):
        extra, groups_ = P2 | P6, ()
    elif key == ("ran", "eq"):
        extra, groups_ = P1 | P2 | P6, (P1, P2, P6)
    elif key == ("inf", "eq"):
        extra, groups_ = P2 | P6, (P2, P6)
    else:
        extra, groups_ = frozenset(), ()
    fam = _family(tm.family, mode.rho, [p.label for p in prods],
                  lambda q: state_prods[q], extra=extra, must_groups=groups_)
    nts = [S, S1, D] + Q + cells
    return OmegaGrammar(nts, sigma, prods, S, fam, "production", "CSG", tm.name)


# ------------------------------------------------------------ TM helpers

# cap on (state, read vector) pairs examined while building a machine
TM_MAX_PAIRS = 2_000_000


def _tm_closure(start, act, tape_symbols, limit: int = TM_MAX_PAIRS) -> tuple:
    """All states reachable from ``start`` and their transitions.

    ``act(state, reads)`` lists ``(target, writes, moves)``; ``tape_symbols``
    gives the symbols initially readable on each tape.  Written symbols
    become readable as they are discovered, and each (state, read vector)
    pair is examined once.
    """
    symbols = [list(dict.fromkeys(ts)) for ts in tape_symbols]
    known = [set(ts) for ts in symbols]
    tapes = len(symbols)
    states, seen, trans = [start], {start}, []
    upto = {}
    pending, queued = deque([start]), {start}
    examined = 0
    while pending:
        q = pending.popleft()
        queued.discard(q)
        old = upto.get(q, (0,) * tapes)
        cur = tuple(len(x) for x in symbols)
        upto[q] = cur
        grew = False
        # the index vectors not covered by ``old``, split by the first new tape
        for t in range(tapes):
            ranges = [range(old[s]) for s in range(t)] + [range(old[t], cur[t])] + \
                     [range(cur[s]) for s in range(t + 1, tapes)]
            for idx in itertools.product(*ranges):
                examined += 1
                if examined > limit:
                    raise ResourceError(f"machine construction examined more than {limit} "
                                        "(state, read) pairs")
                reads = tuple(symbols[s][i] for s, i in enumerate(idx))
                for target, writes, moves in act(q, reads):
                    trans.append((q, reads, target, tuple(writes), tuple(moves)))
                    if target not in seen:
                        seen.add(target)
                        states.append(target)
                        pending.append(target)
                        queued.add(target)
                    for s, w in enumerate(writes):
                        if w not in known[s]:
                            known[s].add(w)
                            symbols[s].append(w)
                            grew = True
        if grew:
            for r in states:
                if r not in queued:
                    pending.append(r)
                    queued.add(r)
    return states, trans, symbols


def _state_str(q) -> str:
    if isinstance(q, str):
        return q
    if isinstance(q, frozenset):
        return _fmt(q)
    if isinstance(q, bool):
        return "1" if q else "0"
    if not isinstance(q, tuple):
        return str(q)
    if not q or not isinstance(q[0], str):
        return f"({','.join(_state_str(x) for x in q)})"
    tag, *rest = q
    return f"{tag}[{','.join(_state_str(x) for x in rest)}]"


def _tm_from(states, trans, name_of, alphabet, tape_alphabet, family_fn, tapes, blank, name):
    names = {q: name_of(q) for q in states}
    if len(set(names.values())) != len(names):
        raise ValidationError("state naming collision")
    ts = [(names[q], r, names[p], w, m) for q, r, p, w, m in trans]
    fam = family_fn(names)
    return OmegaTM([names[q] for q in states], alphabet, tape_alphabet, ts, names[states[0]],
                   fam, tapes, blank, False, name)


# ------------------------------------------------------------ PSG -> 2-tape TM

def psg_to_2tm(g: OmegaGrammar, mode: AcceptanceMode, hole: str = "□") -> OmegaTM:
    """Two-tape machine guessing a derivation of a $-boundary grammar on tape 2.

    Tape 2 holds the nonterminal part ``$ alpha`` of the current form.  A
    production is applied at a guessed position, shifting the rest of the
    tape when the two sides differ in length.  State ``q[p]`` is entered
    each time ``p`` has been simulated; the first head moves exactly when a
    production ``$ a' -> a $`` releases a terminal matching the input.
    """
    if mode.pi == "leftmost":
        raise RefusedError("psg_to_2tm covers normal derivations only")
    from .forms import dollar_form_problems
    if DOLLAR in g.nonterminals and not dollar_form_problems(g):
        gd = _prod_kind(g)
    else:
        gd = to_dollar_boundary(_prod_kind(g), mode.with_pi("normal"))
    N = set(gd.nonterminals)
    sigma = tuple(gd.terminals)
    blank = BLANK
    if hole in N or hole in sigma or blank in N:
        raise ValidationError("tape symbol names clash with grammar symbols")
    t2 = tuple(gd.nonterminals) + (hole, blank)
    tape_of = {p.label: tuple(x for x in p.rhs if x in N) for p in gd.productions}
    emits = {p.label: next(x for x in p.rhs if x not in N)
             for p in gd.productions if any(x not in N for x in p.rhs)}
    prods = {p.label: p for p in gd.productions}
    by_first = {}
    for p in gd.productions:
        by_first.setdefault(p.lhs[0], []).append(p.label)

    def after_match(p):
        lhs, rhs = prods[p].lhs, tape_of[p]
        d = len(rhs) - len(lhs)
        if d > 0:
            return ("ins", p, d), "S"
        if d == 0:
            return ("w", p, len(rhs) - 1), "L"
        return ("wd", p, len(lhs) - 1), "L"

    def act(q, reads):
        x, y = reads
        tag = q[0]
        out = []

        def go(target, y2, m2, m1="S"):
            out.append((target, (x, y2), (m1, m2)))

        if tag == "q0":
            if y == blank:
                go(("qs",), gd.start, "S")
        elif tag == "qs":
            if y != blank and y != hole:
                go(("qs",), y, "R")
                go(("qs",), y, "L")
                for p in by_first.get(y, ()):
                    go(("m", p, 1), y, "R")
        elif tag == "m":
            _, p, k = q
            lhs = prods[p].lhs
            if k < len(lhs):
                if y == lhs[k]:
                    go(("m", p, k + 1), y, "R")
            else:
                target, mv = after_match(p)
                go(target, y, mv)
        elif tag == "ins":
            _, p, r = q
            if y == blank:
                go(("back", p, r), hole, "S")
            else:
                go(("sh", p, r, y), hole, "R")
        elif tag == "sh":
            _, p, r, c = q
            if y == blank:
                go(("back", p, r), c, "L")
            else:
                go(("sh", p, r, y), c, "R")
        elif tag == "back":
            _, p, r = q
            if y == hole:
                # the next hole goes right of this one; the last one is the rhs end
                if r > 1:
                    go(("ins", p, r - 1), y, "R")
                else:
                    go(("w", p, len(tape_of[p]) - 1), y, "S")
            else:
                go(q, y, "L")
        elif tag == "w":
            _, p, k = q
            sym = tape_of[p][k]
            go(("qp", p) if k == 0 else ("w", p, k - 1), sym, "S" if k == 0 else "L")
        elif tag == "wd":
            _, p, k = q
            rhs = tape_of[p]
            sym = rhs[k] if k < len(rhs) else hole
            if k == 0:
                go(("del", p, len(prods[p].lhs) - len(rhs)), sym, "S")
            else:
                go(("wd", p, k - 1), sym, "L")
        elif tag == "del":
            _, p, r = q
            if y == blank:
                go(("dl", p, r, blank), y, "L")
            else:
                go(q, y, "R")
        elif tag == "dl":
            _, p, r, c = q
            if y == hole:
                go(("del", p, r - 1) if r > 1 else ("qp", p), c, "S")
            else:
                go(("dl", p, r, y), c, "L")
        elif tag == "qp":
            p = q[1]
            if p in emits:
                if x == emits[p]:
                    go(("q1",), y, "S", "R")
                else:
                    go(("qD",), y, "S")
            else:
                go(("qs",), y, "S")
        elif tag == "q1":
            go(("qs",), y, "S")
        return out

    states, trans, _ = _tm_closure(("q0",), act, (sigma, t2))
    for q in (("q1",), ("qD",)):
        if q not in states:
            states.append(q)

    def name_of(q):
        if q[0] in ("q0", "q1", "qD", "qs"):
            return q[0]
        if q[0] == "qp":
            return f"q[{q[1]}]"
        return "w" + _state_str(q)

    def family_fn(names):
        special = {"q0", "q1", "qD"} | {f"q[{p}]" for p in prods}
        work = {n for n in names.values() if n not in special}
        base = {"q0", "q1"} if mode.sigma == "ran" else {"q1"}
        extra = work | base if mode.rho != "cap" else ()
        must = base if mode.rho == "eq" else ()
        return _family(gd.family, mode.rho, list(names.values()), lambda p: {f"q[{p}]"},
                       extra=extra, must=must)

    return _tm_from(states, trans, name_of, sigma, sigma + t2, family_fn, 2, blank, g.name)


# ------------------------------------------------------ multi-tape -> 2-tape

_RESERVED_CHARS = set("<>|^*!,")


def _check_tape_names(tm: OmegaTM):
    bad = [s for s in tm.tape_alphabet if _RESERVED_CHARS & set(str(s))]
    if bad:
        raise ValidationError(f"tape symbols may not contain any of <>|^*!, : {bad[:3]}")


def _embedded_family(tm: OmegaTM, mode: AcceptanceMode | None, names):
    work = [n for n in names.values() if n not in set(tm.states)]
    universe = list(names.values())
    if mode is None or mode.rho == "cap":
        return tm.family.with_universe(universe) if mode is None else \
            _family(tm.family, "cap", universe, lambda q: {q})
    return _family(tm.family, mode.rho, universe, lambda q: {q}, extra=work)


def track_symbol(tracks, left_end: bool = False) -> str:
    """Tape-2 symbol holding ``tracks``, a sequence of ``(symbol, marked)``."""
    body = "|".join(f"{s}{'^' if m else ''}" for s, m in tracks)
    return f"<{body}{'!' if left_end else ''}>"


def decode_track_symbol(sym: str, width: int, blank: str = BLANK):
    """Inverse of :func:`track_symbol`; a plain blank is an empty cell."""
    if sym == blank:
        return tuple((blank, False) for _ in range(width)), False
    body = sym[1:-1]
    le = body.endswith("!")
    if le:
        body = body[:-1]
    tracks = []
    for part in body.split("|"):
        tracks.append((part[:-1], True) if part.endswith("^") else (part, False))
    return tuple(tracks), le


def mwtm_to_2tm(tm: OmegaTM, mode: AcceptanceMode | None = None) -> OmegaTM:
    """Two-tape machine keeping the m-1 working tapes as tracks of tape 2.

    Each track carries a head marker.  One simulated step homes to the
    left end of tape 2, sweeps right collecting the marked symbols, then
    sweeps back left applying writes and moving markers.  The original
    states are embedded under their own names and are entered once per
    simulated step.
    """
    m = tm.tapes
    if m <= 2:
        return tm
    _check_tape_names(tm)
    width = m - 1
    blank = tm.blank
    by_state = {}
    for t in tm.transitions:
        by_state.setdefault(t[0], []).append(t)
    tlist = list(tm.transitions)
    index = {t: i for i, t in enumerate(tlist)}

    def dec(y):
        return decode_track_symbol(y, width, blank)

    def act(q, reads):
        x, y = reads
        tracks, le = dec(y)
        tag = q[0]
        out = []

        def go(target, y2, m2, w1=None, m1="S"):
            out.append((target, (x if w1 is None else w1, y2), (m1, m2)))

        if tag == "init":
            if y == blank:
                go(("orig", tm.start), track_symbol([(blank, True)] * width, True), "S")
        elif tag == "orig":
            if le:
                go(("col", q[1], (None,) * width), y, "S")
            else:
                go(("home", q[1]), y, "L")
        elif tag == "home":
            if le:
                go(("col", q[1], (None,) * width), y, "S")
            else:
                go(q, y, "L")
        elif tag == "col":
            part = list(q[2])
            for k, (s, mk) in enumerate(tracks):
                if mk:
                    part[k] = s
            if None in part:
                go(("col", q[1], tuple(part)), y, "R")
            else:
                for t in by_state.get(q[1], ()):
                    if t[1] == (x,) + tuple(part):
                        go(("app", index[t], frozenset(), frozenset()), y, "S")
        elif tag == "app":
            _, ti, pend_l, done = q
            t = tlist[ti]
            new = [list(c) for c in tracks]
            for k in pend_l:
                new[k][1] = True
            pend_l2, pend_r, done2 = set(), set(), set(done)
            for k, (s, mk) in enumerate(tracks):
                if not mk or k in done:
                    continue
                new[k][0] = t[3][k + 1]
                mv = t[4][k + 1]
                new[k][1] = mv == "S"
                done2.add(k)
                if mv == "L":
                    pend_l2.add(k)
                elif mv == "R":
                    pend_r.add(k)
            y2 = track_symbol(new, le)
            fin = len(done2) == width and not pend_l2
            if pend_r:
                go(("pr", ti, frozenset(pend_l2), frozenset(done2), frozenset(pend_r)), y2, "R")
            elif fin:
                go(("fin", ti), y2, "S")
            elif not le:
                go(("app", ti, frozenset(pend_l2), frozenset(done2)), y2, "L")
        elif tag == "pr":
            _, ti, pend_l, done, pend_r = q
            new = [[s, mk or k in pend_r] for k, (s, mk) in enumerate(tracks)]
            go(("pr2", ti, pend_l, done), track_symbol(new, le), "L")
        elif tag == "pr2":
            _, ti, pend_l, done = q
            if len(done) == width and not pend_l:
                go(("fin", ti), y, "S")
            elif not le:
                go(("app", ti, pend_l, done), y, "L")
        elif tag == "fin":
            t = tlist[q[1]]
            if t[1][0] == x:
                go(("orig", t[2]), y, "S", w1=t[3][0], m1=t[4][0])
        return out

    t1 = list(tm.tape_alphabet)
    states, trans, symbols = _tm_closure(("init",), act, (t1, [blank]))
    for q in tm.states:
        if ("orig", q) not in states:
            states.append(("orig", q))

    def name_of(q):
        if q[0] == "orig":
            return q[1]
        return fresh_name("w" + _state_str(q), tm.states)

    tape_alpha = list(dict.fromkeys(t1 + symbols[1]))
    return _tm_from(states, trans, name_of, tm.alphabet, tape_alpha,
                    lambda names: _embedded_family(tm, mode, names), 2, blank, tm.name)


def rename_work_symbols(tm: OmegaTM, prefix: str = "g") -> OmegaTM:
    """Same machine with every non-input, non-blank tape symbol renamed ``g1, g2, ...``."""
    keep = set(tm.alphabet) | {tm.blank}
    ren, taken = {}, set(tm.tape_alphabet)
    for x in tm.tape_alphabet:
        if x in keep:
            ren[x] = x
        else:
            k = len(ren) + 1
            while f"{prefix}{k}" in taken:
                k += 1
            ren[x] = f"{prefix}{k}"
            taken.add(ren[x])
    ts = [(q, tuple(ren[x] for x in r), p, tuple(ren[x] for x in w), m)
          for q, r, p, w, m in tm.transitions]
    return OmegaTM(tm.states, tm.alphabet, [ren[x] for x in tm.tape_alphabet], ts, tm.start,
                   tm.family, tm.tapes, tm.blank, tm.deterministic, tm.name)


def track_alphabet_size(gamma: int, m: int) -> int:
    """Number of tape-2 symbols available to :func:`mwtm_to_2tm`.

    ``gamma`` counts the working symbols without the blank; every track
    holds a symbol or a blank and a marker bit, and the cell carries a
    left-end bit.
    """
    return (gamma + 1) ** (m - 1) * 2 ** (m - 1) * 2


# ------------------------------------------------------------------ folding

def k_folded_version(tape, k: int, blank: str = BLANK) -> list:
    """Two-track layout of ``tape`` (``tape[0]`` is cell 1) folded at ``k``.

    Returns pairs for cells ``1..max(len(tape), 2k-2)``: cells before ``k``
    are blank on both tracks, cells ``k..2k-2`` carry ``(a_j, a_{2k-j-1})``
    and later cells ``(a_j, blank)``.
    """
    if k < 2:
        raise ValidationError("k must be at least 2")
    tape = list(tape)

    def a(j):
        return tape[j - 1] if 1 <= j <= len(tape) else blank

    out = []
    for j in range(1, max(len(tape), 2 * k - 2) + 1):
        if j < k:
            out.append((blank, blank))
        elif j <= 2 * k - 2:
            out.append((a(j), a(2 * k - j - 1)))
        else:
            out.append((a(j), blank))
    return out


_FOLD_RE = re.compile(r"^<(.*?)(\*?)\|(.*?)(\^?)\|(.*?)(\^?)\|([SEL]*)>$")


def fold_symbol(a, ma, b1, m1, b2, m2, fs=False, fe=False, le=False) -> str:
    flags = ("S" if fs else "") + ("E" if fe else "") + ("L" if le else "")
    return f"<{a}{'*' if ma else ''}|{b1}{'^' if m1 else ''}|{b2}{'^' if m2 else ''}|{flags}>"


def decode_fold_symbol(sym: str, blank: str = BLANK) -> tuple:
    """``(a, ma, b1, m1, b2, m2, fs, fe, le)`` for a folded-tape symbol.

    An input letter not yet touched decodes to itself with empty tracks.
    """
    mt = _FOLD_RE.match(sym) if sym.startswith("<") else None
    if not mt:
        return (sym, False, blank, False, blank, False, False, False, False)
    a, ma, b1, m1, b2, m2, fl = mt.groups()
    return (a, bool(ma), b1, bool(m1), b2, bool(m2), "S" in fl, "E" in fl, "L" in fl)


def two_tape_to_one(tm: OmegaTM, mode: AcceptanceMode | None = None) -> OmegaTM:
    """One-tape machine simulating a 2-tape machine by relative folding.

    The single tape has an input track and two tracks for the second tape.
    When the input head first moves beyond cell ``i`` the second tape is
    refolded so that it only ever occupies cells ``>= i+1``: the cell
    flagged ``S`` starts the fold and ``E`` ends it.  The second track is
    read backwards.  Original states are embedded under their own names.
    """
    if tm.tapes != 2:
        raise ValidationError("two_tape_to_one needs a 2-tape machine")
    if any(_RESERVED_CHARS & set(str(x)) for x in tm.tape_alphabet):
        tm = rename_work_symbols(tm)
    _check_tape_names(tm)
    blank = tm.blank
    tlist = list(tm.transitions)
    by_state = {}
    for i, t in enumerate(tlist):
        by_state.setdefault(t[0], []).append(i)

    def act(q, reads):
        (y,) = reads
        c = list(decode_fold_symbol(y, blank))
        a, ma, b1, m1, b2, m2, fs, fe, le = c
        tag = q[0]
        out = []

        def go(target, cell, mv):
            out.append((target, (fold_symbol(*cell),), (mv,)))

        if tag == "init":
            if not y.startswith("<"):
                go(("orig", tm.start), (y, True, blank, True, blank, False, True, False, True), "S")
        elif tag == "orig":
            out.append((("seekb", q[1], a), (y,), ("S",)))
        elif tag == "seekb":
            if m1 or m2:
                track, b = (1, b1) if m1 else (2, b2)
                for ti in by_state.get(q[1], ()):
                    if tlist[ti][1] == (q[2], b):
                        out.append((("bapp", ti, track), (y,), ("S",)))
            else:
                out.append((q, (y,), ("R",)))
        elif tag == "bapp":
            _, ti, track = q
            w, mv = tlist[ti][3][1], tlist[ti][4][1]
            cell = list(c)
            if track == 1:
                cell[2], cell[3] = w, False
            else:
                cell[4], cell[5] = w, False
            nxt = None
            if mv == "S":
                cell[3 if track == 1 else 5] = True
            elif track == 1 and mv == "R":
                nxt = (("placeb", ti, 1), "R")
            elif track == 1:
                if fs and le:
                    return out
                if fs:
                    cell[5] = True
                else:
                    nxt = (("placeb", ti, 1), "L")
            elif mv == "R":
                if fs:
                    cell[3] = True
                else:
                    nxt = (("placeb", ti, 2), "L")
            else:
                if fe:
                    return out
                nxt = (("placeb", ti, 2), "R")
            if nxt is None:
                go(("seeka", ti), cell, "S")
            else:
                go(nxt[0], cell, nxt[1])
        elif tag == "placeb":
            cell = list(c)
            cell[3 if q[2] == 1 else 5] = True
            go(("seeka", q[1]), cell, "S")
        elif tag == "seeka":
            if not ma:
                out.append((q, (y,), ("L",)))
                return out
            t = tlist[q[1]]
            if t[1][0] != a:
                return out
            w, mv, p = t[3][0], t[4][0], t[2]
            cell = list(c)
            cell[0] = w
            if mv == "S":
                go(("orig", p), cell, "S")
            elif mv == "L":
                if not le:
                    cell[1] = False
                    go(("placea", p), cell, "L")
            elif not fs:
                cell[1] = False
                go(("placea", p), cell, "R")
            else:
                carry = [(b1, m1)] + ([] if le else [(b2, m2)])
                cell = [w, False, blank, False, blank, False, False, False, le]
                go(("rf", p, tuple(carry), le or fe, True), cell, "R")
        elif tag == "placea":
            cell = list(c)
            cell[1] = True
            go(("orig", q[1]), cell, "S")
        elif tag == "rf":
            _, p, carry, done, first = q
            (val, mk), rest = carry[0], list(carry[1:])
            if not done:
                rest.append((b2, m2))
            done2 = done or fe
            end = not rest and done2
            cell = [a, ma, b1, m1, val, mk, first, end, le]
            if end and first:
                cell[1] = True
                go(("orig", p), cell, "S")
            elif end:
                go(("rfback", p), cell, "L")
            else:
                go(("rf", p, tuple(rest), done2, False), cell, "R")
        elif tag == "rfback":
            if fs:
                cell = list(c)
                cell[1] = True
                go(("orig", q[1]), cell, "S")
            else:
                out.append((q, (y,), ("L",)))
        return out

    states, trans, symbols = _tm_closure(("init",), act, (list(tm.alphabet),))
    for q in tm.states:
        if ("orig", q) not in states:
            states.append(("orig", q))

    def name_of(q):
        if q[0] == "orig":
            return q[1]
        return fresh_name("w" + _state_str(q), tm.states)

    tape_alpha = list(dict.fromkeys(list(tm.alphabet) + symbols[0] + [blank]))
    return _tm_from(states, trans, name_of, tm.alphabet, tape_alpha,
                    lambda names: _embedded_family(tm, mode, names), 1, blank, tm.name)


def fold_layout(cells: dict, blank: str = BLANK) -> dict:
    """Positions of interest on a folded tape given ``{pos: symbol}``.

    Returns ``alpha`` (input-head cell), ``beta`` (physical cell of the
    second-tape head), ``track`` (1 or 2) and ``fold`` (the ``S`` cell).
    """
    out = {"alpha": None, "beta": None, "track": None, "fold": None}
    for pos, sym in cells.items():
        a, ma, b1, m1, b2, m2, fs, fe, le = decode_fold_symbol(sym, blank)
        if ma:
            out["alpha"] = pos
        if m1 or m2:
            out["beta"], out["track"] = pos, 1 if m1 else 2
        if fs:
            out["fold"] = pos
    return out


def sample_copier(tapes: int = 2, alphabet=("a", "b")) -> OmegaTM:
    """Copies its input onto every working tape, remembering the last letter.

    State ``c_x`` means the last letter read was ``x``.  The family is
    ``{c_a}, {c0, c_a}`` with ``a`` the first letter, so (ran, eq) accepts
    only ``a^w`` while (inf, cap) accepts words with infinitely many ``a``.
    """
    first = alphabet[0]
    states = ["c0"] + [f"c_{x}" for x in alphabet]
    trans = []
    for q in states:
        for x in alphabet:
            trans.append((q, (x,) + (BLANK,) * (tapes - 1), f"c_{x}",
                          (x,) * tapes, ("R",) * tapes))
    fam = DesignatedFamily(states, [{f"c_{first}"}, {"c0", f"c_{first}"}])
    return OmegaTM(states, alphabet, list(alphabet) + [BLANK], trans, "c0", fam,
                   tapes, BLANK, True, f"copier{tapes}")
