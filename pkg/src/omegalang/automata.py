"""Finite-state, pushdown and multi-tape Turing omega-automata.

Every device carries a designated family over its states.  ``step`` gives
the one-step successors of a configuration on a lasso word; the oracle
module builds runs out of it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .core import (AcceptanceMode, DesignatedFamily, LassoWord, OmegaError,
                   RefusedError, ValidationError)

EPS = ""            # the empty input / empty word marker in transitions
BLANK = "_"         # default blank tape symbol
MOVES = ("L", "R", "S")

# c.n.o. guard: a run prefix scanning one first-tape cell more often than
# this is treated as oscillating and pruned from bounded searches.
OSCILLATION_THRESHOLD = 64


def fresh_name(base: str, taken, index: int = 1) -> str:
    """``base#index`` with the first index not already in ``taken``."""
    name = f"{base}#{index}"
    while name in taken:
        index += 1
        name = f"{base}#{index}"
    return name


# ------------------------------------------------------------------ devices

@dataclass(frozen=True, eq=False)
class OmegaFSA:
    states: tuple
    alphabet: tuple
    transitions: tuple          # (src, symbol or EPS, dst)
    start: Any
    family: DesignatedFamily
    deterministic: bool = False
    name: str = "A"

    kind = "fsa"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))


@dataclass(frozen=True, eq=False)
class OmegaPDA:
    states: tuple
    alphabet: tuple
    stack_alphabet: tuple
    transitions: tuple          # (q, symbol or EPS, top, q', push tuple)
    start: Any
    start_stack: Any
    family: DesignatedFamily
    deterministic: bool = False
    name: str = "D"

    kind = "pda"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "stack_alphabet", tuple(self.stack_alphabet))
        ts = tuple((q, a, z, r, tuple(push)) for q, a, z, r, push in self.transitions)
        object.__setattr__(self, "transitions", ts)


@dataclass(frozen=True, eq=False)
class OmegaTM:
    states: tuple
    alphabet: tuple
    tape_alphabet: tuple
    transitions: tuple          # (q, reads, q', writes, moves); vectors of length m
    start: Any
    family: DesignatedFamily
    tapes: int = 1
    blank: str = BLANK
    deterministic: bool = False
    name: str = "M"

    kind = "tm"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "tape_alphabet", tuple(self.tape_alphabet))
        ts = tuple((q, tuple(r), p, tuple(w), tuple(m)) for q, r, p, w, m in self.transitions)
        object.__setattr__(self, "transitions", ts)


# ----------------------------------------------------------- configurations

@dataclass(frozen=True)
class FSAConfig:
    state: Any
    offset: int


@dataclass(frozen=True)
class PDAConfig:
    state: Any
    stack: tuple                # top of stack first
    offset: int


@dataclass(frozen=True)
class TMConfig:
    state: Any
    cells: tuple                # per tape: sorted ((pos, symbol), ...) of written cells
    heads: tuple                # 1-based head positions
    scanned: int                # rightmost first-tape cell scanned so far

    def cell(self, tape: int, pos: int, word: LassoWord | None, blank: str):
        for p, s in self.cells[tape]:
            if p == pos:
                return s
        if tape == 0 and word is not None:
            return word.symbol_at(pos - 1)
        return blank


def initial_config(device):
    if device.kind == "fsa":
        return FSAConfig(device.start, 0)
    if device.kind == "pda":
        return PDAConfig(device.start, (device.start_stack,), 0)
    if device.kind == "tm":
        return TMConfig(device.start, tuple(() for _ in range(device.tapes)),
                        tuple(1 for _ in range(device.tapes)), 1)
    raise OmegaError(f"no configurations for {device!r}")


def _index(transitions, key):
    out = {}
    for i, t in enumerate(transitions):
        out.setdefault(key(t), []).append((i, t))
    return out


_CACHE: dict = {}


def transition_index(device):
    """Transitions grouped by source (and stack top for PDAs); cached per device."""
    hit = _CACHE.get(id(device))
    if hit is not None and hit[0] is device:
        return hit[1]
    if device.kind == "fsa":
        idx = _index(device.transitions, lambda t: t[0])
    elif device.kind == "pda":
        idx = _index(device.transitions, lambda t: (t[0], t[2]))
    else:
        idx = _index(device.transitions, lambda t: (t[0], t[1]))
    if len(_CACHE) > 512:
        _CACHE.clear()
    _CACHE[id(device)] = (device, idx)
    return idx


def successors(device, config, word: LassoWord):
    """Like ``step`` but also reports the transition index used."""
    idx = transition_index(device)
    out = []
    if device.kind == "fsa":
        if not isinstance(config, FSAConfig) or config.offset < 0:
            raise ValidationError("malformed FSA configuration")
        sym = word.symbol_at(config.offset)
        for i, (_, a, dst) in idx.get(config.state, ()):
            if a == EPS:
                out.append((i, FSAConfig(dst, config.offset), 0, dst))
            elif a == sym:
                out.append((i, FSAConfig(dst, config.offset + 1), 1, dst))
        return out
    if device.kind == "pda":
        if not isinstance(config, PDAConfig) or config.offset < 0:
            raise ValidationError("malformed PDA configuration")
        if not config.stack:
            return out
        sym = word.symbol_at(config.offset)
        top, rest = config.stack[0], config.stack[1:]
        for i, (_, a, _, dst, push) in idx.get((config.state, top), ()):
            if a == EPS:
                out.append((i, PDAConfig(dst, push + rest, config.offset), 0, dst))
            elif a == sym:
                out.append((i, PDAConfig(dst, push + rest, config.offset + 1), 1, dst))
        return out
    if device.kind == "tm":
        return _tm_successors(device, config, word, idx)
    raise OmegaError(f"cannot step {device!r}")


def _tm_successors(device, config, word, idx):
    if not isinstance(config, TMConfig) or len(config.heads) != device.tapes \
            or any(h < 1 for h in config.heads):
        raise ValidationError("malformed TM configuration")
    reads = tuple(config.cell(t, config.heads[t], word if t == 0 else None, device.blank)
                  for t in range(device.tapes))
    out = []
    for i, (_, _, dst, writes, moves) in idx.get((config.state, reads), ()):
        cells = []
        heads = []
        ok = True
        for t in range(device.tapes):
            h = config.heads[t]
            written = dict(config.cells[t])
            # only cells that differ from their initial content are recorded
            default = word.symbol_at(h - 1) if t == 0 else device.blank
            if writes[t] == default:
                written.pop(h, None)
            else:
                written[h] = writes[t]
            cells.append(tuple(sorted(written.items())))
            nh = h + (1 if moves[t] == "R" else -1 if moves[t] == "L" else 0)
            if nh < 1:
                ok = False
            heads.append(nh)
        if not ok:
            continue
        scanned = max(config.scanned, heads[0])
        consumed = 1 if heads[0] > config.scanned else 0
        out.append((i, TMConfig(dst, tuple(cells), tuple(heads), scanned), consumed, dst))
    return out


def step(device, config, word: LassoWord) -> set:
    """One-step successors as a set of (config, consumed, state entered).

    For Turing machines ``consumed`` is 1 exactly when the first-tape head
    moves onto a cell it has never scanned before.
    """
    return {(c, k, q) for _, c, k, q in successors(device, config, word)}


# --------------------------------------------------------------- validation

def _family_problems(device, out):
    fam = device.family
    if not fam.universe <= set(device.states):
        out.append("designated family universe not within Q")
    if not fam.relevant() <= set(device.states):
        out.append("designated set not within Q")


def validate(device) -> list:
    """Structural violations of the device invariants (empty list when fine)."""
    out: list = []
    Q = set(device.states)
    sigma = set(device.alphabet)
    if len(Q) != len(device.states):
        out.append("duplicate state names")
    if device.start not in Q:
        out.append("start state not in Q")
    if device.kind == "fsa":
        seen = {}
        for src, a, dst in device.transitions:
            if src not in Q:
                out.append("transition source not in Q")
            if dst not in Q:
                out.append("transition target not in Q")
            if a != EPS and a not in sigma:
                out.append("transition symbol not in alphabet")
            if device.deterministic:
                if a == EPS:
                    out.append("deterministic automaton has an epsilon transition")
                seen.setdefault((src, a), set()).add(dst)
        if any(len(v) > 1 for v in seen.values()):
            out.append("deterministic automaton has two successors on one symbol")
    elif device.kind == "pda":
        gamma = set(device.stack_alphabet)
        if device.start_stack not in gamma:
            out.append("start stack symbol not in stack alphabet")
        seen = {}
        for q, a, z, r, push in device.transitions:
            if q not in Q:
                out.append("transition source not in Q")
            if r not in Q:
                out.append("transition target not in Q")
            if a != EPS and a not in sigma:
                out.append("transition symbol not in alphabet")
            if z not in gamma or any(x not in gamma for x in push):
                out.append("stack symbol not in stack alphabet")
            if device.deterministic:
                seen.setdefault((q, z), []).append(a)
        for moves in seen.values():
            if len(moves) != len(set(moves)) or (EPS in moves and len(moves) > 1):
                out.append("deterministic automaton has competing transitions")
    elif device.kind == "tm":
        gamma = set(device.tape_alphabet)
        if device.tapes < 1:
            out.append("a Turing machine needs at least one tape")
        if device.blank in sigma:
            out.append("blank must not be an input symbol")
        if device.blank not in gamma:
            out.append("blank must be a tape symbol")
        if not sigma <= gamma:
            out.append("input alphabet must be within the tape alphabet")
        seen = {}
        for q, reads, p, writes, moves in device.transitions:
            if q not in Q:
                out.append("transition source not in Q")
            if p not in Q:
                out.append("transition target not in Q")
            if not (len(reads) == len(writes) == len(moves) == device.tapes):
                out.append("transition vectors must have one entry per tape")
            if any(x not in gamma for x in reads + writes):
                out.append("tape symbol not in tape alphabet")
            if any(m not in MOVES for m in moves):
                out.append("moves must be L, R or S")
            seen.setdefault((q, reads), set()).add((p, writes, moves))
        if device.deterministic and any(len(v) > 1 for v in seen.values()):
            out.append("deterministic machine has two transitions on one read vector")
    _family_problems(device, out)
    return list(dict.fromkeys(out))


# ------------------------------------------------------------ transformations

def to_unique_designated(automaton, mode: AcceptanceMode):
    """An equivalent automaton with a single designated set (rho in {cap, subseteq})."""
    if mode.rho == "eq":
        raise RefusedError("lemma does not cover ρ = =")
    fam = automaton.family
    members = fam.sorted_members()
    if len(members) == 1:
        return automaton
    if mode.rho == "cap":
        union = frozenset().union(*members) if members else frozenset()
        return replace(automaton, family=DesignatedFamily(automaton.states, [union]))
    # subseteq: one copy per member, entered through a fresh start state
    taken = set(automaton.states)
    start = fresh_name("start", taken)
    states = [start]
    ts = []
    designated = {start}
    for k, F in enumerate(members, 1):
        rename = {q: f"{q}#{k}" for q in automaton.states}
        states += [rename[q] for q in automaton.states]
        designated |= {rename[q] for q in F}
        for t in automaton.transitions:
            if automaton.kind == "fsa":
                ts.append((rename[t[0]], t[1], rename[t[2]]))
            elif automaton.kind == "pda":
                ts.append((rename[t[0]], t[1], t[2], rename[t[3]], t[4]))
            else:
                ts.append((rename[t[0]], t[1], rename[t[2]], t[3], t[4]))
        if automaton.kind == "fsa":
            ts.append((start, EPS, rename[automaton.start]))
        elif automaton.kind == "pda":
            ts.append((start, EPS, automaton.start_stack, rename[automaton.start],
                       (automaton.start_stack,)))
        else:
            rest = (automaton.blank,) * (automaton.tapes - 1)
            for a in automaton.alphabet:
                ts.append((start, (a,) + rest, rename[automaton.start], (a,) + rest,
                           ("S",) * automaton.tapes))
    fam2 = DesignatedFamily(states, [designated])
    return replace(automaton, states=tuple(states), transitions=tuple(ts), start=start,
                   family=fam2, deterministic=False)


def epsilon_closure(fsa: OmegaFSA, q) -> set:
    seen = {q}
    todo = [q]
    eps = {}
    for s, a, d in fsa.transitions:
        if a == EPS:
            eps.setdefault(s, []).append(d)
    while todo:
        x = todo.pop()
        for y in eps.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def ensure_property_c(fsa: OmegaFSA, mode: AcceptanceMode | None = None) -> OmegaFSA:
    """Give the automaton a legal run on every omega-word.

    Missing (state, symbol) moves are routed to a fresh non-designated sink.
    That keeps every mode except (ran, cap), where visiting a designated
    state and then falling into the sink would wrongly accept; for that mode
    (pass it explicitly) the sink is reached only through a separate
    epsilon-branch from a fresh start, leaving the original runs untouched.
    """
    taken = set(fsa.states)
    sink = fresh_name("sink", taken)
    if mode is not None and mode.sigma == "ran" and mode.rho == "cap":
        start = fresh_name("start", taken | {sink})
        ts = list(fsa.transitions) + [(start, EPS, fsa.start), (start, EPS, sink)]
        ts += [(sink, a, sink) for a in fsa.alphabet]
        return replace(fsa, states=fsa.states + (start, sink), transitions=tuple(ts),
                       start=start, deterministic=False,
                       family=fsa.family.with_universe(set(fsa.states) | {start, sink}))
    has = {(s, a) for s, a, _ in fsa.transitions if a != EPS}
    missing = []
    for q in fsa.states:
        closure = epsilon_closure(fsa, q)
        for a in fsa.alphabet:
            if not any((x, a) in has for x in closure):
                missing.append((q, a, sink))
    if not missing:
        return fsa
    ts = list(fsa.transitions) + missing + [(sink, a, sink) for a in fsa.alphabet]
    return replace(fsa, states=fsa.states + (sink,), transitions=tuple(ts),
                   family=fsa.family.with_universe(set(fsa.states) | {sink}))


def has_property_c_shape(fsa: OmegaFSA) -> bool:
    """Closure scan: from every reachable state every symbol can be read."""
    succ = {}
    for s, a, d in fsa.transitions:
        succ.setdefault(s, []).append((a, d))
    reach = {fsa.start}
    todo = [fsa.start]
    while todo:
        x = todo.pop()
        for _, y in succ.get(x, ()):
            if y not in reach:
                reach.add(y)
                todo.append(y)
    for q in reach:
        closure = epsilon_closure(fsa, q)
        readable = {a for x in closure for a, _ in succ.get(x, ()) if a != EPS}
        if not set(fsa.alphabet) <= readable:
            return False
    return True
