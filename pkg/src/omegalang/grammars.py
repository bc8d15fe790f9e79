"""Omega-grammars: data model, derivation steps, classification and analyses.

The analyses return families of production-label sets:

* ``NL(A)``: label sets of finite derivations ``A =>* eps``;
* ``TR(g)``: label sets of finite derivations starting in ``g``;
* ``SP(g)``: sets of labels used infinitely often by infinite derivations
  starting in ``g`` (derivations may rewrite any nonterminal occurrence).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .core import (DesignatedFamily, OmegaError, ResourceError, SetConstraint,
                   ValidationError)

ANALYSIS_CAP = 4096

CLASS_ORDER = ("RLG", "CFG", "CSG", "PSG")


@dataclass(frozen=True)
class Production:
    label: str
    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs:
            raise ValidationError(f"production {self.label} has an empty left-hand side")

    @property
    def head(self):
        """The single left-hand nonterminal of a context-free production."""
        return self.lhs[0]

    def __str__(self):
        rhs = " ".join(self.rhs) if self.rhs else "ε"
        return f"{self.label}: {' '.join(self.lhs)} -> {rhs}"


@dataclass(frozen=True, eq=False)
class OmegaGrammar:
    nonterminals: tuple
    terminals: tuple
    productions: tuple
    start: str
    family: DesignatedFamily
    repetition: str = "production"      # or "variable"
    class_tag: str | None = None
    name: str = "G"

    kind = "grammar"

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "productions", tuple(self.productions))
        if self.repetition not in ("production", "variable"):
            raise ValidationError("repetition kind must be production or variable")
        if self.class_tag is None:
            object.__setattr__(self, "class_tag", classify(self))

    @property
    def labels(self) -> tuple:
        return tuple(p.label for p in self.productions)

    def production(self, label: str) -> Production:
        for p in self.productions:
            if p.label == label:
                return p
        raise KeyError(label)

    def by_head(self) -> dict:
        out: dict = {}
        for p in self.productions:
            out.setdefault(p.lhs[0], []).append(p)
        return out

    @property
    def alphabet(self) -> tuple:
        return self.terminals

    def element_of(self, p: Production):
        """What a derivation step contributes to the occurrence profile."""
        return p.label if self.repetition == "production" else p.lhs[0]


def grammar_problems(g: OmegaGrammar) -> list:
    out = []
    N, T = set(g.nonterminals), set(g.terminals)
    if N & T:
        out.append("nonterminals and terminals overlap")
    if g.start not in N:
        out.append("start symbol not a nonterminal")
    labels = [p.label for p in g.productions]
    if len(labels) != len(set(labels)):
        out.append("production labels must be unique")
    for p in g.productions:
        if any(x not in N for x in p.lhs):
            out.append(f"left-hand side of {p.label} must consist of nonterminals")
        if any(x not in N and x not in T for x in p.rhs):
            out.append(f"right-hand side of {p.label} uses an undeclared symbol")
    uni = set(labels) if g.repetition == "production" else N
    if not g.family.relevant() <= uni:
        out.append("designated set not within the repetition universe")
    if g.repetition == "variable" and g.class_tag not in ("RLG", "CFG"):
        out.append("variable repetition sets need a right-linear or context-free grammar")
    try:
        tag = classify(g)
        if CLASS_ORDER.index(g.class_tag) < CLASS_ORDER.index(tag):
            out.append(f"class tag {g.class_tag} does not fit the productions ({tag})")
    except ValidationError as e:
        out.append(str(e))
    return list(dict.fromkeys(out))


def classify(g: OmegaGrammar) -> str:
    """Most restrictive class among RLG, CFG, CSG, PSG."""
    N = set(g.nonterminals)
    for p in g.productions:
        if any(x not in N for x in p.lhs):
            raise ValidationError(f"invalid grammar: left-hand side of {p.label} contains a terminal")
    if all(len(p.lhs) == 1 for p in g.productions):
        def right_linear(p):
            body = p.rhs[:-1] if p.rhs and p.rhs[-1] in N else p.rhs
            return all(x not in N for x in body)
        if all(right_linear(p) for p in g.productions):
            return "RLG"
        return "CFG"
    if all(len(p.lhs) <= len(p.rhs) for p in g.productions):
        return "CSG"
    return "PSG"


def is_csg_compatible(g: OmegaGrammar) -> bool:
    """No production shrinks (so the grammar is also a CSG)."""
    return all(len(p.lhs) <= len(p.rhs) for p in g.productions)


# ------------------------------------------------------- derivation stepping

@dataclass(frozen=True)
class SententialForm:
    symbols: tuple
    nonterminals: frozenset = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))

    @property
    def emitted(self) -> int:
        """Length of the longest terminal-only prefix."""
        for i, x in enumerate(self.symbols):
            if x in self.nonterminals:
                return i
        return len(self.symbols)

    @property
    def emitted_prefix(self) -> tuple:
        return self.symbols[:self.emitted]

    def leftmost(self) -> int | None:
        e = self.emitted
        return e if e < len(self.symbols) else None

    def __str__(self):
        return " ".join(self.symbols)


def start_form(g: OmegaGrammar) -> SententialForm:
    return SententialForm((g.start,), frozenset(g.nonterminals))


def derive_step(form: SententialForm, p: Production, position: int,
                policy: str = "normal") -> SententialForm:
    syms = form.symbols
    if syms[position:position + len(p.lhs)] != p.lhs:
        raise OmegaError(f"left-hand side of {p.label} does not occur at position {position}")
    if policy == "leftmost" and position != form.leftmost():
        raise OmegaError(f"{p.label} at {position} does not rewrite the leftmost nonterminal")
    new = syms[:position] + p.rhs + syms[position + len(p.lhs):]
    return SententialForm(new, form.nonterminals)


@dataclass(frozen=True)
class DerivationPrefix:
    initial: SententialForm
    steps: tuple                # (label, position)
    result: SententialForm
    policy: str = "normal"

    def replay(self, g: OmegaGrammar) -> SententialForm:
        form = self.initial
        for label, pos in self.steps:
            form = derive_step(form, g.production(label), pos, self.policy)
        if form.symbols != self.result.symbols:
            raise OmegaError("replayed derivation does not reproduce the stored form")
        return form

    def labels(self) -> list:
        return [label for label, _ in self.steps]


def derive(g: OmegaGrammar, steps: Sequence, policy: str = "normal",
           initial: SententialForm | None = None) -> DerivationPrefix:
    form = initial or start_form(g)
    first = form
    for label, pos in steps:
        form = derive_step(form, g.production(label), pos, policy)
    return DerivationPrefix(first, tuple(steps), form, policy)


# ------------------------------------------------------ repetition-set kinds

def var_to_prod_family(g: OmegaGrammar, cap: int = ANALYSIS_CAP) -> OmegaGrammar:
    """Variable repetition sets to production repetition sets.

    A member ``F_N`` becomes every label set ``D`` whose left-hand sides are
    exactly ``F_N``.
    """
    if g.repetition != "variable":
        raise ValidationError("grammar already uses production repetition sets")
    heads = g.by_head()
    members = []
    total = 0
    for FN in g.family.sorted_members():
        groups = [frozenset(p.label for p in heads.get(A, ())) for A in sorted(FN)]
        if any(not grp for grp in groups):
            continue
        count = 1
        for grp in groups:
            count *= (1 << len(grp)) - 1
        total += count
        if total > cap:
            raise ResourceError(f"production family exceeds cap {cap}")
        block = SetConstraint(frozenset(), frozenset().union(*groups) if groups else frozenset(), groups)
        if not groups:
            continue
        members.extend(block.enumerate())
    fam = DesignatedFamily(g.labels, members)
    return replace(g, repetition="production", family=fam, class_tag=g.class_tag)


def prod_to_var_family(g: OmegaGrammar) -> OmegaGrammar:
    """Split each ``p: A -> x`` into ``A -> A_p`` and ``A_p -> x``."""
    if g.repetition != "production":
        raise ValidationError("grammar already uses variable repetition sets")
    if g.class_tag not in ("RLG", "CFG"):
        raise ValidationError("variable repetition sets need a right-linear or context-free grammar")
    taken = set(g.nonterminals) | set(g.terminals)
    fresh = {}
    for p in g.productions:
        name = f"{p.head}_{p.label}"
        while name in taken:
            name += "'"
        taken.add(name)
        fresh[p.label] = name
    prods = []
    labels = set(g.labels)
    for p in g.productions:
        entry = f"{p.label}#1"
        while entry in labels:
            entry += "'"
        labels.add(entry)
        prods.append(Production(entry, (p.head,), (fresh[p.label],)))
        prods.append(Production(p.label, (fresh[p.label],), p.rhs))
    N = tuple(g.nonterminals) + tuple(fresh[p.label] for p in g.productions)
    members = []
    for F in g.family.sorted_members():
        members.append({g.production(x).head for x in F} | {fresh[x] for x in F})
    fam = DesignatedFamily(N, members)
    return OmegaGrammar(N, g.terminals, tuple(prods), g.start, fam, "variable", None,
                        g.name)


# ------------------------------------------------------------------ analyses

def pairwise(families: Iterable, cap: int = ANALYSIS_CAP, what: str = "") -> frozenset:
    """All unions taking one member from each family."""
    acc = {frozenset()}
    for fam in families:
        acc = {a | b for a in acc for b in fam}
        if len(acc) > cap:
            raise ResourceError(f"analysis family for {what or 'string'} exceeds cap {cap}")
        if not acc:
            return frozenset()
    return frozenset(acc)


def compose(f1: frozenset, f2: frozenset) -> frozenset:
    """X(ab) = X(a) | X(b) | {H1 | H2}."""
    return frozenset(f1 | f2 | {a | b for a in f1 for b in f2})


class Analysis:
    """Cached NL/TR/SP families of a context-free grammar."""

    def __init__(self, g: OmegaGrammar, cap: int = ANALYSIS_CAP, tr_empty: bool = True):
        if g.class_tag not in ("RLG", "CFG"):
            raise ValidationError("analyses need a context-free grammar")
        self.g = g
        self.cap = cap
        self.tr_empty = tr_empty
        self.N = set(g.nonterminals)
        self.heads = g.by_head()
        self._nl = None
        self._trp = None
        self._reach = None
        self._loop = None
        self._sp = None

    def _check(self, fam, key):
        if len(fam) > self.cap:
            raise ResourceError(f"analysis family for nonterminal {key} exceeds cap {self.cap}")

    # -- NL
    def nl_table(self) -> dict:
        if self._nl is None:
            nl = {A: set() for A in self.g.nonterminals}
            changed = True
            while changed:
                changed = False
                for p in self.g.productions:
                    if any(x not in self.N for x in p.rhs):
                        continue
                    for combo in _cartesian(*[nl[x] for x in p.rhs]):
                        d = frozenset({p.label}).union(*combo)
                        if d not in nl[p.head]:
                            nl[p.head].add(d)
                            self._check(nl[p.head], p.head)
                            changed = True
            self._nl = {A: frozenset(v) for A, v in nl.items()}
        return self._nl

    def nl(self, alpha: Sequence) -> frozenset:
        table = self.nl_table()
        if any(x not in self.N for x in alpha):
            return frozenset()
        return pairwise((table[x] for x in alpha), self.cap)

    # -- TR (non-empty derivations first; the zero-step one adds the empty set)
    def _tr_plus(self) -> dict:
        if self._trp is None:
            trp = {A: set() for A in self.g.nonterminals}
            changed = True
            while changed:
                changed = False
                for p in self.g.productions:
                    parts = [(trp[x] | {frozenset()}) if x in self.N else {frozenset()}
                             for x in p.rhs]
                    for h in pairwise(parts, self.cap, p.head):
                        d = h | {p.label}
                        if d not in trp[p.head]:
                            trp[p.head].add(d)
                            self._check(trp[p.head], p.head)
                            changed = True
            self._trp = {A: frozenset(v) for A, v in trp.items()}
        return self._trp

    def tr_symbol(self, x) -> frozenset:
        base = self._tr_plus().get(x, frozenset()) if x in self.N else frozenset()
        return base | {frozenset()} if self.tr_empty else base

    def tr(self, alpha: Sequence) -> frozenset:
        if self.tr_empty:
            return pairwise((self.tr_symbol(x) for x in alpha), self.cap)
        acc = frozenset()
        for x in alpha:
            acc = compose(acc, self.tr_symbol(x))
            if len(acc) > self.cap:
                raise ResourceError(f"analysis family exceeds cap {self.cap}")
        return acc

    def tr1(self, alpha: Sequence, F) -> frozenset:
        F = frozenset(F)
        return frozenset(d for d in self.tr(alpha) if d <= F)

    # -- SP
    def _tr_star(self, x) -> set:
        return (self._tr_plus()[x] | {frozenset()}) if x in self.N else {frozenset()}

    def _reach_table(self) -> dict:
        """reach[(X, B)]: label sets of finite derivations from X to a form containing B."""
        if self._reach is None:
            reach = {(X, B): set() for X in self.g.nonterminals for B in self.g.nonterminals}
            for B in self.g.nonterminals:
                reach[(B, B)].add(frozenset())
            changed = True
            while changed:
                changed = False
                for p in self.g.productions:
                    for B in self.g.nonterminals:
                        for i, y in enumerate(p.rhs):
                            if y not in self.N or not reach[(y, B)]:
                                continue
                            parts = [reach[(y, B)] if j == i else self._tr_star(z)
                                     for j, z in enumerate(p.rhs)]
                            for h in pairwise(parts, self.cap, p.head):
                                d = h | {p.label}
                                if d not in reach[(p.head, B)]:
                                    reach[(p.head, B)].add(d)
                                    self._check(reach[(p.head, B)], p.head)
                                    changed = True
            self._reach = reach
        return self._reach

    def loop_sets(self, B) -> frozenset:
        """Label sets of finite derivations ``B =>+ x B y``."""
        if self._loop is None:
            reach = self._reach_table()
            loops = {}
            for A in self.g.nonterminals:
                out = set()
                for p in self.heads.get(A, ()):
                    for i, y in enumerate(p.rhs):
                        if y not in self.N or not reach[(y, A)]:
                            continue
                        parts = [reach[(y, A)] if j == i else self._tr_star(z)
                                 for j, z in enumerate(p.rhs)]
                        out |= {h | {p.label} for h in pairwise(parts, self.cap, A)}
                self._check(out, A)
                loops[A] = frozenset(out)
            self._loop = loops
        return self._loop[B]

    def sp_table(self) -> dict:
        if self._sp is None:
            sp = {A: set(self.loop_sets(A)) for A in self.g.nonterminals}
            changed = True
            while changed:
                changed = False
                for p in self.g.productions:
                    for d in self._sp_string(p.rhs, sp):
                        if d not in sp[p.head]:
                            sp[p.head].add(d)
                            self._check(sp[p.head], p.head)
                            changed = True
            self._sp = {A: frozenset(v) for A, v in sp.items()}
        return self._sp

    def _sp_string(self, alpha, table) -> frozenset:
        acc = frozenset()
        for x in alpha:
            if x in self.N:
                acc = compose(acc, frozenset(table[x]))
                if len(acc) > self.cap:
                    raise ResourceError(f"analysis family exceeds cap {self.cap}")
        return acc

    def sp(self, alpha: Sequence) -> frozenset:
        return self._sp_string(alpha, self.sp_table())


def compute_NL(g: OmegaGrammar, cap: int = ANALYSIS_CAP) -> dict:
    return Analysis(g, cap).nl_table()


def compute_TR(g: OmegaGrammar, cap: int = ANALYSIS_CAP, include_empty: bool = True) -> dict:
    a = Analysis(g, cap, include_empty)
    return {A: a.tr_symbol(A) for A in g.nonterminals}


def compute_SP(g: OmegaGrammar, cap: int = ANALYSIS_CAP) -> dict:
    return Analysis(g, cap).sp_table()


def compute_TR1(g: OmegaGrammar, F, cap: int = ANALYSIS_CAP, include_empty: bool = True) -> dict:
    a = Analysis(g, cap, include_empty)
    F = frozenset(F)
    return {A: frozenset(d for d in a.tr_symbol(A) if d <= F) for A in g.nonterminals}


def make_grammar(productions: Iterable, start: str = "S", family=(), terminals=None,
                 nonterminals=None, repetition: str = "production", name: str = "G",
                 class_tag: str | None = None) -> OmegaGrammar:
    """Convenience constructor from ``(label, lhs, rhs)`` triples of strings or tuples.

    Strings are split into single-character symbols.  Symbols that appear on a
    left-hand side (or are upper-case letters) become nonterminals unless
    given explicitly.
    """
    def syms(x):
        if isinstance(x, str):
            return tuple(c for c in x if not c.isspace())
        return tuple(x)

    prods = [Production(lbl, syms(l), syms(r)) for lbl, l, r in productions]
    if nonterminals is None:
        N = []
        for p in prods:
            for x in p.lhs + p.rhs:
                if (x in [y for q in prods for y in q.lhs] or (len(x) == 1 and x.isupper())) \
                        and x not in N:
                    N.append(x)
        if start not in N:
            N.insert(0, start)
    else:
        N = list(nonterminals)
    if terminals is None:
        T = []
        for p in prods:
            for x in p.rhs:
                if x not in N and x not in T:
                    T.append(x)
        T.sort()
    else:
        T = list(terminals)
    uni = [p.label for p in prods] if repetition == "production" else N
    fam = family if isinstance(family, DesignatedFamily) else DesignatedFamily(uni, family)
    return OmegaGrammar(tuple(N), tuple(T), tuple(prods), start, fam, repetition,
                        class_tag, name)
