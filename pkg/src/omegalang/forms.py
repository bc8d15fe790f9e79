"""Special forms of omega-grammars.

Every construction returns a new grammar whose repetition family is
rewritten so that the (sigma, rho, pi)-language is unchanged.  Families that
would be too large to list are kept as ``SetConstraint`` blocks.
"""

from __future__ import annotations

from itertools import combinations

from .automata import fresh_name
from .core import (AcceptanceMode, DesignatedFamily, RefusedError, ResourceError,
                   SetConstraint, ValidationError)
from .grammars import (ANALYSIS_CAP, Analysis, OmegaGrammar, Production, classify,
                       pairwise, var_to_prod_family)

DOLLAR = "$"
OPEN_MODES = (("ran", "cap", "leftmost"), ("ran", "eq", "leftmost"))


def _production_kind(g: OmegaGrammar) -> OmegaGrammar:
    return var_to_prod_family(g) if g.repetition == "variable" else g


def _image_family(fam: DesignatedFamily, image: dict, universe) -> DesignatedFamily:
    """Replace every label by the set of labels simulating it.

    Blocks map to blocks; this is exact on profiles in which a label's
    simulating set is always used together with the label itself.
    """
    def img(s):
        return frozenset().union(*(image[x] for x in s)) if s else frozenset()

    members = [img(m) for m in fam.explicit]
    blocks = [SetConstraint(img(c.lower), img(c.upper), [img(h) for h in c.hits])
              for c in fam.constraints]
    return DesignatedFamily(universe, members, blocks)


def _fresh_symbol(base: str, taken: set) -> str:
    name = fresh_name(base, taken)
    taken.add(name)
    return name


# ------------------------------------------------------------ RLG short form

def rlg_short_form(g: OmegaGrammar) -> OmegaGrammar:
    """Split ``A -> uB`` / ``A -> u`` with ``|u| >= 2`` into one-terminal steps."""
    if g.class_tag != "RLG" and classify(g) != "RLG":
        raise ValidationError("rlg_short_form needs a right-linear grammar")
    g = _production_kind(g)
    N = set(g.nonterminals)
    taken = N | set(g.terminals)
    prods, image, new_nts = [], {}, []
    labels = set(g.labels)
    for p in g.productions:
        tail = p.rhs[-1:] if p.rhs and p.rhs[-1] in N else ()
        u = p.rhs[:len(p.rhs) - len(tail)]
        if len(u) <= 1:
            prods.append(p)
            image[p.label] = frozenset({p.label})
            continue
        chain = [p.head] + [_fresh_symbol(f"{p.head}_{p.label}", taken) for _ in range(len(u) - 1)]
        new_nts += chain[1:]
        parts = []
        for m, a in enumerate(u):
            lbl = fresh_name(p.label, labels, m + 1)
            labels.add(lbl)
            nxt = (chain[m + 1],) if m + 1 < len(u) else tail
            prods.append(Production(lbl, (chain[m],), (a,) + nxt))
            parts.append(lbl)
        image[p.label] = frozenset(parts)
    uni = [p.label for p in prods]
    fam = _image_family(g.family, image, uni)
    return OmegaGrammar(tuple(g.nonterminals) + tuple(new_nts), g.terminals, tuple(prods),
                        g.start, fam, "production", "RLG", g.name)


def is_short_rlg(g: OmegaGrammar) -> bool:
    N = set(g.nonterminals)
    for p in g.productions:
        if len(p.lhs) != 1 or p.lhs[0] not in N:
            return False
        body = p.rhs[:-1] if p.rhs and p.rhs[-1] in N else p.rhs
        if len(body) > 1 or any(x in N for x in body):
            return False
    return True


# ---------------------------------------------------------- epsilon removal

def _pe_variants(p: Production, nl: dict, N: set, cap: int):
    """(beta, K) pairs: beta keeps some symbols of p.rhs, K erases the others."""
    nullable = [i for i, x in enumerate(p.rhs) if x in N and nl[x]]
    out = {}
    for r in range(len(nullable) + 1):
        for erased in combinations(nullable, r):
            beta = tuple(x for i, x in enumerate(p.rhs) if i not in erased)
            if not beta:
                continue
            for K in pairwise([nl[p.rhs[i]] for i in erased], cap, p.label):
                out.setdefault((beta, K), None)
                if len(out) > cap:
                    raise ResourceError(f"PE family for production {p.label} exceeds cap {cap}")
    return list(out)


def _eps_label(p: Production, K, beta) -> str:
    multi = any(len(x) > 1 for x in beta)
    body = ".".join(beta) if multi else "".join(beta)
    return f"[{p.label},{{{'+'.join(sorted(K))}}},{body}]"


def epsilon_free_pro(g: OmegaGrammar, cap: int = ANALYSIS_CAP):
    """The epsilon-free productions and the map ``Pro`` from new to old labels."""
    if g.class_tag not in ("RLG", "CFG"):
        raise ValidationError("cfg_epsilon_free needs a context-free grammar")
    g = _production_kind(g)
    nl = Analysis(g, cap).nl_table()
    N = set(g.nonterminals)
    prods, pro = [], {}
    for p in g.productions:
        for beta, K in _pe_variants(p, nl, N, cap):
            lbl = _eps_label(p, K, beta)
            if lbl in pro:
                continue
            prods.append(Production(lbl, p.lhs, beta))
            pro[lbl] = frozenset({p.label}) | K
    return g, prods, pro


def cfg_epsilon_free(g: OmegaGrammar, mode: AcceptanceMode, cap: int = ANALYSIS_CAP) -> OmegaGrammar:
    """Equivalent context-free grammar without ``A -> eps`` productions."""
    if (mode.sigma, mode.rho, mode.pi) in OPEN_MODES:
        raise RefusedError(
            f"open problem: no epsilon-free construction is known for "
            f"({mode.sigma},{mode.rho},l)-acceptance")
    if mode.pi == "none":
        raise ValidationError("grammar modes need a derivation policy")
    g, prods, pro = epsilon_free_pro(g, cap)
    uni = [p.label for p in prods]
    fam = g.family
    if mode.rho == "cap":
        rel = fam.relevant()
        members = [{x for x in uni if pro[x] & rel}] if not fam.is_empty() else []
        H = DesignatedFamily(uni, members)
    elif mode.rho == "subseteq":
        blocks = [SetConstraint((), {x for x in uni if pro[x] <= c.upper}) for c in fam.blocks()]
        H = DesignatedFamily(uni, (), blocks)
    else:
        members, blocks = [], []
        for c in fam.blocks():
            if not c.upper:
                members.append(frozenset())
                continue
            up = {x for x in uni if pro[x] <= c.upper}
            hits = [{x for x in up if e in pro[x]} for e in c.lower]
            hits += [{x for x in up if pro[x] & h} for h in c.hits]
            if all(hits):
                blocks.append(SetConstraint((), up, hits))
        H = DesignatedFamily(uni, members, blocks)
    N = tuple(g.nonterminals)
    return OmegaGrammar(N, g.terminals, tuple(prods), g.start, H, "production", None, g.name)


def has_no_epsilon(g: OmegaGrammar) -> bool:
    return all(p.rhs for p in g.productions)


# ------------------------------------------------------ terminal separation

def _separate(g: OmegaGrammar, cls: str, keep_unit: bool = False):
    """Separation proper; ``keep_unit`` leaves ``A -> a`` untouched."""
    g = _production_kind(g)
    N = set(g.nonterminals)
    T = set(g.terminals)
    taken = N | T
    new_nts = []
    prods, image = [], {}
    labels = set(g.labels)
    for p in g.productions:
        unit = keep_unit and len(p.lhs) == 1 and len(p.rhs) == 1 and p.rhs[0] in T
        if p.rhs and all(x in N for x in p.rhs) or unit:
            prods.append(p)
            image[p.label] = frozenset({p.label})
        elif not p.rhs and len(p.lhs) == 1:
            if cls == "CSG":
                raise ValidationError("a context-sensitive grammar has no epsilon-productions")
            prods.append(p)
            image[p.label] = frozenset({p.label})
        elif not p.rhs:
            if cls != "PSG":
                raise ValidationError(f"{cls} input cannot erase a multi-symbol left-hand side")
            E = _fresh_symbol(f"E{p.label}", taken)
            new_nts.append(E)
            lbl = fresh_name(p.label, labels, 0) if f"{p.label}#eps" in labels else f"{p.label}#eps"
            labels.add(lbl)
            prods.append(Production(p.label, p.lhs, (E,)))
            prods.append(Production(lbl, (E,), ()))
            image[p.label] = frozenset({p.label, lbl})
        else:
            rhs, extra = [], [p.label]
            for i, x in enumerate(p.rhs, start=1):
                if x in N:
                    rhs.append(x)
                    continue
                b = fresh_name(f"b{p.label}", taken, i)
                taken.add(b)
                new_nts.append(b)
                lbl = fresh_name(p.label, labels, i)
                labels.add(lbl)
                rhs.append(b)
                prods.append(Production(lbl, (b,), (x,)))
                extra.append(lbl)
            prods.insert(len(prods) - (len(extra) - 1), Production(p.label, p.lhs, tuple(rhs)))
            image[p.label] = frozenset(extra)
    uni = [p.label for p in prods]
    fam = g.family
    blocks = []
    for c in fam.blocks():
        up = frozenset().union(*(image[x] for x in c.upper)) if c.upper else frozenset()
        blocks.append(SetConstraint(c.lower, up, c.hits))
    H = DesignatedFamily(uni, (), blocks)
    out = OmegaGrammar(tuple(g.nonterminals) + tuple(new_nts), g.terminals, tuple(prods),
                       g.start, H, "production", None, g.name)
    return out, image


def separation_image(g: OmegaGrammar) -> dict:
    """f(p): the labels of the separated grammar simulating each production of ``g``."""
    cls = g.class_tag if g.class_tag in ("CSG", "PSG") else "CFG"
    return _separate(g, cls)[1]


def psg_separate_terminals(g: OmegaGrammar) -> OmegaGrammar:
    return _separate(g, "PSG")[0]


def cfg_separate_terminals(g: OmegaGrammar) -> OmegaGrammar:
    if g.class_tag not in ("RLG", "CFG"):
        raise ValidationError("cfg_separate_terminals needs a context-free grammar")
    return _separate(g, "CFG")[0]


def csg_separate_terminals(g: OmegaGrammar) -> OmegaGrammar:
    if g.class_tag not in ("RLG", "CFG", "CSG") or any(not p.rhs for p in g.productions):
        raise ValidationError("csg_separate_terminals needs a context-sensitive grammar "
                              "without epsilon-productions")
    return _separate(g, "CSG")[0]


def separate_terminals(g: OmegaGrammar) -> OmegaGrammar:
    """Dispatch on the class tag."""
    if g.class_tag in ("RLG", "CFG"):
        return cfg_separate_terminals(g)
    if g.class_tag == "CSG":
        return csg_separate_terminals(g)
    return psg_separate_terminals(g)


def is_separated(g: OmegaGrammar) -> bool:
    N = set(g.nonterminals)
    for p in g.productions:
        if p.rhs and all(x in N for x in p.rhs):
            continue
        if len(p.lhs) == 1 and (len(p.rhs) == 1 and p.rhs[0] not in N or not p.rhs):
            continue
        return False
    return True


# ---------------------------------------------------------- $-boundary form

def bar(a: str) -> str:
    return a + "̄"


def to_dollar_boundary(g: OmegaGrammar, mode: AcceptanceMode) -> OmegaGrammar:
    """Grammar whose forms read ``terminals $ nonterminals``.

    Every terminal ``a`` on a right-hand side becomes the nonterminal ``ā``,
    which only turns into ``a`` by crossing the boundary (``$ā -> a$``).
    """
    if mode.pi != "normal":
        raise RefusedError("the $-boundary form is only equivalent under normal derivations")
    g = _production_kind(g)
    csg = g.class_tag != "PSG" and all(p.rhs for p in g.productions)
    N = list(g.nonterminals)
    taken = set(N) | set(g.terminals) | {DOLLAR}
    bars = {}
    for a in g.terminals:
        name = bar(a)
        while name in taken:
            name += "̄"
        taken.add(name)
        bars[a] = name
    S1 = _fresh_symbol(g.start, taken)
    labels = set(g.labels)
    ps = fresh_name("ps", labels, 0) if "ps" in labels else "ps"
    labels.add(ps)
    prods = [Production(ps, (S1,), (DOLLAR, g.start))]
    image = {}
    for p in g.productions:
        if not p.rhs and len(p.lhs) > 1:
            # erasing is only allowed from a single nonterminal
            E = _fresh_symbol("E" + p.label, taken)
            N.append(E)
            le = p.label + "#eps"
            if le in labels:
                le = fresh_name(le, labels)
            labels.add(le)
            prods += [Production(p.label, p.lhs, (E,)), Production(le, (E,), ())]
            image[p.label] = {p.label, le}
        else:
            prods.append(Production(p.label, p.lhs, tuple(bars.get(x, x) for x in p.rhs)))
            image[p.label] = {p.label}
    P4 = {}
    for a in g.terminals:
        lbl = f"p_{a}"
        while lbl in labels:
            lbl += "'"
        labels.add(lbl)
        P4[a] = lbl
        prods.append(Production(lbl, (DOLLAR, bars[a]), (a, DOLLAR)))
    uni = [p.label for p in prods]
    base = _image_family(g.family, image, uni)
    Ps, P4s = frozenset({ps}), frozenset(P4.values())
    key = (mode.sigma, mode.rho)
    blocks = []
    for c in base.blocks():
        if mode.rho == "cap":
            blocks.append(c)
        elif key == ("ran", "subseteq"):
            blocks.append(SetConstraint((), c.upper | Ps | P4s))
        elif key == ("inf", "subseteq"):
            blocks.append(SetConstraint((), c.upper | P4s))
        elif key == ("ran", "eq"):
            blocks.append(SetConstraint(c.lower | Ps, c.upper | Ps | P4s, list(c.hits) + [P4s]))
        else:
            blocks.append(SetConstraint(c.lower, c.upper | P4s, list(c.hits) + [P4s]))
    if mode.rho == "cap":
        H = DesignatedFamily(uni, base.explicit, base.constraints)
    else:
        H = DesignatedFamily(uni, (), blocks)
    nts = tuple(N) + tuple(bars[a] for a in g.terminals) + (S1, DOLLAR)
    return OmegaGrammar(nts, g.terminals, tuple(prods), S1, H, "production",
                        "CSG" if csg else "PSG", g.name)


def dollar_form_problems(g: OmegaGrammar, csg: bool | None = None) -> list:
    """Productions violating the $-boundary forms (1)-(4) ((1)-(3) for a CSG)."""
    if csg is None:
        csg = g.class_tag == "CSG"
    N = set(g.nonterminals) - {DOLLAR, g.start}
    T = set(g.terminals)
    bad = []
    for p in g.productions:
        lhs, rhs = p.lhs, p.rhs
        if lhs and rhs and all(x in N for x in lhs + rhs) and (not csg or len(lhs) <= len(rhs)):
            continue
        if lhs == (g.start,) and len(rhs) >= 2 and rhs[0] == DOLLAR and all(x in N for x in rhs[1:]):
            continue
        if len(lhs) == 2 and lhs[0] == DOLLAR and lhs[1] in N and len(rhs) == 2 \
                and rhs[0] in T and rhs[1] == DOLLAR:
            continue
        if not csg and len(lhs) == 1 and lhs[0] in N and not rhs:
            continue
        bad.append(p.label)
    return bad


def normalize(g: OmegaGrammar, form: str, mode: AcceptanceMode | None = None) -> OmegaGrammar:
    """Entry point used by the command line."""
    if form == "short":
        return rlg_short_form(g)
    if form == "eps-free":
        if mode is None:
            raise ValidationError("eps-free needs an acceptance mode")
        return cfg_epsilon_free(g, mode)
    if form == "separate":
        return separate_terminals(g)
    if form == "dollar":
        if mode is None:
            raise ValidationError("dollar needs an acceptance mode")
        return to_dollar_boundary(g, mode)
    raise ValidationError(f"unknown form {form!r}")
