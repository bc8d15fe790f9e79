"""Sample devices and seeded random generators shared by the test modules."""

import random

from omegalang.automata import BLANK, OmegaFSA, OmegaPDA, OmegaTM
from omegalang.core import DesignatedFamily
from omegalang.grammars import make_grammar


def a_infb(family=({"q1"},)):
    """Two states; q1 is entered exactly on b."""
    Q = ["q0", "q1"]
    trans = [("q0", "a", "q0"), ("q0", "b", "q1"), ("q1", "a", "q0"), ("q1", "b", "q1")]
    return OmegaFSA(Q, "ab", trans, "q0", DesignatedFamily(Q, family), name="A_infb")


def g_rl(family=({"p2"},)):
    return make_grammar([("p1", "S", "aS"), ("p2", "S", "bS")], family=family, name="G_rl")


def g_anbn(family=({"p1", "p3"}, {"p1", "p2", "p3"})):
    return make_grammar([("p1", "S", "AS"), ("p2", "A", "aAb"), ("p3", "A", "ab")],
                        family=family, name="G_anbn")


def g_ab_dollar(family=({"p1"},)):
    """S -> a b S; already a one-production grammar for (ab)^w."""
    return make_grammar([("p1", "S", "abS")], family=family, name="G_ab", class_tag="PSG")


def tm_right():
    """Two states alternating while always moving right; Buchi on q1."""
    Q = ["q0", "q1"]
    trans = []
    for x in "ab":
        trans.append(("q0", (x,), "q1", (x,), ("R",)))
        trans.append(("q1", (x,), "q0", (x,), ("R",)))
    return OmegaTM(Q, "ab", ["a", "b", BLANK], trans, "q0",
                   DesignatedFamily(Q, [{"q1"}]), 1, BLANK, True, "M_right")


def pda_count():
    """Pushes X on a, pops on b; (ab)^w keeps the stack bounded."""
    Q = ["p", "r"]
    trans = [("p", "a", "Z", "p", ("X", "Z")), ("p", "a", "X", "p", ("X", "X")),
             ("p", "b", "X", "r", ()), ("r", "b", "X", "r", ()),
             ("r", "a", "Z", "p", ("X", "Z")), ("r", "a", "X", "p", ("X", "X"))]
    return OmegaPDA(Q, "ab", ["Z", "X"], trans, "p", "Z", DesignatedFamily(Q, [{"r"}]),
                    name="D_count")


# ------------------------------------------------------------------ random

def _family(rng, universe, members=2, max_size=3):
    out = []
    for _ in range(rng.randint(1, members)):
        k = rng.randint(1, min(max_size, len(universe)))
        out.append(set(rng.sample(list(universe), k)))
    return out


def random_rlg(rng: random.Random, max_nt=3, max_prods=6):
    N = ["S", "A", "B"][:rng.randint(1, max_nt)]
    prods = []
    # every nonterminal gets a continuing production so that some word is generated
    for i, A in enumerate(N):
        u = "".join(rng.choice("ab") for _ in range(rng.randint(1, 2)))
        prods.append((f"p{i + 1}", A, u + rng.choice(N)))
    while len(prods) < rng.randint(len(N), max_prods):
        A = rng.choice(N)
        u = "".join(rng.choice("ab") for _ in range(rng.randint(0, 2)))
        tail = rng.choice(N + [""]) if u else rng.choice(N)
        if not u and tail == A:
            continue
        prods.append((f"p{len(prods) + 1}", A, u + tail))
    labels = [p[0] for p in prods]
    return make_grammar(prods, family=_family(rng, labels), terminals="ab",
                        nonterminals=N, name="G_rand")


def random_fsa(rng: random.Random, max_states=4):
    n = rng.randint(1, max_states)
    Q = [f"s{i}" for i in range(n)]
    trans = set()
    for q in Q:
        for a in "ab":
            for _ in range(rng.choice((0, 1, 1, 2))):
                trans.add((q, a, rng.choice(Q)))
    if rng.random() < 0.3:
        trans.add((rng.choice(Q), "", rng.choice(Q)))
    trans = sorted(t for t in trans if not (t[1] == "" and t[0] == t[2]))
    return OmegaFSA(Q, "ab", trans, Q[0], DesignatedFamily(Q, _family(rng, Q)), name="A_rand")


def random_cfg(rng: random.Random, max_nt=2, max_prods=5, max_f=3):
    """Small context-free grammars in which every nonterminal can continue.

    A body may start with a nonterminal only if it comes later in ``N``, so
    there is no left recursion and leftmost derivations keep making progress.
    """
    N = ["S", "A", "B"][:rng.randint(1, max_nt)]

    def body_for(A, length):
        later = N[N.index(A) + 1:]
        body = [rng.choice(["a", "b"] + later)]
        body += [rng.choice(N + ["a", "b"]) for _ in range(length - 1)]
        if length > 1 and rng.random() < 0.6:
            body[-1] = rng.choice(N)
        return tuple(body)

    prods = []
    for i, A in enumerate(N):
        body = [rng.choice("ab"), rng.choice(N)]
        if rng.random() < 0.5:
            body.insert(rng.randint(1, len(body)), rng.choice(N + ["a", "b"]))
        prods.append((f"p{i + 1}", A, tuple(body)))
    while len(prods) < rng.randint(len(N) + 1, max_prods):
        A = rng.choice(N)
        prods.append((f"p{len(prods) + 1}", A, body_for(A, rng.randint(1, 3))))
    labels = [p[0] for p in prods]
    fam = _family(rng, labels, members=2, max_size=max_f)
    return make_grammar(prods, family=fam, terminals="ab", nonterminals=N, name="G_cf")
