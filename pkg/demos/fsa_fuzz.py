"""Fuzz the bounded oracle against the exact FSA decider.

Run with ``python3 demos/fsa_fuzz.py [seed] [count]``.
"""
import random
import sys

from omegalang.automata import OmegaFSA
from omegalang.core import DesignatedFamily, six_modes
from omegalang.oracle import bounded_member, enumerate_lassos, fsa_lasso_member

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
count = int(sys.argv[2]) if len(sys.argv) > 2 else 10
rng = random.Random(seed)
corpus = enumerate_lassos("ab", 2, 2)
tally = {}
for _ in range(count):
    n = rng.randint(1, 3)
    Q = [f"s{i}" for i in range(n)]
    trans = sorted({(q, a, rng.choice(Q)) for q in Q for a in "ab" if rng.random() < 0.8})
    fam = [set(rng.sample(Q, rng.randint(1, n)))]
    fsa = OmegaFSA(Q, "ab", trans, Q[0], DesignatedFamily(Q, fam))
    for mode in six_modes():
        for w in corpus:
            v = bounded_member(fsa, w, mode, 200)
            exact = fsa_lasso_member(fsa, w, mode)
            key = (v.kind, exact)
            tally[key] = tally.get(key, 0) + 1
for (kind, exact), n in sorted(tally.items()):
    flag = "  <-- disagreement" if kind != "Unknown" and (kind == "Accepted") != exact else ""
    print(f"bounded={kind:9} exact={exact!s:5} {n}{flag}")
