"""Walk G_anbn through a pushdown automaton and back, printing verdicts.

Run with ``python3 demos/anbn_roundtrip.py``.
"""
from omegalang.core import AcceptanceMode, parse_lasso
from omegalang.grammars import make_grammar
from omegalang.oracle import bounded_member, certificate_check
from omegalang.translate import cfg_to_pda, pda_to_cfg

g = make_grammar([("p1", "S", "AS"), ("p2", "A", "aAb"), ("p3", "A", "ab")],
                 family=[{"p1", "p3"}, {"p1", "p2", "p3"}], name="G_anbn")
mode = AcceptanceMode("inf", "eq", "leftmost")
pda = cfg_to_pda(g, mode)
back = pda_to_cfg(pda, mode.with_pi("none"))
print(f"grammar: {len(g.productions)} productions")
print(f"pda: {len(pda.states)} states, {len(pda.transitions)} transitions")
print(f"back: {len(back.nonterminals)} nonterminals, {len(back.productions)} productions")

for text in ["(ab)^w", "aabb(ab)^w", "aab(ab)^w", "b(ab)^w"]:
    w = parse_lasso(text)
    vg = bounded_member(g, w, mode)
    vp = bounded_member(pda, w, mode.with_pi("none"))
    print(f"{text:12} grammar={vg}  pda={vp}")
    if vg.accepted:
        print("  certificate", "passes" if certificate_check(vg.certificate) else "FAILS")
        print("  " + vg.certificate.dump().replace("\n", "\n  "))
