"""The eight acceptance criteria, one test each.

Each criterion prints a single ``criterion N: PASS|FAIL ...`` line (also
collected into the pytest terminal summary).  Run directly with
``python3 tests/test_acceptance.py`` for just those lines.
"""

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from samples import (g_ab_dollar, g_anbn, random_cfg, random_fsa, random_rlg,
                     tm_right)

from omegalang.automata import initial_config, successors
from omegalang.cli import run_command
from omegalang.core import (AcceptanceMode, DesignatedFamily, OccurrenceProfile,
                            parse_lasso, satisfies, six_modes)
from omegalang.forms import (cfg_epsilon_free, dollar_form_problems, has_no_epsilon,
                             is_separated, is_short_rlg, rlg_short_form, separate_terminals,
                             to_dollar_boundary)
from omegalang.grammars import make_grammar
from omegalang.oracle import (bounded_member, certificate_check, contradicts, difftest,
                              enumerate_lassos, fsa_lasso_member)
from omegalang.translate import (case5_restart_ok, cfg_nl_to_pda, cfg_to_pda,
                                 fold_layout, fsa_to_rlg, k_folded_version, pda_to_cfg,
                                 psg_to_2tm, rlg_to_fsa, sample_copier, tm_to_csg,
                                 two_tape_to_one)

RESULTS = {}

# every Accepted verdict seen by any criterion, checked by criterion 8
_ACCEPTED = []


def _record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def _diff(a, b, ma, mb, corpus, bound):
    rep = difftest(a, b, ma, mb, corpus, bound)
    for _, va, vb in rep.rows:
        _ACCEPTED.extend(v.certificate for v in (va, vb) if v.accepted)
    return rep


def _sweep(jobs, corpus, bound):
    """Difftest several (a, b, mode_a, mode_b) jobs, word by word.

    Explorations do not depend on sigma and rho, so visiting all jobs for one
    word before the next lets the oracle's small cache serve every mode.
    A contradiction needs both verdicts decided, so ``b`` is not explored
    when ``a`` comes back Unknown; jobs list the cheaper device first.
    Returns (contradictions, pairs where both sides ran, accepted on the b side).
    """
    contra = checks = accepted = 0
    for w in corpus:
        for a, b, ma, mb in jobs:
            va = bounded_member(a, w, ma, bound)
            if va.unknown:
                continue
            vb = bounded_member(b, w, mb, bound)
            _ACCEPTED.extend(v.certificate for v in (va, vb) if v.accepted)
            contra += contradicts(va, vb)
            checks += 1
            accepted += vb.accepted
    return contra, checks, accepted


# ------------------------------------------------------------ criterion 1

def _brute_profile(prefix, cycle, k=3):
    """ran/inf by counting over prefix + cycle^k with the cycle copies marked."""
    seq = list(prefix) + list(cycle) * k
    ran = set(seq)
    counts = {}
    for x in seq[len(prefix):]:
        counts[x] = counts.get(x, 0) + 1
    inf = {x for x, c in counts.items() if c >= k}
    return ran, inf


def _brute_satisfies(sigma, rho, prefix, cycle, members):
    ran, inf = _brute_profile(prefix, cycle)
    s = ran if sigma == "ran" else inf
    for F in members:
        if rho == "cap" and any(x in F for x in s):
            return True
        if rho == "subseteq" and all(x in F for x in s):
            return True
        if rho == "eq" and s == set(F):
            return True
    return False


def criterion_1():
    rng = random.Random(1)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        U = [f"e{i}" for i in range(n)]
        prefix = [rng.choice(U) for _ in range(rng.randint(0, 4))]
        cycle = [rng.choice(U) for _ in range(rng.randint(1, 4))]
        members = [set(x for x in U if rng.random() < 0.5) for _ in range(rng.randint(0, 3))]
        mode = AcceptanceMode(rng.choice(["ran", "inf"]), rng.choice(["cap", "subseteq", "eq"]))
        prof = OccurrenceProfile(frozenset(prefix) | frozenset(cycle), frozenset(cycle))
        got = satisfies(mode, prof, DesignatedFamily(U, members))
        if got != _brute_satisfies(mode.sigma, mode.rho, prefix, cycle, members):
            bad += 1
    dt = time.perf_counter() - t0
    return _record(1, bad == 0 and dt < 1.0, f"1000 triples, mismatches={bad}, {dt:.2f}s")


# ------------------------------------------------------------ criterion 2

def criterion_2():
    rng = random.Random(2)
    corpus = enumerate_lassos("ab", 3, 3)
    t0 = time.perf_counter()
    contra = words = 0
    for _ in range(50):
        g = random_rlg(rng)
        for mode in six_modes("leftmost"):
            fsa = rlg_to_fsa(g, mode)
            rep = _diff(g, fsa, mode, mode.with_pi("none"), corpus, 64)
            contra += len(rep.contradictions)
            words += len(rep.rows)
    for _ in range(50):
        a = random_fsa(rng)
        for mode in six_modes():
            g = fsa_to_rlg(a, mode)
            gm = mode.with_pi("leftmost")
            for w in corpus:
                exact = fsa_lasso_member(a, w, mode)
                v = bounded_member(g, w, gm, 64)
                if v.accepted:
                    _ACCEPTED.append(v.certificate)
                if (v.accepted and not exact) or (v.rejected and exact):
                    contra += 1
                words += 1
    dt = time.perf_counter() - t0
    ok = contra == 0 and dt < 120
    return _record(2, ok, f"contradictions={contra} over {words} checks, {dt:.1f}s")


# ------------------------------------------------------------ criterion 3

def criterion_3():
    rng = random.Random(3)
    corpus = enumerate_lassos("ab", 3, 3)
    grammars = [g_anbn()] + [random_cfg(rng, max_prods=4) for _ in range(30)]
    contra = words = 0
    for g in grammars:
        jobs = []
        for mode in six_modes("leftmost"):
            pda = cfg_to_pda(g, mode)
            back = pda_to_cfg(pda, mode.with_pi("none"))
            jobs += [(g, pda, mode, mode.with_pi("none")), (pda, back, mode.with_pi("none"), mode)]
        c, n, _ = _sweep(jobs, corpus, 200)
        contra += c
        words += n
    mode = AcceptanceMode("inf", "eq", "leftmost")
    g = g_anbn()
    pda = cfg_to_pda(g, mode)
    want = {"(ab)^w": "Accepted", "aabb(ab)^w": "Accepted",
            "aab(ab)^w": "Rejected", "b(ab)^w": "Rejected"}
    wrong = []
    for text, kind in want.items():
        w = parse_lasso(text)
        for dev, m in ((g, mode), (pda, mode.with_pi("none"))):
            v = bounded_member(dev, w, m, 200)
            if v.accepted:
                _ACCEPTED.append(v.certificate)
            if v.kind != kind:
                wrong.append(f"{dev.kind}:{text}={v.kind}")
    ok = contra == 0 and not wrong
    return _record(3, ok, f"contradictions={contra} over {words} decided pairs; G_anbn checks "
                          f"{'ok' if not wrong else ' '.join(wrong)}")


# ------------------------------------------------------------ criterion 4

def _eps_grammar():
    return make_grammar([("p1", "S", "AaS"), ("p2", "A", "b"), ("p3", "A", "")],
                        family=[{"p1", "p3"}, {"p1", "p2"}], name="G_eps")


def _long_rlg():
    return make_grammar([("p1", "S", "abS"), ("p2", "S", "bA"), ("p3", "A", "aabS")],
                        family=[{"p1"}, {"p2", "p3"}], name="G_long")


def _psg():
    return make_grammar([("p1", "S", "ABS"), ("p2", "AB", "ab"), ("p3", "A", "a")],
                        family=[{"p1", "p2"}, {"p1", "p3"}], name="G_psg")


def criterion_4():
    corpus = enumerate_lassos("ab", 3, 3)
    problems, contra = [], 0
    # short form, all modes and both policies
    g = _long_rlg()
    s = rlg_short_form(g)
    if not is_short_rlg(s):
        problems.append("short form has long productions")
    contra += _sweep([(g, s, m, m) for m in six_modes("leftmost") + six_modes("normal")],
                     corpus, 200)[0]
    # epsilon-free, eight supported modes
    g = _eps_grammar()
    supported = [m for m in six_modes("leftmost") + six_modes("normal")
                 if (m.sigma, m.rho, m.pi) not in (("ran", "cap", "leftmost"),
                                                   ("ran", "eq", "leftmost"))]
    jobs = []
    for mode in supported:
        e = cfg_epsilon_free(g, mode)
        if not has_no_epsilon(e):
            problems.append(f"eps-free output has an epsilon production ({mode.short})")
        jobs.append((g, e, mode, mode))
    contra += _sweep(jobs, corpus, 200)[0]
    # separated terminals, all modes
    for g in (g_anbn(), _psg()):
        s = separate_terminals(g)
        if not is_separated(s):
            problems.append(f"{g.name} not separated")
        contra += _sweep([(g, s, m, m) for m in six_modes("leftmost") + six_modes("normal")],
                         corpus, 200)[0]
    # $-boundary, six nl modes
    for g in (make_grammar([("p1", "S", "aS"), ("p2", "S", "a")], family=[{"p1"}],
                           class_tag="CSG", name="G_csg"), g_ab_dollar()):
        jobs = []
        for mode in six_modes("normal"):
            d = to_dollar_boundary(g, mode)
            if dollar_form_problems(d):
                problems.append(f"{g.name} dollar form: {dollar_form_problems(d)[0]}")
            jobs.append((g, d, mode, mode))
        own = enumerate_lassos("".join(sorted(g.terminals)), 3, 3)
        contra += _sweep(jobs, own, 200)[0]
    # refusals through the command line
    tmp = Path(__file__).resolve().parent / "data" / "g_eps.omd"
    codes = [run_command(["normalize", "--form", "eps-free", "--mode", m, "l", str(tmp)])
             for m in ("ran cap", "ran eq")]
    if codes != [3, 3]:
        problems.append(f"refusal exit codes {codes}")
    ok = contra == 0 and not problems
    return _record(4, ok, f"contradictions={contra}; refusal exit codes={codes}"
                          + (f"; {problems}" if problems else ""))


# ------------------------------------------------------------ criterion 5

def _case5_logs(pda, corpus, steps=60, runs=20, seed=5):
    """Random bounded runs of a case (inf, eq) automaton; True when all pass."""
    rng = random.Random(seed)
    for w in corpus[:4]:
        for _ in range(runs):
            c = initial_config(pda)
            log = [pda.start]
            for _ in range(steps):
                nxt = successors(pda, c, w)
                if not nxt:
                    break
                _, c, _, entered = rng.choice(nxt)
                log.append(entered)
            if not case5_restart_ok(log):
                return False
    return True


def criterion_5():
    rng = random.Random(5)
    corpus = enumerate_lassos("ab", 2, 2)
    grammars = [random_cfg(rng, max_prods=4, max_f=3) for _ in range(10)]
    contra = words = 0
    logs_ok = True
    for g in grammars:
        jobs = []
        for mode in six_modes("normal"):
            pda = cfg_nl_to_pda(g, mode)
            jobs.append((g, pda, mode, mode.with_pi("none")))
            if (mode.sigma, mode.rho) == ("inf", "eq"):
                logs_ok &= _case5_logs(pda, corpus)
        c, n, _ = _sweep(jobs, corpus, 400)
        contra += c
        words += n
    ok = contra == 0 and logs_ok
    return _record(5, ok, f"contradictions={contra} over {words} decided pairs; "
                          f"case-5 restart invariant {'holds' if logs_ok else 'VIOLATED'}")


# ------------------------------------------------------------ criterion 6

def criterion_6():
    corpus = enumerate_lassos("ab", 2, 2)
    contra = 0
    tm = tm_right()
    n_prods = len(tm_to_csg(tm, AcceptanceMode("inf", "cap")).productions)
    sigma = len(tm.alphabet)
    moves = [t[4][0] for t in tm.transitions]
    used = set(tm.alphabet) | {x for t in tm.transitions for x in t[1] + t[3]}
    closed = (1 + sigma + sigma * moves.count("R") + sigma * sigma * len(used) * moves.count("L")
              + sigma * moves.count("S") + sigma * len(used))
    count_ok = n_prods == closed == 15
    jobs = [(tm, tm_to_csg(tm, m), m, m.with_pi("normal")) for m in six_modes()]
    contra += _sweep(jobs, corpus, 400)[0]
    jobs = []
    for mode in six_modes("normal"):
        gd = to_dollar_boundary(g_ab_dollar(), mode)
        jobs.append((gd, psg_to_2tm(gd, mode), mode, mode.with_pi("none")))
    c, _, accepted = _sweep(jobs, corpus, 400)
    contra += c
    ok = contra == 0 and count_ok
    return _record(6, ok, f"contradictions={contra}; TM->CSG productions={n_prods} "
                          f"closed form={closed}; 2-TM accepted={accepted}")


# ------------------------------------------------------------ criterion 7

def _fold_formula(tape, k, j):
    a = lambda i: tape[i - 1] if 1 <= i <= len(tape) else "_"
    if j < k:
        return ("_", "_")
    if j <= 2 * k - 2:
        return (a(j), a(2 * k - j - 1))
    return (a(j), "_")


def criterion_7():
    bad = 0
    for k in (2, 3, 4):
        for tape in itertools.product("ab", repeat=10):
            out = k_folded_version(tape, k)
            if any(out[j - 1] != _fold_formula(tape, k, j) for j in range(1, len(out) + 1)):
                bad += 1
    tm = sample_copier(2)
    one = two_tape_to_one(tm)
    w = parse_lasso("ab(ba)^w")
    c = successors(one, initial_config(one), w)[0][1]
    level, revisit, steps = 0, 0, 0
    while steps < 200:
        nxt = successors(one, c, w)
        if len(nxt) != 1:
            break
        c = nxt[0][1]
        lay = fold_layout(dict(c.cells[0]))
        if lay["alpha"] is not None:
            level = max(level, lay["alpha"])
        if c.state in tm.states:
            steps += 1
            if level >= 3 and (lay["beta"] is None or lay["beta"] < 2):
                revisit += 1
    corpus = enumerate_lassos("ab", 2, 2)
    contra = _sweep([(tm, two_tape_to_one(tm, m), m, m) for m in six_modes()], corpus, 400)[0]
    ok = bad == 0 and revisit == 0 and steps == 200 and contra == 0
    return _record(7, ok, f"fold formula mismatches={bad}; simulated steps={steps}, "
                          f"initial-segment revisits={revisit}; contradictions={contra}")


# ------------------------------------------------------------ criterion 8

def criterion_8():
    rng = random.Random(8)
    corpus = enumerate_lassos("ab", 3, 3)
    contra = unknown = 0
    for _ in range(50):
        a = random_fsa(rng)
        for mode in six_modes():
            for w in corpus:
                v = bounded_member(a, w, mode, 200)
                exact = fsa_lasso_member(a, w, mode)
                if v.accepted:
                    _ACCEPTED.append(v.certificate)
                if (v.accepted and not exact) or (v.rejected and exact):
                    contra += 1
                unknown += v.unknown
    failed = sum(1 for c in _ACCEPTED if not certificate_check(c))
    ok = contra == 0 and failed == 0 and len(_ACCEPTED) > 0
    return _record(8, ok, f"certificates checked={len(_ACCEPTED)}, failed={failed}; "
                          f"FSA bounded vs exact contradictions={contra}, unknown={unknown}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n):
    try:
        ok = CRITERIA[n - 1]()
    except Exception as e:
        _record(n, False, f"raised {type(e).__name__}: {e}")
        raise
    assert ok, RESULTS[n]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
