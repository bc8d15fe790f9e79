"""Membership deciders, certificates and differential testing on lasso words.

Two engines live here:

* ``fsa_lasso_member`` decides finite automata exactly on the product of
  the automaton with the lasso's positions;
* ``bounded_member`` explores configurations of any device or grammar
  breadth-first, folding the input offset onto the lasso phase.  When the
  explored space closes the verdict is exact; otherwise it looks for a
  pumpable loop and answers Accepted (with a certificate) or Unknown.
"""

from __future__ import annotations

import itertools
from collections import OrderedDict, deque
from dataclasses import dataclass, field
from typing import Any, Sequence

from .automata import (FSAConfig, PDAConfig, TMConfig, EPS, OSCILLATION_THRESHOLD,
                       initial_config, successors)
from .core import (AcceptanceMode, DesignatedFamily, LassoWord, OccurrenceProfile,
                   OmegaError, ValidationError, lasso_normalize, profile_of, satisfies)

DEFAULT_MAX_NODES = 4000
# normal derivations branch on every nonterminal and rarely close; past this
# size the extra nodes almost never produce a certificate
NL_MAX_NODES = 1500
DEFAULT_MAX_SIZE = 40
PUMP_WINDOW = 64
SIZE_SCHEDULE = (8, 16)
MAX_PUMPS = 4000


# ----------------------------------------------------------------- results

@dataclass(frozen=True, eq=False)
class Certificate:
    device: Any
    word: LassoWord
    mode: AcceptanceMode
    stem: tuple
    loop: tuple
    loop_consumption: int
    profile: OccurrenceProfile
    witness: dict = field(default_factory=dict)
    stem_labels: tuple = ()
    loop_labels: tuple = ()

    def __len__(self):
        return len(self.stem) + len(self.loop)

    def dump(self) -> str:
        lines = [f"word={self.word}", f"mode={self.mode.short}",
                 f"stem={' '.join(map(_fmt_step, self.stem)) or '-'}",
                 f"loop={' '.join(map(_fmt_step, self.loop))}",
                 f"loop_consumption={self.loop_consumption}",
                 f"ran={{{' '.join(sorted(map(str, self.profile.ran)))}}}",
                 f"inf={{{' '.join(sorted(map(str, self.profile.inf)))}}}",
                 f"witness={','.join(f'{k}:{v}' for k, v in sorted(self.witness.items()))}"]
        return "\n".join(lines)


def _fmt_step(s) -> str:
    if isinstance(s, tuple):
        return f"{s[0]}@{s[1]}"
    return f"t{s}"


@dataclass(frozen=True)
class Verdict:
    kind: str                           # Accepted | Rejected | Unknown
    certificate: Certificate | None = None
    reason: str = ""

    @property
    def accepted(self):
        return self.kind == "Accepted"

    @property
    def rejected(self):
        return self.kind == "Rejected"

    @property
    def unknown(self):
        return self.kind == "Unknown"

    def __str__(self):
        return f"Unknown({self.reason})" if self.unknown else self.kind


def contradicts(v1: Verdict, v2: Verdict) -> bool:
    return (v1.accepted and v2.rejected) or (v1.rejected and v2.accepted)


# ------------------------------------------------------- exact FSA decider

def _positions_graph(fsa, w: LassoWord):
    """Product of an FSA with the lasso positions: node -> [(node', consuming)]."""
    succ = {}
    start = (fsa.start, 0)
    todo = [start]
    succ[start] = []
    while todo:
        q, ph = todo.pop()
        out = succ[(q, ph)]
        for src, a, dst in fsa.transitions:
            if src != q:
                continue
            if a == EPS:
                nxt, c = (dst, ph), False
            elif a == w.symbol_at(ph):
                nxt, c = (dst, w.next_phase(ph)), True
            else:
                continue
            out.append((nxt, c))
            if nxt not in succ:
                succ[nxt] = []
                todo.append(nxt)
    return start, succ


def _consuming_cycle_nodes(succ, keep) -> set:
    """Nodes lying on a cycle (inside ``keep``) that consumes input."""
    nodes = [n for n in succ if keep(n)]
    good = set()
    for comp in _tarjan(nodes, lambda n: [m for m, _ in succ[n] if keep(m)]):
        cs = set(comp)
        if any(c for n in comp for m, c in succ[n] if m in cs):
            good |= cs
    return good


def fsa_lasso_member(fsa, w: LassoWord, mode: AcceptanceMode) -> bool:
    """Exact decision of ``w`` in the (sigma, rho)-language of ``fsa``."""
    if mode.pi != "none":
        raise ValidationError("automata take no derivation policy")
    if not w.alphabet() <= set(fsa.alphabet):
        raise ValidationError("alphabet mismatch between word and automaton")
    start, succ = _positions_graph(fsa, w)
    fam = fsa.family
    if fam.is_empty():
        return False
    blocks = fam.blocks()
    if mode.sigma == "inf":
        reach = _reachable(start, lambda n: [m for m, _ in succ[n]])
        for b in blocks:
            keep = (lambda n: True) if mode.rho == "cap" else (lambda n, u=b.upper: n[0] in u)
            nodes = [n for n in reach if keep(n)]
            for comp in _tarjan(nodes, lambda n: [m for m, _ in succ[n] if keep(m)]):
                cs = set(comp)
                inner = [(n, m, c) for n in comp for m, c in succ[n] if m in cs]
                if not any(c for _, _, c in inner):
                    continue
                states = {m[0] for _, m, _ in inner}
                if mode.rho == "cap" and states & b.upper:
                    return True
                if mode.rho == "subseteq":
                    return True
                if mode.rho == "eq" and b.contains(frozenset(states)):
                    return True
        return False
    # ran: track the set of states visited so far
    for b in blocks:
        if mode.rho == "cap":
            cyc = _consuming_cycle_nodes(succ, lambda n: True)
            seen = {(start, start[0] in b.upper)}
            todo = [(start, start[0] in b.upper)]
            while todo:
                n, hit = todo.pop()
                if hit and n in cyc:
                    return True
                for m, _ in succ[n]:
                    s = (m, hit or m[0] in b.upper)
                    if s not in seen:
                        seen.add(s)
                        todo.append(s)
            continue
        if start[0] not in b.upper:
            continue
        keep = lambda n, u=b.upper: n[0] in u
        cyc = _consuming_cycle_nodes(succ, keep)
        first = (start, frozenset({start[0]}))
        seen = {first}
        todo = [first]
        while todo:
            n, vis = todo.pop()
            if n in cyc and (mode.rho == "subseteq" or b.contains(vis)):
                return True
            for m, _ in succ[n]:
                if not keep(m):
                    continue
                s = (m, vis | {m[0]})
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
    return False


def _reachable(start, nbrs) -> list:
    seen = {start}
    order = [start]
    todo = [start]
    while todo:
        n = todo.pop()
        for m in nbrs(n):
            if m not in seen:
                seen.add(m)
                order.append(m)
                todo.append(m)
    return order


def _tarjan(nodes, nbrs) -> list:
    """Strongly connected components (iterative Tarjan)."""
    index, low, on, stack, comps = {}, {}, set(), [], []
    counter = itertools.count()
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(nbrs(root)))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for m in it:
                if m not in index:
                    index[m] = low[m] = next(counter)
                    stack.append(m)
                    on.add(m)
                    work.append((m, iter(nbrs(m))))
                    advanced = True
                    break
                if m in on:
                    low[v] = min(low[v], index[m])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on.discard(x)
                    comp.append(x)
                    if x == v:
                        break
                comps.append(comp)
    return comps


# ----------------------------------------------- generic lasso search core

class _Graph:
    """Explored configuration graph; edges carry labels and a consuming flag."""

    def __init__(self):
        self.out: list = []
        self.edges: list = []           # (u, v, labels, consumed, step)

    def add_node(self) -> int:
        self.out.append([])
        return len(self.out) - 1

    def add_edge(self, u, v, labels, consumed, step) -> int:
        self.edges.append((u, v, frozenset(labels), consumed, step))
        self.out[u].append(len(self.edges) - 1)
        return len(self.edges) - 1


def _bfs_path(graph: _Graph, src, targets, ok_edge):
    """Shortest edge path from src to any node in ``targets``."""
    if src in targets:
        return src, []
    prev = {src: None}
    todo = deque([src])
    while todo:
        n = todo.popleft()
        for e in graph.out[n]:
            if not ok_edge(e):
                continue
            m = graph.edges[e][1]
            if m in prev:
                continue
            prev[m] = e
            if m in targets:
                path = []
                x = m
                while prev[x] is not None:
                    path.append(prev[x])
                    x = graph.edges[prev[x]][0]
                return m, path[::-1]
            todo.append(m)
    return None, None


def _cycle_through(graph: _Graph, entry, inner, required) -> list:
    """A closed walk at ``entry`` using edges in ``inner`` and every edge of ``required``."""
    ok = lambda e: e in inner
    walk = []
    cur = entry
    for e in required:
        u, v = graph.edges[e][0], graph.edges[e][1]
        _, p = _bfs_path(graph, cur, {u}, ok)
        walk += p + [e]
        cur = v
    _, p = _bfs_path(graph, cur, {entry}, ok)
    return walk + p


def _components(graph: _Graph, ok_edge) -> list:
    nodes = range(len(graph.out))
    comps = _tarjan(list(nodes), lambda n: [graph.edges[e][1] for e in graph.out[n] if ok_edge(e)])
    out = []
    for comp in comps:
        cs = set(comp)
        inner = {e for n in comp for e in graph.out[n] if ok_edge(e) and graph.edges[e][1] in cs}
        cons = [e for e in sorted(inner) if graph.edges[e][3]]
        if not cons:
            continue
        labels = frozenset().union(*(graph.edges[e][2] for e in inner))
        out.append((cs, inner, cons, labels))
    return out


def _cover(graph, inner, wanted) -> list:
    """Edges of ``inner`` whose labels together cover ``wanted``."""
    need = set(wanted)
    out = []
    for e in sorted(inner):
        if graph.edges[e][2] & need:
            out.append(e)
            need -= graph.edges[e][2]
    return out


def _decide_block(graph, init, init_labels, sigma, rho, blk):
    upper = blk.upper
    if rho == "cap":
        ok = lambda e: True
    else:
        ok = lambda e: graph.edges[e][2] <= upper
    if sigma == "ran" and rho != "cap" and not init_labels <= upper:
        return None
    comps = _components(graph, ok)
    if not comps:
        return None
    comp_of = {}
    for i, (cs, _, _, _) in enumerate(comps):
        for n in cs:
            comp_of[n] = i
    if sigma == "inf":
        for cs, inner, cons, labels in comps:
            if rho == "cap" and not labels & upper:
                continue
            if rho == "eq" and not blk.contains(labels):
                continue
            entry, stem = _bfs_path(graph, init, cs, lambda e: True)
            if entry is None:
                continue
            if rho == "cap":
                hit = next(e for e in sorted(inner) if graph.edges[e][2] & upper)
                req = [hit, cons[0]]
            elif rho == "eq":
                req = _cover(graph, inner, labels) + [cons[0]]
            else:
                req = [cons[0]]
            return stem, _cycle_through(graph, entry, inner, req)
        return None
    # ran: breadth-first search over (node, accumulated labels)
    def acc_step(acc, labels):
        if rho == "cap":
            return acc or bool(labels & upper)
        if rho == "subseteq":
            return None
        return acc | (labels & upper)

    acc0 = acc_step(False if rho == "cap" else frozenset(), init_labels)
    first = (init, acc0)
    prev = {first: None}
    todo = deque([first])
    while todo:
        n, acc = todo.popleft()
        i = comp_of.get(n)
        if i is not None:
            cs, inner, cons, labels = comps[i]
            good = (rho == "subseteq" or (rho == "cap" and (acc or labels & upper))
                    or (rho == "eq" and blk.contains(acc | labels)))
            if good:
                stem = []
                s = (n, acc)
                while prev[s] is not None:
                    s, e = prev[s]
                    stem.append(e)
                if rho == "cap" and not acc:
                    req = [next(e for e in sorted(inner) if graph.edges[e][2] & upper), cons[0]]
                elif rho == "eq":
                    req = _cover(graph, inner, labels - acc) + [cons[0]]
                else:
                    req = [cons[0]]
                return stem[::-1], _cycle_through(graph, n, inner, req)
        for e in graph.out[n]:
            if not ok(e):
                continue
            s = (graph.edges[e][1], acc_step(acc, graph.edges[e][2]))
            if s not in prev:
                prev[s] = ((n, acc), e)
                todo.append(s)
    return None


def decide_graph(graph: _Graph, init: int, init_labels, mode: AcceptanceMode,
                 family: DesignatedFamily):
    """An accepting lasso path (stem edges, loop edges) in ``graph`` or None."""
    init_labels = frozenset(init_labels)
    for blk in family.blocks():
        res = _decide_block(graph, init, init_labels, mode.sigma, mode.rho, blk)
        if res is not None:
            return res
    return None


# ------------------------------------------------------ configuration spaces

class _Space:
    """Adapter giving the explorer a uniform view of a device or grammar."""

    init_labels: tuple = ()
    pumps = True

    def __init__(self, device, word: LassoWord):
        self.device = device
        self.word = word

    def initial(self):
        raise NotImplementedError

    def key(self, raw):
        raise NotImplementedError

    def expand(self, raw) -> list:
        """[(step, raw', consumed, labels)] in declaration order."""
        raise NotImplementedError

    def too_big(self, raw, max_size) -> bool:
        return False

    def control(self, raw):
        return None

    def find_pump(self, seg, steps):
        return None

    def verify_pump(self, seg, steps, witness) -> bool:
        return False

    def replay(self, raw, step):
        for s, r, c, labels in self.expand(raw):
            if s == step:
                return r, c, labels
        return None


class _AutomatonSpace(_Space):
    def __init__(self, device, word):
        super().__init__(device, word)
        self.init_labels = (device.start,)
        self.pumps = device.kind != "fsa"

    def initial(self):
        return initial_config(self.device)

    def key(self, c):
        if isinstance(c, FSAConfig):
            return (c.state, self.word.phase(c.offset))
        if isinstance(c, PDAConfig):
            return (c.state, c.stack, self.word.phase(c.offset))
        return c

    def expand(self, c):
        return [(i, c2, cons, (entered,)) for i, c2, cons, entered
                in successors(self.device, c, self.word)]

    def too_big(self, c, max_size):
        if isinstance(c, PDAConfig):
            return len(c.stack) > max_size
        if isinstance(c, TMConfig):
            return any(len(cells) > 4 * max_size for cells in c.cells)
        return False

    def control(self, c):
        if isinstance(c, PDAConfig):
            return (c.state, self.word.phase(c.offset))
        if isinstance(c, TMConfig):
            return c.state
        return None

    # -- pumps
    def find_pump(self, seg, steps):
        if isinstance(seg[0], PDAConfig):
            d = min(len(c.stack) for c in seg) - 1
            return self._pda_pump(seg, d)
        if isinstance(seg[0], TMConfig):
            return self._tm_pump(seg)
        return None

    def verify_pump(self, seg, steps, witness) -> bool:
        if isinstance(seg[0], PDAConfig):
            d = witness.get("protected")
            if not isinstance(d, int) or d < 0 or any(len(c.stack) <= d for c in seg):
                return False
            return self._pda_pump(seg, d) == witness
        if isinstance(seg[0], TMConfig):
            return self._tm_pump(seg) == witness
        return False

    def _pda_pump(self, seg, d):
        a, n = seg[0], seg[-1]
        if d < 0 or a.state != n.state:
            return None
        if self.word.phase(a.offset) != self.word.phase(n.offset) or n.offset <= a.offset:
            return None
        gamma = a.stack[:len(a.stack) - d]
        delta = a.stack[len(a.stack) - d:]
        if n.stack[:len(gamma)] != gamma or n.stack[len(n.stack) - d:] != delta:
            return None
        if len(n.stack) < len(gamma) + d:
            return None
        return {"kind": "pump", "protected": d}

    def _tm_pump(self, seg):
        a, n = seg[0], seg[-1]
        w = self.word
        if a.state != n.state:
            return None
        tapes = len(a.heads)
        shifts = tuple(n.heads[t] - a.heads[t] for t in range(tapes))
        if shifts[0] <= 0 or shifts[0] % len(w.loop) or any(s < 0 for s in shifts):
            return None
        lows = tuple(min(c.heads[t] for c in seg) for t in range(tapes))
        if lows[0] - 1 < len(w.stem):
            return None
        blank = self.device.blank
        for t in range(tapes):
            lo, s = lows[t], shifts[t]
            pos = {p for p, _ in a.cells[t] if p >= lo}
            pos |= {p - s for p, _ in n.cells[t] if p - s >= lo}
            src = w if t == 0 else None
            for p in pos:
                if a.cell(t, p, src, blank) != n.cell(t, p + s, src, blank):
                    return None
        return {"kind": "tm-shift", "shifts": shifts, "lows": lows}


class _GrammarSpace(_Space):
    def __init__(self, g, word, policy):
        super().__init__(g, word)
        if policy not in ("leftmost", "normal"):
            raise ValidationError("grammars need a derivation policy (leftmost or normal)")
        self.policy = policy
        self.N = frozenset(g.nonterminals)
        self.prods = g.productions
        self.by_label = {p.label: p for p in g.productions}
        self.cf = g.class_tag in ("RLG", "CFG")
        if self.cf:
            self.nullable, self.leads = _lead_sets(g)
            self.productive, self.infinite = _live_sets(g)

    def initial(self):
        return ((self.device.start,), 0)

    def key(self, raw):
        return (raw[0], self.word.phase(raw[1]))

    def _strip(self, form, offset):
        j = 0
        while j < len(form) and form[j] not in self.N:
            if form[j] != self.word.symbol_at(offset + j):
                return None
            j += 1
        return form[j:], j

    def _can_lead(self, form) -> bool:
        for x in form:
            if x not in self.N or x in self.leads:
                return True
            if x not in self.nullable:
                return False
        return False

    def _viable(self, form) -> bool:
        """Some symbol can derive forever after a prefix that can finish."""
        for x in form:
            if x in self.infinite:
                return True
            if x in self.N and x not in self.productive:
                return False
        return False

    def expand(self, raw):
        form, offset = raw
        out = []
        if self.policy == "leftmost":
            positions = [0] if form else []
        else:
            positions = [i for i, x in enumerate(form) if x in self.N]
        for i in positions:
            for p in self.prods:
                if form[i:i + len(p.lhs)] != p.lhs:
                    continue
                new = form[:i] + p.rhs + form[i + len(p.lhs):]
                r = self._strip(new, offset)
                if r is None:
                    continue
                rest, used = r
                if not rest:
                    continue
                if self.cf and not self._can_lead(rest):
                    continue
                if self.cf and self.policy == "leftmost" and not self._viable(rest):
                    continue
                out.append(((p.label, i), (rest, offset + used), used,
                            (self.device.element_of(p),)))
        return out

    def too_big(self, raw, max_size):
        return len(raw[0]) > max_size

    def control(self, raw):
        return self.word.phase(raw[1])

    def _protect_limit(self, seg, steps):
        d = min(len(f) for f, _ in seg) - 1
        for (f, _), (label, pos) in zip(seg, steps):
            p = self.by_label.get(label)
            if p is None:
                return -1
            d = min(d, len(f) - (pos + len(p.lhs)))
        return d

    def _pump(self, seg, d):
        (fa, oa), (fn, on) = seg[0], seg[-1]
        if d < 0 or on <= oa or self.word.phase(oa) != self.word.phase(on):
            return None
        beta, delta = fa[:len(fa) - d], fa[len(fa) - d:]
        if fn[:len(beta)] != beta or fn[len(fn) - d:] != delta or len(fn) < len(fa):
            return None
        return {"kind": "pump", "protected": d}

    def find_pump(self, seg, steps):
        return self._pump(seg, self._protect_limit(seg, steps))

    def verify_pump(self, seg, steps, witness) -> bool:
        d = witness.get("protected")
        if not isinstance(d, int) or d < 0 or d > self._protect_limit(seg, steps):
            return False
        return self._pump(seg, d) == witness


def _lead_sets(g):
    """Nullable nonterminals and those that can bring a terminal to the front."""
    N = set(g.nonterminals)
    nullable = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head not in nullable and all(x in nullable for x in p.rhs):
                nullable.add(p.head)
                changed = True
    leads = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head in leads:
                continue
            for x in p.rhs:
                if x not in N or x in leads:
                    leads.add(p.head)
                    changed = True
                    break
                if x not in nullable:
                    break
    return nullable, leads


def _live_sets(g):
    """Productive nonterminals and those that may start an infinite derivation.

    The second set over-approximates: A qualifies when it reaches a cycle of
    "rewrites into" edges A -> Y taken through a productive prefix.
    """
    N = set(g.nonterminals)
    productive = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head not in productive and all(x not in N or x in productive for x in p.rhs):
                productive.add(p.head)
                changed = True
    succ = {A: set() for A in N}
    for p in g.productions:
        for x in p.rhs:
            if x in N:
                succ[p.head].add(x)
            if x in N and x not in productive:
                break
    # nonterminals on a cycle, then everything that reaches one
    reach = {A: set(succ[A]) for A in N}
    changed = True
    while changed:
        changed = False
        for A in N:
            more = set().union(*(reach[B] for B in reach[A])) - reach[A] if reach[A] else set()
            if more:
                reach[A] |= more
                changed = True
    infinite = {A for A in N if A in reach[A]}
    infinite |= {A for A in N if reach[A] & infinite}
    return productive, infinite


def _make_space(device, word, mode):
    if getattr(device, "kind", None) == "grammar":
        return _GrammarSpace(device, word, mode.pi)
    if mode.pi != "none":
        raise ValidationError("automata take no derivation policy")
    return _AutomatonSpace(device, word)


# ------------------------------------------------------------------ explorer

@dataclass
class _Exploration:
    space: _Space
    graph: _Graph
    raws: list
    parent: list            # node -> (parent node, edge) or None
    depth: list
    closed: bool
    reason: str
    pumps: list             # (ancestor, node, witness)


def _oscillating(expl_raws, parent, n, threshold) -> bool:
    c = expl_raws[n]
    if not isinstance(c, TMConfig) or threshold is None:
        return False
    h = c.heads[0]
    count = 0
    x = n
    while x is not None:
        if expl_raws[x].heads[0] == h:
            count += 1
            if count > threshold:
                return True
        x = parent[x][0] if parent[x] else None
    return False


def _explore(space: _Space, bound: int, max_nodes: int, max_size: int,
             threshold: int | None = OSCILLATION_THRESHOLD) -> _Exploration:
    g = _Graph()
    init = space.initial()
    ids = {space.key(init): g.add_node()}
    raws, parent, depth = [init], [None], [0]
    pumps: list = []
    closed = True
    reason = ""
    todo = deque([0])
    while todo:
        n = todo.popleft()
        raw = raws[n]
        if depth[n] >= bound:
            closed, reason = False, "step bound reached"
            continue
        if space.too_big(raw, max_size):
            closed, reason = False, "size cap reached"
            continue
        if depth[n] > (threshold or 0) and _oscillating(raws, parent, n, threshold):
            closed, reason = False, "oscillation threshold reached"
            continue
        for step, raw2, consumed, labels in space.expand(raw):
            k = space.key(raw2)
            m = ids.get(k)
            if m is None:
                if len(raws) >= max_nodes:
                    closed, reason = False, "node budget exhausted"
                    continue
                m = g.add_node()
                ids[k] = m
                raws.append(raw2)
                parent.append((n, None))
                depth.append(depth[n] + 1)
                e = g.add_edge(n, m, labels, consumed, step)
                parent[m] = (n, e)
                todo.append(m)
                if space.pumps and len(pumps) < MAX_PUMPS:
                    _scan_pumps(space, g, raws, parent, m, pumps)
            else:
                g.add_edge(n, m, labels, consumed, step)
    return _Exploration(space, g, raws, parent, depth, closed, reason, pumps)


def _scan_pumps(space, g, raws, parent, n, pumps):
    ctl = space.control(raws[n])
    if ctl is None:
        return
    seg = [raws[n]]
    steps = []
    x = n
    for _ in range(PUMP_WINDOW):
        p = parent[x]
        if p is None:
            return
        a, e = p
        seg.append(raws[a])
        steps.append(g.edges[e][4])
        x = a
        if space.control(raws[a]) != ctl:
            continue
        w = space.find_pump(seg[::-1], steps[::-1])
        if w is not None:
            pumps.append((a, n, w))
            return


# explorations are large; keep only the most recent few (same word, other modes)
_CACHE: OrderedDict = OrderedDict()
_CACHE_LIMIT = 32


def _explore_cached(device, word, mode, bound, max_nodes, max_size, threshold):
    key = (id(device), word, mode.pi, bound, max_nodes, max_size, threshold)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is device:
        _CACHE.move_to_end(key)
        return hit[1]
    expl = _explore(_make_space(device, word, mode), bound, max_nodes, max_size, threshold)
    _CACHE[key] = (device, expl)
    if len(_CACHE) > _CACHE_LIMIT:
        _CACHE.popitem(last=False)
    return expl


def _tree_path(expl: _Exploration, n) -> list:
    edges = []
    while expl.parent[n] is not None:
        a, e = expl.parent[n]
        edges.append(e)
        n = a
    return edges[::-1]


def _certificate(expl, mode, stem_edges, loop_edges, witness) -> Certificate:
    g = expl.graph
    stem_labels = tuple(expl.space.init_labels) + tuple(
        x for e in stem_edges for x in sorted(g.edges[e][2], key=str))
    loop_labels = tuple(x for e in loop_edges for x in sorted(g.edges[e][2], key=str))
    if witness.get("kind") == "tm-shift":
        cons = witness["shifts"][0]
    else:
        cons = _consumption(expl, loop_edges)
    return Certificate(expl.space.device, expl.space.word, mode,
                       tuple(g.edges[e][4] for e in stem_edges),
                       tuple(g.edges[e][4] for e in loop_edges), cons,
                       profile_of(stem_labels, loop_labels), dict(witness),
                       stem_labels, loop_labels)


def _consumption(expl, edges) -> int:
    return sum(expl.graph.edges[e][3] for e in edges)


def _offset(raw) -> int:
    if isinstance(raw, (FSAConfig, PDAConfig)):
        return raw.offset
    if isinstance(raw, TMConfig):
        return raw.scanned
    return raw[1]


def _family(device) -> DesignatedFamily:
    return device.family


def bounded_member(device, w: LassoWord, mode: AcceptanceMode, bound: int = 200,
                   max_nodes: int | None = None, max_size: int = DEFAULT_MAX_SIZE,
                   threshold: int | None = OSCILLATION_THRESHOLD) -> Verdict:
    """Bounded search for an accepting run or derivation of ``w``.

    ``max_nodes`` defaults to ``DEFAULT_MAX_NODES``, or ``NL_MAX_NODES`` for
    grammars under normal derivations.
    """
    if not isinstance(bound, int) or bound <= 0:
        raise ValidationError("bound must be a positive integer")
    if max_nodes is None:
        nl = device.kind == "grammar" and mode.pi == "normal"
        max_nodes = NL_MAX_NODES if nl else DEFAULT_MAX_NODES
    alphabet = set(device.terminals if device.kind == "grammar" else device.alphabet)
    if not w.alphabet() <= alphabet:
        raise ValidationError("alphabet mismatch between word and device")
    # small size caps first: their spaces are tiny and any certificate found
    # there is as good as one found with the full cap
    verdict = None
    for size in sorted({min(s, max_size) for s in SIZE_SCHEDULE} | {max_size}):
        verdict = _bounded_once(device, w, mode, bound, max_nodes, size, threshold)
        if not verdict.unknown:
            return verdict
    return verdict


def _bounded_once(device, w, mode, bound, max_nodes, max_size, threshold) -> Verdict:
    expl = _explore_cached(device, w, mode, bound, max_nodes, max_size, threshold)
    fam = _family(device)
    found = decide_graph(expl.graph, 0, expl.space.init_labels, mode, fam)
    if found is not None:
        stem, loop = found
        if len(stem) + len(loop) <= bound:
            cert = _certificate(expl, mode, stem, loop, {"kind": "repeat"})
            return Verdict("Accepted", cert)
    elif expl.closed:
        return Verdict("Rejected", reason="search space closed")
    best = None
    for a, n, wit in expl.pumps:
        stem = _tree_path(expl, a)
        full = _tree_path(expl, n)
        loop = full[len(stem):]
        if len(full) > bound:
            continue
        cert = _certificate(expl, mode, stem, loop, wit)
        if satisfies(mode, cert.profile, fam):
            if best is None or len(cert) < len(best):
                best = cert
    if best is not None:
        return Verdict("Accepted", best)
    if found is None and _forced_reject(expl, mode, fam, bound):
        return Verdict("Rejected", reason="the only run repeats a rejecting loop")
    if found is not None:
        return Verdict("Unknown", reason="accepting lasso longer than the bound")
    return Verdict("Unknown", reason=expl.reason or "no certificate")


def _forced_reject(expl, mode, fam, bound) -> bool:
    """True when the run is unique up to a pump whose profile fails.

    Every configuration before the pump has exactly one successor, and the
    pump repeats forever, so the single run's profile is the certificate's.
    """
    if not isinstance(expl.space, _AutomatonSpace):
        return False
    for a, n, wit in expl.pumps:
        path = _tree_path(expl, n)
        if len(path) > bound:
            continue
        nodes = [expl.graph.edges[e][0] for e in path]
        if any(len(expl.space.expand(expl.raws[x])) != 1 for x in nodes):
            continue
        stem = _tree_path(expl, a)
        cert = _certificate(expl, mode, stem, path[len(stem):], wit)
        return not satisfies(mode, cert.profile, fam)
    return False


def member(device, w: LassoWord, mode: AcceptanceMode, bound: int = 200, **kw) -> Verdict:
    """Verdict for any device; finite automata are additionally cross-checked."""
    return bounded_member(device, w, mode, bound, **kw)


# ------------------------------------------------------- certificate replay

def certificate_check(cert: Certificate, log: list | None = None) -> bool:
    """Replay a certificate with the device's own step relation."""
    def fail(msg):
        if log is not None:
            log.append(msg)
        return False

    try:
        space = _make_space(cert.device, cert.word, cert.mode)
    except OmegaError as e:
        return fail(str(e))
    raw = space.initial()
    stem_labels = list(space.init_labels)
    for s in cert.stem:
        r = space.replay(raw, s)
        if r is None:
            return fail(f"stem step {s} not applicable")
        raw, _, labels = r
        stem_labels += list(labels)
    seg = [raw]
    loop_labels = []
    consumed = 0
    for s in cert.loop:
        r = space.replay(raw, s)
        if r is None:
            return fail(f"loop step {s} not applicable")
        prev = raw
        raw, c, labels = r
        if c:
            consumed += _offset(raw) - _offset(prev)
        seg.append(raw)
        loop_labels += list(labels)
    if not cert.loop:
        return fail("empty loop")
    if isinstance(raw, TMConfig):
        consumed = seg[-1].heads[0] - seg[0].heads[0]
    if consumed <= 0 or consumed != cert.loop_consumption:
        return fail("loop consumption mismatch or zero")
    if consumed % len(cert.word.loop):
        return fail("loop consumption is not a multiple of the word period")
    prof = profile_of(stem_labels, loop_labels)
    if prof != cert.profile:
        return fail("profile does not match the replayed labels")
    if not satisfies(cert.mode, prof, _family(cert.device)):
        return fail("profile does not satisfy the acceptance condition")
    kind = cert.witness.get("kind")
    if kind == "repeat":
        if space.key(seg[0]) != space.key(seg[-1]):
            return fail("loop does not return to its start configuration")
        if isinstance(seg[0], TMConfig):
            return fail("exact machine configuration repeats never consume input")
        return True
    if kind in ("pump", "tm-shift"):
        if not space.verify_pump(seg, list(cert.loop), cert.witness):
            return fail("growth witness does not hold")
        return True
    return fail("unknown witness kind")


# ------------------------------------------------------ corpora and reports

def enumerate_lassos(alphabet: Sequence, max_stem: int, max_loop: int) -> list:
    """All canonical lasso words with |u| <= max_stem and |v| <= max_loop."""
    if max_loop < 1:
        raise ValidationError("max_loop must be at least 1")
    syms = sorted(alphabet)
    seen = set()
    out = []
    for ls in range(max_stem + 1):
        for u in itertools.product(syms, repeat=ls):
            for lv in range(1, max_loop + 1):
                for v in itertools.product(syms, repeat=lv):
                    w = lasso_normalize(LassoWord(u, v))
                    if w not in seen:
                        seen.add(w)
                        out.append(w)
    out.sort(key=lambda w: (w.positions, len(w.stem), w.stem, w.loop))
    return out


@dataclass
class DiffReport:
    rows: list                  # (word, verdict_a, verdict_b)
    contradictions: list        # (word, verdict_a, verdict_b)

    @property
    def summary(self) -> dict:
        both_acc = sum(1 for _, a, b in self.rows if a.accepted and b.accepted)
        both_rej = sum(1 for _, a, b in self.rows if a.rejected and b.rejected)
        unk = sum(1 for _, a, b in self.rows if a.unknown or b.unknown)
        return {"words_total": len(self.rows), "accepted": both_acc, "rejected": both_rej,
                "unknown": unk, "contradictions": len(self.contradictions)}

    def matrix(self) -> dict:
        out: dict = {}
        for _, a, b in self.rows:
            out[(a.kind, b.kind)] = out.get((a.kind, b.kind), 0) + 1
        return out

    def text(self) -> str:
        lines = []
        for w, a, b in self.rows:
            flag = "  CONTRADICTION" if contradicts(a, b) else ""
            lines.append(f"{w}  {a}  {b}{flag}")
        lines += [f"{k}={v}" for k, v in self.summary.items()]
        return "\n".join(lines)


def difftest(device_a, device_b, mode_a: AcceptanceMode, mode_b: AcceptanceMode,
             corpus: Sequence, bound: int = 200, **kw) -> DiffReport:
    rows, bad = [], []
    for w in corpus:
        va = bounded_member(device_a, w, mode_a, bound, **kw)
        vb = bounded_member(device_b, w, mode_b, bound, **kw)
        rows.append((w, va, vb))
        if contradicts(va, vb):
            bad.append((w, va, vb))
    bad.sort(key=lambda r: (r[0].positions, r[0].stem, r[0].loop))
    return DiffReport(rows, bad)
