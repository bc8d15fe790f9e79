"""Command line front-end and the ``.omd`` device format.

A document is a list of ``key: value`` lines.  List-valued keys take
whitespace-separated tokens; ``transitions:`` and ``productions:`` are
followed by indented lines.  Leading ``#`` lines form the header and are
kept verbatim (translations put their provenance there).

    kind: fsa
    name: A_infb
    mode: inf cap
    alphabet: a b
    states: p q
    start: p
    transitions:
      p a p
      p b q
      q b q
    F: {q}

Exit codes: 0 ok, 1 usage, 2 validation failure, 3 refused construction,
4 contradiction found, 5 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import automata, forms, oracle, translate
from .automata import BLANK, EPS, OmegaFSA, OmegaPDA, OmegaTM
from .core import (AcceptanceMode, DesignatedFamily, OmegaError, RefusedError,
                   ResourceError, SetConstraint, ValidationError, format_lasso,
                   parse_lasso)
from .grammars import CLASS_ORDER, OmegaGrammar, Production, classify, grammar_problems

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_REFUSED, EXIT_CONTRADICTION, EXIT_RESOURCE = range(6)

GRAMMAR_KINDS = ("rlg", "cfg", "csg", "psg")
KINDS = ("fsa", "pda", "tm") + GRAMMAR_KINDS
EMPTY = "ε"

_KEYS = {
    "fsa": ("alphabet", "states", "start", "deterministic", "transitions"),
    "pda": ("alphabet", "states", "stack", "start", "bottom", "deterministic", "transitions"),
    "tm": ("alphabet", "tape_alphabet", "states", "start", "tapes", "blank",
           "deterministic", "transitions"),
    "grammar": ("nonterminals", "terminals", "start", "repetition", "productions"),
}
_COMMON = ("kind", "name", "mode", "symbols", "F")
_BLOCK_KEYS = ("transitions", "productions")


class OmdSyntaxError(ValidationError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


@dataclass
class OmdDocument:
    device: object
    mode: AcceptanceMode | None = None
    header: list = field(default_factory=list)
    multi: bool = False

    @property
    def kind(self) -> str:
        d = self.device
        return d.class_tag.lower() if d.kind == "grammar" else d.kind

    @property
    def name(self) -> str:
        return self.device.name


# ------------------------------------------------------------------ parsing

def _lines(text: str):
    """(line number, indented?, content) with comments and blanks dropped."""
    for i, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        yield i, raw[0] in " \t", raw.strip()


def _parse_family(tokens, where) -> tuple:
    """Explicit sets and constraint blocks from family tokens."""
    sets, blocks = [], []
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t == "{":
            j = tokens.index("}", i) if "}" in tokens[i:] else -1
            if j < 0:
                raise OmdSyntaxError("unclosed '{'", *where)
            sets.append(tokens[i + 1:j])
            i = j + 1
        elif t.startswith("{"):
            members = []
            t = t[1:]
            while True:
                if t.endswith("}"):
                    if t[:-1]:
                        members.append(t[:-1])
                    break
                members.append(t)
                i += 1
                if i >= len(tokens):
                    raise OmdSyntaxError("unclosed '{'", *where)
                t = tokens[i]
            sets.append(members)
            i += 1
        elif t == "<":
            if ">" not in tokens[i:]:
                raise OmdSyntaxError("unclosed '<'", *where)
            j = tokens.index(">", i)
            parts, cur = [[]], []
            for x in tokens[i + 1:j]:
                if x == "|":
                    parts[-1].append(cur)
                    parts.append([])
                    cur = []
                elif x == "/":
                    parts[-1].append(cur)
                    cur = []
                else:
                    cur.append(x)
            parts[-1].append(cur)
            if len(parts) != 3 or len(parts[0]) != 1 or len(parts[1]) != 1:
                raise OmdSyntaxError("constraint block is <lower | upper | hits / hits>", *where)
            hits = [h for h in parts[2] if h]
            blocks.append(SetConstraint(parts[0][0], parts[1][0], hits))
            i = j + 1
        else:
            raise OmdSyntaxError(f"expected a set, got {t!r}", *where)
    return sets, blocks


def _seq(tokens, multi):
    """Symbol sequence from tokens; single-character mode splits tokens."""
    if tokens in ([EMPTY], ["eps"]):
        return ()
    if multi:
        return tuple(tokens)
    return tuple(c for t in tokens for c in t)


def parse(text: str) -> OmdDocument:
    header = []
    for raw in text.splitlines():
        if raw.startswith("#"):
            header.append(raw[1:].strip())
        elif raw.strip():
            break
    values, blocks, where = {}, {}, {}
    current = None
    for ln, indented, body in _lines(text):
        if indented and current in _BLOCK_KEYS:
            blocks[current].append((ln, body))
            continue
        if indented and current is not None:
            values[current] += " " + body
            continue
        if ":" not in body:
            raise OmdSyntaxError("expected 'key: value'", ln, 1)
        key, _, val = body.partition(":")
        key = key.strip()
        if key in values:
            raise OmdSyntaxError(f"duplicate key {key!r}", ln, 1)
        values[key] = val.strip()
        where[key] = (ln, len(key) + 2)
        current = key
        if key in _BLOCK_KEYS:
            blocks[key] = []
            if val.strip():
                raise OmdSyntaxError(f"{key} are listed on the following lines", ln, len(key) + 2)
    kind = values.get("kind")
    if kind not in KINDS:
        raise OmdSyntaxError(f"kind must be one of {', '.join(KINDS)}", *where.get("kind", (1, 1)))
    group = kind if kind in _KEYS else "grammar"
    allowed = set(_COMMON) | set(_KEYS[group])
    for k in values:
        if k not in allowed:
            raise OmdSyntaxError(f"unknown key {k!r} for kind {kind}", *where[k])
    symbols = values.get("symbols", "single")
    if symbols not in ("single", "multi"):
        raise OmdSyntaxError("symbols must be single or multi", *where["symbols"])
    multi = symbols == "multi"
    mode = None
    if "mode" in values:
        try:
            mode = AcceptanceMode.parse(values["mode"])
        except ValidationError as e:
            raise OmdSyntaxError(str(e), *where["mode"])
        if group != "grammar" and mode.pi != "none":
            raise OmdSyntaxError("automata take no derivation policy", *where["mode"])
        if group == "grammar" and mode.pi == "none":
            raise OmdSyntaxError("grammar modes need a derivation policy (l or nl)", *where["mode"])

    def need(key):
        if key not in values:
            raise OmdSyntaxError(f"missing key {key!r}", 1, 1)
        return values[key]

    def toks(key, default=None):
        if key not in values and default is not None:
            return default
        return need(key).split()

    fam_sets, fam_blocks = _parse_family(values.get("F", "").split(), where.get("F", (1, 1)))
    name = values.get("name", {"fsa": "A", "pda": "D", "tm": "M"}.get(kind, "G"))
    det = values.get("deterministic", "no")
    if det not in ("yes", "no"):
        raise OmdSyntaxError("deterministic must be yes or no", *where["deterministic"])
    det = det == "yes"

    def family(universe):
        return DesignatedFamily(universe, fam_sets, fam_blocks)

    rows = blocks.get("transitions", [])
    if kind == "fsa":
        states = toks("states")
        trans = []
        for ln, body in rows:
            t = body.split()
            if len(t) != 3:
                raise OmdSyntaxError("FSA transition is 'src symbol dst'", ln, 1)
            trans.append((t[0], EPS if t[1] in (EMPTY, "eps") else t[1], t[2]))
        dev = OmegaFSA(states, toks("alphabet"), trans, need("start"), family(states), det, name)
    elif kind == "pda":
        states = toks("states")
        trans = []
        for ln, body in rows:
            t = body.split()
            if len(t) < 5 or t[3] != "->":
                raise OmdSyntaxError("PDA transition is 'q symbol top -> r push'", ln, 1)
            trans.append((t[0], EPS if t[1] in (EMPTY, "eps") else t[1], t[2], t[4],
                          _seq(t[5:], multi)))
        dev = OmegaPDA(states, toks("alphabet"), toks("stack"), trans, need("start"),
                       need("bottom"), family(states), det, name)
    elif kind == "tm":
        states = toks("states")
        try:
            m = int(values.get("tapes", "1"))
        except ValueError:
            raise OmdSyntaxError("tapes must be an integer", *where["tapes"])
        trans = []
        for ln, body in rows:
            t = body.split()
            if len(t) != 3 * m + 3 or t[m + 1] != "->":
                raise OmdSyntaxError(f"TM transition is 'q r1..r{m} -> p w1..w{m} d1..d{m}'", ln, 1)
            trans.append((t[0], tuple(t[1:m + 1]), t[m + 2], tuple(t[m + 3:2 * m + 3]),
                          tuple(t[2 * m + 3:])))
        dev = OmegaTM(states, toks("alphabet"), toks("tape_alphabet"), trans, need("start"),
                      family(states), m, values.get("blank", BLANK), det, name)
    else:
        N, T = toks("nonterminals"), toks("terminals")
        prods = []
        for ln, body in blocks.get("productions", []):
            label, sep, rule = body.partition(":")
            lhs, arrow, rhs = rule.partition("->")
            if not sep or not arrow or not label.strip() or " " in label.strip():
                raise OmdSyntaxError("production is 'label: lhs -> rhs'", ln, 1)
            try:
                prods.append(Production(label.strip(), _seq(lhs.split(), multi),
                                        _seq(rhs.split(), multi)))
            except ValidationError as e:
                raise OmdSyntaxError(str(e), ln, 1)
        rep = values.get("repetition", "production")
        if rep not in ("production", "variable"):
            raise OmdSyntaxError("repetition must be production or variable", *where["repetition"])
        uni = [p.label for p in prods] if rep == "production" else N
        try:
            dev = OmegaGrammar(N, T, prods, need("start"), family(uni), rep, kind.upper(), name)
        except ValidationError as e:
            raise OmdSyntaxError(str(e), *where.get("productions", (1, 1)))
    return OmdDocument(dev, mode, header, multi)


def load(path) -> OmdDocument:
    return parse(Path(path).read_text(encoding="utf-8"))


# ----------------------------------------------------------------- printing

def _sorted(xs):
    return sorted(xs, key=str)


def _set_text(s) -> str:
    items = _sorted(s)
    if any(x.startswith("{") or x.endswith("}") for x in items):
        return "{ " + " ".join(items) + " }"
    return "{" + " ".join(items) + "}"


def _block_text(c: SetConstraint) -> str:
    hits = " / ".join(" ".join(_sorted(h)) for h in c.hits)
    return f"< {' '.join(_sorted(c.lower))} | {' '.join(_sorted(c.upper))} | {hits} >".replace("  ", " ")


def family_text(fam: DesignatedFamily) -> list:
    """Canonical member texts: explicit sets by size then name, then blocks."""
    sets = sorted(fam.explicit, key=lambda s: (len(s), _sorted(s)))
    out = [_set_text(s) for s in sets]
    out += sorted(_block_text(c) for c in fam.constraints)
    return out


def _needs_multi(doc: OmdDocument) -> bool:
    d = doc.device
    if d.kind == "pda":
        return any(len(str(x)) != 1 for x in d.stack_alphabet)
    if d.kind == "grammar":
        return any(len(str(x)) != 1 for x in d.nonterminals + d.terminals)
    return False


def _seq_text(xs, multi) -> str:
    if not xs:
        return EMPTY
    return " ".join(xs) if multi else "".join(xs)


def _check_token(x, what):
    s = str(x)
    if not s or any(c.isspace() for c in s) or s in ("{", "}", "<", ">", "|", "/", "->", EMPTY):
        raise ValidationError(f"{what} {s!r} cannot be written in .omd")
    return s


def dumps(doc: OmdDocument) -> str:
    d = doc.device
    multi = doc.multi or _needs_multi(doc)
    out = [f"# {h}" if h else "#" for h in doc.header]
    out.append(f"kind: {doc.kind}")
    out.append(f"name: {_check_token(d.name, 'name')}")
    if doc.mode is not None:
        out.append(f"mode: {doc.mode.short}")
    if multi:
        out.append("symbols: multi")

    def names(xs, what):
        return " ".join(_check_token(x, what) for x in xs)

    if d.kind == "grammar":
        out.append(f"nonterminals: {names(d.nonterminals, 'symbol')}")
        out.append(f"terminals: {names(d.terminals, 'symbol')}")
        out.append(f"start: {d.start}")
        if d.repetition != "production":
            out.append(f"repetition: {d.repetition}")
        out.append("productions:")
        for p in d.productions:
            out.append(f"  {_check_token(p.label, 'label')}: {_seq_text(p.lhs, multi)} -> "
                       f"{_seq_text(p.rhs, multi)}")
    else:
        out.append(f"alphabet: {names(d.alphabet, 'symbol')}")
        if d.kind == "tm":
            out.append(f"tape_alphabet: {names(d.tape_alphabet, 'symbol')}")
        out.append(f"states: {names(d.states, 'state')}")
        if d.kind == "pda":
            out.append(f"stack: {names(d.stack_alphabet, 'stack symbol')}")
        out.append(f"start: {d.start}")
        if d.kind == "pda":
            out.append(f"bottom: {d.start_stack}")
        if d.kind == "tm":
            out.append(f"tapes: {d.tapes}")
            out.append(f"blank: {d.blank}")
        if d.deterministic:
            out.append("deterministic: yes")
        out.append("transitions:")
        for t in d.transitions:
            if d.kind == "fsa":
                src, a, dst = t
                out.append(f"  {src} {a or EMPTY} {dst}")
            elif d.kind == "pda":
                q, a, z, r, push = t
                out.append(f"  {q} {a or EMPTY} {z} -> {r} {_seq_text(push, multi)}")
            else:
                q, reads, p, writes, moves = t
                out.append(f"  {q} {' '.join(reads)} -> {p} {' '.join(writes)} {' '.join(moves)}")
    members = family_text(d.family)
    inline = " ".join(members)
    if len(inline) <= 100:
        out.append(f"F: {inline}".rstrip())
    else:
        out.append("F:")
        out += [f"  {m}" for m in members]
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------ commands

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


_MODE_WORDS = {"ran", "inf", "cap", "meet", "subseteq", "sub", "eq", "=", "l", "lm",
               "leftmost", "nl", "normal", "none", "-"}


def _split_mode(args, files_attr):
    """``--mode ran cap l g.omd``: move trailing non-mode tokens to the files."""
    if not getattr(args, "mode", None):
        return
    words = []
    spill = []
    for tok in args.mode:
        for t in tok.replace(",", " ").split():
            (spill if spill or t not in _MODE_WORDS else words).append(t)
    args.mode = " ".join(words)
    if spill:
        setattr(args, files_attr, spill + [f for f in getattr(args, files_attr) if f])


def _mode_for(doc: OmdDocument, text: str | None) -> AcceptanceMode:
    if text:
        mode = AcceptanceMode.parse(text)
    elif doc.mode is not None:
        mode = doc.mode
    else:
        raise ValidationError("no acceptance mode: pass --mode or add 'mode:' to the document")
    if doc.device.kind == "grammar" and mode.pi == "none":
        raise ValidationError("grammar modes need a derivation policy (l or nl)")
    if doc.device.kind != "grammar":
        mode = mode.with_pi("none")
    return mode


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _one_file(args):
    if len(args.files) != 1:
        raise _Usage("expected exactly one input file")
    return args.files[0]


class _Usage(Exception):
    pass


def cmd_validate(args) -> int:
    doc = load(_one_file(args))
    d = doc.device
    problems = grammar_problems(d) if d.kind == "grammar" else automata.validate(d)
    for p in problems:
        print(f"problem: {p}")
    print(f"kind={doc.kind}")
    print(f"valid={'no' if problems else 'yes'}")
    return EXIT_INVALID if problems else EXIT_OK


def cmd_classify(args) -> int:
    doc = load(_one_file(args))
    d = doc.device
    if d.kind == "grammar":
        print(f"class={classify(d)}")
        print(f"declared={d.class_tag}")
        if CLASS_ORDER.index(d.class_tag) < CLASS_ORDER.index(classify(d)):
            return EXIT_INVALID
    else:
        print(f"class={d.kind.upper()}")
        if d.kind == "tm":
            print(f"tapes={d.tapes}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    path = _one_file(args)
    doc = load(path)
    if doc.device.kind != "grammar":
        raise ValidationError("normalize works on grammars")
    mode = _mode_for(doc, args.mode) if (args.mode or doc.mode) else None
    g = forms.normalize(doc.device, args.form, mode)
    header = [f"normalized: form={args.form}", f"input-sha256: {_digest(path)}"]
    _emit(dumps(OmdDocument(g, mode, header, doc.multi)), args.output)
    return EXIT_OK


def _fold(tm: OmegaTM, mode):
    if tm.tapes == 1:
        raise ValidationError("fold needs a machine with at least two tapes")
    two = translate.mwtm_to_2tm(tm, mode) if tm.tapes > 2 else tm
    return translate.two_tape_to_one(two, mode)


# construction id -> (function, accepted source kinds, policy of the output grammar)
_VIA = {
    "thm6.1": (translate.rlg_to_fsa, ("grammar",), None),
    "thm6.1r": (translate.fsa_to_rlg, ("fsa",), "leftmost"),
    "thm6.2": (translate.cfg_to_pda, ("grammar",), None),
    "thm6.2r": (translate.pda_to_cfg, ("pda",), "leftmost"),
    "thm6.3": (translate.psg_to_pda_leftmost, ("grammar",), None),
    "thm7.2": (translate.cfg_nl_to_pda, ("grammar",), None),
    "lem-tm-csg": (translate.tm_to_csg, ("tm",), "normal"),
    "lem-psg-2tm": (translate.psg_to_2tm, ("grammar",), None),
    "fold": (_fold, ("tm",), None),
}


def translate_doc(doc: OmdDocument, via: str, mode: AcceptanceMode, digest: str) -> OmdDocument:
    fn, kinds, pi = _VIA[via]
    if doc.device.kind not in kinds:
        raise ValidationError(f"--via {via} expects a {' or '.join(kinds)} input")
    out = fn(doc.device, mode)
    out_mode = mode.with_pi(pi if out.kind == "grammar" else "none")
    header = [f"provenance: {via} {translate.PROVENANCE[via]}",
              f"input-sha256: {digest}", f"source-mode: {mode.short}"]
    return OmdDocument(out, out_mode, header, doc.multi and out.kind == "grammar")


def cmd_translate(args) -> int:
    path = _one_file(args)
    doc = load(path)
    mode = _mode_for(doc, args.mode)
    _emit(dumps(translate_doc(doc, args.via, mode, _digest(path))), args.output)
    return EXIT_OK


def cmd_member(args) -> int:
    doc = load(args.file)
    mode = _mode_for(doc, args.mode)
    w = parse_lasso(args.lasso, multi=doc.multi)
    v = oracle.member(doc.device, w, mode, args.bound)
    print(v.kind)
    if v.reason:
        print(f"reason={v.reason}")
    if v.certificate is not None:
        print(v.certificate.dump())
        print(f"certificate_check={'pass' if oracle.certificate_check(v.certificate) else 'FAIL'}")
    return EXIT_OK


def _corpus_arg(text: str):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise _Usage("--corpus takes stem,loop")
    return a, b


def summary_lines(report) -> list:
    return [f"{k}={v}" for k, v in report.summary.items()]


def cmd_difftest(args) -> int:
    if len(args.files) != 2:
        raise _Usage("difftest needs two files")
    da, db = load(args.files[0]), load(args.files[1])
    ma = _mode_for(da, args.mode_a or args.mode)
    mb = _mode_for(db, args.mode_b or args.mode or (args.mode_a if da.device.kind == db.device.kind
                                                    else None))
    alpha = sorted(set(da.device.alphabet) | set(db.device.alphabet), key=str)
    stem, loop = _corpus_arg(args.corpus)
    corpus = oracle.enumerate_lassos(alpha, stem, loop)
    rep = oracle.difftest(da.device, db.device, ma, mb, corpus, args.bound)
    if args.verbose:
        for w, a, b in rep.rows:
            print(f"{format_lasso(w)}  {a}  {b}")
    for w, a, b in rep.contradictions:
        print(f"CONTRADICTION {format_lasso(w)}  A={a}  B={b}")
        for v, tag in ((a, "A"), (b, "B")):
            if v.certificate is not None:
                print(f"certificate {tag}:")
                print(v.certificate.dump())
    n = len(rep.contradictions)
    print(f"{n} contradictions / {len(rep.rows)} words")
    lines = summary_lines(rep)
    print("\n".join(lines))
    if args.summary:
        Path(args.summary).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_CONTRADICTION if n else EXIT_OK


def cmd_corpus(args) -> int:
    alpha = args.alphabet.split(",") if "," in args.alphabet else list(args.alphabet)
    if args.max_loop < 1:
        raise _Usage("maxLoop must be at least 1")
    for w in oracle.enumerate_lassos(alpha, args.max_stem, args.max_loop):
        print(format_lasso(w))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="omegalang", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def with_mode(p):
        p.add_argument("--mode", nargs="+", help="acceptance mode, e.g. 'inf cap' or 'ran eq l'")

    p = sub.add_parser("validate", help="check device invariants")
    p.add_argument("files", nargs="*")
    p.set_defaults(fn=cmd_validate)
    p = sub.add_parser("classify", help="grammar class or device kind")
    p.add_argument("files", nargs="*")
    p.set_defaults(fn=cmd_classify)
    p = sub.add_parser("normalize", help="rewrite a grammar into a normal form")
    p.add_argument("--form", required=True, choices=["short", "eps-free", "separate", "dollar"])
    with_mode(p)
    p.add_argument("-o", "--output")
    p.add_argument("files", nargs="*")
    p.set_defaults(fn=cmd_normalize)
    p = sub.add_parser("translate", help="apply a construction")
    p.add_argument("--via", required=True, choices=sorted(_VIA))
    with_mode(p)
    p.add_argument("-o", "--output")
    p.add_argument("files", nargs="*")
    p.set_defaults(fn=cmd_translate)
    p = sub.add_parser("member", help="bounded lasso membership")
    p.add_argument("file")
    p.add_argument("lasso")
    p.add_argument("--bound", type=int, default=200)
    p.add_argument("--mode")
    p.set_defaults(fn=cmd_member)
    p = sub.add_parser("difftest", help="compare two devices on a lasso corpus")
    p.add_argument("files", nargs="*")
    p.add_argument("--corpus", default="2,2")
    p.add_argument("--bound", type=int, default=200)
    p.add_argument("--mode", help="mode for both sides")
    p.add_argument("--mode-a")
    p.add_argument("--mode-b")
    p.add_argument("--summary", help="write the key=value summary to this file")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(fn=cmd_difftest)
    p = sub.add_parser("corpus", help="list canonical lassos")
    p.add_argument("alphabet")
    p.add_argument("max_stem", type=int)
    p.add_argument("max_loop", type=int)
    p.set_defaults(fn=cmd_corpus)
    return ap


def run_command(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if isinstance(getattr(args, "mode", None), list):
        _split_mode(args, "files")
    try:
        return args.fn(args)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RefusedError as e:
        cite = f" [{args.via}]" if getattr(args, "via", None) else ""
        print(f"refused{cite}: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except ResourceError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, OSError) as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OmegaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
