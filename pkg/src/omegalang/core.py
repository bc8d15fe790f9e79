"""Alphabets, lasso words, acceptance modes and occurrence profiles.

An acceptance mode is a triple (sigma, rho, pi).  ``sigma`` picks which
elements of an infinite run count (``ran``: at least once, ``inf``:
infinitely often), ``rho`` picks the relation against a designated set
(``cap``: non-empty intersection, ``subseteq``, ``eq``) and ``pi`` is the
derivation policy of a grammar (``leftmost`` or ``normal``; ``none`` for
automata).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

SIGMAS = ("ran", "inf")
RHOS = ("cap", "subseteq", "eq")
PIS = ("leftmost", "normal", "none")

_PI_ALIASES = {"l": "leftmost", "lm": "leftmost", "leftmost": "leftmost",
               "nl": "normal", "normal": "normal", "none": "none", "-": "none"}
_RHO_ALIASES = {"cap": "cap", "meet": "cap", "subseteq": "subseteq", "sub": "subseteq",
                "eq": "eq", "=": "eq"}


class OmegaError(Exception):
    """Base class of all library errors."""


class ValidationError(OmegaError):
    pass


class RefusedError(OmegaError):
    """A construction the underlying theory does not provide."""


class ResourceError(OmegaError):
    """An explicit size cap was exceeded."""


# ---------------------------------------------------------------- alphabet

class Alphabet(tuple):
    """Finite ordered set of symbols (plain strings without whitespace)."""

    def __new__(cls, symbols: Iterable[str]):
        syms = tuple(symbols)
        if not syms:
            raise ValidationError("alphabet must be non-empty")
        if len(set(syms)) != len(syms):
            raise ValidationError("alphabet symbols must be unique")
        for s in syms:
            if not isinstance(s, str) or not s or any(c.isspace() for c in s):
                raise ValidationError(f"bad symbol {s!r}")
        return super().__new__(cls, syms)


# ------------------------------------------------------------- lasso words

@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``stem . loop^omega``."""

    stem: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise ValidationError("lasso loop must be non-empty")

    @property
    def positions(self) -> int:
        """Number of distinct positions |u| + |v| of the lasso."""
        return len(self.stem) + len(self.loop)

    def symbol_at(self, offset: int):
        if offset < len(self.stem):
            return self.stem[offset]
        return self.loop[(offset - len(self.stem)) % len(self.loop)]

    def phase(self, offset: int) -> int:
        """Fold an absolute offset onto the finite position set."""
        if offset < len(self.stem):
            return offset
        return len(self.stem) + (offset - len(self.stem)) % len(self.loop)

    def next_phase(self, phase: int) -> int:
        nxt = phase + 1
        if nxt >= self.positions:
            nxt = len(self.stem)
        return nxt

    def prefix(self, n: int) -> tuple:
        return tuple(self.symbol_at(i) for i in range(n))

    def alphabet(self) -> set:
        return set(self.stem) | set(self.loop)

    def __str__(self):
        return format_lasso(self)


def _primitive_root(v: tuple) -> tuple:
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return v[:p]
    return v


def lasso_normalize(w: LassoWord) -> LassoWord:
    """Canonical representative: primitive loop, shortest stem."""
    u, v = list(w.stem), _primitive_root(w.loop)
    while u and u[-1] == v[-1]:
        u.pop()
        v = (v[-1],) + v[:-1]
    return LassoWord(tuple(u), v)


_LASSO_RE = re.compile(r"^(?P<stem>[^()]*)\((?P<loop>[^()]+)\)\^(w|ω|omega)$")


def parse_lasso(text: str, multi: bool = False) -> LassoWord:
    """Parse ``u(v)^w``; symbols are single characters unless ``multi``."""
    m = _LASSO_RE.match(text.strip())
    if not m:
        raise ValidationError(f"bad lasso literal {text!r}")

    def split(s):
        return tuple(s.split()) if multi else tuple(c for c in s if not c.isspace())

    return LassoWord(split(m.group("stem")), split(m.group("loop")))


def format_lasso(w: LassoWord, multi: bool | None = None) -> str:
    if multi is None:
        multi = any(len(s) > 1 for s in w.stem + w.loop)
    sep = " " if multi else ""
    return f"{sep.join(w.stem)}({sep.join(w.loop)})^w"


# -------------------------------------------------------- acceptance modes

@dataclass(frozen=True)
class AcceptanceMode:
    sigma: str
    rho: str
    pi: str = "none"

    def __post_init__(self):
        if self.sigma not in SIGMAS:
            raise ValidationError(f"sigma must be one of {SIGMAS}")
        rho = _RHO_ALIASES.get(self.rho)
        pi = _PI_ALIASES.get(self.pi)
        if rho is None:
            raise ValidationError(f"rho must be one of {RHOS}")
        if pi is None:
            raise ValidationError(f"pi must be one of {PIS}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "pi", pi)

    @classmethod
    def parse(cls, text: str) -> "AcceptanceMode":
        parts = text.replace(",", " ").split()
        if len(parts) not in (2, 3):
            raise ValidationError(f"bad mode {text!r}")
        return cls(*parts)

    def with_pi(self, pi: str) -> "AcceptanceMode":
        return AcceptanceMode(self.sigma, self.rho, pi)

    @property
    def short(self) -> str:
        pi = {"leftmost": "l", "normal": "nl", "none": ""}[self.pi]
        return " ".join(x for x in (self.sigma, self.rho, pi) if x)

    def __str__(self):
        return f"{self.sigma} {self.rho} {self.pi}"


def six_modes(pi: str = "none") -> list:
    return [AcceptanceMode(s, r, pi) for s in SIGMAS for r in RHOS]


# ---------------------------------------------------- designated families

def _fs(xs) -> frozenset:
    return frozenset(xs)


@dataclass(frozen=True)
class SetConstraint:
    """Implicit member block: every H with lower <= H <= upper hitting each group.

    Constructions over production sets routinely produce families such as
    "every subset of U meeting each P_i", which are far too large to list.
    """

    lower: frozenset
    upper: frozenset
    hits: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lower", _fs(self.lower))
        object.__setattr__(self, "upper", _fs(self.upper))
        hits = sorted({_fs(g) for g in self.hits}, key=_sort_key_set)
        object.__setattr__(self, "hits", tuple(hits))

    def nonempty(self) -> bool:
        return self.lower <= self.upper and all(g & self.upper for g in self.hits)

    def contains(self, s: frozenset) -> bool:
        return self.lower <= s <= self.upper and all(g & s for g in self.hits)

    def enumerate(self) -> Iterator[frozenset]:
        free = sorted(self.upper - self.lower, key=str)
        for r in range(len(free) + 1):
            for extra in itertools.combinations(free, r):
                s = self.lower | frozenset(extra)
                if self.contains(s):
                    yield s


def _sort_key_set(s) -> tuple:
    return (len(s), sorted(map(str, s)))


class DesignatedFamily:
    """A family of designated subsets of a finite universe.

    Members are held explicitly and, optionally, through ``SetConstraint``
    blocks.  ``members`` lists everything (and refuses when that would
    exceed ``cap``).
    """

    def __init__(self, universe: Iterable, members: Iterable = (),
                 constraints: Sequence[SetConstraint] = ()):
        self.universe = _fs(universe)
        self.explicit = _fs(_fs(m) for m in members)
        self.constraints = tuple(c for c in constraints if c.nonempty())
        for m in self.explicit:
            if not m <= self.universe:
                raise ValidationError(f"member {sorted(map(str, m))} not within universe")
        for c in self.constraints:
            if not c.upper <= self.universe:
                raise ValidationError("constraint block not within universe")

    # -- queries
    def is_empty(self) -> bool:
        return not self.explicit and not self.constraints

    def contains(self, s) -> bool:
        s = _fs(s)
        return s in self.explicit or any(c.contains(s) for c in self.constraints)

    def relevant(self) -> frozenset:
        """Union of all members (elements that can matter at all)."""
        out = set()
        for m in self.explicit:
            out |= m
        for c in self.constraints:
            out |= c.upper
        return frozenset(out)

    def blocks(self) -> list:
        """Every member block as (lower, upper, hits); explicit F is (F, F, ())."""
        out = [SetConstraint(m, m) for m in sorted(self.explicit, key=_sort_key_set)]
        return out + list(self.constraints)

    def count(self, cap: int = 1 << 16) -> int:
        return len(self.members_capped(cap))

    def members_capped(self, cap: int = 1 << 16) -> frozenset:
        out = set(self.explicit)
        for c in self.constraints:
            for s in c.enumerate():
                out.add(s)
                if len(out) > cap:
                    raise ResourceError(f"designated family exceeds {cap} members")
        return frozenset(out)

    @property
    def members(self) -> frozenset:
        return self.members_capped()

    def sorted_members(self, cap: int = 1 << 16) -> list:
        return sorted(self.members_capped(cap), key=_sort_key_set)

    def map(self, fn, universe=None) -> "DesignatedFamily":
        """Image of the family under an element map (explicit members only)."""
        members = [frozenset(fn(x) for x in m) for m in self.members]
        uni = universe if universe is not None else {fn(x) for x in self.universe}
        return DesignatedFamily(uni, members)

    def with_universe(self, universe) -> "DesignatedFamily":
        return DesignatedFamily(universe, self.explicit, self.constraints)

    def __len__(self):
        return self.count()

    def __eq__(self, other):
        if not isinstance(other, DesignatedFamily):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        shown = []
        for m in sorted(self.explicit, key=_sort_key_set):
            shown.append("{" + " ".join(sorted(map(str, m))) + "}")
        if self.constraints:
            shown.append(f"+{len(self.constraints)} blocks")
        return f"DesignatedFamily({' '.join(shown) or 'empty'})"


# ----------------------------------------------------- occurrence profile

@dataclass(frozen=True)
class OccurrenceProfile:
    ran: frozenset
    inf: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ran", _fs(self.ran))
        object.__setattr__(self, "inf", _fs(self.inf))
        if not self.inf <= self.ran:
            raise ValidationError("inf set must be contained in ran set")

    def select(self, sigma: str) -> frozenset:
        return self.ran if sigma == "ran" else self.inf


def profile_of(prefix: Sequence, cycle: Sequence) -> OccurrenceProfile:
    """ran/inf sets of the eventually periodic sequence prefix.cycle^omega."""
    if len(cycle) == 0:
        raise OmegaError("non-eventually-infinite sequence")
    return OccurrenceProfile(set(prefix) | set(cycle), set(cycle))


def relation_holds(rho: str, s: frozenset, f: frozenset) -> bool:
    if rho == "cap":
        return bool(s & f)
    if rho == "subseteq":
        return s <= f
    return s == f


def satisfies(mode: AcceptanceMode, profile: OccurrenceProfile,
              family: DesignatedFamily) -> bool:
    """Truth of: some F in the family has sigma(profile) rho F."""
    s = profile.select(mode.sigma)
    return satisfies_set(mode.rho, s, family)


def satisfies_set(rho: str, s: frozenset, family: DesignatedFamily) -> bool:
    s = _fs(s)
    if any(relation_holds(rho, s, m) for m in family.explicit):
        return True
    for c in family.constraints:
        # the upper bound is itself a member of a non-empty block
        if rho == "cap" and s & c.upper:
            return True
        if rho == "subseteq" and s <= c.upper:
            return True
        if rho == "eq" and c.contains(s):
            return True
    return False
