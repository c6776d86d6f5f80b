"""Recognition of reducible cherries directly from triples and quads.

Given the displayed sets R and Q of an unknown normal network on X, these
predicates decide which leaf pairs form cherries or reticulated cherries of
every network displaying those sets.  The key object is the candidate set
W_b for an ordered pair (a, b): the visibility set of the second parent of
b's reticulation, recovered purely from R and Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .caterpillars import Quad, Triple

_EMPTY = frozenset()


class _SetIndex:
    """Lookup structures over R and Q shared across recognition calls."""

    __slots__ = ("xset", "sorted_x", "out", "quads", "qidx")

    def __init__(self, X, R, Q):
        self.xset = frozenset(X)
        self.sorted_x = tuple(sorted(self.xset))
        self.out = {}
        for t in R:
            self.out.setdefault(frozenset(t.pair), set()).add(t.outgroup)
        self.quads = frozenset(Q)
        self.qidx = {}
        for q in Q:
            self.qidx.setdefault((q.x1, q.tail), set()).add(q.x2)
            self.qidx.setdefault((q.x2, q.tail), set()).add(q.x1)

    def outgroups(self, p, q):
        return self.out.get(frozenset((p, q)), _EMPTY)

    def quad_partners(self, member, tail):
        return self.qidx.get((member, tail), _EMPTY)


@dataclass(frozen=True)
class CandidateSet:
    """A candidate set W for the ordered pair (a, b), built from c."""

    a: str
    b: str
    c: str
    members: frozenset


@dataclass(frozen=True)
class RecognitionResult:
    """One reducible pattern found in (X, R, Q), or kind 'none'."""

    kind: str  # cherry | reticulated_cherry | double_reticulated_cherry | none
    a: str | None = None
    b: str | None = None
    c: str | None = None
    candidate: CandidateSet | None = None


def is_cherry_by_sets(a, b, R):
    """True iff no triple in R separates a and b.

    For the displayed triples of a network this holds exactly when {a, b}
    is a cherry of the network, because every 3-subset of X is covered by
    at least one displayed triple.
    """
    for t in R:
        if a in t.as_tuple() and b in t.as_tuple() and {a, b} != set(t.pair):
            return False
    return True


def candidate_set(X, R, Q, a, b, c, _index=None):
    """The candidate set for (a, b) containing c, or None.

    Starting from U = {x : (b, c | x) in R}, the tentative set is
    W = (X - (U + {b})) + {c}.  W qualifies only if it avoids a and b and
    every member c' of W satisfies, with x ranging outside W + {b}:
    (b, c' | x) in R, (a, c' | b) not in R, no (b, c' | c'') in R for
    another member c'', and no quad (x, b, c', a) with x outside W + {a, b}.
    At most one candidate set contains any given c.
    """
    idx = _index if _index is not None else _SetIndex(X, R, Q)
    xs = idx.xset
    if len({a, b, c}) != 3 or not {a, b, c} <= xs:
        raise ValueError(f"need three distinct members of X, got {a!r}, {b!r}, {c!r}")
    U = idx.outgroups(b, c)
    W = (xs - U - {b}) | {c}
    if not W <= xs - {a, b}:
        return None
    outside = xs - W - {b}
    outside_quad = outside - {a}
    for c2 in sorted(W):
        og = idx.outgroups(b, c2)
        if not outside <= og:
            return None
        if b in idx.outgroups(a, c2):
            return None
        if og & (W - {c2}):
            return None
        if idx.quad_partners(b, (c2, a)) & outside_quad:
            return None
    return CandidateSet(a=a, b=b, c=c, members=frozenset(W))


def all_candidate_sets(X, R, Q, a, b, _index=None):
    """Every distinct candidate set for the ordered pair (a, b)."""
    idx = _index if _index is not None else _SetIndex(X, R, Q)
    out = []
    seen = set()
    for c in idx.sorted_x:
        if c == a or c == b:
            continue
        cs = candidate_set(X, R, Q, a, b, c, _index=idx)
        if cs is not None and cs.members not in seen:
            seen.add(cs.members)
            out.append(cs)
    return out


def is_reticulated_cherry_by_sets(a, b, W_b, X, R, Q, _index=None):
    """True iff (a, b) is a reticulated cherry, with reticulation leaf b and
    second-parent visibility set W_b, of every network displaying R and Q.

    W_b must be a candidate set for (a, b) as produced by `candidate_set`;
    behavior on other inputs is unspecified.
    """
    idx = _index if _index is not None else _SetIndex(X, R, Q)
    xs = idx.xset
    W = frozenset(W_b)
    outside = xs - W - {a, b}
    if not xs - {a, b} <= idx.outgroups(a, b):
        return False
    for c in W:
        blockers = idx.quad_partners(b, (a, c)) | idx.quad_partners(a, (b, c))
        if blockers & outside:
            return False
        for x in idx.outgroups(a, c) & outside:
            if Quad(a, b, c, x) not in idx.quads:
                return False
            if Quad(c, b, a, x) not in idx.quads:
                return False
    return True


def is_double_reticulated_cherry_by_sets(a, b, c, X, R, Q, _index=None):
    """True iff (a, b, c) is a double reticulated cherry (reticulation leaf b,
    outer leaves a and c) of every network displaying R and Q.  Symmetric
    in a and c."""
    idx = _index if _index is not None else _SetIndex(X, R, Q)
    xs = idx.xset
    rest = xs - {a, b, c}
    if not (xs - {a, b} <= idx.outgroups(a, b)):
        return False
    if not (xs - {b, c} <= idx.outgroups(b, c)):
        return False
    og_ac = idx.outgroups(a, c)
    if b in og_ac:
        return False
    blockers = (idx.quad_partners(b, (a, c)) | idx.quad_partners(b, (c, a))
                | idx.quad_partners(a, (b, c)) | idx.quad_partners(c, (b, a)))
    if blockers & rest:
        return False
    for x in og_ac & rest:
        if Quad(a, b, c, x) not in idx.quads:
            return False
        if Quad(c, b, a, x) not in idx.quads:
            return False
    return True


def find_reduction(X, R, Q, mode="normal"):
    """The first reducible pattern of (X, R, Q) in a deterministic scan.

    Cherries are sought first over lexicographic pairs.  In mode "normal"
    the fallback is reticulated cherries over ordered pairs (a, b) with
    their candidate sets; in mode "temporal" it is double reticulated
    cherries over ordered triples with a < c.  Returns kind "none" when
    nothing reduces.
    """
    if mode not in ("normal", "temporal"):
        raise ValueError(f"unknown mode {mode!r}")
    idx = _SetIndex(X, R, Q)
    xs = idx.sorted_x
    violated = set()
    for t in R:
        violated.add(frozenset((t.x1, t.x3)))
        violated.add(frozenset((t.x2, t.x3)))
    for p, q in itertools.combinations(xs, 2):
        if frozenset((p, q)) not in violated:
            return RecognitionResult(kind="cherry", a=p, b=q)
    if mode == "normal":
        for a in xs:
            for b in xs:
                if b == a:
                    continue
                if not idx.xset - {a, b} <= idx.outgroups(a, b):
                    continue
                for cs in all_candidate_sets(X, R, Q, a, b, _index=idx):
                    if is_reticulated_cherry_by_sets(
                            a, b, cs.members, X, R, Q, _index=idx):
                        return RecognitionResult(
                            kind="reticulated_cherry", a=a, b=b, candidate=cs)
    else:
        for a in xs:
            for b in xs:
                if b == a:
                    continue
                for c in xs:
                    if c <= a or c == b:
                        continue
                    if is_double_reticulated_cherry_by_sets(
                            a, b, c, X, R, Q, _index=idx):
                        return RecognitionResult(
                            kind="double_reticulated_cherry", a=a, b=b, c=c)
    return RecognitionResult(kind="none")
