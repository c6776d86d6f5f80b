"""Reconstruction of a normal network from its displayed triples and quads.

The sets are peeled: while at least three leaves remain, find a reducible
pattern (a cherry, or a reticulated cherry with its candidate set), delete
the reduced leaf b from the sets, and recurse.  The network is then rebuilt
in reverse.  Re-attaching a cherry is local, but re-attaching a reticulated
cherry must also place the second parent g_b of the reticulation; its arc
is pinned down by the candidate set W_b (the visibility set of g_b) plus,
when several arcs on the path of W_b-visibility vertices qualify, by quads
(m_i, l, b, a) that witness which side of each reticulation b sat on.

The temporal variant peels cherries and double reticulated cherries only;
there g_b is always the parent of the other outer leaf c, so placement is
immediate.  Both variants verify the result: the output must be a normal
(and in the temporal case temporal) network whose extracted sets equal the
input exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .caterpillars import CaterpillarSets, Quad, delete_leaf_from_sets, extract_sets
from .network import (
    PhyloNetwork,
    attach_cherry,
    attach_reticulated_cherry,
    is_temporal,
    tree_path_leaf,
    validate,
    visibility_set,
)
from .recognition import RecognitionResult, find_reduction


class ReconstructionError(ValueError):
    """The input sets are not the displayed sets of a network of the
    requested class, or an internal consistency check failed."""


@dataclass(frozen=True)
class PlacementContext:
    """Everything examined while placing g_b on the partial network.

    u_path lists the vertices whose visibility set equals W_b, in path
    order; I indexes the path vertices whose off-path child is a
    reticulation, m maps each to the tree-path leaf below that
    reticulation, and ell is the tree-path leaf of the last path vertex.
    Q_P holds the quads (m_i, ell, b, a) present in Q; i_star is the
    smallest index among them.  arc is the chosen placement and rule names
    the case that decided it.
    """

    W_b: frozenset
    u_path: tuple
    I: tuple
    m: dict
    ell: str
    Q_P: dict
    i_star: int | None
    arc: tuple
    rule: str


@dataclass(frozen=True)
class TraceEntry:
    level: int
    b: str
    kind: str
    placement: str

    def line(self):
        return f"{self.level},{self.b},{self.kind},{self.placement}"


@dataclass(frozen=True)
class ReconstructionTrace:
    """One entry per rebuilt leaf, from the full leaf set down to the
    2-leaf base case: |X| - 1 entries for |X| >= 2."""

    entries: tuple = field(default_factory=tuple)

    def lines(self):
        return [e.line() for e in self.entries]


def _in_arc(net, v):
    parents = net.parents(v)
    if len(parents) != 1:
        raise ReconstructionError(
            f"placement target {v!r} does not have a unique in-arc")
    return (parents[0], v)


def _placement_context(net, W_b, a, b, quads):
    W = frozenset(W_b)
    u_path = tuple(v for v in net.topological_order()
                   if visibility_set(net, v) == W)
    if not u_path:
        raise ReconstructionError(
            "no vertex has the candidate visibility set; the input sets are "
            "not the displayed sets of a normal network")
    for i in range(len(u_path) - 1):
        if (u_path[i], u_path[i + 1]) not in net.arcs:
            raise ReconstructionError(
                "vertices sharing the candidate visibility set do not form "
                "a directed path")
    k = len(u_path)
    ell = tree_path_leaf(net, u_path[-1])
    if k == 1:
        return PlacementContext(W, u_path, (), {}, ell, {}, None,
                                _in_arc(net, u_path[0]), "u1")
    if k == 2 and net.is_reticulation(u_path[0]):
        return PlacementContext(W, u_path, (), {}, ell, {}, None,
                                _in_arc(net, u_path[1]), "u2")
    first = 1 if not net.is_reticulation(u_path[0]) else 2
    I = tuple(range(first, k))
    m = {}
    for i in I:
        u_i = u_path[i - 1]
        off = [c for c in net.children(u_i) if c != u_path[i]]
        if len(off) != 1 or not net.is_reticulation(off[0]):
            raise ReconstructionError(
                "the visibility path has an unexpected shape; the input "
                "sets are not the displayed sets of a normal network")
        m[i] = tree_path_leaf(net, off[0])
    Q_P = {}
    for i in I:
        names = (m[i], ell, b, a)
        if len(set(names)) == 4:
            q = Quad(*names)
            if q in quads:
                Q_P[i] = q
    if Q_P:
        i_star = min(Q_P)
        return PlacementContext(W, u_path, I, m, ell, Q_P, i_star,
                                _in_arc(net, u_path[i_star - 1]),
                                f"u{i_star}:quad")
    return PlacementContext(W, u_path, I, m, ell, {}, None,
                            _in_arc(net, u_path[-1]), f"u{k}:last")


def place_g_b(net_prime, W_b, a, b, Q):
    """The arc of the partial network that g_b must subdivide when the
    reticulated cherry (a, b) with candidate set W_b is re-attached."""
    return _placement_context(net_prime, W_b, a, b, frozenset(Q)).arc


def _peel(sets, mode):
    steps = []
    cur = sets
    while len(cur.leaves) >= 3:
        res = find_reduction(cur.leaves, cur.triples, cur.quads, mode=mode)
        if res.kind == "none":
            kind = "temporal normal" if mode == "temporal" else "normal"
            raise ReconstructionError(
                f"no reducible pattern on {len(cur.leaves)} leaves; the input "
                f"sets are not the displayed sets of a {kind} network")
        steps.append((len(cur.leaves), res, cur))
        cur = delete_leaf_from_sets(cur, res.b)
    p, q = cur.leaves
    steps.append((2, RecognitionResult(kind="cherry", a=p, b=q), cur))
    return steps


def _rebuild(steps):
    net = PhyloNetwork([], {0: steps[-1][1].a})
    entries = []
    for level, res, level_sets in reversed(steps):
        if res.kind == "cherry":
            net = attach_cherry(net, res.a, res.b)
            placement = f"above:{res.a}"
        elif res.kind == "reticulated_cherry":
            ctx = _placement_context(net, res.candidate.members, res.a, res.b,
                                     level_sets.quads)
            net = attach_reticulated_cherry(net, res.a, ctx.arc, res.b)
            placement = ctx.rule
        else:
            target = _in_arc(net, net.leaf(res.c))
            net = attach_reticulated_cherry(net, res.a, target, res.b)
            placement = f"above:{res.c}"
        entries.append(TraceEntry(level, res.b, res.kind, placement))
    entries.reverse()  # report in peel order, largest level first
    return net, ReconstructionTrace(tuple(entries))


def _verify(net, sets, temporal):
    report = validate(net)
    if not report.is_normal:
        raise ReconstructionError(
            "rebuilt digraph is not a normal network; the input sets are "
            "inconsistent")
    if temporal and is_temporal(net) is None:
        raise ReconstructionError(
            "rebuilt network is not temporal; the input sets are inconsistent")
    if extract_sets(net) != sets:
        raise ReconstructionError(
            "rebuilt network does not display the input sets; no normal "
            "network displays them")


def _construct(X, R, Q, mode):
    sets = CaterpillarSets(tuple(X), frozenset(R), frozenset(Q))
    n = len(sets.leaves)
    if n == 0:
        raise ReconstructionError("the leaf set is empty")
    if n == 1:
        net = PhyloNetwork([], {0: sets.leaves[0]})
        if sets.triples or sets.quads:
            raise ReconstructionError("sets on one leaf cannot have members")
        return net, ReconstructionTrace(())
    steps = _peel(sets, mode)
    net, trace = _rebuild(steps)
    _verify(net, sets, temporal=(mode == "temporal"))
    return net, trace


def construct_normal(X, R, Q):
    """Build the normal network on X displaying exactly the triples R and
    quads Q, together with a reconstruction trace.

    The result is unique up to isomorphism.  Raises ReconstructionError
    when no normal network displays the given sets.
    """
    return _construct(X, R, Q, "normal")


def construct_temporal_normal(X, R, Q):
    """As construct_normal, for temporal normal networks, peeling cherries
    and double reticulated cherries only."""
    return _construct(X, R, Q, "temporal")
