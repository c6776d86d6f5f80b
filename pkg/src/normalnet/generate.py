"""Random and exhaustive generation of normal networks.

Random generation grows a network leaf by leaf: a step plan with
``n_leaves - 1`` entries fixes which steps attach a plain cherry and which
attach a reticulated cherry, and every reticulated step is rejection-sampled
until the result stays in the target class (normal, optionally temporal).
Generation is deterministic: an identical :class:`GenSpec` always yields an
identical network.

Exhaustive enumeration builds every tree-child network on a small leaf set,
up to label-fixing isomorphism, by applying all possible attachment moves to
the enumerated networks on each one-smaller leaf set; class filters are
applied at the end.  The two search helpers use extraction as an oracle to
hunt for pairs of distinct networks that share displayed caterpillar sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .caterpillars import extract_sets
from .enewick import write_enewick
from .network import (
    NetworkError,
    PhyloNetwork,
    _vkey,
    attach_cherry,
    attach_reticulated_cherry,
    cluster_set,
    delete_leaf,
    is_normal,
    is_temporal,
    is_tree_child,
    isomorphic,
    structural_reticulated_cherries,
)

_STEP_TRIES = 10_000
_RESTARTS = 50

_ENUM_LABELS = ("a", "b", "c", "d", "e")
_ENUM_CLASSES = ("tree", "tree-child", "normal")


class UnsatisfiableSpecError(ValueError):
    """No network matching the requested spec was found."""


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one reproducible random network.

    ``seed`` fully determines the output; ``temporal_only`` additionally
    rejects any growth step whose result admits no temporal labelling.
    """

    n_leaves: int
    n_reticulations: int = 0
    temporal_only: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n_leaves < 1:
            raise ValueError("n_leaves must be at least 1")
        if self.n_reticulations < 0:
            raise ValueError("n_reticulations must be non-negative")


def _sorted_arcs(net):
    return sorted(net.arcs, key=lambda uv: (_vkey(uv[0]), _vkey(uv[1])))


def _feasible(plan):
    # After step i (0-based) the network has i + 2 leaves, which supports
    # at most i reticulations.
    rets = 0
    for i, kind in enumerate(plan):
        if kind == "retic":
            rets += 1
        if rets > i:
            return False
    return True


def _step_plan(rng, n_leaves, n_rets):
    plan = ["retic"] * n_rets + ["cherry"] * (n_leaves - 1 - n_rets)
    for _ in range(200):
        rng.shuffle(plan)
        if _feasible(plan):
            return plan
    return ["cherry"] * (n_leaves - 1 - n_rets) + ["retic"] * n_rets


def _grow(spec, rng, temporal, double_cherries):
    labels = [f"t{i:02d}" for i in range(spec.n_leaves)]
    net = PhyloNetwork([], {0: labels[0]})
    plan = _step_plan(rng, spec.n_leaves, spec.n_reticulations)
    for step, kind in enumerate(plan):
        new = labels[step + 1]
        anchors = sorted(net.labels())
        if kind == "cherry":
            net = attach_cherry(net, rng.choice(anchors), new)
            continue
        arcs = _sorted_arcs(net)
        placed = None
        for _ in range(_STEP_TRIES):
            anchor = rng.choice(anchors)
            if double_cherries:
                # Hang the new reticulation over the in-arc of a second
                # leaf, so both leaves form reticulated cherries with it.
                partner = rng.choice([x for x in anchors if x != anchor])
                pv = net.leaf(partner)
                target = (net.parents(pv)[0], pv)
            else:
                target = rng.choice(arcs)
                if target[1] == net.leaf(anchor):
                    continue
            try:
                cand = attach_reticulated_cherry(net, anchor, target, new)
            except NetworkError:
                continue
            if not is_normal(cand):
                continue
            if temporal and is_temporal(cand) is None:
                continue
            placed = cand
            break
        if placed is None:
            return None
        net = placed
    return net


def _generate(spec, temporal, double_cherries):
    if spec.n_reticulations > max(0, spec.n_leaves - 2):
        raise UnsatisfiableSpecError(
            f"no normal network with {spec.n_leaves} leaves can have "
            f"{spec.n_reticulations} reticulations"
        )
    for restart in range(_RESTARTS):
        rng = random.Random(f"{spec.seed}|{restart}")
        net = _grow(spec, rng, temporal, double_cherries)
        if net is None:
            continue
        if net.n_leaves != spec.n_leaves:
            continue
        if net.n_reticulations != spec.n_reticulations:
            continue
        if not is_normal(net):
            continue
        if temporal and is_temporal(net) is None:
            continue
        return net
    kind = "temporal normal" if temporal else "normal"
    raise UnsatisfiableSpecError(
        f"no {kind} network with {spec.n_leaves} leaves and "
        f"{spec.n_reticulations} reticulations found within the retry budget"
    )


def random_normal(spec):
    """Build a random normal network with the spec's exact leaf and
    reticulation counts.  Deterministic in the spec."""
    return _generate(spec, temporal=spec.temporal_only, double_cherries=False)


def random_temporal_normal(spec):
    """Build a random normal network that admits a temporal labelling.

    Reticulations are introduced only as reticulated cherries whose second
    parent sits directly above another leaf; steps are rejected unless the
    result is both normal and temporal.
    """
    return _generate(spec, temporal=True, double_cherries=True)


def _certificate(net):
    # Label-fixing invariant: degrees and clusters per vertex, cluster pairs
    # per arc.  Strong enough to keep isomorphism checks to a few per bucket.
    clusters = {v: tuple(sorted(cluster_set(net, v))) for v in net.vertices}
    vertex_part = sorted(
        (net.in_degree(v), net.out_degree(v), clusters[v])
        for v in net.vertices
    )
    arc_part = sorted((clusters[u], clusters[v]) for u, v in net.arcs)
    return (tuple(vertex_part), tuple(arc_part))


def _add_unique(out, buckets, cand):
    group = buckets.setdefault(_certificate(cand), [])
    for seen in group:
        if isomorphic(seen, cand):
            return
    group.append(cand)
    out.append(cand)


def enumerate_networks(n_leaves, max_rets, class_filter="normal"):
    """All networks of the class on ``n_leaves`` fixed labels with at most
    ``max_rets`` reticulations, one per isomorphism class.

    ``class_filter`` is one of ``"tree"``, ``"tree-child"``, ``"normal"``.
    Enumeration grows the tree-child pool by attachment moves and filters at
    the end; the result is sorted by canonical text form.  Desk scale only:
    n_leaves <= 5 and max_rets <= 3.
    """
    if not 1 <= n_leaves <= 5:
        raise ValueError("n_leaves must be between 1 and 5")
    if not 0 <= max_rets <= 3:
        raise ValueError("max_rets must be between 0 and 3")
    if class_filter not in _ENUM_CLASSES:
        raise ValueError(f"class_filter must be one of {_ENUM_CLASSES}")
    allow_retics = class_filter != "tree" and max_rets > 0
    memo = {}

    def pool(subset):
        if subset in memo:
            return memo[subset]
        names = sorted(subset)
        if len(names) == 1:
            nets = [PhyloNetwork([], {0: names[0]})]
            memo[subset] = nets
            return nets
        nets, buckets = [], {}
        for newest in names:
            rest = subset - {newest}
            for base in pool(rest):
                cands = []
                for anchor in sorted(rest):
                    cands.append(attach_cherry(base, anchor, newest))
                    if allow_retics and base.n_reticulations < max_rets:
                        for target in _sorted_arcs(base) + [None]:
                            try:
                                cands.append(
                                    attach_reticulated_cherry(
                                        base, anchor, target, newest
                                    )
                                )
                            except NetworkError:
                                continue
                for cand in cands:
                    if is_tree_child(cand):
                        _add_unique(nets, buckets, cand)
        memo[subset] = nets
        return nets

    nets = pool(frozenset(_ENUM_LABELS[:n_leaves]))
    if class_filter == "tree":
        nets = [m for m in nets if m.n_reticulations == 0]
    elif class_filter == "normal":
        nets = [m for m in nets if is_normal(m)]
    return sorted(nets, key=write_enewick)


def _replacements(net):
    """Variants of ``net`` that move one reticulated cherry's free parent
    onto every other arc, keeping only normal results."""
    out = []
    for a, b in structural_reticulated_cherries(net):
        base = delete_leaf(net, a, b)
        for target in _sorted_arcs(base) + [None]:
            try:
                cand = attach_reticulated_cherry(base, a, target, b)
            except NetworkError:
                continue
            if is_normal(cand):
                out.append(cand)
    return out


def _checked_pair(first, second):
    if extract_sets(first).triples != extract_sets(second).triples:
        raise RuntimeError("ambiguity search produced unequal triple sets")
    if isomorphic(first, second):
        raise RuntimeError("ambiguity search produced isomorphic networks")
    return first, second


def _ambiguous_pair(n_leaves, key_fn, max_trials):
    """Bucket normal networks by ``key_fn`` and return the first two
    non-isomorphic networks sharing a key, or None.

    Up to 4 leaves the candidates are the exhaustive catalogue; beyond that,
    seeded random networks plus their reticulation re-placements.
    """
    buckets = {}

    def feed(cand):
        group = buckets.setdefault(key_fn(cand), [])
        if any(isomorphic(seen, cand) for seen in group):
            return None
        if group:
            return group[0], cand
        group.append(cand)
        return None

    if n_leaves <= 4:
        for cand in enumerate_networks(n_leaves, n_leaves - 2, "normal"):
            hit = feed(cand)
            if hit:
                return hit
        return None
    for trial in range(max_trials):
        rets = 1 + trial % min(3, n_leaves - 2)
        try:
            net = random_normal(GenSpec(n_leaves, rets, seed=trial))
        except UnsatisfiableSpecError:
            continue
        for cand in [net, *_replacements(net)]:
            hit = feed(cand)
            if hit:
                return hit
    return None


def find_triple_ambiguous_pair(n_leaves, max_trials=300):
    """Search for two non-isomorphic normal networks on ``n_leaves`` leaves
    that display exactly the same triples.

    Returns the first witness pair or None if the budget is exhausted.
    """
    if n_leaves < 3:
        raise ValueError("n_leaves must be at least 3")
    hit = _ambiguous_pair(
        n_leaves, lambda m: frozenset(extract_sets(m).triples), max_trials
    )
    if hit is None:
        return None
    return _checked_pair(*hit)


def find_normal_rq_ambiguous_pair(n_leaves, max_trials=150):
    """Search for two non-isomorphic normal networks sharing both the triple
    set and the quad set.

    Normal networks are determined by those two sets, so the expected result
    is None; the search is the evidence, not the witness.
    """
    if n_leaves < 3:
        raise ValueError("n_leaves must be at least 3")

    def key(net):
        sets = extract_sets(net)
        return (frozenset(sets.triples), frozenset(sets.quads))

    return _ambiguous_pair(n_leaves, key, max_trials)


def find_treechild_rq_ambiguous_tuple():
    """Search the 3-leaf tree-child catalogue for networks sharing both the
    triple set and the quad set.

    Returns a tuple of two or three pairwise non-isomorphic witnesses, or
    None if every catalogue entry has a unique set pair.
    """
    buckets = {}
    for net in enumerate_networks(3, 3, "tree-child"):
        sets = extract_sets(net)
        key = (frozenset(sets.triples), frozenset(sets.quads))
        buckets.setdefault(key, []).append(net)
    for group in buckets.values():
        if len(group) >= 2:
            return tuple(group[:3])
    return None
