"""Displayed caterpillars of a network: triples and quads.

A network displays an X-tree when some switching (a choice of one in-arc
per reticulation) prunes to it.  Restricting displayed trees to 3-leaf
subsets yields triples (x1, x2 | x3): a cherry {x1, x2} with outgroup x3.
Restricting to 4-leaf subsets yields quads (x1, x2, x3, x4): a caterpillar
with cherry {x1, x2}, then x3, then x4; balanced restrictions contribute
nothing.  Both are symmetric in the cherry pair only.

`extract_sets` computes R (all triples) and Q (all quads) directly from
cluster bitmasks per switching without building trees; `displays` is the
independent slow path over explicitly built displayed trees.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .network import NetworkError, _Mut
from .enewick import write_enewick


@dataclass(frozen=True, order=True)
class Triple:
    """Three-leaf caterpillar: cherry {x1, x2} with outgroup x3.
    Normalized so that x1 < x2."""

    x1: str
    x2: str
    x3: str

    def __post_init__(self):
        if len({self.x1, self.x2, self.x3}) != 3:
            raise ValueError(f"triple members must be distinct: {self}")
        if self.x1 > self.x2:
            a, b = self.x1, self.x2
            object.__setattr__(self, "x1", b)
            object.__setattr__(self, "x2", a)

    @property
    def pair(self):
        return (self.x1, self.x2)

    @property
    def outgroup(self):
        return self.x3

    def as_tuple(self):
        return (self.x1, self.x2, self.x3)

    def __str__(self):
        return f"{self.x1}{self.x2}|{self.x3}"


@dataclass(frozen=True, order=True)
class Quad:
    """Four-leaf caterpillar: cherry {x1, x2}, then x3, then x4.
    Normalized so that x1 < x2; the tail (x3, x4) is ordered."""

    x1: str
    x2: str
    x3: str
    x4: str

    def __post_init__(self):
        if len({self.x1, self.x2, self.x3, self.x4}) != 4:
            raise ValueError(f"quad members must be distinct: {self}")
        if self.x1 > self.x2:
            a, b = self.x1, self.x2
            object.__setattr__(self, "x1", b)
            object.__setattr__(self, "x2", a)

    @property
    def pair(self):
        return (self.x1, self.x2)

    @property
    def tail(self):
        return (self.x3, self.x4)

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.x4)

    def __str__(self):
        return f"({self.x1},{self.x2},{self.x3},{self.x4})"


@dataclass(frozen=True)
class CaterpillarSets:
    """A leaf set X with its displayed triples R and quads Q."""

    leaves: tuple
    triples: frozenset
    quads: frozenset

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(sorted(self.leaves)))
        object.__setattr__(self, "triples", frozenset(self.triples))
        object.__setattr__(self, "quads", frozenset(self.quads))
        known = set(self.leaves)
        if len(known) != len(self.leaves):
            raise ValueError("duplicate leaf in leaf set")
        for t in self.triples:
            if not set(t.as_tuple()) <= known:
                raise ValueError(f"triple {t} mentions an unknown leaf")
        for q in self.quads:
            if not set(q.as_tuple()) <= known:
                raise ValueError(f"quad {q} mentions an unknown leaf")

    def to_dict(self):
        return {
            "leaves": list(self.leaves),
            "triples": sorted(list(t.as_tuple()) for t in self.triples),
            "quads": sorted(list(q.as_tuple()) for q in self.quads),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            leaves=tuple(data["leaves"]),
            triples=frozenset(Triple(*t) for t in data["triples"]),
            quads=frozenset(Quad(*q) for q in data["quads"]),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def delete_leaf_from_sets(sets, b):
    """Restrict to X - {b}: drop every triple and quad mentioning b."""
    if b not in sets.leaves:
        raise ValueError(f"{b!r} is not a leaf of the sets")
    return CaterpillarSets(
        leaves=tuple(x for x in sets.leaves if x != b),
        triples=frozenset(t for t in sets.triples if b not in t.as_tuple()),
        quads=frozenset(q for q in sets.quads if b not in q.as_tuple()),
    )


# -- displayed trees -------------------------------------------------------


def _tidy_to_tree(m):
    # Remove unlabeled dead-end sinks, suppress in-1/out-1 vertices, and
    # contract a unary root, until stable.
    changed = True
    while changed:
        changed = False
        for v in list(m.children):
            if v not in m.children:
                continue
            ind, outd = len(m.parents[v]), len(m.children[v])
            if outd == 0 and v not in m.labels and len(m.children) > 1:
                m.remove_vertex(v)
                changed = True
            elif v == m.root:
                if ind == 0 and outd == 1 and len(m.children) > 1:
                    (c,) = m.children[v]
                    m.remove_vertex(v)
                    m.root = c
                    changed = True
            elif ind == 1 and outd == 1:
                m.suppress(v)
                changed = True


def switchings(net):
    """All pairwise non-equal X-trees displayed by the network.

    One in-arc is kept per reticulation; the kept arcs form a spanning
    arborescence which prunes and suppresses to an X-tree on all of X.
    Results are deduplicated, so at most 2^r trees are returned.
    """
    retics = [v for v in net.vertices if net.is_reticulation(v)]
    seen = {}
    for choice in itertools.product(*(net.parents(h) for h in retics)):
        m = _Mut.from_net(net)
        for h, keep in zip(retics, choice):
            for p in net.parents(h):
                if p != keep:
                    m.remove_arc(p, h)
        _tidy_to_tree(m)
        tree = m.freeze()
        key = write_enewick(tree)
        if key not in seen:
            seen[key] = tree
    return [seen[k] for k in sorted(seen)]


def restrict_tree(tree, subset):
    """The restriction of an X-tree to a nonempty subset of its leaves."""
    subset = set(subset)
    if not subset:
        raise NetworkError("cannot restrict to an empty leaf set")
    missing = subset - set(tree.labels())
    if missing:
        raise NetworkError(f"not leaves of the tree: {sorted(missing)}")
    m = _Mut.from_net(tree)
    for v, lab in list(m.labels.items()):
        if lab not in subset:
            m.remove_vertex(v)
    _tidy_to_tree(m)
    return m.freeze()


def as_caterpillar(tree):
    """The caterpillar (x1, ..., xn) shape of a tree, or None.

    In a caterpillar every internal vertex has at least one leaf child; the
    tuple lists leaves from the cherry outward and is normalized so that
    x1 < x2.  Trees on one or two leaves are trivially caterpillars.
    """
    if tree.n_leaves == 1:
        return (tree.labels()[0],)
    tail = []
    v = tree.root
    while True:
        cs = tree.children(v)
        if len(cs) != 2:
            return None
        leaves = [c for c in cs if tree.is_leaf(c)]
        if len(leaves) == 2:
            p, q = sorted(tree.label(c) for c in leaves)
            return tuple([p, q] + tail[::-1])
        if len(leaves) == 1:
            tail.append(tree.label(leaves[0]))
            v = cs[0] if cs[1] == leaves[0] else cs[1]
        else:
            return None


def displays(net, caterpillar):
    """True iff the network displays the given caterpillar.

    Accepts a Triple, a Quad, or a tuple of distinct leaf labels.  This is
    the direct definition: build every displayed tree, restrict it to the
    caterpillar's leaves, and compare shapes.
    """
    if isinstance(caterpillar, Triple) or isinstance(caterpillar, Quad):
        want = caterpillar.as_tuple()
    else:
        want = tuple(caterpillar)
    if len(set(want)) != len(want) or len(want) < 2:
        raise NetworkError(f"not a caterpillar description: {want!r}")
    missing = set(want) - set(net.labels())
    if missing:
        raise NetworkError(f"not leaves of the network: {sorted(missing)}")
    if want[0] > want[1]:
        want = (want[1], want[0]) + want[2:]
    for tree in switchings(net):
        got = as_caterpillar(restrict_tree(tree, set(want)))
        if got == want:
            return True
    return False


# -- fast extraction --------------------------------------------------------


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def extract_sets(net):
    """The triples R and quads Q displayed by a binary network.

    Per switching, cluster bitmasks identify for every leaf pair the cluster
    at which the pair first joins; a 3-subset's cherry pair is the one
    joining below the third leaf, and likewise for 4-subsets, where balanced
    joins are discarded.  Switchings with equal branching-cluster sets give
    equal trees and are processed once.
    """
    labels = net.labels()
    n = len(labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    retics = [v for v in net.vertices if net.is_reticulation(v)]
    topo = net.topological_order()
    triples_int = set()
    quads_int = set()
    seen_trees = set()
    for choice in itertools.product(*(net.parents(h) for h in retics)):
        kept_parent = dict(zip(retics, choice))
        mask = {}
        joins = []  # (m1, m2) child-cluster pairs at branching vertices
        for v in reversed(topo):
            cs = net.children(v)
            if not cs:
                lab = net.leaf_label_map().get(v)
                mask[v] = 0 if lab is None else 1 << idx[lab]
                continue
            kept = [mask[c] for c in cs
                    if (c not in kept_parent or kept_parent[c] == v) and mask[c]]
            if len(kept) == 2:
                joins.append((kept[0], kept[1]))
                mask[v] = kept[0] | kept[1]
            elif kept:
                mask[v] = kept[0]
            else:
                mask[v] = 0
        signature = frozenset(m1 | m2 for m1, m2 in joins)
        if signature in seen_trees:
            continue
        seen_trees.add(signature)
        lca = [[0] * n for _ in range(n)]
        for m1, m2 in joins:
            both = m1 | m2
            for i in _bits(m1):
                row = lca[i]
                for j in _bits(m2):
                    row[j] = both
                    lca[j][i] = both
        for i, j, k in itertools.combinations(range(n), 3):
            sub = (1 << i) | (1 << j) | (1 << k)
            if (lca[i][j] & sub).bit_count() == 2:
                triples_int.add((i, j, k))
            elif (lca[i][k] & sub).bit_count() == 2:
                triples_int.add((i, k, j))
            else:
                triples_int.add((j, k, i))
        for quad in itertools.combinations(range(n), 4):
            sub = 0
            for i in quad:
                sub |= 1 << i
            cherries = [(p, q) for p, q in itertools.combinations(quad, 2)
                        if (lca[p][q] & sub).bit_count() == 2]
            if len(cherries) != 1:
                continue  # balanced restriction
            p, q = cherries[0]
            r, s = (x for x in quad if x != p and x != q)
            if (lca[p][r] & sub).bit_count() == 3:
                quads_int.add((p, q, r, s))
            else:
                quads_int.add((p, q, s, r))
    return CaterpillarSets(
        leaves=labels,
        triples=frozenset(
            Triple(labels[p], labels[q], labels[o]) for p, q, o in triples_int),
        quads=frozenset(
            Quad(labels[p], labels[q], labels[r], labels[s])
            for p, q, r, s in quads_int),
    )
