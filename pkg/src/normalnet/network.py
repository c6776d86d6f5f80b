"""Rooted binary phylogenetic networks: data model and structural operations.

A network is a rooted acyclic digraph with no parallel arcs.  The root has
in-degree 0 and out-degree 2, leaves have in-degree 1 and out-degree 0 and
carry the labels of the taxon set X, tree vertices have in-degree 1 and
out-degree 2, and reticulations have in-degree 2 and out-degree 1.  The one
exception is |X| = 1, where the network is a single labeled vertex.

Vertex identity is opaque and only leaf labels are semantic, so equality of
networks throughout this package means leaf-label-fixing isomorphism
(`isomorphic`).  Networks are immutable after construction and all
operations are pure functions; derived data (topological order, cluster
sets, visibility sets) is cached on the instance.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass


class NetworkError(ValueError):
    """A structural requirement of a network operation was violated."""


class NotReducibleError(NetworkError):
    """Raised by delete_leaf when {a, b} is neither a cherry nor a
    reticulated cherry with reticulation leaf b."""


def _vkey(v):
    # Deterministic sort key for mixed int/str vertex ids.
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


class PhyloNetwork:
    """Immutable rooted binary phylogenetic network.

    Args:
        arcs: iterable of (tail, head) pairs of hashable vertex ids.
        leaf_labels: mapping from sink vertices to their leaf labels.
        root: explicit root vertex id; when omitted it is inferred as the
            unique in-degree-0 vertex (left unset if that vertex is not
            unique, which `validate` then reports).

    Construction is deliberately permissive: degree, acyclicity and
    reachability rules are checked by `validate`, not here, so malformed
    inputs can be diagnosed as data.  Parallel arcs are unrepresentable
    because arcs form a set.
    """

    __slots__ = ("_children", "_parents", "_labels", "_by_label",
                 "_root", "_vertices", "_arcs", "_cache")

    def __init__(self, arcs, leaf_labels, root=None):
        arcset = set()
        vertices = set()
        for u, v in arcs:
            arcset.add((u, v))
            vertices.add(u)
            vertices.add(v)
        vertices.update(leaf_labels)
        if root is not None:
            vertices.add(root)
        children = {v: [] for v in vertices}
        parents = {v: [] for v in vertices}
        for u, v in sorted(arcset, key=lambda a: (_vkey(a[0]), _vkey(a[1]))):
            children[u].append(v)
            parents[v].append(u)
        self._children = {v: tuple(cs) for v, cs in children.items()}
        self._parents = {v: tuple(ps) for v, ps in parents.items()}
        self._labels = dict(leaf_labels)
        self._by_label = {lab: v for v, lab in self._labels.items()}
        self._vertices = tuple(sorted(vertices, key=_vkey))
        self._arcs = frozenset(arcset)
        if root is None:
            sources = [v for v in self._vertices if not self._parents[v]]
            root = sources[0] if len(sources) == 1 else None
        self._root = root
        self._cache = {}

    # -- structure accessors -------------------------------------------------

    @property
    def root(self):
        if self._root is None:
            raise NetworkError("network has no unique root")
        return self._root

    @property
    def vertices(self):
        return self._vertices

    @property
    def arcs(self):
        return self._arcs

    def children(self, v):
        return self._children[v]

    def parents(self, v):
        return self._parents[v]

    def in_degree(self, v):
        return len(self._parents[v])

    def out_degree(self, v):
        return len(self._children[v])

    def is_leaf(self, v):
        return not self._children[v]

    def is_reticulation(self, v):
        return len(self._parents[v]) >= 2

    def reticulations(self):
        return tuple(v for v in self._vertices if self.is_reticulation(v))

    @property
    def n_reticulations(self):
        return sum(1 for v in self._vertices if self.is_reticulation(v))

    def leaf_vertices(self):
        return tuple(v for v in self._vertices if self.is_leaf(v))

    def label(self, v):
        return self._labels[v]

    def leaf(self, label):
        try:
            return self._by_label[label]
        except KeyError:
            raise NetworkError(f"no leaf labeled {label!r}") from None

    def leaf_label_map(self):
        return dict(self._labels)

    def labels(self):
        """All leaf labels, lexicographically sorted."""
        return tuple(sorted(self._labels.values()))

    @property
    def n_leaves(self):
        return len(self._labels)

    def __repr__(self):
        return (f"<PhyloNetwork |X|={self.n_leaves} "
                f"r={self.n_reticulations} V={len(self._vertices)}>")

    # -- derived structure ---------------------------------------------------

    def _try_topological_order(self):
        if "topo" not in self._cache:
            indeg = {v: len(self._parents[v]) for v in self._vertices}
            heap = [_vkey(v) + (v,) for v in self._vertices if not indeg[v]]
            heapq.heapify(heap)
            out = []
            while heap:
                v = heapq.heappop(heap)[-1]
                out.append(v)
                for c in self._children[v]:
                    indeg[c] -= 1
                    if not indeg[c]:
                        heapq.heappush(heap, _vkey(c) + (c,))
            ok = len(out) == len(self._vertices)
            self._cache["topo"] = tuple(out) if ok else None
        return self._cache["topo"]

    def topological_order(self):
        """Vertices in a deterministic topological order; raises on cycles."""
        order = self._try_topological_order()
        if order is None:
            raise NetworkError("digraph contains a cycle")
        return order

    def reachable_from(self, v):
        """All vertices reachable from v, including v itself."""
        cache = self._cache.setdefault("reach", {})
        if v not in cache:
            seen = {v}
            stack = [v]
            while stack:
                for c in self._children[stack.pop()]:
                    if c not in seen:
                        seen.add(c)
                        stack.append(c)
            cache[v] = frozenset(seen)
        return cache[v]

    def _cluster_map(self):
        if "clusters" not in self._cache:
            clusters = {}
            for v in reversed(self.topological_order()):
                if self.is_leaf(v):
                    lab = self._labels.get(v)
                    clusters[v] = frozenset() if lab is None else frozenset((lab,))
                else:
                    acc = set()
                    for c in self._children[v]:
                        acc.update(clusters[c])
                    clusters[v] = frozenset(acc)
            self._cache["clusters"] = clusters
        return self._cache["clusters"]


# -- vertex-set computations -------------------------------------------------


def cluster_set(net, v):
    """C_v: the leaf labels reachable from v."""
    return net._cluster_map()[v]


def visibility_set(net, v):
    """V_v: the leaf labels all of whose root paths pass through v.

    Computed by deleting v and collecting the leaves no longer reachable
    from the root.  For the root itself this is all of X.
    """
    cache = net._cache.setdefault("visibility", {})
    if v not in cache:
        if v == net.root:
            cache[v] = frozenset(net.labels())
        else:
            seen = {net.root}
            stack = [net.root]
            while stack:
                for c in net.children(stack.pop()):
                    if c != v and c not in seen:
                        seen.add(c)
                        stack.append(c)
            visible = set(net.labels())
            for u in seen:
                if net.is_leaf(u):
                    visible.discard(net.label(u))
            cache[v] = frozenset(visible)
    return cache[v]


def tree_path_leaf(net, v):
    """The leaf ending a deterministic tree path from v.

    A tree path passes only through tree vertices after v, so reticulation
    children are never entered.  Among the eligible children the descent
    always follows the lexicographically smallest reachable tree-path leaf.
    Raises NetworkError when v has no tree path (net not tree-child).
    """
    if "tree_path" not in net._cache:
        tp = {}
        for u in reversed(net.topological_order()):
            if net.is_leaf(u):
                tp[u] = net._labels.get(u)
            else:
                best = None
                for c in net.children(u):
                    if net.in_degree(c) == 1 and tp[c] is not None:
                        if best is None or tp[c] < best:
                            best = tp[c]
                tp[u] = best
        net._cache["tree_path"] = tp
    leaf = net._cache["tree_path"][v]
    if leaf is None:
        raise NetworkError(f"vertex {v!r} has no tree path")
    return leaf


# -- structural cherry detection ----------------------------------------------


def structural_cherries(net):
    """Leaf pairs {a, b} with a common parent, as sorted (a, b) tuples."""
    out = []
    for v in net.vertices:
        cs = net.children(v)
        if len(cs) == 2 and net.is_leaf(cs[0]) and net.is_leaf(cs[1]):
            out.append(tuple(sorted((net.label(cs[0]), net.label(cs[1])))))
    return sorted(out)


def structural_reticulated_cherries(net):
    """Pairs (a, b) with b the reticulation leaf: p_b is a reticulation and
    (p_a, p_b) is an arc of the network."""
    out = []
    for vb in net.leaf_vertices():
        if net.in_degree(vb) != 1:
            continue
        pb = net.parents(vb)[0]
        if not net.is_reticulation(pb):
            continue
        for u in net.parents(pb):
            for w in net.children(u):
                if w != pb and net.is_leaf(w):
                    out.append((net.label(w), net.label(vb)))
    return sorted(out)


def structural_double_reticulated_cherries(net):
    """Triples (a, b, c), a < c, where both {a, b} and {b, c} are reticulated
    cherries sharing the reticulation leaf b."""
    out = []
    for vb in net.leaf_vertices():
        if net.in_degree(vb) != 1:
            continue
        pb = net.parents(vb)[0]
        if not net.is_reticulation(pb) or net.in_degree(pb) != 2:
            continue
        side = []
        for u in net.parents(pb):
            leaf_kids = [w for w in net.children(u) if w != pb and net.is_leaf(w)]
            if not leaf_kids:
                break
            side.append(net.label(leaf_kids[0]))
        if len(side) == 2:
            a, c = sorted(side)
            out.append((a, net.label(vb), c))
    return sorted(out)


# -- mutation scratchpad -------------------------------------------------------


class _Mut:
    """Mutable scratch copy of a network used to build new instances."""

    __slots__ = ("children", "parents", "labels", "root", "_next_id")

    @classmethod
    def from_net(cls, net):
        m = cls.__new__(cls)
        m.children = {v: set(net.children(v)) for v in net.vertices}
        m.parents = {v: set(net.parents(v)) for v in net.vertices}
        m.labels = net.leaf_label_map()
        m.root = net.root
        m._next_id = 1 + max(
            (v for v in net.vertices if isinstance(v, int)), default=-1)
        return m

    def new_vertex(self):
        v = self._next_id
        self._next_id += 1
        self.children[v] = set()
        self.parents[v] = set()
        return v

    def add_arc(self, u, v):
        if v in self.children[u]:
            raise NetworkError(f"operation would create a parallel arc ({u!r}, {v!r})")
        self.children[u].add(v)
        self.parents[v].add(u)

    def remove_arc(self, u, v):
        self.children[u].discard(v)
        self.parents[v].discard(u)

    def remove_vertex(self, v):
        for u in list(self.parents[v]):
            self.remove_arc(u, v)
        for c in list(self.children[v]):
            self.remove_arc(v, c)
        del self.children[v]
        del self.parents[v]
        self.labels.pop(v, None)

    def suppress(self, v):
        (p,) = self.parents[v]
        (c,) = self.children[v]
        self.remove_vertex(v)
        self.add_arc(p, c)

    def subdivide(self, u, v):
        w = self.new_vertex()
        self.remove_arc(u, v)
        self.add_arc(u, w)
        self.add_arc(w, v)
        return w

    def cleanup(self):
        # Suppress in-1/out-1 vertices and contract a root left with a
        # single child, repeating until stable.
        changed = True
        while changed:
            changed = False
            for v in list(self.children):
                if v not in self.children:
                    continue
                ind, outd = len(self.parents[v]), len(self.children[v])
                if v == self.root:
                    if ind == 0 and outd == 1 and len(self.children) > 1:
                        (c,) = self.children[v]
                        self.remove_vertex(v)
                        self.root = c
                        changed = True
                elif ind == 1 and outd == 1:
                    self.suppress(v)
                    changed = True

    def freeze(self):
        arcs = [(u, v) for u, cs in self.children.items() for v in cs]
        return PhyloNetwork(arcs, self.labels, root=self.root)


# -- leaf deletion and attachment ----------------------------------------------


def delete_leaf(net, a, b):
    """Remove leaf b of the cherry or reticulated cherry {a, b}.

    In the cherry case b and its arc are deleted and p_a suppressed; in the
    reticulated-cherry case (p_b a reticulation with arc (p_a, p_b)) the
    vertices b and p_b go, then p_a and g_b are suppressed.  Root contraction
    cascades are handled, so deleting from the 2-leaf cherry yields the
    single-vertex network on {a}.

    Raises NotReducibleError when {a, b} is neither kind of cherry.
    """
    va, vb = net.leaf(a), net.leaf(b)
    if net.in_degree(va) != 1 or net.in_degree(vb) != 1:
        raise NotReducibleError(f"{{{a!r}, {b!r}}} is not reducible")
    pa = net.parents(va)[0]
    pb = net.parents(vb)[0]
    if pa == pb:
        if net.n_leaves == 2:
            return PhyloNetwork([], {0: a})
        m = _Mut.from_net(net)
        m.remove_vertex(vb)
        m.cleanup()
        return m.freeze()
    if net.is_reticulation(pb) and pa in net.parents(pb):
        m = _Mut.from_net(net)
        m.remove_vertex(vb)
        m.remove_vertex(pb)
        m.cleanup()
        return m.freeze()
    raise NotReducibleError(
        f"{{{a!r}, {b!r}}} is neither a cherry nor a reticulated cherry with "
        f"reticulation leaf {b!r}")


def attach_cherry(net, a, b):
    """Subdivide the arc into leaf a with a new vertex p_a and hang the new
    leaf b from it.  Inverse of the cherry case of delete_leaf."""
    if b in net.labels():
        raise NetworkError(f"label {b!r} already present")
    va = net.leaf(a)
    m = _Mut.from_net(net)
    if net.in_degree(va) == 0:
        r = m.new_vertex()
        m.add_arc(r, va)
        m.root = r
        pa = r
    else:
        (p,) = m.parents[va]
        pa = m.subdivide(p, va)
    vb = m.new_vertex()
    m.labels[vb] = b
    m.add_arc(pa, vb)
    return m.freeze()


def attach_reticulated_cherry(net, a, target_arc, b):
    """Attach leaf b so that {a, b} becomes a reticulated cherry with
    reticulation leaf b.

    The new vertex g_b subdivides target_arc first; p_a then subdivides the
    current in-arc of a, so a target equal to the in-arc of a places g_b
    directly above p_a.  target_arc=None places g_b above the current root
    instead.  Finally p_b is adjoined via arcs (p_a, p_b) and (g_b, p_b) with
    the new leaf b below it.  Inverse of the reticulated-cherry case of
    delete_leaf.
    """
    if b in net.labels():
        raise NetworkError(f"label {b!r} already present")
    va = net.leaf(a)
    m = _Mut.from_net(net)
    if target_arc is None:
        g = m.new_vertex()
        m.add_arc(g, m.root)
        m.root = g
    else:
        u, v = target_arc
        if target_arc not in net.arcs:
            raise NetworkError(f"({u!r}, {v!r}) is not an arc of the network")
        g = m.subdivide(u, v)
    if not m.parents[va]:
        raise NetworkError(f"leaf {a!r} has no in-arc to subdivide")
    (p,) = m.parents[va]
    pa = m.subdivide(p, va)
    pb = m.new_vertex()
    m.add_arc(pa, pb)
    m.add_arc(g, pb)
    vb = m.new_vertex()
    m.labels[vb] = b
    m.add_arc(pb, vb)
    return m.freeze()


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of `validate`: the four class predicates plus itemized
    violations as (code, subject, message) tuples."""

    is_binary_network: bool
    is_tree_child: bool
    is_normal: bool
    is_temporal: bool
    violations: tuple

    @property
    def ok(self):
        return self.is_binary_network


def _binary_violations(net):
    out = []
    sources = [v for v in net.vertices if net.in_degree(v) == 0]
    if net._root is None:
        out.append(("root", None, f"expected one in-degree-0 vertex, found {len(sources)}"))
        return out
    root = net._root
    if net.in_degree(root) != 0:
        out.append(("root", root, "designated root has an in-arc"))
    if len(sources) != 1 or sources[0] != root:
        out.append(("root", root, f"expected the root to be the unique source, found {len(sources)} sources"))
    if net._try_topological_order() is None:
        out.append(("cycle", None, "digraph contains a directed cycle"))
        return out
    unreachable = set(net.vertices) - set(net.reachable_from(root))
    for v in sorted(unreachable, key=_vkey):
        out.append(("unreachable", v, "vertex not reachable from the root"))
    single = len(net.vertices) == 1
    for v in net.vertices:
        d = (net.in_degree(v), net.out_degree(v))
        if v == root:
            allowed = d == (0, 0) if single else d == (0, 2)
        else:
            allowed = d in ((1, 0), (1, 2), (2, 1))
        if not allowed:
            out.append(("degree", v, f"vertex has degree (in={d[0]}, out={d[1]})"))
    sinks = {v for v in net.vertices if net.out_degree(v) == 0}
    labeled = set(net.leaf_label_map())
    for v in sorted(sinks - labeled, key=_vkey):
        out.append(("label", v, "sink vertex has no leaf label"))
    for v in sorted(labeled - sinks, key=_vkey):
        out.append(("label", v, "leaf label on a non-sink vertex"))
    counts = Counter(net.leaf_label_map().values())
    for lab, k in sorted(counts.items()):
        if k > 1:
            out.append(("label", lab, f"label used by {k} vertices"))
    if not labeled:
        out.append(("label", None, "network has no leaf labels"))
    return out


def is_tree_child(net):
    """True iff every non-leaf vertex has a tree-vertex or leaf child."""
    for v in net.vertices:
        if net.is_leaf(v):
            continue
        if not any(net.in_degree(c) == 1 for c in net.children(v)):
            return False
    return True


def _shortcut_arcs(net):
    out = []
    for r in net.vertices:
        if not net.is_reticulation(r):
            continue
        for u in net.parents(r):
            others = [c for c in net.children(u) if c != r]
            if any(r in net.reachable_from(c) for c in others):
                out.append((u, r))
    return out


def has_shortcut(net):
    """True iff some reticulation arc (u, v) admits another u-to-v path."""
    return bool(_shortcut_arcs(net))


def is_normal(net):
    """Tree-child with no shortcut."""
    return is_tree_child(net) and not has_shortcut(net)


def is_temporal(net):
    """Temporal witness (vertex -> positive level) or None.

    The network is temporal iff contracting every reticulation arc leaves an
    acyclic digraph; the witness levels are longest-path depths of the
    contracted classes, so they are equal across reticulation arcs and
    strictly increasing along tree arcs.
    """
    uf = {v: v for v in net.vertices}

    def find(v):
        while uf[v] != v:
            uf[v] = uf[uf[v]]
            v = uf[v]
        return v

    for u, v in net.arcs:
        if net.is_reticulation(v):
            uf[find(u)] = find(v)
    edges = {}
    indeg = Counter()
    classes = {find(v) for v in net.vertices}
    for c in classes:
        edges[c] = []
    for u, v in net.arcs:
        if not net.is_reticulation(v):
            cu, cv = find(u), find(v)
            if cu == cv:
                return None
            edges[cu].append(cv)
            indeg[cv] += 1
    heap = [_vkey(c) + (c,) for c in classes if not indeg[c]]
    heapq.heapify(heap)
    level = {c: 0 for c in classes}
    seen = 0
    while heap:
        c = heapq.heappop(heap)[-1]
        seen += 1
        for d in edges[c]:
            level[d] = max(level[d], level[c] + 1)
            indeg[d] -= 1
            if not indeg[d]:
                heapq.heappush(heap, _vkey(d) + (d,))
    if seen != len(classes):
        return None
    return {v: level[find(v)] + 1 for v in net.vertices}


def validate(net):
    """Classify the digraph and itemize violations as data.

    is_normal = is_tree_child AND no shortcut; the class predicates are
    evaluated (and shortcut/tree-child diagnostics itemized) only when the
    binary-network shape holds.
    """
    violations = _binary_violations(net)
    binary = not violations
    tc = normal = temporal = False
    if binary:
        tc = is_tree_child(net)
        if not tc:
            violations.append(("tree-child", None, "a vertex has no tree-vertex or leaf child"))
        shortcuts = _shortcut_arcs(net)
        for arc in shortcuts:
            violations.append(("shortcut", arc, "reticulation arc has an alternate path"))
        normal = tc and not shortcuts
        temporal = is_temporal(net) is not None
    return ValidationReport(binary, tc, normal, temporal, tuple(violations))


# -- isomorphism ----------------------------------------------------------------


def _refine(nets, colorings):
    # Shared color-refinement over several networks at once.  Ranks are
    # assigned by sorted signature, so color values are canonical and
    # comparable across the networks.
    n_colors = len({c for cg in colorings for c in cg.values()})
    while True:
        sigs = []
        for net, cg in zip(nets, colorings):
            for v in net.vertices:
                sig = (cg[v],
                       tuple(sorted(cg[c] for c in net.children(v))),
                       tuple(sorted(cg[p] for p in net.parents(v))))
                sigs.append(sig)
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        it = iter(sigs)
        new = [{v: rank[next(it)] for v in net.vertices}
               for net, cg in zip(nets, colorings)]
        n_new = len({c for cg in new for c in cg.values()})
        colorings = new
        if n_new == n_colors:
            return colorings
        n_colors = n_new


def _initial_colors(nets):
    sigs = []
    for net in nets:
        for v in net.vertices:
            sigs.append((net.in_degree(v), net.out_degree(v),
                         net.leaf_label_map().get(v, "")))
    rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
    it = iter(sigs)
    return [{v: rank[next(it)] for v in net.vertices} for net in nets]


def canonical_colors(net):
    """Stable refinement coloring of one network; the color multiset is an
    isomorphism invariant and colors are canonical rank values."""
    return _refine([net], _initial_colors([net]))[0]


def _iso_search(n1, n2, c1, c2):
    if Counter(c1.values()) != Counter(c2.values()):
        return False
    cells1 = {}
    for v, c in c1.items():
        cells1.setdefault(c, []).append(v)
    split = min((c for c, vs in cells1.items() if len(vs) > 1), default=None)
    if split is None:
        phi = {}
        back = {c: v for v, c in c2.items()}
        for v, c in c1.items():
            phi[v] = back[c]
        if any((phi[u], phi[v]) not in n2.arcs for u, v in n1.arcs):
            return False
        lab2 = n2.leaf_label_map()
        return all(lab2.get(phi[v]) == lab for v, lab in n1.leaf_label_map().items())
    fresh = 1 + max(max(c1.values()), max(c2.values()))
    v = min(cells1[split], key=_vkey)
    for w in sorted((u for u, c in c2.items() if c == split), key=_vkey):
        d1 = dict(c1)
        d2 = dict(c2)
        d1[v] = fresh
        d2[w] = fresh
        r1, r2 = _refine([n1, n2], [d1, d2])
        if _iso_search(n1, n2, r1, r2):
            return True
    return False


def isomorphic(n1, n2):
    """Leaf-label-fixing digraph isomorphism.

    Iterated neighborhood refinement seeded by leaf labels, with
    backtracking individualization on unresolved color cells; sound and
    complete, and fast on tree-child inputs where refinement resolves fully.
    """
    if n1.labels() != n2.labels():
        return False
    if len(n1.vertices) != len(n2.vertices) or len(n1.arcs) != len(n2.arcs):
        return False
    c1, c2 = _refine([n1, n2], _initial_colors([n1, n2]))
    return _iso_search(n1, n2, c1, c2)
