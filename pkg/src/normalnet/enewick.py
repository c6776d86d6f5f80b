"""Extended Newick serialization for rooted binary networks.

A reticulation appears exactly twice in the text under one hybrid tag: once
parenthesized with its subtree (the definition) and once bare (the
reference), e.g. "((a,(b)#H1),(#H1,c));".  Internal vertex names and branch
lengths are accepted on input and discarded.

The writer is canonical: children are ordered by the smallest leaf label
below them (ties broken by the full cluster, then by refinement color), so
writing is deterministic and write(parse(write(net))) == write(net).
"""

from __future__ import annotations

from collections import Counter

from .network import PhyloNetwork, _vkey, canonical_colors, cluster_set, validate

_NAME_STOP = set("(),;:#")
_WS = set(" \t\r\n")


class ENewickParseError(ValueError):
    """Malformed eNewick text, with 1-based line and column diagnostics."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.arcs = []
        self.labels = {}
        self.seen_labels = set()
        self.next_id = 0
        self.hybrids = {}
        self.hybrid_defs = Counter()
        self.hybrid_refs = Counter()

    def error(self, msg):
        raise ENewickParseError(msg, self.line, self.col)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def skip_ws(self):
        while self.peek() in _WS and self.peek():
            self.take()

    def fresh(self):
        v = self.next_id
        self.next_id += 1
        return v

    def name(self):
        out = []
        while self.peek() and self.peek() not in _NAME_STOP and self.peek() not in _WS:
            out.append(self.take())
        return "".join(out)

    def branch_length(self):
        out = []
        while self.peek() and (self.peek().isdigit() or self.peek() in ".eE+-"):
            out.append(self.take())
        text = "".join(out)
        try:
            float(text)
        except ValueError:
            self.error(f"invalid branch length {text!r}")

    def hybrid_tag(self):
        self.take()  # '#'
        if self.peek() not in ("H", "h"):
            self.error("expected 'H' after '#'")
        self.take()
        digits = []
        while self.peek().isdigit():
            digits.append(self.take())
        if not digits:
            self.error("expected a number after '#H'")
        return int("".join(digits))

    def node(self):
        self.skip_ws()
        children = []
        if self.peek() == "(":
            self.take()
            children.append(self.node())
            self.skip_ws()
            while self.peek() == ",":
                self.take()
                children.append(self.node())
                self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')' or ',' in a subtree")
            self.take()
        name = self.name()
        tag = None
        if self.peek() == "#":
            tag = self.hybrid_tag()
        if self.peek() == ":":
            self.take()
            self.branch_length()
        if tag is not None:
            v = self.hybrids.get(tag)
            if v is None:
                v = self.hybrids[tag] = self.fresh()
            if children:
                self.hybrid_defs[tag] += 1
            else:
                self.hybrid_refs[tag] += 1
            for c in children:
                self.arcs.append((v, c))
            return v
        v = self.fresh()
        if children:
            for c in children:
                self.arcs.append((v, c))
        else:
            if not name:
                self.error("leaf has no label")
            if name in self.seen_labels:
                self.error(f"duplicate leaf label {name!r}")
            self.seen_labels.add(name)
            self.labels[v] = name
        return v

    def parse(self):
        self.skip_ws()
        if not self.peek():
            self.error("empty input")
        root = self.node()
        self.skip_ws()
        if self.peek() != ";":
            self.error("expected ';' after the network")
        self.take()
        self.skip_ws()
        if self.peek():
            self.error("unexpected text after ';'")
        for tag in sorted(self.hybrids):
            d, r = self.hybrid_defs[tag], self.hybrid_refs[tag]
            if d != 1 or r != 1:
                self.error(
                    f"hybrid tag #H{tag} needs exactly one parenthesized "
                    f"definition and one bare reference, found {d} and {r}")
        return PhyloNetwork(self.arcs, self.labels, root=root)


def parse_enewick(text):
    """Parse eNewick text into a PhyloNetwork.

    Raises ENewickParseError, with line and column, for syntax problems
    (unbalanced parentheses, missing ';', bad hybrid tags, unlabeled or
    duplicated leaves) and for digraphs that are not binary networks.
    """
    parser = _Parser(text)
    net = parser.parse()
    report = validate(net)
    if not report.is_binary_network:
        code, subject, msg = report.violations[0]
        raise ENewickParseError(
            f"text parses but is not a binary network: {msg}"
            + (f" (at {subject!r})" if subject is not None else ""),
            parser.line, parser.col)
    return net


def write_enewick(net):
    """Serialize to canonical eNewick.

    Children are ordered by (smallest leaf label below, sorted cluster,
    refinement color); hybrid tags are numbered in traversal discovery
    order and internal vertex names are never emitted.
    """
    labels = net.leaf_label_map()
    colors = canonical_colors(net)

    def order_key(v):
        cluster = cluster_set(net, v)
        smallest = min(cluster) if cluster else ""
        return (smallest, tuple(sorted(cluster)), colors[v], _vkey(v))

    hybrid_no = {}
    out = []

    def render(v):
        if net.is_reticulation(v):
            if v in hybrid_no:
                out.append(f"#H{hybrid_no[v]}")
                return
            hybrid_no[v] = len(hybrid_no) + 1
            tag = hybrid_no[v]
            out.append("(")
            for i, c in enumerate(sorted(net.children(v), key=order_key)):
                if i:
                    out.append(",")
                render(c)
            out.append(f")#H{tag}")
            return
        if net.is_leaf(v):
            out.append(labels[v])
            return
        out.append("(")
        for i, c in enumerate(sorted(net.children(v), key=order_key)):
            if i:
                out.append(",")
            render(c)
        out.append(")")

    render(net.root)
    out.append(";")
    return "".join(out)


def to_dot(net):
    """Render as Graphviz dot: reticulations as boxes, leaves labeled,
    tree vertices as points.  Output is deterministic."""
    ids = {v: f"n{i}" for i, v in enumerate(net.vertices)}
    lines = ["digraph network {", "  rankdir=TB;"]
    for v in net.vertices:
        if net.is_leaf(v):
            lab = net.leaf_label_map().get(v, "")
            lab = lab.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {ids[v]} [shape=plaintext, label="{lab}"];')
        elif net.is_reticulation(v):
            lines.append(
                f'  {ids[v]} [shape=box, label="", width=0.12, height=0.12];')
        else:
            lines.append(f"  {ids[v]} [shape=point];")
    for u, v in sorted(net.arcs, key=lambda a: (_vkey(a[0]), _vkey(a[1]))):
        lines.append(f"  {ids[u]} -> {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
