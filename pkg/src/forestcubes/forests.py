"""Planar forests with uniquely labelled leaves.

A forest is a sequence of planar rooted trees whose leaves carry the labels
1..n, each exactly once.  Internal edges are identified with their upper
internal node; every internal node has at least two children.  The edge
operations implemented here (flip, delete, insert, restrict) are the moves
that glue cubes together in the complexes built on top of this module.

Text form: ``forest := tree ("," tree)*``, ``tree := leaf | node``,
``node := "(" tree (" " tree)+ ")"``, ``leaf := decimal integer >= 1``.
Canonical output has no extra whitespace and lists trees in ascending order
of their minimum leaf label.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "ForestError",
    "Leaf",
    "Internal",
    "PlanarForest",
    "ChildRange",
    "TreeGroup",
    "parse_forest",
    "serialize_forest",
    "canonicalize",
    "enumerate_forests",
    "internal_edges",
    "flip",
    "delete_edge",
    "leaf_order",
    "edge_type",
    "insert_edge",
    "insertion_sites",
    "restrict_to_edge",
]


class ForestError(ValueError):
    """Malformed forest text or an operation violating a forest invariant."""


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Internal:
    children: tuple["Node", ...]
    eid: int


Node = Leaf | Internal


def _node_labels(node: Node) -> list[int]:
    if isinstance(node, Leaf):
        return [node.label]
    out: list[int] = []
    for child in node.children:
        out.extend(_node_labels(child))
    return out


def _node_eids(node: Node) -> list[int]:
    if isinstance(node, Leaf):
        return []
    out = [node.eid]
    for child in node.children:
        out.extend(_node_eids(child))
    return out


def _tree_min(node: Node) -> int:
    return min(_node_labels(node))


@dataclass(frozen=True)
class PlanarForest:
    """A sequence of planar trees; leaf labels are exactly {1..n}.

    Edge ids are part of the structure (they make edges trackable across
    flip/delete of other edges) but are not part of the text form.
    """

    trees: tuple[Node, ...]
    n: int

    def __post_init__(self):
        labels = []
        eids = []
        for tree in self.trees:
            labels.extend(_node_labels(tree))
            eids.extend(_node_eids(tree))
            _check_arity(tree)
        if sorted(labels) != list(range(1, self.n + 1)):
            raise ForestError(
                f"leaf labels must be exactly 1..{self.n}, got {sorted(labels)}"
            )
        if len(set(eids)) != len(eids):
            raise ForestError("internal edge ids must be distinct")

    def serialize(self) -> str:
        return serialize_forest(self)

    def __str__(self) -> str:
        return self.serialize()

    @property
    def k(self) -> int:
        """Number of internal edges."""
        return len(internal_edges(self))


def _check_arity(node: Node) -> None:
    if isinstance(node, Leaf):
        if node.label < 1:
            raise ForestError(f"leaf label must be >= 1, got {node.label}")
        return
    if len(node.children) < 2:
        raise ForestError("internal node with fewer than 2 children")
    for child in node.children:
        _check_arity(child)


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\(|\)|,|\d+")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if text[pos : m.start()].strip():
            raise ForestError(f"unexpected character at position {pos}")
        tokens.append(m.group())
        pos = m.end()
    if text[pos:].strip():
        raise ForestError(f"unexpected character at position {pos}")
    return tokens


def parse_forest(text: str) -> PlanarForest:
    """Parse forest text.  Trees keep their written order; edge ids are
    assigned in depth-first order over the trees as written."""
    tokens = _tokenize(text)
    if not tokens:
        raise ForestError("empty forest text")
    counter = itertools.count()
    pos = 0

    def parse_tree() -> Node:
        nonlocal pos
        if pos >= len(tokens):
            raise ForestError("unexpected end of input")
        tok = tokens[pos]
        if tok == "(":
            eid = next(counter)
            pos += 1
            children = []
            while pos < len(tokens) and tokens[pos] != ")":
                if tokens[pos] == ",":
                    raise ForestError("',' inside a group")
                children.append(parse_tree())
            if pos >= len(tokens):
                raise ForestError("unbalanced '('")
            pos += 1  # consume ")"
            if len(children) < 2:
                raise ForestError("group must contain at least 2 subtrees")
            return Internal(tuple(children), eid)
        if tok.isdigit():
            pos += 1
            return Leaf(int(tok))
        raise ForestError(f"unexpected token {tok!r}")

    trees = [parse_tree()]
    while pos < len(tokens):
        if tokens[pos] != ",":
            raise ForestError(f"expected ',' between trees, got {tokens[pos]!r}")
        pos += 1
        trees.append(parse_tree())

    labels = [lab for t in trees for lab in _node_labels(t)]
    return PlanarForest(tuple(trees), len(labels))


def _serialize_node(node: Node) -> str:
    if isinstance(node, Leaf):
        return str(node.label)
    return "(" + " ".join(_serialize_node(c) for c in node.children) + ")"


def serialize_forest(forest: PlanarForest) -> str:
    """Text form in the stored tree order (canonical text for canonical
    forests).  Edge ids are not persisted."""
    return ",".join(_serialize_node(t) for t in forest.trees)


def canonicalize(forest: PlanarForest) -> PlanarForest:
    """Sort trees by their minimum leaf label.  Idempotent; identifies
    forests that differ only by a permutation of their trees."""
    trees = tuple(sorted(forest.trees, key=_tree_min))
    if trees == forest.trees:
        return forest
    return PlanarForest(trees, forest.n)


# ---------------------------------------------------------------------------
# edge queries

def _iter_trees_canonical(forest: PlanarForest):
    return sorted(forest.trees, key=_tree_min)


def internal_edges(forest: PlanarForest) -> list[int]:
    """Edge ids in depth-first order, trees taken in canonical order."""
    out: list[int] = []
    for tree in _iter_trees_canonical(forest):
        out.extend(_node_eids(tree))
    return out


def _find_node(forest: PlanarForest, eid: int) -> Internal:
    def walk(node: Node) -> Internal | None:
        if isinstance(node, Leaf):
            return None
        if node.eid == eid:
            return node
        for child in node.children:
            found = walk(child)
            if found is not None:
                return found
        return None

    for tree in forest.trees:
        found = walk(tree)
        if found is not None:
            return found
    raise ForestError(f"no internal edge with id {eid}")


def leaf_order(forest: PlanarForest, eid: int) -> tuple[int, ...]:
    """Depth-first order of the leaf labels above the edge."""
    return tuple(_node_labels(_find_node(forest, eid)))


def edge_type(forest: PlanarForest, eid: int) -> frozenset[int]:
    """Unordered label set above the edge; invariant under flips."""
    return frozenset(leaf_order(forest, eid))


# ---------------------------------------------------------------------------
# edge operations

def _mirror(node: Node) -> Node:
    if isinstance(node, Leaf):
        return node
    return Internal(tuple(_mirror(c) for c in reversed(node.children)), node.eid)


def _replace(node: Node, eid: int, repl) -> Node | None:
    """Rebuild with repl(target) substituted at the node with id eid.

    repl returns a Node, a tuple of Nodes (spliced into the parent), or the
    node unchanged semantics are the caller's.  Returns None if eid does not
    occur under node.
    """
    if isinstance(node, Leaf):
        return None
    if node.eid == eid:
        raise _FoundAtTop(repl(node))
    changed = False
    new_children: list[Node] = []
    for child in node.children:
        if isinstance(child, Internal) and child.eid == eid:
            new = repl(child)
            if isinstance(new, tuple):
                new_children.extend(new)
            else:
                new_children.append(new)
            changed = True
            continue
        sub = _replace(child, eid, repl)
        if sub is None:
            new_children.append(child)
        else:
            new_children.append(sub)
            changed = True
    if not changed:
        return None
    return Internal(tuple(new_children), node.eid)


class _FoundAtTop(Exception):
    """Edge found at the top of a tree; carries the replacement."""

    def __init__(self, replacement):
        self.replacement = replacement


def flip(forest: PlanarForest, eid: int) -> PlanarForest:
    """Mirror the subtree hanging at the edge (the edge's node included).

    An involution; commutes with flips at other edges; edge ids preserved.
    """
    target = _find_node(forest, eid)  # raises on unknown id
    del target
    trees = []
    for tree in forest.trees:
        try:
            sub = _replace(tree, eid, _mirror)
        except _FoundAtTop as found:
            trees.append(found.replacement)
            continue
        trees.append(tree if sub is None else sub)
    return canonicalize(PlanarForest(tuple(trees), forest.n))


def delete_edge(forest: PlanarForest, eid: int) -> PlanarForest:
    """Collapse the edge: splice its children into the parent's child list,
    or split the tree when the edge sits at a tree top.  The depth-first
    leaf order above every surviving edge is unchanged."""
    _find_node(forest, eid)
    trees: list[Node] = []
    for tree in forest.trees:
        if isinstance(tree, Internal) and tree.eid == eid:
            trees.extend(tree.children)  # root split: children become trees
            continue
        sub = _replace(tree, eid, lambda node: node.children)
        trees.append(tree if sub is None else sub)
    return canonicalize(PlanarForest(tuple(trees), forest.n))


def restrict_to_edge(forest: PlanarForest, eid: int) -> PlanarForest:
    """Delete every internal edge except this one (order-independent).

    The result has a single internal edge carrying the same leaf order;
    all other labels become singleton trees.
    """
    order = leaf_order(forest, eid)
    rest = set(range(1, forest.n + 1)) - set(order)
    main = Internal(tuple(Leaf(a) for a in order), eid)
    trees = [main] + [Leaf(a) for a in sorted(rest)]
    return canonicalize(PlanarForest(tuple(trees), forest.n))


# ---------------------------------------------------------------------------
# edge insertion (the inverse of delete_edge)

@dataclass(frozen=True)
class ChildRange:
    """Group a contiguous, proper range children[start:stop] of the node
    identified by parent under a fresh edge."""

    parent: int
    start: int
    stop: int


@dataclass(frozen=True)
class TreeGroup:
    """Group whole trees, addressed by their minimum leaf label, in the
    given order, under a fresh edge."""

    keys: tuple[int, ...]


def _fresh_eid(forest: PlanarForest) -> int:
    eids = [e for t in forest.trees for e in _node_eids(t)]
    return max(eids, default=-1) + 1


def insert_edge(
    forest: PlanarForest, site: ChildRange | TreeGroup
) -> tuple[PlanarForest, int]:
    """Insert a fresh internal edge at the site.  Deleting the returned edge
    recovers the input (up to canonical tree order)."""
    eid = _fresh_eid(forest)
    if isinstance(site, ChildRange):
        parent = _find_node(forest, site.parent)
        width = site.stop - site.start
        if width < 2:
            raise ForestError("child range must cover at least 2 children")
        if not (0 <= site.start < site.stop <= len(parent.children)):
            raise ForestError("child range out of bounds")
        if width == len(parent.children):
            raise ForestError("child range must be proper (parent would become unary)")

        def regroup(node: Internal) -> Internal:
            grouped = Internal(node.children[site.start : site.stop], eid)
            children = (
                node.children[: site.start] + (grouped,) + node.children[site.stop :]
            )
            return Internal(children, node.eid)

        trees = []
        for tree in forest.trees:
            try:
                sub = _replace(tree, site.parent, regroup)
            except _FoundAtTop as found:
                trees.append(found.replacement)
                continue
            trees.append(tree if sub is None else sub)
        return canonicalize(PlanarForest(tuple(trees), forest.n)), eid

    if isinstance(site, TreeGroup):
        if len(site.keys) < 2:
            raise ForestError("tree group must contain at least 2 trees")
        if len(set(site.keys)) != len(site.keys):
            raise ForestError("tree group keys must be distinct")
        by_key = {_tree_min(t): t for t in forest.trees}
        missing = [k for k in site.keys if k not in by_key]
        if missing:
            raise ForestError(f"no tree with minimum label {missing[0]}")
        grouped = Internal(tuple(by_key[k] for k in site.keys), eid)
        rest = [t for t in forest.trees if _tree_min(t) not in set(site.keys)]
        return (
            canonicalize(PlanarForest(tuple(rest + [grouped]), forest.n)),
            eid,
        )

    raise ForestError(f"unsupported site {site!r}")


def insertion_sites(forest: PlanarForest) -> list[ChildRange | TreeGroup]:
    """All sites where a fresh edge can be inserted, in deterministic order:
    child ranges by edge then position, then tree groups by the chosen
    subset and order."""
    sites: list[ChildRange | TreeGroup] = []
    for eid in internal_edges(forest):
        node = _find_node(forest, eid)
        width_max = len(node.children)
        for start in range(width_max):
            for stop in range(start + 2, width_max + 1):
                if stop - start == width_max:
                    continue
                sites.append(ChildRange(eid, start, stop))
    keys = sorted(_tree_min(t) for t in forest.trees)
    for size in range(2, len(keys) + 1):
        for subset in itertools.combinations(keys, size):
            for order in itertools.permutations(subset):
                sites.append(TreeGroup(order))
    return sites


# ---------------------------------------------------------------------------
# enumeration

def _ordered_partitions(labels: tuple[int, ...], blocks: int):
    """All ways to split the label set into an ordered sequence of `blocks`
    disjoint non-empty subsets."""
    if blocks == 1:
        yield (labels,)
        return
    max_first = len(labels) - blocks + 1
    for size in range(1, max_first + 1):
        for combo in itertools.combinations(labels, size):
            remaining = tuple(x for x in labels if x not in set(combo))
            for tail in _ordered_partitions(remaining, blocks - 1):
                yield (combo,) + tail


def _trees_on(labels: tuple[int, ...], edges: int, counter) -> list[Node]:
    """All planar trees on the label set with the given internal edge count."""
    if len(labels) == 1:
        return [Leaf(labels[0])] if edges == 0 else []
    if edges < 1:
        return []
    out: list[Node] = []
    for blocks in range(2, len(labels) + 1):
        for parts in _ordered_partitions(labels, blocks):
            budgets = []
            for part in parts:
                lo = 0 if len(part) == 1 else 1
                hi = 0 if len(part) == 1 else len(part) - 1
                budgets.append((lo, hi))
            for split in _splits(edges - 1, budgets):
                child_lists = [
                    _trees_on(part, m, counter) for part, m in zip(parts, split)
                ]
                for combo in itertools.product(*child_lists):
                    out.append(Internal(tuple(combo), next(counter)))
    return out


def _splits(total: int, budgets: list[tuple[int, int]]):
    """Distribute `total` over positions with per-position (lo, hi) bounds."""
    if not budgets:
        if total == 0:
            yield ()
        return
    lo, hi = budgets[0]
    for take in range(lo, min(hi, total) + 1):
        for rest in _splits(total - take, budgets[1:]):
            yield (take,) + rest


@lru_cache(maxsize=None)
def enumerate_forests(n: int, k: int) -> tuple[PlanarForest, ...]:
    """All canonical forests labelled by 1..n with k internal edges, sorted
    by their text form."""
    if not (2 <= n <= 5):
        raise ForestError(f"n must be in 2..5, got {n}")
    if not (0 <= k <= n - 1):
        raise ForestError(f"k must be in 0..{n - 1}, got {k}")
    labels = tuple(range(1, n + 1))
    seen: dict[str, PlanarForest] = {}
    for blocks in range(1, n + 1):
        for parts in _set_partitions(labels, blocks):
            budgets = []
            for part in parts:
                lo = 0 if len(part) == 1 else 1
                hi = 0 if len(part) == 1 else len(part) - 1
                budgets.append((lo, hi))
            for split in _splits(k, budgets):
                tree_lists = [
                    _trees_on(part, m, itertools.count())
                    for part, m in zip(parts, split)
                ]
                for combo in itertools.product(*tree_lists):
                    # rebuild through the text form so edge ids come out in
                    # parse order and never collide across trees
                    text = ",".join(_serialize_node(t) for t in combo)
                    forest = canonicalize(parse_forest(text))
                    seen.setdefault(forest.serialize(), forest)
    return tuple(seen[s] for s in sorted(seen))


def _set_partitions(labels: tuple[int, ...], blocks: int):
    """Unordered set partitions into `blocks` parts, each part as a sorted
    tuple, parts ordered by minimum element."""
    if blocks == 1:
        yield (labels,)
        return
    if len(labels) < blocks:
        return
    first, rest = labels[0], labels[1:]
    # first goes with any subset of rest, remainder split into blocks-1
    for size in range(0, len(rest) - blocks + 2):
        for combo in itertools.combinations(rest, size):
            part = (first,) + combo
            remaining = tuple(x for x in rest if x not in set(combo))
            for tail in _set_partitions(remaining, blocks - 1):
                yield (part,) + tail
