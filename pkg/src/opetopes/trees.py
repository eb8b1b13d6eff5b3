"""Pasting trees: the rooted, slot-attached trees underlying everything else.

A pasting tree at level ``d`` is either empty (a single edge carrying a
type) or a rooted tree whose nodes are labelled by shapes one dimension up.
Each node has exactly ``label.arity`` child slots; a slot either holds a
child node or is a dangling input edge (a leaf).  Children are attached to
*slots*, so trees are rigid: there is no residual planar or non-planar
symmetry to quotient away.

Two orderings travel with every tree and carry all the symmetric-group
content of the theory:

* ``node_order`` lists the node addresses in *input order*: when the tree
  is read as an operation one level up, its i-th input is the label of
  ``node_order[i]``.
* ``leaf_order`` lists the leaf addresses in *input order*: when the tree
  is composed down to a single operation, that operation's i-th input sits
  on the edge ``leaf_order[i]``.

Addresses are tuples of slot indices from the root; the root node is
``()``; the edge entering slot ``j`` of the node at ``p`` is ``p + (j,)``;
the root edge (the tree's output) is also addressed ``()``.  For the empty
tree the single edge is simultaneously the root edge and the unique leaf,
both addressed ``()``.

This module is purely structural.  Labels are opaque objects exposing an
integer ``arity`` attribute; type discipline between labels and edges is
enforced one layer up, in :mod:`opetopes.shapes`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Tuple

from .errors import IllTyped, NoSuchNode

Path = Tuple[int, ...]


@dataclass(frozen=True)
class TreeNode:
    """One node of a pasting tree: a label plus one child per slot.

    ``children`` has exactly ``label.arity`` entries; ``None`` marks a
    dangling slot (a leaf edge).
    """

    label: object
    children: Tuple[Optional["TreeNode"], ...]

    def __post_init__(self):
        if len(self.children) != self.label.arity:
            raise IllTyped(
                "node labelled %r needs %d child slots, got %d"
                % (self.label, self.label.arity, len(self.children))
            )


@dataclass(frozen=True)
class PasteTree:
    """A pasting tree with its two input orderings.

    ``level`` is the tower level of the edges (labels live one level up).
    An empty tree has ``root is None`` and carries the type of its single
    edge in ``edge_type``; a nonempty tree has ``edge_type is None``.
    """

    level: int
    root: Optional[TreeNode]
    edge_type: object
    node_order: Tuple[Path, ...]
    leaf_order: Tuple[Path, ...]

    def __post_init__(self):
        if self.root is None:
            if self.edge_type is None:
                raise IllTyped("empty tree needs an edge type")
            if self.node_order != () or self.leaf_order != ((),):
                raise IllTyped("empty tree has no nodes and exactly one leaf")
            return
        if self.edge_type is not None:
            raise IllTyped("nonempty tree must not carry an edge type")
        nodes = set(self.iter_node_paths())
        if set(self.node_order) != nodes or len(self.node_order) != len(nodes):
            raise IllTyped("node_order is not a permutation of the node set")
        leaves = set(self.iter_leaf_paths())
        if set(self.leaf_order) != leaves or len(self.leaf_order) != len(leaves):
            raise IllTyped("leaf_order is not a permutation of the leaf set")

    # -- basic queries ----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.root is None

    @property
    def node_count(self) -> int:
        return len(self.node_order)

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_order)

    def node_at(self, path: Path) -> TreeNode:
        node = self.root
        if node is None:
            raise NoSuchNode("empty tree has no nodes")
        for j in path:
            if j >= len(node.children) or node.children[j] is None:
                raise NoSuchNode("no node at %r" % (path,))
            node = node.children[j]
        return node

    def iter_node_paths(self) -> Iterator[Path]:
        """Node addresses in preorder (root first, slots left to right)."""

        def walk(node, path):
            yield path
            for j, child in enumerate(node.children):
                if child is not None:
                    yield from walk(child, path + (j,))

        if self.root is not None:
            yield from walk(self.root, ())

    def iter_leaf_paths(self) -> Iterator[Path]:
        """Leaf addresses in lexicographic (depth-first slot) order."""
        if self.root is None:
            yield ()
            return

        def walk(node, path):
            for j, child in enumerate(node.children):
                if child is None:
                    yield path + (j,)
                else:
                    yield from walk(child, path + (j,))

        yield from walk(self.root, ())

    def iter_edge_paths(self) -> Iterator[Path]:
        """All edge addresses: the root edge, then every slot edge."""
        yield ()
        for path in self.iter_node_paths():
            node = self.node_at(path)
            for j in range(len(node.children)):
                yield path + (j,)

    def preorder_paths(self) -> Tuple[Path, ...]:
        return tuple(self.iter_node_paths())

    def planar_leaf_paths(self) -> Tuple[Path, ...]:
        return tuple(self.iter_leaf_paths())


def empty_tree(level: int, edge_type: object) -> PasteTree:
    return PasteTree(level, None, edge_type, (), ((),))


def single_node_tree(
    level: int,
    label: object,
    node_order: Tuple[Path, ...] = ((),),
    leaf_order: Optional[Tuple[Path, ...]] = None,
) -> PasteTree:
    """A one-node tree with all slots dangling (the corolla on ``label``)."""
    node = TreeNode(label, (None,) * label.arity)
    if leaf_order is None:
        leaf_order = tuple((j,) for j in range(label.arity))
    return PasteTree(level, node, None, node_order, leaf_order)


# -- substitution ---------------------------------------------------------


def _rebuild_with(tree: PasteTree, path: Path, replacement) -> Optional[TreeNode]:
    """Return the root with the node at ``path`` swapped for ``replacement``.

    ``replacement`` is a TreeNode or None; None empties that position.
    """

    def walk(node, depth):
        if depth == len(path):
            return replacement
        j = path[depth]
        child = walk(node.children[j], depth + 1)
        children = node.children[:j] + (child,) + node.children[j + 1 :]
        return TreeNode(node.label, children)

    return walk(tree.root, 0)


def substitute_tree(
    tree: PasteTree, path: Path, inner: PasteTree
) -> Tuple[PasteTree, Callable[[Path], Path]]:
    """Replace the node at ``path`` by the pasting tree ``inner``.

    The inner tree's root edge merges with the node's output edge, and the
    inner tree's i-th leaf (per its leaf order) merges with the node's i-th
    input slot.  Substituting an empty inner tree deletes the node, fusing
    its single input edge with its output edge.

    Returns the new tree together with a remap taking old addresses (node
    or edge, excluding the replaced node itself) to their new addresses.
    The new tree's node order splices the inner order in place of the
    replaced node; the leaf order is the outer one, remapped.
    """
    victim = tree.node_at(path)
    arity = len(victim.children)
    if inner.leaf_count != arity:
        raise IllTyped(
            "substituting a %d-leaf tree for a node with %d slots"
            % (inner.leaf_count, arity)
        )

    if inner.is_empty:
        # The node must be unary; its input edge fuses with its output edge.
        child = victim.children[0]

        def remap(q: Path) -> Path:
            if q[: len(path)] == path and len(q) > len(path):
                if q[len(path)] != 0:
                    raise NoSuchNode("address %r lost in substitution" % (q,))
                return path + q[len(path) + 1 :]
            return q

        new_root = _rebuild_with(tree, path, child)
        if new_root is None:
            new_tree = empty_tree(tree.level, inner.edge_type)
        else:
            pos = tree.node_order.index(path)
            node_order = tuple(
                remap(q) for q in tree.node_order[:pos] + tree.node_order[pos + 1 :]
            )
            leaf_order = tuple(remap(q) for q in tree.leaf_order)
            new_tree = PasteTree(tree.level, new_root, None, node_order, leaf_order)
        return new_tree, remap

    # Nonempty inner tree: wire slot j of the victim to inner leaf j.
    slot_target = {j: inner.leaf_order[j] for j in range(arity)}

    def remap(q: Path) -> Path:
        if q == path:
            raise NoSuchNode("the replaced node has no image")
        if q[: len(path)] == path and len(q) > len(path):
            j = q[len(path)]
            return path + slot_target[j] + q[len(path) + 1 :]
        return q

    def fill(node: TreeNode, at: Path) -> TreeNode:
        children = []
        for j, child in enumerate(node.children):
            slot = at + (j,)
            if child is not None:
                children.append(fill(child, slot))
            elif slot in inner_leaf_index:
                children.append(victim.children[inner_leaf_index[slot]])
            else:
                children.append(None)
        return TreeNode(node.label, tuple(children))

    inner_leaf_index = {leaf: j for j, leaf in enumerate(inner.leaf_order)}
    grafted = fill(inner.root, ())

    new_root = _rebuild_with(tree, path, grafted)
    pos = tree.node_order.index(path)
    spliced = (
        tuple(remap(q) for q in tree.node_order[:pos])
        + tuple(path + q for q in inner.node_order)
        + tuple(remap(q) for q in tree.node_order[pos + 1 :])
    )
    leaf_order = tuple(remap(q) for q in tree.leaf_order)
    new_tree = PasteTree(tree.level, new_root, None, spliced, leaf_order)
    return new_tree, remap
