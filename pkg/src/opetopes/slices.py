"""The slice construction for tower operads.

Slicing sends the tower level ``d`` to level ``d + 1``: the types of the
slice are the operations below, and the operations of the slice are the
reduction laws below -- pasting trees paired with their composite.
Composition in the slice is substitution of trees into tree nodes.

Only tower levels can be sliced here; a finite table operad has genuine
relations, and identifying its reduction laws is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .errors import CompositeMismatch, NoSuchNode, UnsupportedOperad
from . import shapes
from .operads import OperadLevel, Operation
from .trees import PasteTree, Path, substitute_tree


def slice_operad(operad) -> OperadLevel:
    """The slice of a tower level: types become the operations below."""
    if not isinstance(operad, OperadLevel):
        raise UnsupportedOperad("only tower levels can be sliced")
    return OperadLevel(operad.level + 1)


def graft_composite(tree: PasteTree) -> Operation:
    """Compose all node labels of a well-typed pasting tree bottom-up.

    The empty tree composes to the identity on its edge type.  The result
    does not depend on the order the nodes are folded; associativity
    guarantees this, and the property tests replay it.
    """
    return Operation(tree.level, shapes.graft(tree))


@dataclass(frozen=True)
class ReductionLaw:
    """A reduction law: a pasting tree together with its composite.

    The composite is recomputed on construction, so the pair is consistent
    by definition.  Reduction laws at level ``d`` are exactly the
    operations of the slice at level ``d + 1``.
    """

    tree: PasteTree
    composite: Operation = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "composite", graft_composite(self.tree))

    @property
    def as_operation(self) -> Operation:
        """The law read as an operation of the slice level."""
        return Operation(self.tree.level + 1, shapes.Opetope(self.tree.level + 2, self.tree))


def substitute(outer: PasteTree, at_node: Path, inner: PasteTree) -> PasteTree:
    """Replace a node of ``outer`` by a tree composing to the node's label.

    This is slice-level composition in the small: the inner tree's root
    edge takes over the node's output edge and its leaves take over the
    node's input slots, in leaf order.  Substituting an empty tree deletes
    a unary identity node.
    """
    try:
        victim = outer.node_at(at_node)
    except NoSuchNode:
        raise
    expected = victim.label
    actual = shapes.graft(inner)
    if actual != expected:
        raise CompositeMismatch(
            "inner tree composes to %s, node is labelled %s" % (actual.code, expected.code)
        )
    result, _ = substitute_tree(outer, at_node, inner)
    return result
