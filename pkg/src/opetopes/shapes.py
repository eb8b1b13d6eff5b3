"""Opetopes: the shapes of the iterated-slice tower over the initial operad.

The unique 0-dimensional shape is the point and the unique 1-dimensional
shape is the arrow.  An n-dimensional shape for n >= 2 is a pasting tree
at tower level ``n - 2``: nodes are labelled by (n-1)-dimensional shapes,
edges are typed by (n-2)-dimensional shapes, and the tree carries a node
order (which node is the i-th inface) and a leaf order (which dangling
edge is the i-th input of the composite outface).

Read as an *operation* at tower level ``n - 1``, a shape has

* ``arity``    -- the number of nodes of its tree,
* ``inputs``   -- the node labels, in node order,
* ``output``   -- the composite of the tree (grafting all labels).

So the infaces of a shape are its inputs and the outface is its output.
Distinct node orders are distinct shapes; this is what makes the
symmetric-group action on k-ary shapes free and yields k! two-dimensional
shapes with k infaces.

Canonical codes are parseable byte strings; equality of shapes is equality
of codes, and enumeration everywhere is sorted by code.  The code grammar
and the staged metatree serialization are documented in FORMAT.md.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import ArityMismatch, DegreeMismatch, IllTyped, TypeMismatch, ZeroDimensional
from .trees import PasteTree, Path, TreeNode, empty_tree, single_node_tree, substitute_tree


class Opetope:
    """An n-dimensional shape; immutable, hashable, compared by code."""

    __slots__ = ("dim", "tree", "_code", "_output", "_size")

    def __init__(self, dim: int, tree: Optional[PasteTree]):
        if dim < 0:
            raise IllTyped("dimension must be a natural number")
        if dim <= 1:
            if tree is not None:
                raise IllTyped("the point and the arrow carry no pasting tree")
        else:
            if tree is None:
                raise IllTyped("shapes of dimension >= 2 need a pasting tree")
            _validate_tree(dim, tree)
        self.dim = dim
        self.tree = tree
        self._code = None
        self._output = None
        self._size = None

    # -- operation view ----------------------------------------------------

    @property
    def arity(self) -> int:
        """Input count when read as an operation (= number of infaces)."""
        if self.dim == 0:
            raise ZeroDimensional("the point is not an operation")
        if self.dim == 1:
            return 1
        return self.tree.node_count

    @property
    def inputs(self) -> Tuple["Opetope", ...]:
        if self.dim == 0:
            raise ZeroDimensional("the point is not an operation")
        if self.dim == 1:
            return (POINT,)
        return tuple(self.tree.node_at(p).label for p in self.tree.node_order)

    @property
    def output(self) -> "Opetope":
        if self.dim == 0:
            raise ZeroDimensional("the point is not an operation")
        if self.dim == 1:
            return POINT
        if self._output is None:
            self._output = graft(self.tree)
        return self._output

    @property
    def size(self) -> int:
        """Total node count over all metatree stages; the enumeration bound."""
        if self._size is None:
            if self.dim <= 1:
                self._size = 0
            elif self.tree.is_empty:
                self._size = self.tree.edge_type.size
            else:
                total = self.tree.node_count
                for p in self.tree.node_order:
                    total += self.tree.node_at(p).label.size
                self._size = total
        return self._size

    @property
    def code(self) -> str:
        if self._code is None:
            self._code = _encode(self)
        return self._code

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Opetope) and self.dim == other.dim and self.code == other.code

    def __hash__(self):
        return hash((self.dim, self.code))

    def __lt__(self, other):
        return (self.dim, self.code) < (other.dim, other.code)

    def __repr__(self):
        return "Opetope(%r)" % self.code


POINT = Opetope(0, None)
ARROW = Opetope(1, None)


def _validate_tree(dim: int, tree: PasteTree) -> None:
    if tree.level != dim - 2:
        raise IllTyped("a %d-dimensional shape needs a level-%d tree" % (dim, dim - 2))
    if tree.is_empty:
        t = tree.edge_type
        if not isinstance(t, Opetope) or t.dim != dim - 2:
            raise IllTyped("empty-tree edge type must be a %d-dimensional shape" % (dim - 2))
        return
    for path in tree.node_order:
        node = tree.node_at(path)
        label = node.label
        if not isinstance(label, Opetope) or label.dim != dim - 1:
            raise IllTyped("node labels must be %d-dimensional shapes" % (dim - 1))
        for j, child in enumerate(node.children):
            if child is not None and child.label.output != label.inputs[j]:
                raise IllTyped(
                    "slot %d of node %r expects %s, child composes to %s"
                    % (j, path, label.inputs[j].code, child.label.output.code)
                )


# -- identities, composition, permutation -----------------------------------


def identity_on(shape: Opetope) -> Opetope:
    """The unary shape on ``shape``: the identity operation at its level."""
    if shape.dim == 0:
        return ARROW
    return Opetope(shape.dim + 1, single_node_tree(shape.dim - 1, shape))


def compose(f: Opetope, gs: Sequence[Opetope]) -> Opetope:
    """The operadic composite ``f (g_1, ..., g_k)`` one level up from edges.

    All operands are shapes of the same dimension; ``g_i`` must compose to
    the i-th input of ``f``.  The result's inputs are the concatenation of
    the ``g_i`` inputs and its output equals ``f``'s output.
    """
    if f.dim < 1:
        raise TypeMismatch("the point cannot be composed")
    gs = tuple(gs)
    if len(gs) != f.arity:
        raise ArityMismatch("operation of arity %d applied to %d arguments" % (f.arity, len(gs)))
    for i, g in enumerate(gs):
        if g.dim != f.dim:
            raise TypeMismatch("argument %d has dimension %d, expected %d" % (i, g.dim, f.dim))
        if g.output != f.inputs[i]:
            raise TypeMismatch(
                "argument %d composes to %s, slot expects %s"
                % (i, g.output.code, f.inputs[i].code)
            )
    if f.dim == 1:
        return ARROW

    # Substitute each argument's tree for the corresponding node, deepest
    # first so pending target addresses never move.
    tree = f.tree
    original = f.tree.node_order
    for i in sorted(range(len(gs)), key=lambda i: len(original[i]), reverse=True):
        tree, _ = substitute_tree(tree, original[i], gs[i].tree)
    return Opetope(f.dim, tree)


def permute_inputs(f: Opetope, sigma: Sequence[int]) -> Opetope:
    """The right action ``f . sigma``: input i of the result is input
    ``sigma[i]`` of ``f`` (0-indexed).  The output is unchanged."""
    sigma = tuple(sigma)
    if f.dim < 1:
        raise TypeMismatch("the point cannot be permuted")
    if len(sigma) != f.arity or sorted(sigma) != list(range(f.arity)):
        raise DegreeMismatch("permutation %r does not act on arity %d" % (sigma, f.arity))
    if f.dim == 1 or sigma == tuple(range(f.arity)):
        return f
    order = tuple(f.tree.node_order[sigma[i]] for i in range(f.arity))
    return Opetope(f.dim, PasteTree(f.tree.level, f.tree.root, None, order, f.tree.leaf_order))


def graft(tree: PasteTree) -> Opetope:
    """Compose a pasting tree's labels down to a single operation.

    The empty tree composes to the identity on its edge type.  The result's
    i-th input sits on the tree's i-th leaf, so the final answer is the
    planar fold corrected by the tree's leaf order.
    """
    if tree.is_empty:
        return identity_on(tree.edge_type)
    if tree.level == 0:
        return ARROW

    def fold(node: TreeNode) -> Opetope:
        args = []
        for j, child in enumerate(node.children):
            if child is None:
                args.append(identity_on(node.label.inputs[j]))
            else:
                args.append(fold(child))
        return compose(node.label, args)

    planar = fold(tree.root)
    mu = tree.planar_leaf_paths()
    sigma = tuple(mu.index(leaf) for leaf in tree.leaf_order)
    return permute_inputs(planar, sigma)


def faces(shape: Opetope) -> Tuple[Tuple[Opetope, ...], Opetope]:
    """Infaces (in inface order) and the outface of a shape of dim >= 1."""
    if shape.dim == 0:
        raise ZeroDimensional("the point has no faces")
    return shape.inputs, shape.output


# -- enumeration -------------------------------------------------------------


def enumerate_opetopes(dim: int, node_bound: int) -> Tuple[Opetope, ...]:
    """All shapes of the given dimension with size <= node_bound, sorted.

    ``size`` totals the node counts of every metatree stage, so the listing
    is finite in every dimension.  Dimensions 0 and 1 ignore the bound.
    """
    if dim < 0:
        raise IllTyped("dimension must be a natural number")
    return _enumerate_cached(dim, max(node_bound, 0))


_ENUM_CACHE: Dict[Tuple[int, int], Tuple[Opetope, ...]] = {}


def _enumerate_cached(dim: int, bound: int) -> Tuple[Opetope, ...]:
    key = (dim, bound)
    if key in _ENUM_CACHE:
        return _ENUM_CACHE[key]
    if dim == 0:
        result = (POINT,)
    elif dim == 1:
        result = (ARROW,)
    else:
        shapes = []
        for t in _enumerate_cached(dim - 2, bound):
            if t.size <= bound:
                shapes.append(Opetope(dim, empty_tree(dim - 2, t)))
        labels = [op for op in _enumerate_cached(dim - 1, bound) if op.size + 1 <= bound]
        by_output: Dict[Opetope, List[Opetope]] = {}
        for op in labels:
            by_output.setdefault(op.output, []).append(op)
        for root, used in _gen_root(labels, by_output, bound):
            base = PasteTree(
                dim - 2,
                root,
                None,
                _preorder(root),
                _planar_leaves(root),
            )
            for nu in itertools.permutations(base.node_order):
                for lam in itertools.permutations(base.leaf_order):
                    shapes.append(
                        Opetope(dim, PasteTree(dim - 2, root, None, nu, lam))
                    )
        shapes.sort(key=lambda s: s.code)
        result = tuple(shapes)
    _ENUM_CACHE[key] = result
    return result


def _preorder(root: TreeNode) -> Tuple[Path, ...]:
    out = []

    def walk(node, path):
        out.append(path)
        for j, child in enumerate(node.children):
            if child is not None:
                walk(child, path + (j,))

    walk(root, ())
    return tuple(out)


def _planar_leaves(root: TreeNode) -> Tuple[Path, ...]:
    out = []

    def walk(node, path):
        for j, child in enumerate(node.children):
            if child is None:
                out.append(path + (j,))
            else:
                walk(child, path + (j,))

    walk(root, ())
    return tuple(out)


def _gen_root(labels, by_output, budget) -> Iterator[Tuple[TreeNode, int]]:
    for label in labels:
        cost = 1 + label.size
        if cost > budget:
            continue
        for children, used in _gen_children(label.inputs, budget - cost, by_output):
            yield TreeNode(label, children), cost + used


def _gen_children(slot_types, budget, by_output):
    if not slot_types:
        yield (), 0
        return
    head, rest = slot_types[0], slot_types[1:]
    for tail, tail_used in _gen_children(rest, budget, by_output):
        yield (None,) + tail, tail_used
        for label in by_output.get(head, ()):
            cost = 1 + label.size
            if cost + tail_used > budget:
                continue
            for sub, sub_used in _gen_sub(label, budget - tail_used, by_output):
                yield (sub,) + tail, sub_used + tail_used


def _gen_sub(label, budget, by_output) -> Iterator[Tuple[TreeNode, int]]:
    cost = 1 + label.size
    if cost > budget:
        return
    for children, used in _gen_children(label.inputs, budget - cost, by_output):
        yield TreeNode(label, children), cost + used


# -- canonical codes ----------------------------------------------------------


def _encode(shape: Opetope) -> str:
    if shape.dim == 0:
        return "pt"
    if shape.dim == 1:
        return "ar"
    tree = shape.tree
    if tree.is_empty:
        body = "!" + tree.edge_type.code
    else:
        body = _encode_node(tree.root)
    pre = {p: i for i, p in enumerate(tree.preorder_paths())}
    leaves = {p: i for i, p in enumerate(tree.planar_leaf_paths())}
    nu = ".".join(str(pre[p]) for p in tree.node_order)
    lam = ".".join(str(leaves[p]) for p in tree.leaf_order)
    return "[%s|n%s|l%s]" % (body, nu, lam)


def _encode_node(node: TreeNode) -> str:
    parts = [("_" if c is None else _encode_node(c)) for c in node.children]
    return "(%s:%s)" % (node.label.code, ",".join(parts))


def from_code(code: str) -> Opetope:
    """Parse a canonical code back into a shape (inverse of ``.code``)."""
    try:
        shape, rest = _parse(code, 0)
    except IndexError:
        raise IllTyped("truncated code %r" % code)
    if rest != len(code):
        raise IllTyped("trailing garbage in code %r" % code)
    return shape


def _parse(s: str, i: int) -> Tuple[Opetope, int]:
    if s.startswith("pt", i):
        return POINT, i + 2
    if s.startswith("ar", i):
        return ARROW, i + 2
    if i >= len(s) or s[i] != "[":
        raise IllTyped("bad code at offset %d in %r" % (i, s))
    i += 1
    if s[i] == "!":
        edge, i = _parse(s, i + 1)
        tree_dim = edge.dim + 2
        base = empty_tree(edge.dim, edge)
        root = None
    else:
        root, i = _parse_node(s, i)
        tree_dim = root.label.dim + 1
        base = PasteTree(tree_dim - 2, root, None, _preorder(root), _planar_leaves(root))
    if s[i] != "|" or s[i + 1] != "n":
        raise IllTyped("expected node order at offset %d in %r" % (i, s))
    i += 2
    nu_idx, i = _parse_indices(s, i)
    if s[i] != "|" or s[i + 1] != "l":
        raise IllTyped("expected leaf order at offset %d in %r" % (i, s))
    i += 2
    lam_idx, i = _parse_indices(s, i)
    if s[i] != "]":
        raise IllTyped("unterminated code at offset %d in %r" % (i, s))
    i += 1
    pre = base.preorder_paths() if root is not None else ()
    leaves = base.planar_leaf_paths() if root is not None else ((),)
    try:
        nu = tuple(pre[k] for k in nu_idx)
        lam = tuple(leaves[k] for k in lam_idx)
    except IndexError:
        raise IllTyped("order index out of range in %r" % s)
    tree = (
        empty_tree(base.level, base.edge_type)
        if root is None
        else PasteTree(base.level, root, None, nu, lam)
    )
    return Opetope(tree_dim, tree), i


def _parse_node(s: str, i: int) -> Tuple[TreeNode, int]:
    if s[i] != "(":
        raise IllTyped("expected node at offset %d in %r" % (i, s))
    label, i = _parse(s, i + 1)
    if s[i] != ":":
        raise IllTyped("expected ':' at offset %d in %r" % (i, s))
    i += 1
    children: List[Optional[TreeNode]] = []
    if s[i] != ")":
        while True:
            if s[i] == "_":
                children.append(None)
                i += 1
            else:
                child, i = _parse_node(s, i)
                children.append(child)
            if s[i] == ",":
                i += 1
                continue
            break
    if s[i] != ")":
        raise IllTyped("unterminated node at offset %d in %r" % (i, s))
    return TreeNode(label, tuple(children)), i + 1


def _parse_indices(s: str, i: int) -> Tuple[Tuple[int, ...], int]:
    out = []
    while i < len(s) and s[i].isdigit():
        j = i
        while s[j].isdigit():
            j += 1
        out.append(int(s[i:j]))
        i = j
        if i < len(s) and s[i] == "." and i + 1 < len(s) and s[i + 1].isdigit():
            i += 1
            continue
        break
    return tuple(out), i


# -- metatree serialization ---------------------------------------------------


def metatree_stages(shape: Opetope) -> List[dict]:
    """The staged metatree: one entry per dimension from 1 up to ``dim``.

    Stage d lists the top trees describing the d-dimensional structure; the
    single tree of the top stage is the shape's own pasting tree, and the
    trees of stage d-1 are, in order, the top trees of the labels of every
    stage-d node (concatenated tree by tree, nodes in preorder).  Stage 1
    entries are arrow markers.  Empty trees carry their edge type's code.
    See FORMAT.md for the exact layout.
    """
    if shape.dim == 0:
        return []
    stages: List[List[dict]] = [[] for _ in range(shape.dim)]

    def emit(op: Opetope, stage: int) -> None:
        if op.dim == 1:
            stages[stage].append({"arrow": True})
            return
        tree = op.tree
        if tree.is_empty:
            stages[stage].append({"empty": True, "type_code": tree.edge_type.code})
            return
        pre = {p: i for i, p in enumerate(tree.preorder_paths())}
        leaves = {p: i for i, p in enumerate(tree.planar_leaf_paths())}
        stages[stage].append(
            {
                "root": _node_json(tree.root),
                "node_order": [pre[p] for p in tree.node_order],
                "leaf_order": [leaves[p] for p in tree.leaf_order],
            }
        )
        for p in tree.preorder_paths():
            emit(tree.node_at(p).label, stage - 1)

    emit(shape, shape.dim - 1)
    return [{"dim": d + 1, "trees": stages[d]} for d in range(shape.dim)]


def _node_json(node: TreeNode) -> dict:
    return {"slots": [None if c is None else _node_json(c) for c in node.children]}


def render_metatree(shape: Opetope) -> str:
    """A compact text view of the staged metatree, one line per stage.

    Node labels are positional (stage-d tree i labels global node i of
    stage d+1), so only the slot structure and the two orders are shown:
    ``(_,(_))`` marks slots, ``n``/``l`` carry the orders, ``|`` is an
    arrow marker and ``!code`` an empty tree on the coded type.
    """
    lines = []
    for stage in metatree_stages(shape):
        parts = []
        for tree in stage["trees"]:
            if tree.get("arrow"):
                parts.append("|")
            elif tree.get("empty"):
                parts.append("!" + tree["type_code"])
            else:
                parts.append(
                    "%s n%s l%s"
                    % (
                        _render_slots(tree["root"]),
                        ".".join(map(str, tree["node_order"])),
                        ".".join(map(str, tree["leaf_order"])),
                    )
                )
        lines.append("dim %d: %s" % (stage["dim"], "  ".join(parts)))
    return "\n".join(lines)


def _render_slots(spec: dict) -> str:
    inner = ",".join("_" if c is None else _render_slots(c) for c in spec["slots"])
    return "(%s)" % inner


def from_metatree(stages: Sequence[dict]) -> Opetope:
    """Rebuild a shape from its staged metatree (inverse of the above)."""
    if not stages:
        return POINT
    cursors = [0] * len(stages)

    def build(stage: int) -> Opetope:
        entry = stages[stage]["trees"][cursors[stage]]
        cursors[stage] += 1
        if entry.get("arrow"):
            return ARROW
        dim = stage + 1
        if entry.get("empty"):
            return Opetope(dim, empty_tree(dim - 2, from_code(entry["type_code"])))
        labels: List[Opetope] = []

        def count_nodes(spec) -> int:
            return 1 + sum(count_nodes(c) for c in spec["slots"] if c is not None)

        for _ in range(count_nodes(entry["root"])):
            labels.append(build(stage - 1))
        it = iter(labels)

        def make(spec) -> TreeNode:
            label = next(it)
            children = []
            for c in spec["slots"]:
                children.append(None if c is None else make(c))
            return TreeNode(label, tuple(children))

        root = make(entry["root"])
        base = PasteTree(dim - 2, root, None, _preorder(root), _planar_leaves(root))
        nu = tuple(base.preorder_paths()[k] for k in entry["node_order"])
        lam = tuple(base.planar_leaf_paths()[k] for k in entry["leaf_order"])
        return Opetope(dim, PasteTree(dim - 2, root, None, nu, lam))

    top = build(len(stages) - 1)
    if any(cursors[d] != len(stages[d]["trees"]) for d in range(len(stages))):
        raise IllTyped("metatree stages contain unused trees")
    return top
