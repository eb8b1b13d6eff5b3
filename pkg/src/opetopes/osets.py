"""Finite opetopic sets: cells indexed by shape, face maps, and boundary
configurations (frames, niches, punctured niches) with their occupants.

Every cell of dimension >= 1 stores one face cell per inface position and
one for the outface.  Well-formedness is the local incidence discipline
read off the shape's pasting tree: every tree edge names exactly two
lower-dimensional faces -- one from below (the node consuming the edge, or
the outface's outface for the root edge) and one from above (the node
producing it, or the outface's own inface for a leaf) -- and those two
cells must coincide.

A boundary configuration assigns cells to some of the face positions.
Edges none of whose two references land on an assigned face are *free*;
a configuration pins each free edge with an explicit cell two dimensions
down.  Pins are what distinguish, say, the nullary niches sitting at two
different base cells, and they carry the fixed lower boundary of the
punctured niches used by the universality recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import DimOutOfRange, IllTyped, MalformedConfig, UnknownCell
from . import shapes
from .shapes import Opetope
from .trees import Path

# An incidence is one of:
#   ("ii", i, j)  inface i's j-th inface
#   ("oi", i)     inface i's outface
#   ("io", p)     the outface's p-th inface
#   ("oo",)       the outface's outface
Incidence = tuple
EdgeKey = Path


def edge_incidences(shape: Opetope) -> Dict[EdgeKey, Tuple[Incidence, Incidence]]:
    """The two face references meeting on each edge of the shape's tree.

    Shapes of dimension one have no tree and hence no relations.
    """
    if shape.dim < 2:
        return {}
    tree = shape.tree
    if tree.is_empty:
        return {(): (("io", 0), ("oo",))}
    node_index = {p: i for i, p in enumerate(tree.node_order)}
    leaf_index = {p: i for i, p in enumerate(tree.leaf_order)}
    out: Dict[EdgeKey, Tuple[Incidence, Incidence]] = {}
    for edge in tree.iter_edge_paths():
        if edge == ():
            lower: Incidence = ("oo",)
        else:
            lower = ("ii", node_index[edge[:-1]], edge[-1])
        if edge in node_index:
            upper: Incidence = ("oi", node_index[edge])
        else:
            upper = ("io", leaf_index[edge])
        out[edge] = (upper, lower)
    return out


class OpetopicSet:
    """An immutable finite opetopic set.

    ``cells`` maps cell names to shape codes; ``faces`` maps each cell of
    dimension >= 1 to its inface tuple and outface.  ``shape_bound`` is the
    declared size cap used when boundary configurations are enumerated.
    """

    def __init__(
        self,
        max_dim: int,
        shape_bound: int,
        cells: Dict[str, str],
        faces: Dict[str, Tuple[Tuple[str, ...], str]],
    ):
        self.max_dim = max_dim
        self.shape_bound = shape_bound
        self.cells = dict(cells)
        self.faces = {name: (tuple(ins), out) for name, (ins, out) in faces.items()}
        self._shapes: Dict[str, Opetope] = {}
        self._by_shape: Dict[str, Tuple[str, ...]] = {}
        for name in sorted(self.cells):
            code = self.cells[name]
            self._by_shape.setdefault(code, ())
            self._by_shape[code] += (name,)
        # Cells with unparseable shapes or missing face entries stay out of
        # the index; validation reports them instead of construction failing.
        self._niche_index: Dict[Tuple[str, Tuple[str, ...]], Tuple[str, ...]] = {}
        for code, names in self._by_shape.items():
            try:
                dim = self.shape(code).dim
            except IllTyped:
                continue
            if dim >= 1:
                for name in names:
                    if name not in self.faces:
                        continue
                    key = (code, self.faces[name][0])
                    self._niche_index.setdefault(key, ())
                    self._niche_index[key] += (name,)

    def shape(self, code: str) -> Opetope:
        if code not in self._shapes:
            self._shapes[code] = shapes.from_code(code)
        return self._shapes[code]

    def shape_of(self, cell: str) -> Opetope:
        if cell not in self.cells:
            raise UnknownCell("no cell named %r" % cell)
        return self.shape(self.cells[cell])

    def dim_of(self, cell: str) -> int:
        return self.shape_of(cell).dim

    def cells_of_shape(self, code: str) -> Tuple[str, ...]:
        return self._by_shape.get(code, ())

    def cells_of_dim(self, dim: int) -> Tuple[str, ...]:
        out = []
        for code in sorted(self._by_shape):
            if self.shape(code).dim == dim:
                out.extend(self._by_shape[code])
        return tuple(out)

    def infaces_of(self, cell: str) -> Tuple[str, ...]:
        return self.faces[cell][0]

    def outface_of(self, cell: str) -> str:
        return self.faces[cell][1]

    def resolve(self, cell: str, ref: Incidence) -> str:
        """Follow one incidence reference through a cell's faces."""
        ins, out = self.faces[cell]
        if ref[0] == "ii":
            return self.faces[ins[ref[1]]][0][ref[2]]
        if ref[0] == "oi":
            return self.faces[ins[ref[1]]][1]
        if ref[0] == "io":
            return self.faces[out][0][ref[1]]
        return self.faces[out][1]


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)
    relations_checked: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(oset: OpetopicSet) -> ValidationReport:
    """Check face typing and the incidence relations of every cell.

    The report lists every violation, and also the relation instances that
    were checked, so the generated incidence discipline is auditable.
    """
    report = ValidationReport()

    for name in sorted(oset.cells):
        code = oset.cells[name]
        try:
            shape = oset.shape(code)
        except IllTyped as exc:
            report.violations.append("cell %s: unparseable shape %r (%s)" % (name, code, exc))
            continue
        if shape.dim > oset.max_dim:
            report.violations.append(
                "cell %s: dimension %d exceeds max_dim %d" % (name, shape.dim, oset.max_dim)
            )
        if shape.dim == 0:
            if name in oset.faces:
                report.violations.append("cell %s: 0-cells have no faces" % name)
            continue
        if name not in oset.faces:
            report.violations.append("cell %s: missing face assignment" % name)
            continue
        ins, out = oset.faces[name]
        if len(ins) != shape.arity:
            report.violations.append(
                "cell %s: %d infaces assigned, shape has %d" % (name, len(ins), shape.arity)
            )
            continue
        bad = False
        for i, face in enumerate(ins):
            if face not in oset.cells:
                report.violations.append("cell %s: unknown inface %r" % (name, face))
                bad = True
            elif oset.cells[face] != shape.inputs[i].code:
                report.violations.append(
                    "cell %s: inface %d is %s-shaped, expected %s"
                    % (name, i, oset.cells[face], shape.inputs[i].code)
                )
                bad = True
        if out not in oset.cells:
            report.violations.append("cell %s: unknown outface %r" % (name, out))
            bad = True
        elif oset.cells[out] != shape.output.code:
            report.violations.append(
                "cell %s: outface is %s-shaped, expected %s"
                % (name, oset.cells[out], shape.output.code)
            )
            bad = True
        if bad:
            continue
        for edge, (upper, lower) in sorted(edge_incidences(shape).items()):
            a = oset.resolve(name, upper)
            b = oset.resolve(name, lower)
            report.relations_checked.append(
                "%s@%r: %r = %r" % (name, edge, upper, lower)
            )
            if a != b:
                report.violations.append(
                    "cell %s: edge %r joins %s and %s" % (name, edge, a, b)
                )
    report.violations.sort()
    return report


# -- boundary configurations ---------------------------------------------------


@dataclass(frozen=True)
class BoundaryConfig:
    """A partially assigned boundary of one shape.

    ``infaces`` has one entry per inface position (None = missing) and
    ``outface`` is None when missing.  ``pins`` assigns a cell to every
    free edge (an edge neither of whose face references is assigned).
    """

    shape_code: str
    infaces: Tuple[Optional[str], ...]
    outface: Optional[str]
    pins: Tuple[Tuple[EdgeKey, str], ...]

    @property
    def kind(self) -> str:
        missing = [i for i, c in enumerate(self.infaces) if c is None]
        if self.outface is not None and not missing:
            return "frame"
        if self.outface is None and not missing:
            return "niche"
        if self.outface is None and len(missing) == 1:
            return "punctured_niche"
        return "partial"

    @property
    def missing_inface_index(self) -> Optional[int]:
        missing = [i for i, c in enumerate(self.infaces) if c is None]
        return missing[0] if len(missing) == 1 else None

    def sort_key(self):
        return (
            self.shape_code,
            tuple(c or "" for c in self.infaces),
            self.outface or "",
            self.pins,
        )


def _resolve_partial(oset: OpetopicSet, cfg_shape: Opetope, infaces, outface, ref) -> Optional[str]:
    """Resolve an incidence against a partial assignment; None if missing."""
    if ref[0] == "ii":
        face = infaces[ref[1]]
        return None if face is None else oset.faces[face][0][ref[2]]
    if ref[0] == "oi":
        face = infaces[ref[1]]
        return None if face is None else oset.faces[face][1]
    if ref[0] == "io":
        return None if outface is None else oset.faces[outface][0][ref[1]]
    return None if outface is None else oset.faces[outface][1]


def make_config(
    oset: OpetopicSet,
    shape_code: str,
    infaces: Sequence[Optional[str]],
    outface: Optional[str],
    pins: Optional[Dict[EdgeKey, str]] = None,
) -> BoundaryConfig:
    """Build and normalise a configuration, checking all incidences.

    Every edge whose two references both resolve must agree; every free
    edge must be pinned (pins on resolvable edges are checked and then
    dropped, so equal configurations have equal representations).
    """
    shape = oset.shape(shape_code)
    infaces = tuple(infaces)
    if len(infaces) != (shape.arity if shape.dim >= 1 else 0):
        raise MalformedConfig("expected %d inface slots" % shape.arity)
    for i, cell in enumerate(infaces):
        if cell is None:
            continue
        if cell not in oset.cells:
            raise UnknownCell("no cell named %r" % cell)
        if oset.cells[cell] != shape.inputs[i].code:
            raise MalformedConfig(
                "inface %d must be %s-shaped" % (i, shape.inputs[i].code)
            )
    if outface is not None:
        if outface not in oset.cells:
            raise UnknownCell("no cell named %r" % outface)
        if oset.cells[outface] != shape.output.code:
            raise MalformedConfig("outface must be %s-shaped" % shape.output.code)
    pins = dict(pins or {})
    kept: List[Tuple[EdgeKey, str]] = []
    for edge, (upper, lower) in sorted(edge_incidences(shape).items()):
        a = _resolve_partial(oset, shape, infaces, outface, upper)
        b = _resolve_partial(oset, shape, infaces, outface, lower)
        pin = pins.pop(edge, None)
        values = {v for v in (a, b, pin) if v is not None}
        if len(values) > 1:
            raise MalformedConfig(
                "edge %r of %s resolves inconsistently: %s"
                % (edge, shape_code, sorted(values))
            )
        if a is None and b is None:
            if pin is None:
                raise MalformedConfig("edge %r of %s needs a pin" % (edge, shape_code))
            kept.append((edge, pin))
    if pins:
        raise MalformedConfig("pins on unknown edges: %r" % sorted(pins))
    return BoundaryConfig(shape_code, infaces, outface, tuple(sorted(kept)))


def frame_of(oset: OpetopicSet, cell: str) -> BoundaryConfig:
    shape = oset.shape_of(cell)
    if shape.dim < 1:
        raise MalformedConfig("0-cells have no frame configuration")
    ins, out = oset.faces[cell]
    return make_config(oset, shape.code, ins, out)


def niche_of(oset: OpetopicSet, cell: str) -> BoundaryConfig:
    """The cell's niche: its infaces, outface missing, free edges pinned
    from the cell's own boundary."""
    shape = oset.shape_of(cell)
    if shape.dim < 1:
        raise MalformedConfig("0-cells occupy no niche")
    ins, _ = oset.faces[cell]
    pins = {}
    for edge, (upper, lower) in edge_incidences(shape).items():
        a = _resolve_partial(oset, shape, ins, None, upper)
        b = _resolve_partial(oset, shape, ins, None, lower)
        if a is None and b is None:
            pins[edge] = oset.resolve(cell, upper)
    return make_config(oset, shape.code, ins, None, pins)


def config_with(
    oset: OpetopicSet,
    cfg: BoundaryConfig,
    *,
    inface: Optional[Tuple[int, str]] = None,
    outface: Optional[str] = None,
) -> BoundaryConfig:
    """A copy of ``cfg`` with one more face assigned; pins are re-derived."""
    infaces = list(cfg.infaces)
    if inface is not None:
        infaces[inface[0]] = inface[1]
    return make_config(
        oset, cfg.shape_code, infaces, outface if outface is not None else cfg.outface,
        dict(cfg.pins),
    )


def cell_matches(oset: OpetopicSet, cfg: BoundaryConfig, cell: str) -> bool:
    """Does the cell's boundary extend the configuration (pins included)?"""
    if oset.cells[cell] != cfg.shape_code:
        return False
    ins, out = oset.faces[cell]
    for want, have in zip(cfg.infaces, ins):
        if want is not None and want != have:
            return False
    if cfg.outface is not None and cfg.outface != out:
        return False
    shape = oset.shape(cfg.shape_code)
    incidences = edge_incidences(shape)
    for edge, pin in cfg.pins:
        if oset.resolve(cell, incidences[edge][0]) != pin:
            return False
    return True


def occupants(oset: OpetopicSet, cfg: BoundaryConfig) -> Tuple[str, ...]:
    """All cells of the configuration's shape extending it, sorted."""
    if cfg.kind == "niche" and cfg.shape_code in oset._by_shape:
        assigned = tuple(c for c in cfg.infaces)
        pool = oset._niche_index.get((cfg.shape_code, assigned), ())
        if not cfg.pins:
            return tuple(sorted(pool))
        return tuple(sorted(c for c in pool if cell_matches(oset, cfg, c)))
    return tuple(
        sorted(
            c
            for c in oset.cells_of_shape(cfg.shape_code)
            if cell_matches(oset, cfg, c)
        )
    )


def forced_outface_boundary(
    oset: OpetopicSet, cfg: BoundaryConfig
) -> Optional[Tuple[Tuple[str, ...], str]]:
    """The boundary any outface filler of the configuration must have.

    For a niche (all infaces assigned, free edges pinned) every face of
    the would-be outface cell is determined by the incidence relations;
    the forced infaces and outface are returned.  None when some face is
    not determined (or the shape has no relations to force it).
    """
    shape = oset.shape(cfg.shape_code)
    if shape.dim < 2:
        return None
    out_shape = shape.output
    pins = dict(cfg.pins)
    wanted_in: Dict[int, Optional[str]] = {}
    wanted_out: Optional[str] = None
    for edge, refs in edge_incidences(shape).items():
        value = pins.get(edge)
        for ref in refs:
            resolved = _resolve_partial(oset, shape, cfg.infaces, cfg.outface, ref)
            if resolved is not None:
                value = resolved
        for ref in refs:
            if ref[0] == "io":
                wanted_in[ref[1]] = value
            elif ref[0] == "oo":
                wanted_out = value
    if wanted_out is None:
        return None
    if sorted(wanted_in) != list(range(out_shape.arity)):
        return None
    if any(wanted_in[p] is None for p in range(out_shape.arity)):
        return None
    return tuple(wanted_in[p] for p in range(out_shape.arity)), wanted_out


def outface_extensions(oset: OpetopicSet, cfg: BoundaryConfig) -> Tuple[str, ...]:
    """Cells that can fill the configuration's outface slot, sorted."""
    if cfg.outface is not None:
        return (cfg.outface,)
    shape = oset.shape(cfg.shape_code)
    out = []
    for cell in oset.cells_of_shape(shape.output.code):
        try:
            config_with(oset, cfg, outface=cell)
        except MalformedConfig:
            continue
        out.append(cell)
    return tuple(sorted(out))


def competitors(oset: OpetopicSet, cell: str, mode: str) -> Tuple[str, ...]:
    """Occupants of the cell's frame (or niche), the cell included."""
    if cell not in oset.cells:
        raise UnknownCell("no cell named %r" % cell)
    if mode not in ("frame", "niche"):
        raise ValueError("mode must be 'frame' or 'niche'")
    if oset.dim_of(cell) == 0:
        # All 0-cells share the one degenerate boundary.
        return oset.cells_of_dim(0)
    cfg = frame_of(oset, cell) if mode == "frame" else niche_of(oset, cell)
    return occupants(oset, cfg)


# -- configuration enumeration ---------------------------------------------------


def enumerate_configs(
    oset: OpetopicSet,
    kind: str,
    dim: int,
    size_bound: Optional[int] = None,
    shape: Optional[Opetope] = None,
) -> Tuple[BoundaryConfig, ...]:
    """All well-formed configurations of one kind at one dimension.

    Shapes range over the enumeration at the set's declared bound (or the
    override).  Assignments range over the set's cells, filtered by the
    incidence relations; free edges range over all cells of the edge's
    type.  The listing is deduplicated and canonically ordered.
    """
    if kind not in ("frame", "niche", "punctured_niche"):
        raise ValueError("unknown configuration kind %r" % kind)
    if dim < 1 or dim > oset.max_dim:
        raise DimOutOfRange("dimension %d not in 1..%d" % (dim, oset.max_dim))
    bound = oset.shape_bound if size_bound is None else size_bound
    candidates = (shape,) if shape is not None else shapes.enumerate_opetopes(dim, bound)
    found: List[BoundaryConfig] = []
    for sh in candidates:
        if sh.dim != dim or sh.size > bound:
            continue
        missing_choices: Iterable[Optional[int]]
        if kind == "punctured_niche":
            missing_choices = range(sh.arity)
        else:
            missing_choices = (None,)
        for missing in missing_choices:
            pools = []
            for i in range(sh.arity):
                if missing is not None and i == missing:
                    pools.append((None,))
                else:
                    pools.append(oset.cells_of_shape(sh.inputs[i].code))
            for assignment in _product(pools):
                if kind == "frame":
                    outs = oset.cells_of_shape(sh.output.code)
                else:
                    outs = (None,)
                for out in outs:
                    for cfg in _pin_completions(oset, sh, assignment, out):
                        found.append(cfg)
    uniq = sorted(set(found), key=BoundaryConfig.sort_key)
    return tuple(uniq)


def _product(pools: Sequence[Sequence]) -> Iterator[tuple]:
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head,) + tail


def _pin_completions(
    oset: OpetopicSet, shape: Opetope, infaces, outface
) -> Iterator[BoundaryConfig]:
    """Configurations over one assignment, pins ranging over matching cells."""
    free: List[Tuple[EdgeKey, str]] = []
    for edge, (upper, lower) in sorted(edge_incidences(shape).items()):
        a = _resolve_partial(oset, shape, infaces, outface, upper)
        b = _resolve_partial(oset, shape, infaces, outface, lower)
        if a is not None and b is not None and a != b:
            return
        if a is None and b is None:
            free.append((edge, _edge_type_code(shape, edge)))
    pools = [oset.cells_of_shape(code) for _, code in free]
    for combo in _product(pools):
        pins = {edge: cell for (edge, _), cell in zip(free, combo)}
        try:
            yield make_config(oset, shape.code, infaces, outface, pins)
        except MalformedConfig:
            continue


def _edge_type_code(shape: Opetope, edge: EdgeKey) -> str:
    tree = shape.tree
    if tree.is_empty:
        return tree.edge_type.code
    if edge == ():
        return tree.node_at(()).label.output.code
    node = tree.node_at(edge[:-1])
    return node.label.inputs[edge[-1]].code
