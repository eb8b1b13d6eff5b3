"""Universal niche-occupants, balanced punctured niches, composites, and
the weak n-category check.

Universality and balancedness are mutually recursive relative to a target
dimension n.  An occupant of a j-dimensional niche with j > n is universal
exactly when it is the only occupant; for j <= n universality defers to
the balancedness, in both listing orders, of a (j+1)-dimensional punctured
niche built from the occupant and a frame-competitor of its outface.
Balancedness of an m-dimensional punctured niche is trivial for m > n+1
and otherwise combines an existence condition (every outface filling
extends to a full occupant universal in its niche) with a faithfulness
condition that climbs one more dimension.  Dimensions only ever climb, so
the recursion terminates; no configuration above dimension n+1 is ever
consulted, and verdicts are memoised and deterministic.

The two listing orders of each two-node punctured niche are genuinely
different shapes (inface order is part of a shape), which is why both are
always checked.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import (
    DimensionOverflow,
    InsufficientDimension,
    InvalidSet,
    MalformedConfig,
    UnknownCell,
)
from .osets import (
    BoundaryConfig,
    OpetopicSet,
    competitors,
    config_with,
    enumerate_configs,
    make_config,
    niche_of,
    occupants,
    outface_extensions,
    validate,
)
from .shapes import Opetope, identity_on
from .trees import PasteTree, TreeNode


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with a deterministic witness trail.

    For successful uniqueness checks above dimension n the witness names
    the unique occupant; for failures it names the first offending
    configuration or cell in canonical order.
    """

    value: bool
    witnesses: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.value


@dataclass
class CheckContext:
    """Shared state for one run of the recursion.

    The memo is transparent: verdicts with and without it agree, which the
    tests replay.  ``mirror_first`` only reorders the two listing-order
    variants of each punctured niche; it exists so the regression property
    (swapping the variants changes nothing) can be exercised.
    """

    oset: OpetopicSet
    n: int
    memo: Optional[Dict[tuple, Verdict]] = field(default_factory=dict)
    mirror_first: bool = False
    max_dim_reached: int = 0

    def _remember(self, key: tuple, verdict: Verdict) -> Verdict:
        if self.memo is not None:
            self.memo[key] = verdict
        return verdict


def _config_key(cfg: BoundaryConfig) -> tuple:
    return (cfg.shape_code, cfg.infaces, cfg.outface, cfg.pins)


def _note_dim(ctx: CheckContext, dim: int) -> None:
    if dim > ctx.max_dim_reached:
        ctx.max_dim_reached = dim
    if dim > ctx.n + 2:
        raise DimensionOverflow(
            "recursion touched dimension %d > n+2 = %d" % (dim, ctx.n + 2)
        )


def ray_on_output_shape(base: Opetope, mirrored: bool) -> Tuple[Opetope, int, int]:
    """The two-node shape pasting a unary cell onto the output of ``base``.

    The unary node (the identity shape on the base's outface) consumes the
    base node's output; the composite outface has the base's own shape.
    Returns the shape with the inface positions of the base node and of
    the unary node; ``mirrored`` swaps the listing order, giving the other
    of the two genuinely distinct shapes.
    """
    ray = identity_on(base.output)
    root = TreeNode(ray, (TreeNode(base, (None,) * base.arity),))
    leaf_order = tuple((0, p) for p in range(base.arity))
    base_path, ray_path = (0,), ()
    if mirrored:
        node_order = (ray_path, base_path)
        base_pos, ray_pos = 1, 0
    else:
        node_order = (base_path, ray_path)
        base_pos, ray_pos = 0, 1
    tree = PasteTree(base.dim - 1, root, None, node_order, leaf_order)
    return Opetope(base.dim + 1, tree), base_pos, ray_pos


def ray_on_input_shape(base: Opetope, slot: int, mirrored: bool) -> Tuple[Opetope, int, int]:
    """The two-node shape pasting a unary cell onto one input of ``base``.

    The unary node sits above slot ``slot`` of the node labelled ``base``;
    the composite outface again has the base's shape, with the pasted slot
    fed through the unary cell.  Returns the shape with the positions of
    the base node and the unary node; ``mirrored`` swaps the listing
    order.
    """
    ray = identity_on(base.inputs[slot])
    children = [None] * base.arity
    children[slot] = TreeNode(ray, (None,))
    root = TreeNode(base, tuple(children))
    leaf_order = tuple(
        (p, 0) if p == slot else (p,) for p in range(base.arity)
    )
    base_path, ray_path = (), (slot,)
    if mirrored:
        node_order = (base_path, ray_path)
        base_pos, ray_pos = 0, 1
    else:
        node_order = (ray_path, base_path)
        base_pos, ray_pos = 1, 0
    tree = PasteTree(base.dim - 1, root, None, node_order, leaf_order)
    return Opetope(base.dim + 1, tree), base_pos, ray_pos


def _output_composition_niche(
    ctx: CheckContext, cell: str, d_prime: str, mirrored: bool
) -> BoundaryConfig:
    """The punctured niche pasting ``cell`` with a missing unary cell on
    its outface, the far end pinned to the frame-competitor ``d_prime``."""
    shape = ctx.oset.shape_of(cell)
    big, cell_pos, _ = ray_on_output_shape(shape, mirrored)
    infaces: List[Optional[str]] = [None, None]
    infaces[cell_pos] = cell
    return make_config(ctx.oset, big.code, infaces, None, {(): d_prime})


def _input_competition_niche(
    ctx: CheckContext, cell: str, slot: int, a_prime: str, mirrored: bool
) -> BoundaryConfig:
    """The punctured niche pasting ``cell`` with a missing unary cell on
    its ``slot``-th inface, the far end pinned to ``a_prime``."""
    shape = ctx.oset.shape_of(cell)
    big, cell_pos, _ = ray_on_input_shape(shape, slot, mirrored)
    infaces: List[Optional[str]] = [None, None]
    infaces[cell_pos] = cell
    return make_config(ctx.oset, big.code, infaces, None, {(slot, 0): a_prime})


def is_universal(ctx: CheckContext, cell: str) -> Verdict:
    """Is the cell universal in its niche, relative to the context's n?

    Cells of dimension 0 occupy no niche and count as universal, so the
    closure condition on composites of universal cells is well-posed at
    the bottom of the tower.
    """
    if cell not in ctx.oset.cells:
        raise UnknownCell("no cell named %r" % cell)
    key = ("universal", cell)
    if ctx.memo is not None and key in ctx.memo:
        return ctx.memo[key]
    j = ctx.oset.dim_of(cell)
    _note_dim(ctx, j)
    if j == 0:
        return ctx._remember(key, Verdict(True, (cell,)))
    if j > ctx.n:
        occ = occupants(ctx.oset, niche_of(ctx.oset, cell))
        if occ == (cell,):
            return ctx._remember(key, Verdict(True, (cell,)))
        return ctx._remember(key, Verdict(False, occ))
    if j + 1 > ctx.oset.max_dim:
        raise DimensionOverflow(
            "universality at dimension %d needs configurations at %d > max_dim"
            % (j, j + 1)
        )
    outface = ctx.oset.outface_of(cell)
    variants = (True, False) if ctx.mirror_first else (False, True)
    for d_prime in competitors(ctx.oset, outface, "frame"):
        for mirrored in variants:
            pn = _output_composition_niche(ctx, cell, d_prime, mirrored)
            sub = is_balanced(ctx, pn)
            if not sub:
                witness = ("competitor:%s" % d_prime,) + sub.witnesses
                return ctx._remember(key, Verdict(False, witness))
    return ctx._remember(key, Verdict(True, (cell,)))


def is_balanced(ctx: CheckContext, cfg: BoundaryConfig) -> Verdict:
    """Is the punctured niche balanced, relative to the context's n?"""
    if cfg.kind != "punctured_niche":
        raise MalformedConfig("balancedness is asked of punctured niches")
    key = ("balanced", _config_key(cfg))
    if ctx.memo is not None and key in ctx.memo:
        return ctx.memo[key]
    shape = ctx.oset.shape(cfg.shape_code)
    m = shape.dim
    _note_dim(ctx, m)
    if m > ctx.n + 1:
        return ctx._remember(key, Verdict(True))
    slot = cfg.missing_inface_index

    # Existence: every outface filling extends to a full occupant that is
    # universal in its niche.
    for b in outface_extensions(ctx.oset, cfg):
        extended = config_with(ctx.oset, cfg, outface=b)
        fillers = [u for u in occupants(ctx.oset, extended) if is_universal(ctx, u)]
        if not fillers:
            return ctx._remember(
                key, Verdict(False, ("no-universal-filler-over:%s" % b,))
            )

    # Faithfulness: around every universal occupant, competition at the
    # restored inface stays balanced one dimension up.
    if m + 1 <= ctx.n + 1:
        variants = (True, False) if ctx.mirror_first else (False, True)
        for u in occupants(ctx.oset, cfg):
            if not is_universal(ctx, u):
                continue
            restored = ctx.oset.infaces_of(u)[slot]
            for a_prime in competitors(ctx.oset, restored, "frame"):
                for mirrored in variants:
                    pn = _input_competition_niche(ctx, u, slot, a_prime, mirrored)
                    sub = is_balanced(ctx, pn)
                    if not sub:
                        witness = (
                            "occupant:%s" % u,
                            "competitor:%s" % a_prime,
                        ) + sub.witnesses
                        return ctx._remember(key, Verdict(False, witness))
    return ctx._remember(key, Verdict(True))


def composites(ctx: CheckContext, niche: BoundaryConfig) -> Tuple[str, ...]:
    """The outfaces of the niche's universal occupants, deduplicated and
    sorted; at dimension n+1 there is at most one."""
    if niche.kind != "niche":
        raise MalformedConfig("composites are asked of niches")
    out = {
        ctx.oset.outface_of(u)
        for u in occupants(ctx.oset, niche)
        if is_universal(ctx, u)
    }
    return tuple(sorted(out))


@dataclass
class CheckVerdict:
    """The result of the weak n-category check, with per-niche records."""

    ok: bool
    n: int
    shape_bound: int
    condition1: List[dict] = field(default_factory=list)
    condition2: List[dict] = field(default_factory=list)
    failure: Optional[dict] = None
    niche_counts: Dict[int, int] = field(default_factory=dict)
    max_dim_reached: int = 0

    rule: str = (
        "condition 2 is checked as: for every niche within the bound whose "
        "infaces are all universal cells, every universal occupant of that "
        "niche has a universal outface"
    )


def _config_label(cfg: BoundaryConfig) -> str:
    faces = ",".join(c or "?" for c in cfg.infaces)
    pins = ";".join("%s=%s" % ("".join(map(str, e)) or "root", c) for e, c in cfg.pins)
    label = "%s(%s)->%s" % (cfg.shape_code, faces, cfg.outface or "?")
    return label + ("[%s]" % pins if pins else "")


def check_weak_n_category(
    oset: OpetopicSet,
    n: int,
    shape_bound: int,
    workers: int = 1,
    memo: bool = True,
) -> CheckVerdict:
    """Decide both weak n-category conditions over the bounded niche space.

    Condition 1: every niche of dimension 1..n+1 whose shape fits the
    bound has an occupant universal in it.  Condition 2: for every such
    niche whose infaces are all universal, every universal occupant has a
    universal outface.  Records are produced in canonical order and the
    verdict is identical for any worker count.
    """
    report = validate(oset)
    if not report.ok:
        raise InvalidSet("the set fails validation: %s" % report.violations[0])
    if oset.max_dim < n + 1:
        raise InsufficientDimension(
            "max_dim %d < n+1 = %d" % (oset.max_dim, n + 1)
        )
    ctx = CheckContext(oset, n, memo={} if memo else None)
    verdict = CheckVerdict(ok=True, n=n, shape_bound=shape_bound)

    niches: List[BoundaryConfig] = []
    for dim in range(1, n + 2):
        batch = enumerate_configs(oset, "niche", dim, size_bound=shape_bound)
        verdict.niche_counts[dim] = len(batch)
        niches.extend(batch)

    def examine(cfg: BoundaryConfig) -> Tuple[dict, Optional[dict]]:
        occ = occupants(ctx.oset, cfg)
        universal = [u for u in occ if is_universal(ctx, u)]
        rec1 = {
            "niche": _config_label(cfg),
            "occupants": len(occ),
            "universal_occupant": universal[0] if universal else None,
        }
        rec2 = None
        infaces_universal = all(is_universal(ctx, c) for c in cfg.infaces)
        if infaces_universal:
            bad = None
            for u in universal:
                out = ctx.oset.outface_of(u)
                out_verdict = is_universal(ctx, out)
                if not out_verdict:
                    bad = {
                        "occupant": u,
                        "outface": out,
                        "trace": list(out_verdict.witnesses),
                    }
                    break
            rec2 = {
                "niche": _config_label(cfg),
                "universal_occupants": len(universal),
                "non_universal_composite": bad,
            }
        return rec1, rec2

    if workers <= 1:
        results = [examine(cfg) for cfg in niches]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(examine, niches))

    for rec1, rec2 in results:
        verdict.condition1.append(rec1)
        if rec1["universal_occupant"] is None:
            verdict.ok = False
            if verdict.failure is None:
                verdict.failure = {"condition": 1, **rec1}
        if rec2 is not None:
            verdict.condition2.append(rec2)
            if rec2["non_universal_composite"] is not None:
                verdict.ok = False
                if verdict.failure is None:
                    verdict.failure = {"condition": 2, **rec2}
    verdict.max_dim_reached = ctx.max_dim_reached
    return verdict
