"""Typed operads: the tower over the initial operad, finite table operads,
permutation plumbing, algebras, and the axiom audit.

The tower is the only family of operads that gets sliced; level ``d`` has
the d-dimensional shapes as types and the (d+1)-dimensional shapes as
operations.  Finite table operads exist for algebra fixtures and as
negative controls for the axiom audit; they are never sliced.

``check_operad_axioms`` exhaustively replays the five operad laws
(associativity, units, and the three equivariance laws) over every
instance whose operands' total size stays within the bound, and reports
each violation instead of raising.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    ArityMismatch,
    CarrierMismatch,
    DegreeMismatch,
    TypeMismatch,
    UnsupportedOperad,
)
from . import shapes
from .shapes import Opetope


# -- permutations -------------------------------------------------------------

Perm = Tuple[int, ...]


def identity_perm(k: int) -> Perm:
    return tuple(range(k))


def check_perm(sigma: Sequence[int], degree: Optional[int] = None) -> Perm:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise DegreeMismatch("%r is not a permutation" % (sigma,))
    if degree is not None and len(sigma) != degree:
        raise DegreeMismatch("degree %d expected, got %d" % (degree, len(sigma)))
    return sigma


def compose_perms(sigma: Sequence[int], tau: Sequence[int]) -> Perm:
    """Function composition ``sigma . tau`` (apply ``tau`` first)."""
    sigma, tau = check_perm(sigma), check_perm(tau, len(sigma))
    return tuple(sigma[tau[i]] for i in range(len(tau)))


def block_permutation(sigma: Sequence[int], block_sizes: Sequence[int]) -> Perm:
    """Permute concatenated blocks of the given sizes as wholes.

    Position-wise (0-indexed): the i-th output block is the ``sigma[i]``-th
    input block, kept in its internal order.  Acting on the right of an
    operation, this is the induced homomorphism used by the equivariance
    law for permuted composition.
    """
    sigma = check_perm(sigma, len(block_sizes))
    offsets = []
    total = 0
    for size in block_sizes:
        offsets.append(total)
        total += size
    image: List[int] = []
    for i in range(len(block_sizes)):
        src = sigma[i]
        image.extend(range(offsets[src], offsets[src] + block_sizes[src]))
    return tuple(image)


def direct_sum_permutation(sigmas: Sequence[Sequence[int]]) -> Perm:
    """The block-diagonal permutation acting as ``sigma_i`` inside block i."""
    image: List[int] = []
    offset = 0
    for sigma in sigmas:
        sigma = check_perm(sigma)
        image.extend(offset + sigma[j] for j in range(len(sigma)))
        offset += len(sigma)
    return tuple(image)


# -- types and operations ------------------------------------------------------


@dataclass(frozen=True, order=True)
class TypeId:
    """A type of the level-``level`` tower operad, named by canonical code."""

    level: int
    code: str


def as_type(shape: Opetope) -> TypeId:
    """The shape seen as a type of the tower level equal to its dimension."""
    return TypeId(shape.dim, shape.code)


def from_type(t: TypeId) -> Opetope:
    shape = shapes.from_code(t.code)
    if shape.dim != t.level:
        raise TypeMismatch("code %r is not a level-%d type" % (t.code, t.level))
    return shape


@dataclass(frozen=True)
class Operation:
    """An operation of the tower: a (level+1)-dimensional shape.

    ``inputs`` and ``output`` are level-``level`` types; for level >= 1 the
    inputs are the node labels of ``body`` in node order and the output is
    the composite of ``body``.
    """

    level: int
    shape: Opetope

    def __post_init__(self):
        if self.shape.dim != self.level + 1:
            raise TypeMismatch(
                "a level-%d operation is a %d-dimensional shape"
                % (self.level, self.level + 1)
            )

    @property
    def arity(self) -> int:
        return self.shape.arity

    @property
    def inputs(self) -> Tuple[TypeId, ...]:
        return tuple(as_type(s) for s in self.shape.inputs)

    @property
    def output(self) -> TypeId:
        return as_type(self.shape.output)

    @property
    def body(self):
        """The pasting tree one level down; absent at level 0."""
        return self.shape.tree

    @property
    def code(self) -> str:
        return self.shape.code


def compose(f: Operation, gs: Sequence[Operation]) -> Operation:
    """Operadic composition ``f (g_1, ..., g_k)`` at f's level."""
    for g in gs:
        if g.level != f.level:
            raise TypeMismatch("operands live at different tower levels")
    return Operation(f.level, shapes.compose(f.shape, [g.shape for g in gs]))


def permute(f: Operation, sigma: Sequence[int]) -> Operation:
    """The right symmetric-group action on an operation's inputs."""
    return Operation(f.level, shapes.permute_inputs(f.shape, sigma))


@dataclass(frozen=True)
class OperadLevel:
    """The tower operad at a given level.

    Types are the level-dimensional shapes and operations the shapes one
    dimension up.  Levels 0 and 1 have finitely many types and (level 0)
    operations; elsewhere enumeration requires a size bound.
    """

    level: int

    def types(self, size_bound: Optional[int] = None) -> Tuple[TypeId, ...]:
        if size_bound is None:
            if self.level >= 2:
                raise ValueError("level >= 2 has infinitely many types; pass a bound")
            size_bound = 0
        return tuple(as_type(s) for s in shapes.enumerate_opetopes(self.level, size_bound))

    def operations(
        self, size_bound: Optional[int] = None, arity: Optional[int] = None
    ) -> Tuple[Operation, ...]:
        if size_bound is None:
            if self.level >= 1:
                raise ValueError("level >= 1 has infinitely many operations; pass a bound")
            size_bound = 0
        ops = (
            Operation(self.level, s)
            for s in shapes.enumerate_opetopes(self.level + 1, size_bound)
        )
        if arity is None:
            return tuple(ops)
        return tuple(op for op in ops if op.arity == arity)

    def identity(self, t: TypeId) -> Operation:
        return Operation(self.level, shapes.identity_on(from_type(t)))

    def compose(self, f: Operation, gs: Sequence[Operation]) -> Operation:
        return compose(f, gs)

    def permute(self, f: Operation, sigma: Sequence[int]) -> Operation:
        return permute(f, sigma)


def initial_operad() -> OperadLevel:
    """The initial untyped operad: one type, one operation, level 0."""
    return OperadLevel(0)


# -- finite table operads -------------------------------------------------------


@dataclass(frozen=True)
class TableOperad:
    """A finite operad presented by explicit tables.

    Supported for algebra fixtures and for auditing axiom violations in
    deliberately corrupted data; table operads cannot be sliced.  The
    permutation action may be omitted when every operation is unary.
    """

    type_names: Tuple[str, ...]
    ops: Dict[str, Tuple[Tuple[str, ...], str]]
    identities: Dict[str, str]
    table: Dict[Tuple[str, Tuple[str, ...]], str]
    perms: Optional[Dict[Tuple[str, Perm], str]] = None

    def arity(self, f: str) -> int:
        return len(self.ops[f][0])

    def inputs(self, f: str) -> Tuple[str, ...]:
        return self.ops[f][0]

    def output(self, f: str) -> str:
        return self.ops[f][1]

    def compose(self, f: str, gs: Sequence[str]) -> str:
        gs = tuple(gs)
        if len(gs) != self.arity(f):
            raise ArityMismatch("operation %r has arity %d" % (f, self.arity(f)))
        for g, t in zip(gs, self.inputs(f)):
            if self.output(g) != t:
                raise TypeMismatch("cannot plug %r into %r" % (g, f))
        try:
            return self.table[(f, gs)]
        except KeyError:
            raise TypeMismatch("composition table has no entry for %r%r" % (f, gs))

    def permute(self, f: str, sigma: Sequence[int]) -> str:
        sigma = check_perm(sigma, self.arity(f))
        if sigma == identity_perm(len(sigma)):
            return f
        if self.perms is None or (f, sigma) not in self.perms:
            raise UnsupportedOperad("no permutation table entry for %r%r" % (f, sigma))
        return self.perms[(f, sigma)]

    def identity(self, t: str) -> str:
        return self.identities[t]


# -- the axiom audit -------------------------------------------------------------


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    operands: Tuple[str, ...]
    lhs: str
    rhs: str

    def sort_key(self):
        return (self.axiom, self.operands, self.lhs, self.rhs)


@dataclass
class AxiomReport:
    size_bound: int
    instances: Dict[str, int] = field(default_factory=dict)
    violations: List[AxiomViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class _TowerView:
    def __init__(self, operad: OperadLevel, size_bound: int):
        self._ops = operad.operations(size_bound)
        self._operad = operad

    def ops(self):
        return self._ops

    def size(self, f: Operation) -> int:
        return f.shape.size

    def key(self, f: Operation) -> str:
        return f.code

    def arity(self, f: Operation) -> int:
        return f.arity

    def inputs(self, f: Operation):
        return f.inputs

    def output(self, f: Operation):
        return f.output

    def compose(self, f, gs):
        return self._operad.compose(f, gs)

    def permute(self, f, sigma):
        return self._operad.permute(f, sigma)

    def identity(self, t):
        return self._operad.identity(t)


class _TableView:
    def __init__(self, operad: TableOperad):
        self._operad = operad
        self._ops = tuple(sorted(operad.ops))

    def ops(self):
        return self._ops

    def size(self, f):
        return 0

    def key(self, f):
        return f

    def arity(self, f):
        return self._operad.arity(f)

    def inputs(self, f):
        return self._operad.inputs(f)

    def output(self, f):
        return self._operad.output(f)

    def compose(self, f, gs):
        return self._operad.compose(f, gs)

    def permute(self, f, sigma):
        return self._operad.permute(f, sigma)

    def identity(self, t):
        return self._operad.identity(t)


def _view(operad, size_bound):
    if isinstance(operad, OperadLevel):
        return _TowerView(operad, size_bound)
    if isinstance(operad, TableOperad):
        return _TableView(operad)
    raise UnsupportedOperad("cannot audit %r" % (operad,))


def _arg_tuples(view, input_types, budget) -> Iterator[Tuple[tuple, int]]:
    """All tuples of operations matching the given input types, with total
    size within budget."""
    if not input_types:
        yield (), 0
        return
    head, rest = input_types[0], input_types[1:]
    for g in view._by_output.get(head, ()):
        used = view.size(g)
        if used > budget:
            continue
        for tail, tail_used in _arg_tuples(view, rest, budget - used):
            if used + tail_used <= budget:
                yield (g,) + tail, used + tail_used


def check_operad_axioms(operad, size_bound: int, workers: int = 1) -> AxiomReport:
    """Exhaustively verify the operad laws on the bounded instance space.

    Quantified operands range over the operations of size <= size_bound;
    an instance participates when the total size of all its operands stays
    within the bound.  Permutations always range over the full symmetric
    group of the relevant arity.  The report is identical for any worker
    count: violations are collected and sorted by canonical key.
    """
    if size_bound < 1:
        raise ValueError("size_bound must be >= 1")
    view = _view(operad, size_bound)
    by_output: Dict[object, List] = {}
    for g in view.ops():
        by_output.setdefault(view.output(g), []).append(g)
    view._by_output = by_output

    report = AxiomReport(size_bound=size_bound)
    checks: List[Tuple[str, tuple]] = []

    for f in view.ops():
        f_size = view.size(f)
        if f_size > size_bound:
            continue
        checks.append(("b", (f,)))
        k = view.arity(f)
        for sigma in itertools.permutations(range(k)):
            for tau in itertools.permutations(range(k)):
                checks.append(("c", (f, sigma, tau)))
        for gs, gs_size in _arg_tuples(view, view.inputs(f), size_bound - f_size):
            checks.append(("d", (f, gs)))
            checks.append(("e", (f, gs)))
            inner_types = tuple(t for g in gs for t in view.inputs(g))
            remaining = size_bound - f_size - gs_size
            for hs, _ in _arg_tuples(view, inner_types, remaining):
                checks.append(("a", (f, gs, hs)))

    def run(check) -> List[AxiomViolation]:
        axiom, operands = check
        out: List[AxiomViolation] = []
        if axiom == "a":
            f, gs, hs = operands
            blocks = []
            start = 0
            for g in gs:
                blocks.append(hs[start : start + view.arity(g)])
                start += view.arity(g)
            lhs = view.compose(f, [view.compose(g, b) for g, b in zip(gs, blocks)])
            rhs = view.compose(view.compose(f, gs), hs)
            if lhs != rhs:
                keys = (view.key(f),) + tuple(map(view.key, gs)) + tuple(map(view.key, hs))
                out.append(AxiomViolation("a", keys, view.key(lhs), view.key(rhs)))
        elif axiom == "b":
            (f,) = operands
            left = view.compose(view.identity(view.output(f)), [f])
            right = view.compose(f, [view.identity(t) for t in view.inputs(f)])
            if left != f:
                out.append(AxiomViolation("b", (view.key(f), "left-unit"), view.key(left), view.key(f)))
            if right != f:
                out.append(AxiomViolation("b", (view.key(f), "right-unit"), view.key(right), view.key(f)))
        elif axiom == "c":
            f, sigma, tau = operands
            lhs = view.permute(f, compose_perms(sigma, tau))
            rhs = view.permute(view.permute(f, sigma), tau)
            if lhs != rhs:
                out.append(
                    AxiomViolation(
                        "c", (view.key(f), repr(sigma), repr(tau)), view.key(lhs), view.key(rhs)
                    )
                )
        elif axiom == "d":
            f, gs = operands
            arities = [view.arity(g) for g in gs]
            for sigma in itertools.permutations(range(len(gs))):
                lhs = view.compose(view.permute(f, sigma), [gs[sigma[i]] for i in range(len(gs))])
                rhs = view.permute(view.compose(f, gs), block_permutation(sigma, arities))
                if lhs != rhs:
                    keys = (view.key(f),) + tuple(map(view.key, gs)) + (repr(sigma),)
                    out.append(AxiomViolation("d", keys, view.key(lhs), view.key(rhs)))
        elif axiom == "e":
            f, gs = operands
            pools = [tuple(itertools.permutations(range(view.arity(g)))) for g in gs]
            for sigmas in itertools.product(*pools):
                lhs = view.compose(f, [view.permute(g, s) for g, s in zip(gs, sigmas)])
                rhs = view.permute(view.compose(f, gs), direct_sum_permutation(sigmas))
                if lhs != rhs:
                    keys = (view.key(f),) + tuple(map(view.key, gs)) + (repr(sigmas),)
                    out.append(AxiomViolation("e", keys, view.key(lhs), view.key(rhs)))
        return out

    for axiom, _ in checks:
        report.instances[axiom] = report.instances.get(axiom, 0) + 1

    if workers <= 1:
        results = map(run, checks)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, checks, chunksize=64))
    for out in results:
        report.violations.extend(out)
    report.violations.sort(key=AxiomViolation.sort_key)
    return report


# -- algebras ---------------------------------------------------------------------


@dataclass
class Algebra:
    """An algebra: a finite carrier per type and a function per operation.

    ``carrier`` maps type keys to tuples of elements; ``action`` maps an
    operation handle to the function interpreting it.  The operad the
    algebra is for is kept alongside so the laws can be replayed.
    """

    operad: object
    carrier: Dict[object, tuple]
    action: Callable[[object], Callable]

    def input_carriers(self, f) -> Tuple[tuple, ...]:
        view = _view(self.operad, 1)
        return tuple(self.carrier[t] for t in view.inputs(f))


def eval_algebra(alg: Algebra, f, args: Sequence) -> object:
    """Apply the algebra's interpretation of ``f`` to ``args``."""
    view = _view(alg.operad, 1)
    types = view.inputs(f)
    if len(args) != len(types):
        raise CarrierMismatch("operation of arity %d applied to %d arguments" % (len(types), len(args)))
    for a, t in zip(args, types):
        if a not in alg.carrier[t]:
            raise CarrierMismatch("%r is not in the carrier of %r" % (a, t))
    value = alg.action(f)(*args)
    if value not in alg.carrier[view.output(f)]:
        raise CarrierMismatch("%r landed outside the carrier of %r" % (value, view.output(f)))
    return value


def check_algebra_axioms(alg: Algebra, size_bound: int) -> AxiomReport:
    """Replay the algebra laws over all bounded operations and all argument
    tuples from the finite carriers."""
    view = _view(alg.operad, size_bound)
    by_output: Dict[object, List] = {}
    for g in view.ops():
        by_output.setdefault(view.output(g), []).append(g)
    view._by_output = by_output

    report = AxiomReport(size_bound=size_bound)

    def args_for(f) -> Iterator[tuple]:
        pools = [alg.carrier[t] for t in view.inputs(f)]
        return itertools.product(*pools)

    for f in view.ops():
        f_size = view.size(f)
        if f_size > size_bound:
            continue
        report.instances["alg-b"] = report.instances.get("alg-b", 0) + 1
        # unit law via the identities on f's input types
        for t in view.inputs(f):
            unit = view.identity(t)
            for (a,) in itertools.product(alg.carrier[t]):
                if eval_algebra(alg, unit, (a,)) != a:
                    report.violations.append(
                        AxiomViolation("alg-b", (view.key(unit), repr(a)), repr(a), "identity")
                    )
        k = view.arity(f)
        for sigma in itertools.permutations(range(k)):
            report.instances["alg-c"] = report.instances.get("alg-c", 0) + 1
            fs = view.permute(f, sigma)
            for args in args_for(fs):
                inverse = [0] * k
                for i in range(k):
                    inverse[sigma[i]] = i
                rearranged = tuple(args[inverse[j]] for j in range(k))
                if eval_algebra(alg, fs, args) != eval_algebra(alg, f, rearranged):
                    report.violations.append(
                        AxiomViolation(
                            "alg-c", (view.key(f), repr(sigma), repr(args)), "", ""
                        )
                    )
        for gs, _ in _arg_tuples(view, view.inputs(f), size_bound - f_size):
            report.instances["alg-a"] = report.instances.get("alg-a", 0) + 1
            composite = view.compose(f, gs)
            for args in args_for(composite):
                start = 0
                mids = []
                for g in gs:
                    block = args[start : start + view.arity(g)]
                    start += view.arity(g)
                    mids.append(eval_algebra(alg, g, block))
                lhs = eval_algebra(alg, composite, args)
                rhs = eval_algebra(alg, f, tuple(mids))
                if lhs != rhs:
                    report.violations.append(
                        AxiomViolation(
                            "alg-a",
                            (view.key(f),) + tuple(map(view.key, gs)) + (repr(args),),
                            repr(lhs),
                            repr(rhs),
                        )
                    )
    report.violations.sort(key=AxiomViolation.sort_key)
    return report
