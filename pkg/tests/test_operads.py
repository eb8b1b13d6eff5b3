"""Operad surface: the initial operad, composition, permutation actions,
block permutations, and the axiom audit."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from opetopes import (
    ArityMismatch,
    DegreeMismatch,
    OperadLevel,
    TableOperad,
    TypeMismatch,
    as_type,
    block_permutation,
    check_operad_axioms,
    compose,
    compose_perms,
    direct_sum_permutation,
    enumerate_opetopes,
    from_type,
    initial_operad,
    permute,
)
from opetopes.operads import Operation
from opetopes.trees import PasteTree, TreeNode
from opetopes import ARROW


def diagram_chain(k):
    """The k-ary level-1 operation whose input order is diagram order."""
    node = None
    for _ in range(k):
        node = TreeNode(ARROW, (node,))
    paths = sorted(((0,) * d for d in range(k)), key=len, reverse=True)
    from opetopes import Opetope

    tree = PasteTree(0, node, None, tuple(paths), ((0,) * k,))
    return Operation(1, Opetope(2, tree))


def test_initial_operad_has_one_type_and_one_operation():
    operad = initial_operad()
    assert len(operad.types()) == 1
    assert operad.types()[0].code == "pt"
    ops = operad.operations(arity=1)
    assert len(ops) == 1
    identity = ops[0]
    assert compose(identity, [identity]) == identity


def test_compose_arity_and_type_errors():
    two = diagram_chain(2)
    one = diagram_chain(1)
    with pytest.raises(ArityMismatch):
        compose(two, [one])
    # mixing levels is a type error
    with pytest.raises(TypeMismatch):
        compose(two, [one, initial_operad().operations(arity=1)[0]])
    # at level 2 the types are the 2-dimensional shapes, so outputs can
    # genuinely fail to match an input slot
    level2 = [Operation(2, s) for s in enumerate_opetopes(3, 4)]
    f = next(op for op in level2 if op.arity == 1)
    mismatched = next(g for g in level2 if g.output != f.inputs[0])
    with pytest.raises(TypeMismatch):
        compose(f, [mismatched])


def test_compose_chains_is_explicit_grafting():
    # Hand oracle: grafting a 1-chain and a 2-chain into a 2-chain gives
    # the 3-chain, with the argument blocks concatenated in order.
    f = diagram_chain(2)
    g1 = diagram_chain(1)
    g2 = diagram_chain(2)
    result = compose(f, [g1, g2])
    assert result == diagram_chain(3)
    assert result.inputs == g1.inputs + g2.inputs
    assert result.output == f.output


def test_permute_identity_is_identity():
    f = diagram_chain(3)
    assert permute(f, (0, 1, 2)) == f
    with pytest.raises(DegreeMismatch):
        permute(f, (0, 1))
    with pytest.raises(DegreeMismatch):
        permute(f, (0, 0, 2))


def test_orbit_of_three_chain_has_size_six():
    f = diagram_chain(3)
    orbit = {permute(f, sigma).code for sigma in itertools.permutations(range(3))}
    assert len(orbit) == 6


def test_block_permutation_examples():
    # identity on blocks of sizes 2,3 is the identity on 5 elements
    assert block_permutation((0, 1), (2, 3)) == (0, 1, 2, 3, 4)
    # unit blocks reduce to the permutation itself
    assert block_permutation((1, 0), (1, 1)) == (1, 0)
    # a block of size 2 moves after a block of size 1:
    # positions (1,2,3) -> (3,1,2) in 1-indexed terms
    assert block_permutation((1, 0), (2, 1)) == (2, 0, 1)


def test_direct_sum_permutation():
    assert direct_sum_permutation(((1, 0), (0, 1, 2))) == (1, 0, 2, 3, 4)


@st.composite
def level1_ops(draw, max_size=4):
    pool = [Operation(1, s) for s in enumerate_opetopes(2, max_size)]
    return draw(st.sampled_from(pool))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_permute_is_a_right_group_action(data):
    f = data.draw(level1_ops())
    k = f.arity
    sigma = tuple(data.draw(st.permutations(range(k))))
    tau = tuple(data.draw(st.permutations(range(k))))
    assert permute(permute(f, sigma), tau) == permute(f, compose_perms(sigma, tau))
    assert permute(f, tuple(range(k))) == f


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_equivariance_laws_on_random_trees(data):
    f = data.draw(level1_ops(max_size=3))
    pool = [Operation(1, s) for s in enumerate_opetopes(2, 2)]
    gs = [data.draw(st.sampled_from(pool)) for _ in range(f.arity)]
    sigma = tuple(data.draw(st.permutations(range(f.arity))))
    lhs = compose(permute(f, sigma), [gs[sigma[i]] for i in range(f.arity)])
    rhs = permute(compose(f, gs), block_permutation(sigma, [g.arity for g in gs]))
    assert lhs == rhs
    sigmas = [tuple(data.draw(st.permutations(range(g.arity)))) for g in gs]
    lhs = compose(f, [permute(g, s) for g, s in zip(gs, sigmas)])
    rhs = permute(compose(f, gs), direct_sum_permutation(sigmas))
    assert lhs == rhs


def test_unit_laws_exactly():
    operad = OperadLevel(1)
    for f in operad.operations(3):
        unit_out = operad.identity(f.output)
        assert compose(unit_out, [f]) == f
        assert compose(f, [operad.identity(t) for t in f.inputs]) == f


def test_axiom_audit_is_clean_on_the_initial_operad():
    report = check_operad_axioms(initial_operad(), 3)
    assert report.ok and report.violations == []


def test_axiom_audit_independent_recomputation_sample():
    # Re-evaluate a few associativity instances by hand, outside the
    # checker, to keep the audit honest.
    operad = OperadLevel(1)
    ops = operad.operations(3)
    by_output = {}
    for g in ops:
        by_output.setdefault(g.output, []).append(g)
    f = next(op for op in ops if op.arity == 2)
    gs = [by_output[t][0] for t in f.inputs]
    hs = [by_output[t][0] for g in gs for t in g.inputs]
    start = 0
    mids = []
    for g in gs:
        mids.append(compose(g, hs[start : start + g.arity]))
        start += g.arity
    assert compose(f, mids) == compose(compose(f, gs), hs)


def _corrupted_table():
    return TableOperad(
        type_names=("x",),
        ops={"e": (("x",), "x"), "u": (("x",), "x"), "v": (("x",), "x")},
        identities={"x": "e"},
        table={
            ("e", ("e",)): "e",
            ("e", ("u",)): "u",
            ("e", ("v",)): "v",
            ("u", ("e",)): "u",
            ("v", ("e",)): "v",
            ("u", ("u",)): "v",
            ("u", ("v",)): "u",
            ("v", ("u",)): "e",
            ("v", ("v",)): "v",
        },
    )


def test_corrupted_table_reports_associativity_violation():
    report = check_operad_axioms(_corrupted_table(), 3)
    assert not report.ok
    assert any(v.axiom == "a" for v in report.violations)


def test_audit_report_identical_across_worker_counts():
    sequential = check_operad_axioms(_corrupted_table(), 3)
    threaded = check_operad_axioms(_corrupted_table(), 3, workers=4)
    assert sequential.violations == threaded.violations
    one = check_operad_axioms(OperadLevel(1), 3)
    many = check_operad_axioms(OperadLevel(1), 3, workers=3)
    assert one.violations == many.violations == []


def test_type_round_trip_on_five_hundred_shapes():
    pool = list(enumerate_opetopes(2, 6)) + list(enumerate_opetopes(3, 4))
    assert len(pool) >= 500
    for shape in pool[:500]:
        assert from_type(as_type(shape)) == shape
    assert as_type(enumerate_opetopes(0, 1)[0]).level == 0
