"""Independent brute-force counting oracle for low-dimensional shapes.

This module deliberately shares no code with the structured enumerator in
:mod:`opetopes.shapes`.  It generates raw labelled structures the naive
way -- parent arrays, label assignments, order permutations -- normalises
each candidate to a comparison key of plain tuples, and counts distinct
keys.  Size accounting matches the enumerator's documented rule: a shape's
size totals the node counts of all its metatree stages.

Tractability is guarded: dimensions above 3 or bounds above 4 are refused.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Tuple

from .errors import BoundExceeded

MAX_DIM = 3
MAX_BOUND = 4


def _raw_two_opetopes(bound: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """All 2-dimensional shapes as (chain length, node order) pairs."""
    out = []
    for k in range(bound + 1):
        for nu in itertools.permutations(range(k)):
            out.append((k, nu))
    return out


def _two_key(raw: Tuple[int, Tuple[int, ...]]):
    return ("chain", raw[0], raw[1])


def _two_size(raw: Tuple[int, Tuple[int, ...]]) -> int:
    return raw[0]


def _raw_three_opetopes(bound: int) -> Iterator[tuple]:
    """Raw 3-dimensional candidates as comparison keys (with duplicates).

    A candidate is a rooted tree on vertex set ``0..m-1`` (vertex 0 the
    root) whose vertices carry 2-dimensional labels, each child occupying a
    distinct slot of its parent's label, plus a node order and a leaf
    order.  Keys are computed by a depth-first normalisation, so relabelled
    copies of the same structure collide and deduplication does the rest.
    """
    labels = _raw_two_opetopes(bound)

    # The empty top tree: its single edge carries the unique 1-dimensional
    # type, so there is exactly one nullary candidate.
    yield ("empty", "arrow")

    for m in range(1, bound + 1):
        for assignment in itertools.product(labels, repeat=m):
            size = m + sum(_two_size(t) for t in assignment)
            if size > bound:
                continue
            arities = [t[0] for t in assignment]
            for parents in _parent_maps(m, arities):
                children: Dict[int, Dict[int, int]] = {v: {} for v in range(m)}
                for w in range(1, m):
                    pv, pj = parents[w]
                    children[pv][pj] = w
                leaves = [
                    (v, j)
                    for v in range(m)
                    for j in range(arities[v])
                    if j not in children[v]
                ]
                for nu in itertools.permutations(range(m)):
                    for lam in itertools.permutations(range(len(leaves))):
                        yield _three_key(assignment, children, leaves, nu, lam)


def _parent_maps(m: int, arities: List[int]) -> Iterator[Dict[int, Tuple[int, int]]]:
    """Assign each non-root vertex a (parent, slot); keep only real trees."""
    if m == 1:
        yield {}
        return
    slot_choices = [
        [(v, j) for v in range(m) for j in range(arities[v])] for _ in range(1, m)
    ]
    for combo in itertools.product(*slot_choices):
        if len(set(combo)) != len(combo):
            continue  # two children in one slot
        parents = {w + 1: combo[w] for w in range(m - 1)}
        # reachability from the root
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for w, (pv, _) in parents.items():
                if pv == v and w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) == m:
            yield parents


def _three_key(assignment, children, leaves, nu, lam) -> tuple:
    """Depth-first normal form, forgetting the arbitrary vertex names."""
    order: List[int] = []

    def walk(v: int):
        order.append(v)
        for j in range(assignment[v][0]):
            if j in children[v]:
                walk(children[v][j])

    walk(0)
    position = {v: i for i, v in enumerate(order)}

    def describe(v: int) -> tuple:
        slots = []
        for j in range(assignment[v][0]):
            if j in children[v]:
                slots.append(describe(children[v][j]))
            else:
                slots.append("leaf")
        return (_two_key(assignment[v]), tuple(slots))

    dfs_leaves = []

    def collect(v: int):
        for j in range(assignment[v][0]):
            if j in children[v]:
                collect(children[v][j])
            else:
                dfs_leaves.append((v, j))

    collect(0)
    leaf_position = {leaf: i for i, leaf in enumerate(dfs_leaves)}
    return (
        "tree",
        describe(0),
        tuple(position[nu[i]] for i in range(len(nu))),
        tuple(leaf_position[leaves[lam[i]]] for i in range(len(lam))),
    )


def brute_force_count(dim: int, node_bound: int) -> int:
    """Count shapes of the given dimension and size bound the naive way."""
    if dim > MAX_DIM or node_bound > MAX_BOUND:
        raise BoundExceeded(
            "brute force is guarded to dim <= %d, bound <= %d" % (MAX_DIM, MAX_BOUND)
        )
    if dim <= 1:
        return 1
    if dim == 2:
        return len({_two_key(t) for t in _raw_two_opetopes(node_bound)})
    return len(set(_raw_three_opetopes(node_bound)))
