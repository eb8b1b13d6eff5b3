"""Opetopic sets: validation, occupancy, configuration enumeration,
competitors, and the monotone-restriction property."""

import itertools

import pytest

from opetopes import (
    MalformedConfig,
    OpetopicSet,
    UnknownCell,
    competitors,
    enumerate_configs,
    enumerate_opetopes,
    frame_of,
    make_config,
    niche_of,
    occupants,
    validate,
)
from opetopes.osets import cell_matches, config_with, edge_incidences


def binary_shapes():
    return [s for s in enumerate_opetopes(2, 2) if s.arity == 2]


def diagram_binary():
    from opetopes.fixtures import _standard_binary

    return _standard_binary(enumerate_opetopes(2, 2))


def test_one_point_set_is_valid():
    oset = OpetopicSet(0, 1, {"o": "pt"}, {})
    report = validate(oset)
    assert report.ok
    assert report.relations_checked == []


def test_monoid_fixtures_are_valid(z2_set, z3_set, broken_set):
    for oset in (z2_set, z3_set, broken_set):
        report = validate(oset)
        assert report.ok


def test_validation_is_idempotent_and_order_independent(z2_set):
    first = validate(z2_set)
    second = validate(z2_set)
    assert first.violations == second.violations
    assert first.relations_checked == second.relations_checked


def test_wrong_shape_outface_is_reported(z2_set):
    cells = dict(z2_set.cells)
    faces = {k: (list(v[0]) and tuple(v[0]), v[1]) for k, v in z2_set.faces.items()}
    victim = next(c for c in cells if z2_set.dim_of(c) == 2)
    faces[victim] = (faces[victim][0], "o")  # a point where an arrow belongs
    broken = OpetopicSet(z2_set.max_dim, z2_set.shape_bound, cells, faces)
    report = validate(broken)
    assert not report.ok
    assert any("outface is pt-shaped" in v for v in report.violations)


def test_incidence_break_is_reported():
    # two genuinely distinct endpoints, one arrow pretending to close up
    shape = diagram_binary()
    arrow = enumerate_opetopes(1, 1)[0]
    cells = {"p": "pt", "q": "pt", "f": arrow.code, "g": arrow.code, "c": shape.code}
    faces = {
        "f": (("p",), "q"),
        "g": (("p",), "q"),
        # composing f then g needs target(f) = source(g); here it is not
        "c": ((("f"), ("g")), "f"),
    }
    oset = OpetopicSet(2, 2, cells, faces)
    report = validate(oset)
    assert not report.ok
    assert any("edge" in v for v in report.violations)


def test_frame_occupants_contain_the_cell(z2_set):
    for cell in z2_set.cells_of_dim(2)[:5]:
        assert cell in occupants(z2_set, frame_of(z2_set, cell))


def test_z2_binary_niche_has_one_occupant_with_unit_outface(z2_set):
    shape = diagram_binary()
    cfg = make_config(z2_set, shape.code, ("a1", "a1"), None)
    occ = occupants(z2_set, cfg)
    assert len(occ) == 1
    assert z2_set.outface_of(occ[0]) == "a0"


def test_occupants_of_an_unfilled_niche_are_empty():
    arrow = enumerate_opetopes(1, 1)[0]
    oset = OpetopicSet(2, 2, {"o": "pt", "a": arrow.code}, {"a": (("o",), "o")})
    shape = diagram_binary()
    cfg = make_config(oset, shape.code, ("a", "a"), None)
    assert occupants(oset, cfg) == ()


def test_dim1_frames_in_the_one_point_set(point_set):
    frames = enumerate_configs(point_set, "frame", 1)
    assert len(frames) == 1


def test_z2_binary_niches_count(z2_set):
    shape = diagram_binary()
    per_shape = enumerate_configs(z2_set, "niche", 2, shape=shape)
    assert len([c for c in per_shape if None not in c.infaces]) == 4
    both = [
        c
        for c in enumerate_configs(z2_set, "niche", 2)
        if z2_set.shape(c.shape_code).arity == 2
    ]
    assert len(both) == 8


def test_punctured_niche_enumeration_matches_direct_assembly(z2_set):
    listed = enumerate_configs(z2_set, "punctured_niche", 2)
    # Independent assembly: for every shape, missing position, assignment
    # of the other infaces, and pin choice, keep the consistent ones.
    count = 0
    for shape in enumerate_opetopes(2, z2_set.shape_bound):
        for missing in range(shape.arity):
            others = [i for i in range(shape.arity) if i != missing]
            pools = [z2_set.cells_of_shape(shape.inputs[i].code) for i in others]
            for combo in itertools.product(*pools):
                infaces = [None] * shape.arity
                for i, cell in zip(others, combo):
                    infaces[i] = cell
                free_pools = []
                ok = True
                from opetopes.osets import _edge_type_code, _resolve_partial

                for edge, (upper, lower) in sorted(edge_incidences(shape).items()):
                    a = _resolve_partial(z2_set, shape, infaces, None, upper)
                    b = _resolve_partial(z2_set, shape, infaces, None, lower)
                    if a is not None and b is not None and a != b:
                        ok = False
                        break
                    if a is None and b is None:
                        free_pools.append(
                            len(z2_set.cells_of_shape(_edge_type_code(shape, edge)))
                        )
                if not ok:
                    continue
                total = 1
                for size in free_pools:
                    total *= size
                count += total
    assert count == len(listed)


def test_nullary_niche_needs_its_pin(z2_set):
    nullary = next(s for s in enumerate_opetopes(2, 2) if s.arity == 0)
    with pytest.raises(MalformedConfig):
        make_config(z2_set, nullary.code, (), None)
    cfg = make_config(z2_set, nullary.code, (), None, {(): "o"})
    occ = occupants(z2_set, cfg)
    assert len(occ) == 1
    assert z2_set.outface_of(occ[0]) == "a0"


def test_competitors_examples(parallel_set, z2_set):
    assert competitors(parallel_set, "f", "frame") == ("f", "g")
    assert competitors(parallel_set, "f", "niche") == ("f", "g")
    for cell in ("a0", "a1"):
        assert cell in competitors(z2_set, cell, "frame")
        assert set(competitors(z2_set, cell, "niche")) <= set(
            competitors(z2_set, cell, "frame")
        )
    with pytest.raises(UnknownCell):
        competitors(z2_set, "missing", "frame")


def test_zero_cells_share_the_degenerate_frame(parallel_set):
    assert competitors(parallel_set, "s", "frame") == ("s", "t")


def test_extending_a_config_never_enlarges_occupants(z2_set):
    shape = diagram_binary()
    for cell in z2_set.cells_of_shape(shape.code)[:6]:
        cfg = niche_of(z2_set, cell)
        extended = config_with(z2_set, cfg, outface=z2_set.outface_of(cell))
        assert set(occupants(z2_set, extended)) <= set(occupants(z2_set, cfg))


def test_cell_matches_respects_pins(z2_set):
    nullary = next(s for s in enumerate_opetopes(2, 2) if s.arity == 0)
    cfg = make_config(z2_set, nullary.code, (), None, {(): "o"})
    cell = z2_set.cells_of_shape(nullary.code)[0]
    assert cell_matches(z2_set, cfg, cell)


def test_config_enumeration_rejects_out_of_range_dimensions(z2_set):
    from opetopes import DimOutOfRange

    with pytest.raises(DimOutOfRange):
        enumerate_configs(z2_set, "niche", 0)
    with pytest.raises(DimOutOfRange):
        enumerate_configs(z2_set, "niche", z2_set.max_dim + 1)
    with pytest.raises(ValueError):
        enumerate_configs(z2_set, "mystery", 1)


def test_niche_competitors_are_frame_competitors_with_matching_outface(z2_set):
    for cell in z2_set.cells_of_dim(2)[:8]:
        frame_comps = competitors(z2_set, cell, "frame")
        niche_comps = competitors(z2_set, cell, "niche")
        fixed_outface = tuple(
            c for c in niche_comps if z2_set.outface_of(c) == z2_set.outface_of(cell)
        )
        assert frame_comps == fixed_outface


def test_missing_faces_are_reported_not_crashed():
    arrow = enumerate_opetopes(1, 1)[0]
    oset = OpetopicSet(1, 2, {"o": "pt", "a": arrow.code}, {})
    report = validate(oset)
    assert not report.ok
    assert any("missing face assignment" in v for v in report.violations)


def test_unparseable_shape_codes_are_reported_not_crashed():
    oset = OpetopicSet(1, 2, {"o": "pt", "bad": "[truncated"}, {})
    report = validate(oset)
    assert not report.ok
    assert any("unparseable" in v for v in report.violations)


def test_enumerated_configs_are_canonical_and_well_kinded(z2_set):
    for kind in ("frame", "niche", "punctured_niche"):
        for cfg in enumerate_configs(z2_set, kind, 2):
            assert cfg.kind == kind
            rebuilt = make_config(
                z2_set, cfg.shape_code, cfg.infaces, cfg.outface, dict(cfg.pins)
            )
            assert rebuilt == cfg
