import itertools

import pytest

from hda_lab.precubical import (
    Path,
    PcMorphism,
    PrecubicalSet,
    assert_valid_precubical,
    edge_in_direction,
    evaluate_subcube,
    final_vertex,
    grid_top_cells,
    initial_vertex,
    interval,
    interval_grid,
    standard_cube,
    tensor,
    validate_precubical,
)


def two_square():
    # One filled square: vertices 00,10,01,11, edges a (bottom), b (top),
    # c (left), d (right), square s with direction 1 horizontal.
    cells = {0: ["00", "10", "01", "11"], 1: ["a", "b", "c", "d"], 2: ["s"]}
    faces = {
        (1, "a"): (["00"], ["10"]),
        (1, "b"): (["01"], ["11"]),
        (1, "c"): (["00"], ["01"]),
        (1, "d"): (["10"], ["11"]),
        (2, "s"): (["a", "c"], ["b", "d"]),
    }
    return PrecubicalSet(cells, faces)


def test_basic_queries():
    P = two_square()
    assert P.max_dim == 2
    assert P.dims() == (0, 1, 2)
    assert P.size(0) == 4 and P.size(1) == 4 and P.size(2) == 1
    assert (2, "s") in P
    assert (2, "t") not in P
    assert (3, "s") not in P
    assert P.face((2, "s"), 0, 1) == (1, "a")
    assert P.face((2, "s"), 1, 2) == (1, "d")
    assert P.cell_index((1, "c")) == 2
    assert list(P.cubes(1)) == [(1, "a"), (1, "b"), (1, "c"), (1, "d")]


def test_face_index_bounds():
    P = two_square()
    with pytest.raises(IndexError):
        P.face((2, "s"), 0, 3)
    with pytest.raises(IndexError):
        P.face((2, "s"), 0, 0)
    with pytest.raises(IndexError):
        P.face((2, "s"), 2, 1)


def test_duplicate_keys_rejected():
    with pytest.raises(ValueError):
        PrecubicalSet({0: ["v", "v"]}, {})


def test_validate_clean():
    assert validate_precubical(two_square()) == []
    assert_valid_precubical(two_square())


def test_validate_missing_and_dangling():
    cells = {0: ["p"], 1: ["e", "f"]}
    faces = {(1, "e"): (["p"], ["q"])}
    P = PrecubicalSet(cells, faces)
    kinds = sorted(v.kind for v in validate_precubical(P))
    assert kinds == ["dangling-face", "missing-faces"]


def test_validate_broken_identity():
    # Square whose left edge has the wrong source: d[0,1]d[0,2] != d[0,1]d[0,1].
    cells = {0: ["00", "10", "01", "11", "xx"], 1: ["a", "b", "c", "d"], 2: ["s"]}
    faces = {
        (1, "a"): (["00"], ["10"]),
        (1, "b"): (["01"], ["11"]),
        (1, "c"): (["xx"], ["01"]),
        (1, "d"): (["10"], ["11"]),
        (2, "s"): (["a", "c"], ["b", "d"]),
    }
    P = PrecubicalSet(cells, faces)
    bad = [v for v in validate_precubical(P) if v.kind == "cubical-identity"]
    assert bad, "expected a cubical identity violation"
    assert bad[0].cube == (2, "s")
    # The identity that fails involves i=1, j=2 with the lower face on j.
    assert any(v.data[1] == 1 and v.data[3] == 2 for v in bad)


def test_validate_orphan_face_entry():
    P = PrecubicalSet({0: ["v"]}, {(1, "ghost"): (["v"], ["v"])})
    kinds = [v.kind for v in validate_precubical(P)]
    assert kinds == ["orphan-face-entry"]


def test_interval():
    P = interval(2, 5)
    assert P.cells(0) == (2, 3, 4, 5)
    assert P.cells(1) == ((2, 3), (3, 4), (4, 5))
    assert P.face((1, (3, 4)), 0, 1) == (0, 3)
    assert P.face((1, (3, 4)), 1, 1) == (0, 4)
    assert_valid_precubical(P)
    single = interval(7, 7)
    assert single.cells(0) == (7,)
    assert single.size(1) == 0
    with pytest.raises(ValueError):
        interval(3, 2)


def test_interval_grid_counts():
    # Grid of shape (2, 3): (2*2+1)*(2*3+1) cells graded binomially.
    G = interval_grid((2, 3))
    assert G.size(0) == 3 * 4
    assert G.size(1) == 2 * 4 + 3 * 3
    assert G.size(2) == 2 * 3
    assert G.max_dim == 2
    assert_valid_precubical(G)
    assert grid_top_cells((2, 3)) == [
        ((0, 1), (0, 1)),
        ((0, 1), (1, 2)),
        ((0, 1), (2, 3)),
        ((1, 2), (0, 1)),
        ((1, 2), (1, 2)),
        ((1, 2), (2, 3)),
    ]


def test_interval_grid_faces():
    G = interval_grid((2, 2))
    c = (2, ((0, 1), (1, 2)))
    assert G.face(c, 0, 1) == (1, (0, (1, 2)))
    assert G.face(c, 1, 1) == (1, (1, (1, 2)))
    assert G.face(c, 0, 2) == (1, ((0, 1), 1))
    assert G.face(c, 1, 2) == (1, ((0, 1), 2))


def test_standard_cube():
    C3 = standard_cube(3)
    assert C3.size(3) == 1
    assert C3.size(2) == 6
    assert C3.size(1) == 12
    assert C3.size(0) == 8
    assert_valid_precubical(C3)
    C0 = standard_cube(0)
    assert C0.cells(0) == ((),)


def test_corners():
    C = standard_cube(3)
    top = (3, ((0, 1), (0, 1), (0, 1)))
    assert initial_vertex(C, top) == (0, (0, 0, 0))
    assert final_vertex(C, top) == (0, (1, 1, 1))
    v = (0, (0, 1, 0))
    assert initial_vertex(C, v) == v


def test_evaluate_subcube_on_grid():
    # On a grid, evaluating the top cell at a coordinate should return the
    # cell with exactly those coordinates once intervals are substituted.
    G = interval_grid((1, 1, 1))
    top = (3, ((0, 1), (0, 1), (0, 1)))
    for combo in itertools.product([0, 1, (0, 1)], repeat=3):
        got = evaluate_subcube(G, top, combo)
        assert got == (sum(1 for c in combo if c == (0, 1)), combo)
    with pytest.raises(ValueError):
        evaluate_subcube(G, top, (0, 1))
    with pytest.raises(ValueError):
        evaluate_subcube(G, top, (0, 2, 1))


def test_edge_in_direction_square():
    P = two_square()
    s = (2, "s")
    # e[0,i]: the other direction is pushed to its upper end, so e[0,1] is
    # the direction-1 edge sitting at the top of direction 2, which is the
    # face d[1,2] of s, and so on.
    assert edge_in_direction(P, s, 0, 1) == (1, "d")
    assert edge_in_direction(P, s, 0, 2) == (1, "b")
    assert edge_in_direction(P, s, 1, 1) == (1, "c")
    assert edge_in_direction(P, s, 1, 2) == (1, "a")
    e = (1, "a")
    assert edge_in_direction(P, e, 0, 1) == e
    assert edge_in_direction(P, e, 1, 1) == e
    with pytest.raises(ValueError):
        edge_in_direction(P, (0, "00"), 0, 1)


def test_edge_in_direction_matches_subcube_evaluation():
    # On the standard cube the direction-i edge has an explicit grid formula:
    # coordinate i is the interval, the rest sit at 1-k.
    for n in (1, 2, 3, 4):
        C = standard_cube(n)
        top = (n, ((0, 1),) * n)
        for i in range(1, n + 1):
            for k in (0, 1):
                coords = tuple(
                    (0, 1) if pos == i else 1 - k for pos in range(1, n + 1)
                )
                assert edge_in_direction(C, top, k, i) == evaluate_subcube(
                    C, top, coords
                )


def test_tensor_of_intervals_is_grid():
    A = interval(0, 2)
    B = interval(0, 1)
    T = tensor(A, B)
    G = interval_grid((2, 1))
    for n in (0, 1, 2):
        assert T.size(n) == G.size(n)
    assert_valid_precubical(T)
    # Check one square' faces against the same square in the grid.
    sq = (2, ((0, 1), (0, 1)))
    assert T.face(sq, 0, 1) == (1, (0, (0, 1)))
    assert T.face(sq, 1, 2) == (1, ((0, 1), 1))


def test_tensor_face_split():
    P = two_square()
    Q = interval(0, 1)
    T = tensor(P, Q)
    assert_valid_precubical(T)
    cube = (3, ("s", (0, 1)))
    assert cube in T
    # Directions 1 and 2 act on the square, direction 3 on the interval.
    assert T.face(cube, 0, 1) == (2, ("a", (0, 1)))
    assert T.face(cube, 1, 2) == (2, ("d", (0, 1)))
    assert T.face(cube, 0, 3) == (2, ("s", 0))
    assert T.face(cube, 1, 3) == (2, ("s", 1))


def test_tensor_ambiguity_rejected():
    # Both factors reuse one key for a vertex and a loop edge, so the pair
    # ("e", "v") would name both an edge x vertex and a vertex x edge cell in
    # dimension 1.
    P = PrecubicalSet({0: ["e"], 1: ["e"]}, {(1, "e"): (["e"], ["e"])})
    Q = PrecubicalSet({0: ["v"], 1: ["v"]}, {(1, "v"): (["v"], ["v"])})
    with pytest.raises(ValueError):
        tensor(P, Q)


def test_paths():
    P = interval(0, 3)
    e = lambda j: (1, (j, j + 1))
    p = Path.from_edges(P, [e(0), e(1)])
    assert p.source == (0, 0)
    assert p.target == (0, 2)
    assert len(p) == 2
    assert not p.is_loop
    q = Path.from_edges(P, [e(2)])
    full = p.concat(q)
    assert full.target == (0, 3)
    assert len(full) == 3
    empty = Path.empty(P, (0, 2))
    assert empty.source == empty.target == (0, 2)
    assert p.concat(empty).edges == p.edges
    with pytest.raises(ValueError):
        Path.from_edges(P, [e(0), e(2)])
    with pytest.raises(ValueError):
        q.concat(p)
    with pytest.raises(ValueError):
        Path.empty(P, (0, 9))


def test_morphism_violation_kinds():
    P = two_square()
    mapping = {c: c for c in P.all_cubes()}
    del mapping[(2, "s")]
    f = PcMorphism(P, P, dict(mapping))
    assert {v.kind for v in f.violations()} == {"not-total"}

    mapping2 = {c: c for c in P.all_cubes()}
    mapping2[(1, "c")] = (0, "00")
    mapping2[(0, "01")] = (0, "zz")
    f2 = PcMorphism(P, P, mapping2)
    kinds = {v.kind for v in f2.violations()}
    assert kinds == {"dimension", "bad-image"}

    mapping3 = {c: c for c in P.all_cubes()}
    mapping3[(1, "d")] = (1, "c")
    f3 = PcMorphism(P, P, mapping3)
    bad = f3.violations()
    assert bad and all(v.kind == "face-commute" for v in bad)
    # The square's direction-2 upper face no longer commutes.
    assert any(v.cube == (2, "s") and v.data == (1, 2) for v in bad)


def test_morphism_valid_and_path_image():
    # Fold an interval onto a single loop; every genuine morphism condition
    # holds and paths map to loop walks.
    A = interval(0, 2)
    L = PrecubicalSet({0: ["v"], 1: ["e"]}, {(1, "e"): (["v"], ["v"])})
    f = PcMorphism(
        A,
        L,
        {
            (0, 0): (0, "v"),
            (0, 1): (0, "v"),
            (0, 2): (0, "v"),
            (1, (0, 1)): (1, "e"),
            (1, (1, 2)): (1, "e"),
        },
    )
    assert f.is_valid()
    p = Path.from_edges(A, [(1, (0, 1)), (1, (1, 2))])
    image = f.apply_path(p)
    assert image.edges == ((1, "e"), (1, "e"))
    assert image.is_loop

    g = PcMorphism(A, A, {c: c for c in A.all_cubes()})
    assert g.is_valid()
    assert g.apply_path(p).edges == p.edges
