"""Finite precubical sets with explicit face maps.

A precubical set is a graded family of cells P_0, P_1, P_2, ... together with
face maps d[k,i] : P_n -> P_{n-1} for k in {0,1} and i in 1..n, subject to

    d[k,i] d[l,j] = d[l,j-1] d[k,i]   for i < j.

Cells are identified by (dim, key) pairs; keys are arbitrary hashable values,
unique within their dimension.  Everything here is finite and immutable after
construction.  Face indices are 1-based throughout, matching the usual
convention for cubical identities; the k index says which end of direction i
is taken (0 = lower, 1 = upper).

Besides the plain data structure this module provides the interval and
interval-grid constructors, tensor products, paths, morphisms, the derived
"edge in direction i" operator and subcube evaluation, which the labeling
machinery builds on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Mapping, Sequence

Key = Hashable
Cube = tuple[int, Key]  # (dimension, key)

# Marker used in flat grid coordinates: an interval component (j, j+1) is the
# edge of the axis, an int component is a vertex of the axis.
GridCoord = tuple[Any, ...]


@dataclass(frozen=True)
class Violation:
    """One structural defect found by a validator.

    ``kind`` is a stable machine-readable tag, ``cube`` the offending cell (if
    any) and ``data`` whatever indices pin the failure down, e.g. the (k, i,
    l, j) quadruple of a broken cubical identity.
    """

    kind: str
    cube: Cube | None
    message: str
    data: tuple = ()

    def __str__(self) -> str:
        where = f" at {self.cube}" if self.cube is not None else ""
        return f"[{self.kind}]{where}: {self.message}"


class PrecubicalSet:
    """Cells per dimension plus face maps.

    ``cells`` maps a dimension to an iterable of keys (order is kept and used
    as the basis order for chain groups).  ``faces`` maps (dim, key) of each
    cell of dimension >= 1 to a pair of key sequences (lower faces d[0,i],
    upper faces d[1,i]) indexed by i = 1..dim; the referenced keys live one
    dimension down.  The constructor only enforces key uniqueness; structural
    problems (missing faces, broken identities) are reported by
    ``validate_precubical`` so that damaged inputs can be diagnosed instead of
    rejected blindly.
    """

    __slots__ = ("_cells", "_index", "_faces")

    def __init__(
        self,
        cells: Mapping[int, Iterable[Key]],
        faces: Mapping[Cube, tuple[Sequence[Key], Sequence[Key]]] | None = None,
    ) -> None:
        self._cells: dict[int, tuple[Key, ...]] = {}
        self._index: dict[int, dict[Key, int]] = {}
        for n in sorted(cells):
            keys = tuple(cells[n])
            if not keys:
                continue
            if n < 0:
                raise ValueError(f"negative dimension {n}")
            index = {key: pos for pos, key in enumerate(keys)}
            if len(index) != len(keys):
                raise ValueError(f"duplicate cell keys in dimension {n}")
            self._cells[n] = keys
            self._index[n] = index
        self._faces: dict[Cube, tuple[tuple[Key, ...], tuple[Key, ...]]] = {}
        for cube, (d0, d1) in (faces or {}).items():
            self._faces[cube] = (tuple(d0), tuple(d1))

    # -- basic queries ---------------------------------------------------

    @property
    def max_dim(self) -> int:
        return max(self._cells, default=-1)

    def dims(self) -> tuple[int, ...]:
        return tuple(sorted(self._cells))

    def cells(self, n: int) -> tuple[Key, ...]:
        return self._cells.get(n, ())

    def size(self, n: int) -> int:
        return len(self._cells.get(n, ()))

    def cell_index(self, cube: Cube) -> int:
        return self._index[cube[0]][cube[1]]

    def cubes(self, n: int) -> Iterator[Cube]:
        for key in self.cells(n):
            yield (n, key)

    def all_cubes(self) -> Iterator[Cube]:
        for n in self.dims():
            yield from self.cubes(n)

    def __contains__(self, cube: Cube) -> bool:
        n, key = cube
        return key in self._index.get(n, {})

    def face(self, cube: Cube, k: int, i: int) -> Cube:
        """d[k,i] of the cube; k in {0,1}, i in 1..dim."""
        n, _ = cube
        if not 1 <= i <= n:
            raise IndexError(f"face index {i} out of range for dimension {n}")
        if k not in (0, 1):
            raise IndexError(f"face side {k} must be 0 or 1")
        pair = self._faces[cube]
        return (n - 1, pair[k][i - 1])

    def face_keys(self, cube: Cube) -> tuple[tuple[Key, ...], tuple[Key, ...]]:
        return self._faces[cube]

    def __repr__(self) -> str:
        counts = ", ".join(f"{self.size(n)} in dim {n}" for n in self.dims())
        return f"<PrecubicalSet: {counts or 'empty'}>"


def validate_precubical(P: PrecubicalSet) -> list[Violation]:
    """All structural defects of P, empty when P is a genuine precubical set.

    Checks, per cell of dimension n >= 1: the face entry exists, both face
    tuples have length n, every referenced face exists one dimension down,
    and for n >= 2 the cubical identities
    d[k,i] d[l,j] x == d[l,j-1] d[k,i] x for 1 <= i < j <= n.  Identity
    violations carry (k, i, l, j) in their data field.
    """
    out: list[Violation] = []
    known_faces = set()
    for n in P.dims():
        if n == 0:
            continue
        for cube in P.cubes(n):
            try:
                d0, d1 = P.face_keys(cube)
            except KeyError:
                out.append(Violation("missing-faces", cube, "no face entry"))
                continue
            known_faces.add(cube)
            if len(d0) != n or len(d1) != n:
                out.append(
                    Violation(
                        "face-arity",
                        cube,
                        f"expected {n} lower and upper faces, got {len(d0)}/{len(d1)}",
                    )
                )
                continue
            dangling = False
            for k, keys in ((0, d0), (1, d1)):
                for i, key in enumerate(keys, start=1):
                    if (n - 1, key) not in P:
                        out.append(
                            Violation(
                                "dangling-face",
                                cube,
                                f"d[{k},{i}] refers to missing cell {key!r} in dim {n-1}",
                                (k, i),
                            )
                        )
                        dangling = True
            if dangling:
                continue
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    for k in (0, 1):
                        for l in (0, 1):
                            try:
                                left = P.face(P.face(cube, l, j), k, i)
                                right = P.face(P.face(cube, k, i), l, j - 1)
                            except KeyError:
                                # Inner faces are dangling; reported when the
                                # face cell itself is visited.
                                continue
                            if left != right:
                                out.append(
                                    Violation(
                                        "cubical-identity",
                                        cube,
                                        f"d[{k},{i}]d[{l},{j}] = {left} but "
                                        f"d[{l},{j-1}]d[{k},{i}] = {right}",
                                        (k, i, l, j),
                                    )
                                )
    # Face entries for cells that are not in the set at all.
    for cube in getattr(P, "_faces"):
        if cube not in P and cube not in known_faces:
            out.append(Violation("orphan-face-entry", cube, "face entry for unknown cell"))
    return out


def assert_valid_precubical(P: PrecubicalSet) -> None:
    bad = validate_precubical(P)
    if bad:
        raise ValueError(
            "invalid precubical set:\n" + "\n".join(str(v) for v in bad[:10])
        )


# -- vertices reached by iterated faces ----------------------------------


def initial_vertex(P: PrecubicalSet, cube: Cube) -> Cube:
    """The lower corner d[0,1]^n of the cube."""
    y = cube
    while y[0] > 0:
        y = P.face(y, 0, 1)
    return y


def final_vertex(P: PrecubicalSet, cube: Cube) -> Cube:
    """The upper corner d[1,1]^n of the cube."""
    y = cube
    while y[0] > 0:
        y = P.face(y, 1, 1)
    return y


def edge_in_direction(P: PrecubicalSet, cube: Cube, k: int, i: int) -> Cube:
    """The direction-i edge e[k,i] of an n-cube, n >= 1.

    For n == 1 this is the cube itself.  Otherwise all directions other than
    i are collapsed to their (1-k) end:

        e[k,i] x = d[1-k,1] ... d[1-k,i-1] d[1-k,i+1] ... d[1-k,n] x.

    Applying the face operators from the highest index down keeps the
    remaining direction indices stable, so direction i survives as the final
    direction 1.  With k = 0 the result is the edge leaving the "all other
    coordinates finished" corner; with k = 1 the edge at the start corner.
    """
    n = cube[0]
    if n < 1:
        raise ValueError("edge operator needs dimension >= 1")
    y = cube
    for j in range(n, i, -1):
        y = P.face(y, 1 - k, j)
    for j in range(i - 1, 0, -1):
        y = P.face(y, 1 - k, j)
    return y


def evaluate_subcube(P: PrecubicalSet, cube: Cube, coords: GridCoord) -> Cube:
    """Evaluate the characteristic morphism of ``cube`` at a standard subcube.

    ``coords`` has one component per direction of ``cube``: 0 or 1 freezes
    that direction at the corresponding end, the interval pair (0, 1) keeps
    it.  The result is the subcube of ``cube`` carved out by the frozen
    directions, i.e. the image of the grid cell under the unique morphism
    from the standard cube sending the top cell to ``cube``.
    """
    n = cube[0]
    if len(coords) != n:
        raise ValueError(f"expected {n} coordinates, got {len(coords)}")
    y = cube
    # Freeze from the highest direction down; lower indices stay valid.
    for pos in range(n, 0, -1):
        c = coords[pos - 1]
        if c == (0, 1):
            continue
        if c not in (0, 1):
            raise ValueError(f"coordinate {c!r} is not 0, 1 or (0, 1)")
        y = P.face(y, c, pos)
    return y


# -- intervals and grids --------------------------------------------------


def interval(k: int, l: int) -> PrecubicalSet:
    """The interval [[k, l]]: vertices k..l, edges (j-1, j), nothing higher."""
    if l < k:
        raise ValueError(f"empty interval [{k}, {l}]")
    cells: dict[int, list[Key]] = {0: list(range(k, l + 1))}
    faces: dict[Cube, tuple[list[Key], list[Key]]] = {}
    if l > k:
        cells[1] = [(j - 1, j) for j in range(k + 1, l + 1)]
        for j in range(k + 1, l + 1):
            faces[(1, (j - 1, j))] = ([j - 1], [j])
    return PrecubicalSet(cells, faces)


def _axis_components(length: int) -> list[Any]:
    """Vertices and edges of one grid axis of the given length, in order."""
    out: list[Any] = []
    for j in range(length):
        out.append(j)
        out.append((j, j + 1))
    out.append(length)
    return out


def interval_grid(shape: Sequence[int]) -> PrecubicalSet:
    """The grid [[0,l_1]] x ... x [[0,l_n]] with flat coordinate-tuple keys.

    A cell is a tuple with one component per axis, each an int vertex j or an
    edge pair (j, j+1); its dimension is the number of edge components.  The
    i-th face direction of a cell is its i-th edge component, and d[k,i]
    replaces that component with its k-end.  This flattened form is what
    dimaps use as the domain of their per-cube flattening morphisms; it is
    isomorphic to the iterated tensor of intervals but far easier to index.
    """
    shape = tuple(shape)
    if any(l < 1 for l in shape):
        raise ValueError(f"grid axis lengths must be >= 1, got {shape}")
    cells: dict[int, list[Key]] = {}
    faces: dict[Cube, tuple[list[Key], list[Key]]] = {}
    for combo in itertools.product(*(_axis_components(l) for l in shape)):
        dim = sum(1 for c in combo if isinstance(c, tuple))
        cells.setdefault(dim, []).append(combo)
        if dim:
            d0: list[Key] = []
            d1: list[Key] = []
            for pos, comp in enumerate(combo):
                if isinstance(comp, tuple):
                    lo, hi = comp
                    d0.append(combo[:pos] + (lo,) + combo[pos + 1 :])
                    d1.append(combo[:pos] + (hi,) + combo[pos + 1 :])
            faces[(dim, combo)] = (d0, d1)
    return PrecubicalSet(cells, faces)


def grid_top_cells(shape: Sequence[int]) -> list[GridCoord]:
    """All top-dimensional cells of interval_grid(shape), in axis order."""
    return [
        combo
        for combo in itertools.product(*(((j, j + 1) for j in range(l)) for l in shape))
    ]


def standard_cube(n: int) -> PrecubicalSet:
    """The precubical n-cube as a grid; its top cell is ((0,1),) * n."""
    if n == 0:
        return PrecubicalSet({0: [()]}, {})
    return interval_grid((1,) * n)


def grid_vertex(coords: Sequence[int]) -> GridCoord:
    return tuple(coords)


# -- tensor product -------------------------------------------------------


def tensor(P: PrecubicalSet, Q: PrecubicalSet) -> PrecubicalSet:
    """Tensor product; cells are key pairs (x, y), dim = dim x + dim y.

    Face maps follow the degree split: direction i acts on the left factor
    for i <= dim x and on the right factor (shifted by dim x) above that.
    Iterated products nest left-associatively, e.g. ((x, y), z).  Keys must
    determine their dimension split uniquely; if the same pair would name
    cells of two different splits the product is ambiguous and rejected.
    """
    cells: dict[int, list[Key]] = {}
    faces: dict[Cube, tuple[list[Key], list[Key]]] = {}
    seen: dict[Cube, tuple[int, int]] = {}
    for p in P.dims():
        for q in Q.dims():
            n = p + q
            bucket = cells.setdefault(n, [])
            for xk in P.cells(p):
                for yk in Q.cells(q):
                    key = (xk, yk)
                    if (n, key) in seen:
                        raise ValueError(
                            f"ambiguous tensor key {key!r}: splits "
                            f"{seen[(n, key)]} and {(p, q)} both produce it"
                        )
                    seen[(n, key)] = (p, q)
                    bucket.append(key)
                    if n == 0:
                        continue
                    d0: list[Key] = []
                    d1: list[Key] = []
                    for i in range(1, n + 1):
                        if i <= p:
                            d0.append((P.face((p, xk), 0, i)[1], yk))
                            d1.append((P.face((p, xk), 1, i)[1], yk))
                        else:
                            d0.append((xk, Q.face((q, yk), 0, i - p)[1]))
                            d1.append((xk, Q.face((q, yk), 1, i - p)[1]))
                    faces[(n, key)] = (d0, d1)
    return PrecubicalSet(cells, faces)


# -- paths ----------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A directed edge path: consecutive edges share target/source vertices.

    ``edges`` is the sequence of 1-cells; ``start`` is the source vertex and
    is required to disambiguate length-0 paths.  Construction checks the
    gluing condition d[0,1] x_{j+1} == d[1,1] x_j.
    """

    complex: PrecubicalSet = field(repr=False)
    edges: tuple[Cube, ...]
    start: Cube

    def __post_init__(self) -> None:
        P = self.complex
        if self.start[0] != 0 or self.start not in P:
            raise ValueError(f"path start {self.start} is not a vertex of the complex")
        at = self.start
        for x in self.edges:
            if x[0] != 1 or x not in P:
                raise ValueError(f"path step {x} is not an edge of the complex")
            if P.face(x, 0, 1) != at:
                raise ValueError(
                    f"path breaks at {x}: starts at {P.face(x, 0, 1)}, expected {at}"
                )
            at = P.face(x, 1, 1)

    @staticmethod
    def from_edges(P: PrecubicalSet, edges: Sequence[Cube]) -> "Path":
        if not edges:
            raise ValueError("from_edges needs at least one edge; use an explicit start")
        return Path(P, tuple(edges), P.face(edges[0], 0, 1))

    @staticmethod
    def empty(P: PrecubicalSet, vertex: Cube) -> "Path":
        return Path(P, (), vertex)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def source(self) -> Cube:
        return self.start

    @property
    def target(self) -> Cube:
        if not self.edges:
            return self.start
        return self.complex.face(self.edges[-1], 1, 1)

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def concat(self, other: "Path") -> "Path":
        if other.complex is not self.complex:
            raise ValueError("cannot concatenate paths over different complexes")
        if self.target != other.source:
            raise ValueError(
                f"paths do not compose: {self.target} != {other.source}"
            )
        return Path(self.complex, self.edges + other.edges, self.start)


def concat_paths(first: Path, second: Path) -> Path:
    return first.concat(second)


# -- morphisms ------------------------------------------------------------


@dataclass
class PcMorphism:
    """A map of precubical sets: dimension-preserving, face-commuting."""

    source: PrecubicalSet
    target: PrecubicalSet
    mapping: dict[Cube, Cube]

    def __call__(self, cube: Cube) -> Cube:
        return self.mapping[cube]

    def violations(self) -> list[Violation]:
        out: list[Violation] = []
        for cube in self.source.all_cubes():
            if cube not in self.mapping:
                out.append(Violation("not-total", cube, "no image assigned"))
                continue
            img = self.mapping[cube]
            if img not in self.target:
                out.append(Violation("bad-image", cube, f"image {img} not in target"))
                continue
            if img[0] != cube[0]:
                out.append(
                    Violation("dimension", cube, f"image {img} has wrong dimension")
                )
        if out:
            return out
        for cube in self.source.all_cubes():
            n = cube[0]
            for i in range(1, n + 1):
                for k in (0, 1):
                    want = self.mapping[self.source.face(cube, k, i)]
                    got = self.target.face(self.mapping[cube], k, i)
                    if want != got:
                        out.append(
                            Violation(
                                "face-commute",
                                cube,
                                f"f(d[{k},{i}] x) = {want} but d[{k},{i}] f(x) = {got}",
                                (k, i),
                            )
                        )
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def apply_path(self, path: Path) -> Path:
        edges = tuple(self.mapping[x] for x in path.edges)
        return Path(self.target, edges, self.mapping[path.start])
