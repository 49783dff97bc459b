"""Cubical chain complexes and their homology.

The boundary of an n-cube x is the alternating sum over its face pairs,

    d x = sum over i of (-1)^i (d[0,i] x - d[1,i] x),

so an edge maps to target minus source.  Homology over the integers is
computed from Smith normal forms that carry full change-of-basis certificates
(U, U^-1, V, V^-1 with U*M*V = D); the certificates are cheap to re-verify by
plain matrix multiplication and the test suite does so.  Over a prime field
elimination is used instead, with a bitset representation for GF(2) that
keeps the larger models fast.

Matrices are plain lists of rows of ints.  An empty matrix loses its column
count, so functions that can meet one take the count explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .precubical import Cube, PrecubicalSet
from .rings import CoefficientRing, ZZ, xgcd

Matrix = list[list[int]]
Chain = dict[Cube, int]


# -- small dense integer matrix helpers ------------------------------------


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Matrix product; ``inner`` disambiguates when a is empty."""
    if a:
        inner = len(a[0])
    if inner is None:
        raise ValueError("empty product needs the inner dimension")
    if inner and b and len(b) != inner:
        raise ValueError(f"shape mismatch: {inner} columns vs {len(b)} rows")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for t, x in enumerate(row):
            if x:
                brow = b[t]
                for j in range(cols):
                    if brow[j]:
                        acc[j] += x * brow[j]
        out.append(acc)
    return out


def mat_vec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_cols(a: Matrix, cols: int | None = None) -> list[list[int]]:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [[row[j] for row in a] for j in range(len(a[0]))]


# -- Smith normal form ------------------------------------------------------


@dataclass
class SmithNormalForm:
    """A certified decomposition U * M * V = D with U, V unimodular.

    ``diagonal`` lists the nonzero invariant factors d_1 | d_2 | ..., all
    positive; the rest of D is zero.  ``u_inv`` and ``v_inv`` are the exact
    inverses, tracked during the reduction rather than computed after it, so
    ``verify`` is a genuine independent check by multiplication.
    """

    matrix: Matrix
    rows: int
    cols: int
    diagonal: list[int]
    u: Matrix
    u_inv: Matrix
    v: Matrix
    v_inv: Matrix

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def d_matrix(self) -> Matrix:
        d = zero_matrix(self.rows, self.cols)
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d

    def verify(self) -> bool:
        """Recheck U*M*V == D, U*U^-1 == I and V*V^-1 == I by multiplication."""
        umv = mat_mul(mat_mul(self.u, self.matrix, self.rows), self.v, self.cols)
        if umv != self.d_matrix():
            return False
        if mat_mul(self.u, self.u_inv, self.rows) != identity_matrix(self.rows):
            return False
        if mat_mul(self.v, self.v_inv, self.cols) != identity_matrix(self.cols):
            return False
        for i, x in enumerate(self.diagonal):
            if x <= 0:
                return False
            if i and x % self.diagonal[i - 1]:
                return False
        return True


def smith_normal_form(mat: Matrix, cols: int | None = None) -> SmithNormalForm:
    """Smith normal form over Z with tracked unimodular certificates.

    Pivots are chosen by minimal absolute value in the remaining submatrix;
    non-divisible entries are folded into the pivot with extended-gcd row and
    column transforms; a final pass repairs the divisibility chain.
    """
    rows = len(mat)
    if rows:
        cols = len(mat[0])
    elif cols is None:
        cols = 0
    a = [list(r) for r in mat]
    u = identity_matrix(rows)
    u_inv = identity_matrix(rows)
    v = identity_matrix(cols)
    v_inv = identity_matrix(cols)

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in u_inv:
            r[i], r[j] = r[j], r[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in u_inv:
            r[i] = -r[i]

    def row_combine(i: int, j: int, x: int, y: int, z: int, w: int) -> None:
        # rows (i, j) <- (x ri + y rj, z ri + w rj), det = xw - yz in {1, -1};
        # u_inv gets the inverse transform on columns (i, j).
        s = x * w - y * z
        for m in (a, u):
            ri, rj = m[i], m[j]
            m[i] = [x * p + y * q for p, q in zip(ri, rj)]
            m[j] = [z * p + w * q for p, q in zip(ri, rj)]
        for r in u_inv:
            ci, cj = r[i], r[j]
            r[i] = s * (w * ci - z * cj)
            r[j] = s * (x * cj - y * ci)

    def row_add(i: int, j: int, c: int) -> None:
        row_combine(i, j, 1, c, 0, 1)

    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def col_combine(i: int, j: int, x: int, y: int, z: int, w: int) -> None:
        # cols (i, j) <- (x ci + y cj, z ci + w cj); v_inv gets the inverse
        # transform on rows (i, j).
        s = x * w - y * z
        for m in (a, v):
            for r in m:
                ci, cj = r[i], r[j]
                r[i] = x * ci + y * cj
                r[j] = z * ci + w * cj
        ri, rj = v_inv[i], v_inv[j]
        v_inv[i] = [s * (w * p - z * q) for p, q in zip(ri, rj)]
        v_inv[j] = [s * (x * q - y * p) for p, q in zip(ri, rj)]

    def col_add(i: int, j: int, c: int) -> None:
        col_combine(i, j, 1, c, 0, 1)

    limit = min(rows, cols)
    t = 0
    while t < limit:
        # Smallest nonzero entry of the remaining block becomes the pivot.
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            for i in range(rows):
                if i == t or not a[i][t]:
                    continue
                q, r = divmod(a[i][t], a[t][t])
                if r == 0:
                    row_add(i, t, -q)
                else:
                    x, y, g = xgcd(a[t][t], a[i][t])
                    row_combine(t, i, x, y, -(a[i][t] // g), a[t][t] // g)
            if any(a[i][t] for i in range(rows) if i != t):
                continue
            for j in range(cols):
                if j == t or not a[t][j]:
                    continue
                q, r = divmod(a[t][j], a[t][t])
                if r == 0:
                    col_add(j, t, -q)
                else:
                    x, y, g = xgcd(a[t][t], a[t][j])
                    col_combine(t, j, x, y, -(a[t][j] // g), a[t][t] // g)
            if any(a[t][j] for j in range(cols) if j != t):
                continue
            if any(a[i][t] for i in range(rows) if i != t):
                continue
            break
        if a[t][t] < 0:
            row_negate(t)
        t += 1

    rank = t
    # Repair the divisibility chain d_i | d_{i+1} pair by pair.
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di == 0:
                continue
            changed = True
            col_add(i, i + 1, 1)  # puts dj below the pivot
            x, y, g = xgcd(di, dj)
            row_combine(i, i + 1, x, y, -(dj // g), di // g)
            # Entry (i, i+1) is now y*dj, divisible by the new pivot g.
            col_add(i + 1, i, -(a[i][i + 1] // g))

    return SmithNormalForm(
        matrix=[list(r) for r in mat],
        rows=rows,
        cols=cols,
        diagonal=[a[i][i] for i in range(rank)],
        u=u,
        u_inv=u_inv,
        v=v,
        v_inv=v_inv,
    )


# -- boundaries -------------------------------------------------------------


def boundary_matrix(P: PrecubicalSet, n: int, ring: CoefficientRing = ZZ) -> Matrix:
    """The degree-n boundary as a size(n-1) x size(n) matrix over the ring."""
    if n < 1:
        return []
    rows = P.size(n - 1)
    out = [[0] * P.size(n) for _ in range(rows)]
    for col, key in enumerate(P.cells(n)):
        cube = (n, key)
        for i in range(1, n + 1):
            sign = -1 if i % 2 else 1
            lo = P.cell_index(P.face(cube, 0, i))
            hi = P.cell_index(P.face(cube, 1, i))
            out[lo][col] += sign
            out[hi][col] -= sign
    if ring.characteristic:
        for r in out:
            for j, x in enumerate(r):
                r[j] = ring.normalize(x)
    return out


def chain_boundary(P: PrecubicalSet, chain: Chain, ring: CoefficientRing = ZZ) -> Chain:
    """Boundary of a chain given as {cube: coefficient}."""
    out: Chain = {}
    for cube, c in chain.items():
        n = cube[0]
        if n == 0 or not c:
            continue
        for i in range(1, n + 1):
            sign = -1 if i % 2 else 1
            for k, s in ((0, sign), (1, -sign)):
                f = P.face(cube, k, i)
                out[f] = out.get(f, 0) + s * c
    return {cube: v for cube, v in ((c, ring.normalize(x)) for c, x in out.items()) if v}


def chain_to_column(P: PrecubicalSet, n: int, chain: Chain) -> list[int]:
    col = [0] * P.size(n)
    for cube, c in chain.items():
        if cube[0] != n:
            raise ValueError(f"chain is not homogeneous of degree {n}: {cube}")
        col[P.cell_index(cube)] = c
    return col


def column_to_chain(P: PrecubicalSet, n: int, col: Sequence[int]) -> Chain:
    cells = P.cells(n)
    return {(n, cells[i]): x for i, x in enumerate(col) if x}


def boundary_violations(P: PrecubicalSet) -> list[Cube]:
    """Cubes whose boundary fails d(d x) = 0 over the integers."""
    bad = []
    for n in P.dims():
        if n < 2:
            continue
        for cube in P.cubes(n):
            if chain_boundary(P, chain_boundary(P, {cube: 1})):
                bad.append(cube)
    return bad


# -- homology groups ---------------------------------------------------------


@dataclass
class HomologyGroup:
    """One homology group with explicit cycle representatives.

    Over Z: free part of rank ``free_rank`` plus cyclic torsion summands of
    the listed orders.  Over a field the group is a vector space and torsion
    is empty.  Generators are chains; free ones come first, aligned with
    ``free_generators``, then torsion ones aligned with ``torsion``.
    """

    degree: int
    ring: CoefficientRing
    free_rank: int
    torsion: list[int] = field(default_factory=list)
    free_generators: list[Chain] = field(default_factory=list)
    torsion_generators: list[Chain] = field(default_factory=list)

    @property
    def generators(self) -> list[Chain]:
        return self.free_generators + self.torsion_generators

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append(str(self.ring))
        elif self.free_rank:
            parts.append(f"{self.ring}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _normalize_chain_sign(P: PrecubicalSet, n: int, chain: Chain) -> Chain:
    """Flip the chain so its first nonzero coefficient in cell order is > 0."""
    for key in P.cells(n):
        c = chain.get((n, key), 0)
        if c > 0:
            return chain
        if c < 0:
            return {cube: -x for cube, x in chain.items()}
    return chain


def _integer_homology(P: PrecubicalSet, n: int) -> HomologyGroup:
    cn = P.size(n)
    if cn == 0:
        return HomologyGroup(n, ZZ, 0)
    if n == 0:
        kdim = cn
        kernel_cols = mat_cols(identity_matrix(cn))

        def kernel_coords(w: Sequence[int]) -> list[int]:
            return list(w)

    else:
        snf_a = smith_normal_form(boundary_matrix(P, n), cols=cn)
        r = snf_a.rank
        kdim = cn - r
        if kdim == 0:
            return HomologyGroup(n, ZZ, 0)
        kernel_cols = [[snf_a.v[row][r + j] for row in range(cn)] for j in range(kdim)]

        def kernel_coords(w: Sequence[int]) -> list[int]:
            full = mat_vec(snf_a.v_inv, w)
            return full[r:]

    cn1 = P.size(n + 1)
    b = boundary_matrix(P, n + 1)
    q_cols = [kernel_coords(col) for col in mat_cols(b, cols=cn1)]
    q = [[q_cols[j][i] for j in range(cn1)] for i in range(kdim)]
    snf_q = smith_normal_form(q, cols=cn1)

    free_gens: list[Chain] = []
    tors_gens: list[Chain] = []
    torsion: list[int] = []
    diag = snf_q.diagonal
    for i in range(kdim):
        d = diag[i] if i < len(diag) else 0
        if d == 1:
            continue
        coeffs = [snf_q.u_inv[row][i] for row in range(kdim)]
        col = [
            sum(kernel_cols[j][row] * coeffs[j] for j in range(kdim))
            for row in range(cn)
        ]
        chain = _normalize_chain_sign(P, n, column_to_chain(P, n, col))
        if d == 0:
            free_gens.append(chain)
        else:
            torsion.append(d)
            tors_gens.append(chain)
    return HomologyGroup(n, ZZ, len(free_gens), torsion, free_gens, tors_gens)


# -- GF(2) bitset elimination -------------------------------------------------


def gf2_boundary_columns(P: PrecubicalSet, n: int) -> list[int]:
    """Boundary columns over GF(2) as bitsets (bit r = row cell r)."""
    cols = []
    for key in P.cells(n):
        cube = (n, key)
        bits = 0
        for i in range(1, n + 1):
            for k in (0, 1):
                bits ^= 1 << P.cell_index(P.face(cube, k, i))
        cols.append(bits)
    return cols


class Gf2Echelon:
    """Incremental GF(2) column echelon with optional combination tracking.

    Vectors are ints; pivot is the highest set bit.  ``add`` reduces a vector
    against the echelon and either absorbs it (returning None) or reports the
    fully reduced dependency combination.
    """

    def __init__(self, track: bool = False) -> None:
        self.pivots: dict[int, int] = {}
        self.combos: dict[int, int] = {}
        self.track = track

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: int, combo: int = 0) -> tuple[int, int]:
        while vec:
            p = vec.bit_length() - 1
            if p not in self.pivots:
                break
            vec ^= self.pivots[p]
            if self.track:
                combo ^= self.combos[p]
        return vec, combo

    def add(self, vec: int, combo: int = 0) -> tuple[int, int] | None:
        """Insert; returns the (residue, combo) pair only if vec was dependent."""
        vec, combo = self.reduce(vec, combo)
        if vec == 0:
            return 0, combo
        p = vec.bit_length() - 1
        self.pivots[p] = vec
        if self.track:
            self.combos[p] = combo
        return None


def _gf2_homology(P: PrecubicalSet, n: int) -> HomologyGroup:
    ring = CoefficientRing(2)
    cn = P.size(n)
    if cn == 0:
        return HomologyGroup(n, ring, 0)
    # Kernel of d_n as combination masks over the n-cells.
    kernel_masks: list[int] = []
    if n == 0:
        kernel_masks = [1 << j for j in range(cn)]
    else:
        ech = Gf2Echelon(track=True)
        for j, col in enumerate(gf2_boundary_columns(P, n)):
            dep = ech.add(col, 1 << j)
            if dep is not None:
                kernel_masks.append(dep[1])
    # Quotient by the image of d_{n+1}: seed an echelon with the boundary
    # columns, then keep each kernel mask the echelon absorbs as new.  Top-bit
    # reduction decides independence exactly, though it does not compute
    # canonical residues, so the kept generators are the raw kernel cycles.
    quot = Gf2Echelon()
    if P.size(n + 1):
        for col in gf2_boundary_columns(P, n + 1):
            quot.add(col)
    chains: list[Chain] = []
    cells = P.cells(n)
    for mask in kernel_masks:
        if quot.add(mask) is None:
            chain = {(n, cells[j]): 1 for j in range(cn) if mask >> j & 1}
            chains.append(chain)
    return HomologyGroup(n, ring, len(chains), [], chains, [])


# -- general prime field elimination ------------------------------------------


def _fp_reduce(
    vec: list[int],
    coeffs: list[int],
    echelon: dict[int, tuple[list[int], list[int]]],
    p: int,
) -> tuple[list[int], list[int]]:
    for pivot in sorted(echelon, reverse=True):
        if vec[pivot]:
            c = vec[pivot]  # echelon vectors are normalized to leading 1
            evec, ecoe = echelon[pivot]
            vec = [(x - c * y) % p for x, y in zip(vec, evec)]
            coeffs = [(x - c * y) % p for x, y in zip(coeffs, ecoe)]
    return vec, coeffs


def _fp_insert(
    vec: list[int],
    coeffs: list[int],
    echelon: dict[int, tuple[list[int], list[int]]],
    p: int,
) -> tuple[list[int], list[int]] | None:
    vec, coeffs = _fp_reduce(vec, coeffs, echelon, p)
    pivot = next((i for i in range(len(vec) - 1, -1, -1) if vec[i]), None)
    if pivot is None:
        return vec, coeffs
    inv = pow(vec[pivot], p - 2, p)
    echelon[pivot] = ([x * inv % p for x in vec], [x * inv % p for x in coeffs])
    return None


def _fp_homology(P: PrecubicalSet, n: int, ring: CoefficientRing) -> HomologyGroup:
    p = ring.characteristic
    cn = P.size(n)
    if cn == 0:
        return HomologyGroup(n, ring, 0)
    cols = mat_cols(boundary_matrix(P, n, ring), cols=cn) if n else []
    kernel: list[list[int]] = []
    if n == 0:
        kernel = mat_cols(identity_matrix(cn))
    else:
        echelon: dict[int, tuple[list[int], list[int]]] = {}
        for j in range(cn):
            unit = [0] * cn
            unit[j] = 1
            dep = _fp_insert(cols[j], unit, echelon, p)
            if dep is not None:
                kernel.append(dep[1])
    image: dict[int, tuple[list[int], list[int]]] = {}
    cn1 = P.size(n + 1)
    if cn1:
        for col in mat_cols(boundary_matrix(P, n + 1, ring), cols=cn1):
            _fp_insert(col, [], image, p)
    gens: dict[int, tuple[list[int], list[int]]] = {}
    chains: list[Chain] = []
    for kvec in kernel:
        vec, _ = _fp_reduce(kvec, [], image, p)
        residue = _fp_insert(vec, [], gens, p)
        if residue is None:
            chains.append(column_to_chain(P, n, vec))
    return HomologyGroup(n, ring, len(chains), [], chains, [])


def homology(P: PrecubicalSet, n: int, ring: CoefficientRing = ZZ) -> HomologyGroup:
    """The degree-n homology of the cubical chain complex of P."""
    if n < 0:
        raise ValueError("negative degree")
    if ring.characteristic == 0:
        return _integer_homology(P, n)
    if ring.characteristic == 2:
        return _gf2_homology(P, n)
    return _fp_homology(P, n, ring)


def all_homology(
    P: PrecubicalSet, ring: CoefficientRing = ZZ, top: int | None = None
) -> dict[int, HomologyGroup]:
    """Homology in all degrees 0..top (default: max dimension of P)."""
    top = P.max_dim if top is None else top
    return {n: homology(P, n, ring) for n in range(max(top, 0) + 1)}


# -- membership in a spanned sublattice / subspace -----------------------------


def lattice_membership(
    vectors: Sequence[Sequence[int]],
    target: Sequence[int],
    ring: CoefficientRing = ZZ,
) -> list[int] | None:
    """Solve sum_j x_j * vectors[j] == target over the ring.

    Returns the coefficient list on success, None when the target is outside
    the span (over Z: outside the lattice the vectors generate).  The witness
    is verified before being returned.
    """
    k = len(vectors)
    m = len(target)
    for v in vectors:
        if len(v) != m:
            raise ValueError("vector length mismatch")
    if ring.characteristic:
        p = ring.characteristic
        echelon: dict[int, tuple[list[int], list[int]]] = {}
        for j, vec in enumerate(vectors):
            unit = [0] * k
            unit[j] = 1
            _fp_insert([x % p for x in vec], unit, echelon, p)
        residue, coeffs = _fp_reduce([x % p for x in target], [0] * k, echelon, p)
        if any(residue):
            return None
        x = [(-c) % p for c in coeffs]
    else:
        mat = [[vectors[j][i] for j in range(k)] for i in range(m)]
        snf = smith_normal_form(mat, cols=k)
        y = mat_vec(snf.u, target)
        z = [0] * k
        for i in range(m):
            d = snf.diagonal[i] if i < snf.rank else 0
            if d == 0:
                if y[i]:
                    return None
            else:
                if y[i] % d:
                    return None
                if i < k:
                    z[i] = y[i] // d
        x = mat_vec(snf.v, z)
    # Confirm the witness before handing it out.
    for i in range(m):
        acc = sum(x[j] * vectors[j][i] for j in range(k))
        if ring.normalize(acc - target[i]) != 0:
            raise AssertionError("membership witness failed verification")
    return x


def nonmembership_certificate(
    vectors: Sequence[Sequence[int]],
    target: Sequence[int],
    ring: CoefficientRing = ZZ,
) -> tuple[list[int], int] | None:
    """A functional proving the target lies outside the span of the vectors.

    Returns (phi, modulus) with phi . v == 0 (mod modulus) for every
    generator v and phi . target != 0 (mod modulus); modulus 0 means exact
    integer equality.  Returns None when the target is inside, so between
    this and ``lattice_membership`` both answers come with checkable
    evidence.  Over Z the functional is a row of the unimodular U from the
    Smith decomposition of the generator matrix and the modulus is the
    matching invariant factor (or 0 past the rank); over a prime field it is
    read off a reduced echelon of the generators.
    """
    m = len(target)
    for v in vectors:
        if len(v) != m:
            raise ValueError("vector length mismatch")
    if not vectors:
        normalized = [ring.normalize(x) for x in target]
        j = next((i for i, a in enumerate(normalized) if a), None)
        if j is None:
            return None
        phi = [0] * m
        phi[j] = 1
        return phi, ring.characteristic
    if ring.characteristic:
        p = ring.characteristic
        # fully reduced echelon, pivot column -> row with that leading 1
        pivots: dict[int, list[int]] = {}
        for vec in vectors:
            row = [x % p for x in vec]
            for col, prow in pivots.items():
                if row[col]:
                    c = row[col]
                    row = [(a - c * b) % p for a, b in zip(row, prow)]
            lead = next((i for i, a in enumerate(row) if a), None)
            if lead is None:
                continue
            inv = pow(row[lead], p - 2, p)
            row = [a * inv % p for a in row]
            for col, prow in pivots.items():
                if prow[lead]:
                    c = prow[lead]
                    pivots[col] = [(a - c * b) % p for a, b in zip(prow, row)]
            pivots[lead] = row
        res = [x % p for x in target]
        for col, prow in pivots.items():
            if res[col]:
                c = res[col]
                res = [(a - c * b) % p for a, b in zip(res, prow)]
        j = next((i for i, a in enumerate(res) if a), None)
        if j is None:
            return None
        # phi kills each echelon row (hence each generator) and hits res[j]
        phi = [0] * m
        phi[j] = 1
        for col, prow in pivots.items():
            phi[col] = (-prow[j]) % p
        return phi, p
    k = len(vectors)
    mat = [[vectors[j][i] for j in range(k)] for i in range(m)]
    snf = smith_normal_form(mat, cols=k)
    y = mat_vec(snf.u, target)
    for i in range(m):
        d = snf.diagonal[i] if i < snf.rank else 0
        if d == 0 and y[i]:
            return list(snf.u[i]), 0
        if d and y[i] % d:
            return list(snf.u[i]), d
    return None


def verify_nonmembership(
    vectors: Sequence[Sequence[int]],
    target: Sequence[int],
    certificate: tuple[Sequence[int], int],
) -> bool:
    """Recheck a nonmembership certificate by plain dot products."""
    phi, modulus = certificate

    def dot(v: Sequence[int]) -> int:
        s = sum(a * b for a, b in zip(phi, v))
        return s % modulus if modulus else s

    if any(dot(v) for v in vectors):
        return False
    return dot(target) != 0
