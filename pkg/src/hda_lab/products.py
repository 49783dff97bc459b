"""Tensor products of automata and the cross product on chains.

The tensor product runs two automata truly concurrently: cells are pairs,
every mixed pair of directions is filled, labels restrict from the factors
and the alphabet is the stable union (left factor's letters first, then the
right factor's new ones).  On chains the pairing extends bilinearly to the
cross product; with the face split used by the tensor construction the
pairing is itself the chain isomorphism, satisfying the boundary rule

    d (a x b) = (d a) x b + (-1)^deg(a) a x (d b)

with no extra sign bookkeeping.  Labels are multiplicative over the pairing:
the label of a product cell is the wedge of the factor labels, and the same
identity descends to homology classes.
"""

from __future__ import annotations

from typing import Iterable

from .exterior import Alphabet, ExteriorElement
from .hda import Hda
from .homology import Chain, all_homology
from .labeling import label_cochain
from .precubical import Cube, PrecubicalSet, Violation, tensor
from .rings import CoefficientRing, ZZ


def tensor_hda(A: Hda, B: Hda) -> Hda:
    """The synchronization-free product of two labeled automata."""
    T = tensor(A.complex, B.complex)
    alphabet = A.alphabet.union(B.alphabet)
    a_edges = set(A.complex.cells(1))
    b_vertices = set(B.complex.cells(0))
    labels = {}
    for key in T.cells(1):
        xk, yk = key
        if xk in a_edges and yk in b_vertices:
            labels[key] = A.labels[xk]
        else:
            labels[key] = B.labels[yk]
    initial = frozenset(
        (x[0] + y[0], (x[1], y[1])) for x in A.initial for y in B.initial
    )
    final = frozenset(
        (x[0] + y[0], (x[1], y[1])) for x in A.final for y in B.final
    )
    return Hda(T, alphabet, labels, initial, final)


def cross_chain(a: Chain, b: Chain, ring: CoefficientRing = ZZ) -> Chain:
    """Bilinear pairing of chains into the tensor complex."""
    out: Chain = {}
    for (p, xk), ca in a.items():
        for (q, yk), cb in b.items():
            cube = (p + q, (xk, yk))
            out[cube] = out.get(cube, 0) + ca * cb
    return {cube: v for cube, v in ((c, ring.normalize(x)) for c, x in out.items()) if v}


def check_tensor_label_identity(
    A: Hda,
    B: Hda,
    ring: CoefficientRing = ZZ,
    T: Hda | None = None,
) -> list[Violation]:
    """Compare product labels against wedges of factor labels, cell by cell.

    Returns one violation per product cell where the degree-(p+q) label of
    (x, y) differs from label(x) ^ label(y); empty on every valid pair of
    automata.  ``T`` can be passed in when the caller already built it.
    """
    if T is None:
        T = tensor_hda(A, B)
    out: list[Violation] = []
    for p in A.complex.dims():
        for q in B.complex.dims():
            for xk in A.complex.cells(p):
                la = label_cochain(A, (p, xk), ring).retag(T.alphabet)
                for yk in B.complex.cells(q):
                    lb = label_cochain(B, (q, yk), ring).retag(T.alphabet)
                    cube = (p + q, (xk, yk))
                    got = label_cochain(T, cube, ring)
                    want = la.wedge(lb)
                    if got != want:
                        out.append(
                            Violation(
                                "tensor-label",
                                cube,
                                f"product label {got} but factors wedge to {want}",
                            )
                        )
    return out


def kunneth_profile(
    A: PrecubicalSet,
    B: PrecubicalSet,
    ring: CoefficientRing,
    top: int | None = None,
) -> tuple[list[int], list[int]]:
    """Betti numbers of the tensor vs the field Kunneth prediction.

    Returns (actual, predicted), each indexed by degree 0..top.  Over a field
    homology is a vector space, so the predicted dimension in degree n is the
    convolution sum of the factor dimensions.  Over Z the formula would need
    torsion correction terms, so this helper requires a field ring.
    """
    if not ring.is_field:
        raise ValueError("the rank convolution formula needs field coefficients")
    T = tensor(A, B)
    if top is None:
        top = A.max_dim + B.max_dim
    ha = all_homology(A, ring, top)
    hb = all_homology(B, ring, top)
    ht = all_homology(T, ring, top)
    actual = [ht[n].free_rank for n in range(top + 1)]
    predicted = [
        sum(
            ha[p].free_rank * hb[n - p].free_rank
            for p in range(n + 1)
            if p in ha and (n - p) in hb
        )
        for n in range(top + 1)
    ]
    return actual, predicted
