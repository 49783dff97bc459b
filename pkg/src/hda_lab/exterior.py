"""Exterior algebra over the free module on an action alphabet.

Labels of n-cubes live in the degree-n part of the exterior algebra on the
alphabet letters.  A basis element of degree n is a strictly increasing tuple
of letter indices; an element is a finite coefficient dictionary over such
tuples.  The wedge product is computed by merging index tuples and counting
inversions for the sign; repeated letters kill a term, in every
characteristic (the label calculus needs a*a = 0 over Z/2 as well, which is
the alternating algebra rather than the plain quotient by squares).

Words (tuples of letters attached to edge paths) enter the algebra through
``word_to_vector``, the sum of the letters with multiplicity in degree 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .rings import CoefficientRing, ZZ


class Alphabet:
    """An ordered set of action letters; order fixes the basis order.

    Letters are strings.  The positions define the index tuples used as
    exterior basis keys, so two elements are only compatible when built over
    the same alphabet.
    """

    __slots__ = ("_letters", "_pos")

    def __init__(self, letters: Iterable[str]) -> None:
        self._letters = tuple(letters)
        self._pos = {a: i for i, a in enumerate(self._letters)}
        if len(self._pos) != len(self._letters):
            raise ValueError("alphabet letters must be distinct")
        for a in self._letters:
            if not isinstance(a, str) or not a:
                raise ValueError(f"letters must be nonempty strings, got {a!r}")

    @property
    def letters(self) -> tuple[str, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self._letters)

    def __contains__(self, letter: str) -> bool:
        return letter in self._pos

    def index(self, letter: str) -> int:
        try:
            return self._pos[letter]
        except KeyError:
            raise KeyError(f"letter {letter!r} not in alphabet") from None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self._letters == other._letters

    def __hash__(self) -> int:
        return hash(self._letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self._letters)!r})"

    def union(self, other: "Alphabet") -> "Alphabet":
        """Stable union: self's letters in order, then other's new letters."""
        extra = [a for a in other if a not in self]
        return Alphabet(self._letters + tuple(extra))


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Merge two strictly increasing index tuples.

    Returns (merged, sign) where sign is (-1)^inversions, or (merged, 0) when
    the tuples share an index (the wedge vanishes).
    """
    merged: list[int] = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return (), 0
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            j += 1
            # b jumps over the remaining len(left) - i entries of left.
            if (len(left) - i) % 2:
                sign = -sign
    merged.extend(left[i:])
    merged.extend(right[j:])
    return tuple(merged), sign


@dataclass(frozen=True)
class ExteriorElement:
    """An element of the exterior algebra: {index tuple: coefficient}.

    Immutable; arithmetic returns new elements.  Zero coefficients are never
    stored.  ``terms`` keys are strictly increasing tuples of alphabet
    indices, with the empty tuple as the degree-0 unit basis element.
    """

    alphabet: Alphabet
    ring: CoefficientRing = ZZ
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[tuple[int, ...], int] = {}
        n = len(self.alphabet)
        for idx, c in self.terms.items():
            idx = tuple(idx)
            if any(not 0 <= i < n for i in idx):
                raise ValueError(f"index tuple {idx} out of alphabet range")
            if any(idx[t] >= idx[t + 1] for t in range(len(idx) - 1)):
                raise ValueError(f"index tuple {idx} is not strictly increasing")
            c = self.ring.normalize(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(alphabet: Alphabet, ring: CoefficientRing = ZZ) -> "ExteriorElement":
        return ExteriorElement(alphabet, ring, {})

    @staticmethod
    def unit(alphabet: Alphabet, ring: CoefficientRing = ZZ) -> "ExteriorElement":
        """The multiplicative unit 1, in degree 0."""
        return ExteriorElement(alphabet, ring, {(): 1})

    @staticmethod
    def letter(alphabet: Alphabet, a: str, ring: CoefficientRing = ZZ) -> "ExteriorElement":
        return ExteriorElement(alphabet, ring, {(alphabet.index(a),): 1})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degrees = {len(idx) for idx in self.terms}
        return len(degrees) <= 1

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({len(idx) for idx in self.terms}))

    def degree_component(self, n: int) -> "ExteriorElement":
        picked = {idx: c for idx, c in self.terms.items() if len(idx) == n}
        return ExteriorElement(self.alphabet, self.ring, picked)

    def coefficient(self, letters: Sequence[str]) -> int:
        """Coefficient of the basis monomial given by letters, with sign.

        The letters need not be sorted; the sign of the sorting permutation
        is applied, and repeated letters give 0.
        """
        acc = self.unit(self.alphabet, self.ring)
        for a in letters:
            acc = acc.wedge(ExteriorElement.letter(self.alphabet, a, self.ring))
        if acc.is_zero():
            return 0
        ((idx, sign),) = acc.terms.items()
        return self.ring.normalize(sign * self.terms.get(idx, 0))

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "ExteriorElement") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("elements over different alphabets")
        if self.ring != other.ring:
            raise ValueError("elements over different rings")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_compatible(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, 0) + c
        return ExteriorElement(self.alphabet, self.ring, out)

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def __neg__(self) -> "ExteriorElement":
        return self.scale(-1)

    def scale(self, c: int) -> "ExteriorElement":
        return ExteriorElement(
            self.alphabet, self.ring, {idx: c * v for idx, v in self.terms.items()}
        )

    def __rmul__(self, c: int) -> "ExteriorElement":
        if not isinstance(c, int):
            return NotImplemented
        return self.scale(c)

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_compatible(other)
        out: dict[tuple[int, ...], int] = {}
        for li, lc in self.terms.items():
            for ri, rc in other.terms.items():
                merged, sign = _merge_sign(li, ri)
                if sign == 0:
                    continue
                out[merged] = out.get(merged, 0) + sign * lc * rc
        return ExteriorElement(self.alphabet, self.ring, out)

    def __xor__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self.wedge(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.ring, frozenset(self.terms.items())))

    def retag(self, alphabet: Alphabet) -> "ExteriorElement":
        """Re-express over another alphabet containing the same letters.

        Letters keep their names; when the new alphabet orders them
        differently the basis tuples are re-sorted, and each swap flips the
        coefficient's sign, as wedge factors anticommute.
        """
        mapping = {}
        for idx, c in self.terms.items():
            translated = [alphabet.index(self.alphabet.letters[i]) for i in idx]
            sign = 1
            for a in range(len(translated)):
                for b in range(a + 1, len(translated)):
                    if translated[a] > translated[b]:
                        sign = -sign
            new_idx = tuple(sorted(translated))
            mapping[new_idx] = mapping.get(new_idx, 0) + sign * c
        return ExteriorElement(alphabet, self.ring, mapping)

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms, key=lambda t: (len(t), t)):
            c = self.terms[idx]
            mono = "1" if not idx else "∧".join(self.alphabet.letters[i] for i in idx)
            if c == 1 and idx:
                parts.append(mono)
            elif c == -1 and idx:
                parts.append(f"-{mono}")
            elif not idx:
                parts.append(str(c))
            else:
                parts.append(f"{c}·{mono}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self) -> str:
        return f"<ExteriorElement {self} over {self.ring}>"


def word_to_vector(
    alphabet: Alphabet, word: Sequence[str], ring: CoefficientRing = ZZ
) -> ExteriorElement:
    """The degree-1 letter sum of a word, with multiplicity.

    The empty word gives 0.  This is the abelianization used on edge labels:
    the order of letters is forgotten, their counts are kept (mod p over a
    prime field).
    """
    counts: dict[tuple[int, ...], int] = {}
    for a in word:
        idx = (alphabet.index(a),)
        counts[idx] = counts.get(idx, 0) + 1
    return ExteriorElement(alphabet, ring, counts)


def wedge_all(factors: Sequence[ExteriorElement]) -> ExteriorElement:
    """Wedge a nonempty sequence left to right."""
    if not factors:
        raise ValueError("wedge_all needs at least one factor")
    acc = factors[0]
    for f in factors[1:]:
        acc = acc.wedge(f)
    return acc
