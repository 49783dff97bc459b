"""Higher-dimensional automata: labeled precubical sets with start/accept cells.

An HDA is a precubical set together with an alphabet of action names, a word
of letters on every edge, and sets of initial and final cells.  The labeling
must satisfy the square condition: opposite edges of every 2-cube carry the
same word.  That local condition makes the word of "the direction-i edge" of
any cube well defined no matter which corner the edge is read at; the
diagnostic ``corner_word_violations`` checks exactly this derived global
consistency and is expected to stay empty for valid automata.

Edges may carry multi-letter words, not just single letters; subdivision-type
morphisms produce those naturally.  The empty word is allowed and denotes an
unobservable step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exterior import Alphabet
from .precubical import (
    Cube,
    Key,
    Path,
    PrecubicalSet,
    Violation,
    edge_in_direction,
    evaluate_subcube,
    validate_precubical,
)

Word = tuple[str, ...]


@dataclass
class Hda:
    """A labeled precubical set.

    ``labels`` maps edge keys (dimension-1 cell keys) to words.  ``initial``
    and ``final`` are cube sets; vertices in every model built here, though
    the structure allows higher start cells and validation only requires
    membership in the complex.
    """

    complex: PrecubicalSet
    alphabet: Alphabet
    labels: dict[Key, Word]
    initial: frozenset[Cube] = frozenset()
    final: frozenset[Cube] = frozenset()

    def edge_word(self, edge: Cube) -> Word:
        if edge[0] != 1:
            raise ValueError(f"{edge} is not an edge")
        return self.labels[edge[1]]

    def path_word(self, path: Path) -> Word:
        """Concatenated word along a path; empty path gives the empty word."""
        out: list[str] = []
        for e in path.edges:
            out.extend(self.labels[e[1]])
        return tuple(out)

    def direction_word(self, cube: Cube, i: int) -> Word:
        """The word of the direction-i edge of a cube (read at one corner)."""
        return self.edge_word(edge_in_direction(self.complex, cube, 0, i))


def validate_hda(h: Hda) -> list[Violation]:
    """Structural defects: complex, label table, square condition, markings."""
    out = validate_precubical(h.complex)
    P = h.complex
    for key in P.cells(1):
        if key not in h.labels:
            out.append(Violation("unlabeled-edge", (1, key), "edge has no word"))
            continue
        word = h.labels[key]
        if not isinstance(word, tuple) or any(not isinstance(a, str) for a in word):
            out.append(
                Violation("bad-word", (1, key), f"word must be a tuple of letters, got {word!r}")
            )
            continue
        for a in word:
            if a not in h.alphabet:
                out.append(
                    Violation("unknown-letter", (1, key), f"letter {a!r} not in alphabet")
                )
    edge_keys = set(P.cells(1))
    for key in h.labels:
        if key not in edge_keys:
            out.append(Violation("orphan-label", (1, key), "label for unknown edge"))
    if not any(v.kind in ("missing-faces", "dangling-face", "face-arity") for v in out):
        for key in P.cells(2):
            sq = (2, key)
            for i in (1, 2):
                lo = P.face(sq, 0, i)
                hi = P.face(sq, 1, i)
                wl = h.labels.get(lo[1])
                wh = h.labels.get(hi[1])
                if wl is not None and wh is not None and wl != wh:
                    out.append(
                        Violation(
                            "square-condition",
                            sq,
                            f"opposite edges disagree in direction {i}: "
                            f"{wl!r} vs {wh!r}",
                            (i,),
                        )
                    )
    for name, cubes in (("initial", h.initial), ("final", h.final)):
        for cube in cubes:
            if cube not in P:
                out.append(Violation(f"{name}-not-in-complex", cube, "marked cell missing"))
    return out


def assert_valid_hda(h: Hda) -> None:
    bad = validate_hda(h)
    if bad:
        raise ValueError("invalid HDA:\n" + "\n".join(str(v) for v in bad[:10]))


def corner_word_violations(h: Hda) -> list[Violation]:
    """Check the derived parallel-edge property on every cube.

    In a valid HDA the direction-i edges read at all 2^(n-1) corners of an
    n-cube carry one common word; this follows from the square condition by
    walking corner to corner.  Returns every disagreement found, so it can be
    used both as a lemma check in tests and to pinpoint which cube breaks a
    damaged model.
    """
    out: list[Violation] = []
    P = h.complex
    for n in P.dims():
        if n < 2:
            continue
        for cube in P.cubes(n):
            for i in range(1, n + 1):
                words = {}
                for corner in itertools.product((0, 1), repeat=n - 1):
                    coords = list(corner)
                    coords.insert(i - 1, (0, 1))
                    edge = evaluate_subcube(P, cube, tuple(coords))
                    words.setdefault(h.labels.get(edge[1]), []).append(corner)
                if len(words) > 1:
                    out.append(
                        Violation(
                            "corner-word",
                            cube,
                            f"direction {i} edges disagree: " +
                            "; ".join(f"{w!r} at {cs}" for w, cs in sorted(words.items(), key=str)),
                            (i,),
                        )
                    )
    return out


def restrict_alphabet(h: Hda, alphabet: Alphabet) -> Hda:
    """The same automaton presented over a larger or reordered alphabet."""
    for key, word in h.labels.items():
        for a in word:
            if a not in alphabet:
                raise ValueError(f"letter {a!r} of edge {key!r} missing from alphabet")
    return Hda(h.complex, alphabet, dict(h.labels), h.initial, h.final)
