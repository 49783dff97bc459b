"""Shared helpers for the randomized suites.

Every randomized test builds its generator through suite_rng, so a run
always checks the same cases.  Set the HDA_LAB_SEED environment variable
to an integer to move all suites onto a different (still reproducible)
case stream.
"""

import os
import random

from hda_lab.models import directed_circle
from hda_lab.products import tensor_hda

BASE_SEED = 271828


def suite_rng(tag: str) -> random.Random:
    """A deterministic generator with its own stream per suite tag."""
    raw = os.environ.get("HDA_LAB_SEED")
    base = BASE_SEED if raw is None else int(raw)
    return random.Random(f"{base}/{tag}")


def random_words(rng: random.Random, count: int, prefix: str = "a", longest: int = 3):
    """Random edge words over a small letter pool named after the prefix."""
    pool = [f"{prefix}{j}" for j in range(rng.randint(1, 4))]
    return [
        tuple(rng.choice(pool) for _ in range(rng.randint(1, longest)))
        for _ in range(count)
    ]


def random_circle(rng: random.Random, prefix: str = "a", max_edges: int = 4):
    """A directed circle with 1..max_edges edges and random short words."""
    return directed_circle(random_words(rng, rng.randint(1, max_edges), prefix))


def random_torus(rng: random.Random, prefix: str = "t"):
    """The tensor product of two independent random circles."""
    return tensor_hda(
        random_circle(rng, prefix + "x"), random_circle(rng, prefix + "y")
    )
