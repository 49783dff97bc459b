"""Coefficient rings for chains and labels: the integers or a prime field.

Everything downstream (chains, exterior labels, homology) is parametrized by a
``CoefficientRing``.  Only ``Z`` and ``Z/pZ`` for prime ``p`` are supported;
that is exactly what the homology engine can decompose (Smith normal form over
``Z``, Gaussian elimination over a field).
"""

from __future__ import annotations

from dataclasses import dataclass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """Z (characteristic 0) or the field Z/pZ (characteristic p, p prime).

    ``characteristic == 0`` means the integers.  Elements are plain Python
    ints; ``normalize`` maps them to the canonical representative (identity
    over Z, the residue in [0, p) over Z/pZ).
    """

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def is_field(self) -> bool:
        return self.characteristic != 0

    def normalize(self, c: int) -> int:
        if self.characteristic:
            return c % self.characteristic
        return c

    def neg(self, c: int) -> int:
        return self.normalize(-c)

    def inverse(self, c: int) -> int:
        """Multiplicative inverse; only available over a field."""
        p = self.characteristic
        if not p:
            if c in (1, -1):
                return c
            raise ZeroDivisionError(f"{c} is not a unit in Z")
        c %= p
        if c == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(c, p - 2, p)

    def divides(self, k: int) -> bool:
        """True iff the characteristic divides k (char 0 divides only 0)."""
        p = self.characteristic
        return k == 0 if p == 0 else k % p == 0

    def __str__(self) -> str:
        return "Z" if self.characteristic == 0 else f"Z/{self.characteristic}"


ZZ = CoefficientRing(0)
GF2 = CoefficientRing(2)


def parse_ring(spec: str) -> CoefficientRing:
    """Parse a CLI ring spec: ``z`` for the integers, ``zp:<p>`` for Z/pZ."""
    s = spec.strip().lower()
    if s == "z":
        return ZZ
    if s.startswith("zp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise ValueError(f"bad ring spec {spec!r}: expected zp:<prime>") from None
        return CoefficientRing(p)
    raise ValueError(f"bad ring spec {spec!r}: expected 'z' or 'zp:<prime>'")


def ring_spec(ring: CoefficientRing) -> str:
    """Inverse of parse_ring, used when reports echo the ring back."""
    return "z" if ring.characteristic == 0 else f"zp:{ring.characteristic}"
