"""Exact modular arithmetic on canonical residues.

Everything here is a pure function on immutable values; concurrent use is
unrestricted. Moduli are capped below 2**31 so that a product of two canonical
residues always fits in 64 bits, which keeps ports to fixed-width languages
honest; in Python the arithmetic is exact regardless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ModulusMismatch, NotInvertible

MAX_MODULUS = 1 << 31


def check_modulus(m: int) -> int:
    """Validate a modulus value and return it."""
    if not 2 <= m < MAX_MODULUS:
        raise ValueError(f"modulus must lie in [2, 2**31), got {m}")
    return int(m)


@dataclass(frozen=True, order=True)
class Modulus:
    """A validated modulus in [2, 2**31)."""

    m: int

    def __post_init__(self) -> None:
        check_modulus(self.m)

    def residue(self, value: int) -> "Residue":
        return Residue(value, self)

    def __int__(self) -> int:
        return self.m


@dataclass(frozen=True)
class Residue:
    """Canonical representative of an integer mod m, always in [0, m)."""

    value: int
    modulus: Modulus

    def __post_init__(self) -> None:
        # negative or oversized inputs are reduced on ingestion
        object.__setattr__(self, "value", int(self.value) % self.modulus.m)

    def __int__(self) -> int:
        return self.value

    def __add__(self, other: "Residue") -> "Residue":
        return mod_add(self, other)

    def __mul__(self, other: "Residue") -> "Residue":
        return mod_mul(self, other)

    def __pow__(self, exponent: int) -> "Residue":
        return mod_pow(self, exponent)


def _shared_modulus(a: Residue, b: Residue) -> int:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"moduli differ: {a.modulus.m} vs {b.modulus.m}")
    return a.modulus.m


def mod_add(a: Residue, b: Residue) -> Residue:
    """Canonical sum of two residues sharing a modulus."""
    m = _shared_modulus(a, b)
    return Residue((a.value + b.value) % m, a.modulus)


def mod_mul(a: Residue, b: Residue) -> Residue:
    """Canonical product of two residues sharing a modulus."""
    m = _shared_modulus(a, b)
    return Residue((a.value * b.value) % m, a.modulus)


def mod_pow(a: Residue, exponent: int) -> Residue:
    """a**exponent mod m by square-and-multiply, exponent >= 0."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    return Residue(pow(a.value, exponent, a.modulus.m), a.modulus)


def invert(a: int, m: int) -> int:
    """Inverse of a mod m as a plain integer; raises NotInvertible."""
    a %= m
    g = math.gcd(a, m)
    if g != 1:
        raise NotInvertible(f"{a} has gcd {g} with modulus {m}")
    return pow(a, -1, m)


def mod_inv(a: Residue) -> Residue:
    """Multiplicative inverse; raises NotInvertible when gcd(a, m) != 1."""
    return Residue(invert(a.value, a.modulus.m), a.modulus)


def unit_square_roots(m: int) -> tuple[int, ...]:
    """All s in [1, m) with s*s = 1 (mod m), ascending, by direct scan."""
    check_modulus(m)
    return tuple(s for s in range(1, m) if s * s % m == 1)


def sqrt_of_unity_set(modulus: Modulus | int) -> tuple[Residue, ...]:
    """Square roots of unity as residues, ascending."""
    mod = modulus if isinstance(modulus, Modulus) else Modulus(modulus)
    return tuple(Residue(s, mod) for s in unit_square_roots(mod.m))


def solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, ...]:
    """All y in [0, m) with a*y = b (mod m), ascending; empty when unsolvable."""
    a %= m
    b %= m
    g = math.gcd(a, m)
    if b % g:
        return ()
    mg = m // g
    y0 = b // g if a == 0 else (pow(a // g, -1, mg) * (b // g)) % mg
    return tuple(y0 + t * mg for t in range(g))


def is_prime(m: int) -> bool:
    """Trial-division primality test; fine for moduli below 2**31."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True
