"""Exact residue arithmetic: root-of-unity phases, phase-space points, SL(2, Z_N).

Phases are stored as integer exponents of the primitive 8N-th root of unity,
so every power ``omega_N ** w`` with ``w`` a multiple of 1/8 is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DimensionError, DomainError


def _check_same_n(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DimensionError(f"dimension mismatch: N={n1} vs N={n2}")


@dataclass(frozen=True)
class PhaseExponent:
    """The unit complex number ``exp(2*pi*i*e / (8*n))``."""

    e: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"N must be positive, got {self.n}")
        object.__setattr__(self, "e", self.e % (8 * self.n))

    @classmethod
    def from_omega_power(cls, w, n: int) -> "PhaseExponent":
        """Phase ``omega_N ** w`` for ``w`` an integer multiple of 1/8."""
        w8 = Fraction(w) * 8
        if w8.denominator != 1:
            raise DomainError(f"omega_N power {w} is not a multiple of 1/8")
        return cls(int(w8), n)

    @classmethod
    def eighth_turns(cls, k: int, n: int) -> "PhaseExponent":
        """Phase ``exp(i*pi*k/4)``."""
        return cls(k * n, n)

    @property
    def modulus(self) -> int:
        return 8 * self.n

    def __add__(self, other: "PhaseExponent") -> "PhaseExponent":
        _check_same_n(self.n, other.n)
        return PhaseExponent(self.e + other.e, self.n)

    def __sub__(self, other: "PhaseExponent") -> "PhaseExponent":
        _check_same_n(self.n, other.n)
        return PhaseExponent(self.e - other.e, self.n)

    def __neg__(self) -> "PhaseExponent":
        return PhaseExponent(-self.e, self.n)

    def __mul__(self, k: int) -> "PhaseExponent":
        return PhaseExponent(self.e * k, self.n)

    __rmul__ = __mul__

    def __complex__(self) -> complex:
        return phase_to_complex(self)


def phase_to_complex(p: PhaseExponent) -> complex:
    # Exact values on the eight axis/diagonal directions avoid sin(pi) ~ 1e-16 noise.
    m = p.modulus
    if (8 * p.e) % m == 0:
        k = 8 * p.e // m
        s = math.sqrt(0.5)
        return (1, s + s * 1j, 1j, -s + s * 1j, -1, -s - s * 1j, -1j, s - s * 1j)[k] + 0j
    return cmath.exp(2j * math.pi * p.e / m)


@dataclass(frozen=True)
class PhasePoint:
    """A point (j, sigma) of the finite phase space Z_N x Z_N."""

    j: int
    sigma: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.n)
        object.__setattr__(self, "sigma", self.sigma % self.n)

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        _check_same_n(self.n, other.n)
        return PhasePoint(self.j + other.j, self.sigma + other.sigma, self.n)

    def as_tuple(self) -> tuple[int, int]:
        return (self.j, self.sigma)


@dataclass(frozen=True)
class SL2ZN:
    """A 2x2 matrix [[a, b], [c, d]] over Z_N with determinant 1 mod N."""

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise DomainError(f"N must be at least 2, got {n}")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % n)
        if (self.a * self.d - self.b * self.c) % n != 1 % n:
            raise DomainError(f"determinant of {self.rows()} is not 1 mod {n}")

    @classmethod
    def identity(cls, n: int) -> "SL2ZN":
        return cls(1, 0, 0, 1, n)

    @classmethod
    def from_rows(cls, rows, n: int) -> "SL2ZN":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, n)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def inverse(self) -> "SL2ZN":
        return SL2ZN(self.d, -self.b, -self.c, self.a, self.n)

    def __matmul__(self, other: "SL2ZN") -> "SL2ZN":
        return sl2_mul(self, other)

    def __pow__(self, k: int) -> "SL2ZN":
        base = self if k >= 0 else self.inverse()
        out = SL2ZN.identity(self.n)
        for _ in range(abs(k)):
            out = sl2_mul(out, base)
        return out


def sl2_mul(m1: SL2ZN, m2: SL2ZN) -> SL2ZN:
    _check_same_n(m1.n, m2.n)
    return SL2ZN(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
        m1.n,
    )


def sl2_act(pt: PhasePoint, m: SL2ZN) -> PhasePoint:
    """Right action: the row vector (j, sigma) times the matrix ``m``."""
    _check_same_n(pt.n, m.n)
    return PhasePoint(pt.j * m.a + pt.sigma * m.c, pt.j * m.b + pt.sigma * m.d, pt.n)
