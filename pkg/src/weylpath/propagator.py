"""Free evolution on Z_N, generalized Gauss sums, and lattice propagators.

Momentum and position labels here are the representatives ``0 .. N-1``.
Diagonal exponents are built exactly as :class:`PhaseExponent` values and
only rendered to floating point when a matrix is assembled.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import DomainError, VerificationError
from .phase import PhaseExponent, phase_to_complex
from .weyl import certify_unitary, sylvester


def _require_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise DomainError(f"n must be odd and at least 3, got {n}")


@dataclass(frozen=True)
class EvolutionKind:
    """One of ``CN1``, ``CN2`` or ``TN`` (with an integer step count ``tau``)."""

    tag: str
    tau: int = 1

    def __post_init__(self):
        tag = self.tag.upper()
        if tag not in ("CN1", "CN2", "TN"):
            raise DomainError(f"unknown evolution kind {self.tag!r}")
        object.__setattr__(self, "tag", tag)
        if tag != "TN":
            object.__setattr__(self, "tau", 1)
        elif self.tau < 0:
            raise DomainError(f"tau must be non-negative, got {self.tau}")

    @classmethod
    def parse(cls, text: str) -> "EvolutionKind":
        """Accept ``cn1``, ``cn2``, ``tn`` or ``tn:<tau>``."""
        tag, _, tau = text.partition(":")
        return cls(tag, int(tau) if tau else 1)

    def exponent(self, j: int) -> Fraction:
        """Power of ``omega_N`` on the momentum-``j`` diagonal entry."""
        if self.tag == "CN1":
            return Fraction(-j * j, 2)
        if self.tag == "CN2":
            return Fraction(-j * (j - 1), 2)
        return Fraction(-j * j * self.tau, 2)

    def __str__(self) -> str:
        return f"TN({self.tau})" if self.tag == "TN" else self.tag


CN1 = EvolutionKind("CN1")
CN2 = EvolutionKind("CN2")


def diagonal_phases(n: int, kind: EvolutionKind) -> list[PhaseExponent]:
    _require_odd(n)
    return [PhaseExponent.from_omega_power(kind.exponent(j), n) for j in range(n)]


def evolution_diag(n: int, kind: EvolutionKind) -> np.ndarray:
    """Evolution operator in the momentum basis."""
    diag = np.array([phase_to_complex(p) for p in diagonal_phases(n, kind)])
    return certify_unitary(np.diag(diag))


def step_position_matrix(n: int, kind: EvolutionKind) -> np.ndarray:
    """Evolution operator in the position basis, ``S @ D @ S^-1``."""
    s = sylvester(n)
    return certify_unitary(s @ evolution_diag(n, kind) @ s.conj().T)


@dataclass(frozen=True)
class PropagatorEntry:
    magnitude: float
    phase: PhaseExponent

    def __complex__(self) -> complex:
        return self.magnitude * phase_to_complex(self.phase)


# ---------------------------------------------------------------------------
# Gauss sums


@dataclass(frozen=True)
class GaussSumSpec:
    """Parameters of ``sum_{n=0}^{|c|-1} exp(pi*i*(a*n**2 + b*n)/c)``."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a * self.c == 0:
            raise DomainError(f"need a*c != 0, got a={self.a}, c={self.c}")
        if (self.a * self.c + self.b) % 2:
            raise DomainError(f"need a*c + b even, got {self.a * self.c + self.b}")

    @staticmethod
    def is_valid(a: int, b: int, c: int) -> bool:
        return a * c != 0 and (a * c + b) % 2 == 0


def gauss_sum_direct(s: GaussSumSpec) -> complex:
    """Literal summation of all ``|c|`` terms."""
    k = np.arange(abs(s.c))
    # a*k^2 + b*k reduced mod 2c keeps the exp argument small.
    num = (s.a * k * k + s.b * k) % (2 * abs(s.c))
    sign = 1 if s.c > 0 else -1
    return complex(np.sum(np.exp(1j * np.pi * sign * num / abs(s.c))))


def _geometric_sum(b: int, c: int) -> complex:
    # sum_{n<c} exp(pi*i*b*n/c) with b even and c > 0
    half = b // 2
    return complex(c) if half % c == 0 else 0j


def gauss_sum_reciprocal(s: GaussSumSpec) -> complex:
    """Evaluate the Gauss sum by repeated reciprocity, Euclid style.

    Each round normalizes ``c > 0``, reduces ``a`` and ``b`` modulo ``2c``
    (the summand only sees them mod ``2c``), then trades the sum of length
    ``c`` for one of length ``|a| < c``.  Stops at a one-term sum or when
    ``a`` vanishes (a geometric sum).
    """
    a, b, c = s.a, s.b, s.c
    factor = 1.0 + 0j
    while True:
        if c < 0:
            a, b, c = -a, -b, -c
        two_c = 2 * c
        a %= two_c
        if a > c:
            a -= two_c
        if a == c:
            # (-1)^(n^2) = (-1)^n folds the quadratic term into the linear one.
            a, b = 0, b + c
        b %= two_c
        if c == 1:
            return factor
        if a == 0:
            return factor * _geometric_sum(b, c)
        ac = a * c
        # exp(pi*i*(|ac| - b^2)/(4ac)) depends on the numerator only mod 8|ac|.
        num = (abs(ac) - b * b) % (8 * abs(ac))
        if ac < 0:
            num = -num
        factor *= math.sqrt(c / abs(a)) * cmath.exp(1j * math.pi * num / (4 * abs(ac)))
        a, b, c = -c, -b, a


# ---------------------------------------------------------------------------
# Closed-form single step


def closed_form_step(n: int, drho: int) -> PropagatorEntry:
    """``<rho'|C_N2|rho>`` for ``rho' - rho = drho`` in closed form.

    Equals ``omega_N**((drho + 1/2)**2 / 2) / sqrt(i*N)``.  The exponent
    ``(2*drho + 1)**2 / 8`` of ``omega_N`` becomes ``(2*drho + 1)**2`` in
    units of ``omega_{8N}``; ``1/sqrt(i)`` subtracts an eighth turn (``N``).
    """
    _require_odd(n)
    e = (2 * drho + 1) ** 2 - n
    return PropagatorEntry(1.0 / math.sqrt(n), PhaseExponent(e, n))


def lagrangian_dimensionless(drho: int) -> Fraction:
    """Lattice Lagrangian ``(drho + 1/2)**2 / 2`` as an exact rational."""
    return Fraction((2 * drho + 1) ** 2, 8)


def closed_form_matrix(n: int) -> np.ndarray:
    d = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    table = np.array([complex(closed_form_step(n, k)) for k in range(n)])
    return table[d]


# ---------------------------------------------------------------------------
# Multi-step propagation


def _check_labels(n: int, *labels: int) -> None:
    for r in labels:
        if not 0 <= r < n:
            raise DomainError(f"position label {r} outside [0, {n})")


def propagator_matrix_power(n: int, tau: int, rho0: int, rhot: int, kind=CN1) -> complex:
    m = np.linalg.matrix_power(step_position_matrix(n, kind), tau)
    return complex(m[rhot, rho0])


def nested_path_sum(step: np.ndarray, tau: int, rho0: int, rhot: int) -> complex:
    """Sum over every lattice path ``rho0 -> rho1 -> ... -> rhot`` of step amplitudes."""
    if tau == 0:
        return complex(rho0 == rhot)
    n = step.shape[0]
    cols = np.asarray(step).T.tolist()  # cols[prev][r] = <r|U|prev>
    total = 0j
    for path in itertools.product(range(n), repeat=tau - 1):
        amp = 1 + 0j
        prev = rho0
        for r in (*path, rhot):
            amp *= cols[prev][r]
            prev = r
        total += amp
    return total


def propagator_nested_sum(n: int, tau: int, rho0: int, rhot: int, kind=CN1) -> complex:
    return nested_path_sum(step_position_matrix(n, kind), tau, rho0, rhot)


def propagator_momentum_sum(n: int, tau: int, rho0: int, rhot: int, kind=CN1) -> complex:
    """``(1/N) sum_j omega**(tau*E(j) + (rhot - rho0)*j)`` with exact phases."""
    _require_odd(n)
    terms = (
        PhaseExponent.from_omega_power(tau * kind.exponent(j) + (rhot - rho0) * j, n)
        for j in range(n)
    )
    return sum(phase_to_complex(p) for p in terms) / n


NESTED_MAX_TAU = 4


def multi_step_methods(n: int, tau: int, rho0: int, rhot: int, kind=CN1) -> dict[str, complex]:
    """Amplitude ``<rhot| U**tau |rho0>`` by each available route.

    The nested path sum is included only for ``tau <= 4``.
    """
    _require_odd(n)
    if tau < 0:
        raise DomainError(f"tau must be non-negative, got {tau}")
    _check_labels(n, rho0, rhot)
    out = {
        "matrix_power": propagator_matrix_power(n, tau, rho0, rhot, kind),
        "momentum_sum": propagator_momentum_sum(n, tau, rho0, rhot, kind),
    }
    if tau <= NESTED_MAX_TAU:
        out["nested_sum"] = propagator_nested_sum(n, tau, rho0, rhot, kind)
    return out


def max_disagreement(values: dict[str, complex]) -> float:
    vals = list(values.values())
    return max((abs(x - y) for x in vals for y in vals), default=0.0)


def multi_step_propagator(
    n: int, tau: int, rho0: int, rhot: int, kind=CN1, tol: float = 1e-10
) -> complex:
    values = multi_step_methods(n, tau, rho0, rhot, kind)
    dev = max_disagreement(values)
    if dev > tol:
        raise VerificationError(f"propagator routes disagree by {dev:.3e}")
    return values["momentum_sum"]


# ---------------------------------------------------------------------------
# Potential


def potential_step_matrix(n: int, w) -> np.ndarray:
    """``C_N2 @ diag(omega**(-w_rho))`` with ``w`` indexed by labels ``0 .. N-1``."""
    _require_odd(n)
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise DomainError(f"expected {n} potential constants, got shape {w.shape}")
    phases = np.exp(-2j * np.pi * np.mod(w, n) / n)
    return certify_unitary(step_position_matrix(n, CN2) * phases[None, :])
