"""Physical units on the lattice: Schwinger grid, q_N and p_N, potentials, spectra.

Labels in this module are the centered representatives
``-(N-1)/2 .. (N-1)/2`` in ascending order.  ``to_position_labels`` is the
one bridge to the ``0 .. N-1`` labels used by :mod:`weylpath.propagator`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath
import numpy as np

from .exceptions import DomainError, VerificationError
from .propagator import lagrangian_dimensionless

Potential = Union[None, Callable, Sequence[float], np.ndarray]

HERMITIAN_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Odd dimension plus the length, mass and action units."""

    n: int
    a: float = 1.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise DomainError(f"n must be odd and at least 3, got {self.n}")
        if min(self.a, self.m, self.hbar) <= 0:
            raise DomainError("units a, m, hbar must be positive")

    @property
    def eta(self) -> float:
        return math.sqrt(2 * math.pi / self.n)

    @property
    def eps(self) -> float:
        """Time step ``m a**2 / hbar``."""
        return self.m * self.a**2 / self.hbar

    @property
    def spacing(self) -> float:
        return self.a * self.eta

    @property
    def energy_unit(self) -> float:
        """``(2 pi / N) hbar / eps``, the energy carried by a unit of ``w``."""
        return 2 * math.pi / self.n * self.hbar / self.eps

    def labels(self) -> np.ndarray:
        h = (self.n - 1) // 2
        return np.arange(-h, h + 1)


def to_position_labels(values) -> np.ndarray:
    """Reorder a centered-label vector to labels ``0 .. N-1`` (``rho -> rho mod N``)."""
    values = np.asarray(values)
    n = values.shape[0]
    h = (n - 1) // 2
    return np.roll(values, -h)


def grid_points(g: GridSpec) -> np.ndarray:
    return g.spacing * g.labels()


def centered_dft(n: int) -> np.ndarray:
    r = np.arange(n) - (n - 1) // 2
    return np.exp(2j * np.pi * (np.outer(r, r) % n) / n) / np.sqrt(n)


def _certify_hermitian(h: np.ndarray) -> np.ndarray:
    scale = max(float(np.max(np.abs(h))), 1.0)
    dev = float(np.max(np.abs(h - h.conj().T)))
    if dev > HERMITIAN_TOL * scale:
        raise DomainError(f"matrix is not Hermitian (defect {dev:.3e})")
    return h


def grid_operators(g: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Position ``q_N`` and momentum ``p_N`` in the centered position basis.

    ``p_N`` is the DFT conjugate of a diagonal, never a difference stencil.
    """
    k = g.labels()
    s = centered_dft(g.n)
    q = np.diag(grid_points(g)).astype(complex)
    p = s @ np.diag(g.hbar / g.a * g.eta * k) @ s.conj().T
    # Exact Hermitian part; removes rounding asymmetry of the triple product.
    p = 0.5 * (p + p.conj().T)
    return _certify_hermitian(q), _certify_hermitian(p)


# ---------------------------------------------------------------------------
# Potentials


def free(q):
    return 0 * q


def harmonic(stiffness: float = 1.0) -> Callable:
    def v(q):
        return 0.5 * stiffness * q * q

    v.stiffness = stiffness
    return v


def quartic(coefficient: float = 1.0) -> Callable:
    def v(q):
        return coefficient * q**4

    return v


def potential_values(g: GridSpec, V: Potential) -> np.ndarray:
    """``V`` at the grid points, ascending.  ``V`` may also be ``N`` samples."""
    if V is None:
        vals = np.zeros(g.n)
    elif callable(V):
        vals = np.array([float(V(q)) for q in grid_points(g)])
    else:
        vals = np.asarray(V, dtype=float)
        if vals.shape != (g.n,):
            raise DomainError(f"expected {g.n} potential samples, got shape {vals.shape}")
    if not np.all(np.isfinite(vals)):
        raise DomainError("potential is not finite at every grid point")
    return vals


@dataclass(frozen=True)
class PotentialSamples:
    """Dimensionless constants ``w`` at centered labels, ascending."""

    w: np.ndarray
    labels: np.ndarray

    def by_position_label(self) -> np.ndarray:
        return to_position_labels(self.w)

    def at(self, rho: int) -> float:
        h = (len(self.w) - 1) // 2
        return float(self.w[rho + h])


def sample_potential(g: GridSpec, V: Potential) -> PotentialSamples:
    w = potential_values(g, V) / g.energy_unit
    return PotentialSamples(w, g.labels())


# ---------------------------------------------------------------------------
# Hamiltonian and spectrum


def build_hamiltonian(g: GridSpec, V: Potential = None) -> np.ndarray:
    _, p = grid_operators(g)
    h = p @ p / (2 * g.m) + np.diag(potential_values(g, V))
    return _certify_hermitian(0.5 * (h + h.conj().T))


def spectrum(h: np.ndarray, k: int) -> np.ndarray:
    """Lowest ``k`` eigenvalues of a Hermitian matrix, ascending."""
    h = np.asarray(h)
    n = h.shape[0]
    if not 0 < k <= n:
        raise DomainError(f"k must lie in 1..{n}, got {k}")
    vals, vecs = np.linalg.eigh(h)
    vals, vecs = vals[:k], vecs[:, :k]
    resid = np.linalg.norm(h @ vecs - vecs * vals, axis=0)
    bound = RESIDUAL_TOL * max(np.linalg.norm(h, 2), 1.0)
    if np.any(resid > bound):
        raise VerificationError(f"eigen residual {resid.max():.3e} exceeds {bound:.3e}")
    return vals


def build_hamiltonian_mp(g: GridSpec, V: Potential = None, dps: int = 60):
    """Real symmetric Hamiltonian in ``mpmath`` at ``dps`` digits.

    Uses ``(p_N**2)[r, s] = (hbar*eta/a)**2 / N * sum_k k**2 cos(2 pi (r-s) k / N)``,
    the DFT conjugate of ``diag(k**2)`` written out entrywise.
    """
    with mpmath.workdps(dps):
        n = g.n
        ks = [int(k) for k in g.labels()]
        eta = mpmath.sqrt(2 * mpmath.pi / n)
        unit = (mpmath.mpf(g.hbar) / g.a * eta) ** 2 / n / (2 * mpmath.mpf(g.m))
        band = [
            unit * mpmath.fsum(k * k * mpmath.cos(2 * mpmath.pi * d * k / n) for k in ks)
            for d in range(n)
        ]
        if V is None:
            pot = [mpmath.mpf(0)] * n
        elif callable(V):
            pot = [V(mpmath.mpf(g.a) * eta * r) for r in ks]
        else:
            pot = [mpmath.mpf(float(x)) for x in potential_values(g, V)]
        h = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                h[i, j] = band[abs(i - j)]
            h[i, i] += pot[i]
        return h


def spectrum_mp(h, k: int, dps: int = 60) -> list:
    """Lowest ``k`` eigenvalues of a real symmetric ``mpmath`` matrix."""
    if not 0 < k <= h.rows:
        raise DomainError(f"k must lie in 1..{h.rows}, got {k}")
    with mpmath.workdps(dps):
        vals = mpmath.eigsy(h, eigvals_only=True)
        return sorted(vals[i] for i in range(h.rows))[:k]


def oscillator_levels(g: GridSpec, k: int, stiffness: float = 1.0) -> np.ndarray:
    return g.hbar * math.sqrt(stiffness / g.m) * (np.arange(k) + 0.5)


def harmonic_errors(n: int, k: int = 5, dps: int | None = None) -> np.ndarray:
    """Errors of the lowest ``k`` eigenvalues against ``n + 1/2`` (a = m = hbar = 1).

    ``dps=None`` uses the double-precision solver; otherwise the whole
    computation runs in ``mpmath`` at ``dps`` digits.
    """
    g = GridSpec(n)
    if dps is None:
        vals = spectrum(build_hamiltonian(g, harmonic()), k)
        return np.abs(vals - oscillator_levels(g, k))
    with mpmath.workdps(dps):
        vals = spectrum_mp(build_hamiltonian_mp(g, harmonic(), dps), k, dps)
        errs = [abs(v - (i + mpmath.mpf(1) / 2)) for i, v in enumerate(vals)]
        return np.array([float(e) for e in errs])


def harmonic_max_error_mp(n: int, k: int = 5, dps: int = 80):
    """Largest eigenvalue error as an ``mpf`` (no underflow to float)."""
    g = GridSpec(n)
    with mpmath.workdps(dps):
        vals = spectrum_mp(build_hamiltonian_mp(g, harmonic(), dps), k, dps)
        return max(abs(v - (i + mpmath.mpf(1) / 2)) for i, v in enumerate(vals))


# ---------------------------------------------------------------------------
# Embedding into L^2(R)


@dataclass(frozen=True)
class EmbeddedState:
    """Step function equal to ``values[i]`` on ``[edges[i], edges[i+1])``."""

    edges: np.ndarray
    values: np.ndarray

    def __call__(self, q):
        q = np.asarray(q, dtype=float)
        idx = np.searchsorted(self.edges, q, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.values))
        out = np.zeros(q.shape, dtype=complex)
        out[inside] = self.values[idx[inside]]
        return out

    def l2_norm(self) -> float:
        widths = np.diff(self.edges)
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2 * widths)))


def embed_state(g: GridSpec, psi) -> EmbeddedState:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (g.n,):
        raise DomainError(f"expected {g.n} amplitudes, got shape {psi.shape}")
    h = g.spacing
    edges = h * (np.arange(g.n + 1) - g.n / 2)
    return EmbeddedState(edges, psi / math.sqrt(h))


# ---------------------------------------------------------------------------
# Continuum comparison

_INV_SQRT_I = cmath.exp(-0.25j * math.pi)


def continuum_prefactor(g: GridSpec) -> complex:
    """``(2 pi i hbar eps / m)**(-1/2)`` with ``i**(-1/2) = exp(-i pi/4)``."""
    return _INV_SQRT_I * math.sqrt(g.m / (2 * math.pi * g.hbar * g.eps))


def continuum_short_time(g: GridSpec, q1: float, q0: float, V: Potential = None) -> complex:
    if V is not None and not callable(V):
        raise DomainError("continuum propagator needs a callable potential")
    v0 = float(V(q0)) if V is not None else 0.0
    action = (0.5 * g.m * ((q1 - q0) / g.eps) ** 2 - v0) * g.eps / g.hbar
    return continuum_prefactor(g) * cmath.exp(1j * action)


def prefactor_ratio(g: GridSpec) -> complex:
    """``a eta_N / A`` with ``A = (2 pi i hbar eps / m)**(1/2)``."""
    return g.spacing * continuum_prefactor(g)


def lattice_phase(g: GridSpec, drho: int) -> float:
    """``(2 pi / N) * L(drho)``, the single-step phase in radians."""
    return 2 * math.pi / g.n * float(lagrangian_dimensionless(drho))


def local_lagrangian(g: GridSpec, drho: int) -> float:
    """``L_N = m/2 ((dq + a eta/2) / eps)**2`` for ``dq = a eta drho``."""
    return 0.5 * g.m * ((g.spacing * drho + g.spacing / 2) / g.eps) ** 2


def unitful_phase(g: GridSpec, drho: int) -> float:
    return local_lagrangian(g, drho) * g.eps / g.hbar


@dataclass(frozen=True)
class PropagatorDeviation:
    magnitude_dev: float
    phase_dev: float


def compare_propagators(
    g: GridSpec, drho: int, V: Potential = None, rho0: int = 0
) -> PropagatorDeviation:
    """Lattice short-time amplitude vs its unit-ful form, from label ``rho0``."""
    lattice_mag = 1 / g.spacing / math.sqrt(g.n)
    cont_mag = math.sqrt(g.m / (2 * math.pi * g.hbar * g.eps))
    lat = lattice_phase(g, drho)
    cont = unitful_phase(g, drho)
    if V is not None:
        w = sample_potential(g, V).at(rho0)
        v0 = potential_values(g, V)[rho0 + (g.n - 1) // 2]
        lat -= 2 * math.pi / g.n * w
        cont -= v0 * g.eps / g.hbar
    return PropagatorDeviation(abs(lattice_mag - cont_mag), abs(lat - cont))


def lagrangian_rows(g: GridSpec):
    """One record per centered displacement with both phase forms."""
    rows = []
    for d in g.labels():
        d = int(d)
        frac: Fraction = lagrangian_dimensionless(d)
        lat, cont = lattice_phase(g, d), unitful_phase(g, d)
        rows.append(
            {
                "drho": d,
                "lagrangian_num": frac.numerator,
                "lagrangian_den": frac.denominator,
                "dimensionless_phase": lat,
                "unitful_phase": cont,
                "rel_dev": abs(lat - cont) / abs(lat),
                "magnitude_dev": compare_propagators(g, d).magnitude_dev,
            }
        )
    return rows
