"""Weyl pair, discrete Fourier transform, and the finite Heisenberg group.

Matrices are plain ``numpy`` complex arrays; every builder certifies
unitarity before returning.  Basis labels are ``0 .. N-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, DomainError, NotAnAutomorphismError
from .phase import SL2ZN, PhasePoint

UNITARY_TOL = 1e-12
MONOMIAL_TOL = 1e-10


def omega(n: int) -> complex:
    return np.exp(2j * np.pi / n)


def unitarity_defect(u: np.ndarray) -> float:
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def certify_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    """Return ``u`` unchanged if ``max|U^H U - I| <= tol * N``, else raise."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {u.shape}")
    defect = unitarity_defect(u)
    if defect > tol * u.shape[0]:
        raise DomainError(f"matrix is not unitary (defect {defect:.3e})")
    return u


def _roots(n: int, exponents) -> np.ndarray:
    # Integer exponents reduced mod N before the exp keep phases accurate for large N.
    return np.exp(2j * np.pi * (np.asarray(exponents) % n) / n)


def weyl_q(n: int) -> np.ndarray:
    return np.diag(_roots(n, np.arange(n)))


def weyl_p(n: int) -> np.ndarray:
    # P|rho> = |rho - 1 mod N>: ones on the superdiagonal plus the bottom-left corner.
    return np.roll(np.eye(n, dtype=complex), 1, axis=1)


def sylvester(n: int) -> np.ndarray:
    """DFT matrix with entries ``omega_N**(rho*k) / sqrt(N)``."""
    idx = np.arange(n)
    return _roots(n, np.outer(idx, idx)) / np.sqrt(n)


def build_generators(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the certified triple ``(Q, P, S)`` for dimension ``n``."""
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n}")
    return (
        certify_unitary(weyl_q(n)),
        certify_unitary(weyl_p(n)),
        certify_unitary(sylvester(n)),
    )


def monomial(n: int, j: int, sigma: int) -> np.ndarray:
    """The matrix ``Q**j @ P**sigma``."""
    # (Q^j P^s)|rho> = omega^{j(rho - s)} |rho - s>
    rows = (np.arange(n) - sigma) % n
    out = np.zeros((n, n), dtype=complex)
    out[rows, np.arange(n)] = _roots(n, j * rows)
    return out


@dataclass(frozen=True)
class HeisenbergElement:
    """``omega_N**l @ Q**j @ P**sigma`` encoded by its three residues."""

    l: int
    j: int
    sigma: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"dimension must be at least 2, got {self.n}")
        for name in ("l", "j", "sigma"):
            object.__setattr__(self, name, getattr(self, name) % self.n)

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return heisenberg_mul(self, other)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.l, self.j, self.sigma)


def heisenberg_mul(g1: HeisenbergElement, g2: HeisenbergElement) -> HeisenbergElement:
    if g1.n != g2.n:
        raise DimensionError(f"dimension mismatch: N={g1.n} vs N={g2.n}")
    # P^s Q^j = omega^{s j} Q^j P^s
    return HeisenbergElement(
        g1.l + g2.l + g1.sigma * g2.j, g1.j + g2.j, g1.sigma + g2.sigma, g1.n
    )


def heisenberg_to_matrix(g: HeisenbergElement) -> np.ndarray:
    return certify_unitary(_roots(g.n, g.l) * monomial(g.n, g.j, g.sigma))


def heisenberg_group(n: int) -> list[HeisenbergElement]:
    return [
        HeisenbergElement(l, j, s, n)
        for l in range(n)
        for j in range(n)
        for s in range(n)
    ]


def coset_of(g: HeisenbergElement) -> PhasePoint:
    return PhasePoint(g.j, g.sigma, g.n)


def match_monomial(x: np.ndarray, tol: float = MONOMIAL_TOL) -> tuple[int, int, complex]:
    """Find ``(a, b, lam)`` with ``x ~= lam * Q**a @ P**b`` and ``|lam| = 1``.

    Every one of the N**2 monomials is tried.  The scalar is read off the
    first nonzero entry of the candidate monomial; a match needs both a
    unimodular scalar and a max-norm residual within ``tol``.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    bs = np.arange(n)
    # Column 0 of Q^a P^b is nonzero only in row -b mod N.
    first_rows = -bs % n
    best = np.inf
    for a in range(n):
        mons = np.stack([monomial(n, a, b) for b in bs])
        lam = x[first_rows, 0] / mons[bs, first_rows, 0]
        resid = np.max(np.abs(x[None] - lam[:, None, None] * mons), axis=(1, 2))
        ok = (resid <= tol) & (np.abs(np.abs(lam) - 1.0) <= tol)
        if ok.any():
            b = int(np.flatnonzero(ok)[0])
            return a, b, complex(lam[b])
        best = min(best, float(resid.min()))
    raise NotAnAutomorphismError(
        f"matrix matches no monomial Q^a P^b (best residual {best:.3e})"
    )


def automorphism_to_sl2(u: np.ndarray) -> SL2ZN:
    """Matrix of the phase-space map induced by ``X -> U^-1 X U``.

    Rows are the cosets of ``U^-1 Q U`` and ``U^-1 P U``; the induced action
    on (j, sigma) is then the right action of the returned matrix.
    """
    u = certify_unitary(u)
    n = u.shape[0]
    u_inv = u.conj().T
    a, b, _ = match_monomial(u_inv @ weyl_q(n) @ u)
    c, d, _ = match_monomial(u_inv @ weyl_p(n) @ u)
    try:
        return SL2ZN(a, b, c, d, n)
    except DomainError as exc:
        raise NotAnAutomorphismError(str(exc)) from exc
