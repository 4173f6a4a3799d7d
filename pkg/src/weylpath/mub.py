"""Labeled orthonormal bases, unbiasedness checks, and the C_N2 chain of N+1 MUBs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, DomainError
from .phase import PhasePoint, SL2ZN, sl2_act
from .propagator import CN2, step_position_matrix
from .weyl import automorphism_to_sl2, monomial, sylvester

ORTHONORMAL_TOL = 1e-12
EIGEN_TOL = 1e-10
MUB_TOL = 1e-10


@dataclass(frozen=True)
class LabeledBasis:
    """Orthonormal frame whose columns are eigenvectors of ``Q**j @ P**sigma``."""

    n: int
    label: PhasePoint
    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.shape != (self.n, self.n):
            raise DomainError(f"expected {self.n}x{self.n} vectors, got {v.shape}")
        gram = v.conj().T @ v
        dev = float(np.max(np.abs(gram - np.eye(self.n))))
        if dev > ORTHONORMAL_TOL:
            raise DomainError(f"vectors are not orthonormal (defect {dev:.3e})")
        object.__setattr__(self, "vectors", v)

    def relabel(self, label: PhasePoint) -> "LabeledBasis":
        return LabeledBasis(self.n, label, self.vectors)


def canonical_basis(n: int) -> LabeledBasis:
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n}")
    return LabeledBasis(n, PhasePoint(1, 0, n), np.eye(n, dtype=complex))


def momentum_basis(n: int) -> LabeledBasis:
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n}")
    return LabeledBasis(n, PhasePoint(0, 1, n), sylvester(n))


@dataclass(frozen=True)
class Unbiasedness:
    max_dev: float
    is_mub: bool


def unbiasedness(b1: LabeledBasis, b2: LabeledBasis, tol: float = MUB_TOL) -> Unbiasedness:
    if b1.n != b2.n:
        raise DimensionError(f"dimension mismatch: N={b1.n} vs N={b2.n}")
    overlaps = np.abs(b1.vectors.conj().T @ b2.vectors)
    dev = float(np.max(np.abs(overlaps - 1 / np.sqrt(b1.n))))
    return Unbiasedness(dev, dev <= tol)


@dataclass(frozen=True)
class EigenCheck:
    max_residual: float
    passed: bool


def eigenbasis_check(b: LabeledBasis, tol: float = EIGEN_TOL) -> EigenCheck:
    m = monomial(b.n, b.label.j, b.label.sigma)
    mv = m @ b.vectors
    rayleigh = np.sum(b.vectors.conj() * mv, axis=0)
    resid = np.linalg.norm(mv - b.vectors * rayleigh, axis=0)
    worst = float(resid.max())
    return EigenCheck(worst, worst <= tol)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def line_label(pt: PhasePoint) -> PhasePoint:
    """Scale ``pt`` so its first nonzero coordinate is 1 (N prime).

    ``Q**j P**s`` and its unit powers share one eigenbasis, so the label is
    only defined up to such a scalar.
    """
    lead = pt.j if pt.j else pt.sigma
    if lead == 0:
        raise DomainError("the origin labels no basis")
    inv = pow(lead, -1, pt.n)
    return PhasePoint(pt.j * inv, pt.sigma * inv, pt.n)


@dataclass(frozen=True)
class ChainStep:
    """The arrow ``U``: vectors move by ``U^H``, labels by the right action of ``Phi(U)``.

    If ``M v = lam v`` then ``U^H v`` is an eigenvector of ``U^H M U``, whose
    coset is ``label @ Phi(U)``.
    """

    unitary: np.ndarray
    symplectic: SL2ZN

    def apply(self, b: LabeledBasis) -> LabeledBasis:
        vecs = self.unitary.conj().T @ b.vectors
        return LabeledBasis(b.n, line_label(sl2_act(b.label, self.symplectic)), vecs)


def chain_steps(n: int) -> list[ChainStep]:
    """Arrows ``S^-1`` then ``N-1`` copies of ``C_N2``."""
    s_inv = sylvester(n).conj().T
    c2 = step_position_matrix(n, CN2)
    first = ChainStep(s_inv, automorphism_to_sl2(s_inv))
    shear = ChainStep(c2, automorphism_to_sl2(c2))
    return [first] + [shear] * (n - 1)


def mub_chain(n: int) -> list[LabeledBasis]:
    """``B(0,1) -> B(1,0) -> B(1,1) -> ... -> B(1,N-1)`` for odd prime ``n``."""
    if n % 2 == 0 or not _is_prime(n):
        raise DomainError(f"n must be an odd prime, got {n}")
    bases = [momentum_basis(n)]
    for step in chain_steps(n):
        bases.append(step.apply(bases[-1]))
    return bases


def pairwise_unbiasedness(bases, tol: float = MUB_TOL) -> list[tuple[int, int, Unbiasedness]]:
    return [
        (i, j, unbiasedness(bases[i], bases[j], tol))
        for i in range(len(bases))
        for j in range(i + 1, len(bases))
    ]
