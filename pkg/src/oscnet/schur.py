"""Generalized Schur-complement elimination and tridiagonal chain reduction.

Eliminating a coordinate block E from a Gaussian exponent matrix M while
keeping the block K,

    M / E = M_KK - M_KE M_EE^{-1} M_EK,

is the exact marginalization of the eliminated coordinates: the reduced state
of the kept coordinates is Gaussian with exponent M / E.  For a symmetric
tridiagonal chain, eliminating coordinates one by one from an end collapses
to a scalar continued fraction; cutting a chain at a single bond therefore
reduces it to an effective 2 x 2 exponent (a11, a12, a22) whose normalized
cross coupling gamma = a12 / sqrt(a11 a22) fixes the entanglement across
the bond.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalError, ValidationError


def schur_eliminate(M: np.ndarray, keep) -> np.ndarray:
    """Eliminate the complement of ``keep`` from symmetric M.

    Returns M_KK - M_KE M_EE^{-1} M_EK over the kept indices in increasing
    order.  The eliminated block must be positive definite; for SPD M the
    result is again SPD.  Keeping everything returns a copy of M.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {M.shape}")
    n = M.shape[0]
    keep_idx = sorted({int(i) for i in keep})
    if keep_idx and (keep_idx[0] < 0 or keep_idx[-1] >= n):
        raise ValidationError(f"keep indices outside 0..{n - 1}")
    elim_idx = [i for i in range(n) if i not in set(keep_idx)]
    if not elim_idx:
        return M.copy()
    if not keep_idx:
        raise ValidationError("cannot eliminate every coordinate")
    k = np.asarray(keep_idx, dtype=np.intp)
    e = np.asarray(elim_idx, dtype=np.intp)
    Mee = M[np.ix_(e, e)]
    Mke = M[np.ix_(k, e)]
    Mkk = M[np.ix_(k, k)]
    try:
        cho = scipy.linalg.cho_factor(Mee, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eliminated block of size {len(e)} is not positive definite"
        ) from exc
    X = scipy.linalg.cho_solve(cho, Mke.T)
    R = Mkk - Mke @ X
    return 0.5 * (R + R.T)


def continued_fraction(x: float, alphas, omegas) -> float:
    """Evaluate x - a_k - w_{k-1}/(x - a_{k-1} - w_{k-2}/(... x - a_1)).

    ``alphas`` has length k and ``omegas`` length k - 1; the innermost level
    is x - alphas[0].  This equals the last diagonal pivot after eliminating
    coordinates 0..k-2 of the tridiagonal chain with diagonal x - alphas[i]
    and squared couplings omegas[i].  A zero intermediate denominator raises
    a NumericalError naming the depth.
    """
    alphas = [float(a) for a in alphas]
    omegas = [float(w) for w in omegas]
    if len(alphas) < 1:
        raise ValidationError("need at least one alpha")
    if len(omegas) != len(alphas) - 1:
        raise ValidationError(
            f"expected {len(alphas) - 1} omegas for {len(alphas)} alphas, "
            f"got {len(omegas)}"
        )
    x = float(x)
    value = x - alphas[0]
    for depth, (a, w) in enumerate(zip(alphas[1:], omegas), start=1):
        if value == 0.0:
            raise NumericalError(f"singular chain: zero denominator at depth {depth}")
        value = x - a - w / value
    return value


@dataclass(frozen=True)
class TridiagonalChain:
    """Symmetric tridiagonal matrix stored as (diag, offdiag)."""

    diag: tuple[float, ...]
    offdiag: tuple[float, ...]

    def __post_init__(self):
        if len(self.diag) < 1:
            raise ValidationError("chain needs at least one diagonal entry")
        if len(self.offdiag) != len(self.diag) - 1:
            raise ValidationError(
                f"expected {len(self.diag) - 1} off-diagonal entries, "
                f"got {len(self.offdiag)}"
            )

    @classmethod
    def of(cls, diag, offdiag) -> "TridiagonalChain":
        return cls(
            diag=tuple(float(v) for v in diag),
            offdiag=tuple(float(v) for v in offdiag),
        )

    @property
    def dim(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        M = np.diag(np.asarray(self.diag, dtype=np.float64))
        off = np.asarray(self.offdiag, dtype=np.float64)
        if off.size:
            idx = np.arange(off.size)
            M[idx, idx + 1] = off
            M[idx + 1, idx] = off
        return M

    def is_spd(self) -> bool:
        """Positive definiteness via the scalar elimination pivots."""
        pivot = self.diag[0]
        if pivot <= 0.0:
            return False
        for d, w in zip(self.diag[1:], self.offdiag):
            pivot = d - w * w / pivot
            if pivot <= 0.0:
                return False
        return True

    def scaled_shifted(self, scale: float, shift: float) -> "TridiagonalChain":
        """Chain with diagonal shift + scale*diag and off-diagonal scale*off."""
        return TridiagonalChain.of(
            [shift + scale * d for d in self.diag],
            [scale * w for w in self.offdiag],
        )


@dataclass(frozen=True)
class EffectiveTwoByTwo:
    """Reduced 2 x 2 exponent [[a11, a12], [a12, a22]] across one bond."""

    a11: float
    a12: float
    a22: float

    def __post_init__(self):
        if not (self.a11 > 0.0 and self.a22 > 0.0):
            raise ValidationError(
                f"diagonal entries must be positive, got a11={self.a11}, a22={self.a22}"
            )
        if not self.a12 * self.a12 < self.a11 * self.a22:
            raise ValidationError(
                f"need a12**2 < a11*a22 for a normalizable state, got "
                f"a12={self.a12}, a11={self.a11}, a22={self.a22}"
            )


def reduce_chain(chain: TridiagonalChain, split_at: int) -> EffectiveTwoByTwo:
    """Reduce an SPD chain cut between coordinates split_at-1 and split_at.

    Eliminates from both chain ends inward, leaving the two coordinates that
    face the cut.  The cross coupling a12 is the original bond coupling,
    untouched because the eliminated runs never border both kept coordinates.
    """
    if not 1 <= split_at <= chain.dim - 1:
        raise ValidationError(
            f"split_at must be within 1..{chain.dim - 1}, got {split_at}"
        )
    if not chain.is_spd():
        raise NumericalError("chain is not positive definite; cannot reduce")
    a11 = chain.diag[0]
    for i in range(1, split_at):
        a11 = chain.diag[i] - chain.offdiag[i - 1] ** 2 / a11
    a22 = chain.diag[chain.dim - 1]
    for i in range(chain.dim - 2, split_at - 1, -1):
        a22 = chain.diag[i] - chain.offdiag[i] ** 2 / a22
    return EffectiveTwoByTwo(a11=a11, a12=chain.offdiag[split_at - 1], a22=a22)


def gamma_scalar(e: EffectiveTwoByTwo) -> float:
    """Normalized cross coupling gamma = a12 / sqrt(a11 a22), |gamma| < 1."""
    return e.a12 / np.sqrt(e.a11 * e.a22)
