"""Bipartite entanglement entropy of Gaussian ground states.

The states considered are psi(x) proportional to exp(-x^T M x / 2) with M a
symmetric positive definite exponent matrix over the network coordinates.
Two conventions relate M to the potential matrix V = I + 2 g L:

* ``literal-v``: M = V (the exponent is used exactly as written),
* ``sqrt-v``:    M = V**(1/2) (the ground-state exponent of the Hamiltonian
  with potential V).

For a bipartition (A, B) of the coordinates, local rescalings and rotations
bring M to paired two-coordinate form; the pairing strengths are the singular
values gamma_i of

    Gamma = M_AA^{-1/2}  M_AB  M_BB^{-1/2},

all strictly below 1 when M is positive definite.  Each gamma carries

    nu      = 1 / sqrt(1 - gamma**2)              (>= 1),
    lambda_n = sqrt(2/(nu+1)) ((nu-1)/(nu+1))**(n/2)   (Schmidt coefficients),
    S(nu)   = ((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2),

and the total entanglement entropy is the degeneracy-weighted sum of the
per-mode entropies.  ``mehler_check`` validates the two-coordinate Schmidt
expansion directly on a grid via the Hermite-function kernel identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NumericalError, ValidationError

LITERAL_V = "literal-v"
SQRT_V = "sqrt-v"
CONVENTIONS = (LITERAL_V, SQRT_V)

#: Relative tolerance used to group coinciding gamma values into degenerate
#: modes.  Grouping is cosmetic: totals are computed from the grouped means,
#: and values that differ by more than machine-level noise are never merged.
GAMMA_DEGENERACY_RTOL = 1e-9


def _log_scale(log_base) -> float:
    """Factor converting entropy in nats to the requested log base."""
    if log_base in (2, "2"):
        return 1.0 / math.log(2.0)
    if log_base in ("e", None) or log_base == math.e:
        return 1.0
    raise ValidationError(f"log base must be 2 or 'e', got {log_base!r}")


def log_base_label(log_base) -> str:
    """Canonical label ('2' or 'e') for a supported log base."""
    return "2" if _log_scale(log_base) != 1.0 else "e"


@dataclass(frozen=True)
class Bipartition:
    """Proper bipartition of vertices 0..total-1 into part_a and the rest."""

    part_a: tuple[int, ...]
    total: int

    def __post_init__(self):
        if self.total < 2:
            raise ValidationError("a bipartition needs at least two vertices")
        idx = self.part_a
        if len(idx) == 0:
            raise ValidationError("part_a must be nonempty")
        if len(idx) >= self.total:
            raise ValidationError("part_a must be a proper subset of the vertices")
        prev = -1
        for v in idx:
            if not isinstance(v, (int, np.integer)):
                raise ValidationError(f"vertex index {v!r} is not an integer")
            if v <= prev:
                raise ValidationError("part_a indices must be strictly increasing")
            prev = v
        if idx[-1] >= self.total:
            raise ValidationError(
                f"vertex index {idx[-1]} outside 0..{self.total - 1}"
            )

    @classmethod
    def of(cls, indices, total: int) -> "Bipartition":
        """Build from any iterable of indices; rejects duplicates."""
        idx = tuple(sorted(int(v) for v in indices))
        if len(set(idx)) != len(idx):
            raise ValidationError("part_a contains duplicate vertex indices")
        return cls(part_a=idx, total=total)

    @property
    def part_b(self) -> tuple[int, ...]:
        in_a = set(self.part_a)
        return tuple(v for v in range(self.total) if v not in in_a)

    def complement(self) -> "Bipartition":
        return Bipartition(part_a=self.part_b, total=self.total)


@dataclass(frozen=True)
class GammaSpectrum:
    """Per-mode correlation parameters: (gamma, degeneracy) pairs."""

    modes: tuple[tuple[float, int], ...]

    @classmethod
    def from_values(cls, values, rtol: float = GAMMA_DEGENERACY_RTOL) -> "GammaSpectrum":
        """Group a descending-sorted value sequence into degenerate modes."""
        vals = [float(v) for v in values]
        modes: list[tuple[float, int]] = []
        group: list[float] = []
        for v in vals:
            if group and abs(group[-1] - v) > rtol * max(1e-300, abs(group[-1]), abs(v)):
                modes.append((float(np.mean(group)), len(group)))
                group = []
            group.append(v)
        if group:
            modes.append((float(np.mean(group)), len(group)))
        return cls(modes=tuple(modes))

    def expanded(self) -> list[float]:
        """Gamma values with degeneracies expanded."""
        return [g for g, deg in self.modes for _ in range(deg)]

    @property
    def mode_count(self) -> int:
        return sum(deg for _, deg in self.modes)

    def require_physical(self) -> "GammaSpectrum":
        """Raise unless every |gamma| < 1 (normalizable reduced state)."""
        for g, _ in self.modes:
            if abs(g) >= 1.0:
                raise NumericalError(
                    f"mode parameter |gamma| = {abs(g)} >= 1: state is not "
                    "normalizable across this cut"
                )
        return self


def _require_symmetric(M: np.ndarray, what: str = "matrix") -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"{what} must be square, got shape {M.shape}")
    if not np.allclose(M, M.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(M).max()))):
        raise ValidationError(f"{what} must be symmetric")
    return 0.5 * (M + M.T)


def _spd_eigh(M: np.ndarray, what: str = "matrix") -> tuple[np.ndarray, np.ndarray]:
    w, U = np.linalg.eigh(M)
    if w[0] <= 1e-12 * max(w[-1], 0.0):
        raise NumericalError(
            f"{what} is not positive definite at working precision "
            f"(min eigenvalue {w[0]:.6g}, max {w[-1]:.6g})"
        )
    return w, U


def spd_sqrt(M: np.ndarray) -> np.ndarray:
    """Unique symmetric positive definite square root of an SPD matrix."""
    M = _require_symmetric(M)
    w, U = _spd_eigh(M)
    return (U * np.sqrt(w)) @ U.T


def _spd_inv_sqrt(M: np.ndarray, what: str) -> np.ndarray:
    w, U = _spd_eigh(M, what)
    return (U / np.sqrt(w)) @ U.T


def exponent_matrix(V: np.ndarray, convention: str = LITERAL_V) -> np.ndarray:
    """Ground-state exponent matrix for a potential matrix V."""
    if convention == LITERAL_V:
        return _require_symmetric(V, "potential matrix")
    if convention == SQRT_V:
        return spd_sqrt(V)
    raise ValidationError(
        f"unknown convention {convention!r}; expected one of {CONVENTIONS}"
    )


def gamma_spectrum(
    M: np.ndarray, p: Bipartition, cluster_tol: float = GAMMA_DEGENERACY_RTOL
) -> GammaSpectrum:
    """Singular values of M_AA^{-1/2} M_AB M_BB^{-1/2} with degeneracies.

    Returns min(|A|, |B|) values in descending order (zeros included), all
    strictly below 1 for positive definite M; values at or above 1 - 1e-12
    raise a NumericalError.
    """
    M = _require_symmetric(M, "exponent matrix")
    if p.total != M.shape[0]:
        raise ValidationError(
            f"bipartition is over {p.total} vertices but the matrix has {M.shape[0]}"
        )
    a = np.asarray(p.part_a, dtype=np.intp)
    b = np.asarray(p.part_b, dtype=np.intp)
    Maa = M[np.ix_(a, a)]
    Mbb = M[np.ix_(b, b)]
    Mab = M[np.ix_(a, b)]
    gamma = _spd_inv_sqrt(Maa, "part-A block") @ Mab @ _spd_inv_sqrt(Mbb, "part-B block")
    sing = np.linalg.svd(gamma, compute_uv=False)
    if sing.size and sing[0] >= 1.0 - 1e-12:
        raise NumericalError(
            f"largest mode parameter gamma = {sing[0]!r} reaches 1 at working "
            "precision; the reduced state is not normalizable"
        )
    return GammaSpectrum.from_values(sing, rtol=cluster_tol)


def nu_from_gamma(gamma: float) -> float:
    """Mode parameter nu = 1 / sqrt(1 - gamma**2) >= 1; needs |gamma| < 1."""
    g = float(gamma)
    if not abs(g) < 1.0:
        raise ValidationError(f"|gamma| must be < 1, got {g}")
    return 1.0 / math.sqrt((1.0 - g) * (1.0 + g))


def mode_entropy(nu: float, log_base=2) -> float:
    """Entropy of one Gaussian mode with parameter nu >= 1.

    S(nu) = ((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2), with the
    nu -> 1 limit equal to 0.  Monotone increasing in nu.
    """
    scale = _log_scale(log_base)
    nu = float(nu)
    if nu < 1.0:
        raise ValidationError(f"nu must be >= 1, got {nu}")
    hi = 0.5 * (nu + 1.0)
    lo = 0.5 * (nu - 1.0)
    s = hi * math.log(hi)
    if lo > 0.0:
        s -= lo * math.log(lo)
    return s * scale


@dataclass(frozen=True)
class ModeEntropy:
    gamma: float
    nu: float
    entropy: float
    degeneracy: int


@dataclass(frozen=True)
class EntropyResult:
    """Total bipartite entanglement entropy with its per-mode breakdown."""

    total_entropy: float
    per_mode: tuple[ModeEntropy, ...]
    log_base: str = "2"
    convention: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "convention": self.convention,
            "log_base": self.log_base,
            "total_entropy": self.total_entropy,
            "modes": [
                {
                    "gamma": m.gamma,
                    "nu": m.nu,
                    "entropy": m.entropy,
                    "degeneracy": m.degeneracy,
                }
                for m in self.per_mode
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["mode,gamma,nu,entropy,degeneracy"]
        for i, m in enumerate(self.per_mode, start=1):
            lines.append(f"{i},{m.gamma!r},{m.nu!r},{m.entropy!r},{m.degeneracy}")
        lines.append(f"TOTAL,,,{self.total_entropy!r},{self.mode_count}")
        return "\n".join(lines) + "\n"

    @property
    def mode_count(self) -> int:
        return sum(m.degeneracy for m in self.per_mode)


def entropy_from_gammas(
    spectrum: GammaSpectrum, log_base=2, convention: Optional[str] = None
) -> EntropyResult:
    """Per-mode nu and entropy for a physical gamma spectrum, with total."""
    spectrum.require_physical()
    per_mode = []
    total = 0.0
    for g, deg in spectrum.modes:
        nu = nu_from_gamma(g)
        s = mode_entropy(nu, log_base)
        per_mode.append(ModeEntropy(gamma=g, nu=nu, entropy=s, degeneracy=deg))
        total += deg * s
    return EntropyResult(
        total_entropy=total,
        per_mode=tuple(per_mode),
        log_base=log_base_label(log_base),
        convention=convention,
    )


def bipartite_entropy(
    M: np.ndarray,
    p: Bipartition,
    log_base=2,
    convention: Optional[str] = None,
    cluster_tol: float = GAMMA_DEGENERACY_RTOL,
) -> EntropyResult:
    """Entanglement entropy of exp(-x^T M x / 2) across the bipartition p.

    Symmetric under swapping the two parts.  The ``convention`` argument is
    recorded in the result for reporting; it does not alter the computation
    (M is already the exponent matrix).
    """
    spectrum = gamma_spectrum(M, p, cluster_tol=cluster_tol)
    return entropy_from_gammas(spectrum, log_base=log_base, convention=convention)


def schmidt_coefficients(nu: float, cutoff: int) -> tuple[np.ndarray, float]:
    """First ``cutoff`` Schmidt coefficients of a nu-mode, plus the tail.

    lambda_n = sqrt(2/(nu+1)) ((nu-1)/(nu+1))**(n/2) for n = 0..cutoff-1;
    the returned tail is the exact probability mass beyond the cutoff,
    sum_{n >= cutoff} lambda_n**2 = ((nu-1)/(nu+1))**cutoff, so that
    sum(lambda**2) + tail == 1.
    """
    nu = float(nu)
    if nu < 1.0:
        raise ValidationError(f"nu must be >= 1, got {nu}")
    if not (isinstance(cutoff, (int, np.integer)) and cutoff >= 1):
        raise ValidationError(f"cutoff must be a positive integer, got {cutoff!r}")
    ratio = (nu - 1.0) / (nu + 1.0)
    n = np.arange(cutoff)
    lambdas = math.sqrt(2.0 / (nu + 1.0)) * np.power(ratio, n / 2.0)
    tail = ratio**cutoff
    return lambdas, float(tail)


def hermite_functions(x: np.ndarray, count: int) -> np.ndarray:
    """Orthonormal Hermite functions psi_0..psi_{count-1} evaluated at x.

    Shape (count, len(x)).  Uses the numerically stable recurrence
    psi_0 = pi**(-1/4) exp(-x**2/2),
    psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((count,) + x.shape, dtype=np.float64)
    out[0] = math.pi**-0.25 * np.exp(-0.5 * x * x)
    if count > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(2, count):
        out[k] = math.sqrt(2.0 / k) * x * out[k - 1] - math.sqrt((k - 1) / k) * out[k - 2]
    return out


def mehler_check(gamma: float, cutoff: int = 60, grid: int = 41) -> float:
    """Max deviation of the truncated Schmidt expansion of the Gaussian kernel.

    Compares pi**(-1/2) exp(-(x**2 + y**2)/2 - gamma x y) against
    sum_n lambda_n t**n psi_n(x/sqrt(nu)) psi_n(y/sqrt(nu)) with
    t = -gamma nu / (nu + 1) (so t**2 = (nu-1)/(nu+1)) on a grid x grid
    lattice over [-4, 4]**2, and returns the maximum absolute error.  The
    truncation error decays geometrically as |t|**cutoff.
    """
    g = float(gamma)
    if not abs(g) < 1.0:
        raise ValidationError(f"|gamma| must be < 1, got {g}")
    if not (isinstance(cutoff, (int, np.integer)) and cutoff >= 1):
        raise ValidationError(f"cutoff must be a positive integer, got {cutoff!r}")
    if not (isinstance(grid, (int, np.integer)) and grid >= 2):
        raise ValidationError(f"grid must be an integer >= 2, got {grid!r}")
    nu = nu_from_gamma(g)
    t = -g * nu / (nu + 1.0)
    lam0 = math.sqrt(2.0 / (nu + 1.0))
    x = np.linspace(-4.0, 4.0, int(grid))
    lhs = math.pi**-0.5 * np.exp(
        -0.5 * (x[:, None] ** 2 + x[None, :] ** 2) - g * x[:, None] * x[None, :]
    )
    psi = hermite_functions(x / math.sqrt(nu), int(cutoff))
    weights = lam0 * np.power(t, np.arange(int(cutoff)))
    rhs = (psi * weights[:, None]).T @ psi
    return float(np.max(np.abs(lhs - rhs)))
