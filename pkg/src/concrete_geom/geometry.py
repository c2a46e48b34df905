"""Fisher information, hyperbolic structure and Fisher-Rao distances.

The information metric of the Concrete family is hyperbolic space of
curvature -1/ell^2; the parameter map to Poincare half-space coordinates
(eta_1, ..., eta_{K-1}, eta_K = 1/tau) makes the metric conformal to
Euclidean space, which is what the finite-difference pullback oracle
verifies.
"""

import math
from dataclasses import dataclass

import numpy as np

from .distributions import ConcreteParams
from .errors import (
    DimMismatch,
    DomainError,
    NotNormalized,
)
from .simplex import _softmax

PI_SQ_OVER_6 = math.pi**2 / 6


def curvature_length(k: int) -> float:
    """Curvature length ell(K) = sqrt((K-1)(K pi^2/6 + 1)/(K+1))."""
    k = int(k)
    if k < 2:
        raise DomainError("k must be at least 2")
    return math.sqrt((k - 1) * (k * PI_SQ_OVER_6 + 1.0) / (k + 1))


@dataclass(frozen=True)
class FisherFull:
    """Degenerate (K+1)x(K+1) information matrix over (beta_1..beta_K, tau).

    The scale-gauge direction (beta, 0) lies in the null space.
    """

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class FisherReduced:
    """Positive-definite KxK information matrix over (beta_1..beta_{K-1}, tau).

    beta is taken in the canonical gauge sum(beta) = 1 with fill-up beta_K.
    """

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PoincarePoint:
    """Half-space coordinates (eta_1..eta_{K-1}, eta_K = 1/tau) with length ell."""

    eta: np.ndarray
    eta_k: float
    ell: float

    def __post_init__(self):
        eta = np.array(self.eta, dtype=float)
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)
        if not math.isfinite(self.eta_k) or self.eta_k <= 0.0:
            raise DomainError("eta_K must be positive and finite")

    @property
    def ambient_dim(self) -> int:
        return self.eta.size + 1

    def as_vector(self) -> np.ndarray:
        return np.append(self.eta, self.eta_k)


@dataclass(frozen=True)
class DistanceResult:
    """Fisher-Rao distance together with the Delta vector entering the formula."""

    value: float
    delta: np.ndarray


def fisher_full(p: ConcreteParams) -> FisherFull:
    """Closed-form information matrix in the redundant (beta, tau) coordinates."""
    k = p.dim
    beta = p.beta.weights
    lb = p.beta.log
    tau = p.tau
    mat = np.empty((k + 1, k + 1))

    diff = lb[:, None] - lb[None, :]
    spread = 0.5 * float(np.sum(diff**2))
    mat[k, k] = ((k - 1) * (k * PI_SQ_OVER_6 + 1.0) + spread) / ((k + 1) * tau**2)

    sum_lb = float(np.sum(lb))
    for i in range(k):
        mat[i, k] = mat[k, i] = (sum_lb - k * lb[i]) / ((k + 1) * tau * beta[i])

    kron = np.eye(k)
    mat[:k, :k] = (k * kron - 1.0) / ((k + 1) * np.outer(beta, beta))
    return FisherFull(mat)


def fisher_reduced(p: ConcreteParams) -> FisherReduced:
    """Closed-form KxK information matrix in canonical gauge with fill-up beta_K."""
    k = p.dim
    beta = p.normalized_beta()
    lb = np.log(beta)
    tau = p.tau
    mat = np.empty((k, k))

    diff = lb[:, None] - lb[None, :]
    spread = 0.5 * float(np.sum(diff**2))
    mat[k - 1, k - 1] = ((k - 1) * (k * PI_SQ_OVER_6 + 1.0) + spread) / ((k + 1) * tau**2)

    sum_lb = float(np.sum(lb))
    bk = beta[k - 1]
    for i in range(k - 1):
        mat[i, k - 1] = mat[k - 1, i] = (
            (sum_lb - k * lb[i]) / beta[i] - (sum_lb - k * lb[k - 1]) / bk
        ) / ((k + 1) * tau)

    for i in range(k - 1):
        for j in range(k - 1):
            mat[i, j] = (
                (k * (1.0 if i == j else 0.0) - 1.0) / (beta[i] * beta[j])
                + 1.0 / (beta[i] * bk)
                + 1.0 / (beta[j] * bk)
                + (k - 1) / bk**2
            ) / (k + 1)
    return FisherReduced(mat)


def _xi_from_eta(eta: np.ndarray, k: int) -> np.ndarray:
    rk = math.sqrt(k)
    rk1 = math.sqrt(k + 1)
    return rk1 * eta / rk + rk1 * float(np.sum(eta)) / (rk * (rk + 1.0))


def _eta_from_xi(xi: np.ndarray, k: int) -> np.ndarray:
    rk = math.sqrt(k)
    rk1 = math.sqrt(k + 1)
    return rk * xi / rk1 - float(np.sum(xi)) / (rk1 * (rk + 1.0))


def to_poincare(p: ConcreteParams) -> PoincarePoint:
    """Map (beta, tau) to Poincare half-space coordinates."""
    k = p.dim
    ell = curvature_length(k)
    lb = p.beta.log
    xi = (lb[:-1] - lb[-1]) / (ell * p.tau)
    return PoincarePoint(eta=_eta_from_xi(xi, k), eta_k=1.0 / p.tau, ell=ell)


def from_poincare(q: PoincarePoint) -> ConcreteParams:
    """Invert :func:`to_poincare`; beta is returned in canonical gauge."""
    k = q.ambient_dim
    ell = curvature_length(k)
    tau = 1.0 / q.eta_k
    xi = _xi_from_eta(np.asarray(q.eta, float), k)
    log_ratios = np.append(ell * tau * xi, 0.0)
    return ConcreteParams(beta=_softmax(log_ratios), tau=tau)


def half_space_distance(q1: PoincarePoint, q2: PoincarePoint) -> float:
    """Geodesic distance ell * d_H between two half-space points."""
    if q1.ambient_dim != q2.ambient_dim:
        raise DimMismatch("Poincare points have different ambient dimensions")
    diff = q1.as_vector() - q2.as_vector()
    arg = float(np.linalg.norm(diff)) / (2.0 * math.sqrt(q1.eta_k * q2.eta_k))
    return q1.ell * 2.0 * math.asinh(arg)


def fr_distance(p: ConcreteParams, q: ConcreteParams) -> DistanceResult:
    """Fisher-Rao geodesic distance between two Concrete distributions."""
    if p.dim != q.dim:
        raise DimMismatch("distributions have different dimensions")
    k = p.dim
    ell = curvature_length(k)
    lb = np.log(p.normalized_beta())
    lb2 = np.log(q.normalized_beta())
    r = math.sqrt(q.tau / p.tau)
    delta = r * lb - lb2 / r
    diff = delta[:, None] - delta[None, :]
    double_sum = float(np.sum(diff**2))
    inner = (r - 1.0 / r) ** 2 + double_sum / (2.0 * (k + 1) * ell**2)
    inner = max(inner, 0.0)
    value = 2.0 * ell * math.asinh(0.5 * math.sqrt(inner))
    return DistanceResult(value=value, delta=delta)


def categorical_fr_distance(b, b2) -> float:
    """Fisher-Rao distance 2 arccos(sum sqrt(b_i b'_i)) between categoricals."""
    b = np.asarray(b, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    if b.shape != b2.shape:
        raise DimMismatch("probability vectors have different shapes")
    if np.any(b < 0.0) or np.any(b2 < 0.0):
        raise NotNormalized("probability vectors must be nonnegative")
    for v in (b, b2):
        if abs(float(np.sum(v)) - 1.0) > 1e-9:
            raise NotNormalized(f"vector sums to {float(np.sum(v))!r}, not 1")
    arg = float(np.sum(np.sqrt(b * b2)))
    arg = min(1.0, max(-1.0, arg))
    return 2.0 * math.acos(arg)
