"""Univariate Bernstein bases and operators on general intervals.

Everything here is a pure function of its inputs; basis rows are computed
in log space (log-gamma) so that degrees up to a few hundred evaluate
without intermediate overflow or underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln

__all__ = [
    "Interval",
    "UNIT_INTERVAL",
    "Transform1D",
    "TransformDiagnostics",
    "basis_classical",
    "basis_row",
    "basis_rows",
    "basis_shifted",
    "basis_shifted_row",
    "basis_shifted_derivative",
    "basis_argmax",
    "bernstein",
    "bernstein_shifted",
    "c_tau",
    "c_tau_shifted",
    "validate_transform",
]

_EPS = 1e-12


@dataclass(frozen=True)
class Interval:
    """Closed interval [alpha, beta] with alpha < beta, both finite."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("interval endpoints must be finite")
        if not self.alpha < self.beta:
            raise ValueError(f"need alpha < beta, got [{self.alpha}, {self.beta}]")

    @property
    def width(self) -> float:
        return self.beta - self.alpha

    def contains(self, x: float, tol: float = _EPS) -> bool:
        return self.alpha - tol <= x <= self.beta + tol

    def to_unit(self, x) -> float:
        """Affine map of the interval onto [0, 1]."""
        return (x - self.alpha) / self.width

    def from_unit(self, s) -> float:
        return self.width * s + self.alpha


UNIT_INTERVAL = Interval(0.0, 1.0)


def _check_unit(x: float) -> float:
    if not -_EPS <= x <= 1.0 + _EPS:
        raise ValueError(f"argument {x} outside [0, 1]")
    return min(max(x, 0.0), 1.0)


def _log_binomial(n: int, k) -> float:
    return gammaln(n + 1) - gammaln(np.asarray(k) + 1) - gammaln(n - np.asarray(k) + 1)


def basis_classical(n: int, k: int, x: float) -> float:
    """Degree-n Bernstein basis polynomial C(n,k) x^k (1-x)^(n-k) on [0, 1].

    Uses the 0^0 = 1 convention at the endpoints.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if not 0 <= k <= n:
        raise ValueError(f"basis index {k} out of range [0, {n}]")
    x = _check_unit(x)
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    if x == 1.0:
        return 1.0 if k == n else 0.0
    return float(
        math.exp(_log_binomial(n, k) + k * math.log(x) + (n - k) * math.log1p(-x))
    )


def basis_row(n: int, x: float) -> np.ndarray:
    """All n+1 Bernstein basis values at x, stable for n up to ~400."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = _check_unit(x)
    row = np.zeros(n + 1)
    if x == 0.0:
        row[0] = 1.0
    elif x == 1.0:
        row[n] = 1.0
    else:
        k = np.arange(n + 1)
        row[:] = np.exp(_log_binomial(n, k) + k * math.log(x) + (n - k) * math.log1p(-x))
    return row


def basis_rows(n: int, xs: np.ndarray) -> np.ndarray:
    """Vectorized basis rows: shape (len(xs), n+1); xs must lie in [0, 1]."""
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < -_EPS) or np.any(xs > 1.0 + _EPS):
        raise ValueError("arguments outside [0, 1]")
    xs = np.clip(xs, 0.0, 1.0)
    out = np.zeros((xs.size, n + 1))
    k = np.arange(n + 1)
    logc = _log_binomial(n, k)
    interior = (xs > 0.0) & (xs < 1.0)
    if np.any(interior):
        xi = xs[interior, None]
        out[interior] = np.exp(logc + k * np.log(xi) + (n - k) * np.log1p(-xi))
    out[xs == 0.0, 0] = 1.0
    out[xs == 1.0, n] = 1.0
    return out


def basis_shifted(n: int, k: int, x: float, iv: Interval) -> float:
    """Bernstein basis transported to iv by the affine change of variable."""
    if not iv.contains(x):
        raise ValueError(f"{x} outside [{iv.alpha}, {iv.beta}]")
    return basis_classical(n, k, iv.to_unit(x))


def basis_shifted_row(n: int, x: float, iv: Interval) -> np.ndarray:
    if not iv.contains(x):
        raise ValueError(f"{x} outside [{iv.alpha}, {iv.beta}]")
    return basis_row(n, iv.to_unit(x))


def basis_shifted_derivative(n: int, k: int, x: float, iv: Interval) -> float:
    """d/dx of the shifted basis via the degree-lowering recurrence."""
    if n == 0:
        return 0.0
    left = basis_shifted(n - 1, k - 1, x, iv) if k - 1 >= 0 else 0.0
    right = basis_shifted(n - 1, k, x, iv) if k <= n - 1 else 0.0
    return n * (left - right) / iv.width


def basis_argmax(n: int, k: int, iv: Interval) -> tuple[float, float]:
    """Location and value of the unique maximum of the shifted basis member."""
    if n < 1:
        raise ValueError("degree-0 basis has no unique maximum")
    if not 0 <= k <= n:
        raise ValueError(f"basis index {k} out of range [0, {n}]")
    location = iv.width * k / n + iv.alpha
    if k == 0 or k == n:
        value = 1.0
    else:
        value = math.exp(
            _log_binomial(n, k)
            + k * math.log(k / n)
            + (n - k) * math.log((n - k) / n)
        )
    return location, float(value)


def bernstein(f: Callable[[float], float], n: int, x: float) -> float:
    """Classical Bernstein operator of f on [0, 1] evaluated at x.

    n = 0 uses the single-node convention: the constant f(0).
    """
    if n == 0:
        _check_unit(x)
        return float(f(0.0))
    nodes = np.arange(n + 1) / n
    fvals = np.array([f(t) for t in nodes])
    return float(basis_row(n, x) @ fvals)


def bernstein_shifted(f: Callable[[float], float], n: int, x: float, iv: Interval) -> float:
    """Bernstein operator of f on iv, nodes equally spaced over iv."""
    if n == 0:
        if not iv.contains(x):
            raise ValueError(f"{x} outside [{iv.alpha}, {iv.beta}]")
        return float(f(iv.alpha))
    nodes = iv.from_unit(np.arange(n + 1) / n)
    fvals = np.array([f(t) for t in nodes])
    return float(basis_shifted_row(n, x, iv) @ fvals)


@dataclass(frozen=True)
class TransformDiagnostics:
    """Sampled validation of an endpoint-fixing monotone reparameterization."""

    endpoint_residuals: tuple[float, float]
    min_forward_difference: float
    max_roundtrip_error: float

    @property
    def passed(self) -> bool:
        return (
            max(abs(r) for r in self.endpoint_residuals) <= 1e-12
            and self.min_forward_difference > 0.0
            and self.max_roundtrip_error <= 1e-10
        )


@dataclass(eq=False)
class Transform1D:
    """A strictly increasing reparameterization of an interval that fixes
    both endpoints, supplied with its closed-form inverse.
    """

    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    domain: Interval = UNIT_INTERVAL
    _diagnostics: TransformDiagnostics | None = field(default=None, repr=False)

    def validate(self, grid_size: int = 1024) -> TransformDiagnostics:
        diag = validate_transform(self, self.domain, grid_size)
        self._diagnostics = diag
        return diag

    def require_valid(self):
        if self._diagnostics is None:
            self.validate()
        if not self._diagnostics.passed:
            raise ValueError(f"invalid transform: {self._diagnostics}")


def identity_transform(iv: Interval = UNIT_INTERVAL) -> Transform1D:
    return Transform1D(lambda x: x, lambda x: x, iv)


def validate_transform(tau: Transform1D, iv: Interval, grid_size: int = 1024) -> TransformDiagnostics:
    """Check endpoint fixing, monotonicity, and inverse round-trip on a grid."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    xs = np.linspace(iv.alpha, iv.beta, grid_size)
    fx = np.array([tau.forward(x) for x in xs])
    residuals = (float(fx[0] - iv.alpha), float(fx[-1] - iv.beta))
    min_diff = float(np.min(np.diff(fx)))
    # round-trip only where forward stays inside the interval
    inside = np.clip(fx, iv.alpha, iv.beta)
    roundtrip = np.array([tau.inverse(v) for v in inside])
    max_rt = float(np.max(np.abs(roundtrip - xs))) if min_diff > 0 else math.inf
    return TransformDiagnostics(residuals, min_diff, max_rt)


def c_tau(f: Callable[[float], float], tau: Transform1D, n: int, x: float) -> float:
    """Bernstein operator conjugated by tau on [0, 1]: nodes are pulled back
    through the inverse and the basis is evaluated at tau(x).
    """
    tau.require_valid()
    if n == 0:
        _check_unit(x)
        return float(f(tau.inverse(0.0)))
    nodes = np.arange(n + 1) / n
    fvals = np.array([f(tau.inverse(t)) for t in nodes])
    return float(basis_row(n, _check_unit(tau.forward(x))) @ fvals)


def c_tau_shifted(
    f: Callable[[float], float], tau: Transform1D, n: int, x: float, iv: Interval
) -> float:
    """Shifted variant of c_tau on an arbitrary interval."""
    tau.require_valid()
    if n == 0:
        if not iv.contains(x):
            raise ValueError(f"{x} outside [{iv.alpha}, {iv.beta}]")
        return float(f(tau.inverse(iv.alpha)))
    nodes = iv.from_unit(np.arange(n + 1) / n)
    fvals = np.array([f(tau.inverse(t)) for t in nodes])
    return float(basis_shifted_row(n, tau.forward(x), iv) @ fvals)
