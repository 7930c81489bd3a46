"""Quadrature rules: Gauss-Legendre (single and composite) and the periodic
trapezoid rule on [0, 2*pi].
"""
from dataclasses import dataclass

import numpy as np

from .errors import IntegrandNotFinite, InvalidInterval, ValidationError

NEWTON_TOL = 1e-15
DEFAULT_ORDER = 8


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValidationError("nodes and weights must be 1-D and of equal length")
        if np.any(weights <= 0):
            raise ValidationError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.nodes)


def _legendre_and_derivative(n, x):
    p0, p1 = np.ones_like(x), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    # P_n' from the standard recurrence; x is never +-1 at the roots
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def gauss_legendre(n, a=-1.0, b=1.0):
    """n-point Gauss-Legendre rule on [a, b], exact to degree 2n-1.

    Roots of P_n are found by Newton's method from the Chebyshev-like
    initial guess ``cos(pi (i - 1/4) / (n + 1/2))``.
    """
    if n < 1:
        raise ValidationError(f"need at least one node, got n={n}")
    if not a < b:
        raise InvalidInterval(f"interval [{a}, {b}] is empty or reversed")
    if n == 1:
        x = np.zeros(1)
        w = np.full(1, 2.0)
    else:
        i = np.arange(1, n + 1)
        x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
        for _ in range(100):
            p, dp = _legendre_and_derivative(n, x)
            dx = p / dp
            x = x - dx
            if np.max(np.abs(dx)) <= NEWTON_TOL:
                break
        _, dp = _legendre_and_derivative(n, x)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        x, w = x[::-1], w[::-1]
        # enforce exact symmetry of the reference rule
        x = 0.5 * (x - x[::-1])
        w = 0.5 * (w + w[::-1])
    half = 0.5 * (b - a)
    return QuadratureRule(a + half * (x + 1.0), half * w, a, b)


def composite_gauss(order, panels, a=0.0, b=1.0):
    """Gauss-Legendre rule of the given order on each of ``panels`` equal
    subintervals of [a, b]."""
    if panels < 1:
        raise ValidationError(f"need at least one panel, got {panels}")
    if not a < b:
        raise InvalidInterval(f"interval [{a}, {b}] is empty or reversed")
    edges = np.linspace(a, b, panels + 1)
    ref = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    nodes = (edges[:-1, None] + half[:, None] * (ref.nodes[None, :] + 1.0)).ravel()
    weights = (half[:, None] * ref.weights[None, :]).ravel()
    return QuadratureRule(nodes, weights, a, b)


def default_rule(dim, a=0.0, b=1.0):
    """Composite order-8 Gauss rule with ``4 * dim`` panels."""
    return composite_gauss(DEFAULT_ORDER, 4 * max(int(dim), 1), a, b)


def periodic_trapezoid(n):
    """Equal-weight rule on nodes ``2 pi k / n``; exact for ``e^{i k x}``
    with ``|k| <= n - 1``."""
    if n < 1:
        raise ValidationError(f"need at least one node, got n={n}")
    nodes = 2.0 * np.pi * np.arange(n) / n
    return QuadratureRule(nodes, np.full(n, 2.0 * np.pi / n), 0.0, 2.0 * np.pi)


def integrate(f, rule):
    """Apply ``rule`` to ``f``; ``f`` is called once on the node array."""
    values = np.asarray(f(rule.nodes))
    if values.shape == ():
        values = np.full(len(rule), values[()])
    if not np.all(np.isfinite(values)):
        raise IntegrandNotFinite("integrand is not finite at some quadrature node")
    return rule.weights @ values
