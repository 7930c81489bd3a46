"""Galerkin schemes for Fredholm integral equations.

Second kind, ``lam u(x) - int_0^{2pi} k(x, y) u(y) dy = f(x)``, is solved in
the span of ``e^{i j x}``, ``|j| <= n``. First kind is represented by the
``wing`` test problem (kernel ``y exp(-x y^2)``, indicator solution), whose
generator follows the widely used MATLAB routine operation for operation.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .basis import BasisFamily, Kind
from .bvp import CoefficientVector, GalerkinSystem
from .errors import (BreakpointOrder, QuadratureTooCoarse, SingularMatrix,
                     ValidationError)
from .linalg import cond2, lu_solve, svd, tsvd_solve
from .quadrature import periodic_trapezoid

TWO_PI = 2.0 * np.pi
PERIODICITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SecondKindProblem:
    lam: complex
    kernel: Callable
    rhs: Callable
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"truncation order must be >= 1, got {self.n}")
        if self.lam == 0:
            raise ValidationError("lambda = 0 gives a first-kind equation")
        probe = np.linspace(0.0, TWO_PI, 7)
        zero, period = np.zeros_like(probe), np.full_like(probe, TWO_PI)
        gaps = [
            np.asarray(self.rhs(zero)) - np.asarray(self.rhs(period)),
            np.asarray(self.kernel(zero, probe)) - np.asarray(self.kernel(period, probe)),
            np.asarray(self.kernel(probe, zero)) - np.asarray(self.kernel(probe, period)),
        ]
        if max(np.max(np.abs(g)) for g in gaps) > PERIODICITY_TOL:
            raise ValidationError("kernel and right-hand side must be 2*pi-periodic")

    @property
    def family(self):
        return BasisFamily(Kind.COMPLEX_EXPONENTIAL, self.n)


def _modes(n):
    return np.arange(-n, n + 1)


def _default_rule(n):
    return periodic_trapezoid(4 * (2 * n + 1))


def _check_rule(rule, n):
    if len(rule) < 2 * n + 2:
        raise QuadratureTooCoarse(
            f"{len(rule)} nodes cannot resolve modes up to {n}; need >= {2 * n + 2}")


def assemble_second_kind(p: SecondKindProblem, rule=None):
    """Complex Galerkin system for the modes ``-n..n``.

    Entry ``(kappa, j)`` is ``2 pi lam delta - iint e^{i(j y - kappa x)} k dy dx``
    and the load is ``int e^{-i kappa x} f dx``; both use the tensor product
    of the periodic trapezoid rule.
    """
    n = p.n
    rule = rule if rule is not None else _default_rule(n)
    _check_rule(rule, n)
    x, w = rule.nodes, rule.weights
    modes = _modes(n)
    E = np.exp(-1j * np.outer(modes, x))          # e^{-i kappa x_a}
    K = np.asarray(p.kernel(x[:, None], x[None, :]), dtype=complex) * np.ones((len(x), len(x)))
    Kmat = (E * w) @ K @ (E.conj() * w).T
    A = TWO_PI * p.lam * np.eye(len(modes)) - Kmat
    f = np.asarray(p.rhs(x), dtype=complex) * np.ones(len(x))
    b = (E * w) @ f
    return GalerkinSystem(A, b, p.family)


def solve_second_kind(p: SecondKindProblem, rule=None):
    """Solve for ``u_n = sum c_j e^{i j x}``.

    Raises :class:`SingularMatrix` when ``lam`` sits (numerically) in the
    spectrum of the discretised operator.
    """
    system = assemble_second_kind(p, rule)
    return CoefficientVector(lu_solve(system.A, system.b), system.family)


def mode(c: CoefficientVector, j):
    """Coefficient of ``e^{i j x}``."""
    return c.xi[c.family.position(j)]


def projection_coefficients(u, n, rule=None):
    """Fourier coefficients ``(u, e^{i j x}) / (2 pi)`` for ``j = -n..n``."""
    if n < 1:
        raise ValidationError(f"truncation order must be >= 1, got {n}")
    rule = rule if rule is not None else _default_rule(n)
    _check_rule(rule, n)
    x = rule.nodes
    vals = np.asarray(u(x), dtype=complex) * np.ones(len(x))
    c = (np.exp(-1j * np.outer(_modes(n), x)) * rule.weights) @ vals / TWO_PI
    return CoefficientVector(c, BasisFamily(Kind.COMPLEX_EXPONENTIAL, n))


def apply_kernel(kernel, u, rule):
    """Return ``x -> int k(x, y) u(y) dy`` discretised on ``rule``."""
    y, w = rule.nodes, rule.weights
    uy = np.asarray(u(y), dtype=complex) * np.ones(len(y))

    def Ku(x):
        x = np.asarray(x, dtype=float)
        k = np.asarray(kernel(x[..., None], y), dtype=complex)
        return (k * (w * uy)).sum(axis=-1)

    return Ku


def residual(p: SecondKindProblem, u, rule=None):
    """The residual ``r_n = (lam - K) u_n - f`` as a callable."""
    rule = rule if rule is not None else periodic_trapezoid(8 * (2 * p.n + 1))
    Ku = apply_kernel(p.kernel, u, rule)
    return lambda x: p.lam * u(x) - Ku(x) - p.rhs(np.asarray(x, dtype=float))


def manufactured_rhs(kernel, lam, u_exact, rule):
    """``f = lam u* - K u*`` with the integral done on ``rule``."""
    Ku = apply_kernel(kernel, u_exact, rule)
    return lambda x: lam * u_exact(np.asarray(x, dtype=float)) - Ku(x)


# --- first kind: the wing test problem ------------------------------------

@dataclass(frozen=True)
class WingProblem:
    n: int
    t1: float = 1.0 / 3.0
    t2: float = 2.0 / 3.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n}")
        if self.t1 > self.t2 or self.t1 == self.t2:
            raise BreakpointOrder("t1 must be smaller than t2")
        if not 0.0 < self.t1 < self.t2 < 1.0:
            raise ValidationError("breakpoints must satisfy 0 < t1 < t2 < 1")

    @property
    def h(self):
        return 1.0 / self.n

    @property
    def sti(self):
        return (np.arange(1, self.n + 1) - 0.5) * self.h


def _libm_exp(a):
    # scalar libm exp: results do not depend on numpy's SIMD dispatch
    a = np.asarray(a, dtype=float)
    return np.array([math.exp(v) for v in a.ravel()]).reshape(a.shape)


def wing_generate(w: WingProblem):
    """Matrix, right-hand side and exact solution of the wing problem.

    Evaluation order follows the reference routine::

        A(i,:) = h*sti.*exp(-sti(i)*sti.^2)
        b = sqrt(h)*0.5*(exp(-sti*t1^2)' - exp(-sti*t2^2)')./sti'
        x(I) = sqrt(h)  for t1 < sti < t2

    The subtraction in ``b`` cancels, so b carries up to ~1e-14 relative
    error for large n; it is kept as written for comparability.
    """
    n, h, t1, t2 = w.n, w.h, w.t1, w.t2
    sti = (np.arange(1, n + 1) - 0.5) * h
    A = np.zeros((n, n))
    for i in range(n):
        A[i, :] = h * sti * _libm_exp(-sti[i] * sti ** 2)
    b = np.sqrt(h) * 0.5 * (_libm_exp(-sti * t1 ** 2) - _libm_exp(-sti * t2 ** 2)) / sti
    x = np.zeros(n)
    x[(t1 < sti) & (sti < t2)] = np.sqrt(h)
    return A, b, x


def wing_g(x, y1, y2):
    """``g(x) = int_{y1}^{y2} y exp(-x y^2) dy`` for scalar ``x >= 0``.

    At ``x = 0`` this is ``(y2^2 - y1^2)/2``, which equals ``(y2 - y1)/2``
    only when ``y1 + y2 = 1`` (as for the default breakpoints).
    """
    if not y1 < y2:
        raise BreakpointOrder("y1 must be smaller than y2")
    if x < 0:
        raise ValidationError(f"x must be >= 0, got {x}")
    if x == 0:
        return 0.5 * (y2 * y2 - y1 * y1)
    # expm1 form avoids cancellation for small x
    return -math.exp(-x * y1 ** 2) * math.expm1(-x * (y2 * y2 - y1 * y1)) / (2.0 * x)


@dataclass(frozen=True)
class WingReport:
    n: int
    cond2: float
    naive_err: float
    tsvd_k: int
    tsvd_err: float
    naive_failure: Optional[str] = None


def _rel_err(x, x_exact):
    return float(np.linalg.norm(x - x_exact) / np.linalg.norm(x_exact))


def tsvd_sweep(w: WingProblem):
    """Relative TSVD error against the exact solution for ``k = 1..n``."""
    A, b, x = wing_generate(w)
    factors = svd(A)
    return [(k, _rel_err(tsvd_solve(A, b, k, factors), x)) for k in range(1, w.n + 1)]


def best_truncation(w: WingProblem):
    """Truncation with the smallest error against the known solution."""
    return min(tsvd_sweep(w), key=lambda kv: kv[1])[0]


def wing_solve_naive_vs_tsvd(w: WingProblem, k=None):
    """Compare an unregularised LU solve with truncated SVD.

    ``k=None`` picks the truncation by sweeping against the exact solution,
    which is available for this test problem. A singular LU solve is recorded
    as an infinite error rather than raised.
    """
    A, b, x = wing_generate(w)
    if not np.any(x):
        raise ValidationError("no midpoint lies in (t1, t2); exact solution is zero")
    try:
        naive_err, failure = _rel_err(lu_solve(A, b), x), None
    except SingularMatrix as exc:
        naive_err, failure = math.inf, str(exc)
    k = best_truncation(w) if k is None else k
    return WingReport(w.n, cond2(A), naive_err, k, _rel_err(tsvd_solve(A, b, k), x), failure)
