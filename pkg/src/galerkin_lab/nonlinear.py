"""Galerkin solver for ``-u'' - lam u + u^3 = f`` on (0, 1), ``u = 0`` at the ends.

The trial space is spanned by ``w_j = sqrt(2)/(j pi) sin(j pi x)``, which is
orthonormal for ``(u, v) -> int u' v'``. Hence the stiffness term of the
discrete system is the identity and ``|v|_1 = |xi|`` for ``v = sum xi_j w_j``.
The discrete equations ``F(xi) = 0`` are solved by damped Newton from
``xi = 0``.
"""
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .basis import BasisFamily, Kind, vandermonde
from .errors import (IntegrandNotFinite, LambdaTooLarge, NoConvergence,
                     ValidationError)
from .linalg import lu_solve
from .quadrature import default_rule, integrate

LAMBDA1 = np.pi ** 2
TOL = 1e-12
MAX_ITERS = 100
MAX_HALVINGS = 30


@dataclass(frozen=True, eq=False)
class NonlinearProblem:
    lam: float
    f: Callable
    m: int

    lambda1 = LAMBDA1

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValidationError(f"subspace dimension must be >= 1, got {self.m}")

    @property
    def guaranteed(self):
        """True when ``lam < lambda1``, the regime with a unique solution."""
        return self.lam < LAMBDA1

    @property
    def family(self):
        return BasisFamily(Kind.NORMALIZED_SINE, self.m)

    def rule(self):
        return default_rule(self.m)


@dataclass(frozen=True, eq=False)
class NonlinearState:
    xi: np.ndarray
    residual_norm: float
    newton_iters: int

    @property
    def norm(self):
        return float(np.linalg.norm(self.xi))


class _Discrete:
    # basis values and forcing moments at the nodes, shared by F and J
    def __init__(self, p, rule):
        self.p = p
        self.rule = rule if rule is not None else p.rule()
        self.W = vandermonde(p.family, self.rule.nodes)
        self.ww = self.rule.weights[:, None] * self.W
        fvals = np.asarray(p.f(self.rule.nodes), dtype=float) * np.ones(len(self.rule))
        self.load = integrate(lambda _: fvals[:, None] * self.W, self.rule)

    def F(self, xi):
        v = self.W @ xi
        if not np.all(np.isfinite(v)):
            raise IntegrandNotFinite("trial function is not finite at the nodes")
        return xi - self.p.lam * (self.ww.T @ v) + self.ww.T @ v ** 3 - self.load

    def J(self, xi):
        v = self.W @ xi
        weight = 3.0 * v ** 2 - self.p.lam
        return np.eye(len(xi)) + (self.ww * weight[:, None]).T @ self.W


def _coefficients(xi, p):
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (p.m,):
        raise ValidationError(f"expected {p.m} coefficients, got shape {xi.shape}")
    return xi


def F(xi, p: NonlinearProblem, rule=None):
    """Galerkin residual ``F_i = xi_i - lam (v, w_i) + (v^3, w_i) - (f, w_i)``.

    The leading ``xi_i`` is ``int v' w_i'``, exact by orthonormality.
    """
    return _Discrete(p, rule).F(_coefficients(xi, p))


def jacobian(xi, p: NonlinearProblem, rule=None):
    """``J_ij = delta_ij - lam (w_j, w_i) + 3 (v^2 w_j, w_i)``."""
    return _Discrete(p, rule).J(_coefficients(xi, p))


def newton_solve(p: NonlinearProblem, tol=TOL, max_iters=MAX_ITERS, rule=None, xi0=None):
    """Damped Newton iteration for ``F(xi) = 0``.

    Each step is halved (at most 30 times) until ``||F||_2`` decreases.

    Raises
    ------
    NoConvergence
        If ``||F||_2 > tol`` after ``max_iters`` steps or the line search
        stalls; the exception carries the last residual.
    """
    if tol <= 0:
        raise ValidationError("tol must be positive")
    d = _Discrete(p, rule)
    xi = np.zeros(p.m) if xi0 is None else _coefficients(xi0, p).copy()
    Fx = d.F(xi)
    res = float(np.linalg.norm(Fx))
    for it in range(max_iters + 1):
        if res <= tol:
            return NonlinearState(xi, res, it)
        if it == max_iters:
            break
        step = lu_solve(d.J(xi), -Fx)
        t = 1.0
        for _ in range(MAX_HALVINGS + 1):
            trial = xi + t * step
            F_trial = d.F(trial)
            res_trial = float(np.linalg.norm(F_trial))
            if res_trial < res:
                break
            t *= 0.5
        else:
            raise NoConvergence(
                f"line search stalled at iteration {it} with |F| = {res:.3e}",
                residual=res, iterations=it)
        xi, Fx, res = trial, F_trial, res_trial
    raise NoConvergence(f"no convergence in {max_iters} iterations, |F| = {res:.3e}",
                        residual=res, iterations=max_iters)


def l2_norm(f, rule):
    return float(np.sqrt(integrate(lambda x: np.asarray(f(x), dtype=float) ** 2, rule)))


def apriori_radius(p: NonlinearProblem, rule=None):
    """Radius ``R = |f|_0 / (sqrt(lambda1) (1 - lam/lambda1))``.

    On the sphere ``|xi| = R`` the coercivity estimate
    ``(F(xi), xi) >= (1 - lam/lambda1)|xi|^2 - |f|_0 |xi| / sqrt(lambda1)``
    is nonnegative, so every Galerkin solution lies in the ball.
    """
    if not p.guaranteed:
        raise LambdaTooLarge(f"lambda = {p.lam} is not below lambda1 = pi^2")
    rule = rule if rule is not None else p.rule()
    return l2_norm(p.f, rule) / (np.sqrt(LAMBDA1) * (1.0 - p.lam / LAMBDA1))


@dataclass(frozen=True)
class StudyRow:
    m: int
    norm_xi: float
    dist_to_finest: float
    newton_iters: int
    residual_norm: float


def convergence_study(p: NonlinearProblem, m_list, tol=TOL, max_iters=MAX_ITERS):
    """Solve on nested subspaces and report the distance to the finest one.

    Because the basis is orthonormal and nested, the H^1_0 distance between
    two discrete solutions is the l2 distance of their zero-padded
    coefficient vectors.
    """
    m_list = list(m_list)
    if not m_list or any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ValidationError("m_list must be nonempty and strictly increasing")
    states = [newton_solve(replace(p, m=m), tol, max_iters) for m in m_list]
    finest = states[-1].xi
    rows = []
    for m, s in zip(m_list, states):
        padded = np.zeros_like(finest)
        padded[:m] = s.xi
        rows.append(StudyRow(m, s.norm, float(np.linalg.norm(padded - finest)),
                             s.newton_iters, s.residual_norm))
    return rows


# --- named forcing terms ---------------------------------------------------

def manufactured_forcing(lam):
    """Forcing for which ``u = sin(pi x)`` solves the equation exactly."""
    def f(x):
        s = np.sin(np.pi * np.asarray(x, dtype=float))
        return (np.pi ** 2 - lam) * s + s ** 3
    return f


MANUFACTURED_XI1 = np.pi / np.sqrt(2.0)
