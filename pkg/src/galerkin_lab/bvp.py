"""Galerkin solver for ``-u'' = f`` on (0, 1) with ``u(0) = u(1) = 0``.

Two trial spaces are supported: the bubble monomials ``x^i (1 - x)``, whose
stiffness matrix is notoriously ill-conditioned, and ``sin(i pi x)``, which
diagonalises the problem.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import basis
from .basis import BasisFamily, Kind
from .errors import ValidationError
from .linalg import cond2, lu_solve
from .quadrature import default_rule, integrate

CONVENTIONS = ("shifted", "standard")


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    xi: np.ndarray
    family: BasisFamily

    def __post_init__(self):
        xi = np.asarray(self.xi)
        if xi.shape != (self.family.dim,):
            raise ValidationError(
                f"{self.family.kind.value} family of size {self.family.size} "
                f"needs {self.family.dim} coefficients, got shape {xi.shape}")
        object.__setattr__(self, "xi", xi)

    def __call__(self, x):
        return evaluate_solution(self, x)

    def derivative(self, x):
        return basis.vandermonde(self.family, x, deriv=True) @ self.xi


@dataclass(frozen=True, eq=False)
class GalerkinSystem:
    A: np.ndarray
    b: np.ndarray
    family: BasisFamily

    def solve(self):
        return CoefficientVector(lu_solve(self.A, self.b), self.family)


def _shifted_entry(i, j):
    return (Fraction((i + 1) * (j + 1), i + j + 1)
            + Fraction((i + 2) * (j + 2), i + j + 3)
            - Fraction((i + 1) * (j + 2) + (i + 2) * (j + 1), i + j + 2))


def _standard_entry(i, j):
    return (Fraction(i * j, i + j - 1)
            - Fraction(2 * i * j + i + j, i + j)
            + Fraction((i + 1) * (j + 1), i + j + 1))


def stiffness_monomial_closed_form(N, convention="standard"):
    """Closed-form stiffness matrix of the bubble monomials.

    ``"standard"`` is the exact ``integral [x^j (1-x)]' [x^i (1-x)]'`` for
    ``i, j = 1..N``. ``"shifted"`` evaluates the three-term closed form

        (i+1)(j+1)/(i+j+1) + (i+2)(j+2)/(i+j+3) - ((i+1)(j+2)+(i+2)(j+1))/(i+j+2)

    at ``i, j = 1..N``, which is the standard entry at ``(i+1, j+1)``, i.e.
    the stiffness matrix of ``x^{i+1}(1-x)``. Entries are computed in exact
    rational arithmetic and rounded once, so the matrix carries no
    cancellation error.
    """
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    if convention not in CONVENTIONS:
        raise ValidationError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")
    entry = _shifted_entry if convention == "shifted" else _standard_entry
    return np.array([[float(entry(i, j)) for j in range(1, N + 1)]
                     for i in range(1, N + 1)])


def assemble_quadrature(family, N, rule=None):
    """Stiffness matrix ``A[i, j] = integral phi_i' phi_j'`` by quadrature."""
    family = BasisFamily(family.kind, N) if isinstance(family, BasisFamily) else BasisFamily(family, N)
    rule = rule if rule is not None else default_rule(N)
    D = basis.vandermonde(family, rule.nodes, deriv=True)
    A = (D.T * rule.weights) @ np.conj(D)
    return A if family.is_complex else A.real


def assemble_load(f, family, N, rule=None):
    """Load vector ``b[i] = integral f phi_i``."""
    family = BasisFamily(family.kind, N) if isinstance(family, BasisFamily) else BasisFamily(family, N)
    rule = rule if rule is not None else default_rule(N)
    Phi = basis.vandermonde(family, rule.nodes)
    return integrate(lambda x: np.asarray(f(x))[..., None] * Phi, rule)


def sine_diagonal_solve(f, N, rule=None):
    """Sine-basis coefficients ``xi_j = 2/(pi^2 j^2) integral f sin(j pi x)``."""
    family = BasisFamily(Kind.SINE, N)
    load = assemble_load(f, family, N, rule)
    j = np.arange(1, N + 1)
    return CoefficientVector(2.0 / (np.pi ** 2 * j ** 2) * load, family)


def solve_bvp(f, family, N, rule=None):
    """Galerkin solve in the first ``N`` members of ``family``.

    The sine family short-circuits to :func:`sine_diagonal_solve`; any other
    family goes through an LU solve of the assembled system, so monomial
    bases near N = 10 may raise :class:`~galerkin_lab.errors.SingularMatrix`.
    """
    kind = family.kind if isinstance(family, BasisFamily) else Kind(family)
    if kind is Kind.SINE:
        return sine_diagonal_solve(f, N, rule)
    return assemble_system(f, BasisFamily(kind, N), rule).solve()


def assemble_system(f, family, rule=None):
    N = family.size
    rule = rule if rule is not None else default_rule(N)
    if family.kind is Kind.MONOMIAL_BUBBLE:
        # exact rational entries; quadrature would add rounding to an
        # already ill-conditioned matrix
        A = stiffness_monomial_closed_form(N, "standard")
    else:
        A = assemble_quadrature(family, N, rule)
    return GalerkinSystem(A, assemble_load(f, family, N, rule), family)


def evaluate_solution(c, x):
    return basis.vandermonde(c.family, x) @ c.xi


def kernel_value(x, t, N):
    """Truncated Green's kernel ``(2/pi^2) sum_j sin(j pi x) sin(j pi t) / j^2``."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    total = np.zeros(np.broadcast(x, t).shape)
    for j in range(1, N + 1):
        total = total + np.sin(j * np.pi * x) * np.sin(j * np.pi * t) / j ** 2
    return 2.0 / np.pi ** 2 * total


def condition_table(N_max=10, convention="shifted", N_min=3):
    """Rows ``(N, cond2(A_N))`` of the bubble-monomial stiffness matrix.

    The default ``"shifted"`` convention is the one that reproduces the
    reference condition numbers (891.66 at N = 3); ``"standard"`` gives 175.72 there.
    """
    if not 1 <= N_max <= 12:
        raise ValidationError(f"N_max must lie in 1..12, got {N_max}")
    return [(N, cond2(stiffness_monomial_closed_form(N, convention)))
            for N in range(N_min, N_max + 1)]


def h1_seminorm_error(c, exact_deriv, rule):
    """``|u - u_N|_1`` given the exact derivative ``u'``."""
    err = exact_deriv(rule.nodes) - c.derivative(rule.nodes)
    return float(np.sqrt(rule.weights @ np.abs(err) ** 2))


def energy(c, f, rule):
    """Quadratic energy ``a(u, u)/2 - l(u)`` of a computed solution."""
    du = c.derivative(rule.nodes)
    u = evaluate_solution(c, rule.nodes)
    return float(0.5 * (rule.weights @ (du * du)) - rule.weights @ (np.asarray(f(rule.nodes)) * u))
