"""Basis families on [0, 1] and [0, 2 pi].

Members are indexed the way they are written mathematically: 1..N for the
bubble, sine and box families, -n..n for complex exponentials. ``eval`` and
``eval_deriv`` are vectorised over ``x``.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, NotDifferentiable, ValidationError
from .quadrature import QuadratureRule

SQRT2 = np.sqrt(2.0)


class Kind(enum.Enum):
    MONOMIAL_BUBBLE = "monomial"
    SINE = "sine"
    NORMALIZED_SINE = "normalized-sine"
    COMPLEX_EXPONENTIAL = "exponential"
    BOX = "box"


@dataclass(frozen=True)
class BasisFamily:
    kind: Kind
    size: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if int(self.size) != self.size or self.size < 1:
            raise ValidationError(f"basis size must be a positive integer, got {self.size}")

    @property
    def indices(self):
        if self.kind is Kind.COMPLEX_EXPONENTIAL:
            return range(-self.size, self.size + 1)
        return range(1, self.size + 1)

    @property
    def dim(self):
        return len(self.indices)

    @property
    def domain(self):
        if self.kind is Kind.COMPLEX_EXPONENTIAL:
            return 0.0, 2.0 * np.pi
        return 0.0, 1.0

    @property
    def is_complex(self):
        return self.kind is Kind.COMPLEX_EXPONENTIAL

    def position(self, j):
        """Array position of member ``j``."""
        self._check(j)
        return j - self.indices[0]

    def _check(self, j):
        if j not in self.indices:
            r = self.indices
            raise IndexOutOfRange(f"index {j} outside {r[0]}..{r[-1]} for {self.kind.value}")


def eval(family, j, x):  # noqa: A001 - mirrors the mathematical name
    family._check(j)
    x = np.asarray(x, dtype=float)
    kind = family.kind
    if kind is Kind.MONOMIAL_BUBBLE:
        return x ** j * (1.0 - x)
    if kind is Kind.SINE:
        return np.sin(j * np.pi * x)
    if kind is Kind.NORMALIZED_SINE:
        return SQRT2 / (j * np.pi) * np.sin(j * np.pi * x)
    if kind is Kind.COMPLEX_EXPONENTIAL:
        return np.exp(1j * j * x)
    h = 1.0 / family.size
    inside = (x >= (j - 1) * h) & (x < j * h)
    if j == family.size:
        inside |= x == 1.0
    return np.where(inside, h ** -0.5, 0.0)


def eval_deriv(family, j, x):
    family._check(j)
    x = np.asarray(x, dtype=float)
    kind = family.kind
    if kind is Kind.MONOMIAL_BUBBLE:
        return j * x ** (j - 1) - (j + 1) * x ** j
    if kind is Kind.SINE:
        return j * np.pi * np.cos(j * np.pi * x)
    if kind is Kind.NORMALIZED_SINE:
        return SQRT2 * np.cos(j * np.pi * x)
    if kind is Kind.COMPLEX_EXPONENTIAL:
        return 1j * j * np.exp(1j * j * x)
    raise NotDifferentiable("box functions have no classical derivative")


def vandermonde(family, x, deriv=False):
    """Matrix with one column per family member evaluated at ``x``."""
    fn = eval_deriv if deriv else eval
    return np.stack([fn(family, j, x) for j in family.indices], axis=-1)


def h10_inner(family, i, j, rule: QuadratureRule):
    """``integral of phi_i' * conj(phi_j')`` over ``rule``."""
    di = eval_deriv(family, i, rule.nodes)
    dj = eval_deriv(family, j, rule.nodes)
    value = rule.weights @ (di * np.conj(dj))
    return value if family.is_complex else float(value)
