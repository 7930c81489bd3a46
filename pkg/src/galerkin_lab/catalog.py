"""Named right-hand sides and kernels exposed on the command line."""
import numpy as np

from .errors import ValidationError
from .nonlinear import manufactured_forcing


def _const(c):
    return lambda x: np.full(np.shape(x), c, dtype=float)


def _step(x):
    return (np.asarray(x, dtype=float) > 0.5).astype(float)


# forcing terms on [0, 1]
FORCING = {
    "zero": _const(0.0),
    "one": _const(1.0),
    "linear": lambda x: np.asarray(x, dtype=float),
    "sinpi": lambda x: np.sin(np.pi * np.asarray(x, dtype=float)),
    "sin2pi": lambda x: np.sin(2.0 * np.pi * np.asarray(x, dtype=float)),
    "step": _step,
}

# 2*pi-periodic kernels; all degenerate (finite trigonometric degree)
KERNELS = {
    "zero": lambda x, y: np.zeros(np.broadcast(x, y).shape),
    "cos": lambda x, y: np.cos(x - y),
    "poly2": lambda x, y: 1.0 + 0.5 * np.cos(2.0 * (x - y)),
    "skew": lambda x, y: np.sin(x) * np.cos(2.0 * y) + 0.3 * np.sin(x - y),
}

KERNEL_DEGREE = {"zero": 0, "cos": 1, "poly2": 2, "skew": 2}

# 2*pi-periodic right-hand sides
PERIODIC_RHS = {
    "expix": lambda x: np.exp(1j * np.asarray(x, dtype=float)),
    "one": lambda x: np.ones(np.shape(x), dtype=complex),
    "cos": lambda x: np.cos(np.asarray(x, dtype=float)) + 0j,
    "expcos": lambda x: np.exp(np.cos(np.asarray(x, dtype=float))) + 0j,
}


def forcing(name, lam=None):
    """Look up a forcing term; ``"manufactured"`` needs ``lam``."""
    if name == "manufactured":
        if lam is None:
            raise ValidationError("the manufactured forcing depends on lambda")
        return manufactured_forcing(lam)
    try:
        return FORCING[name]
    except KeyError:
        raise ValidationError(f"unknown forcing {name!r}") from None


class NodalFunction:
    """A function known only through its values at fixed quadrature nodes."""

    def __init__(self, nodes, values):
        self.nodes = np.asarray(nodes, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if self.values.shape != self.nodes.shape:
            raise ValidationError(
                f"expected {self.nodes.size} nodal values, got {self.values.size}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != self.nodes.shape or not np.array_equal(x, self.nodes):
            raise ValidationError("nodal data can only be evaluated at its own nodes")
        return self.values
