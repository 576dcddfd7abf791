"""Cosserat strain and wryness from displacement and micro-rotation gradients."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .tensors import as_tensor, as_vector, skw, spin_tensor, sym


@dataclass(frozen=True)
class KinematicState:
    grad_u: np.ndarray
    theta: np.ndarray
    grad_theta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "grad_u", as_tensor(self.grad_u))
        object.__setattr__(self, "theta", as_vector(self.theta))
        object.__setattr__(self, "grad_theta", as_tensor(self.grad_theta))

    def strain(self):
        return cosserat_strain(self.grad_u, self.theta)

    def curvature(self):
        return wryness(self.grad_theta)


def cosserat_strain(grad_u, theta):
    """Cosserat strain ``gamma = grad_u - spin(theta)``.

    Built as ``eps + omega`` with ``eps = sym(grad_u)`` and
    ``omega = skw(grad_u) - spin(theta)``; both routes agree exactly because
    the spin tensor is skew.
    """
    grad_u = as_tensor(grad_u)
    return sym(grad_u) + relative_rotation(grad_u, theta)


def relative_rotation(grad_u, theta):
    """Matrix rotation minus micro-rotation, ``skw(grad_u) - spin(theta)``."""
    grad_u = as_tensor(grad_u)
    return skw(grad_u) - spin_tensor(theta)


def wryness(grad_theta):
    """Curvature tensor ``chi_ij = theta_i,j`` (identity map, kept for clarity)."""
    return as_tensor(grad_theta)


def curvature_kind(i, j):
    """Diagonal wryness entries are torsional, off-diagonal ones bending."""
    if not (0 <= i < 3 and 0 <= j < 3):
        raise InvalidInputError("component index out of range")
    return "torsional" if i == j else "bending"
