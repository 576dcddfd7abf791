"""Second-order tensor algebra on dense 3x3 arrays.

Row index is the component direction, column index the face normal.
Nothing here assembles fourth-order arrays; stiffness maps live in
:mod:`micropolar.elasticity` and are applied in closed form.
"""

import numpy as np

from .errors import InvalidInputError

IDENTITY = np.eye(3)

LEVI_CIVITA = np.zeros((3, 3, 3))
LEVI_CIVITA[0, 1, 2] = LEVI_CIVITA[1, 2, 0] = LEVI_CIVITA[2, 0, 1] = 1.0
LEVI_CIVITA[0, 2, 1] = LEVI_CIVITA[2, 1, 0] = LEVI_CIVITA[1, 0, 2] = -1.0

SKEW_TOL = 1e-10
ROTATION_TOL = 1e-10


def as_tensor(a):
    """Return `a` as a float 3x3 array (copy), raising on bad shape or non-finite data."""
    t = np.array(a, dtype=float)
    if t.shape != (3, 3):
        raise InvalidInputError(f"expected a 3x3 tensor, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InvalidInputError("tensor has non-finite entries")
    return t


def as_vector(v):
    t = np.array(v, dtype=float)
    if t.shape != (3,):
        raise InvalidInputError(f"expected a 3-vector, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InvalidInputError("vector has non-finite entries")
    return t


def sym(a):
    return 0.5 * (a + a.T)


def skw(a):
    return 0.5 * (a - a.T)


def sym_skw_split(a):
    """Split `a` into its symmetric and skew-symmetric parts."""
    a = as_tensor(a)
    return sym(a), skw(a)


def trace(a):
    return a[0, 0] + a[1, 1] + a[2, 2]


def dev(a):
    return a - (trace(a) / 3.0) * IDENTITY


def dev_sph_split(a):
    """Return ``(a - tr(a)/3 I, tr(a)/3)``."""
    a = as_tensor(a)
    m = trace(a) / 3.0
    return a - m * IDENTITY, m


def ddot(a, b):
    """Double contraction a_ij b_ij."""
    return float(np.einsum("ij,ij->", a, b))


def ddot_transpose(a, b):
    """Double contraction a_ij b_ji."""
    return float(np.einsum("ij,ji->", a, b))


def norm(a):
    return float(np.sqrt(ddot(a, a)))


def is_skew(w, tol=SKEW_TOL):
    return norm(sym(w)) <= tol * max(1.0, norm(w))


def is_symmetric(a, tol=SKEW_TOL):
    return norm(skw(a)) <= tol * max(1.0, norm(a))


def check_skew(w, name="tensor"):
    if not is_skew(w):
        raise InvalidInputError(f"{name} is not skew-symmetric")


def check_symmetric(a, name="tensor"):
    if not is_symmetric(a):
        raise InvalidInputError(f"{name} is not symmetric")


def axial_vector(w):
    """Axial vector of a skew tensor, ``w_k = -1/2 e_ijk w_ij``.

    Raises
    ------
    InvalidInputError
        If the symmetric part of `w` exceeds ``1e-10 * max(1, |w|)``.
    """
    w = as_tensor(w)
    check_skew(w, "w")
    return -0.5 * np.einsum("ijk,ij->k", LEVI_CIVITA, w)


def spin_tensor(v):
    """Skew tensor ``w_ij = -e_ijk v_k`` associated with the rotation vector `v`."""
    v = as_vector(v)
    return -np.einsum("ijk,k->ij", LEVI_CIVITA, v)


def cofactor(a):
    """Cofactor matrix; equals d(det a)/da."""
    c = np.empty((3, 3))
    c[0, 0] = a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    c[0, 1] = a[1, 2] * a[2, 0] - a[1, 0] * a[2, 2]
    c[0, 2] = a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]
    c[1, 0] = a[0, 2] * a[2, 1] - a[0, 1] * a[2, 2]
    c[1, 1] = a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
    c[1, 2] = a[0, 1] * a[2, 0] - a[0, 0] * a[2, 1]
    c[2, 0] = a[0, 1] * a[1, 2] - a[0, 2] * a[1, 1]
    c[2, 1] = a[0, 2] * a[1, 0] - a[0, 0] * a[1, 2]
    c[2, 2] = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    return c


def det(a):
    return float(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def check_rotation(R):
    R = as_tensor(R)
    if np.max(np.abs(R.T @ R - IDENTITY)) > ROTATION_TOL or abs(det(R) - 1.0) > ROTATION_TOL:
        raise InvalidInputError("R is not a proper rotation")
    return R


def rotate(a, R):
    """Return ``R a R^T`` for a proper rotation `R`."""
    a = as_tensor(a)
    R = check_rotation(R)
    return R @ a @ R.T


def rotation_about_axis(axis, angle):
    """Proper rotation matrix (Rodrigues) for `angle` radians about `axis`."""
    axis = as_vector(axis)
    n = np.linalg.norm(axis)
    if n == 0.0:
        raise InvalidInputError("rotation axis must be non-zero")
    k = axis / n
    K = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return IDENTITY + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)


def random_rotation(rng):
    """Uniformly distributed proper rotation drawn from `rng` (a numpy Generator)."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )
