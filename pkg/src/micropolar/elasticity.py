"""Linear isotropic Cosserat hyperelasticity.

Six moduli: bulk ``K``, shear ``G``, Cosserat shear ``Gc`` (stress units)
and torsion/bending ``T``, ``B``, ``Bc`` (moment per unit length). The
stiffness is block diagonal over the symmetric and skew parts of strain and
wryness, so every map below is applied in closed form.
"""

import math
from dataclasses import dataclass

from .errors import ParameterDomainError
from .tensors import IDENTITY, as_tensor, check_skew, check_symmetric, ddot, dev, skw, sym, trace


@dataclass(frozen=True)
class CosseratMaterial:
    """Elastic moduli of an isotropic Cosserat solid.

    Parameters
    ----------
    K, G, Gc : float
        Bulk, shear and Cosserat (relative-rotation) shear moduli.
    T, B, Bc : float
        Torsional, symmetric bending and skew bending moduli. ``T`` may be
        negative as long as ``Kc = T + 2B/3`` stays positive.
    """

    K: float
    G: float
    Gc: float
    T: float
    B: float
    Bc: float

    def __post_init__(self):
        for name in ("K", "G", "Gc", "T", "B", "Bc"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ParameterDomainError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        for name in ("K", "G", "Gc", "B", "Bc"):
            if getattr(self, name) <= 0.0:
                raise ParameterDomainError(f"{name} must be positive, got {getattr(self, name)}")
        if self.Kc <= 0.0:
            raise ParameterDomainError(f"Kc = T + 2B/3 must be positive, got {self.Kc}")

    @classmethod
    def from_young(cls, E, nu, Gc, T, B, Bc):
        """Build from Young's modulus and Poisson's ratio for the Cauchy part."""
        if E <= 0.0 or not -1.0 < nu < 0.5:
            raise ParameterDomainError("need E > 0 and -1 < nu < 0.5")
        K = E / (3.0 * (1.0 - 2.0 * nu))
        G = E / (2.0 * (1.0 + nu))
        return cls(K=K, G=G, Gc=Gc, T=T, B=B, Bc=Bc)

    @classmethod
    def from_lengths(cls, K, G, l1, l2, l3, gc_ratio):
        """Build from characteristic lengths and the ratio ``Gc/G``.

        ``B = G l1^2``, ``Bc = G l2^2``, ``Kc = 2 G l3^2`` and ``T = Kc - 2B/3``.
        """
        if min(l1, l2, l3) <= 0.0 or gc_ratio <= 0.0:
            raise ParameterDomainError("lengths and Gc/G must be positive")
        B = G * l1 * l1
        Bc = G * l2 * l2
        Kc = 2.0 * G * l3 * l3
        return cls(K=K, G=G, Gc=gc_ratio * G, T=Kc - 2.0 * B / 3.0, B=B, Bc=Bc)

    @property
    def Kc(self):
        return self.T + 2.0 * self.B / 3.0

    @property
    def lengths(self):
        """Characteristic lengths ``(sqrt(B/G), sqrt(Bc/G), sqrt(Kc/2G))``."""
        return (
            math.sqrt(self.B / self.G),
            math.sqrt(self.Bc / self.G),
            math.sqrt(self.Kc / (2.0 * self.G)),
        )

    @property
    def moduli(self):
        """Tuple ``(G, Gc, B, Bc, Kc)`` consumed by the compiled kernels."""
        return (self.G, self.Gc, self.B, self.Bc, self.Kc)

    def as_dict(self):
        return {"K": self.K, "G": self.G, "Gc": self.Gc, "T": self.T, "B": self.B, "Bc": self.Bc}


# Closed-form stiffness/compliance maps on general (non-symmetric) tensors.


def stress_map(mat, a):
    """Stress produced by a general strain tensor ``a`` (trace, sym-dev, skew blocks)."""
    tr = trace(a)
    return mat.K * tr * IDENTITY + 2.0 * mat.G * (sym(a) - (tr / 3.0) * IDENTITY) + 2.0 * mat.Gc * skw(a)


def couple_map(mat, a):
    """Couple stress produced by a general wryness tensor ``a``."""
    tr = trace(a)
    return mat.Kc * tr * IDENTITY + 2.0 * mat.B * (sym(a) - (tr / 3.0) * IDENTITY) + 2.0 * mat.Bc * skw(a)


def strain_map(mat, s):
    """Inverse of :func:`stress_map`."""
    tr = trace(s)
    return (tr / (9.0 * mat.K)) * IDENTITY + (sym(s) - (tr / 3.0) * IDENTITY) / (2.0 * mat.G) + skw(s) / (2.0 * mat.Gc)


def curvature_map(mat, m):
    """Inverse of :func:`couple_map`."""
    tr = trace(m)
    return (tr / (9.0 * mat.Kc)) * IDENTITY + (sym(m) - (tr / 3.0) * IDENTITY) / (2.0 * mat.B) + skw(m) / (2.0 * mat.Bc)


def elastic_stress(mat, eps_e, omega_e):
    """Stress from elastic symmetric strain and relative rotation.

    ``sigma = K tr(eps) I + 2G dev(eps) + 2Gc omega``.
    """
    eps_e = as_tensor(eps_e)
    omega_e = as_tensor(omega_e)
    check_symmetric(eps_e, "eps_e")
    check_skew(omega_e, "omega_e")
    return mat.K * trace(eps_e) * IDENTITY + 2.0 * mat.G * dev(eps_e) + 2.0 * mat.Gc * omega_e


def elastic_stress_lame(mat, eps_e, omega_e):
    """Same law written with Lame constants, kept as an independent route."""
    eps_e = as_tensor(eps_e)
    omega_e = as_tensor(omega_e)
    check_symmetric(eps_e, "eps_e")
    check_skew(omega_e, "omega_e")
    lam = mat.K - 2.0 * mat.G / 3.0
    return lam * trace(eps_e) * IDENTITY + 2.0 * mat.G * eps_e + 2.0 * mat.Gc * omega_e


def elastic_couple_stress(mat, chi_e):
    """``mu = Kc tr(chi) I + 2B dev(sym chi) + 2Bc skw(chi)``."""
    chi_e = as_tensor(chi_e)
    return couple_map(mat, chi_e)


def elastic_couple_stress_torsion(mat, chi_e):
    """``mu = T tr(chi) I + 2B sym(chi) + 2Bc skw(chi)``; algebraically equal to the above."""
    chi_e = as_tensor(chi_e)
    return mat.T * trace(chi_e) * IDENTITY + 2.0 * mat.B * sym(chi_e) + 2.0 * mat.Bc * skw(chi_e)


def distortion_energy(mat, sigma, mu):
    """Elastic distortion energy written in stresses.

    Includes the spherical couple-stress term, which stores torsional
    rather than volumetric energy. Equals ``q**2 / (6G)``.
    """
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    s_sym = dev(sym(sigma))
    s_skw = skw(sigma)
    m_sym = dev(sym(mu))
    m_skw = skw(mu)
    tr_mu = trace(mu)
    G = mat.G
    return (
        ddot(s_sym, s_sym)
        + (G / mat.Gc) * ddot(s_skw, s_skw)
        + (G / mat.B) * ddot(m_sym, m_sym)
        + (G / mat.Bc) * ddot(m_skw, m_skw)
        + (2.0 * G / mat.Kc) * tr_mu * tr_mu / 9.0
    ) / (4.0 * G)


def strain_energy(mat, eps_e, omega_e, chi_e):
    """Stored energy as the sum of the four decoupled quadratic terms."""
    eps_e = as_tensor(eps_e)
    omega_e = as_tensor(omega_e)
    chi_e = as_tensor(chi_e)
    check_symmetric(eps_e, "eps_e")
    check_skew(omega_e, "omega_e")
    lam = mat.K - 2.0 * mat.G / 3.0
    tr_e = trace(eps_e)
    tr_c = trace(chi_e)
    c_sym = sym(chi_e)
    c_skw = skw(chi_e)
    return (
        0.5 * lam * tr_e * tr_e
        + mat.G * ddot(eps_e, eps_e)
        + mat.Gc * ddot(omega_e, omega_e)
        + 0.5 * mat.T * tr_c * tr_c
        + mat.B * ddot(c_sym, c_sym)
        + mat.Bc * ddot(c_skw, c_skw)
    )
