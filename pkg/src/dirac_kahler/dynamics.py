"""Dirac-Kahler field equations evaluated on products of plane waves.

Everything happens in momentum space.  A product of two waves ``exp(-i p.x)``
oscillates as ``exp(-i k.x)`` with ``k = 2p``, so each derivative becomes
``-i k_l`` and the boson mass in the tensor system is ``m = 2M``.  The gamma
matrices act on the left spinor index only, which means only the first
amplitude has to solve the Dirac equation for the tensor system to hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import METRIC, gamma_matrices, levi_civita_tensor, lower, lower2
from .decomposition import Spinor4, TensorSet, _spinor, decompose_pair
from .identities import fierz_terms

ON_SHELL_TOL = 1e-12
SINGULAR_RATIO = 1e-10
SINGULAR = "rewrite singular"
LINEAR_GROUPS = ("E1", "E2", "E3", "E4", "E5")


class OffShellError(ValueError):
    pass


def on_shell_momentum(p3, mass: float) -> np.ndarray:
    p3 = np.asarray(p3, dtype=float)
    if mass <= 0:
        raise ValueError(f"mass must be positive, got {mass}")
    return np.concatenate([[np.sqrt(mass**2 + p3 @ p3)], p3])


def _check_on_shell(p, mass: float) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError("momentum must have 4 components")
    if mass <= 0:
        raise ValueError(f"mass must be positive, got {mass}")
    p2 = p[0] ** 2 - p[1:] @ p[1:]
    if abs(p2 - mass**2) > ON_SHELL_TOL * max(mass**2, p[0] ** 2) or p[0] <= 0:
        raise OffShellError(f"momentum {p} is not on shell for mass {mass}")
    return p


@dataclass(frozen=True, eq=False)
class PlaneWaveField:
    """Amplitude of ``amplitude * exp(-i p.x)`` with ``p.p = mass^2``."""

    momentum: np.ndarray
    mass: float
    amplitude: Spinor4

    def __post_init__(self):
        p = _check_on_shell(self.momentum, self.mass)
        p.setflags(write=False)
        object.__setattr__(self, "momentum", p)
        object.__setattr__(self, "amplitude", _spinor(self.amplitude))

    def scaled(self, k) -> PlaneWaveField:
        return PlaneWaveField(self.momentum, self.mass, self.amplitude * k)


def dirac_operator(p, mass: float) -> np.ndarray:
    """``gamma^a p_a - M`` for the momentum-space Dirac equation."""
    gam = gamma_matrices()
    pl = lower(p)
    return sum(gam[a] * pl[a] for a in range(4)) - mass * np.eye(4)


def dirac_plane_wave(p, mass: float, branch: int) -> Spinor4:
    """Unit-norm solution of ``(gamma.p - M) u = 0``.

    Uses ``u = (sqrt(E + p.sigma) chi, sqrt(E - p.sigma) chi)`` where ``chi``
    is the branch's basis vector, i.e. the rest-frame solution boosted to p.
    """
    p = _check_on_shell(p, mass)
    if branch not in (0, 1):
        raise ValueError(f"branch must be 0 or 1, got {branch}")
    e = p[0]
    p_sigma = np.array([[p[3], p[1] - 1j * p[2]], [p[1] + 1j * p[2], -p[3]]])
    norm = np.sqrt(2 * (e + mass))
    root_plus = ((e + mass) * np.eye(2) + p_sigma) / norm
    root_minus = ((e + mass) * np.eye(2) - p_sigma) / norm
    chi = np.eye(2)[branch]
    u = np.concatenate([root_plus @ chi, root_minus @ chi])
    return Spinor4(u / np.linalg.norm(u))


def dirac_residual(p, mass: float, u) -> float:
    return float(np.linalg.norm(dirac_operator(p, mass) @ _spinor(u).data))


@dataclass(frozen=True)
class FieldEquationReport:
    kind: str  # "linear" or "nonlinear"
    status: str  # "ok" or SINGULAR
    residuals: dict = field(default_factory=dict)
    variants: dict = field(default_factory=dict)  # alternative equation forms, not part of the verdict
    scale: float = 1.0
    tolerance: float = 1e-10

    @property
    def max_residuals(self) -> dict:
        return {k: max(v) for k, v in self.residuals.items()}

    @property
    def max_residual(self) -> float:
        return max((max(v) for v in self.residuals.values()), default=0.0)

    @property
    def verdict(self) -> str:
        if self.status != "ok":
            return self.status
        return "holds" if self.max_residual < self.tolerance * self.scale else "fails"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "status": self.status,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "scale": self.scale,
            "max_residuals": self.max_residuals,
            "residuals": self.residuals,
            "variant_max_residuals": {k: max(v) for k, v in self.variants.items()},
        }


def _eps_mixed():
    eps = levi_civita_tensor()
    eps_l = np.einsum("la,abcd->lbcd", METRIC, eps)  # eps_l^{amn}
    eps_mn = np.einsum("ma,nb,abcd->mncd", METRIC, METRIC, eps)  # eps_{mn}^{ab}
    return eps_l, eps_mn


def linear_terms(T: TensorSet, k, m: float, vector_low=None, pseudovector_low=None) -> dict:
    """Residual arrays of the tensor system at wave vector ``k``.

    ``vector_low``/``pseudovector_low`` override the lower-index vectors used in
    the places where the nonlinear rewrite substitutes them.
    """
    k = np.asarray(k, dtype=float)
    kl = lower(k)
    d = -1j * kl  # d_l
    d_up = -1j * k  # d^l
    v_low = lower(T.vector) if vector_low is None else vector_low
    pv_low = lower(T.pseudovector) if pseudovector_low is None else pseudovector_low
    t = T.antisymmetric()
    t_low = lower2(t)
    t_mixed = METRIC @ t  # Psi_l^a
    eps_l, eps_mn = _eps_mixed()
    s, ps = T.scalar, T.pseudoscalar

    e1 = np.array([d_up @ v_low + m * s])
    e2 = np.array([d_up @ pv_low + m * ps])
    e3 = d * s + t_mixed @ d - m * v_low
    e4 = d * ps - 0.5 * np.einsum("lamn,a,mn->l", eps_l, d, t_low) - m * pv_low
    e5 = (
        np.outer(d, lower(T.vector)) - np.outer(lower(T.vector), d)
        + np.einsum("mnab,a,b->mn", eps_mn, d, lower(T.pseudovector))
        - m * t_low
    )
    return {"E1": e1, "E2": e2, "E3": e3, "E4": e4, "E5": e5[np.triu_indices(4, 1)]}


def _abs_list(x) -> list:
    return [float(v) for v in np.abs(np.asarray(x)).reshape(-1)]


def _scale(T: TensorSet, k, m: float) -> float:
    c = m + float(np.sum(np.abs(k)))
    return c * T.norm() if T.norm() > 0 else 1.0


def _wave_inputs(phi_wave: PlaneWaveField, psi_wave: PlaneWaveField, boson_mass):
    if not np.allclose(phi_wave.momentum, psi_wave.momentum, rtol=1e-12, atol=1e-12):
        raise ValueError("both plane waves must share one momentum")
    if abs(phi_wave.mass - psi_wave.mass) > 1e-12 * phi_wave.mass:
        raise ValueError("both plane waves must share one mass")
    T = decompose_pair(phi_wave.amplitude, psi_wave.amplitude)
    k = 2 * phi_wave.momentum
    m = 2 * phi_wave.mass if boson_mass is None else float(boson_mass)
    return T, k, m


def linear_report(T: TensorSet, k, m: float, tol: float = 1e-10) -> FieldEquationReport:
    terms = linear_terms(T, k, m)
    d = -1j * lower(np.asarray(k, dtype=float))
    variants = {
        "E1_uncontracted": _abs_list(d * T.scalar + m * lower(T.vector)),
        "E2_uncontracted": _abs_list(d * T.pseudoscalar + m * lower(T.pseudovector)),
    }
    return FieldEquationReport(
        "linear", "ok", {g: _abs_list(v) for g, v in terms.items()}, variants, _scale(T, k, m), tol
    )


def linear_system_residual(phi_wave, psi_wave, boson_mass=None, tol: float = 1e-10) -> FieldEquationReport:
    T, k, m = _wave_inputs(phi_wave, psi_wave, boson_mass)
    return linear_report(T, k, m, tol)


def substituted_vectors(T: TensorSet) -> tuple[np.ndarray, np.ndarray]:
    """Lower-index vectors rebuilt from the tensor via the pair identities."""
    t_low = lower2(T.antisymmetric())
    v_low = t_low @ T.pseudovector / T.pseudoscalar
    pv_low = -(t_low @ T.vector) / T.pseudoscalar
    return v_low, pv_low


def nonlinear_report(T: TensorSet, k, m: float, tol: float = 1e-10) -> FieldEquationReport:
    scale = _scale(T, k, m)
    if abs(T.pseudoscalar) <= SINGULAR_RATIO * T.norm() or T.norm() == 0:
        return FieldEquationReport("nonlinear", SINGULAR, {}, {}, scale, tol)
    v_sub, pv_sub = substituted_vectors(T)
    terms = linear_terms(T, k, m, v_sub, pv_sub)
    d = -1j * lower(np.asarray(k, dtype=float))
    t_mixed = METRIC @ T.antisymmetric()
    variants = {
        "N1_uncontracted": _abs_list(d * T.scalar + m * v_sub),
        "N2_uncontracted": _abs_list(d * T.pseudoscalar + m * pv_sub),
        "N3_tilde_prefactor": _abs_list(d * T.scalar - T.pseudoscalar * (t_mixed @ d) - m * v_sub),
    }
    return FieldEquationReport(
        "nonlinear", "ok", {g: _abs_list(v) for g, v in terms.items()}, variants, scale, tol
    )


def nonlinear_system_residual(phi_wave, psi_wave, boson_mass=None, tol: float = 1e-10) -> FieldEquationReport:
    T, k, m = _wave_inputs(phi_wave, psi_wave, boson_mass)
    return nonlinear_report(T, k, m, tol)


def rewrite_envelope(T: TensorSet, k, m: float) -> float:
    """Upper bound on the nonlinear residual given the linear and pair-identity residuals.

    Replacing a vector by its rewritten form changes it by at most
    ``max|fierz| / |Pt|`` per component; that change enters with a coefficient
    no larger than ``m + sum|k_l|``.  The final term absorbs rounding.
    """
    c = m + float(np.sum(np.abs(k)))
    lin = linear_report(T, k, m).max_residual
    fierz = float(np.max(np.abs(fierz_terms(T))))
    pt = abs(T.pseudoscalar)
    rounding = 64 * np.finfo(float).eps * c * (T.norm() + T.norm() ** 2 / pt)
    return lin + c * fierz / pt + rounding
