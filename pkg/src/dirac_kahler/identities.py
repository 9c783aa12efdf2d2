"""Residuals of the quadratic identities tying the 16 components together.

Every identity here is homogeneous of degree 2 in the tensor components, so
residual magnitudes are divided by ``|T|^2`` before being compared with the
tolerance.  That keeps the holds/fails verdict independent of amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, lower, minkowski_contract
from .decomposition import Spinor4, TensorSet, _spinor, isotropic_pair

HOLDS = "holds"
FAILS = "fails"


@dataclass(frozen=True)
class IdentityReport:
    name: str
    residuals: list[tuple[str, float]]
    tolerance: float
    scale: float = 1.0
    raw_max: float = 0.0
    max_residual: float = field(init=False)
    verdict: str = field(init=False)

    def __post_init__(self):
        mx = max((r for _, r in self.residuals), default=0.0)
        object.__setattr__(self, "max_residual", float(mx))
        object.__setattr__(self, "verdict", HOLDS if mx < self.tolerance else FAILS)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residuals": {label: r for label, r in self.residuals},
            "max_residual": self.max_residual,
            "raw_max_residual": self.raw_max,
            "scale": self.scale,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }


def quadratic_scale(T: TensorSet) -> float:
    n2 = T.norm() ** 2
    return n2 if n2 > 0 else 1.0


def _report(name: str, labels, values, T: TensorSet, tol: float) -> IdentityReport:
    values = np.abs(np.asarray(values, dtype=np.complex128))
    scale = quadratic_scale(T)
    rel = [(lab, float(v / scale)) for lab, v in zip(labels, values)]
    return IdentityReport(name, rel, tol, scale, float(values.max(initial=0.0)))


def orthogonality_terms(T: TensorSet) -> np.ndarray:
    return np.array([minkowski_contract(T.vector, T.pseudovector)])


def fierz_terms(T: TensorSet, alpha=-1.0, beta=1.0, rho=0.0, sigma=0.0) -> np.ndarray:
    """``Psi^{ab} Psi_b - alpha Pt Pt^a - rho P P^a`` then the tilde partner (8 values)."""
    t = T.antisymmetric()
    first = t @ lower(T.vector) - alpha * T.pseudoscalar * T.pseudovector - rho * T.scalar * T.vector
    second = t @ lower(T.pseudovector) - beta * T.pseudoscalar * T.vector - sigma * T.scalar * T.pseudovector
    return np.concatenate([first, second])


FIERZ_LABELS = [f"Psi^{{{a}b}}Psi_b + Pt Pt^{a}" for a in range(4)] + [
    f"Psi^{{{a}b}}Pt_b - Pt Psi^{a}" for a in range(4)
]


def residual_orthogonality(T: TensorSet, tol: float = DEFAULT_TOL) -> IdentityReport:
    return _report("orthogonality", ["Psi^a Pt_a"], orthogonality_terms(T), T, tol)


def residual_fierz(T: TensorSet, tol: float = DEFAULT_TOL) -> IdentityReport:
    return _report("fierz", FIERZ_LABELS, fierz_terms(T), T, tol)


def residual_quad_ansatz(T: TensorSet, alpha, beta, rho, sigma, tol: float = DEFAULT_TOL) -> IdentityReport:
    labels = [f"first[{a}]" for a in range(4)] + [f"second[{a}]" for a in range(4)]
    return _report("quad_ansatz", labels, fierz_terms(T, alpha, beta, rho, sigma), T, tol)


@dataclass(frozen=True)
class AnsatzFit:
    alpha: complex
    beta: complex
    rho: complex
    sigma: complex
    floor: float  # RMS of the scale-normalized residuals at the best fit

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        return self.alpha, self.beta, self.rho, self.sigma


def fit_quad_ansatz(samples: list[TensorSet]) -> AnsatzFit:
    """Least-squares coefficients shared by all samples for the quadratic ansatz.

    Each sample's rows are divided by ``|T|^2`` so that no sample dominates.
    The floor is the RMS residual left over; zero means the ansatz is an exact
    identity on the sample set.
    """
    if not samples:
        raise ValueError("fit_quad_ansatz needs at least one sample")
    rows1, rhs1, rows2, rhs2 = [], [], [], []
    for T in samples:
        s = quadratic_scale(T)
        t = T.antisymmetric()
        rows1.append(np.column_stack([T.pseudoscalar * T.pseudovector, T.scalar * T.vector]) / s)
        rhs1.append(t @ lower(T.vector) / s)
        rows2.append(np.column_stack([T.pseudoscalar * T.vector, T.scalar * T.pseudovector]) / s)
        rhs2.append(t @ lower(T.pseudovector) / s)
    a1, b1 = np.vstack(rows1), np.concatenate(rhs1)
    a2, b2 = np.vstack(rows2), np.concatenate(rhs2)
    (alpha, rho), *_ = np.linalg.lstsq(a1, b1, rcond=None)
    (beta, sigma), *_ = np.linalg.lstsq(a2, b2, rcond=None)
    res = np.concatenate([a1 @ [alpha, rho] - b1, a2 @ [beta, sigma] - b2])
    floor = float(np.sqrt(np.mean(np.abs(res) ** 2)))
    return AnsatzFit(complex(alpha), complex(beta), complex(rho), complex(sigma), floor)


def residual_isotropy(T: TensorSet, mu, nu, phi, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Null-vector relations of the self-dual/anti-self-dual halves.

    Only meaningful when ``T`` comes from the pair
    ``phi (x) (mu A, mu B, nu C, nu D)``; that is not checked.
    """
    phi: Spinor4 = _spinor(phi)
    iso = isotropic_pair(T)
    ad_bc = phi.a * phi.d - phi.b * phi.c
    values = [iso.ss(), iso.tt(), iso.st() - complex(mu) * complex(nu) / 2 * ad_bc**2]
    return _report("isotropy", ["s.s", "t.t", "s.t - mu nu (AD-BC)^2 / 2"], values, T, tol)
