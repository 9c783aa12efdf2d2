"""Proper orthochronous Lorentz transformations on spinors and tensors.

An SL(2,C) matrix ``S`` acts on a 4-spinor as ``xi -> S xi`` and
``eta -> (S^dagger)^-1 eta``.  The vector representation is read off from
``S sigma^b S^dagger = Lambda^a_b sigma^a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .algebra import METRIC, PAULI, build_pauli_basis
from .decomposition import Spinor4, TensorSet, _spinor, decompose_pair


def _axis(axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise ValueError(f"axis must be a unit 3-vector, got {axis!r}")
    return n


def _n_sigma(n) -> np.ndarray:
    return sum(n[j] * PAULI[j] for j in range(3))


def vector_rep(s: np.ndarray) -> np.ndarray:
    su = build_pauli_basis().sigma_up
    sd = s.conj().T
    lam = np.array([[0.5 * np.trace(su[a] @ s @ su[b] @ sd) for b in range(4)] for a in range(4)])
    return lam.real


@dataclass(frozen=True, eq=False)
class LorentzElement:
    sl2c: np.ndarray
    induced: np.ndarray = field(init=False)
    spinor4_rep: np.ndarray = field(init=False)

    def __post_init__(self):
        s = np.array(self.sl2c, dtype=np.complex128)
        if s.shape != (2, 2):
            raise ValueError("sl2c must be 2x2")
        if abs(np.linalg.det(s) - 1) > 1e-10:
            raise ValueError(f"det(sl2c) = {np.linalg.det(s):.3g}, expected 1")
        s.setflags(write=False)
        rep = scipy.linalg.block_diag(s, np.linalg.inv(s.conj().T))
        lam = vector_rep(s)
        rep.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "sl2c", s)
        object.__setattr__(self, "spinor4_rep", rep)
        object.__setattr__(self, "induced", lam)

    @classmethod
    def identity(cls) -> LorentzElement:
        return cls(np.eye(2))

    def __matmul__(self, other: LorentzElement) -> LorentzElement:
        return LorentzElement(self.sl2c @ other.sl2c)

    def inverse(self) -> LorentzElement:
        return LorentzElement(np.linalg.inv(self.sl2c))

    def metric_defect(self) -> float:
        lam = self.induced
        return float(np.max(np.abs(lam @ METRIC @ lam.T - METRIC)))

    def to_json(self) -> list:
        return [[[z.real, z.imag] for z in row] for row in self.sl2c]


def element_from_boost(axis, rapidity: float) -> LorentzElement:
    n = _axis(axis)
    return LorentzElement(scipy.linalg.expm(0.5 * rapidity * _n_sigma(n)))


def element_from_rotation(axis, angle: float) -> LorentzElement:
    n = _axis(axis)
    return LorentzElement(scipy.linalg.expm(-0.5j * angle * _n_sigma(n)))


def transform_spinor(g: LorentzElement, phi) -> Spinor4:
    return Spinor4(g.spinor4_rep @ _spinor(phi).data)


def transform_vector(g: LorentzElement, v) -> np.ndarray:
    return g.induced @ np.asarray(v)


def transform_tensorset(g: LorentzElement, T: TensorSet) -> TensorSet:
    lam = g.induced
    return TensorSet.from_antisymmetric(
        T.scalar,
        T.pseudoscalar,
        lam @ T.vector,
        lam @ T.pseudovector,
        lam @ T.antisymmetric() @ lam.T,
    )


def covariance_residual(g: LorentzElement, phi, psi) -> float:
    moved = decompose_pair(transform_spinor(g, phi), transform_spinor(g, psi))
    expected = transform_tensorset(g, decompose_pair(phi, psi))
    return (moved - expected).max_abs()


def random_element(rng: np.random.Generator, max_rapidity: float = 2.0) -> LorentzElement:
    """Boost with rapidity <= max_rapidity composed with an arbitrary rotation."""

    def unit():
        v = rng.normal(size=3)
        return v / np.linalg.norm(v)

    boost = element_from_boost(unit(), rng.uniform(0.0, max_rapidity))
    rot = element_from_rotation(unit(), rng.uniform(0.0, 4 * np.pi))
    return boost @ rot
