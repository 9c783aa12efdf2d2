"""Fixed algebraic conventions shared by every other module.

Metric signature is (+, -, -, -) and the Levi-Civita symbol is normalized
with ``eps^{0123} = +1``.  Two-spinor matrices follow the layout of a
4-spinor ``(xi^1, xi^2, eta_1dot, eta_2dot)``:

* ``sigma^a = (I, +sigma_j)`` and ``sigma_bar^a = (I, -sigma_j)``;
* ``eps = +i sigma_2`` for both undotted and dotted indices;
* ``Sigma^{kl} = (sigma_bar^k sigma^l - sigma_bar^l sigma^k) / 4`` acts on the
  undotted block and is self-dual, ``Sigma_bar^{kl}`` (opposite ordering) acts
  on the dotted block and is anti-self-dual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

I2 = np.eye(2, dtype=np.complex128)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# Storage order of the independent antisymmetric tensor components.
TENSOR_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

DEFAULT_TOL = 1e-12

# Scalar relating the Clifford expansion to the rank-1 product U = Phi (x) Psi.
# Fixed by the round-trip decompose(reconstruct(T)) == T; see tests/test_decomposition.py.
CALIBRATION = 1.0


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PauliBasis:
    sigma_up: tuple[np.ndarray, ...]
    sigma_down: tuple[np.ndarray, ...]
    eps: np.ndarray
    eps_inv: np.ndarray
    eps_dot: np.ndarray
    eps_dot_inv: np.ndarray

    @property
    def sigma_bar(self) -> tuple[np.ndarray, ...]:
        # sigma_bar^a has the same entries as sigma_a
        return self.sigma_down


@dataclass(frozen=True, eq=False)
class SigmaGenerators:
    """Spin generators keyed by ordered index pair; ``sigma_kl[(k, l)]``."""

    sigma_kl: dict
    sigma_bar_kl: dict


@lru_cache(maxsize=None)
def build_pauli_basis() -> PauliBasis:
    up = tuple(_frozen(m) for m in (I2, *PAULI))
    down = tuple(_frozen(m) for m in (I2, *(-s for s in PAULI)))
    eps = _frozen(1j * PAULI[1])
    eps_inv = _frozen(-1j * PAULI[1])
    return PauliBasis(up, down, eps, eps_inv, eps, eps_inv)


@lru_cache(maxsize=None)
def build_sigma_generators() -> SigmaGenerators:
    pb = build_pauli_basis()
    su, sb = pb.sigma_up, pb.sigma_bar
    sig, sigb = {}, {}
    for k in range(4):
        for l in range(4):
            sig[k, l] = _frozen(0.25 * (sb[k] @ su[l] - sb[l] @ su[k]))
            sigb[k, l] = _frozen(0.25 * (su[k] @ sb[l] - su[l] @ sb[k]))
    return SigmaGenerators(sig, sigb)


def gamma_matrices() -> tuple[np.ndarray, ...]:
    """Dirac matrices ``[[0, sigma_bar^a], [sigma^a, 0]]`` in the 2-spinor basis."""
    pb = build_pauli_basis()
    z = np.zeros((2, 2), dtype=np.complex128)
    return tuple(_frozen(np.block([[z, pb.sigma_bar[a]], [pb.sigma_up[a], z]])) for a in range(4))


def levi_civita(k: int, l: int, m: int, n: int) -> int:
    idx = (k, l, m, n)
    if any(not 0 <= i <= 3 for i in idx):
        raise ValueError(f"indices must lie in 0..3, got {idx}")
    if len(set(idx)) < 4:
        return 0
    sign = 1
    for i, j in itertools.combinations(range(4), 2):
        if idx[i] > idx[j]:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def levi_civita_tensor() -> np.ndarray:
    """``eps^{klmn}`` with all indices up, as a dense 4x4x4x4 array."""
    out = np.zeros((4, 4, 4, 4))
    for idx in itertools.permutations(range(4)):
        out[idx] = levi_civita(*idx)
    out.setflags(write=False)
    return out


def minkowski_contract(v, w) -> complex:
    v = np.asarray(v, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if v.shape != (4,) or w.shape != (4,):
        raise ValueError("minkowski_contract expects two 4-component vectors")
    return complex(v[0] * w[0] - v[1] * w[1] - v[2] * w[2] - v[3] * w[3])


def lower(v) -> np.ndarray:
    return METRIC @ np.asarray(v)


def lower2(t) -> np.ndarray:
    return METRIC @ np.asarray(t) @ METRIC


def complex_dot3(x, y) -> complex:
    """Bilinear (non-conjugating) Euclidean dot product of complex 3-vectors."""
    return complex(np.dot(np.asarray(x), np.asarray(y)))
