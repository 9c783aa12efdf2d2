"""Maps between 4-spinors, the 4x4 bispinor U and the 16 tensor components.

Two independent routes produce a :class:`TensorSet` from a spinor pair:
``decompose_pair`` evaluates closed bilinear formulas directly in the
components ``(A, B, C, D)`` and ``(M, N, K, L)``, while
``decompose_bispinor`` extracts the same numbers from any 4x4 matrix through
2-spinor traces.  ``reconstruct_bispinor`` is the inverse of the trace route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .algebra import (
    CALIBRATION,
    TENSOR_PAIRS,
    build_pauli_basis,
    build_sigma_generators,
    complex_dot3,
    lower,
    lower2,
)

GROUPS = ("scalar", "pseudoscalar", "vector", "pseudovector", "tensor")


def _as_vector(values, n: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(-1)
    if arr.shape != (n,):
        raise ValueError(f"{name} needs {n} components, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite components")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Spinor4:
    """Components ``(A, B, C, D) = (xi^1, xi^2, eta_1dot, eta_2dot)``."""

    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _as_vector(self.data, 4, "Spinor4"))

    @classmethod
    def of(cls, a=0, b=0, c=0, d=0) -> Spinor4:
        return cls(np.array([a, b, c, d], dtype=np.complex128))

    @classmethod
    def zero(cls) -> Spinor4:
        return cls(np.zeros(4))

    a = property(lambda self: complex(self.data[0]))
    b = property(lambda self: complex(self.data[1]))
    c = property(lambda self: complex(self.data[2]))
    d = property(lambda self: complex(self.data[3]))

    @property
    def xi(self) -> np.ndarray:
        return self.data[:2]

    @property
    def eta(self) -> np.ndarray:
        return self.data[2:]

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __iter__(self) -> Iterator[complex]:
        return (complex(x) for x in self.data)

    def __add__(self, other: Spinor4) -> Spinor4:
        return Spinor4(self.data + other.data)

    def __sub__(self, other: Spinor4) -> Spinor4:
        return Spinor4(self.data - other.data)

    def __mul__(self, k) -> Spinor4:
        return Spinor4(self.data * complex(k))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Spinor4({', '.join(f'{z:.6g}' for z in self)})"


@dataclass(frozen=True, eq=False)
class Bispinor:
    u: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=np.complex128)
        if u.shape != (4, 4):
            raise ValueError(f"Bispinor needs a 4x4 matrix, got shape {u.shape}")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    xi = property(lambda self: self.u[:2, :2])
    delta = property(lambda self: self.u[:2, 2:])
    w = property(lambda self: self.u[2:, :2])
    eta = property(lambda self: self.u[2:, 2:])

    @classmethod
    def from_blocks(cls, xi, delta, w, eta) -> Bispinor:
        return cls(np.block([[xi, delta], [w, eta]]))

    def minors2(self) -> np.ndarray:
        """All 2x2 minors; they vanish iff rank(u) <= 1."""
        u = self.u
        out = []
        for i in range(4):
            for j in range(i + 1, 4):
                for k in range(4):
                    for l in range(k + 1, 4):
                        out.append(u[i, k] * u[j, l] - u[i, l] * u[j, k])
        return np.array(out)

    def __add__(self, other: Bispinor) -> Bispinor:
        return Bispinor(self.u + other.u)


@dataclass(frozen=True, eq=False)
class TensorSet:
    """The 16 complex Dirac-Kahler components.

    ``tensor`` holds Psi^{01}, Psi^{02}, Psi^{03}, Psi^{23}, Psi^{31}, Psi^{12};
    use :meth:`antisymmetric` or :meth:`component` for full index access.
    """

    scalar: complex
    pseudoscalar: complex
    vector: np.ndarray
    pseudovector: np.ndarray
    tensor: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "scalar", complex(self.scalar))
        object.__setattr__(self, "pseudoscalar", complex(self.pseudoscalar))
        object.__setattr__(self, "vector", _as_vector(self.vector, 4, "vector"))
        object.__setattr__(self, "pseudovector", _as_vector(self.pseudovector, 4, "pseudovector"))
        object.__setattr__(self, "tensor", _as_vector(self.tensor, 6, "tensor"))

    @classmethod
    def zeros(cls) -> TensorSet:
        return cls(0, 0, np.zeros(4), np.zeros(4), np.zeros(6))

    @classmethod
    def from_array(cls, arr) -> TensorSet:
        arr = np.asarray(arr, dtype=np.complex128).reshape(-1)
        if arr.shape != (16,):
            raise ValueError("TensorSet.from_array expects 16 components")
        return cls(arr[0], arr[1], arr[2:6], arr[6:10], arr[10:16])

    @classmethod
    def basis(cls, i: int) -> TensorSet:
        e = np.zeros(16, dtype=np.complex128)
        e[i] = 1.0
        return cls.from_array(e)

    @classmethod
    def from_antisymmetric(cls, scalar, pseudoscalar, vector, pseudovector, t) -> TensorSet:
        t = np.asarray(t)
        return cls(scalar, pseudoscalar, vector, pseudovector, [t[k, l] for k, l in TENSOR_PAIRS])

    def to_array(self) -> np.ndarray:
        return np.concatenate([[self.scalar, self.pseudoscalar], self.vector, self.pseudovector, self.tensor])

    def antisymmetric(self) -> np.ndarray:
        t = np.zeros((4, 4), dtype=np.complex128)
        for (k, l), v in zip(TENSOR_PAIRS, self.tensor):
            t[k, l] = v
            t[l, k] = -v
        return t

    def component(self, a: int, b: int) -> complex:
        return complex(self.antisymmetric()[a, b])

    def group(self, name: str) -> np.ndarray:
        if name not in GROUPS:
            raise KeyError(name)
        value = getattr(self, name)
        return np.atleast_1d(np.asarray(value, dtype=np.complex128))

    def group_norm(self, name: str) -> float:
        return float(np.linalg.norm(self.group(name)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_array()))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.to_array())))

    def __add__(self, other: TensorSet) -> TensorSet:
        return TensorSet.from_array(self.to_array() + other.to_array())

    def __sub__(self, other: TensorSet) -> TensorSet:
        return TensorSet.from_array(self.to_array() - other.to_array())

    def __mul__(self, k) -> TensorSet:
        return TensorSet.from_array(self.to_array() * complex(k))

    __rmul__ = __mul__

    def __neg__(self) -> TensorSet:
        return self * -1


@dataclass(frozen=True, eq=False)
class IsotropicPair:
    s: np.ndarray
    t: np.ndarray

    def ss(self) -> complex:
        return complex_dot3(self.s, self.s)

    def tt(self) -> complex:
        return complex_dot3(self.t, self.t)

    def st(self) -> complex:
        return complex_dot3(self.s, self.t)


def _spinor(x) -> Spinor4:
    return x if isinstance(x, Spinor4) else Spinor4(x)


def outer_product(phi, psi) -> Bispinor:
    phi, psi = _spinor(phi), _spinor(psi)
    return Bispinor(np.outer(phi.data, psi.data))


def decompose_pair(phi, psi) -> TensorSet:
    """Tensor components of ``phi (x) psi`` from the closed bilinear formulas."""
    A, B, C, D = _spinor(phi).data
    M, N, K, L = _spinor(psi).data
    scalar = -(B * M - A * N + C * L - D * K) / 4j
    pseudoscalar = -(B * M - A * N - C * L + D * K) / 4
    vector = [
        (A * L - B * K + D * M - C * N) / 4,
        -(A * K - B * L + C * M - D * N) / 4,
        -1j * (A * K + B * L + C * M + D * N) / 4,
        (B * K + A * L + D * M + C * N) / 4,
    ]
    pseudovector = [
        (A * L - B * K - D * M + C * N) / 4j,
        -(A * K - B * L - C * M + D * N) / 4j,
        -(A * K + B * L - C * M - D * N) / 4,
        (B * K + A * L - D * M - C * N) / 4j,
    ]
    tensor = [
        1j * (A * M - B * N + C * K - D * L) / 4,   # 01
        -(A * M + B * N + C * K + D * L) / 4,       # 02
        -1j * (A * N + B * M + C * L + D * K) / 4,  # 03
        (A * M - B * N - C * K + D * L) / 4,        # 23
        1j * (A * M + B * N - C * K - D * L) / 4,   # 31
        -(A * N + B * M - C * L - D * K) / 4,       # 12
    ]
    return TensorSet(scalar, pseudoscalar, vector, pseudovector, tensor)


def decompose_quad(phi, psi, phi_p, psi_p) -> TensorSet:
    """Components of ``phi (x) psi + phi_p (x) psi_p``."""
    return decompose_pair(phi, psi) + decompose_pair(phi_p, psi_p)


def decompose_bispinor(U) -> TensorSet:
    """Extract the 16 components of an arbitrary 4x4 matrix by 2-spinor traces."""
    U = U if isinstance(U, Bispinor) else Bispinor(U)
    pb = build_pauli_basis()
    gen = build_sigma_generators()
    xi, delta, w, eta = (blk / CALIBRATION for blk in (U.xi, U.delta, U.w, U.eta))

    # -i S - P and -i S + P
    xi_part = 0.5 * np.trace(pb.eps @ xi)
    eta_part = 0.5 * np.trace(pb.eps_dot_inv @ eta)
    scalar = (xi_part + eta_part) / -2j
    pseudoscalar = (eta_part - xi_part) / 2

    # V + i PV and V - i PV
    plus = np.array([0.5 * np.trace(pb.eps_dot_inv @ pb.sigma_up[l] @ delta) for l in range(4)])
    minus = np.array([0.5 * np.trace(pb.eps @ pb.sigma_bar[l] @ w) for l in range(4)])
    vector = (plus + minus) / 2
    pseudovector = (plus - minus) / 2j

    # self-dual half from xi, anti-self-dual half from eta; their sum is -2i Psi^{kl}
    tensor = [
        (np.trace(pb.eps @ gen.sigma_kl[k, l] @ xi) + np.trace(pb.eps_dot_inv @ gen.sigma_bar_kl[k, l] @ eta)) / -2j
        for k, l in TENSOR_PAIRS
    ]
    return TensorSet(scalar, pseudoscalar, vector, pseudovector, tensor)


def reconstruct_bispinor(T: TensorSet) -> Bispinor:
    """Assemble U from its Clifford expansion written in 2-spinor blocks."""
    pb = build_pauli_basis()
    gen = build_sigma_generators()
    v_low = lower(T.vector)
    pv_low = lower(T.pseudovector)
    t_low = lower2(T.antisymmetric())

    delta = sum((v_low[l] + 1j * pv_low[l]) * pb.sigma_bar[l] for l in range(4)) @ pb.eps_dot
    # the W block pairs with sigma^l so that the sigma_bar trace inverts it
    w = sum((v_low[l] - 1j * pv_low[l]) * pb.sigma_up[l] for l in range(4)) @ pb.eps_inv
    sig = sum(gen.sigma_kl[m, n] * t_low[m, n] for m in range(4) for n in range(4))
    sigb = sum(gen.sigma_bar_kl[m, n] * t_low[m, n] for m in range(4) for n in range(4))
    xi = ((-1j * T.scalar - T.pseudoscalar) * np.eye(2) + 1j * sig) @ pb.eps_inv
    eta = ((-1j * T.scalar + T.pseudoscalar) * np.eye(2) + 1j * sigb) @ pb.eps_dot
    return Bispinor(CALIBRATION * np.block([[xi, delta], [w, eta]]))


def linear_map_matrix() -> np.ndarray:
    """16x16 matrix of ``reconstruct_bispinor`` (TensorSet array -> flattened U)."""
    cols = [reconstruct_bispinor(TensorSet.basis(i)).u.reshape(-1) for i in range(16)]
    return np.array(cols).T


def decomposition_matrix() -> np.ndarray:
    """16x16 matrix of ``decompose_bispinor`` (flattened U -> TensorSet array)."""
    cols = []
    for i in range(16):
        e = np.zeros(16, dtype=np.complex128)
        e[i] = 1.0
        cols.append(decompose_bispinor(e.reshape(4, 4)).to_array())
    return np.array(cols).T


def isotropic_pair(T: TensorSet) -> IsotropicPair:
    t = T.antisymmetric()
    space = np.array([t[0, 1], t[0, 2], t[0, 3]])
    dual = np.array([t[2, 3], t[3, 1], t[1, 2]])
    return IsotropicPair(space + 1j * dual, space - 1j * dual)
