from __future__ import annotations

import itertools

import numpy as np
import pytest

from dirac_kahler.algebra import (
    CALIBRATION,
    METRIC,
    build_pauli_basis,
    build_sigma_generators,
    gamma_matrices,
    levi_civita,
    levi_civita_tensor,
    minkowski_contract,
)


def test_sigma_zero_is_identity():
    assert np.array_equal(build_pauli_basis().sigma_up[0], np.eye(2))


def test_eps_matrix():
    pb = build_pauli_basis()
    assert np.array_equal(pb.eps, np.array([[0, 1], [-1, 0]]))
    sigma_y = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(pb.eps, 1j * sigma_y)
    assert np.allclose(pb.eps @ pb.eps_inv, np.eye(2))
    assert np.allclose(pb.eps_dot @ pb.eps_dot_inv, np.eye(2))


def test_clifford_relation_all_pairs():
    pb = build_pauli_basis()
    for a, b in itertools.product(range(4), repeat=2):
        lhs = pb.sigma_up[a] @ pb.sigma_bar[b] + pb.sigma_up[b] @ pb.sigma_bar[a]
        assert np.max(np.abs(lhs - 2 * METRIC[a, b] * np.eye(2))) < 1e-14


def test_gamma_clifford():
    g = gamma_matrices()
    for a, b in itertools.product(range(4), repeat=2):
        assert np.allclose(g[a] @ g[b] + g[b] @ g[a], 2 * METRIC[a, b] * np.eye(4), atol=1e-14)


def test_sigma_generators_antisymmetric():
    sg = build_sigma_generators()
    for (k, l), m in sg.sigma_kl.items():
        assert np.allclose(m, -sg.sigma_kl[(l, k)])
        assert np.allclose(sg.sigma_bar_kl[(k, l)], -sg.sigma_bar_kl[(l, k)])
    assert all(np.allclose(sg.sigma_kl[(k, k)], 0) for k in range(4))


def test_sigma_generator_duality():
    sg = build_sigma_generators()
    eps = levi_civita_tensor()
    low = {key: METRIC[key[0], key[0]] * METRIC[key[1], key[1]] for key in sg.sigma_kl}
    for k, l in [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)]:
        dual = sum(eps[k, l, m, n] * low[(m, n)] * sg.sigma_kl[(m, n)] for m in range(4) for n in range(4))
        dual_bar = sum(
            eps[k, l, m, n] * low[(m, n)] * sg.sigma_bar_kl[(m, n)] for m in range(4) for n in range(4)
        )
        assert np.allclose(0.5j * dual, sg.sigma_kl[(k, l)], atol=1e-14)
        assert np.allclose(0.5j * dual_bar, -sg.sigma_bar_kl[(k, l)], atol=1e-14)


def test_calibration_is_unity():
    assert CALIBRATION == 1.0


@pytest.mark.parametrize(
    "v, w, expected",
    [((1, 0, 0, 0), (1, 0, 0, 0), 1), ((0, 1, 0, 0), (0, 1, 0, 0), -1), ((1, 1, 0, 0), (1, -1, 0, 0), 2)],
)
def test_minkowski_contract(v, w, expected):
    assert minkowski_contract(v, w) == expected


@pytest.mark.parametrize("idx, expected", [((0, 1, 2, 3), 1), ((1, 0, 2, 3), -1), ((0, 0, 2, 3), 0)])
def test_levi_civita_examples(idx, expected):
    assert levi_civita(*idx) == expected


def test_levi_civita_total_antisymmetry():
    for perm in itertools.permutations(range(4)):
        for i, j in itertools.combinations(range(4), 2):
            swapped = list(perm)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            assert levi_civita(*swapped) == -levi_civita(*perm)


def test_levi_civita_rejects_bad_index():
    with pytest.raises(ValueError):
        levi_civita(0, 1, 2, 4)
