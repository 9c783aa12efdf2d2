from __future__ import annotations

import numpy as np
import pytest

from conftest import linear_fit_r2, rand_spinor
from dirac_kahler.algebra import gamma_matrices, lower
from dirac_kahler.decomposition import Spinor4, TensorSet, decompose_pair
from dirac_kahler.dynamics import (
    SINGULAR,
    OffShellError,
    PlaneWaveField,
    dirac_plane_wave,
    dirac_residual,
    linear_report,
    linear_system_residual,
    nonlinear_report,
    nonlinear_system_residual,
    on_shell_momentum,
    rewrite_envelope,
    substituted_vectors,
)
from dirac_kahler.lorentz import element_from_boost, random_element, transform_spinor


def rand_momentum(rng, mass=None):
    mass = rng.uniform(0.5, 2.0) if mass is None else mass
    return on_shell_momentum(rng.normal(scale=2.0, size=3), mass), mass


def waves(p, mass, b1, b2):
    return (PlaneWaveField(p, mass, dirac_plane_wave(p, mass, b1)),
            PlaneWaveField(p, mass, dirac_plane_wave(p, mass, b2)))


@pytest.mark.parametrize("branch", [0, 1])
def test_rest_frame_spinor_is_gamma0_eigenvector(branch):
    M = 1.7
    u = dirac_plane_wave([M, 0, 0, 0], M, branch).data
    assert np.allclose(gamma_matrices()[0] @ u, u, atol=1e-15)
    assert np.linalg.norm(u) == pytest.approx(1)


def test_boosted_spinor_matches_boost_of_rest_spinor(rng):
    for _ in range(20):
        p, M = rand_momentum(rng)
        p3 = p[1:]
        chi = np.arcsinh(np.linalg.norm(p3) / M)
        g = element_from_boost(p3 / np.linalg.norm(p3), chi)
        for b in (0, 1):
            moved = transform_spinor(g, dirac_plane_wave([M, 0, 0, 0], M, b)).data
            u = dirac_plane_wave(p, M, b).data
            assert np.allclose(u, moved / np.linalg.norm(moved), atol=1e-12)


def test_plane_wave_solves_dirac_equation(rng):
    for _ in range(50):
        p, M = rand_momentum(rng)
        for b in (0, 1):
            assert dirac_residual(p, M, dirac_plane_wave(p, M, b)) < 1e-12 * max(1.0, p[0])


def test_bad_inputs_rejected():
    with pytest.raises(OffShellError):
        dirac_plane_wave([1.0, 0.5, 0, 0], 1.0, 0)
    with pytest.raises(ValueError):
        dirac_plane_wave([1.0, 0, 0, 0], 1.0, 2)
    with pytest.raises(ValueError):
        on_shell_momentum([0, 0, 0], -1.0)
    p, q = on_shell_momentum([0, 0, 0], 1.0), on_shell_momentum([0.1, 0, 0], 1.0)
    u = dirac_plane_wave(p, 1.0, 0)
    with pytest.raises(ValueError):
        linear_system_residual(PlaneWaveField(p, 1.0, u), PlaneWaveField(q, 1.0, u))


def test_rest_pair_satisfies_linear_system():
    p = on_shell_momentum([0, 0, 0], 1.0)
    rep = linear_system_residual(*waves(p, 1.0, 0, 0))
    assert rep.verdict == "holds" and rep.max_residual < 1e-10
    assert set(rep.residuals) == {"E1", "E2", "E3", "E4", "E5"}
    assert [len(rep.residuals[g]) for g in ("E1", "E2", "E3", "E4", "E5")] == [1, 1, 4, 4, 6]


def test_zero_amplitude_gives_zero_residuals():
    p = on_shell_momentum([0.3, 0, 0], 1.0)
    z = PlaneWaveField(p, 1.0, Spinor4.zero())
    assert linear_system_residual(z, z).max_residual == 0


def test_linear_system_across_momenta(rng):
    for _ in range(50):
        p, M = rand_momentum(rng)
        for b1 in (0, 1):
            for b2 in (0, 1):
                assert linear_system_residual(*waves(p, M, b1, b2)).max_residual < 1e-10


def test_only_left_spinor_needs_to_solve_dirac(rng):
    p, M = rand_momentum(rng)
    phi, _ = waves(p, M, 0, 0)
    arbitrary = PlaneWaveField(p, M, rand_spinor(rng))
    assert linear_system_residual(phi, arbitrary).max_residual < 1e-10
    assert linear_system_residual(arbitrary, phi).max_residual > 1e-3


def test_residual_linear_in_boson_mass_offset(rng):
    p, M = rand_momentum(rng)
    phi, psi = waves(p, M, 0, 1)
    offsets = np.linspace(0.01, 0.05, 5)
    res = [linear_system_residual(phi, psi, boson_mass=2 * M + e).max_residual for e in offsets]
    slope, r2 = linear_fit_r2(offsets, res)
    assert slope > 0 and r2 > 0.999


def test_residual_linear_in_off_shell_perturbation(rng):
    for _ in range(10):
        p, M = rand_momentum(rng)
        phi, psi = waves(p, M, 0, 1)
        kick = rand_spinor(rng)
        deltas = np.linspace(1e-3, 5e-3, 5)
        res = [linear_system_residual(PlaneWaveField(p, M, phi.amplitude + kick * d), psi).max_residual
               for d in deltas]
        slope, r2 = linear_fit_r2(deltas, res)
        assert slope > 0 and r2 > 0.999


def test_uncontracted_first_equation_is_not_satisfied(rng):
    p, M = rand_momentum(rng)
    rep = linear_system_residual(*waves(p, M, 0, 1))
    assert rep.verdict == "holds"
    assert max(rep.variants["E1_uncontracted"]) > 1e-3


def test_nonlinear_rewrite_on_solutions(rng):
    for _ in range(50):
        p, M = rand_momentum(rng)
        rep = nonlinear_system_residual(*waves(p, M, 0, 1))
        assert rep.status == "ok"
        assert rep.max_residual < 1e-9


def test_nonlinear_rewrite_singular_cases(rng):
    p, M = rand_momentum(rng)
    assert nonlinear_system_residual(*waves(p, M, 0, 0)).verdict == SINGULAR
    phi = dirac_plane_wave(p, M, 1)
    mu, nu = 1.5 - 0.5j, 0.3 + 2j
    psi = Spinor4.of(mu * phi.a, mu * phi.b, nu * phi.c, nu * phi.d)
    rep = nonlinear_system_residual(PlaneWaveField(p, M, phi), PlaneWaveField(p, M, psi))
    assert rep.verdict == SINGULAR and rep.residuals == {}


def test_rewrite_consistent_with_pair_identities(rng):
    T = decompose_pair(rand_spinor(rng), rand_spinor(rng))
    v, pv = substituted_vectors(T)
    assert np.allclose(v, lower(T.vector), atol=1e-12)
    assert np.allclose(pv, lower(T.pseudovector), atol=1e-12)


def test_rewrite_bounded_by_envelope(rng):
    for _ in range(100):
        p, M = rand_momentum(rng)
        phi, psi = waves(p, M, 0, 1)
        T = decompose_pair(phi.amplitude, psi.amplitude)
        noisy = T + TensorSet.from_array(1e-4 * (rng.normal(size=16) + 1j * rng.normal(size=16)))
        k, m = 2 * p, 2 * M
        assert nonlinear_report(noisy, k, m).max_residual <= rewrite_envelope(noisy, k, m)
        assert linear_report(noisy, k, m).max_residual > 0


def test_homogeneity(rng):
    p, M = rand_momentum(rng)
    phi, psi = waves(p, M, 0, 1)
    off = PlaneWaveField(p, M, phi.amplitude + rand_spinor(rng) * 0.01)
    base_lin = linear_system_residual(off, psi).max_residual
    base_non = nonlinear_system_residual(off, psi).max_residual
    for lam in (0.1, 3.0):
        assert linear_system_residual(off.scaled(lam), psi.scaled(lam)).max_residual == pytest.approx(
            lam**2 * base_lin, rel=1e-9)
        assert nonlinear_system_residual(off.scaled(lam), psi.scaled(lam)).max_residual == pytest.approx(
            lam**2 * base_non, rel=1e-9)


def test_linear_system_covariant(rng):
    for _ in range(20):
        p, M = rand_momentum(rng)
        phi, psi = waves(p, M, 0, 1)
        g = random_element(rng, max_rapidity=1.0)
        q = g.induced @ p
        moved = [PlaneWaveField(q, M, transform_spinor(g, w.amplitude)) for w in (phi, psi)]
        assert linear_system_residual(*moved).max_residual < 1e-10
        assert linear_system_residual(phi, psi).max_residual < 1e-10


def test_report_serializes(rng):
    p, M = rand_momentum(rng)
    d = nonlinear_system_residual(*waves(p, M, 0, 1)).to_dict()
    assert d["kind"] == "nonlinear" and d["verdict"] == "holds"
    assert set(d["variant_max_residuals"]) == {"N1_uncontracted", "N2_uncontracted", "N3_tilde_prefactor"}
