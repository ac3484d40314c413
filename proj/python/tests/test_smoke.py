import math

import numpy as np
import pytest

import longwalk as lw


def test_hand_chain():
    s = lw.channel_spectrum([1.0, 2.0, 2.0, 1.0])
    np.testing.assert_allclose(s.energies, [3, 1, 0, -1, -3], atol=1e-13)
    np.testing.assert_allclose(s.amplitudes[2], [2 / 3, 0, -1 / 3, 0, 2 / 3], atol=1e-13)
    assert lw.q_factor(s) ** 2 == pytest.approx(41 / 36, rel=1e-12)
    assert lw.choose_g(s, 0.06) == pytest.approx(0.14056, rel=1e-4)


def test_chain_against_numpy():
    chain = lw.build_effective_chain(1, 1.3, 10)
    h = np.diag(chain.bonds, 1) + np.diag(chain.bonds, -1)
    ref = np.linalg.eigvalsh(h)[::-1]
    np.testing.assert_allclose(lw.chain_spectrum(chain).energies, ref, atol=1e-12)


def test_transfer_meets_target():
    chain = lw.build_effective_chain(1, 1.2, 12)
    spec = lw.chain_spectrum(chain)
    out = lw.exact_transfer(lw.attach_endpoints(chain, lw.choose_g(spec, 0.01)))
    assert out["infidelity_exact"] <= 0.01
    assert out["infidelity_bound"] <= 0.01
    assert out["conditions"] == {"gap": True, "weak": True}


def test_precision_guard_carries_max_l():
    with pytest.raises(lw.PrecisionGuardError) as info:
        lw.build_effective_chain(3, 1.5, 60)
    assert info.value.max_admissible_l == lw.max_admissible_depth(3, 1.5)
    assert isinstance(info.value, ValueError)


def test_uniform_regime_error():
    with pytest.raises(lw.DomainError):
        lw.uniform_transfer(1, 0.6, 4)
    out = lw.uniform_transfer(1, 0.0, 4)
    assert out["time"] == pytest.approx(math.pi / 2)
    assert out["fidelity"] >= 1 - 1e-9


def test_lattice_reduction():
    s = lw.lattice_summary(1, 0.0, 2)
    assert s["sides"] == [1, 2, 4, 2, 1]
    assert s["bonds"] == pytest.approx([1, 2, 2, 1])
    assert s["closure_residual"] <= 1e-12
    h = lw.lattice_hamiltonian(2, 1.3, 2, 0.05)
    assert h.shape == (28, 28)
    np.testing.assert_array_equal(h, h.T)


def test_ring():
    np.testing.assert_allclose(lw.ring_energies(1, 4, 1.0), [2.5, -0.5, -1.5, -0.5], atol=1e-14)
    row = [0.0] + [1.0 / min(r, 64 - r) ** 1.5 for r in range(1, 64)]
    ref = np.fft.fft(row).real
    np.testing.assert_allclose(lw.ring_energies(1, 64, 1.5), ref, atol=1e-12)
    out = lw.ring_transfer(1, 100, 1.0, 0.02)
    assert abs(out["infidelity_exact"] - out["infidelity_perturbative"]) <= 0.2 * out["infidelity_exact"]


def test_scaling():
    assert lw.lr_exponent(2, 2.0)["regime"] == "log"
    assert lw.lr_exponent(1, 1.7)["exponent"] == pytest.approx(0.7)
    s = lw.q_scaling_sweep(1, 1.2, 4, 60)
    assert abs(s["slope"] - 0.2) < 0.03
    sizes = [2.0**p for p in range(4, 14)]
    loc = lw.local_exponents(sizes, [x**1.5 for x in sizes], 3)
    np.testing.assert_allclose(loc["local_exponents"], 1.5, atol=1e-10)
    assert loc["extrapolated"] == pytest.approx(1.5, abs=1e-6)
