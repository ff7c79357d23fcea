import math

import numpy as np
import pytest

from rotifuge import dynamics, observables as obs, rotor, wigner
from rotifuge.constants import TWO_PI_C
from rotifuge.coupling import StateKey


def _quadrature_grid(n_theta=48, n_angle=40):
    th, w = wigner.gl_quadrature_theta(n_theta)
    ph = np.linspace(0, 2 * math.pi, n_angle, endpoint=False)
    ch = np.linspace(0, 2 * math.pi, n_angle, endpoint=False)
    TH, PH, CH = np.meshgrid(th, ph, ch, indexing="ij")
    dA = (2 * math.pi / n_angle) ** 2
    return TH, PH, CH, w, dA


def _angular_integral(values, w, dA):
    return np.einsum("i,ijk->", w, values) * dA


def test_single_state_normalization_quadrature(d2s):
    TH, PH, CH, w, dA = _quadrature_grid()
    for J, axis in [(0, "b"), (6, "b"), (8, "a")]:
        st = (
            rotor.diagonalize_multiplet(0, d2s)[0]
            if J == 0
            else rotor.find_principal_state(J, axis, d2s, tau=0, embedding="b")
        )
        pkt = obs.AngularPacket([obs.component_from_state(st, M=J)], [1.0])
        vals = np.abs(pkt.values(TH.ravel(), PH.ravel(), CH.ravel())) ** 2
        norm = _angular_integral(vals.reshape(TH.shape), w, dA)
        assert norm == pytest.approx(1.0, abs=1e-8)


def test_packet_normalization_mc(d2s):
    st = rotor.find_principal_state(6, "b", d2s, tau=0)
    pkt = obs.AngularPacket([obs.component_from_state(st, M=6)], [1.0])
    rng = np.random.default_rng(0)
    th, ph, ch = obs.sample_haar(rng, 400_000)
    vals = np.abs(pkt.values(th, ph, ch)) ** 2
    norm = 8 * math.pi**2 * np.mean(vals)
    assert norm == pytest.approx(1.0, abs=1e-2)


def test_j0_state_is_uniform(d2s):
    st = rotor.diagonalize_multiplet(0, d2s)[0]
    pkt = obs.AngularPacket([obs.component_from_state(st, M=0)], [1.0])
    v = pkt.values(np.array([0.3, 1.0]), np.array([0.0, 2.0]), np.array([1.0, 5.0]))
    assert np.allclose(v, 1.0 / math.sqrt(8 * math.pi**2))


def test_stretched_density_profile():
    J = 7
    pkt = obs.AngularPacket([obs.handed_component(J)], [1.0])
    th = np.array([0.2, 0.9, 1.7])
    dens = np.abs(pkt.values(th, np.zeros(3), np.zeros(3))) ** 2
    ratio = dens / np.cos(th / 2) ** (4 * J)
    assert np.allclose(ratio, ratio[0], rtol=1e-12)


def test_general_m_matches_kernel_path(d2s):
    # M < J forces the generic small-d route; M = J uses the fast kernel.
    st = rotor.find_principal_state(5, "a", d2s, tau=0, embedding="b")
    rng = np.random.default_rng(1)
    th, ph, ch = obs.sample_haar(rng, 200)
    comp_fast = obs.component_from_state(st, M=5)
    out_fast = np.zeros(200, dtype=complex)
    comp_fast.values(th, ph, ch, out_fast, 1.0)
    # evaluate the same state through the generic path by faking M != J
    comp_slow = obs.component_from_state(st, M=5)
    comp_slow.M = 5
    out_slow = np.zeros(200, dtype=complex)
    ks, amps = st.signed_amplitudes()
    for k, a in zip(ks, amps):
        if a:
            out_slow += (
                a
                * math.sqrt((2 * 5 + 1) / (8 * math.pi**2))
                * wigner.small_d(5, 5, int(k), th)
                * np.exp(1j * (5 * ph + k * ch))
            )
    assert np.allclose(out_fast, out_slow, atol=1e-12)


def test_mc_isotropic_cosines(d2s):
    st = rotor.diagonalize_multiplet(0, d2s)[0]
    pkt = obs.AngularPacket([obs.component_from_state(st, M=0)], [1.0])
    for name in ("bZX", "aXY", "cZY"):
        axis, ref, other = obs.parse_cosine(name)
        est = obs.alignment_cos2_mc(pkt, axis, ref + other, n_samples=100_000, seed=3)
        assert abs(est.value - 0.5) < 3 * est.stderr + 1e-3


def test_mc_seed_reproducibility(d2s):
    st = rotor.find_principal_state(10, "b", d2s, tau=0)
    pkt = obs.AngularPacket([obs.component_from_state(st, M=10)], [1.0])
    a = obs.alignment_cos2_mc(pkt, "b", "ZX", n_samples=50_000, seed=9)
    b = obs.alignment_cos2_mc(pkt, "b", "ZX", n_samples=50_000, seed=9)
    c = obs.alignment_cos2_mc(pkt, "b", "ZX", n_samples=50_000, seed=10)
    assert a.value == b.value and a.stderr == b.stderr
    assert a.value != c.value


def test_mc_minimum_samples(d2s):
    st = rotor.diagonalize_multiplet(0, d2s)[0]
    pkt = obs.AngularPacket([obs.component_from_state(st, M=0)], [1.0])
    with pytest.raises(rotor.ConfigError):
        obs.alignment_cos2_mc(pkt, "b", "ZX", n_samples=100, seed=0)


def test_phi_chi_integrals_vs_quadrature():
    # 64-point uniform grids integrate trig polynomials exactly
    x = np.linspace(0, 2 * math.pi, 64, endpoint=False)
    dx = 2 * math.pi / 64
    for n in range(-6, 7):
        phi_quad = np.sum(np.cos(x) ** 2 * np.exp(-1j * n * x)) * dx
        chi_quad = np.sum(np.exp(-1j * n * x)) * dx
        assert abs(obs.phi_integral(n) - phi_quad) < 1e-12
        assert abs(obs.chi_integral(n) - chi_quad) < 1e-12
    assert obs.phi_integral(2) == pytest.approx(math.pi / 2)
    assert obs.phi_integral(0) == pytest.approx(math.pi)
    assert obs.phi_integral(1) == 0.0
    assert obs.chi_integral(0) == pytest.approx(2 * math.pi)
    assert obs.chi_integral(3) == 0.0


def _handed_packet(j_values, energies, weights=None, phases=None):
    comps = [obs.handed_component(J, e) for J, e in zip(j_values, energies)]
    n = len(comps)
    w = np.full(n, 1.0 / math.sqrt(n)) if weights is None else np.asarray(weights)
    ph = np.zeros(n) if phases is None else np.asarray(phases)
    return obs.AngularPacket(comps, w * np.exp(-1j * ph))


def test_analytic_cos2phi_two_state_amplitude():
    # flat two-state packet: beat amplitude sqrt((2J+1)(2J+5))/(2(4J+6))
    J = 10
    pkt = _handed_packet([J, J + 2], [0.0, 216.0])
    t = np.linspace(0, 0.16, 1000)
    vals = obs.analytic_cos2phi(pkt, t)
    g = math.sqrt((2 * J + 1) * (2 * J + 5)) / (2 * (4 * J + 6))
    assert vals.max() == pytest.approx(0.5 + g, abs=1e-6)
    assert vals.min() == pytest.approx(0.5 - g, abs=1e-6)
    assert obs.analytic_cos2phi(pkt, 0.0) == pytest.approx(0.5 + g, rel=1e-12)


def test_analytic_cos2phi_single_state_constant():
    pkt = _handed_packet([8], [100.0], weights=[1.0])
    assert obs.analytic_cos2phi(pkt, 1.234) == 0.5


def test_analytic_full_reduces_for_pure_inputs():
    pkt = _handed_packet([6, 8, 10], [0.0, 150.0, 320.0])
    t = np.linspace(0, 0.3, 50)
    assert np.allclose(
        obs.analytic_cos2phi_full(pkt, t), obs.analytic_cos2phi(pkt, t), atol=1e-12
    )


def test_analytic_full_timeaverage_is_constant_term():
    J = 8
    gap = 200.0
    pkt = _handed_packet([J, J + 2], [0.0, gap])
    period = 1.0 / (0.0299792458 * gap)
    t = np.linspace(0.0, period, 20_000, endpoint=False)
    avg = np.mean(obs.analytic_cos2phi_full(pkt, t))
    assert avg == pytest.approx(0.5, abs=1e-10)


def test_analytic_full_vs_dense_quadrature(d2s):
    # exact expectation of cos^2(phi+chi) by brute-force quadrature for a
    # genuine mixed-K packet with J <= 8
    comps = [
        obs.component_from_state(rotor.find_principal_state(J, "b", d2s, tau=0), M=J)
        for J in (6, 8)
    ]
    amps = np.array([0.8, 0.6]) * np.exp(-1j * np.array([0.0, 0.9]))
    pkt = obs.AngularPacket(comps, amps, embedding="b")

    TH, PH, CH, w, dA = _quadrature_grid(40, 36)
    f = np.cos(PH + CH) ** 2
    for t in (0.0, 0.011, 0.05):
        vals = np.abs(pkt.values(TH.ravel(), PH.ravel(), CH.ravel(), t=t).reshape(TH.shape)) ** 2
        quad = _angular_integral(vals * f, w, dA)
        assert obs.analytic_cos2phi_full(pkt, t) == pytest.approx(quad, abs=1e-8)


def test_analytic_vs_mc_oracle(d2s):
    # the dominant-component formula is exact for idealized packets, so MC
    # sampling of cos^2(phi+chi) must agree within noise over a full beat
    pkt = _handed_packet([10, 12], [0.0, 216.0])
    period = 1.0 / (0.0299792458 * 216.0)
    fn = obs.cos2_inplane_angle_fn()
    for t in np.linspace(0, period, 5):
        est = obs.mc_expectation(pkt, {"p": fn}, 150_000, seed=4, t=t)["p"]
        assert abs(est.value - obs.analytic_cos2phi(pkt, t)) < 3 * est.stderr + 1e-4


def test_analytic_full_vs_mc_real_states(d2s):
    comps = [
        obs.component_from_state(rotor.find_principal_state(J, "b", d2s, tau=0), M=J)
        for J in (10, 12)
    ]
    pkt = obs.AngularPacket(comps, np.array([1.0, 1.0]) / math.sqrt(2), embedding="b")
    fn = obs.cos2_inplane_angle_fn()
    for t in (0.0, 0.04, 0.09):
        est = obs.mc_expectation(pkt, {"p": fn}, 200_000, seed=5, t=t)["p"]
        assert abs(est.value - obs.analytic_cos2phi_full(pkt, t)) < 3 * est.stderr + 1e-4


def test_analytic_full_rejects_mixed_parity(d2s):
    c1 = obs.component_from_state(rotor.get_state(6, 9, 0, d2s), M=6)
    c2 = obs.component_from_state(rotor.get_state(8, 11, 1, d2s), M=8)
    pkt = obs.AngularPacket([c1, c2], [0.7, 0.7])
    with pytest.raises(rotor.ConfigError, match="parit"):
        obs.analytic_cos2phi_full(pkt, 0.0)


def test_cogwheel_matches_wavefunction_pointwise():
    J = 10
    gap = 216.0
    pkt = _handed_packet([J, J + 2], [0.0, gap])
    omega = TWO_PI_C * gap
    rng = np.random.default_rng(6)
    th, ph, ch = obs.sample_haar(rng, 500)
    for t in (0.0, 0.03, 0.111):
        rho = obs.cogwheel_density(J, th, ph, ch, t, omega=omega)
        psi2 = np.abs(pkt.values(th, ph, ch, t=t)) ** 2
        mask = psi2 > 1e-30
        assert np.max(np.abs(rho[mask] - psi2[mask]) / psi2[mask]) < 1e-6


def test_cogwheel_normalization():
    TH, PH, CH, w, dA = _quadrature_grid(48, 32)
    rho = obs.cogwheel_density(6, TH, PH, CH, 0.0, omega=1.0)
    assert _angular_integral(rho, w, dA) == pytest.approx(1.0, abs=1e-10)


def test_cogwheel_symmetries():
    th, ph, ch = 0.4, 1.1, 2.7
    t = 0.123
    omega = 3.0
    base = obs.cogwheel_density(8, th, ph, ch, t, omega=omega)
    # two teeth: period pi in phi (+chi fixed)
    assert obs.cogwheel_density(8, th, ph + math.pi, ch, t, omega=omega) == pytest.approx(base, rel=1e-12)
    # full revolution in time
    T = 2 * math.pi / omega
    assert obs.cogwheel_density(8, th, ph, ch, t + T, omega=omega) == pytest.approx(base, rel=1e-12)
    # offsets shift the pattern
    shifted = obs.cogwheel_density(8, th, ph, ch, t, offsets=(0.0, 0.3, 0.0), omega=omega)
    assert shifted == pytest.approx(
        obs.cogwheel_density(8, th, ph - 0.3, ch, t, omega=omega), rel=1e-12
    )


def test_cogwheel_period_values():
    assert obs.cogwheel_period(0.0, 216.0) == pytest.approx(0.15443, abs=2e-4)
    assert obs.cogwheel_period(100.0, 532.0) == pytest.approx(
        obs.cogwheel_period(0.0, 864.0) * 2, rel=1e-12
    )
    with pytest.raises(rotor.ConfigError):
        obs.cogwheel_period(5.0, 5.0)


def test_density_cloud_isotropic_shell(d2s):
    st = rotor.diagonalize_multiplet(0, d2s)[0]
    pkt = obs.AngularPacket([obs.component_from_state(st, M=0)], [1.0])
    labels, pos = obs.density_cloud(pkt, d2s.geometry, 4000, seed=7)
    assert labels == ["D", "D", "S"]
    radii = np.linalg.norm(pos[:, 0, :], axis=1)
    r_expect = np.linalg.norm(d2s.geometry[0][1])
    assert np.allclose(radii, r_expect, atol=1e-12)
    mean_dir = np.abs(pos[:, 0, :].mean(axis=0)) / r_expect
    assert np.all(mean_dir < 0.05)  # isotropic when J = 0


def test_density_cloud_cogwheel_rotation(d2s):
    # After half a revolution period the cloud is the 90-degree rotation of
    # itself about Z; at fixed time it is invariant under 180 degrees.
    b10 = rotor.find_principal_state(10, "b", d2s, tau=0)
    b12 = rotor.find_principal_state(12, "b", d2s, tau=0)
    pkt = obs.AngularPacket(
        [obs.component_from_state(b10, 10), obs.component_from_state(b12, 12)],
        np.array([1.0, 1.0]) / math.sqrt(2),
        embedding="b",
    )
    T = obs.cogwheel_period(b10.energy_cm1, b12.energy_cm1)
    n = 60_000
    _, p0 = obs.density_cloud(pkt, d2s.geometry, n, seed=8, t=0.0)
    _, p1 = obs.density_cloud(pkt, d2s.geometry, n, seed=8, t=T / 2)

    def m2(p):  # second azimuthal moment of the D-atom cloud
        xy = p[:, 0, 0] + 1j * p[:, 0, 1]
        return np.mean((xy / np.abs(xy)) ** 2)

    m0, m1 = m2(p0), m2(p1)
    assert abs(m0) > 0.05  # teeth visible
    assert abs(m1 + m0) < 0.02  # rotated by pi/2: e^{2i(phi+pi/2)} = -e^{2i phi}
    odd = np.mean((p0[:, 0, 0] + 1j * p0[:, 0, 1]) / np.abs(p0[:, 0, 0] + 1j * p0[:, 0, 1]))
    assert abs(odd) < 0.02  # 180-degree symmetry kills odd moments


def test_rotation_axis_distribution(d2s):
    # symmetric-top stretched state: maximum exactly on the quantization axis
    sym = rotor.MoleculeSpec("sym", 9.0, 4.0, 4.0, (1, 1, 1))
    st = rotor.find_principal_state(6, "a", sym, tau=0, embedding="a")
    th, ph, q = obs.rotation_axis_distribution(st, 61, 32)
    imax = np.unravel_index(np.argmax(q), q.shape)[0]
    assert th[imax] in (th[0], th[-1])
    assert q.max() == pytest.approx(1.0)

    stb = rotor.find_principal_state(12, "b", d2s, tau=0)
    th, ph, q = obs.rotation_axis_distribution(stb, 121, 64)
    ridge = th[np.argmax(q.max(axis=1))]
    assert min(ridge, math.pi - ridge) < 0.35  # maxima near the +/- b poles

    with pytest.raises(rotor.ConfigError):
        obs.rotation_axis_distribution(rotor.diagonalize_multiplet(0, d2s)[0])


def test_alignment_trace_csv_deterministic(tmp_path, d2s):
    coh = obs.CoherenceSpec("b", 10, 12)
    pkt = coh.resolve(d2s)
    times = np.linspace(0, 0.15, 6)
    tr1 = obs.alignment_trace(pkt, ["bZX", "cXY"], times, n_samples=20_000, seed=12)
    tr2 = obs.alignment_trace(pkt, ["bZX", "cXY"], times, n_samples=20_000, seed=12)
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    tr1.write_csv(f1)
    tr2.write_csv(f2)
    assert f1.read_bytes() == f2.read_bytes()
    assert np.all((tr1.values["bZX"] >= 0) & (tr1.values["bZX"] <= 1))


def test_coherence_spec_validation(d2s):
    with pytest.raises(rotor.ConfigError):
        obs.CoherenceSpec("q", 10, 12)
    with pytest.raises(rotor.ConfigError):
        obs.CoherenceSpec("b", 10, 13)
    coh = obs.CoherenceSpec("b", 10, 14, weights=[3.0, 2.0, 1.0])
    pkt = coh.resolve(d2s)
    assert np.sum(np.abs(pkt.amps0) ** 2) == pytest.approx(1.0, abs=1e-12)
    assert [c.J for c in pkt.components] == [10, 12, 14]
    # random phases are seed-deterministic
    p1 = obs.CoherenceSpec("b", 10, 12, phases="random", seed=3).resolve(d2s)
    p2 = obs.CoherenceSpec("b", 10, 12, phases="random", seed=3).resolve(d2s)
    assert np.allclose(p1.amps0, p2.amps0)


def test_evaluate_wavefunction_from_wavepacket(d2s):
    st = rotor.get_state(2, 1, 0, d2s)
    wp = dynamics.Wavepacket(
        [StateKey(2, 1, 0, 2)], [st.energy_cm1], [1.0 + 0j], t=0.0
    )
    th = np.array([0.4, 1.2])
    ph = np.array([0.1, 0.5])
    ch = np.array([2.0, 0.7])
    v1 = obs.evaluate_wavefunction(wp, th, ph, ch, spec=d2s, embedding="b")
    pkt = obs.AngularPacket([obs.component_from_state(st, M=2)], [1.0])
    assert np.allclose(v1, pkt.values(th, ph, ch))
    with pytest.raises(rotor.ConfigError):
        obs.evaluate_wavefunction(wp, th, ph, ch)
