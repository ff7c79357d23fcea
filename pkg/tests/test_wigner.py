import math
from fractions import Fraction

import numpy as np
import pytest

from rotifuge import wigner


def test_small_d_identity_cases():
    assert wigner.small_d(0, 0, 0, 0.7) == pytest.approx(1.0, abs=1e-15)
    for J in (1, 5, 17, 40):
        th = 1.234
        assert wigner.small_d(J, J, J, th) == pytest.approx(
            math.cos(th / 2) ** (2 * J), rel=1e-13
        )
        assert wigner.small_d(J, J, -J, th) == pytest.approx(
            math.sin(th / 2) ** (2 * J), rel=1e-13
        )


def test_small_d_against_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.physics.quantum.spin import Rotation

    rng = np.random.default_rng(1)
    for J in (1, 2, 3, 4):
        for m1 in range(-J, J + 1):
            for m2 in range(-J, J + 1):
                th = rng.uniform(0.05, 3.1)
                ref = complex(Rotation.d(J, m1, m2, sympy.Float(th)).doit().evalf()).real
                assert wigner.small_d(J, m1, m2, th) == pytest.approx(ref, abs=1e-13)


def test_small_d_symmetry_property():
    rng = np.random.default_rng(2)
    for _ in range(60):
        J = int(rng.integers(1, 61))
        m1 = int(rng.integers(-J, J + 1))
        m2 = int(rng.integers(-J, J + 1))
        th = rng.uniform(0.0, math.pi)
        a = wigner.small_d(J, m1, m2, th)
        b = (-1.0) ** (m1 - m2) * wigner.small_d(J, m2, m1, th)
        assert a == pytest.approx(b, abs=1e-12)


def test_small_d_unitarity_to_j60():
    thetas = np.linspace(0.01, math.pi - 0.01, 5)
    for J in (10, 35, 60):
        for m in (0, J // 3, J):
            total = sum(wigner.small_d(J, m, k, thetas) ** 2 for k in range(-J, J + 1))
            assert np.max(np.abs(total - 1.0)) < 1e-10


def test_small_d_orthogonality_quadrature():
    # int_0^pi d^J_{mk} d^{J'}_{mk} sin(theta) dtheta = 2 delta_JJ' / (2J+1)
    th, w = wigner.gl_quadrature_theta(80)
    for m, k in [(0, 0), (2, 1), (4, -3)]:
        for J in range(max(abs(m), abs(k)), 12):
            for Jp in range(max(abs(m), abs(k)), 12):
                val = np.sum(w * wigner.small_d(J, m, k, th) * wigner.small_d(Jp, m, k, th))
                expected = 2.0 / (2 * J + 1) if J == Jp else 0.0
                assert val == pytest.approx(expected, abs=1e-12)


def test_small_d_bad_indices():
    with pytest.raises(ValueError):
        wigner.small_d(2, 3, 0, 0.5)
    with pytest.raises(ValueError):
        wigner.small_d(-1, 0, 0, 0.5)


def test_top_row_matches_general():
    th = np.linspace(0, math.pi, 11)
    for J in (3, 20, 58):
        for k in (-J, -1, 0, 2, J):
            assert np.allclose(
                wigner.d_top_row(J, k, th), wigner.small_d(J, J, k, th), atol=1e-12
            )


def test_big_d_trivial_and_modulus():
    assert wigner.big_D(0, 0, 0, 0.3, 1.1, 2.2) == pytest.approx(1.0)
    rng = np.random.default_rng(3)
    for _ in range(20):
        J = int(rng.integers(0, 12))
        m = int(rng.integers(-J, J + 1))
        k = int(rng.integers(-J, J + 1))
        th, ph, ch = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        D = wigner.big_D(J, m, k, th, ph, ch)
        assert abs(D) == pytest.approx(abs(wigner.small_d(J, m, k, th)), abs=1e-14)


def test_big_d_legendre():
    th = np.linspace(0, math.pi, 9)
    p2 = 0.5 * (3 * np.cos(th) ** 2 - 1)
    assert np.allclose(wigner.big_D(2, 0, 0, th, 0.4, 1.7).real, p2, atol=1e-14)


def test_big_d_j1_matches_rotation_matrix():
    # D^(1) in the spherical basis must represent Rz(phi)Ry(theta)Rz(chi).
    ph, th, ch = 0.7, 1.1, 2.3
    rz = lambda a: np.array(
        [[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1]]
    )
    ry = lambda a: np.array(
        [[math.cos(a), 0, math.sin(a)], [0, 1, 0], [-math.sin(a), 0, math.cos(a)]]
    )
    r = rz(ph) @ ry(th) @ rz(ch)
    # columns: spherical components m = (+1, 0, -1) in the Cartesian basis
    u = np.array(
        [
            [-1 / math.sqrt(2), 0, 1 / math.sqrt(2)],
            [-1j / math.sqrt(2), 0, -1j / math.sqrt(2)],
            [0, 1, 0],
        ]
    )
    d1 = np.array(
        [
            [wigner.big_D(1, m, k, th, ph, ch) for k in (1, 0, -1)]
            for m in (1, 0, -1)
        ]
    )
    assert np.allclose(u @ d1 @ u.conj().T, r, atol=1e-14)


def _three_j_squared_exact(j1, j2, j3, m1, m2, m3):
    """Brute-force Racah sum in exact rational arithmetic; returns the
    signed square of the 3-j value as a Fraction."""
    if m1 + m2 + m3 != 0 or j3 > j1 + j2 or j3 < abs(j1 - j2):
        return Fraction(0)
    f = math.factorial
    delta2 = Fraction(
        f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3), f(j1 + j2 + j3 + 1)
    )
    norm2 = Fraction(
        f(j1 + m1) * f(j1 - m1) * f(j2 + m2) * f(j2 - m2) * f(j3 + m3) * f(j3 - m3)
    )
    total = Fraction(0)
    for k in range(0, j1 + j2 - j3 + 1):
        args = (
            k,
            j1 + j2 - j3 - k,
            j1 - m1 - k,
            j2 + m2 - k,
            j3 - j2 + m1 + k,
            j3 - j1 - m2 + k,
        )
        if min(args) < 0:
            continue
        term = Fraction((-1) ** k, math.prod(f(a) for a in args))
        total += term
    sign = (-1) ** (j1 - j2 - m3) * (1 if total >= 0 else -1)
    return sign * delta2 * norm2 * total * total


def test_three_j_selection_rules():
    assert wigner.three_j(2, 2, 2, 1, 1, 1) == 0.0  # projection sum
    assert wigner.three_j(1, 1, 3, 0, 0, 0) == 0.0  # triangle
    assert wigner.three_j(2, 2, 2, 3, -3, 0) == 0.0  # range
    with pytest.raises(ValueError):
        wigner.three_j(1.5, 1.5, 1, 0.5, -0.5, 0)


def test_three_j_exact_rational_oracle():
    cases = [
        (2, 2, 2, 2, -2, 0),
        (2, 2, 4, 1, 1, -2),
        (3, 2, 3, 0, 0, 0),
        (5, 4, 3, 2, -2, 0),
        (6, 2, 6, 4, 1, -5),
        (1, 1, 2, 1, -1, 0),
    ]
    for args in cases:
        sq = _three_j_squared_exact(*args)
        expected = math.copysign(math.sqrt(abs(float(sq))), float(sq)) if sq else 0.0
        assert wigner.three_j(*args) == pytest.approx(expected, abs=1e-14)


def test_three_j_orthogonality():
    # sum_{m1,m2} (2 j3 + 1) (3j)^2 = 1 for each (j3, m3)
    for j1, j2 in [(2, 2), (3, 1), (4, 2)]:
        for j3 in range(abs(j1 - j2), j1 + j2 + 1):
            for m3 in range(-j3, j3 + 1):
                total = sum(
                    (2 * j3 + 1) * wigner.three_j(j1, j2, j3, m1, -m1 - m3, m3) ** 2
                    for m1 in range(-j1, j1 + 1)
                    if abs(m1 + m3) <= j2
                )
                assert total == pytest.approx(1.0, abs=1e-12)


def test_b_overlap_closed_forms():
    for J in range(0, 41):
        assert wigner.b_overlap(J, J + 2, J, J) == pytest.approx(
            2.0 / (2 * J + 3), abs=1e-12
        )
        assert wigner.b_overlap(J, J + 2, -J, -J) == pytest.approx(
            2.0 / (2 * J + 3), abs=1e-12
        )
        for K in range(0, J + 1, max(1, J // 4)):
            assert wigner.b_overlap(J, J, K, K) == pytest.approx(
                2.0 / (2 * J + 1), abs=1e-12
            )
    assert wigner.b_overlap(0, 2, 0, 0) == pytest.approx(2.0 / 3.0, abs=1e-14)


def test_d_top_overlap_quadrature_oracle():
    # Parity-matched indices (even j1+k1+j2+k2, the combinations coupled by
    # even-dK operators) make the integrand polynomial in cos(theta), so
    # Gauss-Legendre is exact.
    th, w = wigner.gl_quadrature_theta(140)
    rng = np.random.default_rng(4)
    for _ in range(25):
        j1 = int(rng.integers(0, 30))
        j2 = int(rng.integers(max(0, j1 - 2), j1 + 3))
        k1 = int(rng.integers(-j1, j1 + 1))
        k2 = int(rng.integers(-j2, j2 + 1))
        if (j1 + k1 + j2 + k2) % 2:
            k2 = k2 - 1 if k2 > -j2 else k2 + 1
        quad = np.sum(w * wigner.d_top_row(j1, k1, th) * wigner.d_top_row(j2, k2, th))
        assert wigner.d_top_overlap(j1, k1, j2, k2) == pytest.approx(quad, abs=1e-12)


def test_angular_index_validation():
    wigner.AngularIndex(3, -3, 2)
    with pytest.raises(ValueError):
        wigner.AngularIndex(3, 4, 0)
