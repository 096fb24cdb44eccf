# Copyright 2019 Xanadu Quantum Technologies Inc.

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
r"""Unit tests for the quaternion arithmetic in quatcore.py"""
import pytest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from quaternionfields import quatcore as qc
from quaternionfields.quatcore import I, J, K, ONE, Quaternion


pytestmark = pytest.mark.core

components = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, components, components, components, components)


class TestHamiltonProduct:
    """Tests for the multiplication rules."""

    def test_basis_relations(self):
        """The basis satisfies i^2 = j^2 = k^2 = ijk = -1."""
        for u in (I, J, K):
            assert u * u == -ONE
        assert I * J * K == -ONE

    def test_basis_products(self):
        """ij = k, jk = i, ki = j, and the reversed products change sign."""
        assert I * J == K
        assert J * K == I
        assert K * I == J
        assert J * I == -K
        assert K * J == -I
        assert I * K == -J

    def test_concrete_product(self):
        """(1 + 2i + 3j + 4k)(5 + 6i + 7j + 8k) = -60 + 12i + 30j + 24k"""
        p = Quaternion(1, 2, 3, 4)
        q = Quaternion(5, 6, 7, 8)
        assert p * q == Quaternion(-60, 12, 30, 24)

    def test_table_matches_product(self):
        """The multiplication table agrees with qmul on the basis."""
        basis = np.eye(4)
        for c in range(4):
            for d in range(4):
                sign, idx = qc.MULTIPLICATION_TABLE[c][d]
                assert np.array_equal(qc.qmul(basis[c], basis[d]), sign * basis[idx])

    @settings(deadline=None)
    @given(quaternions, quaternions, quaternions)
    def test_associativity(self, p, q, r):
        """(pq)r = p(qr) up to rounding."""
        scale = max(1.0, p.norm() * q.norm() * r.norm())
        assert ((p * q) * r).isclose(p * (q * r), atol=1e-12 * scale)

    @settings(deadline=None)
    @given(quaternions, quaternions)
    def test_norm_multiplicative(self, p, q):
        """|pq| = |p||q|"""
        assert np.isclose((p * q).norm(), p.norm() * q.norm(), rtol=1e-12, atol=1e-12)

    @settings(deadline=None)
    @given(quaternions, quaternions)
    def test_conjugate_reverses_products(self, p, q):
        """conj(pq) = conj(q) conj(p)"""
        scale = max(1.0, p.norm() * q.norm())
        assert (p * q).conj().isclose(q.conj() * p.conj(), atol=1e-12 * scale)

    def test_vectorised_product(self, rng):
        """qmul broadcasts over leading axes like the scalar product."""
        p = rng.standard_normal((5, 4))
        q = rng.standard_normal(4)
        out = qc.qmul(p, q)
        for k in range(5):
            assert np.allclose(out[k], (Quaternion(*p[k]) * Quaternion(*q)).array, atol=1e-14)

    def test_real_scalars(self):
        """Real numbers multiply componentwise from both sides."""
        q = Quaternion(1, -2, 3, 0.5)
        assert 2 * q == Quaternion(2, -4, 6, 1)
        assert q * 2 == 2 * q
        assert np.float64(2.0) * q == 2 * q


class TestInverseAndNorm:
    """Tests for conjugate, norm and inverse."""

    def test_inverse(self):
        """q q^{-1} = 1"""
        q = Quaternion(1, 2, -1, 0.5)
        assert (q * q.inverse()).isclose(ONE)
        assert (q / q).isclose(ONE)

    def test_zero_inverse(self):
        """The zero quaternion has no inverse."""
        with pytest.raises(ZeroDivisionError, match="no inverse"):
            Quaternion().inverse()

    def test_norm_from_conjugate(self):
        """q conj(q) = |q|^2"""
        q = Quaternion(1, 2, 3, 4)
        assert q * q.conj() == Quaternion(30.0)
        assert qc.norm(q) == pytest.approx(np.sqrt(30))

    def test_pow(self):
        """Integer powers are repeated products."""
        q = Quaternion(0.5, 0.1, -0.2, 0.3)
        assert (q ** 3).isclose(q * q * q)
        assert (q ** -1).isclose(q.inverse())
        assert q ** 0 == ONE

    def test_hash_and_equality(self):
        """Equal quaternions hash equally and compare with numbers."""
        assert hash(Quaternion(1, 2, 3, 4)) == hash(Quaternion(1.0, 2.0, 3.0, 4.0))
        assert Quaternion(2.0) == 2
        assert Quaternion(1, 0, 0, 0) != Quaternion(1, 1e-300, 0, 0)


class TestMatrixRepresentation:
    """Tests for the 2x2 complex representation."""

    def test_basis_images(self):
        """i, j, k map to sqrt(-1) sigma_1, the rotation generator and sqrt(-1) sigma_3."""
        assert np.array_equal(qc.to_matrix2(I), np.array([[0, 1j], [1j, 0]]))
        assert np.array_equal(qc.to_matrix2(J), np.array([[0, -1], [1, 0]]))
        assert np.array_equal(qc.to_matrix2(K), np.array([[1j, 0], [0, -1j]]))

    @settings(deadline=None)
    @given(quaternions, quaternions)
    def test_homomorphism(self, p, q):
        """The representation turns Hamilton products into matrix products."""
        scale = max(1.0, p.norm() * q.norm())
        lhs = qc.to_matrix2(p * q)
        rhs = qc.to_matrix2(p) @ qc.to_matrix2(q)
        assert np.allclose(lhs, rhs, atol=1e-12 * scale, rtol=0)

    def test_conjugate_is_adjoint(self):
        """conj(q) maps to the conjugate transpose."""
        q = Quaternion(0.3, -1.2, 0.7, 2.0)
        assert np.allclose(qc.to_matrix2(q.conj()), qc.to_matrix2(q).conj().T)

    def test_inverse_map(self):
        """from_matrix2 inverts to_matrix2."""
        q = Quaternion(0.3, -1.2, 0.7, 2.0)
        assert qc.from_matrix2(qc.to_matrix2(q)).isclose(q, atol=1e-15)

    def test_malformed(self):
        """Matrices outside the image are rejected."""
        with pytest.raises(qc.MalformedMatrix, match="not the image of a quaternion"):
            qc.from_matrix2(np.array([[1, 0], [0, 2]]))

        with pytest.raises(qc.MalformedMatrix, match="Expected a 2x2 matrix"):
            qc.from_matrix2(np.eye(3))


class TestSliceDecomposition:
    """Tests for slice_decompose, exp_quat and the unit imaginaries."""

    def test_decomposition(self):
        """1 + 3j + 4k = 1 + 5 I with I = (3j + 4k)/5."""
        s = qc.slice_decompose(Quaternion(1, 0, 3, 4))
        assert s.x == 1.0
        assert s.y == 5.0
        assert np.allclose(s.axis.vector, [0, 0.6, 0.8])
        assert not s.degenerate
        assert s.recompose().isclose(Quaternion(1, 0, 3, 4))

    def test_real_is_degenerate(self):
        """Real quaternions get the canonical axis i."""
        s = qc.slice_decompose(2.5)
        assert s.degenerate
        assert s.axis == qc.AXIS_I
        assert s.y == 0.0

    def test_unit_imaginaries_square_to_minus_one(self, rng):
        """I^2 = -1 for every point of the sphere."""
        for _ in range(20):
            u = qc.sample_sphere(rng).to_quaternion()
            assert (u * u).isclose(-ONE, atol=1e-14)

    def test_non_unit_rejected(self):
        """UnitImaginary checks its norm."""
        with pytest.raises(ValueError, match="unit norm"):
            qc.UnitImaginary(1.0, 1.0, 0.0)

    def test_shifted(self):
        """Shifts stay within the slice."""
        s = qc.slice_decompose(Quaternion(0.5, 0.3, 0.0, 0.4))
        assert s.shifted(0.1, -0.2).isclose(Quaternion(0.6, 0.3 * 0.6, 0.0, 0.4 * 0.6))

    def test_exp(self):
        """exp(x + I y) = e^x (cos y + I sin y), and exp(pi I) = -1."""
        assert qc.exp_quat(Quaternion(0, 0, np.pi, 0)).isclose(-ONE, atol=1e-15)
        q = Quaternion(0.2, 0.3, -0.4, 1.2)
        y = np.linalg.norm([0.3, -0.4, 1.2])
        expected = np.exp(0.2) * np.concatenate([[np.cos(y)], np.sin(y) * np.array([0.3, -0.4, 1.2]) / y])
        assert np.allclose(qc.exp_quat(q).array, expected, atol=1e-15)

    def test_exp_real(self):
        """The exponential of a real quaternion is real."""
        assert qc.exp_quat(1.0).isclose(Quaternion(np.e), atol=1e-15)


class TestPolarForm:
    """Tests for polar coordinates."""

    def test_round_trip(self, rng):
        """from_polar inverts polar_form for generic quaternions."""
        for _ in range(50):
            q = Quaternion(*rng.standard_normal(4))
            assert qc.from_polar(qc.polar_form(q)).isclose(q, atol=1e-13)

    def test_round_trip_sweep(self, rng):
        """Over 1000 points q = from_polar(polar_form(q)) = r exp(theta I) with I from (phi, psi)."""
        pts = qc.sample_ball(rng, 3.0, size=1000)
        for arr in pts:
            q = Quaternion(*arr)
            p = qc.polar_form(q)
            assert qc.from_polar(p).isclose(q, atol=1e-13)
            axis = qc.from_polar(qc.PolarForm(1.0, np.pi / 2, p.phi, p.psi))
            assert (p.r * qc.exp_quat(p.theta * axis)).isclose(q, atol=1e-13)

    def test_ranges(self, rng):
        """theta and phi lie in [0, pi], psi in [0, 2 pi)."""
        for _ in range(50):
            p = qc.polar_form(Quaternion(*rng.standard_normal(4)))
            assert 0 <= p.theta <= np.pi
            assert 0 <= p.phi <= np.pi
            assert 0 <= p.psi < 2 * np.pi

    def test_degenerate(self):
        """Real quaternions use the canonical axis."""
        p = qc.polar_form(-2.0)
        assert p.r == 2.0
        assert p.theta == pytest.approx(np.pi)
        assert p.phi == pytest.approx(np.pi / 2)
        assert p.psi == 0.0


class TestSampling:
    """Tests for the samplers."""

    def test_ball(self, rng):
        """sample_ball stays in the ball and is reproducible."""
        pts = qc.sample_ball(rng, 0.5, size=100)
        assert pts.shape == (100, 4)
        assert np.all(np.linalg.norm(pts, axis=1) <= 0.5)
        a = qc.sample_ball(7, 1.0)
        b = qc.sample_ball(7, 1.0)
        assert isinstance(a, Quaternion)
        assert a == b

    def test_same_seed_same_samples(self):
        """Equal seeds give equal samples; different seeds differ."""
        assert np.array_equal(qc.sample_ball(3, 2.0, size=50), qc.sample_ball(3, 2.0, size=50))
        assert not np.array_equal(qc.sample_ball(3, 2.0, size=50), qc.sample_ball(4, 2.0, size=50))
        assert np.array_equal(qc.sample_sphere(11).vector, qc.sample_sphere(11).vector)

    def test_sphere(self, rng):
        """sample_sphere draws unit imaginaries with mean close to zero."""
        pts = np.array([qc.sample_sphere(rng).vector for _ in range(4000)])
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-14)
        assert np.linalg.norm(pts.mean(axis=0)) <= 0.05

    def test_ball_mean(self, rng):
        """The ball is sampled symmetrically about the origin."""
        pts = qc.sample_ball(rng, 1.0, size=4000)
        assert np.linalg.norm(pts.mean(axis=0)) <= 0.05
