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
r"""Unit tests for quaternionic vectors and matrices in qlinalg.py"""
import pytest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from quaternionfields import qlinalg as ql
from quaternionfields.fockops import build_ladder
from quaternionfields.quatcore import I, J, K, Quaternion, MalformedMatrix
from quaternionfields.qlinalg import QMatrix, QVector


pytestmark = pytest.mark.core


def random_matrix(rng, n, scale=1.0):
    return QMatrix(scale * rng.standard_normal((n, n, 4)))


def random_vector(rng, n):
    return QVector(rng.standard_normal((n, 4)))


components = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, components, components, components, components)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


class TestConstruction:
    """Shapes and constructors."""

    def test_bad_shapes(self):
        """Arrays of the wrong shape are rejected."""
        with pytest.raises(ValueError, match=r"shape \(N, 4\)"):
            QVector(np.zeros((3, 3)))
        with pytest.raises(ValueError, match=r"shape \(N, N, 4\)"):
            QMatrix(np.zeros((3, 2, 4)))

    def test_from_quaternions(self):
        """Vectors can be built from sequences of quaternions."""
        v = QVector([I, J, K])
        assert v.dim == 3
        assert v[1] == J

    def test_read_only(self):
        """Coefficient arrays cannot be modified in place."""
        v = QVector.basis(0, 3)
        with pytest.raises(ValueError):
            v.coeffs[0, 0] = 2.0

    def test_identity_and_diag(self):
        """identity and diag place their entries on the diagonal."""
        E = ql.identity(3)
        assert E.is_real()
        assert E[1, 1] == Quaternion(1.0)
        D = QMatrix.diag([I, J])
        assert D[0, 0] == I
        assert D[1, 1] == J
        assert D[0, 1] == Quaternion()

    def test_dim_mismatch(self, rng):
        """Operands of different sizes raise DimMismatch."""
        with pytest.raises(ql.DimMismatch):
            random_matrix(rng, 3) @ random_vector(rng, 4)
        with pytest.raises(ql.DimMismatch):
            ql.inner(random_vector(rng, 3), random_vector(rng, 2))


class TestProducts:
    """Inner products, scalar actions and matrix products."""

    def test_inner_product_sesquilinearity(self, rng):
        """<phi q | psi p> = conj(q) <phi|psi> p for right scalars."""
        phi, psi = random_vector(rng, 5), random_vector(rng, 5)
        q, p = Quaternion(*rng.standard_normal(4)), Quaternion(*rng.standard_normal(4))
        lhs = ql.inner(phi * q, psi * p)
        rhs = q.conj() * ql.inner(phi, psi) * p
        assert lhs.isclose(rhs, atol=1e-12)

    def test_inner_product_hermitian(self, rng):
        """<phi|psi> = conj(<psi|phi>) and <phi|phi> = |phi|^2."""
        phi, psi = random_vector(rng, 5), random_vector(rng, 5)
        assert ql.inner(phi, psi).isclose(ql.inner(psi, phi).conj())
        assert ql.inner(phi, phi).isclose(Quaternion(phi.norm() ** 2))

    def test_right_linearity(self, rng):
        """A(phi q) = (A phi) q"""
        A, phi = random_matrix(rng, 4), random_vector(rng, 4)
        q = Quaternion(*rng.standard_normal(4))
        assert (A @ (phi * q)).allclose((A @ phi) * q, atol=1e-12)

    def test_left_scalar_does_not_commute(self):
        """Left and right scalar actions differ for non-commuting entries."""
        v = QVector([J])
        assert (I * v)[0] == K
        assert (v * I)[0] == -K

    def test_matmul_associative(self, rng):
        """(AB)C = A(BC)"""
        A, B, C = (random_matrix(rng, 4) for _ in range(3))
        assert ((A @ B) @ C).allclose(A @ (B @ C), atol=1e-11)

    def test_matmul_acts_like_composition(self, rng):
        """(AB) phi = A (B phi)"""
        A, B, phi = random_matrix(rng, 4), random_matrix(rng, 4), random_vector(rng, 4)
        assert ((A @ B) @ phi).allclose(A @ (B @ phi), atol=1e-11)

    def test_adjoint(self, rng):
        """<A phi|psi> = <phi|A^H psi> and (AB)^H = B^H A^H."""
        A, B = random_matrix(rng, 4), random_matrix(rng, 4)
        phi, psi = random_vector(rng, 4), random_vector(rng, 4)
        assert ql.inner(A @ phi, psi).isclose(ql.inner(phi, A.H @ psi), atol=1e-11)
        assert (A @ B).H.allclose(B.H @ A.H, atol=1e-11)

    def test_commutator_of_scalars(self):
        """[iI, jI] = 2k I"""
        n = 3
        A = I * ql.identity(n)
        B = J * ql.identity(n)
        assert ql.commutator(A, B).allclose(2 * K * ql.identity(n))

    def test_max_deviation_block(self):
        """max_deviation restricts to the requested block."""
        A = ql.identity(4)
        entries = np.array(A.entries)
        entries[3, 3, 2] = 5.0
        B = QMatrix(entries)
        assert ql.max_deviation(A, B) == 5.0
        assert ql.max_deviation(A, B, block=3) == 0.0


class TestScalarActions:
    """Invariants of the left scalar action and its interplay with the adjoint."""

    @settings(deadline=None)
    @given(quaternions, seeds)
    def test_left_scalar_scales_norm(self, q, seed):
        """||q phi|| = |q| ||phi||"""
        phi = random_vector(np.random.default_rng(seed), 6)
        lhs = ql.left_scalar_vec(q, phi).norm()
        assert lhs == pytest.approx(q.norm() * phi.norm(), rel=1e-12, abs=1e-12)

    @settings(deadline=None)
    @given(components, seeds)
    def test_real_scalars_act_alike(self, r, seed):
        """r phi = phi r for real r"""
        phi = random_vector(np.random.default_rng(seed), 6)
        assert ql.left_scalar_vec(r, phi).allclose(ql.right_scalar_vec(phi, r), atol=0.0)

    @settings(deadline=None)
    @given(quaternions, st.integers(min_value=0, max_value=5))
    def test_left_and_right_agree_on_basis(self, q, k):
        """q e_k = e_k q"""
        e = QVector.basis(k, 6)
        assert ql.left_scalar_vec(q, e).allclose(ql.right_scalar_vec(e, q), atol=0.0)
        assert ql.left_scalar_vec(q, e)[k] == q

    @settings(deadline=None)
    @given(quaternions, seeds)
    def test_adjoint_of_left_scalar(self, q, seed):
        """(q A)^H = A^H conj(q)"""
        A = random_matrix(np.random.default_rng(seed), 4)
        lhs = ql.adjoint(ql.left_scalar_op(q, A))
        rhs = ql.right_scalar_op(ql.adjoint(A), q.conj())
        assert lhs.allclose(rhs, atol=1e-12)

    @settings(deadline=None)
    @given(quaternions, seeds)
    def test_adjoint_of_right_scalar(self, q, seed):
        """(A q)^H = conj(q) A^H"""
        A = random_matrix(np.random.default_rng(seed), 4)
        lhs = ql.adjoint(ql.right_scalar_op(A, q))
        rhs = ql.left_scalar_op(q.conj(), ql.adjoint(A))
        assert lhs.allclose(rhs, atol=1e-12)

    @settings(deadline=None)
    @given(quaternions)
    def test_scalars_commute_with_ladder(self, q):
        """q a = a q, since the ladder operator has real entries"""
        a, a_dag = build_ladder(8)
        for op in (a, a_dag):
            assert ql.left_scalar_op(q, op).allclose(ql.right_scalar_op(op, q), atol=0.0)

    def test_left_scalar_is_not_right_scalar(self):
        """For a generic vector q phi differs from phi q."""
        phi = QVector([J, K])
        assert not ql.left_scalar_vec(I, phi).allclose(ql.right_scalar_vec(phi, I))


class TestComplexEmbedding:
    """The 2N x 2N complex representation."""

    def test_homomorphism(self, rng):
        """chi(AB) = chi(A) chi(B) and chi(A^H) = chi(A)^H."""
        A, B = random_matrix(rng, 3), random_matrix(rng, 3)
        assert np.allclose(
            ql.complex_embedding(A @ B), ql.complex_embedding(A) @ ql.complex_embedding(B), atol=1e-12
        )
        assert np.allclose(ql.complex_embedding(A.H), ql.complex_embedding(A).conj().T)

    def test_inverse(self, rng):
        """from_complex_embedding inverts complex_embedding."""
        A = random_matrix(rng, 3)
        assert ql.from_complex_embedding(ql.complex_embedding(A)).allclose(A, atol=1e-15)

    def test_rejects_non_quaternionic(self):
        """Generic complex matrices are not images of quaternionic ones."""
        with pytest.raises(MalformedMatrix):
            ql.from_complex_embedding(np.diag([1.0, 2.0, 3.0, 4.0]))
        with pytest.raises(MalformedMatrix, match="even size"):
            ql.from_complex_embedding(np.eye(3))


class TestMatrixExponential:
    """Both matrix exponentials."""

    def test_real_matrix(self, rng):
        """Real exponents agree with scipy."""
        M = rng.standard_normal((5, 5))
        expected = QMatrix.from_real(expm(M))
        assert ql.matrix_exp(QMatrix.from_real(M)).allclose(expected, atol=1e-10)

    def test_scalar_exponent(self):
        """exp(pi/2 * j I) = j I"""
        A = (np.pi / 2) * (J * ql.identity(3))
        assert ql.matrix_exp(A).allclose(J * ql.identity(3), atol=1e-14)

    def test_methods_agree(self, rng):
        """The complex embedding and the Taylor series give the same result."""
        A = random_matrix(rng, 4, scale=0.4)
        assert ql.matrix_exp(A).allclose(ql.matrix_exp_taylor(A), atol=1e-11)

    def test_anti_hermitian_gives_unitary(self, rng):
        """exp(A - A^H) is unitary."""
        A = random_matrix(rng, 4, scale=0.3)
        U = ql.matrix_exp(A - A.H)
        assert (U.H @ U).allclose(ql.identity(4), atol=1e-12)

    def test_taylor_convergence_failure(self, rng):
        """A short series with no squaring cannot meet the tolerance."""
        A = random_matrix(rng, 4, scale=3.0)
        with pytest.raises(ql.ConvergenceFailure, match="error estimate"):
            ql.matrix_exp_taylor(A, ntaylor=2, nsquare=0)
