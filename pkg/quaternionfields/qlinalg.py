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
r"""
Quaternionic linear algebra
===========================

**Module name:** :mod:`quaternionfields.qlinalg`

.. currentmodule:: quaternionfields.qlinalg

Dense vectors and matrices with quaternion entries over the truncated Fock
basis :math:`\{e_0,\dots,e_{N-1}\}` of a right quaternionic Hilbert space.

Conventions
-----------

* Coefficients are stored as ``float64`` arrays: a :class:`QVector` of
  dimension :math:`N` holds an ``(N, 4)`` array with ``coeffs[k]`` equal to
  :math:`\langle e_k|\phi\rangle`, and a :class:`QMatrix` holds an
  ``(N, N, 4)`` array with ``entries[k, m]`` equal to
  :math:`\langle e_k|A e_m\rangle`.
* Scalars act on the right of vectors. The left multiplication
  :math:`q\cdot\phi` is taken relative to the Fock basis, so that
  :math:`(q\cdot\phi)_k = q\phi_k`.
* Matrices act with their entries on the left,
  :math:`(A\phi)_k = \sum_m A_{km}\phi_m`.
* The inner product is conjugate linear in the first slot,
  :math:`\langle\phi|\psi\rangle = \sum_k \bar\phi_k\psi_k`.

Operator sugar
--------------

======================  ==========================================
Expression              Meaning
======================  ==========================================
``q * phi``             :func:`left_scalar_vec`
``phi * q``             :func:`right_scalar_vec`
``q * A``               :func:`left_scalar_op`
``A * q``               :func:`right_scalar_op`
``A @ B``               :func:`matmul`
``A @ phi``             :func:`apply`
======================  ==========================================

All products are evaluated as sixteen real matrix products, one per pair
of basis units, accumulated in a fixed order.

Summary
-------

.. autosummary::
    QVector
    QMatrix
    inner
    apply
    left_scalar_vec
    right_scalar_vec
    left_scalar_op
    right_scalar_op
    adjoint
    matmul
    commutator
    matrix_exp
    matrix_exp_taylor
    complex_embedding
    from_complex_embedding
    max_deviation

Code details
~~~~~~~~~~~~
"""
import numbers

import numpy as np
from scipy.linalg import expm as matrixExp

from .quatcore import (
    MULTIPLICATION_TABLE,
    STRUCTURE_TOL,
    MalformedMatrix,
    Quaternion,
    _components,
    qabs,
    qconj,
    qembed,
    qmul,
    qunembed,
)


class DimMismatch(ValueError):
    """Exception raised when operands have different truncation dimensions."""


class ConvergenceFailure(RuntimeError):
    """Exception raised when a matrix exponential cannot be computed to tolerance."""


def _is_scalar(value):
    return isinstance(value, (Quaternion, numbers.Real))


def _check_dims(*objs):
    dims = {o.dim for o in objs}
    if len(dims) > 1:
        raise DimMismatch("Operands have different dimensions {}.".format(sorted(dims)))


def _qproduct(a, b):
    """Sums of Hamilton products ``sum_l a[..., l, :] b[l, ..., :]`` over the shared index.

    ``a`` has shape ``(n, l, 4)``; ``b`` has shape ``(l, 4)`` or ``(l, m, 4)``.
    """
    out = np.zeros(a.shape[:1] + b.shape[1:-1] + (4,))
    for c in range(4):
        for d in range(4):
            sign, idx = MULTIPLICATION_TABLE[c][d]
            out[..., idx] += sign * (a[..., c] @ b[..., d])
    return out


class QVector:
    r"""Coefficient vector of a state in the truncated Fock space.

    Args:
        coeffs (array_like): array of shape ``(N, 4)``, or a sequence of
            quaternion-like values
    """

    __array_ufunc__ = None

    def __init__(self, coeffs):
        if _is_sequence_of_quaternions(coeffs):
            arr = np.array([_components(c) for c in coeffs])
        else:
            arr = np.array(coeffs, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError("Vector coefficients must have shape (N, 4), got {}.".format(arr.shape))
        arr.flags.writeable = False
        self._coeffs = arr

    @classmethod
    def zeros(cls, dim):
        """The zero vector."""
        return cls(np.zeros((dim, 4)))

    @classmethod
    def basis(cls, k, dim):
        """The Fock basis vector :math:`e_k`."""
        arr = np.zeros((dim, 4))
        arr[k, 0] = 1.0
        return cls(arr)

    @property
    def dim(self):
        """int: truncation dimension"""
        return self._coeffs.shape[0]

    @property
    def coeffs(self):
        """array[float]: read-only ``(N, 4)`` coefficient array"""
        return self._coeffs

    def norm(self):
        """Hilbert space norm :math:`\\|\\phi\\|`."""
        return float(np.linalg.norm(self._coeffs))

    def __len__(self):
        return self.dim

    def __getitem__(self, k):
        return Quaternion.from_array(self._coeffs[k])

    def __add__(self, other):
        if not isinstance(other, QVector):
            return NotImplemented
        _check_dims(self, other)
        return QVector(self._coeffs + other._coeffs)

    def __sub__(self, other):
        if not isinstance(other, QVector):
            return NotImplemented
        _check_dims(self, other)
        return QVector(self._coeffs - other._coeffs)

    def __neg__(self):
        return QVector(-self._coeffs)

    def __mul__(self, q):
        if not _is_scalar(q):
            return NotImplemented
        return right_scalar_vec(self, q)

    def __rmul__(self, q):
        if not _is_scalar(q):
            return NotImplemented
        return left_scalar_vec(q, self)

    def allclose(self, other, atol=1e-12):
        """Coefficientwise comparison with absolute tolerance."""
        _check_dims(self, other)
        return bool(np.allclose(self._coeffs, other._coeffs, atol=atol, rtol=0))

    def __repr__(self):
        return "<QVector: dim={}>".format(self.dim)


def _is_sequence_of_quaternions(obj):
    return isinstance(obj, (list, tuple)) and len(obj) > 0 and isinstance(obj[0], Quaternion)


class QMatrix:
    r"""Matrix of a right :math:`\mathbb{H}`-linear operator in the truncated Fock basis.

    Args:
        entries (array_like): array of shape ``(N, N, 4)``
    """

    __array_ufunc__ = None

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise ValueError("Matrix entries must have shape (N, N, 4), got {}.".format(arr.shape))
        arr.flags.writeable = False
        self._entries = arr

    @classmethod
    def zeros(cls, dim):
        """The zero operator."""
        return cls(np.zeros((dim, dim, 4)))

    @classmethod
    def from_real(cls, mat):
        """Embeds a real ``(N, N)`` matrix."""
        mat = np.asarray(mat, dtype=np.float64)
        arr = np.zeros(mat.shape + (4,))
        arr[..., 0] = mat
        return cls(arr)

    @classmethod
    def diag(cls, values):
        """Diagonal matrix from a sequence of quaternion-like values."""
        comps = np.array([_components(v) for v in values])
        n = len(comps)
        arr = np.zeros((n, n, 4))
        arr[np.arange(n), np.arange(n)] = comps
        return cls(arr)

    @property
    def dim(self):
        """int: truncation dimension"""
        return self._entries.shape[0]

    @property
    def entries(self):
        """array[float]: read-only ``(N, N, 4)`` entry array"""
        return self._entries

    def block(self, size):
        """The top-left ``size`` by ``size`` block as a new matrix."""
        return QMatrix(self._entries[:size, :size])

    def is_real(self, tol=0.0):
        """Whether every entry is real to within ``tol``."""
        return bool(np.all(np.abs(self._entries[..., 1:]) <= tol))

    def max_abs(self):
        """Largest entry modulus."""
        return float(np.max(qabs(self._entries), initial=0.0))

    def __getitem__(self, idx):
        return Quaternion.from_array(self._entries[idx])

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        _check_dims(self, other)
        return QMatrix(self._entries + other._entries)

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        _check_dims(self, other)
        return QMatrix(self._entries - other._entries)

    def __neg__(self):
        return QMatrix(-self._entries)

    def __mul__(self, q):
        if not _is_scalar(q):
            return NotImplemented
        return right_scalar_op(self, q)

    def __rmul__(self, q):
        if not _is_scalar(q):
            return NotImplemented
        return left_scalar_op(q, self)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            return matmul(self, other)
        if isinstance(other, QVector):
            return apply(self, other)
        return NotImplemented

    @property
    def H(self):
        """QMatrix: the adjoint"""
        return adjoint(self)

    def allclose(self, other, atol=1e-12):
        """Entrywise comparison with absolute tolerance."""
        _check_dims(self, other)
        return bool(np.allclose(self._entries, other._entries, atol=atol, rtol=0))

    def __repr__(self):
        return "<QMatrix: dim={}>".format(self.dim)


def identity(dim):
    """The identity operator :math:`\\mathbb{I}` on the truncated space."""
    return QMatrix.from_real(np.eye(dim))


def inner(phi, psi):
    r"""Inner product :math:`\langle\phi|\psi\rangle = \sum_k \bar\phi_k \psi_k`.

    Raises:
        DimMismatch: if the dimensions differ
    """
    _check_dims(phi, psi)
    return Quaternion.from_array(np.sum(qmul(qconj(phi.coeffs), psi.coeffs), axis=0))


def apply(A, phi):
    r"""Matrix action :math:`(A\phi)_k = \sum_m A_{km}\phi_m`.

    Raises:
        DimMismatch: if the dimensions differ
    """
    _check_dims(A, phi)
    return QVector(_qproduct(A.entries, phi.coeffs))


def left_scalar_vec(q, phi):
    r"""Left scalar multiplication :math:`(q\cdot\phi)_k = q\phi_k`."""
    return QVector(qmul(_components(q), phi.coeffs))


def right_scalar_vec(phi, q):
    r"""Right scalar multiplication :math:`(\phi q)_k = \phi_k q`."""
    return QVector(qmul(phi.coeffs, _components(q)))


def left_scalar_op(q, A):
    r"""The operator :math:`q\cdot A`, with entries :math:`q A_{km}`."""
    return QMatrix(qmul(_components(q), A.entries))


def right_scalar_op(A, q):
    r"""The operator :math:`A\cdot q`, with entries :math:`A_{km} q`."""
    return QMatrix(qmul(A.entries, _components(q)))


def adjoint(A):
    r"""Adjoint, :math:`(A^\dagger)_{km} = \overline{A_{mk}}`."""
    return QMatrix(qconj(np.swapaxes(A.entries, 0, 1)))


def matmul(A, B):
    """Operator product :math:`AB`.

    Raises:
        DimMismatch: if the dimensions differ
    """
    _check_dims(A, B)
    return QMatrix(_qproduct(A.entries, B.entries))


def commutator(A, B):
    """Commutator :math:`[A, B] = AB - BA`."""
    return matmul(A, B) - matmul(B, A)


def complex_embedding(A):
    r"""The :math:`2N\times 2N` complex matrix :math:`\chi(A)`.

    Each quaternion entry is replaced by its :math:`2\times 2` block, so that
    :math:`\chi(AB) = \chi(A)\chi(B)` and :math:`\chi(A^\dagger) = \chi(A)^\dagger`.
    """
    n = A.dim
    blocks = qembed(A.entries)
    return blocks.transpose(0, 2, 1, 3).reshape(2 * n, 2 * n)


def from_complex_embedding(M, tol=STRUCTURE_TOL):
    """Inverse of :func:`complex_embedding`.

    Raises:
        MalformedMatrix: if some :math:`2\\times 2` block is not a quaternion image
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise MalformedMatrix("Expected a square matrix of even size, got {}.".format(M.shape))
    n = M.shape[0] // 2
    blocks = M.reshape(n, 2, n, 2).transpose(0, 2, 1, 3)
    return QMatrix(qunembed(blocks, tol=tol))


def matrix_exp(A, tol=STRUCTURE_TOL):
    r"""Matrix exponential :math:`e^A`.

    Computed by scaling and squaring in the complex embedding, followed by
    the inverse embedding.

    Args:
        A (QMatrix): the exponent
        tol (float): relative tolerance on the quaternionic structure of the result

    Returns:
        QMatrix: the exponential

    Raises:
        ConvergenceFailure: if the result is not finite or has lost its quaternionic structure
    """
    E = matrixExp(complex_embedding(A))
    if not np.all(np.isfinite(E)):
        raise ConvergenceFailure("Matrix exponential produced non-finite entries.")
    try:
        return from_complex_embedding(E, tol=tol)
    except MalformedMatrix as e:
        raise ConvergenceFailure("Matrix exponential lost quaternionic structure: {}".format(e))


def matrix_exp_taylor(A, ntaylor=18, nsquare=None, tol=1e-12):
    r"""Matrix exponential by a scaled Taylor series in quaternion arithmetic.

    The exponent is scaled by :math:`2^{-s}` until its 1-norm is at most
    :math:`1/2`, the truncated series is evaluated by Horner's rule, and the
    result is squared :math:`s` times.

    Args:
        A (QMatrix): the exponent
        ntaylor (int): order of the Taylor polynomial
        nsquare (int or None): number of squarings; chosen from the norm if ``None``
        tol (float): bound on the estimated relative truncation error

    Returns:
        QMatrix: the exponential

    Raises:
        ConvergenceFailure: if the truncation error estimate exceeds ``tol``
    """
    norm1 = float(np.max(np.sum(qabs(A.entries), axis=0), initial=0.0))
    if nsquare is None:
        nsquare = max(0, int(np.ceil(np.log2(norm1 / 0.5)))) if norm1 > 0.5 else 0

    scaled = A.entries / 2.0 ** nsquare
    scaled_norm = norm1 / 2.0 ** nsquare
    estimate = scaled_norm ** (ntaylor + 1) / np.prod(np.arange(1, ntaylor + 2, dtype=np.float64))
    if not np.isfinite(estimate) or estimate > tol:
        raise ConvergenceFailure(
            "Taylor series error estimate {:.3e} exceeds tolerance {:.1e}.".format(estimate, tol)
        )

    eye = np.zeros_like(scaled)
    eye[np.arange(A.dim), np.arange(A.dim), 0] = 1.0
    result = eye.copy()
    for k in range(ntaylor, 0, -1):
        result = eye + _qproduct(scaled, result) / k
    for _ in range(nsquare):
        result = _qproduct(result, result)
    return QMatrix(result)


def max_deviation(A, B, block=None):
    """Largest entry modulus of :math:`A - B`, optionally over the top-left block only.

    Args:
        A, B (QMatrix or QVector): operands of equal dimension
        block (int or None): restrict to indices below ``block``

    Returns:
        float: the deviation
    """
    _check_dims(A, B)
    if isinstance(A, QVector):
        diff = A.coeffs - B.coeffs
        if block is not None:
            diff = diff[:block]
    else:
        diff = A.entries - B.entries
        if block is not None:
            diff = diff[:block, :block]
    return float(np.max(qabs(diff), initial=0.0))
