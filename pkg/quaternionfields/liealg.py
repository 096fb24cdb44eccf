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
Weyl-Heisenberg Lie algebras
============================

**Module name:** :mod:`quaternionfields.liealg`

.. currentmodule:: quaternionfields.liealg

Coefficient level realization of the quaternionic Weyl-Heisenberg algebras.

Algebras
--------

For :math:`\tau\in\{i,j,k\}` let :math:`\mathfrak{A}_\tau =
\mathrm{span}_\mathbb{R}\{\tau\cdot\mathbb{I}, Q, P_\tau\}` with bracket
:math:`[yQ + zP_\tau, sQ + tP_\tau]_\tau = (yt - zs)\,\tau\cdot\mathbb{I}`.

* :class:`AlgElementA`: :math:`\mathfrak{A} = \mathrm{span}_\mathbb{R}\{\tau\cdot\mathbb{I}, Q, P_\tau\}`,
  with slice components :math:`\mathcal{A}_\tau = x_\tau\tau\cdot\mathbb{I}
  + \tfrac{y}{\sqrt3}Q + z_\tau P_\tau` and bracket
  :math:`[\mathcal{A},\mathcal{B}]_\sigma = \sum_\tau[\mathcal{A}_\tau,\mathcal{B}_\tau]_\tau`.
* :class:`AlgElementHat`: :math:`\hat{\mathfrak{A}}`, spanned by :math:`\tau\cdot\mathbb{I}`,
  :math:`P_0 = -(a - a^\dagger)/\sqrt2` and :math:`\tau\cdot Q`.
* :class:`AlgElementH`: :math:`\mathfrak{A}_\mathbb{H} = \mathrm{span}_\mathbb{H}\{\mathbb{I}, a, a^\dagger\}`
  with slice components :math:`y_0/\sqrt3 + y_\tau\tau` of each coefficient.
* :class:`DirectSumElement`: :math:`\mathfrak{A}_i\oplus\mathfrak{A}_j\oplus\mathfrak{A}_k`,
  the target of the embedding :math:`\sigma`.

All brackets take values in the center. They are computed from closed form
structure constants on coordinate arrays of shape ``(..., n)``, so the
axiom checks run vectorised over many samples.

Matrix realizations
-------------------

:func:`to_matrix` maps elements to truncated operators. The slice-wise
commutator :math:`\sum_\tau[\mathcal{A}_\tau, \mathcal{B}_\tau]` of the
realized slice components reproduces every bracket on the interior block.
The raw commutator of the full realizations only agrees for elements with
real (or single-slice imaginary) coefficients; :func:`commutator_discrepancy`
measures the gap.

Summary
-------

.. autosummary::
    AlgElementA
    AlgElementHat
    AlgElementH
    DirectSumElement
    AxiomReport
    bracket
    bracket_sigma
    bracket_hat
    bracket_H
    bracket_direct_sum
    embed_sigma
    unembed
    slice_components
    to_matrix
    bracket_oracle_residual
    commutator_discrepancy
    axiom_suite

Code details
~~~~~~~~~~~~
"""
import numbers
from dataclasses import dataclass, field

import numpy as np

from .quatcore import AXES, Quaternion, _components, make_rng, qmul
from .qlinalg import QMatrix, commutator, identity, left_scalar_op, max_deviation
from .fockops import DimTooSmall, build_ladder, build_momentum, build_p0, build_position


SQRT3 = np.sqrt(3)
SQRT2 = np.sqrt(2)


class NotInImage(ValueError):
    """Exception raised when a direct sum element is not in the image of the embedding."""


# ===============================================================
# Coordinate level brackets
# ===============================================================


def _sigma_coords(A, B):
    ys = A[..., 3] / SQRT3
    ss = B[..., 3] / SQRT3
    out = np.zeros(np.broadcast(A, B).shape)
    out[..., 0:3] = ys[..., None] * B[..., 4:7] - A[..., 4:7] * ss[..., None]
    return out


def _hat_coords(A, B):
    a = A[..., 3] / SQRT3
    a2 = B[..., 3] / SQRT3
    out = np.zeros(np.broadcast(A, B).shape)
    out[..., 0:3] = -(a[..., None] * B[..., 4:7] - A[..., 4:7] * a2[..., None])
    return out


def _slices(q):
    """Slice components ``q0/sqrt(3) + q_tau tau`` of quaternion arrays, shape ``(..., 3, 4)``."""
    out = np.zeros(q.shape[:-1] + (3, 4))
    out[..., :, 0] = q[..., None, 0] / SQRT3
    for c in range(3):
        out[..., c, c + 1] = q[..., c + 1]
    return out


def _h_coords(A, B):
    Y, Z = _slices(A[..., 4:8]), _slices(A[..., 8:12])
    S, T = _slices(B[..., 4:8]), _slices(B[..., 8:12])
    out = np.zeros(np.broadcast(A, B).shape)
    out[..., 0:4] = np.sum(qmul(Y, T) - qmul(Z, S), axis=-2)
    return out


def _direct_sum_coords(A, B):
    A = A.reshape(A.shape[:-1] + (3, 3))
    B = B.reshape(B.shape[:-1] + (3, 3))
    out = np.zeros(np.broadcast(A, B).shape)
    out[..., 0] = A[..., 1] * B[..., 2] - A[..., 2] * B[..., 1]
    return out.reshape(out.shape[:-2] + (9,))


# ===============================================================
# Elements
# ===============================================================


class _Element:
    """Base class of algebra elements stored as real coordinate vectors."""

    #: int: number of real coordinates
    size = 0

    def __init__(self, coords):
        arr = np.array(coords, dtype=np.float64).reshape(self.size)
        arr.flags.writeable = False
        self._coords = arr

    @classmethod
    def from_coords(cls, coords):
        """Element with the given real coordinate vector."""
        obj = cls.__new__(cls)
        _Element.__init__(obj, coords)
        return obj

    @classmethod
    def zero(cls):
        """The zero element."""
        return cls.from_coords(np.zeros(cls.size))

    @classmethod
    def random(cls, rng=None, scale=1.0):
        """Element with coordinates uniform in ``[-scale, scale]``."""
        return cls.from_coords(make_rng(rng).uniform(-scale, scale, cls.size))

    @property
    def coords(self):
        """array[float]: the real coordinates"""
        return self._coords

    @staticmethod
    def _bracket(A, B):
        raise NotImplementedError

    def is_central(self):
        """Whether only the coefficients of the center are non-zero."""
        return not np.any(self._coords[self._central_size:])

    _central_size = 3

    def isclose(self, other, atol=1e-12):
        """Coordinatewise comparison with absolute tolerance."""
        return bool(np.allclose(self._coords, other.coords, atol=atol, rtol=0))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.from_coords(self._coords + other._coords)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.from_coords(self._coords - other._coords)

    def __neg__(self):
        return self.from_coords(-self._coords)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Real):
            return NotImplemented
        return self.from_coords(self._coords * float(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return bool(np.array_equal(self._coords, other._coords))

    def __hash__(self):
        return hash((type(self).__name__,) + tuple(self._coords.tolist()))

    def __repr__(self):
        return "{}({})".format(type(self).__name__, ", ".join("{:g}".format(c) for c in self._coords))


class AlgElementA(_Element):
    r"""Element :math:`\sum_\tau x_\tau\,\tau\cdot\mathbb{I} + yQ + \sum_\tau z_\tau P_\tau` of :math:`\mathfrak{A}`."""

    size = 7

    def __init__(self, x_i=0.0, x_j=0.0, x_k=0.0, y=0.0, z_i=0.0, z_j=0.0, z_k=0.0):
        super().__init__([x_i, x_j, x_k, y, z_i, z_j, z_k])

    _bracket = staticmethod(_sigma_coords)

    @property
    def x(self):
        """array[float]: coefficients of :math:`\\tau\\cdot\\mathbb{I}`"""
        return self._coords[0:3]

    @property
    def y(self):
        """float: coefficient of :math:`Q`"""
        return float(self._coords[3])

    @property
    def z(self):
        """array[float]: coefficients of :math:`P_\\tau`"""
        return self._coords[4:7]

    def to_h(self):
        r"""The same operator as an element of :math:`\mathfrak{A}_\mathbb{H}`.

        :math:`Q = (a + a^\dagger)/\sqrt2` and :math:`P_\tau = -\tau\cdot(a - a^\dagger)/\sqrt2`
        give the coefficients :math:`(y - \sum z_\tau\tau)/\sqrt2` of :math:`a` and
        :math:`(y + \sum z_\tau\tau)/\sqrt2` of :math:`a^\dagger`.
        """
        x, y, z = self.x, self.y, self.z
        return AlgElementH(
            np.concatenate([[0.0], x]),
            np.concatenate([[y], -z]) / SQRT2,
            np.concatenate([[y], z]) / SQRT2,
        )


class AlgElementHat(_Element):
    r"""Element :math:`x\,i\cdot\mathbb{I} + y\,j\cdot\mathbb{I} + z\,k\cdot\mathbb{I} + aP_0 + b\,i\cdot Q + c\,j\cdot Q + d\,k\cdot Q`."""

    size = 7

    def __init__(self, x=0.0, y=0.0, z=0.0, a=0.0, b=0.0, c=0.0, d=0.0):
        super().__init__([x, y, z, a, b, c, d])

    _bracket = staticmethod(_hat_coords)

    def to_h(self):
        r"""The same operator as an element of :math:`\mathfrak{A}_\mathbb{H}`.

        With :math:`\mathfrak{q} = (a + bi + cj + dk)/\sqrt2` the element reads
        :math:`\mathbf{x}\cdot\mathbb{I} + \mathfrak{q}\cdot a^\dagger - \bar{\mathfrak{q}}\cdot a`.
        """
        c = self._coords
        q = np.concatenate([[c[3]], c[4:7]]) / SQRT2
        return AlgElementH(np.concatenate([[0.0], c[0:3]]), -q * np.array([1, -1, -1, -1]), q)


class AlgElementH(_Element):
    r"""Element :math:`\mathfrak{x}\cdot\mathbb{I} + \mathfrak{y}\cdot a + \mathfrak{z}\cdot a^\dagger` of :math:`\mathfrak{A}_\mathbb{H}`.

    Args:
        x, y, z (Quaternion): coefficients of :math:`\mathbb{I}`, :math:`a` and :math:`a^\dagger`
    """

    size = 12
    _central_size = 4

    def __init__(self, x=0.0, y=0.0, z=0.0):
        super().__init__(np.concatenate([_components(x), _components(y), _components(z)]))

    _bracket = staticmethod(_h_coords)

    @property
    def x(self):
        """Quaternion: coefficient of :math:`\\mathbb{I}`"""
        return Quaternion.from_array(self._coords[0:4])

    @property
    def y(self):
        """Quaternion: coefficient of :math:`a`"""
        return Quaternion.from_array(self._coords[4:8])

    @property
    def z(self):
        """Quaternion: coefficient of :math:`a^\\dagger`"""
        return Quaternion.from_array(self._coords[8:12])


class DirectSumElement(_Element):
    r"""Element :math:`(\mathcal{A}_i, \mathcal{A}_j, \mathcal{A}_k)` of :math:`\mathfrak{A}_i\oplus\mathfrak{A}_j\oplus\mathfrak{A}_k`.

    Args:
        slots (array_like): shape ``(3, 3)``; row :math:`\tau` holds the coefficients of
            :math:`\tau\cdot\mathbb{I}`, :math:`Q` and :math:`P_\tau`
    """

    size = 9

    def __init__(self, slots=((0.0,) * 3,) * 3):
        super().__init__(slots)

    _bracket = staticmethod(_direct_sum_coords)

    @property
    def slots(self):
        """array[float]: the ``(3, 3)`` coefficient array"""
        return self._coords.reshape(3, 3)

    def is_central(self):
        return not np.any(self.slots[:, 1:])


# ===============================================================
# Brackets
# ===============================================================


def bracket_sigma(A, B):
    r"""The bracket :math:`[\mathcal{A},\mathcal{B}]_\sigma = \sum_\tau \tfrac{1}{\sqrt3}(y t_\tau - z_\tau s)\,\tau\cdot\mathbb{I}`."""
    return AlgElementA.from_coords(_sigma_coords(A.coords, B.coords))


def bracket_hat(A, B):
    r"""The bracket :math:`[[\mathcal{A},\mathcal{B}]] = -\sum_\tau \tfrac{1}{\sqrt3}(a b'_\tau - b_\tau a')\,\tau\cdot\mathbb{I}`."""
    return AlgElementHat.from_coords(_hat_coords(A.coords, B.coords))


def bracket_H(A, B):
    r"""The bracket on :math:`\mathfrak{A}_\mathbb{H}`.

    .. math::
        [\mathcal{A},\mathcal{B}] = \sum_\tau \left(Y_\tau T_\tau - Z_\tau S_\tau\right)\cdot\mathbb{I},

    where :math:`Y_\tau, Z_\tau` are the slice components of the :math:`a` and
    :math:`a^\dagger` coefficients of :math:`\mathcal{A}` and :math:`S_\tau, T_\tau`
    those of :math:`\mathcal{B}`.
    """
    return AlgElementH.from_coords(_h_coords(A.coords, B.coords))


def bracket_direct_sum(A, B):
    """Componentwise bracket on the direct sum."""
    return DirectSumElement.from_coords(_direct_sum_coords(A.coords, B.coords))


_BRACKETS = {
    AlgElementA: bracket_sigma,
    AlgElementHat: bracket_hat,
    AlgElementH: bracket_H,
    DirectSumElement: bracket_direct_sum,
}

_ELEMENT_TYPES = {v: k for k, v in _BRACKETS.items()}
_ELEMENT_TYPES.update({"sigma": AlgElementA, "hat": AlgElementHat, "H": AlgElementH, "direct_sum": DirectSumElement})


def bracket(A, B):
    """The bracket of the algebra both elements belong to."""
    if type(A) is not type(B):
        raise TypeError("Cannot bracket {} with {}.".format(type(A).__name__, type(B).__name__))
    return _BRACKETS[type(A)](A, B)


# ===============================================================
# Embedding
# ===============================================================


def embed_sigma(A):
    r"""The embedding :math:`\sigma(\mathcal{A}) = (\mathcal{A}_i, \mathcal{A}_j, \mathcal{A}_k)`."""
    c = A.coords
    slots = np.stack([c[0:3], np.full(3, c[3] / SQRT3), c[4:7]], axis=-1)
    return DirectSumElement(slots)


def unembed(D, tol=0.0):
    """Inverse of :func:`embed_sigma` on its image.

    Args:
        D (DirectSumElement): element of the direct sum
        tol (float): allowed spread of the shared :math:`Q` coefficient

    Raises:
        NotInImage: if the three :math:`Q` coefficients differ
    """
    q = D.slots[:, 1]
    if np.ptp(q) > tol:
        raise NotInImage("The Q coefficients {} of the three slices differ.".format(q.tolist()))
    return AlgElementA(*D.slots[:, 0], q[0] * SQRT3, *D.slots[:, 2])


def slice_components(element):
    r"""The slice components :math:`(\mathcal{A}_i, \mathcal{A}_j, \mathcal{A}_k)` as elements of the same algebra."""
    c = element.coords
    parts = []
    for t in range(3):
        if isinstance(element, (AlgElementA, AlgElementHat)):
            out = np.zeros(7)
            out[t] = c[t]
            out[3] = c[3] / SQRT3
            out[4 + t] = c[4 + t]
        elif isinstance(element, AlgElementH):
            out = _slices(c.reshape(3, 4))[:, t].ravel()
        elif isinstance(element, DirectSumElement):
            out = np.zeros((3, 3))
            out[t] = element.slots[t]
        else:
            raise TypeError("Unknown algebra element {!r}.".format(element))
        parts.append(type(element).from_coords(out))
    return tuple(parts)


# ===============================================================
# Matrix realizations
# ===============================================================


def to_matrix(element, N):
    """The truncated operator realizing an algebra element.

    Args:
        element: element of one of the algebras
        N (int): truncation dimension, at least 3

    Returns:
        QMatrix: the operator

    Raises:
        DimTooSmall: if ``N < 3``
    """
    if N < 3:
        raise DimTooSmall("Algebra elements need truncation dimension at least 3, got {}.".format(N))

    eye = identity(N)
    Q = build_position(N)
    c = element.coords

    if isinstance(element, AlgElementA):
        out = left_scalar_op(Quaternion(0.0, *c[0:3]), eye) + c[3] * Q
        for t, axis in enumerate(AXES):
            out = out + c[4 + t] * build_momentum(N, axis)
        return out

    if isinstance(element, AlgElementHat):
        return (
            left_scalar_op(Quaternion(0.0, *c[0:3]), eye)
            + c[3] * build_p0(N)
            + left_scalar_op(Quaternion(0.0, *c[4:7]), Q)
        )

    if isinstance(element, AlgElementH):
        a, ad = build_ladder(N)
        return left_scalar_op(c[0:4], eye) + left_scalar_op(c[4:8], a) + left_scalar_op(c[8:12], ad)

    if isinstance(element, DirectSumElement):
        out = QMatrix.zeros(N)
        for t, axis in enumerate(AXES):
            x, y, z = element.slots[t]
            out = out + left_scalar_op(x * axis.to_quaternion(), eye) + y * Q + z * build_momentum(N, axis)
        return out

    raise TypeError("Unknown algebra element {!r}.".format(element))


def bracket_oracle_residual(A, B, N):
    r"""Deviation of the slice-wise matrix commutator from the realized bracket.

    Compares :math:`\sum_\tau[\mathrm{to\_matrix}(\mathcal{A}_\tau), \mathrm{to\_matrix}(\mathcal{B}_\tau)]`
    with :math:`\mathrm{to\_matrix}([\mathcal{A},\mathcal{B}])` on the interior block.

    Returns:
        float: largest entry deviation on indices :math:`0,\dots,N-2`
    """
    total = QMatrix.zeros(N)
    for At, Bt in zip(slice_components(A), slice_components(B)):
        total = total + commutator(to_matrix(At, N), to_matrix(Bt, N))
    return max_deviation(total, to_matrix(bracket(A, B), N), block=N - 1)


def commutator_discrepancy(A, B, N):
    """Deviation of the raw matrix commutator of the realizations from the realized bracket.

    Returns:
        float: largest entry deviation on indices :math:`0,\\dots,N-2`
    """
    raw = commutator(to_matrix(A, N), to_matrix(B, N))
    return max_deviation(raw, to_matrix(bracket(A, B), N), block=N - 1)


# ===============================================================
# Axioms
# ===============================================================


@dataclass
class AxiomReport:
    """Largest residual of each Lie algebra axiom over the sampled tuples."""

    algebra: str
    samples: int
    residuals: dict = field(default_factory=dict)

    def passed(self, tol=1e-12):
        """Whether every residual is at most ``tol``."""
        return all(r <= tol for r in self.residuals.values())

    def to_dict(self):
        """Plain dictionary for serialization."""
        return {"algebra": self.algebra, "samples": self.samples, "residuals": dict(self.residuals)}


def axiom_suite(bracket_fn, sample_count=10000, seed=None):
    """Checks bilinearity, alternativity, the Jacobi identity and anti-commutativity.

    Bilinearity is checked over the reals in both slots. Samples have
    coordinates uniform in ``[-1, 1]``.

    Args:
        bracket_fn (callable or str): one of the bracket functions, or ``"sigma"``,
            ``"hat"``, ``"H"``, ``"direct_sum"``
        sample_count (int): number of sampled tuples
        seed (int or numpy.random.Generator): randomness

    Returns:
        AxiomReport: the residuals
    """
    kind = _ELEMENT_TYPES[bracket_fn]
    f = kind._bracket
    rng = make_rng(seed)
    A, B, C = rng.uniform(-1, 1, (3, sample_count, kind.size))
    alpha, beta = rng.uniform(-1, 1, (2, sample_count, 1))

    mix = alpha * A + beta * B
    left = f(mix, C) - (alpha * f(A, C) + beta * f(B, C))
    right = f(C, mix) - (alpha * f(C, A) + beta * f(C, B))
    jacobi = f(A, f(B, C)) + f(B, f(C, A)) + f(C, f(A, B))

    residuals = {
        "bilinearity": float(max(np.max(np.abs(left)), np.max(np.abs(right)))),
        "alternativity": float(np.max(np.abs(f(A, A)))),
        "jacobi": float(np.max(np.abs(jacobi))),
        "anticommutativity": float(np.max(np.abs(f(A, B) + f(B, A)))),
    }
    return AxiomReport(kind.__name__, sample_count, residuals)
