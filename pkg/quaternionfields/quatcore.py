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
Quaternion arithmetic
=====================

**Module name:** :mod:`quaternionfields.quatcore`

.. currentmodule:: quaternionfields.quatcore

Scalar quaternion arithmetic, representations and decompositions used by
every other module of Quaternion Fields.

A quaternion :math:`q = q_0 + q_1 i + q_2 j + q_3 k` is stored as a
``float64`` array of length four. The scalar class :class:`Quaternion` wraps
one such array; the vectorised helpers :func:`qmul`, :func:`qconj`,
:func:`qabs` and :func:`qembed` act on arrays of shape ``(..., 4)`` and are
what the matrix and quadrature code is built on.

Conventions
-----------

The :math:`2\times 2` complex representation is

.. math::
    q \mapsto \begin{pmatrix} q_0 + \sqrt{-1}\, q_3 & -q_2 + \sqrt{-1}\, q_1 \\
    q_2 + \sqrt{-1}\, q_1 & q_0 - \sqrt{-1}\, q_3 \end{pmatrix},

so that :math:`i \mapsto \sqrt{-1}\sigma_1` and :math:`\bar q \mapsto q^\dagger`.

Every non-real quaternion lies in a unique slice :math:`\mathbb{C}_I`,
:math:`q = x + I y` with :math:`y > 0`. Real quaternions belong to every
slice; :func:`slice_decompose` then returns the canonical axis :math:`i`
and sets the ``degenerate`` flag.

Polar coordinates are
:math:`q_0 = r\cos\theta`, :math:`q_1 = r\sin\theta\sin\phi\cos\psi`,
:math:`q_2 = r\sin\theta\sin\phi\sin\psi`, :math:`q_3 = r\sin\theta\cos\phi`.

Classes
-------

.. autosummary::
    Quaternion
    UnitImaginary
    SlicePoint
    PolarForm

Scalar operations
-----------------

.. autosummary::
    mul
    conj
    norm
    to_matrix2
    from_matrix2
    slice_decompose
    exp_quat
    polar_form
    from_polar
    sample_sphere

Array operations
----------------

.. autosummary::
    qmul
    qconj
    qabs
    qembed
    qunembed
    from_polar_array
    sample_ball

Code details
~~~~~~~~~~~~
"""
import numbers
from dataclasses import dataclass

import numpy as np


#: float: relative tolerance of structural checks (unit norms, matrix images)
STRUCTURE_TOL = 1e-10

#: tuple: Hamilton products of the basis elements, ``e_c e_d = sign * e_index``
MULTIPLICATION_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)

_CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


class MalformedMatrix(ValueError):
    """Exception raised when a complex matrix is not the image of a quaternion."""


# ===============================================================
# Vectorised helpers
# ===============================================================


def qmul(p, q):
    r"""Hamilton product of quaternion arrays.

    Both arguments are broadcast against each other over all but the last
    axis, which must have length four.

    Args:
        p (array[float]): left factors, shape ``(..., 4)``
        q (array[float]): right factors, shape ``(..., 4)``

    Returns:
        array[float]: the products :math:`pq`, shape ``(..., 4)``
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    p0, p1, p2, p3 = np.moveaxis(p, -1, 0)
    q0, q1, q2, q3 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ],
        axis=-1,
    )


def qconj(q):
    """Quaternion conjugate of an array of shape ``(..., 4)``."""
    return np.asarray(q, dtype=np.float64) * _CONJ_SIGNS


def qabs(q):
    """Quaternion modulus of an array of shape ``(..., 4)``."""
    return np.linalg.norm(np.asarray(q, dtype=np.float64), axis=-1)


def qembed(q):
    r"""Maps quaternion arrays to their :math:`2\times 2` complex representation.

    Args:
        q (array[float]): quaternions, shape ``(..., 4)``

    Returns:
        array[complex]: matrices of shape ``(..., 2, 2)``
    """
    q = np.asarray(q, dtype=np.float64)
    out = np.empty(q.shape[:-1] + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = q[..., 0] + 1j * q[..., 3]
    out[..., 0, 1] = -q[..., 2] + 1j * q[..., 1]
    out[..., 1, 0] = q[..., 2] + 1j * q[..., 1]
    out[..., 1, 1] = q[..., 0] - 1j * q[..., 3]
    return out


def qunembed(M, tol=STRUCTURE_TOL):
    r"""Inverse of :func:`qembed`.

    Args:
        M (array[complex]): matrices of shape ``(..., 2, 2)``
        tol (float): relative tolerance on the structure defect

    Returns:
        array[float]: quaternions of shape ``(..., 4)``

    Raises:
        MalformedMatrix: if some block is not of the form produced by :func:`qembed`
    """
    M = np.asarray(M, dtype=np.complex128)
    defect = np.maximum(
        np.abs(M[..., 0, 0] - np.conj(M[..., 1, 1])), np.abs(M[..., 0, 1] + np.conj(M[..., 1, 0]))
    )
    scale = max(1.0, float(np.max(np.abs(M), initial=0.0)))
    worst = float(np.max(defect, initial=0.0))
    if not worst <= tol * scale:
        raise MalformedMatrix(
            "Matrix is not the image of a quaternion (structure defect {:.3e}).".format(worst)
        )

    alpha = 0.5 * (M[..., 0, 0] + np.conj(M[..., 1, 1]))
    beta = 0.5 * (M[..., 1, 0] - np.conj(M[..., 0, 1]))
    return np.stack([alpha.real, beta.imag, beta.real, alpha.imag], axis=-1)


def from_polar_array(r, theta, phi, psi):
    """Vectorised :func:`from_polar`; the coordinate arrays are broadcast together.

    Returns:
        array[float]: quaternions of shape ``broadcast_shape + (4,)``
    """
    r, theta, phi, psi = np.broadcast_arrays(
        *(np.asarray(c, dtype=np.float64) for c in (r, theta, phi, psi))
    )
    rs = r * np.sin(theta)
    return np.stack(
        [
            r * np.cos(theta),
            rs * np.sin(phi) * np.cos(psi),
            rs * np.sin(phi) * np.sin(psi),
            rs * np.cos(phi),
        ],
        axis=-1,
    )


def make_rng(seed=None):
    """Returns a numpy ``Generator``; generators are passed through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_ball(rng, radius=1.0, size=None):
    """Uniform samples from the closed quaternion ball of the given radius.

    Args:
        rng (int or numpy.random.Generator): seed or generator
        radius (float): ball radius
        size (int or None): number of samples; ``None`` returns a single :class:`Quaternion`

    Returns:
        Quaternion or array[float]: a quaternion, or an array of shape ``(size, 4)``
    """
    rng = make_rng(rng)
    n = 1 if size is None else size
    directions = rng.standard_normal((n, 4))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    radii = radius * rng.random(n) ** 0.25
    points = directions * radii[:, None]
    if size is None:
        return Quaternion.from_array(points[0])
    return points


# ===============================================================
# Scalar classes
# ===============================================================


def _components(value):
    """Component array of a quaternion-like value (Quaternion, real number, or length four array)."""
    if isinstance(value, Quaternion):
        return value.array
    if isinstance(value, numbers.Real):
        return np.array([float(value), 0.0, 0.0, 0.0])
    arr = np.asarray(value, dtype=np.float64)
    if arr.shape != (4,):
        raise TypeError("Cannot interpret {!r} as a quaternion.".format(value))
    return arr


def as_quaternion(value):
    """Coerces a quaternion-like value into a :class:`Quaternion`."""
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, UnitImaginary):
        return value.to_quaternion()
    return Quaternion.from_array(_components(value))


class Quaternion:
    r"""An immutable real quaternion :math:`w + x i + y j + z k`.

    Quaternions multiply with each other by the Hamilton product and with
    real numbers componentwise. Multiplying a quaternion with a
    :class:`~.QVector` or :class:`~.QMatrix` is delegated to those classes.

    Args:
        w (float): real part :math:`q_0`
        x (float): coefficient :math:`q_1` of :math:`i`
        y (float): coefficient :math:`q_2` of :math:`j`
        z (float): coefficient :math:`q_3` of :math:`k`
    """

    __slots__ = ("_q",)
    __array_ufunc__ = None

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        q = np.array([w, x, y, z], dtype=np.float64)
        q.flags.writeable = False
        self._q = q

    @classmethod
    def from_array(cls, arr):
        """Builds a quaternion from a length four array."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.shape != (4,):
            raise ValueError("A quaternion requires exactly four components.")
        return cls(*arr)

    @property
    def w(self):
        """float: the real part"""
        return float(self._q[0])

    @property
    def x(self):
        """float: the coefficient of :math:`i`"""
        return float(self._q[1])

    @property
    def y(self):
        """float: the coefficient of :math:`j`"""
        return float(self._q[2])

    @property
    def z(self):
        """float: the coefficient of :math:`k`"""
        return float(self._q[3])

    @property
    def array(self):
        """array[float]: read-only component array"""
        return self._q

    @property
    def real(self):
        """float: the real part"""
        return self.w

    @property
    def imag(self):
        """array[float]: the three imaginary components"""
        return self._q[1:].copy()

    def pure(self):
        """The purely imaginary part as a quaternion."""
        return Quaternion(0.0, *self._q[1:])

    def is_real(self, tol=0.0):
        """Whether all imaginary components are at most ``tol`` in magnitude."""
        return bool(np.all(np.abs(self._q[1:]) <= tol))

    def conj(self):
        """Quaternion conjugate."""
        return Quaternion.from_array(qconj(self._q))

    def norm(self):
        """Quaternion modulus."""
        return float(np.linalg.norm(self._q))

    def inverse(self):
        """Multiplicative inverse."""
        n2 = float(self._q @ self._q)
        if n2 == 0.0:
            raise ZeroDivisionError("The zero quaternion has no inverse.")
        return Quaternion.from_array(qconj(self._q) / n2)

    def isclose(self, other, atol=1e-12):
        """Componentwise comparison with absolute tolerance ``atol``."""
        return bool(np.allclose(self._q, _components(other), atol=atol, rtol=0))

    def tolist(self):
        """Components as a list of floats."""
        return [float(c) for c in self._q]

    def __add__(self, other):
        try:
            return Quaternion.from_array(self._q + _components(other))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return Quaternion.from_array(self._q - _components(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return Quaternion.from_array(_components(other) - self._q)
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return Quaternion.from_array(-self._q)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion.from_array(qmul(self._q, other._q))
        if isinstance(other, numbers.Real):
            return Quaternion.from_array(self._q * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Quaternion.from_array(self._q * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        if isinstance(other, numbers.Real):
            return Quaternion.from_array(self._q / float(other))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = Quaternion(1.0)
        for _ in range(abs(int(n))):
            result = result * base
        return result

    def __abs__(self):
        return self.norm()

    def __eq__(self, other):
        try:
            return bool(np.array_equal(self._q, _components(other)))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self._q.tolist()))

    def __repr__(self):
        return "Quaternion({!r}, {!r}, {!r}, {!r})".format(*self.tolist())

    def __str__(self):
        w, x, y, z = self.tolist()
        return "{:g} {:+g}i {:+g}j {:+g}k".format(w, x, y, z)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class UnitImaginary:
    r"""A point :math:`I = x i + y j + z k` of the quaternionic sphere :math:`\mathbb{S}`.

    Every such point squares to :math:`-1`.

    Args:
        x, y, z (float): components, with :math:`x^2 + y^2 + z^2 = 1`
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        n = float(np.linalg.norm([self.x, self.y, self.z]))
        if abs(n - 1.0) > STRUCTURE_TOL:
            raise ValueError("A unit imaginary quaternion must have unit norm, got {}.".format(n))

    @classmethod
    def from_vector(cls, v):
        """Normalises a non-zero real 3-vector onto the sphere."""
        v = np.asarray(v, dtype=np.float64)
        n = np.linalg.norm(v)
        if n == 0.0:
            raise ValueError("Cannot normalise the zero vector.")
        return cls(*(v / n))

    @property
    def vector(self):
        """array[float]: the components as a real 3-vector"""
        return np.array([self.x, self.y, self.z])

    def to_quaternion(self):
        """The purely imaginary quaternion :math:`I`."""
        return Quaternion(0.0, self.x, self.y, self.z)

    def __neg__(self):
        return UnitImaginary(-self.x, -self.y, -self.z)


AXIS_I = UnitImaginary(1.0, 0.0, 0.0)
AXIS_J = UnitImaginary(0.0, 1.0, 0.0)
AXIS_K = UnitImaginary(0.0, 0.0, 1.0)
#: UnitImaginary: the diagonal axis :math:`(i + j + k)/\sqrt{3}`
AXIS_STAR = UnitImaginary(*([1 / np.sqrt(3)] * 3))
#: tuple[UnitImaginary]: the three coordinate axes, in the order i, j, k
AXES = (AXIS_I, AXIS_J, AXIS_K)


@dataclass(frozen=True)
class SlicePoint:
    """Slice coordinates :math:`q = x + I y`, :math:`y \\geq 0`.

    Args:
        x (float): real part
        y (float): modulus of the imaginary part
        axis (UnitImaginary): the slice axis :math:`I_q`
        degenerate (bool): ``True`` for real quaternions, whose axis is the canonical :math:`i`
    """

    x: float
    y: float
    axis: UnitImaginary
    degenerate: bool = False

    def recompose(self):
        """The quaternion :math:`x + I y`."""
        return Quaternion.from_array(np.concatenate([[self.x], self.y * self.axis.vector]))

    def shifted(self, dx=0.0, dy=0.0):
        """The point :math:`(x + dx) + I(y + dy)` of the same slice, as a quaternion."""
        return Quaternion.from_array(
            np.concatenate([[self.x + dx], (self.y + dy) * self.axis.vector])
        )


@dataclass(frozen=True)
class PolarForm:
    r"""Polar coordinates :math:`(r, \theta, \phi, \psi)` of a quaternion."""

    r: float
    theta: float
    phi: float
    psi: float

    def to_quaternion(self):
        """Same as :func:`from_polar`."""
        return from_polar(self)


# ===============================================================
# Scalar operations
# ===============================================================


def mul(p, q):
    """Hamilton product :math:`pq`."""
    return as_quaternion(p) * as_quaternion(q)


def conj(q):
    """Quaternion conjugate :math:`\\bar q`."""
    return as_quaternion(q).conj()


def norm(q):
    """Quaternion modulus :math:`|q|`."""
    return as_quaternion(q).norm()


def to_matrix2(q):
    r"""The :math:`2\times 2` complex matrix representing ``q``.

    Returns:
        array[complex]: a ``(2, 2)`` array
    """
    return qembed(_components(q))


def from_matrix2(M, tol=STRUCTURE_TOL):
    """The quaternion represented by the ``(2, 2)`` complex matrix ``M``.

    Raises:
        MalformedMatrix: if ``M`` is not in the image of :func:`to_matrix2`
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.shape != (2, 2):
        raise MalformedMatrix("Expected a 2x2 matrix, got shape {}.".format(M.shape))
    return Quaternion.from_array(qunembed(M, tol=tol))


def slice_decompose(q):
    """Decomposes ``q`` as :math:`x + I_q y` with :math:`y \\geq 0`.

    Real quaternions get the canonical axis :math:`i` and ``degenerate=True``.

    Returns:
        SlicePoint: the slice coordinates
    """
    q = as_quaternion(q)
    v = q.imag
    y = float(np.linalg.norm(v))
    if y == 0.0:
        return SlicePoint(q.w, 0.0, AXIS_I, degenerate=True)
    return SlicePoint(q.w, y, UnitImaginary(*(v / y)))


def exp_quat(q):
    r"""Quaternion exponential :math:`e^x(\cos y + I_q \sin y)`."""
    s = slice_decompose(q)
    scale = np.exp(s.x)
    return Quaternion.from_array(
        np.concatenate([[scale * np.cos(s.y)], scale * np.sin(s.y) * s.axis.vector])
    )


def polar_form(q):
    r"""Polar coordinates of ``q``.

    :math:`\theta` is taken in :math:`[0, \pi]`, not :math:`[0, 2\pi)`: the
    unit :math:`I(\phi,\psi)` ranges over the whole sphere, and
    :math:`(\theta, I)` and :math:`(2\pi-\theta, -I)` name the same quaternion,
    so the representative with :math:`\sin\theta \geq 0` is returned. The
    quadrature grids still integrate :math:`\theta` over :math:`[0, 2\pi)`,
    covering :math:`\mathbb{H}` twice. Where the chart degenerates
    (:math:`r = 0` or real ``q``) the canonical axis :math:`i` is used,
    that is :math:`\phi = \pi/2` and :math:`\psi = 0`.

    Returns:
        PolarForm: the coordinates
    """
    q = as_quaternion(q)
    r = q.norm()
    v = q.imag
    vnorm = float(np.linalg.norm(v))
    theta = float(np.arctan2(vnorm, q.w))
    if vnorm == 0.0:
        return PolarForm(r, theta, np.pi / 2, 0.0)

    n = v / vnorm
    phi = float(np.arctan2(np.hypot(n[0], n[1]), n[2]))
    psi = float(np.mod(np.arctan2(n[1], n[0]), 2 * np.pi))
    if psi >= 2 * np.pi:
        psi = 0.0
    return PolarForm(r, theta, phi, psi)


def from_polar(p):
    """The quaternion with polar coordinates ``p``."""
    return Quaternion.from_array(from_polar_array(p.r, p.theta, p.phi, p.psi))


def sample_sphere(seed=None):
    """Uniform sample of the sphere of unit imaginary quaternions.

    Args:
        seed (int or numpy.random.Generator): seed, or a generator to draw from

    Returns:
        UnitImaginary: the sample
    """
    rng = make_rng(seed)
    while True:
        v = rng.standard_normal(3)
        if np.linalg.norm(v) > 0:
            return UnitImaginary.from_vector(v)
