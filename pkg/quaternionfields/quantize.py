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
Quadrature and quantization
===========================

**Module name:** :mod:`quaternionfields.quantize`

.. currentmodule:: quaternionfields.quantize

Product quadrature for the measure
:math:`d\varsigma = d\tau(r)\,d\theta\,d\Omega(\phi,\psi)` on :math:`\mathbb{H}`
in polar coordinates, and the coherent state quantization

.. math::
    f \mapsto A_f = \int_{\mathbb{H}} |\gamma_q\rangle f(q,\bar q)\langle\gamma_q|\, d\varsigma(q).

Measures
--------

The angular part is fixed: :math:`\theta` is uniform on :math:`[0, 2\pi)` and
:math:`d\Omega = (4\pi)^{-1}\sin\phi\,d\phi\,d\psi` is normalised. Two radial
measures are available:

* ``"cs_measure"``: :math:`d\tau(r) = \pi^{-1} r\,dr`. Combined with the factor
  :math:`e^{-r^2}` carried by :math:`|\gamma_q\rangle\langle\gamma_q|` this
  gives the resolution of the identity.
* ``"bargmann_measure"``: :math:`d\tau(r) = \pi^{-1} r e^{-r^2}\,dr`, for which the
  monomials :math:`\phi_n(q) = q^n/\sqrt{n!}` are orthonormal.

Nodes
-----

The radial integral is a Gauss-Laguerre rule in :math:`u = r^2`, the
:math:`\theta` rule is the uniform trapezoid (exact for trigonometric
polynomials of degree below :math:`n_\theta`), :math:`\cos\phi` uses
Gauss-Legendre nodes and :math:`\psi` is uniform.

Integrands are evaluated on all nodes at once and reduced with
:func:`numpy.sum` in node order. Quaternion products keep the order
:math:`q^m\, f\, \bar q^n`.

Summary
-------

.. autosummary::
    MeasureSpec
    QuadratureGrid
    SymbolFn
    grid_build
    moment_test
    integrate
    cs_vectors
    operator_integral
    quantize_symbol
    resolution_check
    bargmann_gram

Code details
~~~~~~~~~~~~
"""
import functools
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.laguerre import laggauss
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from .quatcore import MULTIPLICATION_TABLE, PolarForm, Quaternion, _components, from_polar_array, qconj, qmul
from .qlinalg import QMatrix, identity, max_deviation


CS_MEASURE = "cs_measure"
BARGMANN_MEASURE = "bargmann_measure"
RADIAL_KINDS = (CS_MEASURE, BARGMANN_MEASURE)


class MomentTestFailure(RuntimeError):
    """Exception raised when a quadrature grid fails its moment test.

    Args:
        order (int): the failing moment order
        error (float): relative error of that moment
    """

    def __init__(self, order, error):
        super().__init__(
            "Radial moment of order {} has relative error {:.3e}.".format(order, error)
        )
        self.order = order
        self.error = error


class NonFiniteIntegrand(ValueError):
    """Exception raised when an integrand is not finite at a quadrature node.

    Args:
        index (int): position of the node in the grid
        node (PolarForm): the node
    """

    def __init__(self, index, node):
        super().__init__("Integrand is not finite at node {} ({}).".format(index, node))
        self.index = index
        self.node = node


@dataclass(frozen=True)
class MeasureSpec:
    """Specification of a product quadrature grid.

    Args:
        radial_kind (str): ``"cs_measure"`` or ``"bargmann_measure"``
        n_r (int): radial nodes
        n_theta (int): nodes in :math:`\\theta`
        n_phi (int): Gauss-Legendre nodes in :math:`\\cos\\phi`
        n_psi (int): nodes in :math:`\\psi`
    """

    radial_kind: str = CS_MEASURE
    n_r: int = 64
    n_theta: int = 32
    n_phi: int = 4
    n_psi: int = 8

    def __post_init__(self):
        if self.radial_kind not in RADIAL_KINDS:
            raise ValueError(
                "Unknown radial measure {!r}; expected one of {}.".format(self.radial_kind, RADIAL_KINDS)
            )
        for name in ("n_r", "n_theta", "n_phi", "n_psi"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError("Node count {} must be a positive integer, got {}.".format(name, value))


@functools.lru_cache()
def _radial_rule(kind, n_r):
    """Radial nodes and weights with ``sum(W * g(r)) ~ int g(r) dtau(r)``."""
    u, w = laggauss(n_r)
    if kind == CS_MEASURE:
        with np.errstate(divide="ignore"):
            weights = np.exp(np.log(w) + u) / (2 * np.pi)
    else:
        weights = w / (2 * np.pi)
    return np.sqrt(u), weights


class QuadratureGrid:
    r"""Nodes and weights of a product rule for :math:`d\varsigma`.

    Nodes are flattened with the radial index outermost, then :math:`\theta`,
    then the angular pairs :math:`(\phi, \psi)` with :math:`\psi` innermost.

    Args:
        spec (MeasureSpec): the grid specification
    """

    def __init__(self, spec):
        self.spec = spec
        self.radii, self.radial_weights = _radial_rule(spec.radial_kind, spec.n_r)

        self.thetas = 2 * np.pi * np.arange(spec.n_theta) / spec.n_theta
        self.theta_weight = 2 * np.pi / spec.n_theta

        cos_phi, w_phi = leggauss(spec.n_phi)
        psi = 2 * np.pi * np.arange(spec.n_psi) / spec.n_psi
        phi_grid, psi_grid = np.meshgrid(np.arccos(cos_phi), psi, indexing="ij")
        self.phis = phi_grid.ravel()
        self.psis = psi_grid.ravel()
        self.omega_weights = np.repeat(w_phi / (2 * spec.n_psi), spec.n_psi)
        self.axes = np.stack(
            [np.sin(self.phis) * np.cos(self.psis), np.sin(self.phis) * np.sin(self.psis), np.cos(self.phis)],
            axis=-1,
        )

        r, th, om = np.meshgrid(
            np.arange(spec.n_r), np.arange(spec.n_theta), np.arange(len(self.phis)), indexing="ij"
        )
        r, th, om = r.ravel(), th.ravel(), om.ravel()
        self.weights = self.radial_weights[r] * self.theta_weight * self.omega_weights[om]
        self.r = self.radii[r]
        self.theta = self.thetas[th]
        self.phi = self.phis[om]
        self.psi = self.psis[om]
        self.points = from_polar_array(self.r, self.theta, self.phi, self.psi)

    @property
    def shape(self):
        """tuple[int]: numbers of radial, :math:`\\theta` and :math:`\\Omega` nodes"""
        return (self.spec.n_r, self.spec.n_theta, len(self.phis))

    def node(self, index):
        """The node at a flat index, as a :class:`~.PolarForm`."""
        return PolarForm(
            float(self.r[index]), float(self.theta[index]), float(self.phi[index]), float(self.psi[index])
        )

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        for k, w in enumerate(self.weights):
            yield self.node(k), float(w)

    def __repr__(self):
        return "<QuadratureGrid: {} nodes, {}>".format(len(self), self.spec)


@dataclass(frozen=True)
class SymbolFn:
    r"""A symbol :math:`q \mapsto f(q, \bar q)`.

    ``func`` acts on an ``(n, 4)`` array of quaternions and returns an array
    broadcastable to ``(n, 4)``.

    Args:
        name (str): label used in reports
        func (callable): the vectorised symbol
    """

    name: str
    func: Callable

    def __call__(self, points):
        points = np.asarray(points, dtype=np.float64)
        return np.broadcast_to(np.asarray(self.func(points), dtype=np.float64), points.shape)

    @classmethod
    def constant(cls, value, name=None):
        """The constant symbol ``value``."""
        comps = _components(value)
        return cls(name or "const({})".format(Quaternion.from_array(comps)), lambda p: comps)

    @classmethod
    def identity(cls):
        """The symbol :math:`f(q) = q`."""
        return cls("q", lambda p: p)

    @classmethod
    def conjugate(cls):
        r"""The symbol :math:`f(q) = \bar q`."""
        return cls("qbar", qconj)

    @classmethod
    def norm_squared(cls):
        """The symbol :math:`f(q) = |q|^2`."""

        def func(p):
            out = np.zeros_like(p)
            out[:, 0] = np.sum(p * p, axis=1)
            return out

        return cls("|q|^2", func)

    @classmethod
    def from_scalar(cls, fn, name=None):
        """Wraps a callable acting on single :class:`~.Quaternion` values."""

        def func(p):
            return np.array([_components(fn(Quaternion.from_array(row))) for row in p])

        return cls(name or getattr(fn, "__name__", "f"), func)


def moment_test(grid, m_max=10):
    r"""Relative errors of the radial moments :math:`2\pi\int r^{2m} G(r)\, d\tau(r) = m!`.

    :math:`G(r) = e^{-r^2}` for the coherent state measure and :math:`1` for the
    Bargmann measure.

    Returns:
        array[float]: errors for :math:`m = 0, \dots, m_{max}`
    """
    u = grid.radii ** 2
    W = grid.radial_weights
    if grid.spec.radial_kind == CS_MEASURE:
        W = W * np.exp(-u)
    orders = np.arange(m_max + 1)
    moments = 2 * np.pi * np.array([np.sum(W * u ** m) for m in orders])
    exact = np.exp(gammaln(orders + 1))
    return np.abs(moments - exact) / exact


def grid_build(spec=None, m_max=10, tol=1e-10):
    """Builds a quadrature grid and runs its moment test.

    Args:
        spec (MeasureSpec or None): grid specification; defaults to :class:`MeasureSpec()`
        m_max (int): highest radial moment checked
        tol (float): relative tolerance of the moment test

    Returns:
        QuadratureGrid: the grid

    Raises:
        MomentTestFailure: if a moment of order at most ``m_max`` is off by more than ``tol``
    """
    grid = QuadratureGrid(spec or MeasureSpec())
    errors = moment_test(grid, m_max)
    bad = np.nonzero(errors > tol)[0]
    if bad.size:
        raise MomentTestFailure(int(bad[0]), float(errors[bad[0]]))

    omega_error = abs(np.sum(grid.omega_weights) - 1.0)
    if omega_error > tol:
        raise MomentTestFailure(0, float(omega_error))
    return grid


def _as_symbol(g):
    return g if isinstance(g, SymbolFn) else SymbolFn.from_scalar(g)


def _checked_values(grid, g):
    values = _as_symbol(g)(grid.points)
    bad = np.nonzero(~np.all(np.isfinite(values), axis=1))[0]
    if bad.size:
        raise NonFiniteIntegrand(int(bad[0]), grid.node(int(bad[0])))
    return values


def integrate(grid, g):
    r"""Quadrature of a quaternion valued integrand, :math:`\int g\, d\varsigma`.

    Args:
        grid (QuadratureGrid): the grid
        g (SymbolFn or callable): vectorised symbol, or a callable on single quaternions

    Returns:
        Quaternion: the integral

    Raises:
        NonFiniteIntegrand: if ``g`` is not finite at some node
    """
    values = _checked_values(grid, g)
    return Quaternion.from_array(np.sum(values * grid.weights[:, None], axis=0))


def cs_vectors(grid, N):
    r"""Coefficients of :math:`|\gamma_q\rangle` at every node.

    Returns:
        array[float]: array of shape ``(len(grid), N, 4)``
    """
    points = grid.points
    v = np.zeros((len(points), N, 4))
    v[:, 0, 0] = np.exp(-grid.r ** 2 / 2)
    for m in range(1, N):
        v[:, m] = qmul(v[:, m - 1], points) / np.sqrt(m)
    return v


def operator_integral(grid, vectors, values=None):
    r"""The operator :math:`\int |v_q\rangle f(q) \langle v_q|\, d\varsigma`.

    Args:
        grid (QuadratureGrid): the grid
        vectors (array[float]): node vectors of shape ``(len(grid), N, 4)``
        values (array[float] or None): symbol values of shape ``(len(grid), 4)``;
            ``None`` for the constant symbol 1

    Returns:
        QMatrix: matrix with entries :math:`\sum_k w_k (v_k)_m f(q_k) \overline{(v_k)_n}`
    """
    left = vectors if values is None else qmul(vectors, values[:, None, :])
    left = left * grid.weights[:, None, None]
    right = qconj(vectors)

    N = vectors.shape[1]
    out = np.zeros((N, N, 4))
    for c in range(4):
        for d in range(4):
            sign, idx = MULTIPLICATION_TABLE[c][d]
            out[..., idx] += sign * (left[..., c].T @ right[..., d])
    return QMatrix(out)


def _require_kind(grid, kind):
    if grid.spec.radial_kind != kind:
        raise ValueError("This operation requires a {} grid, got {}.".format(kind, grid.spec.radial_kind))


def quantize_symbol(f, N, grid):
    r"""Coherent state quantization of a symbol.

    .. math::
        (A_f)_{mn} = \int e^{-|q|^2} \frac{q^m f(q,\bar q)\bar q^n}{\sqrt{m!n!}}\, d\varsigma

    Args:
        f (SymbolFn or callable): the symbol
        N (int): truncation dimension
        grid (QuadratureGrid): a ``cs_measure`` grid

    Returns:
        QMatrix: the operator :math:`A_f`
    """
    _require_kind(grid, CS_MEASURE)
    return operator_integral(grid, cs_vectors(grid, N), _checked_values(grid, f))


def resolution_check(N, grid):
    r"""Largest deviation of :math:`\int|\gamma_q\rangle\langle\gamma_q|\,d\varsigma` from the identity.

    Args:
        N (int): size of the checked block
        grid (QuadratureGrid): a ``cs_measure`` grid

    Returns:
        float: :math:`\max_{m,n<N}|(\cdot)_{mn} - \delta_{mn}|`
    """
    _require_kind(grid, CS_MEASURE)
    return max_deviation(operator_integral(grid, cs_vectors(grid, N)), identity(N))


def bargmann_gram(N, grid):
    r"""Gram matrix :math:`\langle\phi_m|\phi_n\rangle` of the monomials :math:`q^n/\sqrt{n!}`.

    Args:
        N (int): number of monomials
        grid (QuadratureGrid): a ``bargmann_measure`` grid

    Returns:
        QMatrix: the Gram matrix, the identity for an exact rule
    """
    _require_kind(grid, BARGMANN_MEASURE)
    points = grid.points
    phi = np.zeros((len(points), N, 4))
    phi[:, 0, 0] = 1.0
    for n in range(1, N):
        phi[:, n] = qmul(phi[:, n - 1], points) / np.sqrt(n)
    return operator_integral(grid, qconj(phi))
