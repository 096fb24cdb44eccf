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
Coherent states
===============

**Module name:** :mod:`quaternionfields.coherent`

.. currentmodule:: quaternionfields.coherent

Truncated right quaternionic canonical coherent states

.. math::
    |\gamma_q\rangle = e^{-|q|^2/2}\sum_{m=0}^{N-1} |e_m\rangle \frac{q^m}{\sqrt{m!}},

their expectation values, and the Heisenberg uncertainty analyses.

Truncation error
----------------

The norm lost by truncating at dimension :math:`N` is the regularized lower
incomplete gamma function

.. math::
    \epsilon_N(q) = e^{-|q|^2}\sum_{m\geq N}\frac{|q|^{2m}}{m!} = P(N, |q|^2),

evaluated with :func:`scipy.special.gammainc`. :func:`required_dim` picks the
smallest :math:`N` with :math:`\epsilon_N(q) < \varepsilon`.

Uncertainty
-----------

With :math:`\mathfrak{c}_I = e^{-|q|^2}\sum_m \bar q^m I q^m/m!` the
momentum moments in :math:`|\gamma_q\rangle` are

.. math::
    \langle P_I\rangle = -\sqrt{2}\,\mathrm{Re}(\mathfrak{c}_I q),\qquad
    \langle P_I^2\rangle = \tfrac12 + |q|^2 - \mathrm{Re}(q^2),

so that :math:`\langle\Delta Q\rangle^2\langle\Delta P_I\rangle^2 - \tfrac14
= |\mathrm{Im}\,q|^2 - \mathrm{Re}(\mathfrak{c}_I q)^2`, bounded by :math:`|q|^2`.
Along the slice axis :math:`I_q` the product equals :math:`\tfrac14`.

Summary
-------

.. autosummary::
    CoherentState
    UncertaintyReport
    tail_bound
    required_dim
    build_cs
    expectation
    c_series
    momentum_mean
    momentum_variance
    uncertainty_global
    uncertainty_slice

Code details
~~~~~~~~~~~~
"""
import logging as log
from dataclasses import dataclass, fields

import numpy as np
from scipy.special import gammainc

from .quatcore import Quaternion, as_quaternion, qmul, qconj, slice_decompose
from .qlinalg import QVector, apply, commutator, inner, matmul, right_scalar_vec
from .fockops import build_ladder, build_momentum, build_position


#: float: default bound on the truncation error of coherent states
DEFAULT_EPSILON = 1e-14

#: int: largest dimension :func:`required_dim` will consider
MAX_DIM = 4096


class TruncationTooCoarse(ValueError):
    """Exception raised when the truncation dimension cannot hold a coherent state.

    Args:
        message (str): description
        required_dim (int): the smallest admissible dimension
    """

    def __init__(self, message, required_dim):
        super().__init__(message)
        self.required_dim = required_dim


def tail_bound(q, N):
    r"""Norm lost by truncating :math:`|\gamma_q\rangle` to dimension ``N``.

    Args:
        q (Quaternion): coherent state label
        N (int): truncation dimension

    Returns:
        float: :math:`e^{-|q|^2}\sum_{m\geq N}|q|^{2m}/m!`
    """
    return float(gammainc(N, as_quaternion(q).norm() ** 2))


def required_dim(q, eps=DEFAULT_EPSILON):
    """Smallest truncation dimension whose tail bound is below ``eps``.

    Raises:
        TruncationTooCoarse: if no dimension up to :data:`MAX_DIM` suffices
    """
    x = as_quaternion(q).norm() ** 2
    dims = np.arange(1, MAX_DIM + 1)
    ok = np.nonzero(gammainc(dims, x) < eps)[0]
    if ok.size == 0:
        raise TruncationTooCoarse(
            "No dimension up to {} reaches tail bound {:.1e}.".format(MAX_DIM, eps), MAX_DIM
        )
    return int(dims[ok[0]])


@dataclass(frozen=True)
class CoherentState:
    """A truncated coherent state.

    Args:
        q (Quaternion): label
        dim (int): truncation dimension
        vec (QVector): coefficients
        tail_bound (float): norm lost by the truncation
    """

    q: Quaternion
    dim: int
    vec: QVector
    tail_bound: float

    def norm_deficit(self):
        """:math:`1 - \\|\\gamma_q\\|^2`, which matches :attr:`tail_bound`."""
        return 1.0 - self.vec.norm() ** 2

    def eigen_residual(self):
        r""":math:`\|a\gamma_q - \gamma_q q\|`, of order :math:`\sqrt{N\epsilon_N}`."""
        a, _ = build_ladder(self.dim)
        return (apply(a, self.vec) - right_scalar_vec(self.vec, self.q)).norm()


def build_cs(q, N=None, eps=DEFAULT_EPSILON):
    r"""Builds the truncated coherent state :math:`|\gamma_q\rangle`.

    Args:
        q (Quaternion): label
        N (int or None): truncation dimension; :func:`required_dim` if ``None``
        eps (float): bound on the truncation error

    Returns:
        CoherentState: the state

    Raises:
        TruncationTooCoarse: if the tail bound at ``N`` is not below ``eps``
    """
    q = as_quaternion(q)
    if N is None:
        N = max(2, required_dim(q, eps))

    tail = tail_bound(q, N)
    if not tail < eps:
        needed = required_dim(q, eps)
        raise TruncationTooCoarse(
            "Dimension {} leaves truncation error {:.3e}; at least {} is required.".format(
                N, tail, needed
            ),
            needed,
        )

    coeffs = np.zeros((N, 4))
    coeffs[0, 0] = np.exp(-q.norm() ** 2 / 2)
    for m in range(1, N):
        coeffs[m] = qmul(coeffs[m - 1], q.array) / np.sqrt(m)

    return CoherentState(q, N, QVector(coeffs), tail)


def expectation(A, psi, tol=1e-8):
    r"""Expectation value :math:`\langle\psi|A\psi\rangle`.

    A warning is logged when :math:`\psi` is not normalised to within ``tol``.

    Args:
        A (QMatrix): operator
        psi (QVector or CoherentState): state

    Returns:
        Quaternion: the expectation value
    """
    if isinstance(psi, CoherentState):
        psi = psi.vec
    n2 = psi.norm() ** 2
    if abs(n2 - 1.0) > tol:
        log.warning("Expectation value taken in an unnormalised state (norm squared %.6g).", n2)
    return inner(psi, apply(A, psi))


def c_series(q, I, tol=1e-16, max_terms=10000):
    r"""The series :math:`\mathfrak{c}_I = e^{-|q|^2}\sum_m \bar q^m I q^m/m!`.

    Terms are generated as :math:`t_m = \bar q\, t_{m-1}\, q/m` and summed with
    Kahan compensation until the remaining weight
    :math:`e^{-|q|^2}\sum_{m>M}|q|^{2m}/m!` is at most ``tol``.

    Args:
        q (Quaternion): coherent state label
        I (UnitImaginary or Quaternion): the imaginary unit
        tol (float): tail bound at which summation stops

    Returns:
        Quaternion: the value :math:`\mathfrak{c}_I`, purely imaginary up to rounding
    """
    q = as_quaternion(q).array
    qbar = qconj(q)
    x = float(q @ q)
    weight = np.exp(-x)

    term = as_quaternion(I).array.copy()
    total = weight * term
    comp = np.zeros(4)
    m = 0
    while gammainc(m + 1, x) > tol and m < max_terms:
        m += 1
        term = qmul(qmul(qbar, term), q) / m
        y = weight * term - comp
        s = total + y
        comp = (s - total) - y
        total = s

    return Quaternion.from_array(total)


def momentum_mean(q, I):
    r"""Closed form :math:`\langle\gamma_q|P_I|\gamma_q\rangle = -\sqrt{2}\,\mathrm{Re}(\mathfrak{c}_I q)`."""
    q = as_quaternion(q)
    return -np.sqrt(2) * (c_series(q, I) * q).real


def momentum_variance(q, I):
    r"""Closed form :math:`\tfrac12 + 2|\mathrm{Im}\,q|^2 - 2\,\mathrm{Re}(\mathfrak{c}_I q)^2`."""
    q = as_quaternion(q)
    v2 = float(q.imag @ q.imag)
    return 0.5 + 2 * v2 - 2 * (c_series(q, I) * q).real ** 2


@dataclass(frozen=True)
class UncertaintyReport:
    """Moments of position and momentum in a coherent state."""

    q: Quaternion
    axis: Quaternion
    dim: int
    meanQ: Quaternion
    meanQ2: Quaternion
    meanP: Quaternion
    meanP2: Quaternion
    varQ: float
    varP: float
    product: float
    commutator_mean: Quaternion
    c_I: Quaternion
    bound_residual: float
    degenerate: bool = False

    @property
    def bound(self):
        """float: the global bound :math:`|q|^2` on :attr:`bound_residual`"""
        return self.q.norm() ** 2

    def to_dict(self):
        """Plain dictionary with quaternions as component lists."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = value.tolist() if isinstance(value, Quaternion) else value
        return out


def _uncertainty(q, I, N, eps, degenerate=False):
    q = as_quaternion(q)
    cs = build_cs(q, N, eps)
    Q = build_position(cs.dim)
    P = build_momentum(cs.dim, I)

    meanQ = expectation(Q, cs)
    meanQ2 = expectation(matmul(Q, Q), cs)
    meanP = expectation(P, cs)
    meanP2 = expectation(matmul(P, P), cs)

    varQ = (meanQ2 - meanQ * meanQ).real
    varP = (meanP2 - meanP * meanP).real
    product = varQ * varP

    return UncertaintyReport(
        q=q,
        axis=as_quaternion(I),
        dim=cs.dim,
        meanQ=meanQ,
        meanQ2=meanQ2,
        meanP=meanP,
        meanP2=meanP2,
        varQ=varQ,
        varP=varP,
        product=product,
        commutator_mean=expectation(commutator(Q, P), cs),
        c_I=c_series(q, I),
        bound_residual=abs(product - 0.25),
        degenerate=degenerate,
    )


def uncertainty_global(q, I, N=None, eps=DEFAULT_EPSILON):
    r"""Uncertainty analysis of :math:`Q` and :math:`P_I` for an arbitrary axis ``I``.

    Args:
        q (Quaternion): coherent state label
        I (UnitImaginary): momentum axis
        N (int or None): truncation dimension
        eps (float): truncation error bound

    Returns:
        UncertaintyReport: with ``bound_residual`` at most :math:`|q|^2`
    """
    return _uncertainty(q, I, N, eps)


def uncertainty_slice(q, N=None, eps=DEFAULT_EPSILON):
    r"""Uncertainty analysis with the momentum along the slice axis :math:`I_q` of ``q``.

    Real ``q`` uses the canonical axis :math:`i` and sets ``degenerate``.

    Returns:
        UncertaintyReport: with ``product`` equal to :math:`\tfrac14`
    """
    s = slice_decompose(q)
    return _uncertainty(q, s.axis, N, eps, degenerate=s.degenerate)
