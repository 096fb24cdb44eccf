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
Fock space operators
====================

**Module name:** :mod:`quaternionfields.fockops`

.. currentmodule:: quaternionfields.fockops

Builders for the harmonic oscillator operators on the truncated Fock space
:math:`\mathrm{span}\{e_0,\dots,e_{N-1}\}`.

Truncation
----------

On the truncated space :math:`[a, a^\dagger]` is the identity on the
interior block :math:`0,\dots,N-2` and equals :math:`-(N-1)` at the corner
:math:`(N-1, N-1)`. Identities involving the canonical commutation relation
therefore hold on the interior block only.

Momentum
--------

For a unit imaginary :math:`I` the momentum operator is
:math:`P_I = (-I/\sqrt{2})\cdot(a - a^\dagger)`. Since :math:`a - a^\dagger`
is real and antisymmetric, :math:`P_I` is exactly self-adjoint, and
:math:`P_I^2 = -\tfrac12 (a - a^\dagger)^2` does not depend on :math:`I`.
The unit-free momentum is :math:`P_0 = -(a - a^\dagger)/\sqrt{2} = \bar\tau\cdot P_\tau`.

Summary
-------

.. autosummary::
    OperatorSet
    operator_set
    build_ladder
    build_number
    build_harmonic
    build_position
    build_momentum
    build_p_star
    build_p0
    build_hamiltonian
    build_parity
    classical_hamiltonian

Code details
~~~~~~~~~~~~
"""
import functools
from dataclasses import dataclass

import numpy as np

from .quatcore import AXIS_STAR, as_quaternion, slice_decompose
from .qlinalg import QMatrix, adjoint, identity, left_scalar_op, matmul


class DimTooSmall(ValueError):
    """Exception raised when the truncation dimension is too small for an operator."""


def _check_dim(N, minimum=2):
    if int(N) != N or N < minimum:
        raise DimTooSmall("Truncation dimension must be at least {}, got {}.".format(minimum, N))


@functools.lru_cache()
def build_ladder(N):
    r"""Annihilation and creation operators.

    :math:`a_{m,m+1} = \sqrt{m+1}` for :math:`m \leq N-2` and
    :math:`a^\dagger = \mathrm{adjoint}(a)`.

    Args:
        N (int): truncation dimension

    Returns:
        tuple[QMatrix]: ``(a, a_dag)``

    Raises:
        DimTooSmall: if ``N < 2``
    """
    _check_dim(N)
    a = QMatrix.from_real(np.diag(np.sqrt(np.arange(1, N)), 1))
    return a, adjoint(a)


@functools.lru_cache()
def build_number(N):
    """Number operator :math:`\\mathrm{diag}(0, 1, \\dots, N-1)`."""
    _check_dim(N)
    return QMatrix.from_real(np.diag(np.arange(N, dtype=np.float64)))


@functools.lru_cache()
def build_harmonic(N):
    r"""The shifted number operator :math:`\mathcal{H}_h = N + \mathbb{I}`."""
    return build_number(N) + identity(N)


@functools.lru_cache()
def build_position(N):
    r"""Position operator :math:`Q = (a + a^\dagger)/\sqrt{2}`."""
    _check_dim(N)
    a, ad = build_ladder(N)
    return QMatrix((a.entries + ad.entries) / np.sqrt(2))


@functools.lru_cache()
def build_p0(N):
    r"""Momentum without imaginary unit, :math:`P_0 = -(a - a^\dagger)/\sqrt{2}`."""
    _check_dim(N)
    a, ad = build_ladder(N)
    return QMatrix(-(a.entries - ad.entries) / np.sqrt(2))


@functools.lru_cache()
def build_momentum(N, I):
    r"""Momentum operator :math:`P_I = (-I/\sqrt{2})\cdot(a - a^\dagger)`.

    Args:
        N (int): truncation dimension
        I (UnitImaginary): the imaginary unit

    Returns:
        QMatrix: the self-adjoint operator :math:`P_I`
    """
    _check_dim(N)
    a, ad = build_ladder(N)
    return left_scalar_op(-as_quaternion(I) / np.sqrt(2), a - ad)


def build_p_star(N):
    r"""The momentum :math:`P_*` along the diagonal axis :math:`(i+j+k)/\sqrt{3}`."""
    return build_momentum(N, AXIS_STAR)


@functools.lru_cache()
def build_hamiltonian(N, I):
    r"""Hamiltonian :math:`\hat H_I = (Q^2 + P_I^2)/2`.

    On the interior block this equals :math:`N + \tfrac12\mathbb{I}`; the corner
    entry is :math:`(N-1)/2`.
    """
    Q = build_position(N)
    P = build_momentum(N, I)
    return QMatrix((matmul(Q, Q).entries + matmul(P, P).entries) / 2)


@functools.lru_cache()
def build_parity(N):
    r"""Parity operator :math:`\Pi = \mathrm{diag}((-1)^n)`."""
    _check_dim(N, minimum=1)
    return QMatrix.from_real(np.diag((-1.0) ** np.arange(N)))


def classical_hamiltonian(q, I):
    r"""Classical symbol :math:`\tfrac12(\hat q^2 + |\hat p_I|^2)` of :math:`\hat H_I`.

    Here :math:`\hat q = \sqrt{2}\,\mathrm{Re}\,q`, and :math:`\hat p_I` is
    :math:`\sqrt{2}` times the imaginary part of ``q`` rotated onto the axis ``I``,
    which keeps :math:`|\hat p_I| = \sqrt{2}\,|\mathrm{Im}\,q|`.

    Args:
        q (Quaternion): phase space point
        I (UnitImaginary): imaginary unit of the momentum

    Returns:
        float: the symbol value, equal to :math:`|q|^2`
    """
    s = slice_decompose(q)
    q_hat = np.sqrt(2) * s.x
    p_hat = np.sqrt(2) * s.y * as_quaternion(I)
    return 0.5 * (q_hat ** 2 + p_hat.norm() ** 2)


@dataclass(frozen=True)
class OperatorSet:
    """The operators of the truncated oscillator.

    Args:
        dim (int): truncation dimension
    """

    dim: int

    def __post_init__(self):
        _check_dim(self.dim)

    @property
    def a(self):
        """QMatrix: annihilation operator"""
        return build_ladder(self.dim)[0]

    @property
    def a_dag(self):
        """QMatrix: creation operator"""
        return build_ladder(self.dim)[1]

    @property
    def number(self):
        """QMatrix: number operator"""
        return build_number(self.dim)

    @property
    def position(self):
        """QMatrix: position operator"""
        return build_position(self.dim)

    @property
    def parity(self):
        """QMatrix: parity operator"""
        return build_parity(self.dim)

    @property
    def p0(self):
        """QMatrix: the momentum without imaginary unit"""
        return build_p0(self.dim)

    def momentum(self, I):
        """Momentum operator along ``I``."""
        return build_momentum(self.dim, I)

    def hamiltonian(self, I):
        """Hamiltonian with momentum along ``I``."""
        return build_hamiltonian(self.dim, I)


def operator_set(N):
    """The :class:`OperatorSet` of dimension ``N``."""
    return OperatorSet(N)
