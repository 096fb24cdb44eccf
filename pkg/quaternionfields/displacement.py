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
Displacement operator
=====================

**Module name:** :mod:`quaternionfields.displacement`

.. currentmodule:: quaternionfields.displacement

The quaternionic displacement operator

.. math::
    D(q) = e^{\mathcal{A}},\qquad \mathcal{A} = q\cdot a^\dagger - \bar q\cdot a,

on the truncated Fock space, and residuals of its algebraic properties.

Truncation
----------

Exponential based identities are compared on the top :math:`N/2` block,
where the truncation of the generator has no visible effect. The sizing
rule :func:`required_dim` gives :math:`N \geq 16(|q|+|p|)^2 + 32`.

Phases
------

Within a slice the Baker-Campbell-Hausdorff formula gives
:math:`D(q)D(p) = e^{\frac12[\mathcal{A},\mathcal{B}]}D(q+p)` with
:math:`\tfrac12[\mathcal{A},\mathcal{B}] = \mathrm{Im}(\bar p q)`, the vacuum
expectation of half the generator commutator (:func:`commutator_phase`).
The slice decomposed bracket of :mod:`~.liealg` gives instead the wedge phase
:math:`\exp(-\sum_\tau\tau(q_0p_\tau - q_\tau p_0)/\sqrt3)` (:func:`wedge_phase`).
The residual functions accept either phase, applied from the left (default)
or from the right, and report both a same-slice and a general case.

Grid integrals
--------------

For :math:`q = r u` with :math:`u = e^{I\theta}`, the matrix elements are
:math:`D(q)_{mn} = D_0(r)_{mn}\,u^{m-n}` with the real matrix
:math:`D_0(r) = e^{r(a^\dagger - a)}`. Grid integrals therefore need one real
exponential per radial node, computed in a working dimension large enough
for the largest node.

Summary
-------

.. autosummary::
    DisplacementOp
    WedgePhase
    Residuals
    generator
    build_D
    build_D_normal
    build_D_antinormal
    wedge
    wedge_phase
    commutator_phase
    rotate_into_slice
    composition_residual
    projective_relation_residual
    covariance_residual
    shift_residual
    parity_conjugation_residual
    slice_partials
    slice_derivative_residual
    displaced_vectors
    admissibility_integral
    square_integrability_check
    cyclic_span_rank
    required_dim

Code details
~~~~~~~~~~~~
"""
import functools
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm as matrixExp

from .quatcore import (
    STRUCTURE_TOL,
    Quaternion,
    as_quaternion,
    exp_quat,
    make_rng,
    qconj,
    qembed,
    qmul,
    sample_ball,
    slice_decompose,
)
from .qlinalg import (
    QMatrix,
    QVector,
    adjoint,
    identity,
    left_scalar_op,
    matmul,
    matrix_exp,
    max_deviation,
    right_scalar_op,
)
from .fockops import _check_dim, build_ladder, build_parity
from .liealg import AlgElementH, bracket_H
from .quantize import CS_MEASURE, _radial_rule, _require_kind, operator_integral


#: namedtuple: residual of an identity for same-slice arguments and for the arguments as given
Residuals = namedtuple("Residuals", ["slice_case", "general_case"])

PHASES = ("commutator", "wedge")
SIDES = ("left", "right")


def required_dim(q, p=0.0):
    r"""Sizing rule :math:`\lceil 16(|q|+|p|)^2 + 32\rceil` for exponential based checks."""
    s = as_quaternion(q).norm() + as_quaternion(p).norm()
    return int(np.ceil(16 * s ** 2 + 32))


def _block(N):
    return N // 2


def generator(q, N):
    r"""The anti-self-adjoint generator :math:`q\cdot a^\dagger - \bar q\cdot a`."""
    q = as_quaternion(q)
    a, ad = build_ladder(N)
    return left_scalar_op(q, ad) - left_scalar_op(q.conj(), a)


@dataclass(frozen=True)
class DisplacementOp:
    """A truncated displacement operator.

    Args:
        q (Quaternion): displacement
        dim (int): truncation dimension
        matrix (QMatrix): :math:`D(q)`
        generator (QMatrix): :math:`q\\cdot a^\\dagger - \\bar q\\cdot a`
    """

    q: Quaternion
    dim: int
    matrix: QMatrix
    generator: QMatrix

    def unitarity_defect(self):
        r""":math:`\max|D^\dagger D - \mathbb{I}|` over the full truncated space."""
        return max_deviation(matmul(adjoint(self.matrix), self.matrix), identity(self.dim))

    def ground_state_image(self):
        """The vector :math:`D(q)e_0`."""
        return QVector(self.matrix.entries[:, 0])


@functools.lru_cache(maxsize=512)
def _displacement(q, N):
    G = generator(q, N)
    return DisplacementOp(q, N, matrix_exp(G), G)


def build_D(q, N):
    r"""The displacement operator :math:`D(q) = e^{q\cdot a^\dagger - \bar q\cdot a}`.

    Args:
        q (Quaternion): displacement
        N (int): truncation dimension

    Returns:
        DisplacementOp: the operator

    Raises:
        ConvergenceFailure: if the exponential fails
    """
    _check_dim(N)
    return _displacement(as_quaternion(q), int(N))


def build_D_normal(q, N):
    r"""Normal ordered form :math:`e^{-|q|^2/2}e^{q\cdot a^\dagger}e^{-\bar q\cdot a}`."""
    _check_dim(N)
    q = as_quaternion(q)
    a, ad = build_ladder(N)
    M = matmul(matrix_exp(left_scalar_op(q, ad)), matrix_exp(left_scalar_op(-q.conj(), a)))
    return np.exp(-q.norm() ** 2 / 2) * M


def build_D_antinormal(q, N):
    r"""Anti-normal ordered form :math:`e^{|q|^2/2}e^{-\bar q\cdot a}e^{q\cdot a^\dagger}`."""
    _check_dim(N)
    q = as_quaternion(q)
    a, ad = build_ladder(N)
    M = matmul(matrix_exp(left_scalar_op(-q.conj(), a)), matrix_exp(left_scalar_op(q, ad)))
    return np.exp(q.norm() ** 2 / 2) * M


@dataclass(frozen=True)
class WedgePhase:
    """A unit quaternion phase :math:`e^{\\xi}` with purely imaginary exponent.

    Args:
        value (Quaternion): the phase
        exponent (Quaternion): the purely imaginary exponent :math:`\\xi`
        kind (str): ``"wedge"`` or ``"commutator"``
    """

    value: Quaternion
    exponent: Quaternion
    kind: str = "wedge"

    def __post_init__(self):
        if abs(self.value.norm() - 1.0) > STRUCTURE_TOL:
            raise ValueError("A phase must have unit norm, got {}.".format(self.value.norm()))

    def squared(self):
        """The phase :math:`e^{2\\xi}`."""
        return WedgePhase(exp_quat(2 * self.exponent), 2 * self.exponent, self.kind)


def wedge(q, p):
    r"""Wedge components :math:`q_\tau\wedge p_\tau = (q_0 p_\tau - q_\tau p_0)/\sqrt3`.

    Returns:
        array[float]: the three components for :math:`\tau = i, j, k`
    """
    q = as_quaternion(q).array
    p = as_quaternion(p).array
    return (q[0] * p[1:] - q[1:] * p[0]) / np.sqrt(3)


def _generator_element(q):
    q = as_quaternion(q)
    return AlgElementH(0.0, -q.conj(), q)


def wedge_phase(q, p):
    r"""The phase :math:`\exp(\tfrac12[\mathcal{A},\mathcal{B}])` of the slice decomposed bracket.

    Evaluated with :func:`~.bracket_H` on the generators; it equals
    :math:`\exp(-\sum_\tau \tau\, q_\tau\wedge p_\tau)`.

    Returns:
        WedgePhase: the phase
    """
    half = 0.5 * bracket_H(_generator_element(q), _generator_element(p)).x
    return WedgePhase(exp_quat(half), half, "wedge")


def commutator_phase(q, p):
    r"""The phase :math:`\exp(\mathrm{Im}(\bar p q))`.

    The exponent is the vacuum expectation of :math:`\tfrac12[\mathcal{A},\mathcal{B}]`,
    the exact same-slice Baker-Campbell-Hausdorff phase.

    Returns:
        WedgePhase: the phase
    """
    xi = (as_quaternion(p).conj() * as_quaternion(q)).pure()
    return WedgePhase(exp_quat(xi), xi, "commutator")


def _phase(q, p, kind):
    if kind == "commutator":
        return commutator_phase(q, p)
    if kind == "wedge":
        return wedge_phase(q, p)
    raise ValueError("Unknown phase {!r}; expected one of {}.".format(kind, PHASES))


def _with_phase(phase, M, side):
    if side == "left":
        return left_scalar_op(phase.value, M)
    if side == "right":
        return right_scalar_op(M, phase.value)
    raise ValueError("Unknown side {!r}; expected one of {}.".format(side, SIDES))


def rotate_into_slice(p, q):
    r"""The point :math:`p_0 + |\mathrm{Im}\,p|\, I_q` of the slice of ``q``.

    Real and imaginary moduli of ``p`` are kept; the canonical axis is used for real ``q``.
    """
    p = as_quaternion(p)
    return slice_decompose(q).axis.to_quaternion() * float(np.linalg.norm(p.imag)) + p.real


def _sized(q, p, N):
    return required_dim(q, p) if N is None else N


def _composition(q, p, N, phase, side):
    lhs = matmul(build_D(q, N).matrix, build_D(p, N).matrix)
    rhs = _with_phase(_phase(q, p, phase), build_D(as_quaternion(q) + p, N).matrix, side)
    return max_deviation(lhs, rhs, block=_block(N))


def _projective(q, p, N, phase, side):
    Dq, Dp = build_D(q, N).matrix, build_D(p, N).matrix
    rhs = _with_phase(_phase(q, p, phase).squared(), matmul(Dp, Dq), side)
    return max_deviation(matmul(Dq, Dp), rhs, block=_block(N))


def _covariance(q, p, N, phase, side):
    Dq, Dp = build_D(q, N).matrix, build_D(p, N).matrix
    lhs = matmul(matmul(Dq, Dp), adjoint(Dq))
    rhs = _with_phase(_phase(q, p, phase).squared(), Dp, side)
    return max_deviation(lhs, rhs, block=_block(N))


def _both_cases(fn, q, p, N, phase, side):
    N = _sized(q, p, N)
    return Residuals(
        fn(q, rotate_into_slice(p, q), N, phase, side),
        fn(q, p, N, phase, side),
    )


def composition_residual(q, p, N=None, phase="commutator", side="left"):
    r"""Residual of :math:`D(q)D(p) = e^{\xi}\cdot D(q+p)` on the top :math:`N/2` block.

    Args:
        q, p (Quaternion): displacements
        N (int or None): truncation dimension; :func:`required_dim` if ``None``
        phase (str): ``"commutator"`` or ``"wedge"``
        side (str): ``"left"`` applies the phase as :math:`e^\xi\cdot D`, ``"right"`` as :math:`D\cdot e^\xi`

    Returns:
        Residuals: with ``p`` rotated into the slice of ``q``, and with ``p`` as given
    """
    return _both_cases(_composition, q, p, N, phase, side)


def projective_relation_residual(q, p, N=None, phase="commutator", side="left"):
    r"""Residual of :math:`D(q)D(p) = e^{2\xi}\cdot D(p)D(q)`; see :func:`composition_residual`."""
    return _both_cases(_projective, q, p, N, phase, side)


def covariance_residual(q, p, N=None, phase="commutator", side="left"):
    r"""Residual of :math:`D(q)D(p)D(q)^\dagger = e^{2\xi}\cdot D(p)`; see :func:`composition_residual`."""
    return _both_cases(_covariance, q, p, N, phase, side)


def shift_residual(x, N=None):
    r"""Residuals of :math:`D(x)^\dagger a D(x) = a + x\cdot\mathbb{I}` and
    :math:`D(x)^\dagger a^\dagger D(x) = a^\dagger + \bar x\cdot\mathbb{I}`.

    Returns:
        tuple[float]: ``(posA, posAdag)`` on the top :math:`N/2` block
    """
    x = as_quaternion(x)
    N = _sized(x, 0.0, N)
    D = build_D(x, N).matrix
    Dh = adjoint(D)
    a, ad = build_ladder(N)
    eye = identity(N)
    res_a = max_deviation(matmul(matmul(Dh, a), D), a + left_scalar_op(x, eye), block=_block(N))
    res_ad = max_deviation(matmul(matmul(Dh, ad), D), ad + left_scalar_op(x.conj(), eye), block=_block(N))
    return res_a, res_ad


def parity_conjugation_residual(x, N=None):
    r"""Residual of :math:`\Pi D(x)\Pi = D(-x)` over the full truncated space."""
    x = as_quaternion(x)
    N = _sized(x, 0.0, N)
    P = build_parity(N)
    lhs = matmul(matmul(P, build_D(x, N).matrix), P)
    return max_deviation(lhs, build_D(-x, N).matrix)


def slice_partials(q, h, N):
    r"""Central differences of :math:`D` along :math:`x` and :math:`y` within the slice of ``q``.

    Args:
        q (SlicePoint): base point :math:`x + I y`
        h (float): step
        N (int): truncation dimension

    Returns:
        tuple[QMatrix]: estimates of :math:`\partial_x D` and :math:`\partial_y D`
    """
    def D(dx, dy):
        return build_D(q.shifted(dx, dy), N).matrix.entries

    dx = (D(h, 0.0) - D(-h, 0.0)) / (2 * h)
    dy = (D(0.0, h) - D(0.0, -h)) / (2 * h)
    return QMatrix(dx), QMatrix(dy)


def _frobenius(M, block):
    return float(np.linalg.norm(M.entries[:block, :block]))


def slice_derivative_residual(q, h, N=64):
    r"""Finite difference residuals of the slice derivative identities.

    .. math::
        \tfrac12(\partial_x - \tau\partial_y)D = (a^\dagger - \tfrac12\bar q)D,\qquad
        \tfrac12(\partial_x + \tau\partial_y)D = -(a - \tfrac12 q)D,

    with the unit :math:`\tau = I_q` acting by left multiplication. Both residuals are
    Frobenius norms on the top :math:`N/2` block and decrease as :math:`h^2`.

    Args:
        q (SlicePoint): base point
        h (float): finite difference step
        N (int): truncation dimension

    Returns:
        tuple[float]: ``(res_i, res_ii)``
    """
    if h <= 0:
        raise ValueError("The finite difference step must be positive, got {}.".format(h))
    tau = q.axis.to_quaternion()
    point = q.recompose()
    D = build_D(point, N).matrix
    a, ad = build_ladder(N)
    dx, dy = slice_partials(q, h, N)
    tau_dy = left_scalar_op(tau, dy)

    lhs_i = QMatrix((dx.entries - tau_dy.entries) / 2)
    rhs_i = matmul(ad, D) - left_scalar_op(0.5 * point.conj(), D)
    lhs_ii = QMatrix((dx.entries + tau_dy.entries) / 2)
    rhs_ii = left_scalar_op(0.5 * point, D) - matmul(a, D)

    block = _block(N)
    return _frobenius(lhs_i - rhs_i, block), _frobenius(lhs_ii - rhs_ii, block)


# ===============================================================
# Grid integrals
# ===============================================================


def grid_work_dim(radius, N):
    """Working dimension for displacements up to ``radius`` of the first ``N`` basis vectors."""
    s = radius + np.sqrt(N)
    return int(np.ceil(s ** 2 + 8 * s + 32))


@functools.lru_cache(maxsize=16)
def _radial_blocks(spec, N):
    """Top ``N`` blocks of :math:`D_0(r)` at every radial node, shape ``(n_r, N, N)``."""
    radii, _ = _radial_rule(spec.radial_kind, spec.n_r)
    W = max(grid_work_dim(float(radii[-1]), N), N)
    gen = np.diag(np.sqrt(np.arange(1, W)), -1)
    gen = gen - gen.T
    return np.stack([matrixExp(r * gen)[:N, :N] for r in radii])


def displaced_vectors(eta, grid):
    r"""Coefficients of :math:`D(q)\eta` at every grid node.

    Args:
        eta (QVector): the vector, of dimension :math:`N`
        grid (QuadratureGrid): the quadrature grid

    Returns:
        array[float]: array of shape ``(len(grid), N, 4)`` in grid node order
    """
    N = eta.dim
    n_r, n_t, n_o = grid.shape
    D0 = _radial_blocks(grid.spec, N)

    k = np.arange(N)[:, None] - np.arange(N)[None, :]
    C = D0[:, None] * np.cos(k[None, None] * grid.thetas[None, :, None, None])
    S = D0[:, None] * np.sin(k[None, None] * grid.thetas[None, :, None, None])

    axes = np.zeros((n_o, 4))
    axes[:, 1:] = grid.axes
    zeta = qmul(axes[:, None, :], eta.coeffs[None])

    out = np.einsum("rtmn,nc->rtmc", C, eta.coeffs)[:, :, None]
    out = out + np.einsum("rtmn,onc->rtomc", S, zeta)
    return out.reshape(n_r * n_t * n_o, N, 4)


def admissibility_integral(eta, grid):
    r"""The integral :math:`I(\eta) = \int |\langle D(q)\eta|\eta\rangle|^2\, d\varsigma`.

    Args:
        eta (QVector): normalised vector
        grid (QuadratureGrid): a ``cs_measure`` grid

    Returns:
        float: the integral; :math:`I(e_0) = 1`
    """
    _require_kind(grid, CS_MEASURE)
    v = displaced_vectors(eta, grid)
    overlaps = np.sum(qmul(qconj(v), eta.coeffs[None]), axis=1)
    return float(np.sum(grid.weights * np.sum(overlaps ** 2, axis=1)))


def square_integrability_check(N, grid):
    r"""Largest deviation of :math:`\int |D(q)e_0\rangle\langle D(q)e_0|\, d\varsigma` from the identity.

    Args:
        N (int): size of the checked block
        grid (QuadratureGrid): a ``cs_measure`` grid

    Returns:
        float: the deviation on the top ``N`` block
    """
    _require_kind(grid, CS_MEASURE)
    v = displaced_vectors(QVector.basis(0, N), grid)
    return max_deviation(operator_integral(grid, v), identity(N))


def cyclic_span_rank(samples=200, N=16, block=None, seed=None, radii=(0.5, 2.0)):
    r"""Quaternionic rank of :math:`\{D(q_i)e_0\}` restricted to the top block.

    The vectors are embedded as :math:`2\,\mathrm{block}\times 2` complex matrices;
    the complex rank of their span is twice the quaternionic rank.

    Args:
        samples (int): number of random displacements
        N (int): truncation dimension
        block (int or None): size of the top block; ``N // 2`` if ``None``
        seed (int or numpy.random.Generator): randomness
        radii (tuple[float]): range of :math:`|q|`

    Returns:
        int: the rank, equal to ``block`` for a total family
    """
    block = _block(N) if block is None else block
    rng = make_rng(seed)
    columns = []
    for _ in range(samples):
        direction = sample_ball(rng, 1.0)
        q = direction / direction.norm() * rng.uniform(*radii)
        v = build_D(q, N).matrix.entries[:block, 0]
        columns.append(qembed(v).reshape(2 * block, 2))
    return int(np.linalg.matrix_rank(np.hstack(columns))) // 2
