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
r"""Unit tests for coherent states and the uncertainty analysis in coherent.py"""
import logging
import math

import pytest

import numpy as np

from quaternionfields import coherent as cs
from quaternionfields import qlinalg as ql
from quaternionfields.fockops import build_number
from quaternionfields.quatcore import AXIS_I, AXIS_K, Quaternion, sample_ball, sample_sphere


pytestmark = pytest.mark.fock


class TestTruncation:
    """Tail bounds and dimension selection."""

    def test_vacuum(self):
        """The vacuum needs a single level."""
        assert cs.required_dim(Quaternion()) == 1
        state = cs.build_cs(Quaternion())
        assert state.dim == 2
        assert state.vec[0] == Quaternion(1.0)

    def test_required_dim_is_minimal(self):
        """The tail bound is below epsilon at the required dimension and not one below it."""
        q = Quaternion(0.5, 0.3, -0.2, 0.1)
        N = cs.required_dim(q, 1e-14)
        assert cs.tail_bound(q, N) < 1e-14
        assert cs.tail_bound(q, N - 1) >= 1e-14

    def test_too_coarse(self):
        """Small dimensions are rejected with the required dimension attached."""
        q = Quaternion(2.0, 0.0, 1.0, 0.0)
        with pytest.raises(cs.TruncationTooCoarse, match="is required") as e:
            cs.build_cs(q, N=5)
        assert e.value.required_dim == cs.required_dim(q)

    def test_norm_deficit_matches_tail(self):
        """1 - |gamma|^2 agrees with the tail bound."""
        state = cs.build_cs(Quaternion(0.5, 0.5, 0.5, 0.5), N=6, eps=1e-2)
        assert state.norm_deficit() == pytest.approx(state.tail_bound, rel=1e-8, abs=1e-15)


class TestCoherentState:
    """Coefficients and the eigenvalue relation."""

    def test_coefficients(self):
        """gamma_m = e^{-|q|^2/2} q^m / sqrt(m!)"""
        q = Quaternion(0.3, -0.2, 0.5, 0.1)
        state = cs.build_cs(q, N=10, eps=1e-4)
        for m in (0, 1, 4, 9):
            expected = np.exp(-q.norm() ** 2 / 2) * q ** m / np.sqrt(math.factorial(m))
            assert state.vec[m].isclose(expected, atol=1e-15)

    def test_right_eigenvector(self, rng):
        """a gamma_q = gamma_q q up to the truncation error."""
        for _ in range(10):
            state = cs.build_cs(sample_ball(rng, 1.0))
            assert state.eigen_residual() <= 1e-6

    def test_normalised(self, rng):
        """Coherent states are normalised to within epsilon."""
        state = cs.build_cs(sample_ball(rng, 1.0))
        assert abs(state.vec.norm() - 1) <= 1e-13

    def test_number_expectation(self, rng):
        """<gamma_q|N|gamma_q> = |q|^2"""
        q = sample_ball(rng, 1.0)
        state = cs.build_cs(q)
        mean = cs.expectation(build_number(state.dim), state)
        assert mean.isclose(Quaternion(q.norm() ** 2), atol=1e-12)

    def test_unnormalised_warning(self, caplog):
        """Expectations in unnormalised states log a warning."""
        state = cs.build_cs(Quaternion(0.2))
        with caplog.at_level(logging.WARNING):
            cs.expectation(build_number(state.dim), state.vec * 2.0)
        assert "unnormalised" in caplog.text


class TestCSeries:
    """The series c_I and the closed form momentum moments."""

    def test_real_label(self):
        """For real q the series is I."""
        assert cs.c_series(Quaternion(0.7), AXIS_K).isclose(AXIS_K.to_quaternion(), atol=1e-15)

    def test_slice_label(self):
        """For q in the slice of I the series is I."""
        q = Quaternion(0.4, 0.6, 0.0, 0.0)
        assert cs.c_series(q, AXIS_I).isclose(AXIS_I.to_quaternion(), atol=1e-14)

    def test_pure_and_bounded(self, rng):
        """c_I is purely imaginary with modulus at most one."""
        for _ in range(20):
            c = cs.c_series(sample_ball(rng, 1.0), sample_sphere(rng))
            assert abs(c.real) <= 1e-14
            assert (c.conj() + c).norm() <= 1e-14
            assert (c * c + c.norm() ** 2).norm() <= 1e-14
            assert c.norm() <= 1 + 1e-14

    def test_equals_axis_expectation(self, rng):
        """c_I is the expectation of the left action of I in the coherent state."""
        for _ in range(10):
            q, axis = sample_ball(rng, 1.0), sample_sphere(rng)
            state = cs.build_cs(q, 48)
            A = ql.left_scalar_op(axis.to_quaternion(), ql.identity(48))
            assert cs.c_series(q, axis).isclose(cs.expectation(A, state), atol=1e-12)

    def test_keeps_real_part(self, monkeypatch):
        """The computed real part is returned, not discarded."""
        monkeypatch.setattr(cs, "qmul", lambda p, q: p * 0.0 + np.array([1.0, 0.0, 0.0, 0.0]))
        c = cs.c_series(Quaternion(0.5, 0.5, 0.0, 0.0), AXIS_K)
        assert c.real > 0.0

    def test_closed_forms_match_operators(self, rng):
        """The closed form momentum mean and variance agree with the matrix computation."""
        for _ in range(5):
            q = sample_ball(rng, 0.4)
            axis = sample_sphere(rng)
            report = cs.uncertainty_global(q, axis)
            assert report.meanP.real == pytest.approx(cs.momentum_mean(q, axis), abs=1e-10)
            assert report.varP == pytest.approx(cs.momentum_variance(q, axis), abs=1e-10)


class TestUncertainty:
    """Uncertainty relations of position and momentum."""

    def test_slice_saturates(self, rng):
        """With the momentum along the slice axis the product is 1/4."""
        for _ in range(10):
            report = cs.uncertainty_slice(sample_ball(rng, 1.0))
            assert report.varQ == pytest.approx(0.5, abs=1e-10)
            assert report.product == pytest.approx(0.25, abs=1e-10)
            assert not report.degenerate

    def test_slice_means(self):
        """<Q> = sqrt(2) x and <P_I> = sqrt(2) y on the slice of q = x + I y."""
        q = Quaternion(0.3, 0.0, 0.4, 0.0)
        report = cs.uncertainty_slice(q)
        assert report.meanQ.isclose(Quaternion(np.sqrt(2) * 0.3), atol=1e-12)
        assert report.meanP.isclose(Quaternion(np.sqrt(2) * 0.4), atol=1e-12)

    def test_commutator_mean(self, rng):
        """<[Q, P_I]> = I"""
        axis = sample_sphere(rng)
        report = cs.uncertainty_global(sample_ball(rng, 0.4), axis)
        assert report.commutator_mean.isclose(axis.to_quaternion(), atol=1e-12)

    def test_real_label_is_degenerate(self):
        """Real labels use the canonical axis."""
        report = cs.uncertainty_slice(Quaternion(0.5))
        assert report.degenerate
        assert report.axis == AXIS_I.to_quaternion()

    def test_global_bound(self, rng):
        """|Var Q Var P_I - 1/4| <= |q|^2 for every axis."""
        for _ in range(10):
            report = cs.uncertainty_global(sample_ball(rng, 0.4), sample_sphere(rng))
            assert report.bound_residual <= report.bound + 1e-12

    def test_to_dict(self):
        """Quaternion fields serialize as component lists."""
        d = cs.uncertainty_slice(Quaternion(0.1, 0.2, 0, 0)).to_dict()
        assert d["q"] == [0.1, 0.2, 0.0, 0.0]
        assert isinstance(d["product"], float)
