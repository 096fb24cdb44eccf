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
"""
Verification suites
===================

**Module name:** :mod:`quaternionfields.suites`

.. currentmodule:: quaternionfields.suites

Each suite turns a configuration into a list of :class:`Case` objects, whose
random parameters are drawn upfront from a generator seeded with the
configured seed and the suite index. Running a case yields one
:class:`~.ReportRecord` per check. Cases can run in a thread pool; the
records are sorted by case id, so reports do not depend on scheduling.

The configuration object only needs the attributes of
:class:`~.cli.ExperimentConfig`.

Summary
-------

.. autosummary::
    Case
    uncertainty
    resolution
    quantize
    liealg
    displacement
    run_case
    run_suites

Code details
~~~~~~~~~~~~
"""
import functools
import logging as log
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import coherent as cs
from . import displacement as dp
from . import liealg as la
from . import quantize as qz
from .fockops import build_harmonic, build_ladder, build_position
from .io import ReportRecord
from .qlinalg import identity, inner, left_scalar_op, max_deviation
from .quatcore import Quaternion, sample_ball, sample_sphere, slice_decompose

#: float: gate for identities that hold up to rounding
EXACT = 1e-12


@dataclass(frozen=True)
class Case:
    """A unit of work of a suite.

    Args:
        case_id (str): identifier prefix of the produced records
        parameters (dict): inputs, copied into every record
        run (callable): returns a list of ``(check, identity, measured, threshold)`` tuples
    """

    case_id: str
    parameters: dict
    run: Callable = field(repr=False, compare=False)


def _qlist(q):
    return Quaternion.tolist(q) if isinstance(q, Quaternion) else list(q)


def _cid(suite, group, index):
    return "{}-{}-{:04d}".format(suite, group, index)


@functools.lru_cache(maxsize=8)
def _grid(spec):
    return qz.QuadratureGrid(spec)


def _spec(config, kind=qz.CS_MEASURE, n_r=None):
    return qz.MeasureSpec(kind, n_r or config.n_r, config.n_theta, config.n_phi, config.n_psi)


# ===============================================================
# Uncertainty and coherent states
# ===============================================================


def _slice_checks(q, config):
    report = cs.uncertainty_slice(q, eps=config.epsilon)
    state = cs.build_cs(q, config.dim, config.epsilon)
    a, ad = build_ladder(config.dim)
    I_q = slice_decompose(q).axis
    c = cs.c_series(q, I_q)

    def mean(A):
        return cs.expectation(A, state)

    nq = q.norm()
    expected = [
        ("mean_a", mean(a), q),
        ("mean_adag", mean(ad), q.conj()),
        ("mean_adag_a", mean(ad @ a), nq ** 2),
        ("mean_a_adag", mean(a @ ad), 1 + nq ** 2),
        ("mean_a2", mean(a @ a), q * q),
        ("mean_adag2", mean(ad @ ad), q.conj() * q.conj()),
    ]
    checks = [
        ("eigenrelation", "a gamma_q = gamma_q q", state.eigen_residual(), 1e-10),
        ("saturation", "Delta Q Delta P = 1/2 along the slice axis", abs(np.sqrt(report.product) - 0.5), 1e-9),
        (
            "commutator",
            "|<[Q, P]>| / 2 = 1/2 along the slice axis",
            abs(report.commutator_mean.norm() / 2 - 0.5),
            1e-9,
        ),
        ("c_slice_axis", "c_I = I for I = I_q", (c - I_q.to_quaternion()).norm(), EXACT),
    ]
    checks += [(name, "coherent state expectation", (got - want).norm(), 1e-10) for name, got, want in expected]
    return checks


def _axis_expectation(report):
    state = cs.build_cs(report.q, report.dim)
    return cs.expectation(left_scalar_op(report.axis, identity(report.dim)), state)


def _global_checks(q, I):
    report = cs.uncertainty_global(q, I)
    c = report.c_I
    n2 = q.norm() ** 2
    return [
        ("variance_q", "var Q = 1/2", abs(report.varQ - 0.5), 1e-10),
        ("bound", "|var Q var P - 1/4| <= |q|^2", report.bound_residual - n2, EXACT),
        ("variance_p", "var P matches its closed form", abs(report.varP - cs.momentum_variance(q, I)), 1e-10),
        ("mean_p", "<P> matches its closed form", (report.meanP - cs.momentum_mean(q, I)).norm(), 1e-10),
        ("c_pure", "conj(c_I) = -c_I", (c.conj() + c).norm(), EXACT),
        ("c_expectation", "c_I = <gamma_q| I gamma_q>", (c - _axis_expectation(report)).norm(), EXACT),
        ("c_square", "|c_I|^2 = -c_I^2", (c * c + c.norm() ** 2).norm(), EXACT),
        ("c_bound", "|c_I| <= 1", c.norm() - 1.0, EXACT),
        ("product", "var Q var P", report.product, None),
    ]


def _limit_checks(direction, I, steps=8):
    radii = [0.4 / 2 ** k for k in range(steps)]
    residuals = [cs.uncertainty_global(direction * r, I).bound_residual for r in radii]
    excess = max(res - r ** 2 for res, r in zip(residuals, radii))
    violations = sum(b > a + 1e-15 for a, b in zip(residuals, residuals[1:]))
    return [
        ("below_bound", "|var Q var P - 1/4| < |q|^2 along a shrinking sequence", excess, EXACT),
        ("monotone", "the uncertainty residual decreases with |q|", float(violations), 0.0),
    ]


def uncertainty(config, rng):
    """Coherent state expectations and both uncertainty analyses."""
    cases = []
    for n in range(config.slice_samples):
        q = sample_ball(rng, config.q_max)
        cases.append(Case(_cid("uncertainty", "slice", n), {"q": _qlist(q), "N": config.dim},
                          functools.partial(_slice_checks, q, config)))

    for n in range(config.global_samples):
        q = sample_ball(rng, config.q_max_global)
        I = sample_sphere(rng)
        cases.append(Case(_cid("uncertainty", "global", n), {"q": _qlist(q), "I": I.vector.tolist()},
                          functools.partial(_global_checks, q, I)))

    direction = sample_ball(rng, 1.0)
    direction = direction / direction.norm()
    I = sample_sphere(rng)
    cases.append(Case(_cid("uncertainty", "limit", 0), {"direction": _qlist(direction), "I": I.vector.tolist()},
                      functools.partial(_limit_checks, direction, I)))
    return cases


# ===============================================================
# Quadrature and quantization
# ===============================================================


def _resolution_checks(config):
    cs_grid = _grid(_spec(config))
    bg_grid = _grid(_spec(config, qz.BARGMANN_MEASURE))
    N = config.n_check
    return [
        ("moments_cs", "cs measure moments equal m!", float(np.max(qz.moment_test(cs_grid, config.moment_order))), 1e-10),
        (
            "moments_bargmann",
            "Bargmann measure moments equal m!",
            float(np.max(qz.moment_test(bg_grid, config.moment_order))),
            1e-10,
        ),
        ("omega_weights", "the sphere measure is normalised", abs(float(np.sum(cs_grid.omega_weights)) - 1.0), EXACT),
        ("identity", "resolution of the identity", qz.resolution_check(N, cs_grid), 1e-8),
        ("bargmann_gram", "monomials are orthonormal", max_deviation(qz.bargmann_gram(N, bg_grid), identity(N)), 1e-8),
    ]


def resolution(config, rng):
    """Quadrature moments and the resolution of the identity."""
    params = {"n_r": config.n_r, "n_theta": config.n_theta, "n_phi": config.n_phi, "n_psi": config.n_psi,
              "N": config.n_check}
    return [Case(_cid("resolution", "grid", 0), params, functools.partial(_resolution_checks, config))]


def _position_symbol():
    def func(p):
        out = np.zeros_like(p)
        out[:, 0] = np.sqrt(2) * p[:, 0]
        return out

    return qz.SymbolFn("sqrt(2) Re q", func)


def _quantize_checks(config):
    grid = _grid(_spec(config))
    N = config.n_check
    a, ad = build_ladder(N)
    pairs = [
        ("one", qz.SymbolFn.constant(1.0), identity(N)),
        ("q", qz.SymbolFn.identity(), a),
        ("qbar", qz.SymbolFn.conjugate(), ad),
        ("norm_squared", qz.SymbolFn.norm_squared(), build_harmonic(N)),
        ("position", _position_symbol(), build_position(N)),
    ]
    return [
        (name, "A_f for f = {}".format(f.name), max_deviation(qz.quantize_symbol(f, N, grid), expected), 1e-8)
        for name, f, expected in pairs
    ]


def quantize(config, rng):
    """Coherent state quantization of the elementary symbols."""
    return [Case(_cid("quantize", "symbols", 0), {"N": config.n_check, "n_r": config.n_r},
                 functools.partial(_quantize_checks, config))]


# ===============================================================
# Lie algebras
# ===============================================================

_ALGEBRAS = ("sigma", "hat", "H", "direct_sum")


def _axiom_checks(name, count, seed):
    report = la.axiom_suite(name, count, seed)
    return [(axiom, "{} of the {} bracket".format(axiom, name), value, EXACT)
            for axiom, value in sorted(report.residuals.items())]


def _max_coord_gap(X, Y):
    return float(np.max(np.abs(X.coords - Y.coords)))


def _structure_checks(pairs_a, pairs_hat, pairs_h, N):
    hom = max(
        _max_coord_gap(la.embed_sigma(la.bracket_sigma(A, B)),
                       la.bracket_direct_sum(la.embed_sigma(A), la.embed_sigma(B)))
        for A, B in pairs_a
    )
    res_a = max(_max_coord_gap(la.bracket_H(A.to_h(), B.to_h()), la.bracket_sigma(A, B).to_h()) for A, B in pairs_a)
    res_hat = max(
        _max_coord_gap(la.bracket_H(A.to_h(), B.to_h()), la.bracket_hat(A, B).to_h()) for A, B in pairs_hat
    )
    few = slice(0, 20)
    oracle = max(la.bracket_oracle_residual(A, B, N) for pairs in (pairs_a, pairs_hat, pairs_h) for A, B in pairs[few])

    real = [(la.AlgElementH(A.x.real, A.y.real, A.z.real), la.AlgElementH(B.x.real, B.y.real, B.z.real))
            for A, B in pairs_h[few]]
    return [
        ("homomorphism", "sigma is a Lie algebra homomorphism", hom, EXACT),
        ("restriction_sigma", "the H bracket restricts to the sigma bracket", res_a, EXACT),
        ("restriction_hat", "the H bracket restricts to the hat bracket", res_hat, EXACT),
        ("matrix_oracle", "slice-wise matrix commutator equals the bracket", oracle, 1e-10),
        (
            "commutator_real",
            "matrix commutator equals the bracket for real coefficients",
            max(la.commutator_discrepancy(A, B, N) for A, B in real),
            1e-10,
        ),
        (
            "commutator_general",
            "matrix commutator minus the bracket",
            max(la.commutator_discrepancy(A, B, N) for A, B in pairs_h[few]),
            None,
        ),
    ]


def liealg(config, rng):
    """Lie algebra axioms, the direct sum embedding and the matrix realizations."""
    cases = []
    for n, name in enumerate(_ALGEBRAS):
        seed = int(rng.integers(2 ** 63))
        cases.append(Case(_cid("liealg", "axioms", n), {"algebra": name, "samples": config.axiom_samples, "seed": seed},
                          functools.partial(_axiom_checks, name, config.axiom_samples, seed)))

    def pairs(kind):
        return [(kind.random(rng), kind.random(rng)) for _ in range(config.lie_pairs)]

    pairs_a, pairs_hat, pairs_h = pairs(la.AlgElementA), pairs(la.AlgElementHat), pairs(la.AlgElementH)
    cases.append(Case(_cid("liealg", "structure", 0), {"pairs": config.lie_pairs, "N": 16},
                      functools.partial(_structure_checks, pairs_a, pairs_hat, pairs_h, 16)))
    return cases


# ===============================================================
# Displacement
# ===============================================================


def _single_checks(q, N, epsilon):
    D = dp.build_D(q, N)
    block = N // 2
    normal = dp.build_D_normal(q, N)
    antinormal = dp.build_D_antinormal(q, N)
    return [
        ("coherent_state", "D(q) e_0 = gamma_q", max_deviation(D.ground_state_image(), cs.build_cs(q, N, epsilon).vec), 1e-8),
        ("unitarity", "D(q) is unitary", D.unitarity_defect(), 1e-9),
        ("normal_order", "normal ordered form equals D(q)", max_deviation(normal, D.matrix, block), 1e-8),
        ("orderings", "normal and anti-normal forms agree", max_deviation(normal, antinormal, block), 1e-8),
        ("parity", "Pi D(q) Pi = D(-q)", dp.parity_conjugation_residual(q, N), 1e-9),
        ("generator", "the generator is anti-self-adjoint", max_deviation(D.generator.H, -D.generator), EXACT),
    ]


def _shift_checks(x, N):
    res_a, res_ad = dp.shift_residual(x, N)
    return [
        ("shift_a", "D(x)^+ a D(x) = a + x", res_a, 1e-7),
        ("shift_adag", "D(x)^+ a^+ D(x) = a^+ + conj(x)", res_ad, 1e-7),
    ]


def _pair_checks(q, p, N):
    checks = []
    families = [
        ("composition", "D(q)D(p) = e^xi D(q+p)", dp.composition_residual),
        ("projective", "D(q)D(p) = e^(2 xi) D(p)D(q)", dp.projective_relation_residual),
        ("covariance", "D(q)D(p)D(q)^+ = e^(2 xi) D(p)", dp.covariance_residual),
    ]
    for name, identity_, fn in families:
        res = fn(q, p, N)
        checks.append((name + "_slice", identity_ + " within a slice", res.slice_case, 1e-7))
        checks.append((name + "_general", identity_ + " across slices", res.general_case, None))
        wedge = fn(q, p, N, phase="wedge")
        checks.append((name + "_wedge_slice", identity_ + " with the wedge phase within a slice", wedge.slice_case, None))
        checks.append((name + "_wedge_general", identity_ + " with the wedge phase across slices", wedge.general_case, None))
        right = fn(q, p, N, side="right")
        checks.append((name + "_right_general", identity_ + " with the phase on the right", right.general_case, None))
    gap = (dp.commutator_phase(q, p).value - dp.wedge_phase(q, p).value).norm()
    checks.append(("phase_gap", "commutator phase minus wedge phase", gap, None))
    return checks


def _derivative_checks(q, h, N):
    coarse = dp.slice_derivative_residual(q, h, N)
    fine = dp.slice_derivative_residual(q, h / 2, N)
    ratios = [c / f for c, f in zip(coarse, fine)]
    return [
        ("order_holomorphic", "second order convergence of (d_x - I d_y) D / 2", abs(ratios[0] - 4.0), 0.5),
        ("order_antiholomorphic", "second order convergence of (d_x + I d_y) D / 2", abs(ratios[1] - 4.0), 0.5),
        ("residual_holomorphic", "finite difference residual at step h", coarse[0], None),
        ("residual_antiholomorphic", "finite difference residual at step h", coarse[1], None),
    ]


def _slice_integrand_residual(p, N):
    gamma = cs.build_cs(p, N).vec
    q = Quaternion(0.2) + 0.5 * slice_decompose(p).axis.to_quaternion()
    overlap = inner(dp.build_D(q, N).matrix @ gamma, gamma)
    return abs(overlap.norm() ** 2 - np.exp(-q.norm() ** 2))


def _admissibility_checks(p, N_eta, grid, gated):
    base = dp.admissibility_integral(cs.build_cs(0.0, N_eta).vec, grid)
    value = dp.admissibility_integral(cs.build_cs(p, N_eta).vec, grid)
    threshold = 1e-6 if gated else None
    return [
        ("invariance", "I(D(p) e_0) = I(e_0)", abs(value - base) / base, threshold),
        ("slice_integrand", "|<D(q) D(p) e_0|D(p) e_0>|^2 = exp(-|q|^2) for q in the slice of p",
         _slice_integrand_residual(p, N_eta), 1e-8),
        ("ground", "I(e_0) = 1", abs(base - 1.0), 1e-8),
    ]


def _global_displacement_checks(config, seed):
    grid = _grid(_spec(config))
    rank = dp.cyclic_span_rank(config.span_samples, 16, 8, seed)
    return [
        ("square_integrability", "resolution of the identity by D(q) e_0", dp.square_integrability_check(config.n_check, grid), 1e-8),
        ("cyclic_span", "D(q) e_0 span the top block", float(8 - rank), 0.0),
    ]


def displacement(config, rng):
    """Displacement operator identities."""
    N = config.dim
    cases = []
    for n in range(config.displacement_samples):
        q = sample_ball(rng, config.q_max)
        cases.append(Case(_cid("displacement", "single", n), {"q": _qlist(q), "N": N},
                          functools.partial(_single_checks, q, N, config.epsilon)))
        x = sample_ball(rng, config.q_max_pair)
        cases.append(Case(_cid("displacement", "shift", n), {"x": _qlist(x), "N": N},
                          functools.partial(_shift_checks, x, N)))

    for n in range(config.pair_samples):
        q, p = sample_ball(rng, config.q_max_pair), sample_ball(rng, config.q_max_pair)
        cases.append(Case(_cid("displacement", "pair", n), {"q": _qlist(q), "p": _qlist(p), "N": N},
                          functools.partial(_pair_checks, q, p, N)))

    for n in range(config.derivative_samples):
        point = slice_decompose(sample_ball(rng, config.q_max))
        params = {"q": _qlist(point.recompose()), "h": config.derivative_step, "N": N}
        cases.append(Case(_cid("displacement", "derivative", n), params,
                          functools.partial(_derivative_checks, point, config.derivative_step, N)))

    adm_grid = _grid(_spec(config, n_r=32))
    N_eta = 24
    for n in range(config.admissibility_samples):
        gated = n % 2 == 0
        p = Quaternion(rng.uniform(-1, 1)) if gated else sample_ball(rng, 1.0)
        cases.append(Case(_cid("displacement", "admissibility", n), {"p": _qlist(p), "N": N_eta},
                          functools.partial(_admissibility_checks, p, N_eta, adm_grid, gated)))

    seed = int(rng.integers(2 ** 63))
    cases.append(Case(_cid("displacement", "global", 0), {"N": config.n_check, "span_seed": seed},
                      functools.partial(_global_displacement_checks, config, seed)))
    return cases


# ===============================================================
# Running
# ===============================================================

#: OrderedDict[str, callable]: the suites, in the order ``"all"`` runs them
SUITES = OrderedDict(
    [
        ("uncertainty", uncertainty),
        ("resolution", resolution),
        ("quantize", quantize),
        ("liealg", liealg),
        ("displacement", displacement),
    ]
)


def run_case(suite, case):
    """Runs a case and wraps its checks into records."""
    return [
        ReportRecord(
            suite=suite,
            case_id="{}/{}".format(case.case_id, check),
            identity=identity_,
            measured=float(measured),
            threshold=None if threshold is None else float(threshold),
            parameters=case.parameters,
        )
        for check, identity_, measured, threshold in case.run()
    ]


def run_suites(config):
    """Runs the configured suites.

    Args:
        config (ExperimentConfig): the experiment configuration; ``config.suite`` is a
            suite name or ``"all"``

    Returns:
        list[ReportRecord]: records sorted by suite order, then case id
    """
    names = list(SUITES) if config.suite == "all" else [config.suite]
    records = []
    for name in names:
        index = list(SUITES).index(name)
        rng = np.random.default_rng([config.seed, index])
        cases = SUITES[name](config, rng)
        log.debug("Suite %s: %d cases.", name, len(cases))

        if config.parallel:
            with ThreadPoolExecutor() as pool:
                results = list(pool.map(functools.partial(run_case, name), cases))
        else:
            results = [run_case(name, case) for case in cases]

        suite_records = sorted((r for rs in results for r in rs), key=lambda r: r.case_id)
        failed = sum(r.passed is False for r in suite_records)
        measured = sum(r.passed is None for r in suite_records)
        log.info(
            "Suite %s: %d passed, %d failed, %d measured.",
            name,
            len(suite_records) - failed - measured,
            failed,
            measured,
        )
        records.extend(suite_records)
    return records
