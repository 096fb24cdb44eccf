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
Command line interface
======================

**Module name:** :mod:`quaternionfields.cli`

.. currentmodule:: quaternionfields.cli

Batch runner for the verification suites.

.. code-block:: console

    $ quaternionfields --suite displacement --seed 7 --out results

Options are read from the configuration (see :mod:`~.configuration`) and
overridden by the command line flags. The runner writes ``report.csv``,
``report.json`` and ``summary.txt`` into the output directory and exits with

* ``0`` if every gated check passed,
* ``2`` if a gated check failed,
* ``1`` on configuration, input/output or runtime errors.

Summary
-------

.. autosummary::
    ExperimentConfig
    parse_args
    run
    main

Code details
~~~~~~~~~~~~
"""
import argparse
import logging as log
import sys
from dataclasses import asdict, dataclass

from .configuration import DEFAULT_CONFIG, Configuration, ConfigurationError
from .io import ReportRecord, write_reports
from .suites import SUITES, run_suites

__all__ = ["ExperimentConfig", "ReportRecord", "parse_args", "run", "main"]

#: tuple[str]: accepted suite names
SUITE_NAMES = tuple(SUITES) + ("all",)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated options of one run; one field per configuration key."""

    suite: str = DEFAULT_CONFIG["experiment"]["suite"]
    seed: int = DEFAULT_CONFIG["experiment"]["seed"]
    dim: int = DEFAULT_CONFIG["experiment"]["dim"]
    epsilon: float = DEFAULT_CONFIG["experiment"]["epsilon"]
    out: str = DEFAULT_CONFIG["experiment"]["out"]
    parallel: bool = DEFAULT_CONFIG["experiment"]["parallel"]

    n_r: int = DEFAULT_CONFIG["quadrature"]["n_r"]
    n_theta: int = DEFAULT_CONFIG["quadrature"]["n_theta"]
    n_phi: int = DEFAULT_CONFIG["quadrature"]["n_phi"]
    n_psi: int = DEFAULT_CONFIG["quadrature"]["n_psi"]
    n_check: int = DEFAULT_CONFIG["quadrature"]["n_check"]
    moment_order: int = DEFAULT_CONFIG["quadrature"]["moment_order"]

    q_max: float = DEFAULT_CONFIG["sampling"]["q_max"]
    q_max_global: float = DEFAULT_CONFIG["sampling"]["q_max_global"]
    q_max_pair: float = DEFAULT_CONFIG["sampling"]["q_max_pair"]
    slice_samples: int = DEFAULT_CONFIG["sampling"]["slice_samples"]
    global_samples: int = DEFAULT_CONFIG["sampling"]["global_samples"]
    displacement_samples: int = DEFAULT_CONFIG["sampling"]["displacement_samples"]
    pair_samples: int = DEFAULT_CONFIG["sampling"]["pair_samples"]
    admissibility_samples: int = DEFAULT_CONFIG["sampling"]["admissibility_samples"]
    derivative_samples: int = DEFAULT_CONFIG["sampling"]["derivative_samples"]
    derivative_step: float = DEFAULT_CONFIG["sampling"]["derivative_step"]
    span_samples: int = DEFAULT_CONFIG["sampling"]["span_samples"]
    axiom_samples: int = DEFAULT_CONFIG["sampling"]["axiom_samples"]
    lie_pairs: int = DEFAULT_CONFIG["sampling"]["lie_pairs"]

    def __post_init__(self):
        if self.suite not in SUITE_NAMES:
            raise ConfigurationError(
                "Unknown suite {!r}; expected one of {}.".format(self.suite, ", ".join(SUITE_NAMES))
            )
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError("The seed must be an unsigned 64 bit integer, got {}.".format(self.seed))
        if self.dim < 4:
            raise ConfigurationError("The truncation dimension must be at least 4, got {}.".format(self.dim))
        if not 0 < self.epsilon < 1:
            raise ConfigurationError("epsilon must lie in (0, 1), got {}.".format(self.epsilon))

        counts = (
            "n_r n_theta n_phi n_psi n_check slice_samples global_samples displacement_samples "
            "pair_samples admissibility_samples derivative_samples span_samples axiom_samples lie_pairs"
        ).split()
        for name in counts:
            if getattr(self, name) < 1:
                raise ConfigurationError("{} must be positive, got {}.".format(name, getattr(self, name)))
        for name in ("moment_order",):
            if getattr(self, name) < 0:
                raise ConfigurationError("{} must be non-negative, got {}.".format(name, getattr(self, name)))
        for name in ("q_max", "q_max_global", "q_max_pair", "derivative_step"):
            if not getattr(self, name) > 0:
                raise ConfigurationError("{} must be positive, got {}.".format(name, getattr(self, name)))

    @classmethod
    def from_configuration(cls, config, **overrides):
        """Flattens a :class:`~.Configuration` and applies the non-``None`` overrides."""
        values = {}
        for section in DEFAULT_CONFIG:
            values.update(getattr(config, section))
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self):
        """Plain dictionary of all options."""
        return asdict(self)


def parse_args(argv=None):
    """Parse the command line arguments.

    Args:
        argv (list[str] or None): arguments; ``sys.argv[1:]`` if ``None``

    Returns:
        argparse.Namespace: the parsed arguments
    """
    parser = argparse.ArgumentParser(
        prog="quaternionfields", description="Run the quaternionic oscillator verification suites."
    )
    parser.add_argument("--config", default=None, help="path to a TOML or JSON configuration file")
    parser.add_argument("--suite", choices=SUITE_NAMES, default=None, help="suite to run (default: all)")
    parser.add_argument("--seed", type=int, default=None, help="unsigned 64 bit seed")
    parser.add_argument("--dim", type=int, default=None, help="truncation dimension N")
    parser.add_argument("--out", default=None, help="output directory for the reports")
    parser.add_argument(
        "--parallel", action="store_true", default=None, help="run the cases of each suite in a thread pool"
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="log debug messages")
    return parser.parse_args(argv)


def load_config(args):
    """Builds the :class:`ExperimentConfig` of a run from the parsed arguments.

    Raises:
        ConfigurationError: if the configuration file is missing or invalid
    """
    if args.config is not None:
        config = Configuration(args.config)
        if config.path is None:
            raise ConfigurationError("Configuration file {} not found.".format(args.config))
    else:
        config = Configuration()

    return ExperimentConfig.from_configuration(
        config, suite=args.suite, seed=args.seed, dim=args.dim, out=args.out, parallel=args.parallel
    )


def run(config):
    """Runs the configured suites and writes the reports.

    Args:
        config (ExperimentConfig): the experiment

    Returns:
        int: the exit code, ``0`` if every gated check passed and ``2`` otherwise
    """
    records = run_suites(config)
    paths = write_reports(config.out, records, config.to_dict())
    for path in paths:
        log.info("Wrote %s.", path)

    failed = [r for r in records if r.passed is False]
    return EXIT_FAILED if failed else EXIT_OK


def main(argv=None):
    """Entry point of the ``quaternionfields`` command."""
    args = parse_args(argv)
    log.basicConfig(
        level=log.DEBUG if args.verbose else log.INFO, format="%(levelname)s: %(message)s"
    )

    try:
        config = load_config(args)
        code = run(config)
    except (ConfigurationError, OSError) as e:
        print("error: {}".format(e), file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:  # pylint: disable=broad-except
        print("error: {}: {}".format(type(e).__name__, e), file=sys.stderr)
        return EXIT_ERROR

    print("{}: see {}".format("PASS" if code == EXIT_OK else "FAIL", config.out))
    return code


if __name__ == "__main__":
    sys.exit(main())
