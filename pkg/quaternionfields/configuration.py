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
Configuration
=============

**Module name:** :mod:`quaternionfields.configuration`

.. currentmodule:: quaternionfields.configuration

This module contains the :class:`Configuration` class, which is used to
load, store, save, and modify the experiment options of QuaternionFields.

Behaviour
---------

On creation, a :class:`Configuration` attempts to load the configuration file
``config.toml``, by scanning the following three directories in order of preference:

1. The current directory
2. The path stored in the environment variable ``QF_CONF``
3. The default user configuration directory:

   * On Linux: ``~/.config/quaternionfields``
   * On Windows: ``~C:\Users\USERNAME\AppData\Local\quaternionfields``
   * On MacOS: ``~/Library/Preferences/quaternionfields``

If no configuration file is found, an info message is logged and the defaults
in :data:`DEFAULT_CONFIG` are used. Any option can be overridden by an environment
variable ``QF_{SECTION}_{KEY}``, e.g. ``QF_EXPERIMENT_SEED=7``; the value is
converted to the type of the default.

Configuration files
-------------------

Files ending in ``.json`` are read as JSON, all others as
`TOML <https://github.com/toml-lang/toml>`_, with the following format:

.. code-block:: toml

    [experiment]
    suite = "all"
    seed = 42
    dim = 64

    [quadrature]
    n_r = 64

    [sampling]
    q_max = 1.0

Sections and keys not present in :data:`DEFAULT_CONFIG` are rejected.

Summary of methods
------------------

.. currentmodule:: quaternionfields.configuration.Configuration

.. autosummary::
    path
    load
    save

Code details
~~~~~~~~~~~~

.. currentmodule:: quaternionfields.configuration

"""
import copy
import json
import os
import logging as log

import toml
from appdirs import user_config_dir

log.getLogger()


DEFAULT_CONFIG = {
    "experiment": {
        "suite": "all",
        "seed": 42,
        "dim": 64,
        "epsilon": 1e-14,
        "out": "results",
        "parallel": False,
    },
    "quadrature": {
        "n_r": 64,
        "n_theta": 32,
        "n_phi": 4,
        "n_psi": 8,
        "n_check": 12,
        "moment_order": 10,
    },
    "sampling": {
        "q_max": 1.0,
        "q_max_global": 0.4,
        "q_max_pair": 0.5,
        "slice_samples": 200,
        "global_samples": 1000,
        "displacement_samples": 20,
        "pair_samples": 20,
        "admissibility_samples": 20,
        "derivative_samples": 50,
        "derivative_step": 1e-3,
        "span_samples": 200,
        "axiom_samples": 10000,
        "lie_pairs": 200,
    },
}

_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")


class ConfigurationError(Exception):
    """Exception used for configuration errors"""


def _coerce(default, value, name):
    """Converts ``value`` to the type of ``default``."""
    try:
        if isinstance(default, bool):
            if isinstance(value, bool):
                return value
            text = str(value).strip().lower()
            if text in _TRUE:
                return True
            if text in _FALSE:
                return False
            raise ValueError(value)
        if isinstance(default, int):
            number = float(value)
            if number != int(number) or isinstance(value, bool):
                raise ValueError(value)
            return int(number)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        return str(value)
    except (TypeError, ValueError, OverflowError):
        raise ConfigurationError(
            "Invalid value {!r} for option {}; expected {}.".format(value, name, type(default).__name__)
        )


class Configuration:
    """Configuration class.

    This class is responsible for loading, saving, and storing the
    QuaternionFields experiment configuration.

    Args:
        name (str): filename of the configuration file.
            This should be a valid TOML or JSON file. You may also pass an absolute
            or a relative file path to the configuration file.
    """

    def __str__(self):
        return "{}".format(self._config)

    def __repr__(self):
        return "QuaternionFields Configuration <{}>".format(self._filepath)

    def __init__(self, name="config.toml"):
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        self._config_file = {}
        self._filepath = None
        self._name = name
        self._user_config_dir = user_config_dir("quaternionfields")
        self._env_config_dir = os.environ.get("QF_CONF", "")

        # Search the current directory, the directory under environment
        # variable QF_CONF, and default user config directory, in that order.
        directories = [os.getcwd(), self._env_config_dir, self._user_config_dir]
        for directory in directories:
            filepath = os.path.join(directory, self._name)
            try:
                self.load(filepath)
            except FileNotFoundError:
                continue
            self._filepath = filepath
            log.info("Loaded QuaternionFields configuration file %s.", filepath)
            break
        else:
            log.info("No QuaternionFields configuration file found.")

        self.update_config()

    def update_config(self):
        """Updates the configuration from either a loaded configuration
        file, or from an environment variable.

        The environment variable takes precedence."""
        for section, section_config in self._config.items():
            env_prefix = "QF_{}_".format(section.upper())

            for key, default in section_config.items():
                env = env_prefix + key.upper()
                name = "{}.{}".format(section, key)

                if env in os.environ:
                    section_config[key] = _coerce(default, os.environ[env], name)
                elif key in self._config_file.get(section, {}):
                    section_config[key] = _coerce(default, self._config_file[section][key], name)

    def __getattr__(self, section):
        if section.startswith("_"):
            raise AttributeError(section)

        if section in self._config:
            return self._config[section]

        raise ConfigurationError("Unknown QuaternionFields configuration section.")

    @property
    def path(self):
        """Return the path of the loaded configuration file.

        Returns:
            str: If no configuration is loaded, this returns ``None``."""
        return self._filepath

    def load(self, filepath):
        """Load a configuration file.

        Args:
            filepath (str): path to the configuration file

        Returns:
            dict: the parsed file contents

        Raises:
            ConfigurationError: if the file cannot be parsed or holds unknown options
        """
        with open(filepath, "r") as f:
            try:
                if str(filepath).endswith(".json"):
                    contents = json.load(f)
                else:
                    contents = toml.load(f)
            except (ValueError, toml.TomlDecodeError) as e:
                raise ConfigurationError("Could not parse configuration file {}: {}".format(filepath, e))

        if not isinstance(contents, dict):
            raise ConfigurationError("Configuration file {} must hold a table of sections.".format(filepath))

        for section, options in contents.items():
            if section not in DEFAULT_CONFIG or not isinstance(options, dict):
                raise ConfigurationError("Unknown configuration section {!r}.".format(section))
            unknown = sorted(set(options) - set(DEFAULT_CONFIG[section]))
            if unknown:
                raise ConfigurationError(
                    "Unknown options in section {!r}: {}.".format(section, ", ".join(unknown))
                )

        self._config_file = contents
        return self._config_file

    def save(self, filepath):
        """Save a configuration file.

        Args:
            filepath (str): path to the configuration file
        """
        with open(filepath, "w") as f:
            toml.dump(self._config, f)
