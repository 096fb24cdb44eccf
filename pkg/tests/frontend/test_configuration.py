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
"""Unit tests for the configuration module"""
import copy
import json
import os
import logging
import pytest

import toml

from quaternionfields import configuration as conf

pytestmark = pytest.mark.frontend
logging.getLogger().setLevel(1)


TEST_FILE = """\
[experiment]
# Options of the verification run
suite = "displacement"
seed = 7
dim = 48

[sampling]
q_max_pair = 0.25
"""

EXPECTED_CONFIG = copy.deepcopy(conf.DEFAULT_CONFIG)
EXPECTED_CONFIG["experiment"].update(suite="displacement", seed=7, dim=48)
EXPECTED_CONFIG["sampling"]["q_max_pair"] = 0.25


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmpdir):
    """Removes QuaternionFields variables and points the user directory at an empty folder."""
    for key in list(os.environ):
        if key.startswith("QF_"):
            monkeypatch.delenv(key)
    monkeypatch.setattr(conf, "user_config_dir", lambda name: str(tmpdir.join("user")))


class TestConfiguration:
    """Tests for the configuration class"""

    def test_loading_current_directory(self, tmpdir, monkeypatch):
        """Test that the default configuration file can be loaded
        from the current directory."""
        filename = tmpdir.join("config.toml")

        with open(filename, "w") as f:
            f.write(TEST_FILE)

        with monkeypatch.context() as m:
            m.setattr(os, "getcwd", lambda: str(tmpdir))
            config = conf.Configuration()

        assert config._config == EXPECTED_CONFIG
        assert config.path == filename

    def test_loading_env_variable(self, tmpdir, monkeypatch):
        """Test that the default configuration file can be loaded
        via an environment variable."""
        filename = tmpdir.join("config.toml")

        with open(filename, "w") as f:
            f.write(TEST_FILE)

        monkeypatch.setenv("QF_CONF", str(tmpdir))
        monkeypatch.setattr(os, "getcwd", lambda: str(tmpdir.join("elsewhere")))
        config = conf.Configuration()

        assert config._config == EXPECTED_CONFIG
        assert config.path == filename

    def test_loading_absolute_path(self, tmpdir):
        """Test that the default configuration file can be loaded
        via an absolute path."""
        filename = os.path.abspath(tmpdir.join("config.toml"))

        with open(filename, "w") as f:
            f.write(TEST_FILE)

        config = conf.Configuration(name=str(filename))

        assert config._config == EXPECTED_CONFIG
        assert config.path == filename

    def test_loading_json(self, tmpdir):
        """JSON files are recognised by their extension."""
        filename = str(tmpdir.join("config.json"))

        with open(filename, "w") as f:
            json.dump({"experiment": {"suite": "displacement", "seed": 7, "dim": 48},
                       "sampling": {"q_max_pair": 0.25}}, f)

        config = conf.Configuration(name=filename)
        assert config._config == EXPECTED_CONFIG

    def test_not_found_warning(self, caplog):
        """Test that a message is logged if no configuration file found."""

        config = conf.Configuration(name="noconfig")
        assert "No QuaternionFields configuration file found." in caplog.text
        assert config.path is None
        assert config._config == conf.DEFAULT_CONFIG

    def test_save(self, tmpdir):
        """Test saving a configuration file."""
        filename = str(tmpdir.join("test_config.toml"))
        config = conf.Configuration(name="noconfig")

        # make a change
        config._config["experiment"]["out"] = "elsewhere"
        config.save(filename)

        result = toml.load(filename)
        assert config._config == result

    def test_attribute_loading(self):
        """Test attributes automatically get the correct section key"""
        config = conf.Configuration(name="noconfig")
        assert config.experiment == config._config["experiment"]
        assert config.quadrature["n_r"] == 64

    def test_failed_attribute_loading(self):
        """Test an exception is raised if key does not exist"""
        config = conf.Configuration(name="noconfig")
        with pytest.raises(
            conf.ConfigurationError, match="Unknown QuaternionFields configuration section"
        ):
            config.test

    def test_env_vars_take_precedence(self, tmpdir, monkeypatch):
        """Test that if a configuration file and an environment
        variable is set, that the environment variable takes
        precedence."""
        filename = tmpdir.join("config.toml")

        with open(filename, "w") as f:
            f.write(TEST_FILE)

        monkeypatch.setenv("QF_EXPERIMENT_SEED", "11")
        monkeypatch.setenv("QF_EXPERIMENT_PARALLEL", "yes")
        config = conf.Configuration(str(filename))

        assert config.experiment["seed"] == 11
        assert config.experiment["parallel"] is True
        assert config.experiment["dim"] == 48


class TestValidation:
    """Tests for rejected configuration files and values"""

    def write(self, tmpdir, text, name="config.toml"):
        filename = str(tmpdir.join(name))
        with open(filename, "w") as f:
            f.write(text)
        return filename

    def test_unknown_section(self, tmpdir):
        """Sections outside the defaults are rejected."""
        filename = self.write(tmpdir, "[api]\nhostname = 'localhost'\n")
        with pytest.raises(conf.ConfigurationError, match="Unknown configuration section 'api'"):
            conf.Configuration(filename)

    def test_unknown_options(self, tmpdir):
        """Unknown keys are listed in the error."""
        filename = self.write(tmpdir, "[experiment]\nzeta = 1\nalpha = 2\n")
        with pytest.raises(conf.ConfigurationError, match="Unknown options in section 'experiment': alpha, zeta"):
            conf.Configuration(filename)

    def test_unparsable(self, tmpdir):
        """Malformed files are reported."""
        filename = self.write(tmpdir, "[experiment\n")
        with pytest.raises(conf.ConfigurationError, match="Could not parse configuration file"):
            conf.Configuration(filename)

    def test_not_a_table(self, tmpdir):
        """A JSON file must hold an object."""
        filename = self.write(tmpdir, "[1, 2]", name="config.json")
        with pytest.raises(conf.ConfigurationError, match="must hold a table of sections"):
            conf.Configuration(filename)

    @pytest.mark.parametrize(
        "key, value",
        [("QF_EXPERIMENT_SEED", "seven"), ("QF_EXPERIMENT_SEED", "1.5"), ("QF_EXPERIMENT_PARALLEL", "maybe"),
         ("QF_SAMPLING_Q_MAX", "big")],
    )
    def test_bad_environment_values(self, key, value, monkeypatch):
        """Environment values that do not convert to the type of the default are rejected."""
        monkeypatch.setenv(key, value)
        with pytest.raises(conf.ConfigurationError, match="Invalid value"):
            conf.Configuration(name="noconfig")

    def test_integer_valued_floats(self, tmpdir):
        """Integral floats are accepted for integer options."""
        filename = self.write(tmpdir, "[experiment]\ndim = 32.0\n")
        assert conf.Configuration(filename).experiment["dim"] == 32
