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
Default parameters, environment variables, fixtures, and common routines for the unit tests.
"""
# pylint: disable=redefined-outer-name
import os

import numpy as np
import pytest


# defaults
TOL = 1e-12
SEED = 42
DIM = 64


@pytest.fixture(scope="session")
def tol():
    """Numerical tolerance for equality tests."""
    return float(os.environ.get("TOL", TOL))


@pytest.fixture(scope="session")
def seed():
    """Seed of the random generators"""
    return int(os.environ.get("SEED", SEED))


@pytest.fixture
def rng(seed):
    """A freshly seeded numpy random generator"""
    return np.random.default_rng(seed)


@pytest.fixture(scope="session")
def dim():
    """Truncation dimension of the Fock space"""
    return int(os.environ.get("DIM", DIM))
