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
.. _code:

Overview
==================

QuaternionFields realizes the quaternionic quantum harmonic oscillator on a
truncated Fock basis and checks its identities numerically.

Software components
-------------------

**Algebra:**

* Quaternions and the slice decomposition: :mod:`quaternionfields.quatcore`
* Quaternionic vectors and matrices: :mod:`quaternionfields.qlinalg`
* Lie algebras and brackets: :mod:`quaternionfields.liealg`

**Oscillator:**

* Ladder, position and momentum operators: :mod:`quaternionfields.fockops`
* Coherent states and uncertainty: :mod:`quaternionfields.coherent`
* Quadrature grids and quantization: :mod:`quaternionfields.quantize`
* Displacement operator: :mod:`quaternionfields.displacement`

**Runner:**

* Configuration: :mod:`quaternionfields.configuration`
* Verification suites: :mod:`quaternionfields.suites`
* Reports: :mod:`quaternionfields.io`
* Command line: :mod:`quaternionfields.cli`

Top-level functions
-------------------

.. currentmodule: quaternionfields

.. autosummary::
   about
   version

Code details
~~~~~~~~~~~~
"""
from ._version import __version__
from .quatcore import Quaternion, UnitImaginary, slice_decompose
from .qlinalg import QMatrix, QVector
from .coherent import build_cs
from .displacement import build_D

__all__ = [
    "Quaternion",
    "UnitImaginary",
    "QVector",
    "QMatrix",
    "slice_decompose",
    "build_cs",
    "build_D",
    "version",
    "about",
]


def version():
    r"""
    Version number of QuaternionFields.

    Returns:
      str: package version number
    """
    return __version__


def about():
    """About box for QuaternionFields.

    Prints the installed version numbers for QuaternionFields and its dependencies,
    and some system info. Please include this information in bug reports.
    """
    import sys
    import platform
    import os
    import numpy
    import scipy

    print("\nQuaternionFields: quaternionic harmonic oscillators on a truncated Fock space.")
    print("Copyright 2019 Xanadu Quantum Technologies Inc.\n")

    print("Python version:            {}.{}.{}".format(*sys.version_info[0:3]))
    print("Platform info:             {}".format(platform.platform()))
    print("Installation path:         {}".format(os.path.dirname(__file__)))
    print("QuaternionFields version:  {}".format(__version__))
    print("Numpy version:             {}".format(numpy.__version__))
    print("Scipy version:             {}".format(scipy.__version__))
