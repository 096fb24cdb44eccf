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
Report I/O
==========

This module contains the :class:`ReportRecord` produced by the verification
suites and the functions writing them to ``report.csv``, ``report.json`` and
``summary.txt``.

All writers are deterministic: floats are written with 17 significant digits,
dictionaries with sorted keys, and lines end with ``\\n``.

Summary
-------

.. autosummary::
    ReportRecord
    summarize
    write_csv
    write_json
    write_summary
    write_reports

Code details
~~~~~~~~~~~~
"""
import csv
import json
import math
import os
from collections import OrderedDict
from dataclasses import dataclass, field

#: str: provenance of a gated check of a stated identity
IDENTITY = "identity"

#: str: provenance of a value reported without a pass gate
MEASUREMENT = "measurement"

CSV_COLUMNS = ["suite", "case_id", "identity", "provenance", "parameters", "measured", "threshold", "passed"]

REPORT_CSV = "report.csv"
REPORT_JSON = "report.json"
SUMMARY_TXT = "summary.txt"


def _fmt_float(x):
    if x is None:
        return ""
    return "%.17g" % x


def _plain(value):
    """Converts numpy scalars and arrays in ``value`` to builtin types."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "tolist"):
        return value.tolist()
    return value


@dataclass(frozen=True)
class ReportRecord:
    """Outcome of one check of a verification suite.

    Args:
        suite (str): suite name
        case_id (str): identifier, unique within the report
        identity (str): the identity or quantity being checked
        measured (float): the measured residual or value
        threshold (float or None): pass gate; ``None`` for measurements
        parameters (dict): inputs of the check
    """

    suite: str
    case_id: str
    identity: str
    measured: float
    threshold: float = None
    parameters: dict = field(default_factory=dict)

    @property
    def provenance(self):
        """str: ``"identity"`` for gated checks, ``"measurement"`` otherwise"""
        return MEASUREMENT if self.threshold is None else IDENTITY

    @property
    def passed(self):
        """bool or None: whether the measured value is finite and within the gate"""
        if self.threshold is None:
            return None
        return bool(math.isfinite(self.measured) and self.measured <= self.threshold)

    def parameters_json(self):
        """The parameters as compact JSON with sorted keys."""
        return json.dumps(_plain(self.parameters), sort_keys=True, separators=(",", ":"))

    def to_row(self):
        """The CSV row, in the order of :data:`CSV_COLUMNS`."""
        passed = "" if self.passed is None else str(self.passed).lower()
        return [
            self.suite,
            self.case_id,
            self.identity,
            self.provenance,
            self.parameters_json(),
            _fmt_float(self.measured),
            _fmt_float(self.threshold),
            passed,
        ]

    def to_dict(self):
        """Plain dictionary for JSON output."""
        return {
            "suite": self.suite,
            "case_id": self.case_id,
            "identity": self.identity,
            "provenance": self.provenance,
            "parameters": _plain(self.parameters),
            "measured": float(self.measured),
            "threshold": self.threshold,
            "passed": self.passed,
        }


def summarize(records):
    """Counts of passed, failed and measurement-only records per suite.

    Returns:
        OrderedDict[str, dict]: per suite counts, in order of first appearance
    """
    out = OrderedDict()
    for r in records:
        counts = out.setdefault(r.suite, {"passed": 0, "failed": 0, "measured": 0})
        if r.passed is None:
            counts["measured"] += 1
        elif r.passed:
            counts["passed"] += 1
        else:
            counts["failed"] += 1
    return out


def write_csv(path, records):
    """Writes the records to a CSV file."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow(r.to_row())


def write_json(path, records, config=None):
    """Writes the configuration, the records and the per suite counts to a JSON file."""
    payload = {
        "config": _plain(config or {}),
        "records": [r.to_dict() for r in records],
        "summary": summarize(records),
    }
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write(json.dumps(payload, sort_keys=True, indent=2))
        f.write("\n")


def write_summary(path, records):
    """Writes a short human readable summary, listing every failed case."""
    counts = summarize(records)
    failed = [r for r in records if r.passed is False]
    lines = []
    for suite, c in counts.items():
        lines.append(
            "{}: {} passed, {} failed, {} measured".format(suite, c["passed"], c["failed"], c["measured"])
        )
    lines.append("")
    lines.append("status: {}".format("FAIL" if failed else "PASS"))
    for r in failed:
        lines.append(
            "  {} {} measured={} threshold={}".format(
                r.case_id, r.identity, _fmt_float(r.measured), _fmt_float(r.threshold)
            )
        )
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def write_reports(out_dir, records, config=None):
    """Writes ``report.csv``, ``report.json`` and ``summary.txt`` into ``out_dir``.

    Returns:
        list[str]: the written paths
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = [os.path.join(out_dir, name) for name in (REPORT_CSV, REPORT_JSON, SUMMARY_TXT)]
    write_csv(paths[0], records)
    write_json(paths[1], records, config)
    write_summary(paths[2], records)
    return paths
