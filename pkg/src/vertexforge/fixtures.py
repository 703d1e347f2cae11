"""Fixture files of named amplitudes, one ``name = expression`` per line.

Recognised names::

    W1[mu]            one-partition amplitude
    W2[mu/nu]         two-partition amplitude
    W[mu1/mu2/mu3]    three-partition amplitude
    Wtilde[mu1/mu2/mu3]

Partitions use the comma form (``2,1``); an empty slot means the empty partition.
Comparison is by field equality of canonical forms, never by string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .exact import ExactScalar, ParseError, parse_q_expression
from .partitions import Partition, PartitionTriple
from .vertex import w_one, w_three, w_tilde, w_two

_NAME = re.compile(r"^\s*(Wtilde|W|W1|W2)\[([^\]]*)\]\s*$")


@dataclass(frozen=True)
class FixtureResult:
    line: int
    name: str
    status: str  # "pass", "fail" or "error"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def __str__(self) -> str:
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{self.status.upper():5} line {self.line}: {self.name}{extra}"


def evaluate_name(name: str) -> ExactScalar:
    """Compute the amplitude a fixture name refers to."""
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"unrecognised fixture name {name!r}")
    kind, args = m.groups()
    slots = args.split("/")
    expected = {"W1": 1, "W2": 2, "W": 3, "Wtilde": 3}[kind]
    if len(slots) != expected:
        raise ValueError(f"{kind} takes {expected} partition(s), got {len(slots)}")
    parts = [Partition.parse(s) for s in slots]
    if kind == "W1":
        return w_one(parts[0])
    if kind == "W2":
        return w_two(*parts)
    compute: Callable[[PartitionTriple], ExactScalar] = w_three if kind == "W" else w_tilde
    return compute(PartitionTriple(*parts))


def run_fixture_text(text: str) -> list[FixtureResult]:
    results = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            results.append(FixtureResult(lineno, line, "error", "expected 'name = expression'"))
            continue
        name, expr = (s.strip() for s in line.split("=", 1))
        try:
            expected = parse_q_expression(expr)
        except ParseError as exc:
            results.append(FixtureResult(lineno, name, "error", f"parse error: {exc}"))
            continue
        try:
            got = evaluate_name(name)
        except ValueError as exc:
            results.append(FixtureResult(lineno, name, "error", str(exc)))
            continue
        if got == expected:
            results.append(FixtureResult(lineno, name, "pass"))
        else:
            results.append(FixtureResult(lineno, name, "fail", f"computed {got}"))
    return results


def run_fixture_suite(path: str | Path) -> list[FixtureResult]:
    """Check every line of a fixture file; unparsable lines become error entries."""
    return run_fixture_text(Path(path).read_text(encoding="utf-8"))


def builtin_fixture_path(name: str = "lowdegree.fixtures") -> Path:
    return Path(str(resources.files("vertexforge") / "data" / name))
