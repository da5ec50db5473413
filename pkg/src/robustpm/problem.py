"""Problem files: parsing, validation, serialization and bundled fixtures.

A problem describes the family ``M(s) = B(s) A(s) + D(s) C(s)`` with fixed
``A``, ``C`` and interval ``B``, ``D``. Every coefficient of a ``B``/``D`` entry
is one of

* a number (a point interval),
* ``[lo, hi]``,
* ``{"center": c, "scale": w}`` meaning ``[c - w*eps, c + w*eps]``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

from .errors import MalformedInputError
from .kharitonov import IntervalPolynomial
from .polymatrix import IntervalPolynomialMatrix, PolynomialMatrix

SCHEMA_VERSION = 1
FIXTURES = {
    "manipulator": "manipulator.json",
    "manipulator_theta0": "manipulator_theta0.json",
}


@dataclass(frozen=True)
class EpsCoefficient:
    center: float
    scale: float

    def bounds(self, eps: float) -> tuple:
        return (self.center - self.scale * eps, self.center + self.scale * eps)


@dataclass(frozen=True)
class Problem:
    """An instantiated family (no templates left)."""

    A: PolynomialMatrix
    B: IntervalPolynomialMatrix
    C: PolynomialMatrix
    D: IntervalPolynomialMatrix
    name: str = "problem"
    eps: Optional[float] = None

    @property
    def n(self) -> int:
        return self.A.n


@dataclass
class ProblemSpec:
    n: int
    A: PolynomialMatrix
    C: PolynomialMatrix
    B: list  # n x n x coefficients (float | (lo, hi) | EpsCoefficient)
    D: list
    name: str = "problem"
    eps: float = 0.0
    checks: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)

    @property
    def has_template(self) -> bool:
        return any(isinstance(c, EpsCoefficient) for m in (self.B, self.D) for r in m for e in r for c in e)

    def instantiate(self, eps: Optional[float] = None) -> Problem:
        e = self.eps if eps is None else float(eps)
        if e < 0 or not math.isfinite(e):
            raise MalformedInputError(f"eps must be a finite non-negative number, got {e}")
        return Problem(
            self.A,
            _instantiate(self.B, e, "B"),
            self.C,
            _instantiate(self.D, e, "D"),
            self.name,
            e if self.has_template else None,
        )

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "n": self.n,
            "A": self.A.to_json(),
            "C": self.C.to_json(),
            "B": _template_json(self.B),
            "D": _template_json(self.D),
            "eps": self.eps,
        }
        if self.checks:
            out["checks"] = self.checks
        if self.settings:
            out["settings"] = self.settings
        return out


def _instantiate(template, eps, tag) -> IntervalPolynomialMatrix:
    rows = []
    for i, r in enumerate(template):
        row = []
        for j, entry in enumerate(r):
            pairs = []
            for c in entry:
                if isinstance(c, EpsCoefficient):
                    pairs.append(c.bounds(eps))
                elif isinstance(c, tuple):
                    pairs.append(c)
                else:
                    pairs.append((c, c))
            try:
                row.append(IntervalPolynomial(pairs))
            except MalformedInputError as exc:
                raise MalformedInputError(f"{tag}[{i + 1}][{j + 1}]: {exc}") from None
        rows.append(row)
    return IntervalPolynomialMatrix(rows)


def _template_json(template) -> list:
    def coef(c):
        if isinstance(c, EpsCoefficient):
            return {"center": c.center, "scale": c.scale}
        if isinstance(c, tuple):
            return [c[0], c[1]]
        return c

    return [[[coef(c) for c in entry] for entry in r] for r in template]


# ---------------------------------------------------------------------------
# Parsing


def _num(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedInputError(f"{where}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise MalformedInputError(f"{where}: non-finite value")
    return v


def _parse_coefficient(value, where):
    if isinstance(value, dict):
        unknown = set(value) - {"center", "scale"}
        if unknown or "center" not in value or "scale" not in value:
            raise MalformedInputError(f"{where}: eps template needs exactly 'center' and 'scale'")
        scale = _num(value["scale"], where + ".scale")
        if scale < 0:
            raise MalformedInputError(f"{where}: negative scale {scale}")
        return EpsCoefficient(_num(value["center"], where + ".center"), scale)
    if isinstance(value, list):
        if len(value) != 2:
            raise MalformedInputError(f"{where}: interval must be [lo, hi]")
        lo, hi = _num(value[0], where + "[lo]"), _num(value[1], where + "[hi]")
        if lo > hi:
            raise MalformedInputError(f"{where}: lo {lo} > hi {hi}")
        return (lo, hi)
    return _num(value, where)


def _parse_interval_matrix(data, n, tag) -> list:
    if not isinstance(data, list) or len(data) != n or any(not isinstance(r, list) or len(r) != n for r in data):
        raise MalformedInputError(f"{tag}: expected an {n}x{n} array of entries")
    out = []
    for i, r in enumerate(data):
        row = []
        for j, entry in enumerate(r):
            where = f"{tag}[{i + 1}][{j + 1}]"
            if not isinstance(entry, list) or not entry:
                raise MalformedInputError(f"{where}: expected a non-empty coefficient array")
            row.append([_parse_coefficient(c, f"{where} coefficient s^{k}") for k, c in enumerate(entry)])
        out.append(row)
    return out


def _parse_poly_matrix(data, n, tag) -> PolynomialMatrix:
    if data is None or data == "identity":
        return PolynomialMatrix.identity(n)
    if not isinstance(data, list) or len(data) != n or any(not isinstance(r, list) or len(r) != n for r in data):
        raise MalformedInputError(f"{tag}: expected an {n}x{n} array of polynomials or \"identity\"")
    rows = []
    for i, r in enumerate(data):
        row = []
        for j, entry in enumerate(r):
            where = f"{tag}[{i + 1}][{j + 1}]"
            if isinstance(entry, (int, float)) and not isinstance(entry, bool):
                entry = [entry]
            if not isinstance(entry, list) or not entry:
                raise MalformedInputError(f"{where}: expected a coefficient array")
            row.append([_num(c, f"{where} coefficient s^{k}") for k, c in enumerate(entry)])
        rows.append(row)
    return PolynomialMatrix(rows)


def problem_from_dict(data: dict) -> ProblemSpec:
    if not isinstance(data, dict):
        raise MalformedInputError("problem must be a JSON object")
    schema = data.get("schema")
    if schema != SCHEMA_VERSION:
        raise MalformedInputError(f"schema: expected {SCHEMA_VERSION}, got {schema!r}")
    if "B" not in data or "D" not in data:
        raise MalformedInputError("problem needs both 'B' and 'D'")
    n = data.get("n", len(data["B"]) if isinstance(data["B"], list) else None)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MalformedInputError(f"n: expected a positive integer, got {n!r}")
    spec = ProblemSpec(
        n=n,
        A=_parse_poly_matrix(data.get("A"), n, "A"),
        C=_parse_poly_matrix(data.get("C"), n, "C"),
        B=_parse_interval_matrix(data["B"], n, "B"),
        D=_parse_interval_matrix(data["D"], n, "D"),
        name=str(data.get("name", "problem")),
        eps=_num(data.get("eps", 0.0), "eps"),
        checks=dict(data.get("checks", {})),
        settings=dict(data.get("settings", {})),
    )
    if spec.eps < 0:
        raise MalformedInputError("eps: must be non-negative")
    spec.instantiate()  # surface interval errors at parse time
    return spec


def parse_problem(source: Union[str, Path, dict]) -> ProblemSpec:
    """Parse a path, a bundled fixture name, JSON text, or a decoded dict."""
    if isinstance(source, dict):
        return problem_from_dict(source)
    text = None
    label = "<text>"
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        name = str(source)
        if name in FIXTURES:
            text = resources.files("robustpm.data").joinpath(FIXTURES[name]).read_text(encoding="utf-8")
            label = name
        else:
            path = Path(name)
            if not path.exists():
                raise MalformedInputError(f"problem file not found: {name}")
            text = path.read_text(encoding="utf-8")
            label = str(path)
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{label}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return problem_from_dict(data)


def dump_problem(spec: ProblemSpec) -> str:
    return json.dumps(spec.to_json(), indent=2, sort_keys=True)


def load_fixture(name: str = "manipulator") -> ProblemSpec:
    return parse_problem(name)


def from_matrices(A, B, C, D, name: str = "problem") -> Problem:
    """Build an instantiated problem from plain nested lists.

    ``B`` and ``D`` entries are lists of ``[lo, hi]`` pairs or numbers.
    """
    def ipm(rows):
        return IntervalPolynomialMatrix(
            [[IntervalPolynomial([c if isinstance(c, (list, tuple)) else (c, c) for c in e]) for e in r] for r in rows]
        )

    def pm(rows):
        return PolynomialMatrix([[e if isinstance(e, (list, tuple)) else [e] for e in r] for r in rows])

    return Problem(pm(A), ipm(B), pm(C), ipm(D), name)


def settings_echo(**kwargs: Any) -> dict:
    return {k: v for k, v in sorted(kwargs.items())}
