import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from nlscanon.coeffs.base import COEFF_NAMES, Coefficient, CoefficientSet
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import PRESET_REGISTRY

_UNSIGNED = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_SIGNED = rf"[+-]?\s*{_UNSIGNED}"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?P<coef>{_UNSIGNED})\s*"
    rf"(?:\*\s*(?:t\s*\^\s*(?P<n>\d+)|(?P<fn>sin|cos|exp)\(\s*(?P<rate>{_SIGNED})\s*\*?\s*t\s*\)|(?P<lin>t)))?\s*"
)


@dataclass(frozen=True)
class Term:
    kind: str  # poly, sin, cos, exp
    coef: float
    param: float  # power n or rate w / r

    def value(self, t: np.ndarray) -> np.ndarray:
        match self.kind:
            case "poly":
                return self.coef * t ** int(self.param)
            case "sin":
                return self.coef * np.sin(self.param * t)
            case "cos":
                return self.coef * np.cos(self.param * t)
            case _:
                return self.coef * np.exp(self.param * t)

    def derivative(self, t: np.ndarray) -> np.ndarray:
        p = self.param
        match self.kind:
            case "poly":
                n = int(p)
                return np.zeros(np.shape(t)) if n == 0 else self.coef * n * t ** (n - 1)
            case "sin":
                return self.coef * p * np.cos(p * t)
            case "cos":
                return -self.coef * p * np.sin(p * t)
            case _:
                return self.coef * p * np.exp(p * t)


def parse_terms(expr: str) -> list[Term]:
    """Parse a sum of terms `coef * t^n`, `coef * sin(w t)`,
    `coef * cos(w t)`, `coef * exp(r t)` (a bare number is `coef * t^0`).
    """
    pos, terms = 0, []
    expr = expr.strip()
    if not expr:
        msg = "empty coefficient expression"
        raise ConfigError(msg)
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if m is None or m.end() == pos or (terms and m.group("sign") is None):
            msg = f"cannot parse coefficient expression '{expr}' at position {pos}"
            raise ConfigError(msg, expression=expr, position=pos)
        coef = float(m.group("coef")) * (-1.0 if m.group("sign") == "-" else 1.0)
        if m.group("n") is not None:
            terms.append(Term("poly", coef, float(m.group("n"))))
        elif m.group("fn") is not None:
            rate = float(m.group("rate").replace(" ", ""))
            terms.append(Term(m.group("fn"), coef, rate))
        elif m.group("lin") is not None:
            terms.append(Term("poly", coef, 1.0))
        else:
            terms.append(Term("poly", coef, 0.0))
        pos = m.end()
    return terms


def coefficient_from_expr(expr: str | float) -> Coefficient:
    if isinstance(expr, int | float):
        return Coefficient.constant(float(expr))
    terms = parse_terms(expr)
    combined: dict[tuple[str, float], float] = {}
    for term in terms:
        combined[term.kind, term.param] = combined.get((term.kind, term.param), 0.0) + term.coef
    if not any(combined.values()):
        return Coefficient.constant(0.0)
    if all(term.kind == "poly" and term.param == 0 for term in terms):
        return Coefficient.constant(sum(term.coef for term in terms))

    def value(t):
        t = np.asarray(t, dtype=float)
        return sum((term.value(t) for term in terms), np.zeros(t.shape))

    def derivative(t):
        t = np.asarray(t, dtype=float)
        return sum((term.derivative(t) for term in terms), np.zeros(t.shape))

    return Coefficient(value, derivative, label=expr)


def coefficients_from_dict(spec: dict[str, Any], name: str = "custom") -> CoefficientSet:
    unknown = set(spec) - {*COEFF_NAMES, "h0", "name"}
    if unknown:
        msg = f"unknown keys in coefficient file: {sorted(unknown)}"
        raise ConfigError(msg)
    name = str(spec.get("name", name))
    if name in PRESET_REGISTRY:
        msg = f"custom coefficient sets cannot reuse the preset name '{name}'"
        raise ConfigError(msg)
    coeffs = {k: coefficient_from_expr(spec.get(k, 0.0)) for k in COEFF_NAMES}
    if "a" not in spec:
        coeffs["a"] = Coefficient.constant(1.0)
    return CoefficientSet(
        **coeffs, h0=float(spec.get("h0", 0.0)), name=name
    )


def load_coefficients(path: str | Path) -> CoefficientSet:
    """Load a custom coefficient set from JSON, e.g.

    {"a": "1", "b": "0.25 + 0.1 * cos(2 t)", "d": "-0.5 * exp(-1 t)", "h0": -1}
    """
    try:
        with Path(path).expanduser().open(encoding="utf-8") as f:
            spec = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        msg = f"cannot read coefficient file '{path}': {err}"
        raise ConfigError(msg, path=str(path))
    if not isinstance(spec, dict):
        msg = "coefficient file must contain a JSON object"
        raise ConfigError(msg, path=str(path))
    return coefficients_from_dict(spec, name=f"custom:{Path(path).stem}")
