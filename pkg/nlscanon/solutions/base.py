from dataclasses import dataclass, field
from typing import Any

from nlscanon.transform.field import ComplexField

FORMS = ("autonomous", "standard", "nonautonomous")


@dataclass(frozen=True)
class AutonomousSolution(ComplexField):
    """An exact solution together with the family and parameters it came from.

    `form` says which equation it solves: 'autonomous' is
    iχ_τ + h₀|χ|²χ = χ_ξξ (h₀ stored in `params`), 'standard' is
    iΨ_T + Ψ_XX ± 2|Ψ|²Ψ = 0 and 'nonautonomous' a field in (x, t).
    """

    family: str = ""
    params: dict[str, Any] = field(default_factory=dict)
    form: str = "autonomous"
    profile: Any = None

    @property
    def h0(self) -> float | None:
        return self.params.get("h0")

    @property
    def branch(self) -> str | None:
        return self.meta.get("branch")

    def describe(self) -> dict[str, Any]:
        return {"family": self.family, "form": self.form, **self.params}
