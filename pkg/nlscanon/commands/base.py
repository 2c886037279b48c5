import argparse
from typing import Any

import numpy as np

from nlscanon.coeffs import CoefficientSet, build_coefficients
from nlscanon.riccati import RiccatiState
from nlscanon.solutions import AutonomousSolution, build_solution
from nlscanon.solutions.painleve_solution import example3_coupling
from nlscanon.transform import ComplexField, build_frame, integrability_coupling, lift_solution
from nlscanon.utils import get_root_logger, write_csv, write_json
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.report import Grid2D
from nlscanon.verify import FieldSamples

FIELD_HEADER = ("x", "t", "re", "im")
PRESET_PARAMS = {
    "free_particle": (),
    "harmonic": ("omega",),
    "exponential": ("k",),
    "plasma": ("k",),
    "example3": ("alpha0", "beta0", "gamma0", "g0"),
}


class base:
    """Default subcommand.

    Subclasses set `help`, declare their flags in `add_arguments` and do the
    work in `__call__`, which returns the process exit code.
    """

    help = ""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        pass

    def __init__(self) -> None:
        self.logger = get_root_logger()

    def __call__(self, args: argparse.Namespace) -> int:
        raise NotImplementedError

    def emit_json(self, path: str | None, payload: dict[str, Any]) -> None:
        text = write_json(path, payload)
        if path is None:
            print(text, end="")
        else:
            self.logger.info(f"Report written to {path}.")

    def emit_field(self, path: str | None, samples: FieldSamples) -> None:
        text = write_csv(path, FIELD_HEADER, samples.rows())
        if path is None:
            print(text, end="")
        else:
            self.logger.info(f"{samples.values.size} samples written to {path}.")


# shared flags


def add_coeffs_arguments(parser: argparse.ArgumentParser, preset: str = "harmonic") -> None:
    group = parser.add_argument_group("coefficients")
    group.add_argument("--preset", type=str, default=preset, choices=sorted(PRESET_PARAMS), help="Preset coefficient set.")
    group.add_argument("--coeffs", type=str, default=None, help="Custom coefficient JSON file, used instead of --preset.")
    group.add_argument("--omega", type=float, default=1.0, help="harmonic: frequency.")
    group.add_argument("--k", type=float, default=0.5, help="exponential, plasma: rate.")
    group.add_argument("--alpha0", type=float, default=0.1, help="example3: alpha0.")
    group.add_argument("--beta0", type=float, default=1.0, help="example3: beta0.")
    group.add_argument("--gamma0", type=float, default=0.2, help="example3: gamma0.")
    group.add_argument("--g0", type=float, default=1.0, help="example3: g0.")
    group.add_argument("--h0", type=float, default=None, help="Autonomous coupling h0 (default: the solution's).")


def add_solution_arguments(parser: argparse.ArgumentParser, family: str = "bright") -> None:
    group = parser.add_argument_group("solution")
    group.add_argument("--solution", "--family", dest="solution", type=str, default=family, help="Solution family.")
    group.add_argument(
        "--param", type=str, action="append", default=None, metavar="KEY=VALUE",
        help="Solution parameter, repeatable, e.g. --param y=0.4.",
    )


def add_frame_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("frame")
    group.add_argument(
        "--init", type=str, default=None, metavar="MU,ALPHA,BETA,GAMMA,DELTA,EPSILON,KAPPA",
        help="Riccati values at t=0 (identity data by default).",
    )
    group.add_argument("--normalization", type=str, default="plain", choices=["plain", "scaled"], help="Lift normalization.")
    group.add_argument(
        "--method", type=str, default="auto", choices=["auto", "closed_form", "composition", "direct"],
        help="How the Riccati trajectory is computed.",
    )


def add_grid_argument(parser: argparse.ArgumentParser, default: str) -> None:
    parser.add_argument("--grid", type=str, default=default, metavar="X0:X1:NX,T0:T1:NT", help="Sample grid.")


# option conversion


def parse_number(token: str) -> complex | float:
    """Real or complex literal, with 'i' or 'j' as imaginary unit."""
    text = token.strip().replace("i", "j")
    if text in {"j", "+j", "-j"}:
        text = text.replace("j", "1j")
    try:
        value = complex(text)
    except ValueError:
        msg = f"cannot read '{token}' as a number"
        raise ConfigError(msg, value=token)
    return value.real if value.imag == 0 and "j" not in text else value


def parse_number_list(spec: str | None) -> list[complex]:
    if spec is None or not str(spec).strip():
        return []
    return [complex(parse_number(v)) for v in str(spec).split(",")]


def parse_params(items: list[str] | None) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for item in items or []:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            msg = f"solution parameters look like KEY=VALUE, got '{item}'"
            raise ConfigError(msg, param=item)
        if raw.lower() in {"true", "false"}:
            params[key] = raw.lower() == "true"
        else:
            value = parse_number(raw)
            params[key] = value if isinstance(value, complex) else float(value)
    return params


def grid_from_args(args: argparse.Namespace) -> Grid2D:
    return Grid2D.parse(args.grid)


def init_from_args(args: argparse.Namespace) -> RiccatiState | None:
    if args.init is None:
        return None
    try:
        values = [float(v) for v in str(args.init).split(",")]
    except ValueError:
        msg = f"--init needs seven comma separated reals, got '{args.init}'"
        raise ConfigError(msg, init=args.init)
    return RiccatiState.from_sequence(values)


def coeffs_from_args(args: argparse.Namespace) -> CoefficientSet:
    if args.coeffs is not None:
        opt: dict[str, Any] = {"type": "custom", "path": args.coeffs}
    else:
        opt = {"type": args.preset, **{name: getattr(args, name) for name in PRESET_PARAMS[args.preset]}}
    if args.h0 is not None:
        opt["h0"] = args.h0
    return build_coefficients(opt)


def solution_from_args(args: argparse.Namespace) -> AutonomousSolution:
    return build_solution({"type": args.solution, **parse_params(args.param)})


def lifted_field(
    args: argparse.Namespace, coeffs: CoefficientSet, chi: AutonomousSolution, t_end: float
) -> tuple[ComplexField, Any]:
    """The nonautonomous field and its coupling h(t).

    Fields that already live in (x, t), like the Airy soliton, are returned
    as they are with their own coupling.
    """
    if chi.form == "nonautonomous":
        p = chi.params
        return chi, example3_coupling(p["alpha0"], p["beta0"], p["h0"], p["mu0"])
    h0 = args.h0 if args.h0 is not None else chi.h0
    if h0 is None:
        msg = f"solution '{chi.family}' carries no h0, pass --h0"
        raise ConfigError(msg, family=chi.family)
    frame = build_frame(
        coeffs, init_from_args(args), h0=h0, normalization=args.normalization,
        t_end=t_end if t_end > 0 else 1.0, method=args.method,
    )
    get_root_logger().debug(f"Lifting [{chi.family}] through the [{frame.trajectory.kind}] frame of [{coeffs.name}].")
    return lift_solution(chi, frame), lambda t: integrability_coupling(frame, t)


def complex_to_json(values) -> list[dict[str, float]]:
    return [{"re": float(np.real(v)), "im": float(np.imag(v))} for v in values]
