import argparse

from nlscanon.commands.base import add_grid_argument, add_solution_arguments, base, grid_from_args, solution_from_args
from nlscanon.coeffs import presets
from nlscanon.solutions import AutonomousSolution
from nlscanon.solutions.painleve_solution import example3_coupling
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.utils.report import Grid2D, ResidualReport
from nlscanon.verify import FieldSamples, calculate_residual


def own_residual(solution: AutonomousSolution, grid: Grid2D, threads: int, **opt) -> ResidualReport:
    """Residual of the equation the solution was built for."""
    match solution.form:
        case "standard":
            data = {"psi": solution, "grid": grid}
            opt = {"type": "standard", "branch": solution.branch or "focusing", **opt}
        case "nonautonomous":
            p = solution.params
            coeffs = presets.example3(p["alpha0"], p["beta0"], p["gamma0"], p["g0"])
            data = {
                "psi": solution, "coeffs": coeffs, "grid": grid,
                "h": example3_coupling(p["alpha0"], p["beta0"], p["h0"], p["mu0"]),
            }
            opt = {"type": "nonautonomous", **opt}
        case _:
            data = {"chi": solution, "h0": solution.h0, "grid": grid}
            opt = {"type": "autonomous", **opt}
    return calculate_residual(data, {"threads": threads, **opt})


@COMMAND_REGISTRY.register()
class solution(base):
    help = "Sample an exact solution family on a grid as CSV."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_solution_arguments(parser, family="one_soliton")
        add_grid_argument(parser, "-10:10:401,0:1:11")
        parser.add_argument("--out", type=str, default=None, help="CSV path (stdout when omitted).")
        parser.add_argument("--report", type=str, default=None, help="Also write the residual of its own equation here.")

    def __call__(self, args: argparse.Namespace) -> int:
        grid = grid_from_args(args)
        psi = solution_from_args(args)
        self.logger.info(f"Sampling [{psi.family}] ({psi.form} form) on a {grid.nt}x{grid.nx} grid.")
        self.emit_field(args.out, FieldSamples.from_field(psi, grid, args.threads))
        if args.report is not None:
            report = own_residual(psi, grid, args.threads)
            self.emit_json(args.report, {**report.to_dict(), "solution": psi.describe()})
        return 0
