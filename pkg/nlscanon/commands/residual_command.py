import argparse

from nlscanon.commands.base import (
    add_coeffs_arguments,
    add_frame_arguments,
    add_grid_argument,
    add_solution_arguments,
    base,
    coeffs_from_args,
    grid_from_args,
    lifted_field,
    solution_from_args,
)
from nlscanon.commands.solution_command import own_residual
from nlscanon.transform import to_standard
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.verify import DIFF_METHODS, calculate_residual


@COMMAND_REGISTRY.register()
class residual(base):
    help = "PDE residual of a solution, or of its lift, as a JSON report."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--equation", type=str, default="nonautonomous", choices=["autonomous", "standard", "nonautonomous"],
            help="Equation to check; 'nonautonomous' lifts autonomous solutions first.",
        )
        add_coeffs_arguments(parser, preset="plasma")
        add_solution_arguments(parser)
        add_frame_arguments(parser)
        add_grid_argument(parser, "-10:10:201,0:1:11")
        parser.add_argument("--diff", type=str, default="auto", choices=DIFF_METHODS, help="Differentiation method.")
        parser.add_argument("--step", type=float, default=None, help="Stencil step (default: grid spacing).")
        parser.add_argument("--report", type=str, default=None, help="JSON path (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        grid = grid_from_args(args)
        chi = solution_from_args(args)
        opt = {"method": args.diff, "step": args.step}
        equation = args.equation
        if args.equation == "nonautonomous":
            coeffs = coeffs_from_args(args)
            psi, coupling = lifted_field(args, coeffs, chi, grid.t1)
            data = {"psi": psi, "coeffs": coeffs, "h": coupling, "grid": grid}
            report = calculate_residual(data, {"type": "nonautonomous", "threads": args.threads, **opt})
        elif args.equation == "standard" and chi.form == "autonomous":
            psi = to_standard(chi, chi.h0)
            data = {"psi": psi, "grid": grid}
            opt = {"type": "standard", "branch": psi.meta["branch"], "threads": args.threads, **opt}
            report = calculate_residual(data, opt)
        else:
            report = own_residual(chi, grid, args.threads, **opt)
            if chi.form != args.equation:
                self.logger.warning(
                    f"[{chi.family}] solves the {chi.form} equation; its own residual is reported."
                )
                equation = chi.form
        self.logger.info(f"Residual of [{chi.family}]: sup {report.sup_norm:.3e} ({report.method}).")
        self.emit_json(args.report, {**report.to_dict(), "equation": equation, "solution": chi.describe()})
        return 0