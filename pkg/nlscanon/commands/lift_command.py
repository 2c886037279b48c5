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
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.verify import FieldSamples, residual_nonautonomous


@COMMAND_REGISTRY.register()
class lift(base):
    help = "Lift an autonomous solution to the nonautonomous equation and sample it as CSV."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_coeffs_arguments(parser, preset="plasma")
        add_solution_arguments(parser)
        add_frame_arguments(parser)
        add_grid_argument(parser, "-10:10:201,0:1:11")
        parser.add_argument("--out", type=str, default=None, help="CSV path (stdout when omitted).")
        parser.add_argument("--report", type=str, default=None, help="Also write the PDE residual report here.")

    def __call__(self, args: argparse.Namespace) -> int:
        grid = grid_from_args(args)
        coeffs = coeffs_from_args(args)
        psi, coupling = lifted_field(args, coeffs, solution_from_args(args), grid.t1)
        self.emit_field(args.out, FieldSamples.from_field(psi, grid, args.threads))
        if args.report is not None:
            report = residual_nonautonomous(psi, coeffs, coupling, grid, threads=args.threads)
            self.emit_json(args.report, report.to_dict())
        return 0
