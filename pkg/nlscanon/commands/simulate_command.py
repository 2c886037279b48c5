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
from nlscanon.verify import FieldSamples, compare_fields, split_step_simulate


@COMMAND_REGISTRY.register()
class simulate(base):
    help = "Split-step evolution from lifted initial data, compared with the analytic lift."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_coeffs_arguments(parser, preset="plasma")
        add_solution_arguments(parser)
        add_frame_arguments(parser)
        add_grid_argument(parser, "-30:30:2048,0:0.5:11")
        parser.add_argument("--dt", type=float, default=1e-4, help="Largest time step.")
        parser.add_argument("--progress", action="store_true", default=False, help="Show a progress bar.")
        parser.add_argument("--log-interval", type=int, default=1000, help="Steps between progress messages.")
        parser.add_argument("--out", type=str, default=None, help="CSV path of the simulated field.")
        parser.add_argument("--report", type=str, default=None, help="JSON path of the comparison (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        grid = grid_from_args(args)
        coeffs = coeffs_from_args(args)
        psi, coupling = lifted_field(args, coeffs, solution_from_args(args), grid.t1)
        run = split_step_simulate(
            coeffs, coupling, psi, grid, args.dt, progress=args.progress, log_interval=args.log_interval
        )
        if args.out is not None:
            self.emit_field(args.out, run)
        exact = FieldSamples.from_field(psi, grid, args.threads)
        comparison = compare_fields(exact, run)
        self.logger.info(
            f"Split-step vs lift: relative L2 {comparison.relative_l2:.3e}, sup {comparison.sup_norm:.3e}."
        )
        self.emit_json(args.report, {**comparison.to_dict(), **run.meta, "grid": grid.to_dict()})
        return 0
