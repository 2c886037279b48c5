import argparse

import numpy as np

from nlscanon.commands.base import add_coeffs_arguments, add_grid_argument, base, coeffs_from_args, grid_from_args
from nlscanon.transform import (
    ComplexField,
    build_frame,
    build_fundamental,
    green_asymptotic,
    green_function,
    lift_free_propagator,
)
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.utils.report import ResidualReport
from nlscanon.verify import FieldSamples


@COMMAND_REGISTRY.register()
class greens(base):
    help = "Green function of the linear equation: a column G(x, y, t) as CSV, or checks as JSON."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_coeffs_arguments(parser)
        add_grid_argument(parser, "-4:4:81,0.2:1:9")
        parser.add_argument("--y", type=float, default=0.0, help="Source point of the sampled column.")
        parser.add_argument(
            "--compare", action="store_true", default=False,
            help="Compare with the lifted free propagator at random points instead of sampling.",
        )
        parser.add_argument(
            "--asymptotic", type=float, default=None, metavar="T",
            help="Compare moduli with the small-time form at time T instead of sampling.",
        )
        parser.add_argument("--samples", type=int, default=200, help="Random points for --compare.")
        parser.add_argument("--seed", type=int, default=0, help="Seed of the --compare points.")
        parser.add_argument("--t-end", type=float, default=1.0, help="Horizon of the fundamental solution.")
        parser.add_argument("--out", type=str, default=None, help="CSV path (stdout when omitted).")
        parser.add_argument("--report", type=str, default=None, help="JSON path for --compare/--asymptotic.")

    def __call__(self, args: argparse.Namespace) -> int:
        coeffs = coeffs_from_args(args)
        grid = grid_from_args(args)
        if args.compare:
            self.emit_json(args.report, self.compare(coeffs, grid, args).to_dict())
            return 0
        if args.asymptotic is not None:
            self.emit_json(args.report, self.asymptotic(coeffs, grid, args.asymptotic).to_dict())
            return 0
        if grid.t0 <= 0:
            msg = "the Green function is singular at t = 0, start the grid at t0 > 0"
            raise ConfigError(msg, t0=grid.t0)
        fundamental = build_fundamental(coeffs, t_end=max(args.t_end, grid.t1))
        column = ComplexField(
            lambda x, t: green_function(coeffs, fundamental, x, args.y, t), label="green"
        )
        self.emit_field(args.out, FieldSamples.from_field(column, grid, args.threads))
        return 0

    def compare(self, coeffs, grid, args) -> ResidualReport:
        """Relative deviation |G − K|/|G| at random (x, y, t), with x, y drawn
        from the grid window and t from its time range.
        """
        rng = np.random.default_rng(args.seed)
        x, y = rng.uniform(grid.x0, grid.x1, (2, args.samples))
        t = rng.uniform(max(grid.t0, 1e-3), grid.t1, args.samples)
        t_end = max(args.t_end, grid.t1)
        g = green_function(coeffs, build_fundamental(coeffs, t_end=t_end), x, y, t)
        k = lift_free_propagator(build_frame(coeffs, t_end=t_end), x, y, t)
        return ResidualReport.from_samples(np.abs(g - k) / np.abs(g), x, t, method="analytic_derivatives")

    def asymptotic(self, coeffs, grid, t: float) -> ResidualReport:
        """Relative deviation of |G| from the small-time modulus on the grid's
        x range, source at the origin.
        """
        fundamental = build_fundamental(coeffs, t_end=max(1.0, 10 * t), t_min=t / 100)
        x = grid.x
        g = green_function(coeffs, fundamental, x, 0.0, t)
        small = green_asymptotic(coeffs, x, 0.0, t)
        deviation = np.abs(np.abs(g) - np.abs(small)) / np.abs(small)
        return ResidualReport.from_samples(deviation, x, np.full_like(x, t), method="analytic_derivatives")
