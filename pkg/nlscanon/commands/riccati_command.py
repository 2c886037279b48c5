import argparse

import numpy as np

from nlscanon.commands.base import add_coeffs_arguments, add_frame_arguments, base, coeffs_from_args, init_from_args
from nlscanon.riccati import build_trajectory, riccati_residual
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import COMMAND_REGISTRY


@COMMAND_REGISTRY.register()
class riccati(base):
    help = "General solution of the Riccati-type system at one time, as JSON."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_coeffs_arguments(parser)
        add_frame_arguments(parser)
        parser.add_argument("--t", type=float, default=1.0, help="Evaluation time.")
        parser.add_argument("--report", type=str, default=None, help="JSON path (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        if args.t <= 0:
            msg = f"--t must be positive, got {args.t}"
            raise ConfigError(msg)
        coeffs = coeffs_from_args(args)
        trajectory = build_trajectory(coeffs, init_from_args(args), t_end=args.t, method=args.method)
        state = trajectory(np.asarray(args.t))
        residual = riccati_residual(coeffs, trajectory, [args.t])
        payload = {
            **state.to_dict(),
            "preset": coeffs.name,
            "method": trajectory.kind,
            "residuals": residual.per_equation,
        }
        self.emit_json(args.report, payload)
        return 0
