import argparse

from nlscanon.commands.base import (
    add_grid_argument,
    base,
    complex_to_json,
    grid_from_args,
    parse_number_list,
)
from nlscanon.scattering import ScatteringData, centered_norming_constant, glm_field
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.verify import FieldSamples, residual_standard


@COMMAND_REGISTRY.register()
class glm(base):
    help = "Reflectionless inverse-scattering reconstruction of an N-soliton field as CSV."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--eigenvalues", type=str, default="0.5i", help="Comma separated eigenvalues in the upper half plane.")
        parser.add_argument(
            "--norming", type=str, default=None,
            help="Comma separated norming constants (default: -2i*Im(lambda), each soliton centred).",
        )
        parser.add_argument("--t0", type=float, default=0.0, help="Time at which the data are given.")
        add_grid_argument(parser, "-10:10:201,0:1:11")
        parser.add_argument("--out", type=str, default=None, help="CSV path (stdout when omitted).")
        parser.add_argument("--report", type=str, default=None, help="Also write the residual of the standard equation here.")

    def __call__(self, args: argparse.Namespace) -> int:
        eigenvalues = parse_number_list(args.eigenvalues)
        norming = parse_number_list(args.norming)
        if args.norming is None:
            norming = [centered_norming_constant(lam.imag) for lam in eigenvalues]
        if len(norming) != len(eigenvalues):
            msg = f"got {len(eigenvalues)} eigenvalues but {len(norming)} norming constants"
            raise ConfigError(msg)
        data = ScatteringData(tuple(eigenvalues), tuple(norming), t0=args.t0)
        grid = grid_from_args(args)
        psi = glm_field(data)
        self.emit_field(args.out, FieldSamples.from_field(psi, grid, args.threads))
        if args.report is not None:
            report = residual_standard(psi, grid, branch="focusing", threads=args.threads)
            payload = {
                **report.to_dict(),
                "eigenvalues": complex_to_json(data.eigenvalues),
                "norming": complex_to_json(data.norming),
            }
            self.emit_json(args.report, payload)
        return 0
