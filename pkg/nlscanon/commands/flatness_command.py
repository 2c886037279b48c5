import argparse

from nlscanon.commands.base import (
    add_grid_argument,
    add_solution_arguments,
    base,
    grid_from_args,
    parse_number,
    solution_from_args,
)
from nlscanon.scattering import BRANCHES, flatness_residual
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.verify import DIFF_METHODS


@COMMAND_REGISTRY.register()
class flatness(base):
    help = "Zero-curvature residual of the Lax pair for a standard-form solution, as JSON."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_solution_arguments(parser, family="one_soliton")
        parser.add_argument("--lambda", dest="lam", type=str, default="0.3", help="Spectral parameter (complex allowed).")
        parser.add_argument("--branch", type=str, default=None, choices=BRANCHES, help="Sign branch (default: the solution's).")
        parser.add_argument("--diff", type=str, default="auto", choices=DIFF_METHODS, help="Differentiation method.")
        add_grid_argument(parser, "-10:10:201,0:1:11")
        parser.add_argument("--report", type=str, default=None, help="JSON path (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        psi = solution_from_args(args)
        if psi.form != "standard":
            msg = f"the Lax pair acts on standard-form fields, '{psi.family}' is {psi.form}"
            raise ConfigError(msg, family=psi.family)
        lam = parse_number(args.lam)
        report = flatness_residual(psi, lam, grid_from_args(args), branch=args.branch, method=args.diff)
        payload = {**report.to_dict(), "lambda": {"re": float(lam.real), "im": float(lam.imag)}}
        self.emit_json(args.report, payload)
        return 0
