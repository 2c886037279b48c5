import argparse

import numpy as np

from nlscanon.commands.base import add_coeffs_arguments, base, coeffs_from_args
from nlscanon.riccati import closed_form_basis, solve_characteristic, wronskian_check
from nlscanon.utils import tc, write_csv
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import COMMAND_REGISTRY

HEADER = ("t", "mu0", "mu0'", "mu1", "mu1'")


@COMMAND_REGISTRY.register()
class chareq(base):
    help = "Standard solutions mu0, mu1 of the characteristic equation as CSV."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        add_coeffs_arguments(parser)
        parser.add_argument("--t-end", type=float, default=1.0, help="Right end of the time interval.")
        parser.add_argument("--samples", type=int, default=101, help="Number of output times.")
        parser.add_argument(
            "--source", type=str, default="numeric", choices=["numeric", "closed_form"],
            help="Integrate the equation or use the preset's closed form.",
        )
        parser.add_argument("--rtol", type=float, default=1e-10, help="Integrator relative tolerance.")
        parser.add_argument("--out", type=str, default=None, help="CSV path (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        coeffs = coeffs_from_args(args)
        if args.samples < 2:
            msg = f"--samples must be at least 2, got {args.samples}"
            raise ConfigError(msg)
        if args.source == "closed_form":
            basis = closed_form_basis(coeffs)
            if basis is None:
                msg = f"'{coeffs.name}' has no closed-form characteristic basis"
                raise ConfigError(msg, preset=coeffs.name)
        else:
            basis = solve_characteristic(coeffs, args.t_end, rtol=args.rtol, atol=args.rtol * 1e-2)
        t = np.linspace(0.0, args.t_end, args.samples)
        states = basis.states(t)
        abel = wronskian_check(basis, t)
        self.logger.info(
            f"Wronskian deviation of [{coeffs.name}]: {tc.light_green}{abel.sup_norm:.3e}{tc.end}"
        )
        zeros = basis.sign_changes(t_end=args.t_end)
        if zeros:
            self.logger.warning(f"mu0 changes sign near t = {', '.join(f'{z:.6g}' for z in zeros)}.")
        text = write_csv(args.out, HEADER, zip(t, *states, strict=True))
        if args.out is None:
            print(text, end="")
        return 0
