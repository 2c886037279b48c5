import argparse

import numpy as np

from nlscanon.commands.base import base
from nlscanon.solutions.painleve_solution import asymptotic_amplitude, asymptotic_phase, painleve_profile
from nlscanon.utils import tc, write_csv
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import COMMAND_REGISTRY


def parse_range(spec: str, flag: str, with_count: bool = True) -> tuple[float, ...]:
    parts = str(spec).split(":")
    try:
        if with_count and len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
        if not with_count and len(parts) == 2:
            return float(parts[0]), float(parts[1])
    except ValueError:
        pass
    shape = "start:stop:num" if with_count else "start:stop"
    msg = f"{flag} must look like {shape}, got '{spec}'"
    raise ConfigError(msg, value=spec)


@COMMAND_REGISTRY.register()
class painleve(base):
    help = "Nonlinear Airy profile A_k0 on a zeta grid, with its fitted oscillatory asymptotics."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--k0", type=float, default=0.5, help="Decay constant, 0 < |k0| < 1.")
        parser.add_argument("--zeta", type=str, default="-40:8:4801", metavar="START:STOP:NUM", help="Sample grid.")
        parser.add_argument("--window", type=str, default=None, metavar="START:STOP", help="Fit window (default: automatic).")
        parser.add_argument("--out", type=str, default=None, help="CSV path for (zeta, A, A').")
        parser.add_argument("--report", type=str, default=None, help="JSON path for the fit (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        start, stop, num = parse_range(args.zeta, "--zeta")
        if num < 2 or not stop > start:
            msg = f"--zeta needs stop > start and num >= 2, got '{args.zeta}'"
            raise ConfigError(msg, value=args.zeta)
        window = parse_range(args.window, "--window", with_count=False) if args.window else None
        zeta = np.linspace(start, stop, num)
        samples = painleve_profile(args.k0, zeta, window=window)
        if args.out is not None:
            write_csv(args.out, ("zeta", "A", "A'"), zip(zeta, samples.values, samples.derivative, strict=True))
            self.logger.info(f"{num} profile samples written to {args.out}.")

        payload = {
            "k0": args.k0,
            "expected_amplitude": asymptotic_amplitude(args.k0),
            "expected_phase": asymptotic_phase(args.k0),
            "fit": None,
        }
        if samples.fit is None:
            self.logger.warning(
                f"{tc.light_blue}The grid does not reach far enough left for an asymptotic fit.{tc.end}"
            )
        else:
            payload["fit"] = samples.fit.to_dict()
            self.logger.info(f"Fitted amplitude error: {samples.fit.amplitude_error:.3e}.")
        self.emit_json(args.report, payload)
        return 0
