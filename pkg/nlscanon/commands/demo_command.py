import argparse
from typing import Any

import numpy as np

from nlscanon.commands.base import add_coeffs_arguments, base, coeffs_from_args
from nlscanon.solutions import build_solution
from nlscanon.solutions.painleve_solution import example3_coupling
from nlscanon.transform import build_frame, coupling_from_kernel, integrability_coupling, lift_solution, pull_back
from nlscanon.utils import tc
from nlscanon.utils.registry import COMMAND_REGISTRY
from nlscanon.utils.report import Grid2D
from nlscanon.verify import residual_nonautonomous

# example: (preset, default grid, residual tolerance)
EXAMPLES = {
    "harmonic": ("harmonic", "-10:10:201,0:1.2:13", 1e-6),
    "exponential": ("exponential", "-10:10:201,0:1:13", 1e-6),
    "plasma": ("plasma", "-10:10:201,0:1:13", 1e-6),
    "example3": ("example3", "-6:6:49,0:1:9", 1e-5),
}
ROUND_TRIP_TOL = 1e-12
COUPLING_TOL = 1e-8
FIT_TOL = 0.02


def _check(name: str, value: float, tol: float) -> dict[str, Any]:
    return {"name": name, "value": float(value), "tol": float(tol), "passed": bool(value <= tol)}


@COMMAND_REGISTRY.register()
class demo(base):
    help = "Lift a soliton through a worked example, verify it and print a pass/fail table."

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--example", type=str, default="plasma", choices=sorted(EXAMPLES), help="Worked example.")
        add_coeffs_arguments(parser, preset="plasma")
        parser.add_argument("--y", type=float, default=0.4, help="Soliton velocity parameter.")
        parser.add_argument("--k0", type=float, default=0.5, help="example3: decay constant of the Airy profile.")
        parser.add_argument("--grid", type=str, default=None, metavar="X0:X1:NX,T0:T1:NT", help="Sample grid (default: per example).")
        parser.add_argument("--tol", type=float, default=None, help="Residual tolerance (default: per example).")
        parser.add_argument("--report", type=str, default=None, help="JSON path (stdout when omitted).")

    def __call__(self, args: argparse.Namespace) -> int:
        preset, grid_spec, tol = EXAMPLES[args.example]
        args.preset, args.coeffs = preset, None
        grid = Grid2D.parse(args.grid or grid_spec)
        tol = args.tol if args.tol is not None else tol
        coeffs = coeffs_from_args(args)
        self.logger.info(f"Demo [{args.example}]: {coeffs.describe()}")

        if args.example == "example3":
            checks, report = self.airy_soliton(args, coeffs, grid, tol)
        else:
            checks, report = self.lifted_soliton(args, coeffs, grid, tol)

        passed = all(c["passed"] for c in checks)
        for c in checks:
            verdict = f"{tc.light_green}PASS{tc.end}" if c["passed"] else f"{tc.red}FAIL{tc.end}"
            self.logger.info(f"{c['name']:<18} {c['value']:.3e}  (tol {c['tol']:.1e})  {verdict}")
        payload = {
            "example": args.example,
            "coefficients": coeffs.describe(),
            "checks": checks,
            "passed": passed,
            "residual": report.to_dict(),
        }
        self.emit_json(args.report, payload)
        return 0 if passed else 1

    def lifted_soliton(self, args, coeffs, grid: Grid2D, tol: float):
        chi = build_solution({"type": "bright", "y": args.y})
        frame = build_frame(coeffs, h0=chi.h0, t_end=grid.t1)
        psi = lift_solution(chi, frame)
        report = residual_nonautonomous(
            psi, coeffs, lambda t: integrability_coupling(frame, t), grid, threads=args.threads
        )

        tau = frame.state(grid.t[1:-1]).gamma
        xi, tt = np.meshgrid(np.linspace(-3, 3, 13), tau)
        round_trip = float(np.max(np.abs(pull_back(psi, frame)(xi, tt) - chi(xi, tt))))

        h_direct = integrability_coupling(frame, grid.t)
        h_kernel = coupling_from_kernel(frame, grid.t)
        coupling = float(np.max(np.abs(h_kernel - h_direct) / np.abs(h_direct)))
        return [
            _check("pde_residual", report.sup_norm, tol),
            _check("round_trip", round_trip, ROUND_TRIP_TOL),
            _check("coupling_forms", coupling, COUPLING_TOL),
        ], report

    def airy_soliton(self, args, coeffs, grid: Grid2D, tol: float):
        h0 = args.h0 if args.h0 is not None else 2.0
        params = {"alpha0": args.alpha0, "beta0": args.beta0, "gamma0": args.gamma0, "g0": args.g0}
        chi = build_solution({"type": "painleve2", **params, "h0": h0, "k0": args.k0, "y": args.y})
        coupling = example3_coupling(args.alpha0, args.beta0, h0)
        report = residual_nonautonomous(
            chi, coeffs, coupling, grid, method="central6", step=(1e-3, 1e-3), threads=args.threads
        )
        fit = chi.profile.fit()
        return [
            _check("pde_residual", report.sup_norm, tol),
            _check("airy_amplitude", fit.amplitude_error, FIT_TOL),
        ], report
