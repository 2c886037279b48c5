from typing import Any

import numpy as np


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, tuple | list):
        return [_jsonable(v) for v in value]
    return value


class NlsCanonError(Exception):
    """Base class of every error raised by nlscanon.

    Extra keyword arguments are kept as machine-readable details and
    emitted by the command line front end on stderr.
    """

    exit_code: int = 1

    def __init__(self, msg: str, **details: Any) -> None:
        super().__init__(msg)
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        out = {"error": type(self).__name__, "message": str(self)}
        out.update({k: _jsonable(v) for k, v in self.details.items()})
        return out


class ConfigError(NlsCanonError, ValueError):
    exit_code = 2


class EvaluationError(NlsCanonError, ValueError):
    pass


class SingularCoefficientError(NlsCanonError, ZeroDivisionError):
    pass


class IntegrationError(NlsCanonError, RuntimeError):
    pass


class SingularQuadratureError(NlsCanonError, RuntimeError):
    pass


class FocalPointError(NlsCanonError, ZeroDivisionError):
    pass


class NormalizationError(NlsCanonError, ValueError):
    pass


class OutOfChartError(NlsCanonError, ValueError):
    pass


class DegenerateKernelError(NlsCanonError, ZeroDivisionError):
    pass


class DomainError(NlsCanonError, ValueError):
    pass


class DivergenceError(NlsCanonError, RuntimeError):
    pass


class DegenerateDataError(NlsCanonError, np.linalg.LinAlgError):
    pass


class MultiplicityError(NlsCanonError, ValueError):
    pass


class ResolutionError(NlsCanonError, RuntimeError):
    pass


class ShapeError(NlsCanonError, ValueError):
    pass
