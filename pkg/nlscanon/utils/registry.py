# Modified from: https://github.com/facebookresearch/fvcore/blob/master/fvcore/common/registry.py

# pyright: strict
from collections.abc import Callable, Iterable, Iterator
from typing import Any


class Registry:
    """Name -> object mapping used to look up presets, solution families,
    residual evaluators and command line subcommands by the names that
    appear in TOML options and on the command line.

    To create a registry:

    .. code-block:: python

        PRESET_REGISTRY = Registry('preset')

    To register an object:

    .. code-block:: python

        @PRESET_REGISTRY.register()
        def harmonic(omega: float, h0: float = 0.0) -> CoefficientSet:
            ...

    Or under an explicit name:

    .. code-block:: python

        PRESET_REGISTRY.register(harmonic, name='oscillator')
    """

    def __init__(self, name: str) -> None:
        """Args:
        ----
            name (str): the name of this registry

        """
        self._name = name
        self._obj_map: dict[str, Callable[..., Any]] = {}

    def _do_register(self, name: str, obj: Callable[..., Any]) -> None:
        if name in self._obj_map:
            msg = f"An object named '{name}' was already registered in '{self._name}' registry!"
            raise KeyError(msg)
        self._obj_map[name] = obj

    def register(
        self, obj: Callable[..., Any] | None = None, name: str | None = None
    ) -> Callable[..., Any]:
        """Register the given object under `name`, or `obj.__name__` when no
        name is given. Can be used as either a decorator or not.
        """
        if obj is None:
            # used as a decorator
            def deco(func_or_class: Callable[..., Any]) -> Callable[..., Any]:
                self._do_register(name or func_or_class.__name__, func_or_class)
                return func_or_class

            return deco

        self._do_register(name or obj.__name__, obj)
        return obj

    def get(self, name: str) -> Callable[..., Any]:
        ret = self._obj_map.get(name)
        if ret is None:
            known = ", ".join(sorted(self._obj_map))
            msg = f"No object named '{name}' found in '{self._name}' registry! Known: {known}"
            raise KeyError(msg)
        return ret

    def __contains__(self, name: str) -> bool:
        return name in self._obj_map

    def __iter__(self) -> Iterator[tuple[str, Callable[..., Any]]]:
        return iter(self._obj_map.items())

    def keys(self) -> Iterable[str]:
        return sorted(self._obj_map.keys())


PRESET_REGISTRY = Registry("preset")
SOLUTION_REGISTRY = Registry("solution")
RESIDUAL_REGISTRY = Registry("residual")
COMMAND_REGISTRY = Registry("command")
