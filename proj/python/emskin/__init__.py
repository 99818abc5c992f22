"""Python bindings for the emskin reflective-tile layout optimizer."""

from ._emskin import (
    InputError,
    IoError,
    Scenario,
    __version__,
    evaluate,
    optimize,
    parse_layout,
    validate_single_tile,
)

__all__ = [
    "InputError",
    "IoError",
    "Scenario",
    "__version__",
    "evaluate",
    "optimize",
    "parse_layout",
    "validate_single_tile",
]
