"""Expression front end: parsing, lowering and the two compilers."""

from .compile_grid import MAX_GRID_VARS, compile_grid, constant_tile
from .compile_netlist import CompileError, compile_netlist
from .lower import is_lowered, lower
from .parser import ParseDiagnostic, parse, to_text, tokenize

__all__ = [
    "MAX_GRID_VARS",
    "CompileError",
    "ParseDiagnostic",
    "compile_grid",
    "compile_netlist",
    "constant_tile",
    "is_lowered",
    "lower",
    "parse",
    "to_text",
    "tokenize",
]
