"""Structural dual-rail logic: 3-pin netlists and window-operator optics."""

from .dualrail import (
    And,
    BinOp,
    CapacityExceeded,
    Const,
    DualRail,
    InvalidPair,
    Nand,
    Not,
    Or,
    UnboundVariable,
    Var,
    Xnor,
    Xor,
    decode,
    dr_and,
    dr_not,
    dr_or,
    encode,
    eval_bool,
    truth_table,
    variables,
)
from .frontend import compile_grid, compile_netlist, lower, parse, to_text
from .graphsim import detect_sneak, detect_sneak_netlist, dfs_path, reachability_table, simulate
from .netlist import Netlist, Port, Wire
from .optics import OpticalGrid, OpticalPort, apply_inputs, gate_grid, read_port, trace, verify_gate

__version__ = "0.1.0"

__all__ = [
    "And",
    "BinOp",
    "CapacityExceeded",
    "Const",
    "DualRail",
    "InvalidPair",
    "Nand",
    "Netlist",
    "Not",
    "OpticalGrid",
    "OpticalPort",
    "Or",
    "Port",
    "UnboundVariable",
    "Var",
    "Wire",
    "Xnor",
    "Xor",
    "apply_inputs",
    "compile_grid",
    "compile_netlist",
    "decode",
    "detect_sneak",
    "detect_sneak_netlist",
    "dfs_path",
    "dr_and",
    "dr_not",
    "dr_or",
    "encode",
    "eval_bool",
    "gate_grid",
    "lower",
    "parse",
    "reachability_table",
    "read_port",
    "simulate",
    "to_text",
    "trace",
    "truth_table",
    "variables",
    "verify_gate",
]
