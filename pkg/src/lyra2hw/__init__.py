"""Lyra2 as used in Lyra2REv2, with a cycle-accurate model of its FPGA cores."""

from .blake2b import blake2b_iv, blake2b_round, g_function, permute
from .lyra2 import LYRA2REV2, Lyra2Params, MemoryMatrix, lyra2_hash, lyra2_run
from .sponge import DuplexState, new_duplex

__version__ = "0.1.0"
