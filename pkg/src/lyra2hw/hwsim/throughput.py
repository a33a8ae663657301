"""Clock frequency to hash rate for both cores."""

from ..lyra2 import LYRA2REV2
from .core import PIPELINE_STAGES

ITERATIVE = "iterative"
PIPELINED = "pipelined"
ARCHS = (ITERATIVE, PIPELINED)

CYCLES_PER_HASH = LYRA2REV2.rounds_per_hash
PIPELINED_LATENCY = CYCLES_PER_HASH * PIPELINE_STAGES

# Reported post-fit operating points of the pipelined core: (MHz, MHash/s).
REPORTED = {"Virtex 7 485T": (175.0, 2.58), "Zynq Ultrascale+ 7EV": (250.0, 3.69)}


def throughput_model(freq_mhz: float, arch: str = PIPELINED) -> float:
    """Steady-state hash rate in MHash/s at ``freq_mhz``."""
    if not freq_mhz > 0:
        raise ValueError(f"frequency must be positive, got {freq_mhz}")
    if arch == ITERATIVE:
        return freq_mhz / CYCLES_PER_HASH
    if arch == PIPELINED:
        return freq_mhz * PIPELINE_STAGES / PIPELINED_LATENCY
    raise ValueError(f"unknown architecture {arch!r}; expected one of {ARCHS}")
