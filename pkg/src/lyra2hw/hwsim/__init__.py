from .bram import (
    AddressMap,
    BramModel,
    CrossContextWriteError,
    PortOverflowError,
    SchedulingError,
    WriteCollisionError,
    bram_cycle,
)
from .core import PIPELINE_STAGES, SimResult, sim_iterative, sim_pipelined, simulate
from .fsm import FsmState, Phase
from .throughput import ARCHS, REPORTED, throughput_model
from .trace import CycleRecord, PortAccess, SimTrace, Violation, parse_trace, schedule_check
