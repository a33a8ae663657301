"""Control path: the phase FSM and the per-round port schedule it emits.

Port roles follow the datapath. ``qa`` and ``qb`` feed the duplex input
through the word-wise adder (``qa`` carries the deterministic row, ``qb`` the
revisited row). ``qc`` is the operand of the first XOR block, which builds
``w0``. The second XOR block builds ``w1`` from the rotated duplex output and
the revisited cell: the iterative core reuses ``qb`` for that, the pipelined
core re-reads it on ``qd`` when the round leaves the pipeline.
"""

import enum
from dataclasses import dataclass
from typing import Optional

from ..sponge import FULL_ROUNDS
from .bram import AddressMap


class Phase(enum.Enum):
    Bootstrap = "Bootstrap"
    Setup0 = "Setup0"
    Setup1 = "Setup1"
    Setup2 = "Setup2"
    Wandering = "Wandering"
    WrapAbsorb = "WrapAbsorb"
    Done = "Done"


PHASE_ORDER = list(Phase)


class Input(enum.Enum):
    """Duplex input selector."""

    PWD = "pwd||pwd"
    PORTS = "qa+qb"


class WriteData(enum.Enum):
    QC_XOR_STATE = "qc^state"  # squeeze: state as it was before the round
    QC_XOR_OUT = "qc^out"
    OPERAND_XOR_ROT = "op^rot(out)"
    CHAINED = "qc^out^rot(out)"  # collision: XOR block 1 feeds XOR block 2


@dataclass(frozen=True)
class RoundOp:
    """Everything one round needs from the RAM, decided when the round is issued."""

    phase: Phase
    input: Input = Input.PORTS
    qa: Optional[int] = None
    qb: Optional[int] = None
    qc: Optional[int] = None
    qd: Optional[int] = None
    w0: Optional[int] = None
    w1: Optional[int] = None
    w0_data: Optional[WriteData] = None
    w1_data: Optional[WriteData] = None
    collision: bool = False
    last: bool = False


@dataclass
class FsmState:
    phase: Phase = Phase.Bootstrap
    round: int = 0
    row0: int = 0
    col: int = 0
    row1: int = 0
    prev0: int = 0

    def _enter(self, phase: Phase) -> None:
        if PHASE_ORDER.index(phase) != PHASE_ORDER.index(self.phase) + 1:
            raise RuntimeError(f"illegal transition {self.phase.name} -> {phase.name}")
        self.phase = phase
        self.round = self.col = 0

    def advance(self, rows: int, cols: int, time_cost: int = 1) -> None:
        """Move the counters past the round just issued."""
        p = self.phase
        if p is Phase.Bootstrap:
            self.round += 1
            if self.round == 2 * FULL_ROUNDS:
                self._enter(Phase.Setup0)
        elif p in (Phase.Setup0, Phase.Setup1):
            self.col += 1
            if self.col == cols:
                self._enter(Phase.Setup1 if p is Phase.Setup0 else Phase.Setup2)
                self.row0 = 2 if p is Phase.Setup1 else 1
        elif p is Phase.Setup2:
            self.col += 1
            if self.col == cols:
                self.col = 0
                self.row0 += 1
                if self.row0 == rows:
                    self._enter(Phase.Wandering)
                    self.row0 = 0
        elif p is Phase.Wandering:
            self.col += 1
            if self.col == cols:
                self.col = 0
                self.row0 += 1
                if self.row0 == rows * time_cost:
                    self._enter(Phase.WrapAbsorb)
        elif p is Phase.WrapAbsorb:
            self.round += 1
            if self.round == FULL_ROUNDS:
                self._enter(Phase.Done)
        else:
            raise RuntimeError("FSM already finished")


def control(fsm: FsmState, lsw_state: int, amap: AddressMap, ctx: int, pipelined: bool) -> RoundOp:
    """Decode the FSM into the round's port requests.

    ``lsw_state`` is word 0 of the duplex state before this round; the
    wandering phase derives the pseudorandom row from it at column 0.
    """
    R, C = amap.rows, amap.cols
    cell = lambda r, c: amap.cell(ctx, r, c)  # noqa: E731
    zero, pad = amap.zero, amap.pad
    p = fsm.phase

    if p is Phase.Bootstrap:
        if fsm.round == 0:
            return RoundOp(p, input=Input.PWD)
        return RoundOp(p, qa=pad if fsm.round == FULL_ROUNDS else zero, qb=zero)

    if p is Phase.Setup0:
        return RoundOp(p, qa=zero, qb=zero, qc=zero, w0=cell(0, C - 1 - fsm.col), w0_data=WriteData.QC_XOR_STATE)

    if p is Phase.Setup1:
        src = cell(0, fsm.col)
        return RoundOp(p, qa=src, qb=zero, qc=src, w0=cell(1, C - 1 - fsm.col), w0_data=WriteData.QC_XOR_OUT)

    if p is Phase.Setup2:
        row0, col = fsm.row0, fsm.col
        fsm.prev0, fsm.row1 = row0 - 1, row0 - 2
        prev, rev = cell(fsm.prev0, col), cell(fsm.row1, col)
        return RoundOp(
            p, qa=prev, qb=rev, qc=prev, qd=rev if pipelined else None,
            w0=cell(row0, C - 1 - col), w0_data=WriteData.QC_XOR_OUT,
            w1=rev, w1_data=WriteData.OPERAND_XOR_ROT,
        )

    if p is Phase.Wandering:
        row0 = fsm.row0 % R
        if fsm.col == 0:
            fsm.prev0 = (row0 - 1) % R
            fsm.row1 = lsw_state % R
        col = fsm.col
        prev, rev, det = cell(fsm.prev0, col), cell(fsm.row1, col), cell(row0, col)
        if row0 == fsm.row1:
            # First XOR block's write port is disabled; its result feeds the second.
            return RoundOp(p, qa=prev, qb=rev, qc=det, w1=rev, w1_data=WriteData.CHAINED, collision=True)
        return RoundOp(
            p, qa=prev, qb=rev, qc=det, qd=rev if pipelined else None,
            w0=det, w0_data=WriteData.QC_XOR_OUT,
            w1=rev, w1_data=WriteData.OPERAND_XOR_ROT,
        )

    if p is Phase.WrapAbsorb:
        last = fsm.round == FULL_ROUNDS - 1
        if fsm.round == 0:
            return RoundOp(p, qa=cell(fsm.row1, 0), qb=zero)
        return RoundOp(p, qa=zero, qb=zero, last=last)

    raise RuntimeError("no rounds left to issue")
