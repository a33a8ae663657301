"""Cycle-accurate model of the iterative and pipelined Lyra2 cores.

One core clock cycle issues one round for one hash context. With a pipeline
of depth D there are D contexts, context ``i`` issuing on cycles ``t % D == i``.
A round issued at cycle ``t`` leaves the last stage at the end of cycle
``t + D - 1``; that is when ``qc``/``qd`` are read and ``w0``/``w1`` commit,
one cycle before the same context issues again. The iterative core is the
D = 1 case: issue, XOR reads and write-back all fall in the same cycle.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, List, Optional, Sequence

from ..blake2b import permute
from ..lyra2 import LYRA2REV2, PWD_BYTES, Lyra2Params, rot_w, wordwise_add, xor_block
from ..sponge import BITRATE_WORDS, DuplexState, bytes_to_words, new_duplex, pad_params, words_to_bytes
from .bram import AddressMap, BramModel, CrossContextWriteError
from .fsm import FsmState, Input, Phase, RoundOp, WriteData, control
from .trace import CycleRecord, PortAccess, SimTrace

PIPELINE_STAGES = 8


@dataclass
class HashContext:
    ctx: int
    base: int
    duplex: DuplexState = field(default_factory=new_duplex)
    fsm: FsmState = field(default_factory=FsmState)
    pwd: Optional[bytes] = None
    job: Optional[int] = None
    start_cycle: int = 0
    busy: bool = False  # a round of this context is in flight


@dataclass
class _InFlight:
    ctx: HashContext
    op: RoundOp
    issue_cycle: int
    pre_bitrate: tuple
    result: tuple
    qb_data: Optional[tuple]


@dataclass
class Completion:
    job: int
    ctx: int
    start_cycle: int
    end_cycle: int

    @property
    def latency(self) -> int:
        return self.end_cycle - self.start_cycle + 1


@dataclass
class SimResult:
    digests: List[bytes]
    depth: int
    completions: List[Completion]
    total_cycles: int
    trace: SimTrace
    amap: AddressMap
    phase_cycles: Dict[str, int]
    rounds_per_hash: int

    @property
    def digest(self) -> bytes:
        return self.digests[0]

    @property
    def latency_cycles(self) -> int:
        lat = {c.latency for c in self.completions}
        if len(lat) != 1:
            raise RuntimeError(f"latency varies across hashes: {sorted(lat)}")
        return lat.pop()

    @property
    def cycle_count(self) -> int:
        # Issue slots spent per hash: the iterative cycles/hash figure.
        return self.rounds_per_hash

    @property
    def steady_interval_cycles(self) -> int:
        """Cycles between successive hashes on the same context.

        Measured from back-to-back batches when there are some; otherwise a
        context is free again exactly when its hash completes.
        """
        by_ctx: Dict[int, List[Completion]] = {}
        for c in self.completions:
            by_ctx.setdefault(c.ctx, []).append(c)
        gaps = {b.end_cycle - a.end_cycle for cs in by_ctx.values() for a, b in zip(cs, cs[1:])}
        if not gaps:
            return self.latency_cycles
        if len(gaps) != 1:
            raise RuntimeError(f"uneven steady-state interval: {sorted(gaps)}")
        return gaps.pop()

    @property
    def hashes_per_interval(self) -> int:
        return self.depth


def _input_block(pwd: bytes) -> tuple:
    return bytes_to_words(pwd + pwd) + (0,) * (BITRATE_WORDS - 8)


def simulate(
    pwds: Sequence[bytes],
    depth: int,
    params: Lyra2Params = LYRA2REV2,
    record: bool = True,
    on_cycle: Optional[Callable[[int, BramModel], None]] = None,
) -> SimResult:
    """Run ``pwds`` through a core with a ``depth``-stage round pipeline.

    Input ``j`` is hashed by context ``j % depth``; each context takes its
    next input as soon as the previous one completes.
    """
    for pwd in pwds:
        if len(pwd) != PWD_BYTES:
            raise ValueError(f"input must be exactly {PWD_BYTES} bytes, got {len(pwd)}")
    if depth < 1:
        raise ValueError("pipeline depth must be at least 1")

    R, C = params.R, params.C
    amap = AddressMap(depth, R, C)
    pad = pad_params(params, PWD_BYTES, params.key_bytes) + (0,) * (BITRATE_WORDS - 8)
    bram = BramModel(amap.size, {amap.pad: pad})
    pipelined = depth > 1

    contexts = [HashContext(i, i * amap.region_size) for i in range(depth)]
    queues: List[Deque[int]] = [deque(range(i, len(pwds), depth)) for i in range(depth)]
    digests: List[Optional[bytes]] = [None] * len(pwds)
    completions: List[Completion] = []
    inflight: Deque[_InFlight] = deque()
    trace = SimTrace()
    phase_cycles: Counter = Counter()

    def load(hc: HashContext, cycle: int) -> None:
        if queues[hc.ctx]:
            hc.job = queues[hc.ctx].popleft()
            hc.pwd = pwds[hc.job]
            hc.duplex = new_duplex()
            hc.fsm = FsmState()
            hc.start_cycle = cycle
        else:
            hc.job = None

    for hc in contexts:
        load(hc, hc.ctx)

    cycle = 0
    while any(hc.job is not None for hc in contexts) or inflight:
        reads: List[PortAccess] = []
        writes: List[PortAccess] = []
        issuer = contexts[cycle % depth]
        issued_phase = None

        if issuer.job is not None and not issuer.busy:
            op = control(issuer.fsm, issuer.duplex.words[0], amap, issuer.ctx, pipelined)
            issued_phase = op.phase.value
            if issuer.job == 0:
                phase_cycles[issued_phase] += 1
            qb_data = None
            if op.input is Input.PWD:
                block = _input_block(issuer.pwd)
            else:
                a = bram.read("qa", op.qa)
                qb_data = bram.read("qb", op.qb)
                reads += [PortAccess("qa", op.qa, issuer.ctx), PortAccess("qb", op.qb, issuer.ctx)]
                block = wordwise_add(a, qb_data)
            pre = issuer.duplex.words
            v = list(pre)
            for i, x in enumerate(block):
                v[i] ^= x
            inflight.append(_InFlight(issuer, op, cycle, pre[:BITRATE_WORDS], permute(v, 1), qb_data))
            issuer.busy = True
            issuer.fsm.advance(R, C, params.T)

        stages: List[Optional[int]] = [None] * depth
        for f in inflight:
            stages[cycle - f.issue_cycle] = f.ctx.ctx

        if inflight and inflight[0].issue_cycle == cycle - (depth - 1):
            fl = inflight.popleft()
            hc, op = fl.ctx, fl.op
            out = fl.result[:BITRATE_WORDS]
            qc = qd = None
            if op.qc is not None:
                qc = bram.read("qc", op.qc)
                reads.append(PortAccess("qc", op.qc, hc.ctx))
            if op.qd is not None:
                qd = bram.read("qd", op.qd)
                reads.append(PortAccess("qd", op.qd, hc.ctx))
            xor1 = None
            if op.w0_data is WriteData.QC_XOR_STATE:
                xor1 = xor_block(qc, fl.pre_bitrate)
            elif qc is not None:
                xor1 = xor_block(qc, out)
            if op.w0 is not None:
                bram.write("w0", op.w0, xor1)
                writes.append(PortAccess("w0", op.w0, hc.ctx))
            if op.w1 is not None:
                if op.w1_data is WriteData.CHAINED:
                    operand = xor1
                else:
                    operand = qd if pipelined else fl.qb_data
                bram.write("w1", op.w1, xor_block(operand, rot_w(out, params.omega)))
                writes.append(PortAccess("w1", op.w1, hc.ctx))
            hc.duplex = hc.duplex.advanced(fl.result, 1)
            hc.busy = False
            if hc.fsm.phase is Phase.Done:
                digests[hc.job] = words_to_bytes(hc.duplex.words[:4])
                completions.append(Completion(hc.job, hc.ctx, hc.start_cycle, cycle))
                load(hc, cycle + 1)

        if len({w.ctx for w in writes}) > 1:
            raise CrossContextWriteError(f"cycle {cycle}: writes from several contexts")
        if on_cycle is not None:
            on_cycle(cycle, bram)
        bram.tick()
        if record:
            trace.append(CycleRecord(
                cycle,
                issuer.ctx if issued_phase else None,
                issued_phase,
                tuple(reads),
                tuple(writes),
                tuple(stages),
                tuple(h.fsm.phase.value if h.job is not None else "Idle" for h in contexts),
            ))
        cycle += 1

    if not bram.coherent():
        raise RuntimeError("RAM replicas diverged")
    return SimResult(
        digests=digests,
        depth=depth,
        completions=completions,
        total_cycles=cycle,
        trace=trace,
        amap=amap,
        phase_cycles=dict(phase_cycles),
        rounds_per_hash=params.rounds_per_hash,
    )


def sim_iterative(pwd: bytes, params: Lyra2Params = LYRA2REV2, record: bool = True) -> SimResult:
    """One round per cycle, one hash at a time."""
    return simulate([pwd], 1, params, record)


def sim_pipelined(
    pwds: Sequence[bytes],
    params: Lyra2Params = LYRA2REV2,
    record: bool = True,
    stages: int = PIPELINE_STAGES,
) -> SimResult:
    """Eight interleaved contexts over an eight-stage round; batches of eight run back to back."""
    if not pwds or len(pwds) % stages:
        raise ValueError(f"pipelined core needs a multiple of {stages} inputs, got {len(pwds)}")
    return simulate(pwds, stages, params, record)
