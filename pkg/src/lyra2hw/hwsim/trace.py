"""Per-cycle simulation records, text export and the port-schedule audit."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .bram import MAX_READS, MAX_WRITES, READ_PORTS, WRITE_PORTS, AddressMap


class PortAccess(NamedTuple):
    port: str
    addr: int
    ctx: Optional[int] = None


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    ctx: Optional[int]
    fsm: Optional[str]
    reads: Tuple[PortAccess, ...] = ()
    writes: Tuple[PortAccess, ...] = ()
    stages: Tuple[Optional[int], ...] = ()
    fsm_states: Tuple[str, ...] = ()

    def port(self, name: str) -> Optional[int]:
        for acc in self.reads + self.writes:
            if acc.port == name:
                return acc.addr
        return None

    def to_line(self) -> str:
        def fmt(x):
            return "-" if x is None else str(x)

        parts = [f"cycle={self.cycle}", f"ctx={fmt(self.ctx)}", f"fsm={fmt(self.fsm)}"]
        parts += [f"{p}={fmt(self.port(p))}" for p in READ_PORTS + WRITE_PORTS]
        return " ".join(parts)


@dataclass
class SimTrace:
    records: List[CycleRecord] = field(default_factory=list)

    def append(self, rec: CycleRecord) -> None:
        if self.records and rec.cycle != self.records[-1].cycle + 1:
            raise ValueError("trace records must be consecutive cycles")
        self.records.append(rec)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def lines(self) -> Iterable[str]:
        return (r.to_line() for r in self.records)

    def export(self, path) -> None:
        with open(path, "w") as f:
            for line in self.lines():
                f.write(line + "\n")


def parse_trace(lines: Iterable[str]) -> SimTrace:
    """Rebuild a trace from exported text. Port owners are not part of the format."""
    trace = SimTrace()
    for line in lines:
        if not line.strip():
            continue
        kv = dict(tok.split("=", 1) for tok in line.split())

        def val(key):
            v = kv[key]
            return None if v == "-" else v

        reads = tuple(PortAccess(p, int(kv[p])) for p in READ_PORTS if val(p) is not None)
        writes = tuple(PortAccess(p, int(kv[p])) for p in WRITE_PORTS if val(p) is not None)
        ctx = val("ctx")
        trace.append(CycleRecord(int(kv["cycle"]), None if ctx is None else int(ctx), val("fsm"), reads, writes))
    return trace


@dataclass(frozen=True)
class Violation:
    cycle: int
    kind: str
    detail: str


def schedule_check(trace: Iterable[CycleRecord], amap: Optional[AddressMap] = None) -> List[Violation]:
    """List every cycle that breaks the 4-read / 2-write budget or the ownership rules.

    Kinds: ``read-overflow``, ``write-overflow``, ``write-collision``,
    ``cross-context-write`` and, when ``amap`` is given, ``isolation`` for a
    context touching another context's matrix region or writing a constant.
    """
    out = []
    for rec in trace:
        if len(rec.reads) > MAX_READS:
            out.append(Violation(rec.cycle, "read-overflow", f"{len(rec.reads)} reads"))
        if len(rec.writes) > MAX_WRITES:
            out.append(Violation(rec.cycle, "write-overflow", f"{len(rec.writes)} writes"))
        dup = [a for a, n in Counter(w.addr for w in rec.writes).items() if n > 1]
        if dup:
            out.append(Violation(rec.cycle, "write-collision", f"addresses {dup}"))
        writers = {w.ctx for w in rec.writes if w.ctx is not None}
        if len(writers) > 1:
            out.append(Violation(rec.cycle, "cross-context-write", f"contexts {sorted(writers)}"))
        if amap is None:
            continue
        for acc in rec.reads + rec.writes:
            if acc.ctx is None:
                continue
            owner = amap.owner(acc.addr)
            is_write = acc.port in WRITE_PORTS
            if (owner is None and is_write) or (owner is not None and owner != acc.ctx):
                out.append(Violation(rec.cycle, "isolation", f"ctx {acc.ctx} {acc.port} at {acc.addr}"))
    return out
