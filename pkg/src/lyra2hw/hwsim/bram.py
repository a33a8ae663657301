"""Replicated, double-pumped block RAM holding the memory matrices and two constants.

Two copies of a true dual-port RAM, each run at twice the core clock, give four
read ports and two write ports per core cycle. Reads on ``qa``/``qb`` are
served by replica 0 and ``qc``/``qd`` by replica 1; every write goes to both
copies so they stay coherent. Reads return the contents at the start of the
cycle and writes land when the cycle ends.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from ..sponge import BITRATE_WORDS, Block768

READ_PORTS = ("qa", "qb", "qc", "qd")
WRITE_PORTS = ("w0", "w1")
MAX_READS = len(READ_PORTS)
MAX_WRITES = len(WRITE_PORTS)

ZERO = (0,) * BITRATE_WORDS


class SchedulingError(RuntimeError):
    """A cycle asked the RAM for more than it can deliver."""


class PortOverflowError(SchedulingError):
    pass


class WriteCollisionError(SchedulingError):
    pass


class CrossContextWriteError(SchedulingError):
    pass


class AddressMap:
    """Context ``i`` owns cells ``i*R*C .. (i+1)*R*C - 1``; the constants follow all regions.

    With a single context this puts the all-zero vector at 16 and
    ``pad(params)`` at 17.
    """

    def __init__(self, contexts: int = 1, rows: int = 4, cols: int = 4):
        self.contexts = contexts
        self.rows = rows
        self.cols = cols
        self.region_size = rows * cols
        self.zero = contexts * self.region_size
        self.pad = self.zero + 1
        self.size = self.pad + 1

    def cell(self, ctx: int, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"cell ({row}, {col}) outside the matrix")
        return ctx * self.region_size + row * self.cols + col

    def owner(self, addr: int) -> Optional[int]:
        """Context owning ``addr``, or None for the shared constants."""
        if addr >= self.zero:
            return None
        return addr // self.region_size

    def is_constant(self, addr: int) -> bool:
        return addr in (self.zero, self.pad)


class BramModel:
    def __init__(self, size: int, constants: Optional[Dict[int, Block768]] = None):
        self.size = size
        self.replicas: List[List[Block768]] = [[ZERO] * size, [ZERO] * size]
        for addr, block in (constants or {}).items():
            self._store(addr, tuple(block))
        self._reads: Dict[str, int] = {}
        self._writes: Dict[str, Tuple[int, Block768]] = {}
        self.cycles = 0

    def _store(self, addr: int, block: Block768) -> None:
        self._check_addr(addr)
        if len(block) != BITRATE_WORDS:
            raise ValueError("RAM cells are 768 bits wide")
        for replica in self.replicas:
            replica[addr] = block

    def _check_addr(self, addr: int) -> None:
        if not 0 <= addr < self.size:
            raise IndexError(f"address {addr} outside RAM of depth {self.size}")

    def read(self, port: str, addr: int) -> Block768:
        if port not in READ_PORTS:
            raise PortOverflowError(f"no read port named {port!r}")
        if port in self._reads:
            raise PortOverflowError(f"read port {port} used twice in cycle {self.cycles}")
        self._check_addr(addr)
        self._reads[port] = addr
        return self.replicas[READ_PORTS.index(port) // 2][addr]

    def write(self, port: str, addr: int, block: Block768) -> None:
        if port not in WRITE_PORTS:
            raise PortOverflowError(f"no write port named {port!r}")
        if port in self._writes:
            raise PortOverflowError(f"write port {port} used twice in cycle {self.cycles}")
        self._check_addr(addr)
        if any(a == addr for a, _ in self._writes.values()):
            raise WriteCollisionError(f"two writes to address {addr} in cycle {self.cycles}")
        self._writes[port] = (addr, tuple(block))

    def tick(self) -> Tuple[Dict[str, int], Dict[str, int]]:
        """Commit staged writes and return the cycle's ``(reads, writes)`` address maps."""
        for addr, block in self._writes.values():
            self._store(addr, block)
        reads = self._reads
        writes = {p: a for p, (a, _) in self._writes.items()}
        self._reads, self._writes = {}, {}
        self.cycles += 1
        return reads, writes

    def coherent(self) -> bool:
        return self.replicas[0] == self.replicas[1]

    def peek(self, addr: int) -> Block768:
        self._check_addr(addr)
        return self.replicas[0][addr]


def bram_cycle(
    model: BramModel,
    reads: Sequence[int] = (),
    writes: Sequence[Tuple[int, Block768]] = (),
) -> List[Block768]:
    """Serve one core cycle: reads go to ``qa..qd`` in order, writes to ``w0``/``w1``."""
    if len(reads) > MAX_READS:
        raise PortOverflowError(f"{len(reads)} reads requested, only {MAX_READS} ports")
    if len(writes) > MAX_WRITES:
        raise PortOverflowError(f"{len(writes)} writes requested, only {MAX_WRITES} ports")
    out = [model.read(port, addr) for port, addr in zip(READ_PORTS, reads)]
    for port, (addr, block) in zip(WRITE_PORTS, writes):
        model.write(port, addr, block)
    model.tick()
    return out
