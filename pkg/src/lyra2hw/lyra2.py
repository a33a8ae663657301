"""Lyra2 as instantiated in Lyra2REv2: T=1, R=4, C=4, k=256, one-round reduced duplex."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .blake2b import MASK64
from .sponge import (
    BITRATE_BITS,
    BITRATE_WORDS,
    FULL_ROUNDS,
    Block768,
    Digest256,
    DuplexState,
    absorb_block,
    absorb_block512,
    bytes_to_words,
    duplex_b,
    new_duplex,
    pad_params,
    squeeze_b,
    squeeze_k,
    words_to_bytes,
)

PWD_BYTES = 32


@dataclass(frozen=True)
class Lyra2Params:
    T: int = 1
    R: int = 4
    C: int = 4
    k: int = 256
    rho: int = 1
    omega: int = 64
    b: int = BITRATE_BITS

    def __post_init__(self):
        if self.T < 1 or self.R < 2 or self.C < 1:
            raise ValueError("need T >= 1, R >= 2, C >= 1")
        if self.b % self.omega or self.omega % 64:
            raise ValueError("omega must be a multiple of 64 dividing b")
        if self.k > self.b or self.k % 64:
            raise ValueError("k must be a multiple of 64 no larger than b")

    @property
    def key_bytes(self) -> int:
        return self.k // 8

    @property
    def cell_bytes(self) -> int:
        return self.b // 8

    @property
    def matrix_bytes(self) -> int:
        return self.R * self.C * self.cell_bytes

    @property
    def rounds_per_hash(self) -> int:
        # bootstrap + setup + wandering + wrap-up
        return 2 * FULL_ROUNDS + self.rho * self.R * self.C + self.rho * self.R * self.T * self.C + FULL_ROUNDS


LYRA2REV2 = Lyra2Params()


class MemoryMatrix:
    """R x C grid of 768-bit cells, indexed ``M[row][col]``."""

    def __init__(self, rows: int = 4, cols: int = 4):
        self.rows = rows
        self.cols = cols
        self.cells: List[List[Block768]] = [[(0,) * BITRATE_WORDS] * cols for _ in range(rows)]

    def __getitem__(self, row: int) -> List[Block768]:
        return self.cells[row]

    def copy(self) -> "MemoryMatrix":
        m = MemoryMatrix(self.rows, self.cols)
        m.cells = [list(r) for r in self.cells]
        return m

    @property
    def nbytes(self) -> int:
        return sum(len(cell) * 8 for row in self.cells for cell in row)

    def to_bytes(self) -> bytes:
        return b"".join(words_to_bytes(cell) for row in self.cells for cell in row)

    def __eq__(self, other):
        return isinstance(other, MemoryMatrix) and self.cells == other.cells


def wordwise_add(x: Block768, y: Block768) -> Block768:
    return tuple((a + b) & MASK64 for a, b in zip(x, y))


def xor_block(x: Block768, y: Block768) -> Block768:
    return tuple(a ^ b for a, b in zip(x, y))


def rot_w(x: Block768, omega: int = 64) -> Block768:
    """Rotate a 768-bit block left by ``omega`` bits (whole words).

    Word 0 of the result is the former top word.
    """
    n = (omega // 64) % len(x)
    return tuple(x[-n:] + x[:-n]) if n else tuple(x)


def lsw(x: Block768) -> int:
    return x[0]


def _check_pwd(pwd: bytes) -> None:
    if len(pwd) != PWD_BYTES:
        raise ValueError(f"input must be exactly {PWD_BYTES} bytes, got {len(pwd)}")


def bootstrap(state: DuplexState, pwd: bytes, params: Lyra2Params = LYRA2REV2) -> DuplexState:
    """Absorb ``pwd || pwd`` and then the padded parameter block, 12 rounds each."""
    _check_pwd(pwd)
    state = absorb_block512(state, bytes_to_words(pwd + pwd))
    return absorb_block512(state, pad_params(params, len(pwd), params.key_bytes))


def setup(
    state: DuplexState,
    M: Optional[MemoryMatrix] = None,
    params: Lyra2Params = LYRA2REV2,
) -> Tuple[DuplexState, MemoryMatrix, Block768]:
    """Fill the matrix row by row, each row from its last column to its first.

    ``M`` is updated in place (a fresh matrix is created when omitted).
    Returns the successor state, the matrix and the last duplex output.
    """
    R, C, rho = params.R, params.C, params.rho
    if M is None:
        M = MemoryMatrix(R, C)

    for col in range(C):
        state, out = squeeze_b(state, rho)
        M[0][C - 1 - col] = out

    rand = None
    for col in range(C):
        state, rand = duplex_b(state, M[0][col], rho)
        M[1][C - 1 - col] = xor_block(M[0][col], rand)

    for row0 in range(2, R):
        prev0 = row0 - 1
        row1 = row0 - 2
        for col in range(C):
            state, rand = duplex_b(state, wordwise_add(M[row1][col], M[prev0][col]), rho)
            M[row0][C - 1 - col] = xor_block(M[prev0][col], rand)
            M[row1][col] = xor_block(M[row1][col], rot_w(rand, params.omega))
    return state, M, rand


def wandering(
    state: DuplexState,
    M: MemoryMatrix,
    last_rand: Block768,
    params: Lyra2Params = LYRA2REV2,
    visits: Optional[list] = None,
) -> Tuple[DuplexState, MemoryMatrix, int]:
    """Revisit every row once alongside a pseudorandom row picked from ``rand``.

    When ``visits`` is given, one ``(row0, prev0, row1)`` tuple is appended per row.
    """
    R, C, rho = params.R, params.C, params.rho
    rand = last_rand
    row1 = 0
    for step in range(R * params.T):
        row0 = step % R
        prev0 = (row0 - 1) % R
        row1 = lsw(rand) % R
        if visits is not None:
            visits.append((row0, prev0, row1))
        for col in range(C):
            state, rand = duplex_b(state, wordwise_add(M[row1][col], M[prev0][col]), rho)
            M[row0][col] = xor_block(M[row0][col], rand)
            # Sequential on purpose: with row0 == row1 this sees the update above.
            M[row1][col] = xor_block(M[row1][col], rot_w(rand, params.omega))
    return state, M, row1


def wrapup(state: DuplexState, M: MemoryMatrix, row1_last: int) -> Tuple[DuplexState, Digest256]:
    state = absorb_block(state, M[row1_last][0], FULL_ROUNDS)
    return state, squeeze_k(state)


@dataclass
class Lyra2Run:
    """Everything observable about one hash, for tests and reports."""

    digest: bytes
    phase_rounds: dict
    matrix_after_setup: MemoryMatrix
    matrix_after_wandering: MemoryMatrix
    visits: List[Tuple[int, int, int]] = field(default_factory=list)
    state_after_bootstrap: Tuple[int, ...] = ()
    row1_last: int = 0

    @property
    def total_rounds(self) -> int:
        return sum(self.phase_rounds.values())

    @property
    def collisions(self) -> int:
        return sum(1 for row0, _, row1 in self.visits if row0 == row1)


def lyra2_run(pwd: bytes, params: Lyra2Params = LYRA2REV2) -> Lyra2Run:
    _check_pwd(pwd)
    state = bootstrap(new_duplex(), pwd, params)
    boot = state.rounds_applied
    state_after_bootstrap = state.words
    state, M, rand = setup(state, None, params)
    after_setup = M.copy()
    n_setup = state.rounds_applied - boot
    visits: list = []
    state, M, row1 = wandering(state, M, rand, params, visits)
    n_wander = state.rounds_applied - boot - n_setup
    state, digest = wrapup(state, M, row1)
    return Lyra2Run(
        digest=words_to_bytes(digest),
        phase_rounds={
            "bootstrap": boot,
            "setup": n_setup,
            "wandering": n_wander,
            "wrapup": state.rounds_applied - boot - n_setup - n_wander,
        },
        matrix_after_setup=after_setup,
        matrix_after_wandering=M,
        visits=visits,
        state_after_bootstrap=state_after_bootstrap,
        row1_last=row1,
    )


def lyra2_hash(pwd: bytes, params: Lyra2Params = LYRA2REV2) -> bytes:
    """Hash a 32-byte input to a 32-byte digest."""
    _check_pwd(pwd)
    state = bootstrap(new_duplex(), pwd, params)
    state, M, rand = setup(state, None, params)
    state, M, row1 = wandering(state, M, rand, params)
    _, digest = wrapup(state, M, row1)
    return words_to_bytes(digest)
