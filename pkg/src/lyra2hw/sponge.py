"""Duplex sponge over the BLAKE2b round: 768-bit bitrate, 256-bit capacity.

States are immutable values. Each operation returns the successor state, and
every state carries a running count of round applications so callers can
account for cycles without global instrumentation.
"""

import struct
from dataclasses import dataclass, field
from typing import Sequence, Tuple

from .blake2b import MASK64, STATE_WORDS, blake2b_iv, permute

BITRATE_BITS = 768
CAPACITY_BITS = 256
BITRATE_WORDS = BITRATE_BITS // 64
BLOCK512_WORDS = 8
DIGEST_WORDS = 4
FULL_ROUNDS = 12

Block768 = Tuple[int, ...]
Block512 = Tuple[int, ...]
Digest256 = Tuple[int, ...]

ZERO_BLOCK768: Block768 = (0,) * BITRATE_WORDS


@dataclass(frozen=True)
class DuplexState:
    words: Tuple[int, ...]
    rounds_applied: int = field(default=0, compare=False)

    def __post_init__(self):
        if len(self.words) != STATE_WORDS:
            raise ValueError(f"duplex state must have {STATE_WORDS} words")

    bitrate_bits = BITRATE_BITS
    capacity_bits = CAPACITY_BITS

    @property
    def bitrate(self) -> Block768:
        return self.words[:BITRATE_WORDS]

    @property
    def capacity(self) -> Tuple[int, ...]:
        return self.words[BITRATE_WORDS:]

    def advanced(self, words: Sequence[int], rounds: int) -> "DuplexState":
        return DuplexState(tuple(words), self.rounds_applied + rounds)


def new_duplex() -> DuplexState:
    """Zero lower half, BLAKE2b IV in words 8..15."""
    return DuplexState((0,) * 8 + blake2b_iv())


def _xor_into(words: Tuple[int, ...], block: Sequence[int]) -> list:
    v = list(words)
    for i, x in enumerate(block):
        v[i] ^= x
    return v


def _check_len(block: Sequence[int], n: int, name: str) -> None:
    if len(block) != n:
        raise ValueError(f"{name} must have {n} words, got {len(block)}")


def absorb_block512(state: DuplexState, block: Block512) -> DuplexState:
    """XOR 512 bits into words 0..7 and run the full 12-round permutation."""
    _check_len(block, BLOCK512_WORDS, "Block512")
    v = _xor_into(state.words, block)
    return state.advanced(permute(v, FULL_ROUNDS), FULL_ROUNDS)


def absorb_block(state: DuplexState, block: Block768, rounds: int = FULL_ROUNDS) -> DuplexState:
    """Absorb a full bitrate block; the output is discarded."""
    return duplex_b(state, block, rounds)[0]


def duplex_b(state: DuplexState, block: Block768, rounds: int) -> Tuple[DuplexState, Block768]:
    _check_len(block, BITRATE_WORDS, "Block768")
    v = _xor_into(state.words, block)
    nxt = state.advanced(permute(v, rounds), rounds)
    return nxt, nxt.bitrate


def squeeze_b(state: DuplexState, rounds: int) -> Tuple[DuplexState, Block768]:
    """Read the bitrate, then permute. The output never depends on ``rounds``."""
    out = state.bitrate
    return state.advanced(permute(state.words, rounds), rounds), out


def squeeze_k(state: DuplexState) -> Digest256:
    # k = 256 < b, so the digest comes straight from the state.
    return state.words[:DIGEST_WORDS]


def pad_params(params, pwd_len_bytes: int, key_len_bytes: int) -> Block512:
    """Encode ``len(K) || len(pwd) || len(salt) || T || R || C`` with 10*1 padding.

    The salt is the password in Lyra2REv2, so its length is ``pwd_len_bytes``.
    """
    fields = (key_len_bytes, pwd_len_bytes, pwd_len_bytes, params.T, params.R, params.C)
    for x in fields:
        if not 0 <= x <= MASK64:
            raise ValueError(f"parameter {x} does not fit in 64 bits")
    raw = bytearray(struct.pack("<6Q", *fields) + bytes(16))
    raw[48] = 0x80
    raw[63] |= 0x01
    return bytes_to_words(bytes(raw))


def words_to_bytes(words: Sequence[int]) -> bytes:
    return struct.pack(f"<{len(words)}Q", *words)


def bytes_to_words(data: bytes) -> Tuple[int, ...]:
    if len(data) % 8:
        raise ValueError("byte length must be a multiple of 8")
    return struct.unpack(f"<{len(data) // 8}Q", data)
