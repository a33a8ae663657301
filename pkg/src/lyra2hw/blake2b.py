"""BLAKE2b G-function and the bare round permutation used by the Lyra2 sponge.

Lyra2 keeps only the mixing part of BLAKE2b: no message words, no sigma
schedule and no round constants. A round is four column G-blocks followed by
four diagonal G-blocks over a 16-word state.
"""

from typing import List, Sequence, Tuple

MASK64 = 0xFFFFFFFFFFFFFFFF

STATE_WORDS = 16

BLAKE2B_IV = (
    0x6A09E667F3BCC908, 0xBB67AE8584CAA73B,
    0x3C6EF372FE94F82B, 0xA54FF53A5F1D36F1,
    0x510E527FADE682D1, 0x9B05688C2B3E6C1F,
    0x1F83D9ABFB41BD6B, 0x5BE0CD19137E2179,
)

COLUMNS = ((0, 4, 8, 12), (1, 5, 9, 13), (2, 6, 10, 14), (3, 7, 11, 15))
DIAGONALS = ((0, 5, 10, 15), (1, 6, 11, 12), (2, 7, 8, 13), (3, 4, 9, 14))

State = Tuple[int, ...]


def rotr64(x: int, n: int) -> int:
    return ((x >> n) | (x << (64 - n))) & MASK64


def rotl64(x: int, n: int) -> int:
    return ((x << n) | (x >> (64 - n))) & MASK64


def g_function(a: int, b: int, c: int, d: int) -> Tuple[int, int, int, int]:
    """Mix four 64-bit words: add, xor, rotate right by 32, 24, 16, 63."""
    a = (a + b) & MASK64
    d = rotr64(d ^ a, 32)
    c = (c + d) & MASK64
    b = rotr64(b ^ c, 24)
    a = (a + b) & MASK64
    d = rotr64(d ^ a, 16)
    c = (c + d) & MASK64
    b = rotr64(b ^ c, 63)
    return a, b, c, d


def inverse_g_function(a: int, b: int, c: int, d: int) -> Tuple[int, int, int, int]:
    """Undo :func:`g_function` step by step, last step first."""
    b = rotl64(b, 63) ^ c
    c = (c - d) & MASK64
    d = rotl64(d, 16) ^ a
    a = (a - b) & MASK64
    b = rotl64(b, 24) ^ c
    c = (c - d) & MASK64
    d = rotl64(d, 32) ^ a
    a = (a - b) & MASK64
    return a, b, c, d


def _round_inplace(v: List[int]) -> None:
    # Unrolled: this is the hot loop of every hash and every simulated cycle.
    for i0, i1, i2, i3 in COLUMNS + DIAGONALS:
        a = v[i0]
        b = v[i1]
        c = v[i2]
        d = v[i3]
        a = (a + b) & MASK64
        d ^= a
        d = ((d >> 32) | (d << 32)) & MASK64
        c = (c + d) & MASK64
        b ^= c
        b = ((b >> 24) | (b << 40)) & MASK64
        a = (a + b) & MASK64
        d ^= a
        d = ((d >> 16) | (d << 48)) & MASK64
        c = (c + d) & MASK64
        b ^= c
        b = ((b >> 63) | (b << 1)) & MASK64
        v[i0] = a
        v[i1] = b
        v[i2] = c
        v[i3] = d


def blake2b_round(state: Sequence[int]) -> State:
    """One round: G over the four columns, then over the four diagonals."""
    if len(state) != STATE_WORDS:
        raise ValueError(f"state must have {STATE_WORDS} words, got {len(state)}")
    v = list(state)
    _round_inplace(v)
    return tuple(v)


def inverse_round(state: Sequence[int]) -> State:
    if len(state) != STATE_WORDS:
        raise ValueError(f"state must have {STATE_WORDS} words, got {len(state)}")
    v = list(state)
    for quad in DIAGONALS + COLUMNS:
        out = inverse_g_function(*(v[i] for i in quad))
        for i, x in zip(quad, out):
            v[i] = x
    return tuple(v)


def permute(state: Sequence[int], rounds: int) -> State:
    """Apply :func:`blake2b_round` ``rounds`` times (1 reduced, 12 full)."""
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    if len(state) != STATE_WORDS:
        raise ValueError(f"state must have {STATE_WORDS} words, got {len(state)}")
    v = list(state)
    for _ in range(rounds):
        _round_inplace(v)
    return tuple(v)


def blake2b_iv() -> Tuple[int, ...]:
    return BLAKE2B_IV
