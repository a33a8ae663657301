import random

import pytest
from hypothesis import given, strategies as st

from lyra2hw.blake2b import BLAKE2B_IV, blake2b_round, permute
from lyra2hw.lyra2 import LYRA2REV2
from lyra2hw.sponge import (
    ZERO_BLOCK768,
    DuplexState,
    absorb_block512,
    bytes_to_words,
    duplex_b,
    new_duplex,
    pad_params,
    squeeze_b,
    squeeze_k,
    words_to_bytes,
)

from conftest import hexwords

word = st.integers(0, 2**64 - 1)
states = st.lists(word, min_size=16, max_size=16).map(lambda w: DuplexState(tuple(w)))
blocks768 = st.lists(word, min_size=12, max_size=12).map(tuple)
blocks512 = st.lists(word, min_size=8, max_size=8).map(tuple)


def rand_state(seed):
    rng = random.Random(seed)
    return DuplexState(tuple(rng.getrandbits(64) for _ in range(16)))


def rand_block(rng, n=12):
    return tuple(rng.getrandbits(64) for _ in range(n))


def test_new_duplex():
    s = new_duplex()
    assert s.words[:8] == (0,) * 8
    assert s.words[8:] == BLAKE2B_IV
    assert s.words[0] == 0
    assert (s.bitrate_bits, s.capacity_bits) == (768, 256)
    assert len(s.bitrate) == 12 and len(s.capacity) == 4


def test_absorb_zero_is_plain_permutation():
    s = rand_state(1)
    assert absorb_block512(s, (0,) * 8).words == permute(s.words, 12)


def test_absorb_not_idempotent():
    rng = random.Random(2)
    b = rand_block(rng, 8)
    s = DuplexState((0,) * 12 + (1, 2, 3, 4))
    twice = absorb_block512(absorb_block512(s, b), b)
    assert twice.words != absorb_block512(s, (0,) * 8).words


def test_absorb_pwd_pair_matches_reference(reference):
    pwd = bytes(32)
    s = absorb_block512(new_duplex(), bytes_to_words(pwd + pwd))
    assert s.words == hexwords(reference["zero_pwd"]["state_after_first_absorb"])
    assert s.rounds_applied == 12


def test_duplex_zero_block():
    s = rand_state(3)
    for r in (1, 12):
        nxt, out = duplex_b(s, ZERO_BLOCK768, r)
        assert out == permute(s.words, r)[:12]
        assert nxt.words == permute(s.words, r)


def test_duplex_order_sensitive():
    rng = random.Random(4)
    s, x, y = rand_state(4), rand_block(rng), rand_block(rng)
    a = duplex_b(duplex_b(s, x, 1)[0], y, 1)
    b = duplex_b(duplex_b(s, y, 1)[0], x, 1)
    assert a[1] != b[1]


def test_duplex_reduced_costs_one_round():
    rng = random.Random(5)
    s, x = rand_state(5), rand_block(rng)
    nxt, _ = duplex_b(s, x, 1)
    assert nxt.rounds_applied == s.rounds_applied + 1
    v = list(s.words)
    for i in range(12):
        v[i] ^= x[i]
    assert nxt.words == blake2b_round(v)


def test_squeeze_reads_before_permuting():
    s = rand_state(6)
    nxt, out = squeeze_b(s, 1)
    assert out == s.words[:12]
    assert nxt.words == blake2b_round(s.words)


def test_successive_squeezes_differ():
    s = rand_state(7)
    s1, a = squeeze_b(s, 1)
    _, b = squeeze_b(s1, 1)
    assert a != b


def test_squeeze_then_zero_duplex():
    s = rand_state(8)
    s1, _ = squeeze_b(s, 1)
    s2, _ = duplex_b(s1, ZERO_BLOCK768, 1)
    assert s2.words == permute(s.words, 2)


@given(states, st.sampled_from([1, 12]))
def test_squeeze_output_independent_of_rounds(s, r):
    assert squeeze_b(s, r)[1] == squeeze_b(s, 1)[1] == s.bitrate


def test_squeeze_k():
    s = DuplexState((0,) * 12 + (5, 6, 7, 8))
    assert words_to_bytes(squeeze_k(s)) == bytes(32)
    s = rand_state(9)
    assert squeeze_k(s) == s.words[:4]
    assert words_to_bytes(squeeze_k(s)) == words_to_bytes(s.bitrate)[:32]


def test_pad_params_layout(reference):
    block = pad_params(LYRA2REV2, 32, 32)
    assert block == hexwords(reference["zero_pwd"]["params_block"])
    assert block[0] == 32 and block[1] == 32 and block[2] == 32
    assert block[3:6] == (1, 4, 4)
    raw = words_to_bytes(block)
    assert raw[48] == 0x80 and raw[63] == 0x01 and raw[49:63] == bytes(14)
    assert block[6] & 0xFF == 0x80 and block[7] >> 56 == 0x01


def test_pad_params_rejects_oversize():
    with pytest.raises(ValueError):
        pad_params(LYRA2REV2, 2**64, 32)


@given(states, blocks768, st.sampled_from([1, 12]))
def test_duplex_touches_capacity_only_through_permutation(s, blk, r):
    nxt, _ = duplex_b(s, blk, r)
    v = list(s.words)
    for i in range(12):
        v[i] ^= blk[i]
    assert v[12:] == list(s.words[12:])
    assert nxt.words == permute(v, r)
    assert len(nxt.words) == 16


@given(states, blocks512)
def test_absorb512_touches_only_low_words(s, blk):
    v = list(s.words)
    for i in range(8):
        v[i] ^= blk[i]
    assert absorb_block512(s, blk).words == permute(v, 12)


@given(st.one_of(blocks768, blocks512, st.lists(word, min_size=4, max_size=4).map(tuple)))
def test_serialization_round_trip(blk):
    raw = words_to_bytes(blk)
    assert len(raw) == 8 * len(blk)
    assert bytes_to_words(raw) == blk


def test_little_endian_words():
    assert words_to_bytes((1,)) == b"\x01" + bytes(7)
    with pytest.raises(ValueError):
        bytes_to_words(b"\x00" * 7)


def test_wrong_block_sizes_rejected():
    s = new_duplex()
    with pytest.raises(ValueError):
        duplex_b(s, (0,) * 8, 1)
    with pytest.raises(ValueError):
        absorb_block512(s, (0,) * 12)
    with pytest.raises(ValueError):
        DuplexState((0,) * 15)
