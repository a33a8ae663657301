#!/usr/bin/env python3
"""Regenerate the frozen reference data in tests/data/ from the public C Lyra2.

The C sources are the ones miners use for Lyra2REv2 (``Lyra2.c`` and
``Sponge.c``), e.g. from the ``lyra2re2_hash`` sdist::

    pip download --no-deps --no-binary :all: lyra2re2_hash==1.2.0
    tar xzf lyra2re2_hash-1.2.0.tar.gz
    python tools/make_oracle_vectors.py --src lyra2re2_hash-1.2.0

Nothing in the Python package is used to compute expected values; only the
seeded input generator is shared so the inputs are reproducible.
"""

import argparse
import ctypes
import json
import subprocess
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from lyra2hw.vectors import seeded_inputs  # noqa: E402

HARNESS = r"""
#include <stdint.h>
#include <string.h>
#include "Sponge.c"
#include "Lyra2.h"

void ref_lyra2(unsigned char *out, const unsigned char *in) {
    LYRA2(out, 32, in, 32, in, 32, 1, 4, 4);
}

void ref_g(uint64_t *v) { G(0, 0, v[0], v[1], v[2], v[3]); }
void ref_round(uint64_t *v) { reducedBlake2bLyra(v); }
void ref_full(uint64_t *v) { blake2bLyra(v); }
void ref_init(uint64_t *v) { initState(v); }

/* Same call sequence as LYRA2(.., 32, pwd, 32, pwd, 32, 1, 4, 4), with snapshots. */
void ref_phases(const unsigned char *pwd, uint64_t *params_block, uint64_t *boot1,
                uint64_t *boot, uint64_t *msetup, uint64_t *setup_state,
                uint64_t *mwander, int64_t *rowa_out, unsigned char *key) {
    uint64_t whole[4 * 4 * 12];
    uint64_t *m[4];
    uint64_t state[16];
    uint64_t in[16];
    int64_t row = 2, prev = 1, rowa = 0, step = 1, window = 2, gap = 1;
    uint64_t v;
    int i;
    for (i = 0; i < 4; i++) m[i] = whole + 48 * i;
    memset(whole, 0, sizeof whole);
    memset(in, 0, sizeof in);
    memcpy(in, pwd, 32);
    memcpy((unsigned char *)in + 32, pwd, 32);
    v = 32; memcpy(in + 8, &v, 8); memcpy(in + 9, &v, 8); memcpy(in + 10, &v, 8);
    v = 1; memcpy(in + 11, &v, 8);
    v = 4; memcpy(in + 12, &v, 8); memcpy(in + 13, &v, 8);
    ((unsigned char *)in)[112] = 0x80;
    ((unsigned char *)in)[127] ^= 0x01;
    memcpy(params_block, in + 8, 64);
    initState(state);
    absorbBlockBlake2Safe(state, in);
    memcpy(boot1, state, 128);
    absorbBlockBlake2Safe(state, in + 8);
    memcpy(boot, state, 128);
    reducedSqueezeRow0(state, m[0], 4);
    reducedDuplexRow1(state, m[0], m[1], 4);
    do {
        reducedDuplexRowSetup(state, m[prev], m[rowa], m[row], 4);
        rowa = (rowa + step) & (window - 1);
        prev = row;
        row++;
        if (rowa == 0) { step = window + gap; window *= 2; gap = -gap; }
    } while (row < 4);
    memcpy(msetup, whole, sizeof whole);
    memcpy(setup_state, state, 128);
    row = 0;
    step = 4 / 2 - 1;
    do {
        rowa = state[0] % 4;
        reducedDuplexRow(state, m[prev], m[rowa], m[row], 4);
        prev = row;
        row = (row + step) % 4;
    } while (row != 0);
    memcpy(mwander, whole, sizeof whole);
    *rowa_out = rowa;
    absorbBlock(state, m[rowa]);
    squeeze(state, key, 32);
}
"""

U64 = ctypes.c_uint64


def build(src: Path, workdir: Path) -> ctypes.CDLL:
    (workdir / "harness.c").write_text(HARNESS)
    lib = workdir / "libref.so"
    subprocess.run(
        ["gcc", "-O2", "-shared", "-fPIC", f"-I{src}", "-o", str(lib),
         str(workdir / "harness.c"), str(src / "Lyra2.c")],
        check=True,
    )
    return ctypes.CDLL(str(lib))


def words(n):
    return (U64 * n)()


def hexwords(arr, n):
    return [f"{arr[i]:016x}" for i in range(n)]


def call_state(fn, init):
    v = words(len(init))
    for i, x in enumerate(init):
        v[i] = x
    fn(v)
    return hexwords(v, len(init))


def lyra2(lib, pwd: bytes) -> bytes:
    out = ctypes.create_string_buffer(32)
    lib.ref_lyra2(out, pwd)
    return out.raw


def intermediates(lib, pwd: bytes) -> dict:
    params, boot1, boot, setup_state = words(8), words(16), words(16), words(16)
    msetup, mwander = words(192), words(192)
    rowa = ctypes.c_int64()
    key = ctypes.create_string_buffer(32)
    lib.ref_phases(pwd, params, boot1, boot, msetup, setup_state, mwander, ctypes.byref(rowa), key)
    return {
        "pwd": pwd.hex(),
        "params_block": hexwords(params, 8),
        "state_after_first_absorb": hexwords(boot1, 16),
        "state_after_bootstrap": hexwords(boot, 16),
        "matrix_after_setup": hexwords(msetup, 192),
        "state_after_setup": hexwords(setup_state, 16),
        "matrix_after_wandering": hexwords(mwander, 192),
        "row1_last": rowa.value,
        "digest": key.raw.hex(),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--src", type=Path, required=True, help="directory with Lyra2.c and Sponge.c")
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "tests" / "data")
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        lib = build(args.src.resolve(), Path(tmp))

        inputs = seeded_inputs(args.count, args.seed)
        with open(args.out / "reference_vectors.jsonl", "w") as f:
            for x in inputs:
                f.write(json.dumps({"input": x.hex(), "digest": lyra2(lib, x).hex()}) + "\n")

        e15 = [0] * 15 + [1]
        ramp = list(range(16))
        init = words(16)
        lib.ref_init(init)
        data = {
            "seed": args.seed,
            "count": args.count,
            "g": {
                "0,0,0,1": call_state(lib.ref_g, [0, 0, 0, 1]),
                "1,2,3,4": call_state(lib.ref_g, [1, 2, 3, 4]),
            },
            "initial_state": hexwords(init, 16),
            "round_e15": call_state(lib.ref_round, e15),
            "round_ramp": call_state(lib.ref_round, ramp),
            "full_e15": call_state(lib.ref_full, e15),
            "zero_pwd": intermediates(lib, bytes(32)),
            "random_pwd": intermediates(lib, inputs[0]),
        }
        (args.out / "reference_intermediates.json").write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {args.count} vectors and intermediates to {args.out}")


if __name__ == "__main__":
    main()
