"""Test-vector records, JSON-lines I/O and the seeded input generator.

Inputs come from SplitMix64 so that any language can regenerate a vector file
from its seed: the n-th 32-byte input is four consecutive generator outputs,
each serialized little-endian.
"""

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, List, Optional, Tuple

MASK64 = 0xFFFFFFFFFFFFFFFF
HEX64 = re.compile(r"[0-9a-f]{64}")


def splitmix64(seed: int) -> Iterator[int]:
    x = seed & MASK64
    while True:
        x = (x + 0x9E3779B97F4A7C15) & MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def seeded_inputs(count: int, seed: int) -> List[bytes]:
    gen = splitmix64(seed)
    return [b"".join(next(gen).to_bytes(8, "little") for _ in range(4)) for _ in range(count)]


@dataclass(frozen=True)
class VectorRecord:
    input: str
    digest: str

    def __post_init__(self):
        for name in ("input", "digest"):
            if not HEX64.fullmatch(getattr(self, name)):
                raise ValueError(f"{name} must be 64 lowercase hex characters")

    def to_json(self) -> str:
        return json.dumps({"input": self.input, "digest": self.digest})


def parse_hex32(text: str) -> bytes:
    text = text.strip()
    if len(text) != 64:
        raise ValueError(f"expected 64 hex characters, got {len(text)}")
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise ValueError("input is not valid hex") from None


def make_records(inputs: Iterable[bytes], hasher: Callable[[bytes], bytes]) -> List[VectorRecord]:
    return [VectorRecord(x.hex(), hasher(x).hex()) for x in inputs]


def write_vectors(path, records: Iterable[VectorRecord]) -> None:
    with open(path, "w") as f:
        for rec in records:
            f.write(rec.to_json() + "\n")


def read_vectors(path) -> List[Tuple[int, VectorRecord]]:
    """Return ``(line_number, record)`` pairs; blank lines are skipped."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            out.append((lineno, VectorRecord(obj["input"], obj["digest"])))
        except (ValueError, KeyError, TypeError) as e:
            raise ValueError(f"line {lineno}: malformed record ({e})") from None
    return out


def check_vectors(path, hasher: Callable[[bytes], bytes]) -> Tuple[int, Optional[int]]:
    """Recompute digests. Returns ``(records_checked, first_bad_line)``."""
    n = 0
    for lineno, rec in read_vectors(path):
        n += 1
        if hasher(bytes.fromhex(rec.input)).hex() != rec.digest:
            return n, lineno
    return n, None
