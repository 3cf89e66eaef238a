"""Blockwise byte scrambler driven by a valid transform spec.

This is a demonstration of the transform as a data-scrambling primitive and
explicitly NOT a secure cipher: the map is linear, unkeyed padding is public,
and no authentication or chaining is performed. Do not protect real data
with it.

Frame layout (bit exact):

    magic   4 bytes  b"NHT1"
    header  8 bytes  original byte length, big endian unsigned
    body    residue blocks; each residue big endian in w bytes,
            w = ceil(bits(m - 1) / 8), 2n residues per block

Bytes are packed into digits of k = floor(log2 m) bits, MSB first, the final
partial group zero padded; the digit sequence is then zero padded to a whole
number of blocks. Blocks are independent, so everything here is pure and
safe to run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NhtSpec, build_matrix, is_valid
from .errors import KeyMismatch, MalformedFrame

MAGIC = b"NHT1"
HEADER_BYTES = len(MAGIC) + 8


def digit_bits(m: int) -> int:
    """Payload bits per digit: floor(log2 m); the modulus must be >= 3."""
    if m < 3:
        raise ValueError("scrambling needs a modulus of at least 3")
    return m.bit_length() - 1


def residue_width(m: int) -> int:
    """Serialized bytes per residue."""
    return ((m - 1).bit_length() + 7) // 8


@dataclass(frozen=True)
class ScrambleKey:
    """A spec that passed the orthogonality check, usable as a block key."""

    spec: NhtSpec

    def __post_init__(self) -> None:
        digit_bits(self.spec.modulus)
        if not is_valid(self.spec):
            raise ValueError("key spec fails the orthogonality conditions")

    @property
    def block_size(self) -> int:
        return self.spec.size

    @property
    def bits_per_digit(self) -> int:
        return digit_bits(self.spec.modulus)

    @property
    def bytes_per_residue(self) -> int:
        return residue_width(self.spec.modulus)


@dataclass(frozen=True)
class Frame:
    """Parsed frame: the original byte length plus the raw residue body."""

    byte_length: int
    body: bytes

    def to_bytes(self) -> bytes:
        return MAGIC + self.byte_length.to_bytes(8, "big") + self.body

    @classmethod
    def from_bytes(cls, raw: bytes) -> "Frame":
        if len(raw) < HEADER_BYTES or raw[:4] != MAGIC:
            raise MalformedFrame("missing or truncated frame header")
        return cls(int.from_bytes(raw[4:12], "big"), raw[12:])


def bytes_to_digits(data: bytes, m: int, block: int | None = None) -> np.ndarray:
    """Pack a byte string into k-bit digits, MSB first.

    The final partial bit group is zero padded; with block set, the digit
    sequence is additionally zero padded to a multiple of that many digits.
    """
    k = digit_bits(m)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    tail = (-bits.size) % k
    if tail:
        bits = np.concatenate([bits, np.zeros(tail, dtype=np.uint8)])
    weights = (1 << np.arange(k - 1, -1, -1)).astype(np.int64)
    digits = bits.reshape(-1, k) @ weights
    if block:
        short = (-digits.size) % block
        if short:
            digits = np.concatenate([digits, np.zeros(short, dtype=np.int64)])
    return digits


def digits_to_bytes(digits: np.ndarray, m: int, byte_length: int) -> bytes:
    """Unpack k-bit digits back into bytes, truncating to byte_length."""
    k = digit_bits(m)
    arr = np.asarray(digits, dtype=np.int64).reshape(-1, 1)
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    bits = ((arr >> shifts) & 1).astype(np.uint8).reshape(-1)
    need = 8 * byte_length
    if bits.size < need:
        raise MalformedFrame("frame body holds fewer bits than the header claims")
    return np.packbits(bits[:need]).tobytes()


def _matmul_mod(blocks: np.ndarray, mat: np.ndarray, m: int) -> np.ndarray:
    # int64 products stay exact while inner_dim * (m-1)^2 < 2^63
    if mat.shape[0] * (m - 1) * (m - 1) < 2**63:
        return (blocks @ mat) % m
    exact = (blocks.astype(object) @ mat.astype(object)) % m
    return exact.astype(np.int64)


def _serialize_residues(residues: np.ndarray, w: int) -> bytes:
    shifts = (8 * np.arange(w - 1, -1, -1)).astype(np.int64)
    return (((residues.reshape(-1, 1) >> shifts) & 0xFF).astype(np.uint8)).tobytes()


def _parse_residues(body: bytes, w: int, m: int) -> np.ndarray:
    grouped = np.frombuffer(body, dtype=np.uint8).reshape(-1, w).astype(np.int64)
    weights = (1 << (8 * np.arange(w - 1, -1, -1))).astype(np.int64)
    residues = grouped @ weights
    if residues.size and int(residues.max()) >= m:
        raise MalformedFrame(f"serialized residue >= modulus {m}")
    return residues


def scramble(data: bytes, key: ScrambleKey) -> Frame:
    """Forward-transform the data blockwise into a frame."""
    spec = key.spec
    m = spec.modulus
    digits = bytes_to_digits(data, m, block=key.block_size)
    if digits.size == 0:
        return Frame(len(data), b"")
    mat = np.array(build_matrix(spec).rows, dtype=np.int64)
    out = _matmul_mod(digits.reshape(-1, key.block_size), mat.T, m)
    return Frame(len(data), _serialize_residues(out, key.bytes_per_residue))


def descramble(frame: Frame, key: ScrambleKey) -> bytes:
    """Invert a frame back to the original bytes.

    Raises MalformedFrame when the body violates the format (length not a
    whole number of blocks, residue out of range) and KeyMismatch when the
    body holds a different number of blocks than the header length implies
    under this key's geometry.
    """
    spec = key.spec
    m = spec.modulus
    w = key.bytes_per_residue
    block_bytes = key.block_size * w
    if len(frame.body) % block_bytes:
        raise MalformedFrame(f"body of {len(frame.body)} bytes is not whole {block_bytes}-byte blocks")
    blocks = len(frame.body) // block_bytes
    total_digits = -(-8 * frame.byte_length // key.bits_per_digit)
    expected_blocks = -(-total_digits // key.block_size)
    if blocks != expected_blocks:
        raise KeyMismatch(f"{blocks} blocks in body, {expected_blocks} expected for {frame.byte_length} bytes")
    if blocks == 0:
        return b""
    residues = _parse_residues(frame.body, w, m).reshape(-1, key.block_size)
    mat = np.array(build_matrix(spec).rows, dtype=np.int64)
    digits = _matmul_mod(residues, mat, m).reshape(-1)
    return digits_to_bytes(digits, m, frame.byte_length)
