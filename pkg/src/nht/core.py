"""Transform specs, circulant matrix construction, orthogonality conditions.

A spec of half-size n over modulus m describes a 2n x 2n circulant matrix N
whose first row interleaves zeros with the n coefficients, every later row
being the previous one rotated right by one. The spec is valid exactly when
N @ N.T = I (mod m), which reduces to the circular autocorrelation of the
coefficient vector being 1 at lag 0 and 0 at lags 1..n//2.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import ModulusMismatch, SpecFormatError
from .modular import check_modulus


@dataclass(frozen=True)
class NhtSpec:
    """Transform key: modulus and the n first-row coefficients.

    Coefficients are reduced into [0, m) on construction. Zero coefficients
    are rejected unless allow_zero is set; specs built with the relaxed
    policy carry the flag so downstream output can mark them.
    """

    modulus: int
    coeffs: tuple[int, ...]
    allow_zero: bool = False

    def __post_init__(self) -> None:
        check_modulus(self.modulus)
        coeffs = tuple(int(c) % self.modulus for c in self.coeffs)
        if not coeffs:
            raise ValueError("at least one coefficient is required")
        if not self.allow_zero and any(c == 0 for c in coeffs):
            raise ValueError("zero coefficient requires allow_zero=True")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def size(self) -> int:
        return 2 * len(self.coeffs)


@dataclass(frozen=True)
class ResidueVector:
    """Vector of canonical residues mod a shared modulus."""

    modulus: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        check_modulus(self.modulus)
        object.__setattr__(self, "entries", tuple(int(v) % self.modulus for v in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]


@dataclass(frozen=True)
class NhtMatrix:
    """Dense 2n x 2n circulant realization of a spec."""

    modulus: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class ConditionReport:
    """Circular autocorrelation residues r[0..n//2] of a coefficient vector.

    The spec is orthogonal exactly when r[0] = 1 and every later lag is 0.
    """

    modulus: int
    n: int
    residues: tuple[int, ...]

    @property
    def satisfied(self) -> bool:
        return self.residues[0] == 1 and all(r == 0 for r in self.residues[1:])


def autocorrelation(coeffs: Sequence[int], lag: int) -> int:
    """Unreduced circular autocorrelation sum at the given lag."""
    n = len(coeffs)
    return sum(coeffs[i] * coeffs[(i + lag) % n] for i in range(n))


def _coerce_vector(spec: NhtSpec, f: ResidueVector | Iterable[int]) -> list[int]:
    if isinstance(f, ResidueVector):
        if f.modulus != spec.modulus:
            raise ModulusMismatch(f"vector modulus {f.modulus} != spec modulus {spec.modulus}")
        entries = list(f.entries)
    else:
        entries = [int(v) % spec.modulus for v in f]
    if len(entries) != spec.size:
        raise ValueError(f"vector length {len(entries)} != block size {spec.size}")
    return entries


def first_row(spec: NhtSpec) -> ResidueVector:
    """First matrix row: zeros interleaved with the coefficients."""
    row: list[int] = []
    for c in spec.coeffs:
        row.append(0)
        row.append(c)
    return ResidueVector(spec.modulus, tuple(row))


def build_matrix(spec: NhtSpec) -> NhtMatrix:
    """Full circulant matrix; row i is the first row rotated right by i."""
    row0 = first_row(spec).entries
    rows = [row0]
    for i in range(1, spec.size):
        rows.append(row0[-i:] + row0[:-i])
    return NhtMatrix(spec.modulus, tuple(rows))


def forward(spec: NhtSpec, f: ResidueVector | Iterable[int]) -> ResidueVector:
    """G = N @ F mod m via the direct matrix-vector product."""
    entries = _coerce_vector(spec, f)
    m = spec.modulus
    rows = build_matrix(spec).rows
    return ResidueVector(m, tuple(sum(a * b for a, b in zip(row, entries)) % m for row in rows))


def forward_split(spec: NhtSpec, f: ResidueVector | Iterable[int]) -> ResidueVector:
    """Forward transform as two length-n circular correlations.

    The matrix only couples opposite parity classes, so even outputs are a
    correlation of the odd input samples with the coefficients and odd
    outputs a correlation of the even samples. Must agree exactly with
    forward(); exists to exploit the structure, not to change results.
    """
    entries = _coerce_vector(spec, f)
    m = spec.modulus
    n = spec.n
    c = spec.coeffs
    even_in = entries[0::2]
    odd_in = entries[1::2]
    out = [0] * spec.size
    for u in range(n):
        out[2 * u] = sum(c[(v - u) % n] * odd_in[v] for v in range(n)) % m
        out[2 * u + 1] = sum(c[(v - u - 1) % n] * even_in[v] for v in range(n)) % m
    return ResidueVector(m, tuple(out))


def inverse(spec: NhtSpec, g: ResidueVector | Iterable[int]) -> ResidueVector:
    """F = N.T @ G mod m."""
    entries = _coerce_vector(spec, g)
    m = spec.modulus
    rows = build_matrix(spec).rows
    size = spec.size
    return ResidueVector(
        m,
        tuple(sum(rows[i][j] * entries[i] for i in range(size)) % m for j in range(size)),
    )


def gram(spec: NhtSpec) -> tuple[tuple[int, ...], ...]:
    """Full product N @ N.T mod m; the orthogonality arbiter."""
    rows = build_matrix(spec).rows
    m = spec.modulus
    size = spec.size
    return tuple(
        tuple(sum(rows[i][k] * rows[j][k] for k in range(size)) % m for j in range(size))
        for i in range(size)
    )


def identity_matrix(size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def conditions(spec: NhtSpec) -> ConditionReport:
    """Autocorrelation residues at lags 0..n//2.

    For even n the lag n//2 sum pairs every product twice; the summation
    formula covers that without a special case.
    """
    m = spec.modulus
    n = spec.n
    residues = tuple(autocorrelation(spec.coeffs, k) % m for k in range(n // 2 + 1))
    return ConditionReport(m, n, residues)


def is_valid(spec: NhtSpec) -> bool:
    """True exactly when the gram product is the identity."""
    return conditions(spec).satisfied


# -- spec documents ----------------------------------------------------------
#
# The interchange format is a JSON object
#   {"size": 2n, "modulus": m, "coefficients": [c0, ..., c_{n-1}]}
# with an optional "allow_zero": true marking relaxed specs.


def spec_to_document(spec: NhtSpec) -> dict:
    doc: dict = {"size": spec.size, "modulus": spec.modulus, "coefficients": list(spec.coeffs)}
    if spec.allow_zero:
        doc["allow_zero"] = True
    return doc


def spec_from_document(doc: object) -> NhtSpec:
    """Build a spec from a parsed document, validating the schema."""
    if not isinstance(doc, dict):
        raise SpecFormatError("spec document must be a JSON object")
    try:
        size = doc["size"]
        modulus = doc["modulus"]
        coefficients = doc["coefficients"]
    except KeyError as exc:
        raise SpecFormatError(f"spec document missing key {exc}") from None
    allow_zero = bool(doc.get("allow_zero", False))
    if not isinstance(coefficients, list) or not all(isinstance(c, int) for c in coefficients):
        raise SpecFormatError("coefficients must be a list of integers")
    if not isinstance(size, int) or not isinstance(modulus, int):
        raise SpecFormatError("size and modulus must be integers")
    if size != 2 * len(coefficients):
        raise SpecFormatError(f"size {size} != 2 * {len(coefficients)} coefficients")
    try:
        return NhtSpec(modulus, tuple(coefficients), allow_zero=allow_zero)
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from None


def load_spec(path: str | Path) -> NhtSpec:
    """Read a spec document from a JSON file."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON: {exc}") from None
    return spec_from_document(doc)


def save_spec(spec: NhtSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec_to_document(spec)) + "\n")
