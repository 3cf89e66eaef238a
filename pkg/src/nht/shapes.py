"""Sequences whose transform is a scalar multiple of themselves.

"Same shape" is read as modular proportionality: N @ F = lambda * F (mod m).
For prime moduli the eigenspace of each lambda is the nullspace of
N - lambda*I, found by Gaussian elimination; composite moduli fall back to a
brute-force scan over the whole vector space when it is small enough.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import NhtSpec, ResidueVector, build_matrix, forward, is_valid
from .errors import CompositeModulusUnsupported, NonUnitPivot
from .modular import is_prime

BRUTE_FORCE_BUDGET = 250_000


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue with a spanning set of its eigenspace.

    For prime moduli the vectors form a nullspace basis; the composite
    brute-force fallback returns every nonzero solution instead, since a
    basis is not well defined over Z_m.
    """

    lam: int
    basis: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TransformPair:
    input: ResidueVector
    output: ResidueVector


def nullspace_mod(matrix: Sequence[Sequence[int]], m: int) -> list[tuple[int, ...]]:
    """Right nullspace basis over Z_m via Gauss-Jordan elimination.

    A pivot column whose candidate entries are all nonzero non-units cannot
    be normalized; that raises NonUnitPivot (only possible for composite m).
    """
    rows = [[int(v) % m for v in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix must be rectangular")

    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = None
        stuck = False
        for i in range(r, nrows):
            if rows[i][col] == 0:
                continue
            try:
                inv = pow(rows[i][col], -1, m)
            except ValueError:
                stuck = True
                continue
            pivot = i
            break
        if pivot is None:
            if stuck:
                raise NonUnitPivot(f"column {col}: nonzero entries share a factor with {m}")
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rows[r] = [v * inv % m for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % m for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == nrows:
            break

    free = [j for j in range(ncols) if j not in pivot_cols]
    basis: list[tuple[int, ...]] = []
    for fcol in free:
        vec = [0] * ncols
        vec[fcol] = 1
        for row_idx, pcol in enumerate(pivot_cols):
            vec[pcol] = -rows[row_idx][fcol] % m
        basis.append(tuple(vec))
    return basis


def _brute_force_pairs(spec: NhtSpec) -> list[EigenPair]:
    m = spec.modulus
    size = spec.size
    rows = build_matrix(spec).rows
    hits: dict[int, list[tuple[int, ...]]] = {}
    for f in itertools.product(range(m), repeat=size):
        if not any(f):
            continue
        g = tuple(sum(a * b for a, b in zip(row, f)) % m for row in rows)
        for lam in range(1, m):
            if all(gv == lam * fv % m for gv, fv in zip(g, f)):
                hits.setdefault(lam, []).append(f)
    return [EigenPair(lam, tuple(hits[lam])) for lam in sorted(hits)]


def find_scalar_shape_pairs(spec: NhtSpec, budget: int = BRUTE_FORCE_BUDGET) -> list[EigenPair]:
    """Scan every lambda in [1, m) for a nonempty eigenspace, ascending.

    Requires a valid spec. Composite moduli are handled by brute force only
    while m**(2n) stays within the budget; beyond that the elimination-based
    scan is unreliable and CompositeModulusUnsupported is raised.
    """
    if not is_valid(spec):
        raise ValueError("spec fails the orthogonality conditions")
    m = spec.modulus
    if not is_prime(m):
        if m**spec.size > budget:
            raise CompositeModulusUnsupported(
                f"composite modulus {m} with {m}**{spec.size} candidate vectors"
            )
        return _brute_force_pairs(spec)

    rows = build_matrix(spec).rows
    size = spec.size
    pairs: list[EigenPair] = []
    for lam in range(1, m):
        shifted = [
            [(rows[i][j] - (lam if i == j else 0)) % m for j in range(size)] for i in range(size)
        ]
        basis = nullspace_mod(shifted, m)
        if basis:
            pairs.append(EigenPair(lam, tuple(basis)))
    return pairs


def transform_pair(spec: NhtSpec, f: ResidueVector | Sequence[int]) -> TransformPair:
    """Pair an input block with its forward transform."""
    out = forward(spec, f)
    vec = f if isinstance(f, ResidueVector) else ResidueVector(spec.modulus, tuple(f))
    return TransformPair(vec, out)
