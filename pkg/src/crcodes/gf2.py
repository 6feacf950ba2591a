"""Bitset linear algebra over GF(2). Rows are ints, bit j = column j."""

from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

__all__ = [
    "bit_support",
    "gf2_rref",
    "gf2_rank",
    "gf2_in_rowspan",
    "gf2_nullspace",
    "gf2_span",
]


def bit_support(v: int) -> Iterator[int]:
    """Yield the set bit positions of v in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def gf2_rref(rows: Iterable[int], n_cols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    reduced: List[int] = []
    pivots: List[int] = []
    for row in rows:
        for r, p in zip(reduced, pivots):
            if (row >> p) & 1:
                row ^= r
        if row == 0:
            continue
        p = (row & -row).bit_length() - 1
        # clear the new pivot column in existing rows
        for k, r in enumerate(reduced):
            if (r >> p) & 1:
                reduced[k] = r ^ row
        reduced.append(row)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [reduced[k] for k in order], [pivots[k] for k in order]


def gf2_rank(rows: Iterable[int], n_cols: int) -> int:
    return len(gf2_rref(rows, n_cols)[0])


def gf2_in_rowspan(v: int, rref_rows: List[int], pivots: List[int]) -> bool:
    """Membership of v in the span of rows already in RREF."""
    for r, p in zip(rref_rows, pivots):
        if (v >> p) & 1:
            v ^= r
    return v == 0


def gf2_nullspace(rows: Iterable[int], n_cols: int) -> List[int]:
    """Basis of {x : parity(row & x) = 0 for every row}, deterministic order."""
    reduced, pivots = gf2_rref(rows, n_cols)
    pivot_set = set(pivots)
    basis: List[int] = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        x = 1 << free
        for r, p in zip(reduced, pivots):
            if (r >> free) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def gf2_span(basis: List[int]) -> Iterator[int]:
    """All 2^k combinations of the basis rows in Gray-code order."""
    word = 0
    yield 0
    for t in range(1, 1 << len(basis)):
        word ^= basis[(t & -t).bit_length() - 1]
        yield word
