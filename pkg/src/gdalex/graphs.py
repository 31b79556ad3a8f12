"""Implicit representation of P_n, C_n and their lexicographic products.

The product F = G1 o G2 of factors with orders n and m has vertex set
{1..n} x {0..m-1}.  Vertex (i, j) lives in the i-th copy of G2 (the
"column" G2_i).  Two vertices are adjacent iff their columns are adjacent
in G1, or they share a column and their rows are adjacent in G2.  Nothing
is ever materialised: adjacency is computed from the product rule on
demand, so products up to n*m ~ 10^4 cost O(1) memory.

Columns are 1-based (G2_1 .. G2_n); rows are 0-based along the path/cycle
order of G2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

from .errors import InputError

Kind = Literal["path", "cycle"]

_KINDS = ("path", "cycle")


@dataclass(frozen=True)
class FactorSpec:
    """One factor: a path P_order or a cycle C_order."""

    kind: Kind
    order: int

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise InputError(f"unknown factor kind {self.kind!r}")
        low = 2 if self.kind == "path" else 3
        if self.order < low:
            raise InputError(f"{self.kind} factor needs order >= {low}, got {self.order}")

    @property
    def letter(self) -> str:
        return "P" if self.kind == "path" else "C"

    def __str__(self) -> str:
        return f"{self.letter}{self.order}"


def factor(text: str) -> FactorSpec:
    """Parse 'path:5' / 'cycle:12' (as used by the CLI)."""
    kind, sep, order = text.partition(":")
    if not sep or kind not in _KINDS:
        raise InputError(f"expected '<path|cycle>:<order>', got {text!r}")
    try:
        return FactorSpec(kind, int(order))
    except ValueError as exc:
        raise InputError(f"bad factor order in {text!r}") from exc


@dataclass(frozen=True)
class ProductSpec:
    """The lexicographic product g1 o g2."""

    g1: FactorSpec
    g2: FactorSpec

    def __post_init__(self) -> None:
        # G2 ~ K_m is excluded by the theory; P_2 = K_2 is the only
        # path/cycle factor that is complete, so require m >= 3.
        if self.g2.order < 3:
            raise InputError("second factor must have order >= 3 (K_m excluded)")

    @property
    def n(self) -> int:
        return self.g1.order

    @property
    def m(self) -> int:
        return self.g2.order

    def __str__(self) -> str:
        return f"{self.g1}o{self.g2}"


@dataclass(frozen=True)
class VertexId:
    """Vertex (column, row) of a product; column in 1..n, row in 0..m-1."""

    column: int
    row: int


def product(g1_kind: Kind, n: int, g2_kind: Kind, m: int) -> ProductSpec:
    """Convenience constructor."""
    return ProductSpec(FactorSpec(g1_kind, n), FactorSpec(g2_kind, m))


def _check_column(spec: ProductSpec, column: int) -> None:
    if not 1 <= column <= spec.n:
        raise InputError(f"column {column} out of range 1..{spec.n}")


def _check_vertex(spec: ProductSpec, v: VertexId) -> None:
    _check_column(spec, v.column)
    if not 0 <= v.row < spec.m:
        raise InputError(f"row {v.row} out of range 0..{spec.m - 1}")


def g1_neighbors(spec: ProductSpec, column: int) -> set[int]:
    """Columns adjacent to `column` under G1."""
    _check_column(spec, column)
    n = spec.n
    if spec.g1.kind == "path":
        return {c for c in (column - 1, column + 1) if 1 <= c <= n}
    return {(column - 2) % n + 1, column % n + 1}


@lru_cache(maxsize=None)
def g2_row_adjacency(kind: Kind, m: int) -> tuple[tuple[int, ...], ...]:
    """Open row neighborhoods of G2, as sorted tuples indexed by row."""
    out = []
    for r in range(m):
        if kind == "path":
            nbrs = [x for x in (r - 1, r + 1) if 0 <= x < m]
        else:
            nbrs = sorted({(r - 1) % m, (r + 1) % m})
        out.append(tuple(nbrs))
    return tuple(out)


def g2_degree(g2: FactorSpec, row: int) -> int:
    """Degree of `row` inside G2."""
    return len(g2_row_adjacency(g2.kind, g2.order)[row])


def closed_neighborhood(spec: ProductSpec, v: VertexId) -> set[VertexId]:
    """N[v] in the product: v, all rows of adjacent columns, and the
    G2-neighbors of v in its own column."""
    _check_vertex(spec, v)
    out = {v}
    for c in g1_neighbors(spec, v.column):
        out.update(VertexId(c, r) for r in range(spec.m))
    for r in g2_row_adjacency(spec.g2.kind, spec.m)[v.row]:
        out.add(VertexId(v.column, r))
    return out


def degree(spec: ProductSpec, v: VertexId) -> int:
    """d(v) = a*m + d_G2(row), where a is the number of adjacent columns."""
    _check_vertex(spec, v)
    return len(g1_neighbors(spec, v.column)) * spec.m + g2_degree(spec.g2, v.row)


def vertices(spec: ProductSpec) -> Iterator[VertexId]:
    """All n*m vertices, column-major."""
    for c in range(1, spec.n + 1):
        for r in range(spec.m):
            yield VertexId(c, r)
