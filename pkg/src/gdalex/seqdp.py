"""Sequence values and their minimization over feasible part sequences.

A feasible sequence w = (k_1, ..., k_t) prices as

    cycle first factor:  sum_i val_I(k_i)
    path first factor:   val_E(k_1) + sum_{1<i<t} val_I(k_i) + val_E(k_t)

A single-part path sequence prices as val_E(k_1); since one section has
only one forced-empty side, that can overshoot the true optimum of a
short product (whose best set may occupy a boundary column), so for
k_1 <= 7 the stored small-table value is taken when smaller.

`min_sequence_value` minimizes over all feasible sequences with bounded
parts, breaking ties toward fewer parts and then lexicographically
smallest, so golden tests are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alliance import PartSequence, as_parts, is_feasible
from .errors import InfeasibleError, InputError
from .graphs import Kind
from .oracle import GammaResult, ValueTable
from .smalltables import small_gamma

_INF = 1 << 40


@dataclass(frozen=True)
class SequenceValueContext:
    """What is needed to price sequences: the first-factor kind, its
    order, and the base-cost table of the second factor."""

    g1_kind: Kind
    n: int
    table: ValueTable


def _single_path_value(ctx: SequenceValueContext, k: int) -> int:
    value = ctx.table.val_E[k]
    if k <= 7:
        value = min(value, small_gamma("path", ctx.table.g2.kind, max(k, 2), ctx.table.g2.order))
    return value


def sequence_value(ctx: SequenceValueContext, w: "PartSequence | tuple[int, ...] | list[int]") -> int:
    """Price one feasible sequence against the value table."""
    parts = as_parts(w)
    if not is_feasible(parts, ctx.n):
        raise InputError(f"sequence {parts} is not feasible for n={ctx.n}")
    if max(parts) > ctx.table.k_max:
        raise InputError(f"part {max(parts)} exceeds the table's k_max={ctx.table.k_max}")
    if ctx.g1_kind == "cycle":
        return sum(ctx.table.val_I[k] for k in parts)
    if len(parts) == 1:
        return _single_path_value(ctx, parts[0])
    mid = sum(ctx.table.val_I[k] for k in parts[1:-1])
    return ctx.table.val_E[parts[0]] + mid + ctx.table.val_E[parts[-1]]


def _rest_dp(ctx: SequenceValueContext, max_part: int) -> list[tuple[int, int]]:
    """Best (cost, #parts) of a non-first suffix summing to j.

    Suffix parts are all >= 3; on paths the last one prices as val_E and
    the others as val_I, on cycles everything is val_I.
    """
    n = ctx.n
    tab = ctx.table
    last_cost = tab.val_I if ctx.g1_kind == "cycle" else tab.val_E
    best: list[tuple[int, int]] = [(_INF, 0)] * (n + 1)
    for j in range(3, n + 1):
        cur = (_INF, 0)
        for k in range(3, min(max_part, j) + 1):
            if k == j:
                cand = (last_cost[k], 1)
            elif j - k >= 3:
                c, t = best[j - k]
                cand = (tab.val_I[k] + c, t + 1)
            else:
                continue
            if cand < cur:
                cur = cand
        best[j] = cur
    return best


def min_sequence_value(ctx: SequenceValueContext, max_part: int) -> GammaResult:
    """Minimum of sequence_value over feasible sequences with parts
    bounded by max_part."""
    if max_part > ctx.table.k_max:
        raise InputError(f"max_part {max_part} exceeds the table's k_max={ctx.table.k_max}")
    n = ctx.n
    if n < (2 if ctx.g1_kind == "path" else 3):
        raise InputError(f"n={n} too small for a {ctx.g1_kind} first factor")
    rest = _rest_dp(ctx, max_part)
    first_cost = ctx.table.val_I if ctx.g1_kind == "cycle" else ctx.table.val_E

    def head_options(total: int):
        for k1 in range(2, min(max_part, total) + 1):
            if k1 == total:
                if ctx.g1_kind == "path":
                    yield k1, (_single_path_value(ctx, k1), 1)
                else:
                    yield k1, (ctx.table.val_I[k1], 1)
            elif total - k1 >= 3:
                c, t = rest[total - k1]
                if c < _INF:
                    yield k1, (first_cost[k1] + c, t + 1)

    best = (_INF, 0)
    for _, cand in head_options(n):
        if cand < best:
            best = cand
    if best[0] >= _INF:
        raise InfeasibleError(f"no feasible sequence with parts <= {max_part} sums to {n}")

    # Reconstruct the lexicographically smallest optimal sequence.
    parts: list[int] = []
    for k1, cand in head_options(n):
        if cand == best:
            parts.append(k1)
            break
    rem, (cost_left, parts_left) = n - parts[0], best
    cost_left -= first_cost[parts[0]] if rem else 0
    parts_left -= 1
    while rem:
        last = ctx.table.val_I if ctx.g1_kind == "cycle" else ctx.table.val_E
        for k in range(3, min(max_part, rem) + 1):
            if k == rem and (last[k], 1) == (cost_left, parts_left):
                parts.append(k)
                rem = 0
                break
            if rem - k >= 3:
                c, t = rest[rem - k]
                if (ctx.table.val_I[k] + c, t + 1) == (cost_left, parts_left):
                    parts.append(k)
                    rem -= k
                    cost_left -= ctx.table.val_I[k]
                    parts_left -= 1
                    break
        else:
            raise AssertionError("sequence reconstruction lost the optimum")
    return GammaResult(best[0], "sequence-dp", sequence=PartSequence(tuple(parts)))


def paper_max_part(m: int) -> int:
    """Largest part an optimal spectrum needs: 6 for m = 3, else 7."""
    return 6 if m == 3 else 7
