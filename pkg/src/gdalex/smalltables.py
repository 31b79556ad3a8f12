"""Closed-form alliance numbers for products with a short first factor.

The m = 3 column of each table is a stored constant; the m >= 4 cells are
per-row formulas.  Every formula here is validated against the column DP
in the test suite (m up to 12), which is what makes them trustworthy:
several cells do not follow the obvious pattern (see gamma for P3 o P5).
"""

from __future__ import annotations

from .errors import InputError
from .graphs import Kind

# m = 3 columns of the four small tables, keyed by (g1_kind, g2_kind).
M3_TABLE: dict[tuple[Kind, Kind], dict[int, int]] = {
    ("path", "cycle"): {2: 3, 3: 5, 4: 5, 5: 7, 6: 8, 7: 10},
    ("cycle", "cycle"): {3: 5, 4: 5, 5: 7, 6: 10, 7: 10},
    ("path", "path"): {2: 3, 3: 4, 4: 5, 5: 5, 6: 8, 7: 9},
    ("cycle", "path"): {3: 5, 4: 5, 5: 5, 6: 8, 7: 9},
}


def small_gamma(g1_kind: Kind, g2_kind: Kind, n: int, m: int) -> int:
    """gamma_a(G1 o G2) for 2 <= n <= 7 (paths) / 3 <= n <= 7 (cycles)."""
    low = 2 if g1_kind == "path" else 3
    if not low <= n <= 7:
        raise InputError(f"small tables cover {low} <= n <= 7, got n={n}")
    if m < 3:
        raise InputError("second factor needs order >= 3")
    if m == 3:
        return M3_TABLE[(g1_kind, g2_kind)][n]
    if g2_kind == "cycle":
        if n == 2:
            return 2 * (m // 2)
        if n == 3:
            if g1_kind == "cycle":
                return (3 * m + 1) // 2
            return m + max(2, (m - 2) // 2)
        if n == 4:
            return 2 * m - 1
        if n == 5:
            return m + 4 if m == 4 else 2 * m - 1
        if n == 6:
            return 2 * m + 4
        return 3 * m + 1
    if n == 2:
        return 2 * (m // 2)
    if n == 3:
        if g1_kind == "cycle":
            return (3 * m + 1) // 2
        # ceiling, not floor: path-end rows of the full column force the
        # supporting path one longer when m is odd
        return m + (m - 1) // 2
    if n == 4 or n == 5:
        return 2 * m - 1
    if n == 6:
        return 2 * m + 2
    return 3 * m
