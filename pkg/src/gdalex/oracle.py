"""Exact minimum-GDA computation: subset enumeration and a column DP.

Two independent ground-truth methods:

* `min_gda_subsets` enumerates candidate sets in increasing cardinality
  and returns the first alliance found (hard cap n*m <= 20).

* `min_gda_columns` is a transfer-matrix DP over columns.  Because
  adjacent columns of the product are completely joined, the defense of
  every member of column i depends only on its in-column closed
  neighborhood hits plus s_{i-1} + s_{i+1}, and domination of column i
  needs only "some neighbor column nonempty" or an in-column cover.  The
  DP state after placing column i is (|S_{i-1}|, mask_i); transition
  feasibility further depends on mask_i only through the triple
  (|mask_i|, defense deficit D(mask_i), self-dominating?), so transitions
  are aggregated over those classes: per-column work is a few hundred
  class rows instead of 4^m mask pairs.  Cycles close the seam by
  enumerating (|S_1|, |S_n|) boundary classes.

`compute_value_table` derives the section base costs val_I(k) / val_E(k)
(minimum GDA of P_k o G2 with both / the first boundary column forced
empty) from one pinned forward pass of the same DP.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import __version__ as _tool_version
from .alliance import ColumnSet, PartSequence
from .errors import InputError, UnsupportedSizeError
from .graphs import FactorSpec, Kind, ProductSpec, g2_row_adjacency

PATH_M_CAP = 20
CYCLE_M_CAP = 12
SUBSETS_VERTEX_CAP = 20

_INF = 1 << 40


@dataclass(frozen=True)
class GammaResult:
    """A computed alliance number with provenance."""

    value: int
    method: str  # subsets | column-dp | sequence-dp | closed-form
    witness: ColumnSet | None = None
    sequence: PartSequence | None = None
    note: str | None = None


@dataclass(frozen=True)
class ValueTable:
    """Section base costs val_I(k), val_E(k) for a fixed second factor.

    Clamp rules: val_I(2) = val_I(3) = val_I(4) and val_E(2) = val_E(3).
    """

    g2: FactorSpec
    k_max: int
    val_I: dict[int, int] = field(compare=False)
    val_E: dict[int, int] = field(compare=False)

    def to_json_dict(self) -> dict:
        return {
            "g2_kind": self.g2.kind,
            "m": self.g2.order,
            "k_max": self.k_max,
            "val_I": [self.val_I[k] for k in range(2, self.k_max + 1)],
            "val_E": [self.val_E[k] for k in range(2, self.k_max + 1)],
            "tool_version": _tool_version,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ValueTable":
        try:
            g2 = FactorSpec(data["g2_kind"], int(data["m"]))
            k_max = int(data["k_max"])
            val_i = {k: int(v) for k, v in zip(range(2, k_max + 1), data["val_I"], strict=True)}
            val_e = {k: int(v) for k, v in zip(range(2, k_max + 1), data["val_E"], strict=True)}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed value-table payload: {exc}") from exc
        return cls(g2=g2, k_max=k_max, val_I=val_i, val_E=val_e)

    def save(self, path: str) -> None:
        """Atomic write: temp file in the target directory, then rename."""
        directory = os.path.dirname(os.path.abspath(path)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(self.to_json_dict(), fh, indent=1)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: str) -> "ValueTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Per-(kind, m) mask tables
# ---------------------------------------------------------------------------


class _MaskTables:
    """Per-mask defense/domination data for one second factor."""

    def __init__(self, kind: Kind, m: int):
        self.kind = kind
        self.m = m
        self.full = (1 << m) - 1
        adj = g2_row_adjacency(kind, m)
        closed = [((1 << r) | sum(1 << x for x in adj[r])) for r in range(m)]
        self.closed = closed
        masks = np.arange(1 << m, dtype=np.int64)
        self.pc = np.bitwise_count(masks).astype(np.int16)
        d_end = np.zeros(1 << m, dtype=np.int16)
        d_mid = np.zeros(1 << m, dtype=np.int16)
        cover = np.zeros(1 << m, dtype=np.int64)
        for r in range(m):
            member = ((masks >> r) & 1).astype(bool)
            hits = np.bitwise_count(masks & closed[r]).astype(np.int16)
            d2 = bin(closed[r]).count("1") - 1
            for arr, a in ((d_end, 1), (d_mid, 2)):
                need = (a * m + d2 + 2) // 2
                arr[:] = np.maximum(arr, np.where(member, need - hits, 0))
            cover |= np.where(member, closed[r], 0)
        self.d_end = d_end
        self.d_mid = d_mid
        self.dom = cover == self.full
        self.rows_end = self._joint(d_end)
        self.rows_mid = self._joint(d_mid)
        # plain-python copies for the subset enumerator
        self.pc_list = self.pc.tolist()
        self.d_end_list = d_end.tolist()
        self.d_mid_list = d_mid.tolist()
        self.dom_list = self.dom.tolist()

    def _joint(self, d: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Unique (card, deficit, dominates) classes present among masks."""
        stacked = np.stack([self.pc, d, self.dom.astype(np.int16)], axis=1)
        rows = np.unique(stacked, axis=0)
        return rows[:, 0].astype(np.int64), rows[:, 1].astype(np.int64), rows[:, 2].astype(bool)

    def rows(self, role: str):
        return self.rows_end if role == "end" else self.rows_mid

    def d_arr(self, role: str) -> np.ndarray:
        return self.d_end if role == "end" else self.d_mid


@lru_cache(maxsize=None)
def _tables(kind: Kind, m: int) -> _MaskTables:
    return _MaskTables(kind, m)


# ---------------------------------------------------------------------------
# Forward value DP over aggregated classes
# ---------------------------------------------------------------------------


def _req_rows(ds: np.ndarray, bs: np.ndarray, qs: np.ndarray, m: int) -> np.ndarray:
    """Requirement on the next column's cardinality, per (q, class row)."""
    r = np.maximum(ds[None, :] - qs[:, None], 0)
    dom_term = ((qs[:, None] == 0) & ~bs[None, :]).astype(r.dtype)
    return np.minimum(np.maximum(r, dom_term), m + 1)


def _fresh_table(m: int) -> np.ndarray:
    return np.full((m + 1, m + 2), _INF, dtype=np.int64)


def _to_star(g: np.ndarray, m: int) -> np.ndarray:
    return np.minimum.accumulate(g, axis=1)[:, : m + 1]


def _init_table(tabs: _MaskTables, role: str, m: int, q0: int, card: int | None) -> np.ndarray:
    """Table after placing column 1 with fixed previous-cardinality q0."""
    c0s, ds, bs = tabs.rows(role)
    if card is not None:
        keep = c0s == card
        c0s, ds, bs = c0s[keep], ds[keep], bs[keep]
    g = _fresh_table(m)
    qs = np.array([q0], dtype=np.int64)
    r = _req_rows(ds, bs, qs, m)[0]
    np.minimum.at(g, (c0s, r), c0s)
    return g


def _step(gstar: np.ndarray, tabs: _MaskTables, role: str, m: int) -> np.ndarray:
    c0s, ds, bs = tabs.rows(role)
    qs = np.arange(m + 1, dtype=np.int64)
    v = gstar[:, c0s] + c0s[None, :]
    r = _req_rows(ds, bs, qs, m)
    g = _fresh_table(m)
    idx_c = np.broadcast_to(c0s[None, :], r.shape)
    np.minimum.at(g, (idx_c.ravel(), r.ravel()), v.ravel())
    return g


def _finalize(
    gstar: np.ndarray,
    tabs: _MaskTables,
    role: str,
    m: int,
    extra_card: int = 0,
    require_card: int | None = None,
) -> int:
    """Close the line: column n's defense sees extra_card on the far side."""
    c0s, ds, bs = tabs.rows(role)
    if require_card is not None:
        keep = c0s == require_card
        c0s, ds, bs = c0s[keep], ds[keep], bs[keep]
        if not len(c0s):
            return _INF
    qs = np.arange(m + 1, dtype=np.int64)
    ok = (qs[:, None] + extra_card >= ds[None, :]) & (
        bs[None, :] | (qs[:, None] >= 1) | (extra_card >= 1)
    )
    vals = np.where(ok, gstar[:, c0s] + c0s[None, :], _INF)
    return int(vals.min(initial=_INF))


def _path_gstars(
    tabs: _MaskTables, n: int, m: int, pin_first: bool
) -> list[np.ndarray]:
    """Star tables after columns 1..n-1 (column n is closed by _finalize)."""
    g = _init_table(tabs, "end", m, 0, 0 if pin_first else None)
    gstars = [_to_star(g, m)]
    for _ in range(2, n):
        g = _step(gstars[-1], tabs, "mid", m)
        gstars.append(_to_star(g, m))
    return gstars


def _path_value(tabs: _MaskTables, n: int, pin_first: bool, pin_last: bool) -> int:
    m = tabs.m
    gstars = _path_gstars(tabs, n, m, pin_first)
    return _finalize(gstars[-1], tabs, "end", m, require_card=0 if pin_last else None)


def _cycle_value(tabs: _MaskTables, n: int) -> tuple[int, tuple[int, int]]:
    m = tabs.m
    best, best_pair = _INF, (0, 0)
    for c1 in range(m + 1):
        for cn in range(m + 1):
            g = _init_table(tabs, "mid", m, cn, c1)
            gstar = _to_star(g, m)
            for _ in range(2, n):
                gstar = _to_star(_step(gstar, tabs, "mid", m), m)
            val = _finalize(gstar, tabs, "mid", m, extra_card=c1, require_card=cn)
            if val < best:
                best, best_pair = val, (c1, cn)
    return best, best_pair


# ---------------------------------------------------------------------------
# Witness reconstruction (backward tables + lexicographic greedy)
# ---------------------------------------------------------------------------


def _mask_req(tabs: _MaskTables, role: str, p: int, m: int) -> np.ndarray:
    req = np.maximum(tabs.d_arr(role).astype(np.int64) - p, 0)
    if p == 0:
        req = np.maximum(req, (~tabs.dom).astype(np.int64))
    return np.minimum(req, m + 1)


def _suffix_tables(
    tabs: _MaskTables,
    n: int,
    m: int,
    roles: list[str],
    final_extra: int,
    final_card: int | None,
    pin: dict[int, int],
) -> list[np.ndarray]:
    """suf[i][q][r] = best cost of columns i..n given |S_{i-1}| = q and
    |S_i| >= r.  Index 0 is unused; suf[n+1] encodes 'nothing remains'."""
    qs = np.arange(m + 1, dtype=np.int64)
    end_cap = np.full((m + 1, m + 2), _INF, dtype=np.int64)
    end_cap[:, 0] = 0
    suf: list[np.ndarray | None] = [None] * (n + 2)
    suf[n + 1] = end_cap
    for i in range(n, 0, -1):
        d = tabs.d_arr(roles[i - 1]).astype(np.int64)
        b = np.full((m + 1, m + 2), _INF, dtype=np.int64)
        for q in range(m + 1):
            req = np.maximum(d - q, 0)
            if q == 0:
                req = np.maximum(req, (~tabs.dom).astype(np.int64))
            if i == n:
                ok = (q + final_extra >= d) & (tabs.dom | (q >= 1) | (final_extra >= 1))
                comp = np.where(ok, tabs.pc.astype(np.int64), _INF)
            else:
                nxt = suf[i + 1][tabs.pc.astype(np.int64), np.minimum(req, m + 1)]
                comp = np.where(nxt >= _INF, _INF, tabs.pc + nxt)
            want = pin.get(i)
            if want is not None:
                comp = np.where(tabs.pc == want, comp, _INF)
            if i == n and final_card is not None:
                comp = np.where(tabs.pc == final_card, comp, _INF)
            np.minimum.at(b[q], tabs.pc.astype(np.int64), comp)
        srev = np.minimum.accumulate(b[:, ::-1], axis=1)[:, ::-1]
        suf[i] = srev
    return suf  # type: ignore[return-value]


def _greedy_masks(
    tabs: _MaskTables,
    n: int,
    m: int,
    roles: list[str],
    target: int,
    q0: int,
    final_extra: int,
    final_card: int | None,
    pin: dict[int, int],
) -> tuple[int, ...]:
    suf = _suffix_tables(tabs, n, m, roles, final_extra, final_card, pin)
    pcs = tabs.pc.astype(np.int64)
    chosen: list[int] = []
    p, r_star, rem = q0, 0, target
    for i in range(1, n + 1):
        req = _mask_req(tabs, roles[i - 1], p, m)
        if i == n:
            d = tabs.d_arr(roles[i - 1]).astype(np.int64)
            ok = (p + final_extra >= d) & (tabs.dom | (p >= 1) | (final_extra >= 1))
            comp = np.where(ok, pcs, _INF)
            if final_card is not None:
                comp = np.where(pcs == final_card, comp, _INF)
        else:
            nxt = suf[i + 1][pcs, req]
            comp = np.where(nxt >= _INF, _INF, pcs + nxt)
        want = pin.get(i)
        if want is not None:
            comp = np.where(pcs == want, comp, _INF)
        ok_mask = (pcs >= r_star) & (comp == rem)
        if not ok_mask.any():
            raise AssertionError("witness reconstruction lost the optimum")
        mask = int(np.argmax(ok_mask))
        chosen.append(mask)
        r_star = int(req[mask])
        rem -= int(pcs[mask])
        p = int(pcs[mask])
    return tuple(chosen)


# ---------------------------------------------------------------------------
# Public oracles
# ---------------------------------------------------------------------------


def min_gda_subsets(spec: ProductSpec, want_witness: bool = True) -> GammaResult:
    """Exact minimum by cardinality-lexicographic subset enumeration.

    Among all minimum alliances the one with lexicographically smallest
    mask sequence is reported, so outputs are reproducible.
    """
    n, m = spec.n, spec.m
    if n * m > SUBSETS_VERTEX_CAP:
        raise UnsupportedSizeError(f"subset oracle capped at n*m <= {SUBSETS_VERTEX_CAP}")
    tabs = _tables(spec.g2.kind, m)
    cyc = spec.g1.kind == "cycle"
    nbr_cols = []
    d_by_col = []
    for c in range(n):
        if cyc:
            nbr_cols.append(((c - 1) % n, (c + 1) % n))
            d_by_col.append(tabs.d_mid_list)
        else:
            nbr_cols.append(tuple(x for x in (c - 1, c + 1) if 0 <= x < n))
            d_by_col.append(tabs.d_mid_list if 0 < c < n - 1 else tabs.d_end_list)
    dom_list = tabs.dom_list

    def check(masks: list[int]) -> bool:
        cards = [mask.bit_count() for mask in masks]
        for c in range(n):
            aside = sum(cards[x] for x in nbr_cols[c])
            mask = masks[c]
            if d_by_col[c][mask] > aside:
                return False
            if aside == 0 and not dom_list[mask]:
                return False
        return True

    nm = n * m
    first_k = max(1, (m + 1 + 1) // 2)  # ceil((m+1)/2): no member defends below this
    for k in range(first_k, nm + 1):
        best: tuple[int, ...] | None = None
        for combo in combinations(range(nm), k):
            masks = [0] * n
            for v in combo:
                masks[v // m] |= 1 << (v % m)
            if check(masks):
                t = tuple(masks)
                if best is None or t < best:
                    best = t
        if best is not None:
            witness = ColumnSet(spec, best) if want_witness else None
            return GammaResult(k, "subsets", witness=witness)
    raise AssertionError("the full vertex set is always a GDA")


def min_gda_columns(spec: ProductSpec, want_witness: bool = False) -> GammaResult:
    """Exact minimum via the aggregated transfer-matrix column DP."""
    n, m = spec.n, spec.m
    tabs = _tables(spec.g2.kind, m)
    if spec.g1.kind == "path":
        if m > PATH_M_CAP:
            raise UnsupportedSizeError(f"column DP capped at m <= {PATH_M_CAP} for paths")
        value = _path_value(tabs, n, pin_first=False, pin_last=False)
        witness = None
        if want_witness:
            roles = ["end"] + ["mid"] * (n - 2) + ["end"] if n > 1 else ["end"]
            masks = _greedy_masks(tabs, n, m, roles, value, 0, 0, None, {})
            witness = ColumnSet(spec, masks)
        return GammaResult(value, "column-dp", witness=witness)
    if m > CYCLE_M_CAP:
        raise UnsupportedSizeError(f"column DP capped at m <= {CYCLE_M_CAP} for cycles")
    value, (c1, cn) = _cycle_value(tabs, n)
    witness = None
    if want_witness:
        roles = ["mid"] * n
        masks = _greedy_masks(tabs, n, m, roles, value, cn, c1, cn, {1: c1})
        witness = ColumnSet(spec, masks)
    return GammaResult(value, "column-dp", witness=witness)


def compute_value_table(g2: FactorSpec, k_max: int = 9) -> ValueTable:
    """val_I / val_E for 2 <= k <= k_max via one pinned forward pass.

    val_I(k) pins both boundary columns of P_k o G2 empty, val_E(k) only
    the first; pinned columns still must be dominated by their neighbors.
    """
    if k_max < 4:
        raise InputError("k_max must be at least 4")
    m = g2.order
    if m > PATH_M_CAP:
        raise UnsupportedSizeError(f"value tables capped at m <= {PATH_M_CAP}")
    tabs = _tables(g2.kind, m)
    gstars = _path_gstars(tabs, k_max + 1, m, pin_first=True)
    val_e: dict[int, int] = {}
    val_i: dict[int, int] = {}
    for k in range(3, k_max + 1):
        val_e[k] = _finalize(gstars[k - 2], tabs, "end", m)
    for k in range(4, k_max + 1):
        val_i[k] = _finalize(gstars[k - 2], tabs, "end", m, require_card=0)
    val_e[2] = val_e[3]
    val_i[2] = val_i[3] = val_i[4]
    return ValueTable(g2=g2, k_max=k_max, val_I=val_i, val_E=val_e)


@lru_cache(maxsize=None)
def cached_value_table(kind: Kind, m: int, k_max: int = 9) -> ValueTable:
    return compute_value_table(FactorSpec(kind, m), k_max)
