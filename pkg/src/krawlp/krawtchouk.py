"""Exact evaluation of higher-order Krawtchouk polynomials.

For configurations h and g of l-tuples over F_2^n, the value indexed by
(h, g) is the character sum

    K_h(g) = sum over tuples y with configuration h of
             prod_j (-1)^<x_j, y_j>

where x is any tuple with configuration g (the sum does not depend on the
choice of x).  At l = 1 these are the classical binary Krawtchouk values
K_i(j); higher l refines the Hamming scheme with joint word interactions.

Three independent evaluation routes are implemented:

* ``eval_direct``   - the literal 2^(nl)-term character sum; brute-force
                      oracle, only usable for tiny nl;
* ``eval_explicit`` - a finite sum over contingency tables whose margins
                      are the two Venn vectors; polynomially many terms;
* ``build_table``   - dynamic programming that strips one coordinate
                      position per step (blocklength n -> n-1), with the
                      n = 1 base case delegated to ``eval_explicit``.
                      This is the production path for whole tables.

``build_table_alt`` implements a second recursion that moves Venn mass
between cells at fixed blocklength; it exists purely to cross-check the
production path, and the two must agree entrywise.

All values are arbitrary-precision integers: entries reach 2^(l*n).
"""

from __future__ import annotations

import gzip
import json
import time
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from pathlib import Path

from .configs import (
    SDConfig,
    _multinomial,
    _sd_entries,
    config_count,
    enumerate_configs,
    orbit_size,
    representative_tuple,
    sd_to_venn,
)
from .errors import CapacityError, InvalidInputError, ParameterError

# 2^(n*l) tuples enumerated by the direct route at most.
DIRECT_ENUM_BUDGET = 1 << 24
# Bucket partitions of tuple space are cached only below this size.
_BUCKET_CACHE_LIMIT = 1 << 20
# Full tables are limited to this many cells.
TABLE_CELL_BUDGET = 4_000_000
# Full LP builds keep l small; see configs.MAX_SUBSET_ELL for pure config work.
MAX_TABLE_ELL = 4

TABLE_FORMAT_VERSION = 1


def classical_krawtchouk(i: int, j: int, n: int) -> int:
    """Binary Krawtchouk value K_i(j) = sum_t (-1)^t C(j,t) C(n-j, i-t)."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ParameterError(f"need 0 <= i, j <= n, got i={i}, j={j}, n={n}")
    lo = max(0, i - (n - j))
    hi = min(i, j)
    return sum((-1) ** t * comb(j, t) * comb(n - j, i - t) for t in range(lo, hi + 1))


# ---------------------------------------------------------------------------
# Direct character sum
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4)
def _tuples_by_config(n: int, ell: int) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    # Partition of all 2^(n*l) tuples by configuration entries.
    mask = (1 << n) - 1
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for p in range(1 << (n * ell)):
        words = tuple((p >> (n * j)) & mask for j in range(ell))
        buckets.setdefault(_sd_entries(words), []).append(words)
    return buckets


def _char_sum(x_words: tuple[int, ...], tuples: list[tuple[int, ...]]) -> int:
    acc = 0
    for y in tuples:
        parity = 0
        for xj, yj in zip(x_words, y):
            parity ^= (xj & yj).bit_count()
        acc += 1 - ((parity & 1) << 1)
    return acc


def eval_direct(h: SDConfig, g: SDConfig, n: int, budget: int = DIRECT_ENUM_BUDGET) -> int:
    """K_h(g) by brute-force enumeration of all tuples with configuration h."""
    if h.ell != g.ell:
        raise InvalidInputError(f"mixed levels l={h.ell} and l={g.ell}")
    ell = h.ell
    total = 1 << (n * ell)
    if total > budget:
        raise CapacityError(
            f"2^(n*l) = {total} tuples exceed the direct enumeration budget {budget}"
        )
    x = representative_tuple(g, n).words
    sd_to_venn(h, n)  # validates h for this blocklength
    if total <= _BUCKET_CACHE_LIMIT:
        bucket = _tuples_by_config(n, ell).get(h.entries, [])
        return _char_sum(x, bucket)
    mask = (1 << n) - 1
    acc = 0
    for p in range(total):
        words = tuple((p >> (n * j)) & mask for j in range(ell))
        if _sd_entries(words) != h.entries:
            continue
        parity = 0
        for xj, yj in zip(x, words):
            parity ^= (xj & yj).bit_count()
        acc += 1 - ((parity & 1) << 1)
    return acc


# ---------------------------------------------------------------------------
# Explicit contingency-table formula
# ---------------------------------------------------------------------------


def _explicit_from_venn(vg: tuple[int, ...], vh: tuple[int, ...]) -> int:
    """Sum over non-negative integer matrices F with row sums vg and column
    sums vh of  multinomial(vg(J); F(J,.)) * (-1)^(sum of F(J,K) over cells
    with |J & K| odd)."""
    m = len(vg)
    odd_cell = [[(j & k).bit_count() & 1 for k in range(m)] for j in range(m)]
    rem = list(vh)
    total = 0

    def fill(row: int, col: int, left: int, coef: int, parity: int) -> None:
        nonlocal total
        if row == m:
            total += -coef if parity else coef
            return
        if col == m:
            nxt = row + 1
            fill(nxt, 0, vg[nxt] if nxt < m else 0, coef, parity)
            return
        tail = sum(rem[col + 1 :])
        f_min = left - tail if left > tail else 0
        f_max = left if left < rem[col] else rem[col]
        for f in range(f_min, f_max + 1):
            rem[col] -= f
            fill(
                row,
                col + 1,
                left - f,
                coef * comb(left, f),
                parity ^ (odd_cell[row][col] & f),
            )
            rem[col] += f

    fill(0, 0, vg[0], 1, 0)
    return total


def eval_explicit(h: SDConfig, g: SDConfig, n: int) -> int:
    """K_h(g) via the contingency-table formula; O(n^(2^(2l))) terms."""
    if h.ell != g.ell:
        raise InvalidInputError(f"mixed levels l={h.ell} and l={g.ell}")
    vg = sd_to_venn(g, n).entries
    vh = sd_to_venn(h, n).entries
    return _explicit_from_venn(vg, vh)


# ---------------------------------------------------------------------------
# Full tables via dynamic programming
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KrawtchoukTable:
    """All values K_h(g) at one (n, l), indexed by canonical config order.

    Row index is h, column index is g.  Column 0 (trivial g) holds the
    orbit sizes; row 0 (trivial h) is all ones; every entry is bounded in
    magnitude by 2^(l*n).
    """

    n: int
    ell: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        size = config_count(self.n, self.ell)
        if len(self.values) != size or any(len(r) != size for r in self.values):
            raise InvalidInputError(f"table must be {size}x{size} for n={self.n}, l={self.ell}")

    @property
    def size(self) -> int:
        return len(self.values)

    def entry(self, h_index: int, g_index: int) -> int:
        return self.values[h_index][g_index]


def _check_table_budget(n: int, ell: int) -> int:
    if n < 1 or ell < 1:
        raise ParameterError(f"need n >= 1 and l >= 1, got n={n}, l={ell}")
    if ell > MAX_TABLE_ELL:
        raise CapacityError(f"l={ell} exceeds the table budget l <= {MAX_TABLE_ELL}")
    count = config_count(n, ell)
    if count * count > TABLE_CELL_BUDGET:
        raise CapacityError(
            f"{count}^2 table cells exceed the budget {TABLE_CELL_BUDGET}"
        )
    return count


def _strip(v: tuple[int, ...], j: int) -> tuple[int, ...]:
    return v[:j] + (v[j] - 1,) + v[j + 1 :]


def _table_rec(m: int, vg: tuple[int, ...], vh: tuple[int, ...], memo: dict) -> int:
    # Blocklength-reducing recursion.  Pivot cell: smallest bitmask with
    # vg mass, which always exists since the Venn entries sum to m >= 1.
    if m == 1:
        return _explicit_from_venn(vg, vh)
    key = (m, vg, vh)
    val = memo.get(key)
    if val is not None:
        return val
    j0 = 0
    while not vg[j0]:
        j0 += 1
    vg_next = _strip(vg, j0)
    acc = 0
    for k0, c in enumerate(vh):
        if c:
            sub = _table_rec(m - 1, vg_next, _strip(vh, k0), memo)
            acc += -sub if ((j0 & k0).bit_count() & 1) else sub
    memo[key] = acc
    return acc


def build_table(n: int, ell: int) -> KrawtchoukTable:
    """Full table of K_h(g) values, computed by blocklength recursion with
    memoization over blocklengths 1..n."""
    _check_table_budget(n, ell)
    configs = enumerate_configs(n, ell)
    venns = tuple(sd_to_venn(c, n).entries for c in configs)
    memo: dict = {}
    values = tuple(
        tuple(_table_rec(n, vg, vh, memo) for vg in venns) for vh in venns
    )
    return KrawtchoukTable(n, ell, values)


def _bump(v: tuple[int, ...], j: int) -> tuple[int, ...]:
    # +1 on the empty cell, -1 on cell j (no-op for j = 0).
    if j == 0:
        return v
    return (v[0] + 1,) + v[1:j] + (v[j] - 1,) + v[j + 1 :]


def _table_rec_alt(n: int, vg: tuple[int, ...], vh: tuple[int, ...], memo: dict) -> int:
    # Cell-moving recursion at fixed blocklength.  The pivot is the smallest
    # nonempty cell carrying vg mass; when g is trivial the value is the
    # orbit size of h.  The empty-cell term of the second sum is always
    # present (the h-side move is a no-op there).
    if vg[0] == n:
        return _multinomial(n, vh)
    key = (vg, vh)
    val = memo.get(key)
    if val is not None:
        return val
    j0 = 1
    while not vg[j0]:
        j0 += 1
    vg_next = _bump(vg, j0)
    acc = _table_rec_alt(n, vg_next, vh, memo)
    for k0 in range(1, len(vh)):
        if vh[k0]:
            vh_next = _bump(vh, k0)
            acc -= _table_rec_alt(n, vg, vh_next, memo)
            sub = _table_rec_alt(n, vg_next, vh_next, memo)
            acc += -sub if ((j0 & k0).bit_count() & 1) else sub
    memo[key] = acc
    return acc


def build_table_alt(n: int, ell: int) -> KrawtchoukTable:
    """Same table as ``build_table`` via the cell-moving recursion.

    Kept as an independent cross-validation path; not the production route.
    """
    _check_table_budget(n, ell)
    configs = enumerate_configs(n, ell)
    venns = tuple(sd_to_venn(c, n).entries for c in configs)
    memo: dict = {}
    values = tuple(
        tuple(_table_rec_alt(n, vg, vh, memo) for vg in venns) for vh in venns
    )
    return KrawtchoukTable(n, ell, values)


@lru_cache(maxsize=None)
def cached_table(n: int, ell: int) -> KrawtchoukTable:
    """Process-wide table cache; tables are immutable and safely shared."""
    return build_table(n, ell)


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an exhaustive identity sweep."""

    name: str
    checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_orthogonality(table: KrawtchoukTable) -> CheckReport:
    """Check sum_g |g| K_h(g) K_h'(g) = 2^(l n) |h| [h = h'] for all pairs."""
    configs = enumerate_configs(table.n, table.ell)
    sizes = [orbit_size(c, table.n) for c in configs]
    scale = 1 << (table.ell * table.n)
    violations = []
    checked = 0
    for a in range(len(configs)):
        row_a = table.values[a]
        for b in range(a, len(configs)):
            row_b = table.values[b]
            s = sum(w * x * y for w, x, y in zip(sizes, row_a, row_b))
            want = scale * sizes[a] if a == b else 0
            checked += 1
            if s != want:
                violations.append(f"(h={a}, h'={b}): got {s}, want {want}")
    return CheckReport("orthogonality", checked, tuple(violations))


def verify_reflection(table: KrawtchoukTable) -> CheckReport:
    """Check K_h(g) |g| = K_g(h) |h| for all pairs (cross-multiplied form)."""
    configs = enumerate_configs(table.n, table.ell)
    sizes = [orbit_size(c, table.n) for c in configs]
    violations = []
    checked = 0
    for a in range(len(configs)):
        for b in range(a, len(configs)):
            checked += 1
            if table.values[a][b] * sizes[b] != table.values[b][a] * sizes[a]:
                violations.append(
                    f"(h={a}, g={b}): {table.values[a][b]}*{sizes[b]} != "
                    f"{table.values[b][a]}*{sizes[a]}"
                )
    return CheckReport("reflection", checked, tuple(violations))


# ---------------------------------------------------------------------------
# Exports and cache
# ---------------------------------------------------------------------------


def table_to_csv(table: KrawtchoukTable) -> str:
    """CSV rendering; row/column headers are canonical config indices."""
    header = "h/g," + ",".join(str(i) for i in range(table.size))
    lines = [header]
    for i, row in enumerate(table.values):
        lines.append(str(i) + "," + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def table_cache_path(cache_dir: str | Path, n: int, ell: int) -> Path:
    return Path(cache_dir) / f"ktable-n{n}-l{ell}-v{TABLE_FORMAT_VERSION}.json.gz"


def save_table(table: KrawtchoukTable, cache_dir: str | Path) -> Path:
    """Write a table to the binary cache; deterministic bytes (mtime 0)."""
    path = table_cache_path(cache_dir, table.n, table.ell)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "format": TABLE_FORMAT_VERSION,
        "n": table.n,
        "l": table.ell,
        "values": [list(row) for row in table.values],
    }
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("ascii")
    with open(path, "wb") as fh:
        with gzip.GzipFile(fileobj=fh, mode="wb", mtime=0) as gz:
            gz.write(raw)
    return path


def load_table(n: int, ell: int, cache_dir: str | Path) -> KrawtchoukTable | None:
    """Load a cached table, or None on miss/version mismatch."""
    path = table_cache_path(cache_dir, n, ell)
    if not path.is_file():
        return None
    with gzip.open(path, "rt", encoding="ascii") as fh:
        payload = json.load(fh)
    if payload.get("format") != TABLE_FORMAT_VERSION:
        return None
    return KrawtchoukTable(
        payload["n"], payload["l"], tuple(tuple(row) for row in payload["values"])
    )


def measure_eval_paths(n: int, ell: int) -> dict[str, float | int]:
    """Time a full table via the explicit formula against the recursion.

    The asymptotic advantage of the recursion is known; where the crossover
    sits in practice is not, so we measure instead of assuming.
    """
    count = _check_table_budget(n, ell)
    configs = enumerate_configs(n, ell)
    venns = [sd_to_venn(c, n).entries for c in configs]
    t0 = time.perf_counter()
    for vh in venns:
        for vg in venns:
            _explicit_from_venn(vg, vh)
    t1 = time.perf_counter()
    memo: dict = {}
    for vh in venns:
        for vg in venns:
            _table_rec(n, vg, vh, memo)
    t2 = time.perf_counter()
    return {
        "cells": count * count,
        "explicit_seconds": t1 - t0,
        "recursion_seconds": t2 - t1,
    }
