"""Family-agnostic spectrum analysis of S-box lookup tables.

Tables are length-2^n integer arrays.  The heavy loops (DDT rows, BCT
columns, Walsh components) are numpy-vectorized; full 2^n x 2^n tables
are stored as 16-bit counters for n <= 12 only, larger widths must use
max-only or sampled modes.  Scans can be partitioned over worker
processes by disjoint row/column ranges; partial maxima are merged with
a deterministic tie-break so results never depend on the partition.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import InvalidFamilyParams, NotAPermutation, ScaleRefusal
from .tower import TowerCtx

FULL_TABLE_MAX_N = 12     # 2^24 16-bit counters = 32 MB
BCT_SCAN_MAX_N = 12       # a complete BCT scan at n=14 is 2^42 work
DDT_SCAN_MAX_N = 16
WALSH_SCAN_MAX_N = 14


@dataclass
class SBoxTable:
    """A length-2^n lookup table over the canonical integer encoding."""

    n: int
    table: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.table, dtype=np.int32)
        if arr.shape != (1 << self.n,):
            raise ValueError(f"table must have exactly 2^{self.n} entries")
        if arr.size and (arr.min() < 0 or arr.max() >= (1 << self.n)):
            raise ValueError("table values out of range")
        self.table = arr

    def __len__(self):
        return self.table.shape[0]

    def __getitem__(self, i):
        return int(self.table[i])

    def __eq__(self, other):
        return (isinstance(other, SBoxTable) and self.n == other.n
                and np.array_equal(self.table, other.table))


@dataclass
class SpectrumTable:
    """A DDT, BCT or Walsh spectrum, possibly reduced to its maximum.

    mode is "full" (table present), "max-only" (complete scan, no
    storage) or "sampled" (seeded random (a, b) pairs, recorded as
    triples).  max_value / argmax always refer to the defining region:
    a != 0 for DDT, a, b != 0 for BCT, b != 0 for Walsh (absolute value).
    """

    kind: str
    n: int
    mode: str
    max_value: int
    argmax: tuple[int, int]
    table: np.ndarray | None = None
    samples: list[tuple[int, int, int]] | None = None
    seed: int | None = None

    def summary_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "delta_or_beta": self.max_value,
            "argmax": list(self.argmax),
            "mode": self.mode,
            "seed": self.seed,
        }


# -- permutation plumbing -----------------------------------------------------


def is_permutation(t: SBoxTable) -> bool:
    return bool(np.bincount(t.table, minlength=len(t)).max() == 1)


def invert(t: SBoxTable) -> SBoxTable:
    if not is_permutation(t):
        raise NotAPermutation("cannot invert a non-bijective table")
    inv = np.empty(len(t), dtype=np.int32)
    inv[t.table] = np.arange(len(t), dtype=np.int32)
    return SBoxTable(t.n, inv)


def _check_mode(kind: str, mode: str, n: int):
    if mode not in ("full", "max-only", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "sampled":
        return
    if mode == "full" and n > FULL_TABLE_MAX_N:
        raise ScaleRefusal(
            f"full {kind} table at n={n} exceeds desk scale (n <= {FULL_TABLE_MAX_N}); "
            f"use mode 'max-only' or 'sampled'")
    scan_cap = {"DDT": DDT_SCAN_MAX_N, "BCT": BCT_SCAN_MAX_N, "WALSH": WALSH_SCAN_MAX_N}[kind]
    if n > scan_cap:
        raise ScaleRefusal(
            f"complete {kind} scan at n={n} exceeds desk scale (n <= {scan_cap}); "
            f"use mode 'sampled'")


def _merge_best(cands):
    """cands: iterable of (count, a, b).  Max count, then smallest (a, b)."""
    best = max(c for c, _, _ in cands)
    sub = [(a, b) for c, a, b in cands if c == best]
    a_star = min(a for a, _ in sub)
    b_star = min(b for a, b in sub if a == a_star)
    return best, (a_star, b_star)


def _chunk(items, threads):
    k = max(1, min(threads, len(items)))
    step = (len(items) + k - 1) // k
    return [items[i:i + step] for i in range(0, len(items), step)]


def _run_chunks(worker, arglist, threads):
    if threads <= 1 or len(arglist) <= 1:
        return [worker(a) for a in arglist]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(worker, arglist))


# -- DDT ----------------------------------------------------------------------


def _ddt_rows(args):
    tbl, a_list, want_rows = args
    N = tbl.shape[0]
    x = np.arange(N, dtype=np.int32)
    rows = np.empty((len(a_list), N), dtype=np.uint16) if want_rows else None
    cands = []
    for i, a in enumerate(a_list):
        row = np.bincount(tbl ^ tbl[x ^ a], minlength=N).astype(np.uint16)
        if want_rows:
            rows[i] = row
        cnt = int(row.max())
        cands.append((cnt, a, int(row.argmax())))
    return a_list, rows, cands


def ddt(t: SBoxTable, mode: str = "full", threads: int = 1,
        seed: int = 0, samples: int = 10_000) -> SpectrumTable:
    """Difference distribution table: counts of F(x) + F(x+a) = b."""
    N = len(t)
    _check_mode("DDT", mode, t.n)
    if mode == "sampled":
        return _sampled_ddt(t, seed, samples)
    want = mode == "full"
    chunks = _chunk(list(range(1, N)), threads)
    results = _run_chunks(_ddt_rows, [(t.table, ch, want) for ch in chunks], threads)
    table = None
    if want:
        table = np.zeros((N, N), dtype=np.uint16)
        table[0, 0] = N
        for a_list, rows, _ in results:
            table[np.asarray(a_list)] = rows
    best, argmax = _merge_best([c for _, _, cands in results for c in cands])
    return SpectrumTable("DDT", t.n, mode, best, argmax, table=table)


def _sampled_ddt(t, seed, samples):
    N = len(t)
    rng = np.random.default_rng(seed)
    x = np.arange(N, dtype=np.int32)
    triples = []
    for _ in range(samples):
        a = int(rng.integers(1, N))
        b = int(rng.integers(0, N))
        cnt = int(np.count_nonzero((t.table ^ t.table[x ^ a]) == b))
        triples.append((a, b, cnt))
    best, argmax = _merge_best([(c, a, b) for a, b, c in triples])
    return SpectrumTable("DDT", t.n, "sampled", best, argmax,
                         samples=triples, seed=seed)


def delta_uniformity(t: SBoxTable, threads: int = 1) -> int:
    return ddt(t, mode="max-only", threads=threads).max_value


# -- BCT, definitional route --------------------------------------------------


def _bct_cols(args):
    """Definitional scan of BCT columns: gamma_b(x) = F^-1(F(x) + b), then
    for every ordered pair (x, u) with u = x + a the condition
    gamma_b(x) + gamma_b(u) = a is tested and tallied per a."""
    tbl, inv, b_list, want_cols = args
    N = tbl.shape[0]
    x = np.arange(N, dtype=np.int32)
    blk = max(1, (1 << 20) // N)
    # the pairwise xor matrix x ^ u is b-independent; precompute when it fits
    idx_full = x[:, None] ^ x[None, :] if N <= 2048 else None
    cols = np.empty((len(b_list), N), dtype=np.uint16) if want_cols else None
    cands = []
    for i, b in enumerate(b_list):
        gb = inv[tbl ^ b]
        col = np.zeros(N, dtype=np.int64)
        for x0 in range(0, N, blk):
            xs = x[x0:x0 + blk]
            idx = idx_full[x0:x0 + blk] if idx_full is not None else xs[:, None] ^ x[None, :]
            hits = (gb[x0:x0 + blk, None] ^ gb[None, :]) == idx
            col += np.bincount(idx[hits], minlength=N)
        if want_cols:
            cols[i] = col.astype(np.uint16)
        cnt = int(col[1:].max())
        cands.append((cnt, int(col[1:].argmax()) + 1, b))
    return b_list, cols, cands


def bct(t: SBoxTable, mode: str = "full", threads: int = 1,
        seed: int = 0, samples: int = 10_000) -> SpectrumTable:
    """Boomerang connectivity table, by the inverse-based definition."""
    N = len(t)
    _check_mode("BCT", mode, t.n)
    inv = invert(t).table
    if mode == "sampled":
        return _sampled_bct(t, inv, seed, samples)
    want = mode == "full"
    chunks = _chunk(list(range(1, N)), threads)
    results = _run_chunks(_bct_cols, [(t.table, inv, ch, want) for ch in chunks], threads)
    table = None
    if want:
        table = np.zeros((N, N), dtype=np.uint16)
        table[:, 0] = N
        table[0, :] = N
        for b_list, cols, _ in results:
            table[:, np.asarray(b_list)] = cols.T
    best, argmax = _merge_best([c for _, _, cands in results for c in cands])
    return SpectrumTable("BCT", t.n, mode, best, argmax, table=table)


def _bct_entry(tbl, inv, a, b):
    N = tbl.shape[0]
    x = np.arange(N, dtype=np.int32)
    gb = inv[tbl ^ b]
    return int(np.count_nonzero((gb ^ gb[x ^ a]) == a))


def _sampled_bct(t, inv, seed, samples):
    N = len(t)
    rng = np.random.default_rng(seed)
    pairs = [(int(rng.integers(1, N)), int(rng.integers(1, N))) for _ in range(samples)]
    triples = []
    # group by b so gamma_b is computed once per distinct b
    gb_cache_b, gb = None, None
    x = np.arange(N, dtype=np.int32)
    for a, b in sorted(pairs, key=lambda p: p[1]):
        if b != gb_cache_b:
            gb = inv[t.table ^ b]
            gb_cache_b = b
        triples.append((a, b, int(np.count_nonzero((gb ^ gb[x ^ a]) == a))))
    best, argmax = _merge_best([(c, a, b) for a, b, c in triples])
    return SpectrumTable("BCT", t.n, "sampled", best, argmax,
                         samples=triples, seed=seed)


def boomerang_uniformity(t: SBoxTable, threads: int = 1) -> int:
    return bct(t, mode="max-only", threads=threads).max_value


# -- BCT, inverse-free pair-count route ---------------------------------------


def bct_lqsl(t: SBoxTable, a: int, b: int) -> int:
    """Number of pairs (x, y) with F(x)+F(y) = b and F(x+a)+F(y+a) = b.

    The second equation pins y = F^-1(F(x) + b) for a bijective table, so
    the count is over x with both system equations checked explicitly.
    """
    if not is_permutation(t):
        raise NotAPermutation("pair counting needs a bijective table")
    N = len(t)
    pos = np.empty(N, dtype=np.int32)
    pos[t.table] = np.arange(N, dtype=np.int32)
    y = pos[t.table ^ b]
    x = np.arange(N, dtype=np.int32)
    ok = (t.table[x ^ a] ^ t.table[y ^ a]) == b
    ok &= (t.table ^ t.table[y]) == b
    return int(np.count_nonzero(ok))


def _lqsl_cols(args):
    """Pair-count scan: for fixed b, pairs (u, v) with matching u ^ sigma(u)
    contribute to S(u ^ v, b); runs of equal h-values are enumerated."""
    tbl, pos, b_list = args
    N = tbl.shape[0]
    x = np.arange(N, dtype=np.int32)
    cands = []
    for b in b_list:
        sigma = pos[tbl ^ b]
        h = x ^ sigma
        order = np.argsort(h, kind="stable")
        hs = h[order]
        cuts = np.flatnonzero(np.diff(hs)) + 1
        starts = np.concatenate(([0], cuts))
        ends = np.concatenate((cuts, [N]))
        counts: dict[int, int] = {}
        for s, e in zip(starts, ends):
            if e - s < 2:
                continue
            mem = order[s:e]
            for i in range(len(mem)):
                for j in range(len(mem)):
                    if i != j:
                        aa = int(mem[i] ^ mem[j])
                        counts[aa] = counts.get(aa, 0) + 1
        if counts:
            cnt = max(counts.values())
            a_star = min(a for a, c in counts.items() if c == cnt)
            cands.append((cnt, a_star, b))
        else:
            cands.append((0, 1, b))
    return cands


def boomerang_uniformity_lqsl(t: SBoxTable, threads: int = 1) -> int:
    """max S_F(a, b) over nonzero (a, b), via the pair-count formulation."""
    if not is_permutation(t):
        raise NotAPermutation("pair counting needs a bijective table")
    _check_mode("BCT", "max-only", t.n)
    N = len(t)
    pos = np.empty(N, dtype=np.int32)
    pos[t.table] = np.arange(N, dtype=np.int32)
    chunks = _chunk(list(range(1, N)), threads)
    results = _run_chunks(_lqsl_cols, [(t.table, pos, ch) for ch in chunks], threads)
    best, _ = _merge_best([c for cands in results for c in cands])
    return best


# -- Walsh spectrum -----------------------------------------------------------


def _fwht(v: np.ndarray) -> np.ndarray:
    a = v.astype(np.int32, copy=True)
    n = a.shape[0]
    h = 1
    while h < n:
        a = a.reshape(-1, 2 * h)
        left = a[:, :h]
        right = a[:, h:]
        tmp = left - right
        left += right
        right[:] = tmp
        a = a.reshape(-1)
        h *= 2
    return a


def _parity_lut(n: int) -> np.ndarray:
    v = np.arange(1 << n, dtype=np.int32)
    p = v.copy()
    for shift in (16, 8, 4, 2, 1):
        p ^= p >> shift
    return (p & 1).astype(np.int8)


def _walsh_cols(args):
    tbl, b_list, want_cols, n = args
    lut = _parity_lut(n)
    cols = np.empty((len(b_list), tbl.shape[0]), dtype=np.int16) if want_cols else None
    cands = []
    for i, b in enumerate(b_list):
        signs = 1 - 2 * lut[tbl & b].astype(np.int32)
        w = _fwht(signs)
        if want_cols:
            cols[i] = w.astype(np.int16)
        aw = np.abs(w)
        cnt = int(aw.max())
        cands.append((cnt, int(aw.argmax()), b))
    return b_list, cols, cands


def walsh(t: SBoxTable, mode: str = "full", threads: int = 1) -> SpectrumTable:
    """Walsh spectrum W(a, b) = sum_x (-1)^(<b,F(x)> + <a,x>), b != 0.

    Components are indexed by the output mask b under the GF(2) bit inner
    product; this is the trace-pairing spectrum up to a relabeling of b
    (and of a), so maxima, Parseval sums and nonlinearity agree exactly.
    """
    N = len(t)
    _check_mode("WALSH", mode, t.n)
    want = mode == "full"
    chunks = _chunk(list(range(1, N)), threads)
    results = _run_chunks(_walsh_cols, [(t.table, ch, want, t.n) for ch in chunks], threads)
    table = None
    if want:
        table = np.zeros((N, N), dtype=np.int16)
        table[0, 0] = N
        for b_list, cols, _ in results:
            table[:, np.asarray(b_list)] = cols.T
    best, argmax = _merge_best([c for _, _, cands in results for c in cands])
    return SpectrumTable("WALSH", t.n, mode, best, argmax, table=table)


def nonlinearity(t: SBoxTable, threads: int = 1) -> int:
    """2^(n-1) - max|W|/2 over nonzero components."""
    w = walsh(t, mode="max-only", threads=threads)
    return (1 << (t.n - 1)) - w.max_value // 2


# -- baseline families --------------------------------------------------------


def baseline_family(family: int, tower: TowerCtx, i: int | None = None,
                    gamma: int | None = None) -> SBoxTable:
    """The first three known 4-uniform-BCT families over GF(2^n), n = 2 mod 4.

    1: x^(2^n - 2);  2: x^(2^i + 1) with gcd(i, n) = 2;
    3: x^(2^t + 2) + gamma*x with t = n/2 and ord(gamma^(2^t - 1)) = 3
    (gamma searched in canonical order when not supplied).
    """
    n = tower.n
    N = tower.order
    if n % 4 != 2:
        raise InvalidFamilyParams(f"baseline families need n = 2 (mod 4), got n={n}")
    if family == 1:
        arr = [0] + [tower.inv(x) for x in range(1, N)]
    elif family == 2:
        if i is None or not 0 < i < n or gcd(i, n) != 2:
            raise InvalidFamilyParams(f"family 2 needs exponent i with gcd(i, {n}) = 2")
        e = (1 << i) + 1
        arr = [tower.pow(x, e) for x in range(N)]
    elif family == 3:
        tt = n // 2
        sub = (1 << tt) - 1
        if gamma is None:
            gamma = next((g for g in range(1, N) if _ord3(tower, g, sub)), None)
            if gamma is None:
                raise InvalidFamilyParams("no gamma with ord(gamma^(2^t-1)) = 3 exists")
        elif not _ord3(tower, gamma, sub):
            raise InvalidFamilyParams(
                f"gamma={gamma:#x} fails ord(gamma^(2^{tt}-1)) = 3")
        e = (1 << tt) + 2
        arr = [tower.pow(x, e) ^ tower.mul(gamma, x) for x in range(N)]
    else:
        raise InvalidFamilyParams(f"unknown baseline family {family}")
    return SBoxTable(n, np.array(arr, dtype=np.int32))


def _ord3(tower: TowerCtx, gamma: int, e: int) -> bool:
    if gamma == 0:
        return False
    u = tower.pow(gamma, e)
    return u != 1 and tower.pow(u, 3) == 1


# -- affine equivalence helpers -----------------------------------------------


def gf2_matrix_rank(cols: list[int]) -> int:
    rows = list(cols)
    nbits = max((c.bit_length() for c in rows), default=0)
    rank = 0
    for bit in range(nbits):
        piv = next((i for i in range(rank, len(rows)) if (rows[i] >> bit) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and (rows[i] >> bit) & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def random_invertible_matrix(n: int, rng) -> list[int]:
    """n random column vectors forming an invertible GF(2) matrix."""
    while True:
        cols = [rng.randrange(1, 1 << n) for _ in range(n)]
        if gf2_matrix_rank(cols) == n:
            return cols


def affine_table(n: int, cols: list[int], const: int = 0) -> SBoxTable:
    """Lookup table of x -> const + M x over GF(2)^n."""
    arr = np.array([const], dtype=np.int32)
    for j in range(n):
        arr = np.concatenate([arr, arr ^ cols[j]])
    return SBoxTable(n, arr)


def compose(outer: SBoxTable, inner: SBoxTable) -> SBoxTable:
    if outer.n != inner.n:
        raise ValueError("width mismatch")
    return SBoxTable(outer.n, outer.table[inner.table])
