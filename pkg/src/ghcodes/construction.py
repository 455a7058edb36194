"""Additive generalized Hadamard codes over Z_{p^s} and their Gray images.

A type (t_1, ..., t_s) fixes a generator matrix over Z_{p^s} whose rows
comprise an all-ones row followed by t_1 - 1 further rows of order p^s,
then t_i rows of order p^(s-i+1) for i = 2..s.  Columns are pinned by a
product construction: starting from the single column (1), each new row
of order p^(s-i+1) replicates the current block p^(s-i+1) times and
appends the coordinate run (0, p^(i-1), 2 p^(i-1), ...).  The code is the
Z_{p^s}-span of the rows; its Gray image is a (generally nonlinear)
p-ary code of length p^t with p^(t+1) words and minimum distance
p^(t-1) (p-1).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, InputError
from .gray import gray_matrix
from .ring import RingParams, RingVector, vector_order

DEFAULT_BUDGET_BYTES = 4 * 2**30
GH_SAMPLE_SEED = 0xC0DE
GH_SAMPLE_PAIRS = 10**6
_EXHAUSTIVE_CUTOFF = 3**6  # largest code size checked pair-by-pair by default


@dataclass(frozen=True)
class TypeSignature:
    """A validated type (t_1, ..., t_s) over Z_{p^s}."""

    params: RingParams
    ts: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def s(self) -> int:
        return self.params.s

    @property
    def t(self) -> int:
        """Length exponent: the Gray image has length p^t."""
        s = self.s
        return sum((s - i) * ti for i, ti in enumerate(self.ts)) - 1

    @property
    def n(self) -> int:
        """Length of the additive code."""
        return self.p ** (self.t - self.s + 1)

    @property
    def size(self) -> int:
        """Number of codewords, p^(t+1)."""
        return self.p ** (self.t + 1)

    @property
    def gray_length(self) -> int:
        return self.p**self.t

    @property
    def num_rows(self) -> int:
        return sum(self.ts)

    def label(self) -> str:
        return ",".join(map(str, self.ts))


def validate_type(p: int, ts: Sequence[int]) -> TypeSignature:
    """Check (t_1, ..., t_s) and wrap it up: t_1 >= 1, all entries >= 0."""
    ts = tuple(int(v) for v in ts)
    if not ts:
        raise InputError("a type needs at least one entry")
    if ts[0] < 1:
        raise InputError(f"t_1 must be >= 1, got {ts[0]}")
    if any(v < 0 for v in ts):
        raise InputError(f"type entries must be >= 0, got {ts}")
    return TypeSignature(RingParams(p, len(ts)), ts)


def generator_matrix(sig: TypeSignature) -> np.ndarray:
    """Canonical generator matrix, one row per t_i slot, shape (sum t_i, n)."""
    p, s = sig.p, sig.s
    modulus = sig.params.modulus
    mat = np.ones((1, 1), dtype=np.int64)
    for i in range(1, s + 1):
        new_rows = sig.ts[i - 1] - (1 if i == 1 else 0)
        reps = p ** (s - i + 1)
        step = p ** (i - 1)
        for _ in range(new_rows):
            width = mat.shape[1]
            tiled = np.tile(mat, (1, reps))
            fresh = np.repeat(np.arange(reps, dtype=np.int64) * step, width)[None, :]
            mat = np.vstack([tiled, fresh]) % modulus
    return mat.astype(sig.params.dtype())


def row_orders(sig: TypeSignature) -> tuple[int, ...]:
    """Additive order of each generator row, non-increasing down the matrix."""
    p, s = sig.p, sig.s
    out = []
    for i in range(1, s + 1):
        out.extend([p ** (s - i + 1)] * (sig.ts[i - 1] - (1 if i == 1 else 0)))
    return (p**s, *out)


def p_basis(sig: TypeSignature) -> list[RingVector]:
    """The t+1 vectors p^q * w_i (0 <= q < sigma_i) spanning the code over Z_p."""
    gen = generator_matrix(sig).astype(np.int64)
    modulus = sig.params.modulus
    out = []
    for row, order in zip(gen, row_orders(sig)):
        q = 1
        while q < order:  # powers p^0 .. p^(sigma_i - 1)
            out.append(RingVector(sig.params, row * q % modulus))
            q *= sig.p
    return out


def module_size(rows: np.ndarray, params: RingParams) -> int:
    """Cardinality of the Z_{p^s}-span of the given rows.

    Plain echelonization over the chain ring: repeatedly pick the entry of
    minimal p-valuation, normalize its row by a unit, clear its column.
    """
    p, s = params.p, params.s
    modulus = params.modulus
    work = [row.astype(np.int64) % modulus for row in rows]
    pivot_vals: list[int] = []
    cols_done: set[int] = set()
    while True:
        best = None
        for ri, row in enumerate(work):
            for ci in np.flatnonzero(row):
                if ci in cols_done:
                    continue
                v = 0
                e = int(row[ci])
                while e % p == 0:
                    e //= p
                    v += 1
                if best is None or v < best[0]:
                    best = (v, ri, int(ci))
        if best is None:
            break
        v, ri, ci = best
        row = work.pop(ri)
        unit = int(row[ci]) // p**v
        row = row * pow(unit, -1, modulus) % modulus  # pivot becomes p^v
        for rj, other in enumerate(work):
            if other[ci]:
                factor = int(other[ci]) // p**v
                work[rj] = (other - factor * row) % modulus
        pivot_vals.append(v)
        cols_done.add(ci)
    return p ** sum(s - v for v in pivot_vals)


@dataclass(frozen=True)
class AdditiveCode:
    """A type together with its generator matrix and p-basis matrix."""

    sig: TypeSignature
    generator: np.ndarray
    basis: np.ndarray  # (t+1, n), rows = p-basis in schedule order

    @classmethod
    def build(cls, sig: TypeSignature) -> "AdditiveCode":
        gen = generator_matrix(sig)
        basis = np.stack([v.entries for v in p_basis(sig)])
        if module_size(gen, sig.params) != sig.size:
            raise InputError(f"generators of type {sig.ts} do not span p^(t+1) words")
        gen.flags.writeable = False
        basis.flags.writeable = False
        return cls(sig, gen, basis)


def additive_bytes(sig: TypeSignature) -> int:
    return sig.size * sig.n * sig.params.dtype().itemsize


def gray_bytes(sig: TypeSignature) -> int:
    return sig.size * sig.gray_length


def materialization_bytes(sig: TypeSignature) -> int:
    """Peak-memory estimate for building and analysing the Gray image.

    The Gray matrix is held once, with roughly three more transient copies
    of its size in play during rank/kernel scans, plus the additive matrix.
    """
    return additive_bytes(sig) + 4 * gray_bytes(sig)


def _check_budget(sig: TypeSignature, budget_bytes: int) -> None:
    need = materialization_bytes(sig)
    if need > budget_bytes:
        raise CapacityError(
            f"type {sig.ts} over Z_{sig.p}^{sig.s} needs ~{need} bytes "
            f"(budget {budget_bytes})",
            required_bytes=need,
            budget_bytes=budget_bytes,
        )


def enumerate_codewords(code: AdditiveCode, chunk_rows: int = 4096) -> Iterator[np.ndarray]:
    """Stream the p^(t+1) codewords in odometer order over basis coefficients.

    Word m is sum_j ((m // p^j) mod p) * basis[j]; the first basis vector's
    coefficient varies fastest.  Yields (<=chunk_rows, n) blocks.
    """
    sig = code.sig
    p, modulus = sig.p, sig.params.modulus
    basis = code.basis.astype(np.int64)
    total = sig.size
    dtype = sig.params.dtype()
    for start in range(0, total, chunk_rows):
        ms = np.arange(start, min(start + chunk_rows, total))
        acc = np.zeros((ms.size, sig.n), dtype=np.int64)
        rest = ms.copy()
        for j in range(basis.shape[0]):
            coef = rest % p
            rest //= p
            acc += coef[:, None] * basis[j][None, :]
        yield (acc % modulus).astype(dtype)


def materialize_additive(code: AdditiveCode, budget_bytes: int = DEFAULT_BUDGET_BYTES) -> np.ndarray:
    """All codewords as one (p^(t+1), n) matrix, odometer row order."""
    sig = code.sig
    need = additive_bytes(sig)
    if need > budget_bytes:
        raise CapacityError(
            f"additive matrix for type {sig.ts} needs {need} bytes (budget {budget_bytes})",
            required_bytes=need,
            budget_bytes=budget_bytes,
        )
    p, modulus = sig.p, sig.params.modulus
    # single allocation; sums stay below 2*modulus and are folded back in place
    work_dtype = np.uint16 if 2 * modulus <= np.iinfo(np.uint16).max else np.uint32
    out = np.empty((sig.size, sig.n), dtype=work_dtype)
    out[0] = 0
    filled = 1
    for row in code.basis:
        for k in range(1, p):
            shift = (k * row.astype(np.int64) % modulus).astype(work_dtype)
            seg = out[k * filled : (k + 1) * filled]
            np.add(out[:filled], shift[None, :], out=seg)
            seg[seg >= modulus] -= work_dtype(modulus)
        filled *= p
    return out.astype(sig.params.dtype())


def _fingerprints(words: np.ndarray) -> list[bytes]:
    h = hashlib.blake2b
    return [h(row.tobytes(), digest_size=8).digest() for row in np.ascontiguousarray(words)]


@dataclass
class GrayCode:
    """A fully materialized Gray image: one uint8 row per codeword."""

    sig: TypeSignature
    words: np.ndarray
    _index: "dict[bytes, list[int]] | None" = field(default=None, repr=False)

    @property
    def length(self) -> int:
        return self.words.shape[1]

    def __len__(self) -> int:
        return self.words.shape[0]

    def index(self) -> dict[bytes, list[int]]:
        """Digest -> row indices, built on first use."""
        if self._index is None:
            idx: dict[bytes, list[int]] = {}
            for i, fp in enumerate(_fingerprints(self.words)):
                idx.setdefault(fp, []).append(i)
            self._index = idx
        return self._index

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        """Exact membership of each row: digests prefilter, full rows confirm."""
        idx = self.index()
        rows = np.ascontiguousarray(rows, dtype=np.uint8)
        out = np.zeros(rows.shape[0], dtype=bool)
        for i, fp in enumerate(_fingerprints(rows)):
            for cand in idx.get(fp, ()):
                if np.array_equal(rows[i], self.words[cand]):
                    out[i] = True
                    break
        return out

    def contains_row(self, row: np.ndarray) -> bool:
        return bool(self.contains_rows(np.asarray(row, dtype=np.uint8)[None, :])[0])

    def set_equal(self, rows: np.ndarray) -> bool:
        """Is {rows} the same set of words as this code? Exact, not probabilistic."""
        if rows.shape != self.words.shape:
            return False
        return bool(self.contains_rows(rows).all())


def materialize_gray(code: AdditiveCode, budget_bytes: int = DEFAULT_BUDGET_BYTES) -> GrayCode:
    """Gray-expand every codeword into a (p^(t+1), p^t) uint8 matrix."""
    sig = code.sig
    _check_budget(sig, budget_bytes)
    additive = materialize_additive(code, budget_bytes)
    words = gray_matrix(sig.params, additive)
    words.flags.writeable = False
    return GrayCode(sig, words)


def build_gray_code(sig: TypeSignature, budget_bytes: int = DEFAULT_BUDGET_BYTES) -> GrayCode:
    return materialize_gray(AdditiveCode.build(sig), budget_bytes)


# ---------------------------------------------------------------------------
# generalized Hadamard verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GHVerdict:
    passed: bool
    mode: str  # "exhaustive" | "sampled"
    pairs_checked: int
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


def _mod_p_diff(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a - b) mod p for uint8 symbol matrices, without leaving uint8."""
    if p > 127:
        return ((a.astype(np.int16) - b) % p).astype(np.uint8)
    d = a + (p - b)  # entries < 2p, no wraparound
    d[d >= p] -= np.uint8(p)
    return d


def _pair_rows_ok(diffs: np.ndarray, p: int) -> np.ndarray:
    """Per-row test: difference is constant, or each symbol appears length/p times."""
    m, n = diffs.shape
    counts = np.empty((m, p), dtype=np.int64)
    for sym in range(p):
        counts[:, sym] = (diffs == sym).sum(axis=1)
    return (counts.max(axis=1) == n) | (counts == n // p).all(axis=1)


def is_gh_code(
    gc: GrayCode,
    mode: str = "auto",
    pairs: int = GH_SAMPLE_PAIRS,
    seed: int = GH_SAMPLE_SEED,
) -> GHVerdict:
    """Check the Hadamard difference property of a materialized Gray image.

    Every difference of two distinct words must be a constant word or take
    each of the p symbols exactly length/p times.  "auto" checks all pairs
    for codes up to 3^6 words and falls back to seeded sampling beyond.
    """
    if mode not in ("auto", "exhaustive", "sampled"):
        raise InputError(f"unknown mode {mode!r}")
    m, n = gc.words.shape
    p = gc.sig.p
    if n % p:
        return GHVerdict(False, "exhaustive", 0, f"length {n} not divisible by p")
    if m != gc.sig.size:
        return GHVerdict(False, "exhaustive", 0, f"expected {gc.sig.size} words, found {m}")
    if mode == "auto":
        mode = "exhaustive" if m <= _EXHAUSTIVE_CUTOFF else "sampled"

    words = gc.words
    checked = 0
    if mode == "exhaustive":
        for u in range(m - 1):
            diffs = _mod_p_diff(words[u + 1 :], words[u][None, :], p)
            ok = _pair_rows_ok(diffs, p)
            checked += diffs.shape[0]
            if not ok.all():
                v = u + 1 + int(np.flatnonzero(~ok)[0])
                return GHVerdict(False, mode, checked, f"pair ({u}, {v}) is neither constant nor balanced")
        return GHVerdict(True, mode, checked)

    rng = np.random.default_rng(seed)
    remaining = pairs
    chunk = 8192
    while remaining > 0:
        k = min(chunk, remaining)
        u = rng.integers(0, m, size=k)
        v = rng.integers(0, m, size=k)
        keep = u != v
        u, v = u[keep], v[keep]
        if u.size == 0:
            continue
        diffs = _mod_p_diff(words[u], words[v], p)
        ok = _pair_rows_ok(diffs, p)
        checked += int(u.size)
        remaining -= int(u.size)
        if not ok.all():
            bad = int(np.flatnonzero(~ok)[0])
            return GHVerdict(
                False, mode, checked, f"pair ({int(u[bad])}, {int(v[bad])}) is neither constant nor balanced"
            )
    return GHVerdict(True, mode, checked)


def _bitplanes(words: np.ndarray) -> np.ndarray:
    """Pack a binary matrix into bytes along the coordinate axis."""
    return np.packbits(words, axis=1)


_POPCOUNT = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1).astype(np.int32)


def min_distance(gc: GrayCode, use_bitplanes: "bool | None" = None) -> int:
    """Minimum Hamming distance over all pairs of distinct words.

    Full pairwise scan; intended for codes a few thousand words long.  For
    p = 2 a packed-bitplane XOR/popcount path is used by default — a pure
    speed toggle that cannot change the result.
    """
    m, n = gc.words.shape
    if m < 2:
        raise InputError("need at least two words")
    p = gc.sig.p
    if use_bitplanes is None:
        use_bitplanes = p == 2
    best = n
    if use_bitplanes and p == 2:
        packed = _bitplanes(gc.words)
        for u in range(m - 1):
            d = _POPCOUNT[np.bitwise_xor(packed[u + 1 :], packed[u])].sum(axis=1).min()
            best = min(best, int(d))
    else:
        for u in range(m - 1):
            d = (gc.words[u + 1 :] != gc.words[u]).sum(axis=1).min()
            best = min(best, int(d))
    return best
