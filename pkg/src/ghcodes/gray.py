"""The generalized Gray map over Z_{p^s} and its companion permutations.

The carrier map phi sends a residue u in Z_{p^s}, with base-p digits
(u_0, ..., u_{s-1}), to the p-ary word of length p^(s-1)

    phi(u) = (u_{s-1}, ..., u_{s-1}) + (u_0, ..., u_{s-2}) . Y

where the rows of Y are, in order, the first s-1 rows of the matrix
whose columns run through Z_p^(s-1) in base-p counting order (least
significant digit in the top row).  phi is injective, and the
coordinate-wise extension Phi maps vectors over Z_{p^s} to p-ary words
block by block.  For s = 1 phi is the identity on Z_p.

Two families of coordinate permutations make Gray images of codes over
neighbouring rings comparable:

* ``gamma(p, s)`` acts on the p^(s-1) coordinates of one phi-block;
* ``rho(p, n)`` interleaves p consecutive runs of length n.

Both are returned as explicit :class:`Permutation` objects.  Throughout,
"pi moves coordinate k to pi(k)" means ``result[pi(k)] = input[k]``;
one-line images are 1-based in I/O and 0-based internally.

The unmapping ``tau`` recovers, for u in Z_{p^s}, the unique vector over
Z_{p^(s-1)} of length p whose Gray image is gamma^(-1)(phi(u)); its
interleaved variant ``tau_tilde`` additionally undoes rho.  These drive
the recursive equivalence between codes over Z_{p^(s+1)} and Z_{p^s}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InputError, NotAGrayImage
from .ring import RingParams, RingVector, digits

__all__ = [
    "GrayWord",
    "Permutation",
    "block_lift",
    "build_y_matrix",
    "gamma",
    "gamma_extended",
    "gray",
    "gray_inverse",
    "gray_matrix",
    "gray_vector",
    "identity_permutation",
    "phi_table",
    "rho",
    "tau",
    "tau_tilde",
]


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., n-1} stored as its one-line image array.

    ``image[k]`` is where coordinate k lands: applying the permutation to
    a word x yields y with y[image[k]] = x[k].
    """

    image: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.int64)
        n = img.size
        if n == 0 or img.min() < 0 or img.max() >= n or np.bincount(img, minlength=n).max() != 1:
            raise InputError("not a permutation image")
        img = img.copy()
        img.flags.writeable = False
        object.__setattr__(self, "image", img)

    @property
    def size(self) -> int:
        return self.image.size

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Apply to a word (last axis = coordinates)."""
        x = np.asarray(x)
        if x.shape[-1] != self.size:
            raise InputError(f"word length {x.shape[-1]} != permutation size {self.size}")
        out = np.empty_like(x)
        out[..., self.image] = x
        return out

    def apply_inverse(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        if x.shape[-1] != self.size:
            raise InputError(f"word length {x.shape[-1]} != permutation size {self.size}")
        return x[..., self.image]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) == self(other(x))."""
        if self.size != other.size:
            raise InputError("size mismatch in composition")
        return Permutation(self.image[other.image])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.size)
        return Permutation(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.image, other.image)

    def one_based(self) -> tuple[int, ...]:
        """One-line image with 1-based coordinates, for display and JSON."""
        return tuple(int(v) + 1 for v in self.image)

    @classmethod
    def from_one_based(cls, image: "list[int] | tuple[int, ...]") -> "Permutation":
        return cls(np.asarray(image, dtype=np.int64) - 1)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles (1-based), each starting at its smallest point."""
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = []
            k = start
            while not seen[k]:
                seen[k] = True
                cyc.append(k + 1)
                k = int(self.image[k])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycs)


def identity_permutation(n: int) -> Permutation:
    return Permutation(np.arange(n))


def block_lift(perm: Permutation, width: int) -> Permutation:
    """Lift a permutation of blocks to the coordinates of width-sized blocks.

    Block b (coordinates b*width .. b*width+width-1) moves intact to block
    perm(b).
    """
    if width < 1:
        raise InputError("block width must be >= 1")
    base = perm.image[:, None] * width + np.arange(width)[None, :]
    return Permutation(base.reshape(-1))


# ---------------------------------------------------------------------------
# the Gray map
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _y_matrix_cached(p: int, s: int) -> np.ndarray:
    if s == 1:
        y = np.arange(p, dtype=np.int64)[None, :]
    else:
        prev = _y_matrix_cached(p, s - 1)
        top = np.tile(prev, p)
        bottom = np.repeat(np.arange(p, dtype=np.int64), p ** (s - 1))[None, :]
        y = np.vstack([top, bottom])
    y.flags.writeable = False
    return y


def build_y_matrix(p: int, s: int) -> np.ndarray:
    """The s x p^s matrix whose columns enumerate Z_p^s.

    Column c holds the base-p digits of c, least significant in row 0, so
    row i is the i-th digit sequence of 0..p^s-1.
    """
    if s < 1:
        raise InputError(f"s must be >= 1, got {s}")
    RingParams(p, s)  # validates p prime and size
    return _y_matrix_cached(p, s)


@lru_cache(maxsize=None)
def _phi_table_cached(p: int, s: int) -> np.ndarray:
    if s == 1:
        table = np.arange(p, dtype=np.uint8)[:, None]
    else:
        params = RingParams(p, s)
        u = np.arange(params.modulus, dtype=np.int64)
        dig = np.empty((params.modulus, s), dtype=np.int64)
        rest = u
        for i in range(s):
            dig[:, i] = rest % p
            rest = rest // p
        y = build_y_matrix(p, s - 1)
        table = (dig[:, s - 1 : s] + dig[:, : s - 1] @ y) % p
        table = table.astype(np.uint8)
    table.flags.writeable = False
    return table


def phi_table(params: RingParams) -> np.ndarray:
    """Rows = phi(u) for u = 0..p^s-1; shape (p^s, p^(s-1)), dtype uint8."""
    if params.p > 251:
        raise InputError("symbol alphabet must fit one byte")
    return _phi_table_cached(params.p, params.s)


@dataclass(frozen=True)
class GrayWord:
    """A p-ary word produced by the Gray map."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.uint8)
        if arr.size and arr.max() >= self.p:
            raise InputError(f"symbols must lie in [0, {self.p})")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return self.entries.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GrayWord)
            and self.p == other.p
            and np.array_equal(self.entries, other.entries)
        )

    def tolist(self) -> list[int]:
        return self.entries.tolist()


def gray(u: int, params: RingParams) -> GrayWord:
    """phi(u): the length-p^(s-1) Gray image of a single residue."""
    u = int(u)
    if not 0 <= u < params.modulus:
        raise InputError(f"{u} is not a residue mod {params.modulus}")
    return GrayWord(params.p, phi_table(params)[u])


def gray_vector(v: RingVector) -> GrayWord:
    """Phi(v): blockwise Gray image, length = len(v) * p^(s-1)."""
    table = phi_table(v.params)
    return GrayWord(v.params.p, table[v.entries].reshape(-1))


def gray_matrix(params: RingParams, rows: np.ndarray) -> np.ndarray:
    """Gray-expand a batch: (M, n) residues -> (M, n * p^(s-1)) uint8."""
    table = phi_table(params)
    m = rows.shape[0]
    return table[rows].reshape(m, -1)


@lru_cache(maxsize=None)
def _phi_inverse_cached(p: int, s: int):
    table = _phi_table_cached(p, s)
    return {row.tobytes(): u for u, row in enumerate(table)}


def gray_inverse(w: GrayWord, params: RingParams) -> RingVector:
    """Phi^(-1): split into p^(s-1)-blocks and invert each one.

    Raises NotAGrayImage when some block is not a phi-image.
    """
    if w.p != params.p:
        raise InputError("alphabet mismatch")
    width = params.p ** (params.s - 1)
    if len(w) % width:
        raise InputError(f"word length {len(w)} is not a multiple of {width}")
    inv = _phi_inverse_cached(params.p, params.s)
    blocks = w.entries.reshape(-1, width)
    out = np.empty(blocks.shape[0], dtype=np.int64)
    for i, block in enumerate(blocks):
        u = inv.get(block.tobytes())
        if u is None:
            raise NotAGrayImage(f"block {i} = {block.tolist()} has no Gray preimage")
        out[i] = u
    return RingVector(params, out)


# ---------------------------------------------------------------------------
# companion permutations
# ---------------------------------------------------------------------------


def gamma(p: int, s: int) -> Permutation:
    """The block permutation of one phi-image, an element of S_{p^(s-1)}.

    Writing k-1 = j*p^(s-2) + i with 0 <= j < p and 0 <= i < p^(s-2),
    coordinate k moves to j + i*p + 1 (1-based).  Requires s >= 2.
    """
    RingParams(p, s)
    if s < 2:
        raise InputError("gamma is defined for s >= 2 only")
    n = p ** (s - 2)
    k = np.arange(p ** (s - 1))
    j, i = divmod(k, n)
    return Permutation(j + i * p)


def gamma_extended(p: int, s: int, blocks: int) -> Permutation:
    """gamma(p, s) applied inside each of `blocks` consecutive phi-blocks."""
    g = gamma(p, s)
    width = g.size
    img = (np.arange(blocks)[:, None] * width + g.image[None, :]).reshape(-1)
    return Permutation(img)


def rho(p: int, n: int) -> Permutation:
    """Interleave p runs of length n: an element of S_{pn}.

    Writing k-1 = j*n + i with 0 <= j < p and 0 <= i < n, coordinate k
    moves to i*p + j + 1 (1-based).
    """
    RingParams(p, 1)
    if n < 1:
        raise InputError("n must be >= 1")
    k = np.arange(p * n)
    j, i = divmod(k, n)
    return Permutation(i * p + j)


# ---------------------------------------------------------------------------
# unmapping residues down one ring level
# ---------------------------------------------------------------------------


def tau(u: int, params: RingParams) -> RingVector:
    """The vector over Z_{p^(s-1)} of length p with Gray image gamma^(-1)(phi(u))."""
    if params.s < 2:
        raise InputError("tau is defined for s >= 2 only")
    w = gray(u, params)
    unshuffled = gamma(params.p, params.s).apply_inverse(w.entries)
    down = RingParams(params.p, params.s - 1)
    return gray_inverse(GrayWord(params.p, unshuffled), down)


def tau_tilde(v: RingVector) -> RingVector:
    """Coordinate-wise tau followed by rho^(-1); length p * len(v).

    For v over Z_{p^s} the result lies over Z_{p^(s-1)} and satisfies
    Phi_s(v) == gamma_ext(Phi_{s-1}(rho(tau_tilde(v)))), with gamma
    extended over len(v) blocks and rho = rho(p, len(v)).
    """
    params = v.params
    if params.s < 2:
        raise InputError("tau_tilde is defined for s >= 2 only")
    pieces = [tau(int(u), params).entries for u in v.entries]
    flat = np.concatenate(pieces) if pieces else np.empty(0, dtype=np.int64)
    r = rho(params.p, len(v))
    down = RingParams(params.p, params.s - 1)
    return RingVector(down, r.apply_inverse(flat))
