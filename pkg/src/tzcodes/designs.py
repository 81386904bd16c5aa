"""Support designs of codewords and extensional t-design checks.

Two incidence counters are provided.  ``"tuples"`` walks the ``C(k, t)``
t-subsets of every block into a dense counter over ranked t-subsets; it works
for any ``t``.  ``"gram"`` (t = 3 only) gets the same counts from Gram
matrices: for each point ``x``, ``B_x^T B_x`` over the blocks through ``x``
holds the number of blocks through every ``{x, y, z}``.  The Gram route is
BLAS-bound and is what makes the large m = 7 weights practical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .construct import FormulaError, dual_min_weight_count_d1
from .lincode import BinaryCode, codeword_limbs_of_weight, limbs_to_bits

_FLOAT_EXACT = 1 << 24


@dataclass
class SupportDesign:
    """Points ``0..v-1`` and a multiset of ``k``-subsets, one row per block."""

    v: int
    k: int
    blocks: np.ndarray
    t: int | None = None
    lam: int | None = None

    def __post_init__(self):
        self.blocks = np.asarray(self.blocks, dtype=np.int64).reshape(-1, self.k)
        if self.blocks.size and (self.blocks.min() < 0 or self.blocks.max() >= self.v):
            raise ValueError("block point outside 0..v-1")
        srt = np.sort(self.blocks, axis=1)
        if self.k > 1 and np.any(srt[:, 1:] == srt[:, :-1]):
            raise ValueError(f"every block must have exactly {self.k} distinct points")
        self.blocks = srt

    @property
    def b(self) -> int:
        return int(self.blocks.shape[0])

    def incidence(self) -> np.ndarray:
        inc = np.zeros((self.b, self.v), dtype=np.uint8)
        if self.b:
            inc[np.arange(self.b)[:, None], self.blocks] = 1
        return inc

    def to_dict(self, include_blocks: bool = False) -> dict:
        out = {"v": self.v, "k": self.k, "t": self.t,
               "lambda": None if self.lam is None else str(self.lam), "b": self.b}
        if include_blocks:
            out["blocks"] = self.blocks.tolist()
        return out

    def to_json(self, include_blocks: bool = False) -> str:
        return json.dumps(self.to_dict(include_blocks))


@dataclass
class DesignFailure:
    """Non-uniform incidence: extremes and one t-subset attaining each."""

    t: int
    min_count: int
    max_count: int
    witness_min: tuple[int, ...]
    witness_max: tuple[int, ...]
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"t": self.t, "min": self.min_count, "max": self.max_count,
                "witness_min": list(self.witness_min), "witness_max": list(self.witness_max)}


def blocks_from_code(code: BinaryCode, w: int, guard: int | None = None) -> SupportDesign:
    """Supports of all weight-``w`` codewords as blocks on the coordinates."""
    words = codeword_limbs_of_weight(code, w, guard)
    if w == 0:
        return SupportDesign(code.n, 0, np.zeros((words.shape[0], 0), dtype=np.int64))
    bits = limbs_to_bits(words, code.n)
    rows, cols = np.nonzero(bits)
    return SupportDesign(code.n, w, cols.reshape(-1, w))


def subset_rank(subset, v: int) -> int:
    """Colexicographic rank of a sorted subset of ``0..v-1``."""
    return sum(comb(x, i + 1) for i, x in enumerate(sorted(subset)))


def _unrank(r: int, t: int, v: int) -> tuple[int, ...]:
    out = []
    for i in range(t, 0, -1):
        x = i - 1
        while comb(x + 1, i) <= r:
            x += 1
        out.append(x)
        r -= comb(x, i)
    return tuple(sorted(out))


def incidence_counts_tuples(design: SupportDesign, t: int, chunk: int = 4096) -> np.ndarray:
    """Counter over colex-ranked t-subsets, one increment per block sub-tuple."""
    counts = np.zeros(comb(design.v, t), dtype=np.int64)
    if t == 0:
        counts[0] = design.b
        return counts
    combos = np.array(list(combinations(range(design.k), t)), dtype=np.int64)
    binom = np.array([[comb(x, i + 1) for x in range(design.v)] for i in range(t)], dtype=np.int64)
    for start in range(0, design.b, chunk):
        pts = design.blocks[start:start + chunk][:, combos]  # (chunk, C(k,t), t), sorted
        ranks = sum(binom[i][pts[:, :, i]] for i in range(t))
        counts += np.bincount(ranks.ravel(), minlength=counts.size)
    return counts


def _gram_triple_stats(design: SupportDesign, chunk: int = 1 << 16):
    """Min/max over all 3-subsets of the block count, with witnesses."""
    # float32 partial sums stay exact while each chunk is below 2^24 rows
    assert chunk < _FLOAT_EXACT
    v = design.v
    inc = design.incidence()
    best_min = (None, None)
    best_max = (None, None)
    for x in range(v - 2):
        rows = inc[inc[:, x] == 1][:, x + 1:]
        gram = np.zeros((v - x - 1, v - x - 1), dtype=np.float64)
        for s in range(0, rows.shape[0], chunk):
            part = rows[s:s + chunk].astype(np.float32)
            gram += (part.T @ part).astype(np.float64)
        iu = np.triu_indices(v - x - 1, k=1)
        vals = gram[iu]
        lo, hi = int(vals.argmin()), int(vals.argmax())
        trip_lo = (x, x + 1 + int(iu[0][lo]), x + 1 + int(iu[1][lo]))
        trip_hi = (x, x + 1 + int(iu[0][hi]), x + 1 + int(iu[1][hi]))
        if best_min[0] is None or vals[lo] < best_min[0]:
            best_min = (int(round(vals[lo])), trip_lo)
        if best_max[0] is None or vals[hi] > best_max[0]:
            best_max = (int(round(vals[hi])), trip_hi)
    return best_min, best_max


def verify_t_design(design: SupportDesign, t: int, method: str = "auto") -> int | DesignFailure:
    """Return ``lambda`` if every t-subset lies in the same number of blocks.

    ``method`` is ``"tuples"``, ``"gram"`` (t = 3) or ``"auto"``.
    """
    if not 0 <= t <= design.k <= design.v:
        raise ValueError(f"need 0 <= t <= k <= v, got t={t}, k={design.k}, v={design.v}")
    if method == "auto":
        method = "gram" if t == 3 and design.b * comb(design.k, 3) > 5 * 10 ** 7 else "tuples"
    if method == "gram":
        if t != 3:
            raise ValueError("the gram counter only handles t = 3")
        (lo, w_lo), (hi, w_hi) = _gram_triple_stats(design)
    elif method == "tuples":
        counts = incidence_counts_tuples(design, t)
        i_lo, i_hi = int(counts.argmin()), int(counts.argmax())
        lo, hi = int(counts[i_lo]), int(counts[i_hi])
        w_lo, w_hi = _unrank(i_lo, t, design.v), _unrank(i_hi, t, design.v)
    else:
        raise ValueError(f"unknown method {method!r}")
    if lo != hi:
        return DesignFailure(t, lo, hi, w_lo, w_hi, {"method": method})
    design.t, design.lam = t, lo
    return lo


def design_identity_holds(design: SupportDesign) -> bool:
    """``b * C(k, t) == lambda * C(v, t)`` for a verified design."""
    if design.t is None or design.lam is None:
        raise ValueError("design has not been verified")
    return design.b * comb(design.k, design.t) == design.lam * comb(design.v, design.t)


def _need_odd(m: int):
    if m % 2 == 0 or m < 3:
        raise ValueError("the gcd(m, e) = 1 design formulas need odd m >= 3")


def predicted_lambda_min_weight(m: int) -> int:
    """lambda of the 3-design held by the minimum-weight words of the extended code."""
    _need_odd(m)
    h = 2 ** (m - 1)
    r = 2 ** ((m + 1) // 2)
    value = Fraction((h - 1) * (h - r) * (h - r - 1) * (h - r - 2), 24 * (2 ** m - 2))
    if value.denominator != 1:
        raise FormulaError(f"lambda for m={m} evaluates to {value}")
    return int(value)


def predicted_lambda_dual8(m: int) -> int:
    """lambda of the 3-(q, 8, lambda) design from weight-8 words of the dual."""
    _need_odd(m)
    q = 2 ** m
    value = Fraction(336 * dual_min_weight_count_d1(m), q * (q - 1) * (q - 2))
    if value.denominator != 1:
        raise FormulaError(f"dual lambda for m={m} evaluates to {value}")
    return int(value)
