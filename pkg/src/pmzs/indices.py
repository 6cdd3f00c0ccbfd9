"""Index combinatorics: admissibility, run-length form, dual index, weak compositions.

An index is a plain tuple of positive integers.  The empty tuple is a legal
index value (it appears as a chain boundary in connected states); admissibility
is a predicate, not a type constraint.
"""

from __future__ import annotations

from math import comb
from typing import Iterator

from .errors import DomainError

Index = tuple[int, ...]

# Enumeration entry points refuse weights beyond this to bound memory.
WEIGHT_CAP = 64


def is_admissible(idx: Index) -> bool:
    """True iff idx is nonempty, all parts >= 1, and the last part >= 2."""
    return len(idx) > 0 and all(p >= 1 for p in idx) and idx[-1] >= 2


def measures(idx: Index) -> tuple[int, int]:
    """Return (weight, depth) = (sum of parts, number of parts)."""
    return sum(idx), len(idx)


def _check_admissible(idx: Index) -> None:
    if not is_admissible(idx):
        raise DomainError(f"index {idx!r} is not admissible (need nonempty, last part >= 2)")


def run_decompose(idx: Index) -> list[tuple[int, int]]:
    """Decompose an admissible index into runs [(a_1, b_1), ..., (a_t, b_t)].

    The runs reassemble as ({1}^{a_1-1}, b_1+1, ..., {1}^{a_t-1}, b_t+1);
    the decomposition is unique.
    """
    _check_admissible(idx)
    runs: list[tuple[int, int]] = []
    ones = 0
    for part in idx:
        if part == 1:
            ones += 1
        else:
            runs.append((ones + 1, part - 1))
            ones = 0
    # admissibility guarantees the last part is >= 2, so no trailing ones
    assert ones == 0
    return runs


def reassemble(runs: list[tuple[int, int]]) -> Index:
    """Inverse of run_decompose."""
    parts: list[int] = []
    for a, b in runs:
        if a < 1 or b < 1:
            raise DomainError(f"run ({a}, {b}) must have both entries >= 1")
        parts.extend([1] * (a - 1))
        parts.append(b + 1)
    return tuple(parts)


def dual(idx: Index) -> Index:
    """Dual of an admissible index: reverse the runs and swap (a, b) in each."""
    runs = run_decompose(idx)
    return reassemble([(b, a) for a, b in reversed(runs)])


def compositions(m: int, r: int) -> list[Index]:
    """All weak compositions of m into r parts, in lexicographic order.

    Exactly C(m+r-1, r-1) tuples, each summing to m.
    """
    if m < 0 or r < 1:
        raise DomainError(f"need m >= 0 and r >= 1, got m={m}, r={r}")
    if m > WEIGHT_CAP:
        raise DomainError(f"composition target {m} exceeds cap {WEIGHT_CAP}")
    out: list[Index] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], m, r)
    assert len(out) == comb(m + r - 1, r - 1)
    return out


def admissible_indices(weight: int) -> Iterator[Index]:
    """Yield all admissible indices of exactly the given weight (2^{w-2} of them)."""
    if weight > WEIGHT_CAP:
        raise DomainError(f"weight {weight} exceeds cap {WEIGHT_CAP}")
    if weight < 2:
        return

    def rec(prefix: list[int], remaining: int) -> Iterator[Index]:
        # last slot: any value >= 2
        if remaining >= 2:
            yield tuple(prefix + [remaining])
        for first in range(1, remaining - 1):
            yield from rec(prefix + [first], remaining - first)

    yield from rec([], weight)


def parse_index(text: str) -> Index:
    """Parse "k1,k2,...,kr" into an index tuple; "" parses to the empty index."""
    text = text.strip()
    if not text:
        return ()
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit() or int(tok) < 1:
            raise DomainError(f"bad index component {tok!r}: expected a positive integer")
        parts.append(int(tok))
    return tuple(parts)


def format_index(idx: Index) -> str:
    """Render an index in the comma-separated text format."""
    return ",".join(str(p) for p in idx)
