"""Rank-two root-system combinatorics: characteristic sequences and Cartan detection.

A characteristic sequence is a tuple of positive integers whose eta-matrix
product is -id while every proper prefix product keeps a nonnegative first
column.  The set of all of them is closed under rotation and under the
insertion rule inverse to the length-reducing equivalence; enumeration uses
that closure, with a brute-force DFS as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError, InvariantViolationError

Mat2 = tuple[tuple[int, int], tuple[int, int]]

ID2: Mat2 = ((1, 0), (0, 1))
NEG_ID2: Mat2 = ((-1, 0), (0, -1))


def eta(c: int) -> Mat2:
    """The SL(2,Z) companion matrix [[c, -1], [1, 0]]."""
    return ((c, -1), (1, 0))


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def is_characteristic(seq: Sequence[int]) -> bool:
    """Product of eta(c_i) equals -id with nonnegative first columns of all
    proper prefix products."""
    if not seq or any(c < 1 for c in seq):
        return False
    m = ID2
    for idx, c in enumerate(seq):
        m = mat_mul(m, eta(c))
        last = idx == len(seq) - 1
        if not last and (m[0][0] < 0 or m[1][0] < 0):
            return False
    return m == NEG_ID2


@dataclass(frozen=True)
class CharSeq:
    """A verified characteristic sequence."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if not is_characteristic(self.entries):
            raise InputError(f"not a characteristic sequence: {self.entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def rotations(self) -> list[tuple[int, ...]]:
        e = self.entries
        return [e[k:] + e[:k] for k in range(len(e))]


def reduce_seq(seq: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Length-reducing rule: (c1, 1, c3, c4, ...) -> (c1-1, c3-1, c4, ...).

    Requires c2 = 1 and length >= 4 (callers rotate first); returns None when
    the rule does not apply or would produce non-positive entries.
    """
    seq = tuple(seq)
    if len(seq) < 4 or seq[1] != 1:
        return None
    out = (seq[0] - 1, seq[2] - 1) + seq[3:]
    if any(c < 1 for c in out):
        return None
    return out


def insert_inverse(seq: Sequence[int], position: int = 1) -> tuple[int, ...]:
    """Right-to-left application of the reduction rule, on the rotation of the
    sequence starting at the given 1-based position: bumps the two leading
    entries of that rotation and inserts a 1 between them (length + 1).

    ``reduce_seq(insert_inverse(s, 1)) == s`` wherever defined.
    """
    seq = tuple(seq)
    n = len(seq)
    if not 1 <= position <= n:
        raise InputError(f"position {position} out of range for length {n}")
    rot = seq[position - 1 :] + seq[: position - 1]
    return (rot[0] + 1, 1, rot[1] + 1) + rot[2:]


def enumerate_charseqs(max_len: int) -> list[tuple[int, ...]]:
    """All characteristic sequences of length <= max_len.

    Closure of {(1,1,1)} under rotation and inverse reduction; every output is
    re-verified, and sequences are deduplicated as plain tuples (rotations are
    distinct members).
    """
    if max_len > 20:
        raise InputError("max_len must be <= 20")
    found: set[tuple[int, ...]] = set()
    if max_len >= 3:
        frontier = {(1, 1, 1)}
        while frontier:
            new: set[tuple[int, ...]] = set()
            for seq in frontier:
                for rot in CharSeq(seq).rotations():
                    if rot not in found:
                        found.add(rot)
                        new.add(rot)
                if len(seq) < max_len:
                    for pos in range(1, len(seq) + 1):
                        longer = insert_inverse(seq, pos)
                        if longer not in found:
                            found.add(longer)
                            new.add(longer)
            frontier = new
    for seq in found:
        if not is_characteristic(seq):
            raise InvariantViolationError(f"generated sequence fails verification: {seq}")
    return sorted(found, key=lambda s: (len(s), s))


def enumerate_charseqs_dfs(max_len: int) -> list[tuple[int, ...]]:
    """Independent brute-force oracle: depth-first search over entry values
    bounded by max_len - 2, pruning on prefix first-column nonnegativity."""
    if max_len > 12:
        raise InputError("DFS oracle is intended for max_len <= 12")
    bound = max(1, max_len - 2)
    out: list[tuple[int, ...]] = []

    def walk(prefix: list[int], m: Mat2):
        if len(prefix) >= 3 and m == NEG_ID2:
            out.append(tuple(prefix))
            # -id times any further eta has negative first column, so stop
            return
        if len(prefix) == max_len:
            return
        if prefix and (m[0][0] < 0 or m[1][0] < 0):
            return
        for c in range(1, bound + 1):
            prefix.append(c)
            walk(prefix, mat_mul(m, eta(c)))
            prefix.pop()

    walk([], ID2)
    return sorted(out, key=lambda s: (len(s), s))


def small_neighbor_witness(seq: Sequence[int]) -> int:
    """Return a 1-based index i with c_i = 1 and a cyclic neighbor in {1,2,3}.

    Every characteristic sequence has one (the reduction rule keeps shrinking
    a sequence until such a pattern is exposed); absence would contradict the
    enumeration machinery and raises InvariantViolationError.
    """
    entries = CharSeq(tuple(seq)).entries
    n = len(entries)
    for i in range(n):
        if entries[i] != 1:
            continue
        if entries[(i + 1) % n] in (1, 2, 3) or entries[(i - 1) % n] in (1, 2, 3):
            return i + 1
    raise InvariantViolationError(f"no witness index in {entries}")


@dataclass(frozen=True)
class CartanPair:
    """Off-diagonal magnitudes (c1, c2) of a rank-two Cartan matrix
    [[2, -c1], [-c2, 2]]."""

    c1: int
    c2: int

    def __post_init__(self):
        if self.c1 < 0 or self.c2 < 0:
            raise InputError("Cartan entries must be nonnegative magnitudes")


def finite_type(pair: CartanPair) -> bool:
    """Indecomposable rank-two finite type: 1 <= c1*c2 <= 3."""
    return 1 <= pair.c1 * pair.c2 <= 3


def detect_finite_object(pairs: Sequence[CartanPair]) -> int:
    """Given the cyclic Cartan data of a rank-two object chain, locate a
    finite-type position.

    The alternating sequence (pairs[0].c1, pairs[1].c2, pairs[2].c1, ...) must
    be characteristic; returns a 1-based index i into that sequence such that
    c_i = 1 and a cyclic neighbor lies in {1,2,3}, which makes the Cartan
    matrix at the corresponding object finite type.
    """
    seq = tuple(p.c1 if k % 2 == 0 else p.c2 for k, p in enumerate(pairs))
    if not is_characteristic(seq):
        raise InputError(f"alternating Cartan data is not characteristic: {seq}")
    return small_neighbor_witness(seq)
