"""Finite quandles: axioms, orbits, isomorphism, catalogs and exhaustive generation.

A quandle on {1..n} is stored as an n x n table with ``table[i-1][j-1] = i > j``
(row i is the one-line form of the left translation phi_i).  All elements are
1-indexed integers; tables are row-major tuples of tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError


def cycles_to_row(cycles: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """Convert a product of disjoint cycles to a one-line permutation of {1..n}."""
    row = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
            row[a - 1] = b
    return tuple(row)


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse cycle notation like ``"(24)(56)"`` or ``"id"`` into a one-line map."""
    text = text.strip()
    if text in ("id", "", "()"):
        return tuple(range(1, n + 1))
    if not (text.startswith("(") and text.endswith(")")):
        raise InputError(f"bad cycle notation: {text!r}")
    cycles = []
    for part in text[1:-1].split(")("):
        entries = [int(c) for c in part.replace(",", " ").split()] if " " in part or "," in part \
            else [int(c) for c in part]
        cycles.append(entries)
    return cycles_to_row(cycles, n)


class Quandle:
    """A finite quandle given by its operation table (validated on construction)."""

    __slots__ = ("n", "table")

    def __init__(self, table: Sequence[Sequence[int]], check: bool = True):
        self.table = tuple(tuple(row) for row in table)
        self.n = len(self.table)
        if check and not is_quandle(self.table):
            raise InputError("table does not satisfy the quandle axioms")

    def op(self, i: int, j: int) -> int:
        """i > j."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise InputError(f"element out of range: ({i}, {j}) in quandle of size {self.n}")
        return self.table[i - 1][j - 1]

    def op_right(self, j: int, i: int) -> int:
        """j < i, the unique k with i > k = j."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise InputError(f"element out of range: ({j}, {i}) in quandle of size {self.n}")
        return self.table[i - 1].index(j) + 1

    def row(self, i: int) -> tuple[int, ...]:
        return self.table[i - 1]

    def row_order(self, i: int) -> int:
        """Order of the translation phi_i as a permutation."""
        return perm_order(self.table[i - 1])

    def elements(self) -> range:
        return range(1, self.n + 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Quandle) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"Quandle({list(map(list, self.table))})"

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(str(v) for v in row) for row in self.table]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Quandle":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InputError("empty quandle file")
        try:
            n = int(lines[0])
            rows = [[int(v) for v in ln.split()] for ln in lines[1 : n + 1]]
        except ValueError as exc:
            raise InputError(f"malformed quandle file: {exc}") from exc
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError("quandle file does not contain an n x n table")
        return cls(rows)

    def to_json_dict(self) -> dict:
        return {"size": self.n, "table": [list(row) for row in self.table]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Quandle":
        try:
            return cls(data["table"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed quandle JSON: {exc}") from exc

    @classmethod
    def from_file(cls, path: str) -> "Quandle":
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json_dict(json.loads(text))
        return cls.from_text(text)


@dataclass(frozen=True)
class QuandleIso:
    """A witnessing isomorphism: map[i-1] is the image of element i."""

    source: Quandle
    target: Quandle
    map: tuple[int, ...]

    def __post_init__(self):
        q, r, f = self.source, self.target, self.map
        for i in q.elements():
            for j in q.elements():
                if f[q.op(i, j) - 1] != r.op(f[i - 1], f[j - 1]):
                    raise InputError("map is not a quandle isomorphism")


def perm_order(row: Sequence[int]) -> int:
    n = len(row)
    seen = [False] * n
    order = 1
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = row[j] - 1
                length += 1
            order = _lcm(order, length)
    return order


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def perm_cycle_type(row: Sequence[int]) -> tuple[int, ...]:
    n = len(row)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = row[j] - 1
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths))


# -- axioms ------------------------------------------------------------------


def is_quandle(table: Sequence[Sequence[int]]) -> bool:
    """Check bijective rows, idempotence and self-distributivity."""
    n = len(table)
    if any(len(row) != n for row in table):
        return False
    full = set(range(1, n + 1))
    for i in range(n):
        if set(table[i]) != full:
            return False
        if table[i][i] != i + 1:
            return False
    for i in range(n):
        ti = table[i]
        for j in range(n):
            tj = table[j]
            tij = table[ti[j] - 1]
            for k in range(n):
                # i>(j>k) == (i>j)>(i>k)
                if ti[tj[k] - 1] != tij[ti[k] - 1]:
                    return False
    return True


def is_crossed_set(q: Quandle) -> bool:
    """i > j = j must force j > i = i."""
    for i in q.elements():
        for j in q.elements():
            if q.op(i, j) == j and q.op(j, i) != i:
                return False
    return True


# -- orbits ------------------------------------------------------------------


def inner_orbits(q: Quandle) -> list[tuple[int, ...]]:
    """Orbit partition of the inner group <phi_i>, sorted by minimal element."""
    parent = list(range(q.n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in q.elements():
        for j in q.elements():
            a, b = find(j), find(q.op(i, j))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for j in q.elements():
        groups.setdefault(find(j), []).append(j)
    return sorted((tuple(v) for v in groups.values()), key=lambda t: t[0])


def is_indecomposable(q: Quandle) -> bool:
    return len(inner_orbits(q)) == 1


def subquandle(q: Quandle, subset: Iterable[int]) -> tuple[Quandle, list[int]]:
    """Restrict q to a closed subset.  Returns (quandle, labels) with labels[k-1]
    the original element of the new element k."""
    labels = sorted(subset)
    pos = {v: k + 1 for k, v in enumerate(labels)}
    table = []
    for i in labels:
        row = []
        for j in labels:
            v = q.op(i, j)
            if v not in pos:
                raise InputError(f"subset not closed: {i} > {j} = {v}")
            row.append(pos[v])
        table.append(row)
    return Quandle(table), labels


def is_commutative_subset(q: Quandle, subset: Iterable[int]) -> bool:
    """True when i > j = j for all i, j in the subset."""
    sub = list(subset)
    return all(q.op(i, j) == j for i in sub for j in sub)


# -- isomorphism -------------------------------------------------------------


def _element_invariant(q: Quandle, orbits: list[tuple[int, ...]]) -> list[tuple]:
    orbit_of = {}
    for orb in orbits:
        for v in orb:
            orbit_of[v] = len(orb)
    inv = []
    for i in q.elements():
        moved = sum(1 for j in q.elements() if q.op(j, i) != i)
        inv.append((perm_cycle_type(q.row(i)), orbit_of[i], moved))
    return inv


def isomorphic(q1: Quandle, q2: Quandle) -> Optional[QuandleIso]:
    """Search for an isomorphism q1 -> q2 by backtracking.

    Prunes on orbit-size multiset and per-element invariants (cycle type of
    phi_i, orbit size, number of translations moving the element).
    """
    if q1.n != q2.n:
        return None
    orb1, orb2 = inner_orbits(q1), inner_orbits(q2)
    if sorted(map(len, orb1)) != sorted(map(len, orb2)):
        return None
    inv1, inv2 = _element_invariant(q1, orb1), _element_invariant(q2, orb2)
    if sorted(inv1) != sorted(inv2):
        return None
    candidates = [
        [j for j in q2.elements() if inv2[j - 1] == inv1[i - 1]] for i in q1.elements()
    ]
    image = [0] * (q1.n + 1)
    used = [False] * (q2.n + 1)

    def consistent(i: int) -> bool:
        # check every constraint f(a>b) = f(a)>f(b) that i participates in,
        # as source, argument, or target
        assigned = [j for j in q1.elements() if image[j] != 0]
        for a in assigned:
            for b in assigned:
                if a != i and b != i and q1.op(a, b) != i:
                    continue
                fc = image[q1.op(a, b)]
                if fc != 0 and fc != q2.op(image[a], image[b]):
                    return False
        return True

    order = sorted(q1.elements(), key=lambda i: len(candidates[i - 1]))

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        for j in candidates[i - 1]:
            if used[j]:
                continue
            image[i] = j
            used[j] = True
            if consistent(i) and extend(k + 1):
                return True
            image[i] = 0
            used[j] = False
        return False

    if extend(0):
        return QuandleIso(q1, q2, tuple(image[1:]))
    return None


# -- catalogs ----------------------------------------------------------------

_CATALOG_CYCLES = {
    "(12)^S3": ["(23)", "(13)", "(12)"],
    "(123)^A4": ["(243)", "(134)", "(142)", "(123)"],
    "Aff(5,2)": ["(2354)", "(1534)", "(1452)", "(1325)", "(1243)"],
    "Aff(5,3)": ["(2453)", "(1435)", "(1254)", "(1523)", "(1342)"],
    "Aff(5,4)": ["(25)(34)", "(13)(45)", "(15)(24)", "(12)(35)", "(14)(23)"],
    "(12)^S4": ["(23)(56)", "(13)(45)", "(12)(46)", "(25)(36)", "(16)(24)", "(15)(34)"],
    "(1234)^S4": ["(2436)", "(1654)", "(1456)", "(1253)", "(2634)", "(1352)"],
    "Z_T^{4,1}": ["(243)", "(134)", "(142)", "(123)", "id"],
    "Z_2^{2,2}": ["(24)", "(13)", "(24)", "(13)"],
    "Z_3^{3,1}": ["(23)", "(13)", "(12)", "id"],
    "Z_3^{3,2}": ["(23)(45)", "(13)(45)", "(12)(45)", "(123)", "(132)"],
    "Z_4^{4,2}": ["(24)(56)", "(13)(56)", "(24)(56)", "(13)(56)", "(1234)", "(1432)"],
}

#: Indecomposable quandles of size <= 6, keyed by catalog name.
INDECOMPOSABLE_NAMES = (
    "trivial(1)",
    "(12)^S3",
    "(123)^A4",
    "Aff(5,2)",
    "Aff(5,3)",
    "Aff(5,4)",
    "(12)^S4",
    "(1234)^S4",
)

#: The five decomposable quandles on two orbits central to the classification.
Z_QUANDLE_NAMES = ("Z_T^{4,1}", "Z_2^{2,2}", "Z_3^{3,1}", "Z_3^{3,2}", "Z_4^{4,2}")


def _normalize_name(name: str) -> str:
    return name.replace("{", "").replace("}", "").replace(" ", "")


_NORMALIZED = {_normalize_name(k): k for k in _CATALOG_CYCLES}


def catalog_names() -> list[str]:
    return ["trivial(n)"] + sorted(_CATALOG_CYCLES)


def catalog(name: str) -> Quandle:
    """Return a catalog quandle by name; trivial quandles as ``trivial(n)``."""
    norm = _normalize_name(name)
    if norm.startswith("trivial(") and norm.endswith(")"):
        try:
            n = int(norm[len("trivial(") : -1])
        except ValueError:
            raise InputError(f"bad trivial quandle size in {name!r}")
        if n < 1:
            raise InputError("trivial quandle size must be positive")
        return Quandle([[j + 1 for j in range(n)] for _ in range(n)], check=False)
    key = _NORMALIZED.get(norm)
    if key is None:
        raise InputError(f"unknown catalog quandle {name!r}; known: {catalog_names()}")
    cycles = _CATALOG_CYCLES[key]
    n = len(cycles)
    return Quandle([parse_cycles(c, n) for c in cycles])


def match_catalog(q: Quandle) -> Optional[str]:
    """Name of the catalog quandle isomorphic to q (including trivial(n)), or None."""
    if is_commutative_subset(q, q.elements()):
        return f"trivial({q.n})"
    for name, cycles in _CATALOG_CYCLES.items():
        if len(cycles) == q.n and isomorphic(q, catalog(name)) is not None:
            return name
    return None


def eq_permutations_quandle(n: int) -> Quandle:
    """The two-orbit normal form on {1..2n}: phi_i cycles the opposite block."""
    table = []
    for i in range(1, 2 * n + 1):
        row = []
        for j in range(1, 2 * n + 1):
            if i <= n:
                row.append(n + 1 + (j - n) % n if j > n else j)
            else:
                row.append(j if j > n else 1 + j % n)
        table.append(row)
    return Quandle(table)


# -- structural checks ---------------------------------------------------------


def invariant_closure_check(q: Quandle, subset: Iterable[int]) -> Optional[bool]:
    """Closure check for centralized subsets: with C(Y) = {i : i > j = j for
    all j in Y}, a crossed set satisfying Y u C(Y) = X must have X > Y = Y.

    Returns that truth value when the covering hypothesis holds, None
    otherwise (hypothesis not met).
    """
    ys = set(subset)
    if not ys <= set(q.elements()):
        raise InputError("subset out of range")
    cy = {i for i in q.elements() if all(q.op(i, j) == j for j in ys)}
    if ys | cy != set(q.elements()):
        return None
    image = {q.op(i, j) for i in q.elements() for j in ys}
    return image == ys


def two_orbit_normal_form(q: Quandle) -> Optional[tuple[Quandle, QuandleIso]]:
    """Normal form of a two-orbit quandle with a commutative orbit.

    Requires exactly two inner orbits of equal size, one commutative and
    isomorphic to the other as subquandles; returns the normal-form quandle
    together with an isomorphism from q, or None when the hypotheses fail.
    """
    orbits = inner_orbits(q)
    if len(orbits) != 2 or len(orbits[0]) != len(orbits[1]):
        return None
    subs = [subquandle(q, orb)[0] for orb in orbits]
    commutative = [is_commutative_subset(q, orb) for orb in orbits]
    if not any(commutative):
        return None
    if isomorphic(subs[0], subs[1]) is None:
        return None
    target = eq_permutations_quandle(len(orbits[0]))
    iso = isomorphic(q, target)
    if iso is None:
        return None
    return target, iso


# -- exhaustive generation ----------------------------------------------------


def _perms_fixing(n: int, fixed: int) -> list[tuple[int, ...]]:
    from itertools import permutations

    rest = [v for v in range(1, n + 1) if v != fixed]
    out = []
    for p in permutations(rest):
        row = list(p)
        row.insert(fixed - 1, fixed)
        out.append(tuple(row))
    return out


def enumerate_quandles(n: int) -> Iterator[Quandle]:
    """Yield every labeled quandle on {1..n}.

    Rows phi_i are assigned depth-first; self-distributivity is enforced by
    propagating the conjugation constraint phi_{i>j} = phi_i phi_j phi_i^{-1}
    whenever both sides become determined, which prunes most of the tree.
    """
    if n < 1:
        raise InputError("size must be positive")
    candidates = {i: _perms_fixing(n, i) for i in range(1, n + 1)}
    rows: list[Optional[tuple[int, ...]]] = [None] * (n + 1)

    def compose_conj(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        # a b a^{-1} as one-line maps
        inv = [0] * n
        for idx, v in enumerate(a):
            inv[v - 1] = idx + 1
        return tuple(a[b[inv[j - 1] - 1] - 1] for j in range(1, n + 1))

    def propagate(assigned: list[int]) -> Optional[list[int]]:
        """Close the partial assignment; returns newly forced row indices or None on clash."""
        added: list[int] = []
        queue = list(assigned)
        while queue:
            i = queue.pop()
            for j in range(1, n + 1):
                if rows[j] is None:
                    continue
                for a, b in ((i, j), (j, i)):
                    ra, rb = rows[a], rows[b]
                    k = ra[b - 1]
                    want = compose_conj(ra, rb)
                    if rows[k] is None:
                        rows[k] = want
                        added.append(k)
                        queue.append(k)
                    elif rows[k] != want:
                        for idx in added:
                            rows[idx] = None
                        return None
        return added

    def first_unassigned() -> int:
        for i in range(1, n + 1):
            if rows[i] is None:
                return i
        return 0

    def search() -> Iterator[Quandle]:
        i = first_unassigned()
        if i == 0:
            yield Quandle([rows[k] for k in range(1, n + 1)], check=False)
            return
        for cand in candidates[i]:
            rows[i] = cand
            added = propagate([i])
            if added is not None:
                yield from search()
                for idx in added:
                    rows[idx] = None
            rows[i] = None

    yield from search()


def iso_class_representatives(quandles: Iterable[Quandle]) -> list[Quandle]:
    """Group labeled quandles into isomorphism classes; first-seen representatives."""
    buckets: dict[tuple, list[Quandle]] = {}
    reps: list[Quandle] = []
    for q in quandles:
        orbits = inner_orbits(q)
        key = (
            q.n,
            tuple(sorted(map(len, orbits))),
            tuple(sorted(perm_cycle_type(q.row(i)) for i in q.elements())),
        )
        bucket = buckets.setdefault(key, [])
        if not any(isomorphic(q, rep) for rep in bucket):
            bucket.append(q)
            reps.append(q)
    return reps
