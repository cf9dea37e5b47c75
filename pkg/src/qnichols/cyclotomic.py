"""Exact arithmetic in cyclotomic fields Q(zeta_N) and exact linear algebra.

Numbers are residues modulo the N-th cyclotomic polynomial with Fraction
coefficients, so each conductor gives a true field; mixed-conductor operands
are lifted to the lcm conductor.  Matrices store nonzero entries sparsely but
behave like dense matrices.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError

Rat = Union[int, Fraction]


def euler_phi(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result *= (p - 1) * p ** (e - 1)
        p += 1
    if m > 1:
        result *= m - 1
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, computed by exact division of
    x^n - 1 by the Phi_d for proper divisors d."""
    if n < 1:
        raise InputError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    assert all(c == 0 for c in num)
    return out


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CycNum:
    """An element of Q(zeta_N) in canonical reduced form (degree < phi(N))."""

    __slots__ = ("N", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence[Rat]):
        deg = euler_phi(conductor)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod(cs, cyclotomic_poly(conductor))
        cs += [Fraction(0)] * (deg - len(cs))
        self.N = conductor
        self.coeffs = tuple(cs)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def rational(value: Rat) -> "CycNum":
        return CycNum(1, [Fraction(value)])

    @staticmethod
    def zeta(n: int, power: int = 1) -> "CycNum":
        """zeta_n^power."""
        power %= n
        return CycNum(n, [Fraction(0)] * power + [Fraction(1)])

    # -- field structure -------------------------------------------------------

    def lift(self, conductor: int) -> "CycNum":
        """Rewrite in Q(zeta_M) for a multiple M of the current conductor."""
        if conductor == self.N:
            return self
        if conductor % self.N != 0:
            raise InputError(f"cannot lift conductor {self.N} to {conductor}")
        step = conductor // self.N
        out = [Fraction(0)] * (len(self.coeffs) * step)
        for k, c in enumerate(self.coeffs):
            out[k * step] = c
        return CycNum(conductor, out)

    def _pair(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.N == other.N:
            return self, other
        m = _lcm(self.N, other.N)
        return self.lift(m), other.lift(m)

    def __add__(self, other) -> "CycNum":
        other = _coerce(other)
        a, b = self._pair(other)
        return CycNum(a.N, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __radd__(self, other) -> "CycNum":
        return self.__add__(other)

    def __neg__(self) -> "CycNum":
        return CycNum(self.N, [-c for c in self.coeffs])

    def __sub__(self, other) -> "CycNum":
        return self.__add__(-_coerce(other))

    def __rsub__(self, other) -> "CycNum":
        return (-self).__add__(other)

    def __mul__(self, other) -> "CycNum":
        other = _coerce(other)
        a, b = self._pair(other)
        if len(a.coeffs) == 1:
            return CycNum(a.N, [a.coeffs[0] * b.coeffs[0]])
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycNum(a.N, prod)

    def __rmul__(self, other) -> "CycNum":
        return self.__mul__(other)

    def inv(self) -> "CycNum":
        """Multiplicative inverse via extended Euclid against Phi_N."""
        if self.is_zero():
            raise InputError("cannot invert zero")
        phi = [Fraction(c) for c in cyclotomic_poly(self.N)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        lead = _poly_trim(r0)
        if len(lead) != 1:
            raise InputError("element is a zero divisor; conductor arithmetic broken")
        scale = 1 / lead[0]
        return CycNum(self.N, [c * scale for c in s0])

    def __truediv__(self, other) -> "CycNum":
        return self * _coerce(other).inv()

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inv() ** (-k)
        out = one(self.N)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # mutable-free but equality crosses conductors; keep unhashable

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycNum({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ""
                power = f"z{self.N}" if k == 1 else f"z{self.N}^{k}"
                terms.append(f"{sign}{mag}{power}")
        out = terms[0]
        for t in terms[1:]:
            out += f" + {t}" if not t.startswith("-") else f" - {t[1:]}"
        return out

    def approx(self) -> complex:
        """Floating evaluation at exp(2 pi i / N); a sanity net, not a truth source."""
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))


def _coerce(value) -> CycNum:
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction)):
        return CycNum.rational(value)
    raise InputError(f"cannot interpret {value!r} as a cyclotomic number")


def zero(conductor: int = 1) -> CycNum:
    return CycNum(conductor, [])


def one(conductor: int = 1) -> CycNum:
    return CycNum(conductor, [1])


def _reduce_mod(coeffs: list[Fraction], phi: tuple[int, ...]) -> list[Fraction]:
    deg = len(phi) - 1
    cs = coeffs[:]
    for k in range(len(cs) - 1, deg - 1, -1):
        c = cs[k]
        if c:
            for i in range(deg + 1):
                cs[k - deg + i] -= c * phi[i]
    return cs[:deg]


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    k = len(p)
    while k > 0 and not p[k - 1]:
        k -= 1
    return p[:k]


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim(a[:])
    b = _poly_trim(b[:])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i in range(len(b)):
            a[k + i] -= c * b[i]
        a = _poly_trim(a)
    return q, a


class CycMatrix:
    """Exact matrix over a cyclotomic field; entries stored sparsely by row."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[dict[int, dict[int, CycNum]]] = None):
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, CycNum]] = data if data is not None else {}

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence]) -> "CycMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        m = cls(rows, cols)
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise InputError("ragged matrix")
            for j, v in enumerate(row):
                m.set(i, j, _coerce(v))
        return m

    @classmethod
    def identity(cls, n: int) -> "CycMatrix":
        m = cls(n, n)
        for i in range(n):
            m.set(i, i, one())
        return m

    def get(self, i: int, j: int) -> CycNum:
        return self.data.get(i, {}).get(j, zero())

    def set(self, i: int, j: int, value: CycNum) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise InputError("index out of range")
        if value.is_zero():
            self.data.get(i, {}).pop(j, None)
            if i in self.data and not self.data[i]:
                del self.data[i]
        else:
            self.data.setdefault(i, {})[j] = value

    def iter_entries(self) -> Iterator[tuple[int, int, CycNum]]:
        for i in sorted(self.data):
            for j in sorted(self.data[i]):
                yield i, j, self.data[i][j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    def copy(self) -> "CycMatrix":
        return CycMatrix(self.rows, self.cols, {i: dict(r) for i, r in self.data.items()})

    def to_dense(self) -> list[list[CycNum]]:
        return [[self.get(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch")
        out = self.copy()
        for i, j, v in other.iter_entries():
            out.set(i, j, out.get(i, j) + v)
        return out

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + other.scale(CycNum.rational(-1))

    def scale(self, c: CycNum) -> "CycMatrix":
        out = CycMatrix(self.rows, self.cols)
        for i, j, v in self.iter_entries():
            out.set(i, j, v * c)
        return out

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.cols != other.rows:
            raise InputError("shape mismatch in product")
        out = CycMatrix(self.rows, other.cols)
        for i, row in self.data.items():
            acc: dict[int, CycNum] = {}
            for k, a in row.items():
                brow = other.data.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    prev = acc.get(j)
                    acc[j] = a * b if prev is None else prev + a * b
            cleaned = {j: v for j, v in acc.items() if not v.is_zero()}
            if cleaned:
                out.data[i] = cleaned
        return out

    def transpose(self) -> "CycMatrix":
        out = CycMatrix(self.cols, self.rows)
        for i, j, v in self.iter_entries():
            out.set(j, i, v)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        keys = set()
        for i, j, _ in self.iter_entries():
            keys.add((i, j))
        for i, j, _ in other.iter_entries():
            keys.add((i, j))
        return all(self.get(i, j) == other.get(i, j) for i, j in keys)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.data

    def __repr__(self) -> str:
        return f"CycMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- elimination ----------------------------------------------------------

    def _echelon(self) -> tuple[list[list[CycNum]], list[int]]:
        """Fraction-free (Bareiss-style) elimination; returns the worked array
        and the pivot column list."""
        a = self.to_dense()
        rows, cols = self.rows, self.cols
        pivots: list[int] = []
        prev = one()
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            p = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            for i in range(r + 1, rows):
                if all(a[i][j].is_zero() for j in range(c, cols)):
                    continue
                for j in range(c + 1, cols):
                    a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev
                a[i][c] = zero()
            prev = a[r][c]
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel_basis(self) -> "CycMatrix":
        """Columns form a basis of the right kernel (cols x nullity)."""
        a, pivots = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = CycMatrix(self.cols, len(free))
        for k, fc in enumerate(free):
            vec = [zero() for _ in range(self.cols)]
            vec[fc] = one()
            # back-substitute in echelon order
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                s = zero()
                for c in range(pc + 1, self.cols):
                    if not a[r][c].is_zero() and not vec[c].is_zero():
                        s = s + a[r][c] * vec[c]
                vec[pc] = -s / a[r][pc]
            for i, v in enumerate(vec):
                basis.set(i, k, v)
        return basis


def rank(m: CycMatrix) -> int:
    return m.rank()


def kernel_basis(m: CycMatrix) -> CycMatrix:
    return m.kernel_basis()


def span_rank(vectors: Iterable[dict[int, CycNum]], dim: int) -> int:
    """Rank of a set of sparse coordinate vectors inside a dim-dimensional space."""
    vecs = list(vectors)
    m = CycMatrix(len(vecs), dim)
    for i, v in enumerate(vecs):
        for j, c in v.items():
            m.set(i, j, c)
    return m.rank()


def parse_cyc(text: str) -> CycNum:
    """Parse scalar literals: integers, a/b rationals, zN / zN^k roots of unity,
    and '*'-separated products of those, e.g. ``-1``, ``z3^2``, ``1/2*z8``."""
    text = text.strip().replace(" ", "")
    if not text:
        raise InputError("empty scalar")
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    out = one()
    for token in text.split("*"):
        if not token:
            raise InputError("empty factor in scalar")
        if token.startswith("z"):
            base, _, exp = token[1:].partition("^")
            try:
                n = int(base)
                k = int(exp) if exp else 1
            except ValueError:
                raise InputError(f"bad root-of-unity token {token!r}")
            if n < 1:
                raise InputError(f"bad conductor in {token!r}")
            out = out * CycNum.zeta(n, k)
        else:
            try:
                out = out * CycNum.rational(Fraction(token))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad rational token {token!r}")
    return out * sign
