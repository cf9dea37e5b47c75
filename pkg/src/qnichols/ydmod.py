"""Group-graded modules with conjugation-compatible actions, and their braidings.

A module over a FinGroup is a basis with a group-element degree per basis
vector and an exact action matrix per group element; the compatibility
h . V_g <= V_{hgh^-1} makes the braiding c(v (x) w) = (g.w) (x) v well defined.
Only rank-one centralizer characters are constructed natively; anything
higher-dimensional can be supplied as explicit matrices.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .cyclotomic import CycMatrix, CycNum, one
from .envgroup import FinGroup
from .errors import InputError, InvariantViolationError
from .quandle import Quandle


class YDModule:
    """A Yetter-Drinfeld module given by degrees and per-element action matrices."""

    def __init__(
        self,
        group: FinGroup,
        degree: Sequence[int],
        actions: Sequence[CycMatrix],
        check: bool = True,
    ):
        self.group = group
        self.degree = tuple(degree)
        self.dim = len(self.degree)
        if len(actions) != group.order:
            raise InputError("need one action matrix per group element")
        self.actions = tuple(actions)
        if check:
            self._validate()

    def _validate(self) -> None:
        g = self.group
        ident = CycMatrix.identity(self.dim)
        if self.actions[0] != ident:
            raise InputError("identity must act as the identity matrix")
        for a in self.actions:
            if (a.rows, a.cols) != (self.dim, self.dim):
                raise InputError("action matrix shape mismatch")
        # multiplicativity: checking generators against everything extends by induction
        gens = g.generator_ids or tuple(range(g.order))
        for s in gens:
            for t in range(g.order):
                if self.actions[s] @ self.actions[t] != self.actions[g.mul(s, t)]:
                    raise InputError("action matrices are not multiplicative")
        # YD compatibility: s maps the degree-d component into degree s d s^-1
        for s in range(g.order):
            for i, j, v in self.actions[s].iter_entries():
                if self.degree[i] != g.conj(s, self.degree[j]):
                    raise InputError("action violates the grading compatibility")

    def action(self, elem: int) -> CycMatrix:
        return self.actions[elem]

    def __repr__(self) -> str:
        return f"YDModule(dim={self.dim}, degrees={self.degree})"


def extend_character(
    group: FinGroup, subgroup: Sequence[int], character: dict[int, CycNum]
) -> dict[int, CycNum]:
    """Extend a character given on generators multiplicatively over a subgroup.

    Raises InputError when the values conflict (non-multiplicative character)
    or the given elements do not generate the subgroup."""
    sub = set(subgroup)
    for x in character:
        if x not in sub:
            raise InputError(f"character argument {x} lies outside the subgroup")
    values: dict[int, CycNum] = {0: one()}
    for x, v in character.items():
        if x in values and values[x] != v:
            raise InputError("character conflicts with identity value")
        values[x] = v
    frontier = list(values)
    while frontier:
        a = frontier.pop()
        for b in list(values):
            for x, y in ((a, b), (b, a)):
                prod = group.mul(x, y)
                want = values[x] * values[y]
                cur = values.get(prod)
                if cur is None:
                    values[prod] = want
                    frontier.append(prod)
                elif cur != want:
                    raise InputError("character is not multiplicative on the centralizer")
    if set(values) != sub:
        raise InputError("character generators do not generate the centralizer")
    return values


def induced_module(
    group: FinGroup, class_rep: int, character: dict[int, CycNum]
) -> YDModule:
    """Simple module attached to a conjugacy class and a centralizer character.

    Basis indexed by the class (ascending element ids); coset representatives
    u_t are minimal in the element order, making all matrices reproducible."""
    centralizer = group.centralizer(class_rep)
    chi = extend_character(group, centralizer, character)
    cls = sorted(group.conjugacy_class_of(class_rep))
    index = {t: k for k, t in enumerate(cls)}
    reps = {}
    for t in cls:
        reps[t] = next(u for u in range(group.order) if group.conj(u, class_rep) == t)
    actions = []
    for s in range(group.order):
        m = CycMatrix(len(cls), len(cls))
        for i, t in enumerate(cls):
            t2 = group.conj(s, t)
            j = index[t2]
            # u_{t2}^{-1} s u_t lies in the centralizer of the class rep
            c = group.mul(group.inv(reps[t2]), group.mul(s, reps[t]))
            m.set(j, i, chi[c])
        actions.append(m)
    return YDModule(group, cls, actions)


def support_quandle(v: YDModule) -> tuple[Quandle, list[int]]:
    """The set of degrees with the conjugation operation, plus its labeling.

    labels[k-1] is the group element carried by quandle element k."""
    labels = sorted(set(v.degree))
    pos = {t: k + 1 for k, t in enumerate(labels)}
    table = []
    for a in labels:
        row = []
        for b in labels:
            c = v.group.conj(a, b)
            if c not in pos:
                raise InvariantViolationError("support is not closed under conjugation")
            row.append(pos[c])
        table.append(row)
    return Quandle(table), labels


def braiding(v: YDModule, w: YDModule) -> CycMatrix:
    """Matrix of c(x (x) y) = (deg(x).y) (x) x from V (x) W to W (x) V.

    Columns indexed by (i, j) = i*dim(W)+j, rows by (k, i) = k*dim(V)+i."""
    if v.group is not w.group:
        raise InputError("braiding requires modules over the same group")
    out = CycMatrix(w.dim * v.dim, v.dim * w.dim)
    for i in range(v.dim):
        act = w.action(v.degree[i])
        for k, j, val in act.iter_entries():
            out.set(k * v.dim + i, i * w.dim + j, val)
    return out


def double_braiding(v: YDModule, w: YDModule) -> CycMatrix:
    """c_{W,V} c_{V,W} as an endomorphism of V (x) W."""
    return braiding(w, v) @ braiding(v, w)


# -- concrete constructions ------------------------------------------------------


def abelian_group(orders: Sequence[int]) -> FinGroup:
    """Direct product of cyclic groups as a FinGroup (identity = all zeros)."""
    if not orders or any(n < 1 for n in orders):
        raise InputError("orders must be positive")
    total = 1
    for n in orders:
        total *= n

    def decode(a: int) -> tuple[int, ...]:
        out = []
        for n in reversed(orders):
            out.append(a % n)
            a //= n
        return tuple(reversed(out))

    def encode(t: Sequence[int]) -> int:
        a = 0
        for x, n in zip(t, orders):
            a = a * n + x % n
        return a

    mult = [
        [encode([x + y for x, y in zip(decode(a), decode(b))]) for b in range(total)]
        for a in range(total)
    ]
    names = ["*".join(f"t{k}^{x}" for k, x in enumerate(decode(a)) if x) or "e" for a in range(total)]
    gens = [encode([1 if k == i else 0 for k in range(len(orders))]) for i in range(len(orders))]
    return FinGroup(mult, names, generator_ids=gens, check=False)


def root_of_unity_order(x: CycNum, cap: int = 256) -> int:
    """Multiplicative order of a root of unity; InputError if not one."""
    acc = x
    for k in range(1, cap + 1):
        if acc == one():
            return k
        acc = acc * x
    raise InputError("scalar is not a root of unity of small order")


def diagonal_pair(
    q11: CycNum, q12: CycNum, q21: CycNum, q22: CycNum
) -> tuple[YDModule, YDModule]:
    """Two one-dimensional modules realizing a given diagonal braiding matrix.

    Build Z_N x Z_N with N the lcm of the scalar orders; V sits in degree
    (1,0) with character q11^x q21^y, W in degree (0,1) with q12^x q22^y, so
    c(v (x) w) = q12 w (x) v and c(w (x) v) = q21 v (x) w.
    """
    from math import lcm

    n = lcm(*(root_of_unity_order(q) for q in (q11, q12, q21, q22)))
    group = abelian_group([n, n])
    g_v = group.generator_ids[0]
    g_w = group.generator_ids[1]

    def dim1(deg: int, chi_gv: CycNum, chi_gw: CycNum) -> YDModule:
        actions = []
        for a in range(group.order):
            x, y = divmod(a, n)
            m = CycMatrix(1, 1)
            m.set(0, 0, chi_gv**x * chi_gw**y)
            actions.append(m)
        return YDModule(group, [deg], actions)

    return dim1(g_v, q11, q21), dim1(g_w, q12, q22)


def transposition_module(sign: Optional[CycNum] = None) -> YDModule:
    """The dim-3 module over the symmetric-group-on-3-letters envelope:
    class of a transposition with the order-2 centralizer character."""
    from .envgroup import finite_enveloping_group
    from .quandle import catalog

    env = finite_enveloping_group(catalog("(12)^S3"))
    rep = env.images[0]
    chi_val = sign if sign is not None else CycNum.rational(-1)
    # the centralizer {e, rep} is generated by the class representative itself
    return induced_module(env.group, rep, {rep: chi_val})
