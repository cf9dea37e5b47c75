import pytest

from qnichols import cyclotomic as C
from qnichols import ydmod as Y
from qnichols.envgroup import finite_enveloping_group, sl23
from qnichols.errors import InputError
from qnichols.quandle import catalog, match_catalog


def test_transposition_module_basic():
    v = Y.transposition_module()
    assert v.dim == 3
    sq, labels = Y.support_quandle(v)
    assert match_catalog(sq) == "(12)^S3"
    assert sorted(labels) == sorted(set(v.degree))


def test_support_quandle_dim1():
    V, _ = Y.diagonal_pair(C.one(), C.one(), C.one(), C.one())
    sq, _ = Y.support_quandle(V)
    assert sq.n == 1


def test_induced_module_trivial_character_central_rep():
    g, _, _ = sl23()
    centre = g.center()
    z = next(a for a in centre if a != 0)
    v = Y.induced_module(g, z, {x: C.one() for x in g.centralizer(z)})
    assert v.dim == 1
    assert v.degree == (z,)


def test_induced_module_gamma2_quotient_class_of_g():
    env = finite_enveloping_group(catalog("Z_2^{2,2}"))
    g = env.group
    rep = env.images[0]  # image of x1 = g
    assert len(g.conjugacy_class_of(rep)) == 2
    # centralizer {1, g, eps, eps g} needs chi on both g and eps = [h, g]
    eps = g.commutator(env.images[1], rep)
    v = Y.induced_module(g, rep, {rep: C.CycNum.rational(-1), eps: C.one()})
    assert v.dim == 2


def test_induced_module_nonmultiplicative_character_rejected():
    g, _, _ = sl23()
    rep = next(c[0] for c in g.conjugacy_classes() if len(c) == 6)
    cent = g.centralizer(rep)
    # rep has order 4 in the quaternion subgroup; chi(rep) = -1 works but
    # chi(rep) = zeta3 cannot extend multiplicatively
    with pytest.raises(InputError):
        Y.induced_module(g, rep, {rep: C.CycNum.zeta(3)})


def test_character_must_generate():
    g, _, _ = sl23()
    rep = next(c[0] for c in g.conjugacy_classes() if len(c) == 4)
    with pytest.raises(InputError):
        Y.extend_character(g, g.centralizer(rep), {0: C.one()})


def test_yd_compatibility_and_multiplicativity_all_constructed():
    v = Y.transposition_module()
    g = v.group
    for s in range(g.order):
        for i, j, _ in v.action(s).iter_entries():
            assert v.degree[i] == g.conj(s, v.degree[j])
        for t in range(g.order):
            assert v.action(s) @ v.action(t) == v.action(g.mul(s, t))


def test_braiding_diagonal_scalars():
    q11, q12, q21, q22 = (
        C.CycNum.rational(-1),
        C.CycNum.zeta(4),
        C.CycNum.zeta(4, 3),
        C.one(),
    )
    V, W = Y.diagonal_pair(q11, q12, q21, q22)
    assert Y.braiding(V, W).get(0, 0) == q12
    assert Y.braiding(W, V).get(0, 0) == q21
    assert Y.braiding(V, V).get(0, 0) == q11
    # double braiding is the scalar q12*q21 = 1 here
    assert Y.double_braiding(V, W) == C.CycMatrix.identity(1)


def test_braiding_group_mismatch():
    V, _ = Y.diagonal_pair(C.one(), C.one(), C.one(), C.one())
    v = Y.transposition_module()
    with pytest.raises(InputError):
        Y.braiding(V, v)


def test_braiding_block_monomial_degrees():
    # braiding maps the (g,h) component into (ghg^{-1}, g)
    v = Y.transposition_module()
    g = v.group
    c = Y.braiding(v, v)
    for r, col, _ in c.iter_entries():
        i, j = divmod(col, v.dim)
        k, i2 = divmod(r, v.dim)
        assert i2 == i
        assert v.degree[k] == g.conj(v.degree[i], v.degree[j])


def test_braid_relation_transposition_module():
    v = Y.transposition_module()
    c = Y.braiding(v, v)
    i3 = C.CycMatrix.identity(3)

    def kron(a, b):
        out = C.CycMatrix(a.rows * b.rows, a.cols * b.cols)
        for i, j, x in a.iter_entries():
            for k, l, y in b.iter_entries():
                out.set(i * b.rows + k, j * b.cols + l, x * y)
        return out

    c1, c2 = kron(c, i3), kron(i3, c)
    assert c1 @ c2 @ c1 == c2 @ c1 @ c2


def test_braid_relation_diagonal():
    V, _ = Y.diagonal_pair(C.CycNum.zeta(3), C.one(), C.one(), C.one())
    c = Y.braiding(V, V)
    assert c @ c @ c == C.CycMatrix.identity(1).scale(C.one())


def test_braid_relation_every_constructed_module():
    def kron(a, b):
        out = C.CycMatrix(a.rows * b.rows, a.cols * b.cols)
        for i, j, x in a.iter_entries():
            for k, l, y in b.iter_entries():
                out.set(i * b.rows + k, j * b.cols + l, x * y)
        return out

    env = finite_enveloping_group(catalog("Z_2^{2,2}"))
    g = env.group
    rep = env.images[0]
    eps = g.commutator(env.images[1], rep)
    modules = [
        Y.transposition_module(),
        Y.transposition_module(sign=C.one()),
        Y.induced_module(g, rep, {rep: C.CycNum.rational(-1), eps: C.CycNum.rational(-1)}),
        Y.diagonal_pair(C.CycNum.zeta(4), C.CycNum.zeta(3), C.one(), C.one())[0],
    ]
    for v in modules:
        c = Y.braiding(v, v)
        ident = C.CycMatrix.identity(v.dim)
        c1, c2 = kron(c, ident), kron(ident, c)
        assert c1 @ c2 @ c1 == c2 @ c1 @ c2


def test_transposition_braiding_c2_not_identity():
    v = Y.transposition_module()
    assert Y.double_braiding(v, v) != C.CycMatrix.identity(9)


def test_abelian_group_helper():
    g = Y.abelian_group([2, 3])
    assert g.order == 6
    assert g.is_abelian()
    assert [g.element_order(x) for x in g.generator_ids] == [2, 3]


def test_root_of_unity_order():
    assert Y.root_of_unity_order(C.CycNum.rational(-1)) == 2
    assert Y.root_of_unity_order(C.CycNum.zeta(6)) == 6
    with pytest.raises(InputError):
        Y.root_of_unity_order(C.CycNum.rational(2))
