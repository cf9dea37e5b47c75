import pytest

from qnichols import cyclotomic as C
from qnichols import nichols as N
from qnichols import ydmod as Y
from qnichols.errors import InputError, ResourceCapError

ONE = C.one()
NEG = C.CycNum.rational(-1)
Z3 = C.CycNum.zeta(3)


@pytest.fixture(scope="module")
def s3pair():
    v = Y.transposition_module()
    return v, v


def diag(q11, q12q21, q22=NEG):
    return Y.diagonal_pair(q11, q12q21, ONE, q22)


def test_t1_diagonal_scalar():
    v, w = diag(NEG, Z3)
    t1 = N.t_operator(v, w, 1)
    assert t1.get(0, 0) == ONE - Z3


def test_t1_zero_when_double_braiding_trivial():
    v, w = diag(NEG, ONE)
    assert N.t_operator(v, w, 1).is_zero()
    assert N.adjoint_power_dim(v, w, 1) == 0
    assert N.x_space_dim(v, w, 1) == 0


def test_quantum_serre_vanishing_pattern():
    # q11 = -1, q12 q21 = -1: first adjoint power nonzero, second vanishes
    v, w = diag(NEG, NEG)
    assert N.adjoint_power_dim(v, w, 1) == 1
    assert N.adjoint_power_dim(v, w, 2) == 0
    st2 = N.symmetrized_t(v, w, 2)
    assert st2.is_zero()
    st1 = N.symmetrized_t(v, w, 1)
    assert not st1.is_zero()


def test_symmetrizer_small():
    v, _ = diag(Z3, ONE)
    assert N.quantum_symmetrizer(v, 1) == C.CycMatrix.identity(1)
    s2 = N.quantum_symmetrizer(v, 2)
    assert s2.get(0, 0) == ONE + Z3
    s3 = N.quantum_symmetrizer(v, 3)
    assert s3.get(0, 0) == (ONE + Z3) * (ONE + Z3 + Z3 * Z3)


def test_symmetrizer_matches_sum_over_lifts(s3pair):
    # oracle: S_3 as the sum over all six reduced-word lifts
    v, _ = s3pair
    factors = (v, v, v)
    c1, _ = N.compose_chain(factors, [1])
    c2, _ = N.compose_chain(factors, [2])
    ident = C.CycMatrix.identity(27)
    lifts = ident + c1 + c2 + c1 @ c2 + c2 @ c1 + c1 @ c2 @ c1
    assert N.quantum_symmetrizer(v, 3) == lifts


def test_tensor_cap(s3pair):
    v, w = s3pair
    with pytest.raises(ResourceCapError):
        N.t_operator(v, w, 3, cap=4)


def test_x0_is_w(s3pair):
    v, w = s3pair
    assert N.x_space_dim(v, w, 0) == w.dim
    assert N.adjoint_power_dim(v, w, 0) == w.dim


def test_factorization_identity_diagonal():
    for q11 in (NEG, Z3):
        for q12q21 in (ONE, NEG):
            v, w = diag(q11, q12q21)
            for n in (1, 2):
                assert N.factorization_identity_holds(v, w, n), (str(q11), str(q12q21), n)


def test_factorization_identity_s3(s3pair):
    v, w = s3pair
    assert N.factorization_identity_holds(v, w, 1)
    assert N.factorization_identity_holds(v, w, 2)


def test_adjoint_equals_xspace_s3(s3pair):
    v, w = s3pair
    for m in (1, 2, 3):
        assert N.adjoint_power_dim(v, w, m) == N.x_space_dim(v, w, m)


def test_adjoint_dims_s3_values(s3pair):
    # frozen from the exact matrix computation; the Nichols algebra of this
    # module is finite dimensional so high powers vanish
    v, w = s3pair
    assert [N.adjoint_power_dim(v, w, m) for m in (1, 2, 3)] == [4, 3, 0]


def test_graded_blocks_partition(s3pair):
    v, w = s3pair
    space = N.BraidedTensor((v, v, w))
    blocks = N.graded_blocks(space)
    assert sum(len(b) for b in blocks.values()) == space.dim


def test_graded_rank_matches_plain_rank(s3pair):
    v, w = s3pair
    st = N.symmetrized_t(v, w, 2)
    space = N.BraidedTensor((v, v, w))
    total, per_block = N.graded_rank(st, space)
    assert total == st.rank()
    assert total == sum(r for _, r in per_block)


def test_operators_preserve_grading(s3pair):
    v, w = s3pair
    space = N.BraidedTensor((v, v, w))
    for mat in (N.t_operator(v, w, 2), N.phi_operator(v, w, 2), N.symmetrized_t(v, w, 2)):
        block_of = {}
        for d, idxs in N.graded_blocks(space).items():
            for i in idxs:
                block_of[i] = d
        for i, j, _ in mat.iter_entries():
            assert block_of[i] == block_of[j]


def test_adjoint_report_shape(s3pair):
    v, w = s3pair
    rep = N.adjoint_power_report(v, w, 2)
    assert rep["m"] == 2
    assert rep["dim"] == sum(b["rank"] for b in rep["per_block"])


def test_vanishing_iff_all_blocks_vanish(s3pair):
    v, w = s3pair
    st = N.symmetrized_t(v, w, 3)
    space = N.BraidedTensor((v, v, v, w))
    total, per_block = N.graded_rank(st, space)
    assert total == 0
    assert all(r == 0 for _, r in per_block)


def test_invalid_args(s3pair):
    v, w = s3pair
    with pytest.raises(InputError):
        N.t_operator(v, w, 0)
    with pytest.raises(InputError):
        N.adjoint_power_dim(v, w, -1)
