import random
from fractions import Fraction

import pytest

from cofreyd.fields import FieldError, PrimeField, Rationals, field_from_name
from cofreyd.linalg import (LinalgError, Matrix, MultTable, RadicalError, Subspace,
                            kernel_basis, rref_solve, subspace_intersection,
                            subspace_ops, subspace_sum, trace_form_radical)
from cofreyd.coalgebra import chain_coalgebra, coassociativity_defect_matrix

Q = Rationals()
F2 = PrimeField(2)
F7 = PrimeField(7)


def test_field_basics():
    assert Q.of("2/4") == Fraction(1, 2)
    assert Q.fmt(Fraction(-3, 7)) == "-3/7"
    assert F7.of(-1) == 6
    assert F7.inv(3) == 5
    assert F7.of("1/3") == 5
    with pytest.raises(FieldError):
        PrimeField(6)
    assert field_from_name("F101").p == 101
    assert field_from_name("Fp:7").p == 7
    assert field_from_name("Q") == Q


def test_rref_identity_solve():
    a = Matrix.identity(3, Q)
    rref, pivots, sol = rref_solve(a, [1, 2, 3])
    assert pivots == [0, 1, 2]
    assert sol.particular == [Q.of(1), Q.of(2), Q.of(3)]
    assert sol.kernel == []


def test_rref_f2_kernel():
    a = Matrix(1, 2, [[1, 1]], F2)
    _, pivots, sol = rref_solve(a)
    assert pivots == [0]
    assert sol.kernel == [[1, 1]]


def test_rref_inconsistent():
    a = Matrix(2, 1, [[1], [1]], Q)
    _, _, sol = rref_solve(a, [1, 2])
    assert sol is None


def test_coassociativity_defect_of_two_chain_is_zero_map():
    c = chain_coalgebra(1, Q)
    defect = coassociativity_defect_matrix(c)
    assert defect.is_zero()
    _, _, sol = rref_solve(defect)
    assert len(sol.kernel) == c.dim


def _random_matrix(rng, rows, cols, field):
    if field.char == 0:
        return Matrix(rows, cols, [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)], field)
    return Matrix(rows, cols, [[rng.randrange(field.char) for _ in range(cols)] for _ in range(rows)], field)


@pytest.mark.parametrize("field", [Q, F7])
def test_rref_idempotent_and_rank_nullity(field):
    rng = random.Random(42)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = _random_matrix(rng, rows, cols, field)
        rref, pivots, sol = rref_solve(a)
        again, pivots2, _ = rref_solve(rref)
        assert again == rref and pivots2 == pivots
        assert cols == len(pivots) + len(sol.kernel)
        for v in sol.kernel:
            assert all(x == field.zero for x in a.apply(v))


def test_solution_satisfies_system():
    rng = random.Random(7)
    for _ in range(20):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = _random_matrix(rng, rows, cols, Q)
        x = [rng.randint(-3, 3) for _ in range(cols)]
        b = a.apply([Q.of(v) for v in x])
        _, _, sol = rref_solve(a, b)
        assert sol is not None
        assert a.apply(sol.particular) == b


def test_subspace_ops_trivial():
    u = Subspace.from_vectors([[1, 0], [0, 1]], 2, Q)
    res = subspace_ops(u, u)
    assert res["sum"] == u and res["intersection"] == u
    assert res["contains"] and res["quotient_dim"] == 0

    e1 = Subspace.from_vectors([[1, 0]], 2, Q)
    e2 = Subspace.from_vectors([[0, 1]], 2, Q)
    res = subspace_ops(e1, e2)
    assert res["sum"].dim == 2
    assert res["intersection"].dim == 0
    assert not res["contains"]


def test_subspace_dimension_identity():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 6)
        u = Subspace.from_vectors([[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 3))], n, Q)
        v = Subspace.from_vectors([[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 3))], n, Q)
        s = subspace_sum(u, v)
        i = subspace_intersection(u, v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains(u) and s.contains(v)
        assert u.contains(i) and v.contains(i)


def test_subspace_errors():
    u = Subspace.from_vectors([[1, 0]], 2, Q)
    v = Subspace.from_vectors([[1, 0, 0]], 3, Q)
    with pytest.raises(LinalgError):
        subspace_ops(u, v)
    w = Subspace.from_vectors([[1, 0]], 2, F7)
    with pytest.raises(LinalgError):
        subspace_ops(u, w)


def _product_field_table():
    # F x F: two orthogonal idempotents
    return MultTable(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, Q, unit=[1, 1])


def _truncated_polynomial_table(d, field):
    # e_i e_j = e_{i+j} when i + j <= d
    table = {}
    for i in range(d + 1):
        for j in range(d + 1):
            if i + j <= d:
                table[(i, j)] = {i + j: field.one}
    unit = [field.one] + [field.zero] * d
    return MultTable(d + 1, table, field, unit=unit)


def test_trace_radical_semisimple():
    j = trace_form_radical(_product_field_table())
    assert j.dim == 0


def test_trace_radical_truncated_polynomials():
    t = _truncated_polynomial_table(2, Q)
    j = trace_form_radical(t)
    # the nilpotents are exactly the positive-degree part
    assert j.dim == 2
    assert j == Subspace.from_vectors([[0, 1, 0], [0, 0, 1]], 3, Q)
    # two-sided ideal and nilpotency, asserted exactly
    for v in j.basis.data:
        for i in range(3):
            e = t.basis_vector(i)
            assert j.contains_vector(t.product_vec(e, list(v)))
            assert j.contains_vector(t.product_vec(list(v), e))
    sq = t.subalgebra_product_span(j, j)
    cube = t.subalgebra_product_span(sq, j)
    assert sq.dim == 1 and cube.dim == 0


def test_trace_radical_characteristic_guard():
    t = _truncated_polynomial_table(2, PrimeField(3))
    with pytest.raises(RadicalError):
        trace_form_radical(t)
    # p > dim works
    t7 = _truncated_polynomial_table(2, F7)
    assert trace_form_radical(t7).dim == 2


def test_trace_radical_rejects_nonassociative():
    bad = MultTable(2, {(0, 0): {1: 1}, (1, 0): {0: 1}, (0, 1): {0: 1}}, Q, unit=None)
    assert not bad.is_associative()
    with pytest.raises(RadicalError):
        trace_form_radical(bad)


def test_matrix_json_round_trip():
    m = Matrix(2, 3, [[1, 0, "2/3"], [0, -1, 0]], Q)
    j = m.to_json()
    assert j["entries"] == [[0, 0, "1"], [0, 2, "2/3"], [1, 1, "-1"]]
    assert Matrix.from_json(j, Q) == m
    mp = Matrix(1, 2, [[3, 0]], F7)
    assert mp.to_json()["entries"] == [[0, 0, 3]]
    assert Matrix.from_json(mp.to_json(), F7) == mp
