from fractions import Fraction

import pytest

from cofreyd.fields import PrimeField, Rationals
from cofreyd.linalg import Subspace, trace_form_radical
from cofreyd.coalgebra import (Bicomodule, Coalgebra, CoalgebraError, Poset, antichain_poset,
                               chain_coalgebra, chain_poset, coradical, coradical_filtration,
                               counit_right_bicomodule, divided_power_truncated, dual_algebra,
                               grouplike_coalgebra, incidence_coalgebra, is_subcoalgebra,
                               matrix2_coalgebra, regular_bicomodule, triangular_coalgebra,
                               triangular_divided_power, validate_coalgebra)

Q = Rationals()
F101 = PrimeField(101)


def test_poset_axioms_checked():
    with pytest.raises(CoalgebraError):
        Poset(2, [[True, True], [True, True]])          # not antisymmetric
    with pytest.raises(CoalgebraError):
        Poset(2, [[True, False], [False, False]])       # not reflexive
    with pytest.raises(CoalgebraError):
        Poset(3, [[True, True, False], [False, True, True], [False, False, True]])


def test_grouplike_coalgebra_validates():
    c = grouplike_coalgebra(["g"], Q)
    assert validate_coalgebra(c).ok
    assert c.delta == {(0, 0, 0): Q.one}
    assert c.epsilon == [Q.one]


def test_incidence_two_chain_frozen_delta():
    c = chain_coalgebra(1, Q)
    assert c.dim == 3
    assert c.labels == ["(0,0)", "(0,1)", "(1,1)"]
    k = c.labels.index("(0,1)")
    terms = {(i, j) for i, j, _ in c.delta_of(k)}
    assert terms == {(c.labels.index("(0,0)"), k), (k, c.labels.index("(1,1)"))}
    assert [c.epsilon[i] for i in range(3)] == [Q.one, Q.zero, Q.one]


def test_incidence_antichain_grouplike():
    c = incidence_coalgebra(antichain_poset(4), Q)
    assert c.dim == 4
    for k in range(4):
        assert c.delta_of(k) == [(k, k, Q.one)]


@pytest.mark.parametrize("d", [0, 1, 2, 3, 5])
def test_incidence_chain_dimension(d):
    c = chain_coalgebra(d, Q)
    assert c.dim == (d + 1) * (d + 2) // 2
    assert validate_coalgebra(c).ok


def test_tampered_delta_is_detected():
    c = chain_coalgebra(1, Q)
    k = c.labels.index("(0,1)")
    delta = dict(c.delta)
    del delta[(k, c.labels.index("(0,0)"), k)]
    broken = Coalgebra(c.dim, c.labels, delta, list(c.epsilon), Q)
    rep = validate_coalgebra(broken)
    assert not rep.ok
    assert k in rep.defect_locations


def test_divided_power_small():
    c0 = divided_power_truncated(0, Q)
    assert c0.dim == 1 and validate_coalgebra(c0).ok
    c2 = divided_power_truncated(2, Q)
    assert c2.delta_of(2) == [(0, 2, Q.one), (1, 1, Q.one), (2, 0, Q.one)]
    c8 = divided_power_truncated(8, Q)
    assert validate_coalgebra(c8).ok


def test_triangular_smallest_case():
    c = grouplike_coalgebra(["g"], Q)
    m, d = counit_right_bicomodule(c, d_label="t", m_labels=["m"])
    h = triangular_coalgebra(c, d, m)
    assert h.dim == 3
    assert validate_coalgebra(h).ok
    # one skew primitive between the two grouplikes
    k = h.labels.index("m")
    terms = {(i, j) for i, j, _ in h.delta_of(k)}
    assert terms == {(h.labels.index("g"), k), (k, h.labels.index("t"))}


def test_triangular_divided_power_frozen():
    h = triangular_divided_power(2, Q)
    assert h.labels == ["c0", "c1", "c2", "x0", "x1", "x2", "t"]
    assert validate_coalgebra(h).ok
    # Delta(x1) = c0 (x) x1 + c1 (x) x0 + x1 (x) t
    k = h.labels.index("x1")
    lab = h.labels.index
    assert {(i, j) for i, j, _ in h.delta_of(k)} == {
        (lab("c0"), lab("x1")), (lab("c1"), lab("x0")), (k, lab("t"))}
    assert h.epsilon[lab("x0")] == Q.zero and h.epsilon[lab("t")] == Q.one
    # block decompositions as one-sided comodules
    right_big, right_small = h.right_tags
    assert right_big == h.span_of_labels(["c0", "c1", "c2", "x0", "x1", "x2"])
    assert right_small == h.span_of_labels(["t"])
    left_c, left_xt = h.left_tags
    assert left_c == h.span_of_labels(["c0", "c1", "c2"])
    assert left_xt == h.span_of_labels(["x0", "x1", "x2", "t"])


def test_bicomodule_commutation_is_checked():
    c = divided_power_truncated(1, Q)
    m, d = counit_right_bicomodule(c)
    # tamper with the right coaction so the two coactions no longer commute
    bad_right = dict(m.right)
    bad_right[(1, 0, 0)] = Q.one
    with pytest.raises(CoalgebraError):
        Bicomodule(m.dim, m.labels, m.left, bad_right, m.left_parent, m.right_parent)


def test_matrix2_of_ground_field():
    c = grouplike_coalgebra(["g"], Q)
    m2 = matrix2_coalgebra(c)
    assert m2.dim == 3
    assert validate_coalgebra(m2).ok
    grouplikes = [k for k in range(3) if m2.delta_of(k) == [(k, k, Q.one)]]
    assert len(grouplikes) == 2


def test_matrix2_validates():
    m2 = matrix2_coalgebra(chain_coalgebra(1, Q))
    assert m2.dim == 9
    assert validate_coalgebra(m2).ok


@pytest.mark.parametrize("make", [
    lambda: chain_coalgebra(1, Q),
    lambda: chain_coalgebra(2, Q),
    lambda: divided_power_truncated(2, Q),
    lambda: triangular_divided_power(1, Q),
])
def test_matrix2_dual_is_triangular_matrix_table(make):
    c = make()
    a = dual_algebra(c)
    big = dual_algebra(matrix2_coalgebra(c))
    n = c.dim
    for i in range(3 * n):
        bi, ri = divmod(i, n)
        for j in range(3 * n):
            bj, rj = divmod(j, n)
            cell = a.table.get((ri, rj), {})
            if bi == 0 and bj == 0:
                expect = dict(cell)
            elif bi == 0 and bj == 1:
                expect = {n + k: v for k, v in cell.items()}
            elif bi == 1 and bj == 2:
                expect = {n + k: v for k, v in cell.items()}
            elif bi == 2 and bj == 2:
                expect = {2 * n + k: v for k, v in cell.items()}
            else:
                expect = {}
            assert big.table.get((i, j), {}) == expect


def test_dual_algebra_of_grouplike():
    t = dual_algebra(grouplike_coalgebra(["g"], Q))
    assert t.dim == 1 and t.table == {(0, 0): {0: Q.one}}


@pytest.mark.parametrize("d", [1, 2, 4])
def test_dual_algebra_of_divided_power_is_truncated_polynomials(d):
    t = dual_algebra(divided_power_truncated(d, Q))
    for i in range(d + 1):
        for j in range(d + 1):
            expect = {i + j: Q.one} if i + j <= d else {}
            assert t.table.get((i, j), {}) == expect
    assert t.check_unital()


def test_dual_algebra_of_triangular_is_upper_triangular_ring():
    h = triangular_divided_power(2, Q)
    t = dual_algebra(h)
    lab = h.labels.index
    cblock = {lab(f"c{i}") for i in range(3)}
    xblock = {lab(f"x{i}") for i in range(3)}
    tidx = lab("t")
    for i in range(h.dim):
        for j in range(h.dim):
            cell = t.table.get((i, j), {})
            if not cell:
                continue
            support = set(cell)
            if i in cblock and j in cblock:
                assert support <= cblock
            elif i in cblock and j in xblock:
                assert support <= xblock
            elif i in xblock and j == tidx:
                assert support <= xblock
            elif i == j == tidx:
                assert support == {tidx}
            else:
                raise AssertionError(f"uexpected product block ({i},{j}) -> {support}")
    # corner actions: c-part multiplies like truncated polynomials
    for i in range(3):
        for j in range(3):
            expect = {lab(f"c{i + j}"): Q.one} if i + j <= 2 else {}
            assert t.table.get((lab(f"c{i}"), lab(f"c{j}")), {}) == expect
    # lower-left products vanish
    assert t.table.get((tidx, lab("x0")), {}) == {}
    assert t.table.get((lab("x0"), lab("c0")), {}) == {}


@pytest.mark.parametrize("d", [1, 2, 4])
def test_coradical_of_chain(d):
    c = chain_coalgebra(d, Q)
    expect = c.span_of_labels([f"({n},{n})" for n in range(d + 1)])
    assert coradical(c) == expect
    assert coradical(c).dim == d + 1


def test_coradical_of_grouplike_is_everything():
    c = grouplike_coalgebra(["a", "b", "c"], Q)
    assert coradical(c).dim == 3


@pytest.mark.parametrize("d", [1, 2, 3])
def test_coradical_of_triangular(d):
    h = triangular_divided_power(d, Q)
    assert coradical(h) == h.span_of_labels(["c0", "t"])


def test_filtration_of_grouplike_stabilizes_immediately():
    c = grouplike_coalgebra(["a", "b"], Q)
    assert [x.dim for x in coradical_filtration(c)] == [2]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_filtration_of_chain(d):
    c = chain_coalgebra(d, Q)
    filt = coradical_filtration(c)
    assert len(filt) == d + 1
    for i, term in enumerate(filt):
        expect = c.span_of_labels(
            [f"({x},{y})" for x in range(d + 1) for y in range(x, d + 1) if y - x <= i])
        assert term == expect
        assert is_subcoalgebra(c, term)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_filtration_of_triangular_against_dual_radical_powers(d):
    """Independent oracle: the n-th term is the annihilator of the (n+1)-st
    power of the dual algebra's radical."""
    h = triangular_divided_power(d, Q)
    t = dual_algebra(h)
    j = trace_form_radical(t)
    filt = coradical_filtration(h)
    power = j
    from cofreyd.linalg import kernel_basis
    for term in filt:
        if power.dim == 0:
            expect = Subspace.full(h.dim, Q)
        else:
            expect = Subspace.from_vectors(kernel_basis(power.basis), h.dim, Q)
        assert term == expect
        power = t.subalgebra_product_span(power, j)
    # frozen dimensions: 2, 4, 6, ..., 2d+2, 2d+3
    assert [x.dim for x in filt] == [2 * k + 2 for k in range(d + 1)] + [2 * d + 3]


def test_filtration_second_term_of_triangular_is_dim_four():
    """The second term contains the two grouplikes, the primitive c1 and the
    skew-primitive x0, and nothing else; in particular x1 is not in it
    because its coproduct has the mixed term c1 (x) x0."""
    for d in (1, 2, 3):
        h = triangular_divided_power(d, Q)
        filt = coradical_filtration(h)
        assert filt[1] == h.span_of_labels(["c0", "c1", "x0", "t"])
        assert filt[1].dim == 4


def test_coradical_is_first_filtration_term():
    for make in (lambda: chain_coalgebra(2, Q), lambda: triangular_divided_power(2, Q),
                 lambda: divided_power_truncated(3, Q)):
        c = make()
        assert coradical_filtration(c)[0] == coradical(c)


def test_incidence_coradical_dim_equals_poset_size():
    p = Poset(4, [[x == y or (x, y) in {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
                   for y in range(4)] for x in range(4)])
    c = incidence_coalgebra(p, Q)
    assert validate_coalgebra(c).ok
    assert coradical(c).dim == 4


def test_coalgebra_json_round_trip():
    h = triangular_divided_power(1, F101)
    j = h.to_json()
    back = Coalgebra.from_json(j)
    assert back.dim == h.dim and back.delta == h.delta and back.epsilon == h.epsilon
    assert back.field == F101
