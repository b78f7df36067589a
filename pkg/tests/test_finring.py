import itertools

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, isprime

from rickartlab import CapacityError, ConstructionError, Status, using_caps
from rickartlab.finring import (RING_PROPERTIES, annihilator_closure, build_ring, decide_ring_property,
                                idempotents, is_isomorphic, jacobson_radical, left_annihilator, matrix,
                                poly_quotient, product, quotient_ring, right_annihilator,
                                right_ideal_closure, right_ideals, singular_ideal, table, zmod)

# ---------------------------------------------------------------------------
# construction


def test_zero_ring():
    R = zmod(1)
    assert R.order == 1 and R.zero == R.one


def test_zmod_tables_match_integer_arithmetic():
    R = zmod(7)
    for a, b in itertools.product(range(7), repeat=2):
        assert R.add[a][b] == (a + b) % 7
        assert R.mul[a][b] == (a * b) % 7


def test_product_orders_and_identity():
    R = product(zmod(2), zmod(3), zmod(2))
    assert R.order == 12
    assert all(R.mul[R.one][a] == a == R.mul[a][R.one] for a in range(R.order))


def test_product_isomorphic_to_zmod6():
    R, S = product(zmod(2), zmod(3)), zmod(6)
    phi = is_isomorphic(R, S)
    assert phi is not None and sorted(phi.values()) == list(range(6))
    for a, b in itertools.product(range(6), repeat=2):
        assert phi[R.add[a][b]] == S.add[phi[a]][phi[b]]
        assert phi[R.mul[a][b]] == S.mul[phi[a]][phi[b]]


def test_non_isomorphic_pairs():
    assert is_isomorphic(zmod(4), product(zmod(2), zmod(2))) is None
    assert is_isomorphic(poly_quotient(zmod(2), [0, 0, 1]), zmod(4)) is None
    assert is_isomorphic(poly_quotient(zmod(2), [0, 1, 1]), product(zmod(2), zmod(2))) is not None


def test_matrix_ring_is_noncommutative():
    R = matrix(zmod(2), 2)
    assert R.order == 16 and not R.is_commutative


def test_build_ring_forms_agree():
    a = build_ring("product(zmod(2), matrix(zmod(2), 1))")
    b = build_ring({"op": "product", "args": [{"op": "zmod", "args": [2]},
                                              {"op": "matrix", "args": [{"op": "zmod", "args": [2]}, 1]}]})
    assert a == b
    c = build_ring({"tables": {"add": [list(r) for r in a.add], "mul": [list(r) for r in a.mul],
                               "zero": a.zero, "one": a.one}})
    assert c == a


def test_field_of_four_elements():
    F = poly_quotient(zmod(2), [1, 1, 1])
    assert len(F.units) == 3 and decide_ring_property(F, "domain").holds


def _tables(n, mul):
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    return add, [[mul(a, b) for b in range(n)] for a in range(n)]


def test_table_rejects_non_associative():
    add, mul = _tables(3, lambda a, b: (a * b) % 3)
    mul[2][2] = 2  # 2*2 = 2 breaks associativity/distributivity in Z_3
    with pytest.raises(ConstructionError, match="associativ|distributiv"):
        table(add, mul, 0, 1)


def test_table_rejects_missing_identity():
    add, mul = _tables(2, lambda a, b: 0)
    with pytest.raises(ConstructionError, match="identity"):
        table(add, mul, 0, 1)


def test_table_rejects_bad_addition():
    add, mul = _tables(3, lambda a, b: (a * b) % 3)
    add[1][1] = 1
    with pytest.raises(ConstructionError):
        table(add, mul, 0, 1)


def test_construction_cap():
    with pytest.raises(CapacityError, match="ring_construction"):
        zmod(300)
    with using_caps(ring_construction=10):
        with pytest.raises(CapacityError):
            product(zmod(3), zmod(4))


def test_decider_cap_gives_unsupported():
    R = product(zmod(2), matrix(zmod(2), 2), zmod(3))
    assert R.order == 96
    v = decide_ring_property(R, "baer")
    assert v.status is Status.UNSUPPORTED and "ring_decider" in v.reason


# ---------------------------------------------------------------------------
# annihilators, idempotents, ideals

def test_annihilator_examples():
    R = zmod(4)
    assert right_annihilator(R, [2]).elements == [0, 2]
    for S in (zmod(4), matrix(zmod(2), 2), zmod(1)):
        assert right_annihilator(S, [S.zero]).size == S.order
        assert right_annihilator(S, [S.one]).elements == [S.zero]


def test_left_and_right_annihilators_differ_in_matrix_ring():
    R = matrix(zmod(2), 2)
    found = False
    for x in range(R.order):
        r, l = right_annihilator(R, [x]), left_annihilator(R, [x])
        assert r.size == l.size  # both have |R|/|Rx| or |xR| elements
        found |= r.members != l.members
    assert found


@pytest.mark.parametrize("n,expected", [(6, [0, 1, 3, 4]), (4, [0, 1]), (5, [0, 1])])
def test_idempotents(n, expected):
    assert idempotents(zmod(n)) == expected
    assert expected == [a for a in range(n) if a * a % n == a]


@pytest.mark.parametrize("n,expected", [
    (4, [[0], [0, 2], [0, 1, 2, 3]]),
    (5, [[0], [0, 1, 2, 3, 4]]),
    (6, [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]),
])
def test_right_ideals_of_zmod(n, expected):
    assert [I.elements for I in right_ideals(zmod(n))] == expected


@given(st.integers(1, 40))
def test_ideals_of_zmod_are_divisor_multiples(n):
    R = zmod(n)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    expected = sorted(sorted({(d * k) % n for k in range(n)}) for d in divisors)
    assert sorted(I.elements for I in right_ideals(R)) == expected


def test_right_ideals_of_matrix_ring():
    # right ideals of M_2(F_2): 0, R, and one per line in F_2^2 (rows in a fixed row space)
    assert len(right_ideals(matrix(zmod(2), 2))) == 5


def test_ideal_closure_properties(corpus):
    for name, R in corpus.rings():
        if R.order > 16:
            continue
        for I in right_ideals(R):
            assert right_ideal_closure(R, I.generators).members == I.members
            for a, r in itertools.product(I.elements, range(R.order)):
                assert R.mul[a][r] in I


# ---------------------------------------------------------------------------
# property deciders

def _squarefree(n):
    return all(e == 1 for e in factorint(n).values())


@given(st.integers(2, 30))
def test_zmod_chart_matches_factorization(n):
    R = zmod(n)
    sf = _squarefree(n)
    for p in ("vn_regular", "right_rickart", "baer", "right_nonsingular", "right_semihereditary", "reduced"):
        assert decide_ring_property(R, p).holds == sf, p
    assert decide_ring_property(R, "domain").holds == isprime(n)


def test_spec_ring_examples():
    v = decide_ring_property(zmod(6), "right_rickart")
    assert v.holds and v.certificate[2] == 3 and v.certificate[3] == 4
    v = decide_ring_property(zmod(4), "right_rickart")
    assert v.fails and v.witness["element"] == 2 and v.witness["annihilator"] == [0, 2]
    v = decide_ring_property(zmod(4), "right_nonsingular")
    assert v.fails and v.witness["element"] == 2
    assert decide_ring_property(product(*[zmod(2)] * 4), "baer").holds
    v = decide_ring_property(zmod(12), "vn_regular")
    assert v.fails and v.witness["element"] == 2
    assert not any((2 * x * 2) % 12 == 2 for x in range(12))


def test_matrix_ring_properties():
    R = matrix(zmod(2), 2)
    for p in ("vn_regular", "right_rickart", "baer", "right_nonsingular", "right_semihereditary"):
        assert decide_ring_property(R, p).holds
    assert decide_ring_property(R, "reduced").fails
    assert decide_ring_property(R, "domain").fails


def test_upper_triangular_separates_regular_from_semihereditary(corpus):
    T = corpus.get("ring", "t2_z2")
    assert decide_ring_property(T, "vn_regular").fails
    for p in ("right_semihereditary", "right_rickart", "baer", "right_nonsingular"):
        assert decide_ring_property(T, p).holds, p


def test_local_ring_fails_everything():
    R = poly_quotient(zmod(2), [0, 0, 1])
    for p in RING_PROPERTIES:
        assert decide_ring_property(R, p).fails, p


def _idempotent_generates(R, members):
    return any(sum(1 << R.mul[e][r] for r in range(R.order)) == members
               for e in range(R.order) if R.mul[e][e] == e)


def test_fails_witnesses_recheck(corpus):
    """Every FAILS witness is re-validated from the definitions by brute force."""
    for name, R in corpus.rings():
        for p in RING_PROPERTIES:
            v = decide_ring_property(R, p)
            if not v.fails:
                continue
            w = v.witness
            if p == "vn_regular":
                a = w["element"]
                assert not any(R.mul[R.mul[a][x]][a] == a for x in range(R.order))
            elif p == "right_rickart":
                a = w["element"]
                ann = sum(1 << r for r in range(R.order) if R.mul[a][r] == R.zero)
                assert not _idempotent_generates(R, ann)
            elif p == "baer":
                X = w["subset"]
                ann = sum(1 << r for r in range(R.order) if all(R.mul[x][r] == R.zero for x in X))
                assert not _idempotent_generates(R, ann)
            elif p == "reduced":
                a = w["nilpotent"]
                x = a
                for _ in range(R.order):
                    x = R.mul[x][a]
                assert a != R.zero and x == R.zero
            elif p == "domain":
                if R.order > 1:
                    a, b = w["zero_divisors"]
                    assert R.mul[a][b] == R.zero and R.zero not in (a, b)


def test_all_witnesses_mode():
    R = zmod(8)
    v1 = decide_ring_property(R, "vn_regular")
    va = decide_ring_property(R, "vn_regular", all_witnesses=True)
    assert va.witness == v1.witness
    assert [w["element"] for w in va.witnesses] == [2, 4, 6]


def test_singular_ideal():
    assert singular_ideal(zmod(4)).elements == [0, 2]
    assert singular_ideal(zmod(8)).elements == [0, 2, 4, 6]
    assert singular_ideal(zmod(6)).elements == [0]


# ---------------------------------------------------------------------------
# annihilator lattice properties

ring_names = ["z4", "z6", "z8", "z12", "m2_z2", "t2_z2", "z2x4", "z3_dual"]


@given(st.sampled_from(ring_names), st.data())
def test_annihilator_antitone_and_intersection(name, data):
    from rickartlab.corpus import builtins
    R = builtins().get("ring", name)
    elems = st.lists(st.integers(0, R.order - 1), max_size=4, unique=True)
    X = data.draw(elems)
    Y = X + data.draw(elems)
    rX, rY = right_annihilator(R, X), right_annihilator(R, Y)
    assert rY <= rX
    meet = (1 << R.order) - 1
    for x in X:
        meet &= right_annihilator(R, [x]).members
    assert rX.members == meet


@pytest.mark.parametrize("name", ring_names)
def test_idempotent_splits_ring(name, corpus):
    R = corpus.get("ring", name)
    for e in idempotents(R):
        f = R.sub(R.one, e)
        eR = {R.mul[e][r] for r in range(R.order)}
        fR = {R.mul[f][r] for r in range(R.order)}
        assert eR & fR == {R.zero}
        assert len(eR) * len(fR) == R.order
        assert {R.add[a][b] for a in eR for b in fR} == set(range(R.order))


def test_annihilator_closure_is_complete(corpus):
    R = corpus.get("ring", "z12")
    closure = {m for m, _ in annihilator_closure(R)}
    brute = set()
    for k in range(R.order + 1):
        for X in itertools.combinations(range(R.order), k):
            brute.add(right_annihilator(R, X).members)
    assert closure == brute


# ---------------------------------------------------------------------------
# Jacobson radical

def _maximal_right_ideal_meet(R):
    ideals = [I for I in right_ideals(R) if I.size < R.order]
    maximal = [I for I in ideals if not any(I < J for J in ideals)]
    m = (1 << R.order) - 1
    for I in maximal:
        m &= I.members
    return m


@pytest.mark.parametrize("n,expected", [(4, [0, 2]), (6, [0]), (5, [0]), (12, [0, 6]), (8, [0, 2, 4, 6])])
def test_jacobson_radical_zmod(n, expected):
    assert jacobson_radical(zmod(n)).elements == expected


def test_jacobson_radical_matches_maximal_ideals(corpus):
    for name, R in corpus.rings():
        if R.order > 32 or R.order == 1:
            continue
        assert jacobson_radical(R).members == _maximal_right_ideal_meet(R), name


def test_quotient_by_radical_is_regular(corpus):
    for name, R in corpus.rings():
        if R.order == 1:
            continue
        J = jacobson_radical(R)
        Q, coset = quotient_ring(R, J)
        assert Q.order * J.size == R.order
        assert decide_ring_property(Q, "vn_regular").holds, name
