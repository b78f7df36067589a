import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from rickartlab import CapacityError, ConstructionError, using_caps
from rickartlab.finmod import (FiniteModule, Submodule, abelian_module, annihilator_in_ring, as_module,
                               decomposes_along, direct_sum, hom_set, identity, intersection, is_closed,
                               is_direct_summand, is_essential, is_submodule, quotient, regular,
                               scalar_module, span, submodule_sum, summand_by_complement,
                               summand_by_idempotent, zero_map, zero_module)
from rickartlab.finring import is_isomorphic, matrix, zmod
from rickartlab.endobridge import endomorphism_ring


def sub_of(M, tuples):
    return Submodule(sum(1 << M.index(t) for t in tuples))


@pytest.fixture
def z2z4():
    return scalar_module(zmod(4), [2, 4])


# ---------------------------------------------------------------------------
# construction and enumeration

def test_regular_z4():
    M = regular(zmod(4))
    assert M.size == 4 and len(M.endomorphisms) == 4
    assert [N.size for N in M.submodules] == [1, 2, 4]


def test_end_of_z2_plus_z4(z2z4):
    # |Hom(Z_a, Z_b)| = gcd(a, b); the four blocks give 2 * 2 * 2 * 4
    assert z2z4.size == 8
    assert len(z2z4.endomorphisms) == gcd(2, 2) * gcd(2, 4) * gcd(4, 2) * gcd(4, 4) == 32


def test_zero_module():
    M = zero_module(zmod(5))
    assert M.size == 1 and len(M.endomorphisms) == 1 and len(M.submodules) == 1


@pytest.mark.parametrize("M,count", [
    (scalar_module(zmod(2), [2, 2]), 5),
    (regular(zmod(4)), 3),
    (scalar_module(zmod(5), [5]), 2),
    (scalar_module(zmod(4), [2, 4]), 8),
    (scalar_module(zmod(2), [2, 2, 2]), 16),
])
def test_submodule_counts(M, count):
    assert len(M.submodules) == count


@given(st.integers(2, 12), st.integers(2, 12))
def test_hom_between_cyclic_groups_has_gcd_elements(a, b):
    n = a * b // gcd(a, b)
    R = zmod(n)
    assert len(hom_set(scalar_module(R, [a]), scalar_module(R, [b]))) == gcd(a, b)


def test_spec_hom_examples():
    R4, R6 = zmod(4), zmod(6)
    assert len(hom_set(scalar_module(R4, [4]), scalar_module(R4, [2]))) == 2
    assert len(hom_set(scalar_module(R6, [2]), scalar_module(R6, [3]))) == 1


@given(st.integers(2, 30))
def test_cyclic_submodules_match_divisors(n):
    M = scalar_module(zmod(n), [n])
    assert len(M.submodules) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_bad_action_is_rejected():
    R = zmod(2)
    # acting by 1 must be the identity
    with pytest.raises(ConstructionError):
        FiniteModule(R, [2], [[(0,)], [(0,)]])
    # an order-3 group cannot be a module over zmod(2)
    with pytest.raises(ConstructionError):
        scalar_module(R, [3])


def test_module_cap():
    with using_caps(module_order=8):
        with pytest.raises(CapacityError, match="module_order"):
            scalar_module(zmod(2), [2, 2, 2, 2]).submodules


def test_regular_module_index_maps(corpus):
    for name, R in corpus.rings():
        M = regular(R)
        for a in range(R.order):
            assert M.ring_element[M.module_element[a]] == a
        # the action on the image of 1 recovers the multiplication table
        one = M.module_element[R.one]
        for r in range(R.order):
            assert M.ring_element[M.act[r][one]] == r


# ---------------------------------------------------------------------------
# homomorphisms

def test_kernel_and_image_examples():
    M = regular(zmod(4))
    two = next(f for f in M.endomorphisms if M.elements[f.images[0]] == (2,))
    assert two.kernel.elements == [0, M.index((2,))]
    assert identity(M).kernel.size == 1 and identity(M).image.size == M.size
    z = zero_map(M, M)
    assert z.kernel.size == M.size and z.image.size == 1


def test_first_isomorphism_count(corpus):
    for name, M in corpus.modules():
        for f in M.endomorphisms:
            assert f.kernel.size * f.image.size == M.size, name


def test_composition_is_associative_and_unital(z2z4):
    E = z2z4.endomorphisms
    one = identity(z2z4)
    for f, g, h in itertools.islice(itertools.product(E, repeat=3), 0, 2000, 7):
        assert f.compose(g).compose(h) == f.compose(g.compose(h))
    assert all(f.compose(one) == f == one.compose(f) for f in E)


# ---------------------------------------------------------------------------
# submodule lattice

@pytest.mark.parametrize("name", ["z2+z4_over_z4", "reg_m2_z2", "reg_z2x4", "reg_t2_z2", "z2+z2_over_z4"])
def test_modular_law(name, corpus):
    M = corpus.get("module", name)
    subs = M.submodules
    for A, B, C in itertools.product(subs, repeat=3):
        if A <= C:
            lhs = submodule_sum(M, A, intersection(B, C))
            rhs = intersection(submodule_sum(M, A, B), C)
            assert lhs == rhs


@pytest.mark.parametrize("name", ["z2+z4_over_z4", "reg_z8", "reg_z2_dual", "reg_t2_z2", "z2+z4_over_z8"])
def test_essential_is_transitive(name, corpus):
    M = corpus.get("module", name)
    subs = M.submodules
    for A, B in itertools.product(subs, repeat=2):
        if not (A <= B and is_essential(A, M, within=B)):
            continue
        for C in subs:
            if B <= C and is_essential(B, M, within=C):
                assert is_essential(A, M, within=C)


def test_essential_examples():
    M = regular(zmod(4))
    two = Submodule(1 | 1 << M.index((2,)))
    assert is_essential(two, M)
    assert not is_essential(M.zero_submodule, M)
    assert is_essential(M.whole, M)
    assert not is_closed(two, M) and is_closed(M.whole, M)
    V = scalar_module(zmod(2), [2, 2])
    assert is_closed(sub_of(V, [(0, 0), (1, 0)]), V)


def test_essential_by_definition(corpus):
    """Cyclic criterion against 'meets every nonzero submodule'."""
    for name in ("z2+z4_over_z4", "reg_z12", "reg_t2_z2", "reg_z2x2x2"):
        M = corpus.get("module", name)
        for N in M.submodules:
            brute = all(P.members & N.members != 1 for P in M.submodules if P.size > 1)
            assert is_essential(N, M) == brute


def test_span_and_submodule_checks(z2z4):
    N = span(z2z4, [z2z4.index((1, 1))])
    assert z2z4.index((1, 1)) in N and z2z4.index((1, 0)) not in N
    assert is_submodule(z2z4, N.members)
    assert not is_submodule(z2z4, 1 | 1 << z2z4.index((1, 1)))


# ---------------------------------------------------------------------------
# direct summands

def test_summand_examples(z2z4):
    N = sub_of(z2z4, [(0, b) for b in range(4)])
    v = is_direct_summand(N, z2z4)
    assert v.holds
    e = v.certificate.idempotent
    assert e.compose(e) == e and e.image == N
    N2 = sub_of(z2z4, [(a, b) for a in range(2) for b in (0, 2)])
    assert is_direct_summand(N2, z2z4).fails
    M = regular(zmod(4))
    assert is_direct_summand(Submodule(1 | 1 << M.index((2,))), M).fails


def test_summand_routes_agree(corpus):
    count = 0
    for name, M in corpus.modules():
        for N in M.submodules:
            a = summand_by_complement(N, M) is not None
            b = summand_by_idempotent(N, M) is not None
            assert a == b, (name, N)
            count += 1
    assert count >= 200


def test_summand_certificate_is_valid(corpus):
    for name, M in corpus.modules():
        for N in M.summands:
            cert = summand_by_complement(N, M)
            C, e = cert.complement, cert.idempotent
            assert C.members & N.members == 1 and N.size * C.size == M.size
            assert e.compose(e) == e and e.image == N and e.kernel == C


def test_summands_closed_under_complement(corpus):
    for name in ("reg_z2x2x2", "z2+z2_over_z2", "reg_m2_z2"):
        M = corpus.get("module", name)
        masks = {D.members for D in M.summands}
        for D in M.summands:
            assert summand_by_complement(D, M).complement.members in masks


# ---------------------------------------------------------------------------
# quotients, annihilators, direct sums

def test_quotient(z2z4):
    N = sub_of(z2z4, [(a, b) for a in range(2) for b in (0, 2)])
    Q, proj = quotient(z2z4, N)
    assert Q.size == 2 and proj.kernel == N
    for name in ("reg_z12", "z2+z4_over_z8"):
        from rickartlab.corpus import builtins
        M = builtins().get("module", name)
        for S in M.submodules:
            Q, p = quotient(M, S)
            assert Q.size * S.size == M.size and p.kernel == S and p.image.size == Q.size


def test_as_module_inclusion(z2z4):
    for N in z2z4.submodules:
        sub, inc = as_module(z2z4, N)
        assert sub.size == N.size and inc.image == N and inc.kernel.size == 1


def test_annihilators_in_ring():
    R = zmod(6)
    assert annihilator_in_ring(scalar_module(R, [2])).elements == [0, 2, 4]
    assert annihilator_in_ring(regular(R)).elements == [0]
    assert annihilator_in_ring(zero_module(R)).size == 6


def test_decomposes_along(z2z4):
    M = direct_sum(scalar_module(zmod(4), [2]), scalar_module(zmod(4), [4]))
    diag = span(M, [M.index((1, 1))])
    assert not decomposes_along(diag, M)
    assert decomposes_along(sub_of(M, [(a, b) for a in range(2) for b in (0, 2)]), M)
    assert decomposes_along(M.zero_submodule, M)


def test_coprime_direct_sum_decomposes():
    R = zmod(6)
    M = direct_sum(scalar_module(R, [2]), scalar_module(R, [3]))
    assert all(decomposes_along(N, M) for N in M.submodules)


def test_direct_sum_structure():
    R = zmod(4)
    M1, M2 = scalar_module(R, [2]), scalar_module(R, [4])
    M = direct_sum(M1, M2)
    i1, i2 = M.injections
    p1, p2 = M.projections
    assert p1.compose(i1) == identity(M1) and p2.compose(i2) == identity(M2)
    assert (i1.compose(p1) + i2.compose(p2)) == identity(M)


# ---------------------------------------------------------------------------
# End of a regular module recovers the ring

def test_end_of_regular_module_is_the_ring(corpus):
    for name, R in corpus.rings():
        if R.order > 16:
            continue
        S = endomorphism_ring(regular(R)).ring
        assert is_isomorphic(S, R) is not None, name


def test_end_of_z2_squared_is_matrix_ring():
    S = endomorphism_ring(scalar_module(zmod(2), [2, 2])).ring
    assert S.order == 16 and is_isomorphic(S, matrix(zmod(2), 2)) is not None


def test_abelian_module_over_exponent():
    M = abelian_module([2, 4])
    assert M.ring.order == 4 and M.size == 8
