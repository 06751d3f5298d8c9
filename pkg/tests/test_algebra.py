import random
from fractions import Fraction

import pytest

from nilj import catalog
from nilj.algebra import (
    Algebra,
    annihilator,
    change_basis,
    derivation_algebra,
    direct_sum,
    invariant_vector,
    is_associative,
    jordan_identity_holds,
    power_filtration,
    reduce_mod,
    zero_algebra,
)
from nilj.errors import DocumentError
from nilj.fields import QQ, Field
from nilj.linalg import Matrix

F5 = Field(5)


def test_multiply_examples():
    A = catalog.instantiate("J4,6")
    a, d = A.basis_element(0), A.basis_element(3)
    assert (a * a).coords == (0, 1, 0, 0)
    assert (a * d).is_zero()
    B = catalog.instantiate("J5,23")
    c, d = B.basis_element(2), B.basis_element(3)
    assert (c * d).coords == (0, 0, 0, 0, 1)


def test_jordan_identity_examples():
    assert jordan_identity_holds(catalog.instantiate("J4,6"))
    assert jordan_identity_holds(catalog.instantiate("J5,44", {"alpha": "2"}))
    # a^2 o (a o a) = b o b = c but (a^2 o a) o a = 0
    bad = Algebra(QQ, ("a", "b", "c"), {(0, 0): {1: 1}, (1, 1): {2: 1}})
    assert not jordan_identity_holds(bad)
    # with a unit adjoined implicitly the identity always holds: a acts as 1
    unital = Algebra(QQ, ("a", "b"), {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 1): {0: 1}})
    assert jordan_identity_holds(unital)


def test_associativity_examples():
    assert not is_associative(catalog.instantiate("J4,6"))
    assert is_associative(catalog.instantiate("J3,4"))
    assert is_associative(zero_algebra(QQ, 3))


def test_power_filtration_examples():
    dims = [s.dim for s in power_filtration(catalog.instantiate("J2,2"))]
    assert dims == [2, 1, 0]
    assert [s.dim for s in power_filtration(catalog.instantiate("J4,1"))] == [4, 0]
    # ideal powers of J5,2 stabilize before vanishing: J^4 = J^5 = <e>
    assert [s.dim for s in power_filtration(catalog.instantiate("J5,2"))] == [5, 3, 2, 1, 1, 0]
    sq = power_filtration(catalog.instantiate("J5,2"))[1]
    for idx in (1, 3, 4):  # b, d, e
        assert sq.contains([1 if k == idx else 0 for k in range(5)])


def test_annihilator_examples():
    A = catalog.instantiate("J4,6")
    ann = annihilator(A)
    assert ann.dim == 1 and ann.contains([0, 0, 0, 1])
    ann12 = annihilator(catalog.instantiate("J4,12"))
    assert ann12.dim == 2
    assert ann12.contains([0, 0, 1, 0]) and ann12.contains([0, 0, 0, 1])
    assert annihilator(zero_algebra(QQ, 3)).dim == 3


def _derivation_dim_bruteforce(A):
    """Independent oracle: assemble the derivation system over all ordered pairs."""
    n = A.dim
    rows = []
    for i in range(n):
        for j in range(n):
            prod = A.basis_product(i, j)
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for m, c in enumerate(prod):
                    if c:
                        row[k * n + m] += c
                for r in range(n):
                    c = A.sc(r, j).get(k)
                    if c:
                        row[r * n + i] -= c
                    c = A.sc(r, i).get(k)
                    if c:
                        row[r * n + j] -= c
                rows.append(row)
    return Matrix.from_rows(A.field, rows).nullspace().dim


@pytest.mark.parametrize(
    "name,expected",
    [("J2,2", 2), ("J4,6", 4), ("J5,9", 6), ("J5,13", 7)],
)
def test_derivation_dimensions(name, expected):
    A = catalog.instantiate(name)
    assert derivation_algebra(A).dim == expected
    assert _derivation_dim_bruteforce(A) == expected


def test_derivations_of_zero_algebra():
    assert derivation_algebra(zero_algebra(QQ, 3)).dim == 9


def test_invariant_vector_examples():
    iv = invariant_vector(catalog.instantiate("J4,1"))
    assert (iv.dim, iv.power_dims, iv.nil_index, iv.ann_dim, iv.ann_meet_sq_dim,
            iv.der_dim, iv.assoc) == (4, (0,), 2, 4, 0, 16, True)
    iv = invariant_vector(catalog.instantiate("J2,2"))
    assert (iv.dim, iv.power_dims, iv.nil_index, iv.ann_dim, iv.ann_meet_sq_dim,
            iv.der_dim, iv.assoc) == (2, (1, 0), 3, 1, 1, 2, True)
    assert invariant_vector(catalog.instantiate("J5,2")).power_dims == (3, 2, 1, 1, 0)
    assert invariant_vector(catalog.instantiate("J5,4")).power_dims == (2, 1, 0)


def test_direct_sum_examples():
    one = zero_algebra(QQ, 1, ("e",))
    assert direct_sum(catalog.instantiate("J4,8"), one) == catalog.instantiate("J5,4")
    assert direct_sum(catalog.instantiate("J4,6"), one) == catalog.instantiate("J5,1")
    assert direct_sum(zero_algebra(QQ, 2), zero_algebra(QQ, 3, ("x", "y", "z"))) == zero_algebra(
        QQ, 5, ("a", "b", "x", "y", "z")
    )


def test_multiply_is_symmetric_on_random_elements():
    rng = random.Random(2024)
    for name in ("J4,6", "J5,30"):
        binding = {"alpha": "1", "beta": "2"} if name == "J5,30" else {}
        A = catalog.instantiate(name, binding)
        for _ in range(20):
            x = A.element([rng.randrange(-3, 4) for _ in range(A.dim)])
            y = A.element([rng.randrange(-3, 4) for _ in range(A.dim)])
            assert (x * y).coords == (y * x).coords


def test_invariants_stable_under_base_change():
    rng = random.Random(99)
    A = reduce_mod(catalog.instantiate("J4,6"), 5)
    base = invariant_vector(A)
    found = 0
    while found < 5:
        P = Matrix.from_rows(F5, [[rng.randrange(5) for _ in range(4)] for _ in range(4)])
        if not P.is_invertible():
            continue
        found += 1
        assert invariant_vector(change_basis(A, P)) == base


def test_associativity_survives_central_component():
    one = zero_algebra(QQ, 1, ("z",))
    for name in catalog.dim_le4_names():
        A = catalog.instantiate(name)
        assert is_associative(direct_sum(A, one)) == is_associative(A)


def test_catalog_annihilators_are_nonzero():
    for name in catalog.names():
        for binding in catalog.sample_bindings(name):
            assert not annihilator(catalog.instantiate(name, binding)).is_zero()


def test_structure_constant_validation():
    with pytest.raises(DocumentError):
        Algebra(QQ, ("a", "b"), {(1, 0): {0: 1}})  # i > j
    with pytest.raises(DocumentError):
        Algebra(QQ, ("a", "b"), {(0, 0): {5: 1}})  # bad target
    with pytest.raises(DocumentError):
        Algebra(QQ, ("a", "a"), {})  # duplicate names
