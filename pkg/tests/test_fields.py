from fractions import Fraction

import pytest

from nilj.errors import FieldMismatchError, NiljError, RootNotInFieldError
from nilj.fields import QQ, Field


def test_rational_parse_and_format():
    assert QQ.parse("3/4") == Fraction(3, 4)
    assert QQ.parse("-2") == Fraction(-2)
    assert QQ.fmt(Fraction(3, 4)) == "3/4"
    assert QQ.fmt(Fraction(-2)) == "-2"


def test_rational_arithmetic_is_exact():
    a = Fraction(355, 113)
    assert QQ.mul(a, QQ.inv(a)) == 1
    b = QQ.parse("1/3")
    assert QQ.add(b, QQ.add(b, b)) == 1


def test_prime_field_canonical_residues():
    F5 = Field(5)
    assert F5.parse("3") == 3
    assert F5.parse("-2") == 3
    assert F5.parse("1/2") == 3  # inverse of 2 mod 5
    assert F5.mul(3, 4) == 2
    assert F5.inv(2) == 3


def test_prime_field_requirements():
    with pytest.raises(NiljError):
        Field(4)
    with pytest.raises(NiljError):
        Field(3)
    with pytest.raises(FieldMismatchError):
        Field(5).of(Fraction(1, 5))


def test_square_roots():
    assert QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert QQ.sqrt(Fraction(2)) is None
    assert QQ.sqrt(Fraction(-1)) is None
    F5, F7 = Field(5), Field(7)
    assert F5.sqrt(4) in (2, 3)
    assert F5.sqrt(2) is None  # 2 is not a residue mod 5
    assert F7.sqrt(2) in (3, 4)  # 3^2 = 2 mod 7
    assert F5.sqrt(F5.of(-1)) == 2 or F5.sqrt(F5.of(-1)) == 3


def test_higher_roots():
    assert QQ.nth_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert QQ.nth_root(Fraction(-8), 3) == -2
    assert QQ.nth_root(Fraction(2), 3) is None
    assert Field(5).nth_root(2, 3) == 3  # 3^3 = 27 = 2 mod 5


def test_sqrt_or_raise_names_the_radicand():
    with pytest.raises(RootNotInFieldError) as err:
        Field(5).sqrt_or_raise(2)
    assert err.value.radicand == 2
