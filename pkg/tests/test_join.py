import random
from fractions import Fraction

import pytest

from qgalois import presets
from qgalois.join import (Character, JoinDegreeError, chi_collapse,
                          chi_equivariance, counit_character, join_coaction, join_coaction_membership,
                          join_coassociativity, join_membership, join_path,
                          join_product, join_unit, sample_join_elements)
from qgalois.ncalg import EMPTY
from qgalois.presfile import parse_join_element
from qgalois.scalars import QRat
from qgalois.tensors import TensorElem


@pytest.fixture(scope="module")
def reg():
    return presets.regular_suq2_coaction()


@pytest.fixture(scope="module")
def path_alpha(reg, ):
    A = reg.A
    return join_path(reg, A.gen("a"), A.gen("a"))


def test_worked_example_membership(path_alpha):
    assert join_membership(path_alpha, 2).ok


def test_unit_membership(reg):
    assert join_membership(join_unit(reg), 1).ok


def test_constant_alpha_fails_at_zero(reg, suq2):
    from qgalois.join import JoinElement, TPoly
    bad = JoinElement(reg, TPoly((suq2, suq2),
                                 {0: TensorElem((suq2, suq2),
                                                {(("a",), EMPTY): QRat(1)})}))
    rep = join_membership(bad, 2)
    assert not rep.ok
    assert not rep.checks[0].passed  # boundary at t = 0


def test_product_unit(reg, path_alpha):
    assert join_product(path_alpha, join_unit(reg)) == path_alpha


def test_degrees_add(reg, path_alpha):
    prod = join_product(path_alpha, path_alpha)
    assert prod.degree() == path_alpha.degree() * 2


def test_degree_cap_enforced(reg, suq2):
    x = join_path(reg, suq2.gen("a"), suq2.gen("a"), cap=1)
    with pytest.raises(JoinDegreeError):
        join_product(x, x)


def test_random_suite_closure(reg):
    rng = random.Random(23)
    xs = sample_join_elements(reg, rng, count=6)
    for x in xs:
        assert join_membership(x, 3).ok
        assert join_membership(x.star(), 3).ok
    for x, y in zip(xs, xs[1:]):
        assert join_membership(join_product(x, y), 5).ok


def test_join_coaction_boundaries(reg, path_alpha):
    assert join_coaction_membership(path_alpha, 2).ok


def test_join_coaction_on_unit(reg):
    co = join_coaction(join_unit(reg))
    assert co.evaluate(0) == TensorElem.unit((reg.A, reg.H, reg.H))


def test_join_coassociativity(reg, path_alpha):
    assert join_coassociativity(path_alpha)
    rng = random.Random(31)
    for x in sample_join_elements(reg, rng, count=4):
        assert join_coassociativity(x)


def test_chi_collapse_worked_example(reg, suq2, path_alpha):
    chi = counit_character(suq2)
    assert chi_collapse(path_alpha, chi) == suq2.gen("a")
    assert chi_collapse(join_unit(reg), chi) == suq2.one()


def test_chi_collapse_is_an_algebra_map(reg, suq2):
    chi = counit_character(suq2)
    rng = random.Random(17)
    xs = sample_join_elements(reg, rng, count=6)
    for x, y in zip(xs, xs[1:]):
        lhs = chi_collapse(join_product(x, y), chi)
        rhs = chi_collapse(x, chi) * chi_collapse(y, chi)
        assert lhs == rhs


def test_chi_equivariance(reg, suq2, path_alpha):
    chi = counit_character(suq2)
    assert chi_equivariance(path_alpha, chi)
    rng = random.Random(41)
    for x in sample_join_elements(reg, rng, count=5):
        assert chi_equivariance(x, chi)


def test_character_verification(suq2):
    chi = counit_character(suq2)
    assert chi.verify().ok
    bad = Character(suq2, {"a": QRat(1), "a*": QRat(1),
                           "g": QRat(1), "g*": QRat(1)})
    assert not bad.verify().ok


def test_parse_join_element(reg, suq2, path_alpha):
    text = "1 (x) a - t 1 (x) a + t a (x) a - q*t g* (x) g"
    parsed = parse_join_element(reg, text)
    assert parsed == path_alpha


def test_collapse_at_other_points(reg, suq2, path_alpha):
    chi = counit_character(suq2)
    # at t0 = 0 the A-leg is scalar, collapse gives the plain fiber copy
    val = chi_collapse(path_alpha, chi, t0=Fraction(0))
    assert val == suq2.gen("a")
