import pytest

from qgalois import presets
from qgalois.presfile import (PresentationFileError, parse_element,
                              parse_tensor, parse_workspace)
from qgalois.scalars import QRat, q_power
from qgalois.tensors import TensorElem


def test_preset_source_round_trip():
    ws = parse_workspace(presets.PRESET_SOURCE)
    assert set(ws.algebras) == {"suq2", "u1"}
    assert set(ws.coactions) == {"fibration"}
    assert set(ws.morphisms) == {"collapse"}
    assert set(ws.coreps) == {"fundamental"}
    A = ws.algebras["suq2"]
    assert A.word("g", "a") == A.word("a", "g") * q_power(-1)


def test_parse_element_terms(suq2):
    p = parse_element(suq2, "1 - q^2 g g*")
    assert p == suq2.one() - suq2.word("g", "g*") * q_power(2)
    assert parse_element(suq2, "(q^2-1)/(q+1) a") == suq2.gen("a") * (q_power(1) - 1)
    assert parse_element(suq2, "0").is_zero


def test_element_format_round_trip(suq2):
    for text in ("1 - q^2 g g*", "q a* g", "a g*", "2 a a - 1/q g",
                 "1 - (q^2-1) g g*"):
        p = parse_element(suq2, text)
        assert parse_element(suq2, str(p)) == p


def test_parse_tensor(suq2):
    t = parse_tensor((suq2, suq2), "a (x) a - q g* (x) g")
    want = TensorElem((suq2, suq2), {(("a",), ("a",)): QRat(1),
                                     (("g*",), ("g",)): -q_power(1)})
    assert t == want


def test_tensor_leg_count_checked(suq2):
    with pytest.raises(PresentationFileError):
        parse_tensor((suq2, suq2), "a (x) a (x) a")


def test_unknown_generator_rejected(suq2):
    with pytest.raises(PresentationFileError):
        parse_element(suq2, "b")


def test_error_carries_location():
    bad = "algebra broken\ngenerators z\nrel z = z z\n"
    with pytest.raises(PresentationFileError) as exc:
        parse_workspace(bad, filename="bad.alg")
    assert "bad.alg" in str(exc.value)


def test_line_outside_block_rejected():
    with pytest.raises(PresentationFileError) as exc:
        parse_workspace("generators a b\n")
    assert exc.value.line == 1


def test_reserved_generator_names_rejected():
    with pytest.raises(PresentationFileError):
        parse_workspace("algebra bad\ngenerators q\n")


def test_comments_and_blank_lines_ignored():
    ws = parse_workspace("""
# a toy Laurent pair
algebra toy
generators y* y   # the involution swaps them
star y y*
order y < y*
rel y y* = 1
rel y* y = 1
""")
    A = ws.algebras["toy"]
    assert A.word("y", "y*") == A.one()
    assert [g.name for g in A.generators] == ["y", "y*"]


def test_incomplete_hopf_tables_rejected():
    src = """
algebra h
generators z z*
star z z*
rel z z* = 1
rel z* z = 1
coproduct z = z (x) z
"""
    with pytest.raises(PresentationFileError):
        parse_workspace(src)


def test_non_star_closed_relations_rejected():
    src = """
algebra notclosed
generators x y
star x x
star y y
rel x y = 1
"""
    with pytest.raises(PresentationFileError):
        parse_workspace(src)


def test_rule_left_side_must_be_single_word():
    src = """
algebra bad
generators x
star x x
rel x + x = 1
"""
    with pytest.raises(PresentationFileError):
        parse_workspace(src)


def test_scaled_rule_left_side_normalizes():
    src = """
algebra scaled
generators y y*
star y y*
rel 2 y y* = 2
rel y* y = 1
"""
    ws = parse_workspace(src)
    A = ws.algebras["scaled"]
    assert A.word("y", "y*") == A.one()


def test_connection_block_requires_unit():
    src = presets.SUQ2_SOURCE + presets.U1_SOURCE + presets.FIBRATION_SOURCE + """
connection nounit on fibration
L u = a* (x) a + g* (x) g
"""
    with pytest.raises(PresentationFileError):
        parse_workspace(src)


def test_t_rejected_outside_joins(suq2):
    with pytest.raises(PresentationFileError):
        parse_element(suq2, "t a")
