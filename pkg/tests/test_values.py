import math
from fractions import Fraction

import pytest

from zfree import INF, ZERO, ExtValue, ext_sum, format_value, parse_value


def test_construction_from_int_and_fraction():
    assert ExtValue(3).raw == 3
    assert ExtValue(Fraction(3, 4)).raw == Fraction(3, 4)
    # denominator 1 collapses to int
    assert ExtValue(Fraction(8, 4)).raw == 2
    assert isinstance(ExtValue(Fraction(8, 4)).raw, int)


def test_construction_from_strings():
    assert ExtValue("7").raw == 7
    assert ExtValue("3/4").raw == Fraction(3, 4)
    assert ExtValue("inf").raw == math.inf
    assert ExtValue("-2").raw == -2


def test_two_argument_form():
    assert ExtValue(3, 4).raw == Fraction(3, 4)
    assert ExtValue(6, 2).raw == 3


def test_rejects_bool_and_float():
    with pytest.raises(TypeError):
        ExtValue(True)
    with pytest.raises(TypeError):
        ExtValue(1.5)
    # math.inf is the one float allowed
    assert ExtValue(math.inf) == INF


def test_addition_absorbs_infinity():
    assert (ExtValue(2) + ExtValue(3)).raw == 5
    assert (ExtValue(2) + INF) == INF
    assert (INF + INF) == INF
    assert (ExtValue("1/2") + ExtValue("1/2")).raw == 1


def test_subtraction_rules():
    assert (ExtValue(5) - ExtValue(2)).raw == 3
    assert (INF - ExtValue(2)) == INF
    with pytest.raises(ValueError):
        ExtValue(5) - INF
    with pytest.raises(ValueError):
        INF - INF


def test_multiplication_by_count():
    assert (ExtValue(3) * 4).raw == 12
    assert (INF * 2) == INF
    assert (INF * 0) == ZERO
    assert (ExtValue("1/3") * 3).raw == 1
    with pytest.raises(ValueError):
        ExtValue(3) * -1


def test_total_order():
    vals = [ExtValue("1/2"), ExtValue(0), INF, ExtValue(3), ExtValue("7/2")]
    ordered = sorted(vals)
    assert [str(v) for v in ordered] == ["0", "1/2", "3", "7/2", "inf"]
    assert INF > ExtValue(10**9)
    assert ExtValue(1) <= ExtValue(1)


def test_interning_small_values():
    assert ExtValue.of(0) is ExtValue.of(0)
    assert ExtValue.of(math.inf) is ExtValue.of(math.inf)
    v = ExtValue.of(ExtValue(5))
    assert v.raw == 5


def test_immutable():
    v = ExtValue(1)
    with pytest.raises(AttributeError):
        v._raw = 2


def test_str_and_format_value():
    assert str(ExtValue(3)) == "3"
    assert str(ExtValue("3/4")) == "3/4"
    assert str(INF) == "inf"
    assert format_value(ExtValue(3)) == 3
    assert format_value(ExtValue("3/4")) == "3/4"
    assert format_value(INF) == "inf"


def test_parse_value_accepts_json_forms():
    assert parse_value(4).raw == 4
    assert parse_value("3/4").raw == Fraction(3, 4)
    assert parse_value("inf") == INF


def test_parse_value_rejections():
    for bad in (1.5, -1, "-1", True, "3/0", "abc", "1/2/3", None, [1]):
        with pytest.raises(ValueError):
            parse_value(bad, where="cell")


def test_ext_sum():
    assert ext_sum([ExtValue(1), ExtValue("1/2"), ExtValue("1/2")]).raw == 2
    assert ext_sum([ExtValue(1), INF]) == INF
    assert ext_sum([]) == ZERO
