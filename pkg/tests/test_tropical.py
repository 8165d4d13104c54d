"""Tropical scalars, the achieved-twice predicate, polynomial evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from treetrop.rationals import INF, format_scalar, is_infinite, parse_scalar
from treetrop.tropical import (
    AllInfiniteError,
    TropicalPlueckerVector,
    TropicalPolynomial,
    extremum_achieved_twice,
    trop_eval,
)


class TestScalars:
    def test_is_infinite(self):
        assert is_infinite(INF)
        assert not is_infinite(Fraction(10**9))
        assert not is_infinite(float("-inf"))

    def test_parse_and_format(self):
        assert parse_scalar("3/4") == Fraction(3, 4)
        assert parse_scalar("1.25") == Fraction(5, 4)
        assert parse_scalar("inf", allow_infinite=True) == INF
        assert format_scalar(Fraction(4, 3)) == "4/3"
        assert format_scalar(Fraction(8, 4)) == "2"
        assert format_scalar(INF) == "inf"
        with pytest.raises(ValueError):
            parse_scalar("inf")
        with pytest.raises(ValueError):
            parse_scalar("abc")


class TestExtremum:
    def test_max_achieved_twice(self):
        w = extremum_achieved_twice([4, 6, 6], "max")
        assert w.achieved_twice
        assert w.value == 6
        assert w.achievers == (1, 2)

    def test_min_unique(self):
        w = extremum_achieved_twice([3, 5], "min")
        assert not w.achieved_twice
        assert w.achievers == (0,)

    def test_all_equal(self):
        w = extremum_achieved_twice([0, 0, 0], "min")
        assert w.achieved_twice
        assert w.achievers == (0, 1, 2)

    def test_infinite_entries_dropped(self):
        w = extremum_achieved_twice([INF, 2, INF, 2], "min")
        assert w.achieved_twice
        assert w.achievers == (1, 3)
        # and under max they are not candidates either
        w = extremum_achieved_twice([INF, 2, 1], "max")
        assert not w.achieved_twice
        assert w.achievers == (1,)

    def test_all_infinite_error(self):
        with pytest.raises(AllInfiniteError):
            extremum_achieved_twice([INF, INF], "min")

    def test_bad_convention(self):
        with pytest.raises(ValueError):
            extremum_achieved_twice([1, 2], "most")

    def test_float_rejected(self):
        with pytest.raises(ValueError):
            extremum_achieved_twice([0.5, 1], "min")

    @given(
        st.lists(
            st.one_of(
                st.fractions(max_denominator=20),
                st.just(INF),
            ),
            min_size=1,
            max_size=8,
        )
    )
    def test_min_max_duality(self, values):
        # min over v has the same verdict and achievers as max over -v
        # (INF is self-dual: it is absorbing under both conventions).
        negated = [INF if is_infinite(v) else -v for v in values]
        try:
            lo = extremum_achieved_twice(values, "min")
        except AllInfiniteError:
            with pytest.raises(AllInfiniteError):
                extremum_achieved_twice(negated, "max")
            return
        hi = extremum_achieved_twice(negated, "max")
        assert lo.achieved_twice == hi.achieved_twice
        assert lo.achievers == hi.achievers
        assert lo.value == -hi.value


class TestTropEval:
    def line(self):
        # x + y + 0: the standard tropical line with apex at the origin
        return TropicalPolynomial(2, ((0, (1, 0)), (0, (0, 1)), (0, (0, 0))))

    def test_apex_on_hypersurface(self):
        res = trop_eval(self.line(), (0, 0), "min")
        assert res.value == 0
        assert res.achievers == (0, 1, 2)
        assert res.on_hypersurface

    def test_generic_point_off(self):
        res = trop_eval(self.line(), (3, 5), "min")
        assert res.value == 0
        assert res.achievers == (2,)
        assert not res.on_hypersurface

    def test_single_term_never_on_hypersurface(self):
        f = TropicalPolynomial(2, ((Fraction(1, 2), (1, 1)),))
        res = trop_eval(f, (1, 1), "min")
        assert res.value == Fraction(5, 2)
        assert not res.on_hypersurface

    def test_infinite_coefficient_dropped(self):
        f = TropicalPolynomial(1, ((INF, (1,)), (0, (0,)), (0, (1,))))
        res = trop_eval(f, (0,), "max")
        assert res.achievers == (1, 2)

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            trop_eval(self.line(), (1, 2, 3), "min")

    def test_polynomial_validation(self):
        with pytest.raises(ValueError):
            TropicalPolynomial(1, ())
        with pytest.raises(ValueError):
            TropicalPolynomial(1, ((INF, (1,)),))
        with pytest.raises(ValueError):
            TropicalPolynomial(1, ((0, (1, 2)),))
        with pytest.raises(ValueError):
            TropicalPolynomial(1, ((0, (-1,)),))


class TestPlueckerVector:
    def test_lookup(self):
        p = TropicalPlueckerVector(4, 2, (1, 2, 3, 4, 5, 6))
        assert p.entry((1, 2)) == 1
        assert p[(3, 4)] == 6
        assert p[(4, 3)] == 6

    def test_infinite_entries(self):
        p = TropicalPlueckerVector(3, 2, (INF, 1, 2))
        assert p.has_infinite_entry
        assert is_infinite(p[(1, 2)])

    def test_validation(self):
        with pytest.raises(ValueError):
            TropicalPlueckerVector(4, 2, (1, 2, 3))
        with pytest.raises(ValueError):
            TropicalPlueckerVector(4, 5, (1,))
        with pytest.raises(ValueError):
            TropicalPlueckerVector(3, 2, (0.5, 1, 2))
        p = TropicalPlueckerVector(4, 2, (1, 2, 3, 4, 5, 6))
        with pytest.raises(ValueError):
            p.entry((1, 1))
        with pytest.raises(ValueError):
            p.entry((1, 5))
