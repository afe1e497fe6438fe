"""Ordering strategies and Trotter plan bookkeeping."""

import pytest

from fermiqc.pauli import PauliString, QubitOperator
from fermiqc.trotter import (OrderingStrategy, TrotterPlan, build_plan, order_terms,
                             plan_for)


def make_operator():
    op = QubitOperator(3, constant=0.75)
    for label, coeff in [("XII", 0.5), ("IYI", -2.0), ("IIZ", 1.0),
                         ("XYI", -0.25), ("ZZZ", 1.5), ("IXX", -1.0)]:
        op.add_term(coeff, PauliString.from_label(label))
    return op


class TestOrderingStrategy:
    def test_parse_random_with_seed(self):
        s = OrderingStrategy.parse("random:42")
        assert (s.kind, s.seed) == ("random", 42)
        assert str(s) == "random:42"

    def test_parse_plain(self):
        for kind in ("magnitude", "lex", "lexomag"):
            assert OrderingStrategy.parse(kind).kind == kind

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            OrderingStrategy("alphabetical")

    def test_random_requires_seed(self):
        with pytest.raises(ValueError):
            OrderingStrategy("random")


class TestOrderTerms:
    def test_is_permutation(self):
        op = make_operator()
        base = dict(op.items())
        for strat in (OrderingStrategy("magnitude"), OrderingStrategy("lex"),
                      OrderingStrategy("lexomag"), OrderingStrategy("random", 7)):
            ordered = order_terms(op, strat)
            assert dict(ordered) == base
            assert len(ordered) == len(base)

    def test_lex_order(self):
        labels = [s.label for s, _ in order_terms(make_operator(), OrderingStrategy("lex"))]
        assert labels == sorted(labels)

    def test_magnitude_descending_default(self):
        mags = [abs(c) for _, c in order_terms(make_operator(),
                                               OrderingStrategy("magnitude"))]
        assert mags == sorted(mags, reverse=True)

    def test_magnitude_ascending(self):
        strat = OrderingStrategy("magnitude", descending_magnitude=False)
        mags = [abs(c) for _, c in order_terms(make_operator(), strat)]
        assert mags == sorted(mags)

    def test_random_seeded_and_distinct(self):
        op = make_operator()
        a = order_terms(op, OrderingStrategy("random", 1))
        b = order_terms(op, OrderingStrategy("random", 1))
        c = order_terms(op, OrderingStrategy("random", 2))
        assert a == b
        assert a != c  # overwhelmingly likely for 6 terms

    def test_lexomag_interleaves(self):
        op = make_operator()
        out = order_terms(op, OrderingStrategy("lexomag"))
        lex = order_terms(op, OrderingStrategy("lex"))
        mag = order_terms(op, OrderingStrategy("magnitude"))
        assert out[0] == lex[0]
        # second slot: best magnitude term not already emitted
        expected = next(t for t in mag if t != out[0])
        assert out[1] == expected
        assert dict(out) == dict(lex)


class TestTrotterPlan:
    def test_angles(self):
        op = make_operator()
        plan = plan_for(op, OrderingStrategy("lex"), n_steps=4, time=2.0)
        for (_, coeff), theta in zip(plan.ordered_terms, plan.angles()):
            assert theta == pytest.approx(2.0 * coeff.real * 2.0 / 4)

    def test_offset_includes_constant(self):
        plan = plan_for(make_operator(), OrderingStrategy("lex"), 1, 1.0,
                        extra_offset=0.25)
        assert plan.scalar_offset == pytest.approx(1.0)

    def test_build_plan_validation(self):
        with pytest.raises(ValueError):
            build_plan([], 1, 1.0)
        with pytest.raises(ValueError):
            build_plan([(PauliString.from_label("X"), 1.0)], 0, 1.0)

    def test_register_size_inferred(self):
        plan = build_plan([(PauliString.from_label("XZ"), 1.0)], 2, 0.5)
        assert isinstance(plan, TrotterPlan)
        assert plan.n_qubits == 2
