import logging

import pytest
from hypothesis import given

from pibase import ordinal
from pibase.canonical_phi import (
    Condition2Report,
    PhiSession,
    get_session,
    h_combination_witness,
    phi_check_condition2,
    phi_eval,
    phi_witness,
)
from pibase.exceptions import (
    PatternOutOfRangeError,
    PreconditionError,
    WitnessConstructionError,
)
from pibase.ordinal import CardinalLevel
from pibase.pairing import EMPTY_PATTERN, FinitePattern, f_delta
from pibase.sigma_forms import gamma

from ..strategies import ORACLE_EXAMPLES, ordinals
from ..unitutil import method_mock

ALEPH_0 = CardinalLevel.aleph(0)
ALEPH_1 = CardinalLevel.aleph(1)


def w(text: str) -> ordinal.OrdinalTerm:
    return ordinal.parse(text)


class DescribePhiSession:
    def it_needs_an_infinite_kappa(self):
        with pytest.raises(PreconditionError):
            PhiSession(CardinalLevel.finite(3))

    def it_is_shared_per_kappa_and_level(self):
        assert get_session(ALEPH_0, 5) is get_session(ALEPH_0, 5)
        assert get_session(ALEPH_0, 5) is not get_session(ALEPH_1, 5)

    @pytest.mark.parametrize(
        "delta, expected_components",
        (("0", ("0",)), ("w", ("w",)), ("w1+w", ("w1", "w1+w")), ("w1*2", ("w1*2",))),
    )
    def it_knows_the_components_of_a_block(self, delta, expected_components):
        session = PhiSession(ALEPH_0)

        components = session.components(w(delta))

        assert components == tuple(w(c) for c in expected_components)

    @pytest.mark.parametrize(
        "xi, expected_base", (("5", "0"), ("w*2+3", "w*2"), ("w1+w^2+w+1", "w1+w^2+w"))
    )
    def it_finds_block_bases(self, xi, expected_base):
        assert PhiSession(ALEPH_0).block_base(w(xi)) == w(expected_base)


class DescribePhiEval:
    def it_maps_small_naturals_to_the_empty_pattern(self):
        assert phi_eval(ALEPH_0, w("5")) == EMPTY_PATTERN
        assert phi_eval(ALEPH_0, w("1")) == EMPTY_PATTERN
        assert phi_eval(ALEPH_0, ordinal.ZERO) == EMPTY_PATTERN

    @ORACLE_EXAMPLES
    @given(ordinals())
    def it_stays_below_its_argument(self, xi):
        pattern = phi_eval(ALEPH_0, xi)

        assert pattern.within(ordinal.ZERO, xi, ALEPH_0)

    def it_is_deterministic(self):
        values = [phi_eval(ALEPH_0, w("w1+w*2+9000")) for _ in range(3)]

        assert values[0] == values[1] == values[2]


class DescribeHCombinationWitness:
    def it_pairs_the_offset_with_the_component(self):
        assert h_combination_witness(ALEPH_0, w("w"), 0, w("w+3")) == w("w+6")

    @pytest.mark.parametrize("i, level", ((0, "w1"), (1, "w1+w")))
    def it_realizes_the_component_values(self, i, level):
        xi0 = w("w1+w+5")

        eta = h_combination_witness(ALEPH_0, w("w1+w"), i, xi0)

        assert w("w1+w") <= eta < w("w1+w*2")
        assert eta >= xi0
        assert phi_eval(ALEPH_0, eta) == f_delta(ALEPH_0, w(level), xi0)

    @pytest.mark.parametrize(
        "d, i, xi0", (("w+1", 0, "w+1"), ("w", 1, "w+3"), ("w", 0, "w*2"), ("w", 0, "5"))
    )
    def but_it_checks_its_arguments(self, d, i, xi0):
        with pytest.raises(PreconditionError):
            h_combination_witness(ALEPH_0, w(d), i, w(xi0))


class DescribePhiWitness:
    @pytest.mark.parametrize(
        "d, pairs",
        (
            ("w", [(3, 0)]),
            ("w", []),
            ("w^2", [(3, 0), ("w*2", 1)]),
            ("w1+w^2", [("w1+1", 2)]),
            ("w1+w*2", [("w1+w", 0)]),
            ("w1*2", [(7, 0), ("w1+3", 4)]),
            ("w^w", [("w^3+1", 1)]),
        ),
    )
    def it_finds_witnesses_in_the_rectangle(self, d, pairs):
        pattern = FinitePattern.of(pairs)
        base = gamma(ALEPH_0, w(d))

        xi = phi_witness(ALEPH_0, w(d), pattern)

        assert base <= xi < w(d)
        assert phi_eval(ALEPH_0, xi) == pattern

    def it_finds_witnesses_for_uncountable_kappa(self):
        pattern = FinitePattern.of([("w1*3", "w"), (2, 0)])

        xi = phi_witness(ALEPH_1, w("w1^2"), pattern)

        assert xi < w("w1^2")
        assert phi_eval(ALEPH_1, xi) == pattern

    @pytest.mark.parametrize("d", ("w+1", "0", "5"))
    def but_it_needs_an_admissible_level(self, d):
        with pytest.raises(PreconditionError):
            phi_witness(ALEPH_0, w(d), EMPTY_PATTERN)

    def and_it_needs_the_pattern_in_the_rectangle(self):
        with pytest.raises(PatternOutOfRangeError):
            phi_witness(ALEPH_0, w("w1+w"), FinitePattern.of([(3, 0)]))

    def it_falls_back_to_a_scan_for_countable_kappa(self, request, caplog):
        _construct_witness_ = method_mock(request, PhiSession, "_construct_witness")
        _construct_witness_.side_effect = WitnessConstructionError("boom")

        with caplog.at_level(logging.WARNING, logger="pibase.canonical_phi"):
            xi = PhiSession(ALEPH_0).phi_witness(w("w"), EMPTY_PATTERN)

        assert xi == ordinal.ZERO
        assert "scanning instead" in caplog.text

    def but_not_for_uncountable_kappa(self, request):
        _construct_witness_ = method_mock(request, PhiSession, "_construct_witness")
        _construct_witness_.side_effect = WitnessConstructionError("boom")

        with pytest.raises(WitnessConstructionError):
            PhiSession(ALEPH_1).phi_witness(w("w1"), EMPTY_PATTERN)

    def and_it_caps_the_scan(self):
        session = PhiSession(ALEPH_0)

        with pytest.raises(WitnessConstructionError):
            session.search_witness(w("w"), FinitePattern.of([(3, 0)]), cap=2)


class DescribePhiCheckCondition2:
    @pytest.mark.parametrize("d", ("w", "w*3", "w^2", "w1", "w1*2", "w1+w"))
    def it_passes_on_kappa_multiples(self, d):
        report = phi_check_condition2(ALEPH_0, w(d), samples=20, seed=3)

        assert isinstance(report, Condition2Report)
        assert report.status == "pass"
        assert report.passed
        assert report.checked == 20

    def it_is_vacuous_at_zero(self):
        report = phi_check_condition2(ALEPH_0, ordinal.ZERO, samples=20)

        assert report.status == "vacuous"
        assert report.checked == 0

    def but_it_needs_a_kappa_multiple(self):
        with pytest.raises(PreconditionError):
            phi_check_condition2(ALEPH_0, w("w+1"))

    def it_reports_failing_patterns(self, request):
        phi_witness_ = method_mock(request, PhiSession, "phi_witness")
        phi_witness_.side_effect = WitnessConstructionError("boom")

        report = phi_check_condition2(ALEPH_0, w("w^2"), samples=4, seed=1)

        assert report.status == "fail"
        assert not report.passed
        assert len(report.failures) == 4
        assert report.failures[0].message == "boom"

    def it_is_reproducible(self):
        first = phi_check_condition2(ALEPH_0, w("w1+w^2"), samples=10, seed=7)
        second = phi_check_condition2(ALEPH_0, w("w1+w^2"), samples=10, seed=7)

        assert first.to_dict() == second.to_dict()
        assert first.to_dict() == {
            "kappa": 0,
            "delta": "w1 + w^2",
            "gamma": "w1",
            "samples": 10,
            "seed": 7,
            "checked": 10,
            "status": "pass",
            "failures": [],
        }
