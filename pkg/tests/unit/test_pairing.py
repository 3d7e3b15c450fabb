import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pibase import ordinal
from pibase.exceptions import (
    OrdinalSyntaxError,
    PatternOutOfRangeError,
    PreconditionError,
    WitnessConstructionError,
)
from pibase.ordinal import CardinalLevel
from pibase.pairing import (
    EMPTY_PATTERN,
    FinitePattern,
    IndexPair,
    compress,
    decode_pattern,
    decompress,
    encode_pattern,
    f_delta,
    f_delta_domain,
    f_delta_witness,
    from_notation_number,
    notation_number,
    pair,
    parse_pattern,
    random_pattern,
    unpair,
)

from ..strategies import (
    LAW_EXAMPLES,
    ORACLE_EXAMPLES,
    initial_ordinals,
    ordinals,
    patterns,
)
from ..unitutil import function_mock

ALEPH_0 = CardinalLevel.aleph(0)
ALEPH_1 = CardinalLevel.aleph(1)

# 0 and ordinals whose normal form over w has remainder 0 and at least one term
F_LEVELS = ("0", "w", "w*3", "w^2", "w^w", "w1", "w1+w", "w1*2", "w2+w1", "w2+w1+w^2")


def w(text: str) -> ordinal.OrdinalTerm:
    return ordinal.parse(text)


class DescribePair:
    @pytest.mark.parametrize(
        "a, b, expected_code",
        (
            ("0", "0", "0"),
            ("3", "0", "6"),
            ("0", "3", "9"),
            ("w", "1", "w+2"),
            ("w1", "w1", "w1*4"),
            ("w^2", "w+1", "w^2+w*2+2"),
        ),
    )
    def it_pairs_coefficients_exponent_by_exponent(self, a, b, expected_code):
        code = pair(w(a), w(b))

        assert code == w(expected_code)
        assert unpair(code) == (w(a), w(b))

    @LAW_EXAMPLES
    @given(ordinals(), ordinals())
    def it_is_inverted_by_unpair(self, a, b):
        assert unpair(pair(a, b)) == (a, b)

    @given(ordinals())
    def it_is_onto(self, c):
        assert pair(*unpair(c)) == c

    @LAW_EXAMPLES
    @given(ordinals(), ordinals())
    def it_is_above_both_components(self, a, b):
        code = pair(a, b)

        assert code >= a
        assert code >= b

    @LAW_EXAMPLES
    @given(ordinals(), ordinals(), initial_ordinals())
    def it_keeps_cardinal_initial_segments(self, a, b, cardinal):
        if a < cardinal and b < cardinal:
            assert pair(a, b) < cardinal


class DescribeNotationNumber:
    @pytest.mark.parametrize("text, expected_number", (("0", 0), ("1", 1), ("2", 4)))
    def it_numbers_notations(self, text, expected_number):
        assert notation_number(w(text)) == expected_number

    @given(ordinals())
    def it_roundtrips(self, a):
        assert from_notation_number(notation_number(a)) == a

    def it_rejects_non_canonical_numbers(self):
        # 36 numbers the list [1, w], whose exponents are not decreasing
        assert from_notation_number(36) is None

    def and_it_rejects_atoms_above_max_level(self):
        # 2212 numbers the list [w6]
        assert from_notation_number(2212) is None
        assert from_notation_number(2212, max_level=6) == ordinal.omega_level(6, max_level=6)

    def it_is_injective_on_small_numbers(self):
        terms = [from_notation_number(number) for number in range(500)]
        found = [term for term in terms if term is not None]

        assert len(set(found)) == len(found)
        assert all(
            notation_number(term) == number
            for number, term in enumerate(terms)
            if term is not None
        )


class DescribeCompress:
    @pytest.mark.parametrize(
        "text, level", (("5", 0), ("w*2+5", 0), ("w^w", 0), ("w1+3", 1), ("w1*w+w", 1))
    )
    def it_maps_below_the_width(self, text, level):
        width = CardinalLevel.aleph(level)

        code = compress(w(text), width)

        assert code < width.initial_ordinal()
        assert decompress(code, width) == w(text)

    def it_maps_below_w1_to_a_pair_with_zero(self):
        assert compress(w("w+3"), ALEPH_1) == pair(w("w+3"), ordinal.ZERO)

    def but_decompress_rejects_foreign_codes(self):
        assert decompress(w("w"), ALEPH_0) is None
        assert decompress(pair(ordinal.ZERO, ordinal.from_int(36)), ALEPH_0) is None


class DescribeFinitePattern:
    def it_sorts_and_deduplicates(self):
        pattern = FinitePattern.of([("w", 1), (3, 0), (3, 0)])

        assert pattern.pairs == (IndexPair(w("3"), w("0")), IndexPair(w("w"), w("1")))
        assert len(pattern) == 2
        assert IndexPair(w("3"), w("0")) in pattern
        assert str(pattern) == "{(3,0),(w,1)}"
        assert pattern.to_records() == [["3", "0"], ["w", "1"]]
        assert pattern.max_first == w("w")

    def it_knows_the_empty_pattern(self):
        assert EMPTY_PATTERN.is_empty
        assert EMPTY_PATTERN.max_first is None
        assert str(EMPTY_PATTERN) == "{}"

    @pytest.mark.parametrize(
        "low, high, level, expected_result",
        (("0", "w+1", 0, True), ("0", "w", 0, False), ("6", "w1", 0, False), ("5", "w1", 1, True)),
    )
    def it_checks_rectangles(self, low, high, level, expected_result):
        pattern = FinitePattern.of([("w", 1), (5, 2)])

        assert pattern.within(w(low), w(high), CardinalLevel.aleph(level)) is expected_result

    def and_it_checks_indices_against_kappa(self):
        pattern = FinitePattern.of([(5, "w")])

        assert pattern.within(w("0"), w("w1"), ALEPH_0) is False
        assert pattern.within(w("0"), w("w1"), ALEPH_1) is True


class DescribeParsePattern:
    @pytest.mark.parametrize(
        "text", ("(w,0);(3,1)", "{(w,0),(3,1)}", " { (3,1) , (w,0) } ", "(w, 0)(3, 1)")
    )
    def it_parses_pattern_literals(self, text):
        assert parse_pattern(text) == FinitePattern.of([("w", 0), (3, 1)])

    def it_parses_nested_parentheses(self):
        assert parse_pattern("(w^(1+1),w*(2))") == FinitePattern.of([("w^2", "w*2")])

    @pytest.mark.parametrize("text", ("", "{}", "  "))
    def it_parses_empty_patterns(self, text):
        assert parse_pattern(text) == EMPTY_PATTERN

    @pytest.mark.parametrize(
        "text, expected_position, expected_message",
        (
            ("(w,0", 4, "Unclosed '('"),
            ("(w,0))", 5, "Unbalanced ')'"),
            ("x", 0, "Unexpected character 'x'"),
            ("{(w,0)", 0, "Unclosed '{'"),
            ("(w)", 1, "needs two components"),
            ("(w+,1)", 1, "Invalid pattern element"),
        ),
    )
    def but_it_raises_on_malformed_literals(self, text, expected_position, expected_message):
        with pytest.raises(OrdinalSyntaxError) as err:
            parse_pattern(text)

        assert err.value.position == expected_position
        assert expected_message in str(err.value)


class DescribePatternCodes:
    def it_codes_the_empty_pattern_as_zero(self):
        assert encode_pattern(EMPTY_PATTERN, w("w")) == ordinal.ZERO
        assert decode_pattern(ordinal.ZERO, w("w")) == EMPTY_PATTERN

    @given(patterns())
    def it_roundtrips_without_pivot(self, pattern):
        code = encode_pattern(pattern, ordinal.ZERO)

        assert decode_pattern(code, ordinal.ZERO, kappa=ALEPH_0) == pattern

    @given(patterns(), st.sampled_from(["w", "w^2", "w^w+w"]))
    def it_roundtrips_with_a_pivot_and_a_width(self, pattern, pivot):
        code = encode_pattern(pattern, ordinal.ZERO, pivot=w(pivot), width=ALEPH_0)

        decoded = decode_pattern(
            code, ordinal.ZERO, pivot=w(pivot), kappa=ALEPH_0, width=ALEPH_0
        )

        assert decoded == pattern

    def it_roundtrips_uncountable_offsets(self):
        pattern = FinitePattern.of([("w+2", 0), ("w1+w", 3), ("w1*2", 1)])

        code = encode_pattern(pattern, w("1"), pivot=w("w1"), width=ALEPH_1)

        assert code < w("w1")
        assert decode_pattern(code, w("1"), pivot=w("w1"), width=ALEPH_1) == pattern

    def but_encoding_needs_coordinates_above_the_base(self):
        with pytest.raises(PatternOutOfRangeError):
            encode_pattern(FinitePattern.of([(3, 0)]), w("w"))

    @pytest.mark.parametrize(
        "code",
        (
            w("w"),
            pair(ordinal.ZERO, w("5")),
            pair(w("2"), pair(w("9"), pair(w("9"), ordinal.ZERO))),
            pair(w("1"), pair(pair(pair(w("3"), w("2")), ordinal.ZERO), ordinal.ZERO)),
        ),
    )
    def but_ill_formed_codes_decode_to_the_empty_pattern(self, code):
        # infinite length, leftover data, repeated element, unknown side marker
        assert decode_pattern(code, ordinal.ZERO) == EMPTY_PATTERN

    def and_it_needs_a_pivot_for_pivot_side_codes(self):
        code = encode_pattern(FinitePattern.of([("w+1", 0)]), ordinal.ZERO, pivot=w("w"))

        assert decode_pattern(code, ordinal.ZERO) == EMPTY_PATTERN
        assert decode_pattern(code, ordinal.ZERO, pivot=w("w")) == FinitePattern.of(
            [("w+1", 0)]
        )

    def and_it_needs_indices_below_kappa(self):
        code = encode_pattern(FinitePattern.of([(2, "w")]), ordinal.ZERO)

        assert decode_pattern(code, ordinal.ZERO, kappa=ALEPH_0) == EMPTY_PATTERN
        assert decode_pattern(code, ordinal.ZERO, kappa=ALEPH_1) == FinitePattern.of(
            [(2, "w")]
        )


class DescribeRandomPattern:
    @pytest.mark.parametrize(
        "low, high, level", (("0", "w", 0), ("w1", "w1+w^2", 0), ("w^2", "w1*2", 1))
    )
    def it_draws_inside_the_rectangle(self, low, high, level):
        rng = np.random.default_rng(3)
        kappa = CardinalLevel.aleph(level)

        drawn = [random_pattern(rng, w(low), w(high), kappa) for _ in range(30)]

        assert all(pattern.within(w(low), w(high), kappa) for pattern in drawn)
        assert any(not pattern.is_empty for pattern in drawn)

    def but_an_empty_rectangle_gives_the_empty_pattern(self):
        rng = np.random.default_rng(3)

        assert random_pattern(rng, w("w"), w("w"), ALEPH_0) == EMPTY_PATTERN


class DescribeFDelta:
    @pytest.mark.parametrize(
        "d, expected_gamma, expected_delta_prime, expected_width",
        (
            ("0", "0", "w", ALEPH_0),
            ("w", "0", "w*2", ALEPH_0),
            ("w^2", "0", "w^2+w", ALEPH_0),
            ("w1", "0", "w1*2", ALEPH_1),
            ("w1+w", "w1", "w1+w*2", ALEPH_0),
        ),
    )
    def it_knows_its_domain(self, d, expected_gamma, expected_delta_prime, expected_width):
        domain = f_delta_domain(ALEPH_0, w(d))

        assert domain.gamma == w(expected_gamma)
        assert domain.delta_prime == w(expected_delta_prime)
        assert domain.width == expected_width

    @pytest.mark.parametrize("d", F_LEVELS)
    def it_maps_delta_to_the_empty_pattern(self, d):
        assert f_delta(ALEPH_0, w(d), w(d)) == EMPTY_PATTERN

    @pytest.mark.parametrize("d, xi", (("w", "w*2"), ("w", "5"), ("0", "w")))
    def but_it_is_only_defined_on_its_domain(self, d, xi):
        with pytest.raises(PreconditionError):
            f_delta(ALEPH_0, w(d), w(xi))

    def and_it_needs_an_admissible_level(self):
        with pytest.raises(PreconditionError):
            f_delta(ALEPH_0, w("w+1"), w("w+1"))

    def and_it_drops_patterns_reaching_its_argument(self, request):
        decode_pattern_ = function_mock(request, "pibase.pairing.decode_pattern")
        decode_pattern_.return_value = FinitePattern.of([("w+7", 0)])

        assert f_delta(ALEPH_0, w("w"), w("w+7")) == EMPTY_PATTERN
        assert f_delta(ALEPH_0, w("w"), w("w+8")) == FinitePattern.of([("w+7", 0)])

    def it_finds_witnesses(self):
        pattern = FinitePattern.of([(3, 0)])

        xi = f_delta_witness(ALEPH_0, w("w^2"), pattern)

        assert w("3") < xi < w("w^2+w")
        assert f_delta(ALEPH_0, w("w^2"), xi) == pattern

    def it_maps_the_empty_pattern_to_delta(self):
        assert f_delta_witness(ALEPH_0, w("w1+w"), EMPTY_PATTERN) == w("w1+w")

    @pytest.mark.parametrize("d", F_LEVELS)
    def it_roundtrips_random_patterns(self, d):
        rng = np.random.default_rng(11)
        domain = f_delta_domain(ALEPH_0, w(d))

        for _ in range(20):
            pattern = random_pattern(rng, domain.gamma, domain.delta_prime, ALEPH_0)
            xi = f_delta_witness(ALEPH_0, w(d), pattern)

            assert w(d) <= xi < domain.delta_prime
            assert pattern.is_empty or pattern.max_first < xi
            assert f_delta(ALEPH_0, w(d), xi) == pattern

    @ORACLE_EXAMPLES
    @given(st.sampled_from(F_LEVELS), st.integers(min_value=0, max_value=2**32 - 1))
    def it_roundtrips_sampled_patterns(self, d, seed):
        domain = f_delta_domain(ALEPH_0, w(d))
        rng = np.random.default_rng(seed)
        pattern = random_pattern(rng, domain.gamma, domain.delta_prime, ALEPH_0)

        xi = f_delta_witness(ALEPH_0, w(d), pattern)

        assert w(d) <= xi < domain.delta_prime
        assert pattern.is_empty or pattern.max_first < xi
        assert f_delta(ALEPH_0, w(d), xi) == pattern

    def it_finds_witnesses_above_a_minimum(self):
        pattern = FinitePattern.of([(3, 0), ("w+1", 2)])

        first = f_delta_witness(ALEPH_0, w("w"), pattern)
        second = f_delta_witness(ALEPH_0, w("w"), pattern, minimum=first)

        assert second > first
        assert f_delta(ALEPH_0, w("w"), second) == pattern

    def but_the_witness_must_fit_below_the_bound(self):
        with pytest.raises(WitnessConstructionError):
            f_delta_witness(ALEPH_0, w("w^2"), FinitePattern.of([(3, 0)]), bound=w("w^2+1"))

    def and_it_needs_the_pattern_in_range(self):
        with pytest.raises(PatternOutOfRangeError):
            f_delta_witness(ALEPH_0, w("w1"), FinitePattern.of([("w1*2", 0)]))
        with pytest.raises(PatternOutOfRangeError):
            f_delta_witness(ALEPH_0, w("w1+w"), FinitePattern.of([(3, 0)]))
