# encoding: utf-8

"""Pairing of ordinal notations, finite pattern codes and the surjections f_delta.

``pair`` applies the Cantor pairing of natural numbers to the coefficients of the
two arguments, exponent by exponent:

    pair(sum w^e * a_e, sum w^e * b_e) = sum w^e * cantor(a_e, b_e)

It is a bijection, pair(a, b) >= max(a, b), and it never leaves an initial segment
[0, w_k) (or [0, w)) that contains both arguments.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

from . import ordinal, settings
from .exceptions import (
    OrdinalSyntaxError,
    PatternOutOfRangeError,
    PreconditionError,
    WitnessConstructionError,
)
from .ordinal import CardinalLevel, OrdinalTerm
from .sigma_forms import (
    delta_prime_of_form,
    gamma_of_form,
    sigma_cardinality,
    sigma_nf,
)

logger = logging.getLogger(__name__)

# Side markers of the pattern coding: coordinates below the pivot are coded
# relative to the base, the others relative to the pivot.
_BASE_SIDE = ordinal.ZERO
_PIVOT_SIDE = ordinal.ONE


@dataclass(frozen=True)
class IndexPair:
    """A pair (``first``, ``second``) of ``first`` x kappa, with ``second`` < kappa."""

    first: OrdinalTerm
    second: OrdinalTerm

    def sort_key(self) -> Tuple[OrdinalTerm, OrdinalTerm]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


@dataclass(frozen=True)
class FinitePattern:
    """
    Finite set of IndexPairs, kept sorted by (first, second) without duplicates.

    Use ``FinitePattern.of`` to build patterns from any iterable of pairs.
    """

    pairs: Tuple[IndexPair, ...] = ()

    @classmethod
    def of(cls, pairs: Iterable) -> "FinitePattern":
        """Return the pattern made of ``pairs``.

        Parameters
        ----------
        pairs : Iterable
            IndexPairs, or (first, second) tuples of OrdinalTerms / ints

        Returns
        -------
        FinitePattern
            Canonically ordered pattern
        """
        unique = set()
        for pair_ in pairs:
            if not isinstance(pair_, IndexPair):
                first, second = pair_
                pair_ = IndexPair(ordinal.as_ordinal(first), ordinal.as_ordinal(second))
            unique.add(pair_)
        return cls(tuple(sorted(unique, key=IndexPair.sort_key)))

    def __iter__(self) -> Iterator[IndexPair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, item: IndexPair) -> bool:
        return item in self.pairs

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    @property
    def max_first(self) -> Optional[OrdinalTerm]:
        """Largest first coordinate, None for the empty pattern."""
        return ordinal.ordinal_max(*(p.first for p in self.pairs)) if self.pairs else None

    def within(
        self, low: OrdinalTerm, high: OrdinalTerm, kappa: CardinalLevel
    ) -> bool:
        """Return True if the pattern is a subset of [``low``, ``high``) x kappa."""
        bound = kappa.initial_ordinal()
        return all(
            low <= p.first and p.first < high and p.second < bound for p in self.pairs
        )

    def to_records(self) -> List[List[str]]:
        return [[str(p.first), str(p.second)] for p in self.pairs]

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.pairs) + "}"


EMPTY_PATTERN = FinitePattern()


# =====================
# =   PAIRING         =
# =====================


def _cantor(m: int, n: int) -> int:
    return (m + n) * (m + n + 1) // 2 + n


def _cantor_inverse(z: int) -> Tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    n = z - w * (w + 1) // 2
    return w - n, n


def pair(a: OrdinalTerm, b: OrdinalTerm) -> OrdinalTerm:
    """Return the code of the pair (``a``, ``b``).

    Parameters
    ----------
    a : OrdinalTerm
        First component
    b : OrdinalTerm
        Second component

    Returns
    -------
    OrdinalTerm
        Code c with unpair(c) = (``a``, ``b``), c >= max(``a``, ``b``)
    """
    a_monomials, b_monomials = a.monomials, b.monomials
    merged = []
    i = j = 0
    while i < len(a_monomials) or j < len(b_monomials):
        if j == len(b_monomials):
            result = 1
        elif i == len(a_monomials):
            result = -1
        else:
            result = ordinal.compare_exponents(a_monomials[i][0], b_monomials[j][0])
        if result > 0:
            exponent, coefficient = a_monomials[i]
            merged.append((exponent, _cantor(coefficient, 0)))
            i += 1
        elif result < 0:
            exponent, coefficient = b_monomials[j]
            merged.append((exponent, _cantor(0, coefficient)))
            j += 1
        else:
            exponent = a_monomials[i][0]
            merged.append((exponent, _cantor(a_monomials[i][1], b_monomials[j][1])))
            i += 1
            j += 1
    return OrdinalTerm(tuple(merged))


def unpair(c: OrdinalTerm) -> Tuple[OrdinalTerm, OrdinalTerm]:
    """Return the pair (a, b) coded by ``c``, inverse of ``pair``.

    Parameters
    ----------
    c : OrdinalTerm
        Any ordinal (every ordinal is a code)

    Returns
    -------
    OrdinalTerm
        First component
    OrdinalTerm
        Second component
    """
    first, second = [], []
    for exponent, coefficient in c.monomials:
        m, n = _cantor_inverse(coefficient)
        if m:
            first.append((exponent, m))
        if n:
            second.append((exponent, n))
    return OrdinalTerm(tuple(first)), OrdinalTerm(tuple(second))


# =====================
# =  NOTATION NUMBERS =
# =====================


def notation_number(a: OrdinalTerm) -> int:
    """Return the natural number numbering the notation ``a`` (0 for the ordinal 0).

    A term is numbered as a list of monomials, a monomial (e, c) as
    cantor(number(e), c - 1) where an atom w_k has the odd number 2k - 1 and a
    term exponent t has the even number 2 * notation_number(t). The empty list is
    0 and a list [m, *rest] is 1 + cantor(m, number(rest)).
    """
    result = 0
    for exponent, coefficient in reversed(a.monomials):
        if isinstance(exponent, ordinal.Atom):
            exponent_number = 2 * exponent.level - 1
        else:
            exponent_number = 2 * notation_number(exponent)
        result = 1 + _cantor(_cantor(exponent_number, coefficient - 1), result)
    return result


def from_notation_number(number: int, max_level: int = None) -> Optional[OrdinalTerm]:
    """Return the notation numbered by ``number``, None if it numbers no canonical term.

    Parameters
    ----------
    number : int
        Natural number
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    Optional[OrdinalTerm]
        The canonical term with ``notation_number(term) == number``, or None
    """
    max_level = settings.max_level() if max_level is None else max_level
    monomials = []
    while number:
        monomial_number, number = _cantor_inverse(number - 1)
        exponent_number, coefficient = _cantor_inverse(monomial_number)
        if exponent_number % 2:
            level = (exponent_number + 1) // 2
            if level > max_level:
                return None
            exponent = ordinal.Atom(level)
        else:
            exponent = from_notation_number(exponent_number // 2, max_level)
            # a term whose value is some w_k is always stored as the atom
            if exponent is None or isinstance(
                ordinal.monomial(exponent).monomials[0][0], ordinal.Atom
            ):
                return None
        if monomials and ordinal.compare_exponents(monomials[-1][0], exponent) <= 0:
            return None
        monomials.append((exponent, coefficient + 1))
    return OrdinalTerm(tuple(monomials))


def compress(a: OrdinalTerm, width: CardinalLevel) -> OrdinalTerm:
    """Map ``a`` < width^+ injectively below w_width.

    With a = w_width * q + r, r < w_width, the image is pair(r, notation_number(q)),
    which is < w_width since pair keeps cardinal initial segments.
    """
    quotient, remainder = ordinal.div_by_cardinal(a, width)
    return pair(remainder, ordinal.from_int(notation_number(quotient)))


def decompress(
    c: OrdinalTerm, width: CardinalLevel, max_level: int = None
) -> Optional[OrdinalTerm]:
    """Inverse of ``compress``, None when ``c`` is not in its range."""
    remainder, number = unpair(c)
    if not number.is_finite or remainder >= width.initial_ordinal():
        return None
    quotient = from_notation_number(number.to_int(), max_level)
    if quotient is None:
        return None
    return ordinal.add(ordinal.mul(width.initial_ordinal(), quotient), remainder)


# =====================
# =   PATTERN CODES   =
# =====================


def encode_pattern(
    pattern: FinitePattern,
    base: OrdinalTerm,
    pivot: OrdinalTerm = None,
    width: CardinalLevel = None,
) -> OrdinalTerm:
    """Return the code of ``pattern`` relative to ``base``.

    Every pair (x, i) is coded as pair(pair(x \\ base, 0), i) when x < ``pivot``
    (or when there is no pivot) and as pair(pair(x \\ pivot, 1), i) otherwise. The
    pattern of size n is coded as pair(n, pair(e_1, pair(e_2, ... pair(e_n, 0)))).
    The empty pattern has code 0.

    Parameters
    ----------
    pattern : FinitePattern
        Pattern whose first coordinates are all >= ``base``
    base : OrdinalTerm
        Origin of the coordinates below the pivot
    pivot : OrdinalTerm, optional
        Origin of the coordinates >= ``pivot``. Default is None (no pivot).
    width : CardinalLevel, optional
        When given, offsets are passed through ``compress`` so that a pattern over
        an interval of cardinality ``width`` gets a code below w_width. Default is
        None (offsets are used as they are).

    Returns
    -------
    OrdinalTerm
        The code of ``pattern``

    Raises
    ------
    PatternOutOfRangeError
        If a first coordinate of ``pattern`` is below ``base``
    """
    codes = []
    for element in pattern:
        if pivot is not None and element.first >= pivot:
            offset, side = ordinal.sub_left(pivot, element.first), _PIVOT_SIDE
        elif element.first >= base:
            offset, side = ordinal.sub_left(base, element.first), _BASE_SIDE
        else:
            raise PatternOutOfRangeError(
                f"Pattern element {element} is below the coding base {base}"
            )
        if width is not None:
            offset = compress(offset, width)
        codes.append(pair(pair(offset, side), element.second))
    tail = ordinal.ZERO
    for code in reversed(codes):
        tail = pair(code, tail)
    return pair(ordinal.from_int(len(codes)), tail)


def decode_pattern(
    c: OrdinalTerm,
    base: OrdinalTerm,
    pivot: OrdinalTerm = None,
    kappa: CardinalLevel = None,
    width: CardinalLevel = None,
    max_level: int = None,
) -> FinitePattern:
    """Return the pattern coded by ``c``; ill-formed codes decode to the empty pattern.

    A code is ill-formed when its length is infinite, it has leftover data, an
    element uses an unknown side marker (or the pivot side without a pivot), a
    base-side coordinate is not below the pivot, the elements are not strictly
    increasing, an index is not below ``kappa`` or an offset is not a compressed
    offset (when ``width`` is given).

    Parameters
    ----------
    c : OrdinalTerm
        Code
    base : OrdinalTerm
        Origin of the coordinates below the pivot
    pivot : OrdinalTerm, optional
        Origin of the other coordinates. Default is None (no pivot).
    kappa : CardinalLevel, optional
        Strict bound of the indices. Default is None (indices are not checked).
    width : CardinalLevel, optional
        Width used by ``encode_pattern``. Default is None.
    max_level : int, optional
        Highest atom level of decompressed offsets. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    FinitePattern
        The decoded pattern, empty for ill-formed codes
    """
    length, tail = unpair(c)
    if not length.is_finite:
        return EMPTY_PATTERN
    index_bound = kappa.initial_ordinal() if kappa is not None else None
    elements: List[IndexPair] = []
    for _ in range(length.to_int()):
        code, tail = unpair(tail)
        relative, index = unpair(code)
        offset, side = unpair(relative)
        if width is not None:
            offset = decompress(offset, width, max_level)
            if offset is None:
                return EMPTY_PATTERN
        if side == _BASE_SIDE:
            first = ordinal.add(base, offset)
            if pivot is not None and first >= pivot:
                return EMPTY_PATTERN
        elif side == _PIVOT_SIDE and pivot is not None:
            first = ordinal.add(pivot, offset)
        else:
            return EMPTY_PATTERN
        if index_bound is not None and index >= index_bound:
            return EMPTY_PATTERN
        element = IndexPair(first, index)
        if elements and not elements[-1].sort_key() < element.sort_key():
            return EMPTY_PATTERN
        elements.append(element)
    if not tail.is_zero:
        return EMPTY_PATTERN
    return FinitePattern(tuple(elements))


def parse_pattern(text: str, max_level: int = None) -> FinitePattern:
    """Parse a pattern literal such as "(w,0);(3,1)" or "{(w,0),(3,1)}".

    Raises
    ------
    OrdinalSyntaxError
        If the literal is malformed, with the position of the error
    """
    body = text.strip()
    offset = len(text) - len(text.lstrip())
    if body.startswith("{"):
        if not body.endswith("}"):
            raise OrdinalSyntaxError("Unclosed '{' in pattern", offset)
        body = body[1:-1]
        offset += 1
    pairs = []
    depth = 0
    start = None
    for position, char in enumerate(body):
        if char == "(":
            if depth == 0:
                start = position + 1
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise OrdinalSyntaxError("Unbalanced ')' in pattern", offset + position)
            if depth == 0:
                pairs.append(_parse_pair(body[start:position], offset + start, max_level))
        elif depth == 0 and not (char.isspace() or char in ",;"):
            raise OrdinalSyntaxError(
                f"Unexpected character {char!r} in pattern", offset + position
            )
    if depth:
        raise OrdinalSyntaxError("Unclosed '(' in pattern", offset + len(body))
    return FinitePattern.of(pairs)


def _parse_pair(text: str, offset: int, max_level: int) -> Tuple[OrdinalTerm, OrdinalTerm]:
    depth = 0
    for position, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "," and depth == 0:
            try:
                return (
                    ordinal.parse(text[:position], max_level=max_level),
                    ordinal.parse(text[position + 1 :], max_level=max_level),
                )
            except OrdinalSyntaxError as err:
                raise OrdinalSyntaxError(
                    f"Invalid pattern element ({text}): {err}", offset
                )
    raise OrdinalSyntaxError(f"Pattern element ({text}) needs two components", offset)


def random_pattern(
    rng,
    low: OrdinalTerm,
    high: OrdinalTerm,
    kappa: CardinalLevel,
    max_size: int = settings.RANDOM_PATTERN_MAX_SIZE,
) -> FinitePattern:
    """Draw a random pattern over [``low``, ``high``) x kappa with at most ``max_size`` pairs.

    Parameters
    ----------
    rng : numpy.random.Generator
        Source of randomness
    low : OrdinalTerm
        Least allowed first coordinate
    high : OrdinalTerm
        Strict bound of the first coordinates
    kappa : CardinalLevel
        Strict bound of the indices
    max_size : int, optional
        Largest pattern size. Default is ``settings.RANDOM_PATTERN_MAX_SIZE``.

    Returns
    -------
    FinitePattern
        Random pattern, possibly empty
    """
    if high <= low:
        return EMPTY_PATTERN
    width = ordinal.sub_left(low, high)
    kappa_ordinal = kappa.initial_ordinal()
    pairs = []
    for _ in range(int(rng.integers(0, max_size + 1))):
        first = ordinal.add(low, ordinal.random_ordinal_below(width, rng))
        if kappa.level == 0:
            index = ordinal.from_int(int(rng.integers(0, 10)))
        else:
            index = ordinal.random_ordinal_below(kappa_ordinal, rng)
        pairs.append(IndexPair(first, index))
    return FinitePattern.of(pairs)


# =====================
# =   f_delta         =
# =====================


@dataclass(frozen=True)
class FDeltaDomain:
    """
    Domain data of f_delta.

    Parameters
    ----------
    delta : OrdinalTerm
        Start of the domain [delta, delta')
    gamma : OrdinalTerm
        Coding base gamma(delta), least first coordinate of the patterns
    delta_prime : OrdinalTerm
        End of the domain
    width : CardinalLevel
        Cardinality of [gamma, delta'), the width of the offset compression
    max_level : int
        Highest atom level accepted when decoding
    """

    delta: OrdinalTerm
    gamma: OrdinalTerm
    delta_prime: OrdinalTerm
    width: CardinalLevel
    max_level: int


def f_delta_domain(k: CardinalLevel, d: OrdinalTerm, max_level: int = None) -> FDeltaDomain:
    """Return the domain data of f_``d``.

    ``d`` = 0 is the first block [0, kappa), coded with gamma = 0.

    Raises
    ------
    PreconditionError
        If ``d`` > 0 and its normal form has a non-zero remainder or no sigma term
    """
    max_level = settings.max_level() if max_level is None else max_level
    if d.is_zero:
        return FDeltaDomain(
            delta=d,
            gamma=ordinal.ZERO,
            delta_prime=k.initial_ordinal(),
            width=k,
            max_level=max_level,
        )
    form = sigma_nf(k, d, max_level)
    return FDeltaDomain(
        delta=d,
        gamma=gamma_of_form(form),
        delta_prime=delta_prime_of_form(form, d),
        width=sigma_cardinality(k, form.alphas[-1]),
        max_level=max_level,
    )


def f_delta(
    k: CardinalLevel, d: OrdinalTerm, xi: OrdinalTerm, max_level: int = None
) -> FinitePattern:
    """Evaluate the surjection f_``d`` at ``xi``.

    With (c, t) = unpair(``xi`` \\ ``d``), the value is the pattern coded by c
    (relative to gamma(``d``) with pivot ``d``) when all its first coordinates are
    below ``xi``, and the empty pattern otherwise. The tag t only makes every
    pattern attained cofinally often.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    d : OrdinalTerm
        0, or an ordinal whose normal form has remainder 0 and n >= 1
    xi : OrdinalTerm
        Argument in [``d``, delta'(``d``))
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    FinitePattern
        A pattern over [gamma(``d``), ``xi``) x kappa

    Raises
    ------
    PreconditionError
        If ``d`` is not an admissible level or ``xi`` is outside the domain
    """
    domain = f_delta_domain(k, d, max_level)
    return f_delta_on(domain, k, xi)


def f_delta_on(domain: FDeltaDomain, k: CardinalLevel, xi: OrdinalTerm) -> FinitePattern:
    """Evaluate f_delta on precomputed domain data (see ``f_delta``)."""
    if xi < domain.delta or xi >= domain.delta_prime:
        raise PreconditionError(
            f"f_delta at {domain.delta} is defined on [{domain.delta}, "
            f"{domain.delta_prime}), found {xi}"
        )
    code, _ = unpair(ordinal.sub_left(domain.delta, xi))
    pattern = decode_pattern(
        code,
        domain.gamma,
        pivot=domain.delta,
        kappa=k,
        width=domain.width,
        max_level=domain.max_level,
    )
    if pattern.is_empty or pattern.max_first < xi:
        return pattern
    return EMPTY_PATTERN


def f_delta_witness(
    k: CardinalLevel,
    d: OrdinalTerm,
    pattern: FinitePattern,
    bound: OrdinalTerm = None,
    minimum: OrdinalTerm = None,
    max_level: int = None,
) -> OrdinalTerm:
    """Return an argument xi of f_``d`` with f_``d``(xi) = ``pattern``.

    xi is d + pair(code, tag) where the tag is the least one pushing xi above the
    pattern (and above ``minimum`` when given). Different minimums give
    different witnesses of the same pattern.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    d : OrdinalTerm
        0, or an ordinal whose normal form has remainder 0 and n >= 1
    pattern : FinitePattern
        Pattern over [gamma(``d``), delta'(``d``)) x kappa
    bound : OrdinalTerm, optional
        Strict upper bound required for xi. Default is None (delta' only).
    minimum : OrdinalTerm, optional
        The witness is made strictly greater than ``minimum``. Default is None.
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    OrdinalTerm
        xi in [``d``, delta'(``d``)) with xi > every first coordinate of ``pattern``

    Raises
    ------
    PatternOutOfRangeError
        If ``pattern`` is not over [gamma(``d``), delta'(``d``)) x kappa
    WitnessConstructionError
        If the witness does not fit below ``bound`` or delta'
    """
    domain = f_delta_domain(k, d, max_level)
    if not pattern.within(domain.gamma, domain.delta_prime, k):
        raise PatternOutOfRangeError(
            f"Pattern {pattern} is not over [{domain.gamma}, {domain.delta_prime}) x {k}"
        )
    code = encode_pattern(pattern, domain.gamma, pivot=d, width=domain.width)
    tag = ordinal.ZERO
    if not pattern.is_empty and pattern.max_first >= d:
        tag = ordinal.succ(ordinal.sub_left(d, pattern.max_first))
    if minimum is not None and minimum >= d:
        tag = ordinal.ordinal_max(tag, ordinal.succ(ordinal.sub_left(d, minimum)))
    xi = ordinal.add(d, pair(code, tag))
    if xi >= domain.delta_prime:
        raise WitnessConstructionError(
            f"Witness {xi} of {pattern} is outside [{d}, {domain.delta_prime})"
        )
    if bound is not None and xi >= bound:
        raise WitnessConstructionError(
            f"Witness {xi} of {pattern} does not fit below {bound}"
        )
    if f_delta_on(domain, k, xi) != pattern:
        raise RuntimeError(f"f_delta at {d} does not map {xi} back to {pattern}")
    logger.debug("f_delta witness of %s at %s: %s", pattern, d, xi)
    return xi
