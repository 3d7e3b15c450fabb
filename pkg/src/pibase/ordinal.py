# encoding: utf-8

"""Exact ordinal notations below the first epsilon number above w_maxLevel.

An ordinal is written in Cantor normal form base w,

    w^e_0 * c_0 + w^e_1 * c_1 + ... + w^e_m * c_m,    e_0 > e_1 > ... > e_m,

where every exponent is again an ordinal term or a cardinal atom ``Atom(k)``
standing for w_k (k >= 1). Uncountable cardinals are epsilon numbers, so
w^(w_k) = w_k and the monomial with exponent ``Atom(k)`` and coefficient c is
w_k * c. An exponent is never a term whose value is some w_k: that value is
always stored as the atom, which keeps one representation per ordinal.
"""

import enum
import functools
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple, Union

from . import settings
from .exceptions import LevelOverflowError, OrdinalSyntaxError, PreconditionError

logger = logging.getLogger(__name__)

_CACHE_SIZE = 2 ** 16


@dataclass(frozen=True)
class Atom:
    """Leaf atom of an exponent, standing for the initial ordinal w_``level``."""

    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"Atom level must be >= 1, found {self.level}")


@dataclass(frozen=True)
class OrdinalTerm:
    """
    Ordinal in Cantor normal form.

    Parameters
    ----------
    monomials : Tuple[Tuple[Union[OrdinalTerm, Atom], int], ...]
        Pairs (exponent, coefficient) with strictly decreasing exponents and
        positive coefficients. The empty tuple is the ordinal 0. Use the module
        functions (``parse``, ``from_int``, ``add``, ...) rather than building
        instances by hand: they keep the representation canonical.
    """

    monomials: Tuple[Tuple[Union["OrdinalTerm", Atom], int], ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.monomials))

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __lt__(self, other: "OrdinalTerm") -> bool:
        return _cmp_terms(self, _coerce(other)) < 0

    def __le__(self, other: "OrdinalTerm") -> bool:
        return _cmp_terms(self, _coerce(other)) <= 0

    def __gt__(self, other: "OrdinalTerm") -> bool:
        return _cmp_terms(self, _coerce(other)) > 0

    def __ge__(self, other: "OrdinalTerm") -> bool:
        return _cmp_terms(self, _coerce(other)) >= 0

    def __add__(self, other: "OrdinalTerm") -> "OrdinalTerm":
        return add(self, _coerce(other))

    def __radd__(self, other: int) -> "OrdinalTerm":
        return add(_coerce(other), self)

    def __mul__(self, other: "OrdinalTerm") -> "OrdinalTerm":
        return mul(self, _coerce(other))

    def __rmul__(self, other: int) -> "OrdinalTerm":
        return mul(_coerce(other), self)

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"OrdinalTerm('{to_string(self)}')"

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def is_finite(self) -> bool:
        return all(exponent == ZERO for exponent, _ in self.monomials)

    @property
    def is_successor(self) -> bool:
        return bool(self.monomials) and self.monomials[-1][0] == ZERO

    @property
    def is_limit(self) -> bool:
        return bool(self.monomials) and self.monomials[-1][0] != ZERO

    def to_int(self) -> int:
        """Return the value of a finite ordinal as a Python int.

        Returns
        -------
        int
            Value of the ordinal

        Raises
        ------
        ValueError
            If the ordinal is infinite
        """
        if not self.is_finite:
            raise ValueError(f"{self} is not a finite ordinal")
        return self.monomials[0][1] if self.monomials else 0


Exponent = Union[OrdinalTerm, Atom]

ZERO = OrdinalTerm(())
ONE = OrdinalTerm(((ZERO, 1),))
OMEGA = OrdinalTerm(((ONE, 1),))


class Comparison(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


@functools.total_ordering
@dataclass(frozen=True)
class CardinalLevel:
    """
    Cardinal of an ordinal: either a finite cardinal n or aleph_k.

    Parameters
    ----------
    level : int
        n for a finite cardinal, k for aleph_k
    is_finite : bool, optional
        True for a finite cardinal. Default is False (aleph_``level``).
    """

    level: int
    is_finite: bool = False

    @classmethod
    def aleph(cls, level: int, max_level: int = None) -> "CardinalLevel":
        """Return aleph_``level``, checking it against maxLevel.

        Parameters
        ----------
        level : int
            Index k of aleph_k (0 is aleph_0)
        max_level : int, optional
            Highest accepted level. Default is None, meaning ``settings.max_level()``

        Returns
        -------
        CardinalLevel
            The infinite cardinal aleph_``level``

        Raises
        ------
        LevelOverflowError
            If ``level`` is above the highest accepted level
        ValueError
            If ``level`` is negative
        """
        if level < 0:
            raise ValueError(f"Cardinal level must be non-negative, found {level}")
        max_level = settings.max_level() if max_level is None else max_level
        if level > max_level:
            raise LevelOverflowError(
                f"Cardinal level {level} is above maxLevel {max_level}"
            )
        return cls(level=level, is_finite=False)

    @classmethod
    def finite(cls, n: int) -> "CardinalLevel":
        if n < 0:
            raise ValueError(f"A finite cardinal must be non-negative, found {n}")
        return cls(level=n, is_finite=True)

    def __lt__(self, other: "CardinalLevel") -> bool:
        if not isinstance(other, CardinalLevel):
            return NotImplemented
        return (not self.is_finite, self.level) < (not other.is_finite, other.level)

    def initial_ordinal(self) -> OrdinalTerm:
        """Return the least ordinal of this cardinality (n, w or w_k)."""
        if self.is_finite:
            return from_int(self.level)
        return omega_level(self.level, max_level=self.level)

    def successor(self, max_level: int = None) -> "CardinalLevel":
        """Return the successor cardinal (n+1 for finite n, aleph_(k+1) otherwise).

        Raises
        ------
        LevelOverflowError
            If the successor of an infinite cardinal is above maxLevel
        """
        if self.is_finite:
            return CardinalLevel.finite(self.level + 1)
        return CardinalLevel.aleph(self.level + 1, max_level=max_level)

    def __str__(self) -> str:
        if self.is_finite:
            return str(self.level)
        return f"aleph_{self.level}"


# =====================
# =   CONSTRUCTORS    =
# =====================


def from_int(n: int) -> OrdinalTerm:
    """Return the finite ordinal ``n``.

    Raises
    ------
    ValueError
        If ``n`` is negative
    """
    if n < 0:
        raise ValueError(f"Ordinals are non-negative, found {n}")
    if n == 0:
        return ZERO
    return OrdinalTerm(((ZERO, n),))


def omega_level(level: int, max_level: int = None) -> OrdinalTerm:
    """Return the initial ordinal w_``level`` (w for level 0).

    Raises
    ------
    LevelOverflowError
        If ``level`` is above maxLevel
    """
    max_level = settings.max_level() if max_level is None else max_level
    if level > max_level:
        raise LevelOverflowError(f"Atom level {level} is above maxLevel {max_level}")
    if level == 0:
        return OMEGA
    return OrdinalTerm(((Atom(level), 1),))


def monomial(exponent: OrdinalTerm, coefficient: int = 1) -> OrdinalTerm:
    """Return w^``exponent`` * ``coefficient`` in canonical form."""
    if coefficient < 0:
        raise ValueError(f"Coefficients are non-negative, found {coefficient}")
    if coefficient == 0:
        return ZERO
    return OrdinalTerm(((_as_exponent(exponent), coefficient),))


def _coerce(value: Union[OrdinalTerm, int]) -> OrdinalTerm:
    if isinstance(value, OrdinalTerm):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return from_int(value)
    raise TypeError(f"Cannot use a {type(value).__name__} as an ordinal")


def as_ordinal(value: Union[OrdinalTerm, int, str], max_level: int = None) -> OrdinalTerm:
    """Return ``value`` as an OrdinalTerm, parsing strings and converting ints.

    Parameters
    ----------
    value : Union[OrdinalTerm, int, str]
        Ordinal, natural number or expression in the ordinal grammar
    max_level : int, optional
        Highest atom level accepted when parsing. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    OrdinalTerm
        The ordinal denoted by ``value``
    """
    if isinstance(value, str):
        return parse(value, max_level=max_level)
    return _coerce(value)


def _as_term(exponent: Exponent) -> OrdinalTerm:
    if isinstance(exponent, Atom):
        return OrdinalTerm(((exponent, 1),))
    return exponent


def _as_exponent(term: OrdinalTerm) -> Exponent:
    if len(term.monomials) == 1:
        exponent, coefficient = term.monomials[0]
        if isinstance(exponent, Atom) and coefficient == 1:
            return exponent
    return term


# =====================
# =    COMPARISON     =
# =====================


@functools.lru_cache(maxsize=_CACHE_SIZE)
def _cmp_exp(a: Exponent, b: Exponent) -> int:
    if isinstance(a, Atom):
        if isinstance(b, Atom):
            return (a.level > b.level) - (a.level < b.level)
        return -_cmp_term_atom(b, a.level)
    if isinstance(b, Atom):
        return _cmp_term_atom(a, b.level)
    return _cmp_terms(a, b)


def _cmp_term_atom(term: OrdinalTerm, level: int) -> int:
    # ``term`` is never equal to w_level unless it is the one-monomial atom term
    if not term.monomials:
        return -1
    lead, _ = term.monomials[0]
    if isinstance(lead, Atom):
        if lead.level != level:
            return 1 if lead.level > level else -1
        return 0 if term.monomials == ((lead, 1),) else 1
    # w_level is an epsilon number: w^e < w_level iff e < w_level
    return 1 if _cmp_term_atom(lead, level) >= 0 else -1


@functools.lru_cache(maxsize=_CACHE_SIZE)
def _cmp_terms(a: OrdinalTerm, b: OrdinalTerm) -> int:
    for (exp_a, coef_a), (exp_b, coef_b) in zip(a.monomials, b.monomials):
        result = _cmp_exp(exp_a, exp_b)
        if result:
            return result
        if coef_a != coef_b:
            return 1 if coef_a > coef_b else -1
    len_a, len_b = len(a.monomials), len(b.monomials)
    return (len_a > len_b) - (len_a < len_b)


def compare_exponents(a: Exponent, b: Exponent) -> int:
    """Three-way comparison (-1, 0, 1) of two exponents, terms or atoms."""
    return _cmp_exp(a, b)


def compare(a: OrdinalTerm, b: OrdinalTerm) -> Comparison:
    """Compare two ordinals.

    Parameters
    ----------
    a : OrdinalTerm
        First ordinal
    b : OrdinalTerm
        Second ordinal

    Returns
    -------
    Comparison
        LT, EQ or GT as ``a`` is smaller than, equal to or greater than ``b``.
        EQ is returned exactly when the canonical forms are identical.
    """
    return Comparison(_cmp_terms(a, b))


def ordinal_max(*terms: OrdinalTerm) -> OrdinalTerm:
    result = ZERO
    for term in terms:
        if _cmp_terms(term, result) > 0:
            result = term
    return result


# =====================
# =    ARITHMETIC     =
# =====================


@functools.lru_cache(maxsize=_CACHE_SIZE)
def add(a: OrdinalTerm, b: OrdinalTerm) -> OrdinalTerm:
    """Return the ordinal sum ``a`` + ``b``.

    Monomials of ``a`` smaller than the leading monomial of ``b`` are absorbed.

    Parameters
    ----------
    a : OrdinalTerm
        Left summand
    b : OrdinalTerm
        Right summand

    Returns
    -------
    OrdinalTerm
        The canonical form of ``a`` + ``b``
    """
    if not b.monomials:
        return a
    lead_exp, lead_coef = b.monomials[0]
    kept = []
    for exponent, coefficient in a.monomials:
        result = _cmp_exp(exponent, lead_exp)
        if result > 0:
            kept.append((exponent, coefficient))
        elif result == 0:
            kept.append((exponent, coefficient + lead_coef))
            return OrdinalTerm(tuple(kept) + b.monomials[1:])
        else:
            break
    return OrdinalTerm(tuple(kept) + b.monomials)


@functools.lru_cache(maxsize=_CACHE_SIZE)
def mul(a: OrdinalTerm, b: OrdinalTerm) -> OrdinalTerm:
    """Return the ordinal product ``a`` * ``b``.

    The product distributes on the left over the monomials of ``b``:
    a * w^e = w^(lead(a) + e) for e > 0, and a * n only multiplies the leading
    coefficient of ``a``.

    Parameters
    ----------
    a : OrdinalTerm
        Left factor
    b : OrdinalTerm
        Right factor

    Returns
    -------
    OrdinalTerm
        The canonical form of ``a`` * ``b``
    """
    if not a.monomials or not b.monomials:
        return ZERO
    lead_exp, lead_coef = a.monomials[0]
    result = ZERO
    for exponent, coefficient in b.monomials:
        if exponent == ZERO:
            part = OrdinalTerm(
                ((lead_exp, lead_coef * coefficient),) + a.monomials[1:]
            )
        else:
            part = monomial(add(_as_term(lead_exp), _as_term(exponent)), coefficient)
        result = add(result, part)
    return result


def succ(a: OrdinalTerm) -> OrdinalTerm:
    return add(a, ONE)


def sub_left(g: OrdinalTerm, d: OrdinalTerm) -> OrdinalTerm:
    """Return the unique ordinal b with ``g`` + b = ``d``, the type of [g, d).

    Parameters
    ----------
    g : OrdinalTerm
        Left endpoint, ``g`` <= ``d``
    d : OrdinalTerm
        Right endpoint

    Returns
    -------
    OrdinalTerm
        The order type of the interval [``g``, ``d``)

    Raises
    ------
    PreconditionError
        If ``g`` > ``d``
    """
    if _cmp_terms(g, d) > 0:
        raise PreconditionError(f"sub_left needs g <= d, found g = {g} > d = {d}")
    d_monomials = d.monomials
    for index, (g_exp, g_coef) in enumerate(g.monomials):
        d_exp, d_coef = d_monomials[index]
        result = _cmp_exp(g_exp, d_exp)
        if result < 0:
            return OrdinalTerm(d_monomials[index:])
        if g_coef < d_coef:
            return OrdinalTerm(((d_exp, d_coef - g_coef),) + d_monomials[index + 1 :])
    return OrdinalTerm(d_monomials[len(g.monomials) :])


def _power(base: OrdinalTerm, exponent: OrdinalTerm, position: int) -> OrdinalTerm:
    if exponent.is_finite:
        result = ONE
        for _ in range(exponent.to_int()):
            result = mul(result, base)
        return result
    if len(base.monomials) == 1 and base.monomials[0][1] == 1:
        base_exp = base.monomials[0][0]
        if base_exp != ZERO:
            return monomial(mul(_as_term(base_exp), exponent))
    raise OrdinalSyntaxError(
        f"Unsupported exponentiation {base}^{exponent}: only finite exponents or "
        "powers of w are supported",
        position,
    )


# =====================
# =  CARDINAL VIEWS   =
# =====================


@functools.lru_cache(maxsize=_CACHE_SIZE)
def max_atom_level(a: Exponent) -> int:
    """Return the highest atom level occurring in ``a`` (0 when there is none)."""
    if isinstance(a, Atom):
        return a.level
    return max(
        (max_atom_level(exponent) for exponent, _ in a.monomials), default=0
    )


def check_levels(a: OrdinalTerm, max_level: int = None) -> OrdinalTerm:
    """Return ``a`` after checking that its atoms are within maxLevel.

    Raises
    ------
    LevelOverflowError
        If an atom of ``a`` is above maxLevel
    """
    max_level = settings.max_level() if max_level is None else max_level
    level = max_atom_level(a)
    if level > max_level:
        raise LevelOverflowError(
            f"{a} uses atom level {level}, above maxLevel {max_level}"
        )
    return a


def cardinality(a: OrdinalTerm) -> CardinalLevel:
    """Return the cardinality of ``a``.

    Parameters
    ----------
    a : OrdinalTerm
        Ordinal

    Returns
    -------
    CardinalLevel
        finite(n) when ``a`` = n < w, aleph_k otherwise where k is the highest atom
        level occurring in ``a`` (0 when there is no atom)
    """
    if a.is_finite:
        return CardinalLevel.finite(a.to_int())
    return CardinalLevel(level=max_atom_level(a), is_finite=False)


def cofinality(a: OrdinalTerm) -> OrdinalTerm:
    """Return the cofinality of ``a`` as an ordinal.

    0 for 0, 1 for successors; for limits the cofinality of the last monomial
    w^e: w when e is a successor, w_k when e is the atom w_k (successor cardinals
    are regular) and cf(e) when e is a limit.

    Parameters
    ----------
    a : OrdinalTerm
        Ordinal

    Returns
    -------
    OrdinalTerm
        0, 1, w or some w_k
    """
    if not a.monomials:
        return ZERO
    exponent, _ = a.monomials[-1]
    if exponent == ZERO:
        return ONE
    if isinstance(exponent, Atom):
        return omega_level(exponent.level, max_level=exponent.level)
    if exponent.is_successor:
        return OMEGA
    return cofinality(exponent)


def div_by_cardinal(a: OrdinalTerm, k: CardinalLevel) -> Tuple[OrdinalTerm, OrdinalTerm]:
    """Split ``a`` as w_k * quotient + remainder with remainder < w_k.

    Parameters
    ----------
    a : OrdinalTerm
        Ordinal to divide
    k : CardinalLevel
        Infinite cardinal aleph_k

    Returns
    -------
    OrdinalTerm
        The quotient, the largest e with w_k * e <= ``a``
    OrdinalTerm
        The remainder, < w_k

    Raises
    ------
    PreconditionError
        If ``k`` is a finite cardinal
    """
    if k.is_finite:
        raise PreconditionError(f"div_by_cardinal needs an infinite cardinal, found {k}")
    cardinal_exp: Exponent = ONE if k.level == 0 else Atom(k.level)
    cardinal_exp_term = _as_term(cardinal_exp)
    quotient = ZERO
    split = len(a.monomials)
    for index, (exponent, coefficient) in enumerate(a.monomials):
        if _cmp_exp(exponent, cardinal_exp) < 0:
            split = index
            break
        quotient = add(
            quotient, monomial(sub_left(cardinal_exp_term, _as_term(exponent)), coefficient)
        )
    return quotient, OrdinalTerm(a.monomials[split:])


def largest_multiple_below(a: OrdinalTerm, k: CardinalLevel) -> OrdinalTerm:
    """Return the largest w_k-multiple w_k * e that is <= ``a``."""
    quotient, _ = div_by_cardinal(a, k)
    return mul(k.initial_ordinal(), quotient)


def _predecessor(a: OrdinalTerm) -> OrdinalTerm:
    exponent, coefficient = a.monomials[-1]
    if coefficient == 1:
        return OrdinalTerm(a.monomials[:-1])
    return OrdinalTerm(a.monomials[:-1] + ((exponent, coefficient - 1),))


def predecessor(a: OrdinalTerm) -> OrdinalTerm:
    """Return the ordinal b with b + 1 = ``a``.

    Raises
    ------
    PreconditionError
        If ``a`` is 0 or a limit ordinal
    """
    if not a.is_successor:
        raise PreconditionError(f"{a} is not a successor ordinal")
    return _predecessor(a)


def fundamental_term(a: OrdinalTerm, j: int) -> OrdinalTerm:
    """Return the ``j``-th term of the standard fundamental sequence of ``a``.

    For a = b + w^e the sequence is b + w^(e-1) * j when e is a successor and
    b + w^(e[j]) when e is a limit.

    Parameters
    ----------
    a : OrdinalTerm
        Limit ordinal of countable cofinality
    j : int
        Index of the term

    Returns
    -------
    OrdinalTerm
        The ``j``-th term, strictly below ``a``

    Raises
    ------
    PreconditionError
        If ``a`` is not a limit of cofinality w
    """
    if not a.is_limit:
        raise PreconditionError(f"{a} is not a limit ordinal")
    exponent, coefficient = a.monomials[-1]
    if isinstance(exponent, Atom):
        raise PreconditionError(
            f"{a} has uncountable cofinality and no fundamental sequence of length w"
        )
    base = OrdinalTerm(a.monomials[:-1])
    if coefficient > 1:
        base = OrdinalTerm(base.monomials + ((exponent, coefficient - 1),))
    if exponent.is_successor:
        return add(base, monomial(_predecessor(exponent), j))
    return add(base, monomial(fundamental_term(exponent, j)))


# =====================
# =  RANDOM TERMS     =
# =====================


def random_ordinal_below(
    bound: OrdinalTerm, rng, depth: int = settings.RANDOM_ORDINAL_DEPTH
) -> OrdinalTerm:
    """Draw an ordinal strictly below ``bound``.

    The draw keeps a random prefix of the normal form of ``bound``, lowers the
    next coefficient and appends a random tail. It is not uniform in any sense;
    it is meant to reach every CNF shape below ``bound`` with positive
    probability, up to the nesting ``depth``.

    Parameters
    ----------
    bound : OrdinalTerm
        Strict upper bound, > 0
    rng : numpy.random.Generator
        Source of randomness
    depth : int, optional
        Nesting depth of the random exponents. Default is
        ``settings.RANDOM_ORDINAL_DEPTH``.

    Returns
    -------
    OrdinalTerm
        Random ordinal < ``bound``

    Raises
    ------
    PreconditionError
        If ``bound`` is 0
    """
    if not bound.monomials:
        raise PreconditionError("There is no ordinal below 0")
    position = int(rng.integers(len(bound.monomials)))
    exponent, coefficient = bound.monomials[position]
    head = add(
        OrdinalTerm(bound.monomials[:position]),
        monomial(_as_term(exponent), int(rng.integers(coefficient))),
    )
    return add(head, _random_below_power(exponent, rng, depth))


def _random_below_power(exponent: Exponent, rng, depth: int) -> OrdinalTerm:
    # random ordinal < w^exponent
    if exponent == ZERO:
        return ZERO
    if isinstance(exponent, OrdinalTerm) and exponent.is_finite:
        top = exponent.to_int()
        powers = sorted(
            set(int(p) for p in rng.integers(0, top, size=int(rng.integers(1, 3)))),
            reverse=True,
        )
        result = ZERO
        for power in powers:
            result = add(result, monomial(from_int(power), int(rng.integers(1, 5))))
        return result
    if depth <= 0:
        return from_int(int(rng.integers(0, 10)))
    if isinstance(exponent, Atom):
        level = int(rng.integers(0, exponent.level))
        if level == 0:
            lower_exp = from_int(int(rng.integers(1, 4)))
            if rng.integers(0, 3) == 0:
                lower_exp = OMEGA
        else:
            lower_exp = add(
                omega_level(level, max_level=level), from_int(int(rng.integers(0, 3)))
            )
    else:
        lower_exp = random_ordinal_below(exponent, rng, depth - 1)
    result = monomial(lower_exp, int(rng.integers(1, 5)))
    if rng.integers(0, 2):
        result = add(result, _random_below_power(_as_exponent(lower_exp), rng, depth - 1))
    return result


# =====================
# =  PARSE AND PRINT  =
# =====================


def to_string(a: OrdinalTerm) -> str:
    """Return the canonical ASCII form of ``a``, e.g. "w1*2 + w^2 + 3"."""
    if not a.monomials:
        return "0"
    parts = []
    for exponent, coefficient in a.monomials:
        if exponent == ZERO:
            parts.append(str(coefficient))
            continue
        if isinstance(exponent, Atom):
            base = f"w{exponent.level}"
        elif exponent == ONE:
            base = "w"
        elif exponent.is_finite or exponent == OMEGA:
            base = f"w^{to_string(exponent)}"
        else:
            base = f"w^({to_string(exponent)})"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return " + ".join(parts)


_Token = Tuple[str, str, int]


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    position = 0
    while position < len(text):
        char = text[position]
        if char.isspace():
            position += 1
        elif char.isdigit():
            start = position
            while position < len(text) and text[position].isdigit():
                position += 1
            tokens.append(("NUM", text[start:position], start))
        elif char == "w":
            start = position
            position += 1
            while position < len(text) and text[position].isdigit():
                position += 1
            tokens.append(("OMEGA", text[start + 1 : position], start))
        elif char in "+*^()":
            tokens.append((char, char, position))
            position += 1
        else:
            raise OrdinalSyntaxError(f"Unexpected character {char!r}", position)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent parser: expr := term (+ term)*, term := factor (* factor)*,
    factor := primary (^ factor)?, primary := NUM | w | wK | ( expr )."""

    def __init__(self, text: str, max_level: int):
        self._tokens = _tokenize(text)
        self._index = 0
        self._max_level = max_level

    def _peek(self) -> _Token:
        return self._tokens[self._index]

    def _next(self) -> _Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def parse(self) -> OrdinalTerm:
        result = self._expr()
        kind, value, position = self._peek()
        if kind != "END":
            raise OrdinalSyntaxError(f"Unexpected token {value!r}", position)
        return result

    def _expr(self) -> OrdinalTerm:
        result = self._term()
        while self._peek()[0] == "+":
            self._next()
            result = add(result, self._term())
        return result

    def _term(self) -> OrdinalTerm:
        result = self._factor()
        while self._peek()[0] == "*":
            self._next()
            result = mul(result, self._factor())
        return result

    def _factor(self) -> OrdinalTerm:
        base = self._primary()
        if self._peek()[0] == "^":
            _, _, position = self._next()
            return _power(base, self._factor(), position)
        return base

    def _primary(self) -> OrdinalTerm:
        kind, value, position = self._next()
        if kind == "NUM":
            return from_int(int(value))
        if kind == "OMEGA":
            level = int(value) if value else 0
            if level > self._max_level:
                raise LevelOverflowError(
                    f"Atom w{level} at position {position} is above maxLevel "
                    f"{self._max_level}"
                )
            return omega_level(level, max_level=self._max_level)
        if kind == "(":
            result = self._expr()
            closing, closing_value, closing_position = self._next()
            if closing != ")":
                raise OrdinalSyntaxError(
                    f"Expected ')' but found {closing_value!r}", closing_position
                )
            return result
        if kind == "END":
            raise OrdinalSyntaxError("Unexpected end of expression", position)
        raise OrdinalSyntaxError(f"Unexpected token {value!r}", position)


def parse(text: str, max_level: int = None) -> OrdinalTerm:
    """Parse an ordinal expression.

    The grammar accepts naturals, ``w`` (omega), ``w1``, ``w2``, ... (the initial
    ordinals w_k), the operators ``+``, ``*``, ``^`` with the usual precedence and
    parentheses. ``+`` and ``*`` associate to the left, ``^`` to the right.

    Parameters
    ----------
    text : str
        Expression, e.g. "w1*2 + w^2 + 3"
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    OrdinalTerm
        Canonical form of the expression

    Raises
    ------
    OrdinalSyntaxError
        If ``text`` is not in the grammar, with the position of the error
    LevelOverflowError
        If an atom is above maxLevel
    """
    max_level = settings.max_level() if max_level is None else max_level
    return _Parser(text, max_level).parse()


def iter_monomials(a: OrdinalTerm) -> Iterator[Tuple[OrdinalTerm, int]]:
    """Yield the (exponent, coefficient) pairs of ``a`` with exponents as terms."""
    for exponent, coefficient in a.monomials:
        yield _as_term(exponent), coefficient


def exponent_term(exponent: Exponent) -> OrdinalTerm:
    """Return an exponent (possibly an Atom) as an OrdinalTerm."""
    return _as_term(exponent)


def leading_exponent(a: OrdinalTerm) -> Optional[OrdinalTerm]:
    if not a.monomials:
        return None
    return _as_term(a.monomials[0][0])
