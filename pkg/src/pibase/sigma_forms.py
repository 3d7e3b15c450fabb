# encoding: utf-8

"""The sigma_kappa function, its normal forms and the pressing-down gamma_kappa.

sigma_kappa is evaluated in closed form:

    sigma(0) = 0
    sigma(a) = kappa * a              for 1 <= a < kappa^+
    sigma(a) = mu * (1 + (a \\ mu))    for mu <= a < mu^+, mu > kappa a cardinal

which agrees with sigma(a + 1) = sigma(a) + |sigma(a)| and continuity at limits.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from . import ordinal
from .exceptions import PreconditionError
from .ordinal import CardinalLevel, OrdinalTerm
from .util import lazy_property

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalForm:
    """
    sigma_kappa-normal form sigma(a_0) + ... + sigma(a_(n-1)) + delta of an ordinal.

    Parameters
    ----------
    kappa : CardinalLevel
        Infinite cardinal the form refers to
    alphas : Tuple[OrdinalTerm, ...]
        Arguments a_0, ..., a_(n-1) of the sigma terms, all > 0. The cardinalities
        |sigma(a_i)| are strictly decreasing.
    delta : OrdinalTerm
        Final remainder, < kappa
    """

    kappa: CardinalLevel
    alphas: Tuple[OrdinalTerm, ...]
    delta: OrdinalTerm

    @property
    def n(self) -> int:
        return len(self.alphas)

    @lazy_property
    def terms(self) -> Tuple[OrdinalTerm, ...]:
        """Values sigma(a_i) of the terms of the form."""
        return tuple(sigma_eval(self.kappa, alpha) for alpha in self.alphas)

    @lazy_property
    def prefix_sums(self) -> Tuple[OrdinalTerm, ...]:
        """Partial sums s_i = sigma(a_0) + ... + sigma(a_i), strictly increasing."""
        sums = []
        total = ordinal.ZERO
        for term in self.terms:
            total = ordinal.add(total, term)
            sums.append(total)
        return tuple(sums)

    def recompose(self) -> OrdinalTerm:
        """Return sigma(a_0) + ... + sigma(a_(n-1)) + delta."""
        total = self.prefix_sums[-1] if self.alphas else ordinal.ZERO
        return ordinal.add(total, self.delta)

    def __str__(self) -> str:
        parts = [f"sigma({alpha})" for alpha in self.alphas]
        if not self.delta.is_zero or not parts:
            parts.append(str(self.delta))
        return " + ".join(parts)


def _check_kappa(k: CardinalLevel, max_level: int = None) -> CardinalLevel:
    if k.is_finite:
        raise PreconditionError(f"sigma_kappa needs an infinite kappa, found {k}")
    return CardinalLevel.aleph(k.level, max_level=max_level)


def sigma_eval(k: CardinalLevel, a: OrdinalTerm, max_level: int = None) -> OrdinalTerm:
    """Return sigma_kappa(``a``).

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    a : OrdinalTerm
        Argument of sigma
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    OrdinalTerm
        The value sigma_kappa(``a``)

    Raises
    ------
    LevelOverflowError
        If ``k`` or an atom of ``a`` is above maxLevel
    PreconditionError
        If ``k`` is finite
    """
    _check_kappa(k, max_level)
    ordinal.check_levels(a, max_level)
    if a.is_zero:
        return ordinal.ZERO
    size = ordinal.cardinality(a)
    if size.is_finite or size.level <= k.level:
        return ordinal.mul(k.initial_ordinal(), a)
    mu = size.initial_ordinal()
    beta = ordinal.sub_left(mu, a)
    return ordinal.mul(mu, ordinal.add(ordinal.ONE, beta))


def sigma_cardinality(k: CardinalLevel, a: OrdinalTerm) -> CardinalLevel:
    """Return |sigma_kappa(``a``)|, which is kappa or the cardinality of ``a``."""
    if a.is_zero:
        return CardinalLevel.finite(0)
    size = ordinal.cardinality(a)
    if size.is_finite or size.level <= k.level:
        return CardinalLevel(level=k.level)
    return size


def sigma_inverse(k: CardinalLevel, r: OrdinalTerm) -> OrdinalTerm:
    """Return the largest a with sigma_kappa(a) <= ``r``.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    r : OrdinalTerm
        Ordinal >= kappa

    Returns
    -------
    OrdinalTerm
        The largest a such that sigma(a) <= ``r`` < sigma(a + 1), a > 0

    Raises
    ------
    PreconditionError
        If ``r`` < kappa
    """
    kappa = k.initial_ordinal()
    if r < kappa:
        raise PreconditionError(f"sigma_inverse needs r >= {kappa}, found {r}")
    size = ordinal.cardinality(r)
    if size.level == k.level:
        quotient, _ = ordinal.div_by_cardinal(r, k)
        return quotient
    quotient, _ = ordinal.div_by_cardinal(r, size)
    beta = ordinal.sub_left(ordinal.ONE, quotient)
    return ordinal.add(size.initial_ordinal(), beta)


def sigma_nf(k: CardinalLevel, d: OrdinalTerm, max_level: int = None) -> NormalForm:
    """Return the sigma_kappa-normal form of ``d``.

    The form is found greedily: the largest a_0 with sigma(a_0) <= d is peeled
    off, then the procedure continues on the type of the residue d \\ sigma(a_0),
    which is below |sigma(a_0)|.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    d : OrdinalTerm
        Ordinal to decompose
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    NormalForm
        The unique normal form of ``d``

    Raises
    ------
    LevelOverflowError
        If ``k`` or an atom of ``d`` is above maxLevel
    """
    _check_kappa(k, max_level)
    ordinal.check_levels(d, max_level)
    kappa = k.initial_ordinal()
    alphas = []
    residue = d
    while residue >= kappa:
        alpha = sigma_inverse(k, residue)
        alphas.append(alpha)
        residue = ordinal.sub_left(sigma_eval(k, alpha, max_level), residue)
    form = NormalForm(kappa=k, alphas=tuple(alphas), delta=residue)
    logger.debug("Normal form of %s over %s: %s", d, k, form)
    return form


def gamma(k: CardinalLevel, d: OrdinalTerm, max_level: int = None) -> OrdinalTerm:
    """Return gamma_kappa(``d``), the normal form of ``d`` without its last sigma term.

    gamma is 0 when the form has no sigma term, so gamma(d) < d for every d > 0.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    d : OrdinalTerm
        Ordinal
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    OrdinalTerm
        sigma(a_0) + ... + sigma(a_(n-2)), or 0 when n <= 1
    """
    form = sigma_nf(k, d, max_level)
    return gamma_of_form(form)


def gamma_of_form(form: NormalForm) -> OrdinalTerm:
    if form.n < 2:
        return ordinal.ZERO
    return form.prefix_sums[-2]


def delta_prime(k: CardinalLevel, d: OrdinalTerm, max_level: int = None) -> OrdinalTerm:
    """Return the right end of the domain of f_delta for ``d``.

    The value is gamma(d) + sigma(a_(n-1) + 1); it is checked against the second
    formula d + |sigma(a_(n-1))|.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    d : OrdinalTerm
        Ordinal whose normal form has delta = 0 and n >= 1
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    OrdinalTerm
        delta', > ``d``

    Raises
    ------
    PreconditionError
        If the normal form of ``d`` has a non-zero remainder or no sigma term
    """
    form = sigma_nf(k, d, max_level)
    return delta_prime_of_form(form, d)


def delta_prime_of_form(form: NormalForm, d: OrdinalTerm) -> OrdinalTerm:
    if form.n == 0 or not form.delta.is_zero:
        raise PreconditionError(
            f"delta_prime needs a normal form with remainder 0 and n >= 1, found {form}"
        )
    last = form.alphas[-1]
    by_sigma = ordinal.add(
        gamma_of_form(form), sigma_eval(form.kappa, ordinal.succ(last))
    )
    by_size = ordinal.add(
        d, sigma_cardinality(form.kappa, last).initial_ordinal()
    )
    if by_sigma != by_size:
        raise RuntimeError(
            f"delta_prime formulas disagree on {d}: {by_sigma} != {by_size}"
        )
    return by_sigma


def has_successor_cofinality(k: CardinalLevel, d: OrdinalTerm) -> bool:
    """Return True if cf(``d``) = kappa^+, the domain of the kappa-strong functions."""
    target = CardinalLevel(level=k.level + 1).initial_ordinal()
    return ordinal.cofinality(d) == target


def gamma_successor(k: CardinalLevel, d: OrdinalTerm, max_level: int = None) -> OrdinalTerm:
    """Return gamma_(kappa^+)(``d``).

    Raises
    ------
    LevelOverflowError
        If kappa^+ is above maxLevel
    """
    return gamma(k.successor(max_level), d, max_level)
