# encoding: utf-8

"""The canonical kappa-function phi_kappa and the witnesses of its condition (2).

phi is evaluated block by block. For xi in the block [delta, delta + kappa) of the
kappa-multiple delta, with prefix sums s_0 < ... < s_(n-1) = delta of the normal form
of delta, and (q, r) = unpair(xi \\ delta):

    phi(xi) = f_(s_i)(delta + q),    i = r if r < n else n - 1

The first block [0, kappa) has the single component f_0.
"""

import functools
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from typing_extensions import Literal

from . import ordinal, settings
from .exceptions import (
    PatternOutOfRangeError,
    PibaseError,
    PreconditionError,
    WitnessConstructionError,
)
from .ordinal import CardinalLevel, OrdinalTerm
from .pairing import (
    FDeltaDomain,
    FinitePattern,
    f_delta_domain,
    f_delta_on,
    f_delta_witness,
    pair,
    random_pattern,
    unpair,
)
from .sigma_forms import NormalForm, gamma_of_form, sigma_eval, sigma_inverse, sigma_nf

logger = logging.getLogger(__name__)

ReportStatus = Literal["pass", "fail", "vacuous"]


class PhiSession:
    """
    Evaluation context of phi_kappa with memoized normal forms and f_delta domains.

    The memo only grows; reads are lock-free and writes happen under a lock, so a
    session can be shared between threads. Every public method behaves as a pure
    function of its arguments.

    Parameters
    ----------
    kappa : CardinalLevel
        The infinite cardinal kappa
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``
    """

    def __init__(self, kappa: CardinalLevel, max_level: int = None):
        self.max_level = settings.max_level() if max_level is None else max_level
        if kappa.is_finite:
            raise PreconditionError(f"phi_kappa needs an infinite kappa, found {kappa}")
        self.kappa = CardinalLevel.aleph(kappa.level, max_level=self.max_level)
        self._kappa_ordinal = self.kappa.initial_ordinal()
        self._forms: Dict[OrdinalTerm, NormalForm] = {}
        self._domains: Dict[OrdinalTerm, FDeltaDomain] = {}
        self._lock = threading.Lock()

    def normal_form(self, d: OrdinalTerm) -> NormalForm:
        form = self._forms.get(d)
        if form is None:
            form = sigma_nf(self.kappa, d, self.max_level)
            with self._lock:
                self._forms.setdefault(d, form)
        return form

    def domain(self, d: OrdinalTerm) -> FDeltaDomain:
        domain = self._domains.get(d)
        if domain is None:
            domain = f_delta_domain(self.kappa, d, self.max_level)
            with self._lock:
                self._domains.setdefault(d, domain)
        return domain

    def components(self, delta: OrdinalTerm) -> Tuple[OrdinalTerm, ...]:
        """Return the f-levels s_0 < ... < s_(n-1) = ``delta`` of the block at ``delta``.

        Parameters
        ----------
        delta : OrdinalTerm
            A kappa-multiple

        Returns
        -------
        Tuple[OrdinalTerm, ...]
            Prefix sums of the normal form of ``delta``, (0,) for the first block
        """
        if delta.is_zero:
            return (ordinal.ZERO,)
        return self.normal_form(delta).prefix_sums

    def block_base(self, xi: OrdinalTerm) -> OrdinalTerm:
        """Return the largest kappa-multiple <= ``xi``."""
        return ordinal.largest_multiple_below(xi, self.kappa)

    def is_kappa_multiple(self, d: OrdinalTerm) -> bool:
        _, remainder = ordinal.div_by_cardinal(d, self.kappa)
        return remainder.is_zero

    def phi_eval(self, xi: OrdinalTerm) -> FinitePattern:
        """Return phi_kappa(``xi``), a finite subset of ``xi`` x kappa.

        Parameters
        ----------
        xi : OrdinalTerm
            Any ordinal of the notation system

        Returns
        -------
        FinitePattern
            The value phi(``xi``)
        """
        ordinal.check_levels(xi, self.max_level)
        delta = self.block_base(xi)
        components = self.components(delta)
        inner, index = unpair(ordinal.sub_left(delta, xi))
        if index.is_finite and index.to_int() < len(components):
            component = index.to_int()
        else:
            component = len(components) - 1
        pattern = f_delta_on(
            self.domain(components[component]),
            self.kappa,
            ordinal.add(delta, inner),
        )
        if not pattern.within(ordinal.ZERO, xi, self.kappa):
            raise RuntimeError(f"phi({xi}) = {pattern} is not a subset of {xi} x kappa")
        return pattern

    def h_combination_witness(
        self, d: OrdinalTerm, i: int, xi0: OrdinalTerm
    ) -> OrdinalTerm:
        """Return eta in [``d``, ``d`` + kappa), eta >= ``xi0``, with phi(eta) = h_i(``xi0``).

        h_i is the restriction of f_(s_i) to the block [``d``, ``d`` + kappa), and
        eta = ``d`` + pair(``xi0`` \\ ``d``, ``i``).

        Parameters
        ----------
        d : OrdinalTerm
            Block base, a kappa-multiple
        i : int
            Component index, below the number of components of the block
        xi0 : OrdinalTerm
            Argument of h_i in [``d``, ``d`` + kappa)

        Returns
        -------
        OrdinalTerm
            The ordinal eta

        Raises
        ------
        PreconditionError
            If ``d`` is not a kappa-multiple, ``i`` is not a component index or
            ``xi0`` is outside the block
        """
        if not self.is_kappa_multiple(d):
            raise PreconditionError(f"{d} is not a multiple of {self.kappa}")
        components = self.components(d)
        if not 0 <= i < len(components):
            raise PreconditionError(
                f"Component index {i} is out of range, the block at {d} has "
                f"{len(components)} components"
            )
        if xi0 < d or xi0 >= ordinal.add(d, self._kappa_ordinal):
            raise PreconditionError(f"{xi0} is outside the block [{d}, {d} + kappa)")
        return ordinal.add(d, pair(ordinal.sub_left(d, xi0), ordinal.from_int(i)))

    def phi_witness(self, d: OrdinalTerm, pattern: FinitePattern) -> OrdinalTerm:
        """Return xi in [gamma(``d``), ``d``) with phi(xi) = ``pattern``.

        The construction follows the last argument a of the normal form of ``d``.
        When a = b + 1, a witness of the pattern for f at gamma(d) + sigma(b) (or at
        gamma(d) when b = 0) is found below ``d`` and lifted through the
        H-combination of its block. When a is a limit, the least b < a with the
        pattern below gamma(d) + sigma(b) is taken and the construction restarts
        there; since gamma does not change, the pattern stays admissible.

        Parameters
        ----------
        d : OrdinalTerm
            Ordinal whose normal form has remainder 0 and n >= 1
        pattern : FinitePattern
            Pattern over [gamma(``d``), ``d``) x kappa

        Returns
        -------
        OrdinalTerm
            A witness xi in [gamma(``d``), ``d``)

        Raises
        ------
        PreconditionError
            If the normal form of ``d`` has a remainder or no sigma term
        PatternOutOfRangeError
            If ``pattern`` is not over [gamma(``d``), ``d``) x kappa
        WitnessConstructionError
            If no witness could be produced
        """
        ordinal.check_levels(d, self.max_level)
        form = self.normal_form(d)
        if form.n == 0 or not form.delta.is_zero:
            raise PreconditionError(
                f"phi_witness needs a normal form with remainder 0 and n >= 1, "
                f"found {form}"
            )
        base = gamma_of_form(form)
        if not pattern.within(base, d, self.kappa):
            raise PatternOutOfRangeError(
                f"Pattern {pattern} is not over [{base}, {d}) x {self.kappa}"
            )
        try:
            xi = self._construct_witness(d, pattern)
        except WitnessConstructionError:
            if self.kappa.level != 0:
                raise
            logger.warning(
                "Witness construction failed for %s below %s, scanning instead",
                pattern,
                d,
            )
            xi = self.search_witness(d, pattern)
        if not (base <= xi and xi < d) or self.phi_eval(xi) != pattern:
            raise RuntimeError(f"Witness {xi} does not realize {pattern} below {d}")
        return xi

    def _construct_witness(self, d: OrdinalTerm, pattern: FinitePattern) -> OrdinalTerm:
        form = self.normal_form(d)
        base = gamma_of_form(form)
        last = form.alphas[-1]
        while last.is_limit:
            offset = ordinal.sub_left(base, pattern.max_first) if pattern.pairs else None
            if offset is None or offset < self._kappa_ordinal:
                step = ordinal.ONE
            else:
                step = ordinal.succ(sigma_inverse(self.kappa, offset))
            logger.debug("Limit %s below %s: continuing at sigma(%s)", last, d, step)
            last = step
        previous = ordinal.predecessor(last)
        if previous.is_zero:
            level = base
        else:
            level = ordinal.add(base, sigma_eval(self.kappa, previous, self.max_level))
        xi0 = f_delta_witness(
            self.kappa, level, pattern, bound=d, max_level=self.max_level
        )
        block = self.block_base(xi0)
        components = self.components(block)
        if level not in components:
            raise WitnessConstructionError(
                f"{level} is not a component of the block at {block}"
            )
        return self.h_combination_witness(block, components.index(level), xi0)

    def search_witness(
        self, d: OrdinalTerm, pattern: FinitePattern, cap: int = settings.WITNESS_SEARCH_CAP
    ) -> OrdinalTerm:
        """Scan gamma(``d``) + j, j < ``cap``, for a witness of ``pattern`` below ``d``.

        Raises
        ------
        WitnessConstructionError
            If no candidate within the cap is a witness
        """
        base = gamma_of_form(self.normal_form(d))
        for j in range(cap):
            candidate = ordinal.add(base, ordinal.from_int(j))
            if candidate >= d:
                break
            if self.phi_eval(candidate) == pattern:
                return candidate
        raise WitnessConstructionError(
            f"No witness of {pattern} among the first {cap} ordinals above {base}"
        )


@functools.lru_cache(maxsize=None)
def get_session(kappa: CardinalLevel, max_level: int = None) -> PhiSession:
    """Return the shared session for (``kappa``, ``max_level``)."""
    return PhiSession(kappa, max_level=max_level)


def _session(kappa: CardinalLevel, max_level: int = None) -> PhiSession:
    return get_session(kappa, settings.max_level() if max_level is None else max_level)


def phi_eval(k: CardinalLevel, xi: OrdinalTerm, max_level: int = None) -> FinitePattern:
    """Return phi_kappa(``xi``) (see ``PhiSession.phi_eval``)."""
    return _session(k, max_level).phi_eval(xi)


def h_combination_witness(
    k: CardinalLevel, d: OrdinalTerm, i: int, xi0: OrdinalTerm, max_level: int = None
) -> OrdinalTerm:
    """Return the H-combination witness (see ``PhiSession.h_combination_witness``)."""
    return _session(k, max_level).h_combination_witness(d, i, xi0)


def phi_witness(
    k: CardinalLevel, d: OrdinalTerm, pattern: FinitePattern, max_level: int = None
) -> OrdinalTerm:
    """Return a witness of ``pattern`` below ``d`` (see ``PhiSession.phi_witness``)."""
    return _session(k, max_level).phi_witness(d, pattern)


@dataclass
class SampleFailure:
    pattern: str
    message: str


@dataclass
class Condition2Report:
    """
    Outcome of the condition (2) sampler at one kappa-multiple.

    Parameters
    ----------
    kappa : CardinalLevel
        The infinite cardinal kappa
    delta : OrdinalTerm
        The kappa-multiple checked
    gamma : OrdinalTerm
        gamma(delta), left end of the pattern rectangle
    samples : int
        Number of patterns requested
    seed : int
        Seed of the pattern generator
    checked : int
        Number of patterns checked (0 when the check is vacuous)
    failures : List[SampleFailure]
        Patterns without a verified witness
    """

    kappa: CardinalLevel
    delta: OrdinalTerm
    gamma: OrdinalTerm
    samples: int
    seed: int
    checked: int = 0
    failures: List[SampleFailure] = field(default_factory=list)

    @property
    def status(self) -> ReportStatus:
        if self.failures:
            return "fail"
        if self.checked == 0:
            return "vacuous"
        return "pass"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa.level,
            "delta": str(self.delta),
            "gamma": str(self.gamma),
            "samples": self.samples,
            "seed": self.seed,
            "checked": self.checked,
            "status": self.status,
            "failures": [
                {"pattern": failure.pattern, "message": failure.message}
                for failure in self.failures
            ],
        }


def phi_check_condition2(
    k: CardinalLevel,
    d: OrdinalTerm,
    samples: int = settings.DEFAULT_SAMPLES,
    seed: int = settings.DEFAULT_SEED,
    max_level: int = None,
) -> Condition2Report:
    """Check condition (2) of phi_kappa at ``d`` on random patterns.

    Every sampled pattern A over [gamma(``d``), ``d``) x kappa must have a witness
    xi in [gamma(``d``), ``d``) with phi(xi) = A. ``d`` = 0 passes vacuously.

    Parameters
    ----------
    k : CardinalLevel
        The infinite cardinal kappa
    d : OrdinalTerm
        A kappa-multiple
    samples : int, optional
        Number of random patterns. Default is ``settings.DEFAULT_SAMPLES``.
    seed : int, optional
        Seed of ``numpy.random.default_rng``. Default is ``settings.DEFAULT_SEED``.
    max_level : int, optional
        Highest accepted atom level. Default is None, meaning
        ``settings.max_level()``

    Returns
    -------
    Condition2Report
        Report whose ``failures`` list is empty when the check passes

    Raises
    ------
    PreconditionError
        If ``d`` is not a kappa-multiple
    """
    session = _session(k, max_level)
    if not session.is_kappa_multiple(d):
        raise PreconditionError(f"{d} is not a multiple of {session.kappa}")
    if d.is_zero:
        return Condition2Report(
            kappa=session.kappa, delta=d, gamma=d, samples=samples, seed=seed
        )
    base = gamma_of_form(session.normal_form(d))
    report = Condition2Report(
        kappa=session.kappa, delta=d, gamma=base, samples=samples, seed=seed
    )
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        pattern = random_pattern(rng, base, d, session.kappa)
        report.checked += 1
        try:
            xi = session.phi_witness(d, pattern)
        except (PibaseError, RuntimeError) as err:
            report.failures.append(SampleFailure(str(pattern), str(err)))
            continue
        logger.debug("phi(%s) = %s", xi, pattern)
    logger.info(
        "Condition (2) at %s: %d patterns, %d failures",
        d,
        report.checked,
        len(report.failures),
    )
    return report
