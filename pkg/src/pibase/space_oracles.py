# encoding: utf-8

"""Spaces the pi-base builder can query: finite spaces, the rational line and ordinal intervals.

An oracle works on opaque "regions" (finitely described subsets of its space)
and answers the closure, intersection and membership questions the builder
and the condition checker need.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, List, Sequence, Tuple

from . import ordinal, settings
from .exceptions import OracleError, PreconditionError, RegularityError, SpaceDocumentError
from .finite_space import (
    FiniteSpace,
    discrete_space,
    indiscrete_space,
    load_space_file,
    sierpinski_space,
)
from .invariants import left_separated_order, pi_character
from .ordinal import OrdinalTerm
from .pairing import from_notation_number
from .util import bits_of

logger = logging.getLogger(__name__)

Region = Any
Point = Any


class SpaceOracle(ABC):
    """Protocol of the spaces handed to the pi-base builder.

    Regions are finite descriptions of subsets. Points, regions and the answers
    of an oracle are deterministic.
    """

    name: str
    # True when ``probes`` returns every neighbourhood of the point that matters
    # for local pi-bases, False when it returns a finite sample of them
    exact_probes: bool = False
    # Note attached to condition (a) when the probes are a sample
    probe_note: str = "neighbourhoods sampled per point"

    @property
    def is_regular(self) -> bool:
        return True

    @property
    def pi_character_analog(self) -> int:
        """Width of the local pi-bases used when the caller does not choose one."""
        return settings.DEFAULT_KAPPA_ANALOG

    def intersect_all(self, regions: Sequence[Region]) -> Region:
        """Return the intersection of a non-empty sequence of regions."""
        if not regions:
            raise PreconditionError("Cannot intersect an empty sequence of regions")
        result = regions[0]
        for region in regions[1:]:
            result = self.intersect(result, region)
        return result

    @abstractmethod
    def closure(self, region: Region) -> Region:
        raise NotImplementedError

    @abstractmethod
    def intersect(self, first: Region, second: Region) -> Region:
        raise NotImplementedError

    @abstractmethod
    def is_empty(self, region: Region) -> bool:
        raise NotImplementedError

    @abstractmethod
    def contains(self, region: Region, point: Point) -> bool:
        raise NotImplementedError

    @abstractmethod
    def is_open(self, region: Region) -> bool:
        raise NotImplementedError

    @abstractmethod
    def is_subset(self, first: Region, second: Region) -> bool:
        raise NotImplementedError

    @abstractmethod
    def pick(self, region: Region) -> Point:
        """Return a point of a non-empty region, the same one on every call."""
        raise NotImplementedError

    @abstractmethod
    def closure_of_points(self, points: Sequence[Point]) -> Region:
        raise NotImplementedError

    @abstractmethod
    def local_pibase(
        self, point: Point, avoid: Region, width: int, best_effort: bool = False
    ) -> Tuple[Region, ...]:
        """Return at most ``width`` non-empty opens forming a local pi-base at ``point``.

        The closures of the members are disjoint from the closed region ``avoid``.

        Raises
        ------
        RegularityError
            If no such family exists and ``best_effort`` is False
        """
        raise NotImplementedError

    @abstractmethod
    def probes(self, point: Point, count: int) -> Tuple[Region, ...]:
        """Return open neighbourhoods of ``point`` used to test local pi-bases."""
        raise NotImplementedError

    @abstractmethod
    def dense_enumeration(self) -> Iterator[Point]:
        """Yield a dense set of points in an order whose initial segments are relatively closed."""
        raise NotImplementedError

    @abstractmethod
    def point_name(self, point: Point) -> str:
        raise NotImplementedError

    @abstractmethod
    def describe(self, region: Region) -> str:
        raise NotImplementedError


# =====================
# =  FINITE SPACES    =
# =====================


class FiniteSpaceOracle(SpaceOracle):
    """Oracle over a FiniteSpace: regions are bit masks and points are point indices."""

    exact_probes = True

    def __init__(self, space: FiniteSpace):
        self.space = space.check_size()
        self.name = f"finite:{space}"

    @property
    def is_regular(self) -> bool:
        return self.space.is_regular

    @property
    def pi_character_analog(self) -> int:
        return max(
            [pi_character(self.space, index).value for index in range(self.space.n)]
            + [1]
        )

    def closure(self, region: int) -> int:
        return self.space.closure(region)

    def intersect(self, first: int, second: int) -> int:
        return first & second

    def is_empty(self, region: int) -> bool:
        return region == 0

    def contains(self, region: int, point: int) -> bool:
        return bool(region >> point & 1)

    def is_open(self, region: int) -> bool:
        return self.space.is_open(region)

    def is_subset(self, first: int, second: int) -> bool:
        return first & ~second == 0

    def pick(self, region: int) -> int:
        if not region:
            raise PreconditionError("Cannot pick a point of the empty set")
        return next(bits_of(region))

    def closure_of_points(self, points: Sequence[int]) -> int:
        return self.space.closure(sum(1 << point for point in set(points)))

    def local_pibase(
        self, point: int, avoid: int, width: int, best_effort: bool = False
    ) -> Tuple[int, ...]:
        # any non-empty open inside U_p is a local pi-base at p on its own
        neighbourhood = self.space.minimal_neighbourhoods[point]
        for open_ in self.space.nonempty_opens:
            if open_ & ~neighbourhood == 0 and not self.space.closure(open_) & avoid:
                return (open_,)
        if best_effort:
            logger.warning(
                "No open set below U_%s has a closure disjoint from %s, using U_%s",
                self.point_name(point),
                self.describe(avoid),
                self.point_name(point),
            )
            return (neighbourhood,)
        raise RegularityError(
            f"No local pi-base at {self.point_name(point)} has closures disjoint "
            f"from {self.describe(avoid)}"
        )

    def probes(self, point: int, count: int = None) -> Tuple[int, ...]:
        return tuple(
            open_ for open_ in self.space.sorted_opens if open_ >> point & 1
        )

    def dense_enumeration(self) -> Iterator[int]:
        for name in left_separated_order(self.space):
            yield self.space.index_of(name)

    def point_name(self, point: int) -> str:
        return self.space.points[point]

    def describe(self, region: int) -> str:
        return "{" + ",".join(self.space.names_of(region)) + "}"


# =====================
# =  RATIONAL LINE    =
# =====================


@dataclass(frozen=True)
class Interval:
    """Interval of rationals with each end open or closed; ``low == high`` with both ends closed is a point."""

    low: Fraction
    high: Fraction
    low_closed: bool = False
    high_closed: bool = False

    @classmethod
    def point(cls, value: Fraction) -> "Interval":
        return cls(value, value, True, True)

    @classmethod
    def ball(cls, center: Fraction, radius: Fraction) -> "Interval":
        return cls(center - radius, center + radius)

    @property
    def is_empty(self) -> bool:
        if self.low < self.high:
            return False
        return not (self.low == self.high and self.low_closed and self.high_closed)

    def closure(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(self.low, self.high, True, True)

    def contains(self, value: Fraction) -> bool:
        above = self.low < value or (self.low == value and self.low_closed)
        below = value < self.high or (value == self.high and self.high_closed)
        return above and below

    def intersect(self, other: "Interval") -> "Interval":
        if self.low > other.low:
            low, low_closed = self.low, self.low_closed
        elif self.low < other.low:
            low, low_closed = other.low, other.low_closed
        else:
            low, low_closed = self.low, self.low_closed and other.low_closed
        if self.high < other.high:
            high, high_closed = self.high, self.high_closed
        elif self.high > other.high:
            high, high_closed = other.high, other.high_closed
        else:
            high, high_closed = self.high, self.high_closed and other.high_closed
        return Interval(low, high, low_closed, high_closed)

    def is_inside(self, other: "Interval") -> bool:
        if self.is_empty:
            return True
        low_ok = other.low < self.low or (
            other.low == self.low and (other.low_closed or not self.low_closed)
        )
        high_ok = self.high < other.high or (
            self.high == other.high and (other.high_closed or not self.high_closed)
        )
        return low_ok and high_ok

    def distance_to(self, value: Fraction) -> Fraction:
        if self.contains(value):
            return Fraction(0)
        if value <= self.low:
            return self.low - value
        return value - self.high

    def __str__(self) -> str:
        if self.low == self.high:
            return "{" + str(self.low) + "}"
        left = "[" if self.low_closed else "("
        right = "]" if self.high_closed else ")"
        return f"{left}{self.low}, {self.high}{right}"


RationalRegion = Tuple[Interval, ...]


def _normalized(intervals: Sequence[Interval]) -> RationalRegion:
    kept = {interval for interval in intervals if not interval.is_empty}
    return tuple(
        sorted(kept, key=lambda i: (i.low, not i.low_closed, i.high, i.high_closed))
    )


def calkin_wilf() -> Iterator[Fraction]:
    """Yield every positive rational exactly once: 1, 1/2, 2, 1/3, 3/2, ..."""
    value = Fraction(1)
    while True:
        yield value
        value = 1 / (2 * (value.numerator // value.denominator) - value + 1)


class RationalLineOracle(SpaceOracle):
    """The rationals with the topology of the real line.

    Regions are finite unions of intervals with rational ends; every finite set
    of points is closed. The dense enumeration is 0, q, -q over the Calkin-Wilf
    sequence q, and every finite initial segment of it is closed.
    """

    name = "rationals"
    # Probes are centred balls no finer than the members of a local pi-base
    probe_note = (
        "centred balls no finer than the family, containment holds by construction"
    )

    def closure(self, region: RationalRegion) -> RationalRegion:
        return _normalized([interval.closure() for interval in region])

    def intersect(self, first: RationalRegion, second: RationalRegion) -> RationalRegion:
        return _normalized([a.intersect(b) for a in first for b in second])

    def is_empty(self, region: RationalRegion) -> bool:
        return not _normalized(region)

    def contains(self, region: RationalRegion, point: Fraction) -> bool:
        return any(interval.contains(point) for interval in region)

    def is_open(self, region: RationalRegion) -> bool:
        return all(
            interval.low < interval.high
            and not (interval.low_closed or interval.high_closed)
            for interval in _normalized(region)
        )

    def is_subset(self, first: RationalRegion, second: RationalRegion) -> bool:
        """True if every interval of ``first`` lies inside a single interval of ``second``."""
        return all(
            any(interval.is_inside(other) for other in second) for interval in first
        )

    def pick(self, region: RationalRegion) -> Fraction:
        region = _normalized(region)
        if not region:
            raise PreconditionError("Cannot pick a point of the empty set")
        interval = region[0]
        if interval.low == interval.high:
            return interval.low
        return (interval.low + interval.high) / 2

    def closure_of_points(self, points: Sequence[Fraction]) -> RationalRegion:
        return _normalized([Interval.point(Fraction(point)) for point in points])

    def distance(self, point: Fraction, region: RationalRegion):
        return min((interval.distance_to(point) for interval in region), default=None)

    def local_pibase(
        self, point: Fraction, avoid: RationalRegion, width: int, best_effort: bool = False
    ) -> Tuple[RationalRegion, ...]:
        distance = self.distance(point, self.closure(avoid))
        if distance == 0:
            if not best_effort:
                raise RegularityError(f"{point} lies in the closed set {self.describe(avoid)}")
            logger.warning("%s lies in %s, closures will meet it", point, self.describe(avoid))
        radius = Fraction(1) if not distance else min(Fraction(1), distance / 2)
        return tuple(
            (Interval.ball(point, radius / 2 ** index),) for index in range(max(width, 1))
        )

    def probes(self, point: Fraction, count: int) -> Tuple[RationalRegion, ...]:
        return tuple(
            (Interval.ball(point, Fraction(1, 2 ** index)),) for index in range(count)
        )

    def dense_enumeration(self) -> Iterator[Fraction]:
        yield Fraction(0)
        for value in calkin_wilf():
            yield value
            yield -value

    def point_name(self, point: Fraction) -> str:
        return str(point)

    def describe(self, region: RationalRegion) -> str:
        if not region:
            return "{}"
        return " u ".join(str(interval) for interval in region)


# =====================
# =  ORDINAL INTERVAL =
# =====================

OrdinalRegion = Tuple[Tuple[OrdinalTerm, OrdinalTerm], ...]


def _merged(intervals: Sequence[Tuple[OrdinalTerm, OrdinalTerm]]) -> OrdinalRegion:
    result: List[Tuple[OrdinalTerm, OrdinalTerm]] = []
    for low, high in sorted(
        (pair for pair in intervals if pair[0] < pair[1]), key=lambda pair: pair[0]
    ):
        if result and low <= result[-1][1]:
            result[-1] = (result[-1][0], ordinal.ordinal_max(result[-1][1], high))
        else:
            result.append((low, high))
    return tuple(result)


class OrdinalIntervalOracle(SpaceOracle):
    """The ordinals below ``bound`` with the order topology.

    Regions are finite unions of intervals [a, b). 0 and the successors are
    isolated; a limit p has the neighbourhoods (q, p]. The dense set is the set
    of isolated points, enumerated by notation number.

    Parameters
    ----------
    bound : OrdinalTerm
        The space is [0, bound)
    max_level : int, optional
        Highest atom level of the enumerated notations. Default is None, meaning
        ``settings.max_level()``
    """

    def __init__(self, bound: OrdinalTerm, max_level: int = None):
        self.bound = bound
        self.max_level = settings.max_level() if max_level is None else max_level
        ordinal.check_levels(bound, self.max_level)
        self.name = f"ordinal:{ordinal.to_string(bound)}"

    def _check_point(self, point: OrdinalTerm) -> OrdinalTerm:
        if not point < self.bound:
            raise OracleError(f"{point} is not below {self.bound}")
        return point

    def closure(self, region: OrdinalRegion) -> OrdinalRegion:
        closed = []
        for low, high in region:
            if high.is_limit and high < self.bound:
                high = ordinal.succ(high)
            closed.append((low, high))
        return _merged(closed)

    def intersect(self, first: OrdinalRegion, second: OrdinalRegion) -> OrdinalRegion:
        return _merged(
            [
                (ordinal.ordinal_max(a_low, b_low), b_high if b_high < a_high else a_high)
                for a_low, a_high in first
                for b_low, b_high in second
            ]
        )

    def is_empty(self, region: OrdinalRegion) -> bool:
        return not _merged(region)

    def contains(self, region: OrdinalRegion, point: OrdinalTerm) -> bool:
        return any(low <= point < high for low, high in region)

    def is_open(self, region: OrdinalRegion) -> bool:
        return not any(low.is_limit for low, _ in region)

    def is_subset(self, first: OrdinalRegion, second: OrdinalRegion) -> bool:
        second = _merged(second)
        return all(
            any(b_low <= low and high <= b_high for b_low, b_high in second)
            for low, high in _merged(first)
        )

    def pick(self, region: OrdinalRegion) -> OrdinalTerm:
        region = _merged(region)
        if not region:
            raise PreconditionError("Cannot pick a point of the empty set")
        return region[0][0]

    def closure_of_points(self, points: Sequence[OrdinalTerm]) -> OrdinalRegion:
        return _merged([(point, ordinal.succ(point)) for point in points])

    def _fundamental_term(self, point: OrdinalTerm, index: int) -> OrdinalTerm:
        try:
            return ordinal.fundamental_term(point, index)
        except PreconditionError as err:
            raise OracleError(
                f"{point} has no neighbourhood base indexed by w: {err}"
            )

    def local_pibase(
        self, point: OrdinalTerm, avoid: OrdinalRegion, width: int, best_effort: bool = False
    ) -> Tuple[OrdinalRegion, ...]:
        self._check_point(point)
        avoid = self.closure(avoid)
        if self.contains(avoid, point):
            if not best_effort:
                raise RegularityError(f"{point} lies in the closed set {self.describe(avoid)}")
            logger.warning("%s lies in %s, closures will meet it", point, self.describe(avoid))
            avoid = ()
        if not point.is_limit:
            return (((point, ordinal.succ(point)),),)
        # every point of ``avoid`` below ``point`` is below ``ceiling``
        ceiling = ordinal.ZERO
        for low, high in avoid:
            if high <= point:
                ceiling = ordinal.ordinal_max(ceiling, high)
        start = 0
        while self._fundamental_term(point, start) < ceiling:
            start += 1
            if start > settings.WITNESS_SEARCH_CAP:
                raise OracleError(
                    f"The fundamental sequence of {point} does not pass {ceiling} "
                    f"within {settings.WITNESS_SEARCH_CAP} terms"
                )
        members = []
        for index in range(start, start + max(width, 1)):
            isolated = ordinal.succ(self._fundamental_term(point, index))
            members.append(((isolated, ordinal.succ(isolated)),))
        return tuple(members)

    def probes(self, point: OrdinalTerm, count: int) -> Tuple[OrdinalRegion, ...]:
        self._check_point(point)
        if not point.is_limit:
            return (((point, ordinal.succ(point)),),)
        return tuple(
            ((ordinal.succ(self._fundamental_term(point, index)), ordinal.succ(point)),)
            for index in range(count)
        )

    def dense_enumeration(self) -> Iterator[OrdinalTerm]:
        if self.bound.is_finite:
            for value in range(self.bound.to_int()):
                yield ordinal.from_int(value)
            return
        for number in itertools.count():
            point = from_notation_number(number, self.max_level)
            if point is None or point.is_limit or not point < self.bound:
                continue
            yield point

    def point_name(self, point: OrdinalTerm) -> str:
        return ordinal.to_string(point)

    def describe(self, region: OrdinalRegion) -> str:
        if not region:
            return "{}"
        return " u ".join(
            f"[{ordinal.to_string(low)}, {ordinal.to_string(high)})" for low, high in region
        )


def finite_space_from_selector(selector: str) -> FiniteSpace:
    """Return the finite space named by ``selector``.

    Accepted selectors are ``file:PATH``, ``discrete:N``, ``indiscrete:N`` and
    ``sierpinski``.

    Raises
    ------
    SpaceDocumentError
        If ``selector`` names no finite space
    """
    kind, _, argument = selector.partition(":")
    if kind == "file":
        return load_space_file(argument)
    if kind == "sierpinski" and not argument:
        return sierpinski_space()
    if kind in ("discrete", "indiscrete"):
        try:
            n = int(argument)
        except ValueError:
            raise SpaceDocumentError(f"{kind} expects a point count, found {argument!r}")
        if n < 0 or n > settings.POINTS_CAP:
            raise SpaceDocumentError(
                f"{kind} expects a point count between 0 and {settings.POINTS_CAP}"
            )
        return discrete_space(n) if kind == "discrete" else indiscrete_space(n)
    raise SpaceDocumentError(f"{selector!r} does not name a finite space")


def oracle_from_selector(selector: str, max_level: int = None) -> SpaceOracle:
    """Return the oracle named by ``selector``.

    ``rationals`` and ``ordinal:EXPR`` name the infinite oracles, every selector
    of ``finite_space_from_selector`` names a finite one.

    Raises
    ------
    SpaceDocumentError
        If ``selector`` names no space
    """
    kind, _, argument = selector.partition(":")
    if kind == "rationals" and not argument:
        return RationalLineOracle()
    if kind == "ordinal":
        return OrdinalIntervalOracle(ordinal.parse(argument, max_level), max_level)
    return FiniteSpaceOracle(finite_space_from_selector(selector))
