# encoding: utf-8

"""Finite topological spaces with open sets stored as bit masks over the points."""

import json
import logging
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from . import settings
from .exceptions import NotATopologyError, SizeCapExceededError, SpaceDocumentError
from .util import bits_of, lazy_property, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteSpace:
    """
    Topology on finitely many named points.

    Subsets of the space are int bit masks: bit ``i`` stands for ``points[i]``.

    Parameters
    ----------
    points : Tuple[str, ...]
        Point names, distinct
    opens : FrozenSet[int]
        The open sets, as bit masks. Use ``load_space``, ``generate_topology`` or
        ``FiniteSpace.from_opens`` to get a validated instance.
    """

    points: Tuple[str, ...]
    opens: FrozenSet[int]

    @classmethod
    def from_opens(cls, points: Sequence[str], opens: Iterable[int]) -> "FiniteSpace":
        """Return the space with the given opens, checking that they form a topology.

        Raises
        ------
        NotATopologyError
            If ``opens`` misses the empty set or the whole space, or it is not
            closed under binary unions and intersections
        """
        space = cls(tuple(points), frozenset(opens))
        problem = space.topology_problem()
        if problem is not None:
            raise NotATopologyError(problem)
        return space

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    @lazy_property
    def sorted_opens(self) -> Tuple[int, ...]:
        """Open sets ordered by size, then by mask value."""
        return tuple(sorted(self.opens, key=lambda mask: (popcount(mask), mask)))

    @lazy_property
    def nonempty_opens(self) -> Tuple[int, ...]:
        return tuple(mask for mask in self.sorted_opens if mask)

    def topology_problem(self) -> Union[str, None]:
        """Return why ``opens`` is not a topology, None if it is."""
        if 0 not in self.opens:
            return "The family of open sets does not contain the empty set"
        if self.full not in self.opens:
            return "The family of open sets does not contain the whole space"
        for first in self.opens:
            if first & ~self.full:
                return f"Open set {first:b} uses unknown points"
            for second in self.opens:
                if first | second not in self.opens:
                    return (
                        f"The union of {self.names_of(first)} and "
                        f"{self.names_of(second)} is not open"
                    )
                if first & second not in self.opens:
                    return (
                        f"The intersection of {self.names_of(first)} and "
                        f"{self.names_of(second)} is not open"
                    )
        return None

    def index_of(self, name: str) -> int:
        try:
            return self.points.index(name)
        except ValueError:
            raise SpaceDocumentError(f"Unknown point {name!r}")

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index_of(name)
        return mask

    def names_of(self, mask: int) -> List[str]:
        return [self.points[index] for index in bits_of(mask)]

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.full & ~mask) in self.opens

    def interior(self, mask: int) -> int:
        """Return the largest open subset of ``mask``."""
        result = 0
        for open_ in self.opens:
            if open_ & ~mask == 0:
                result |= open_
        return result

    def closure(self, mask: int) -> int:
        """Return the closure of ``mask``, the complement of the interior of its complement."""
        return self.full & ~self.interior(self.full & ~mask)

    @lazy_property
    def minimal_neighbourhoods(self) -> Tuple[int, ...]:
        """The least open set U_p containing each point p."""
        result = []
        for index in range(self.n):
            neighbourhood = self.full
            for open_ in self.opens:
                if open_ >> index & 1:
                    neighbourhood &= open_
            result.append(neighbourhood)
        return tuple(result)

    def hull(self, mask: int) -> int:
        """Return the least open superset of ``mask``."""
        result = 0
        for index in bits_of(mask):
            result |= self.minimal_neighbourhoods[index]
        return result

    def relative_closure(self, mask: int, subspace: int) -> int:
        return self.closure(mask) & subspace

    @lazy_property
    def is_regular(self) -> bool:
        """True if every point and closed set not containing it have disjoint neighbourhoods.

        For a point p and a closed F not containing p, the least neighbourhoods are
        U_p and the hull of F, so it is enough to check that they are disjoint.
        """
        for open_ in self.opens:
            closed = self.full & ~open_
            hull = self.hull(closed)
            for index in bits_of(open_):
                if self.minimal_neighbourhoods[index] & hull:
                    return False
        return True

    def check_size(self, max_opens: int = settings.OPENS_CAP) -> "FiniteSpace":
        """Return the space after checking it against the brute force caps.

        Raises
        ------
        SizeCapExceededError
            If the space has more than ``settings.POINTS_CAP`` points or more than
            ``max_opens`` open sets
        """
        if self.n > settings.POINTS_CAP:
            raise SizeCapExceededError(
                f"The space has {self.n} points, the cap is {settings.POINTS_CAP}"
            )
        if len(self.opens) > max_opens:
            raise SizeCapExceededError(
                f"The space has {len(self.opens)} open sets, the cap is {max_opens}"
            )
        return self

    def to_document(self) -> Dict[str, Any]:
        return {
            "points": list(self.points),
            "opens": [self.names_of(mask) for mask in self.sorted_opens],
        }

    def __str__(self) -> str:
        return (
            "{"
            + ", ".join(
                "{" + ",".join(self.names_of(mask)) + "}" for mask in self.sorted_opens
            )
            + "}"
        )


def generate_topology(points: Sequence[str], family: Iterable[int]) -> FiniteSpace:
    """Return the topology generated by ``family`` on ``points``.

    The family is closed under finite intersections (the whole space included)
    and then under unions (the empty set included).

    Parameters
    ----------
    points : Sequence[str]
        Point names
    family : Iterable[int]
        Generating sets, as bit masks

    Returns
    -------
    FiniteSpace
        The coarsest topology in which every member of ``family`` is open
    """
    full = (1 << len(points)) - 1
    intersections = {full} | {mask & full for mask in family}
    pending = list(intersections)
    while pending:
        mask = pending.pop()
        for other in list(intersections):
            meet = mask & other
            if meet not in intersections:
                intersections.add(meet)
                pending.append(meet)
    opens = {0}
    for mask in intersections:
        opens |= {open_ | mask for open_ in opens}
    return FiniteSpace(tuple(points), frozenset(opens))


def load_space(document: Dict[str, Any], strict: bool = True) -> FiniteSpace:
    """Return the space described by a JSON-like ``document``.

    The document has a ``points`` array of distinct strings and either an ``opens``
    or a ``base`` array of arrays of point names. A ``base`` always generates a
    topology; ``opens`` must already be a topology unless ``strict`` is False, in
    which case it generates one.

    Parameters
    ----------
    document : Dict[str, Any]
        Parsed JSON document
    strict : bool, optional
        Reject ``opens`` families that are not topologies. Default is True.

    Returns
    -------
    FiniteSpace
        The described space

    Raises
    ------
    SpaceDocumentError
        If the document is malformed
    NotATopologyError
        If ``strict`` and ``opens`` is not a topology
    """
    if not isinstance(document, dict):
        raise SpaceDocumentError("A space document must be a JSON object")
    points = document.get("points")
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise SpaceDocumentError("'points' must be an array of strings")
    if len(set(points)) != len(points):
        raise SpaceDocumentError("'points' must not contain duplicates")
    has_opens, has_base = "opens" in document, "base" in document
    if has_opens == has_base:
        raise SpaceDocumentError("A space document needs exactly one of 'opens', 'base'")
    key = "opens" if has_opens else "base"
    family = document[key]
    if not isinstance(family, list) or not all(isinstance(s, list) for s in family):
        raise SpaceDocumentError(f"'{key}' must be an array of arrays of point names")
    skeleton = FiniteSpace(tuple(points), frozenset())
    masks = [skeleton.mask_of(names) for names in family]
    if has_opens and strict:
        space = FiniteSpace.from_opens(points, masks)
    else:
        space = generate_topology(points, masks)
    logger.info("Loaded a space with %d points and %d open sets", space.n, len(space.opens))
    return space


def load_space_file(path: Union[str, Path], strict: bool = True) -> FiniteSpace:
    """Read and load a JSON space document (see ``load_space``).

    Raises
    ------
    SpaceDocumentError
        If the file cannot be read or is not valid JSON
    """
    try:
        with open(path) as stream:
            document = json.load(stream)
    except (OSError, json.JSONDecodeError) as err:
        raise SpaceDocumentError(f"Cannot read space document {path}: {err}")
    return load_space(document, strict=strict)


def kuratowski_violations(space: FiniteSpace) -> List[str]:
    """Return the failures of the Kuratowski closure axioms on ``space``.

    All subsets are checked for extensivity and idempotence, all pairs of subsets
    for finite additivity.

    Raises
    ------
    SizeCapExceededError
        If the space is above the point cap
    """
    space.check_size()
    violations = []
    if space.closure(0) != 0:
        violations.append("cl(empty) is not empty")
    closures = [space.closure(mask) for mask in range(space.full + 1)]
    for mask, closure in enumerate(closures):
        if mask & ~closure:
            violations.append(f"{space.names_of(mask)} is not inside its closure")
        if closures[closure] != closure:
            violations.append(f"cl({space.names_of(mask)}) is not closed")
        for other in range(mask, space.full + 1):
            if closures[mask | other] != closure | closures[other]:
                violations.append(
                    f"cl is not additive on {space.names_of(mask)}, "
                    f"{space.names_of(other)}"
                )
    return violations


def point_names(n: int) -> Tuple[str, ...]:
    if n <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"p{index}" for index in range(n))


def discrete_space(n: int) -> FiniteSpace:
    return FiniteSpace(point_names(n), frozenset(range(1 << n)))


def indiscrete_space(n: int) -> FiniteSpace:
    return FiniteSpace(point_names(n), frozenset({0, (1 << n) - 1}))


def sierpinski_space() -> FiniteSpace:
    """The space {a, b} with open sets {}, {a}, {a, b}."""
    return FiniteSpace(("a", "b"), frozenset({0b00, 0b01, 0b11}))


def _up_closed(mask: int, ups: Sequence[int]) -> bool:
    return all(ups[index] & ~mask == 0 for index in bits_of(mask))


def _down_closed(mask: int, ups: Sequence[int]) -> bool:
    return all(
        mask >> index & 1 or not ups[index] & mask for index in range(len(ups))
    )


def _preorders(n: int) -> Iterator[Tuple[int, ...]]:
    # up[x] is the set of y with x <= y; a new point k gets an up-closed set U above
    # it and a down-closed set D below it with every member of D below all of U
    if n == 0:
        yield ()
        return
    k = n - 1
    for ups in _preorders(k):
        candidates = range(1 << k)
        up_sets = [mask for mask in candidates if _up_closed(mask, ups)]
        down_sets = [mask for mask in candidates if _down_closed(mask, ups)]
        for down in down_sets:
            for up in up_sets:
                if any(up & ~ups[index] for index in bits_of(down)):
                    continue
                new_up = up | 1 << k
                extended = [
                    ups[index] | new_up if down >> index & 1 else ups[index]
                    for index in range(k)
                ]
                yield tuple(extended) + (new_up,)


def enumerate_topologies(n: int) -> Iterator[FiniteSpace]:
    """Yield every topology on the points of ``point_names(n)``, each exactly once.

    Topologies on a finite set are in bijection with preorders; the open sets of
    the preorder x <= y iff "every open set containing x contains y" are its
    up-closed sets. There are 1, 1, 4, 29, 355, 6942 topologies on 0..5 points.

    Parameters
    ----------
    n : int
        Number of points

    Returns
    -------
    Iterator[FiniteSpace]
        The topologies, in a fixed order
    """
    names = point_names(n)
    for ups in _preorders(n):
        opens = frozenset(mask for mask in range(1 << n) if _up_closed(mask, ups))
        yield FiniteSpace(names, opens)
