# encoding: utf-8

"""Covers and free sequences of finite spaces: the reflection property of free sequences.

For a subset Y and a bound L, a family U of open sets "reflects" Y when the
closure of every A in Y with at most L points lies inside a member of U. Either
at most L members of U cover Y, or a free sequence of length L can be picked in
Y by induction: at stage k take U_k in U containing cl(P_k) and a point of Y
outside U_0, ..., U_k.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import pandas as pd
from joblib import Parallel, delayed
from typing_extensions import Literal

from . import settings
from .exceptions import PreconditionError, SizeCapExceededError
from .finite_space import FiniteSpace, enumerate_topologies
from .invariants import is_free_indices, max_free_sequence
from .util import bits_of, first, popcount, subsets_by_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cover:
    """At most L members of the family whose union contains Y."""

    members: Tuple[int, ...]
    kind: Literal["cover"] = "cover"

    def to_dict(self, space: FiniteSpace) -> dict:
        return {
            "kind": self.kind,
            "members": [space.names_of(member) for member in self.members],
        }


@dataclass(frozen=True)
class FreeSeq:
    """A free sequence of length L inside Y, with the members U_k used to pick it."""

    points: Tuple[int, ...]
    separators: Tuple[int, ...]
    kind: Literal["free_sequence"] = "free_sequence"

    def names(self, space: FiniteSpace) -> Tuple[str, ...]:
        return tuple(space.points[index] for index in self.points)

    def to_dict(self, space: FiniteSpace) -> dict:
        return {
            "kind": self.kind,
            "points": list(self.names(space)),
            "separators": [space.names_of(member) for member in self.separators],
        }


Lemma24Outcome = Union[Cover, FreeSeq]


def _union(members: Iterable[int]) -> int:
    result = 0
    for member in members:
        result |= member
    return result


def hull_family(space: FiniteSpace, subset: int, bound: int) -> Tuple[int, ...]:
    """Return the least opens containing cl(A), for every A in ``subset`` with at most ``bound`` points.

    Every family reflecting ``subset`` at ``bound`` has, for each member of this
    family, a member containing it. The family is sorted by size, then by mask.
    """
    members = {
        space.hull(space.closure(_union(1 << index for index in small)))
        for small in subsets_by_size(tuple(bits_of(subset)), bound)
    }
    return tuple(sorted(members, key=lambda mask: (popcount(mask), mask)))


def reflection_failure(
    space: FiniteSpace, subset: int, family: Sequence[int], bound: int
) -> Union[int, None]:
    """Return a set A in ``subset`` of at most ``bound`` points with cl(A) in no member of ``family``.

    Returns None when ``family`` reflects ``subset`` at ``bound``.
    """
    for small in subsets_by_size(tuple(bits_of(subset)), bound):
        mask = _union(1 << index for index in small)
        closure = space.closure(mask)
        if not any(closure & ~member == 0 for member in family):
            return mask
    return None


def has_small_cover(space: FiniteSpace, subset: int, bound: int) -> bool:
    """Return True if every family reflecting ``subset`` at ``bound`` has a subcover of size ``bound``.

    It is enough to look at ``hull_family``. The union of ``bound`` of its
    members is hull(cl(B)) for a B in ``subset`` with at most bound ** 2 points,
    and hull and closure are monotone, so only the sets B of exactly that size
    need to be tried.
    """
    points = tuple(bits_of(subset))
    size = bound * bound
    if len(points) <= size:
        return True
    for chosen in itertools.combinations(points, size):
        mask = _union(1 << index for index in chosen)
        if subset & ~space.hull(space.closure(mask)) == 0:
            return True
    return False


def lemma24_extract(
    space: FiniteSpace, subset: int, family: Sequence[int], bound: int
) -> Lemma24Outcome:
    """Return a cover of ``subset`` by at most ``bound`` members of ``family``, or a free sequence.

    When no subfamily of size ``bound`` covers ``subset``, a free sequence of
    length ``bound`` is picked by induction: at stage k the first member U_k of
    ``family`` with cl(P_k) inside it, then the first point of ``subset`` outside
    U_0, ..., U_k.

    Parameters
    ----------
    space : FiniteSpace
        The space
    subset : int
        The set Y, as a bit mask
    family : Sequence[int]
        Open sets, as bit masks
    bound : int
        The bound L

    Returns
    -------
    Lemma24Outcome
        A ``Cover`` of least size, the first one in subfamily order, or a
        ``FreeSeq`` of length ``bound``

    Raises
    ------
    PreconditionError
        If a member of ``family`` is not open, or some A in ``subset`` with at
        most ``bound`` points has its closure in no member of ``family``
    SizeCapExceededError
        If the space is above the configured caps
    """
    space.check_size()
    if bound < 0:
        raise PreconditionError(f"The bound must be a natural number, found {bound}")
    if subset & ~space.full:
        raise PreconditionError(f"{subset:b} is not a subset of the space")
    family = tuple(dict.fromkeys(family))
    for member in family:
        if not space.is_open(member):
            raise PreconditionError(f"{space.names_of(member)} is not open")
    failure = reflection_failure(space, subset, family, bound)
    if failure is not None:
        raise PreconditionError(
            f"The closure of {space.names_of(failure)} is not inside a member of "
            f"the family, the family does not reflect {space.names_of(subset)} at "
            f"L={bound}"
        )

    for members in subsets_by_size(family, bound):
        if subset & ~_union(members) == 0:
            outcome = Cover(tuple(members))
            logger.debug("Cover of %s: %s", space.names_of(subset), outcome)
            return _checked(space, subset, family, bound, outcome)

    points: List[int] = []
    separators: List[int] = []
    for _ in range(bound):
        head = space.closure(_union(1 << index for index in points))
        separator = first(member for member in family if head & ~member == 0)
        if separator is None:
            raise RuntimeError("A reflected closure has no member of the family above it")
        separators.append(separator)
        outside = subset & ~_union(separators)
        if not outside:
            raise RuntimeError(f"{len(separators)} members of the family cover the set")
        points.append(next(bits_of(outside)))
    outcome = FreeSeq(tuple(points), tuple(separators))
    logger.debug("Free sequence in %s: %s", space.names_of(subset), outcome)
    return _checked(space, subset, family, bound, outcome)


def _checked(
    space: FiniteSpace,
    subset: int,
    family: Sequence[int],
    bound: int,
    outcome: Lemma24Outcome,
) -> Lemma24Outcome:
    if isinstance(outcome, Cover):
        if (
            len(outcome.members) > bound
            or not set(outcome.members) <= set(family)
            or subset & ~_union(outcome.members)
        ):
            raise RuntimeError(f"{outcome} is not a cover of size {bound} from the family")
        return outcome
    mask = _union(1 << index for index in outcome.points)
    if (
        len(outcome.points) != bound
        or len(set(outcome.points)) != bound
        or mask & ~subset
        or not is_free_indices(space, outcome.points)
    ):
        raise RuntimeError(f"{outcome} is not a free sequence of length {bound}")
    return outcome


def _bruteforce_rows(space: FiniteSpace) -> List[dict]:
    free = max_free_sequence(space)
    rows = []
    for bound in range(space.n + 1):
        failing_subset = first(
            subset for subset in range(space.full + 1)
            if not has_small_cover(space, subset, bound)
        )
        a = len(free) <= bound
        b = failing_subset is None
        outcome = lemma24_extract(
            space, space.full, hull_family(space, space.full, bound), bound
        )
        if a and not b:
            witness = "Y=" + "{" + ",".join(space.names_of(failing_subset)) + "}"
        elif b and not a:
            witness = "P=" + ",".join(free[: bound + 1])
        else:
            witness = ""
        rows.append(
            {
                "topology": str(space),
                "n_opens": len(space.opens),
                "L": bound,
                "F": len(free),
                "a": a,
                "b": b,
                "a_implies_b": b or not a,
                "b_implies_a": a or not b,
                "witness": witness,
                "extract_on_X": outcome.kind,
            }
        )
    return rows


def lemma24_bruteforce(n: int, n_jobs: int = settings.N_JOBS) -> pd.DataFrame:
    """Tabulate the reflection property against the free sequence number on every topology with ``n`` points.

    For every topology and every L in 0..n the table records

    - ``a``: F(X) <= L, there is no free sequence of length L + 1,
    - ``b``: every Y and every family reflecting Y at L has a subcover of size L,
    - both implications with a witness when one fails (the failing Y for a
      without b, a free sequence of length L + 1 for b without a),
    - the outcome of ``lemma24_extract`` on the whole space with its hull family.

    Parameters
    ----------
    n : int
        Number of points, at most ``settings.LEMMA24_MAX_POINTS``
    n_jobs : int, optional
        Number of joblib jobs. Default is ``settings.N_JOBS``.

    Returns
    -------
    pd.DataFrame
        One row per (topology, L), topologies in enumeration order

    Raises
    ------
    SizeCapExceededError
        If ``n`` is above ``settings.LEMMA24_MAX_POINTS``
    """
    if n < 0:
        raise PreconditionError(f"The point count must be a natural number, found {n}")
    if n > settings.LEMMA24_MAX_POINTS:
        raise SizeCapExceededError(
            f"{n} points requested, the cap is {settings.LEMMA24_MAX_POINTS}"
        )
    spaces = list(enumerate_topologies(n))
    logger.info("Exploring %d topologies on %d points", len(spaces), n)
    chunks = Parallel(n_jobs=n_jobs)(delayed(_bruteforce_rows)(space) for space in spaces)
    table = pd.DataFrame([row for rows in chunks for row in rows])
    logger.info(
        "Reflection exploration on %d points done: %d rows, %d with a failing implication",
        n,
        len(table),
        int((~table["a_implies_b"] | ~table["b_implies_a"]).sum()) if len(table) else 0,
    )
    return table
