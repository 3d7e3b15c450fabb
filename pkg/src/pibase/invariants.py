# encoding: utf-8

"""Cardinal invariants of finite spaces computed by exhaustive search, with witnesses."""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from joblib import Parallel, delayed

from . import settings
from .exceptions import SizeCapExceededError
from .finite_space import FiniteSpace
from .util import bits_of, subsets_by_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Invariant:
    """Value of a cardinal invariant together with the object attaining it."""

    value: int
    witness: Tuple[str, ...]


@dataclass(frozen=True)
class InvariantReport:
    """
    Cardinal invariants of a finite space.

    Parameters
    ----------
    size : int
        Number of points |X|
    density : Invariant
        d(X) with a dense set of that size
    spread : Invariant
        s(X) with a discrete subspace of that size
    pi_character : Dict[str, Invariant]
        pi-character of every point with a local pi-base of that size (the
        witness lists the members as "{a,b}" strings)
    tightness : Invariant
        t(X) with a point and a point of its least neighbourhood
    free_sequence : Invariant
        F(X) with a free sequence of that length
    min_order : Invariant, optional
        m(X), the least maximal point order of a pi-base, with the pi-base
    """

    size: int
    density: Invariant
    spread: Invariant
    pi_character: Dict[str, Invariant]
    tightness: Invariant
    free_sequence: Invariant
    min_order: Optional[Invariant] = None

    @property
    def global_pi_character(self) -> int:
        return max((inv.value for inv in self.pi_character.values()), default=0)

    def to_dict(self) -> dict:
        def entry(invariant: Invariant) -> dict:
            return {"value": invariant.value, "witness": list(invariant.witness)}

        result = {
            "size": self.size,
            "d": entry(self.density),
            "s": entry(self.spread),
            "pi_character": {
                name: entry(inv) for name, inv in self.pi_character.items()
            },
            "pi_character_global": self.global_pi_character,
            "t": entry(self.tightness),
            "F": entry(self.free_sequence),
        }
        if self.min_order is not None:
            result["m"] = entry(self.min_order)
        return result


def _set_label(space: FiniteSpace, mask: int) -> str:
    return "{" + ",".join(space.names_of(mask)) + "}"


def density(space: FiniteSpace) -> Invariant:
    """Return d(X) and a smallest dense set."""
    space.check_size()
    for subset in subsets_by_size(range(space.n)):
        mask = sum(1 << index for index in subset)
        if space.closure(mask) == space.full:
            return Invariant(len(subset), tuple(space.names_of(mask)))
    raise RuntimeError("The whole space is not dense in itself")


def is_discrete_subspace(space: FiniteSpace, mask: int) -> bool:
    return all(
        space.minimal_neighbourhoods[index] & mask == 1 << index
        for index in bits_of(mask)
    )


def spread(space: FiniteSpace) -> Invariant:
    """Return s(X) and a largest discrete subspace."""
    space.check_size()
    best = 0
    for subset in subsets_by_size(range(space.n)):
        mask = sum(1 << index for index in subset)
        if len(subset) > _count(best) and is_discrete_subspace(space, mask):
            best = mask
    return Invariant(_count(best), tuple(space.names_of(best)))


def _count(mask: int) -> int:
    return bin(mask).count("1")


def is_local_pibase(space: FiniteSpace, index: int, family: Sequence[int]) -> bool:
    """Return True if every open neighbourhood of the point contains a member of ``family``."""
    if not all(member and space.is_open(member) for member in family):
        return False
    return all(
        any(member & ~open_ == 0 for member in family)
        for open_ in space.opens
        if open_ >> index & 1
    )


def pi_character(space: FiniteSpace, index: int) -> Invariant:
    """Return the pi-character of the point ``index`` with a smallest local pi-base."""
    space.check_size()
    for size in range(1, len(space.nonempty_opens) + 1):
        for family in itertools.combinations(space.nonempty_opens, size):
            if is_local_pibase(space, index, family):
                return Invariant(size, tuple(_set_label(space, m) for m in family))
    raise RuntimeError(f"No local pi-base found at {space.points[index]}")


def tightness(space: FiniteSpace) -> Invariant:
    """Return t(X) with a witness point.

    In a finite space x is in cl(A) exactly when the least neighbourhood U_x meets
    A, so a single point of A already has x in its closure: t(X) is 1 for every
    non-empty space. The witness is a point x with the point of U_x that reaches it.
    """
    space.check_size()
    if not space.n:
        return Invariant(0, ())
    for index in range(space.n):
        neighbourhood = space.minimal_neighbourhoods[index]
        reaching = next(bits_of(neighbourhood))
        if space.closure(1 << reaching) >> index & 1:
            return Invariant(1, (space.points[index], space.points[reaching]))
    raise RuntimeError("A least neighbourhood does not reach its point")


def is_free_sequence(space: FiniteSpace, sequence: Sequence[str]) -> bool:
    """Return True if cl(P_k) and cl(P^k) are disjoint at every split k of ``sequence``.

    Parameters
    ----------
    space : FiniteSpace
        The space
    sequence : Sequence[str]
        Point names, without repetitions

    Returns
    -------
    bool
        True if ``sequence`` is a free sequence
    """
    indices = [space.index_of(name) for name in sequence]
    if len(set(indices)) != len(indices):
        return False
    return is_free_indices(space, indices)


def is_free_indices(space: FiniteSpace, indices: Sequence[int]) -> bool:
    """Same as ``is_free_sequence`` on point indices, assumed distinct."""
    for split in range(1, len(indices)):
        head = sum(1 << index for index in indices[:split])
        tail = sum(1 << index for index in indices[split:])
        if space.closure(head) & space.closure(tail):
            return False
    return True


def max_free_sequence(space: FiniteSpace) -> Tuple[str, ...]:
    """Return a longest free sequence of ``space``.

    Prefixes of free sequences are free, so the search extends free sequences
    point by point and abandons a branch as soon as it is not free.
    """
    space.check_size()
    best: List[int] = []

    def extend(sequence: List[int]):
        nonlocal best
        if len(sequence) > len(best):
            best = list(sequence)
        if len(best) == space.n:
            return
        for index in range(space.n):
            if index in sequence:
                continue
            sequence.append(index)
            if is_free_indices(space, sequence):
                extend(sequence)
            sequence.pop()

    extend([])
    return tuple(space.points[index] for index in best)


def free_sequence_number(space: FiniteSpace) -> Invariant:
    sequence = max_free_sequence(space)
    return Invariant(len(sequence), sequence)


def left_separated_order(space: FiniteSpace) -> Tuple[str, ...]:
    """Return an enumeration of a smallest dense set whose initial segments are relatively closed.

    Every dense set of size d(X) is tried, and for each one the orders are
    searched with backtracking on the relative closedness of the prefixes.
    """
    space.check_size()
    size = density(space).value
    for subset in itertools.combinations(range(space.n), size):
        mask = sum(1 << index for index in subset)
        if space.closure(mask) != space.full:
            continue
        order = _left_separated(space, mask, [])
        if order is not None:
            return tuple(space.points[index] for index in order)
    raise RuntimeError("No left-separated dense set of size d(X) was found")


def _left_separated(space: FiniteSpace, subspace: int, prefix: List[int]) -> Optional[List[int]]:
    prefix_mask = sum(1 << index for index in prefix)
    if prefix_mask == subspace:
        return list(prefix)
    for index in bits_of(subspace & ~prefix_mask):
        extended = prefix_mask | 1 << index
        if space.relative_closure(extended, subspace) != extended:
            continue
        prefix.append(index)
        found = _left_separated(space, subspace, prefix)
        prefix.pop()
        if found is not None:
            return found
    return None


def point_order(family: Iterable[int], index: int) -> int:
    """Return the number of members of ``family`` containing the point ``index``."""
    return sum(1 for member in family if member >> index & 1)


def family_order(space: FiniteSpace, family: Sequence[int]) -> int:
    return max((point_order(family, index) for index in range(space.n)), default=0)


def is_pibase(space: FiniteSpace, family: Sequence[int]) -> bool:
    """Return True if ``family`` is made of non-empty opens and every non-empty open contains one."""
    if not all(member and space.is_open(member) for member in family):
        return False
    return all(
        any(member & ~open_ == 0 for member in family)
        for open_ in space.nonempty_opens
    )


def min_pibase_family(space: FiniteSpace) -> Tuple[int, Tuple[int, ...]]:
    """Return m(X), the least maximal point order of a pi-base, with a pi-base attaining it.

    Subfamilies of the non-empty opens are searched by increasing size; the
    first pi-base of least order is returned.

    Returns
    -------
    int
        m(X), 0 for the empty space
    Tuple[int, ...]
        A pi-base of order m(X), as bit masks

    Raises
    ------
    SizeCapExceededError
        If the space has more than ``settings.PIBASE_FAMILY_CAP`` non-empty opens
    """
    space.check_size()
    opens = space.nonempty_opens
    if len(opens) > settings.PIBASE_FAMILY_CAP:
        raise SizeCapExceededError(
            f"The space has {len(opens)} non-empty open sets, the cap for the "
            f"pi-base search is {settings.PIBASE_FAMILY_CAP}"
        )
    best_order, best_family = None, ()
    for family in subsets_by_size(opens):
        if not is_pibase(space, family):
            continue
        order = family_order(space, family)
        if best_order is None or order < best_order:
            best_order, best_family = order, family
    # the empty family is a pi-base of the empty space
    return (best_order or 0), best_family


def min_pibase_order(space: FiniteSpace) -> Invariant:
    """Return m(X) with a pi-base attaining it (see ``min_pibase_family``)."""
    order, family = min_pibase_family(space)
    return Invariant(order, tuple(_set_label(space, member) for member in family))


@dataclass(frozen=True)
class StarReport:
    """
    Density, spread and m(X) compared in their finite readings.

    ``literal`` is d <= m * s, ``successor`` is d <= (m + 1) * s, and
    ``star_premise`` is max(m + 1, s) < d, the hypothesis under which a space
    cannot have a point-m pi-base.
    """

    density: int
    spread: int
    min_order: int

    @property
    def literal(self) -> bool:
        return self.density <= self.min_order * self.spread

    @property
    def successor(self) -> bool:
        return self.density <= (self.min_order + 1) * self.spread

    @property
    def star_premise(self) -> bool:
        return max(self.min_order + 1, self.spread) < self.density

    def to_dict(self) -> dict:
        return {
            "d": self.density,
            "s": self.spread,
            "m": self.min_order,
            "d<=m*s": self.literal,
            "d<=(m+1)*s": self.successor,
            "star_premise": self.star_premise,
        }


def star_report(space: FiniteSpace) -> StarReport:
    return StarReport(
        density=density(space).value,
        spread=spread(space).value,
        min_order=min_pibase_order(space).value,
    )


def invariants(space: FiniteSpace, with_min_order: bool = False) -> InvariantReport:
    """Return the cardinal invariants of ``space`` with their witnesses.

    Parameters
    ----------
    space : FiniteSpace
        The space
    with_min_order : bool, optional
        Also compute m(X), which searches all subfamilies of the opens. Default
        is False.

    Returns
    -------
    InvariantReport
        The invariants

    Raises
    ------
    SizeCapExceededError
        If the space is above the configured caps
    """
    space.check_size()
    report = InvariantReport(
        size=space.n,
        density=density(space),
        spread=spread(space),
        pi_character={
            name: pi_character(space, index) for index, name in enumerate(space.points)
        },
        tightness=tightness(space),
        free_sequence=free_sequence_number(space),
        min_order=min_pibase_order(space) if with_min_order else None,
    )
    logger.debug("Invariants of %s: %s", space, report)
    return report


def _min_order_row(space: FiniteSpace) -> dict:
    order, family = min_pibase_family(space)
    star = StarReport(
        density=density(space).value, spread=spread(space).value, min_order=order
    )
    row = {
        "topology": str(space),
        "pibase": " ".join(_set_label(space, member) for member in family),
        "witness_is_pibase": is_pibase(space, family),
    }
    row.update(star.to_dict())
    return row


def min_order_table(spaces: Iterable[FiniteSpace], n_jobs: int = settings.N_JOBS) -> pd.DataFrame:
    """Return one row of (d, s, m) and the finite readings of d <= m * s per space.

    Parameters
    ----------
    spaces : Iterable[FiniteSpace]
        Spaces to tabulate
    n_jobs : int, optional
        Number of joblib jobs. Default is ``settings.N_JOBS``.

    Returns
    -------
    pd.DataFrame
        One row per space, in input order
    """
    rows = Parallel(n_jobs=n_jobs)(delayed(_min_order_row)(space) for space in spaces)
    return pd.DataFrame(rows)
