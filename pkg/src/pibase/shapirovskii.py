# encoding: utf-8

"""Stage by stage construction of pi-bases indexed by a dense set, and the checker of their conditions.

At stage k, with P_k = {p_0, ..., p_(k-1)} already chosen:

1. the canonical function at w names a finite pattern phi(k) of earlier
   members S_(a, i). If the closures of those members meet, and their
   intersection misses cl(P_k), p_k is picked in the intersection. Otherwise
   p_k is the first point of the dense enumeration outside cl(P_k).
2. S_(k, 0), S_(k, 1), ... is a local pi-base at p_k whose closures miss
   cl(P_k).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Iterator, List, Sequence, Tuple

from typing_extensions import Literal

from . import ordinal
from .canonical_phi import phi_eval
from .exceptions import PreconditionError, RegularityError, StepBudgetExhaustedError
from .ordinal import CardinalLevel
from .pairing import FinitePattern
from .provenance import ProvenanceLog, StageRecord
from .space_oracles import SpaceOracle

logger = logging.getLogger(__name__)

ConditionStatus = Literal["pass", "fail", "vacuous"]

DEFAULT_MAX_STEPS = 100


@dataclass(frozen=True)
class PiBasePrefix:
    """
    The first stages of a pi-base construction.

    Parameters
    ----------
    oracle_name : str
        Name of the space the prefix was built on
    kappa_analog : int
        Largest number of members of a local pi-base
    points : Tuple
        The chosen points p_0, p_1, ...
    families : Tuple[Tuple, ...]
        ``families[a]`` is the local pi-base S_(a, 0), S_(a, 1), ... at p_a
    provenance : ProvenanceLog
        The rule 1 decision of every stage
    complete : bool
        True when the chosen points are dense, False for a truncated prefix
    """

    oracle_name: str
    kappa_analog: int
    points: Tuple[Any, ...]
    families: Tuple[Tuple[Any, ...], ...]
    provenance: ProvenanceLog = field(compare=False)
    complete: bool

    @property
    def n_stages(self) -> int:
        return len(self.points)

    def width(self, alpha: int) -> int:
        return len(self.families[alpha])

    def member(self, alpha: int, index: int) -> Any:
        """Return S_(alpha, index); local pi-bases narrower than kappa repeat their members."""
        family = self.families[alpha]
        return family[index % len(family)]

    def to_dict(self, oracle: SpaceOracle) -> dict:
        return {
            "space": self.oracle_name,
            "kappa_analog": self.kappa_analog,
            "complete": self.complete,
            "stages": [
                dict(
                    record.to_dict(),
                    members=[oracle.describe(member) for member in self.families[alpha]],
                )
                for alpha, record in enumerate(self.provenance)
            ],
        }


class _DenseCursor:
    """First point of a dense enumeration outside a growing closed set.

    Closed sets only grow during a build, so the cursor never moves back.
    """

    def __init__(self, enumeration: Iterator[Any]):
        self._enumeration = enumeration
        self._current = None
        self._exhausted = False
        self._advance()

    def _advance(self):
        try:
            self._current = next(self._enumeration)
        except StopIteration:
            self._current, self._exhausted = None, True

    def first_outside(self, oracle: SpaceOracle, closed: Any) -> Any:
        while not self._exhausted and oracle.contains(closed, self._current):
            self._advance()
        return None if self._exhausted else self._current

    @property
    def exhausted(self) -> bool:
        return self._exhausted


def _pattern_point(
    oracle: SpaceOracle,
    pattern: FinitePattern,
    families: Sequence[Tuple[Any, ...]],
    closed: Any,
) -> Tuple[Any, str]:
    if pattern.is_empty:
        return None, "empty pattern"
    closures = []
    for index_pair in pattern:
        alpha, index = index_pair.first.to_int(), index_pair.second.to_int()
        family = families[alpha]
        closures.append(oracle.closure(family[index % len(family)]))
    meet = oracle.intersect_all(closures)
    if oracle.is_empty(meet):
        return None, "the closures named by the pattern do not meet"
    if not oracle.is_empty(oracle.intersect(meet, closed)):
        return None, "the intersection of the closures meets cl(P)"
    return oracle.pick(meet), ""


def shapirovskii_build(
    oracle: SpaceOracle,
    kappa_analog: int = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    require_complete: bool = False,
    best_effort: bool = False,
    max_level: int = None,
) -> PiBasePrefix:
    """Build the first ``max_steps`` stages of a pi-base of the space of ``oracle``.

    The build stops early, with ``complete = True``, as soon as every point of
    the dense enumeration is in the closure of the chosen points.

    Parameters
    ----------
    oracle : SpaceOracle
        The space
    kappa_analog : int, optional
        Largest number of members of a local pi-base. Default is None, meaning
        ``oracle.pi_character_analog``
    max_steps : int, optional
        Number of stages to build at most. Default is 100.
    require_complete : bool, optional
        Raise if the points are not dense after ``max_steps`` stages. Default is
        False.
    best_effort : bool, optional
        Accept non-regular spaces; local pi-bases then may have closures meeting
        cl(P_k). Default is False.
    max_level : int, optional
        Highest atom level used to evaluate the canonical function. Default is
        None, meaning ``settings.max_level()``

    Returns
    -------
    PiBasePrefix
        The built stages with their provenance

    Raises
    ------
    RegularityError
        If the space is not regular and ``best_effort`` is False, or no local
        pi-base with the required closures exists
    StepBudgetExhaustedError
        If ``require_complete`` and the points are not dense after ``max_steps``
    OracleError
        If the oracle cannot describe a local pi-base of a chosen point
    """
    if max_steps < 0:
        raise PreconditionError(f"max_steps must be a natural number, found {max_steps}")
    if not oracle.is_regular:
        if not best_effort:
            raise RegularityError(f"The space {oracle.name} is not regular")
        logger.warning(
            "%s is not regular, building with best effort: local pi-bases may have "
            "closures meeting the closure of the previous points",
            oracle.name,
        )
    width = oracle.pi_character_analog if kappa_analog is None else kappa_analog
    if width < 1:
        raise PreconditionError(f"kappa_analog must be positive, found {width}")
    kappa = CardinalLevel.aleph(0, max_level=max_level)

    cursor = _DenseCursor(oracle.dense_enumeration())
    points: List[Any] = []
    families: List[Tuple[Any, ...]] = []
    provenance = ProvenanceLog()
    complete = False
    for stage in range(max_steps + 1):
        closed = oracle.closure_of_points(points)
        if cursor.first_outside(oracle, closed) is None:
            complete = True
            break
        if stage == max_steps:
            break
        pattern = phi_eval(kappa, ordinal.from_int(stage), max_level=max_level)
        point, reason = _pattern_point(oracle, pattern, families, closed)
        branch = "pattern"
        if point is None:
            point, branch = cursor.first_outside(oracle, closed), "dense"
        members = oracle.local_pibase(point, closed, width, best_effort=best_effort)
        points.append(point)
        families.append(tuple(members))
        provenance += StageRecord(
            stage=stage,
            point=oracle.point_name(point),
            branch=branch,
            pattern=str(pattern),
            reason=reason,
            width=len(members),
        )
        logger.debug(
            "Stage %d: %s by the %s branch, pattern %s", stage, point, branch, pattern
        )

    if not complete:
        if require_complete:
            raise StepBudgetExhaustedError(
                f"The chosen points are not dense in {oracle.name} after {max_steps} stages"
            )
        logger.warning(
            "Build on %s truncated after %d stages, the points are not dense yet",
            oracle.name,
            max_steps,
        )
    logger.info("Built %d stages on %s", len(points), oracle.name)
    return PiBasePrefix(
        oracle_name=oracle.name,
        kappa_analog=width,
        points=tuple(points),
        families=tuple(families),
        provenance=provenance,
        complete=complete,
    )


# =====================
# =  CONDITIONS       =
# =====================


@dataclass
class ConditionResult:
    """Outcome of one condition on a prefix; ``violations`` carry the failing indices."""

    name: str
    status: ConditionStatus
    method: str
    checked: int
    violations: List[dict] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "condition": self.name,
            "status": self.status,
            "method": self.method,
            "checked": self.checked,
            "violations": list(self.violations),
            "note": self.note,
        }


@dataclass
class Def21Report:
    space: str
    n_stages: int
    conditions: List[ConditionResult]

    def __getitem__(self, name: str) -> ConditionResult:
        for condition in self.conditions:
            if condition.name == name:
                return condition
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(condition.status != "fail" for condition in self.conditions)

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "n_stages": self.n_stages,
            "passed": self.passed,
            "conditions": [condition.to_dict() for condition in self.conditions],
        }


def _status(checked: int, violations: List[dict]) -> ConditionStatus:
    if violations:
        return "fail"
    return "pass" if checked else "vacuous"


def _check_local_pibases(prefix: PiBasePrefix, oracle: SpaceOracle) -> ConditionResult:
    violations = []
    checked = 0
    for alpha, point in enumerate(prefix.points):
        family = prefix.families[alpha]
        for index, member in enumerate(family):
            if oracle.is_empty(member) or not oracle.is_open(member):
                violations.append(
                    {
                        "alpha": alpha,
                        "i": index,
                        "member": oracle.describe(member),
                        "problem": "not a non-empty open set",
                    }
                )
        for probe in oracle.probes(point, prefix.width(alpha)):
            checked += 1
            if not any(oracle.is_subset(member, probe) for member in family):
                violations.append(
                    {
                        "alpha": alpha,
                        "point": oracle.point_name(point),
                        "neighbourhood": oracle.describe(probe),
                        "problem": "contains no member of the local pi-base",
                    }
                )
    method = "exact" if oracle.exact_probes else "probes"
    note = "" if oracle.exact_probes else oracle.probe_note
    return ConditionResult("a", _status(checked, violations), method, checked, violations, note)


def _check_separation(prefix: PiBasePrefix, oracle: SpaceOracle) -> ConditionResult:
    violations = []
    checked = 0
    member_closures = [
        [oracle.closure(member) for member in family] for family in prefix.families
    ]
    for alpha in range(prefix.n_stages):
        head = oracle.closure_of_points(prefix.points[:alpha])
        for beta in range(alpha, prefix.n_stages):
            for index, closure in enumerate(member_closures[beta]):
                checked += 1
                meet = oracle.intersect(head, closure)
                if not oracle.is_empty(meet):
                    violations.append(
                        {
                            "alpha": alpha,
                            "beta": beta,
                            "i": index,
                            "meet": oracle.describe(meet),
                        }
                    )
    return ConditionResult("b", _status(checked, violations), "exact", checked, violations)


def def21_check(prefix: PiBasePrefix, oracle: SpaceOracle) -> Def21Report:
    """Check the conditions of a pi-base indexed by a dense set on the built stages.

    (a) every S_(a, 0), S_(a, 1), ... is a local pi-base at p_a: exactly on
    finite spaces, on sampled neighbourhoods otherwise. (b) cl(P_a) misses the
    closure of every S_(b, i) with a <= b: exactly. (c) and (c*) only speak
    about stages that are multiples of w (of w_1 for (c*)); below w the only
    one is 0, where the pattern range [gamma(0), 0) is empty, so they are
    reported as vacuous.

    Parameters
    ----------
    prefix : PiBasePrefix
        Prefix built on the space of ``oracle``
    oracle : SpaceOracle
        The space

    Returns
    -------
    Def21Report
        One result per condition, with the violations found
    """
    if prefix.oracle_name != oracle.name:
        logger.warning(
            "Checking a prefix built on %s against %s", prefix.oracle_name, oracle.name
        )
    truncation_note = (
        f"vacuous at this truncation: among the {prefix.n_stages} stage indices "
        "the only multiple of w is 0, whose pattern range is empty"
    )
    conditions = [
        _check_local_pibases(prefix, oracle),
        _check_separation(prefix, oracle),
        ConditionResult("c", "vacuous", "symbolic", 0, [], truncation_note),
        ConditionResult("c*", "vacuous", "symbolic", 0, [], truncation_note),
    ]
    report = Def21Report(oracle.name, prefix.n_stages, conditions)
    for condition in conditions:
        if condition.status == "fail":
            logger.warning(
                "Condition (%s) fails at %d places", condition.name, len(condition.violations)
            )
    return report
