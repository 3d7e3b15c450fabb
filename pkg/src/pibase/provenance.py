# encoding: utf-8

import collections
from dataclasses import dataclass
from typing import Any, List, Union

from typing_extensions import Literal

Branch = Literal["pattern", "dense"]


@dataclass(frozen=True)
class StageRecord:
    """
    Decision taken at one stage of a pi-base construction.

    Parameters
    ----------
    stage : int
        Index of the stage
    point : str
        Name of the chosen point p_stage
    branch : Branch
        "pattern" when the point was picked in the intersection of the closures
        named by the pattern, "dense" when it is the first point of the dense
        enumeration outside cl(P_stage)
    pattern : str
        The pattern phi(stage) that was consulted
    reason : str
        Why the pattern branch was not taken, empty when it was
    width : int
        Number of members of the local pi-base chosen at this stage
    """

    stage: int
    point: str
    branch: Branch
    pattern: str
    reason: str
    width: int

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "point": self.point,
            "branch": self.branch,
            "pattern": self.pattern,
            "reason": self.reason,
            "width": self.width,
        }


class ProvenanceLog:
    def __init__(self):
        self._records = []
        self._records_by_point = collections.defaultdict(list)

    def stages_with_branch(self, branch: Branch) -> List[int]:
        """Return the stages where rule 1 took ``branch``, in increasing order."""
        return [record.stage for record in self._records if record.branch == branch]

    def to_records(self) -> List[dict]:
        return [record.to_dict() for record in self._records]

    def __eq__(self, other: Any) -> bool:
        """Return True if ``other`` is a ProvenanceLog with the same records, in the same order."""
        if not isinstance(other, ProvenanceLog):
            return False
        return self._records == other._records

    def __getitem__(self, label: Union[int, str]) -> Union[StageRecord, List[StageRecord]]:
        """Retrieve StageRecord elements.

        Parameters
        ----------
        label : Union[int, str]
            If int: the record of stage ``label``. If str: ``label`` is a point
            name and all the records of the stages that chose it are returned.

        Returns
        -------
        Union[StageRecord, List[StageRecord]]
            Requested record(s)

        Raises
        ------
        TypeError
            If ``label`` is not either an integer or a string.
        """
        if isinstance(label, int):
            return self._records[label]
        elif isinstance(label, str):
            return self._records_by_point[label]
        else:
            raise TypeError(
                f"Cannot get StageRecord with a label of type {type(label).__name__}"
            )

    def __iadd__(self, record: StageRecord):
        if record.stage != len(self._records):
            raise RuntimeError(
                f"Stage {record.stage} recorded after {len(self._records)} stages"
            )
        self._records.append(record)
        self._records_by_point[record.point].append(record)
        return self

    def __iter__(self):
        for record in self._records:
            yield record

    def __len__(self):
        return len(self._records)

    def __repr__(self) -> str:
        return str(self._records)

    def __str__(self) -> str:
        return str(self._records)
