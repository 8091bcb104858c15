#! /usr/bin/env python3
"""
A module providing the verification report records and a container class
for them.

"""
from __future__ import annotations

import collections
import dataclasses
from typing import Any, Dict, Iterable, List, Optional, Sequence, overload


@dataclasses.dataclass(eq=True, frozen=True)
class CheckReport:
    """
    The outcome of one verification check: how many instances were
    examined and the messages of any that failed.

    """
    __slots__ = ("name", "checked", "failures",)

    name: str
    checked: int
    failures: Sequence[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    @classmethod
    def from_failures(cls, name: str, checked: int,
                      failures: Iterable[str]) -> CheckReport:
        return cls(name, checked, tuple(failures))

    def to_json(self) -> Dict[str, Any]:
        return {"check": self.name, "passed": self.passed,
                "checked": self.checked, "failures": list(self.failures)}


class ReportContainer(collections.UserList):  # pylint: disable=too-many-ancestors
    """
    A class to provide a list of CheckReports with summary queries. The
    class builds upon the UserList class.

    """
    def __init__(self, reports: Optional[Iterable[CheckReport]] = None):
        """
        Initialize the instance of the class.

        """
        super().__init__()
        self.data = list(reports) if reports is not None else []

    @overload
    def __getitem__(self, idx: int) -> CheckReport: ...

    @overload
    def __getitem__(self, idx: slice) -> ReportContainer: ...

    def __getitem__(self, idx):
        res = self.data[idx]
        return ReportContainer(res) if isinstance(res, list) else res

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.data)

    def failed(self) -> ReportContainer:
        """
        Retrieves the reports with failures.

        """
        return ReportContainer([r for r in self.data if not r.passed])

    def get_by_name(self, name: str) -> ReportContainer:
        return ReportContainer([r for r in self.data if r.name == name])

    def summary(self) -> Dict[str, List[int]]:
        """
        Aggregates the reports by check name.

        Returns:
            A map of check name to [checked, failed] counts.

        """
        totals: Dict[str, List[int]] = collections.OrderedDict()
        for report in self.data:
            entry = totals.setdefault(report.name, [0, 0])
            entry[0] += report.checked
            entry[1] += len(report.failures)
        return totals
