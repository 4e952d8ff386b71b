"""Budget guards for group enumeration and table construction.

Defaults are sized so that A1-A4, B2-B5, D4, F4, H3 and I2(m), m <= 30,
complete without any flags.  Larger groups (B6, E6, E7, E8, H4) require an
explicit budget from the caller; exceeding a limit raises BudgetExceeded
before any cache state can be corrupted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded

DEFAULT_MAX_ELEMENTS = 4000
DEFAULT_MAX_H_ENTRIES = 50_000_000
DEFAULT_WALL_CLOCK_SECONDS = 3600


@dataclass
class Budget:
    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_h_entries: int = DEFAULT_MAX_H_ENTRIES
    wall_clock_seconds: int = DEFAULT_WALL_CLOCK_SECONDS
    _h_entries: int = field(default=0, repr=False)
    _t0: float = field(default_factory=time.monotonic, repr=False)

    def __post_init__(self):
        if min(self.max_elements, self.max_h_entries, self.wall_clock_seconds) <= 0:
            raise ValueError("budget limits must be positive")

    def check_elements(self, count: int, what: str = "group") -> None:
        if count > self.max_elements:
            raise BudgetExceeded(
                f"{what} needs {count} elements, budget allows {self.max_elements}"
            )

    def charge_h(self, count: int = 1) -> None:
        self._h_entries += count
        if self._h_entries > self.max_h_entries:
            raise BudgetExceeded(
                f"h-table budget of {self.max_h_entries} entries exhausted"
            )

    def check_clock(self) -> None:
        if time.monotonic() - self._t0 > self.wall_clock_seconds:
            raise BudgetExceeded(
                f"wall clock budget of {self.wall_clock_seconds}s exhausted"
            )

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(10**12, 10**15, 10**9)
