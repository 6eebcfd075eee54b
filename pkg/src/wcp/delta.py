"""Delta strategies: the order in which flow-change quanta are tried.

Values range over 1 .. 2 * max cable capacity. A strategy is exhausted
exactly when every possible value has been used since the last update of
the flow; the solver then returns the current flow.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

DELTA_KINDS = (
    "inc",
    "dec",
    "inc-dec",
    "random",
    "stay-inc",
    "stay-dec",
    "stay-inc-dec",
    "stay-random",
)


@dataclass
class DeltaStrategy:
    kind: str
    delta_max: int
    seed: int = 0
    current: int = field(init=False)
    _rng: random.Random = field(init=False, repr=False)
    _used: set[int] = field(init=False, default_factory=set)
    _direction: int = field(init=False, default=1)  # for inc-dec variants
    _last_cancel: int = field(init=False, default=1)

    def __post_init__(self):
        if self.kind not in DELTA_KINDS:
            raise ValueError(f"unknown delta strategy {self.kind!r}")
        if self.delta_max < 1:
            raise ValueError("delta_max must be >= 1")
        self._rng = random.Random(self.seed)
        if self.kind in ("dec", "stay-dec"):
            self.current = self.delta_max
        elif self.kind in ("random", "stay-random"):
            self.current = self._rng.randint(1, self.delta_max)
        else:
            self.current = 1
        self._used = {self.current}

    @property
    def stays(self) -> bool:
        return self.kind.startswith("stay-")

    def next(self, found: bool) -> int | None:
        """Next delta value, or None when exhausted."""
        if found:
            self._used.clear()
            if self.stays:
                # Retain the current value and rerun on the new flow.
                if self.kind == "stay-inc-dec":
                    self._last_cancel = self.current
                    self._direction = -1
                self._used.add(self.current)
                return self.current
            if self.kind == "inc":
                self.current = 1
            elif self.kind == "dec":
                self.current = self.delta_max
            elif self.kind == "inc-dec":
                self._last_cancel = self.current
                self._direction = -1
                self.current = self.current - 1 if self.current > 1 else self._resume_up()
            else:  # random
                self.current = self._rng.randint(1, self.delta_max)
            self._used.add(self.current)
            return self.current

        base = self.kind.removeprefix("stay-")
        if base == "inc":
            if self.stays:
                # Wrap so every value is tried before declaring exhaustion.
                if len(self._used) >= self.delta_max:
                    return None
                self.current = self.current + 1 if self.current < self.delta_max else 1
            else:
                if self.current >= self.delta_max:
                    return None
                self.current += 1
        elif base == "dec":
            if self.stays:
                if len(self._used) >= self.delta_max:
                    return None
                self.current = self.current - 1 if self.current > 1 else self.delta_max
            else:
                if self.current <= 1:
                    return None
                self.current -= 1
        elif base == "inc-dec":
            if self._direction < 0:
                self.current = self.current - 1 if self.current > 1 else self._resume_up()
            else:
                if self.current >= self.delta_max:
                    return None
                self.current += 1
            if self.stays and len(self._used) >= self.delta_max:
                return None
        else:  # random
            remaining = [d for d in range(1, self.delta_max + 1) if d not in self._used]
            if not remaining:
                return None
            self.current = remaining[self._rng.randrange(len(remaining))]
        self._used.add(self.current)
        return self.current

    def _resume_up(self) -> int:
        # Skip values already tried after the last cancellation: resume
        # the incrementation at the last canceled delta.
        self._direction = 1
        return self._last_cancel
