"""Online trace slicing: one pass, one table, all slices at once.

The table maps bindings to slices.  It starts with just the empty binding
(mapped to the empty slice) and, per incoming event with binding ``b``,
extends every existing entry that is compatible with ``b``: each join
``b ⊔ existing`` receives the slice of the most informative entry at or below
it, plus the new event.  After feeding a whole trace, the table's domain is
exactly the join closure of the bindings seen, and arbitrary bindings — also
ones outside the domain — can be answered by one lookup.
"""

from __future__ import annotations

from typing import Iterable

from .bindings import (
    DEFAULT_DOMAIN_CAP,
    EMPTY,
    InstanceSet,
    ParamInstance,
    joins_with,
    max_below,
    ordered,
)
from .events import ParametricEvent

__all__ = ["SliceTable"]


class SliceTable:
    """Incrementally maintained map from bindings to slices.

    Invariants (checked by the test suite): the domain is join-closed and
    contains the empty binding, and every entry equals the definitional slice
    of the events fed so far.

    ``unsafe_no_snapshot`` disables the pre-event snapshot discipline: updates
    are then applied one at a time against the *growing* table, so a fresh
    join can wrongly source a slice that already absorbed the current event
    (double-append).  The flag exists so the selfcheck provably detects that
    corruption; never enable it otherwise.
    """

    def __init__(
        self, *, cap: int = DEFAULT_DOMAIN_CAP, unsafe_no_snapshot: bool = False
    ):
        self._table: dict[ParamInstance, tuple[str, ...]] = {EMPTY: ()}
        self._cap = cap
        self._unsafe_no_snapshot = unsafe_no_snapshot
        self.events_fed = 0

    # -- feeding -------------------------------------------------------------

    def feed(self, event: ParametricEvent) -> None:
        """Extend the table with one event."""
        table = self._table
        binding = event.instance
        candidates = joins_with(binding, table.keys())
        if self._unsafe_no_snapshot:
            # Deliberately broken variant: consults the live table while
            # inserting, so a candidate can read another candidate's
            # already-updated slice.
            for candidate in ordered(candidates):
                source = max_below(candidate, table, self._cap)
                table[candidate] = table[source] + (event.name,)
        else:
            updates = {}
            for candidate in candidates:
                source = (
                    candidate
                    if candidate in table
                    else max_below(candidate, table, self._cap)
                )
                updates[candidate] = table[source] + (event.name,)
            table.update(updates)
        self.events_fed += 1

    def feed_all(self, trace: Iterable[ParametricEvent]) -> "SliceTable":
        for event in trace:
            self.feed(event)
        return self

    # -- queries --------------------------------------------------------------

    def instances(self) -> InstanceSet:
        """The table domain (join-closed, deterministic iteration order)."""
        return InstanceSet(self._table.keys())

    def __contains__(self, binding: ParamInstance) -> bool:
        return binding in self._table

    def __len__(self) -> int:
        return len(self._table)

    def slice_of(self, binding: ParamInstance) -> tuple[str, ...]:
        """Entry for a binding that is present in the table."""
        return self._table[binding]

    def lookup(self, binding: ParamInstance) -> tuple[str, ...]:
        """Slice for an arbitrary binding, also ones outside the table.

        The answer is the entry of the most informative table binding at or
        below the query — which equals the definitional slice for the query.
        """
        return self._table[max_below(binding, self._table, self._cap)]

    def as_dict(self) -> dict[ParamInstance, tuple[str, ...]]:
        return dict(self._table)
