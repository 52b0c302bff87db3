"""Parametric monitoring: one base monitor state per observed binding.

Feeding a parameter-carrying event advances the monitor state of every
binding whose slice the event belongs to.  Two engines implement the same
observable behaviour:

* :class:`BaselineMonitor` recomputes, per event, the full set of affected
  bindings by joining the event's binding with every table entry — simple,
  and the semantic yardstick.
* :class:`IndexedMonitor` additionally maintains, for every binding, the set
  of strictly more informative *defined* bindings.  An event for an
  already-known binding then touches exactly the states it can affect,
  without scanning the table.

Both produce identical state tables, verdicts and report streams, which the
test suite checks event by event against each other and against the
definitional slice semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bindings import (
    DEFAULT_DOMAIN_CAP,
    EMPTY,
    InstanceSet,
    ParamInstance,
    binding_order,
    joins_with,
    max_below,
    ordered,
    strict_subinstances_desc,
)
from .events import ParametricEvent, binding_closure, slice_trace
from .machines import Machine, Verdict

__all__ = [
    "BaselineMonitor",
    "IndexedMonitor",
    "RunStats",
    "VerdictReport",
    "definitional_verdicts",
]


@dataclass(frozen=True)
class VerdictReport:
    """One report line: where, what, and for which binding.

    ``index`` is the 1-based position of the triggering event in the trace.
    """

    index: int
    verdict: object
    instance: ParamInstance
    event_name: str

    def render(self) -> str:
        return "%d\t%s\t%s\t%s" % (
            self.index,
            self.verdict,
            self.instance.encode(),
            self.event_name,
        )


@dataclass
class RunStats:
    """Per-run work counters (used by the benchmark and the cost tests).

    ``touched_per_event[i]`` is the number of monitor states stepped by event
    ``i`` (0-based); ``compat_per_event[i]`` counts binding-compatibility
    checks performed while indexing that event.  ``monitor_steps`` and
    ``compat_checks`` are the respective totals, ``defines`` counts new table
    entries, and ``peak_instances`` tracks the largest table size reached.
    """

    events: int = 0
    monitor_steps: int = 0
    compat_checks: int = 0
    defines: int = 0
    peak_instances: int = 0
    touched_per_event: list[int] = field(default_factory=list)
    compat_per_event: list[int] = field(default_factory=list)


class _EngineBase:
    """State shared by both engines: tables, triggers, report policy."""

    def __init__(
        self,
        machine: Machine,
        *,
        trigger: Iterable[Verdict] = (),
        report_every: bool = False,
        cap: int = DEFAULT_DOMAIN_CAP,
    ):
        self.machine = machine
        self.trigger = frozenset(trigger)
        self.report_every = report_every
        self.cap = cap
        self.delta: dict[ParamInstance, object] = {EMPTY: machine.initial()}
        self.gamma: dict[ParamInstance, object] = {}
        self.stats = RunStats(peak_instances=1)

    def instances(self) -> InstanceSet:
        return InstanceSet(self.delta.keys())

    def verdict_of(self, binding: ParamInstance):
        """Latest verdict recorded for a binding (None when never touched)."""
        return self.gamma.get(binding)

    def feed_all(self, trace: Iterable[ParametricEvent]) -> list[VerdictReport]:
        reports: list[VerdictReport] = []
        for event in trace:
            reports.extend(self.feed(event))
        return reports

    def _advance(
        self, touched: Iterable[ParamInstance], event: ParametricEvent
    ) -> list[VerdictReport]:
        """Step every touched state, refresh verdicts, emit report lines.

        A verdict is reported when it belongs to the trigger set and differs
        from the binding's previously recorded verdict (so a machine parked
        in a verdict state reports once, not on every event) — unless
        ``report_every`` asked for the undeduplicated stream.
        """
        machine = self.machine
        delta = self.delta
        gamma = self.gamma
        stats = self.stats
        index = stats.events
        reports: list[VerdictReport] = []
        count = 0
        for binding in touched:
            delta[binding] = machine.step(delta[binding], event.name)
            verdict = machine.output(delta[binding])
            previous = gamma.get(binding, _NEVER)
            gamma[binding] = verdict
            count += 1
            if verdict in self.trigger and (self.report_every or verdict != previous):
                reports.append(VerdictReport(index, verdict, binding, event.name))
        stats.monitor_steps += count
        stats.touched_per_event.append(count)
        if len(delta) > stats.peak_instances:
            stats.peak_instances = len(delta)
        return reports


#: Sentinel distinguishing "never evaluated" from any real verdict.
_NEVER = object()


class BaselineMonitor(_EngineBase):
    """Join-everything engine: correct, transparent, table-scan per event."""

    def feed(self, event: ParametricEvent) -> list[VerdictReport]:
        self.stats.events += 1
        delta = self.delta
        binding = event.instance
        # Affected bindings: every defined join of the event's binding with a
        # table entry (the empty binding is always present, so the event's own
        # binding is always included).  This is the full-table scan the
        # indexed engine exists to avoid; count it as such.
        join_attempts = len(delta)
        candidates = joins_with(binding, delta.keys())
        sources: dict[ParamInstance, object] = {}
        for candidate in candidates:
            src = (
                candidate
                if candidate in delta
                else max_below(candidate, delta, self.cap)
            )
            sources[candidate] = delta[src]
        # Apply after all reads: updates must not see each other.
        for candidate, state in sources.items():
            delta[candidate] = state
        self.stats.compat_checks += join_attempts
        self.stats.compat_per_event.append(join_attempts)
        return self._advance(ordered(candidates), event)


class IndexedMonitor(_EngineBase):
    """Index-guided engine: touches only states the event can affect.

    For every binding ``b`` (defined or not) the index holds the defined
    bindings strictly more informative than ``b``.  A known event binding
    then advances exactly itself plus its index entry.  A fresh event binding
    is first seeded from its most informative defined sub-binding, and joined
    against the indexed neighbours of each of its sub-bindings so every
    now-affected combination exists before stepping.

    ``skip_join_phase`` disables that join step — a deliberately broken
    variant kept so the differential selfcheck demonstrably catches the
    resulting missed combinations.  Never enable it otherwise.
    """

    def __init__(
        self,
        machine: Machine,
        *,
        trigger: Iterable[Verdict] = (),
        report_every: bool = False,
        cap: int = DEFAULT_DOMAIN_CAP,
        skip_join_phase: bool = False,
    ):
        super().__init__(
            machine, trigger=trigger, report_every=report_every, cap=cap
        )
        self.extensions: dict[ParamInstance, set[ParamInstance]] = {}
        self.skip_join_phase = skip_join_phase

    def feed(self, event: ParametricEvent) -> list[VerdictReport]:
        self.stats.events += 1
        delta = self.delta
        binding = event.instance
        compat_checks = 0
        if binding not in delta:
            # Seed the new binding from the most informative defined
            # sub-binding (unique because the table domain is join-closed).
            for sub in strict_subinstances_desc(binding, self.cap):
                if sub in delta:
                    self._define(binding, sub)
                    break
            if not self.skip_join_phase:
                # Every defined neighbour compatible with the event's binding
                # spawns a joined binding, seeded from that neighbour.  Walking
                # sub-bindings most-informative-first (and each index entry
                # likewise) guarantees the first compatible source seen for a
                # given join is the most informative one, so the copied state
                # is the right one.  The index entry is snapshotted: fresh
                # joins enter it mid-loop, but their join with the event
                # binding is themselves, already defined, so skipping them is
                # sound.
                for sub in strict_subinstances_desc(binding, self.cap):
                    neighbours = self.extensions.get(sub)
                    if not neighbours:
                        continue
                    for candidate in sorted(
                        neighbours, key=_desc_binding_order
                    ):
                        compat_checks += 1
                        if candidate.compatible(binding):
                            joined = candidate.join(binding)
                            if joined not in delta:
                                self._define(joined, candidate)
        touched = [binding]
        touched.extend(self.extensions.get(binding, ()))
        touched.sort(key=binding_order)
        self.stats.compat_checks += compat_checks
        self.stats.compat_per_event.append(compat_checks)
        return self._advance(touched, event)

    def _define(self, binding: ParamInstance, source: ParamInstance) -> None:
        """Create a table entry as a copy of a strictly less informative one."""
        delta = self.delta
        assert binding not in delta, "binding already defined"
        assert source in delta, "copy source must be defined"
        assert source != binding and source.less_informative(binding), (
            "copy source must be strictly less informative"
        )
        delta[binding] = delta[source]
        for sub in strict_subinstances_desc(binding, self.cap):
            self.extensions.setdefault(sub, set()).add(binding)
        self.stats.defines += 1

    def check_index(self) -> None:
        """Assert the index invariant, for tests (quadratic in table size).

        Every index entry — including entries for bindings that are not
        themselves defined — must hold exactly the defined bindings strictly
        more informative than its key.
        """
        defined = list(self.delta.keys())
        for sub, members in self.extensions.items():
            expected = {
                b for b in defined if sub != b and sub.less_informative(b)
            }
            assert members == expected, (
                "index entry for %r is %r, expected %r" % (sub, members, expected)
            )
        for a in defined:
            for b in defined:
                if a != b and a.less_informative(b):
                    assert b in self.extensions.get(a, ()), (
                        "index misses a defined extension"
                    )


def _desc_binding_order(instance: ParamInstance) -> tuple[int, str]:
    return (-len(instance), instance.encode())


def definitional_verdicts(
    machine: Machine, trace: Sequence[ParametricEvent]
) -> dict[ParamInstance, object]:
    """Ground-truth verdicts: run the machine over each definitional slice.

    Covers every binding in the join closure of the trace's bindings — the
    same domain the engines materialize.  Used as the reference side of the
    differential tests; intentionally built on :func:`slice_trace` rather
    than any incremental table.
    """
    out: dict[ParamInstance, object] = {}
    for binding in binding_closure(trace):
        state = machine.initial()
        for name in slice_trace(trace, binding):
            state = machine.step(state, name)
        out[binding] = machine.output(state)
    return out
