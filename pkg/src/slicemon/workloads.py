"""Deterministic workloads for benchmarking and cost assertions."""

from __future__ import annotations

from .bindings import ParamInstance
from .events import ParametricEvent
from .machines import FsmMachine, Verdict

__all__ = [
    "adversarial_machine",
    "adversarial_workload",
    "iterator_machine",
    "iterator_workload",
]


def iterator_machine() -> FsmMachine:
    """Hand-over-hand iterator protocol: query availability before advancing."""
    alphabet = ("hasnexttrue", "hasnextfalse", "next")
    transitions = {
        ("unknown", "hasnexttrue"): "more",
        ("unknown", "hasnextfalse"): "none",
        ("unknown", "next"): "error",
        ("more", "hasnexttrue"): "more",
        ("more", "hasnextfalse"): "more",
        ("more", "next"): "unknown",
        ("none", "hasnexttrue"): "none",
        ("none", "hasnextfalse"): "none",
        ("none", "next"): "error",
        ("error", "hasnexttrue"): "error",
        ("error", "hasnextfalse"): "error",
        ("error", "next"): "error",
    }
    return FsmMachine("unknown", transitions, {"error": Verdict.FAIL}, alphabet)


def iterator_workload(count: int, iterators: int = 100) -> list[ParametricEvent]:
    """``count`` events round-robining hasnexttrue/next over a pool of bindings.

    After each binding's first event, every later event for it hits an
    already-defined table entry — the friendly case for the indexed engine.
    """
    bindings = [
        ParamInstance._wrap((("i", "it%d" % k),)) for k in range(iterators)
    ]
    events: list[ParametricEvent] = []
    for j in range(count):
        binding = bindings[(j // 2) % iterators]
        name = "hasnexttrue" if j % 2 == 0 else "next"
        events.append(ParametricEvent(name, binding))
    return events


def adversarial_machine() -> FsmMachine:
    """Two-state toggle over a single ``probe`` event."""
    transitions = {("even", "probe"): "odd", ("odd", "probe"): "even"}
    return FsmMachine("even", transitions, {"odd": Verdict.MATCH}, ("probe",))


def adversarial_workload(count: int) -> list[ParametricEvent]:
    """``count`` events, each carrying a fresh maximal, mutually incompatible binding.

    Every event forces a table define and a scan of the accumulated
    neighbours; no two bindings ever join.  Table growth is linear in the
    event count — the hostile case for any engine.
    """
    events = []
    for j in range(count):
        value = "v%d" % j
        binding = ParamInstance._wrap(
            (("x", value), ("y", value), ("z", value))
        )
        events.append(ParametricEvent("probe", binding))
    return events
