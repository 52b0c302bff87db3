"""Partial parameter bindings and their join semilattice.

A binding assigns values to finitely many named parameters.  Bindings are
ordered by information content: ``a`` is less informative than ``b`` when ``b``
binds every parameter ``a`` binds, to the same value.  Two bindings are
compatible when they agree on every shared parameter; exactly then their
*join* (the union of the two assignments) exists.  The empty binding is the
bottom element and is compatible with everything.

Everything downstream (slicing tables, monitor state tables) indexes on
bindings, so this module also fixes their canonical encoding
(``name=value`` pairs, name-sorted, comma-joined) and the deterministic
ordering used whenever a set of bindings is iterated: ascending domain size,
then ascending canonical encoding.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, Iterator, Mapping

__all__ = [
    "CapExceeded",
    "DEFAULT_DOMAIN_CAP",
    "EMPTY",
    "InstanceSet",
    "ParamInstance",
    "binding_order",
    "is_join_closed",
    "join_closure",
    "join_sets",
    "joins_with",
    "max_below",
    "ordered",
    "strict_subinstances_desc",
]

#: Parameter names are identifiers; values are any non-empty run of
#: characters containing neither whitespace nor ``=``.
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_VALUE_RE = re.compile(r"[^\s=]+\Z")

#: Largest binding domain for which sub-binding enumeration (2^n candidates)
#: is permitted.  Lookups on wider bindings raise :class:`CapExceeded`.
DEFAULT_DOMAIN_CAP = 10


class CapExceeded(Exception):
    """A binding's domain is too wide for sub-binding enumeration."""

    def __init__(self, size: int, cap: int):
        super().__init__(
            "binding has %d parameters, exceeding the enumeration cap of %d"
            % (size, cap)
        )
        self.size = size
        self.cap = cap


class ParamInstance:
    """An immutable assignment of values to a finite set of parameter names.

    Instances are canonical (items are kept name-sorted), hashable, and cheap
    to compare.  The empty assignment — module constant :data:`EMPTY` — is the
    least informative binding.
    """

    __slots__ = ("_items", "_index", "_hash", "_enc")

    def __init__(self, mapping: Mapping[str, str] | Iterable[tuple[str, str]] = ()):
        items = tuple(sorted(dict(mapping).items()))
        for name, value in items:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError("bad parameter name: %r" % (name,))
            if not isinstance(value, str) or not _VALUE_RE.match(value):
                raise ValueError("bad parameter value: %r" % (value,))
        self._items = items
        self._index = dict(items)
        self._hash = hash(items)
        self._enc = None

    @classmethod
    def _wrap(cls, items: tuple[tuple[str, str], ...]) -> "ParamInstance":
        # Internal fast path: items must already be validated and name-sorted.
        self = object.__new__(cls)
        self._items = items
        self._index = dict(items)
        self._hash = hash(items)
        self._enc = None
        return self

    @classmethod
    def parse(cls, text: str) -> "ParamInstance":
        """Parse a canonical encoding like ``"a=1,b=2"`` ("" is the empty binding)."""
        text = text.strip()
        if not text:
            return EMPTY
        mapping: dict[str, str] = {}
        for chunk in text.split(","):
            name, eq, value = chunk.strip().partition("=")
            if not eq:
                raise ValueError("expected name=value, got %r" % chunk)
            if name in mapping:
                raise ValueError("parameter %r bound twice" % name)
            mapping[name] = value
        return cls(mapping)

    def encode(self) -> str:
        """Canonical encoding: name-sorted ``name=value`` pairs, comma-joined."""
        if self._enc is None:
            self._enc = ",".join("%s=%s" % item for item in self._items)
        return self._enc

    # -- basic container behaviour ------------------------------------------

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self._items)

    def get(self, name: str) -> str | None:
        return self._index.get(name)

    @property
    def names(self) -> tuple[str, ...]:
        """Bound parameter names, sorted."""
        return tuple(name for name, _ in self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParamInstance):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "ParamInstance(%r)" % self.encode()

    def __bool__(self) -> bool:
        return bool(self._items)

    # -- lattice structure ---------------------------------------------------

    def less_informative(self, other: "ParamInstance") -> bool:
        """True when ``other`` binds every parameter this binding binds, equally.

        This is the (non-strict) lattice order; every binding is less
        informative than itself.
        """
        if len(self._items) > len(other._items):
            return False
        index = other._index
        for name, value in self._items:
            if index.get(name) != value:
                return False
        return True

    def compatible(self, other: "ParamInstance") -> bool:
        """True when the two bindings agree on every shared parameter."""
        small, big = (
            (self, other) if len(self._items) <= len(other._items) else (other, self)
        )
        index = big._index
        for name, value in small._items:
            bound = index.get(name)
            if bound is not None and bound != value:
                return False
        return True

    def join(self, other: "ParamInstance") -> "ParamInstance | None":
        """Least binding more informative than both, or None when incompatible."""
        if not other._items:
            return self
        if not self._items:
            return other
        merged = dict(self._index)
        grew = False
        for name, value in other._items:
            bound = merged.get(name)
            if bound is None:
                merged[name] = value
                grew = True
            elif bound != value:
                return None
        if not grew:
            return self
        if len(merged) == len(other._items):
            return other
        return ParamInstance._wrap(tuple(sorted(merged.items())))

    def restrict(self, names: Iterable[str]) -> "ParamInstance":
        """Sub-binding on the given names (names not bound here are ignored)."""
        keep = names if isinstance(names, (set, frozenset)) else set(names)
        return ParamInstance._wrap(
            tuple(item for item in self._items if item[0] in keep)
        )


#: The empty binding — bottom of the lattice.
EMPTY = ParamInstance()


def binding_order(instance: ParamInstance) -> tuple[int, str]:
    """Sort key fixing the deterministic order: (domain size, encoding)."""
    return (len(instance), instance.encode())


def ordered(instances: Iterable[ParamInstance]) -> list[ParamInstance]:
    """Sorted list of bindings in the canonical iteration order."""
    return sorted(instances, key=binding_order)


class InstanceSet:
    """A finite set of bindings with deterministic iteration order.

    Iteration yields bindings by ascending (domain size, canonical encoding),
    so any two equal sets display and replay identically.
    """

    __slots__ = ("_members",)

    def __init__(self, members: Iterable[ParamInstance] = ()):
        self._members = set(members)

    def add(self, instance: ParamInstance) -> None:
        self._members.add(instance)

    def update(self, instances: Iterable[ParamInstance]) -> None:
        self._members.update(instances)

    def __contains__(self, instance: object) -> bool:
        return instance in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[ParamInstance]:
        return iter(ordered(self._members))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, InstanceSet):
            return self._members == other._members
        if isinstance(other, (set, frozenset)):
            return self._members == other
        return NotImplemented

    def __repr__(self) -> str:
        return "InstanceSet({%s})" % ", ".join(i.encode() or "<empty>" for i in self)

    def as_set(self) -> set[ParamInstance]:
        return set(self._members)


def joins_with(
    instance: ParamInstance, instances: Iterable[ParamInstance]
) -> set[ParamInstance]:
    """All defined joins of ``instance`` with members of ``instances``.

    When ``instances`` contains the empty binding the result contains
    ``instance`` itself; incompatible members contribute nothing.
    """
    out: set[ParamInstance] = set()
    for member in instances:
        joined = instance.join(member)
        if joined is not None:
            out.add(joined)
    return out


def join_sets(
    left: Iterable[ParamInstance], right: Iterable[ParamInstance]
) -> set[ParamInstance]:
    """Pairwise joins of two binding sets (dropping undefined combinations)."""
    right_list = list(right)
    out: set[ParamInstance] = set()
    for a in left:
        for b in right_list:
            joined = a.join(b)
            if joined is not None:
                out.add(joined)
    return out


def is_join_closed(instances: Iterable[ParamInstance]) -> bool:
    """True when the set contains the empty binding and all pairwise joins."""
    members = set(instances)
    if EMPTY not in members:
        return False
    listed = list(members)
    for i, a in enumerate(listed):
        for b in listed[i:]:
            joined = a.join(b)
            if joined is not None and joined not in members:
                return False
    return True


def join_closure(instances: Iterable[ParamInstance]) -> set[ParamInstance]:
    """Smallest join-closed superset (always includes the empty binding).

    Saturates by repeated binary joins; the result is the table domain an
    online slicer reaches after feeding events carrying ``instances``.
    """
    closed: set[ParamInstance] = {EMPTY}
    closed.update(instances)
    work = list(closed)
    while work:
        candidate = work.pop()
        for member in list(closed):
            joined = candidate.join(member)
            if joined is not None and joined not in closed:
                closed.add(joined)
                work.append(joined)
    return closed


def strict_subinstances_desc(
    instance: ParamInstance, cap: int = DEFAULT_DOMAIN_CAP
) -> Iterator[ParamInstance]:
    """Yield every strictly less informative binding, most informative first.

    Order is descending domain size with ties broken by ascending canonical
    encoding; the final binding yielded is always the empty one.  A domain
    wider than ``cap`` raises :class:`CapExceeded` (the enumeration is
    exponential in the domain size).
    """
    names = instance.names
    if len(names) > cap:
        raise CapExceeded(len(names), cap)
    for size in range(len(names) - 1, -1, -1):
        bucket = [instance.restrict(combo) for combo in combinations(names, size)]
        if len(bucket) > 1:
            bucket.sort(key=ParamInstance.encode)
        yield from bucket


def max_below(
    instance: ParamInstance,
    members: Iterable[ParamInstance],
    cap: int = DEFAULT_DOMAIN_CAP,
) -> ParamInstance:
    """Most informative member that is at-or-below ``instance``.

    ``members`` must be join-closed (which makes the maximum unique) and
    therefore contain the empty binding, so the scan always terminates with
    an answer.  ``instance`` itself is returned when it is a member.
    """
    membership = members if hasattr(members, "__contains__") else set(members)
    if instance in membership:
        return instance
    for sub in strict_subinstances_desc(instance, cap):
        if sub in membership:
            return sub
    raise ValueError(
        "binding set is missing the empty binding (not join-closed): %r"
        % (instance,)
    )
