"""Property files: a small line format declaring alphabet, machine and triggers.

Example (regex kind)::

    property ScopedLocking
    params: r
    event begin()
    event end()
    event acquire(r)
    event release(r)
    monitor: regex
    pattern: (begin (ε | acquire (acquire | release)* release) end)*
    report: fail

The ``monitor:`` line picks the machine kind and decides which payload lines
are legal afterwards:

* ``fsm``     — ``state <name> [initial]``, ``trans <from> <event> <to>``,
  ``label <state> match|fail|unknown`` (unlabeled states are ``unknown``;
  missing transitions go to an absorbing unknown-labeled sink);
* ``regex``   — a single ``pattern:`` line;
* ``balance`` — ``roles: enter=<ev> exit=<ev> inc=<ev> dec=<ev>``;
* ``ratio``   — ``success: <ev>`` naming the events counted as successes.

``report:`` lists the verdicts that produce report lines; it may be empty or
omitted entirely (then nothing triggers).  ``#`` starts a comment; blank
lines are ignored.
"""

from __future__ import annotations

from .bindings import _NAME_RE
from .machines import BalanceMachine, FsmMachine, MonitorSpec, RatioMachine, Verdict
from .patterns import compile_regex

__all__ = ["SpecFormatError", "parse_property_spec"]

KINDS = ("fsm", "regex", "balance", "ratio")


class SpecFormatError(ValueError):
    """A property file is malformed; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__("line %d: %s" % (line, message))
        self.line = line


def _identifier(lineno: int, text: str, what: str) -> str:
    if not _NAME_RE.match(text):
        raise SpecFormatError(lineno, "bad %s %r" % (what, text))
    return text


def parse_property_spec(source: str) -> MonitorSpec:
    """Parse property-file text into a validated :class:`MonitorSpec`."""
    name: str | None = None
    params: list[str] = []
    events: dict[str, tuple[str, ...]] = {}
    kind: str | None = None
    trigger: set[Verdict] = set()
    saw_report = False

    pattern: str | None = None
    fsm_states: dict[str, bool] = {}  # name -> declared initial?
    fsm_trans: dict[tuple[str, str], str] = {}
    fsm_labels: dict[str, Verdict] = {}
    roles: dict[str, str] | None = None
    success: list[str] | None = None

    def need_kind(lineno: int, line_kind: str, keyword: str) -> None:
        if kind != line_kind:
            raise SpecFormatError(
                lineno, "%r is only valid after 'monitor: %s'" % (keyword, line_kind)
            )

    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()

        if keyword == "property":
            if name is not None:
                raise SpecFormatError(lineno, "duplicate 'property' line")
            name = _identifier(lineno, rest, "property name")
        elif name is None:
            raise SpecFormatError(lineno, "file must start with a 'property' line")

        elif keyword == "params:":
            for param in filter(None, (p.strip() for p in rest.split(","))):
                params.append(_identifier(lineno, param, "parameter"))
        elif keyword == "event":
            if "(" not in rest or not rest.endswith(")"):
                raise SpecFormatError(lineno, "expected 'event name(params)'")
            ev_name, _, arglist = rest[:-1].partition("(")
            ev_name = _identifier(lineno, ev_name.strip(), "event name")
            if ev_name in events:
                raise SpecFormatError(lineno, "event %r declared twice" % ev_name)
            ev_params = []
            for param in filter(None, (p.strip() for p in arglist.split(","))):
                if param not in params:
                    raise SpecFormatError(
                        lineno, "event %r uses undeclared parameter %r" % (ev_name, param)
                    )
                ev_params.append(param)
            events[ev_name] = tuple(ev_params)
        elif keyword == "monitor:":
            if kind is not None:
                raise SpecFormatError(lineno, "duplicate 'monitor:' line")
            if rest not in KINDS:
                raise SpecFormatError(
                    lineno, "unknown monitor kind %r (expected one of %s)"
                    % (rest, ", ".join(KINDS))
                )
            kind = rest
        elif keyword == "report:":
            if saw_report:
                raise SpecFormatError(lineno, "duplicate 'report:' line")
            saw_report = True
            for tag in filter(None, (t.strip() for t in rest.split(","))):
                try:
                    trigger.add(Verdict(tag))
                except ValueError:
                    raise SpecFormatError(lineno, "unknown verdict %r" % tag) from None

        elif keyword == "pattern:":
            need_kind(lineno, "regex", "pattern:")
            if pattern is not None:
                raise SpecFormatError(lineno, "duplicate 'pattern:' line")
            pattern = rest
        elif keyword == "state":
            need_kind(lineno, "fsm", "state")
            fields = rest.split()
            if len(fields) not in (1, 2) or (len(fields) == 2 and fields[1] != "initial"):
                raise SpecFormatError(lineno, "expected 'state name [initial]'")
            state = _identifier(lineno, fields[0], "state name")
            if state in fsm_states:
                raise SpecFormatError(lineno, "state %r declared twice" % state)
            fsm_states[state] = len(fields) == 2
        elif keyword == "trans":
            need_kind(lineno, "fsm", "trans")
            fields = rest.split()
            if len(fields) != 3:
                raise SpecFormatError(lineno, "expected 'trans from event to'")
            src, ev_name, dst = fields
            for state in (src, dst):
                if state not in fsm_states:
                    raise SpecFormatError(lineno, "undeclared state %r" % state)
            if ev_name not in events:
                raise SpecFormatError(lineno, "undeclared event %r" % ev_name)
            if (src, ev_name) in fsm_trans:
                raise SpecFormatError(
                    lineno, "duplicate transition from %r on %r" % (src, ev_name)
                )
            fsm_trans[(src, ev_name)] = dst
        elif keyword == "label":
            need_kind(lineno, "fsm", "label")
            fields = rest.split()
            if len(fields) != 2:
                raise SpecFormatError(lineno, "expected 'label state verdict'")
            state, tag = fields
            if state not in fsm_states:
                raise SpecFormatError(lineno, "undeclared state %r" % state)
            try:
                fsm_labels[state] = Verdict(tag)
            except ValueError:
                raise SpecFormatError(lineno, "unknown verdict %r" % tag) from None
        elif keyword == "roles:":
            need_kind(lineno, "balance", "roles:")
            roles = {}
            for token in rest.split():
                role, eq, ev_name = token.partition("=")
                if not eq or role not in ("enter", "exit", "inc", "dec"):
                    raise SpecFormatError(lineno, "expected enter=/exit=/inc=/dec= pairs")
                if ev_name not in events:
                    raise SpecFormatError(lineno, "undeclared event %r" % ev_name)
                if role in roles:
                    raise SpecFormatError(lineno, "role %r assigned twice" % role)
                roles[role] = ev_name
            if set(roles) != {"enter", "exit", "inc", "dec"}:
                raise SpecFormatError(lineno, "roles: must assign all four roles")
        elif keyword == "success:":
            need_kind(lineno, "ratio", "success:")
            if success is not None:
                raise SpecFormatError(lineno, "duplicate 'success:' line")
            success = []
            for ev_name in filter(None, (t.strip() for t in rest.split(","))):
                if ev_name not in events:
                    raise SpecFormatError(lineno, "undeclared event %r" % ev_name)
                success.append(ev_name)
        else:
            raise SpecFormatError(lineno, "unrecognized line %r" % line)

    # -- whole-file validation and machine construction --------------------------

    if name is None:
        raise SpecFormatError(1, "missing 'property' line")
    if not events:
        raise SpecFormatError(1, "property declares no events")
    if kind is None:
        raise SpecFormatError(1, "missing 'monitor:' line")

    if kind == "regex":
        if pattern is None:
            raise SpecFormatError(1, "regex monitor needs a 'pattern:' line")
        machine = compile_regex(pattern, events)
    elif kind == "fsm":
        initials = [s for s, is_init in fsm_states.items() if is_init]
        if len(initials) != 1:
            raise SpecFormatError(1, "fsm monitor needs exactly one initial state")
        machine = FsmMachine(initials[0], fsm_trans, fsm_labels, events)
    elif kind == "balance":
        if roles is None:
            raise SpecFormatError(1, "balance monitor needs a 'roles:' line")
        machine = BalanceMachine(roles["enter"], roles["exit"], roles["inc"], roles["dec"])
    else:
        if not success:
            raise SpecFormatError(1, "ratio monitor needs a 'success:' line")
        machine = RatioMachine(success)

    return MonitorSpec(
        name=name,
        params=tuple(params),
        events=events,
        kind=kind,
        machine=machine,
        trigger=frozenset(trigger),
    )
