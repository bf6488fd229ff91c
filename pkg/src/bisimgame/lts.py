"""Labelled transition systems with a distinguished internal action.

States are integers 0..num_states-1.  The internal ("silent") action has a
configurable label text, "tau" by default.  Transition systems are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property

DEFAULT_TAU = "tau"


@dataclass(frozen=True)
class ActionLabel:
    """A transition label; is_tau marks the internal action."""

    text: str
    is_tau: bool = False

    def __post_init__(self):
        if not self.text:
            raise ValueError("action label text must be non-empty")

    def __str__(self):
        return self.text


class LtsError(Exception):
    pass


class ParseError(LtsError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class Lts:
    """A finite LTS with forward and backward adjacency.

    Transitions are deduplicated.  The alphabet always contains the internal
    action label, and exactly one alphabet label has is_tau set.
    """

    def __init__(self, num_states, transitions, initial=0, tau_label=DEFAULT_TAU):
        if num_states < 1:
            raise LtsError("an LTS needs at least one state")
        if not 0 <= initial < num_states:
            raise LtsError("initial state out of range")
        self.num_states = num_states
        self.initial = initial
        self.tau_label = tau_label
        self.tau = ActionLabel(tau_label, True)

        labels = {tau_label: self.tau}
        seen = set()
        for src, label, dst in transitions:
            if isinstance(label, ActionLabel):
                label = label.text
            if not 0 <= src < num_states or not 0 <= dst < num_states:
                raise LtsError("state index out of range in transition (%r, %r, %r)"
                               % (src, label, dst))
            if label not in labels:
                labels[label] = ActionLabel(label, False)
            seen.add((src, labels[label], dst))

        self.alphabet = sorted(labels.values(), key=lambda l: l.text)
        self.transitions = frozenset(seen)

        self._out = [[] for _ in range(num_states)]
        self._in = [[] for _ in range(num_states)]
        for src, label, dst in sorted(seen, key=lambda e: (e[0], e[1].text, e[2])):
            self._out[src].append((label, dst))
            self._in[dst].append((label, src))
        self._tau_out = [tuple(d for (l, d) in outs if l.is_tau) for outs in self._out]
        self._tau_in = [tuple(s for (l, s) in ins if l.is_tau) for ins in self._in]

    def out(self, s):
        """Outgoing (label, target) pairs of s, sorted by (label text, target)."""
        return self._out[s]

    def into(self, s):
        """Incoming (label, source) pairs of s."""
        return self._in[s]

    def tau_out(self, s):
        """Targets of outgoing internal steps of s."""
        return self._tau_out[s]

    @cached_property
    def _tau_closures(self):
        closures = []
        for s in range(self.num_states):
            seen = {s}
            stack = [s]
            while stack:
                for d in self._tau_out[stack.pop()]:
                    if d not in seen:
                        seen.add(d)
                        stack.append(d)
            closures.append(frozenset(seen))
        return closures

    def tau_closure(self, s):
        """All states reachable from s via zero or more internal steps."""
        return self._tau_closures[s]

    def __eq__(self, other):
        return (isinstance(other, Lts)
                and self.num_states == other.num_states
                and self.initial == other.initial
                and self.tau_label == other.tau_label
                and self.transitions == other.transitions)

    def __repr__(self):
        return "Lts(%d states, %d transitions)" % (
            self.num_states, len(self.transitions))


def tau_reach(lts, s, strict=False):
    """States reachable from s by internal steps.

    strict=False includes s itself (zero steps allowed); strict=True requires
    at least one step, so s appears only if it lies on a cycle of internal
    steps reachable from itself.
    """
    if not strict:
        return set(lts.tau_closure(s))
    reached = set()
    stack = list(lts.tau_out(s))
    while stack:
        d = stack.pop()
        if d not in reached:
            reached.add(d)
            stack.extend(lts.tau_out(d))
    return reached


def is_divergent(lts, s):
    """True iff an infinite sequence of internal steps starts in s."""
    # finite LTS: equivalent to reaching a state that can revisit itself
    return any(u in tau_reach(lts, u, strict=True) for u in lts.tau_closure(s))


_HEADER_RE = re.compile(r"\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_EDGE_RE = re.compile(r'\s*\(\s*(\d+)\s*,\s*(?:"([^"]*)"|([^,"]*?))\s*,\s*(\d+)\s*\)\s*$')


def parse_aut(text, tau_label=DEFAULT_TAU):
    """Parse an Aldebaran-format LTS description.

    The first line is a header `des (<initial>,<#transitions>,<#states>)`;
    each following non-blank line is `(<src>,"<label>",<dst>)`, the quotes
    being optional.  Labels equal to tau_label denote the internal action.
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise ParseError("malformed header, expected des (<init>,<#trans>,<#states>)",
                         line=1)
    initial, n_trans, n_states = (int(g) for g in m.groups())
    if n_states < 1:
        raise ParseError("state count must be positive", line=1)
    if initial >= n_states:
        raise ParseError("initial state index out of range", line=1)

    transitions = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        m = _EDGE_RE.match(raw)
        if not m:
            raise ParseError("malformed transition %r" % raw.strip(), line=lineno)
        src = int(m.group(1))
        label = m.group(2) if m.group(2) is not None else m.group(3)
        dst = int(m.group(4))
        if not label:
            raise ParseError("empty label", line=lineno)
        if src >= n_states or dst >= n_states:
            raise ParseError("state index out of range", line=lineno)
        transitions.append((src, label, dst))
    if len(transitions) != n_trans:
        raise ParseError("transition-count mismatch: header says %d, found %d"
                         % (n_trans, len(transitions)), line=1)
    return Lts(n_states, transitions, initial=initial, tau_label=tau_label)


def serialize_aut(lts):
    """Render an LTS in the format accepted by parse_aut."""
    edges = sorted((s, l.text, d) for (s, l, d) in lts.transitions)
    out = ["des (%d,%d,%d)" % (lts.initial, len(edges), lts.num_states)]
    out.extend('(%d,"%s",%d)' % e for e in edges)
    return "\n".join(out) + "\n"


def disjoint_union(l1, l2):
    """Combine two LTSs over disjoint state ranges.

    Returns (union, offset): states of l2 are shifted up by offset = number of
    states of l1.  Both systems must agree on the internal action's label.
    """
    if l1.tau_label != l2.tau_label:
        raise LtsError("internal action label mismatch: %r vs %r"
                       % (l1.tau_label, l2.tau_label))
    offset = l1.num_states
    transitions = [(s, l.text, d) for (s, l, d) in l1.transitions]
    transitions += [(s + offset, l.text, d + offset) for (s, l, d) in l2.transitions]
    union = Lts(offset + l2.num_states, transitions,
                initial=l1.initial, tau_label=l1.tau_label)
    return union, offset


def random_lts(seed, n_states, n_labels, edge_density=0.2, tau_fraction=0.3,
               tau_label=DEFAULT_TAU):
    """Deterministic random LTS for property testing.

    Expected edge count is edge_density * n_states**2, with an expected
    tau_fraction of the edges labelled by the internal action.  n_labels
    counts the visible labels only.
    """
    rng = random.Random(seed)
    visible = ["l%d" % i for i in range(n_labels)]
    transitions = []
    for src in range(n_states):
        for dst in range(n_states):
            if rng.random() < edge_density:
                if rng.random() < tau_fraction:
                    label = tau_label
                else:
                    label = rng.choice(visible)
                transitions.append((src, label, dst))
    return Lts(n_states, transitions, tau_label=tau_label)
