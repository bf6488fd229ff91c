"""Game configurations, move generation and arena construction.

All game families share one configuration record:

    owner        "S" (challenger) or "D" (defender)
    left, right  current position, a pair of states
    challenge    pending challenge (label, target state) or None
    match        pebble (state, face) with face "frown"/"smile", or None
    accepting    True for a check-mark reward, False for a star
    first_round  True only at the start of simulation-equivalence games

Variant kinds:

    strong    challenge-response game, no silent-step allowances
    limited   strong game plus idle/sidestep answers (unsound on divergent
              systems; kept as a documented baseline)
    compact   branching game with challenge and reward but no pebble
    generic   pebble-and-face game; the face set E tunes the equivalence
              (empty=branching, {frown}=delay, {smile}=eta, both=weak)
    dual      challenger-parameterised mirror of the generic game
    sim       generic game without the challenger's switch rule (preorder)
    simeq     switch rule allowed in the first round only

With divergence=True the defender's idle answer earns a star instead of a
check, so idling forever no longer wins infinite plays.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import NamedTuple

FROWN = "frown"
SMILE = "smile"

SPOILER = "S"
DUPLICATOR = "D"

STRONG = "strong"
LIMITED = "limited"
COMPACT = "compact"
GENERIC = "generic"
DUAL = "dual"
SIM = "sim"
SIMEQ = "simeq"

_KINDS = (STRONG, LIMITED, COMPACT, GENERIC, DUAL, SIM, SIMEQ)

DEFAULT_ARENA_CAP = 5_000_000
ARENA_CAP_ENV = "BISIMGAME_MAX_ARENA"


class ArenaCapExceeded(Exception):
    def __init__(self, cap):
        super().__init__("arena size exceeds the configured cap of %d configurations"
                         % cap)
        self.cap = cap


def face_set(p):
    """Face set for an (x, y) transfer parameter: frown enables answering a
    challenge before settling the pre-step states (x=o), smile likewise for
    the post-step states (y=o)."""
    faces = set()
    if p.x == "o":
        faces.add(FROWN)
    if p.y == "o":
        faces.add(SMILE)
    return frozenset(faces)


@dataclass(frozen=True)
class GameVariant:
    kind: str
    faces: frozenset = frozenset()
    divergence: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("unknown game kind %r" % self.kind)
        if not self.faces <= {FROWN, SMILE}:
            raise ValueError("faces must be a subset of {frown, smile}")

    @property
    def has_pebble(self):
        return self.kind in (GENERIC, DUAL, SIM, SIMEQ)


class Config(NamedTuple):
    owner: str
    left: int
    right: int
    challenge: tuple | None  # (ActionLabel, state)
    match: tuple | None      # (state, face)
    accepting: bool
    first_round: bool = False

    def sort_key(self):
        ch = (1, self.challenge[0].text, self.challenge[1]) if self.challenge \
            else (0, "", -1)
        mt = (1, self.match[0], self.match[1]) if self.match else (0, -1, "")
        return (self.owner, self.left, self.right, ch, mt,
                self.accepting, self.first_round)


class Move(NamedTuple):
    rule: str
    target: Config


def initial_config(variant, s, t):
    """The starting configuration for the position (s, t): challenger to
    move, no pending challenge, no pebble, star reward."""
    return Config(SPOILER, s, t, None, None, False,
                  first_round=variant.kind == SIMEQ)


def moves(variant, lts, c, eager=False):
    """All moves the variant's rules allow from c, sorted by rule id then
    target.  eager=True drops the defender's match-and-move rule (D2a)."""
    if variant.kind in (STRONG, LIMITED):
        out = _moves_plain(variant, lts, c)
    elif variant.kind == COMPACT:
        out = _moves_compact(variant, lts, c)
    elif variant.kind == DUAL:
        out = _moves_dual(variant, lts, c)
    else:
        out = _moves_generic(variant, lts, c, eager)
    out.sort(key=lambda m: (m.rule, m.target.sort_key()))
    return out


def _moves_plain(variant, lts, c):
    # strong game; the limited variant adds idle and sidestep answers.
    # every move target is accepting: infinite plays go to the defender.
    out = []
    if c.owner == SPOILER:
        s, t = c.left, c.right
        for a, s2 in lts.out(s):
            out.append(Move("S1", Config(DUPLICATOR, s, t, (a, s2), None, True)))
        for a, t2 in lts.out(t):
            out.append(Move("S2", Config(DUPLICATOR, t, s, (a, t2), None, True)))
    else:
        u, v = c.left, c.right
        a, u2 = c.challenge
        if variant.kind == LIMITED:
            if a.is_tau:
                out.append(Move("D1", Config(SPOILER, u2, v, None, None, True)))
            for b, v2 in lts.out(v):
                if b.text == a.text:
                    out.append(Move("D2", Config(SPOILER, u2, v2, None, None, True)))
            for v2 in lts.tau_out(v):
                out.append(Move("D3", Config(SPOILER, u, v2, None, None, True)))
        else:
            for b, v2 in lts.out(v):
                if b.text == a.text:
                    out.append(Move("D1", Config(SPOILER, u2, v2, None, None, True)))
    return out


def _moves_compact(variant, lts, c):
    out = []
    if c.owner == SPOILER:
        s, t, ch = c.left, c.right, c.challenge
        for a, s2 in lts.out(s):
            if ch == (a, s2):
                out.append(Move("S1", Config(DUPLICATOR, s, t, (a, s2), None, False)))
            elif ch is None:
                out.append(Move("S2a", Config(DUPLICATOR, s, t, (a, s2), None, False)))
            else:
                out.append(Move("S2b", Config(DUPLICATOR, s, t, (a, s2), None, True)))
        for a, t2 in lts.out(t):
            out.append(Move("S3", Config(DUPLICATOR, t, s, (a, t2), None, True)))
    else:
        u, v = c.left, c.right
        a, u2 = c.challenge
        idle_reward = not variant.divergence
        if a.is_tau:
            out.append(Move("D1", Config(SPOILER, u2, v, None, None, idle_reward)))
        for b, v2 in lts.out(v):
            if b.text == a.text:
                out.append(Move("D2b", Config(SPOILER, u2, v2, None, None, True)))
        for v2 in lts.tau_out(v):
            out.append(Move("D3a", Config(SPOILER, u, v2, (a, u2), None, False)))
    return out


def _moves_generic(variant, lts, c, eager):
    out = []
    if c.owner == SPOILER:
        s, t, ch = c.left, c.right, c.challenge
        if ch is not None:
            out.append(Move("S1", Config(DUPLICATOR, s, t, ch, c.match, False)))
        for a, s2 in lts.out(s):
            if ch is None:
                out.append(Move("S2a", Config(
                    DUPLICATOR, s, t, (a, s2), (t, FROWN), False)))
            elif ch != (a, s2):
                out.append(Move("S2b", Config(
                    DUPLICATOR, s, t, (a, s2), (t, FROWN), True)))
        switching = variant.kind == GENERIC or (
            variant.kind == SIMEQ and c.first_round)
        if switching:
            for a, t2 in lts.out(t):
                out.append(Move("S3", Config(
                    DUPLICATOR, t, s, (a, t2), (s, FROWN), True)))
    else:
        u, v = c.left, c.right
        a, u2 = c.challenge
        peb, f = c.match
        idle_reward = not variant.divergence
        if a.is_tau:
            out.append(Move("D1", Config(SPOILER, u2, peb, None, None, idle_reward)))
        if f == FROWN:
            for b, v2 in lts.out(peb):
                if b.text != a.text:
                    continue
                if not eager:
                    out.append(Move("D2a", Config(
                        SPOILER, u2, v2, (a, u2), (v2, SMILE), False)))
                out.append(Move("D2b", Config(SPOILER, u2, v2, None, None, True)))
                if SMILE in variant.faces:
                    out.append(Move("D2c", Config(
                        SPOILER, u, v, (a, u2), (v2, SMILE), False)))
        for v2 in lts.tau_out(peb):
            out.append(Move("D3a", Config(SPOILER, u, v2, (a, u2), (v2, f), False)))
            if f == SMILE:
                out.append(Move("D3b", Config(SPOILER, u2, v2, None, None, True)))
            if f in variant.faces:
                out.append(Move("D3c", Config(SPOILER, u, v, (a, u2), (v2, f), False)))
    return out


def _moves_dual(variant, lts, c):
    out = []
    if c.owner == SPOILER:
        s, t, ch = c.left, c.right, c.challenge
        if ch is not None:
            out.append(Move("S1", Config(
                DUPLICATOR, s, t, ch, c.match, c.accepting)))
        if ch is None:
            for a, s2 in lts.out(s):
                out.append(Move("S2a", Config(
                    DUPLICATOR, s, t, (a, s2), (t, FROWN), False)))
            for a, t2 in lts.out(t):
                out.append(Move("S2b", Config(
                    DUPLICATOR, t, s, (a, t2), (s, FROWN), True)))
        if ch is not None and c.match and c.match[1] == FROWN \
                and FROWN not in variant.faces:
            tbar = c.match[0]
            for a, s2 in lts.out(s):
                out.append(Move("S3a", Config(
                    DUPLICATOR, s, tbar, (a, s2), (tbar, FROWN), True)))
            for a, t2 in lts.out(tbar):
                out.append(Move("S3b", Config(
                    DUPLICATOR, tbar, s, (a, t2), (s, FROWN), True)))
        if ch is not None and c.match and c.match[1] == SMILE \
                and SMILE not in variant.faces:
            s2 = ch[1]
            tbar = c.match[0]
            for b, s3 in lts.out(s2):
                out.append(Move("S4a", Config(
                    DUPLICATOR, s2, tbar, (b, s3), (tbar, FROWN), True)))
            for b, t2 in lts.out(tbar):
                out.append(Move("S4b", Config(
                    DUPLICATOR, tbar, s2, (b, t2), (s2, FROWN), True)))
    else:
        u, v = c.left, c.right
        a, u2 = c.challenge
        peb, f = c.match
        if a.is_tau or f == SMILE:
            out.append(Move("D1", Config(SPOILER, u2, peb, None, None, True)))
        if f == FROWN:
            for b, v2 in lts.out(peb):
                if b.text == a.text:
                    out.append(Move("D2", Config(
                        SPOILER, u, v, (a, u2), (v2, SMILE), False)))
        for v2 in lts.tau_out(peb):
            out.append(Move("D3", Config(SPOILER, u, v, (a, u2), (v2, f), False)))
    return out


@dataclass
class Arena:
    variant: GameVariant
    lts: object
    configs: list = field(default_factory=list)
    edges: list = field(default_factory=list)       # per config: list of (rule, idx)
    initials: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def accepting(self, i):
        return self.configs[i].accepting

    def initial_index(self, s, t):
        c = initial_config(self.variant, s, t)
        if c not in self.index:
            raise KeyError("position (%d, %d) is not a start of this arena" % (s, t))
        return self.index[c]

    def to_json_obj(self):
        def cfg(c):
            return {
                "owner": c.owner,
                "pos": [c.left, c.right],
                "challenge": ({"action": c.challenge[0].text,
                               "target": c.challenge[1]}
                              if c.challenge else None),
                "match": ({"state": c.match[0], "face": c.match[1]}
                          if c.match else None),
                "reward": "check" if c.accepting else "star",
                "first_round": c.first_round,
            }
        return {
            "variant": {"kind": self.variant.kind,
                        "faces": sorted(self.variant.faces),
                        "divergence": self.variant.divergence},
            "configs": [cfg(c) for c in self.configs],
            "edges": [{"from": i, "rule": rule, "to": j}
                      for i, out in enumerate(self.edges)
                      for (rule, j) in out],
            "initials": list(self.initials),
        }

    def to_dot(self, name_of=str):
        def label(c):
            ch = "-" if not c.challenge else "%s->%s" % (
                c.challenge[0].text, name_of(c.challenge[1]))
            mt = "-" if not c.match else "%s %s" % (name_of(c.match[0]), c.match[1])
            return "%s (%s,%s)\\nch %s  peb %s" % (
                c.owner, name_of(c.left), name_of(c.right), ch, mt)
        lines = ["digraph arena {"]
        for i, c in enumerate(self.configs):
            shape = "box" if c.owner == SPOILER else "ellipse"
            peripheries = ', peripheries=2' if c.accepting else ""
            lines.append('  n%d [shape=%s, label="%s"%s];'
                         % (i, shape, label(c), peripheries))
        for i, out in enumerate(self.edges):
            for rule, j in out:
                lines.append('  n%d -> n%d [label="%s"];' % (i, j, rule))
        lines.append("}")
        return "\n".join(lines) + "\n"


def arena_cap(explicit=None):
    if explicit is not None:
        return explicit
    env = os.environ.get(ARENA_CAP_ENV)
    return int(env) if env else DEFAULT_ARENA_CAP


def build_arena(variant, lts, starts="all", eager=False, max_configs=None):
    """Reachable arena from the given start positions ("all" = every ordered
    pair of states), by breadth-first closure with deterministic interning."""
    cap = arena_cap(max_configs)
    if starts == "all":
        starts = [(s, t) for s in range(lts.num_states)
                  for t in range(lts.num_states)]
    arena = Arena(variant, lts)
    queue = []
    for s, t in starts:
        if not (0 <= s < lts.num_states and 0 <= t < lts.num_states):
            raise ValueError("start position (%r, %r) out of range" % (s, t))
        c = initial_config(variant, s, t)
        if c not in arena.index:
            arena.index[c] = len(arena.configs)
            arena.configs.append(c)
            queue.append(c)
        arena.initials.append(arena.index[c])
    head = 0
    while head < len(queue):
        c = queue[head]
        head += 1
        out = []
        for rule, target in moves(variant, lts, c, eager=eager):
            j = arena.index.get(target)
            if j is None:
                if len(arena.configs) >= cap:
                    raise ArenaCapExceeded(cap)
                j = len(arena.configs)
                arena.index[target] = j
                arena.configs.append(target)
                queue.append(target)
            out.append((rule, j))
        arena.edges.append(out)
    return arena
