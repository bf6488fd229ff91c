"""Interactive play sessions and inequivalence explanations.

A GameSession replays solver strategies against a human or scripted
opponent.  The transcript speaks from the defender's point of view: the
challenger "moves", the human side "responds".  When the engine owns a
configuration it does not win, it falls back to the first legal move so
exploratory sessions stay alive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import DUPLICATOR, SPOILER
from .arena import DUAL as DUAL_KIND
from .arena import LIMITED as LIMITED_KIND
from .arena import STRONG as STRONG_KIND
from .solver import solve

AUTO = "auto"


class SessionError(Exception):
    pass


@dataclass
class GameSession:
    arena: object
    regions: object
    strat_d: object
    strat_s: object
    current: int
    human_side: str | None = None  # "S", "D" or None
    history: list = field(default_factory=list)  # (config index, rule, move index)
    check_count: int = 0
    name_of: object = str

    @property
    def current_config(self):
        return self.arena.configs[self.current]

    @property
    def legal_moves(self):
        return self.arena.edges[self.current]

    @property
    def terminal(self):
        return not self.arena.edges[self.current]

    @property
    def winner_if_terminal(self):
        if not self.terminal:
            return None
        return DUPLICATOR if self.current_config.owner == SPOILER else SPOILER


def new_session(arena, regions, strat_d, strat_s, start, human_side=None,
                name_of=str):
    s, t = start
    try:
        idx = arena.initial_index(s, t)
    except KeyError as e:
        raise SessionError(str(e)) from None
    return GameSession(arena, regions, strat_d, strat_s, idx,
                       human_side=human_side, name_of=name_of)


def _auto_choice(session):
    """Engine move: the owner's winning strategy when it wins the current
    configuration, else the first legal move."""
    i = session.current
    owner = session.arena.configs[i].owner
    if owner == DUPLICATOR and i in session.regions.duplicator \
            and i in session.strat_d.choice:
        return session.strat_d.choice[i]
    if owner == SPOILER and i in session.regions.spoiler \
            and i in session.strat_s.choice:
        return session.strat_s.choice[i]
    return 0


def step(session, chosen=AUTO):
    """Advance the session by one half-move (mutates and returns it)."""
    if session.terminal:
        raise SessionError("session is terminal")
    owner = session.current_config.owner
    if chosen == AUTO:
        if owner == session.human_side:
            raise SessionError("it is the human's turn; a move index is required")
        k = _auto_choice(session)
    else:
        if owner != session.human_side:
            raise SessionError("not the human's turn")
        if not isinstance(chosen, int) or not 0 <= chosen < len(session.legal_moves):
            raise SessionError("illegal move index %r" % (chosen,))
        k = chosen
    rule, j = session.arena.edges[session.current][k]
    session.history.append((session.current, rule, k))
    session.current = j
    if session.arena.configs[j].accepting:
        session.check_count += 1
    return session


def _move_line(arena, i, rule, j, name_of):
    kind = arena.variant.kind
    src = arena.configs[i]
    dst = arena.configs[j]
    if src.owner == SPOILER:
        action, target = dst.challenge
        if kind == DUAL_KIND:
            switch = rule in ("S2b", "S3b", "S4b")
        elif kind in (STRONG_KIND, LIMITED_KIND):
            switch = rule == "S2"
        else:
            switch = rule == "S3"
        if switch:
            verb = "Spoiler switches positions and moves"
        elif rule == "S1" and kind not in (STRONG_KIND, LIMITED_KIND):
            verb = "Spoiler repeats the challenge"
        else:
            verb = "Spoiler moves"
        return "%s %s --%s--> %s" % (verb, name_of(dst.left),
                                     action.text, name_of(target))
    # defender half-moves: idle, answer the challenge, or advance the pebble
    action, _ = src.challenge
    idle = rule == "D1" and kind != STRONG_KIND
    if idle:
        return "You respond by not moving"
    peb_from = src.match[0] if src.match else src.right
    peb_to = dst.match[0] if dst.match else dst.right
    if rule in ("D3", "D3a", "D3b", "D3c"):
        label = arena.lts.tau_label
    else:
        label = action.text
    return "You respond with %s --%s--> %s" % (
        name_of(peb_from), label, name_of(peb_to))


def transcript(session):
    """Text transcript of the session history, one line per half-move, with
    a final verdict once the session is terminal."""
    name_of = session.name_of
    if not session.history:
        c = session.current_config
        return "Game at (%s, %s); %s to move.\n" % (
            name_of(c.left), name_of(c.right),
            "Spoiler" if c.owner == SPOILER else "Duplicator")
    lines = []
    for (i, rule, k) in session.history:
        _, j = session.arena.edges[i][k]
        lines.append(_move_line(session.arena, i, rule, j, name_of))
    if session.terminal:
        if session.winner_if_terminal == DUPLICATOR:
            lines.append("Spoiler is stuck. You win.")
        else:
            lines.append("You lose.")
    return "\n".join(lines) + "\n"


def drive(arena, regions, strat_d, strat_s, start, name_of=str,
          max_rounds=100000):
    """Automated demonstration: the winning side plays its strategy, the
    losing side explores.  The losing defender tries each of her options
    once; when play returns to an already-exhausted configuration she has
    run out of alternatives.  Returns (transcript text, winner)."""
    session = new_session(arena, regions, strat_d, strat_s, start,
                          human_side=None, name_of=name_of)
    winner = DUPLICATOR if session.current in regions.duplicator else SPOILER
    tried = {}
    exhausted = False
    for _ in range(max_rounds):
        if session.terminal:
            break
        i = session.current
        owner = session.arena.configs[i].owner
        if owner == winner:
            step(session)
            continue
        n_moves = len(arena.edges[i])
        nxt = tried.get(i, 0)
        if nxt >= n_moves:
            exhausted = True
            break
        tried[i] = nxt + 1
        session.human_side = owner
        step(session, nxt)
        session.human_side = None
    text = transcript(session)
    if exhausted and winner == SPOILER:
        text = text.rstrip("\n") + "\nYou explored all options. You lose.\n"
    elif exhausted:
        text = text.rstrip("\n") + "\nSpoiler explored all options. You win.\n"
    return text, winner


@dataclass
class ExplanationGraph:
    """The solitaire subgraph induced by fixing the winner's strategy and
    letting the loser range over all moves."""
    arena: object
    winner: str
    configs: list            # arena config indices, BFS order
    edges: list              # (from index, rule, to index) in arena indices

    def to_dot(self, name_of=str):
        sub = self.arena.__class__(self.arena.variant, self.arena.lts)
        remap = {i: k for k, i in enumerate(self.configs)}
        sub.configs = [self.arena.configs[i] for i in self.configs]
        sub.edges = [[] for _ in self.configs]
        for i, rule, j in self.edges:
            sub.edges[remap[i]].append((rule, remap[j]))
        return sub.to_dot(name_of=name_of)

    def to_json_obj(self):
        return {
            "winner": self.winner,
            "configs": list(self.configs),
            "edges": [{"from": i, "rule": rule, "to": j}
                      for (i, rule, j) in self.edges],
        }


def explain(arena, regions, strat_d, strat_s, start):
    """Solitaire strategy subgraph for the winner of the start position."""
    root = arena.initial_index(*start)
    winner = DUPLICATOR if root in regions.duplicator else SPOILER
    strat = strat_d if winner == DUPLICATOR else strat_s
    seen = {root}
    order = [root]
    edges = []
    head = 0
    while head < len(order):
        i = order[head]
        head += 1
        owner = arena.configs[i].owner
        out = arena.edges[i]
        if not out:
            continue
        if owner == winner:
            picks = [strat.choice[i]] if i in strat.choice else []
        else:
            picks = range(len(out))
        for k in picks:
            rule, j = out[k]
            edges.append((i, rule, j))
            if j not in seen:
                seen.add(j)
                order.append(j)
    return ExplanationGraph(arena, winner, order, edges)


def analyse(variant, lts, start, eager=False, max_configs=None):
    """Convenience: build the reachable arena from start and solve it."""
    from .arena import build_arena
    arena = build_arena(variant, lts, starts=[start], eager=eager,
                        max_configs=max_configs)
    regions, strat_d, strat_s = solve(arena)
    return arena, regions, strat_d, strat_s
