"""Solver for the arena's two-player game with a Buechi objective.

The defender (Duplicator) wins a play iff it is finite and ends in a stuck
challenger configuration, or it is infinite and visits accepting (check
reward) configurations infinitely often.  These games are memoryless
determined; we compute both winning regions and positional strategies with
the classical attractor iteration:

    repeat
        A := defender's attractor of the accepting configurations
        B := everything outside A (no accepting config reachable on the
             defender's terms)
        give the challenger her attractor of B and remove it
    until B is empty; the rest is the defender's region

Dead ends are modelled as virtual self-loops: a stuck challenger becomes an
accepting sink (defender wins), a stuck defender a non-accepting sink.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arena import DUPLICATOR, SPOILER


@dataclass
class WinningRegions:
    duplicator: set
    spoiler: set

    def winner(self, i):
        return DUPLICATOR if i in self.duplicator else SPOILER


@dataclass
class Strategy:
    player: str
    choice: dict  # config index -> move index into arena.edges[config]


def _attractor(owner_is_mine, succ, preds, alive, targets):
    """Attractor of targets for the player described by owner_is_mine,
    within the subgame induced by alive.  Returns (membership, rank)."""
    n = len(succ)
    inside = [False] * n
    rank = [0] * n
    cnt = [0] * n
    for i in range(n):
        if alive[i] and not owner_is_mine[i]:
            cnt[i] = sum(1 for j in succ[i] if alive[j])
    queue = []
    for i in targets:
        if alive[i] and not inside[i]:
            inside[i] = True
            queue.append(i)
    head = 0
    while head < len(queue):
        i = queue[head]
        head += 1
        for p in preds[i]:
            if not alive[p] or inside[p]:
                continue
            if owner_is_mine[p]:
                inside[p] = True
                rank[p] = rank[i] + 1
                queue.append(p)
            else:
                cnt[p] -= 1
                if cnt[p] == 0:
                    inside[p] = True
                    rank[p] = rank[i] + 1
                    queue.append(p)
    return inside, rank


def solve(arena):
    """Winning regions plus positional winning strategies for both players.

    Tie-breaking is deterministic: among equally good moves the first in the
    arena's edge order (sorted by rule id, then target) is chosen.
    """
    n = len(arena.configs)
    is_dup = [c.owner == DUPLICATOR for c in arena.configs]
    # unique successors, with a virtual self-loop on dead ends
    succ = []
    acc = []
    for i in range(n):
        targets = sorted({j for (_, j) in arena.edges[i]})
        if targets:
            acc.append(arena.configs[i].accepting)
        else:
            targets = [i]
            # stuck challenger: defender wins; stuck defender: she loses
            acc.append(not is_dup[i])
        succ.append(targets)
    preds = [[] for _ in range(n)]
    for i, targets in enumerate(succ):
        for j in targets:
            preds[j].append(i)

    is_spo = [not d for d in is_dup]
    alive = [True] * n
    removed_level = [0] * n
    removed_rank = [0] * n
    level = 0
    in_a, rank_a = [False] * n, [0] * n
    while True:
        targets = [i for i in range(n) if alive[i] and acc[i]]
        in_a, rank_a = _attractor(is_dup, succ, preds, alive, targets)
        avoid = [i for i in range(n) if alive[i] and not in_a[i]]
        if not avoid:
            break
        in_c, rank_c = _attractor(is_spo, succ, preds, alive, avoid)
        for i in range(n):
            if in_c[i]:
                alive[i] = False
                removed_level[i] = level
                removed_rank[i] = rank_c[i]
        level += 1

    dup_region = {i for i in range(n) if alive[i]}
    spo_region = {i for i in range(n) if not alive[i]}

    strat_d = {}
    for i in dup_region:
        if not is_dup[i] or not arena.edges[i]:
            continue
        if rank_a[i] > 0:
            for k, (_, j) in enumerate(arena.edges[i]):
                if alive[j] and rank_a[j] < rank_a[i]:
                    strat_d[i] = k
                    break
        else:
            best = None
            for k, (_, j) in enumerate(arena.edges[i]):
                if alive[j] and (best is None or rank_a[j] < rank_a[best[1]]):
                    best = (k, j)
            if best is not None:
                strat_d[i] = best[0]
        assert i in strat_d, "no winning defender move found"

    strat_s = {}
    for i in spo_region:
        if is_dup[i] or not arena.edges[i]:
            continue
        # any move that does not increase (level, rank) is safe: defender
        # configurations outside the trap sets strictly descend, and the
        # trap sets contain no accepting configurations
        li, ri = removed_level[i], removed_rank[i]
        for k, (_, j) in enumerate(arena.edges[i]):
            if alive[j]:
                continue
            lj, rj = removed_level[j], removed_rank[j]
            if lj < li or (lj == li and rj <= ri):
                strat_s[i] = k
                break
        assert i in strat_s, "no winning challenger move found"

    regions = WinningRegions(dup_region, spo_region)
    return (regions,
            Strategy(DUPLICATOR, strat_d),
            Strategy(SPOILER, strat_s))


def regions_to_json(arena, regions, strat_d, strat_s):
    return json.dumps({
        "duplicator": sorted(regions.duplicator),
        "spoiler": sorted(regions.spoiler),
        "strategy_d": {str(i): k for i, k in sorted(strat_d.choice.items())},
        "strategy_s": {str(i): k for i, k in sorted(strat_s.choice.items())},
    })
