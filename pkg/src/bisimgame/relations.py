"""Coinductive reference oracles for behavioural equivalences and preorders.

The four weak equivalences (branching, eta, delay, weak) are instances of one
parametric transfer condition.  The parameter (x, y) controls whether the
states passed through before (x) and after (y) the matching visible step must
stay related to the challenger's source and target:

    (b, b) branching    (b, o) eta    (o, b) delay    (o, o) weak

Two optional divergence clauses are supported: the full one (a divergent
state must be matched by a non-empty internal computation to a related
state, "D4") and its immediate-successor restriction ("D2").

These oracles favour being obviously correct over speed: greatest-fixpoint
pair elimination over the full square of states.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .lts import tau_reach


@dataclass(frozen=True)
class XyParam:
    x: str
    y: str

    _NAMES = {("b", "b"): "branching", ("b", "o"): "eta",
              ("o", "b"): "delay", ("o", "o"): "weak"}

    def __post_init__(self):
        if self.x not in ("o", "b") or self.y not in ("o", "b"):
            raise ValueError("parameters must be 'o' or 'b'")

    @property
    def name(self):
        return self._NAMES[(self.x, self.y)]

    @classmethod
    def named(cls, name):
        for (x, y), n in cls._NAMES.items():
            if n == name:
                return cls(x, y)
        raise ValueError("unknown equivalence name %r" % name)


BRANCHING = XyParam("b", "b")
ETA = XyParam("b", "o")
DELAY = XyParam("o", "b")
WEAK = XyParam("o", "o")


class DivergenceCondition(enum.Enum):
    NONE = "none"
    D4 = "d4"
    D2 = "d2"


class PairRelation:
    """A set of state pairs over one LTS."""

    def __init__(self, lts, pairs, symmetric):
        self.lts = lts
        self.pairs = frozenset(pairs)
        self.symmetric = symmetric
        if symmetric:
            assert all((t, s) in self.pairs for (s, t) in self.pairs)

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __le__(self, other):
        return self.pairs <= other.pairs

    def inverse(self):
        return PairRelation(self.lts, {(t, s) for (s, t) in self.pairs},
                            self.symmetric)

    def intersect(self, other):
        return PairRelation(self.lts, self.pairs & other.pairs,
                            self.symmetric and other.symmetric)

    def classes(self):
        """Equivalence classes, sorted by least member (symmetric only)."""
        seen = set()
        out = []
        for s in range(self.lts.num_states):
            if s in seen:
                continue
            cls = sorted({t for (u, t) in self.pairs if u == s} | {s})
            seen.update(cls)
            out.append(cls)
        return out

    def to_json(self):
        return json.dumps({"symmetric": self.symmetric,
                           "pairs": sorted(map(list, self.pairs))})

    def _related_sets(self):
        rel = [set() for _ in range(self.lts.num_states)]
        for s, t in self.pairs:
            rel[s].add(t)
        return rel


def _restricted_closure(lts, t, allowed):
    """States reachable from t by internal steps staying inside allowed.

    t itself must qualify; returns the empty set otherwise.
    """
    if t not in allowed:
        return set()
    seen = {t}
    stack = [t]
    while stack:
        for d in lts.tau_out(stack.pop()):
            if d in allowed and d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def _match(lts, rel, s, a, s_prime, t, p):
    """One transfer-condition check: can t answer the step s -a-> s_prime?

    rel is the candidate relation as per-state sets (rel[u] = partners of u).
    The strengthened reading is used: when x (resp. y) is 'b', every state on
    the internal path before (after) the matching step must be related to s
    (to s_prime).
    """
    if a.is_tau and t in rel[s_prime]:
        return True
    if p.x == "b":
        before = _restricted_closure(lts, t, rel[s])
    else:
        before = lts.tau_closure(t)
    targets = rel[s_prime]
    for t1 in before:
        for b, t2 in lts.out(t1):
            if b.text != a.text:
                continue
            if p.y == "b":
                # an empty trailing path suffices exactly when t2 qualifies
                if t2 in targets:
                    return True
            else:
                if lts.tau_closure(t2) & targets:
                    return True
    return False


def weak_match_exists(lts, R, s, a, s_prime, t, p):
    """Public wrapper over the transfer check for an explicit relation R."""
    return _match(lts, R._related_sets(), s, a, s_prime, t, p)


def _divergence_ok(lts, rel, s, t, div):
    """Divergence clause for the pair (s, t).

    Good states are those with a related partner among the targets of a
    non-empty internal computation from t (immediate successors only for D2).
    The clause fails iff some infinite internal path from s avoids Good,
    which for finite systems means s reaches an internal-step cycle inside
    the complement of Good.  For D2 the matched state must lie strictly
    after s on the path, so s itself being good does not help.
    """
    if div is DivergenceCondition.D4:
        partners = tau_reach(lts, t, strict=True)
    else:
        partners = set(lts.tau_out(t))
    if not partners:
        good = set()
    else:
        good = {u for u in range(lts.num_states) if rel[u] & partners}
    if s in good and div is DivergenceCondition.D4:
        return True
    bad = set(range(lts.num_states)) - good
    if div is DivergenceCondition.D4:
        entry = [s] if s in bad else []
    else:
        entry = [d for d in lts.tau_out(s) if d in bad]
    reach = set()
    for e in entry:
        reach |= _restricted_closure(lts, e, bad)
    for u in reach:
        seen = set()
        stack = [d for d in lts.tau_out(u) if d in bad]
        while stack:
            d = stack.pop()
            if d == u:
                return False
            if d not in seen:
                seen.add(d)
                stack.extend(x for x in lts.tau_out(d) if x in bad)
    return True


def _pair_ok(lts, rel, s, t, p, div):
    for a, s_prime in lts.out(s):
        if not _match(lts, rel, s, a, s_prime, t, p):
            return False
    if div is not DivergenceCondition.NONE:
        if not _divergence_ok(lts, rel, s, t, div):
            return False
    return True


def generic_bisim(lts, p, div=DivergenceCondition.NONE):
    """Largest symmetric relation satisfying the parametric transfer
    condition (and the chosen divergence clause), by pair elimination."""
    n = lts.num_states
    rel = [set(range(n)) for _ in range(n)]
    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in sorted(rel[s]):
                if t < s or t not in rel[s]:
                    continue
                if (_pair_ok(lts, rel, s, t, p, div)
                        and _pair_ok(lts, rel, t, s, p, div)):
                    continue
                rel[s].discard(t)
                rel[t].discard(s)
                changed = True
    pairs = {(s, t) for s in range(n) for t in rel[s]}
    return PairRelation(lts, pairs, symmetric=True)


def generic_sim(lts, p):
    """Largest relation satisfying the one-directional transfer condition
    (a preorder; the left state is simulated by the right one)."""
    n = lts.num_states
    rel = [set(range(n)) for _ in range(n)]
    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in sorted(rel[s]):
                if t not in rel[s]:
                    continue
                if not _pair_ok(lts, rel, s, t, p, DivergenceCondition.NONE):
                    rel[s].discard(t)
                    changed = True
    pairs = {(s, t) for s in range(n) for t in rel[s]}
    return PairRelation(lts, pairs, symmetric=False)


def strong_bisim(lts):
    """Strong bisimilarity by signature-based partition refinement."""
    n = lts.num_states
    block = [0] * n
    while True:
        sigs = {}
        new = [0] * n
        for s in range(n):
            sig = (block[s],
                   frozenset((a.text, block[d]) for (a, d) in lts.out(s)))
            new[s] = sigs.setdefault(sig, len(sigs))
        if new == block:
            break
        block = new
    pairs = {(s, t) for s in range(n) for t in range(n) if block[s] == block[t]}
    return PairRelation(lts, pairs, symmetric=True)


def branching_bisim_direct(lts):
    """Independent branching-bisimilarity oracle using the endpoint-only
    transfer condition, for cross-checking the parametric one."""
    n = lts.num_states
    rel = [set(range(n)) for _ in range(n)]

    def ok(s, t):
        for a, s_prime in lts.out(s):
            if a.is_tau and t in rel[s_prime]:
                continue
            for t1 in lts.tau_closure(t):
                if t1 not in rel[s]:
                    continue
                if any(b.text == a.text and t2 in rel[s_prime]
                       for (b, t2) in lts.out(t1)):
                    break
            else:
                return False
        return True

    changed = True
    while changed:
        changed = False
        for s in range(n):
            for t in sorted(rel[s]):
                if t < s or t not in rel[s]:
                    continue
                if not (ok(s, t) and ok(t, s)):
                    rel[s].discard(t)
                    rel[t].discard(s)
                    changed = True
    pairs = {(s, t) for s in range(n) for t in rel[s]}
    return PairRelation(lts, pairs, symmetric=True)


def has_stuttering_property(lts, R):
    """True iff whenever the endpoints of an internal-step path are related,
    every pair of states along the path is related too."""
    rel = R._related_sets()
    for p, q in R.pairs:
        if q not in lts.tau_closure(p):
            continue
        into_q = {w for w in range(lts.num_states) if q in lts.tau_closure(w)}
        mids = lts.tau_closure(p) & into_q
        for v in mids:
            for w in lts.tau_closure(v) & into_q:
                if w not in rel[v]:
                    return False
    return True
