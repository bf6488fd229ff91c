"""Game-based equivalence checker for labelled transition systems."""

from .lts import (ActionLabel, Lts, LtsError, ParseError, disjoint_union,
                  is_divergent, parse_aut, random_lts, serialize_aut,
                  tau_reach)
from .relations import (BRANCHING, DELAY, ETA, WEAK, DivergenceCondition,
                        PairRelation, XyParam, generic_bisim, generic_sim,
                        has_stuttering_property, strong_bisim,
                        weak_match_exists)
from .arena import (ArenaCapExceeded, Config, GameVariant, Move, build_arena,
                    face_set, initial_config, moves)
from .solver import Strategy, WinningRegions, solve

__all__ = [name for name in dir() if not name.startswith("_")]
