"""Command-line interface.

Exit codes: 0 related, 1 not related, 2 error, 3 game/oracle disagreement.

Variant specifications:

    strong | lbb
    branching | eta | delay | weak          (append -ed for divergence)
    sim:<xy> | simeq:<xy> | dual:<xy>       with xy in {bb, bo, ob, oo}
    raw:E=<faces>,div=<bool>                e.g. raw:E=frown+smile,div=false

When two files are given, states of the second one are written file2:<n>
on the command line and in verdicts; transcripts use bare local indices.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import relations
from .arena import (COMPACT, DUAL, GENERIC, LIMITED, SIM, SIMEQ, STRONG,
                    ArenaCapExceeded, GameVariant, build_arena, face_set)
from .diagnostics import (SessionError, analyse, drive, explain, new_session,
                          step, transcript)
from .lts import LtsError, disjoint_union, parse_aut, random_lts, serialize_aut
from .relations import DivergenceCondition, XyParam
from .solver import solve

EXIT_RELATED = 0
EXIT_UNRELATED = 1
EXIT_ERROR = 2
EXIT_DISAGREE = 3


class CliError(Exception):
    pass


@dataclass
class VariantSpec:
    text: str
    game: GameVariant
    xy: XyParam | None       # transfer parameter when meaningful
    div: DivergenceCondition
    is_equivalence: bool

    @property
    def is_simulation(self):
        return self.game.kind == SIM


def parse_variant(text):
    div = DivergenceCondition.NONE
    name = text
    if name.endswith("-ed"):
        div = DivergenceCondition.D4
        name = name[:-3]
    if name == "strong":
        return VariantSpec(text, GameVariant(STRONG), None, div, True)
    if name == "lbb":
        return VariantSpec(text, GameVariant(LIMITED), XyParam("b", "b"),
                           div, True)
    if name in ("branching", "eta", "delay", "weak"):
        p = XyParam.named(name)
        return VariantSpec(text, GameVariant(GENERIC, face_set(p),
                                             div is DivergenceCondition.D4),
                           p, div, True)
    if name.startswith(("sim:", "simeq:", "dual:")):
        kind_txt, _, xy = name.partition(":")
        if sorted(xy) not in (["b", "b"], ["b", "o"], ["o", "o"]) or len(xy) != 2:
            raise CliError("bad transfer parameter %r (want bb, bo, ob or oo)" % xy)
        p = XyParam(xy[0], xy[1])
        kind = {"sim": SIM, "simeq": SIMEQ, "dual": DUAL}[kind_txt]
        return VariantSpec(text, GameVariant(kind, face_set(p)), p, div,
                           kind != SIM)
    if name.startswith("raw:"):
        faces = frozenset()
        rdiv = False
        for part in name[4:].split(","):
            key, _, val = part.partition("=")
            if key == "E":
                faces = frozenset(f for f in val.split("+") if f)
                if not faces <= {"frown", "smile"}:
                    raise CliError("bad face set %r" % val)
            elif key == "div":
                rdiv = val.lower() in ("1", "true", "yes")
            else:
                raise CliError("bad raw variant field %r" % part)
        x = "o" if "frown" in faces else "b"
        y = "o" if "smile" in faces else "b"
        return VariantSpec(text, GameVariant(GENERIC, faces, rdiv),
                           XyParam(x, y),
                           DivergenceCondition.D4 if rdiv
                           else DivergenceCondition.NONE, True)
    raise CliError("unknown variant %r" % text)


def _load_inputs(args):
    with open(args.file) as f:
        l1 = parse_aut(f.read(), tau_label=args.tau)
    if getattr(args, "file2", None):
        with open(args.file2) as f:
            l2 = parse_aut(f.read(), tau_label=args.tau)
        union, offset = disjoint_union(l1, l2)
        return union, offset
    return l1, None


def _parse_state(text, lts, offset):
    text = str(text)
    if text.startswith("file2:"):
        if offset is None:
            raise CliError("file2: used but only one file given")
        n = int(text[6:])
        if n >= lts.num_states - offset:
            raise CliError("state %s out of range" % text)
        return offset + n
    if text.startswith("file1:"):
        text = text[6:]
    n = int(text)
    if n >= (offset if offset is not None else lts.num_states):
        raise CliError("state %r out of range" % text)
    return n


def _name_fn(args, offset):
    names = args.names.split(",") if getattr(args, "names", None) else []

    def name_of(i):
        if offset is not None and i >= offset:
            return str(i - offset)
        if i < len(names):
            return names[i]
        return str(i)
    return name_of


def _display(i, offset):
    if offset is not None and i >= offset:
        return "file2:%d" % (i - offset)
    return str(i)


def _oracle_pairs(spec, lts):
    if spec.game.kind == STRONG:
        return relations.strong_bisim(lts).pairs
    if spec.is_simulation:
        return relations.generic_sim(lts, spec.xy).pairs
    if spec.game.kind == SIMEQ:
        sim = relations.generic_sim(lts, spec.xy).pairs
        return sim & {(t, s) for (s, t) in sim}
    return relations.generic_bisim(lts, spec.xy, spec.div).pairs


def _game_related(spec, lts, s, t, max_arena):
    arena = build_arena(spec.game, lts, starts=[(s, t)], max_configs=max_arena)
    regions, _, _ = solve(arena)
    return arena.initial_index(s, t) in regions.duplicator


def cmd_compare(args):
    spec, lts, offset, s, t = _explain_inputs(args)
    results = {}
    if args.method in ("game", "both"):
        results["game"] = _game_related(spec, lts, s, t, args.max_arena)
    if args.method in ("oracle", "both"):
        results["oracle"] = (s, t) in _oracle_pairs(spec, lts)
    related = next(iter(results.values()))
    pair = "(%s, %s)" % (_display(s, offset), _display(t, offset))
    if args.method == "both":
        agree = results["game"] == results["oracle"]
        print("%s %s under %s (game: %s, oracle: %s, agreement: %s)"
              % (pair, "related" if related else "not related", spec.text,
                 results["game"], results["oracle"], agree))
        if not agree:
            return EXIT_DISAGREE
    else:
        print("%s %s under %s (%s)" % (pair, "related" if related else
                                       "not related", spec.text, args.method))
    return EXIT_RELATED if related else EXIT_UNRELATED


def cmd_partition(args):
    spec = parse_variant(args.variant)
    if not spec.is_equivalence:
        raise CliError("partition needs an equivalence variant, not %r"
                       % spec.text)
    lts, _ = _load_inputs(args)
    if args.method in ("oracle", "both"):
        pairs = _oracle_pairs(spec, lts)
    else:
        arena = build_arena(spec.game, lts, starts="all",
                            max_configs=args.max_arena)
        regions, _, _ = solve(arena)
        pairs = {(s, t) for s in range(lts.num_states)
                 for t in range(lts.num_states)
                 if arena.initial_index(s, t) in regions.duplicator}
    if args.method == "both":
        arena = build_arena(spec.game, lts, starts="all",
                            max_configs=args.max_arena)
        regions, _, _ = solve(arena)
        game_pairs = {(s, t) for s in range(lts.num_states)
                      for t in range(lts.num_states)
                      if arena.initial_index(s, t) in regions.duplicator}
        if game_pairs != pairs:
            print("game and oracle partitions disagree")
            return EXIT_DISAGREE
    rel = relations.PairRelation(lts, pairs, symmetric=True)
    for cls in rel.classes():
        print("{%s}" % ", ".join(str(x) for x in cls))
    return EXIT_RELATED


def _explain_inputs(args):
    spec = parse_variant(args.variant)
    lts, offset = _load_inputs(args)
    s = _parse_state(args.left, lts, offset)
    right = str(args.right)
    if offset is not None and not right.startswith(("file1:", "file2:")):
        right = "file2:" + right
    t = _parse_state(right, lts, offset)
    return spec, lts, offset, s, t


def cmd_explain(args):
    spec, lts, offset, s, t = _explain_inputs(args)
    arena, regions, sd, ss = analyse(spec.game, lts, (s, t),
                                     max_configs=args.max_arena)
    name_of = _name_fn(args, offset)
    related = arena.initial_index(s, t) in regions.duplicator
    if args.format == "text":
        if related:
            print("states are related; Duplicator solitaire emitted")
            graph = explain(arena, regions, sd, ss, (s, t))
            print(graph.to_dot(name_of=name_of), end="")
        else:
            text, _ = drive(arena, regions, sd, ss, (s, t), name_of=name_of)
            print(text, end="")
    else:
        graph = explain(arena, regions, sd, ss, (s, t))
        if args.format == "dot":
            print(graph.to_dot(name_of=name_of), end="")
        else:
            print(json.dumps(graph.to_json_obj()))
    return EXIT_RELATED if related else EXIT_UNRELATED


def cmd_arena(args):
    spec = parse_variant(args.variant)
    lts, offset = _load_inputs(args)
    if args.start:
        s_txt, _, t_txt = args.start.partition(",")
        s = _parse_state(s_txt, lts, offset)
        right = t_txt
        if offset is not None and not right.startswith(("file1:", "file2:")):
            right = "file2:" + right
        t = _parse_state(right, lts, offset)
        starts = [(s, t)]
    else:
        starts = "all"
    arena = build_arena(spec.game, lts, starts=starts, eager=args.eager,
                        max_configs=args.max_arena)
    if args.format == "dot":
        print(arena.to_dot(name_of=_name_fn(args, offset)), end="")
    else:
        print(json.dumps(arena.to_json_obj()))
    return EXIT_RELATED


def cmd_play(args):
    spec, lts, offset, s, t = _explain_inputs(args)
    arena, regions, sd, ss = analyse(spec.game, lts, (s, t),
                                     max_configs=args.max_arena)
    name_of = _name_fn(args, offset)
    human = args.side
    session = new_session(arena, regions, sd, ss, (s, t), human_side=human,
                          name_of=name_of)
    winner = "Duplicator" if session.current in regions.duplicator else "Spoiler"
    print("You play %s; the engine holds a winning strategy for %s."
          % ("Spoiler" if human == "S" else "Duplicator", winner))
    while not session.terminal:
        c = session.current_config
        if c.owner == human:
            print("Your options:")
            for k, (rule, j) in enumerate(session.legal_moves):
                tgt = arena.configs[j]
                print("  [%d] %s -> position (%s, %s)" % (
                    k, rule, name_of(tgt.left), name_of(tgt.right)))
            try:
                line = input("move> ").strip()
            except EOFError:
                print("no input; stopping")
                break
            if line in ("q", "quit"):
                break
            try:
                step(session, int(line))
            except (ValueError, SessionError) as e:
                print("bad move: %s" % e)
                continue
        else:
            step(session)
        print(transcript(session), end="")
    if session.terminal:
        print("Winner: %s" %
              ("Duplicator" if session.winner_if_terminal == "D" else "Spoiler"))
    return EXIT_RELATED


def cmd_gen(args):
    lts = random_lts(args.seed, args.states, args.labels,
                     edge_density=args.density, tau_fraction=args.tau_fraction,
                     tau_label=args.tau)
    text = serialize_aut(lts)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        print(text, end="")
    return EXIT_RELATED


def cmd_serve(args):
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_RELATED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bisimgame",
        description="Game-based equivalence checking for labelled transition systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, two_files=True, pair=False):
        p.add_argument("file", help="LTS in .aut format")
        if two_files:
            p.add_argument("file2", nargs="?", default=None,
                           help="optional second LTS (compared via disjoint union)")
        if pair:
            p.add_argument("-s", "--left", required=True,
                           help="left state (in the first file)")
            p.add_argument("-t", "--right", required=True,
                           help="right state (second file if given, "
                                "or file1:<n>/file2:<n>)")
        p.add_argument("--variant", default="branching")
        p.add_argument("--tau", default="tau",
                       help="label text of the internal action (e.g. tau, i)")
        p.add_argument("--max-arena", type=int, default=None)

    p = sub.add_parser("compare", help="decide whether two states are related")
    common(p, pair=True)
    p.add_argument("--method", choices=("game", "oracle", "both"),
                   default="game")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("partition", help="print equivalence classes")
    common(p, two_files=False)
    p.add_argument("--method", choices=("game", "oracle", "both"),
                   default="oracle")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("explain", help="emit a transcript or strategy graph")
    common(p, pair=True)
    p.add_argument("--format", choices=("text", "dot", "json"), default="text")
    p.add_argument("--names", default=None,
                   help="comma-separated display names for first-file states")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("arena", help="export a game arena")
    common(p)
    p.add_argument("--start", default=None, help="start position s,t")
    p.add_argument("--eager", action="store_true",
                   help="drop the defender's match-and-move rule")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--names", default=None)
    p.set_defaults(func=cmd_arena)

    p = sub.add_parser("play", help="interactive terminal session")
    common(p, pair=True)
    p.add_argument("--side", choices=("S", "D"), default="D",
                   help="which player you control")
    p.add_argument("--names", default=None)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("gen", help="generate a random LTS")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--states", type=int, default=8)
    p.add_argument("--labels", type=int, default=2)
    p.add_argument("--density", type=float, default=0.2)
    p.add_argument("--tau-fraction", type=float, default=0.3)
    p.add_argument("--tau", default="tau")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, LtsError, ArenaCapExceeded, OSError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
