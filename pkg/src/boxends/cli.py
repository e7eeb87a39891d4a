"""Command line front end: evaluate, advise, enumerate lines, play, verify, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import engine, verify
from .measures import measures
from .oracle import Oracle
from .position import EmptyPositionError, NotationError, parse
from .strategy import OpenerRule, Response, controller_decision, opener_move

_RULE_TEXT = {
    OpenerRule.LONE_THREE_WITH_LOOPS: "shortest loop: lone 3-chain among loops",
    OpenerRule.FOUR_LOOP_NEAR_ZERO: "shortest loop: 4-loop near balance",
    OpenerRule.FOUR_LOOP_DEFICIT: "shortest loop: 4-loop against a deficit",
    OpenerRule.STANDARD: "standard move",
}


def _cmd_eval(args: argparse.Namespace) -> int:
    pos = parse(args.position)
    oracle = Oracle()
    m = measures(pos)
    print(f"position: {pos}")
    print(
        f"size={m.size} chains={m.num_chains} loops={m.num_loops} "
        f"theta={m.theta} f={m.f} s={m.s} tb={m.tb} c={m.c} v={oracle.value(pos)}"
    )
    for comp in pos.distinct():
        decision = controller_decision(pos.remove(comp), comp)
        reply = "keeps" if decision is Response.KEEP else "gives up"
        print(
            f"open {comp}: margin {oracle.value_given_open(pos, comp)}, controller {reply}"
        )
    if args.advantage is not None:
        outcome = args.advantage - oracle.value(pos)
        print(f"outcome with advantage {args.advantage:+d}: {outcome:+d}")
    return 0


def _cmd_best_move(args: argparse.Namespace) -> int:
    advice = opener_move(parse(args.position))
    print(f"open {advice.chosen} ({_RULE_TEXT[advice.rule]})")
    return 0


def _cmd_lines(args: argparse.Namespace) -> int:
    pos = parse(args.position)
    oracle = Oracle()
    for line in sorted(oracle.optimal_lines(pos)):
        print(" ".join(str(c) for c in line))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = verify.run_all(max_size=args.max_size, seed=args.seed)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for report in reports:
            print(report.summary())
            for failure in report.failures:
                print(f"  {failure.check} at {failure.position}: "
                      f"expected {failure.expected}, got {failure.actual}")
    return 0 if all(r.passed for r in reports) else 1


def _print_state(state: engine.GameState, human: int) -> None:
    pending = f", pending {state.pending}" if state.pending is not None else ""
    you, them = state.totals[human], state.totals[1 - human]
    print(f"remaining {state.remaining}{pending} | you {you}, engine {them}")


def _prompt_action(state: engine.GameState) -> engine.Action:
    while True:
        if state.pending is None:
            raw = input("your move (open COMPONENT): ").strip().lower()
            if raw.startswith("open"):
                raw = raw[4:].strip()
            try:
                pos = parse(raw)
            except NotationError:
                print("could not read that component")
                continue
            if len(pos) != 1:
                print("name a single component, like 3 or 4l")
                continue
            if pos.components[0] not in state.remaining:
                print(f"{pos.components[0]} is not on the board")
                continue
            return engine.Open(pos.components[0])
        raw = input("keep or give up (k/g): ").strip().lower()
        if raw in ("k", "keep"):
            return engine.KEEP
        if raw in ("g", "give", "give up", "give_up"):
            return engine.GIVE_UP
        print("answer k or g")


def _cmd_play(args: argparse.Namespace) -> int:
    pos = parse(args.position)
    human = 0 if args.role == "opener" else 1
    policy = engine.ClosedFormPolicy()
    state = engine.new_game(pos, args.advantage)
    print(f"playing {pos}, you are the {args.role}, advantage {args.advantage:+d}")
    while not state.terminal:
        acting = state.opener if state.pending is None else state.controller
        if acting == human:
            _print_state(state, human)
            try:
                action = _prompt_action(state)
            except EOFError:
                print("\nabandoned")
                return 1
        elif state.pending is None:
            action = engine.Open(policy.choose_open(state.remaining))
            print(f"engine opens {action.component}")
        else:
            response = policy.choose_response(state.remaining, state.pending)
            action = engine.KEEP if response is Response.KEEP else engine.GIVE_UP
            verb = "keeps control" if response is Response.KEEP else "takes everything"
            print(f"engine {verb}")
        state = engine.apply(state, action)
    you, them = state.totals[human], state.totals[1 - human]
    result = "you win" if you > them else ("engine wins" if them > you else "a tie")
    print(f"final score you {you}, engine {them}: {result}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import SessionStore, create_app

    store = SessionStore(snapshot_dir=args.snapshot_dir)
    ui_dir = Path(args.ui_dir) if args.ui_dir else None
    if ui_dir is not None and not ui_dir.is_dir():
        print(f"error: --ui-dir {ui_dir} is not a directory", file=sys.stderr)
        return 2
    uvicorn.run(create_app(store, ui_dir=ui_dir), host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxends",
        description="Exact values and optimal play for loop-and-chain endgames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="measures, value, and per-component margins")
    p.add_argument("position")
    p.add_argument("--advantage", type=int, default=None,
                   help="prior box advantage of the player to open")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("best-move", help="an optimal opening and the rule behind it")
    p.add_argument("position")
    p.set_defaults(func=_cmd_best_move)

    p = sub.add_parser("lines", help="all optimal opening orders")
    p.add_argument("position")
    p.set_defaults(func=_cmd_lines)

    p = sub.add_parser("play", help="play against the engine in the terminal")
    p.add_argument("position")
    p.add_argument("--advantage", type=int, default=0)
    p.add_argument("--as", dest="role", choices=["opener", "controller"],
                   default="opener")
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("verify", help="run the cross-check families")
    p.add_argument("--max-size", type=int, default=verify.DEFAULT_MAX_SIZE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("PORT", "8000")))
    p.add_argument("--snapshot-dir", default=None)
    p.add_argument("--ui-dir", default=None,
                   help="serve a built web UI from this directory at /ui")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NotationError, EmptyPositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
