"""Command-line entry points.

Subcommands: simulate, plan, eval-logic, check-ctl, ask, bench-corpus,
serve. Exit code 0 on success, 2 on validation errors (diagnostics go to
stderr). `--scenario golden` and `--tree golden` resolve to the bundled
golden scenario and the tree planned from it with the default config.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .catalog import CATALOG
from .config import ServiceConfig, load_config, resolve_scenario_path
from .errors import DomainError, LlmError, ParseError
from .logic import parse_ctl, parse_formula
from .pipeline import (FallbackBackend, LlmBackend, MockLlmClient, answer,
                       evaluate_corpus, load_paraphrase_corpus, make_session)
from .planner import (MctsConfig, action_to_doc, plan, run_episode,
                      tree_from_json, tree_to_json)
from .rag import HashEmbedder, index as rag_index, load_corpus
from .scoring import EvidenceQueryContext, score_all
from .transit import PENDING, RewardWeights, generate_demand, load_scenario

GOLDEN_CONFIG = MctsConfig(iterations=240, seed=7)


def _load_scenario(name: str):
    return load_scenario(str(resolve_scenario_path(name)))


def _golden_tree(weights: RewardWeights):
    scenario = _load_scenario("golden")
    request = min((r for r in scenario.world.requests if r.status == PENDING),
                  key=lambda r: (r.t_p, r.id))
    return plan(scenario.world, request, GOLDEN_CONFIG, weights, scenario.travel).tree, scenario


def _load_tree(name: str, weights: RewardWeights):
    if name == "golden":
        return _golden_tree(weights)
    with open(name, encoding="utf-8") as fh:
        return tree_from_json(fh.read()), None


def _backend(kind: str):
    if kind == "fallback":
        return FallbackBackend()
    if kind == "mock":
        return LlmBackend(MockLlmClient.bundled())
    raise DomainError("remote backend needs a config file; use `serve --config`")


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_simulate(args) -> int:
    scenario = _load_scenario(args.scenario)
    config = MctsConfig(iterations=args.iterations, seed=args.seed)
    weights = RewardWeights(args.weight_a, args.weight_b)
    demand = generate_demand(args.seed, args.horizon, args.rate, scenario.travel,
                             start_time=scenario.world.time,
                             first_id=max((r.id for r in scenario.world.requests), default=-1) + 1)
    result = run_episode(scenario, demand, config, weights,
                         policy=args.policy, policy_seed=args.seed)
    _emit({"policy": args.policy, "requests": len(demand),
           "assigned": result.assigned, "rejected": result.rejected,
           "reward": result.reward.total,
           "fulfillment_part": result.reward.fulfillment_part,
           "timing_part": result.reward.timing_part,
           "decisions": [{"request_id": rid, "action": action_to_doc(a)}
                         for rid, a in result.decisions]})
    return 0


def cmd_plan(args) -> int:
    scenario = _load_scenario(args.scenario)
    pending = [r for r in scenario.world.requests if r.status == PENDING]
    if not pending:
        raise DomainError("scenario has no pending request")
    request = min(pending, key=lambda r: (r.t_p, r.id))
    config = replace(GOLDEN_CONFIG, iterations=args.iterations, seed=args.seed)
    weights = RewardWeights(args.weight_a, args.weight_b)
    outcome = plan(scenario.world, request, config, weights, scenario.travel)
    text = tree_to_json(outcome.tree)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"decision: {outcome.decision.label()}; tree written to {args.out}",
              file=sys.stderr)
    else:
        sys.stdout.write(text + "\n")
    return 0


def cmd_eval_logic(args) -> int:
    weights = RewardWeights(args.weight_a, args.weight_b)
    formulas = parse_formula(args.formula)
    tree, scenario = _load_tree(args.tree, weights)
    request_id = args.request if args.request is not None \
        else tree.node(tree.root).action.request_id
    ctx = EvidenceQueryContext(tree, request_id, weights, scenario,
                               GOLDEN_CONFIG if scenario else None)
    _emit({"results": [r.to_doc() for r in score_all(formulas, ctx)]})
    return 0


def cmd_check_ctl(args) -> int:
    from .ctl import build_kripke, check

    weights = RewardWeights(args.weight_a, args.weight_b)
    formula = parse_ctl(args.formula)
    tree, _ = _load_tree(args.tree, weights)
    request_id = args.request if args.request is not None \
        else tree.node(tree.root).action.request_id
    kripke = build_kripke(tree, request_id)
    satisfying = check(kripke, formula)
    _emit({"satisfying": sorted(satisfying), "holds_at_root": kripke.root in satisfying})
    return 0


def cmd_ask(args) -> int:
    scenario = _load_scenario(args.scenario)
    weights = RewardWeights(args.weight_a, args.weight_b)
    config = replace(GOLDEN_CONFIG, seed=args.seed)
    store = rag_index(load_corpus(args.corpus_dir), HashEmbedder())
    session = make_session("cli", scenario, config, weights, store)
    turn = answer(args.query, session, _backend(args.backend))
    _emit(turn.to_doc())
    return 0


def cmd_bench_corpus(args) -> int:
    corpus = load_paraphrase_corpus() if args.corpus is None \
        else json.load(open(args.corpus, encoding="utf-8"))
    report = evaluate_corpus(corpus, _backend(args.backend), attempts=args.attempts)
    _emit(report.to_doc())
    return 0


def cmd_suggestions(_args) -> int:
    _emit({"suggestions": [{"type_id": e.id, "category": e.category, "text": e.text}
                           for e in CATALOG]})
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    config = load_config(args.config) if args.config else ServiceConfig()
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    serve(config)
    return 0


def _add_weight_args(parser) -> None:
    parser.add_argument("--weight-a", type=float, default=1.0,
                        help="fulfillment weight (default 1.0)")
    parser.add_argument("--weight-b", type=float, default=-0.01,
                        help="timing weight (default -0.01)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treexplain",
        description="Plan paratransit assignments with MCTS and explain them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a demand episode and report metrics")
    p.add_argument("--scenario", default="golden")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=64)
    p.add_argument("--horizon", type=int, default=240, help="demand horizon in minutes")
    p.add_argument("--rate", type=float, default=0.05, help="requests per minute")
    p.add_argument("--policy", choices=("mcts", "random"), default="mcts")
    _add_weight_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plan", help="plan one decision epoch and emit the tree")
    p.add_argument("--scenario", default="golden")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--iterations", type=int, default=240)
    p.add_argument("--out", help="tree file (default: stdout)")
    _add_weight_args(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("eval-logic", help="score evidence formulas against a tree")
    p.add_argument("formula")
    p.add_argument("--tree", default="golden", help="tree file or 'golden'")
    p.add_argument("--request", type=int, default=None)
    _add_weight_args(p)
    p.set_defaults(func=cmd_eval_logic)

    p = sub.add_parser("check-ctl", help="model-check a CTL formula against a tree")
    p.add_argument("formula")
    p.add_argument("--tree", default="golden", help="tree file or 'golden'")
    p.add_argument("--request", type=int, default=None)
    _add_weight_args(p)
    p.set_defaults(func=cmd_check_ctl)

    p = sub.add_parser("ask", help="one-shot pipeline query against a scenario")
    p.add_argument("query")
    p.add_argument("--scenario", default="golden")
    p.add_argument("--backend", choices=("fallback", "mock"), default="fallback")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--corpus-dir", default=None)
    _add_weight_args(p)
    p.set_defaults(func=cmd_ask)

    p = sub.add_parser("bench-corpus", help="accuracy report on a labeled corpus")
    p.add_argument("--backend", choices=("fallback", "mock"), default="fallback")
    p.add_argument("--corpus", default=None, help="corpus JSON (default: bundled)")
    p.add_argument("--attempts", type=int, default=3)
    p.set_defaults(func=cmd_bench_corpus)

    p = sub.add_parser("suggestions", help="list the canonical catalog queries")
    p.set_defaults(func=cmd_suggestions)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None)
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LlmError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
