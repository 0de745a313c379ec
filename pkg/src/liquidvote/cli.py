"""Command-line driver.

Exit codes: 0 yes, 1 no, 2 error, 3 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

from . import oracle
from .delegation_bribery import bribe
from .election_bribery import BriberyQuery, CostModel, Goal, SearchMode, solve_election_bribery
from .formats import (
    ParseError,
    parse_delegation,
    parse_instance,
    serialize_bribes,
    serialize_delegation,
    serialize_edits,
    serialize_instance,
)
from .graph import GraphError, VotingRule, validate_election_graph
from .reductions import (
    UndirectedGraph,
    clique_to_all_eb,
    epd_to_one_plurality,
    is_to_one_eb,
    random_election_graph,
    vc_to_equal_power,
)
from .winner_determination import Quantifier, SearchBudgetExceeded, decide, equal_power

YES, NO, ERROR, EXHAUSTED = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class Report:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.data: dict = {"command": args.command}
        self.lines: list[str] = []

    def add(self, key: str, value, line: Optional[str] = None) -> None:
        self.data[key] = value
        if line is not None:
            self.lines.append(line)

    def answer(self, yes: bool) -> int:
        self.data["answer"] = "yes" if yes else "no"
        self.lines.insert(0, "YES" if yes else "NO")
        return YES if yes else NO

    def emit(self, label: str, text: str, path: Optional[str]) -> None:
        """Write an artifact to ``path``, or include it in the report."""
        if path:
            Path(path).write_text(text)
            self.add(label, path, f"{label} written to {path}")
        else:
            self.data[label] = None
            self.data[label + "_text"] = text
            self.lines.append(text.rstrip("\n"))

    def flush(self) -> None:
        if self.json:
            print(json.dumps(self.data, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


# --------------------------------------------------------------------------
# Argument helpers
# --------------------------------------------------------------------------


def _rule(args) -> VotingRule:
    if args.rule == "plurality":
        if args.threshold is not None:
            raise UsageError("--threshold only applies to the majority rule")
        return VotingRule.plurality()
    return VotingRule.majority(args.threshold)


def _load_instance(path: str):
    g = parse_instance(Path(path).read_text())
    report = validate_election_graph(g)
    if not report.ok:
        raise GraphError("; ".join(v.message for v in report.violations))
    return g


def _rule_flags(p: argparse.ArgumentParser, quantifier: bool = True) -> None:
    p.add_argument("--rule", choices=["majority", "plurality"], required=True)
    p.add_argument("--threshold", type=int, help="votes needed under the majority rule")
    if quantifier:
        p.add_argument("--quantifier", choices=["one", "all"], required=True)


def _undirected(args) -> UndirectedGraph:
    return UndirectedGraph(tuple(args.vertices), tuple(tuple(e) for e in args.edge or ()))


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def cmd_validate(args, rep: Report) -> int:
    g = parse_instance(Path(args.file).read_text())
    report = validate_election_graph(g, prune=args.prune)
    for v in report.violations:
        rep.lines.append(f"{v.code}: {v.message}")
    rep.add("violations", [{"code": v.code, "message": v.message} for v in report.violations])
    st = report.stats
    rep.add(
        "stats",
        {
            "agents": st.n_agents,
            "alternatives": st.n_alternatives,
            "max_outdegree": st.max_outdegree,
            "dag": st.is_dag,
            "depth": st.depth,
        },
        f"agents={st.n_agents} alternatives={st.n_alternatives} max_outdegree={st.max_outdegree} "
        f"dag={'yes' if st.is_dag else 'no'} depth={st.depth if st.depth is not None else '-'}",
    )
    if args.prune:
        rep.add("pruned", list(report.pruned), f"pruned: {' '.join(report.pruned) or '-'}")
        if args.out:
            rep.emit("instance", serialize_instance(report.graph), args.out)
    return rep.answer(report.ok)


def _winner(args, g, s: str, rule: VotingRule, q: Quantifier):
    if args.command == "oracle":
        return oracle.oracle_winner(g, s, rule, q), None
    d = decide(g, s, rule, q, node_budget=args.node_budget)
    return d.answer, d.certificate


def cmd_winners(args, rep: Report) -> int:
    g = _load_instance(args.file)
    rule = _rule(args)
    q = Quantifier(args.quantifier)
    if args.all_alts:
        if args.certificate:
            raise UsageError("--certificate needs a single --alt")
        winners = [a for a in g.alternatives if _winner(args, g, a, rule, q)[0]]
        rep.add("winners", winners, "winners: " + (" ".join(winners) or "-"))
        return rep.answer(bool(winners))
    answer, cert = _winner(args, g, args.alt, rule, q)
    code = rep.answer(answer)
    if cert is not None:
        rep.emit("certificate", serialize_delegation(cert), args.certificate)
    return code


def cmd_equal_power(args, rep: Report) -> int:
    g = _load_instance(args.file)
    if args.command == "oracle":
        return rep.answer(oracle.oracle_equal_power(g))
    d = equal_power(g, node_budget=args.node_budget)
    code = rep.answer(d is not None)
    if d is not None:
        rep.emit("certificate", serialize_delegation(d), args.out)
    return code


def cmd_election_bribery(args, rep: Report) -> int:
    g = _load_instance(args.file)
    q = BriberyQuery(
        target=args.alt,
        budget=args.k,
        rule=_rule(args),
        quantifier=Quantifier(args.quantifier),
        cost_model=CostModel(args.cost),
        goal=Goal(args.goal),
        mode=SearchMode(args.mode),
    )
    if args.command == "oracle":
        e = oracle.oracle_election_bribery(g, q)
    else:
        e = solve_election_bribery(g, q, node_budget=args.node_budget)
    code = rep.answer(e is not None)
    if e is not None:
        rep.add("cost", e.cost(q.cost_model), f"cost: {e.cost(q.cost_model)}")
        rep.emit("edits", serialize_edits(e), args.out)
    return code


def cmd_delegation_bribery(args, rep: Report) -> int:
    d = parse_delegation(Path(args.file).read_text())
    rule = _rule(args)
    if args.command == "oracle":
        b = oracle.oracle_delegation_bribery(d, args.alt, args.k, rule, direct_voters_only=args.direct_voters_only)
    else:
        # the greedy only ever bribes direct voters, so the flag changes nothing here
        b = bribe(d, args.alt, args.k, rule)
    code = rep.answer(b is not None)
    if b is not None:
        rep.add("cost", len(b), f"cost: {len(b)}")
        rep.emit("bribes", serialize_bribes(b), args.out)
    return code


def cmd_generate(args, rep: Report) -> int:
    if args.kind == "random":
        g = random_election_graph(args.agents, args.alts, args.max_outdeg, acyclic=not args.cyclic, seed=args.seed)
        header = [f"# random seed={args.seed}"]
        rep.add("agents", g.n_agents)
    else:
        if args.kind == "epd-one-plur":
            out = epd_to_one_plurality(_load_instance(args.file))
        elif args.kind == "vc-epd":
            out = vc_to_equal_power(_undirected(args), args.ell, subdivide=args.subdivide)
        elif args.kind == "clique-all-eb":
            out = clique_to_all_eb(_undirected(args), args.ell)
        else:
            out = is_to_one_eb(_undirected(args), args.ell)
        g = out.graph
        header = [f"# target: {out.target}"]
        if out.budget is not None:
            header.append(f"# budget: {out.budget}")
        if out.trivial_no:
            header.append("# odd agent count: no-instance")
        rep.add("target", out.target)
        rep.add("budget", out.budget)
        rep.add("trivial_no", out.trivial_no)
        rep.add("roles", dict(sorted(Counter(out.roles.values()).items())))
        rep.add("agents", g.n_agents)
    text = "\n".join(header) + "\n" + serialize_instance(g)
    if args.out:
        Path(args.out).write_text(text)
        rep.add("instance", args.out, f"instance written to {args.out}")
    else:
        rep.data["instance"] = None
        rep.data["instance_text"] = text
        rep.lines.append(text.rstrip("\n"))
    return YES


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print a JSON report")


def _solver_parsers(sub, oracle_mode: bool) -> None:
    p = sub.add_parser("winners", help="winner determination over all delegations")
    p.add_argument("file")
    _rule_flags(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--alt")
    which.add_argument("--all-alts", action="store_true")
    if not oracle_mode:
        p.add_argument("--certificate", help="write the witness / counterexample delegation here")
        p.add_argument("--node-budget", type=int, help="limit on exact search nodes")
    _common(p)
    p.set_defaults(func=cmd_winners, certificate=None)

    p = sub.add_parser("equal-power", help="delegation splitting votes evenly between two alternatives")
    p.add_argument("file")
    if not oracle_mode:
        p.add_argument("--out")
        p.add_argument("--node-budget", type=int)
    _common(p)
    p.set_defaults(func=cmd_equal_power)

    p = sub.add_parser("election-bribery", help="edit the election graph so that a query holds")
    p.add_argument("file")
    p.add_argument("--alt", required=True)
    p.add_argument("--k", type=int, required=True)
    _rule_flags(p)
    p.add_argument("--cost", choices=["arcs", "agents"], default="arcs")
    p.add_argument("--goal", choices=["constructive", "destructive"], default="constructive")
    p.add_argument("--mode", choices=["restricted", "exhaustive"], default="restricted")
    p.add_argument("--out")
    if not oracle_mode:
        p.add_argument("--node-budget", type=int)
    _common(p)
    p.set_defaults(func=cmd_election_bribery)

    p = sub.add_parser("delegation-bribery", help="rewire agents of a fixed delegation")
    p.add_argument("file")
    p.add_argument("--alt", required=True)
    p.add_argument("--k", type=int, required=True)
    _rule_flags(p, quantifier=False)
    p.add_argument("--direct-voters-only", action="store_true")
    p.add_argument("--out")
    _common(p)
    p.set_defaults(func=cmd_delegation_bribery)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liquidvote", description="Liquid democracy election analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the election-graph invariants")
    p.add_argument("file")
    p.add_argument("--prune", action="store_true", help="drop agents without a path to an alternative")
    p.add_argument("--out", help="write the pruned instance here")
    _common(p)
    p.set_defaults(func=cmd_validate)

    _solver_parsers(sub, oracle_mode=False)

    p = sub.add_parser("generate", help="generate instances")
    gen = p.add_subparsers(dest="kind", required=True)
    for kind in ("vc-epd", "clique-all-eb", "is-one-eb"):
        g = gen.add_parser(kind)
        g.add_argument("--vertices", nargs="*", default=[], required=True)
        g.add_argument("--edge", nargs=2, action="append", metavar=("U", "V"))
        g.add_argument("--ell", type=int, required=True)
        if kind == "vc-epd":
            g.add_argument("--subdivide", action="store_true")
    g = gen.add_parser("epd-one-plur")
    g.add_argument("file")
    g = gen.add_parser("random")
    g.add_argument("--agents", type=int, required=True)
    g.add_argument("--alts", type=int, required=True)
    g.add_argument("--max-outdeg", type=int, required=True)
    g.add_argument("--cyclic", action="store_true")
    g.add_argument("--seed", type=int, required=True)
    for g in gen.choices.values():
        g.add_argument("--out")
        _common(g)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="brute-force answers for small instances")
    osub = p.add_subparsers(dest="problem", required=True)
    _solver_parsers(osub, oracle_mode=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "node_budget"):
        args.node_budget = None
    rep = Report(args)
    try:
        code = args.func(args, rep)
    except (SearchBudgetExceeded, oracle.OracleLimitError) as exc:
        print(f"liquidvote: {exc}", file=sys.stderr)
        return EXHAUSTED
    except UsageError as exc:
        parser.error(str(exc))
    except (ParseError, GraphError, ValueError, KeyError, OSError) as exc:
        print(f"liquidvote: error: {exc}", file=sys.stderr)
        return ERROR
    rep.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
