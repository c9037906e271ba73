"""Command-line interface.

Exit codes: 0 when the tested relation holds (or all checks pass), 1 when
it does not, 2 for usage, parse and dimension errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .channel import ChannelError, DecisionProblem, Prior, brute_force_reward, optimal_reward
from .exact_linear import DimensionError
from .fileformat import MatrixFileError, format_matrix, read_channel, read_matrix, read_vector
from .orders import (
    Verdict,
    blackwell_compare,
    garbling_order,
    k_decision_counterexample,
    set_partitions,
)
from .polytope import WrongInputDimension, binary_join, binary_meet
from .verify import run_paper_checks
from .zonotope import PolygonError, TooManyGenerators, inclusion_report, vertices, zonotope_of

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE = 0, 1, 2


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass
class Report:
    relation: str
    verdict: str
    holds: bool
    witness: Optional[Sequence[Sequence[Fraction]]] = None
    certificate: Optional[Sequence[Fraction]] = None
    values: dict[str, Any] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.__dict__), indent=2)

    def to_text(self) -> str:
        out = [f"relation: {self.relation}", f"verdict: {self.verdict}"]
        for k, v in self.values.items():
            out.append(f"{k}: {_jsonable(v)}")
        if self.witness is not None:
            out.append("witness:")
            out.extend("  " + line for line in format_matrix(self.witness).splitlines())
        if self.certificate is not None:
            out.append("certificate: " + " ".join(str(v) for v in self.certificate))
        out.extend(self.details)
        return "\n".join(out)


def _emit(report: Report, fmt: str) -> None:
    print(report.to_json() if fmt == "json" else report.to_text())


def compare_report(kappa, mu, order: str, k: int = 2) -> Report:
    if order == "garbling":
        res = garbling_order(kappa, mu)
        if res:
            return Report("garbling", "holds", True, witness=res.lam.matrix)
        return Report("garbling", "does not hold", False, certificate=res.certificate,
                      details=["no stochastic lambda with mu = kappa lambda; the certificate "
                               "refutes the LP by substitution"])
    if order == "zonotope":
        rows = inclusion_report(zonotope_of(kappa), zonotope_of(mu))
        bad = [(v, out) for v, out in rows if not out]
        if not bad:
            details = [f"vertex {' '.join(map(str, v))}: a = {' '.join(map(str, out.x))}" for v, out in rows]
            return Report("zonotope", "holds", True, details=details)
        v, out = bad[0]
        return Report("zonotope", "does not hold", False, certificate=out.certificate,
                      values={"outside_vertex": list(v)})
    if order == "k-decision":
        cex = k_decision_counterexample(kappa, mu, k)
        if cex is None:
            checked = sum(1 for _ in set_partitions(mu.n_outputs, min(k, mu.n_outputs)))
            return Report(f"{k}-decision", "holds", True, values={"k": k, "tuples_realized": checked})
        return Report(f"{k}-decision", "does not hold", False,
                      values={"k": k, "unrealizable_tuple": [list(p) for p in cex.parts],
                              "assignment": list(cex.assignment)})
    if order == "blackwell":
        res = blackwell_compare(kappa, mu)
        details = []
        witness = None
        if res.forward:
            witness = res.forward.lam.matrix
        else:
            details.append("kappa -> mu certificate: " + " ".join(map(str, res.forward.certificate)))
        if not res.backward:
            details.append("mu -> kappa certificate: " + " ".join(map(str, res.backward.certificate)))
        return Report("blackwell", res.verdict.value, res.verdict is Verdict.EQUIVALENT,
                      witness=witness, details=details)
    raise ValueError(f"unknown order {order!r}")


def _cmd_compare(args) -> int:
    kappa, mu = read_channel(args.kappa), read_channel(args.mu)
    if kappa.n_inputs != mu.n_inputs:
        raise DimensionError("channels have different input sizes")
    report = compare_report(kappa, mu, args.order, args.k)
    _emit(report, args.format)
    return EXIT_HOLDS if report.holds else EXIT_FAILS


def _cmd_reward(args) -> int:
    kappa = read_channel(args.kappa)
    prior = Prior(read_vector(args.prior))
    dp = DecisionProblem(prior, read_matrix(args.rewards))
    value, strat = optimal_reward(kappa, dp)
    values = {"value": value, "strategy": list(strat.actions)}
    if dp.n_actions ** kappa.n_outputs <= 10 ** 5:
        values["brute_force_value"] = brute_force_reward(kappa, dp)
    _emit(Report("optimal reward", "computed", True, values=values), args.format)
    return EXIT_HOLDS


def _cmd_zonotope(args) -> int:
    kappa = read_channel(args.kappa)
    z = zonotope_of(kappa)
    report = Report("zonotope", "computed", True,
                    values={"generators": [list(g) for g in z.generators],
                            "vertices": [list(v) for v in vertices(z)]})
    _emit(report, args.format)
    return EXIT_HOLDS


def _cmd_lattice(args) -> int:
    kappa, mu = read_channel(args.kappa), read_channel(args.mu)
    op = binary_meet if args.command == "meet" else binary_join
    result = op(kappa, mu)
    if args.format == "json":
        print(json.dumps(_jsonable({"operation": args.command, "channel": result.matrix}), indent=2))
    else:
        sys.stdout.write(format_matrix(result.matrix))
    return EXIT_HOLDS


def _cmd_verify(args) -> int:
    checks = run_paper_checks(corrupt=args.corrupt_kappa1)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        print(json.dumps([{"name": c.name, "passed": c.passed, "lines": c.lines,
                           "seconds": round(c.seconds, 4)} for c in checks], indent=2))
    else:
        for c in checks:
            print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name} ({c.seconds:.3f}s)")
            for line in c.lines:
                print(f"    {line}")
    if failed:
        print(f"first failing check: {failed[0].name}", file=sys.stderr)
        return EXIT_FAILS
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blackwell", description="Exact comparison of finite channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = with_format(sub.add_parser("compare", help="test an order relation kappa >= mu"))
    p.add_argument("kappa")
    p.add_argument("mu")
    p.add_argument("--order", choices=("garbling", "zonotope", "k-decision", "blackwell"), default="garbling")
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=_cmd_compare)

    p = with_format(sub.add_parser("reward", help="optimal expected reward of a decision problem"))
    p.add_argument("kappa")
    p.add_argument("prior")
    p.add_argument("rewards")
    p.set_defaults(func=_cmd_reward)

    p = with_format(sub.add_parser("zonotope", help="generators and vertices of a channel's zonotope"))
    p.add_argument("kappa")
    p.set_defaults(func=_cmd_zonotope)

    for name in ("meet", "join"):
        p = with_format(sub.add_parser(name, help=f"{name} of two channels on a two-state input"))
        p.add_argument("kappa")
        p.add_argument("mu")
        p.set_defaults(func=_cmd_lattice)

    p = with_format(sub.add_parser("verify-paper", help="reproduce the published counterexamples"))
    p.add_argument("--corrupt-kappa1", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", 2) < 1:
        parser.error("--k must be at least 1")
    try:
        return args.func(args)
    except (MatrixFileError, ChannelError, DimensionError, WrongInputDimension,
            PolygonError, TooManyGenerators, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
