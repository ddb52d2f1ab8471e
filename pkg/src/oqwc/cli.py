"""Command-line harness for the walk simulator and the iris benchmark.

Subcommands:

* ``curves``          last-node detection probability versus step count
* ``evolution``       full node distribution at each step
* ``classify-one``    classify a single (x0, x1, x_test) triple
* ``iris-experiment`` success/error table over sampled iris triples
* ``steady-state``    closed-form stationary distribution of the chain

All outputs are CSV (header row, ``.`` decimals); ``--out`` writes to a file,
otherwise rows go to stdout. Exit codes: 0 success, 2 bad arguments, 3 data
error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .chain import (
    LinearChainSpec,
    build_linear_chain,
    iterations_estimate,
    steady_state,
    transition_matrix,
)
from .classifier import (
    TIE,
    ClassifierInstance,
    LabeledDataset,
    classical_classify,
    build_classifier_unitaries,
    run_classifier_oqw,
    sample_outcome,
)
from .datasets import DataError, load_prepared, sample_triples
from .quantum import gate_identity
from .walk import OqwState, PostSelectionError, node_distribution, oqw_step, steps_to_convergence

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

DEFAULT_OMEGA_LIST = (0.5, 0.8, 1.0)
DEFAULT_TRIPLE_ROWS = (33, 74, 12)
SAMPLING_REPEATS = 10


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def _omega_open(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("omega must lie strictly between 0 and 1")
    return value


def _omega_half_open(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError("omega must lie in (0, 1]")
    return value


def _omega_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not values:
        raise argparse.ArgumentTypeError("empty omega list")
    for v in values:
        if not 0.0 < v <= 1.0:
            raise argparse.ArgumentTypeError(f"omega {v} outside (0, 1]")
    return values


def _unit_vector(parser: argparse.ArgumentParser, pair, name: str) -> np.ndarray:
    v = np.asarray(pair, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        parser.error(f"{name} must not be the zero vector")
    return v / norm


def _write_csv(out: str | None, header: list[str], rows: list[list]) -> None:
    def fmt(value):
        if isinstance(value, float):
            return f"{value:.12g}"
        return value

    formatted = [[fmt(v) for v in row] for row in rows]
    if out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(formatted)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(formatted)


def _classifier_chain_state(omega_prime: float, omega: float):
    spec = LinearChainSpec(unitaries=build_classifier_unitaries(omega_prime), omega=omega)
    ops = build_linear_chain(spec)
    start = OqwState.from_pure(np.array([1, 0, 0, 0], dtype=complex), 0, spec.num_nodes)
    return ops, start


def _default_steps(omega: float) -> int:
    """max(analytic estimate, empirical convergence), capped at 10 N, floor 3."""
    cap = 10 * 4
    estimate = iterations_estimate(4, omega) if omega > 0.5 else 0
    ops, start = _classifier_chain_state(0.0, omega)
    converged = steps_to_convergence(ops, start, max_steps=cap)
    return min(cap, max(estimate, converged, 3))


def _default_omega_prime(data: str | None) -> float:
    prepared = load_prepared(data)
    if prepared.vectors.shape[0] <= max(DEFAULT_TRIPLE_ROWS):
        raise DataError("dataset too small for the default triple")
    i0, i1, it = DEFAULT_TRIPLE_ROWS
    instance = ClassifierInstance.from_triple(
        prepared.vectors[i0], prepared.vectors[i1], prepared.vectors[it]
    )
    return instance.omega_prime


def cmd_curves(
    omegas: list[float], steps: int, omega_prime: float
) -> tuple[list[str], list[list]]:
    rows: list[list] = []
    for omega in omegas:
        ops, state = _classifier_chain_state(omega_prime, omega)
        rows.append([omega, 0, 0.0])
        for n in range(1, steps + 1):
            state = oqw_step(ops, state)
            rows.append([omega, n, float(node_distribution(state)[-1])])
    return ["omega", "n", "p_node3"], rows


def cmd_evolution(omega: float, steps: int, nodes: int) -> tuple[list[str], list[list]]:
    if nodes == 4:
        ops, state = _classifier_chain_state(0.0, omega)
    else:
        layers = tuple(gate_identity(2) for _ in range(nodes - 1))
        ops = build_linear_chain(LinearChainSpec(unitaries=layers, omega=omega))
        state = OqwState.from_pure(np.array([1, 0], dtype=complex), 0, nodes)
    rows: list[list] = []
    for n in range(steps + 1):
        if n > 0:
            state = oqw_step(ops, state)
        dist = node_distribution(state)
        rows.extend([n, node, float(p)] for node, p in enumerate(dist))
    return ["n", "node", "probability"], rows


def cmd_classify_one(
    x0: np.ndarray, x1: np.ndarray, x_test: np.ndarray, omega: float, steps: int
) -> tuple[list[str], list[list], list[str]]:
    instance = ClassifierInstance.from_triple(x0, x1, x_test)
    outcome = run_classifier_oqw(instance.omega_prime, omega, steps)
    classical = classical_classify(
        LabeledDataset(vectors=np.array([x0, x1]), labels=np.array([-1, 1])), x_test
    )
    header = [
        "phi",
        "gamma",
        "t",
        "omega_prime",
        "p_post_accept",
        "p_class_minus",
        "p_class_plus",
        "prediction",
        "classical_prediction",
    ]
    row = [
        instance.phi,
        instance.gamma,
        instance.t,
        instance.omega_prime,
        outcome.p_post_accept,
        outcome.p_class_minus,
        outcome.p_class_plus,
        outcome.prediction,
        classical,
    ]

    def describe(pred: int) -> str:
        return "tie" if pred == TIE else f"{pred:+d}"

    text = [
        f"phi                  = {instance.phi:.6f}",
        f"gamma                = {instance.gamma:.6f}",
        f"t                    = {instance.t:.6f}",
        f"omega_prime          = {instance.omega_prime:.6f}",
        f"p_post_accept        = {outcome.p_post_accept:.6f}",
        f"p_class_minus        = {outcome.p_class_minus:.6f}",
        f"p_class_plus         = {outcome.p_class_plus:.6f}",
        f"prediction           = {describe(outcome.prediction)}",
        f"classical_prediction = {describe(classical)}",
    ]
    return header, [row], text


def _score_predictions(predictions: list[int], truths: list[int]) -> dict[str, float]:
    n = len(predictions)
    n_neg = sum(1 for t in truths if t == -1)
    n_pos = n - n_neg
    succ = sum(1 for p, t in zip(predictions, truths) if p == t)
    ties = sum(1 for p in predictions if p == TIE)
    errors = n - succ - ties
    err_1_given_2 = sum(1 for p, t in zip(predictions, truths) if p == -1 and t == 1)
    err_2_given_1 = sum(1 for p, t in zip(predictions, truths) if p == 1 and t == -1)
    return {
        "p_succ": 100.0 * succ / n,
        "p_err_1_given_2": 100.0 * err_1_given_2 / n_pos if n_pos else 0.0,
        "p_err_2_given_1": 100.0 * err_2_given_1 / n_neg if n_neg else 0.0,
        "p_err_total": 100.0 * errors / n,
        "tie_rate": 100.0 * ties / n,
    }


def cmd_iris_experiment(
    omegas: list[float],
    triples: int,
    seed: int,
    shots: int,
    steps: int | None,
    data: str | None,
) -> tuple[list[str], list[list]]:
    prepared = load_prepared(data)
    tasks = sample_triples(prepared, triples, seed)
    header = [
        "omega",
        "p_succ",
        "p_err_1_given_2",
        "p_err_2_given_1",
        "p_err_total",
        "tie_rate",
    ]
    rows: list[list] = []
    truths = [task.true_label for task in tasks]
    for omega in omegas:
        n_steps = steps if steps is not None else _default_steps(omega)
        outcomes = []
        for task in tasks:
            instance = ClassifierInstance.from_triple(task.x0, task.x1, task.x_test)
            outcomes.append(run_classifier_oqw(instance.omega_prime, omega, n_steps))
        if shots == 0:
            score = _score_predictions([o.prediction for o in outcomes], truths)
        else:
            # repeat the sampled experiment and average the rates
            repeats = []
            for seq in np.random.SeedSequence(seed).spawn(SAMPLING_REPEATS):
                rng = np.random.default_rng(seq)
                preds = [sample_outcome(o, shots, rng).prediction for o in outcomes]
                repeats.append(_score_predictions(preds, truths))
            score = {
                key: float(np.mean([r[key] for r in repeats])) for key in repeats[0]
            }
        rows.append([omega] + [score[key] for key in header[1:]])
    return header, rows


def cmd_steady_state(nodes: int, omega: float, verify: bool) -> tuple[list[str], list[list]]:
    pi = steady_state(nodes, omega)
    if not verify:
        return ["node", "pi"], [[node, float(p)] for node, p in enumerate(pi)]
    t = transition_matrix(nodes, omega)
    empirical = np.zeros(nodes)
    empirical[0] = 1.0
    for _ in range(10 * nodes):
        empirical = t @ empirical
    tv = 0.5 * float(np.abs(empirical - pi).sum())
    rows = [
        [node, float(p), float(e), tv]
        for node, (p, e) in enumerate(zip(pi, empirical))
    ]
    return ["node", "pi", "empirical", "tv_distance"], rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oqwc",
        description="Dissipative-walk simulator and distance-based classifier harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curves", help="last-node detection probability per step")
    p.add_argument("--omega", type=_omega_half_open, default=0.7)
    p.add_argument("--omega-list", type=_omega_list, default=None)
    p.add_argument("--steps", type=_nonneg_int, default=10)
    p.add_argument(
        "--omega-prime",
        type=float,
        default=None,
        help="circuit angle; defaults to the one derived from the bundled default triple",
    )
    p.add_argument("--data", default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("evolution", help="full node distribution at each step")
    p.add_argument("--omega", type=_omega_open, default=0.7)
    p.add_argument("--steps", type=_nonneg_int, default=10)
    p.add_argument("--nodes", type=_positive_int, default=4)
    p.add_argument("--out", default=None)

    p = sub.add_parser("classify-one", help="classify one (x0, x1, x_test) triple")
    p.add_argument(
        "--x0", type=float, nargs=2, required=True, metavar=("A", "B"),
        help="class -1 point (normalized if needed)",
    )
    p.add_argument(
        "--x1", type=float, nargs=2, required=True, metavar=("A", "B"),
        help="class +1 point",
    )
    p.add_argument(
        "--xtest", type=float, nargs=2, required=True, metavar=("A", "B"),
        help="test point",
    )
    p.add_argument("--omega", type=_omega_half_open, default=0.7)
    p.add_argument("--steps", type=_positive_int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("iris-experiment", help="success/error table over iris triples")
    p.add_argument("--omega-list", type=_omega_list, default=list(DEFAULT_OMEGA_LIST))
    p.add_argument("--triples", type=_positive_int, default=2000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--shots", type=_nonneg_int, default=0, help="0 = exact mode")
    p.add_argument("--steps", type=_positive_int, default=None)
    p.add_argument("--data", default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("steady-state", help="closed-form stationary distribution")
    p.add_argument("--nodes", type=_positive_int, default=4)
    p.add_argument("--omega", type=_omega_open, default=0.7)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        if args.command == "curves":
            omegas = args.omega_list if args.omega_list else [args.omega]
            omega_prime = (
                args.omega_prime
                if args.omega_prime is not None
                else _default_omega_prime(args.data)
            )
            header, rows = cmd_curves(omegas, args.steps, omega_prime)
        elif args.command == "evolution":
            if args.nodes < 2:
                parser.error("--nodes must be at least 2")
            header, rows = cmd_evolution(args.omega, args.steps, args.nodes)
        elif args.command == "classify-one":
            steps = args.steps if args.steps is not None else _default_steps(args.omega)
            x0 = _unit_vector(parser, args.x0, "--x0")
            x1 = _unit_vector(parser, args.x1, "--x1")
            x_test = _unit_vector(parser, args.xtest, "--xtest")
            try:
                header, rows, text = cmd_classify_one(x0, x1, x_test, args.omega, steps)
            except DataError:
                raise
            except ValueError as exc:
                print(f"numerical failure: {exc}", file=sys.stderr)
                return EXIT_NUMERICAL
            for line in text:
                print(line)
            if args.out is not None:
                _write_csv(args.out, header, rows)
            return EXIT_OK
        elif args.command == "iris-experiment":
            header, rows = cmd_iris_experiment(
                args.omega_list, args.triples, args.seed, args.shots, args.steps, args.data
            )
        elif args.command == "steady-state":
            if args.nodes < 2:
                parser.error("--nodes must be at least 2")
            header, rows = cmd_steady_state(args.nodes, args.omega, args.verify)
        else:  # pragma: no cover - argparse enforces the choices
            parser.error(f"unknown command {args.command}")
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except PostSelectionError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    _write_csv(args.out, header, rows)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
