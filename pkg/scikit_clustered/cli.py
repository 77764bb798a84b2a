"""
This file contains the command line interface: data generation, fitting, projection,
cross-validation, benchmarks and the theory checks.
"""
import argparse
import json
import logging
import os
import sys

import numpy as np
import pandas as pd

from .baselines.alternating import fit_alternating_sample
from .baselines.iht import fit_iht
from .baselines.least_squares import fit_ls, fit_lsk
from .exceptions import CrossValidationError, DivergenceError, IllConditionedError
from .experiments.benchmark import run_csv_benchmark, run_experiment
from .experiments.cross_validation import CVConfig, cross_validate
from .experiments.generators import (FeatureClusteredSpec, SampleClusteredSpec,
                                     generate_feature_clustered, generate_sample_clustered)
from .models.clustered import (ClusteredLinearModel, ModelVariant, SparseClusteredModel,
                               cluster_summary, model_variant)
from .models.dataset import load_csv, save_csv
from .projections.clustered import project_clustered
from .projections.sparse import project_ksparse, project_sparse_clustered
from .solvers.basesolver import SolverReport
from .solvers.conditional_gradient import ConditionalGradient, PsiProblem, cg_fit
from .solvers.projected_gradient import ProjectedGradient
from .theory.convergence import verify_convergence_bound
from .theory.partitions import sparse_subspace_count, stirling2, stirling_bounds

logger = logging.getLogger(__name__)

SEED_VARIABLE = "SCIKIT_CLUSTERED_SEED"


def _floats(text: str):
    return [float(value) for value in text.split(",") if value.strip()]


def _ints(text: str):
    return [int(value) for value in text.split(",") if value.strip()]


def _default_seed() -> int:
    return int(os.environ.get(SEED_VARIABLE, "0"))


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _model_payload(model, feature_names=None) -> dict:
    payload = {"model": model.to_dict()}
    if isinstance(model, SparseClusteredModel) or model.variant == ModelVariant.FEATURE:
        summary = cluster_summary(model, feature_names)
        payload["clusters"] = summary.to_dict(orient="records")
    return payload


# ################################################################# #
# ########################## Sub-commands ######################### #
# ################################################################# #
def _generate(args) -> None:
    sample = args.kind == "sample"
    if args.q is None:
        args.q = 3 if sample else 5
    if args.sigma is None:
        args.sigma = 0.1 if sample else 0.5
    if sample:
        spec_args = {"n_train": args.n_train, "n_test": args.n_test, "n_clusters": args.q,
                     "sigma_y": args.sigma, "sigma_d": args.sigma_d, "seed": args.seed,
                     "n_redundant": args.n_redundant, "add_bias": not args.no_bias}
        spec = SampleClusteredSpec.from_noise_proportion(args.noise_proportion, **spec_args)
        train, test, truth = generate_sample_clustered(spec)
        save_csv(train, args.out, args.target)
        if args.test_out:
            save_csv(test, args.test_out, args.target)
        _emit({"experts": truth.experts.tolist(),
               "train_groups": truth.train_partition.to_json(),
               "feature_names": list(train.feature_names)})
    else:
        spec = FeatureClusteredSpec(n=args.n, n_features=args.d, n_clusters=args.q,
                                    sigma=args.sigma, seed=args.seed)
        dataset, w_star = generate_feature_clustered(spec)
        save_csv(dataset, args.out, args.target)
        _emit({"w_star": w_star.tolist()})


def _load(args):
    targets = args.target.split(",")
    return load_csv(args.data, targets[0] if len(targets) == 1 else targets, task=args.task)


def _fit(args) -> None:
    dataset = _load(args)
    solver = args.solver.upper()
    report = None
    if args.variant == "feature-class" and dataset.y.ndim == 1:
        args.variant = "feature"
    if solver == "PGD":
        init = args.init.upper().replace("-", "_") if args.init else None
        warm = None
        if init == "CG":
            variant = model_variant(args.variant)
            kind = "SAMPLE" if variant == ModelVariant.SAMPLE else "FEATURE"
            task = "CLASSIFICATION" if dataset.task == "CLASSIFICATION" else "REGRESSION"
            cg_model, _, _ = cg_fit(PsiProblem(kind=f"{kind}_{task}", dataset=dataset,
                                               lam=args.cg_lam),
                                    args.q, seed=args.seed, n_jobs=args.n_jobs,
                                    rounding=args.rounding)
            warm = cg_model.weights() if kind == "FEATURE" else \
                cg_model.values[:, cg_model.partition.labels()]
            init = "WARM"
        pgd = ProjectedGradient(dataset)
        pgd.config(variant=args.variant, n_clusters=args.q, sparsity=args.k, lam=args.lam,
                   lambda_mean=args.lambda_mean, lambda_between=args.lambda_between,
                   lambda_within=args.lambda_within, epsilon=args.epsilon,
                   max_iter=args.max_iter, seed=args.seed, init=init, warm_start=warm,
                   loss=args.loss, fit_intercept=args.fit_intercept,
                   refine=args.refine, n_jobs=args.n_jobs)
        model, report = pgd.fit()
    elif solver == "CG":
        cg = ConditionalGradient(dataset)
        cg.config(variant="SAMPLE" if model_variant(args.variant) == ModelVariant.SAMPLE
                  else "FEATURE", n_clusters=args.q, lam=args.lam,
                  epsilon=args.epsilon, max_iter=args.max_iter, seed=args.seed,
                  refine=args.refine, n_jobs=args.n_jobs, rounding=args.rounding)
        model, report = cg.fit()
    elif solver == "LS":
        w = fit_ls(dataset, args.lam)
        _emit({"weights": np.asarray(w).tolist()})
        return
    elif solver == "LSK":
        model = fit_lsk(dataset, args.q, args.lam, seed=args.seed)
    elif solver == "AM":
        result = fit_alternating_sample(dataset, args.q, args.lam, seed=args.seed,
                                        max_iter=args.max_iter)
        model = ClusteredLinearModel(variant=ModelVariant.SAMPLE, partition=result.partition,
                                     values=result.experts)
        report = SolverReport(objective_trace=list(result.objective_trace),
                              iterations=result.iterations, converged=True)
    elif solver == "IHT":
        if args.k is None:
            raise ValueError("IHT needs the sparsity --k.")
        w, report = fit_iht(dataset, args.k, args.lam, max_iter=args.max_iter,
                            epsilon=args.epsilon)
        model = SparseClusteredModel.from_weights(w)
    else:
        raise NameError(f"Solver not found! {args.solver}")

    payload = _model_payload(model, dataset.feature_names)
    if report is not None:
        payload["report"] = report.to_dict(timing=args.timing)
    _emit(payload)


def _read_vector(path: str, column=None) -> np.ndarray:
    """
    A vector stored as a JSON list, a JSON object of lists or a CSV file with a header.
    A single row of several columns is read as the vector, otherwise one column is.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"No such file: {path}")
    frame = pd.read_json(path) if path.lower().endswith(".json") else pd.read_csv(path)
    if frame.empty:
        raise ValueError(f"No values in {path}.")
    if column is not None:
        if column not in frame.columns:
            raise KeyError(f"Column not found in {path}! {column}")
        values = frame[column]
    elif frame.shape[0] == 1 and frame.shape[1] > 1:
        values = frame.iloc[0]
    else:
        values = frame.iloc[:, 0]
    return pd.to_numeric(values, errors="raise").to_numpy(dtype=float)


def _project(args) -> None:
    x = _read_vector(args.input, args.column) if args.input else np.array(_floats(args.x))
    if args.k is not None:
        result = project_sparse_clustered(x, args.k, args.q) if args.q else \
            project_ksparse(x, args.k)
        _emit(result.to_dict())
        return
    projection = project_clustered(x, args.q, mode=args.mode, seed=args.seed)
    _emit({"w": projection.projected.tolist(), "groups": projection.partition.to_json(),
           "centroids": projection.centroids[:, 0].tolist(),
           "distance2": projection.distance2})


def _cv(args) -> None:
    dataset = _load(args)
    lambdas = _floats(args.lambdas) if args.lambdas else \
        list(np.logspace(args.lambda_min, args.lambda_max, args.lambda_num))
    config = CVConfig(folds=args.folds, lambdas=tuple(lambdas), n_clusters=tuple(_ints(args.q)),
                      sparsity=tuple(_ints(args.k)) if args.k else (None,), metric=args.metric)
    result = cross_validate(dataset, args.method, config, seed=args.seed, n_jobs=args.n_jobs)
    _emit(result.to_dict())


def _bench(args) -> None:
    methods = args.methods.split(",") if args.methods else None
    if args.data:
        dataset = _load(args)
        result = run_csv_benchmark(dataset, methods=methods or ("LS", "LSK", "IHT", "PG", "PGS",
                                                                  "CGPGS"),
                                   n_clusters=_ints(args.q)[0], sparsity=args.k,
                                   repeats=args.trials, seed=args.seed, n_jobs=args.n_jobs)
    else:
        overrides = {}
        if args.n_train:
            overrides["n_train"] = args.n_train
        columns = _floats(args.columns) if args.columns else None
        if columns is not None and str(args.table).upper().lstrip("T") == "2":
            columns = [int(value) for value in columns]
        result = run_experiment(args.table, trials=args.trials, seed=args.seed, methods=methods,
                                columns=columns, overrides=overrides, n_jobs=args.n_jobs,
                                cv=args.cv)
    if args.out_csv:
        result.summary.to_csv(args.out_csv)
    _emit(result.to_dict())


def _theory(args) -> None:
    lower, upper = stirling_bounds(args.d, args.q)
    payload = {"partitions": {"count": stirling2(args.d, args.q), "lower_bound": lower,
                              "upper_bound": upper}}
    if args.k is not None:
        count = sparse_subspace_count(args.d, args.k, args.q)
        payload["sparse_subspaces"] = {"count": count.count, "bound": count.bound,
                                       "within_bound": count.within_bound}
    runs = []
    for seed in range(args.seed, args.seed + args.seeds):
        spec = FeatureClusteredSpec(n=args.n, n_features=args.d, n_clusters=args.q, sigma=0.0,
                                    min_gap=0.0, seed=seed)
        dataset, w_star = generate_feature_clustered(spec)
        report = verify_convergence_bound(dataset.X, w_star, args.sigma, args.q,
                                          args.iterations, seed=seed, n_jobs=args.n_jobs)
        runs.append({"seed": seed, "rho": report.rho, "nu": report.nu,
                     "violations": report.violations, "margin": report.margin,
                     "vacuous": report.vacuous, "final_error": report.errors[-1]})
    payload["runs"] = runs
    payload["violations"] = int(sum(run["violations"] for run in runs))
    _emit(payload)


# ################################################################# #
# ############################ Parser ############################# #
# ################################################################# #
def _data_arguments(parser) -> None:
    parser.add_argument("--data", required=True, help="CSV file with a header row.")
    parser.add_argument("--target", default="y",
                        help="Label column, comma separated names for multitask.")
    parser.add_argument("--task", default="REGRESSION",
                        choices=["REGRESSION", "CLASSIFICATION", "MULTITASK"],
                        type=str.upper)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for INFO, -vv for DEBUG logs on stderr.")
    common.add_argument("--n-jobs", type=int, default=None, help="Joblib workers.")
    common.add_argument("--seed", type=int, default=None,
                        help=f"Random seed, defaults to ${SEED_VARIABLE} or 0.")

    parser = argparse.ArgumentParser(
        prog="scikit-clustered",
        description="Supervised learning with clustering constraints on features, "
                    "samples or tasks.")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser(
        "generate", parents=[common], help="Write a synthetic dataset as CSV.")
    generate.add_argument("--kind", choices=["sample", "feature"], default="feature")
    generate.add_argument("--out", required=True)
    generate.add_argument("--test-out", default=None)
    generate.add_argument("--target", default="y")
    generate.add_argument("--n", type=int, default=150)
    generate.add_argument("--d", type=int, default=100)
    generate.add_argument("--q", type=int, default=None, help="Defaults to 3 (sample), 5.")
    generate.add_argument("--sigma", type=float, default=None,
                          help="Label noise, defaults to 0.1 (sample), 0.5.")
    generate.add_argument("--n-train", type=int, default=1000)
    generate.add_argument("--n-test", type=int, default=100)
    generate.add_argument("--noise-proportion", type=float, default=0.0)
    generate.add_argument("--sigma-d", type=float, default=1.0)
    generate.add_argument("--n-redundant", type=int, default=0)
    generate.add_argument("--no-bias", action="store_true")
    generate.set_defaults(handler=_generate)

    fit = commands.add_parser(
        "fit", parents=[common], help="Fit a clustered model on a CSV dataset.")
    _data_arguments(fit)
    fit.add_argument("--solver", default="pgd", type=str.lower,
                     choices=["pgd", "cg", "ls", "lsk", "am", "iht"])
    fit.add_argument("--variant", default="feature",
                     choices=["feature", "sample", "sparse", "multitask", "feature-class",
                              "sample-class"])
    fit.add_argument("--q", type=int, default=2)
    fit.add_argument("--k", type=int, default=None)
    fit.add_argument("--lambda", dest="lam", type=float, default=0.0)
    fit.add_argument("--lambda-mean", type=float, default=0.0)
    fit.add_argument("--lambda-between", type=float, default=0.0)
    fit.add_argument("--lambda-within", type=float, default=0.0)
    fit.add_argument("--cg-lambda", dest="cg_lam", type=float, default=1e-3,
                     help="Ridge weight of the CG start of --init cg.")
    fit.add_argument("--epsilon", type=float, default=None)
    fit.add_argument("--max-iter", type=int, default=None)
    fit.add_argument("--init", default=None, choices=["zeros", "ls-kmeans", "cg"])
    fit.add_argument("--refine", default=None, type=str.upper, choices=["PGD", "AM"])
    fit.add_argument("--round", dest="rounding", default="last-oracle", type=str.lower,
                     choices=["last-oracle", "best-oracle"],
                     help="Partition the CG model is rounded on.")
    fit.add_argument("--loss", default=None, type=str.upper,
                     choices=["SQUARED", "LOGISTIC", "MULTICLASS_SQUARED",
                              "MULTICLASS_LOGISTIC"])
    fit.add_argument("--fit-intercept", action="store_true")
    fit.add_argument("--timing", action="store_true", help="Report the wall time.")
    fit.set_defaults(handler=_fit)

    project = commands.add_parser(
        "project", parents=[common], help="Project a vector on clustered vectors.")
    source = project.add_mutually_exclusive_group(required=True)
    source.add_argument("--x", help="Comma separated values, e.g. --x=-1,2,5.")
    source.add_argument("--input", help="CSV or JSON file holding the vector.")
    project.add_argument("--column", default=None, help="Column of --input to read.")
    project.add_argument("--q", type=int, default=None)
    project.add_argument("--k", type=int, default=None)
    project.add_argument("--mode", default="EXACT_1D", type=str.upper,
                         choices=["EXACT_1D", "EXACT-1D", "KMEANSPP"])
    project.set_defaults(handler=_project)

    cv = commands.add_parser(
        "cv", parents=[common], help="Cross-validate the hyperparameters of a method.")
    _data_arguments(cv)
    cv.add_argument("--method", default="PG")
    cv.add_argument("--folds", type=int, default=5)
    cv.add_argument("--lambdas", default=None, help="Comma separated grid.")
    cv.add_argument("--lambda-min", type=float, default=-4.0)
    cv.add_argument("--lambda-max", type=float, default=2.0)
    cv.add_argument("--lambda-num", type=int, default=7)
    cv.add_argument("--q", default="2", help="Comma separated grid.")
    cv.add_argument("--k", default=None, help="Comma separated grid.")
    cv.add_argument("--metric", default=None, type=str.upper, choices=["MSE", "MSE_SAMPLES"])
    cv.set_defaults(handler=_cv)

    bench = commands.add_parser(
        "bench", parents=[common], help="Run a synthetic table or a CSV benchmark.")
    bench.add_argument("--table", default="2", choices=["1", "2", "3", "T1", "T2", "T3"])
    bench.add_argument("--trials", type=int, default=20)
    bench.add_argument("--methods", default=None, help="Comma separated method names.")
    bench.add_argument("--columns", default=None, help="Comma separated sweep values.")
    bench.add_argument("--n-train", type=int, default=None)
    bench.add_argument("--data", default=None, help="CSV file for the CSV benchmark.")
    bench.add_argument("--target", default="y")
    bench.add_argument("--task", default="REGRESSION", type=str.upper)
    bench.add_argument("--q", default="5")
    bench.add_argument("--k", type=int, default=None)
    bench.add_argument("--out-csv", default=None)
    bench.add_argument("--cv", action="store_true",
                       help="Cross-validate lambda on every trial, 5 folds on a log grid.")
    bench.set_defaults(handler=_bench)

    theory = commands.add_parser(
        "theory", parents=[common], help="Contraction constants and error bound check.")
    theory.add_argument("--d", type=int, default=8)
    theory.add_argument("--q", type=int, default=2)
    theory.add_argument("--k", type=int, default=None)
    theory.add_argument("--n", type=int, default=2000)
    theory.add_argument("--sigma", type=float, default=0.1)
    theory.add_argument("--seeds", type=int, default=5)
    theory.add_argument("--iterations", type=int, default=30)
    theory.set_defaults(handler=_theory)
    return parser


def _fill_defaults(args) -> None:
    if args.seed is None:
        args.seed = _default_seed()
    if getattr(args, "epsilon", 0) is None:
        args.epsilon = 1e-8 if args.solver != "cg" else None
    if getattr(args, "max_iter", 0) is None:
        args.max_iter = 200 if args.solver == "cg" else 500
    if args.command == "project" and args.q is None and args.k is None:
        args.q = 2
    if hasattr(args, "variant") and args.task == "MULTITASK":
        args.variant = "multitask"


def main(argv=None) -> int:
    """
    Entry point of the scikit-clustered command.

    :return: 0 on success, 2 on solver divergence, 1 on input errors.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        _fill_defaults(args)
        args.handler(args)
    except DivergenceError as error:
        sys.stderr.write(f"Solver diverged: {error}\n")
        return 2
    except (ValueError, KeyError, FileNotFoundError, NameError, IllConditionedError,
            CrossValidationError) as error:
        sys.stderr.write(f"Error: {error}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
