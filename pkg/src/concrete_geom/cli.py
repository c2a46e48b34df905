"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numeric or
domain error.  Data goes to stdout, diagnostics to stderr; identical
arguments and seed produce byte-identical output.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .distributions import (
    ConcreteParams,
    InverseSchlomilchParams,
    RngState,
    concrete_log_density,
    is_log_density,
    rounding_probabilities,
    sample_concrete,
)
from .errors import ConcreteGeomError
from .geometry import (
    curvature_length,
    fisher_full,
    fisher_reduced,
    fr_distance,
    to_poincare,
)
from .moments import lr_cov, lr_mean, lr_var
from .oracle import __version__, run_suite
from .simplex import SimplexPoint

CONFIG_ENV_VAR = "CONCRETE_GEOM_CONFIG"

_CONFIG_KEYS = ("mc_samples", "mc_seed")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(t) for t in text.split(",")], dtype=float)
    except ValueError as exc:
        raise _UsageError(f"bad vector {text!r}: {exc}") from None
    if v.size < 2:
        raise _UsageError("vectors need at least 2 comma-separated entries")
    return v


def _load_config() -> dict:
    """key=value overrides from the file named by CONCRETE_GEOM_CONFIG."""
    path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return {}
    cfg = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key = key.strip()
            if key in _CONFIG_KEYS:
                cfg[key] = int(value.strip())
    return cfg


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _matrix_dict(mat: np.ndarray) -> dict:
    return {
        f"m_{i + 1}_{j + 1}": mat[i, j]
        for i in range(mat.shape[0])
        for j in range(mat.shape[1])
    }


def _cmd_sample(args, config) -> int:
    p = ConcreteParams(beta=args.beta, tau=args.tau)
    rng = RngState(args.seed)
    x = sample_concrete(p, rng, args.n)
    if args.format == "csv":
        sys.stdout.write(",".join(f"x{i + 1}" for i in range(p.dim)) + "\n")
        for row in x:
            sys.stdout.write(",".join(repr(float(v)) for v in row) + "\n")
    else:
        _emit_json({"samples": [[float(v) for v in row] for row in x],
                    "seed": args.seed})
    return 0


def _cmd_pdf(args, config) -> int:
    x = SimplexPoint(args.x)
    if args.alpha is not None:
        p = InverseSchlomilchParams(alpha=args.alpha, beta=args.beta, tau=args.tau)
        value = is_log_density(p, x)
    else:
        value = concrete_log_density(ConcreteParams(beta=args.beta, tau=args.tau), x)
    _emit_json({"log_density": value})
    return 0


def _cmd_moments(args, config) -> int:
    if args.alpha is not None:
        p = InverseSchlomilchParams(alpha=args.alpha, beta=args.beta, tau=args.tau)
    else:
        p = ConcreteParams(beta=args.beta, tau=args.tau).to_inverse_schlomilch()
    k = p.dim
    means = {f"mean_{i + 1}_{j + 1}": lr_mean(p, i, j) for i in range(k) for j in range(k)}
    variances = {f"var_{i + 1}_{j + 1}": lr_var(p, i, j) for i in range(k) for j in range(k)}
    covs = {
        f"cov_{i + 1}_{j + 1}_{a + 1}_{b + 1}": lr_cov(p, i, j, a, b)
        for i in range(k)
        for j in range(k)
        for a in range(k)
        for b in range(k)
        if i != j and a != b
    }
    _emit_json({"log_ratio_means": means, "log_ratio_variances": variances,
                "log_ratio_covariances": covs})
    return 0


def _cmd_fisher(args, config) -> int:
    p = ConcreteParams(beta=args.beta, tau=args.tau)
    if args.full:
        mat = fisher_full(p).entries
    else:
        mat = fisher_reduced(p).entries
    if args.format == "csv":
        sys.stdout.write(",".join(_matrix_dict(mat)) + "\n")
        sys.stdout.write(",".join(repr(float(v)) for v in mat.ravel()) + "\n")
    else:
        _emit_json({"dim": mat.shape[0], "entries": _matrix_dict(mat)})
    return 0


def _cmd_poincare(args, config) -> int:
    q = to_poincare(ConcreteParams(beta=args.beta, tau=args.tau))
    _emit_json({"eta": list(q.eta), "eta_K": q.eta_k, "ell": q.ell})
    return 0


def _cmd_distance(args, config) -> int:
    p = ConcreteParams(beta=args.beta_a, tau=args.tau_a)
    q = ConcreteParams(beta=args.beta_b, tau=args.tau_b)
    result = fr_distance(p, q)
    _emit_json({
        "distance": result.value,
        "ell": curvature_length(p.dim),
        "delta": list(result.delta),
    })
    return 0


def _cmd_round(args, config) -> int:
    probs = rounding_probabilities(args.beta)
    n = args.n if args.n is not None else config.get("mc_samples", 100_000)
    p = ConcreteParams(beta=args.beta, tau=args.tau)
    x = sample_concrete(p, RngState(args.seed), n)
    hits = np.argmax(x, axis=1)
    freq = [float(np.mean(hits == i)) for i in range(p.dim)]
    _emit_json({
        "probabilities": list(probs),
        "mc_frequencies": freq,
        "mc_samples": n,
        "seed": args.seed,
    })
    return 0


def _cmd_verify(args, config) -> int:
    n = args.n if args.n is not None else config.get("mc_samples", 100_000)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            checks = pool.submit(run_suite, args.k, args.seed, n).result()
    else:
        checks = run_suite(args.k, args.seed, n)
    report = {
        "checks": [
            {
                "name": c.name,
                "target": float(c.target),
                "estimate": float(c.estimate),
                "se_or_tol": float(c.se_or_tol),
                "pass": bool(c.passed),
            }
            for c in checks
        ],
        "seed": args.seed,
        "version": __version__,
    }
    _emit_json(report)
    return 0 if all(c.passed for c in checks) else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="concrete-geom",
                     description="Concrete-distribution geometry toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(sp, alpha=False):
        sp.add_argument("--beta", type=_vector, required=True,
                        help="comma-separated positive weights (unnormalized)")
        sp.add_argument("--tau", type=float, required=True, help="temperature")
        if alpha:
            sp.add_argument("--alpha", type=_vector, default=None,
                            help="Dirichlet vector; omit for the Concrete case")

    sp = sub.add_parser("sample", help="draw Concrete samples")
    add_params(sp)
    sp.add_argument("-n", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser("pdf", help="log density at a point")
    add_params(sp, alpha=True)
    sp.add_argument("--x", type=_vector, required=True)
    sp.set_defaults(func=_cmd_pdf)

    sp = sub.add_parser("moments", help="log-ratio means, variances, covariances")
    add_params(sp, alpha=True)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("fisher", help="Fisher information matrix")
    add_params(sp)
    sp.add_argument("--full", action="store_true",
                    help="emit the degenerate (K+1)x(K+1) matrix")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_fisher)

    sp = sub.add_parser("poincare", help="Poincare half-space coordinates")
    add_params(sp)
    sp.set_defaults(func=_cmd_poincare)

    sp = sub.add_parser("distance", help="Fisher-Rao distance between two Concretes")
    sp.add_argument("--beta-a", type=_vector, required=True)
    sp.add_argument("--tau-a", type=float, required=True)
    sp.add_argument("--beta-b", type=_vector, required=True)
    sp.add_argument("--tau-b", type=float, required=True)
    sp.set_defaults(func=_cmd_distance)

    sp = sub.add_parser("round", help="rounding probabilities with an MC check")
    sp.add_argument("--beta", type=_vector, required=True)
    sp.add_argument("--tau", type=float, default=1.0)
    sp.add_argument("-n", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_round)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-n", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args, _load_config())
    except ConcreteGeomError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
