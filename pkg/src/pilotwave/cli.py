"""Command-line entry point: ``pilotwave {verify,ensemble,trajectories,figures}``.

Exit codes: 0 success, 1 usage or configuration error, 2 a verification
threshold was violated or a chain stopped short of its requested length.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .artifacts import (histogram_rows, summarize_positions, write_csv, write_ensemble_csv,
                        write_json)
from .ensemble import run_chain
from .errors import PilotWaveError
from .figures import make_figures, write_fan, write_histogram
from .models import ExcitedStateSplitModel, GroundStateSplitModel
from .numerics.ode import OdeSpec
from .numerics.quadrature import QuadratureSpec
from .stats import compare_density, merge
from .trajectories import FailedTrajectory, trajectory_fan
from .verify import default_suite

log = logging.getLogger("pilotwave")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILED = 2
DEBUG_CORRUPTION = 0.01
SUMMARY_SCHEMA = 1


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    model: str = "ground"
    x0: float = 1.0
    horizon: float | None = None
    recurrences: int = 100_000
    bin_width: float = 0.1
    ode_abs_tol: float = 1e-10
    ode_rel_tol: float = 1e-10
    ode_initial_step: float = 1e-2
    ode_max_step: float = 0.1
    quad_abs_tol: float = 1e-12
    quad_rel_tol: float = 1e-12
    velocity_method: str = "moments"
    out: str = "out"
    emit_svg: bool = False
    parallel_chains: list | None = None
    x0_list: list | None = None
    sample_count: int = 201
    workers: int | None = None
    corrupt: float = 0.0

    def validate(self):
        if self.model not in ("ground", "excited"):
            raise ConfigError(f"model must be 'ground' or 'excited', got {self.model!r}")
        if not isinstance(self.recurrences, int) or self.recurrences < 1:
            raise ConfigError("recurrences must be an integer >= 1")
        if not self.bin_width > 0:
            raise ConfigError("bin_width must be positive")
        if self.horizon is not None and not self.horizon > 0:
            raise ConfigError("horizon must be positive")
        if self.velocity_method not in ("moments", "quadrature"):
            raise ConfigError("velocity_method must be 'moments' or 'quadrature'")
        if self.sample_count < 2:
            raise ConfigError("sample_count must be >= 2")
        try:
            self.ode_spec()
            self.quad_spec()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    def ode_spec(self):
        return OdeSpec(self.ode_abs_tol, self.ode_rel_tol, self.ode_initial_step,
                       self.ode_max_step)

    def quad_spec(self):
        return QuadratureSpec(self.quad_abs_tol, self.quad_rel_tol)

    def build_model(self):
        return build_model(self.model, self.horizon, self.velocity_method, self.quad_spec())

    def effective_horizon(self):
        return self.horizon if self.horizon is not None else self.build_model().default_horizon


def build_model(name, horizon=None, velocity_method="moments", quad=QuadratureSpec(1e-12, 1e-12)):
    if name == "ground":
        return GroundStateSplitModel()
    # the excited packets re-form at the split time, which is the horizon
    return ExcitedStateSplitModel(horizon or 10.0, velocity_method, quad)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def load_config(path):
    """Flat JSON object whose keys are RunConfig field names."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    unknown = sorted(set(data) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"config {path}: unknown keys {unknown}")
    return data


def _coerce(data):
    out = dict(data)
    for key in ("x0", "bin_width", "horizon", "corrupt"):
        if out.get(key) is not None:
            out[key] = float(out[key])
    return out


def resolve_config(args):
    values = {}
    if args.config:
        values.update(load_config(args.config))
    for key in _FIELDS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    try:
        cfg = RunConfig(**_coerce(values))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from None
    return cfg.validate()


def _metadata(started):
    return {"runtime_seconds": time.perf_counter() - started,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _out(cfg, name):
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


def cmd_verify(cfg):
    started = time.perf_counter()
    model = cfg.build_model()
    velocity = None
    if cfg.corrupt:
        velocity = lambda x, t: model.velocity(x, t) + cfg.corrupt  # noqa: E731
    results = []
    ok = True
    for report, threshold in default_suite(model, velocity):
        passed = report.passed(threshold)
        ok &= passed
        entry = report.to_dict()
        entry.update(threshold=threshold, passed=passed)
        results.append(entry)
        print(f"{'PASS' if passed else 'FAIL'} {report.name}: max {report.max_abs_residual:.3e}"
              f" < {threshold:.0e} at (x, t) = {report.location}")
    write_json(_out(cfg, f"verify_{cfg.model}.json"),
               {"schema": SUMMARY_SCHEMA, "model": cfg.model, "passed": ok,
                "corrupt": cfg.corrupt, "reports": results, "metadata": _metadata(started)})
    return EXIT_OK if ok else EXIT_FAILED


def _chain_job(job):
    name, horizon, method, quad, x0, count, ode = job
    model = build_model(name, horizon, method, quad)
    return run_chain(model, x0, horizon, count, ode)


def _run_chains(cfg, x0s):
    horizon = cfg.effective_horizon()
    jobs = [(cfg.model, horizon, cfg.velocity_method, cfg.quad_spec(), float(x0),
             cfg.recurrences, cfg.ode_spec()) for x0 in x0s]
    workers = cfg.workers or os.cpu_count() or 1
    if len(jobs) == 1 or workers == 1:
        return [_chain_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(_chain_job, jobs))


def _chain_summary(chain, model, bin_width):
    summary = {"x0": chain.x0, "horizon": chain.horizon, "requested": chain.requested,
               "count": len(chain), "truncation": chain.truncation}
    h = None
    if len(chain):
        metrics, h = summarize_positions(chain.positions, model, bin_width)
        summary.update(metrics)
    return summary, h


def cmd_ensemble(cfg):
    started = time.perf_counter()
    model = cfg.build_model()
    x0s = cfg.parallel_chains or [cfg.x0]
    chains = _run_chains(cfg, x0s)
    single = cfg.parallel_chains is None
    summaries = []
    merged = None
    ok = True
    for i, chain in enumerate(chains):
        stem = f"ensemble_{cfg.model}" if single else f"ensemble_{cfg.model}_chain{i}"
        write_ensemble_csv(_out(cfg, stem + ".csv"), chain.positions)
        summary, h = _chain_summary(chain, model, cfg.bin_width)
        summary["csv"] = stem + ".csv"
        summaries.append(summary)
        if chain.truncated:
            ok = False
            print(f"chain x0={chain.x0!r} truncated: {chain.truncation}", file=sys.stderr)
        if h is not None:
            merged = h if merged is None else merge(merged, h)
            if cfg.emit_svg:
                if len(chain) < 2:
                    print("warning: too few recurrences for a histogram; no SVG written",
                          file=sys.stderr)
                else:
                    write_histogram(_out(cfg, stem + "_histogram"), h, model,
                                    f"{cfg.model} state, {h.total} recurrences, x0 = {chain.x0!r}")
    doc = {"schema": SUMMARY_SCHEMA, "model": cfg.model, "bin_width": cfg.bin_width,
           "ode": dataclasses.asdict(cfg.ode_spec()), "velocity_method": cfg.velocity_method,
           "metadata": _metadata(started)}
    if single:
        doc.update(summaries[0])
    else:
        doc["chains"] = summaries
        if merged is not None:
            cmp = compare_density(merged, model.reference_density, model.reference_cdf)
            doc["merged"] = cmp.to_dict()
            write_csv(_out(cfg, f"ensemble_{cfg.model}_merged_histogram.csv"),
                      ["bin_left", "bin_right", "count", "density", "reference"],
                      histogram_rows(merged, model))
    write_json(_out(cfg, f"ensemble_{cfg.model}_summary.json"), doc)
    for s in summaries:
        if "l1" in s:
            print(f"x0={s['x0']!r}: n={s['count']} l1={s['l1']:.4f} ks={s['ks']:.4f} "
                  f"p_left={s['p_left']:.4f}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_trajectories(cfg, x0_list=None):
    model = cfg.build_model()
    x0s = x0_list or cfg.x0_list or [cfg.x0]
    fan = trajectory_fan(model, x0s, (0.0, cfg.effective_horizon()), cfg.ode_spec(),
                         cfg.sample_count)
    for i, tr in enumerate(fan):
        if isinstance(tr, FailedTrajectory):
            print(f"trajectory x_{i + 1} (x0={tr.x0!r}) failed: {tr.error}", file=sys.stderr)
    stem = _out(cfg, f"trajectories_{cfg.model}")
    if all(isinstance(tr, FailedTrajectory) for tr in fan):
        write_csv(stem + ".csv", ["t"] + [f"x_{i + 1}" for i in range(len(fan))], [])
        return EXIT_FAILED
    write_fan(stem, fan, f"{cfg.model}-state trajectories", svg=cfg.emit_svg)
    return EXIT_OK


def cmd_figures(cfg):
    started = time.perf_counter()
    ground = GroundStateSplitModel()
    excited = ExcitedStateSplitModel(10.0, cfg.velocity_method, cfg.quad_spec())
    made = make_figures(cfg.out, ground, excited, cfg.recurrences, cfg.bin_width,
                        cfg.ode_spec(), cfg.x0)
    for name, paths in made.items():
        print(f"{name}: {', '.join(os.path.basename(p) for p in paths)}")
    log.info("figures written in %.1fs", time.perf_counter() - started)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    p = _Parser(prog="pilotwave", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="progress logging")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, text in (("verify", "residual and cross-check suites"),
                       ("ensemble", "recurrence chain, CSV and summary JSON"),
                       ("trajectories", "trajectory fan CSV (and SVG)"),
                       ("figures", "all figure artifacts")):
        s = sub.add_parser(verb, help=text)
        s.add_argument("--config", help="flat JSON config; flags override it")
        s.add_argument("--model", choices=("ground", "excited"))
        s.add_argument("--x0", type=float)
        s.add_argument("--horizon", type=float)
        s.add_argument("--recurrences", type=int)
        s.add_argument("--bin-width", dest="bin_width", type=float)
        s.add_argument("--out")
        s.add_argument("--svg", dest="emit_svg", action="store_true", default=None)
        s.add_argument("--velocity-method", dest="velocity_method",
                       choices=("moments", "quadrature"))
        s.add_argument("--workers", type=int)
        if verb == "ensemble":
            s.add_argument("--parallel-chains", dest="parallel_chains", type=_floats,
                           help="comma-separated x0 values, one chain each")
        if verb == "trajectories":
            s.add_argument("--x0-list", dest="x0_list", type=_floats,
                           help="comma-separated initial positions")
            s.add_argument("--samples", dest="sample_count", type=int)
        if verb == "verify":
            s.add_argument("--corrupt", nargs="?", type=float, const=DEBUG_CORRUPTION,
                           help=f"debug: add a constant (default {DEBUG_CORRUPTION}) to the velocity")
    return p


COMMANDS = {"verify": cmd_verify, "ensemble": cmd_ensemble, "trajectories": cmd_trajectories,
            "figures": cmd_figures}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"pilotwave: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.verb](cfg)
    except PilotWaveError as exc:
        print(f"pilotwave: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
