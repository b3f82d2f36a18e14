r"""
Contains the command line interface `patchcp`.

Every subcommand runs one experiment and writes its result table (CSV) to `--out`
together with a manifest `<out>.manifest.yaml`.
Parameters are merged from the built-in defaults, an optional YAML file given by `--config`
and the command line flags, in increasing precedence.
Passing a manifest as `--config` re-runs the recorded experiment.

Exit codes:
- 0: success,
- 2: usage error or invalid parameters,
- 3: numerical failure, runaway, explosion or seam error, failed duality check,
- 4: a drift inequality failed its scan (`drift-scan` only).

The default number of worker threads is read from the environment variable `PATCHCP_THREADS`.
\date 2026
"""

import argparse
import logging
import os
import sys

from . import __version__
from . import meanfield
from . import percolation
from . import protocols
from .bounds import drift
from .bounds import emigration
from .bounds import occupation
from .duality import dual
from .duality import graphical
from .duality import zeta
from .model.configurations import MicroConfig
from .model.params import ModelParams
from .simulation import survival
from .utils import errors
from .utils import seeding

logger = logging.getLogger(__name__)

## Environment variable with the default number of worker threads.
THREADS_VARIABLE = "PATCHCP_THREADS"

EXIT_SUCCESS = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_SCAN_FAILED = 4

## Built-in defaults of each subcommand.
DEFAULTS = {
	"meanfield": {"a": 4.5, "u0": 0.5, "dt": 1e-3, "t_max": 200.0, "stride": 1, "out": "meanfield.csv"},
	"simulate": {"a": 0.0, "b": 12.0, "n": 20, "m": 1, "l": None, "horizon": None, "replicas": 1000, "seed": 0, "out": "simulate.csv"},
	"sweep": {"a": 2.0, "b": 1.0, "n": 10, "m_list": "1,10,100", "l": None, "horizon": None, "replicas": 1000, "seed": 0, "out": "sweep.csv"},
	"dual": {"mode": "zeta", "a": 1.0, "b": 2.0, "t": 30.0, "n": 3, "m": 1, "l": None, "replicas": 2000, "seed": 0, "max_points": 10**5, "survival_threshold": 500, "check_duality": False, "out": "dual.csv"},
	"bounds": {"a": 2.0, "b": 1.0, "n": 50, "m": 1, "out": "bounds.csv"},
	"drift-scan": {"lemma": "outer-sum", "a": 0.0, "b": 9.0, "n": 400, "out": "drift_scan.csv"},
	"percolation": {"q": 0.0, "levels": 50, "replicas": 100, "seed": 0, "width_cap": None, "out": "percolation.csv"},
	}

## CSV columns of each subcommand.
COLUMNS = {
	"meanfield": ["t", "u"],
	"simulate": ["replica", "survived", "terminal_time", "steps", "collision_time", "seam_touched"],
	"sweep": ["m", "replicas", "survived", "point", "ci_halfwidth", "collided", "bound", "exact_collision"],
	"dual_zeta": ["replica", "extinct", "died_at", "first_event", "exploded", "saturated", "max_alive", "survival_probability", "ode_survival"],
	"dual_full": ["replica", "w", "collided", "first_collision", "extinct", "extinction_time", "sets", "duality"],
	"bounds": ["a", "b", "n", "m", "mean_emigrants", "collision_bound", "exact_collision", "survival_bound", "weighted_time", "weighted_bound"],
	"drift-scan": ["lemma", "a", "b", "n", "target", "margin", "argmin", "leading_margin", "leading_argmin", "states", "status"],
	"percolation": ["q", "levels", "replicas", "survived", "point", "ci_halfwidth", "truncated"],
	}

def default_threads() -> int:
	r"""
	Number of worker threads from \ref THREADS_VARIABLE, 1 if unset.
	"""
	value = os.environ.get(THREADS_VARIABLE)
	if value is None or value == "":
		return 1
	try:
		threads = int(value)
	except ValueError:
		raise ValueError("{}={} is not an integer.".format(THREADS_VARIABLE, value)) from None
	if threads < 1:
		raise ValueError("{} must be positive, got {}.".format(THREADS_VARIABLE, threads))
	return threads

def _model(p: dict, m: int = None) -> ModelParams:
	m = int(m if m is not None else p["m"])
	return ModelParams(a=float(p["a"]), b=float(p["b"]), N=int(p["n"]), M=m, L=None if p["l"] is None else int(p["l"]))

def _m_list(value) -> list:
	if isinstance(value, (list, tuple)):
		items = list(value)
	else:
		items = [item for item in str(value).split(",") if item.strip()]
	if len(items) == 0:
		raise ValueError("The list of dispersal ranges is empty.")
	return [int(item) for item in items]

def run_meanfield(p: dict, threads: int) -> tuple:
	trajectory = meanfield.integrate(float(p["u0"]), float(p["a"]), step=float(p["dt"]), horizon=float(p["t_max"]))
	stride = int(p["stride"])
	rows = [{"t": t, "u": u} for t, u in zip(trajectory.times[::stride].tolist(), trajectory.values[::stride].tolist())]
	if trajectory.limit == "upper_equilibrium":
		report = "upper_equilibrium {:.4f}".format(meanfield.roots(trajectory.a).c_plus)
	else:
		report = trajectory.limit
	return rows, [report], None, EXIT_SUCCESS

def run_simulate(p: dict, threads: int) -> tuple:
	params = _model(p)
	horizon = None if p["horizon"] is None else float(p["horizon"])
	estimate = survival.estimate_survival(params, horizon=horizon, replicas=int(p["replicas"]), seed=int(p["seed"]), workers=threads)
	rows = [{c: getattr(r, c) for c in COLUMNS["simulate"]} for r in estimate.records]
	report = "survival point={:.6g} ci_halfwidth={:.6g} ({}/{} alive at t={:g}, {} collided)".format(
		estimate.point, estimate.ci_halfwidth, estimate.survived, estimate.replicas, estimate.horizon, estimate.collided)
	return rows, [report], int(p["seed"]), EXIT_SUCCESS

def run_sweep(p: dict, threads: int) -> tuple:
	m_values = _m_list(p["m_list"])
	# seam zone starts at distance 9M from the origin
	p = dict(p, l=p["l"] if p["l"] is not None else 20*max(m_values) + 1)
	params = _model(p, m=min(m_values))
	horizon = None if p["horizon"] is None else float(p["horizon"])
	estimates = survival.range_sweep(params, m_values, horizon=horizon, replicas=int(p["replicas"]), seed=int(p["seed"]), workers=threads)
	rows = []
	lines = []
	for m, e in zip(m_values, estimates):
		rows.append({"m": m, "replicas": e.replicas, "survived": e.survived, "point": e.point, "ci_halfwidth": e.ci_halfwidth,
			"collided": e.collided, "bound": e.upper_bound, "exact_collision": emigration.exact_collision_probability(m)})
		lines.append("M={} survival point={:.6g} ci_halfwidth={:.6g} bound={:.6g}".format(m, e.point, e.ci_halfwidth, e.upper_bound))
	return rows, lines, int(p["seed"]), EXIT_SUCCESS

def run_dual(p: dict, threads: int) -> tuple:
	mode = p["mode"]
	a, b, t, seed, replicas = float(p["a"]), float(p["b"]), float(p["t"]), int(p["seed"]), int(p["replicas"])
	if mode == "zeta":
		threshold = int(p["survival_threshold"]) or None
		estimate = zeta.estimate_zeta(a, b, t, replicas, seed, max_points=int(p["max_points"]), workers=threads, survival_threshold=threshold)
		ode = zeta.zeta_survival(a, b, t)
		rows = [{"replica": r.replica, "extinct": r.extinct, "died_at": r.died_at, "first_event": r.first_event, "exploded": r.exploded,
			"saturated": r.saturated, "max_alive": r.max_alive, "survival_probability": r.survival_probability, "ode_survival": ode} for r in estimate.records]
		roots = ", ".join("{:.6g}".format(r) for r in zeta.rho_fixed_points(a, b))
		lines = [
			"extinction frequency={:.6g} ci_halfwidth={:.6g} ({}/{} died by t={:g}, {} saturated, {} censored)".format(
				estimate.death_frequency, estimate.ci_halfwidth, estimate.died, replicas, t, estimate.saturated, estimate.exploded),
			"empirical survival={:.6g}, survival function q(t)={:.6g}".format(estimate.survival, ode),
			"fixed points: {{{}}}".format(roots),
			"first event birth frequency={:.6g} (expected {:.6g})".format(estimate.first_birth_frequency, (a + b)/(1.0 + a + b)),
			]
		return rows, lines, seed, EXIT_SUCCESS
	elif mode == "full":
		params = _model(p)
		check = bool(p["check_duality"])
		process = dual.DualProcess(record=False)
		rows = []
		passed = 0
		for k in range(replicas):
			rep = graphical.build_rep(params, t, seed, stream=(k, 0))
			rng = seeding.generator(seed, k, 1)
			w = int(rng.integers(0, params.L*params.N))
			run = process.run(rep, w, t)
			row = {"replica": k, "w": w, "collided": run.collided, "first_collision": run.collisions[0] if run.collided else None,
				"extinct": run.extinct, "extinction_time": run.extinction_time, "sets": len(run.final.sets), "duality": None}
			if check:
				initial = MicroConfig.random(params, rng)
				row["duality"] = dual.duality_check(rep, initial, w, t, process)
				passed += row["duality"]
			rows.append(row)
		collided = sum(r["collided"] for r in rows)
		lines = ["collision frequency={:.6g} ({}/{}), analytic bound={:.6g}".format(collided/replicas, collided, replicas, emigration.dual_collision_bound(a, b, params.N, t))]
		status = EXIT_SUCCESS
		if check:
			lines.append("{}/{} duality checks passed".format(passed, replicas))
			status = EXIT_SUCCESS if passed == replicas else EXIT_NUMERICAL
		return rows, lines, seed, status
	raise ValueError("No such option '{}' known for `mode`.".format(mode))

def run_bounds(p: dict, threads: int) -> tuple:
	a, b, N, M = float(p["a"]), float(p["b"]), int(p["n"]), int(p["m"])
	table = occupation.occupation_table(a, N)
	row = {"a": a, "b": b, "n": N, "m": M,
		"mean_emigrants": emigration.mean_emigrants_bound(a, b, N),
		"collision_bound": emigration.collision_prob_bound(M),
		"exact_collision": emigration.exact_collision_probability(M),
		"survival_bound": emigration.survival_upper_bound(a, b, N, M),
		"weighted_time": table.weighted_time,
		"weighted_bound": table.weighted_bound,
		}
	lines = ["{:.4g}".format(row["survival_bound"]),
		"mean emigrants bound={:.6g}, collision bound={:.6g}, exact collision={:.6g}".format(row["mean_emigrants"], row["collision_bound"], row["exact_collision"])]
	return [row], lines, None, EXIT_SUCCESS

def run_drift_scan(p: dict, threads: int) -> tuple:
	params = ModelParams(a=float(p["a"]), b=float(p["b"]), N=int(p["n"]))
	result = drift.scan_lemma(p["lemma"], params)
	row = {"lemma": result.lemma, "a": params.a, "b": params.b, "n": params.N, "target": result.target, "margin": result.margin,
		"argmin": str(result.argmin), "leading_margin": result.leading_margin, "leading_argmin": str(result.leading_argmin),
		"states": result.states, "status": result.status}
	line = "{} margin={:.6g} argmin={} (leading order margin={:.6g} at {}, {} states)".format(
		result.status, result.margin, result.argmin, result.leading_margin, result.leading_argmin, result.states)
	return [row], [line], None, EXIT_SUCCESS if result.passed else EXIT_SCAN_FAILED

def run_percolation(p: dict, threads: int) -> tuple:
	width_cap = None if p["width_cap"] is None else int(p["width_cap"])
	estimate = percolation.estimate_perc_survival(float(p["q"]), int(p["levels"]), int(p["replicas"]), int(p["seed"]), width_cap)
	row = {"q": estimate.params.q, "levels": estimate.params.levels, "replicas": estimate.replicas, "survived": estimate.survived,
		"point": estimate.point, "ci_halfwidth": estimate.ci_halfwidth, "truncated": estimate.truncated}
	line = "survival {} ci_halfwidth={:.6g} ({}/{})".format(estimate.point, estimate.ci_halfwidth, estimate.survived, estimate.replicas)
	return [row], [line], int(p["seed"]), EXIT_SUCCESS

RUNNERS = {
	"meanfield": run_meanfield,
	"simulate": run_simulate,
	"sweep": run_sweep,
	"dual": run_dual,
	"bounds": run_bounds,
	"drift-scan": run_drift_scan,
	"percolation": run_percolation,
	}

def _add_model(parser: argparse.ArgumentParser, range_flag: bool = True):
	parser.add_argument("--a", type=float, help="internal birth coefficient")
	parser.add_argument("--b", type=float, help="dispersal birth coefficient")
	parser.add_argument("--n", type=int, help="patch capacity N")
	if range_flag:
		parser.add_argument("--m", type=int, help="dispersal range M")
	parser.add_argument("--l", type=int, help="number of patches L >= 2M+1 (default 2M+1)")

def build_parser() -> argparse.ArgumentParser:
	r"""
	Argument parser with one subparser per experiment.
	All options default to `None`, so that unset flags do not override configuration files.
	"""
	common = argparse.ArgumentParser(add_help=False)
	common.add_argument("--config", help="YAML file with parameters or a run manifest")
	common.add_argument("--out", help="output CSV file, the manifest is written to <out>.manifest.yaml")
	common.add_argument("--threads", type=int, help="worker threads (default ${} or 1)".format(THREADS_VARIABLE))
	common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
	parser = argparse.ArgumentParser(prog="patchcp", description="Contact process with sexual reproduction on a torus of patches.")
	parser.add_argument("--version", action="version", version="%(prog)s {}".format(__version__))
	sub = parser.add_subparsers(dest="command", required=True)
	p = sub.add_parser("meanfield", parents=[common], help="integrate the mean-field equation; CSV columns: t,u")
	p.add_argument("--a", type=float, help="internal birth coefficient")
	p.add_argument("--u0", type=float, help="initial fraction in (0, 1)")
	p.add_argument("--dt", type=float, help="step width")
	p.add_argument("--t-max", type=float, help="horizon")
	p.add_argument("--stride", type=int, help="write every stride-th grid point")
	p = sub.add_parser("simulate", parents=[common], help="survival from a single full patch; CSV columns: {}".format(",".join(COLUMNS["simulate"])))
	_add_model(p)
	p.add_argument("--horizon", type=float, help="horizon (default 40N)")
	p.add_argument("--replicas", type=int)
	p.add_argument("--seed", type=int)
	p = sub.add_parser("sweep", parents=[common], help="survival per dispersal range; CSV columns: {}".format(",".join(COLUMNS["sweep"])))
	_add_model(p, range_flag=False)
	p.add_argument("--m-list", help="comma separated dispersal ranges")
	p.add_argument("--horizon", type=float, help="horizon (default 40N)")
	p.add_argument("--replicas", type=int)
	p.add_argument("--seed", type=int)
	p = sub.add_parser("dual", parents=[common], help="dual and collision-free dual statistics; CSV columns (zeta): {}; (full): {}".format(
		",".join(COLUMNS["dual_zeta"]), ",".join(COLUMNS["dual_full"])))
	p.add_argument("--mode", choices=["zeta", "full"])
	_add_model(p)
	p.add_argument("--t", type=float, help="dual horizon")
	p.add_argument("--replicas", type=int)
	p.add_argument("--seed", type=int)
	p.add_argument("--max-points", type=int, help="cap on alive points of the collision-free dual")
	p.add_argument("--survival-threshold", type=int, help="number of alive points, at which a collision-free dual replica stops and reports its conditional survival probability (0 disables)")
	p.add_argument("--check-duality", action="store_const", const=True, help="evaluate the duality relation on every replica (full mode)")
	p = sub.add_parser("bounds", parents=[common], help="closed form bounds; CSV columns: {}".format(",".join(COLUMNS["bounds"])))
	p.add_argument("--a", type=float)
	p.add_argument("--b", type=float)
	p.add_argument("--n", type=int)
	p.add_argument("--m", type=int)
	p = sub.add_parser("drift-scan", parents=[common], help="exhaustive scan of a drift inequality; CSV columns: {}".format(",".join(COLUMNS["drift-scan"])))
	p.add_argument("--lemma", choices=sorted(drift.LEMMAS))
	p.add_argument("--a", type=float)
	p.add_argument("--b", type=float)
	p.add_argument("--n", type=int)
	p = sub.add_parser("percolation", parents=[common], help="oriented site percolation; CSV columns: {}".format(",".join(COLUMNS["percolation"])))
	p.add_argument("--q", type=float, help="closure probability")
	p.add_argument("--levels", type=int)
	p.add_argument("--replicas", type=int)
	p.add_argument("--seed", type=int)
	p.add_argument("--width-cap", type=int)
	return parser

def merge_parameters(command: str, arguments: argparse.Namespace) -> dict:
	r"""
	Merge the defaults of `command`, the configuration file and the flags, in increasing precedence.
	"""
	merged = dict(DEFAULTS[command])
	if arguments.config is not None:
		config = protocols.load_config(arguments.config)
		unknown = sorted(set(config) - set(merged))
		if unknown:
			logger.warning("Ignoring unknown configuration keys for %s: %s", command, unknown)
		merged.update({k: v for k, v in config.items() if k in merged})
	flags = {k: v for k, v in vars(arguments).items() if k in merged and v is not None}
	merged.update(flags)
	return merged

def main(argv: list = None) -> int:
	r"""
	Entry point of the command line interface.
	\param argv Arguments without the program name, defaults to `sys.argv[1:]`.
	\return Exit code.
	"""
	parser = build_parser()
	try:
		arguments = parser.parse_args(argv)
	except SystemExit as error:
		return error.code if isinstance(error.code, int) else EXIT_USAGE
	logging.basicConfig(level=logging.DEBUG if arguments.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
	command = arguments.command
	manifest = protocols.RunManifest(command, {}, version=__version__, started=protocols.RunManifest.now())
	try:
		parameters = merge_parameters(command, arguments)
		threads = arguments.threads if arguments.threads is not None else default_threads()
		if threads < 1:
			raise ValueError("Number of threads must be positive, got {}.".format(threads))
		rows, lines, seed, status = RUNNERS[command](parameters, threads)
	except ValueError as error:
		print("error: {}".format(error), file=sys.stderr)
		return EXIT_USAGE
	except (ArithmeticError, errors.RunawayError, errors.ExplosionError, errors.SeamError) as error:
		print("error: {}".format(error), file=sys.stderr)
		return EXIT_NUMERICAL
	key = "dual_{}".format(parameters["mode"]) if command == "dual" else command
	out = parameters["out"]
	protocols.write_table(rows, out, columns=COLUMNS[key])
	manifest.parameters = parameters
	manifest.seed = seed
	manifest.finished = protocols.RunManifest.now()
	manifest.outputs = [out, protocols.manifest_path(out)]
	manifest.write(protocols.manifest_path(out))
	for line in lines:
		print(line)
	return status

if __name__ == "__main__":
	sys.exit(main())
