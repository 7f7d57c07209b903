"""
Command-line harness: Monte Carlo runs, sweeps, closed-form bounds, the figure grids
and a key-exchange transcript. Data goes out as CSV on stdout or to ``--out``.

Exit codes: 0 success, 2 usage error, 1 runtime error.
"""

import argparse
import contextlib
import os
import sys
from typing import Callable, Iterator, TextIO

import bounds
import keyexchange
import montecarlo
import telemetry
from errors import InvalidParameterError, SecrecySimError, UsageError
from placement import ProcessFamily, ProcessSpec, parse_process_spec
from records import RunRecord, format_number, write_records
from secrecy_core import ChannelParams, Deployment
from strategies import Strategy, StrategyConfig

_trials_default = int(os.getenv("SECRECY_SIM_TRIALS", "100000"))
_seed_default = int(os.getenv("SECRECY_SIM_SEED", "0"))
_threads_default = int(os.getenv("SECRECY_SIM_THREADS", "1"))
_beta_default = float(os.getenv("SECRECY_SIM_BETA", "4.0"))
_power_default = float(os.getenv("SECRECY_SIM_POWER", "1.0"))
_noise_default = float(os.getenv("SECRECY_SIM_NOISE", "1.0"))
_jam_power_env = os.getenv("SECRECY_SIM_JAM_POWER")
_jam_power_default = float(_jam_power_env) if _jam_power_env else None

_SEED_LIMIT = 1 << 64
_FIGURE_EAVESDROPPERS = 5

tracer = telemetry.get_tracer(__name__)


def _process_arg(text: str) -> ProcessSpec:
    try:
        return parse_process_spec(text)
    except InvalidParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed_arg(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned integer, got {text!r}") from None
    if not 0 <= seed < _SEED_LIMIT:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text!r}")
    return seed


def _positive_int_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _values_arg(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed value list {text!r}") from None


def _global_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=_positive_int_arg, default=_trials_default, help="Monte Carlo trials per estimate")
    common.add_argument("--seed", type=_seed_arg, default=_seed_default, help="64-bit master seed")
    common.add_argument("--threads", type=_positive_int_arg, default=_threads_default, help="worker threads; never changes results")
    common.add_argument("--beta", type=float, default=_beta_default, help="path-loss exponent in [2, 6]")
    common.add_argument("--power", type=float, default=_power_default, help="transmit power P_t")
    common.add_argument("--noise", type=float, default=_noise_default, help="noise variance sigma^2")
    common.add_argument("--jam-power", dest="jam_power", type=float, default=_jam_power_default, help="jammer power P_j (default: P_t)")
    common.add_argument("--out", default=None, help="write CSV here instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="secrecy-sim", description="Secrecy coverage under cooperative transmitting.")
    sub = parser.add_subparsers(dest="command", required=True)
    strategy_names = [s.value for s in Strategy]

    sim = sub.add_parser("sim", parents=[common], help="estimate P{Cs>0} for one scenario")
    sim.add_argument("--tx", type=_process_arg, required=True, help="transmitter process, e.g. iud:10")
    sim.add_argument("--eve", type=_process_arg, required=True, help="eavesdropper process, e.g. poisson:5")
    sim.add_argument("--strategy", choices=strategy_names, default=Strategy.COOP_TRANSMIT.value)
    sim.set_defaults(handler=cmd_sim)

    sw = sub.add_parser("sweep", parents=[common], help="estimate along one scenario parameter")
    sw.add_argument("--tx", type=_process_arg, required=True)
    sw.add_argument("--eve", type=_process_arg, required=True)
    sw.add_argument("--strategy", choices=strategy_names, default=Strategy.COOP_TRANSMIT.value)
    sw.add_argument("--axis", required=True, help=f"one of: {', '.join(montecarlo.VALID_AXES)}")
    sw.add_argument("--values", type=_values_arg, required=True, help="comma-separated values")
    sw.set_defaults(handler=cmd_sweep)

    bd = sub.add_parser("bound", help="evaluate a closed-form value")
    bd.add_argument("selector", choices=sorted(_BOUND_SELECTORS))
    bd.add_argument("--nt", type=int, default=None, help="number of transmitters")
    bd.add_argument("--ne", type=int, default=None, help="number of eavesdroppers")
    bd.add_argument("--k", type=float, default=None, help="ratio n_T / n_E")
    bd.add_argument("--lambda-t", dest="lambda_t", type=float, default=None, help="transmitter rate")
    bd.add_argument("--lambda-e", dest="lambda_e", type=float, default=None, help="eavesdropper rate")
    bd.set_defaults(handler=cmd_bound)

    fig = sub.add_parser("figure", parents=[common], help="emit the sweep grid behind one figure")
    fig.add_argument("--id", dest="figure_id", type=int, required=True, choices=sorted(_FIGURES))
    fig.set_defaults(handler=cmd_figure)

    kx = sub.add_parser("keyx-demo", parents=[common], help="print one cooperative key-exchange transcript")
    kx.add_argument("--tx", type=_process_arg, default=parse_process_spec("iud:4"))
    kx.add_argument("--eve", type=_process_arg, default=parse_process_spec("iud:3"))
    kx.add_argument("--length", type=_positive_int_arg, default=keyexchange.DEFAULT_PRESECRET_LENGTH, help="pre-secret octets")
    kx.set_defaults(handler=cmd_keyx_demo)
    return parser


def _channel(args: argparse.Namespace) -> ChannelParams:
    try:
        return ChannelParams(power=args.power, noise_var=args.noise, beta=args.beta, jammer_power=args.jam_power)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from exc


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if not path:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle


def _record(scenario: montecarlo.Scenario, estimate: montecarlo.Estimate) -> RunRecord:
    strategy = scenario.strategy.strategy
    bound = bounds.bound_for(scenario.tx_process, scenario.eve_process, strategy)
    asymptotic = bounds.asymptotic_for(scenario.tx_process, scenario.eve_process, strategy)
    return RunRecord(
        tx_process=scenario.tx_process.family.value,
        tx_param=scenario.tx_process.param,
        eve_process=scenario.eve_process.family.value,
        eve_param=scenario.eve_process.param,
        strategy=strategy.value,
        beta=scenario.strategy.channel.beta,
        trials=estimate.trials,
        seed=estimate.master_seed,
        p_hat=estimate.p_hat,
        ci_half_width=estimate.ci_half_width,
        bound=bound.value if bound else None,
        bound_kind=bound.kind.value if bound else "",
        bound_asymptotic=asymptotic.value if asymptotic else None,
    )


def _scenario(tx: ProcessSpec, eve: ProcessSpec, strategy: str | Strategy, channel: ChannelParams) -> montecarlo.Scenario:
    return montecarlo.Scenario(tx, eve, StrategyConfig(Strategy(strategy), channel))


def cmd_sim(args: argparse.Namespace) -> None:
    scenario = _scenario(args.tx, args.eve, args.strategy, _channel(args))
    est = montecarlo.estimate(scenario, args.trials, args.seed, threads=args.threads)
    with _output(args.out) as out:
        write_records([_record(scenario, est)], out)


def cmd_sweep(args: argparse.Namespace) -> None:
    if args.axis not in montecarlo.VALID_AXES:
        raise UsageError(f"unknown axis {args.axis!r}; valid axes: {', '.join(montecarlo.VALID_AXES)}")
    base = _scenario(args.tx, args.eve, args.strategy, _channel(args))
    try:
        rows = montecarlo.sweep(base, args.axis, args.values, args.trials, args.seed, threads=args.threads)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from exc
    with _output(args.out) as out:
        write_records([_record(row.scenario, row.estimate) for row in rows], out)


def _eq3(args):
    return bounds.exact_single_tx_iud_eve(_require(args, "ne"))


def _eq4(args):
    return bounds.ub_iud_iud(_require(args, "nt"), _require(args, "ne"))


def _eq5(args):
    return bounds.ub_asymptotic(_require(args, "k"))


def _eq6(args):
    return bounds.ub_poisson_tx_iud_eve(_require(args, "lambda_t"), _require(args, "ne"))


def _sec3c(args):
    return bounds.exact_single_tx_poisson_eve(_require(args, "lambda_e"))


_BOUND_SELECTORS: dict[str, Callable[[argparse.Namespace], bounds.BoundResult]] = {
    "eq3": _eq3,
    "eq4": _eq4,
    "eq5": _eq5,
    "eq6": _eq6,
    "sec3c": _sec3c,
}


def _require(args: argparse.Namespace, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"bound {args.selector} requires --{name.replace('_', '-')}")
    return value


def cmd_bound(args: argparse.Namespace) -> None:
    try:
        result = _BOUND_SELECTORS[args.selector](args)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(f"{format_number(result.value)}\n")


def _counts() -> range:
    return range(1, 11)


def _figure_2(channel: ChannelParams) -> list[montecarlo.Scenario]:
    return [_scenario(ProcessSpec(ProcessFamily.IUD, n_t), ProcessSpec(ProcessFamily.IUD, n_e), Strategy.COOP_TRANSMIT, channel)
            for n_e in _counts() for n_t in _counts()]


def _figure_3(channel: ChannelParams) -> list[montecarlo.Scenario]:
    return [_scenario(ProcessSpec(ProcessFamily.IUD, n_t), ProcessSpec(ProcessFamily.IUD, n_e), Strategy.COOP_TRANSMIT, channel)
            for n_e in (1, 2, 5, 10) for n_t in _counts()]


def _figure_4(channel: ChannelParams) -> list[montecarlo.Scenario]:
    return [_scenario(ProcessSpec(ProcessFamily.IUD, 10), ProcessSpec(ProcessFamily.IUD, n_e), Strategy.COOP_TRANSMIT, channel)
            for n_e in _counts()]


def _figure_5(channel: ChannelParams) -> list[montecarlo.Scenario]:
    return [_scenario(ProcessSpec(ProcessFamily.POISSON, lam), ProcessSpec(ProcessFamily.IUD, n_e), Strategy.COOP_TRANSMIT, channel)
            for n_e in (1, 5) for lam in _counts()]


def _figure_6(channel: ChannelParams) -> list[montecarlo.Scenario]:
    return [_scenario(ProcessSpec(ProcessFamily.IUD, n_t), ProcessSpec(ProcessFamily.POISSON, lam), Strategy.COOP_TRANSMIT, channel)
            for lam in _counts() for n_t in _counts()]


def _figure_7(channel: ChannelParams) -> list[montecarlo.Scenario]:
    iud_eve = ProcessSpec(ProcessFamily.IUD, _FIGURE_EAVESDROPPERS)
    poisson_eve = ProcessSpec(ProcessFamily.POISSON, _FIGURE_EAVESDROPPERS)
    curves = [
        (ProcessFamily.HEX, iud_eve, Strategy.COOP_TRANSMIT),
        (ProcessFamily.SQUARE, iud_eve, Strategy.COOP_TRANSMIT),
        (ProcessFamily.IUD, iud_eve, Strategy.COOP_TRANSMIT),
        (ProcessFamily.IUD, poisson_eve, Strategy.COOP_TRANSMIT),
        (ProcessFamily.POISSON, iud_eve, Strategy.COOP_TRANSMIT),
        (ProcessFamily.POISSON, poisson_eve, Strategy.COOP_TRANSMIT),
        (ProcessFamily.IUD, iud_eve, Strategy.BEST_RELAY),
        (ProcessFamily.IUD, iud_eve, Strategy.BEST_JAMMER),
        (ProcessFamily.IUD, iud_eve, Strategy.DIRECT),
    ]
    return [_scenario(ProcessSpec(family, n), eve, strategy, channel) for family, eve, strategy in curves for n in _counts()]


_FIGURES: dict[int, Callable[[ChannelParams], list[montecarlo.Scenario]]] = {
    2: _figure_2,
    3: _figure_3,
    4: _figure_4,
    5: _figure_5,
    6: _figure_6,
    7: _figure_7,
}


def cmd_figure(args: argparse.Namespace) -> None:
    scenarios = _FIGURES[args.figure_id](_channel(args))
    records = [_record(s, montecarlo.estimate(s, args.trials, args.seed, threads=args.threads)) for s in scenarios]
    with _output(args.out) as out:
        write_records(records, out)


def cmd_keyx_demo(args: argparse.Namespace) -> None:
    scenario = montecarlo.Scenario(args.tx, args.eve)
    friendly, eaves, receiver = montecarlo.sample_trial(scenario, 0, args.seed)
    if friendly.shape[0] == 0:
        raise SecrecySimError(f"{args.tx} placed no transmitters for seed {args.seed}")
    deployment = Deployment(friendly, eaves, receiver)
    presecret = keyexchange.generate_presecret(args.length, montecarlo.block_stream(args.seed, 0, montecarlo.PRESECRET_STREAM))
    if len(presecret) < friendly.shape[0]:
        raise UsageError(f"--length {args.length} is shorter than the {friendly.shape[0]} transmitters")
    outcome = keyexchange.simulate_exchange(deployment, presecret)
    with _output(args.out) as out:
        out.write(keyexchange.format_transcript(deployment, outcome))


def run(argv: list[str] | None = None) -> int:
    telemetry.configure()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with tracer.start_as_current_span(f"cli.{args.command}"):
            args.handler(args)
    except SecrecySimError as exc:
        prefix = "usage error" if exc.exit_code == UsageError.exit_code else "error"
        sys.stderr.write(f"{prefix}: {exc.detail}\n")
        return exc.exit_code
    except Exception as exc:
        sys.stderr.write(f"error: {exc}\n")
        return SecrecySimError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(run())
