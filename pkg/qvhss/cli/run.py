# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Verifiable hybrid secret sharing simulations."""

import sys

from .. import config

EX_OK = 0
EX_FAILURE = 1
EX_USAGE = 2


def _is_interactive():
    return sys.stdin.isatty() and sys.stdout.isatty() and sys.stderr.isatty()


def _setup_exceptionhook():
    """Drop into ``pdb.post_mortem`` on uncaught errors when attached to a terminal."""

    def _pdb_excepthook(type, value, tb):
        import traceback

        traceback.print_exception(type, value, tb)
        print()
        if _is_interactive():
            import pdb

            pdb.post_mortem(tb)

    sys.excepthook = _pdb_excepthook


def protocol_config():
    """Build the :class:`~qvhss.protocol.state.ProtocolConfig` of the loaded settings."""
    from ..codes.css import resolve_code
    from ..codes.scheme import ramp_params
    from ..protocol.state import ProtocolConfig

    css = resolve_code(config.protocol.code)
    if config.protocol.t_prime:
        ramp_params(css, config.protocol.t, config.protocol.t_prime, n_c=config.protocol.n_c)
    round_log = config.execution.round_log
    cfg = ProtocolConfig(
        n_q=css.n,
        n_c=config.protocol.n_c,
        t=config.protocol.t,
        cheaters=frozenset(config.protocol.cheaters or ()),
        dealer=config.protocol.dealer,
        reconstructor=config.protocol.reconstructor,
        seed=config.seeds.master,
        vcss_kind=config.protocol.vcss_kind,
        code_name=css.name,
        round_log=str(round_log) if round_log else None,
        debug="tableau" in config.execution.debug,
        delta=config.protocol.delta,
        delta_p=config.protocol.delta_p,
        delta_pp=config.protocol.delta_pp,
    )
    return cfg, css


def cmd_run(opts):
    """Execute the configured trials; write rows, summary and settings."""
    import json

    from ..network.adversary import make_strategy
    from ..protocol.run import run_trials
    from ..quantum.tableau import AmplitudePair
    from ..reports.core import Report

    cfg, css = protocol_config()
    strategy = make_strategy(config.protocol.strategy, config.protocol.strategy_params)
    secret = AmplitudePair.parse(str(config.protocol.secret))
    out = config.execution.out
    report = Report(
        out,
        fmt=config.execution.format,
        delta=cfg.delta,
        delta_p=cfg.delta_p,
        delta_pp=cfg.delta_pp,
    )
    if cfg.round_log:
        from pathlib import Path

        Path(cfg.round_log).unlink(missing_ok=True)

    config.loggers.cli.log(
        15,
        "\n".join(["config:"] + ["\t\t%s" % s for s in config.dumps().splitlines()]),
    )
    config.loggers.cli.log(
        25,
        "qvhss started: %s, %s, %d trial(s), r = %d, master seed %s.",
        css,
        strategy,
        config.execution.trials,
        config.protocol.r,
        config.seeds.master,
    )
    for transcript in run_trials(
        cfg,
        css,
        secret,
        strategy,
        r=config.protocol.r,
        trials=config.execution.trials,
        master=config.seeds.master,
        nprocs=config.execution.nprocs,
    ):
        report.add(transcript)
        config.loggers.protocol.log(
            15,
            "Trial %d: %s, |B| = %d, fidelity %s.",
            transcript.trial,
            "aborted" if transcript.aborted else "passed",
            len(transcript.B),
            transcript.fidelity,
        )

    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        config.to_filename(out.parent / config.CONFIG_FILENAME)
        report.write()
    summary = report.aggregate()
    print(json.dumps(summary, indent=2))
    config.loggers.cli.log(
        25,
        "qvhss finished: abort rate %.4f +/- %.4f, mean fidelity %s.",
        summary["abort_rate"],
        summary["abort_sigma"],
        summary["mean_fidelity"],
    )
    return EX_OK


def cmd_table1(opts):
    from ..codes.scheme import table1

    sys.stdout.write(table1())
    return EX_OK


def cmd_props(opts):
    from ..utils.properties import run_suite

    results = run_suite(opts.suite, seed=opts.seed, trials=opts.trials)
    for result in results:
        print(result)
    failed = [r for r in results if not r.passed]
    config.loggers.cli.log(
        25, "Suite %s: %d/%d checks passed.", opts.suite, len(results) - len(failed), len(results)
    )
    return EX_FAILURE if failed else EX_OK


COMMANDS = {"run": cmd_run, "table1": cmd_table1, "props": cmd_props}


def main(argv=None):
    """Entry point."""
    from ..exceptions import SchemeParameterError
    from .parser import parse_args

    opts = parse_args(argv)

    if "pdb" in config.execution.debug:
        _setup_exceptionhook()

    try:
        retcode = COMMANDS[opts.command](opts)
    except SchemeParameterError as exc:
        config.loggers.cli.critical("%s failed: %s", "qvhss", exc)
        sys.exit(EX_USAGE)
    except Exception as exc:
        config.loggers.cli.critical("%s failed: %s", "qvhss", exc)
        if "pdb" in config.execution.debug:
            raise
        sys.exit(EX_FAILURE)
    sys.exit(retcode)
