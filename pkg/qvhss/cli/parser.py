# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Parser."""

from argparse import Action
from pathlib import Path

from .. import config


class ToNodeList(Action):
    """A custom argparse "store" action turning ``2,5`` or ``2 5`` into a list of nodes."""

    def __call__(self, parser, namespace, values, option_string=None):  # noqa: U100
        nodes = []
        for value in values:
            for tok in str(value).split(","):
                if not tok.strip():
                    continue
                try:
                    nodes.append(int(tok))
                except ValueError:
                    raise parser.error(f"Not a node index: <{tok}>.") from None
        if len(set(nodes)) != len(nodes):
            raise parser.error(f"Repeated cheater in {nodes}.")
        setattr(namespace, self.dest, nodes)


def _build_parser(**kwargs):
    """Build parser object.

    ``kwargs`` are passed to ``argparse.ArgumentParser`` (mainly useful for debugging).
    """
    from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser
    from functools import partial

    from packaging.version import Version

    from ..utils.properties import SUITES

    def _is_file(path, parser):
        """Ensure a given path exists and it is a file."""
        if path is None or not Path(path).is_file():
            raise parser.error(f"Path should point to a file: <{path}>.")
        return Path(path).absolute()

    def _min_one(value, parser):
        """Ensure an argument is not lower than 1."""
        value = int(value)
        if value < 1:
            raise parser.error("Argument can't be less than one.")
        return value

    def _non_negative(value, parser):
        value = int(value)
        if value < 0:
            raise parser.error("Argument can't be negative.")
        return value

    verstr = f"qvhss v{config.environment.version}"
    currentv = Version(config.environment.version)
    is_release = not any((currentv.is_devrelease, currentv.is_prerelease, currentv.is_postrelease))

    parser = ArgumentParser(
        description=f"{verstr}: verifiable hybrid secret sharing simulator",
        formatter_class=ArgumentDefaultsHelpFormatter,
        **kwargs,
    )
    IsFile = partial(_is_file, parser=parser)
    PositiveInt = partial(_min_one, parser=parser)
    NonNegativeInt = partial(_non_negative, parser=parser)

    parser.add_argument("--version", action="version", version=verstr)
    parser.add_argument(
        "-v",
        "--verbose",
        dest="verbose_count",
        action="count",
        default=0,
        help="Increases log verbosity for each occurrence, debug level is -vvv.",
    )
    parser.add_argument(
        "--debug",
        action="store",
        nargs="+",
        choices=config.DEBUG_MODES + ("all",),
        help="Debug mode(s) to enable. 'all' is alias for all available modes.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # run
    p_run = subparsers.add_parser(
        "run",
        help="Simulate protocol runs and write one row per trial.",
        formatter_class=ArgumentDefaultsHelpFormatter,
    )
    g_exp = p_run.add_argument_group("Experiment")
    g_exp.add_argument(
        "--config",
        "--config-file",
        dest="config_file",
        action="store",
        metavar="FILE",
        type=IsFile,
        help="Experiment file (flat key = value) or a qvhss.toml written by a previous run. "
        "Flags given on the command line override the values read from it.",
    )
    g_exp.add_argument("--seed", type=NonNegativeInt, help="Master seed of the trials.")
    g_exp.add_argument("--trials", type=PositiveInt, help="Number of independent runs.")
    g_exp.add_argument("--out", type=Path, help="File receiving one row per trial.")
    g_exp.add_argument("--format", choices=("jsonl", "csv"), help="Row format.")
    g_exp.add_argument(
        "--nprocs",
        type=PositiveInt,
        help="Worker processes for the trials; rows keep their trial order.",
    )
    g_exp.add_argument("--round-log", type=Path, help="Write one line per network message here.")

    g_proto = p_run.add_argument_group("Protocol")
    g_proto.add_argument("--code", help="steane7, a packaged code name or a CSS fixture file.")
    g_proto.add_argument("--n-c", dest="n_c", type=PositiveInt, help="Classical key nodes.")
    g_proto.add_argument("-t", dest="t", type=NonNegativeInt, help="Cheaters tolerated.")
    g_proto.add_argument(
        "--t-prime",
        dest="t_prime",
        type=NonNegativeInt,
        help="Erasures tolerated in addition to t (ramp parameters).",
    )
    g_proto.add_argument("-r", dest="r", type=PositiveInt, help="Verification rounds.")
    g_proto.add_argument(
        "--vcss-kind", choices=("rabin_like", "stinson_like"), help="Classical scheme flavour."
    )
    g_proto.add_argument(
        "--secret",
        help="zero, one, plus, generic, or an 'alpha,beta' pair of complex amplitudes.",
    )

    g_adv = p_run.add_argument_group("Adversary")
    g_adv.add_argument("--strategy", help="Adversary strategy (see qvhss.network.adversary).")
    g_adv.add_argument(
        "--strategy-file",
        type=IsFile,
        metavar="FILE",
        help="YAML file with the strategy kind and its parameters.",
    )
    g_adv.add_argument(
        "--cheaters",
        action=ToNodeList,
        nargs="+",
        metavar="NODE",
        help="Nodes under adversarial control.",
    )

    # table1
    subparsers.add_parser(
        "table1",
        help="Print the table of example scheme parameters.",
        formatter_class=ArgumentDefaultsHelpFormatter,
    )

    # props
    p_props = subparsers.add_parser(
        "props",
        help="Run an invariant suite with fixed seeds.",
        formatter_class=ArgumentDefaultsHelpFormatter,
    )
    p_props.add_argument("suite", choices=SUITES, help="Suite to run.")
    p_props.add_argument("--seed", type=NonNegativeInt, default=0, help="Seed of the suite.")
    p_props.add_argument(
        "--trials", type=PositiveInt, help="Sample size of the sampled checks (suite default)."
    )

    if not is_release:
        parser.epilog = f"{verstr} is a development version."
    return parser


# Command-line destinations routed into the settings, and their setting name.
_RUN_SETTINGS = {
    "seed": "master",
    "trials": "trials",
    "out": "out",
    "format": "format",
    "nprocs": "nprocs",
    "round_log": "round_log",
    "code": "code",
    "n_c": "n_c",
    "t": "t",
    "t_prime": "t_prime",
    "r": "r",
    "vcss_kind": "vcss_kind",
    "secret": "secret",
    "strategy": "strategy",
    "cheaters": "cheaters",
    "debug": "debug",
}


def parse_args(args=None, namespace=None):
    """Parse args and load the settings of ``run``."""
    import logging

    parser = _build_parser()
    opts = parser.parse_args(args, namespace)
    config.execution.log_level = int(max(25 - 5 * opts.verbose_count, logging.DEBUG))

    if opts.command != "run":
        config.from_dict({"debug": opts.debug}, init=["execution"])
        return opts

    if opts.config_file:
        if opts.config_file.suffix == ".toml":
            config.load(opts.config_file, skip={"execution": ("run_uuid",)}, init=False)
        else:
            from ..utils.expfile import ExperimentFileError, read

            try:
                config.from_dict(read(opts.config_file), init=False)
            except ExperimentFileError as exc:
                parser.error(str(exc))
        config.loggers.cli.info(f"Loaded experiment settings from {opts.config_file}")

    settings = {
        name: getattr(opts, dest)
        for dest, name in _RUN_SETTINGS.items()
        if getattr(opts, dest, None) is not None
    }
    if opts.strategy_file:
        import yaml

        spec = yaml.safe_load(opts.strategy_file.read_text()) or {}
        if not isinstance(spec, dict) or "kind" not in spec:
            parser.error(f"Strategy file {opts.strategy_file} needs a 'kind' entry.")
        settings["strategy"] = spec["kind"]
        settings["strategy_params"] = spec.get("params") or {}
    elif "strategy" in settings and settings["strategy"] != config.protocol.strategy:
        # Parameters read from a file belong to the strategy named there.
        settings["strategy_params"] = {}

    try:
        config.from_dict(settings)
    except ValueError as exc:
        parser.error(str(exc))
    return opts
