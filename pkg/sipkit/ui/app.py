"""Command-line application: queries, homeomorphism files and verification campaigns."""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence, TextIO

import click

from sipkit.controllers.campaigns import VERIFY_CAMPAIGNS, demo_factor, homeo_check
from sipkit.controllers.errors import ConstructionError, PreconditionError
from sipkit.core.clopen import (
    ClopenError,
    ClopenSet,
    Space,
    format_clopen,
    homeo_class,
    iterate_derivative,
    num_atoms,
    order_type,
    parse_clopen,
    quotient_project,
)
from sipkit.core.config import DEFAULT_ALPHA, DEFAULT_CLOPEN_DELTA, FORMATS, ConfigError, RunConfig
from sipkit.core.homeo import BlockSystem, Homeo, HomeoError, HomeoInvariantError, pi_of, signature
from sipkit.core.ordinal import (
    Ordinal,
    OrdinalError,
    OrdinalParseError,
    cmp,
    format_ordinal,
    left_sub,
    mul,
    parse_ordinal,
)
from sipkit.core.ordinal import add as ordinal_add
from sipkit.core.persistence import load_user_defaults, save_report
from sipkit.core.report import Report
from sipkit.core.perm import PermError
from sipkit.core.sigcalc import ClassParseError, pair_add, parse_pair, signed, sim
from sipkit.core.specfile import SpecParseError, parse_homeo
from sipkit.ui.render import render_json, render_text, render_value

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

INPUT_ERRORS = (
    OrdinalError,
    OrdinalParseError,
    ClopenError,
    ClassParseError,
    PermError,
    SpecParseError,
    PreconditionError,
    ConfigError,
)


@dataclass
class CliState:
    """Global options shared by every subcommand."""

    format: str = "text"
    output: Path | None = None
    defaults: dict = field(default_factory=dict)

    def emit(self, text: str) -> None:
        click.echo(text)
        if self.output is not None:
            save_report(text, self.output)

    def value(self, command: str, value: str) -> int:
        self.emit(render_value(command, value, self.format))
        return 0

    def report(self, report: Report, fmt: str, preamble: Sequence[str] = ()) -> int:
        self.emit(render_json(report) if fmt == "json" else render_text(report, preamble))
        return 0 if report.passed else 1


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format=LOG_FORMAT,
        force=True,
    )


def run_options(fn: Callable) -> Callable:
    """Campaign options; unset flags fall back to the defaults file, then the constants."""
    options = [
        click.option("--alpha", type=int, default=None, help="Block exponent alpha >= 1."),
        click.option("--degree", type=int, default=None, help="Degree a of the reported space."),
        click.option("--seed", type=int, default=None, help="Campaign seed."),
        click.option("--blocks", type=int, default=None, help="Verify blocks 1..BLOCKS [default: per campaign]."),
        click.option("--samples", type=int, default=None, help="Random sample points per instance [default: per campaign]."),
        click.option("--instances", type=int, default=None, help="Override campaign instance counts."),
        click.option("--workers", type=int, default=None, help="Worker threads for batches."),
        click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, help="Report format."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _run_config(state: CliState, fmt: str | None, **flags: int | None) -> RunConfig:
    return RunConfig.layered(state.defaults, {**flags, "format": fmt or state.format})


def _ordinal(text: str) -> Ordinal:
    return parse_ordinal(text)


def _clopen(text: str, delta: str) -> ClopenSet:
    return parse_clopen(text, Space(parse_ordinal(delta)))


def _homeo(source: TextIO, alpha: int) -> Homeo:
    return parse_homeo(source.read(), BlockSystem(alpha))


class InputError(click.ClickException):
    """Malformed input or violated preconditions; exit status 2."""

    exit_code = 2


class ConstructionFailed(click.ClickException):
    """A construction broke its own invariant; exit status 1."""

    exit_code = 1


class SipkitGroup(click.Group):
    """Root group mapping domain errors onto exit statuses."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except INPUT_ERRORS as exc:
            raise InputError(str(exc)) from exc
        except (ConstructionError, HomeoInvariantError, ValueError, ArithmeticError) as exc:
            logger.error("construction failed: %s", exc)
            raise ConstructionFailed(str(exc)) from exc


@click.group(cls=SipkitGroup)
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Also write the output here.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, help="Output format.")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, output: Path | None, fmt: str | None) -> None:
    """Ordinal clopen algebras, signature pairs and homeomorphism constructions."""
    _configure_logging(verbose)
    defaults = load_user_defaults()
    ctx.obj = CliState(fmt or defaults.get("format", "text"), output, defaults)


@cli.result_callback()
@click.pass_context
def _exit_with(ctx: click.Context, status: int | None, **_: object) -> None:
    ctx.exit(status or 0)


# Ordinals


@cli.group("ord")
def ord_group() -> None:
    """Ordinal arithmetic below w^w."""


@ord_group.command("eval")
@click.argument("expr")
@click.pass_obj
def ord_eval(state: CliState, expr: str) -> int:
    return state.value("ord eval", format_ordinal(_ordinal(expr)))


def _binary(name: str, operation: Callable[[Ordinal, Ordinal], Ordinal], summary: str) -> None:
    @ord_group.command(name, help=summary)
    @click.argument("a")
    @click.argument("b")
    @click.pass_obj
    def command(state: CliState, a: str, b: str) -> int:
        return state.value(f"ord {name}", format_ordinal(operation(_ordinal(a), _ordinal(b))))


_binary("add", ordinal_add, "A + B.")
_binary("mul", mul, "A * B.")
_binary("sub", left_sub, "The x with A + x = B; needs A <= B.")


@ord_group.command("cmp")
@click.argument("a")
@click.argument("b")
@click.pass_obj
def ord_cmp(state: CliState, a: str, b: str) -> int:
    return state.value("ord cmp", cmp(_ordinal(a), _ordinal(b)).value)


# Clopen sets


delta_option = click.option("--delta", default=DEFAULT_CLOPEN_DELTA, show_default=True, help="Ambient space [1, delta].")


@cli.group("clopen")
def clopen_group() -> None:
    """Clopen subsets of [1, delta]."""


@clopen_group.command("class")
@click.argument("literal")
@delta_option
@click.pass_obj
def clopen_class(state: CliState, literal: str, delta: str) -> int:
    return state.value("clopen class", str(homeo_class(_clopen(literal, delta))))


@clopen_group.command("type")
@click.argument("literal")
@delta_option
@click.pass_obj
def clopen_type(state: CliState, literal: str, delta: str) -> int:
    return state.value("clopen type", format_ordinal(order_type(_clopen(literal, delta))))


@clopen_group.command("derive")
@click.argument("literal")
@delta_option
@click.option("--times", type=click.IntRange(min=0), default=1, show_default=True)
@click.pass_obj
def clopen_derive(state: CliState, literal: str, delta: str, times: int) -> int:
    return state.value("clopen derive", format_clopen(iterate_derivative(_clopen(literal, delta), times)))


@clopen_group.command("quotient")
@click.argument("literal")
@delta_option
@click.option("--beta", type=click.IntRange(min=0), required=True)
@click.pass_obj
def clopen_quotient(state: CliState, literal: str, delta: str, beta: int) -> int:
    return state.value("clopen quotient", format_clopen(quotient_project(_clopen(literal, delta), beta)))


@clopen_group.command("atoms")
@click.argument("literal")
@delta_option
@click.pass_obj
def clopen_atoms(state: CliState, literal: str, delta: str) -> int:
    count = num_atoms(_clopen(literal, delta))
    return state.value("clopen atoms", "inf" if count == math.inf else str(count))


# Signature pairs


@cli.group("sig")
def sig_group() -> None:
    """Class pairs (P,Q) written like '((1,2),E)'."""


@sig_group.command("sim")
@click.argument("x")
@click.argument("y")
@click.pass_obj
def sig_sim(state: CliState, x: str, y: str) -> int:
    return state.value("sig sim", "true" if sim(parse_pair(x), parse_pair(y)) else "false")


@sig_group.command("add")
@click.argument("x")
@click.argument("y")
@click.pass_obj
def sig_add(state: CliState, x: str, y: str) -> int:
    return state.value("sig add", str(pair_add(parse_pair(x), parse_pair(y))))


@sig_group.command("signed")
@click.argument("x")
@click.pass_obj
def sig_signed(state: CliState, x: str) -> int:
    return state.value("sig signed", str(signed(parse_pair(x))))


# Homeomorphisms


map_argument = click.argument("map_file", type=click.File("r", encoding="utf-8"))
alpha_option = click.option("--alpha", type=click.IntRange(min=1), default=DEFAULT_ALPHA, show_default=True)


@cli.group("homeo")
def homeo_group() -> None:
    """Maps of [1, w^(alpha+1)] read from s-expression files ('-' for stdin)."""


@homeo_group.command("eval")
@map_argument
@click.argument("point")
@alpha_option
@click.option("--inverse", "backwards", is_flag=True, help="Evaluate the inverse map.")
@click.pass_obj
def homeo_eval(state: CliState, map_file: TextIO, point: str, alpha: int, backwards: bool) -> int:
    g = _homeo(map_file, alpha)
    x = _ordinal(point)
    try:
        g.blocks.check_point(x)
    except HomeoError as exc:
        raise InputError(str(exc)) from exc
    return state.value("homeo eval", format_ordinal(g.eval_inv(x) if backwards else g.eval(x)))


@homeo_group.command("pi")
@map_argument
@click.argument("block", type=click.IntRange(min=1))
@alpha_option
@click.pass_obj
def homeo_pi(state: CliState, map_file: TextIO, block: int, alpha: int) -> int:
    return state.value("homeo pi", str(pi_of(_homeo(map_file, alpha), block)))


@homeo_group.command("sig")
@map_argument
@click.argument("block", type=click.IntRange(min=1))
@alpha_option
@click.pass_obj
def homeo_sig(state: CliState, map_file: TextIO, block: int, alpha: int) -> int:
    found = signature(_homeo(map_file, alpha), block)
    value = f"{found.pair} P={format_clopen(found.p)} Q={format_clopen(found.q)} target={found.target}"
    return state.value("homeo sig", value)


@homeo_group.command("check")
@map_argument
@run_options
@click.pass_obj
def homeo_check_command(state: CliState, map_file: TextIO, fmt: str | None, **flags: int | None) -> int:
    config = _run_config(state, fmt, **flags)
    return state.report(homeo_check(_homeo(map_file, config.alpha), config), config.format)


# Campaigns


@cli.group("verify")
def verify_group() -> None:
    """Seeded verification campaigns; exit status 1 when any check fails."""


def _verify(name: str, campaign: Callable[[RunConfig], Report]) -> None:
    @verify_group.command(name, help=campaign.__doc__)
    @run_options
    @click.pass_obj
    def command(state: CliState, fmt: str | None, **flags: int | None) -> int:
        config = _run_config(state, fmt, **flags)
        return state.report(campaign(config), config.format)


for _name, _campaign in VERIFY_CAMPAIGNS.items():
    _verify(_name, _campaign)


@cli.group("demo")
def demo_group() -> None:
    """Worked examples."""


@demo_group.command("factor")
@run_options
@click.pass_obj
def demo_factor_command(state: CliState, fmt: str | None, **flags: int | None) -> int:
    """Factor a seeded example map and print its certificate."""
    config = _run_config(state, fmt, **flags)
    report, _, lines = demo_factor(config)
    return state.report(report, config.format, lines)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit status instead of exiting."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="sipkit")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0
