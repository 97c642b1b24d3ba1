"""Command line interface: `monoid-completion COMMAND`"""

import functools
import logging
import os
import sys

import click

from .config import bundled_file, load_settings
from .enums import HomologyMethod
from .exceptions import AssociativityError, CompletionError, InputError, exit_code_for
from .fp_nerve import truncated_fp_nerve
from .homology import HomologyGroup, homology_groups, parse_chain_complex, reduced
from .monoid import find_associativity_witness, idempotents, parse_monoid
from .presentation import abelianization, simplify, universal_group_of_table
from .simplicial import nerve, normalized_chains
from .verify import PaperVerifier

logger = logging.getLogger(__name__)

EXPLORATORY_BANNER = (
    "EXPLORATORY: homology of a word-length truncation of the nerve of M_k. "
    "Finite-L values are evidence only and are not claimed to equal anything."
)


def _read_input(name: str) -> str:
    """Read a file by path; a bare file name may also come from the bundled data"""
    if os.path.exists(name):
        with open(name, "r", encoding="utf-8") as f:
            return f.read()
    if os.path.basename(name) != name:
        raise InputError(f"No such file: {name}")
    bundled = bundled_file(name)
    if bundled.is_file():
        logger.debug("Using bundled %s", name)
        return bundled.read_text(encoding="utf-8")
    raise InputError(f"No such file: {name}")


def _handle_errors(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CompletionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(int(exit_code_for(exc)))

    return wrapper


def _print_groups(groups, start: int = 0) -> None:
    for n, group in enumerate(groups, start=start):
        click.echo(f"H_{n} = {group}")


@click.group()
@click.option("--config", "config_path", type=click.Path(), help="JSON settings file")
@click.option("-v", "--verbose", count=True, help="Log progress to stderr, twice for debug")
@click.pass_context
def main(ctx, config_path, verbose):
    """Exact checks of group completion, nerve homology and Tor for finite monoids"""
    level = logging.WARNING if not verbose else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        ctx.obj = load_settings(config_path)
    except CompletionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(int(exit_code_for(exc)))


@main.command()
@click.argument("file")
@_handle_errors
def describe(file):
    """Validate a monoid table and list its idempotents"""
    m = parse_monoid(_read_input(file))
    witness = find_associativity_witness(m)
    if witness is not None:
        law, names = witness
        raise AssociativityError(f"{m.name} violates the {law}", names)
    found = [name for name in m.element_names if name in idempotents(m)]
    click.echo(f"monoid {m.name}")
    click.echo(f"elements: {len(m)}")
    click.echo(f"unit: {m.unit}")
    click.echo(f"idempotents ({len(found)}): {' '.join(found)}")
    click.echo("valid: yes")


@main.command()
@click.argument("file")
@click.option("--max-degree", type=int, default=None, help="Truncation degree n (>= 2)")
@click.option(
    "--method",
    type=click.Choice([m.value for m in HomologyMethod]),
    default=HomologyMethod.Auto.value,
    help="How torsion is computed",
)
@click.option("--emit-chains", type=click.Path(), default=None, help="Write the chain complex")
@click.pass_obj
@_handle_errors
def homology(settings, file, max_degree, method, emit_chains):
    """Homology of the nerve of a monoid, degrees below the truncation"""
    settings = settings.replace(max_degree=max_degree)
    if settings.max_degree < 2:
        raise InputError("--max-degree must be at least 2")
    m = parse_monoid(_read_input(file)).validate()
    chains = normalized_chains(nerve(m, settings.max_degree, settings.max_simplices))
    if emit_chains:
        chains.write(emit_chains)
    groups = homology_groups(
        chains,
        method=HomologyMethod(method),
        two_step_max_cells=settings.two_step_max_cells,
    )
    click.echo(f"nerve of {m.name}, truncated at degree {settings.max_degree}")
    _print_groups(groups)
    click.echo(f"H_{settings.max_degree} withheld: truncation degree")


@main.command()
@click.argument("file")
@click.pass_obj
@_handle_errors
def completion(settings, file):
    """Presentation of the universal group, simplified, with a verdict"""
    m = parse_monoid(_read_input(file)).validate()
    original = universal_group_of_table(m)
    simplified, verdict = simplify(original, settings.step_limit)
    verdict.check(original)
    click.echo(f"U{m.name} presentation:")
    click.echo(original.format(), nl=False)
    click.echo("simplified:")
    click.echo(simplified.format(), nl=False)
    click.echo(f"certificate steps: {len(verdict.steps)}")
    click.echo(f"verdict: {verdict.status.value}")
    click.echo(f"abelianization: {abelianization(original)}")


@main.command("verify-paper")
@click.option("--max-degree", type=int, default=None, help="Truncation degree (default 5)")
@click.option("--levels", type=int, default=None, help="Levels of M_* checked (default 4)")
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
@click.option("--show-timings", is_flag=True, help="Add elapsed times to the report")
@click.option("--face-rule", type=click.Choice(["standard", "misnumbered"]), hidden=True)
@click.pass_obj
@_handle_errors
def verify_paper(settings, max_degree, levels, output_format, show_timings, face_rule):
    """Run every check of the counterexample; exit 0 iff all pass"""
    settings = settings.replace(max_degree=max_degree, levels=levels)
    if settings.max_degree < 2 or settings.levels < 1:
        raise InputError("verify-paper needs --max-degree >= 2 and --levels >= 1")
    report = PaperVerifier(settings, face_rule or "standard").run()
    if output_format == "json":
        click.echo(report.to_json(show_timings), nl=False)
    else:
        click.echo(report.to_text(show_timings), nl=False)
    sys.exit(int(report.exit_code))


@main.command("fp-homology")
@click.option("--copies", "k", type=int, default=2, help="Number of free summands k")
@click.option("--word-length", "length", type=int, default=2, help="Maximum total word length L")
@click.option("--max-degree", type=int, default=None, help="Truncation degree n")
@click.pass_obj
@_handle_errors
def fp_homology(settings, k, length, max_degree):
    """Homology of the nerve of M_k restricted to total word length <= L"""
    settings = settings.replace(max_degree=max_degree)
    x = truncated_fp_nerve(k, length, settings.max_degree, max_simplices=settings.max_simplices)
    groups = homology_groups(
        normalized_chains(x), two_step_max_cells=settings.two_step_max_cells
    )
    click.echo(EXPLORATORY_BANNER)
    click.echo(f"k={k}, L={length}, simplices per degree: {x.counts()}")
    # reduced homology of a wedge of k two-spheres, for comparison only
    expected = [HomologyGroup(0)] * 2 + [HomologyGroup(k)]
    for n, group in enumerate(groups):
        line = f"H_{n} = {group}"
        if n < len(expected):
            line += f"    (reduced {reduced(group, n)}; wedge of {k} S^2: {expected[n]})"
        click.echo(line)


@main.command()
@click.argument("file")
@click.option(
    "--method",
    type=click.Choice([m.value for m in HomologyMethod]),
    default=HomologyMethod.Auto.value,
)
@click.pass_obj
@_handle_errors
def chains(settings, file, method):
    """Homology of a chain complex in the `dim n: r` / `n i j c` format"""
    c = parse_chain_complex(_read_input(file))
    bad = c.find_nonzero_composite()
    if bad is not None:
        raise InputError(f"boundary {bad - 1} after boundary {bad} is not zero")
    groups = homology_groups(
        c, method=HomologyMethod(method), two_step_max_cells=settings.two_step_max_cells
    )
    _print_groups(groups)
    click.echo(f"H_{c.n_max} withheld: truncation degree")


if __name__ == "__main__":
    main()
