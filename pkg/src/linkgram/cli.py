"""Command line: interactive parsing, batch judgement runs and grammar tools."""
from __future__ import annotations

import json
import os
import sys

import click

from . import cfg as cfgmod
from .dictionary import DictionaryError, format_dictionary, load_abridged, load_dictionary
from .pipeline import Options, parse_line
from .postprocess import ConfigError, load_config, load_config_asset
from .prep import SentenceTooLong, UnknownWord
from .render import linkage_record, render_diagram, render_table


class Session:
    def __init__(self, d, pp, opts: Options, show_wall=False, show_domains=False, show_all=False):
        self.d = d
        self.pp = pp
        self.opts = opts
        self.show_wall = show_wall
        self.show_domains = show_domains
        self.show_all = show_all
        self.records = []

    def parse(self, line):
        res = parse_line(line, self.d, self.pp, self.opts)
        self.records.append(
            {
                "sentence": line,
                "count": res.count,
                "accepted": res.accepted,
                "linkages": [
                    linkage_record(p.linkage, p.domains, p.violations, p.score) for p in res.linkages
                ],
            }
        )
        return res

    def describe(self, res) -> str:
        out = [res.header()]
        if not res.linkages:
            out.append("No complete linkages found.")
            return "\n".join(out)
        shown = res.linkages if self.show_all else res.linkages[:1]
        for i, p in enumerate(shown, 1):
            out.append("")
            out.append(f"linkage {i} ({p.score.header()})")
            for v in p.violations:
                out.append(f"Invalid linkage: {v} violated")
            out.append(render_diagram(p.linkage, show_wall=self.show_wall))
            if self.show_domains and p.domains is not None:
                out.append("")
                out.append(render_table(p.linkage, p.domains))
        return "\n".join(out)


def _load_session(ctx_opts) -> Session:
    path = ctx_opts["dict_path"]
    try:
        d = load_dictionary(path) if path else load_abridged()
    except (OSError, DictionaryError) as e:
        raise click.ClickException(f"cannot load dictionary: {e}")
    pp_path = ctx_opts["pp_config"]
    if pp_path is None and path:
        sibling = os.path.splitext(path)[0] + ".pp"
        if os.path.exists(sibling):
            pp_path = sibling
    try:
        pp = load_config(pp_path) if pp_path else load_config_asset()
    except (OSError, ConfigError) as e:
        raise click.ClickException(f"cannot load post-processing config: {e}")
    opts = Options(
        max_linkages=ctx_opts["max_linkages"],
        prune=not ctx_opts["no_prune"],
        power_prune=not ctx_opts["no_power_prune"],
        fast_match=not ctx_opts["no_fast_match"],
        coordination=not ctx_opts["no_and"],
        postprocess=not ctx_opts["no_pp"],
        max_tokens=ctx_opts["max_tokens"],
    )
    return Session(d, pp, opts, ctx_opts["show_wall"], ctx_opts["show_domains"], ctx_opts["show_all"])


def run_batch(session: Session, lines, echo=click.echo, verbose=False) -> int:
    """Judge every line; returns 1 if any verdict disagrees with its mark.

    ``*`` marks a sentence that must be rejected, ``!`` a known discrepancy
    that is reported but not counted, ``%`` a comment.
    """
    failures = 0
    total = 0
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        mark = line[0] if line[0] in "*!" else ""
        sentence = line[1:].strip() if mark else line
        try:
            res = session.parse(sentence)
            accepted = res.accepted
            note = f"{res.valid_count} valid of {res.count}"
        except (UnknownWord, SentenceTooLong) as e:
            accepted = False
            note = f"error: {e}"
        total += 1
        expected = mark != "*"
        if mark == "!":
            status = "known"
        elif accepted == expected:
            status = "ok"
        else:
            status = "FAIL"
            failures += 1
        verdict = "accepted" if accepted else "rejected"
        echo(f"[{status}] {line}  ({verdict}; {note})")
        if verbose and not note.startswith("error"):
            echo(session.describe(res))
            echo("")
    echo(f"{total - failures} of {total} judgements as expected")
    return 1 if failures else 0


def run_repl(session: Session, stream, echo=click.echo, prompt=True):
    while True:
        if prompt:
            click.echo("linkparser> ", nl=False)
        line = stream.readline()
        if not line:
            break
        line = line.strip()
        if not line:
            continue
        if line in ("!quit", "!exit"):
            break
        try:
            echo(session.describe(session.parse(line)))
        except (UnknownWord, SentenceTooLong) as e:
            echo(f"error: {e}")
        echo("")


@click.group(invoke_without_command=True, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--dict", "dict_path", type=click.Path(dir_okay=False), help="Dictionary file (default: bundled abridged English).")
@click.option("--pp-config", type=click.Path(dir_okay=False), help="Post-processing config (default: sibling .pp file or bundled default).")
@click.option("--max-linkages", default=1000, show_default=True, help="Linkages to extract per sentence.")
@click.option("--max-tokens", default=64, show_default=True, help="Longest sentence accepted.")
@click.option("--show-wall", is_flag=True, help="Draw the wall and its links.")
@click.option("--show-domains", is_flag=True, help="Print the domain table of each linkage.")
@click.option("--all", "show_all", is_flag=True, help="Print every linkage, not just the best.")
@click.option("--no-prune", is_flag=True, help="Skip disjunct pruning.")
@click.option("--no-power-prune", is_flag=True, help="Skip power pruning.")
@click.option("--no-fast-match", is_flag=True, help="Try every disjunct in the counting recursion.")
@click.option("--no-and", is_flag=True, help="Disable coordination handling.")
@click.option("--no-pp", is_flag=True, help="Disable post-processing.")
@click.option("--batch", type=click.File("r"), help="Judge a corpus file and exit with its status.")
@click.option("--verbose", is_flag=True, help="In batch mode, also print linkages.")
@click.option("--export-json", type=click.Path(dir_okay=False), help="Write the parsed linkages as JSON.")
@click.pass_context
def main(ctx, **kw):
    """Parse sentences with a link grammar dictionary."""
    if ctx.invoked_subcommand is not None:
        return
    session = _load_session(kw)
    if kw["batch"] is not None:
        status = run_batch(session, kw["batch"], verbose=kw["verbose"])
    else:
        run_repl(session, sys.stdin, prompt=sys.stdin.isatty())
        status = 0
    if kw["export_json"]:
        with open(kw["export_json"], "w", encoding="utf-8") as fh:
            json.dump(session.records, fh, indent=2)
    ctx.exit(status)


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command("convert-gnf")
@click.argument("grammar", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False))
def convert_gnf(grammar, output):
    """Turn a Greibach-normal-form grammar into a dictionary."""
    try:
        with open(grammar, encoding="utf-8") as fh:
            g = cfgmod.parse_gnf(fh.read())
        d = cfgmod.gnf_to_link_grammar(g)
    except cfgmod.GrammarError as e:
        raise click.ClickException(str(e))
    _write(format_dictionary(d), output)


@main.command("convert-lg")
@click.argument("dictionary", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False))
def convert_lg(dictionary, output):
    """Turn a basic dictionary into a context-free grammar."""
    try:
        g = cfgmod.link_grammar_to_cfg(load_dictionary(dictionary))
    except (cfgmod.UnsupportedFeature, DictionaryError) as e:
        raise click.ClickException(str(e))
    _write(g.format(), output)


@main.command("equiv-check")
@click.argument("grammar", type=click.Path(exists=True, dir_okay=False))
@click.option("--dict", "dict_path", type=click.Path(exists=True, dir_okay=False), help="Compare against this dictionary instead of the converted grammar.")
@click.option("--maxlen", default=6, show_default=True)
def equiv_check(grammar, dict_path, maxlen):
    """Compare a GNF grammar with a dictionary on all short strings."""
    try:
        with open(grammar, encoding="utf-8") as fh:
            g = cfgmod.parse_gnf(fh.read())
        d = load_dictionary(dict_path) if dict_path else cfgmod.gnf_to_link_grammar(g)
        rep = cfgmod.language_equiv_check(
            cfgmod.cfg_acceptor(g.to_cfg()), cfgmod.link_acceptor(d), g.terminals, maxlen
        )
    except (cfgmod.GrammarError, cfgmod.EnumerationTooLarge, DictionaryError) as e:
        raise click.ClickException(str(e))
    click.echo(f"checked {rep.checked} strings")
    if rep.equivalent:
        click.echo("no disagreements")
        return
    for words, a, b in rep.disagreements:
        click.echo(f"{' '.join(words)}: grammar {'accepts' if a else 'rejects'}, dictionary {'accepts' if b else 'rejects'}")
    sys.exit(1)


@main.command("scaling")
@click.option("--sizes", default="8,16,32,64", show_default=True)
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), help="Save a log-log figure here.")
def scaling_cmd(sizes, plot_path):
    """Measure memo size and time of the counting recursion."""
    from . import scaling

    rows = scaling.measure(tuple(int(x) for x in sizes.split(",")))
    click.echo(scaling.report(rows))
    if plot_path:
        scaling.plot(rows, plot_path)
        click.echo(f"figure written to {plot_path}")


if __name__ == "__main__":
    main()
