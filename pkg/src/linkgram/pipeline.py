"""The full sentence pipeline shared by the command line and the tests.

prepare -> coordination expansion -> prune -> power prune -> count ->
extract -> and-validation -> post-processing -> score and rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .conjunctions import PLACEHOLDERS, analyze_and, expand_for_coordination
from .engine import DEFAULT_MAX_LINKAGES, Parser
from .postprocess import PostConfig, postprocess
from .prep import MAX_TOKENS, prepare
from .pruning import power_prune, prune
from .render import rank, score


@dataclass
class Options:
    max_linkages: int = DEFAULT_MAX_LINKAGES
    prune: bool = True
    power_prune: bool = True
    fast_match: bool = True
    coordination: bool = True
    postprocess: bool = True
    max_tokens: int = MAX_TOKENS


@dataclass
class ParsedLinkage:
    linkage: object
    and_lists: list
    and_violations: list
    domains: object  # DomainStructure or None
    pp_violations: list
    score: object

    @property
    def violations(self):
        return list(self.and_violations) + list(self.pp_violations)

    @property
    def valid(self):
        return not self.violations


@dataclass
class SentenceResult:
    line: str
    count: int = 0
    linkages: list = field(default_factory=list)  # ranked ParsedLinkage
    sentences: list = field(default_factory=list)  # prepared (and pruned) sentences

    @property
    def accepted(self):
        return any(p.valid for p in self.linkages)

    @property
    def valid_count(self):
        return sum(1 for p in self.linkages if p.valid)

    def header(self):
        return f"{self.count} ways to parse ({len(self.linkages)} linkages)"


def prepare_sentences(line, d, opts: Options):
    kw = {"max_tokens": opts.max_tokens}
    if opts.coordination:
        kw["placeholders"] = PLACEHOLDERS
    out = []
    for s in prepare(line, d, **kw):
        if opts.coordination:
            s = expand_for_coordination(s)
        if opts.prune:
            s = prune(s)
        if opts.power_prune:
            s = power_prune(s)
        out.append(s)
    return out


def analyze_linkage(lk, cfg: "PostConfig | None", opts: Options) -> ParsedLinkage:
    lists, and_viol = analyze_and(lk) if opts.coordination else ([], [])
    ds, pp_viol = (None, [])
    if opts.postprocess and cfg is not None:
        ds, pp_viol = postprocess(lk, cfg)
    sc = score(lk, list(and_viol) + list(pp_viol), lists)
    return ParsedLinkage(lk, lists, and_viol, ds, pp_viol, sc)


def parse_line(line, d, cfg=None, opts: "Options | None" = None) -> SentenceResult:
    """Run the whole pipeline on one line; raises UnknownWord."""
    opts = opts or Options()
    res = SentenceResult(line)
    items = []
    for s in prepare_sentences(line, d, opts):
        res.sentences.append(s)
        p = Parser(s, fast_match=opts.fast_match)
        res.count += p.count()
        left = opts.max_linkages - len(items)
        if left <= 0:
            continue
        for lk in p.linkages(left):
            pl = analyze_linkage(lk, cfg, opts)
            items.append((pl, pl.score))
    res.linkages = [pl for pl, _ in rank(items)]
    return res
