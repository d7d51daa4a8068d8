"""Linkage scoring, ranking, ASCII diagrams, link tables and JSON export."""
from __future__ import annotations

import json
from dataclasses import astuple, dataclass

from .prep import WALL_WORD


@dataclass(frozen=True, order=True)
class LinkageScore:
    violations: int = 0
    disjunct_cost: int = 0
    and_cost: int = 0
    link_cost: int = 0

    def header(self) -> str:
        return (
            f"p.p. violations: {self.violations}, disjunct cost: {self.disjunct_cost}, "
            f"and cost: {self.and_cost}, link cost: {self.link_cost}"
        )


def _is_wall(lk, w):
    return lk.sentence.has_wall and w == 0


def link_cost(lk) -> int:
    return sum(k.rw - k.lw - 1 for k in lk.links if not _is_wall(lk, k.lw))


def score(lk, violations=(), and_lists=()) -> LinkageScore:
    from .conjunctions import and_cost

    return LinkageScore(
        len(violations),
        sum(d.cost for d in lk.disjuncts),
        and_cost(and_lists),
        link_cost(lk),
    )


def rank(items):
    """Stable ascending sort of ``(linkage, score, ...)`` tuples by score."""
    return sorted(items, key=lambda it: astuple(it[1]))


# -- diagrams -------------------------------------------------------------


def _word_text(lk, w):
    return lk.sentence.tokens[w].display_for(lk.disjuncts[w]).replace(" ", "_")


def _levels(links):
    """Row of each link: one above every link drawn inside its span."""
    level = {}
    for k in sorted(links, key=lambda k: k.rw - k.lw):
        inner = [level[j] for j in level if k.lw <= j.lw and j.rw <= k.rw]
        level[k] = 1 + max(inner, default=0)
    return level


def render_diagram(lk, show_wall=True) -> str:
    n = len(lk.sentence.tokens)
    skip = not show_wall and lk.sentence.has_wall
    words = [w for w in range(n) if not (skip and w == 0)]
    links = [k for k in lk.links if not (skip and k.lw == 0)]
    text = {w: (WALL_WORD if _is_wall(lk, w) else _word_text(lk, w)) for w in words}
    # columns: each word starts at its anchor; widen gaps until labels fit
    col = {}
    x = 0
    for w in words:
        col[w] = x
        x += len(text[w]) + 1
    for k in sorted(links, key=lambda k: k.rw - k.lw):
        need = len(k.label) + 4
        have = col[k.rw] - col[k.lw]
        if have < need:
            for w in words:
                if w >= k.rw:
                    col[w] += need - have
    width = max(col[w] + len(text[w]) for w in words) if words else 0
    level = _levels(links)
    top = max(level.values(), default=0)
    rows = []
    for lev in range(top, 0, -1):
        row = [" "] * width
        for k, lv in level.items():
            if lv > lev:
                row[col[k.lw]] = "|"
                row[col[k.rw]] = "|"
        for k, lv in level.items():
            if lv != lev:
                continue
            a, b = col[k.lw], col[k.rw]
            for c in range(a + 1, b):
                row[c] = "-"
            start = a + 1 + (b - a - 1 - len(k.label)) // 2
            row[start : start + len(k.label)] = list(k.label)
            row[a] = row[b] = "+"
        rows.append("".join(row).rstrip())
    if links:
        row = [" "] * width
        for k in links:
            row[col[k.lw]] = row[col[k.rw]] = "|"
        rows.append("".join(row).rstrip())
    line = [" "] * width
    for w in words:
        line[col[w] : col[w] + len(text[w])] = list(text[w])
    rows.append("".join(line).rstrip())
    return "\n".join(rows)


def parse_diagram(text: str):
    """Recover ``(left index, right index, label)`` arcs from a diagram.

    Word indices count the words on the bottom row from zero.
    """
    lines = text.split("\n")
    bottom = lines[-1]
    anchors = []
    for c, ch in enumerate(bottom):
        if ch != " " and (c == 0 or bottom[c - 1] == " "):
            anchors.append(c)
    at = {c: i for i, c in enumerate(anchors)}
    arcs = []
    for line in lines[:-1]:
        plus = [c for c, ch in enumerate(line) if ch == "+"]
        for a, b in zip(plus, plus[1:]):
            seg = line[a + 1 : b]
            if seg and " " not in seg and "|" not in seg and seg.startswith("-") and seg.endswith("-"):
                arcs.append((at[a], at[b], seg.strip("-")))
    return sorted(arcs)


# -- tables and export ------------------------------------------------------


def _domain_list(ds, i):
    return " ".join("(%s)" % ds.domains[j].type for j in ds.membership[i])


def table_rows(lk, ds):
    """One tuple per link, in domain-table order."""
    out = []
    for i, k in enumerate(ds.links):
        lw = WALL_WORD if _is_wall(lk, k.lw) else _word_text(lk, k.lw)
        out.append(
            (
                _domain_list(ds, i),
                lw,
                k.lconn.label(),
                "<--%s-->" % k.label,
                k.rconn.label(),
                _word_text(lk, k.rw),
            )
        )
    return out


def render_table(lk, ds) -> str:
    return "\n".join("\t".join(r) for r in table_rows(lk, ds))


def linkage_record(lk, ds=None, violations=(), sc=None) -> dict:
    links = ds.links if ds is not None else lk.links
    recs = []
    for i, k in enumerate(links):
        recs.append(
            {
                "left": k.lw,
                "right": k.rw,
                "left_word": WALL_WORD if _is_wall(lk, k.lw) else _word_text(lk, k.lw),
                "right_word": _word_text(lk, k.rw),
                "left_connector": str(k.lconn),
                "right_connector": str(k.rconn),
                "label": k.label,
                "domains": [ds.domains[j].type for j in ds.membership[i]] if ds is not None else [],
            }
        )
    out = {"links": recs, "violations": list(violations)}
    if sc is not None:
        out["score"] = {
            "violations": sc.violations,
            "disjunct_cost": sc.disjunct_cost,
            "and_cost": sc.and_cost,
            "link_cost": sc.link_cost,
        }
    return out


def export_json(records) -> str:
    return json.dumps(records, indent=2)
