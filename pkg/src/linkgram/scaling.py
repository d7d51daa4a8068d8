"""Growth of the counting recursion on a maximally ambiguous grammar.

Every word of ``x x ... x`` may link to every other word, so the counting
recursion tries every split of every region and its running time is
cubic in the sentence length while the memo table stays quadratic.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .dictionary import DictSource, parse_dictionary
from .engine import Parser
from .prep import prepare
from .pruning import full_pipeline

SCALING_DICT = "x: {@A-} & {@A+};"
DEFAULT_SIZES = (8, 16, 32, 64)


@dataclass
class ScalingRow:
    n: int
    count: int
    memo: int
    seconds: float


def scaling_sentence(n):
    d = parse_dictionary(DictSource(SCALING_DICT, "<scaling>"))
    return full_pipeline(prepare(" ".join(["x"] * n), d, max_tokens=max(n, 1))[0])


def measure(sizes=DEFAULT_SIZES, repeats=3):
    rows = []
    for n in sizes:
        s = scaling_sentence(n)
        best = math.inf
        for _ in range(repeats):
            t = time.perf_counter()
            p = Parser(s)
            c = p.count()
            best = min(best, time.perf_counter() - t)
        rows.append(ScalingRow(n, c, len(p.memo), best))
    return rows


def memo_constant(rows):
    """Largest memo / n^2 over the rows."""
    return max(r.memo / r.n**2 for r in rows)


def cubic_spread(rows):
    """Worst ratio between a measured time and the best-fitting c * n^3.

    The constant is the geometric mean of time / n^3, the least-squares fit
    in log space with the exponent fixed at three.
    """
    logs = [math.log(r.seconds / r.n**3) for r in rows]
    c = math.exp(sum(logs) / len(logs))
    return max(max(r.seconds / (c * r.n**3), c * r.n**3 / r.seconds) for r in rows)


def loglog_slope(rows):
    xs = [math.log(r.n) for r in rows]
    ys = [math.log(r.seconds) for r in rows]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def report(rows) -> str:
    lines = ["n\tmemo\tmemo/n^2\tseconds\tlinkages"]
    for r in rows:
        lines.append(f"{r.n}\t{r.memo}\t{r.memo / r.n**2:.2f}\t{r.seconds:.4f}\t{r.count:.3e}")
    lines.append(f"time exponent (log-log slope): {loglog_slope(rows):.2f}")
    lines.append(f"worst deviation from a cubic fit: x{cubic_spread(rows):.2f}")
    return "\n".join(lines)


def plot(rows, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r.n for r in rows]
    fig, (a, b) = plt.subplots(1, 2, figsize=(9, 3.5))
    a.loglog(ns, [r.memo for r in rows], "o-", label="memo entries")
    a.loglog(ns, [memo_constant(rows) * n**2 for n in ns], "--", label="c n^2")
    a.set_xlabel("words")
    a.legend()
    logs = [math.log(r.seconds / r.n**3) for r in rows]
    c = math.exp(sum(logs) / len(logs))
    b.loglog(ns, [r.seconds for r in rows], "o-", label="seconds")
    b.loglog(ns, [c * n**3 for n in ns], "--", label="c n^3")
    b.set_xlabel("words")
    b.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
