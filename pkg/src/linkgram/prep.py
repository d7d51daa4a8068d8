"""Sentence preparation: tokens, dictionary lookup, idioms and the wall."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dictionary import Dictionary, lookup_word
from .grammar import LEFT, RIGHT, Connector, ConnectorName, Disjunct, expand

WALL_WORD = "/////"
WALL_KEY = "WALL"
PROPER_NOUN = "John"
MAX_TOKENS = 64

WA_RIGHT = Connector(ConnectorName("WA"), RIGHT)
WA_LEFT = Connector(ConnectorName("WA"), LEFT)


class UnknownWord(LookupError):
    def __init__(self, words):
        self.words = list(words)
        super().__init__("unknown word(s): " + ", ".join(self.words))


class SentenceTooLong(ValueError):
    pass


@dataclass
class SentenceWord:
    surface: str
    disjuncts: list
    span: tuple = (0, 0)
    display: str = ""
    # disjunct -> display name of the dictionary variant that produced it
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.display:
            self.display = self.surface

    def display_for(self, d: Disjunct) -> str:
        return self.labels.get(d, self.display)

    def with_disjuncts(self, disjuncts, labels=None):
        return SentenceWord(
            self.surface,
            list(disjuncts),
            self.span,
            self.display,
            dict(self.labels if labels is None else labels),
        )


@dataclass
class PreparedSentence:
    tokens: list
    origin: str = ""
    has_wall: bool = True
    # optional per word, per disjunct: (left bounds, right bounds), each a
    # tuple of absolute word indices aligned with the nearest-first lists
    nearest: "list | None" = None

    def __len__(self):
        return len(self.tokens)

    def words(self):
        return [t.surface for t in self.tokens]

    def replace(self, tokens, nearest=None):
        return PreparedSentence(list(tokens), self.origin, self.has_wall, nearest)

    def disjunct_counts(self):
        return [len(t.disjuncts) for t in self.tokens]


def tokenize(line: str) -> list:
    out = []
    for piece in line.split():
        # commas are words of their own
        parts = piece.split(",")
        for i, p in enumerate(parts):
            if p:
                out.append(p)
            if i < len(parts) - 1:
                out.append(",")
    while out and out[-1] in (".", "?", "!"):
        out.pop()
    if out and len(out[-1]) > 1 and out[-1][-1] in ".?!":
        out[-1] = out[-1][:-1]
    return out


def split_possessives(d: Dictionary, tokens):
    if "'s" not in d:
        return list(tokens)
    out = []
    for t in tokens:
        if t.endswith("'s") and len(t) > 2:
            out.extend([t[:-2], "'s"])
        else:
            out.append(t)
    return out


def _variants(d: Dictionary, key: str):
    """(display, expression) pairs for one dictionary key."""
    e = lookup_word(d, key)
    if e is None:
        return []
    labels = getattr(e, "labels", None)
    if labels:
        return list(zip(labels, e.items))
    return [(key, e)]


def resolve_word(d: Dictionary, token: str, initial: bool, proper_noun=PROPER_NOUN):
    """Return (display, expression) pairs for a token, or [] if unknown."""
    tries = []
    if initial and token[:1].isupper():
        tries.append(token.lower())
    tries.append(token)
    for key in tries:
        v = _variants(d, key)
        if v:
            if key == token.lower() and key != token:
                # keep the surface spelling of the sentence-initial word
                v = [(token if lab == key else lab, e) for lab, e in v]
            return v
    if token[:1].isupper() and proper_noun in d:
        return [(token, d.entries[proper_noun])]
    return []


def _make_word(surface, span, variants):
    merged = {}
    labels = {}
    for lab, e in variants:
        for dj in expand(e):
            old = merged.get(dj)
            if old is None or dj.cost < old.cost:
                merged[dj] = dj
            labels.setdefault(dj, lab)
    disjuncts = list(merged.values())
    display = variants[0][0] if len(variants) == 1 else surface
    return SentenceWord(surface, disjuncts, span, display, labels)


def idiom_sites(d: Dictionary, tokens):
    """Greedy left-to-right maximal idiom matches as (start, end) pairs."""
    if not d.idioms:
        return []
    lengths = sorted({len(k.split()) for k in d.idioms}, reverse=True)
    sites = []
    i = 0
    while i < len(tokens):
        hit = None
        for n in lengths:
            if n < 2 or i + n > len(tokens):
                continue
            words = tokens[i : i + n]
            keys = [" ".join(words)]
            if i == 0:
                keys.append(" ".join([words[0].lower()] + words[1:]))
            if any(k in d.idioms for k in keys):
                hit = (i, i + n)
                break
        if hit:
            sites.append(hit)
            i = hit[1]
        else:
            i += 1
    return sites


def resolve_tokens(d: Dictionary, tokens, proper_noun=PROPER_NOUN, placeholders=()):
    """All candidate word sequences for ``tokens`` (idioms fused or not).

    Tokens in ``placeholders`` that the dictionary lacks become words with
    no disjuncts; a later stage is expected to supply them.
    """
    tokens = list(tokens)
    sites = idiom_sites(d, tokens)
    candidates = []
    failures = []
    for choice in itertools.product((True, False), repeat=len(sites)):
        fused = {s[0]: s for s, f in zip(sites, choice) if f}
        seq, bad = [], []
        i = 0
        while i < len(tokens):
            if i in fused:
                a, b = fused[i]
                key = " ".join(tokens[a:b])
                if key not in d.idioms and a == 0:
                    key = " ".join([tokens[0].lower()] + tokens[1:b])
                seq.append(_make_word(key, (a, b), [(key, d.entries[key])]))
                i = b
                continue
            v = resolve_word(d, tokens[i], i == 0, proper_noun)
            if not v and tokens[i].lower() in placeholders:
                seq.append(SentenceWord(tokens[i], [], (i, i + 1)))
            elif not v:
                bad.append(tokens[i])
            else:
                seq.append(_make_word(tokens[i], (i, i + 1), v))
            i += 1
        if bad:
            failures.append(bad)
        else:
            candidates.append(seq)
    if not candidates and tokens:
        raise UnknownWord(min(failures, key=len))
    return candidates


def attach_wall(seq, d: Dictionary) -> PreparedSentence:
    if WALL_KEY not in d:
        raise KeyError("dictionary has no WALL entry")
    wall_dis = expand(d.entries[WALL_KEY])
    extra = Disjunct((), (WA_RIGHT,))
    if extra not in wall_dis:
        wall_dis.append(extra)
    wall = SentenceWord(WALL_WORD, wall_dis, (0, 0))
    words = [wall]
    for k, w in enumerate(seq):
        if k == 0:
            dis = list(w.disjuncts)
            labels = dict(w.labels)
            for dj in w.disjuncts:
                dup = Disjunct(dj.left + (WA_LEFT,), dj.right, dj.cost)
                if dup not in labels:
                    dis.append(dup)
                    labels[dup] = w.labels.get(dj, w.display)
            w = w.with_disjuncts(dis, labels)
        words.append(w)
    return PreparedSentence(words)


def prepare(line: str, d: Dictionary, wall=None, max_tokens=MAX_TOKENS,
            proper_noun=PROPER_NOUN, placeholders=()):
    """Tokenize and resolve ``line``; returns a list of candidate sentences.

    ``wall`` defaults to whether the dictionary defines ``WALL``.
    """
    if wall is None:
        wall = WALL_KEY in d
    tokens = split_possessives(d, tokenize(line))
    if len(tokens) > max_tokens:
        raise SentenceTooLong(f"{len(tokens)} tokens exceeds limit {max_tokens}")
    out = []
    for seq in resolve_tokens(d, tokens, proper_noun, placeholders):
        if wall:
            s = attach_wall(seq, d)
        else:
            s = PreparedSentence(list(seq), has_wall=False)
        s.origin = line
        out.append(s)
    if not out:
        # empty line
        out.append(attach_wall([], d) if wall else PreparedSentence([], line, False))
    return out


def prepare_words(words, d: Dictionary, wall=None, **kw):
    """Prepare an already-tokenized word sequence (first candidate)."""
    return prepare(" ".join(words), d, wall=wall, **kw)[0]
