import itertools
from importlib import resources

import pytest

from linkgram.cfg import (
    EnumerationTooLarge,
    GnfGrammar,
    GrammarError,
    UnsupportedFeature,
    cfg_acceptor,
    cfg_accepts,
    check_gnf,
    gnf_to_link_grammar,
    language_equiv_check,
    link_acceptor,
    link_grammar_to_cfg,
    parse_gnf,
)
from linkgram.dictionary import format_dictionary, parse_dictionary
from linkgram.engine import Parser
from linkgram.grammar import expand
from linkgram.prep import prepare_words


def anbn_text():
    return resources.files("linkgram").joinpath("data/anbn.gnf").read_text("utf-8")


def strings(alphabet, maxlen):
    for n in range(1, maxlen + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_ab_grammar_dictionary():
    d = gnf_to_link_grammar(parse_gnf("S -> a B\nB -> b"))
    assert [x.notation() for x in expand(d.entries["a"])] == ["(()(B))"]
    assert [x.notation() for x in expand(d.entries["b"])] == ["((B)())"]
    acc = link_acceptor(d)
    assert [w for w in strings("ab", 4) if acc(w)] == [("a", "b")]


def test_single_terminal_grammar():
    d = gnf_to_link_grammar(parse_gnf("S -> w"))
    assert [x.notation() for x in expand(d.entries["w"])] == ["(()())"]
    acc = link_acceptor(d)
    assert [w for w in strings("w", 3) if acc(w)] == [("w",)]


def test_anbn_matches_cfg_membership():
    g = parse_gnf(anbn_text())
    rep = language_equiv_check(link_acceptor(gnf_to_link_grammar(g)), cfg_acceptor(g.to_cfg()), "ab", 8)
    assert rep.equivalent and rep.checked == 510
    assert cfg_accepts(g.to_cfg(), "aabb")
    assert not cfg_accepts(g.to_cfg(), "aab")


def test_gnf_linkages_are_trees():
    g = parse_gnf(anbn_text())
    d = gnf_to_link_grammar(g)
    for e in d.entries.values():
        assert all(len(x.left) <= 1 for x in expand(e))
    for w in strings("ab", 8):
        s = prepare_words(list(w), d, wall=False)
        for lk in Parser(s).linkages():
            assert len(lk.links) == len(w) - 1


def test_start_on_right_side_gets_a_fresh_start():
    d = gnf_to_link_grammar(parse_gnf("S -> a S B | a B\nB -> b"))
    assert "VA+" not in format_dictionary(d)
    assert "S-" in format_dictionary(d)


def test_gnf_errors():
    with pytest.raises(GrammarError):
        parse_gnf("S -> a\nS ->")
    with pytest.raises(GrammarError):
        parse_gnf("S a B")
    with pytest.raises(GrammarError):
        parse_gnf("S -> a C")
    with pytest.raises(GrammarError):
        check_gnf(GnfGrammar("S", [("S", "B", ()), ("B", "b", ())]))


def test_intro_dictionary_to_cfg(intro1):
    g = link_grammar_to_cfg(intro1)
    assert cfg_accepts(g, "the cat chased a snake".split())
    assert not cfg_accepts(g, "the Mary chased cat".split())
    rep = language_equiv_check(link_acceptor(intro1), cfg_acceptor(g), sorted(intro1.entries), 4)
    assert rep.equivalent


def test_single_empty_word_cfg():
    g = link_grammar_to_cfg(parse_dictionary("w: ();"))
    assert [w for w in strings(["w"], 3) if cfg_accepts(g, w)] == [("w",)]


def test_empty_language_cfg():
    g = link_grammar_to_cfg(parse_dictionary("w: A+;"))
    assert not any(cfg_accepts(g, w) for w in strings(["w"], 6))


def test_unsupported_features(intro2):
    with pytest.raises(UnsupportedFeature):
        link_grammar_to_cfg(intro2)
    with pytest.raises(UnsupportedFeature):
        link_grammar_to_cfg(parse_dictionary("a: Ss+; b: S-;"))


def test_round_trip_through_both_directions():
    g = parse_gnf(anbn_text())
    d = gnf_to_link_grammar(g)
    back = link_grammar_to_cfg(d)
    assert language_equiv_check(cfg_acceptor(g.to_cfg()), cfg_acceptor(back), "ab", 8).equivalent


def test_equivalence_guard():
    with pytest.raises(EnumerationTooLarge) as e:
        language_equiv_check(bool, bool, "abcdefghij", 7)
    assert e.value.needed == 10**7


def test_identical_acceptors_agree():
    acc = cfg_acceptor(parse_gnf(anbn_text()).to_cfg())
    assert language_equiv_check(acc, acc, "ab", 6).disagreements == []


def test_perturbed_grammar_disagrees():
    g = parse_gnf(anbn_text())
    bad = parse_gnf("S -> a S B | a B | b\nB -> b")
    rep = language_equiv_check(cfg_acceptor(g.to_cfg()), link_acceptor(gnf_to_link_grammar(bad)), "ab", 4)
    assert (("b",), False, True) in rep.disagreements
