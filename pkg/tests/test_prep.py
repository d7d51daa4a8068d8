import pytest

from linkgram.dictionary import parse_dictionary
from linkgram.prep import (
    WALL_WORD,
    SentenceTooLong,
    UnknownWord,
    prepare,
    prepare_words,
    tokenize,
)


def test_tokenize_commas_and_final_period():
    assert tokenize("dogs, cats and mice ran.") == ["dogs", ",", "cats", "and", "mice", "ran"]


def test_wall_is_word_zero(abridged):
    s = prepare("John saw the dog.", abridged)[0]
    assert s.has_wall
    assert s.words() == [WALL_WORD, "John", "saw", "the", "dog"]


def test_first_word_gets_wall_variants(abridged):
    s = prepare("dogs ran", abridged)[0]
    ds = s.tokens[1].disjuncts
    assert any(d.left and d.left[-1].label() == "WA" for d in ds)


def test_no_wall_without_entry(intro1):
    s = prepare("the cat ran", intro1)[0]
    assert not s.has_wall
    assert s.words() == ["the", "cat", "ran"]


def test_unknown_word(abridged):
    with pytest.raises(UnknownWord) as e:
        prepare("John saw the zorblax", abridged)
    assert e.value.words == ["zorblax"]


def test_capitalized_unknown_becomes_proper_noun(abridged):
    s = prepare("Zorblax saw the dog", abridged)[0]
    assert s.tokens[1].surface == "Zorblax"
    assert s.tokens[1].disjuncts


def test_length_guard(abridged):
    with pytest.raises(SentenceTooLong):
        prepare("the dog " * 40, abridged)


def test_idioms_give_alternatives():
    d = parse_dictionary('"a lot": O-; a: D+; lot: D- & O-; saw: O+;')
    alts = prepare_words(["saw", "a", "lot"], d)
    assert alts.words()
    seqs = [s.words() for s in prepare("saw a lot", d)]
    assert ["saw", "a lot"] in seqs and ["saw", "a", "lot"] in seqs


def test_suffix_display(abridged):
    s = prepare("John can go", abridged)[0]
    labels = {s.tokens[2].display_for(d) for d in s.tokens[2].disjuncts}
    assert "can.v" in labels


def test_placeholders_allow_missing_words(intro1):
    s = prepare("the cat and cat ran", intro1, placeholders=("and",))[0]
    assert s.tokens[2].disjuncts == []
