import json

import pytest

from ultralogic.hyper import HyperReal, hypernat_for
from ultralogic.words import (
    Alphabet,
    EmptySample,
    EmptyWord,
    GA_TEMPLATE,
    GB_TEMPLATE,
    MissingIndex,
    NonNatSlotValue,
    UnknownSymbol,
    build_paradigm,
    decode_word,
    default_alphabet,
    encode_word,
    enumerate_choice_sets,
    instantiate_template,
    make_frozen_segment,
    paradigm_from_jsonl,
    paradigm_to_jsonl,
    totality_membership,
)


def test_encode_examples():
    abc = Alphabet(("a", "b", "c"))
    assert encode_word("ab", abc).codes == (0, 1)
    assert encode_word("a", Alphabet(("a",))).codes == (0,)
    alpha = default_alphabet()
    assert decode_word(encode_word("and and", alpha), alpha) == "and and"
    with pytest.raises(UnknownSymbol):
        encode_word("xyz", abc)
    with pytest.raises(EmptyWord):
        encode_word("", abc)


def test_round_trip_corpus():
    alpha = default_alphabet()
    for w in ("sun rises", "x", "The particle moved.", "0123  indented"):
        assert decode_word(encode_word(w, alpha), alpha) == w


def test_frozen_segment_and_totalities():
    seg = make_frozen_segment("sun rises", 3)
    assert "the natural number 3" in seg.decode_tail(default_alphabet())
    assert totality_membership(seg, 3)
    assert not totality_membership(seg, 2)
    seg0 = make_frozen_segment("x", 0)
    assert seg0.index == 0 and totality_membership(seg0, 0)
    assert not totality_membership(make_frozen_segment("x", 5), 4)


def test_membership_ignores_body():
    for body in ("alpha", "beta state", "gamma ray event"):
        seg = make_frozen_segment(body, 2)
        assert totality_membership(seg, 2)
        assert not totality_membership(seg, 3)


def test_disjoint_totalities_exhaustive():
    segs = [make_frozen_segment("w", i) for i in range(4)]
    for seg in segs:
        hits = [i for i in range(4) if totality_membership(seg, i)]
        assert hits == [seg.index]


def test_build_paradigm():
    p = build_paradigm(lambda i: f"state {i}", range(4))
    assert [s.index for s in p.segments] == [0, 1, 2, 3]
    with pytest.raises(MissingIndex):
        build_paradigm(lambda i: "x", [])
    p1 = build_paradigm(lambda i: f"s{i}", range(3))
    p2 = build_paradigm(lambda i: "other" if i == 1 else f"s{i}", range(3))
    diffs = [
        i for i, (a, b) in enumerate(zip(p1.segments, p2.segments)) if a != b
    ]
    assert diffs == [1]


def test_choice_sets():
    out = enumerate_choice_sets([frozenset({"a", "b"}), frozenset({"c"})], "all")
    assert sorted(out, key=sorted) == [frozenset({"a", "c"}), frozenset({"b", "c"})]
    singles = enumerate_choice_sets([frozenset({"a", "b", "c"})], ("exactly", 1))
    assert sorted(singles, key=sorted) == [
        frozenset({"a"}),
        frozenset({"b"}),
        frozenset({"c"}),
    ]
    assert enumerate_choice_sets([frozenset({"a"})], ("exactly", 0)) == [frozenset()]
    with pytest.raises(EmptySample):
        enumerate_choice_sets([frozenset()], "all")


def test_choice_set_counts():
    samples = [frozenset({1, 2}), frozenset({3, 4, 5}), frozenset({6})]
    out = enumerate_choice_sets(samples, "all")
    assert len(out) == 2 * 3 * 1
    for choice in out:
        for s in samples:
            assert len(choice & s) == 1


def test_template_natural():
    inst = instantiate_template(GA_TEMPLATE, 5)
    assert inst.text == "An elementary particle alpha(5) with kinetic energy c+1/(5)."
    assert inst.fully_readable


def test_template_unlimited():
    omega = HyperReal.omega()
    inst = instantiate_template(GA_TEMPLATE, omega)
    assert len(inst.subtle_slots) == 2
    assert "alpha(" in inst.text and "c+1/(" in inst.text
    ge = instantiate_template(GB_TEMPLATE, hypernat_for(3).value)
    # nat-like but unlimited: still flagged
    assert len(ge.subtle_slots) == 2


def test_template_rejects_non_nat():
    with pytest.raises(NonNatSlotValue):
        instantiate_template(GA_TEMPLATE, -1)
    with pytest.raises(NonNatSlotValue):
        instantiate_template(GA_TEMPLATE, HyperReal({0: 1, 1: 1}))


def test_serialization_round_trip():
    p = build_paradigm(lambda i: f"state {i}", range(3))
    text = paradigm_to_jsonl(p)
    lines = text.splitlines()
    assert len(lines) == 3
    rec = json.loads(lines[0])
    assert set(rec) == {"index", "body", "tail", "subtle"}
    again = paradigm_from_jsonl(text)
    assert again.segments == p.segments


def test_alphabet_file(tmp_path):
    path = tmp_path / "alpha.txt"
    path.write_text("a\nb\nc\n", encoding="utf-8")
    alpha = Alphabet.from_file(str(path))
    assert alpha.symbols == ("a", "b", "c")
    assert alpha.code_of("b") == 1
