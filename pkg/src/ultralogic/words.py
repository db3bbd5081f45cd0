"""Word encoding, frozen segments, paradigms, choice sets, and sentence
templates with readable and pure-subtle positions.

Words over a declared alphabet encode as index sequences.  A frozen
segment is a body sentence plus a tail sentence tagging it with a time
index i; segments with the same tail index form a totality, and
totalities are pairwise disjoint.  Templates carry numeric slots that
stay readable for natural values and turn into pure-subtle marked
positions when the value is an unlimited hyperreal count.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .hyper import HyperReal, NatLike


class WordError(Exception):
    pass


class UnknownSymbol(WordError):
    pass


class EmptyWord(WordError):
    pass


class MissingIndex(WordError):
    pass


class EmptySample(WordError):
    pass


class NonNatSlotValue(WordError):
    pass


DEFAULT_TAIL_TEMPLATE = (
    "This frozen segment gives a description for the time interval that "
    "has as its leftmost endpoint the time that corresponds to the "
    "natural number {i}."
)

# codes >= len(alphabet) are pure-subtle markers with no reading
SUBTLE_BASE_TAG = "subtle"


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise WordError("alphabet symbols must be distinct")

    @property
    def code_map(self) -> Dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def code_of(self, symbol: str) -> int:
        try:
            return self.code_map[symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} not in alphabet") from None

    def symbol_of(self, code: int) -> str:
        if 0 <= code < len(self.symbols):
            return self.symbols[code]
        raise UnknownSymbol(f"code {code} has no reading")

    @classmethod
    def from_file(cls, path: str) -> "Alphabet":
        with open(path, encoding="utf-8") as fh:
            symbols = [line.rstrip("\n") for line in fh if line.rstrip("\n")]
        return cls(tuple(symbols))


def default_alphabet() -> Alphabet:
    """Printable ASCII, character-level."""
    import string

    return Alphabet(tuple(string.printable))


@dataclass(frozen=True)
class EncodedWord:
    codes: Tuple[int, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.codes)

    def subtle_positions(self, alphabet: Alphabet) -> List[int]:
        return [j for j, c in enumerate(self.codes) if c >= len(alphabet.symbols)]


def encode_word(word: str, alphabet: Alphabet) -> EncodedWord:
    if not word:
        raise EmptyWord("cannot encode the empty word")
    return EncodedWord(tuple(alphabet.code_of(ch) for ch in word))


def decode_word(ew: EncodedWord, alphabet: Alphabet) -> str:
    return "".join(alphabet.symbol_of(c) for c in ew.codes)


@dataclass(frozen=True)
class FrozenSegment:
    body: EncodedWord
    index: int
    tail: EncodedWord

    def decode_body(self, alphabet: Alphabet) -> str:
        return decode_word(self.body, alphabet)

    def decode_tail(self, alphabet: Alphabet) -> str:
        return decode_word(self.tail, alphabet)


def make_frozen_segment(
    body: str,
    index: int,
    alphabet: Optional[Alphabet] = None,
    tail_template: str = DEFAULT_TAIL_TEMPLATE,
) -> FrozenSegment:
    alphabet = alphabet or default_alphabet()
    if not body:
        raise EmptyWord("frozen segment body must be nonempty")
    tail_text = tail_template.format(i=index)
    return FrozenSegment(
        body=encode_word(body, alphabet),
        index=index,
        tail=encode_word(tail_text, alphabet),
    )


def totality_membership(
    seg: FrozenSegment,
    i: int,
    alphabet: Optional[Alphabet] = None,
    tail_template: str = DEFAULT_TAIL_TEMPLATE,
) -> bool:
    """True iff seg belongs to totality T_i: the tail reads as W_i."""
    alphabet = alphabet or default_alphabet()
    if seg.index != i:
        return False
    try:
        return decode_word(seg.tail, alphabet) == tail_template.format(i=i)
    except UnknownSymbol:
        return False


@dataclass(frozen=True)
class Paradigm:
    segments: Tuple[FrozenSegment, ...]
    kind: str  # "developmental" | "general"

    def __post_init__(self):
        if not self.segments:
            raise MissingIndex("paradigms must be nonempty")
        if self.kind == "developmental":
            idx = [s.index for s in self.segments]
            if idx != sorted(set(idx)):
                raise WordError("developmental indices must strictly increase")


def build_paradigm(
    selector,
    index_range: Iterable[int],
    alphabet: Optional[Alphabet] = None,
    tail_template: str = DEFAULT_TAIL_TEMPLATE,
) -> Paradigm:
    """One frozen segment per index, body chosen by selector(i)."""
    indices = list(index_range)
    if not indices:
        raise MissingIndex("index range is empty")
    segments = []
    for i in indices:
        try:
            body = selector(i)
        except KeyError:
            raise MissingIndex(f"selector undefined at index {i}") from None
        if body is None:
            raise MissingIndex(f"selector undefined at index {i}")
        segments.append(make_frozen_segment(body, i, alphabet, tail_template))
    return Paradigm(tuple(segments), kind="developmental")


def enumerate_choice_sets(totality_samples: Sequence[frozenset], cardinality_selector) -> List[frozenset]:
    """Finite choice-set enumeration.

    cardinality_selector is the string "all" (one element per sample,
    cartesian product) or ("exactly", k) applied to a single sample
    (all k-element subsets, including the empty set for k = 0).
    """
    if cardinality_selector == "all":
        for s in totality_samples:
            if not s:
                raise EmptySample("cannot choose from an empty sample")
        out = []
        for combo in itertools.product(*(sorted(s, key=repr) for s in totality_samples)):
            out.append(frozenset(combo))
        return out
    tag, k = cardinality_selector
    if tag != "exactly":
        raise ValueError(f"unknown selector {cardinality_selector!r}")
    (sample,) = totality_samples
    if not sample:
        raise EmptySample("cannot choose from an empty sample")
    return [frozenset(c) for c in itertools.combinations(sorted(sample, key=repr), k)]


# -- templates ----------------------------------------------------------------

GA_TEMPLATE = "An elementary particle alpha({n}) with kinetic energy c+1/({n})."
GB_TEMPLATE = "An elementary particle alpha({n}) with total energy c+({n})."

SlotValue = Union[int, HyperReal, NatLike]


@dataclass(frozen=True)
class TemplateInstance:
    text: str
    subtle_slots: Tuple[int, ...]  # character offsets of subtle positions

    @property
    def fully_readable(self) -> bool:
        return not self.subtle_slots


def instantiate_template(template: str, slot_value: SlotValue) -> TemplateInstance:
    """Fill the numeric slots of a sentence template.

    A natural number yields a fully readable sentence.  An unlimited
    nat-like value has no decimal reading, so each slot stays as a single
    pure-subtle position, marked by character offset.
    """
    if "{n}" not in template:
        raise ValueError("template has no slot")
    if isinstance(slot_value, NatLike):
        slot_value = slot_value.value
    if isinstance(slot_value, int):
        if slot_value < 0:
            raise NonNatSlotValue("slot values must be nonnegative")
        return TemplateInstance(template.replace("{n}", str(slot_value)), ())
    if isinstance(slot_value, HyperReal):
        if slot_value.is_limited():
            st = slot_value.st()
            if slot_value.standard_part_only() and st.denominator == 1 and st >= 0:
                return TemplateInstance(template.replace("{n}", str(st.numerator)), ())
            raise NonNatSlotValue(f"slot value {slot_value!r} is not nat-like")
        # unlimited: each slot becomes one subtle position
        marker = "□"  # visible placeholder; the flag list is authoritative
        offsets = []
        out = []
        pos = 0
        cursor = 0
        while True:
            hit = template.find("{n}", cursor)
            if hit < 0:
                out.append(template[cursor:])
                break
            out.append(template[cursor:hit])
            pos += hit - cursor
            offsets.append(pos)
            out.append(marker)
            pos += 1
            cursor = hit + 3
        return TemplateInstance("".join(out), tuple(offsets))
    raise NonNatSlotValue(f"unsupported slot value {slot_value!r}")


# -- serialization -------------------------------------------------------------


def segment_to_json(seg: FrozenSegment, alphabet: Optional[Alphabet] = None) -> str:
    alphabet = alphabet or default_alphabet()
    return json.dumps(
        {
            "index": seg.index,
            "body": seg.decode_body(alphabet),
            "tail": seg.decode_tail(alphabet),
            "subtle": seg.body.subtle_positions(alphabet),
        }
    )


def paradigm_to_jsonl(p: Paradigm, alphabet: Optional[Alphabet] = None) -> str:
    return "\n".join(segment_to_json(s, alphabet) for s in p.segments)


def paradigm_from_jsonl(
    text: str,
    alphabet: Optional[Alphabet] = None,
    tail_template: str = DEFAULT_TAIL_TEMPLATE,
) -> Paradigm:
    alphabet = alphabet or default_alphabet()
    segments = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        segments.append(
            FrozenSegment(
                body=encode_word(rec["body"], alphabet),
                index=rec["index"],
                tail=encode_word(rec["tail"], alphabet),
            )
        )
    return Paradigm(tuple(segments), kind="developmental")
