"""
Endomorphisms of F_n * Z^k given by generator images.

Maps act on the right: ``compose(first, second)`` sends ``w`` to
``apply(second, apply(first, w))``, so the image of a braid word is the
left-to-right fold of its letters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .words import Alphabet, AlphabetMismatch, Word, format_word, substitute


@dataclass(frozen=True)
class Endomorphism:
    alphabet: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise ValueError("an endomorphism needs exactly one image per generator")
        nfree = len(self.alphabet.free)
        for k, img in enumerate(self.images):
            if img.alphabet != self.alphabet:
                raise AlphabetMismatch("image over a foreign alphabet")
            if k >= nfree and not img.is_abelian():
                raise ValueError(
                    f"image of abelian generator {self.alphabet.names[k]} leaves the abelian subgroup"
                )

    @classmethod
    def from_mapping(cls, alphabet: Alphabet, images: Mapping[str, Word]) -> "Endomorphism":
        """Generators missing from ``images`` are fixed."""
        for name in images:
            alphabet.locate(name)
        return cls(alphabet, tuple(images.get(name, alphabet.gen(name)) for name in alphabet.names))

    def __getitem__(self, name: str) -> Word:
        return self.images[self.alphabet.names.index(name)]

    def as_dict(self) -> dict[str, Word]:
        return dict(zip(self.alphabet.names, self.images))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: "Endomorphism") -> "Endomorphism":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.alphabet == other.alphabet and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def table(self, names: Iterable[str] | None = None) -> list[str]:
        names = list(self.alphabet.names if names is None else names)
        return [f"{g} -> {format_word(self[g])}" for g in names]

    def to_json(self) -> str:
        return json.dumps({g: format_word(w) for g, w in self.as_dict().items()})

    def __str__(self):
        return "\n".join(self.table())


def identity_endo(alphabet: Alphabet) -> Endomorphism:
    return Endomorphism(alphabet, tuple(alphabet.gens()))


def apply(e: Endomorphism, w: Word) -> Word:
    if w.alphabet != e.alphabet:
        raise AlphabetMismatch("word and endomorphism use different alphabets")
    return substitute(w, e.as_dict(), e.alphabet)


def compose(first: Endomorphism, second: Endomorphism) -> Endomorphism:
    if first.alphabet != second.alphabet:
        raise AlphabetMismatch("cannot compose endomorphisms of different groups")
    images = second.as_dict()
    return Endomorphism(
        first.alphabet, tuple(substitute(img, images, first.alphabet) for img in first.images)
    )


def is_identity(e: Endomorphism) -> bool:
    return all(img == g for img, g in zip(e.images, e.alphabet.gens()))


def equals(e: Endomorphism, f: Endomorphism) -> bool:
    return e == f


def first_difference(e: Endomorphism, f: Endomorphism) -> str | None:
    """Name of the first generator on which ``e`` and ``f`` disagree."""
    for name, a, b in zip(e.alphabet.names, e.images, f.images):
        if a != b:
            return name
    return None


def restrict_check_permutation(e: Endomorphism, symbols: Iterable[str]) -> dict[str, str] | None:
    """Return ``{s: e(s)}`` if ``e`` permutes ``symbols`` by single letters, else ``None``."""
    symbols = list(symbols)
    alph = e.alphabet
    table = {}
    for s in symbols:
        img = e[s]
        if len(img.syllables) != 1 or len(img) != 1:
            return None
        letter = next(img.letters())
        if letter.exp != 1:
            return None
        table[s] = alph.name_of(letter.abelian, letter.index)
    if sorted(table.values()) != sorted(symbols):
        return None
    return table
