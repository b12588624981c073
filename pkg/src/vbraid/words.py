"""
Exact elements of the free product F_n * Z^k.

A :class:`Word` is stored in its free-product normal form: an alternating
sequence of *free syllables* (freely reduced letter lists over the free
generators) and *abelian syllables* (sparse exponent vectors over the
abelian generators).  Two words are equal as group elements iff their
syllable sequences are identical, so ``==`` is structural.

Conjugation follows the convention ``a^b = b^-1 a b``.

Text format (round-trippable through :func:`parse_word` and ``str``)::

    x1 x2^-1 u2^3 v0^-1

Atoms are whitespace separated; a free atom with exponent ``k`` expands to
``|k|`` letters.  No conjugation sugar is accepted here; see
:func:`parse_expr` for the richer formula syntax used to transcribe
hand-written images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union


class AlphabetMismatch(ValueError):
    """Raised when words over different alphabets are combined."""


class SignedLetter(NamedTuple):
    abelian: bool
    index: int
    exp: int


class FreeSyllable(tuple):
    """Freely reduced run of free letters, each encoded as ``±(index + 1)``."""

    __slots__ = ()


class AbelianSyllable(tuple):
    """Sorted ``(index, exponent)`` pairs with nonzero exponents."""

    __slots__ = ()


Syllable = Union[FreeSyllable, AbelianSyllable]


@dataclass(frozen=True)
class Alphabet:
    free: tuple[str, ...] = ()
    abelian: tuple[str, ...] = ()
    _lookup: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(self.free))
        object.__setattr__(self, "abelian", tuple(self.abelian))
        lookup = {}
        for i, name in enumerate(self.free):
            lookup[name] = (False, i)
        for i, name in enumerate(self.abelian):
            lookup[name] = (True, i)
        if len(lookup) != len(self.free) + len(self.abelian):
            raise ValueError(f"duplicate generator names in {self.free + self.abelian}")
        object.__setattr__(self, "_lookup", lookup)

    @property
    def names(self) -> tuple[str, ...]:
        return self.free + self.abelian

    def __contains__(self, name: str) -> bool:
        return name in self._lookup

    def __len__(self) -> int:
        return len(self.free) + len(self.abelian)

    def locate(self, name: str) -> tuple[bool, int]:
        try:
            return self._lookup[name]
        except KeyError:
            raise AlphabetMismatch(f"unknown generator {name!r}") from None

    def name_of(self, abelian: bool, index: int) -> str:
        return self.abelian[index] if abelian else self.free[index]

    def gen(self, name: str) -> "Word":
        abelian, i = self.locate(name)
        return Word._from_letters(self, [SignedLetter(abelian, i, 1)])

    def gens(self) -> list["Word"]:
        return [self.gen(name) for name in self.names]

    def identity(self) -> "Word":
        return Word(self, ())

    def __getitem__(self, name: str) -> "Word":
        return self.gen(name)

    def __repr__(self):
        return f"Alphabet(free={list(self.free)}, abelian={list(self.abelian)})"


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def _from_letters(cls, alphabet: Alphabet, letters: Iterable[SignedLetter]) -> "Word":
        return cls(alphabet, _reduce(letters))

    # group structure ------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        _check_same(self, other)
        if not self.syllables:
            return other
        if not other.syllables:
            return self
        return Word._from_letters(self.alphabet, _chain(self.letters(), other.letters()))

    def inverse(self) -> "Word":
        out = []
        for syl in reversed(self.syllables):
            if isinstance(syl, FreeSyllable):
                out.append(FreeSyllable(-c for c in reversed(syl)))
            else:
                out.append(AbelianSyllable((i, -e) for i, e in syl))
        return Word(self.alphabet, tuple(out))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** -k
        result = self.alphabet.identity()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: "Word") -> "Word":
        """Return ``g^-1 self g``."""
        _check_same(self, g)
        return Word._from_letters(
            self.alphabet, _chain(g.inverse().letters(), self.letters(), g.letters())
        )

    def commutator(self, other: "Word") -> "Word":
        """Return ``[self, other] = self^-1 other^-1 self other``."""
        return self.inverse() * other.inverse() * self * other

    # inspection -----------------------------------------------------------

    def letters(self) -> Iterator[SignedLetter]:
        for syl in self.syllables:
            if isinstance(syl, FreeSyllable):
                for c in syl:
                    yield SignedLetter(False, abs(c) - 1, 1 if c > 0 else -1)
            else:
                for i, e in syl:
                    yield SignedLetter(True, i, e)

    def is_identity(self) -> bool:
        return not self.syllables

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        return sum(abs(letter.exp) for letter in self.letters())

    def abelian_part(self) -> dict[int, int]:
        """Exponent sum of each abelian generator (image in Z^k)."""
        total: dict[int, int] = {}
        for syl in self.syllables:
            if isinstance(syl, AbelianSyllable):
                for i, e in syl:
                    total[i] = total.get(i, 0) + e
        return {i: e for i, e in total.items() if e}

    def exponent_sums(self) -> dict[str, int]:
        sums: dict[str, int] = {}
        for letter in self.letters():
            name = self.alphabet.name_of(letter.abelian, letter.index)
            sums[name] = sums.get(name, 0) + letter.exp
        return {k: v for k, v in sums.items() if v}

    def is_single_abelian(self) -> bool:
        return (
            len(self.syllables) == 1
            and isinstance(self.syllables[0], AbelianSyllable)
            and len(self.syllables[0]) == 1
            and self.syllables[0][0][1] == 1
        )

    def is_abelian(self) -> bool:
        return all(isinstance(s, AbelianSyllable) for s in self.syllables)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _chain(*iters):
    for it in iters:
        yield from it


def _check_same(a: Word, b: Word) -> None:
    if a.alphabet is not b.alphabet and a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet!r} vs {b.alphabet!r}")


def _reduce(letters: Iterable[SignedLetter]) -> tuple[Syllable, ...]:
    # Stack of syllables: free ones are lists of ±(i+1), abelian ones dicts.
    stack: list = []
    top = None
    for abelian, i, e in letters:
        if not e:
            continue
        if abelian:
            if type(top) is dict:
                new = top.get(i, 0) + e
                if new:
                    top[i] = new
                else:
                    del top[i]
                    if not top:
                        stack.pop()
                        top = stack[-1] if stack else None
            else:
                top = {i: e}
                stack.append(top)
        else:
            code, reps = (i + 1, e) if e > 0 else (-i - 1, -e)
            for _ in range(reps):
                if type(top) is list:
                    if top[-1] == -code:
                        top.pop()
                        if not top:
                            stack.pop()
                            top = stack[-1] if stack else None
                    else:
                        top.append(code)
                else:
                    top = [code]
                    stack.append(top)
    return tuple(
        FreeSyllable(syl) if type(syl) is list else AbelianSyllable(sorted(syl.items())) for syl in stack
    )


# public functional API ------------------------------------------------------


def normalize(raw: Iterable[SignedLetter | tuple], alphabet: Alphabet) -> Word:
    """Normal form of a raw letter sequence.

    Letters may be :class:`SignedLetter` triples or ``(name, exponent)`` pairs.
    Free letters with ``|exponent| > 1`` are expanded.
    """
    letters = []
    nfree, nab = len(alphabet.free), len(alphabet.abelian)
    for item in raw:
        if type(item) is SignedLetter:
            if not 0 <= item[1] < (nab if item[0] else nfree):
                raise AlphabetMismatch(f"letter {item} outside {alphabet!r}")
            letters.append(item)
        else:
            name, exp = item
            abelian, i = alphabet.locate(name)
            letters.append(SignedLetter(abelian, i, exp))
    return Word._from_letters(alphabet, letters)


def multiply(a: Word, b: Word) -> Word:
    return a * b


def invert(a: Word) -> Word:
    return a.inverse()


def conjugate(a: Word, g: Word) -> Word:
    return a.conj(g)


def substitute(w: Word, images: Mapping[str, Word], target: Alphabet) -> Word:
    """Apply the homomorphism determined by ``images`` (generator name -> Word).

    Images of abelian generators must commute pairwise in ``target``.
    """
    src = w.alphabet
    used_free = set()
    used_abelian = set()
    for letter in w.letters():
        (used_abelian if letter.abelian else used_free).add(letter.index)
    for names, used in ((src.free, used_free), (src.abelian, used_abelian)):
        for i in used:
            if names[i] not in images:
                raise KeyError(f"no image for generator {names[i]!r}")
    for name in list(src.free) + list(src.abelian):
        img = images.get(name)
        if img is not None and img.alphabet != target:
            raise AlphabetMismatch(f"image of {name} is not over the target alphabet")
    _check_abelian_images(src, [images[src.abelian[i]] for i in sorted(used_abelian)])
    letters: list[SignedLetter] = []
    for syl in w.syllables:
        if isinstance(syl, FreeSyllable):
            for c in syl:
                img = images[src.free[abs(c) - 1]]
                letters.extend(img.letters() if c > 0 else img.inverse().letters())
        else:
            for i, e in syl:
                img = images[src.abelian[i]]
                letters.extend(_power_letters(img, e))
    return Word._from_letters(target, letters)


def _power_letters(img: Word, e: int) -> list[SignedLetter]:
    if img.is_abelian():
        return [SignedLetter(True, l.index, l.exp * e) for l in img.letters()]
    base = list((img if e > 0 else img.inverse()).letters())
    return base * abs(e)


def _check_abelian_images(src: Alphabet, imgs: Sequence[Word]) -> None:
    if all(img.is_abelian() for img in imgs):
        return
    for a_i, a in enumerate(imgs):
        for b in imgs[a_i + 1:]:
            if a * b != b * a:
                raise ValueError(
                    f"images {a} and {b} of abelian generators of {src!r} do not commute"
                )


# text formats ----------------------------------------------------------------

_ATOM = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^(-?\d+))?$")


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    parts = []
    alph = w.alphabet
    for syl in w.syllables:
        if isinstance(syl, FreeSyllable):
            run_code, run_len = None, 0
            for c in list(syl) + [None]:
                if c == run_code:
                    run_len += 1
                    continue
                if run_code is not None:
                    name = alph.free[abs(run_code) - 1]
                    exp = run_len if run_code > 0 else -run_len
                    parts.append(name if exp == 1 else f"{name}^{exp}")
                run_code, run_len = c, 1
        else:
            for i, e in syl:
                name = alph.abelian[i]
                parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse the whitespace-separated atom grammar (``1`` or empty is the identity)."""
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _ATOM.match(tok)
        if not m:
            raise ValueError(f"malformed word atom {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        abelian, i = alphabet.locate(name)
        letters.append(SignedLetter(abelian, i, exp))
    return Word._from_letters(alphabet, letters)


_EXPR_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<op>[()^{}\-\[\],]))")


def parse_expr(text: str, alphabet: Alphabet) -> Word:
    """Parse a formula with conjugation, as found in hand-written image tables.

    Grammar::

        expr   := factor*
        factor := primary ('^' exponent)*
        primary:= NAME | '(' expr ')' | '[' expr ',' expr ']' | '1'
        exponent := INT | '{' expr '}' | '-{' expr '}' | '-' NAME

    ``a^{g}`` is ``g^-1 a g`` and ``a^-{g}`` is ``(a^g)^-1``; a bare name
    exponent ``a^g`` is shorthand for ``a^{g}``, and ``[a, b]`` is
    ``a^-1 b^-1 a b``.

    >>> A = Alphabet(("x1", "x2"), ("v",))
    >>> str(parse_expr("x2^{v^-1} x1^-1", A))
    'v x2 v^-1 x1^-1'
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
    p = _ExprParser(toks, alphabet)
    w = p.expr()
    if p.i != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return w


class _ExprParser:
    def __init__(self, toks, alphabet):
        self.toks = toks
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            raise ValueError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        w = self.alphabet.identity()
        while True:
            kind, val = self.peek()
            if kind == "name" or val in ("(", "[") or (kind == "int" and val == "1"):
                w = w * self.factor()
            else:
                return w

    def primary(self):
        kind, val = self.take()
        if kind == "name":
            return self.alphabet.gen(val)
        if kind == "int" and val == "1":
            return self.alphabet.identity()
        if val == "(":
            w = self.expr()
            self.take(")")
            return w
        if val == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return a.commutator(b)
        raise ValueError(f"unexpected token {val!r}")

    def factor(self):
        w = self.primary()
        while self.peek()[1] == "^":
            self.take()
            kind, val = self.peek()
            if kind == "int":
                self.take()
                w = w ** int(val)
            elif val == "{":
                self.take()
                g = self.expr()
                self.take("}")
                w = w.conj(g)
            elif val == "-":
                self.take()
                kind, val = self.peek()
                if val == "{":
                    self.take()
                    g = self.expr()
                    self.take("}")
                elif kind == "name":
                    self.take()
                    g = self.alphabet.gen(val)
                else:
                    raise ValueError("expected '{' or a name after '^-'")
                w = w.conj(g).inverse()
            elif kind == "name":
                self.take()
                w = w.conj(self.alphabet.gen(val))
            else:
                raise ValueError(f"bad exponent {val!r}")
        return w


def conjugate_form(w: Word) -> str:
    """Render ``w`` as a product of abelian conjugates of free letters.

    Every word ``A0 f1 A1 ... fm Am`` equals
    ``f1^{P1^-1} ... fm^{Pm^-1} S`` with ``P_i`` the abelian prefix before
    ``f_i`` and ``S`` the total abelian part; this is the compact notation used
    when printing representation images.
    """
    alph = w.alphabet
    prefix: dict[int, int] = {}
    parts = []
    for letter in w.letters():
        if letter.abelian:
            prefix[letter.index] = prefix.get(letter.index, 0) + letter.exp
            if not prefix[letter.index]:
                del prefix[letter.index]
            continue
        name = alph.free[letter.index]
        conj = " ".join(
            alph.abelian[i] if -e == 1 else f"{alph.abelian[i]}^{-e}"
            for i, e in sorted(prefix.items())
        )
        sign = "" if letter.exp > 0 else "-"
        if conj:
            parts.append(f"{name}^{sign}{{{conj}}}")
        else:
            parts.append(name if letter.exp > 0 else f"{name}^-1")
    for i, e in sorted(prefix.items()):
        parts.append(alph.abelian[i] if e == 1 else f"{alph.abelian[i]}^{e}")
    return " ".join(parts) if parts else "1"
