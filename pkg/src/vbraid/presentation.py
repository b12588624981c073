"""
Finitely presented groups: link-group builders, Tietze simplification and
Markov moves on virtual braids.

Relators are stored as tuples of nonzero ints: ``+(k+1)`` is the ``k``-th
generator and ``-(k+1)`` its inverse.  Any abelian structure of the source
group is compiled out into explicit commutator relators.
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .braids import (
    BraidError,
    BraidLetter,
    BraidWord,
    RepKind,
    rep_alphabet,
    rep_image,
    rep_letter,
    rho,
    sigma,
)
from .words import Alphabet, Word, parse_expr, substitute

log = logging.getLogger(__name__)

DEFAULT_TIETZE_BUDGET = 10_000

Relator = tuple[int, ...]


class PresentationError(ValueError):
    pass


class UnsupportedDiagram(PresentationError):
    pass


# relator arithmetic ----------------------------------------------------------------


def free_reduce(r: Iterable[int]) -> Relator:
    out: list[int] = []
    for c in r:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def cyclic_reduce(r: Sequence[int]) -> Relator:
    r = free_reduce(r)
    lo, hi = 0, len(r)
    while hi - lo >= 2 and r[lo] == -r[hi - 1]:
        lo += 1
        hi -= 1
    return tuple(r[lo:hi])


def invert_relator(r: Sequence[int]) -> Relator:
    return tuple(-c for c in reversed(r))


def canonical_relator(r: Sequence[int]) -> Relator:
    """Least rotation of ``r`` or its inverse; equal for relators defining the same normal closure piece."""
    r = cyclic_reduce(r)
    if not r:
        return r
    best = None
    for cand in (r, invert_relator(r)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            key = tuple((abs(c), c < 0) for c in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def exponent_vector(r: Sequence[int], ngens: int) -> list[int]:
    vec = [0] * ngens
    for c in r:
        vec[abs(c) - 1] += 1 if c > 0 else -1
    return vec


# presentations ---------------------------------------------------------------------


@dataclass
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...] = ()
    budget_exhausted: bool = False

    def __post_init__(self):
        self.generators = tuple(self.generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("generator names must be unique")
        ng = len(self.generators)
        rels = []
        for r in self.relators:
            r = free_reduce(r)
            if not r:
                continue
            if any(c == 0 or abs(c) > ng for c in r):
                raise PresentationError("relator refers to an unknown generator")
            rels.append(r)
        self.relators = tuple(rels)

    # construction

    @classmethod
    def from_words(cls, alphabet: Alphabet, words: Iterable[Word], abelian_commutators: bool = True) -> "Presentation":
        """Compile relators over ``F_n * Z^k``; commutators among abelian generators are added first."""
        nfree = len(alphabet.free)
        rels: list[Relator] = []
        if abelian_commutators:
            k = len(alphabet.abelian)
            for i, j in combinations(range(k), 2):
                a, b = nfree + i + 1, nfree + j + 1
                rels.append((-a, -b, a, b))
        for w in words:
            rels.append(word_to_relator(w))
        return cls(alphabet.names, tuple(rels))

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Iterable[str]) -> "Presentation":
        """Relators in the ``x1 x2^-1`` atom syntax, or ``lhs = rhs`` equations in formula syntax."""
        alph = Alphabet(tuple(generators), ())
        rels = []
        for text in relators:
            if "=" in text:
                lhs, rhs = text.split("=", 1)
                w = parse_expr(lhs, alph) * parse_expr(rhs, alph).inverse()
            else:
                w = parse_expr(text, alph)
            rels.append(word_to_relator(w))
        return cls(tuple(generators), tuple(rels))

    # views

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def free_alphabet(self) -> Alphabet:
        return Alphabet(self.generators, ())

    def relator_words(self) -> list[Word]:
        alph = self.free_alphabet()
        return [relator_to_word(r, alph) for r in self.relators]

    def format_relator(self, r: Sequence[int]) -> str:
        return format_relator(r, self.generators)

    def to_dict(self) -> dict:
        d = {"generators": list(self.generators), "relators": [self.format_relator(r) for r in self.relators]}
        if self.budget_exhausted:
            d["budget_exhausted"] = True
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        data = json.loads(text)
        try:
            return cls.parse(data["generators"], data["relators"])
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed presentation JSON: {exc}") from None

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        """Parse ``< a, b | r1, r2 >`` (or with angle brackets ``⟨ ⟩``)."""
        body = text.strip()
        for lo, hi in (("<", ">"), ("⟨", "⟩")):
            if body.startswith(lo) and body.endswith(hi):
                body = body[len(lo) : -len(hi)]
                break
        else:
            raise PresentationError("presentation text must be enclosed in < > or ⟨ ⟩")
        if "|" not in body:
            raise PresentationError("presentation text needs a '|' separator")
        gens, rels = body.split("|", 1)
        names = [g.strip() for g in gens.split(",") if g.strip()]
        return cls.parse(names, [r for r in _split_top(rels) if r.strip()])

    @classmethod
    def load(cls, text: str) -> "Presentation":
        """JSON or ``< | >`` text, whichever ``text`` is."""
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_json(text)
        return cls.from_text(text)

    def to_text(self, ascii: bool = False) -> str:
        lo, hi = ("<", ">") if ascii else ("⟨", "⟩")
        gens = ", ".join(self.generators)
        rels = ", ".join(self.format_relator(r) for r in self.relators)
        return f"{lo} {gens} | {rels} {hi}" if rels else f"{lo} {gens} | {hi}"

    def __str__(self):
        return self.to_text()

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def word_to_relator(w: Word) -> Relator:
    nfree = len(w.alphabet.free)
    out: list[int] = []
    for letter in w.letters():
        code = (nfree + letter.index if letter.abelian else letter.index) + 1
        out.extend([code if letter.exp > 0 else -code] * abs(letter.exp))
    return free_reduce(out)


def relator_to_word(r: Sequence[int], alphabet: Alphabet) -> Word:
    w = alphabet.identity()
    gens = alphabet.gens()
    for c in r:
        g = gens[abs(c) - 1]
        w = w * (g if c > 0 else g.inverse())
    return w


def format_relator(r: Sequence[int], names: Sequence[str]) -> str:
    if not r:
        return "1"
    parts, i = [], 0
    while i < len(r):
        j = i
        while j < len(r) and r[j] == r[i]:
            j += 1
        name, k = names[abs(r[i]) - 1], (j - i) * (1 if r[i] > 0 else -1)
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


# braid builders -----------------------------------------------------------------


def link_group(kind: RepKind, braid: BraidWord) -> Presentation:
    """``< generators | [a, b] for abelian a, b ; g^-1 phi(braid)(g) for every g >``."""
    alph = rep_alphabet(kind, braid.n)
    e = rep_image(kind, braid.n, braid)
    words = [g.inverse() * e.images[k] for k, g in enumerate(alph.gens())]
    return Presentation.from_words(alph, words)


def layered_presentation(braid: BraidWord, kind: RepKind = RepKind.M) -> Presentation:
    """One layer of generators per letter, read from the right end of the word.

    Layer ``k`` carries ``x{k}_{j}``, ``u{k}_{j}``, ``v{k}_{j}``; consecutive
    layers are linked by the image of the letter, and layer ``m+1`` is
    identified with layer 1.  ``v0`` is shared by all layers.
    """
    if kind is not RepKind.M:
        raise PresentationError("layered presentations are defined for the M representation")
    if not braid.letters:
        raise PresentationError("layered presentation needs a nonempty braid")
    n, m = braid.n, len(braid.letters)
    base = rep_alphabet(RepKind.M, n)
    layers = range(1, m + 2)
    free = tuple(f"x{k}_{j}" for k in layers for j in range(1, n + 1))
    abel = (
        tuple(f"u{k}_{j}" for k in layers for j in range(1, n + 1))
        + ("v0",)
        + tuple(f"v{k}_{j}" for k in layers for j in range(1, n + 1))
    )
    alph = Alphabet(free, abel)

    def layer_map(k: int) -> dict[str, Word]:
        images = {"v0": alph.gen("v0")}
        for j in range(1, n + 1):
            for fam in ("x", "u", "v"):
                images[f"{fam}{j}"] = alph.gen(f"{fam}{k}_{j}")
        return images

    words = []
    for k, letter in enumerate(reversed(braid.letters), start=1):
        img = rep_letter(RepKind.M, n, letter)
        here, nxt = layer_map(k), layer_map(k + 1)
        for g in base.names:
            if g == "v0":
                continue
            words.append(nxt[g].inverse() * substitute(img[g], here, alph))
    first, last = layer_map(1), layer_map(m + 1)
    for g in base.names:
        if g != "v0":
            words.append(last[g].inverse() * first[g])
    return Presentation.from_words(alph, words)


# diagrams ---------------------------------------------------------------------------

CROSSING_KINDS = ("positive", "negative", "virtual")


@dataclass
class Crossing:
    kind: str
    a: str
    b: str
    c: str
    d: str | None = None

    def __post_init__(self):
        if self.kind not in CROSSING_KINDS:
            raise PresentationError(f"unknown crossing kind {self.kind!r}")


@dataclass
class Diagram:
    """Arcs with component labels ``1..d`` and crossings with arc roles ``a, b, c, d``.

    ``a`` and ``b`` are the incoming left and right arcs, ``c`` and ``d`` the
    outgoing left and right arcs.  For the Wirtinger builder ``b`` is the
    over-arc, ``a -> c`` the under-strand, and ``d`` may be omitted.
    """

    arcs: tuple[str, ...]
    components: dict[str, int]
    crossings: list[Crossing] = field(default_factory=list)

    def __post_init__(self):
        self.arcs = tuple(self.arcs)
        if len(set(self.arcs)) != len(self.arcs):
            raise PresentationError("arc names must be unique")
        for a in self.arcs:
            if a not in self.components:
                raise PresentationError(f"arc {a} has no component label")
        for a in self.components:
            if a not in self.arcs:
                raise PresentationError(f"component label for unknown arc {a}")
        labels = set(self.components.values())
        if labels and labels != set(range(1, max(labels) + 1)):
            raise PresentationError("component labels must be 1..d without gaps")
        for x in self.crossings:
            for role in (x.a, x.b, x.c, x.d):
                if role is not None and role not in self.components:
                    raise PresentationError(f"crossing refers to unknown arc {role}")

    @property
    def ncomponents(self) -> int:
        return max(self.components.values(), default=0)

    def comp(self, arc: str) -> int:
        return self.components[arc]

    def to_dict(self) -> dict:
        return {
            "arcs": list(self.arcs),
            "components": dict(self.components),
            "crossings": [
                {k: v for k, v in vars(x).items() if v is not None} for x in self.crossings
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Diagram":
        try:
            arcs = tuple(data["arcs"])
            comps = data.get("components")
            if comps is None:
                comps = {a: 1 for a in arcs}
            elif isinstance(comps, list):
                comps = dict(zip(arcs, comps))
            crossings = [Crossing(**x) for x in data.get("crossings", [])]
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed diagram: {exc}") from None
        return cls(arcs, {k: int(v) for k, v in comps.items()}, crossings)

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        return cls.from_dict(json.loads(text))


def virtual_trefoil() -> Diagram:
    """Two positive classical crossings and one virtual crossing on arcs x1..x4."""
    arcs = ("x1", "x2", "x3", "x4")
    return Diagram(
        arcs,
        {a: 1 for a in arcs},
        [Crossing("positive", "x1", "x2", "x3", "x4"), Crossing("positive", "x3", "x4", "x2", "x1")],
    )


def wirtinger(diagram: Diagram) -> Presentation:
    alph = Alphabet(diagram.arcs, ())
    words = []
    for x in diagram.crossings:
        if x.kind == "virtual":
            raise UnsupportedDiagram("the Wirtinger builder does not accept virtual crossings")
        a, b, c = alph.gen(x.a), alph.gen(x.b), alph.gen(x.c)
        if x.kind == "positive":
            words.append(c.inverse() * b.inverse() * a * b)
        else:
            words.append(c.inverse() * a * b * a.inverse())
    return Presentation.from_words(alph, words)


def _check_four_arcs(diagram: Diagram) -> None:
    for x in diagram.crossings:
        if x.d is None:
            raise PresentationError("crossing needs all four arcs for this builder")
        # strands cross over: a continues as d, b continues as c
        if diagram.comp(x.b) != diagram.comp(x.c) or diagram.comp(x.a) != diagram.comp(x.d):
            raise PresentationError(f"inconsistent component labels at crossing {x.a},{x.b},{x.c},{x.d}")


def generalized_alexander(diagram: Diagram, welded: bool = False) -> Presentation:
    """Two relators per classical crossing; virtual crossings contribute nothing.

    Positive: ``a b^{u_i} = c d^{u_j}`` and ``b = c^v``; negative: the same
    first relator and ``d = a^v``, with ``u_i, u_j`` the operators of the
    components of ``b`` and ``d``.  ``welded=True`` drops ``v``.
    """
    _check_four_arcs(diagram)
    d = diagram.ncomponents
    us = tuple(f"u{k}" for k in range(1, d + 1))
    alph = Alphabet(diagram.arcs, us if welded else us + ("v",))
    v = alph.identity() if welded else alph.gen("v")
    words = []
    for x in diagram.crossings:
        if x.kind == "virtual":
            continue
        a, b, c, dd = (alph.gen(t) for t in (x.a, x.b, x.c, x.d))
        ui, uj = alph.gen(f"u{diagram.comp(x.b)}"), alph.gen(f"u{diagram.comp(x.d)}")
        words.append(a * b.conj(ui) * (c * dd.conj(uj)).inverse())
        if x.kind == "positive":
            words.append(b.inverse() * c.conj(v))
        else:
            words.append(dd.inverse() * a.conj(v))
    return Presentation.from_words(alph, words)


def diagram_group_M(diagram: Diagram) -> Presentation:
    """Crossing relators mirroring the M representation, one (u, v) pair per component."""
    _check_four_arcs(diagram)
    nd = diagram.ncomponents
    abel = tuple(f"u{k}" for k in range(1, nd + 1)) + ("v0",) + tuple(f"v{k}" for k in range(1, nd + 1))
    alph = Alphabet(diagram.arcs, abel)
    v0 = alph.gen("v0")
    words = []
    for x in diagram.crossings:
        a, b, c, d = (alph.gen(t) for t in (x.a, x.b, x.c, x.d))
        ca, cb = diagram.comp(x.a), diagram.comp(x.b)
        ua, ub = alph.gen(f"u{ca}"), alph.gen(f"u{cb}")
        va, vb = alph.gen(f"v{ca}"), alph.gen(f"v{cb}")
        if x.kind == "positive":
            c_img = a * b.conj(ua) * a.conj(v0 * ub).inverse()
            d_img = a.conj(v0)
        elif x.kind == "negative":
            c_img = b.conj(v0.inverse())
            d_img = (b.conj(v0.inverse()).inverse() * a * b.conj(ua)).conj(ub.inverse())
        else:
            c_img = b.conj(va.inverse())
            d_img = a.conj(vb)
        words.append(c.inverse() * c_img)
        words.append(d.inverse() * d_img)
    return Presentation.from_words(alph, words)


def closure_diagram(braid: BraidWord) -> Diagram:
    """Diagram of the braid closure with letters read right to left, top to bottom.

    Every crossing cuts both strands, so each crossing has four distinct
    arc roles; components are the cycles of the braid permutation.
    """
    n = braid.n
    counter = iter(range(1, 10**9))
    current = [f"a{next(counter)}" for _ in range(n)]
    top = list(current)
    crossings = []
    arcs = list(current)
    for letter in reversed(braid.letters):
        i = letter.index - 1
        kind = "virtual" if letter.virtual else ("positive" if letter.sign > 0 else "negative")
        c, d = f"a{next(counter)}", f"a{next(counter)}"
        arcs += [c, d]
        crossings.append((kind, current[i], current[i + 1], c, d))
        current[i], current[i + 1] = c, d
    # identify the bottom arcs with the top ones
    rename = dict(zip(current, top))

    def r(a):
        return rename.get(a, a)

    arcs = [a for a in arcs if a not in rename or rename[a] == a]
    arc_set = list(dict.fromkeys(arcs))
    xs = [Crossing(k, r(a), r(b), r(c), r(d)) for k, a, b, c, d in crossings]
    # strand continuity: a -> d and b -> c (the arc at position i moves to i+1 and back)
    parent = {a: a for a in arc_set}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in xs:
        parent[find(x.d)] = find(x.a)
        parent[find(x.c)] = find(x.b)
    roots = []
    for a in arc_set:
        if find(a) not in roots:
            roots.append(find(a))
    comps = {a: roots.index(find(a)) + 1 for a in arc_set}
    return Diagram(tuple(arc_set), comps, xs)


# Tietze simplification -------------------------------------------------------------


def tietze_budget() -> int:
    raw = os.environ.get("VBRAID_TIETZE_BUDGET")
    if raw is None:
        return DEFAULT_TIETZE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise PresentationError(f"VBRAID_TIETZE_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise PresentationError("VBRAID_TIETZE_BUDGET must be nonnegative")
    return value


def _dedupe(rels: Iterable[Relator]) -> list[Relator]:
    seen, out = set(), []
    for r in rels:
        key = canonical_relator(r)
        if key and key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _substitute(r: Relator, g: int, img: Relator) -> Relator:
    inv = invert_relator(img)
    out: list[int] = []
    for c in r:
        if c == g:
            out.extend(img)
        elif c == -g:
            out.extend(inv)
        else:
            out.append(c)
    return free_reduce(out)


def _find_elimination(rels: list[Relator], ngens: int, alive: set[int]):
    counts = [0] * (ngens + 1)
    for r in rels:
        for c in r:
            counts[abs(c)] += 1
    for g in sorted(alive, key=lambda g: (counts[g], g)):
        if counts[g] == 0:
            continue
        best = None
        for idx, r in enumerate(rels):
            occ = sum(1 for c in r if abs(c) == g)
            if occ == 1 and (best is None or len(r) < len(rels[best])):
                best = idx
        if best is not None:
            return g, best
    return None


def tietze_simplify(p: Presentation, budget: int | None = None) -> Presentation:
    """Deterministic Tietze reduction that never changes the group.

    Each pass reduces and deduplicates the relators, then eliminates one
    generator occurring exactly once in some relator, choosing by
    (occurrence count, generator index) and the shortest such relator.
    Every pass costs one unit of ``budget``.
    """
    if budget is None:
        budget = tietze_budget()
    if budget < 0:
        raise PresentationError("budget must be nonnegative")
    ng = p.ngens
    alive = set(range(1, ng + 1))
    rels = _dedupe(p.relators)
    steps, exhausted = 0, False
    while True:
        if steps >= budget:
            exhausted = True
            break
        steps += 1
        found = _find_elimination(rels, ng, alive)
        if found is None:
            break
        g, idx = found
        r = rels[idx]
        pos = next(k for k, c in enumerate(r) if abs(c) == g)
        rot = r[pos:] + r[:pos]
        rest = rot[1:]
        # g^e * rest = 1
        img = invert_relator(rest) if rot[0] > 0 else tuple(rest)
        alive.discard(g)
        rels = _dedupe(_substitute(s, g, img) for k, s in enumerate(rels) if k != idx)
    if exhausted:
        log.warning("Tietze budget of %d steps exhausted; returning partial simplification", budget)
    keep = sorted(alive)
    renum = {g: k + 1 for k, g in enumerate(keep)}
    out = tuple(tuple(renum[abs(c)] * (1 if c > 0 else -1) for c in r) for r in rels)
    return Presentation(tuple(p.generators[g - 1] for g in keep), out, budget_exhausted=exhausted or p.budget_exhausted)


# Markov moves ------------------------------------------------------------------------

MOVE_KINDS = ("VirtConj", "RealConj", "VirtStab", "RealStab", "RightThread", "LeftThread")


@dataclass(frozen=True)
class MarkovMove:
    kind: str
    k: int | None = None
    sign: int | None = None

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise PresentationError(f"unknown Markov move {self.kind!r}")
        if self.kind in ("VirtConj", "RealConj") and self.k is None:
            raise PresentationError(f"{self.kind} needs an index k")
        if self.kind in ("RealStab", "RightThread", "LeftThread") and self.sign not in (1, -1):
            raise PresentationError(f"{self.kind} needs sign +1 or -1")

    @property
    def stabilizing(self) -> bool:
        return self.kind not in ("VirtConj", "RealConj")

    def __str__(self):
        if self.k is not None:
            return f"{self.kind}({self.k})"
        if self.sign is not None:
            return f"{self.kind}({'+' if self.sign > 0 else '-'})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "MarkovMove":
        m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*([+-]|[+-]?\d+)\s*\))?\s*", text)
        if not m or m.group(1) not in MOVE_KINDS:
            raise PresentationError(f"malformed Markov move {text!r}")
        kind, arg = m.group(1), m.group(2)
        if kind in ("VirtConj", "RealConj"):
            if arg is None or arg in "+-":
                raise PresentationError(f"{kind} needs an integer index")
            return cls(kind, k=int(arg))
        if kind == "VirtStab":
            return cls(kind)
        if arg not in ("+", "-", "+1", "-1", "1"):
            raise PresentationError(f"{kind} needs a sign")
        return cls(kind, sign=-1 if arg.startswith("-") else 1)


def all_moves(n: int) -> list[MarkovMove]:
    moves = [MarkovMove("VirtConj", k=k) for k in range(1, n)]
    moves += [MarkovMove("RealConj", k=k) for k in range(1, n)]
    moves.append(MarkovMove("VirtStab"))
    for s in (1, -1):
        moves += [MarkovMove("RealStab", sign=s), MarkovMove("RightThread", sign=s), MarkovMove("LeftThread", sign=s)]
    return moves


def apply_markov(braid: BraidWord, move: MarkovMove) -> BraidWord:
    n, L = braid.n, list(braid.letters)
    if move.kind in ("VirtConj", "RealConj"):
        k = move.k
        if not 1 <= k <= n - 1:
            raise BraidError(f"move index {k} out of range for {n} strands")
        if move.kind == "VirtConj":
            return BraidWord(n, (rho(k), *L, rho(k)))
        return BraidWord(n, (sigma(k), *L, sigma(k, -1)))
    N, s = n + 1, move.sign
    if move.kind == "VirtStab":
        tail = [rho(n)]
    elif move.kind == "RealStab":
        tail = [sigma(n, s)]
    elif move.kind == "RightThread":
        tail = [sigma(n, s), rho(n - 1), sigma(n, -s)]
    else:
        tail = [rho(n), rho(n - 1), sigma(n - 1, -s), rho(n), sigma(n - 1, s), rho(n - 1), rho(n)]
    return BraidWord(N, (*L, *tail))
