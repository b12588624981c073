"""
Virtual braid words and their representations by automorphisms of F_n * Z^k.

Six representations are catalogued (see :class:`RepKind`).  Generator
images are written as formulas in the :func:`~vbraid.words.parse_expr`
syntax with ``$i`` and ``$j`` standing for the strands ``i`` and ``i+1``
touched by the letter; everything not listed is fixed, except that the
abelian families named in ``swaps`` have their ``i``-th and ``(i+1)``-th
members exchanged.
"""

from __future__ import annotations

import enum
import functools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .endo import Endomorphism, compose, first_difference, identity_endo, is_identity
from .words import Alphabet, Word, format_word, parse_expr, substitute


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidLetter:
    """``sigma_i^sign`` (``virtual=False``) or ``rho_i`` (``virtual=True``, sign 1)."""

    index: int
    sign: int = 1
    virtual: bool = False

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise BraidError("letter sign must be +1 or -1")
        if self.virtual and self.sign != 1:
            raise BraidError("rho letters are involutions and carry no sign")

    def inverse(self) -> "BraidLetter":
        return self if self.virtual else BraidLetter(self.index, -self.sign)

    def __str__(self):
        if self.virtual:
            return f"r{self.index}"
        return f"s{self.index}" if self.sign == 1 else f"s{self.index}^-1"


def sigma(i: int, sign: int = 1) -> BraidLetter:
    return BraidLetter(i, sign)


def rho(i: int) -> BraidLetter:
    return BraidLetter(i, 1, True)


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise BraidError("a braid needs at least 2 strands")
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if not 1 <= letter.index <= self.n - 1:
                raise BraidError(f"letter {letter} out of range for {self.n} strands")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        n = max(self.n, other.n)
        return BraidWord(n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(l.inverse() for l in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def with_strands(self, n: int) -> "BraidWord":
        return BraidWord(n, self.letters)

    def is_classical(self) -> bool:
        return not any(l.virtual for l in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Image in S_n: both sigma_i and rho_i map to the transposition (i, i+1).

        Returned as the tuple ``p`` with strand ``k`` (0-based) ending at ``p[k]``.
        """
        at = list(range(self.n))  # at[pos] = strand currently in position pos
        for letter in self.letters:
            i = letter.index - 1
            at[i], at[i + 1] = at[i + 1], at[i]
        end = [0] * self.n
        for pos, strand in enumerate(at):
            end[strand] = pos
        return tuple(end)

    def cycles(self) -> list[tuple[int, ...]]:
        perm = self.permutation()
        seen, out = set(), []
        for start in range(self.n):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = perm[k]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        return format_braid(self)


def format_braid(b: BraidWord) -> str:
    return " ".join(str(l) for l in b.letters)


_BRAID_TOKEN = re.compile(r"\s*(?:(?P<gen>[sr])(?P<idx>\d+)(?:\^(?P<exp>-?\d+))?|(?P<open>\()|(?P<close>\))(?:\^(?P<gexp>-?\d+))?)")


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse ``s2^-1 r1 (s1 r2)^-3``-style braid words on ``n`` strands."""
    stack: list[list[BraidLetter]] = [[]]
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _BRAID_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise BraidError(f"malformed braid token at {text[pos:]!r}")
        pos = m.end()
        if m.group("gen"):
            i = int(m.group("idx"))
            if not 1 <= i <= n - 1:
                raise BraidError(f"index {i} out of range [1, {n - 1}]")
            exp = int(m.group("exp") or 1)
            if m.group("gen") == "r":
                stack[-1].extend([rho(i)] * abs(exp))
            else:
                if exp == 0:
                    continue
                stack[-1].extend([sigma(i, 1 if exp > 0 else -1)] * abs(exp))
        elif m.group("open"):
            stack.append([])
        else:
            if len(stack) == 1:
                raise BraidError("unbalanced ')'")
            group = stack.pop()
            k = int(m.group("gexp") or 1)
            if k < 0:
                group = [l.inverse() for l in reversed(group)]
            stack[-1].extend(group * abs(k))
    if len(stack) != 1:
        raise BraidError("unbalanced '('")
    if n < 2:
        raise BraidError("n must be at least 2")
    return BraidWord(n, tuple(stack[0]))


# representations ------------------------------------------------------------


class RepKind(enum.Enum):
    A = "A"
    SW = "SW"
    BD = "BD"
    M = "M"
    MTILDE = "MTILDE"
    PSI_WELDED = "PSI_WELDED"

    @classmethod
    def parse(cls, name: str) -> "RepKind":
        key = name.strip().upper().replace("-", "_")
        aliases = {"PSI": "PSI_WELDED", "WELDED": "PSI_WELDED", "MT": "MTILDE", "M~": "MTILDE"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise BraidError(f"unknown representation {name!r}") from None


VIRTUAL_KINDS = (RepKind.A, RepKind.SW, RepKind.BD, RepKind.M, RepKind.MTILDE)


@dataclass(frozen=True)
class _Table:
    sigma: dict
    sigma_inv: dict
    rho: dict
    swaps: tuple[str, ...] = ()


_TABLES = {
    RepKind.A: _Table(
        sigma={"x$i": "x$i x$j x$i^-1", "x$j": "x$i"},
        sigma_inv={"x$i": "x$j", "x$j": "x$j^-1 x$i x$j"},
        rho={"x$i": "x$j^{y^-1}", "x$j": "x$i^{y}"},
    ),
    RepKind.SW: _Table(
        sigma={"x$i": "x$i x$j^{u$i} x$i^-{v u$j}", "x$j": "x$i^{v}"},
        sigma_inv={"x$i": "x$j^{v^-1}", "x$j": "(x$j^-{v^-1} x$i x$j^{u$i})^{u$j^-1}"},
        rho={"x$i": "x$j", "x$j": "x$i"},
        swaps=("u",),
    ),
    RepKind.BD: _Table(
        sigma={"x$i": "x$i x$j x$i^-{u}", "x$j": "x$i^{u}"},
        sigma_inv={"x$i": "x$j^{u^-1}", "x$j": "x$j^-{u^-1} x$i x$j"},
        rho={"x$i": "x$j^{v^-1}", "x$j": "x$i^{v}"},
    ),
    RepKind.M: _Table(
        sigma={"x$i": "x$i x$j^{u$i} x$i^-{v0 u$j}", "x$j": "x$i^{v0}"},
        sigma_inv={"x$i": "x$j^{v0^-1}", "x$j": "(x$j^-{v0^-1} x$i x$j^{u$i})^{u$j^-1}"},
        rho={"x$i": "x$j^{v$i^-1}", "x$j": "x$i^{v$j}"},
        swaps=("u", "v"),
    ),
    RepKind.MTILDE: _Table(
        sigma={"y$i": "y$i y$j y$i^-1", "y$j": "y$i"},
        sigma_inv={"y$i": "y$j", "y$j": "y$j^-1 y$i y$j"},
        rho={"y$i": "y$j^{v$i^-1}", "y$j": "y$i^{v$j}"},
        swaps=("v",),
    ),
    # v specialised to 1: the only reading under which the forbidden relation F1 holds
    RepKind.PSI_WELDED: _Table(
        sigma={"x$i": "x$i x$j^{u$i} x$i^-{u$j}", "x$j": "x$i"},
        sigma_inv={"x$i": "x$j", "x$j": "(x$j^-1 x$i x$j^{u$i})^{u$j^-1}"},
        rho={"x$i": "x$j", "x$j": "x$i"},
        swaps=("u",),
    ),
}


@functools.lru_cache(maxsize=None)
def rep_alphabet(kind: RepKind, n: int) -> Alphabet:
    r = range(1, n + 1)
    xs = tuple(f"x{k}" for k in r)
    us = tuple(f"u{k}" for k in r)
    if kind is RepKind.A:
        return Alphabet(xs, ("y",))
    if kind is RepKind.SW:
        return Alphabet(xs, ("v",) + us)
    if kind is RepKind.BD:
        return Alphabet(xs, ("v", "u"))
    if kind is RepKind.M:
        return Alphabet(xs, us + tuple(f"v{k}" for k in range(n + 1)))
    if kind is RepKind.MTILDE:
        return Alphabet(tuple(f"y{k}" for k in r), tuple(f"v{k}" for k in r))
    if kind is RepKind.PSI_WELDED:
        return Alphabet(xs, us)
    raise BraidError(kind)


def _fill(template: str, i: int) -> str:
    return template.replace("$i", str(i)).replace("$j", str(i + 1))


def table_endomorphism(alphabet: Alphabet, table: dict, swaps: Sequence[str], i: int) -> Endomorphism:
    images = {_fill(k, i): parse_expr(_fill(v, i), alphabet) for k, v in table.items()}
    for fam in swaps:
        a, b = f"{fam}{i}", f"{fam}{i + 1}"
        images[a], images[b] = alphabet.gen(b), alphabet.gen(a)
    return Endomorphism.from_mapping(alphabet, images)


@functools.lru_cache(maxsize=None)
def rep_letter(kind: RepKind, n: int, letter: BraidLetter) -> Endomorphism:
    if not 1 <= letter.index <= n - 1:
        raise BraidError(f"letter {letter} out of range for {n} strands")
    t = _TABLES[kind]
    if letter.virtual:
        table = t.rho
    else:
        table = t.sigma if letter.sign == 1 else t.sigma_inv
    return table_endomorphism(rep_alphabet(kind, n), table, t.swaps, letter.index)


def rep_image(kind: RepKind, n: int, braid: BraidWord) -> Endomorphism:
    if braid.n > n:
        raise BraidError(f"braid on {braid.n} strands does not fit in {n}")
    e = identity_endo(rep_alphabet(kind, n))
    for letter in braid.letters:
        e = compose(e, rep_letter(kind, n, letter))
    return e


# relation verification --------------------------------------------------------


@dataclass
class RelationCheck:
    family: str
    indices: tuple[int, ...]
    lhs: BraidWord
    rhs: BraidWord
    passed: bool
    witness: str | None = None
    lhs_image: str | None = None
    rhs_image: str | None = None

    def to_dict(self) -> dict:
        return {
            "relation_family": self.family,
            "instance_indices": list(self.indices),
            "pass": self.passed,
            "witness_generator": self.witness,
            "lhs_image": self.lhs_image,
            "rhs_image": self.rhs_image,
        }


DEFINING_FAMILIES = (
    "inverse", "braid-long", "braid-far", "rho-square", "rho-far", "rho-long", "mixed-far", "mixed-long",
)


@dataclass
class RelationReport:
    kind: RepKind
    n: int
    checks: list[RelationCheck] = field(default_factory=list)

    def family(self, name: str) -> list[RelationCheck]:
        return [c for c in self.checks if c.family == name]

    def holds(self, name: str) -> bool | None:
        """``None`` when the family has no instances for this ``n``."""
        checks = self.family(name)
        return all(c.passed for c in checks) if checks else None

    @property
    def defining_ok(self) -> bool:
        families = DEFINING_FAMILIES + (("F1",) if self.kind is RepKind.PSI_WELDED else ())
        return all(c.passed for c in self.checks if c.family in families)

    @property
    def forbidden_ok(self) -> bool:
        f1, f2 = self.holds("F1"), self.holds("F2")
        f1_expected = self.kind is RepKind.PSI_WELDED
        return (f1 is None or f1 == f1_expected) and (f2 is None or f2 is False)

    @property
    def ok(self) -> bool:
        return self.defining_ok and self.forbidden_ok

    def summary(self) -> dict:
        fams = {}
        for c in self.checks:
            ent = fams.setdefault(c.family, [0, 0])
            ent[0 if c.passed else 1] += 1
        return {k: {"pass": v[0], "fail": v[1]} for k, v in fams.items()}

    def to_dict(self) -> dict:
        def verdict(name):
            h = self.holds(name)
            return "n/a" if h is None else ("holds" if h else "fails")

        return {
            "kind": self.kind.value,
            "n": self.n,
            "ok": self.ok,
            "F1": verdict("F1"),
            "F2": verdict("F2"),
            "checks": [c.to_dict() for c in self.checks],
        }


def relation_instances(n: int) -> list[tuple[str, tuple[int, ...], list[BraidLetter], list[BraidLetter]]]:
    s, r = sigma, rho
    out = []
    for i in range(1, n):
        out.append(("inverse", (i,), [s(i), s(i, -1)], []))
        out.append(("inverse", (i,), [s(i, -1), s(i)], []))
        out.append(("rho-square", (i,), [r(i), r(i)], []))
    for i in range(1, n - 1):
        out.append(("braid-long", (i,), [s(i), s(i + 1), s(i)], [s(i + 1), s(i), s(i + 1)]))
        out.append(("rho-long", (i,), [r(i), r(i + 1), r(i)], [r(i + 1), r(i), r(i + 1)]))
        out.append(("mixed-long", (i,), [r(i), r(i + 1), s(i)], [s(i + 1), r(i), r(i + 1)]))
        out.append(("F1", (i,), [r(i), s(i + 1), s(i)], [s(i + 1), s(i), r(i + 1)]))
        out.append(("F2", (i,), [r(i + 1), s(i), s(i + 1)], [s(i), s(i + 1), r(i)]))
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) < 2:
                continue
            if i < j:
                out.append(("braid-far", (i, j), [s(i), s(j)], [s(j), s(i)]))
                out.append(("rho-far", (i, j), [r(i), r(j)], [r(j), r(i)]))
            out.append(("mixed-far", (i, j), [s(i), r(j)], [r(j), s(i)]))
    return out


def verify_relations(kind: RepKind, n: int) -> RelationReport:
    report = RelationReport(kind, n)
    for family, idx, lhs, rhs in relation_instances(n):
        lb, rb = BraidWord(n, tuple(lhs)), BraidWord(n, tuple(rhs))
        le, re_ = rep_image(kind, n, lb), rep_image(kind, n, rb)
        g = first_difference(le, re_)
        check = RelationCheck(family, idx, lb, rb, g is None)
        if g is not None:
            check.witness = g
            check.lhs_image = format_word(le[g])
            check.rhs_image = format_word(re_[g])
        report.checks.append(check)
    return report


# virtual pure braid generators and closed forms ----------------------------


def vp_generator(n: int, i: int, j: int) -> BraidWord:
    """The word for lambda_{ij} in VB_n."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise BraidError(f"lambda_({i},{j}) undefined for n={n}")
    lo, hi = min(i, j), max(i, j)
    core = [rho(lo), sigma(lo, -1)] if i < j else [sigma(lo, -1), rho(lo)]
    outer = [rho(k) for k in range(hi - 1, lo, -1)]
    return BraidWord(n, tuple(outer + core + outer[::-1]))


def _vprod(ks: Iterable[int], sign: int) -> str:
    return " ".join(f"v{k}" if sign > 0 else f"v{k}^-1" for k in ks)


def lambda_closed_form(n: int, i: int, j: int) -> dict[str, Word]:
    """Reference closed forms for the generator images of phi_M(lambda_ij)."""
    alph = rep_alphabet(RepKind.M, n)
    if i < j:
        if j == i + 1:
            forms = {
                f"x{i}": f"(x{j}^-1 x{i} x{j}^{{u{j}}})^{{u{i}^-1 v{j}^-1}}",
                f"x{j}": f"x{j}^{{v{i}}}",
            }
        else:
            mid = _vprod(range(i + 1, j), -1)
            forms = {
                f"x{i}": f"(x{j}^-{{{mid}}} x{i} x{j}^-{{{mid} u{j}}})^{{u{i}^-1 v{j}^-1}}",
                f"x{j}": f"x{j}^{{v{i}}}",
            }
    else:
        i, j = j, i
        if j == i + 1:
            forms = {
                f"x{i}": f"x{i}^{{v{j}}}",
                f"x{j}": f"(x{i}^-{{v{j}}} x{j}^{{v{i}^-1}} x{i}^{{v{j} u{i}}})^{{u{j}^-1}}",
            }
        else:
            down = _vprod(range(i, j), -1)
            up = _vprod(range(i + 1, j), 1)
            forms = {
                f"x{i}": f"x{i}^{{v{j}}}",
                f"x{j}": f"(x{i}^-{{v{j}}} x{j}^{{{down}}} x{i}^{{v{j} u{i}}})^{{u{j}^-1 {up}}}",
            }
    return {g: parse_expr(f, alph) for g, f in forms.items()}


@dataclass
class LambdaEntry:
    i: int
    j: int
    generator: str
    computed: Word
    printed: Word

    @property
    def adjacent(self) -> bool:
        return abs(self.i - self.j) == 1

    @property
    def match(self) -> bool:
        return self.computed == self.printed

    @property
    def reconciled(self) -> Word:
        """The computed image with ``v0 -> 1`` and ``u_i <-> u_j``."""
        return lambda_relabel(self.computed.alphabet, self.i, self.j)(self.computed)

    @property
    def match_after_relabel(self) -> bool:
        return self.reconciled == self.printed


def lambda_relabel(alphabet: Alphabet, i: int, j: int) -> Endomorphism:
    return Endomorphism.from_mapping(
        alphabet,
        {"v0": alphabet.identity(), f"u{i}": alphabet.gen(f"u{j}"), f"u{j}": alphabet.gen(f"u{i}")},
    )


def check_lambda_forms(n: int) -> list[LambdaEntry]:
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            e = rep_image(RepKind.M, n, vp_generator(n, i, j))
            for g, printed in lambda_closed_form(n, i, j).items():
                out.append(LambdaEntry(i, j, g, e[g], printed))
    return out


# specialisation squares -----------------------------------------------------------


@functools.lru_cache(maxsize=None)
def basis_alphabet(n: int) -> Alphabet:
    r = range(1, n + 1)
    return Alphabet(
        tuple(f"y{k}" for k in r),
        tuple(f"u{k}" for k in r) + ("v0",) + tuple(f"w{k}" for k in r),
    )


def basis_letter(n: int, letter: BraidLetter) -> Endomorphism:
    """The MTILDE table on (y, w) together with the u-permutation, v0 fixed."""
    t = _TABLES[RepKind.MTILDE]
    table = t.rho if letter.virtual else (t.sigma if letter.sign == 1 else t.sigma_inv)
    table = {k: v.replace("v$", "w$") for k, v in table.items()}
    return table_endomorphism(basis_alphabet(n), table, ("u", "w"), letter.index)


@dataclass
class Specialization:
    """A homomorphism ``pi`` intertwining the source and target representations."""

    name: str
    source: Alphabet
    target: Alphabet
    pi: dict[str, Word]
    source_letter: object
    target_letter: object


def _conj_power(w: Word, g: Word, k: int) -> Word:
    return w.conj(g ** k)


def specializations(n: int) -> list[Specialization]:
    sw, a = rep_alphabet(RepKind.SW, n), rep_alphabet(RepKind.A, n)
    m, bd = rep_alphabet(RepKind.M, n), rep_alphabet(RepKind.BD, n)
    y = a.gen("y")
    sw_to_a = {f"x{k}": _conj_power(a.gen(f"x{k}"), y, -(k - 1)) for k in range(1, n + 1)}
    sw_to_a.update({f"u{k}": y for k in range(1, n + 1)})
    sw_to_a["v"] = y.inverse()

    v = sw.gen("v")
    m_to_sw = {f"x{k}": _conj_power(sw.gen(f"x{k}"), v, k - 1) for k in range(1, n + 1)}
    m_to_sw.update({f"u{k}": sw.gen(f"u{k}") * v.inverse() for k in range(1, n + 1)})
    m_to_sw.update({f"v{k}": v for k in range(1, n + 1)})
    m_to_sw["v0"] = v * v

    m_to_bd = {f"x{k}": bd.gen(f"x{k}") for k in range(1, n + 1)}
    m_to_bd.update({f"u{k}": bd.identity() for k in range(1, n + 1)})
    m_to_bd.update({f"v{k}": bd.gen("v") for k in range(1, n + 1)})
    m_to_bd["v0"] = bd.gen("u")

    lem = basis_alphabet(n)
    v0 = m.gen("v0")
    theta = {}
    for k in range(1, n + 1):
        core = m.gen(f"x{k}") * m.gen(f"u{k}").inverse() * v0.inverse()
        theta[f"y{k}"] = _conj_power(core, v0, -(k - 1))
        theta[f"w{k}"] = m.gen(f"v{k}") * v0.inverse()
        theta[f"u{k}"] = m.gen(f"u{k}")
    theta["v0"] = v0

    def rep(kind):
        return lambda letter: rep_letter(kind, n, letter)

    return [
        Specialization("SW->A", sw, a, sw_to_a, rep(RepKind.SW), rep(RepKind.A)),
        Specialization("M->SW", m, sw, m_to_sw, rep(RepKind.M), rep(RepKind.SW)),
        Specialization("M->BD", m, bd, m_to_bd, rep(RepKind.M), rep(RepKind.BD)),
        Specialization("basis", lem, m, theta, lambda l: basis_letter(n, l), rep(RepKind.M)),
    ]


@dataclass
class SquareCheck:
    square: str
    letter: BraidLetter
    generator: str
    passed: bool


def check_specializations(n: int) -> list[SquareCheck]:
    """Check ``pi(src(g)(s)) == tgt(g)(pi(s))`` for every letter ``g`` and source generator ``s``."""
    letters = [l for i in range(1, n) for l in (sigma(i), sigma(i, -1), rho(i))]
    out = []
    for sp in specializations(n):
        for letter in letters:
            src = sp.source_letter(letter)
            tgt = sp.target_letter(letter).as_dict()
            for s in sp.source.names:
                lhs = substitute(src[s], sp.pi, sp.target)
                rhs = substitute(sp.pi[s], tgt, sp.target)
                out.append(SquareCheck(sp.name, letter, s, lhs == rhs))
    return out


# reporting helpers ----------------------------------------------------------------


def image_table(kind: RepKind, n: int, braid: BraidWord) -> dict[str, str]:
    e = rep_image(kind, n, braid)
    return {g: format_word(w) for g, w in e.as_dict().items()}


def report_json(report: RelationReport) -> str:
    return json.dumps(report.to_dict(), indent=2)
