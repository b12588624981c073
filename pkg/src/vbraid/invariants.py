"""
Abelianization and the degree-two lower central quotient gamma_2/gamma_3
of finitely presented groups, by exact integer Smith normal form.

Elements of the free class-2 nilpotent group F/gamma_3 F on ``N`` generators
are pairs ``(a, c)``: ``a`` is the abelianized exponent vector and ``c`` the
coordinates on the basic commutators ``[g_i, g_j]`` (``i < j``) in collected
form ``g_1^{a_1} ... g_N^{a_N} prod [g_i, g_j]^{c_ij}``.  Multiplication is

    (a, c)(a', c') = (a + a', c + c' - sum_{i<j} a_j a'_i e_ij).

The quotient of ``gamma_2`` by the normal closure of the relators is
``Z^K / (C + D)``: ``C`` is spanned by the commutators ``[r, g_j]``, which
depend only on the abelianized relator, and ``D`` by the commutator
coordinates of the relator products ``prod r_k^{n_k}`` whose abelianization
vanishes, one for each basis vector ``n`` of the integer left kernel of the
relation matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .presentation import Presentation


class IntMatrix:
    """A rectangular matrix of Python ints."""

    def __init__(self, entries: Iterable[Sequence[int]], cols: int | None = None):
        self.entries = [list(map(int, row)) for row in entries]
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != cols for row in self.entries):
            raise ValueError("matrix rows have different lengths")
        self.cols = cols

    @property
    def rows(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.entries, self.cols)

    def __repr__(self):
        return f"IntMatrix({self.entries!r}, cols={self.cols})"


# Smith normal form ------------------------------------------------------------------


def _echelon(rows: Iterable[Sequence[int]], cols: int) -> list[list[int]]:
    """Row echelon basis of the row lattice, built incrementally with extended gcd."""
    pivots: dict[int, list[int]] = {}
    for row in rows:
        row = list(row)
        for j in range(cols):
            x = row[j]
            if x == 0:
                continue
            piv = pivots.get(j)
            if piv is None:
                if x < 0:
                    row = [-t for t in row]
                pivots[j] = row
                break
            p = piv[j]
            if x % p == 0:
                q = x // p
                row = [s - q * t for s, t in zip(row, piv)]
                continue
            g, s, t = _xgcd(p, x)
            new_piv = [s * a + t * b for a, b in zip(piv, row)]
            row = [(p // g) * b - (x // g) * a for a, b in zip(piv, row)]
            pivots[j] = new_piv
    return [pivots[j] for j in sorted(pivots)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` (positive) and the rank."""
    if not isinstance(m, IntMatrix):
        m = IntMatrix(m)
    a = _echelon(m.entries, m.cols)
    rows, cols = len(a), m.cols
    diag = []
    t = 0
    while t < rows and t < cols:
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag, len(diag)


# finitely generated abelian groups ------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    @classmethod
    def from_relations(cls, rows: Iterable[Sequence[int]], ngens: int) -> "AbelianGroup":
        factors, rank = smith_normal_form(IntMatrix(list(rows), ngens))
        return cls(ngens - rank, tuple(d for d in factors if d != 1))

    @property
    def factors(self) -> list[int]:
        """Invariant factors with ``0`` standing for a free ``Z``."""
        return list(self.torsion) + [0] * self.free_rank

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def format(self, ascii: bool = False) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        if not parts:
            return "0"
        return (" + " if ascii else " ⊕ ").join(parts)

    def __str__(self):
        return self.format()


def relation_matrix(p: Presentation) -> list[list[int]]:
    ng = p.ngens
    rows = []
    for r in p.relators:
        vec = [0] * ng
        for c in r:
            vec[abs(c) - 1] += 1 if c > 0 else -1
        rows.append(vec)
    return rows


def abelianize(p: Presentation) -> AbelianGroup:
    return AbelianGroup.from_relations(relation_matrix(p), p.ngens)


# free class-2 nilpotent arithmetic ------------------------------------------------


class Class2:
    """Collection arithmetic in F_N / gamma_3 F_N."""

    def __init__(self, ngens: int):
        self.n = ngens
        self.pairs = list(combinations(range(ngens), 2))
        self.index = {p: k for k, p in enumerate(self.pairs)}

    @property
    def rank(self) -> int:
        return len(self.pairs)

    def identity(self):
        return [0] * self.n, [0] * self.rank

    def mul(self, x, y):
        a, c = x
        b, d = y
        out = [s + t for s, t in zip(c, d)]
        for k, (i, j) in enumerate(self.pairs):
            out[k] -= a[j] * b[i]
        return [s + t for s, t in zip(a, b)], out

    def inv(self, x):
        a, c = x
        out = [-t for t in c]
        for k, (i, j) in enumerate(self.pairs):
            out[k] -= a[i] * a[j]
        return [-t for t in a], out

    def pow(self, x, e: int):
        if e < 0:
            x, e = self.inv(x), -e
        a, c = x
        tri = e * (e - 1) // 2
        out = [e * t for t in c]
        for k, (i, j) in enumerate(self.pairs):
            out[k] -= tri * a[i] * a[j]
        return [e * t for t in a], out

    def commutator_coords(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        """Commutator of elements with abelian parts ``a`` and ``b``."""
        return [a[i] * b[j] - a[j] * b[i] for i, j in self.pairs]

    def evaluate(self, r: Sequence[int]):
        """Collect a relator given as signed 1-based generator codes."""
        a, c = [0] * self.n, [0] * self.rank
        for code in r:
            k, s = abs(code) - 1, (1 if code > 0 else -1)
            # right-multiply by g_k^s: c_ij -= a_j * s for i = k < j
            for j in range(k + 1, self.n):
                if a[j]:
                    c[self.index[(k, j)]] -= a[j] * s
            a[k] += s
        return a, c


def left_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis of ``{n : n . rows = 0}`` by unimodular row reduction."""
    m = len(rows)
    cols = len(rows[0]) if rows else 0
    aug = [list(rows[i]) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    r = 0
    for j in range(cols):
        while True:
            nz = [i for i in range(r, m) if aug[i][j]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(aug[i][j]))
            aug[r], aug[p] = aug[p], aug[r]
            done = True
            for i in range(r + 1, m):
                if aug[i][j]:
                    q = aug[i][j] // aug[r][j]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[r])]
                    if aug[i][j]:
                        done = False
            if done:
                r += 1
                break
        if r == m:
            break
    return [row[cols:] for row in aug[r:]]


# reports ---------------------------------------------------------------------------


@dataclass
class InvariantReport:
    abelianization: AbelianGroup
    gamma2_over_gamma3: AbelianGroup
    generator_count: int = 0
    relator_count: int = 0

    def to_dict(self) -> dict:
        return {
            "abelianization": self.abelianization.to_dict(),
            "gamma2_over_gamma3": self.gamma2_over_gamma3.to_dict(),
            "generator_count": self.generator_count,
            "relator_count": self.relator_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format(self, ascii: bool = False) -> str:
        g = "gamma2/gamma3" if ascii else "γ₂/γ₃"
        return (
            f"abelianization: {self.abelianization.format(ascii)}\n"
            f"{g}: {self.gamma2_over_gamma3.format(ascii)}"
        )


def gamma2_span(p: Presentation) -> tuple[list[list[int]], int]:
    """Generators of the relator subgroup inside gamma_2 of F/gamma_3, and ``K``."""
    n = p.ngens
    alg = Class2(n)
    images = [alg.evaluate(r) for r in p.relators]
    span = []
    units = [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    for a, _ in images:
        if any(a):
            for e in units:
                span.append(alg.commutator_coords(a, e))
    if images:
        for vec in left_kernel([a for a, _ in images]):
            acc = alg.identity()
            for k, e in enumerate(vec):
                if e:
                    acc = alg.mul(acc, alg.pow(images[k], e))
            assert not any(acc[0])
            span.append(acc[1])
    return span, alg.rank


def class2_quotient(p: Presentation) -> InvariantReport:
    span, rank = gamma2_span(p)
    g2 = AbelianGroup.from_relations(span, rank)
    return InvariantReport(abelianize(p), g2, p.ngens, len(p.relators))


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    witness: str | None = None
    left: str | None = None
    right: str | None = None

    def __str__(self):
        if not self.distinguished:
            return "INCONCLUSIVE"
        return f"DISTINGUISHED({self.witness}: {self.left} vs {self.right})"

    def to_dict(self) -> dict:
        d = {"verdict": "DISTINGUISHED" if self.distinguished else "INCONCLUSIVE"}
        if self.distinguished:
            d.update(witness=self.witness, left=self.left, right=self.right)
        return d


def distinguish(p1: Presentation | InvariantReport, p2: Presentation | InvariantReport) -> Verdict:
    r1 = p1 if isinstance(p1, InvariantReport) else class2_quotient(p1)
    r2 = p2 if isinstance(p2, InvariantReport) else class2_quotient(p2)
    if r1.abelianization != r2.abelianization:
        return Verdict(True, "abelianization", str(r1.abelianization), str(r2.abelianization))
    if r1.gamma2_over_gamma3 != r2.gamma2_over_gamma3:
        return Verdict(True, "gamma2/gamma3", str(r1.gamma2_over_gamma3), str(r2.gamma2_over_gamma3))
    return Verdict(False)
