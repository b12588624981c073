import logging

import pytest

from vbraid.braids import BraidError, RepKind, parse_braid
from vbraid.invariants import abelianize, class2_quotient
from vbraid.presentation import (
    Crossing,
    Diagram,
    MarkovMove,
    Presentation,
    PresentationError,
    UnsupportedDiagram,
    all_moves,
    apply_markov,
    canonical_relator,
    closure_diagram,
    diagram_group_M,
    generalized_alexander,
    layered_presentation,
    link_group,
    tietze_simplify,
    virtual_trefoil,
    wirtinger,
    word_to_relator,
)
from vbraid.words import Alphabet, parse_expr


def rel_set(p):
    return {p.format_relator(r) for r in p.relators}


def has_rel(p, text):
    """Is ``lhs = rhs`` among ``p``'s relators as lhs^-1 rhs or lhs rhs^-1 (u/v names abelian)?"""
    free = tuple(g for g in p.generators if g[0] not in "uv")
    alph = Alphabet(free, p.generators[len(free):])
    lhs, rhs = (parse_expr(t, alph) for t in text.split("="))
    return bool({word_to_relator(lhs.inverse() * rhs), word_to_relator(lhs * rhs.inverse())} & set(p.relators))


def canon(p):
    return {canonical_relator(r) for r in p.relators}


def invariants(p):
    r = class2_quotient(tietze_simplify(p))
    return r.abelianization, r.gamma2_over_gamma3


# braid builders


def test_identity_braid_mtilde():
    p = link_group(RepKind.MTILDE, parse_braid("", 2))
    assert p.generators == ("y1", "y2", "v1", "v2")
    assert rel_set(p) == {"v1^-1 v2^-1 v1 v2"}


def test_m_sigma1_relators():
    p = link_group(RepKind.M, parse_braid("s1", 2))
    for text in ("u1 = u2", "v1 = v2", "x1 = x1 x2^{u1} x1^-{v0 u2}", "x2 = x1^{v0}"):
        assert has_rel(p, text), text


def test_welded_group_has_no_v():
    p = link_group(RepKind.PSI_WELDED, parse_braid("s1 r1", 2))
    assert "v" not in p.generators and "v0" not in p.generators


def test_layered_blocks():
    p = layered_presentation(parse_braid("s1", 2))
    assert has_rel(p, "x2_1 = x1_1 x1_2^{u1_1} x1_1^-{v0 u1_2}")
    q = layered_presentation(parse_braid("r1", 2))
    assert has_rel(q, "x2_1 = x1_2^{v1_1^-1}")
    assert has_rel(q, "x2_1 = x1_1")  # closure identification
    with pytest.raises(PresentationError):
        layered_presentation(parse_braid("", 2))


@pytest.mark.parametrize("word,n", [("s1", 2), ("r1", 2), ("s1 r1", 2), ("s2^-1 r1 s2 r3", 4), ("s1^-1 s2 r1", 3)])
def test_layered_matches_braid_builder(word, n):
    b = parse_braid(word, n)
    assert invariants(layered_presentation(b)) == invariants(link_group(RepKind.M, b))


@pytest.mark.parametrize("word,n", [("s1", 2), ("s1^-1 r1", 2), ("s1 s1 s1", 2), ("s1 r2 s2^-1", 3)])
def test_diagram_builder_matches_braid_builder(word, n):
    b = parse_braid(word, n)
    assert invariants(diagram_group_M(closure_diagram(b))) == invariants(link_group(RepKind.M, b))


def test_closure_diagram_components():
    d = closure_diagram(parse_braid("s1 s1", 2))
    assert d.ncomponents == 2
    assert closure_diagram(parse_braid("s1 r2", 3)).ncomponents == 1


# diagram builders


def trefoil():
    arcs = ("a", "b", "c")
    return Diagram(arcs, {a: 1 for a in arcs}, [
        Crossing("positive", "a", "b", "c"),
        Crossing("positive", "b", "c", "a"),
        Crossing("positive", "c", "a", "b"),
    ])


def hopf():
    return Diagram(("a", "b"), {"a": 1, "b": 2}, [
        Crossing("positive", "a", "b", "a"),
        Crossing("positive", "b", "a", "b"),
    ])


def test_wirtinger_examples():
    assert wirtinger(Diagram(("a",), {"a": 1})).to_text() == "⟨ a | ⟩"
    assert abelianize(wirtinger(trefoil())).free_rank == 1
    assert abelianize(wirtinger(hopf())).free_rank == 2
    neg = Diagram(("a", "b", "c"), {"a": 1, "b": 1, "c": 1}, [Crossing("negative", "a", "b", "c")])
    assert has_rel(wirtinger(neg), "c = a b a^-1")


def test_wirtinger_rejects_virtual_crossings():
    with pytest.raises(UnsupportedDiagram):
        wirtinger(virtual_trefoil().__class__(("a", "b", "c", "d"), {k: 1 for k in "abcd"}, [Crossing("virtual", "a", "b", "c", "d")]))


def test_virtual_trefoil_relators():
    p = generalized_alexander(virtual_trefoil())
    for text in ("x1 x2^{u1} = x3 x4^{u1}", "x2 = x3^{v}", "x3 x4^{u1} = x2 x1^{u1}", "x4 = x2^{v}"):
        assert has_rel(p, text), text
    assert len(p.relators) == 5  # four crossing relators and [u1, v]


def test_welded_flag_deletes_v():
    p = generalized_alexander(virtual_trefoil(), welded=True)
    assert "v" not in p.generators
    assert has_rel(p, "x2 = x3")


@pytest.mark.parametrize("d", [1, 2, 3])
def test_trivial_diagram(d):
    arcs = tuple(f"a{k}" for k in range(1, d + 1))
    diag = Diagram(arcs, {a: k + 1 for k, a in enumerate(arcs)})
    assert abelianize(generalized_alexander(diag, welded=True)).free_rank == 2 * d
    assert abelianize(generalized_alexander(diag)).free_rank == 2 * d + 1
    assert abelianize(diagram_group_M(diag)).free_rank == d + 2 * d + 1


def test_inconsistent_components():
    bad = Diagram(("a", "b", "c", "d"), {"a": 1, "b": 2, "c": 1, "d": 2}, [Crossing("positive", "a", "b", "c", "d")])
    with pytest.raises(PresentationError):
        generalized_alexander(bad)
    with pytest.raises(PresentationError):
        diagram_group_M(bad)


def test_virtual_kink_relator():
    diag = Diagram(("a", "b"), {"a": 1, "b": 1}, [Crossing("virtual", "a", "b", "b", "a")])
    p = diagram_group_M(diag)
    assert has_rel(p, "b = b^{v1^-1}")


def test_diagram_json_round_trip():
    d = virtual_trefoil()
    assert Diagram.from_json(d.to_json()) == d


def test_diagram_validation():
    with pytest.raises(PresentationError):
        Diagram(("a",), {})
    with pytest.raises(PresentationError):
        Diagram(("a",), {"a": 2})
    with pytest.raises(PresentationError):
        Crossing("sideways", "a", "b", "c")


# Tietze


def test_tietze_drops_trivial_generator():
    p = Presentation.parse(["a", "b"], ["b"])
    assert tietze_simplify(p).to_text() == "⟨ a | ⟩"


def test_tietze_virtual_trefoil_reaches_three_generators():
    q = tietze_simplify(generalized_alexander(virtual_trefoil()))
    assert q.ngens == 3 and len(q.relators) == 2
    assert {"x1", "x3", "x4"}.isdisjoint(q.generators)
    h = Presentation.parse(["b", "u", "v"], ["[u, v]", "[b^{v^-1} b^v, b]"])
    assert class2_quotient(q).to_dict() == class2_quotient(h).to_dict()


def test_tietze_is_deterministic():
    p = link_group(RepKind.M, parse_braid("s1 r1 s1", 2))
    assert tietze_simplify(p) == tietze_simplify(p)


def test_tietze_budget(monkeypatch, caplog):
    p = link_group(RepKind.M, parse_braid("s1 s1 s1", 2))
    with caplog.at_level(logging.WARNING):
        q = tietze_simplify(p, budget=1)
    assert q.budget_exhausted and "budget" in caplog.text
    assert invariants(q) == invariants(p)
    monkeypatch.setenv("VBRAID_TIETZE_BUDGET", "0")
    assert tietze_simplify(p).budget_exhausted
    monkeypatch.setenv("VBRAID_TIETZE_BUDGET", "lots")
    with pytest.raises(PresentationError):
        tietze_simplify(p)


def test_presentation_formats():
    p = Presentation.parse(["a", "b"], ["a^2", "a b = b a"])
    assert p.to_text(ascii=True) == "< a, b | a^2, a b a^-1 b^-1 >"
    assert Presentation.load(p.to_json()) == p
    assert Presentation.load(p.to_text()) == p
    assert Presentation.from_text("< a, b | [a, b] >").relators == ((-1, -2, 1, 2),)
    with pytest.raises(PresentationError):
        Presentation(("a", "a"))


# Markov moves


def test_markov_words():
    b = parse_braid("s1", 2)
    assert str(apply_markov(b, MarkovMove("RealStab", sign=1))) == "s1 s2"
    assert apply_markov(b, MarkovMove("RealStab", sign=1)).n == 3
    assert str(apply_markov(parse_braid("", 2), MarkovMove("VirtConj", k=1))) == "r1 r1"
    assert str(apply_markov(b, MarkovMove("RightThread", sign=-1))) == "s1 s2^-1 r1 s2"
    assert str(apply_markov(b, MarkovMove("LeftThread", sign=1))) == "s1 r2 r1 s1^-1 r2 s1 r1 r2"
    with pytest.raises(BraidError):
        apply_markov(b, MarkovMove("RealConj", k=2))


def test_move_parsing():
    assert MarkovMove.parse("RealStab(-)") == MarkovMove("RealStab", sign=-1)
    assert MarkovMove.parse("VirtConj(2)") == MarkovMove("VirtConj", k=2)
    assert MarkovMove.parse("VirtStab") == MarkovMove("VirtStab")
    for bad in ("Twist(1)", "RealConj", "RealStab"):
        with pytest.raises(PresentationError):
            MarkovMove.parse(bad)


def test_all_moves_count():
    assert len(all_moves(3)) == 2 * 2 + 1 + 6


@pytest.mark.parametrize("kind", [RepKind.MTILDE, RepKind.M])
def test_markov_invariance_small(kind):
    b = parse_braid("s1 r1", 2)
    base = invariants(link_group(kind, b))
    for mv in all_moves(2):
        assert invariants(link_group(kind, apply_markov(b, mv))) == base, mv
