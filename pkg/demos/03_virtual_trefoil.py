"""
The virtual trefoil and the class-2 quotient
============================================
"""

# %%
from pathlib import Path

from vbraid.invariants import class2_quotient, distinguish
from vbraid.presentation import Diagram, Presentation, generalized_alexander, tietze_simplify

data = Path(__file__).parent / "data"
diagram = Diagram.from_json((data / "virtual_trefoil.json").read_text())
raw = generalized_alexander(diagram)
print(f"raw: {raw.ngens} generators, {len(raw.relators)} relators")

small = tietze_simplify(raw)
print(small.to_text())
print(class2_quotient(small).format())

# %%
# two groups with the same abelianization, told apart one step further down
H = Presentation.load((data / "H.txt").read_text())
G = Presentation.load((data / "G.txt").read_text())
for name, p in (("H", H), ("G", G)):
    print(name, class2_quotient(p).format().replace("\n", "; "))
print(distinguish(H, G))

# %%
# the classical trefoil looks like the unknot at this depth
from vbraid.presentation import Crossing, wirtinger

trefoil = Diagram(("a", "b", "c"), {k: 1 for k in "abc"}, [
    Crossing("positive", "a", "b", "c"),
    Crossing("positive", "b", "c", "a"),
    Crossing("positive", "c", "a", "b"),
])
print(distinguish(wirtinger(trefoil), Presentation(("a",))))
