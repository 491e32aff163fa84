"""The classical engine: Schubert classes in the fixed-point model, the
moment-graph condition, basis expansion, and structure constants."""

from qkline.ktheory import KTEngine
from qkline.repring import format_elt
from qkline.rootsys import named_datum

engine = KTEngine(named_datum("A2"))
W = engine.W
datum = engine.datum

s1 = W.simple(1)
cls = engine.schubert_class(s1)
print("restrictions of the divisor class O^1 on the full flag manifold of A2:")
for w in W.elements():
    print(f"  at {w.word_str:>4}: {format_elt(cls.value(w), datum)}")
print("moment-graph violations:", engine.gkm_violations(cls))

print("\ndiagonal values (products over inversions):")
for w in W.elements():
    print(f"  O^{w.word_str}|_{w.word_str} = {format_elt(engine.diagonal_value(w), datum)}")

print("\nstructure constants of O^1 . O^1:")
for w, c in engine.structure_constants(s1, s1).items_sorted():
    print(f"  c^{w.word_str:>4} = {format_elt(c, datum)}")

print("\nthe same product on the projective-plane quotient (P = {2}):")
for w, c in engine.structure_constants(s1, s1, {2}).items_sorted():
    print(f"  c^{w.word_str:>4} = {format_elt(c, datum)}")

print("\nthe degree-lowering operator sends O^w to O^{w_k}:")
moved = engine.demazure(engine.schubert_class(W.longest()), 1)
print("  D_1 O^{121} equals O^{12}:", moved.restrictions == engine.schubert_class(W.parse_word("12")).restrictions)

exp = engine.structure_constants(s1, W.simple(2))
print("\nsheaf Euler characteristic of O^1 . O^2:",
      format_elt(engine.euler_characteristic(exp), datum))

print("\nopposite classes are defined by the longest-element symmetry:")
opp = engine.opposite_schubert_class(W.identity)
print("  O_e at e:", format_elt(opp.value(W.identity), datum))
