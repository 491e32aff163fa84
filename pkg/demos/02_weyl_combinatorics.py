"""Weyl group combinatorics: words, Bruhat order, cosets, Hecke moves, and
the parabolic constructions used by the quantum layer."""

from qkline.rootsys import named_datum
from qkline.weyl import (
    WeylGroup,
    bruhat_leq,
    build_P_of_k,
    build_Pk,
    enumerate_wp,
    hecke_down,
    hecke_up,
    in_class_P,
    is_k_free,
    longest_element,
    min_coset_rep,
    schubert_preimage,
)

W = WeylGroup.for_datum(named_datum("A2"))
print("elements of W(A2) by length:")
for w in W.elements():
    print(f"  {w.word_str:>4}  length {w.length}  descents {w.right_descents()}")

w0 = W.longest()
print("\nlongest element:", w0.word_str, "; w0*w0 =", (w0 * w0).word_str)
print("'212' parses to the canonical word", W.parse_word("212").word_str)

u, w = W.parse_word("1"), W.parse_word("21")
print(f"\nBruhat: {u.word_str} <= {w.word_str}?", bruhat_leq(u, w))
print(f"Bruhat: 12 <= 21?", bruhat_leq(W.parse_word("12"), w))

p = {2}
print("\nminimal representatives for P = {2}:", [x.word_str for x in enumerate_wp(W, p)])
print("min rep of 12 mod W_P:", min_coset_rep(W.parse_word("12"), p).word_str)
print("longest element of W_P:", longest_element(W, p).word_str)
print("preimage index of X(1) under the projection:", schubert_preimage(u, p, ()).word_str)

print("\nHecke moves at k=1:")
for word in ("e", "1", "2", "21", "121"):
    x = W.parse_word(word)
    print(f"  {word:>4}: down -> {hecke_down(x, 1).word_str:>4}   up -> {hecke_up(x, 1).word_str:>4}")

print("\nparabolic gates:")
a2 = named_datum("A2")
print("  A2, P={2}, k=1 k-free?", is_k_free(a2, p, 1))
print("  A2, P={}, k=1 k-free?", is_k_free(a2, (), 1))
b2 = named_datum("B2")
print("  B2, P={1}, k=2 admissible?", in_class_P(b2, {1}, 2), " (short root, non-simply-laced component)")
print("  B2, P={2}, k=1 admissible?", in_class_P(b2, {2}, 1), " (long root)")
print("  A2: P_k for P={2}, k=1:", sorted(build_Pk(a2, p, 1)), "; P(k):", sorted(build_P_of_k(a2, p, 1)))
