"""Structural checks at desk scale: the vanishing and sign properties of the
quantum constants, the parabolic comparison identity, the conjectural
equivariant positivity, and the golden-table comparison."""

from qkline.golden import check_golden_fixture
from qkline.ktheory import KTEngine
from qkline.qklines import (
    equivariant_positivity_diagnostic,
    peterson_check,
    sign_check,
    vanishing_check,
)
from qkline.rootsys import named_datum
from qkline.weyl import enumerate_wp

for label in ("A2", "C2"):
    engine = KTEngine(named_datum(label))
    for k in (1, 2):
        rep = vanishing_check(engine, (), k)
        print(rep.to_json())
        rep = sign_check(engine, (), k)
        print(rep.to_json())

print("\nconjectural equivariant positivity (diagnostic only):")
print(equivariant_positivity_diagnostic(KTEngine(named_datum("C2")), (), 2).to_json())

print("\nparabolic comparison on the projective-plane quotient of A2:")
engine = KTEngine(named_datum("A2"))
p = {2}
reps = enumerate_wp(engine.W, p)
results = [
    peterson_check(engine, p, 1, u, v, w) for u in reps for v in reps for w in reps
]
print(f"  {sum(r.passed for r in results)}/{len(results)} triples pass")

print("\ngolden tables:")
for group in ("A2", "C2"):
    res = check_golden_fixture(group)
    print(f"  {group}: {'PASS' if res.passed else 'FAIL'} ({res.rows_checked} rows)")
    for used in res.corrections_used:
        print(f"     documented misprint correction honored: {used}")
