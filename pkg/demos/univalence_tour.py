"""Which small categories are univalent, and what the Rezk completion does to the rest.

    python3 demos/univalence_tour.py
"""
from catkit import classify, is_isomorphism_of_precats, is_univalent, is_weak_equivalence, rezk_completion
from catkit.fixtures import named_fixtures

for name, C in named_fixtures(include_rezk=False).items():
    rep = is_univalent(C)
    cl = classify(C)
    print(f"{name:14s} objects={C.n} univalent={rep.is_univalent!s:5s} gaunt={cl.gaunt!s:5s} strict={cl.strict}")
    if not rep.is_univalent:
        print(f"{'':14s} idtoiso fails on {rep.failing_pairs}")
    Chat, unit = rezk_completion(C)
    print(f"{'':14s} completion univalent={is_univalent(Chat).is_univalent}, "
          f"unit weak equivalence={is_weak_equivalence(unit).ok}, "
          f"unit isomorphism={is_isomorphism_of_precats(unit).ok}")
