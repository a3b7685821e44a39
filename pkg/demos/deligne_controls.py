"""Strong faithfulness in Deligne categories, and the counterexample where it fails.

Run with ``python demos/deligne_controls.py``.
"""

from tensorcert.category import KaroubiCategory, restrict_end_unit
from tensorcert.certify import (certify_witnesses, check_faithful, check_gammaXX_splitexact,
                                check_strongly_faithful_homform, check_strongly_faithful_mnform)


def show(label, cert):
    print(f"{label:<58} {cert.verdict}")


def main():
    print("Positive controls at degree bound 4")
    for kind, t in [("brauer", 3), ("brauer", "1/2"), ("walled-brauer", 2), ("walled-brauer", "-7/3")]:
        cat = KaroubiCategory.make(kind, {"kind": "Q"}, t)
        show(f"  {kind} t={t}: generating object strongly faithful",
             check_strongly_faithful_homform(cat, cat.word("+"), max_degree=4))

    print("\nExplicit splitting witnesses and the gamma lemma")
    for t in (1, 3, 5):
        cat = KaroubiCategory.make("brauer", {"kind": "Q"}, t)
        show(f"  O_{t}: witnesses", certify_witnesses(cat, cat.word("+")))
    gl0 = KaroubiCategory.make("walled-brauer", {"kind": "Q"}, 0)
    show("  GL_0: gamma_(V (x) V) split exact", check_gammaXX_splitexact(gl0, gl0.word("+")))

    print("\nRestricting End(1) from Q(sqrt 2) to Q in GL_0")
    big = KaroubiCategory.make("walled-brauer", {"kind": "ext", "minpoly": [1, 0, -2]}, 0)
    r = restrict_end_unit(big)
    v = r.word("+")
    show("  V faithful (degree 4)", check_faithful(r, v, max_degree=4))
    cert = check_strongly_faithful_mnform(r, v, pairs=[(r.unit(), r.unit())])
    show("  V strongly faithful at (M, N) = (1, 1)", cert)
    case = cert.first_failure()
    print(f"    hom dims {case['dims']}, ranks {case['ranks']}, defect {case['defect']}")


if __name__ == "__main__":
    main()
