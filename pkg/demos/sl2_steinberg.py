"""Tilting modules of SL_2 in characteristic 3 and the Steinberg lemma.

Run with ``python demos/sl2_steinberg.py``.  Takes a few seconds.
"""

from tensorcert.sl2 import (TiltCategory, certify_envelope_hypothesis_sl2, check_linkage_gap,
                            tilting_character, tilting_decompose, verify_st_strongly_faithful, word_table)

P = 3


def main():
    print("Weyl multiplicities of the first tilting modules at p = 3")
    for i in range(9):
        print(f"  T_{i}: dim {tilting_character(i, P).dim:>2}  Weyl factors {tilting_character(i, P).to_weyl()}")

    print("\nV^(x)n decomposed by idempotents, compared with the character computation")
    for n in range(1, 7):
        dec = tilting_decompose(n, P)
        parts = " + ".join(f"{m}T_{k}" if m > 1 else f"T_{k}" for k, m in sorted(dec.multiplicities.items(),
                                                                                reverse=True))
        print(f"  V^{n} = {parts:<28} routes agree: {dec.agree}")

    print("\nLinkage gaps")
    for j in (1, 2):
        row = check_linkage_gap(P, j)
        print(f"  j={j}: {'ok' if row['ok'] else 'FAILED'}")

    cat = TiltCategory(P)
    rows = word_table(cat, 2, 8, 16)
    nonzero = [(r["m"], r["n"]) for r in rows if r["dim_J_principal"]]
    print(f"\nJ_2 on words of length <= 8 is nonzero only at {nonzero}; "
          f"both descriptions agree: {all(r['agree'] for r in rows)}")

    cert = verify_st_strongly_faithful(P, 2, cat)
    print(f"\nSt_1 strongly faithful in Tilt / J_2: {cert.verdict} ({len(cert.cases)} cases)")
    env = certify_envelope_hypothesis_sl2(P, 2, cat=cat)
    print(f"Envelope hypothesis on the default samples: {env.verdict}")
    for name, sec in zip(("faithfulness", "splitting"), env.sections):
        print(f"  {name}: {sec.verdict}, {len(sec.cases)} cases")


if __name__ == "__main__":
    main()
