import random

import numpy as np
import pytest

from tensorcert import diagrams as dg
from tensorcert.certify import PreconditionError, check_strongly_faithful_homform
from tensorcert.diagrams import Caps, ResourceError
from tensorcert.homspace import InconsistencyError
from tensorcert.sl2 import (JIdeal, TiltCategory, TLDictionary, certify_envelope_hypothesis_sl2,
                            check_tilting_char_necessary, default_samples, dot_orbit, linkage_orbit,
                            rho, simple_character, tilting_character, tilting_decompose, tl_category,
                            verify_st_strongly_faithful, weyl_character, word_table)
from tensorcert.sl2 import modules as md
from tensorcert.sl2.characters import Character, tilting_decomposition_of_character
from tensorcert.sl2.decompose import idempotent_character, power_character
from tensorcert.sl2.jideal import direct_principal_dim
from tensorcert.sl2.tl import rho_morlin


@pytest.fixture(scope="module")
def tilt3():
    return TiltCategory(3)


# -- characters -----------------------------------------------------------------------

@pytest.mark.parametrize("n,d", [(0, 1), (1, 2), (4, 5)])
def test_weyl_dims(n, d):
    assert weyl_character(n).dim == d


def test_simple_character_examples():
    assert simple_character(2, 3) == weyl_character(2)
    assert simple_character(4, 3).dim == 4
    for p in (3, 5, 7):
        assert simple_character(p - 1, p) == weyl_character(p - 1)


def test_weyl_basis_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        coeffs = {n: rng.randint(0, 3) for n in rng.sample(range(12), 4)}
        coeffs = {n: a for n, a in coeffs.items() if a}
        assert Character.from_weyl(coeffs).to_weyl() == dict(sorted(coeffs.items()))


def test_tilting_character_examples():
    assert tilting_character(3, 3).to_weyl() == {1: 1, 3: 1}
    assert tilting_character(2, 3) == weyl_character(2)
    # Steinberg modules are simple, Weyl and tilting at once
    for p, j in [(3, 1), (3, 2), (5, 1)]:
        st = p ** j - 1
        assert tilting_character(st, p) == simple_character(st, p) == weyl_character(st)


def _composition_factors(n, p):
    """[Delta_n : L_m] by greedy subtraction of simple characters."""
    rest = weyl_character(n)
    out = {}
    while rest.mult:
        top = rest.highest()
        a = rest.mult[top]
        out[top] = a
        rest = rest - simple_character(top, p).scale(a)
    return out


def _blocks_from_weyl_modules(p, top):
    parent = list(range(top + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for n in range(top + 1):
        for m in _composition_factors(n, p):
            parent[find(m)] = find(n)
    return find


@pytest.mark.parametrize("p", [3, 5])
def test_linkage_orbit_matches_weyl_module_blocks(p):
    bound = 4 * p * p
    find = _blocks_from_weyl_modules(p, 3 * bound)
    for a in range(bound + 1):
        want = {mu for mu in range(bound + 1) if find(mu) == find(a)}
        assert linkage_orbit(a, p, bound) == want, a


def test_linkage_examples():
    orb = linkage_orbit(2, 3, 30)
    assert 2 in orb and not any(2 < mu < 14 for mu in orb)
    assert {0, 4} <= linkage_orbit(0, 3, 10)
    for p in (3, 5, 7):
        assert linkage_orbit(p - 1, p, p) == {p - 1}


def test_dot_orbit_is_coarser():
    # the plain dot orbit of 2 at p = 3 also contains 8, which the block does not
    assert 8 in dot_orbit(2, 3, 30) and 8 not in linkage_orbit(2, 3, 30)
    for a in range(30):
        assert linkage_orbit(a, 3, 60) <= dot_orbit(a, 3, 60)


@pytest.mark.parametrize("i,r,p", [(8, 2, 3), (0, 2, 3), (4, 2, 3), (0, 1, 5), (24, 2, 5)])
def test_tilting_char_necessary(i, r, p):
    assert check_tilting_char_necessary(i, r, p).verdict == "certified"


def test_greedy_route_detects_non_tilting():
    # the simple module L_4 at p = 3 has dimension 4 and is not tilting
    dec = tilting_decomposition_of_character(simple_character(4, 3), 3)
    assert any(m < 0 for m in dec.values())


# -- the tilting category -------------------------------------------------------------

def weyl_pairing(a, b, p):
    wa, wb = tilting_character(a, p).to_weyl(), tilting_character(b, p).to_weyl()
    return sum(m * wb.get(k, 0) for k, m in wa.items())


@pytest.mark.parametrize("p", [3, 5])
def test_atom_characters_and_hom_dims(p):
    cat = TiltCategory(p)
    top = 12 if p == 3 else 10
    for i in range(top + 1):
        atom = cat.data.atom(i)
        assert atom.module.character() == tilting_character(i, p)
    for a in range(top + 1):
        for b in range(top + 1):
            assert cat.data.atom_hom(a, b).dim == weyl_pairing(a, b, p), (a, b)


def test_word_hom_dims_are_catalan(tilt3):
    for m in range(5):
        for n in range(5):
            want = dg.catalan((m + n) // 2) if (m + n) % 2 == 0 else 0
            assert tilt3.hom((1,) * m, (1,) * n).dim == want


@pytest.mark.parametrize("x", [(1,), (2,), (1, 2), (3,), (4,)])
def test_rigidity_and_symmetry(tilt3, x):
    c = tilt3
    xd = c.dual_obj(x)
    s1 = c.composes(c.tensor(c.identity(x), c.ev(x)), c.tensor(c.co(x), c.identity(x)))
    s2 = c.composes(c.tensor(c.ev(x), c.identity(xd)), c.tensor(c.identity(xd), c.co(x)))
    assert c.equal(s1, c.identity(x)) and c.equal(s2, c.identity(xd))
    sigma = c.braid(x, x)
    assert c.equal(c.compose(sigma, sigma), c.identity(c.tensor_obj(x, x)))
    assert c.check_in_hom(c.ev(x)) and c.check_in_hom(sigma)


def test_dimensions_mod_p(tilt3):
    for i in range(9):
        assert tilt3.dim((i,)) == tilt3.field(tilting_character(i, 3).dim)


def test_bad_labels(tilt3):
    from tensorcert.category import CategoryError
    with pytest.raises(CategoryError):
        tilt3.obj(-1)


# -- decompositions -----------------------------------------------------------------

def test_decompose_small_examples():
    assert tilting_decompose(1, 3).multiplicities == {1: 1}
    assert tilting_decompose(2, 3).multiplicities == {2: 1, 0: 1}
    assert tilting_decompose(3, 3).multiplicities == {3: 1, 1: 1}


@pytest.mark.parametrize("p", [5, 7])
def test_decompose_routes_agree(p):
    for n in range(7):
        dec = tilting_decompose(n, p)
        assert dec.agree
        assert sum(m * tilting_character(k, p).dim for k, m in dec.multiplicities.items()) \
            == 2 ** n


def test_decompose_cap():
    with pytest.raises(ResourceError):
        tilting_decompose(9, 3, caps=Caps(max_points=16))


def test_steinberg_idempotent_character(tilt3):
    parts = tilt3.data.decomposition((1,) * 8)
    k = next(i for i, (lab, _, _) in enumerate(parts) if lab == 8)
    assert idempotent_character(tilt3.data, 8, k) == weyl_character(8)
    assert power_character(8).dim == 256


# -- the Temperley-Lieb dictionary ---------------------------------------------------

def test_rho_is_a_functor():
    p = 3
    fl = tl_category(p).flavor
    rng = random.Random(0)
    for _ in range(30):
        a, b, c = (rng.choice([1, 3]) for _ in range(3))
        f = dg.MorLin.from_diagram(fl, rng.choice(dg.enumerate_diagrams(("+",) * a, ("+",) * b,
                                                                        "temperley-lieb")))
        g = dg.MorLin.from_diagram(fl, rng.choice(dg.enumerate_diagrams(("+",) * b, ("+",) * c,
                                                                        "temperley-lieb")))
        assert np.array_equal(rho_morlin(dg.compose(g, f), p), md.mm(rho_morlin(g, p), rho_morlin(f, p), p))
        assert np.array_equal(rho_morlin(dg.tensor(f, g), p), md.kron(rho_morlin(f, p), rho_morlin(g, p), p))


def test_rho_loop_value():
    p = 5
    fl = tl_category(p).flavor
    cap, cup = dg.evaluation(fl, "+"), dg.coevaluation(fl, "+")
    (d_cap,), (d_cup,) = cap.terms, cup.terms
    loop = md.mm(rho(d_cap, p), rho(d_cup, p), p)
    assert int(loop[0, 0]) == p - 2


def test_dictionary_rewrites_idempotents(tilt3):
    p = 3
    cat = tl_category(p)
    d4 = TLDictionary(p, 4, 4)
    traces = []
    for lab, i, q in tilt3.data.decomposition((1, 1, 1, 1)):
        e = md.mm(i, q, p)
        assert np.array_equal(d4.reconstruct(d4.coordinates(e)), e)
        ke = cat.from_morlin(d4.to_morlin(e, cat.flavor))
        assert cat.equal(cat.compose(ke, ke), ke)
        traces.append((lab, int(cat.trace(ke))))
    # traces are the dimensions of the summands mod 3: T_4 has dimension 4 -> 1, T_2 has 3 -> 0
    assert sorted(traces) == sorted((lab, tilting_character(lab, 3).dim % 3) for lab, _ in traces)


# -- J_r and the lemmas ---------------------------------------------------------------

def test_J2_vanishes_on_small_atoms(tilt3):
    for method in ("principal", "through"):
        ideal = JIdeal(tilt3, 2, method, 16)
        for a in range(8):
            for b in range(8):
                assert ideal.atom_dim(a, b) == 0
        assert ideal.atom_dim(8, 8) == tilt3.data.atom_hom(8, 8).dim


def test_J2_word_table(tilt3):
    rows = word_table(tilt3, 2, 8, 16)
    nonzero = [(r["m"], r["n"], r["dim_J_principal"]) for r in rows if r["dim_J_principal"]]
    # V^8 = T_8 + (lower terms) and End(T_8) is one-dimensional
    assert nonzero == [(8, 8, 1)]
    assert all(r["agree"] for r in rows)
    for m, n in [(2, 2), (4, 4), (3, 5), (4, 2), (0, 4)]:
        assert direct_principal_dim(tilt3, 2, m, n) == 0


def test_J1_at_p3(tilt3):
    ideal = JIdeal(tilt3, 1)
    assert ideal.atom_dim(0, 0) == 0
    assert ideal.atom_dim(2, 2) == 1


def test_st_faithful_examples(tilt3):
    assert verify_st_strongly_faithful(3, 1, tilt3).verdict == "certified"
    with pytest.raises(PreconditionError):
        verify_st_strongly_faithful(2, 2)
    with pytest.raises(PreconditionError):
        verify_st_strongly_faithful(4, 1)


def test_st_faithful_records_auxiliary_vanishing(tilt3):
    cert = verify_st_strongly_faithful(3, 2, tilt3)
    aux = cert.witnesses[0]["auxiliary_vanishing"]
    assert [a["J_dims"] for a in aux] == [[0, 0, 0]] * 2
    assert cert.truncation["ideal"]["ideal"] == "J_2"


def test_envelope_examples(tilt3):
    empty = certify_envelope_hypothesis_sl2(3, 2, samples=[], cat=tilt3)
    assert empty.verdict == "certified" and empty.sections[1].cases == []
    unit = certify_envelope_hypothesis_sl2(3, 2, samples=[tilt3.identity(())], cat=tilt3)
    assert unit.sections[1].cases[0]["trivial"].startswith("identity of the unit")
    samples = default_samples(tilt3)
    assert all(max(lab[:2]) <= 4 for lab, _ in samples)
    with pytest.raises(PreconditionError):
        certify_envelope_hypothesis_sl2(3, 2, samples=[tilt3.identity((8,))], cat=tilt3)


def test_st1_splits_low_morphisms(tilt3):
    """split_search-style check: St_1 (x) f is split in Tilt / J_2 for the basis of End(T_4)."""
    from tensorcert.certify import split_solve
    q = JIdeal(tilt3, 2).quotient()
    for f in tilt3.hom((4,), (4,)).vectors:
        assert split_solve(q, tilt3.tensor(tilt3.identity((2,)), f)) is not None


def test_strong_faithfulness_of_T1_in_tilt(tilt3):
    # V is strongly faithful in Tilt itself on the small test family
    assert check_strongly_faithful_homform(tilt3, (1,), max_degree=4).ok


def test_decomposition_is_seed_independent():
    a = TiltCategory(3, seed=0).data.decomposition((1,) * 5)
    b = TiltCategory(3, seed=7).data.decomposition((1,) * 5)
    assert [lab for lab, _, _ in a] == [lab for lab, _, _ in b]


def test_inconsistent_decomposition_is_reported(monkeypatch):
    import tensorcert.sl2.decompose as dec

    monkeypatch.setattr(dec, "tilting_decomposition_of_character", lambda ch, p: {0: 99})
    with pytest.raises(InconsistencyError):
        dec.tilting_decompose(2, 3)


def test_word_dims_from_multiplicities_match_direct_slices(tilt3):
    rows = word_table(tilt3, 1, 4, 16)
    assert any(r["dim_J_principal"] > 1 for r in rows)
    for r in rows:
        assert r["dim_J_principal"] == direct_principal_dim(tilt3, 1, r["m"], r["n"]), (r["m"], r["n"])
