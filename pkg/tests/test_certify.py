import pytest

from tensorcert import diagrams as dg
from tensorcert.category import KaroubiCategory, restrict_end_unit
from tensorcert.certify import (PreconditionError, canonical_summand, certify_witnesses, check_faithful,
                                check_gammaXX_splitexact, check_lemEO, check_strongly_faithful_homform,
                                check_strongly_faithful_mnform, is_split_by, make_E, make_gamma,
                                split_search, split_solve, witness_dim_invertible, witness_E_split,
                                witness_ev_split)


@pytest.fixture(scope="module")
def o3():
    return KaroubiCategory.make("brauer", {"kind": "Q"}, 3)


@pytest.fixture(scope="module")
def gl2():
    return KaroubiCategory.make("walled-brauer", {"kind": "Q"}, 2)


@pytest.fixture(scope="module")
def restricted():
    big = KaroubiCategory.make("walled-brauer", {"kind": "ext", "minpoly": [1, 0, -2]}, 0)
    return restrict_end_unit(big)


# -- gadgets ----------------------------------------------------------------------

def test_E_of_unit_is_zero(o3):
    assert o3.is_zero(make_E(o3, o3.unit()))


def test_E_of_U_two_terms(o3):
    u = o3.word("+")
    e = make_E(o3, u)
    (entry,), = e.entries
    assert sorted(entry.terms.values()) == [-1, 1]
    assert o3.is_zero(o3.compose(o3.ev(u), e))


def test_gamma_examples(o3, gl2):
    seq = make_gamma(o3, o3.unit())
    assert o3.is_zero(seq.p) and o3.equal(seq.q, o3.identity(o3.unit()))
    u = o3.word("+")
    plain, with_unit = make_gamma(o3, u), make_gamma(o3, u, d=o3.unit())
    assert o3.equal(plain.p, with_unit.p) and o3.equal(plain.q, with_unit.q)
    vv = gl2.word("++")
    seq = make_gamma(gl2, vv)
    assert gl2.is_zero(gl2.compose(seq.q, seq.p))


# -- faithfulness ---------------------------------------------------------------------

def test_faithful_examples(o3):
    assert check_faithful(o3, o3.unit(), max_degree=3).verdict == "certified"
    assert check_faithful(o3, o3.word("+"), max_degree=3).verdict == "certified"
    cert = check_faithful(o3, o3.zero_object(), family=[o3.unit()])
    assert cert.verdict == "refuted"
    assert cert.first_failure()["defect"] == 1


def test_homform_examples(o3, restricted):
    cert = check_strongly_faithful_homform(o3, o3.word("+"), max_degree=4)
    assert cert.verdict == "certified"
    assert cert.truncation["max_degree"] == 4
    assert check_strongly_faithful_homform(o3, o3.unit(), max_degree=4).verdict == "certified"
    bad = check_strongly_faithful_homform(restricted, restricted.word("+"), family=[restricted.unit()])
    assert bad.verdict == "refuted"
    assert bad.cases[0]["defect"] == 1


def test_mnform_examples(gl2, restricted):
    unit = gl2.unit()
    cert = check_strongly_faithful_mnform(gl2, gl2.word("+"), pairs=[(unit, unit)])
    assert cert.verdict == "certified"
    bad = check_strongly_faithful_mnform(restricted, restricted.word("+"),
                                         pairs=[(restricted.unit(), restricted.unit())])
    assert bad.verdict == "refuted"
    case = bad.cases[0]
    # 0 -> k -> K -> K S_2 with a zero second map
    assert case["dims"] == [1, 2, 4] and case["ranks"] == [1, 0]
    # Hom(M, N) = 0 = Hom(XM, XN): exact vacuously
    m, n = gl2.word("+"), gl2.unit()
    assert check_strongly_faithful_mnform(gl2, gl2.word("+"), pairs=[(m, n)]).verdict == "certified"


def test_restricted_unit_is_faithful(restricted):
    assert check_faithful(restricted, restricted.word("+"), max_degree=4).verdict == "certified"


@pytest.mark.parametrize("kind,t", [("brauer", 2), ("brauer", "1/2"), ("walled-brauer", 3),
                                    ("walled-brauer", 0)])
def test_faithful_never_refutes_a_strongly_faithful_object(kind, t):
    cat = KaroubiCategory.make(kind, {"kind": "Q"}, t)
    x = cat.word("+")
    if check_strongly_faithful_homform(cat, x, max_degree=3).ok:
        assert check_faithful(cat, x, max_degree=3).ok


def test_forms_agree_on_controls(gl2):
    x = gl2.word("+")
    assert check_strongly_faithful_homform(gl2, x, max_degree=4).ok
    assert check_strongly_faithful_mnform(gl2, x, max_total_degree=4).ok


def test_tensor_product_of_strongly_faithful(o3):
    u = o3.word("+")
    assert check_strongly_faithful_homform(o3, u, max_degree=4).ok
    uu = o3.word("++")
    # bound 4 for U gives bound 4 - 1 - 1 = 2 for U (x) U
    assert check_strongly_faithful_homform(o3, uu, max_degree=2).ok


# -- splitting ------------------------------------------------------------------------

def test_split_solve_examples(o3):
    u = o3.word("++")
    g = split_solve(o3, o3.identity(u))
    assert is_split_by(o3, g, o3.identity(u))
    z = o3.zero(u, u)
    g = split_solve(o3, z)
    assert g is not None and is_split_by(o3, g, z)
    x = o3.word("+")
    f = o3.tensor(o3.identity(x), o3.ev(x))
    g = split_solve(o3, f)
    assert g is not None
    assert is_split_by(o3, o3.tensor(o3.co(x), o3.identity(x)), f)


def test_split_search_examples(o3):
    x = o3.word("+")
    f = o3.identity(x)
    found = split_search(o3, f, 0)
    assert found is not None and found[0] == o3.unit()
    e = make_E(o3, x)
    found = split_search(o3, e, 2)
    assert found is not None


def test_ev_needs_tensoring_to_split_at_zero_dimension():
    o0 = KaroubiCategory.make("brauer", {"kind": "Q"}, 0)
    x = o0.word("+")
    ev = o0.ev(x)
    # ev_U at t = 0 is not split (f o g o f = 0 for every g), but X (x) ev_X is
    assert split_solve(o0, ev) is None
    assert split_solve(o0, o0.tensor(o0.identity(x), ev)) is not None


def test_witnesses_on_unit(o3):
    one = o3.unit()
    assert len(witness_ev_split(o3, one)) == 2
    witness_E_split(o3, one)
    assert certify_witnesses(o3, one).ok


def test_witness_examples():
    o5 = KaroubiCategory.make("brauer", {"kind": "Q"}, 5)
    assert witness_dim_invertible(o5, o5.word("+"))["dim"] == 5
    o0 = KaroubiCategory.make("brauer", {"kind": "Q"}, 0)
    with pytest.raises(PreconditionError):
        witness_dim_invertible(o0, o0.word("+"))
    gl3 = KaroubiCategory.make("walled-brauer", {"kind": "Q"}, 3)
    assert witness_dim_invertible(gl3, gl3.word("++"))["dim"] == 9
    f, g = witness_E_split(gl3, gl3.word("+"))
    assert split_solve(gl3, f) is not None


def test_gamma_split_exact_examples(o3):
    assert check_gammaXX_splitexact(o3, o3.word("+")).ok
    assert check_gammaXX_splitexact(o3, o3.unit()).ok
    gl0 = KaroubiCategory.make("walled-brauer", {"kind": "Q"}, 0)
    cert = check_gammaXX_splitexact(gl0, gl0.word("+"))
    assert cert.ok and [w["name"] for w in cert.witnesses] == ["s", "t"]


def test_lemEO_examples(o3):
    x = o3.word("+")
    z, incl, proj = canonical_summand(o3, x)
    cert = check_lemEO(o3, x, x, z, incl, proj)
    assert cert.ok
    # U is odd, so every hom from an even word into U vanishes
    assert cert.cases[0]["dims"] == [0, 0, 0]
    xx = o3.word("++")
    z2, incl2, proj2 = canonical_summand(o3, xx)
    even = check_lemEO(o3, xx, xx, z2, incl2, proj2)
    # dims are 1!!, 5!!, 9!! and exactness forces ranks 1 and 15 - 1
    assert even.ok and even.cases[0]["dims"] == [1, 15, 945] and even.cases[0]["ranks"] == [1, 14]
    zero = o3.zero_object()
    xz = o3.tensor_obj(x, z)
    assert check_lemEO(o3, x, zero, z, o3.zero(zero, xz), o3.zero(xz, zero)).ok
    with pytest.raises(PreconditionError):
        check_lemEO(o3, x, x, z, incl, o3.zero(o3.tensor_obj(x, z), x))


def test_certificates_serialize(o3):
    cert = check_strongly_faithful_homform(o3, o3.word("+"), max_degree=2)
    data = cert.to_json()
    assert data["schema"] == "v1" and data["verdict"] == "certified"
    assert data["category"]["flavor"] == "brauer"
    assert all({"dims", "ranks", "defect"} <= set(c) for c in data["cases"])


def test_tl_snake_and_dimension():
    tl = KaroubiCategory.make("temperley-lieb", {"kind": "Fp", "p": 3}, -2)
    v = tl.word("+")
    # sigma o co = -co, so dim V = -(loop value) = 2, the dimension of the natural module
    assert tl.dim(v) == tl.field(2)
    fl = tl.flavor
    co = dg.coevaluation(fl, "+")
    s = dg.braiding(fl, "+", "+")
    assert dg.compose(s, co) == co.scale(fl.field(-1))
