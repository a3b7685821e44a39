"""Faithfulness, strong faithfulness and splitting, checked on finite data.

Every function takes a category implementing the :class:`~tensorcert.category.Category`
protocol.  Checks over a family of test objects produce a
:class:`~tensorcert.certificate.Certificate` whose ``truncation`` field lists
that family; a "certified" verdict means the bounded statement holds, never
the statement over the whole category.

Conventions: ev_X : X^v X -> 1, co_X : 1 -> X X^v, and

    E_X = ev_X (x) X^v X  -  X^v X (x) ev_X : X^v X X^v X -> X^v X,
    gamma_X = (E_X, ev_X).
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificate import Certificate, combine_verdicts
from .homspace import (HomSpaceError, InconsistencyError, exactness_check, induced_map, map_from_images,
                       solve)


class PreconditionError(ValueError):
    pass


# -- the gadgets ---------------------------------------------------------------------

def make_E(cat, x):
    xd = cat.dual_obj(x)
    idd = cat.tensor_obj(xd, x)
    ev = cat.ev(x)
    left = cat.tensor(ev, cat.identity(idd))
    right = cat.tensor(cat.identity(idd), ev)
    return cat.sub(left, right)


@dataclass
class ExactSeq:
    """X2 --p--> X1 --q--> X0 with q o p = 0."""

    p: object
    q: object

    def objects(self, cat):
        return cat.source(self.p), cat.source(self.q), cat.target(self.q)


def make_gamma(cat, x, d=None) -> ExactSeq:
    """gamma_X = (E_X, ev_X), tensored on the left by D when given."""
    p, q = make_E(cat, x), cat.ev(x)
    if d is not None:
        idd = cat.identity(d)
        p, q = cat.tensor(idd, p), cat.tensor(idd, q)
    if not cat.is_zero(cat.compose(q, p)):
        raise InconsistencyError("q o p != 0 for gamma_X")
    return ExactSeq(p, q)


def default_family(cat, x, max_degree=None):
    if max_degree is None:
        max_degree = 2 * cat.degree(x) + 2
    return cat.objects_up_to(max_degree)


def _obj(cat, a):
    return cat.obj_json(a)


def _claim(name, cat, x, **extra):
    out = {"check": name, "object": _obj(cat, x)}
    out.update(extra)
    return out


def _family_record(cat, family, max_degree=None):
    rec = {"test_objects": [_obj(cat, a) for a in family]}
    if max_degree is not None:
        rec["max_degree"] = max_degree
    return rec


# -- faithfulness -------------------------------------------------------------------

def check_faithful(cat, x, family=None, max_degree=None) -> Certificate:
    """Injectivity of Hom(1, A) -> Hom(X^v X, A), f -> f o ev_X, for A in the family."""
    if family is None:
        family = default_family(cat, x, max_degree)
    unit = cat.unit()
    xd = cat.dual_obj(x)
    idd = cat.tensor_obj(xd, x)
    ev = cat.ev(x)
    cases = []
    verdict = "certified"
    for a in family:
        h0, h1 = cat.hom(unit, a), cat.hom(idd, a)
        lm = induced_map(ev, None, h0, h1)
        r = lm.rank()
        ok = r == h0.dim
        cases.append({"object": _obj(cat, a), "dims": [h0.dim, h1.dim], "ranks": [r],
                      "defect": h0.dim - r, "ok": ok})
        if not ok:
            verdict = "refuted"
            break
    return Certificate(_claim("faithful", cat, x), verdict, cat.describe(),
                       _family_record(cat, family, max_degree), cases)


def hom_sequence_case(cat, seq: ExactSeq, a):
    """Exactness of 0 -> Hom(X0, A) -> Hom(X1, A) -> Hom(X2, A) induced by seq."""
    x2, x1, x0 = seq.objects(cat)
    h0, h1, h2 = cat.hom(x0, a), cat.hom(x1, a), cat.hom(x2, a)
    f = induced_map(seq.q, None, h0, h1)
    g = induced_map(seq.p, None, h1, h2)
    return exactness_check(g, f, require_left_injective=True)


def check_strongly_faithful_homform(cat, x, family=None, max_degree=None) -> Certificate:
    """Hom(-, A) applied to gamma_X is left exact for every A in the family."""
    if family is None:
        family = default_family(cat, x, max_degree)
    seq = make_gamma(cat, x)
    cases = []
    verdict = "certified"
    for a in family:
        v = hom_sequence_case(cat, seq, a)
        case = {"object": _obj(cat, a), "ok": v.exact}
        case.update(v.to_json())
        cases.append(case)
        if not v.exact:
            verdict = "refuted"
            break
    return Certificate(_claim("strongly-faithful-hom", cat, x), verdict, cat.describe(),
                       _family_record(cat, family, max_degree), cases)


def default_pairs(cat, max_total_degree):
    objs = cat.objects_up_to(max_total_degree)
    return [(m, n) for m in objs for n in objs
            if cat.degree(m) + cat.degree(n) <= max_total_degree]


def mn_case(cat, x, m, n):
    """0 -> Hom(M,N) -> Hom(XM,XN) -> Hom(XXM,XXN) with the symmetrized second map."""
    idx = cat.identity(x)
    s = cat.braid(x, x)
    xm, xn = cat.tensor_obj(x, m), cat.tensor_obj(x, n)
    xxm, xxn = cat.tensor_obj(x, xm), cat.tensor_obj(x, xn)
    h0, h1, h2 = cat.hom(m, n), cat.hom(xm, xn), cat.hom(xxm, xxn)
    f = map_from_images(h0, h1, [cat.tensor(idx, phi) for phi in h0.vectors])
    s_m = cat.tensor(s, cat.identity(m))
    s_n = cat.tensor(s, cat.identity(n))
    images = []
    for psi in h1.vectors:
        xpsi = cat.tensor(idx, psi)
        images.append(cat.sub(xpsi, cat.composes(s_n, xpsi, s_m)))
    g = map_from_images(h1, h2, images)
    return exactness_check(g, f, require_left_injective=True)


def check_strongly_faithful_mnform(cat, x, pairs=None, max_total_degree=None) -> Certificate:
    if pairs is None:
        if max_total_degree is None:
            max_total_degree = 2 * cat.degree(x) + 2
        pairs = default_pairs(cat, max_total_degree)
    cases = []
    verdict = "certified"
    for m, n in pairs:
        v = mn_case(cat, x, m, n)
        case = {"pair": [_obj(cat, m), _obj(cat, n)], "ok": v.exact}
        case.update(v.to_json())
        cases.append(case)
        if not v.exact:
            verdict = "refuted"
            break
    trunc = {"pairs": [[_obj(cat, m), _obj(cat, n)] for m, n in pairs]}
    if max_total_degree is not None:
        trunc["max_total_degree"] = max_total_degree
    return Certificate(_claim("strongly-faithful-mn", cat, x), verdict, cat.describe(), trunc, cases)


# -- splitting -------------------------------------------------------------------------

def split_solve(cat, f):
    """Some g : B -> A with f o g o f = f, or None when the linear system has no solution."""
    a, b = cat.source(f), cat.target(f)
    hba, hab = cat.hom(b, a), cat.hom(a, b)
    images = [cat.composes(f, g, f) for g in hba.vectors]
    lm = map_from_images(hba, hab, images)
    sol = solve(lm, hab.coords(f))
    if sol is None:
        return None
    g = hba.combine(sol)
    if not cat.equal(cat.composes(f, g, f), f):
        raise InconsistencyError("split_solve produced a g that fails f o g o f = f")
    return g


def is_split_by(cat, g, f) -> bool:
    return cat.equal(cat.composes(f, g, f), f)


def split_search(cat, f, degree_bound: int, candidates=None):
    """First X (degree-lexicographic, then given candidates) with X (x) f split.

    Returns (X, g) or None when nothing up to the bound works.
    """
    splitters = list(cat.objects_up_to(degree_bound))
    if candidates:
        splitters += list(candidates)
    for x in splitters:
        xf = cat.tensor(cat.identity(x), f)
        g = split_solve(cat, xf)
        if g is not None:
            return x, g
    return None


def witness_ev_split(cat, x):
    """f = X (x) ev_X is split by g = co_X (x) X; likewise X^v (x) co_X by ev_X (x) X^v."""
    xd = cat.dual_obj(x)
    idx, idxd = cat.identity(x), cat.identity(xd)
    f1 = cat.tensor(idx, cat.ev(x))
    g1 = cat.tensor(cat.co(x), idx)
    f2 = cat.tensor(idxd, cat.co(x))
    g2 = cat.tensor(cat.ev(x), idxd)
    out = []
    for f, g in ((f1, g1), (f2, g2)):
        if not is_split_by(cat, g, f):
            raise InconsistencyError("explicit evaluation/coevaluation witness fails")
        out.append((f, g))
    return out


def witness_E_split(cat, x):
    """f = X (x) E_X (x) X^v is split by an explicit g.

    With g0 = X X^v X X^v (x) co_X - co_X (x) X (x) ev_X (x) X^v (x) co_X one has
    f o g0 o f = -f exactly, so g = -g0 splits f.  Both identities are checked.
    """
    xd = cat.dual_obj(x)
    idx, idxd = cat.identity(x), cat.identity(xd)
    f = cat.tensor_mors(idx, make_E(cat, x), idxd)
    co, ev = cat.co(x), cat.ev(x)
    g1 = cat.tensor_mors(idx, idxd, idx, idxd, co)
    g2 = cat.tensor_mors(co, idx, ev, idxd, co)
    g0 = cat.sub(g1, g2)
    if not cat.equal(cat.composes(f, g0, f), cat.neg(f)):
        raise InconsistencyError("f o g0 o f != -f for the E_X witness")
    g = cat.neg(g0)
    if not is_split_by(cat, g, f):
        raise InconsistencyError("explicit E_X witness fails")
    return f, g


def witness_dim_invertible(cat, x):
    """Contracting homotopy of gamma_X when d = dim X is invertible.

    f = (1/d) sigma_{X, X^v} o co_X and h = (f (x) f) o ev_X - X^v X (x) f satisfy
    ev o f = id_1 and E o h + f o ev = id_{X^v X}.
    """
    d = cat.dim(x)
    if d == 0:
        raise PreconditionError("dim X is zero, so it is not invertible")
    xd = cat.dual_obj(x)
    f = cat.scale(cat.field.one / d, cat.compose(cat.braid(x, xd), cat.co(x)))
    ev = cat.ev(x)
    e = make_E(cat, x)
    idd = cat.identity(cat.tensor_obj(xd, x))
    h = cat.sub(cat.compose(cat.tensor(f, f), ev), cat.tensor(idd, f))
    checks = {
        "ev_f_is_id": cat.equal(cat.compose(ev, f), cat.identity(cat.unit())),
        "homotopy": cat.equal(cat.add(cat.compose(e, h), cat.compose(f, ev)), idd),
        "complex": cat.is_zero(cat.compose(ev, e)),
    }
    if not all(checks.values()):
        raise InconsistencyError(f"invertible-dimension witness fails: {checks}")
    return {"dim": d, "f": f, "h": h, "checks": checks}


def check_gammaXX_splitexact(cat, x) -> Certificate:
    """Split exactness of X^v X (x) gamma_X, by solving for the splitting maps.

    With P -> Q -> R the tensored sequence (maps p, q) we solve q o s = id_R,
    then p o t = id_Q - s o q.  Both together give a contracting homotopy.
    """
    xd = cat.dual_obj(x)
    y = cat.tensor_obj(xd, x)
    seq = make_gamma(cat, x, d=y)
    p_obj, q_obj, r_obj = seq.objects(cat)
    hrq = cat.hom(r_obj, q_obj)
    lm = map_from_images(hrq, cat.hom(r_obj, r_obj), [cat.compose(seq.q, s) for s in hrq.vectors])
    sol = solve(lm, cat.coords(cat.identity(r_obj)))
    cases = []
    witnesses = []
    verdict = "refuted"
    if sol is None:
        cases.append({"step": "section of q", "ok": False})
    else:
        s = hrq.combine(sol)
        cases.append({"step": "section of q", "ok": True, "unknowns": hrq.dim})
        hqp = cat.hom(q_obj, p_obj)
        target = cat.sub(cat.identity(q_obj), cat.compose(s, seq.q))
        lm2 = map_from_images(hqp, cat.hom(q_obj, q_obj),
                              [cat.compose(seq.p, t) for t in hqp.vectors])
        sol2 = solve(lm2, cat.coords(target))
        if sol2 is None:
            cases.append({"step": "homotopy on Q", "ok": False, "unknowns": hqp.dim})
        else:
            t = hqp.combine(sol2)
            ok = (cat.equal(cat.compose(seq.q, s), cat.identity(r_obj)) and
                  cat.equal(cat.add(cat.compose(seq.p, t), cat.compose(s, seq.q)),
                            cat.identity(q_obj)))
            if not ok:
                raise InconsistencyError("splitting maps fail re-verification")
            cases.append({"step": "homotopy on Q", "ok": True, "unknowns": hqp.dim})
            witnesses = [{"name": "s", "morphism": cat.mor_json(s)},
                         {"name": "t", "morphism": cat.mor_json(t)}]
            verdict = "certified"
    return Certificate(_claim("gammaXX-split-exact", cat, x), verdict, cat.describe(),
                       {"exact": "single sequence, no truncation"}, cases, witnesses)


def check_lemEO(cat, x, y, z, incl, proj) -> Certificate:
    """Exactness of Hom(gamma_X, Y) for Y a summand of X (x) Z (incl: Y -> XZ, proj: XZ -> Y)."""
    xz = cat.tensor_obj(x, z)
    try:
        cat.hom(y, xz).coords(incl)
        cat.hom(xz, y).coords(proj)
        ok = cat.equal(cat.compose(proj, incl), cat.identity(y))
    except (HomSpaceError, ValueError) as exc:
        raise PreconditionError(f"summand data has the wrong shape: {exc}") from exc
    if not ok:
        raise PreconditionError("summand data: proj o incl != id_Y")
    seq = make_gamma(cat, x)
    v = hom_sequence_case(cat, seq, y)
    case = {"object": _obj(cat, y), "ok": v.exact}
    case.update(v.to_json())
    return Certificate(_claim("summand-exactness", cat, x, summand=_obj(cat, y), via=_obj(cat, z)),
                       "certified" if v.exact else "refuted", cat.describe(),
                       {"exact": "single test object"}, [case])


def canonical_summand(cat, x):
    """X as a summand of X (x) (X^v X): incl = co_X (x) X, proj = X (x) ev_X."""
    xd = cat.dual_obj(x)
    idx = cat.identity(x)
    z = cat.tensor_obj(xd, x)
    return z, cat.tensor(cat.co(x), idx), cat.tensor(idx, cat.ev(x))


def certify_witnesses(cat, x) -> Certificate:
    """Run all explicit witnesses for X; verification failures raise."""
    cases = []
    for (f, g), name in zip(witness_ev_split(cat, x), ("X(x)ev_X", "X^v(x)co_X")):
        cases.append({"witness": name, "ok": True})
    witness_E_split(cat, x)
    cases.append({"witness": "X(x)E_X(x)X^v", "ok": True})
    try:
        data = witness_dim_invertible(cat, x)
        cases.append({"witness": "invertible-dimension", "ok": True,
                      "dim": cat.field.to_json(data["dim"])})
    except PreconditionError:
        cases.append({"witness": "invertible-dimension", "ok": True, "skipped": "dim X = 0"})
    return Certificate(_claim("explicit-witnesses", cat, x), "certified", cat.describe(),
                       {"exact": "explicit identities"}, cases)


__all__ = [
    "make_E", "make_gamma", "ExactSeq", "check_faithful", "check_strongly_faithful_homform",
    "check_strongly_faithful_mnform", "split_solve", "split_search", "witness_ev_split",
    "witness_E_split", "witness_dim_invertible", "check_gammaXX_splitexact", "check_lemEO",
    "canonical_summand", "certify_witnesses", "default_family", "default_pairs",
    "PreconditionError", "combine_verdicts",
]
