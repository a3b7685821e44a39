"""Certificates for the Steinberg strong-faithfulness statement and the
envelope hypothesis of Tilt(SL_2) / J_r."""

from __future__ import annotations

from ..certificate import Certificate, combine_verdicts
from ..certify import PreconditionError, hom_sequence_case, make_gamma, split_solve
from ..diagrams import DEFAULT_CAPS, Caps, ResourceError
from .jideal import JIdeal
from .tilt import TiltCategory


def _check_prime(p: int):
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise PreconditionError(f"p = {p} is not a prime")
    if p == 2:
        raise PreconditionError("p = 2 is not covered: the argument needs p > 2")


def _check_size(p: int, r: int, caps: Caps):
    # the largest objects are St_{r-1}^{(x) 4} and St_r (x) T_i with i < p^r - 1
    top = p ** r - 1
    if 4 * (p ** (r - 1) - 1) > caps.max_points or top > 4 * caps.max_points:
        raise ResourceError(f"(p, r) = ({p}, {r}) is beyond the configured cap")


def _category(p, cat):
    if cat is None:
        return TiltCategory(p)
    if cat.p != p:
        raise ValueError("category was built for a different prime")
    return cat


def verify_st_strongly_faithful(p: int, r: int, cat: TiltCategory | None = None,
                                caps: Caps = DEFAULT_CAPS) -> Certificate:
    """Exactness of 0 -> C(1, T_i) -> C(St St, T_i) -> C(St St St St, T_i) in
    C = Tilt / J_r with St = St_{r-1}, for 0 <= i < p^r - 1, plus the vanishing
    J_r(1, T_i) = J_r(St^2, T_i) = J_r(St^4, T_i) = 0 for i < p^(r-1) - 1."""
    _check_prime(p)
    if r < 1:
        raise PreconditionError("r must be >= 1")
    _check_size(p, r, caps)
    cat = _category(p, cat)
    ideal = JIdeal(cat, r)
    quot = ideal.quotient()
    st = (p ** (r - 1) - 1,)
    seq = make_gamma(quot, st)
    cases = []
    for i in range(p ** r - 1):
        v = hom_sequence_case(quot, seq, (i,))
        case = {"object": cat.obj_json((i,)), "ok": v.exact}
        case.update(v.to_json())
        cases.append(case)
    aux = []
    for i in range(p ** (r - 1) - 1):
        dims = [ideal.dim((), (i,)), ideal.dim(st + st, (i,)), ideal.dim(st * 4, (i,))]
        aux.append({"object": cat.obj_json((i,)), "J_dims": dims, "ok": dims == [0, 0, 0]})
    ok = all(c["ok"] for c in cases) and all(a["ok"] for a in aux)
    claim = {"check": "st-strongly-faithful", "p": p, "r": r,
             "object": cat.obj_json(st), "quotient": ideal.label}
    cat_desc = dict(cat.describe(), ideal={"kind": "explicit", "label": ideal.label,
                                           "generator": cat.obj_json((p ** r - 1,))})
    trunc = {"targets": [cat.obj_json((i,)) for i in range(p ** r - 1)],
             "note": "every indecomposable of the quotient is one of these T_i",
             "ideal": ideal.truncation()}
    return Certificate(claim, "certified" if ok else "refuted", cat_desc, trunc, cases,
                       [{"auxiliary_vanishing": aux}])


def default_samples(cat: TiltCategory, max_label: int = 4):
    """All basis morphisms T_i -> T_j with i, j <= max_label."""
    out = []
    for i in range(max_label + 1):
        for j in range(max_label + 1):
            for k, f in enumerate(cat.hom((i,), (j,)).vectors):
                out.append(((i, j, k), f))
    return out


def certify_envelope_hypothesis_sl2(p: int, r: int, samples=None, degree_bound: int | None = None,
                                    cat: TiltCategory | None = None,
                                    caps: Caps = DEFAULT_CAPS) -> Certificate:
    """(a) St_{r-1} is strongly faithful in Tilt / J_r (at the tested targets) and
    (b) St_{r-1} (x) f is split in Tilt / J_r for every sample morphism f.

    ``samples`` is a list of (label, morphism) pairs or plain morphisms; the
    default is every basis morphism between T_i and T_j with i, j <= 4.
    ``degree_bound`` only limits which samples are accepted (the sum of the
    labels of source and target).
    """
    _check_prime(p)
    cat = _category(p, cat)
    section_a = verify_st_strongly_faithful(p, r, cat, caps)
    if samples is None:
        samples = default_samples(cat)
    quot = JIdeal(cat, r).quotient()
    st = (p ** (r - 1) - 1,)
    top = p ** r - 1
    cases = []
    witnesses = []
    for item in samples:
        label, f = item if isinstance(item, tuple) else (None, item)
        src, tgt = cat.source(f), cat.target(f)
        if any(a >= top for a in src + tgt):
            raise PreconditionError("samples must live between sums of T_i with i < p^r - 1")
        if degree_bound is not None and cat.degree(src) + cat.degree(tgt) > degree_bound:
            continue
        case = {"sample": label if label is None else list(label),
                "source": cat.obj_json(src), "target": cat.obj_json(tgt)}
        if quot.is_zero(f):
            case.update(ok=True, trivial="zero in the quotient")
        elif src == tgt and src in ((), (0,)) and cat.equal(f, cat.identity(src)):
            case.update(ok=True, trivial="identity of the unit, split by the unit")
        else:
            xf = cat.tensor(cat.identity(st), f)
            g = split_solve(quot, xf)
            case["ok"] = g is not None
            if g is not None:
                witnesses.append({"sample": case["sample"], "g": cat.mor_json(g)})
        cases.append(case)
    section_b = Certificate(
        {"check": "st-splits-samples", "p": p, "r": r, "object": cat.obj_json(st)},
        "certified" if all(c["ok"] for c in cases) else "refuted",
        quot.describe(), {"samples": len(cases), "degree_bound": degree_bound,
                          "sample_family": "basis morphisms T_i -> T_j, i, j <= 4"
                          if samples is not None else "user"}, cases, witnesses)
    verdict = combine_verdicts([section_a.verdict, section_b.verdict])
    return Certificate({"check": "envelope-hypothesis-sl2", "p": p, "r": r,
                        "hypothesis": "split by a strongly faithful object (sampled)"},
                       verdict, section_a.category,
                       {"sections": ["faithfulness", "splitting"]}, [], [],
                       [section_a, section_b])


__all__ = ["verify_st_strongly_faithful", "certify_envelope_hypothesis_sl2", "default_samples"]
