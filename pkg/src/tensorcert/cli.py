"""Command-line driver.

    tensorcert certify <check> [--config FILE] [--flavor F] [--t T] [--p P] [--object W] ...
    tensorcert homdim --flavor F --source W --target W
    tensorcert ideal --flavor F --ideal KIND [--generator W] --degree N
    tensorcert sl2 <subcheck> --p P ...
    tensorcert report CERTIFICATE

A run reads an optional JSON config, applies flag overrides, executes one job
and writes its JSON result (a certificate for checks) to --out.  The exit
status is 0 certified, 1 refuted, 2 inconclusive at the bound and 3 for
invalid input or an exceeded resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certify as cf
from .category import CategoryError, KaroubiCategory, restrict_end_unit
from .certificate import Certificate, CertificateError, canonical_dumps, validate
from .diagrams import Caps, DiagramError, ResourceError, expected_count
from .ideals import IdealSpec, QuotientCategory, ideal_slice
from .scalars import FieldError

EXIT_CONFIG = 3

DIAGRAM_FLAVORS = ("brauer", "walled-brauer", "partition", "temperley-lieb")
CHECKS = ("faithful", "strongly-faithful", "strongly-faithful-mn", "witnesses", "gamma-split-exact")
SL2_CHECKS = ("linkage", "decompose", "char-necessary", "st-faithful", "envelope", "j-table")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


# -- configuration -------------------------------------------------------------------

def load_config(path) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be an object")
    return data


def merge_overrides(cfg: dict, args) -> dict:
    cfg = json.loads(json.dumps(cfg))
    cat = cfg.setdefault("category", {})
    job = cfg.setdefault("job", {})
    caps = cfg.setdefault("caps", {})
    out = cfg.setdefault("output", {})
    if getattr(args, "flavor", None):
        cat["flavor"] = args.flavor
    if getattr(args, "t", None) is not None:
        cat["t"] = args.t
    if getattr(args, "p", None) is not None:
        cat["p"] = args.p
    if getattr(args, "degree", None) is not None:
        job["degree"] = args.degree
    if getattr(args, "cap", None) is not None:
        caps["max_points"] = args.cap
    if getattr(args, "out", None):
        out["path"] = args.out
    if getattr(args, "object", None) is not None:
        job["object"] = args.object
    return cfg


def make_caps(cfg: dict) -> Caps:
    caps = cfg.get("caps", {})
    if not isinstance(caps, dict):
        raise ConfigError("caps: must be an object")
    mp = caps.get("max_points", 16)
    md = caps.get("max_diagrams", 200_000)
    for name, v in (("caps.max_points", mp), ("caps.max_diagrams", md)):
        if not isinstance(v, int) or v <= 0:
            raise ConfigError(f"{name}: must be a positive integer")
    return Caps(mp, md)


def _field_spec(cat: dict) -> dict:
    flavor = cat.get("flavor")
    field = cat.get("field")
    if field is None:
        if "p" in cat and cat["p"] is not None:
            field = {"kind": "Fp", "p": cat["p"]}
        else:
            field = {"kind": "Q"}
    if not isinstance(field, dict):
        raise ConfigError("category.field: must be an object")
    if flavor == "temperley-lieb" and field.get("kind") == "Q" and "p" in cat:
        field = {"kind": "Fp", "p": cat["p"]}
    return field


def build_category(cfg: dict):
    """(category, object parser) from the "category" section."""
    cat = cfg.get("category")
    if not isinstance(cat, dict):
        raise ConfigError("category: missing or not an object")
    flavor = cat.get("flavor")
    caps = make_caps(cfg)
    if flavor == "tilting":
        from .sl2.jideal import JIdeal
        from .sl2.tilt import TiltCategory
        p = cat.get("p")
        if not isinstance(p, int) or p < 2:
            raise ConfigError("category.p: tilting flavor needs an integer prime p")
        base = TiltCategory(p)
        ideal = cat.get("ideal")
        if ideal is not None:
            if not isinstance(ideal, dict) or ideal.get("kind") != "J" or not isinstance(ideal.get("r"), int):
                raise ConfigError('category.ideal: tilting flavor accepts {"kind": "J", "r": <int>}')
            return JIdeal(base, ideal["r"]).quotient(), parse_labels
        return base, parse_labels
    if flavor not in DIAGRAM_FLAVORS:
        raise ConfigError(f"category.flavor: expected one of {DIAGRAM_FLAVORS + ('tilting',)}, got {flavor!r}")
    field = _field_spec(cat)
    if flavor == "temperley-lieb":
        loop = cat.get("t", -2)
    else:
        if "t" not in cat:
            raise ConfigError("category.t: the loop parameter is required")
        loop = cat["t"]
    try:
        base = KaroubiCategory.make(flavor, field, loop, caps)
    except FieldError as exc:
        raise ConfigError(f"category.field: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"category.t: {exc}") from exc
    if cat.get("restricted_unit"):
        try:
            base = restrict_end_unit(base)
        except CategoryError as exc:
            raise ConfigError(f"category.restricted_unit: {exc}") from exc
    ideal = cat.get("ideal")
    if ideal is not None:
        base = QuotientCategory(base, make_ideal_spec(base, ideal, "category.ideal"))
    return base, parse_word


def make_ideal_spec(cat, ideal: dict, where: str) -> IdealSpec:
    if not isinstance(ideal, dict):
        raise ConfigError(f"{where}: must be an object")
    kind = ideal.get("kind")
    if kind == "negligible":
        return IdealSpec("negligible")
    if kind == "principal":
        gen = ideal.get("generator")
        if not isinstance(gen, str):
            raise ConfigError(f"{where}.generator: a word is required for principal ideals")
        return IdealSpec("principal", generator=parse_word(cat, gen))
    raise ConfigError(f"{where}.kind: expected negligible or principal, got {kind!r}")


def parse_word(cat, text):
    if text is None:
        raise ConfigError("job.object: missing")
    if not isinstance(text, str):
        raise ConfigError("job.object: must be a string word such as '+' or '+-'")
    if text in ("", "1"):
        return cat.unit()
    try:
        return cat.word(tuple(text))
    except (DiagramError, CategoryError) as exc:
        raise ConfigError(f"job.object: {exc}") from exc


def parse_labels(cat, text):
    if isinstance(text, int):
        return (text,)
    if isinstance(text, list):
        items = text
    elif isinstance(text, str):
        if text in ("", "1"):
            return ()
        items = text.split(",")
    else:
        raise ConfigError("job.object: expected tilting labels such as '2' or '2,2'")
    try:
        labels = tuple(int(x) for x in items)
    except ValueError as exc:
        raise ConfigError(f"job.object: {exc}") from exc
    if any(a < 0 for a in labels):
        raise ConfigError("job.object: labels must be nonnegative")
    return labels


def _degree(job: dict, key="degree"):
    d = job.get(key)
    if d is None:
        return None
    if not isinstance(d, int) or d < 0:
        raise ConfigError(f"job.{key}: must be a nonnegative integer")
    return d


# -- jobs ---------------------------------------------------------------------------

def run_check(check: str, cfg: dict) -> Certificate:
    if check not in CHECKS:
        raise ConfigError(f"job.check: expected one of {CHECKS}, got {check!r}")
    cat, parse = build_category(cfg)
    job = cfg.get("job", {})
    x = parse(cat, job.get("object", "+" if parse is parse_word else "1"))
    degree = _degree(job)
    if check == "faithful":
        return cf.check_faithful(cat, x, max_degree=degree)
    if check == "strongly-faithful":
        return cf.check_strongly_faithful_homform(cat, x, max_degree=degree)
    if check == "strongly-faithful-mn":
        pairs = job.get("pairs")
        if pairs is not None:
            if not isinstance(pairs, list):
                raise ConfigError("job.pairs: must be a list of [M, N] words")
            pairs = [(parse(cat, m), parse(cat, n)) for m, n in pairs]
        return cf.check_strongly_faithful_mnform(cat, x, pairs=pairs,
                                                 max_total_degree=degree if pairs is None else None)
    if check == "witnesses":
        return cf.certify_witnesses(cat, x)
    return cf.check_gammaXX_splitexact(cat, x)


def run_homdim(cfg: dict, source: str, target: str) -> dict:
    cat, parse = build_category(cfg)
    a, b = parse(cat, source), parse(cat, target)
    out = {"category": cat.describe(), "source": cat.obj_json(a), "target": cat.obj_json(b),
           "dim": cat.hom(a, b).dim}
    flavor = cfg["category"].get("flavor")
    if flavor in DIAGRAM_FLAVORS and not cfg["category"].get("ideal") and parse is parse_word:
        if len(a.words) == 1 and len(b.words) == 1 and a.idem is None and b.idem is None:
            out["diagram_count"] = expected_count(a.words[0], b.words[0], flavor)
    return out


def run_ideal(cfg: dict, ideal: dict, degree: int) -> dict:
    cat, parse = build_category(cfg)
    if parse is parse_labels:
        from .sl2.jideal import JIdeal
        r = ideal.get("r")
        if ideal.get("kind") != "J" or not isinstance(r, int):
            raise ConfigError('ideal: tilting flavor accepts {"kind": "J", "r": <int>}')
        j = JIdeal(cat, r)
        objs = [(i,) for i in range(degree + 1)]
        rows = [{"pair": [list(a), list(b)], "dim_hom": cat.hom(a, b).dim, "dim_ideal": j.dim(a, b),
                 "dim_quotient": cat.hom(a, b).dim - j.dim(a, b)}
                for a in objs for b in objs]
        return {"category": cat.describe(), "ideal": {"kind": "J", "r": r}, "table": rows}
    spec = make_ideal_spec(cat, ideal, "ideal")
    objs = cat.objects_up_to(degree)
    rows = []
    for a in objs:
        for b in objs:
            rows.append(ideal_slice(cat, spec, a, b).to_json(cat))
    return {"category": cat.describe(), "ideal": {"kind": spec.kind}, "table": rows}


def run_sl2(sub: str, args) -> tuple[object, int]:
    from .sl2 import characters as ch
    from .sl2.decompose import tilting_decompose
    from .sl2.jideal import word_table
    from .sl2.lemmas import certify_envelope_hypothesis_sl2, verify_st_strongly_faithful
    from .sl2.tilt import TiltCategory

    p = args.p
    if p is None:
        raise ConfigError("--p: required for sl2 subchecks")
    if sub == "linkage":
        if args.a is not None:
            bound = args.bound if args.bound is not None else 4 * p * p
            return {"a": args.a, "p": p, "bound": bound,
                    "orbit": sorted(ch.linkage_orbit(args.a, p, bound))}, 0
        rows = [ch.check_linkage_gap(p, j) for j in (1, 2)]
        return {"p": p, "gap_checks": rows}, 0 if all(r["ok"] for r in rows) else 1
    if sub == "decompose":
        n = args.n if args.n is not None else 4
        caps = Caps(args.cap, 200_000) if args.cap else Caps()
        return tilting_decompose(n, p, caps=caps).to_json(), 0
    if sub == "char-necessary":
        if args.i is None or args.r is None:
            raise ConfigError("--i and --r: required for char-necessary")
        cert = ch.check_tilting_char_necessary(args.i, args.r, p)
        return cert, cert.exit_code
    r = args.r if args.r is not None else 2
    if sub == "st-faithful":
        cert = verify_st_strongly_faithful(p, r)
        return cert, cert.exit_code
    if sub == "envelope":
        cert = certify_envelope_hypothesis_sl2(p, r)
        return cert, cert.exit_code
    if sub == "j-table":
        n = args.n if args.n is not None else 8
        rows = word_table(TiltCategory(p), r, n)
        return {"p": p, "r": r, "max_len": n, "table": rows}, 0 if all(x["agree"] for x in rows) else 1
    raise ConfigError(f"sl2 subcheck: expected one of {SL2_CHECKS}, got {sub!r}")


# -- reports ------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, dict):
        if "words" in v:
            words = ["".join(w) or "1" for w in v["words"]]
            s = " + ".join(words)
            return s + (" (idempotent)" if "idempotent" in v else "")
        if "tilting" in v:
            return "(x)".join(f"T{a}" for a in v["tilting"]) or "1"
        return json.dumps(v, sort_keys=True)
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _case_label(case: dict) -> str:
    for key in ("object", "pair", "sample", "witness", "step"):
        if key in case:
            val = case[key]
            if key == "pair":
                return f"({_fmt(val[0])}, {_fmt(val[1])})"
            if key == "sample" and "source" in case:
                return f"{_fmt(case['source'])} -> {_fmt(case['target'])} #{_fmt(val)}"
            return _fmt(val)
    return "-"


def render_report(data: dict, indent: str = "") -> str:
    lines = []
    claim = data.get("claim", {})
    lines.append(f"{indent}claim: {claim.get('check', '?')}")
    for k in sorted(claim):
        if k != "check":
            lines.append(f"{indent}  {k}: {_fmt(claim[k])}")
    cat = data.get("category", {})
    if cat:
        lines.append(f"{indent}category: {json.dumps(cat, sort_keys=True)}")
    lines.append(f"{indent}verdict: {data.get('verdict')}")
    cases = data.get("cases", [])
    if cases:
        lines.append(f"{indent}{'case':<36} {'ok':<4} {'dims':<16} {'ranks':<10} defect")
        for c in cases:
            dims = _fmt(c.get("dims", "")) if "dims" in c else ""
            ranks = _fmt(c.get("ranks", "")) if "ranks" in c else ""
            defect = str(c.get("defect", "")) if "defect" in c else ""
            note = f"  ({c['trivial']})" if "trivial" in c else ""
            lines.append(f"{indent}{_case_label(c):<36} {'yes' if c.get('ok', True) else 'NO':<4} "
                         f"{dims:<16} {ranks:<10} {defect}{note}")
        first = next((c for c in cases if not c.get("ok", True)), None)
        if first is not None:
            d = first.get("defect", "?")
            lines.append(f"{indent}FIRST FAILURE: {_case_label(first)} with defect dimension {d}")
    if data.get("witnesses"):
        lines.append(f"{indent}witnesses: {len(data['witnesses'])}")
    trunc = data.get("truncation")
    if trunc:
        lines.append(f"{indent}truncation: {json.dumps(trunc, sort_keys=True)}")
    titles = ("faithfulness", "splitting")
    for k, sec in enumerate(data.get("sections", [])):
        title = titles[k] if k < len(titles) else f"section {k + 1}"
        lines.append("")
        lines.append(f"{indent}== {title} ==")
        lines.append(render_report(sec, indent + "  ").rstrip("\n"))
    return "\n".join(lines) + "\n"


def report_file(path) -> str:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f"cannot read certificate {path}: {exc}") from exc
    validate(data)
    return render_report(data)


# -- entry point --------------------------------------------------------------------

def _common(sp):
    sp.add_argument("--config", help="JSON run configuration")
    sp.add_argument("--flavor", help="brauer, walled-brauer, partition, temperley-lieb or tilting")
    sp.add_argument("--t", help="loop parameter (rational, e.g. 3 or 1/2)")
    sp.add_argument("--p", type=int, help="characteristic for F_p or the tilting flavor")
    sp.add_argument("--degree", type=int, help="degree bound for test families")
    sp.add_argument("--cap", type=int, help="maximum number of boundary points")
    sp.add_argument("--out", help="write the JSON result here")


def build_parser():
    ap = argparse.ArgumentParser(prog="tensorcert", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("certify", help="run a certification check")
    c.add_argument("check", help=", ".join(CHECKS))
    c.add_argument("--object", help="test object X, e.g. '+' or '2'")
    _common(c)
    h = sub.add_parser("homdim", help="dimension of a hom space")
    h.add_argument("--source", required=True)
    h.add_argument("--target", required=True)
    _common(h)
    i = sub.add_parser("ideal", help="dimension table of a tensor ideal")
    i.add_argument("--ideal", required=True, help="negligible, principal or J")
    i.add_argument("--generator", help="generator word for principal ideals")
    i.add_argument("--r", type=int, help="index r of J_r (tilting flavor)")
    _common(i)
    s = sub.add_parser("sl2", help="SL_2 subchecks")
    s.add_argument("subcheck", help=", ".join(SL2_CHECKS))
    s.add_argument("--r", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--i", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--bound", type=int)
    _common(s)
    r = sub.add_parser("report", help="render a certificate as text")
    r.add_argument("certificate")
    return ap


def _emit(result, out_path, stdout):
    if isinstance(result, Certificate):
        text = result.dumps()
        summary = render_report(json.loads(text))
    else:
        text = canonical_dumps(result)
        summary = text
    if out_path:
        Path(out_path).write_text(text)
    stdout.write(summary)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            stdout.write(report_file(args.certificate))
            return 0
        cfg = merge_overrides(load_config(args.config), args)
        out_path = cfg.get("output", {}).get("path")
        if args.command == "certify":
            cert = run_check(args.check, cfg)
            _emit(cert, out_path, stdout)
            return cert.exit_code
        if args.command == "homdim":
            _emit(run_homdim(cfg, args.source, args.target), out_path, stdout)
            return 0
        if args.command == "ideal":
            degree = cfg.get("job", {}).get("degree", 2)
            ideal = {"kind": args.ideal}
            if args.generator is not None:
                ideal["generator"] = args.generator
            if args.r is not None:
                ideal["r"] = args.r
            _emit(run_ideal(cfg, ideal, degree), out_path, stdout)
            return 0
        result, code = run_sl2(args.subcheck, args)
        _emit(result, out_path, stdout)
        return code
    except (ConfigError, CertificateError, FieldError, ResourceError, cf.PreconditionError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
