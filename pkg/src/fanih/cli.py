"""Command-line interface.

Inputs are JSON documents: a fan ({"dim", "rays", "max_cones"}), a
polytope ({"dim", "vertices"}, read as the fan of the cone over it) or,
for ``stanley``, an abstract face lattice.  A bundled corpus entry can be
named as ``@name``.  Cones are named by comma-separated ray indices.

Exit status: 0 when every assertion passes, 1 when one fails, 2 on
unreadable or invalid input.  Findings never change the exit status.

Convexity convention: a conewise-linear function is strictly convex when
on every wall the linear piece of one side, evaluated inside the other
side, is strictly smaller than the function there.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .decomp import decomposition_theorem_report, kalai_check
from .errors import FanError, FanihError
from .fan import Fan, PiecewiseLinearFunction, cone_over_polytope, is_complete, parse_rational
from .graded import Polynomial
from .ihlib import (
    convexity,
    duality_check,
    global_local_check,
    hard_lefschetz_prediction,
    ih,
    ip_quotient_check,
    ip_table,
    lefschetz_ranks,
    support_function,
)
from .cellular import acyclicity_report
from .sheaf import is_flabby
from .stanley import compare_ih_h, face_lattice, gh_vectors, lattice_from_doc


class InputError(Exception):
    pass


def load_doc(source: str) -> dict:
    if source.startswith("@"):
        try:
            return corpus.document(source[1:])
        except FileNotFoundError:
            raise InputError(f"no corpus entry {source[1:]!r}") from None
    p = Path(source)
    if not p.exists():
        raise InputError(f"no such file: {source}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: invalid JSON ({e})") from None


def load_fan(source: str) -> Fan:
    doc = load_doc(source)
    if not isinstance(doc, dict):
        raise InputError(f"{source}: expected a JSON object")
    return cone_over_polytope(doc) if "vertices" in doc else Fan.from_doc(doc)


def parse_cone(f: Fan, text: str):
    try:
        rays = [int(x) for x in text.split(",") if x.strip()] if text.strip() else []
    except ValueError:
        raise InputError(f"bad cone {text!r}: expected comma-separated ray indices") from None
    return f.cone_by_rays(rays)


def parse_function(f: Fan, source: str) -> PiecewiseLinearFunction:
    """Ray values as a comma list or a JSON file {"ray_values": [...]}."""
    if Path(source).exists() or source.startswith("@"):
        doc = load_doc(source)
        values = doc["ray_values"] if isinstance(doc, dict) else doc
    else:
        values = source.split(",")
    try:
        vals = [parse_rational(v) for v in values]
    except (ValueError, TypeError):
        raise InputError(f"bad function values {source!r}") from None
    if len(vals) != len(f.rays):
        raise InputError(f"expected {len(f.rays)} ray values, got {len(vals)}")
    try:
        return PiecewiseLinearFunction.from_ray_values(f, vals)
    except ValueError as e:
        raise InputError(str(e)) from None


def _check(name: str, ok: bool, witness=None) -> dict:
    return {"name": name, "pass": bool(ok), "witness": None if ok else witness}


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_ih(args) -> dict:
    f = load_fan(args.input)
    r = ih(f, args.cap)
    return {"ih": r.ih.to_json()}


def cmd_ip(args) -> dict:
    f = load_fan(args.input)
    if args.cone is not None:
        from .ihlib import ip
        c = parse_cone(f, args.cone)
        return {"cone": sorted(c.rays), "ip": ip(f, c, args.cap).to_json()}
    table = ip_table(f, args.cap, args.jobs)
    return {"ip": [{"cone": sorted(f.cones[c].rays), "ip": p.to_json()} for c, p in sorted(table.items())]}


def cmd_check(args) -> dict:
    f = load_fan(args.input)
    checks: list[dict] = []
    findings: list[dict] = []
    res = ih(f, args.cap)
    L = res.sheaf
    from .minimal import verify_minimal
    from .sheaf import check_chain_independence
    from .cellular import cellular_complex

    checks.append(_check("minimal sheaf verified", bool(vm := verify_minimal(L.sheaf)), vm.witness))
    fl = is_flabby(L.sheaf)
    checks.append(_check("flabby", fl.ok, fl.witness))
    ci = check_chain_independence(L.sheaf)
    checks.append(_check("chain independence", ci.ok, ci.witness))
    cellular_complex(L.sheaf)  # raises on d o d != 0
    checks.append(_check("d o d = 0", True))
    even = all(j % 2 == 0 and j >= 0 and v > 0 for j, v in res.ih.coeffs.items())
    checks.append(_check("ih even and nonnegative", even, res.ih.to_json()))
    complete = is_complete(f)
    if complete:
        try:
            rep = acyclicity_report(L.sheaf)
            free_ok = Polynomial(rep["free_gens"]) == res.ih
            checks.append(_check("acyclic with free global sections", free_ok, rep))
        except FanihError as e:
            checks.append(_check("acyclic with free global sections", False, {"error": str(e), **(e.witness or {})}))
        checks.extend(global_local_check(f, res=res)["checks"])
    checks.extend(duality_check(f, res=res)["checks"])
    for c in f.cones:
        if c.dim >= 2:
            q = ip_quotient_check(f, c, args.cap)
            for ch in q["checks"]:
                checks.append({**ch, "name": f"{ch['name']} at cone {sorted(c.rays)}"})
            hl = hard_lefschetz_prediction(f, c, args.cap)
            findings.append({"name": f"ip from boundary ih at cone {sorted(c.rays)}",
                             "agrees": hl["agrees"], "expected": hl["predicted"], "actual": hl["ip"]})
    if complete:
        l = support_function(f)
        kind = convexity(l)
        if kind == "strictly_convex":
            lr = lefschetz_ranks(f, l, res=res)
            findings.append({"name": "hard Lefschetz for unit ray values", "agrees": lr["hard_lefschetz"],
                             "ranks": lr["powers"]})
    return {"ih": res.ih.to_json(), "checks": checks, "findings": findings}


def cmd_decompose(args) -> dict:
    fine = load_fan(args.input)
    coarse = load_fan(args.onto)
    return decomposition_theorem_report(fine, coarse, args.cap)


def cmd_lefschetz(args) -> dict:
    f = load_fan(args.input)
    l = support_function(f) if args.l is None else parse_function(f, args.l)
    rep = lefschetz_ranks(f, l, args.cap)
    rep["convexity"] = convexity(l)
    rep["findings"] = [{"name": "hard Lefschetz", "agrees": rep["hard_lefschetz"]}]
    return rep


def cmd_stanley(args) -> dict:
    doc = load_doc(args.input)
    if "faces" in doc:
        L = lattice_from_doc(doc)
        gh = gh_vectors(L)
        return {"h": gh.h.vector(), "g": gh.g.vector(), "eulerian": L.is_eulerian()}
    rep = compare_ih_h(doc, args.cap)
    rep["findings"] = [{"name": "ih equals h(q^2)", "agrees": rep["ih_matches_h"]},
                       {"name": "ip equals g(q^2)", "agrees": rep["ip_matches_g"]}]
    return rep


def cmd_kalai(args) -> dict:
    f = load_fan(args.input)
    sigma = parse_cone(f, args.cone) if args.cone else max(f.cones, key=lambda c: c.dim)
    sub = f.subfan([sigma])
    face = parse_cone(f, args.face)
    return kalai_check(sub, sub.cone_by_rays(face.rays), args.cap)


COMMANDS = {
    "check": (cmd_check, "validate a fan and run the invariant suite"),
    "ih": (cmd_ih, "intersection cohomology Poincare polynomial"),
    "ip": (cmd_ip, "local intersection cohomology of one cone or of all cones"),
    "decompose": (cmd_decompose, "push the minimal sheaf of a subdivision forward and split it"),
    "lefschetz": (cmd_lefschetz, "rank table of a strictly convex function on IH"),
    "stanley": (cmd_stanley, "g- and h-polynomials of a polytope or face lattice"),
    "kalai": (cmd_kalai, "ip(cone) >= ip(face) * ip(Star(face))"),
}


def _even_cap(text: str) -> int:
    v = int(text)
    if v < 2 or v % 2:
        raise argparse.ArgumentTypeError("cap must be an even integer >= 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanih", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="JSON file or @corpus-name")
        sp.add_argument("--cap", type=_even_cap, default=None, help="degree cap (even)")
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for per-cone work")
        if name == "ip":
            sp.add_argument("--cone", default=None, help="ray indices, e.g. 0,1,2")
        if name == "decompose":
            sp.add_argument("--onto", required=True, help="coarse fan")
        if name == "lefschetz":
            sp.add_argument("--l", default=None, help="ray values (comma list or JSON file); default all ones")
        if name == "kalai":
            sp.add_argument("--cone", default=None, help="the generating cone (default: a top cone)")
            sp.add_argument("--face", required=True, help="face of the cone, as ray indices ('' for the origin)")
    return p


def _failed(report: dict) -> list[dict]:
    return [c for c in report.get("checks", []) if not c["pass"]]


def render(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if k in ("checks", "findings"):
            continue
        if isinstance(v, dict) and all(isinstance(x, int) for x in v.values()) and v:
            v = str(Polynomial.from_json(v))
        lines.append(f"{k}: {v if not isinstance(v, (list, dict)) else json.dumps(v, sort_keys=True)}")
    for c in report.get("checks", []):
        mark = "PASS" if c["pass"] else "FAIL"
        extra = "" if c["pass"] else f"  {json.dumps(c['witness'], sort_keys=True)}"
        lines.append(f"[{mark}] {c['name']}{extra}")
    for fnd in report.get("findings", []):
        lines.append(f"[finding] {fnd['name']}: {'agrees' if fnd['agrees'] else 'differs'}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        report = fn(args)
    except (InputError, FanError) as e:
        out = {"error": type(e).__name__, "message": str(e), "witness": getattr(e, "witness", None)}
        print(json.dumps(out, sort_keys=True) if args.json else f"error: {type(e).__name__}: {e}",
              file=sys.stdout if args.json else sys.stderr)
        return 2
    except FanihError as e:
        out = {"error": type(e).__name__, "message": str(e), "witness": e.witness}
        print(json.dumps(out, sort_keys=True) if args.json else f"failed: {type(e).__name__}: {e} {json.dumps(e.witness, sort_keys=True)}")
        return 1
    print(json.dumps(report, sort_keys=True) if args.json else render(report))
    return 1 if _failed(report) else 0


if __name__ == "__main__":
    sys.exit(main())
