"""Command-line front end.  Every run produces one report; exit codes are
0 (all checks pass), 1 (some check fails) and 2 (bad input)."""
from __future__ import annotations

import argparse
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import classify_fpp, cubic, embeddings, models, projections, walpha
from .errors import (
    DomainError, NormTooLarge, NotAMember, NotInSPlus, NotUnitNorm, ParseError, PreconditionViolated,
    ResultNotRepresentable, StructureViolation, WitnessInvalid, WrongKind,
)
from .sampling import random_members
from .seqcore import DualVec, PrimalVec, format_dualvec, format_primalvec, parse_dualvec, parse_primalvec, parse_rational

PASS, FAIL, UNDECIDED = "pass", "fail", "undecided"
INPUT_ERRORS = (
    ParseError, DomainError, PreconditionViolated, WrongKind, NormTooLarge, NotInSPlus, WitnessInvalid,
    StructureViolation, KeyError, OSError, json.JSONDecodeError,
)


def _show(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, DualVec):
        return format_dualvec(v)
    if isinstance(v, PrimalVec):
        return format_primalvec(v)
    if isinstance(v, (list, tuple)):
        return [_show(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _show(x) for k, x in v.items()}
    if isinstance(v, walpha.Bracket):
        return str(v)
    return v


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = {k: _show(v) for k, v in inputs.items()}
        self.checks: list = []
        self.values: dict = {}

    def check(self, name: str, ok, witness="") -> None:
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        self.checks.append({"name": name, "status": status, "witness": str(_show(witness)) if witness != "" else ""})

    def value(self, key: str, v) -> None:
        self.values[key] = _show(v)

    @property
    def exit_code(self) -> int:
        return 1 if any(c["status"] == FAIL for c in self.checks) else 0

    def as_dict(self, deterministic: bool) -> dict:
        d = {"command": self.command, "inputs": self.inputs, "values": self.values,
             "checks": self.checks, "exit_code": self.exit_code}
        if not deterministic:
            d["timestamp"] = datetime.now(timezone.utc).isoformat()
        return d

    def render(self, as_json: bool, deterministic: bool) -> str:
        d = self.as_dict(deterministic)
        if as_json:
            return json.dumps(d, ensure_ascii=False)
        lines = [f"command: {self.command}"]
        lines += [f"  input {k} = {v}" for k, v in self.inputs.items()]
        for k, v in self.values.items():
            if isinstance(v, list) and v and isinstance(v[0], list):
                lines.append(f"{k}:")
                lines += ["  " + "  ".join(str(c) for c in row) for row in v]
            else:
                lines.append(f"{k} = {v}")
        lines += [f"[{c['status']}] {c['name']}" + (f"  ({c['witness']})" if c["witness"] else "") for c in self.checks]
        lines.append(f"exit_code = {self.exit_code}")
        if "timestamp" in d:
            lines.append(f"timestamp = {d['timestamp']}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_classify(a):
    alpha = parse_dualvec(a.alpha)
    rep = Report("classify", {"alpha": alpha})
    cr = walpha.classify(alpha)
    for k, v in cr.as_dict().items():
        rep.value(k, v)
    rep.value("notes", cr.notes)
    implications = [
        (not cr.in_C or (cr.in_A and cr.in_M)),
        (not cr.in_C0 or (cr.in_A0 and cr.in_M)),
        (not cr.in_A or cr.in_A0),
        (not cr.in_M or cr.in_G == walpha.YES),
    ]
    rep.check("class lattice implications", all(implications))
    return rep


def cmd_rstar(a):
    alpha = parse_dualvec(a.alpha)
    rep = Report("rstar", {"alpha": alpha})
    rep.value("rstar", walpha.rstar(alpha))
    return rep


def cmd_distance(a):
    r = parse_rational(a.r)
    rep = Report("distance", {"r": r})
    d = walpha.bm_distance_c(r)
    rep.value("distance", d)
    rep.check("value in [1, 3]", 1 <= d <= 3, d)
    return rep


def cmd_projconst(a):
    alpha = parse_dualvec(a.alpha)
    rep = Report("projconst", {"alpha": alpha, "depth": a.depth})
    b = walpha.projection_constant_bound(alpha, a.depth)
    rep.value("bound", b)
    rep.value("exact", b.exact)
    rep.check("bound in [1, 2]", 1 <= b.lo <= b.hi <= 2, b)
    return rep


def cmd_containsc(a):
    alpha = parse_dualvec(a.alpha)
    rep = Report("containsc", {"alpha": alpha})
    rep.value("contains_c", walpha.contains_c(alpha))
    return rep


def cmd_fpp(a):
    alpha = parse_dualvec(a.alpha)
    eps = parse_rational(a.eps) if a.eps else None
    rep = Report("fpp", {"alpha": alpha, "eps": eps if eps is not None else ""})
    v = walpha.fpp_verdict(alpha, eps)
    rep.value("rstar", v.rstar)
    rep.value("verdict", v.verdict)
    if v.r_needed is not None:
        rep.value("r_for_almost_isometric_c", v.r_needed)
        rep.check("(3-r)/(1+r) <= 1+eps", walpha.bm_distance_c(v.r_needed) <= 1 + eps, walpha.bm_distance_c(v.r_needed))
    if walpha.contains_c(alpha):
        rep.check("copy of c implies failure", v.verdict == walpha.FAILS)
    return rep


def _embedding(a):
    alpha = parse_dualvec(a.alpha) if getattr(a, "alpha", None) else None
    beta = parse_dualvec(a.beta) if getattr(a, "beta", None) else None
    kind = getattr(a, "kind", "general")
    if kind == "general":
        return embeddings.embed_general(beta, alpha)
    if kind == "re1":
        return embeddings.embed_re1_into_alpha(alpha, parse_rational(a.r))
    if kind == "prepend":
        return embeddings.embed_beta_into_re1(beta, parse_rational(a.r))
    if kind == "finite":
        return embeddings.embed_finite_support(alpha)
    raise ParseError(f"unknown embedding kind {kind}")


def _embedding_inputs(a) -> dict:
    d = {"kind": a.kind}
    for k in ("beta", "alpha", "r"):
        if getattr(a, k, None):
            d[k] = getattr(a, k)
    return d


def cmd_embed(a):
    e = _embedding(a)
    rep = Report("embed", _embedding_inputs(a) | {"samples": a.samples, "seed": a.seed})
    rep.value("source_alpha", e.source.alpha)
    rep.value("target_alpha", e.target.alpha)
    rep.value("type", e.kind)
    for k in ("K", "s", "N", "r"):
        if k in e.params:
            rep.value(k, e.params[k])
    samples = random_members(e.source.alpha, a.samples, a.seed)
    iso = embeddings.verify_isometry(e, samples)
    rep.check(f"isometry on {iso.checked} samples", iso.passed, iso.failures[0] if iso.failures else "")
    comp = embeddings.component_property_check(e, samples)
    rep.check(f"component property ({comp.checked} coordinates)", comp.passed, comp.failures[0] if comp.failures else "")
    return rep


def cmd_kernel(a):
    beta = parse_dualvec(a.beta)
    r = parse_rational(a.r)
    e = embeddings.embed_beta_into_re1(beta, r)
    f = embeddings.hyperplane_kernel_functional(e)
    rep = Report("kernel", {"beta": beta, "r": r, "samples": a.samples, "seed": a.seed})
    rep.value("f", f)
    from .seqcore import pairing

    bad = [w for w in random_members(beta, a.samples, a.seed) if pairing(f, e.apply(w)) != 0]
    rep.check(f"f vanishes on T(W_beta) ({a.samples} samples)", not bad, bad[0] if bad else "")
    return rep


def cmd_components(a):
    e = _embedding(a)
    rep = Report("components", _embedding_inputs(a) | {"count": a.count})
    rep.value("components", [[n, *e.components(n)] for n in range(1, a.count + 1)])
    samples = random_members(e.source.alpha, 10, a.seed)
    comp = embeddings.component_property_check(e, samples)
    rep.check("component property on 10 samples", comp.passed, comp.failures[0] if comp.failures else "")
    return rep


def cmd_matrix(a):
    alpha = parse_dualvec(a.alpha)
    m = cubic.RepresentingMatrix(alpha)
    rep = Report("matrix", {"alpha": alpha, "nmax": a.nmax})
    rep.value("a(i,n) by column n", [[str(v) for v in m.column(n)] for n in range(1, a.nmax + 1)])
    worst = max(m.row_sum(n) for n in range(1, a.nmax + 1))
    rep.check("sum_i |a(i,n)| <= 1", worst <= 1, worst)
    rep.check("e_i^n members of W_alpha",
              all(cubic.is_member(m, m.basis_vector(i, n)) for n in range(1, a.nmax + 1) for i in range(1, n + 1)))
    return rep


def cmd_delta(a):
    alpha = parse_dualvec(a.alpha)
    m = cubic.RepresentingMatrix(alpha)
    rep = Report("delta", {"alpha": alpha, "kmax": a.kmax, "nmax": a.nmax})
    table, agree, expand = [], True, True
    for k in range(1, a.kmax + 1):
        for w in range(1, a.nmax + 1):
            d, r = m.delta_direct(k, w), m.delta_recursive(k, w)
            agree &= d == r
            table.append([k, w, str(d), str(r), d == r])
        coeffs = m.expand_in_basis(k, k + a.nmax)
        expand &= all(coeffs[j - 1] == m.delta_direct(k, j - k) for j in range(k + 1, k + a.nmax + 1))
    rep.value("table (k, window, direct, recursive, equal)", table)
    rep.check("direct == recursive", agree)
    rep.check("expansion coefficients == Delta", expand)
    return rep


def cmd_limitcheck(a):
    alpha = parse_dualvec(a.alpha)
    tol = parse_rational(a.tol)
    m = cubic.RepresentingMatrix(alpha)
    rep = Report("limitcheck", {"alpha": alpha, "k": a.k, "tol": tol})
    r = cubic.limit_condition_check(m, a.k, tol)
    for key in ("eps", "N", "M", "n", "J", "delta", "series", "residual", "tail_bound"):
        rep.value(key, getattr(r, key))
    rep.check("residual <= tol", r.passed, r.residual)
    return rep


def _primal_projection(a):
    if a.which == "thm71":
        return projections.thm71_projection(parse_dualvec(a.alpha), parse_rational(a.eps))
    if a.which == "shift":
        return projections.thm43_shift_projection()
    if a.which == "identity":
        return projections.identity_primal_projection(parse_dualvec(a.alpha) if a.alpha else None)
    raise ParseError(f"unknown projection {a.which}")


def _load_l1(a):
    if a.catalog:
        table = {
            "example-5.14": projections.example_5_14_projection,
            "dyadic": projections.block_average_projection,
            "identity": projections.identity_projection,
        }
        return table[a.catalog]()
    with open(a.spec) as fh:
        data = json.load(fh)
    return projections.build_l1_projection([b["sigma"] for b in data["blocks"]], [b["u"] for b in data["blocks"]])


def cmd_project(a):
    if a.which == "l1":
        rep = Report("project", {"which": "l1", "spec": a.spec or "", "catalog": a.catalog or ""})
        p = _load_l1(a)
        rep.check("structure (a)-(d), disjointness, norms", True)
        if a.alpha:
            alpha = parse_dualvec(a.alpha)
            rb = projections.recover_beta(p, alpha, lambda n: n + a.index_shift, a.length)
            rep.value("beta", rb.beta)
            rep.value("recognized", rb.recognized)
            rep.check("tail recognized", rb.recognized or UNDECIDED)
        return rep
    p = _primal_projection(a)
    rep = Report("project", {"which": a.which, "alpha": a.alpha or "", "eps": a.eps or "", "probe": a.probe})
    for k, v in p.extras.items():
        if k != "Q":
            rep.value(k, v)
    bound, certified = projections.operator_norm_upper(p, a.probe)
    rep.value("norm_bound", bound)
    rep.value("certified", certified)
    if a.which == "thm71":
        eps = parse_rational(a.eps)
        rep.check("certified |P| <= 1 + eps", certified and bound <= 1 + eps, bound)
        alpha = parse_dualvec(a.alpha)
        xs = random_members(alpha, a.samples, a.seed)
        rep.check("P o P = P", all(p.apply(p.apply(x)) == p.apply(x) for x in xs))
        ws = random_members(p.embedding.source.alpha, a.samples, a.seed)
        rep.check("P fixes the embedded copy", all(p.apply(p.embedding.apply(w)) == p.embedding.apply(w) for w in ws))
    else:
        rep.check("certified bound", certified, bound)
    return rep


def cmd_opnorm(a):
    p = _primal_projection(a)
    rep = Report("opnorm", {"which": a.which, "alpha": a.alpha or "", "eps": a.eps or "", "probe": a.probe})
    bound, certified = projections.operator_norm_upper(p, a.probe)
    rep.value("bound", bound)
    rep.value("certified", certified)
    rep.check("certified", certified or UNDECIDED, bound)
    return rep


def _parse_member(text: str) -> models.Member:
    if text.strip() == "all-ones":
        return models.ALL_ONES
    if text.strip() == "zero":
        return models.Member()
    parts = text.split("|")
    if len(parts) != 2:
        raise ParseError("member must be 'all-ones', 'zero' or '<row1> | <row2>'")
    return models.Member(parse_primalvec(parts[0]), parse_primalvec(parts[1]))


def _load_model(a) -> models.Omega2Model:
    if a.file:
        with open(a.file) as fh:
            data = json.load(fh)
        x1 = models.RowFunctional(*(parse_dualvec(s) for s in data["x1"]))
        x2 = models.RowFunctional(*(parse_dualvec(s) for s in data["x2"]))
        return models.build_model(x1, x2, data.get("name", a.file))
    if not a.model:
        raise ParseError("give a catalog id or --file")
    return models.catalog(a.model)


def cmd_model(a):
    m = _load_model(a)
    rep = Report("model", {"model": m.name, "check": a.check, "witness": a.witness, "which": a.which, "row": a.row})
    rep.value("x1", [m.x1.row1, m.x1.row2])
    rep.value("x2", [m.x2.row1, m.x2.row2])
    f = _parse_member(a.witness)
    if a.check == "membership":
        rep.check("membership", models.model_membership(m, f), a.witness)
    elif a.check == "rstar":
        rep.value("rstar", models.model_rstar(m))
    elif a.check == "S":
        rep.check(f"(S) for row {a.row}", models.condition_S_check(m, a.row))
    elif a.check == "P":
        try:
            ok = models.condition_P_witness_check(m, f, a.which)
            rep.check(f"(P) witness for x{a.which}*", ok, a.witness)
        except (NotAMember, NotUnitNorm) as exc:
            rep.check(f"(P) witness for x{a.which}*", FAIL, exc)
        if models.condition_P_obstruction(m, a.which):
            rep.value("P_obstruction", f"x{a.which}* alternates in sign on a row; no unit vector attains its norm")
    elif a.check == "cor41":
        try:
            r = models.cor41_witness_check(m, f, a.row)
        except NotAMember as exc:
            rep.check("(3) attainment", FAIL, exc)
        else:
            rep.check("(1) basis row converges to cluster", r.cluster_identified)
            rep.check("(2) disjoint supports", r.disjoint)
            rep.check("(3) attainment", r.attains, "; ".join(r.failures))
    return rep


def cmd_splus_demo(a):
    x = parse_dualvec(a.x)
    rep = Report("splus-demo", {"x": x, "samples": a.samples, "seed": a.seed})
    sx = classify_fpp.SPlusVec(x)
    tx = classify_fpp.shift_splus(sx)
    rep.value("Tx", tx.vec)
    rep.check("Tx in S+ with norm 1", tx.vec.l1_norm() == 1)
    rep.check("Tx != x", not classify_fpp.has_fixed_point(sx))
    rng = random.Random(a.seed)
    bad = None
    for _ in range(a.samples):
        u, v = _random_splus(rng), _random_splus(rng)
        if classify_fpp.l1_distance(classify_fpp.shift_splus(u), classify_fpp.shift_splus(v)) != classify_fpp.l1_distance(u, v):
            bad = (u.vec, v.vec)
            break
    rep.check(f"isometry on {a.samples} random pairs", bad is None, bad or "")
    return rep


def _random_splus(rng: random.Random) -> classify_fpp.SPlusVec:
    w = [Fraction(rng.randint(0, 9)) for _ in range(rng.randint(1, 6))]
    if not any(w):
        w[0] = Fraction(1)
    total = sum(w)
    return classify_fpp.SPlusVec(DualVec(tuple(v / total for v in w)))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as one JSON object")
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="wspaces", description="Exact computations with hyperplanes W_alpha of c.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, h in [
        ("classify", cmd_classify, "class membership flags"),
        ("rstar", cmd_rstar, "the r* invariant"),
        ("containsc", cmd_containsc, "isometric copy of c"),
    ]:
        add(name, fn, h).add_argument("--alpha", required=True)
    add("distance", cmd_distance, "d(c, W_{r e1*})").add_argument("--r", required=True)
    sp = add("projconst", cmd_projconst, "projection constant bound")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--depth", type=int, default=0)
    sp = add("fpp", cmd_fpp, "stable w*-FPP verdict")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--eps")

    for name, fn, h in [("embed", cmd_embed, "build and verify an embedding"),
                        ("components", cmd_components, "index map n -> k_n")]:
        sp = add(name, fn, h)
        sp.add_argument("--kind", choices=["general", "re1", "prepend", "finite"], default="general")
        sp.add_argument("--alpha")
        sp.add_argument("--beta")
        sp.add_argument("--r")
        if name == "embed":
            sp.add_argument("--samples", type=int, default=50)
        else:
            sp.add_argument("--count", type=int, default=10)
    sp = add("kernel", cmd_kernel, "kernel functional of x -> (lim x / r, x)")
    sp.add_argument("--beta", required=True)
    sp.add_argument("--r", required=True)
    sp.add_argument("--samples", type=int, default=20)

    sp = add("matrix", cmd_matrix, "representing matrix window")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--nmax", type=int, default=6)
    sp = add("delta", cmd_delta, "Delta table, direct vs recursive")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--kmax", type=int, default=4)
    sp.add_argument("--nmax", type=int, default=4)
    sp = add("limitcheck", cmd_limitcheck, "quantitative limit condition")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--tol", default="1/100")

    for name, fn, h in [("project", cmd_project, "build a projection"), ("opnorm", cmd_opnorm, "operator norm bound")]:
        sp = add(name, fn, h)
        choices = ["thm71", "shift", "identity"] + (["l1"] if name == "project" else [])
        sp.add_argument("which", choices=choices)
        sp.add_argument("--alpha")
        sp.add_argument("--eps")
        sp.add_argument("--probe", type=int, default=64)
        if name == "project":
            sp.add_argument("--samples", type=int, default=20)
            sp.add_argument("--spec", help="JSON file with blocks [{sigma: {i: lambda}, u: {h: value}}]")
            sp.add_argument("--catalog", choices=["example-5.14", "dyadic", "identity"])
            sp.add_argument("--index-shift", type=int, default=1, help="k_n = n + shift for recovery")
            sp.add_argument("--length", type=int, default=50)

    sp = add("model", cmd_model, "two-constraint models")
    sp.add_argument("model", nargs="?", help="example-4.2 | example-6.7 | example-6.8 | remark-6.4 | example-9.3(r1,r2)")
    sp.add_argument("--file", help="JSON with x1 and x2 as [row1, row2] vector strings")
    sp.add_argument("--check", choices=["membership", "rstar", "S", "P", "cor41"], default="rstar")
    sp.add_argument("--witness", default="all-ones")
    sp.add_argument("--which", type=int, choices=[1, 2], default=1)
    sp.add_argument("--row", type=int, choices=[1, 2], default=1)

    sp = add("splus-demo", cmd_splus_demo, "fixed-point-free isometry of S+")
    sp.add_argument("--x", default="tail=geom(1/2,1/2)")
    sp.add_argument("--samples", type=int, default=100)
    return p


def run(argv=None) -> tuple:
    """Returns (exit_code, rendered report or diagnostic)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        rep = args.fn(args)
    except INPUT_ERRORS as exc:
        msg = f"error: {type(exc).__name__}: {exc}"
        if args.json:
            msg = json.dumps({"command": args.command, "error": msg, "exit_code": 2})
        return 2, msg
    except ResultNotRepresentable as exc:
        return 2, f"error: result leaves the closed-form class: {exc}"
    return rep.exit_code, rep.render(args.json, args.deterministic)


def main(argv=None) -> int:
    code, out = run(argv)
    if out:
        to_stderr = code == 2 and not out.startswith("{")
        print(out, file=sys.stderr if to_stderr else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
