"""Command-line entry point: ``arrowlab <command> [options]``.

Exit codes: 0 success, 1 input or resource error, 2 a check or bound failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds, cube, generators, metrics, social
from .cube import BooleanFunction
from .errors import ArrowlabError, EncodingError, ResourceError
from .social import Gswf

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2

GLOBAL_DEFAULTS = {
    "seed": 0,
    "samples": 100_000,
    "budget": social.DEFAULT_BUDGET,
    "cap": None,
    "out": None,
    "format": "json",
    "workers": 1,
    "c_surrogate": 1.0,
}


class Violation(Exception):
    """Raised after output is written when a check failed (exit code 2)."""


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    samples: int = 100_000
    budget: int = social.DEFAULT_BUDGET
    cap: int | None = None
    out: str | None = None
    format: str = "json"
    workers: int = 1
    c_surrogate: float = 1.0
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.format not in ("json", "csv"):
            raise EncodingError(f"--format must be json or csv, got {self.format!r}")
        for name in ("samples", "budget", "workers"):
            if getattr(self, name) < 1:
                raise EncodingError(f"--{name} must be positive")
        if self.cap is not None and self.cap < 1:
            raise EncodingError("--cap must be positive")


# --------------------------------------------------------------------------
# file formats

def load_gswf(path: str) -> Gswf:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise EncodingError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise EncodingError(f"{path}: invalid JSON ({exc})") from None
    return gswf_from_json(doc)


def _fn_field(doc: dict, name: str, n: int | None) -> BooleanFunction:
    if name not in doc:
        raise EncodingError(f"GSWF: missing field '{name}'")
    try:
        fn = generators.function_from_json(doc[name])
    except EncodingError as exc:
        raise EncodingError(f"GSWF field '{name}': {exc}") from None
    if n is not None and fn.n != n:
        raise EncodingError(f"GSWF field '{name}': arity {fn.n} does not match n={n}")
    return fn


def gswf_from_json(doc) -> Gswf:
    if not isinstance(doc, dict):
        raise EncodingError("GSWF: expected a JSON object")
    if "k" not in doc:
        raise EncodingError("GSWF: missing field 'k'")
    k = doc["k"]
    if not isinstance(k, int) or k < 3:
        raise EncodingError("GSWF field 'k': must be an integer >= 3")
    n = doc.get("n")
    if n is not None and (not isinstance(n, int) or n < 1):
        raise EncodingError("GSWF field 'n': must be a positive integer")
    if "pairs" in doc:
        pairs = doc["pairs"]
        if not isinstance(pairs, dict):
            raise EncodingError("GSWF field 'pairs': expected an object")
        mapping = {}
        for key in pairs:
            try:
                i, j = (int(t) for t in key.split(","))
            except ValueError:
                raise EncodingError(f"GSWF field 'pairs': bad key {key!r}, expected 'i,j'") from None
            if not (1 <= i < j <= k):
                raise EncodingError(f"GSWF field 'pairs': key {key!r} needs 1 <= i < j <= k")
            mapping[(i, j)] = _fn_field(pairs, key, n)
        expected = math.comb(k, 2)
        if len(mapping) != expected:
            raise EncodingError(f"GSWF field 'pairs': {len(mapping)} entries, expected {expected}")
        return Gswf.from_pairs(k, mapping)
    if k != 3:
        raise EncodingError("GSWF: k > 3 requires the 'pairs' field")
    f = _fn_field(doc, "f12", n)
    g = _fn_field(doc, "f23", n)
    if "f31" in doc:
        h = _fn_field(doc, "f31", n)
    elif "f13" in doc:
        h = cube.dual(_fn_field(doc, "f13", n))
    else:
        raise EncodingError("GSWF: missing field 'f31' (or 'f13')")
    if not f.n == g.n == h.n:
        raise EncodingError("GSWF: choice functions have different arities")
    return Gswf.three(f, g, h)


def gswf_to_json(F: Gswf, specs: dict | None = None) -> dict:
    """Serialise with truth tables, or with generator specs where given."""
    def entry(key, fn):
        if specs and key in specs:
            return specs[key]
        return fn.to_dict()

    if F.k == 3:
        names = ("f12", "f23", "f31")
        doc = {"k": 3, "n": F.n}
        for name, (key, fn) in zip(names, F.pairs.items()):
            doc[name] = entry(key, fn)
        return doc
    return {
        "k": F.k,
        "n": F.n,
        "pairs": {f"{i},{j}": entry((i, j), fn) for (i, j), fn in F.pairs.items()},
    }


def exact_json(fr: Fraction) -> dict:
    return {"num": fr.numerator, "den": fr.denominator}


# --------------------------------------------------------------------------
# output

def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(doc: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    header = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(h)) for h in header])
    return buf.getvalue()


def emit(cfg: RunConfig, doc: dict, rows: list) -> None:
    # JSON carries the CSV rows verbatim next to the structured fields
    doc.setdefault("rows", rows)
    text = render(doc, rows, cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands

def _peek_n(path: str) -> int | None:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None
    n = doc.get("n") if isinstance(doc, dict) else None
    return n if isinstance(n, int) else None


def cmd_pnt(cfg: RunConfig) -> None:
    methods = cfg.args["methods"]
    unknown = set(methods) - {"exact", "symmetric", "fourier", "mc"}
    if unknown:
        raise EncodingError(f"--methods: unknown method(s) {sorted(unknown)}")
    n_decl = _peek_n(cfg.args["input"])
    if "exact" in methods and n_decl is not None:
        social._check_budget(3, n_decl, cfg.budget)
    F = load_gswf(cfg.args["input"])
    results = {}
    rows = []
    if "exact" in methods:
        fr = social.p_nontransitive_exact(F, cfg.budget, method="enumerate")
        results["exact"] = {"value": float(fr), "exact": exact_json(fr)}
    if "symmetric" in methods:
        fr = social.p_nontransitive_exact(F, cfg.budget, method="symmetric")
        results["symmetric"] = {"value": float(fr), "exact": exact_json(fr)}
    if "fourier" in methods:
        results["fourier"] = {"value": social.p_nontransitive_fourier(F)}
    if "mc" in methods:
        est = social.p_nontransitive_mc(F, cfg.samples, cfg.seed, cfg.workers)
        results["mc"] = {"value": est.estimate, **est.to_dict()}
    ref_name = next((m for m in ("exact", "symmetric") if m in results), None)
    tol = cfg.args["tol"]
    disagree = False
    for name, res in results.items():
        delta = None
        if ref_name and name != ref_name:
            ref = results[ref_name]["exact"]
            delta = res["value"] - ref["num"] / ref["den"]
            if name == "mc":
                lo, hi = res["ci95"]
                truth = ref["num"] / ref["den"]
                res["covers_exact"] = lo <= truth <= hi
            elif abs(delta) > tol:
                disagree = True
        res["delta"] = delta
        row = {"method": name, "value": res["value"], "delta": delta}
        if "exact" in res:
            row.update(num=res["exact"]["num"], den=res["exact"]["den"])
        if name == "mc":
            row.update(ci_low=res["ci95"][0], ci_high=res["ci95"][1], samples=res["samples"])
        rows.append(row)
    doc = {"command": "pnt", "k": F.k, "n": F.n, "results": results, "tolerance": tol,
           "agree": not disagree}
    emit(cfg, doc, rows)
    if disagree:
        raise Violation("methods disagree beyond tolerance")


def cmd_distance(cfg: RunConfig) -> None:
    F = load_gswf(cfg.args["input"])
    rep = metrics.distance_report(F, cfg.budget, not cfg.args["no_antidictators"],
                                  cfg.samples, cfg.seed)
    doc = {"command": "distance", "n": F.n, **rep.to_dict(),
           "include_antidictators": not cfg.args["no_antidictators"]}
    rows = []
    for name, dist in (("d1", rep.d1), ("d2", rep.d2), ("d2_prime", rep.d2_prime)):
        rows.append({"quantity": name, "value": dist.value, "method": dist.method,
                     "witness": json.dumps(dist.witness, sort_keys=True)})
    emit(cfg, doc, rows)


CHECKS = ("lemma-main", "thm41", "thm42", "rhc", "bb-upper")


def cmd_bounds(cfg: RunConfig) -> None:
    F = load_gswf(cfg.args["input"])
    checks = cfg.args["check"] or ["lemma-main", "thm41", "thm42"]
    reports = []
    for name in checks:
        if name == "lemma-main":
            reports.append((name, bounds.check_lemma_main(F, budget=cfg.budget)))
        elif name == "thm41":
            reports.append((name, bounds.check_thm41(F, cfg.c_surrogate, cfg.budget)))
        elif name == "thm42":
            reports.append((name, bounds.check_thm42(F, cfg.c_surrogate, cfg.budget)))
        elif name in ("rhc", "bb-upper"):
            fns = list(F.pairs.items())
            for (ka, fa), (kb, fb) in zip(fns, fns[1:] + fns[:1]):
                rep = (bounds.rhc_lower_check(fa, fb) if name == "rhc"
                       else bounds.bb_upper_check(fa, fb))
                reports.append((f"{name}:{ka[0]}{ka[1]}~{kb[0]}{kb[1]}", rep))
        else:
            raise EncodingError(f"--check: unknown check {name!r}")
    docs = [{"check": name, **r.to_dict()} for name, r in reports]
    rows = [{k: v for k, v in d.items() if k != "notes"} for d in docs]
    emit(cfg, {"command": "bounds", "reports": docs}, rows)
    if not all(r.holds(1e-12) for _, r in reports):
        raise Violation("a bound was violated")


FUNCTION_TYPES = ("threshold", "dictator", "constant", "majority", "random")
CONSTRUCTIONS = ("tightness-main1", "tightness-main2", "minimal-p", "tail-majority",
                 "dictatorship", "random-gswf", "majority3")


def cmd_gen(cfg: RunConfig) -> None:
    a = cfg.args
    kind = a["kind"]
    n = a["n"]
    if n is None:
        raise EncodingError("gen: --n is required")
    if kind in FUNCTION_TYPES:
        params = {"n": n}
        if kind == "threshold":
            if a["l"] is None:
                raise EncodingError("gen threshold: --l is required")
            params["l"] = a["l"]
        elif kind == "dictator":
            params.update(voter=a["voter"], negate=a["negate"])
        elif kind == "constant":
            params["value"] = a["value"]
        elif kind == "random":
            params["seed"] = cfg.seed
        fn = generators.GeneratorSpec(kind, params).build()
        emit(cfg, fn.to_dict(), [fn.to_dict()])
        return
    specs = None
    meta = {}
    if kind in ("tightness-main1", "tightness-main2", "minimal-p", "tail-majority"):
        if kind.startswith("tightness"):
            if a["eps"] is None:
                raise EncodingError(f"gen {kind}: --eps is required")
            build = generators.tightness_main1 if kind.endswith("1") else generators.tightness_main2
            try:
                con = build(n, a["eps"])
            except ValueError as exc:
                raise EncodingError(f"gen {kind}: {exc}") from None
        else:
            build = generators.minimal_p_gswf if kind == "minimal-p" else generators.tail_majority_gswf
            try:
                con = build(n)
            except ValueError as exc:
                raise EncodingError(f"gen {kind}: {exc}") from None
        F = con.gswf
        if not a["tables"]:
            specs = {key: {"type": "threshold", "n": n, "l": l}
                     for key, l in zip(F.pairs, con.levels)}
        meta = {"levels": list(con.levels), "eps_achieved": con.eps_achieved}
        if con.eps_requested is not None:
            meta["eps_requested"] = con.eps_requested
    elif kind == "dictatorship":
        F = generators.dictatorship_gswf(n, a["voter"], a["negate"])
    elif kind == "majority3":
        m = generators.majority(n)
        F = Gswf.three(m, m, m)
    else:
        import numpy as np
        F = generators.random_gswf(n, np.random.default_rng(cfg.seed), a["k"])
    doc = gswf_to_json(F, specs)
    if meta:
        doc["meta"] = meta
    row = {"k": F.k, "n": F.n, **{k: v for k, v in meta.items() if not isinstance(v, list)}}
    emit(cfg, doc, [row])


def _parse_grid(a: dict) -> list:
    if a["grid"]:
        try:
            grid = [float(t) for t in a["grid"].split(",") if t.strip()]
        except ValueError:
            raise EncodingError(f"--grid: not a comma-separated list of numbers: {a['grid']!r}") from None
    elif a["grid_log2"]:
        try:
            lo, hi = (int(t) for t in a["grid_log2"].split(":"))
        except ValueError:
            raise EncodingError("--grid-log2 expects LO:HI") from None
        grid = [2.0**-k for k in range(lo, hi + 1)]
    else:
        grid = []
    if not grid:
        raise EncodingError("tightness: empty epsilon grid (use --grid or --grid-log2)")
    return grid


def cmd_tightness(cfg: RunConfig) -> None:
    a = cfg.args
    theorem = a["theorem"]
    n = a["n"]
    if n is None:
        raise EncodingError("tightness: --n is required")
    grid = _parse_grid(a)
    rows = []
    for eps in grid:
        row = {"eps": eps}
        try:
            con = (generators.tightness_main1 if theorem == "main1" else generators.tightness_main2)(n, eps)
        except ValueError as exc:
            row["flag"] = f"granularity: {exc}"
            rows.append(row)
            continue
        F = con.gswf
        e = con.eps_achieved
        if a["p_method"] == "fourier":
            p = social.p_nontransitive_fourier(F)
        else:
            p = float(social.p_nontransitive_exact(F, cfg.budget, method="symmetric"))
        L = math.log2(1 / e)
        if theorem == "main1":
            dist = metrics.d1(F, cfg.budget, cfg.samples, cfg.seed).value
            lower = min(cfg.c_surrogate, bounds.THM41_COEFF * e**3)
            trend_x = e**3 * L
        else:
            dist = metrics.d2(F).value
            lower = min(cfg.c_surrogate, bounds.rhc(0.5, e) / 5000)
            trend_x = bounds.rhc(0.5, e) * L
        row.update(eps_achieved=e, levels=" ".join(map(str, con.levels)),
                   distance=dist, p=p, lower_bound=lower, lower_ok=p >= lower,
                   ratio_lower=p / lower, trend_x=trend_x, flag="")
        rows.append(row)
    good = [r for r in rows if "p" in r]
    fit = (sum(r["p"] * r["trend_x"] for r in good) / sum(r["trend_x"] ** 2 for r in good)
           if good else None)
    for r in good:
        r["upper_trend"] = fit * r["trend_x"]
        r["ratio_trend"] = r["p"] / r["upper_trend"]
    doc = {"command": "tightness", "theorem": theorem, "n": n, "fit_C": fit, "p_method": a["p_method"],
           "distance_name": "d1" if theorem == "main1" else "d2", "rows": rows}
    emit(cfg, doc, rows)
    if any(not r["lower_ok"] for r in good):
        raise Violation("a lower bound was violated")


def cmd_split(cfg: RunConfig) -> None:
    F = load_gswf(cfg.args["input"])
    voter = cfg.args["voter"]
    parts = social.split_by_voter(F, voter)
    rows = []
    total = Fraction(0)
    for order, G in parts.items():
        fr = social.p_nontransitive_exact(G, cfg.budget)
        total += fr / 6
        rows.append({"ranking": "".join(map(str, order)), "value": float(fr),
                     "num": fr.numerator, "den": fr.denominator})
    whole = social.p_nontransitive_exact(F, cfg.budget)
    rows.append({"ranking": "average", "value": float(total),
                 "num": total.numerator, "den": total.denominator})
    rows.append({"ranking": "whole", "value": float(whole),
                 "num": whole.numerator, "den": whole.denominator})
    doc = {"command": "split", "voter": voter, "parts": rows[:-2],
           "average": exact_json(total), "whole": exact_json(whole),
           "equal": total == whole}
    emit(cfg, doc, rows)
    if total != whole:
        raise Violation("split identity failed")


def cmd_identity(cfg: RunConfig) -> None:
    F = load_gswf(cfg.args["input"])
    terms = social.modified_identity_terms(F)
    p = social.p_nontransitive_fourier(F)
    d = terms.to_dict()
    d1 = d["first_total"] - p
    d2 = d["second_total"] - p
    tol = cfg.args["tol"]
    doc = {"command": "identity-check", "p_fourier": p, **d,
           "delta_first": d1, "delta_second": d2, "tolerance": tol}
    rows = [
        {"form": "first", "t_plus_1": terms.first[0], "t_plus_2": terms.first[1],
         "t_minus": terms.first[2], "total": d["first_total"], "p_fourier": p, "delta": d1},
        {"form": "second", "t_plus_1": terms.second[0], "t_plus_2": terms.second[1],
         "t_minus": terms.second[2], "total": d["second_total"], "p_fourier": p, "delta": d2},
    ]
    emit(cfg, doc, rows)
    if max(abs(d1), abs(d2)) > tol:
        raise Violation("identity mismatch")


def cmd_asymptote(cfg: RunConfig) -> None:
    """Closed-form limits plus a finite-n look at opposed Hamming balls."""
    import numpy as np

    rows = []
    for L in cfg.args["log2_points"]:
        expo = bounds.main2_exponent_log2(L)
        log_r = bounds.log_rhc(math.log(0.5), -L * math.log(2))
        rows.append({"kind": "exponent", "log2_inv_eps": L, "exponent": expo,
                     "rhc_half_root": math.exp(log_r / L), "limit": 2 ** (-9 / 8)})
    n = cfg.args["n"]
    if n:
        cube.check_arity(n)
        pc = cube.popcounts(n)
        for eps in cfg.args["eps"]:
            s = math.sqrt(2 * math.log(1 / eps))
            cut = s / 2 * math.sqrt(n)
            f = BooleanFunction(n, (pc <= n / 2 - cut).astype(np.uint8))
            g = BooleanFunction(n, (pc >= n / 2 + cut).astype(np.uint8))
            val = cube.noise_correlation(f, g, 1 / 3)
            lim = bounds.asymptotic_corr_bound(s, s)
            rows.append({"kind": "hamming-balls", "n": n, "eps": eps, "s": s,
                         "mass": f.expectation, "correlation": val, "limit_bound": lim,
                         "ratio": val / lim})
    emit(cfg, {"command": "asymptote", "rows": rows}, rows)


COMMANDS = {
    "pnt": cmd_pnt,
    "distance": cmd_distance,
    "bounds": cmd_bounds,
    "gen": cmd_gen,
    "tightness": cmd_tightness,
    "split": cmd_split,
    "identity-check": cmd_identity,
    "asymptote": cmd_asymptote,
}


# --------------------------------------------------------------------------
# argument parsing

def _csv_floats(s: str) -> list:
    return [float(t) for t in s.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--seed", type=int)
    g.add_argument("--samples", type=int, help="Monte Carlo samples")
    g.add_argument("--budget", type=int, help="max profiles for exact enumeration")
    g.add_argument("--cap", type=int, help="max arity for dense operations")
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--workers", type=int, help="Monte Carlo worker threads")
    g.add_argument("--c-surrogate", dest="c_surrogate", type=float,
                   help="surrogate constant C for the theorem checks")
    g.add_argument("--config", help="JSON file with defaults for these options")

    parser = argparse.ArgumentParser(prog="arrowlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pnt", parents=[common], help="probability of a non-transitive outcome")
    p.add_argument("input")
    p.add_argument("--methods", type=lambda s: s.split(","), default=["exact", "fourier"],
                   help="comma list of exact,symmetric,fourier,mc")
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("distance", parents=[common], help="D1, D2 and D2'")
    p.add_argument("input")
    p.add_argument("--no-antidictators", action="store_true")

    p = sub.add_parser("bounds", parents=[common], help="check inequalities on a GSWF")
    p.add_argument("input")
    p.add_argument("--check", action="append", choices=CHECKS)

    p = sub.add_parser("gen", parents=[common], help="write a function or GSWF file")
    p.add_argument("kind", choices=FUNCTION_TYPES + CONSTRUCTIONS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int)
    p.add_argument("--voter", type=int, default=1)
    p.add_argument("--negate", action="store_true")
    p.add_argument("--value", type=int, default=1)
    p.add_argument("--eps", type=float)
    p.add_argument("--tables", action="store_true", help="emit truth tables, not generator specs")

    p = sub.add_parser("tightness", parents=[common], help="tightness sweep as CSV/JSON")
    p.add_argument("--theorem", choices=("main1", "main2"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--grid", help="comma-separated eps values")
    p.add_argument("--grid-log2", dest="grid_log2", help="LO:HI for eps = 2^-LO .. 2^-HI")
    p.add_argument("--p-method", dest="p_method", choices=("exact", "fourier"), default="exact",
                   help="exact weight counting or the Fourier formula for P(F)")

    p = sub.add_parser("split", parents=[common], help="split P(F) on one voter")
    p.add_argument("input")
    p.add_argument("--voter", type=int, default=1)

    p = sub.add_parser("identity-check", parents=[common], help="rewritten forms of P(F)")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("asymptote", parents=[common], help="closed-form limits")
    p.add_argument("--log2-points", dest="log2_points", type=_csv_floats,
                   default=[1, 2, 4, 8, 16, 64, 1e3, 1e6])
    p.add_argument("--n", type=int, default=0, help="also compare Hamming balls at this n")
    p.add_argument("--eps", type=_csv_floats, default=[1 / 16])
    return parser


def make_config(ns: argparse.Namespace) -> RunConfig:
    values = dict(GLOBAL_DEFAULTS)
    if ns.config:
        try:
            loaded = json.loads(Path(ns.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise EncodingError(f"--config: {exc}") from None
        if not isinstance(loaded, dict):
            raise EncodingError("--config: expected a JSON object")
        for key, val in loaded.items():
            key = key.replace("-", "_")
            if key not in values:
                raise EncodingError(f"--config: unknown field '{key}'")
            values[key] = val
    for key in GLOBAL_DEFAULTS:
        val = getattr(ns, key, None)
        if val is not None:
            values[key] = val
    extra = {k: v for k, v in vars(ns).items()
             if k not in GLOBAL_DEFAULTS and k not in ("config", "command")}
    return RunConfig(command=ns.command, args=extra, **values)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = make_config(ns)
        cube.set_cap(cfg.cap)
        COMMANDS[cfg.command](cfg)
    except Violation as exc:
        print(f"arrowlab: check failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except ResourceError as exc:
        print(f"arrowlab: resource limit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArrowlabError, ValueError) as exc:
        print(f"arrowlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        cube.set_cap(None)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
