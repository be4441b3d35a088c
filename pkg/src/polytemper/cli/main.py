"""``polytemper`` command-line interface.

Exit codes: 0 success, 1 golden mismatch, 2 usage or parameter error,
3 config schema error, 4 numeric or insufficient-data error, 5 resource cap.
"""

from __future__ import annotations

import argparse
import math
import sys
from importlib import resources

import numpy as np

from .. import verdicts as V
from ..cartan_orbit import (
    critical_exponent,
    directional_growth,
    enumerate_ball,
    limit_cone_stats,
    product_ball,
    product_sl2_element,
    sl_element,
    write_samples_csv,
)
from ..errors import NotAvailableError, NumericError, ParameterError, PreconditionError, ResourceError
from ..polyhedra import hull, intersect, membership, poly_norm, poly_norm_oracle
from ..root_system import (
    A2,
    B2,
    Preset,
    build_root_system,
    is_hermitian_dominant,
    limit_cone_theorem_applicable,
    product_a1,
)
from ..spherical import check_phi_bound, xi_bounds
from . import examples as EX
from .config import SchemaError, load_config, merge, parse_functional, parse_number, parse_vector, split_family
from .reports import aligned, dumps, envelope, fmt, fmt_vec, write_outputs

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SCHEMA, EXIT_NUMERIC, EXIT_RESOURCE = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------------------

def _overrides(args) -> dict:
    rs = {}
    if getattr(args, "preset", None):
        rs["preset"] = args.preset
    for key in ("m", "n"):
        if getattr(args, key, None) is not None:
            rs[key] = getattr(args, key)
    if getattr(args, "rhos", None):
        rs["rhos"] = parse_vector(args.rhos)
    gen = {}
    if getattr(args, "max_word_length", None) is not None:
        gen["max_word_length"] = args.max_word_length
    if getattr(args, "no_inverses", False):
        gen["include_inverses"] = False
    if getattr(args, "memory_cap", None) is not None:
        gen["memory_cap"] = args.memory_cap
    if getattr(args, "workers", None) is not None:
        gen["workers"] = args.workers
    an = {}
    for key in ("estimator", "aperture", "radius_threshold", "metric_scale", "shell_width",
                "direction_grid", "grid_resolution", "wall_margin"):
        val = getattr(args, key, None)
        if val is not None:
            an[key] = val
    if getattr(args, "modified", False):
        an["modified"] = True
    if getattr(args, "fit_window", None):
        an["fit_window"] = parse_vector(args.fit_window)
    if getattr(args, "direction", None):
        an["direction"] = parse_vector(args.direction)
    mus = getattr(args, "mu_list", None)
    if mus:
        an["mu"] = list(mus)
    out = {}
    if getattr(args, "out", None):
        out["dir"] = args.out
    return {"root_system": rs, "generators": gen, "analysis": an, "output": out}


def _load(args) -> dict:
    doc = load_config(getattr(args, "config", None))
    over = _overrides(args)
    rs = over.get("root_system")
    if rs and "preset" not in rs and "root_system" not in doc:
        # a family-specific flag alone picks its family
        for key, family in (("rhos", "ProductA1"), ("n", "B2_SO2n"), ("m", "A2_family")):
            if key in rs:
                rs["preset"] = family
                break
    return merge(doc, over)


def _infer_preset(cfg: dict) -> Preset:
    if "root_system" in cfg:
        return Preset.from_json(cfg["root_system"])
    gen = cfg.get("generators")
    if gen:
        if gen["realization"] == "ProductSL2":
            k = len(gen["factors"]) if "factors" in gen else len(gen["matrices"][0])
            return product_a1([1.0] * k)
        size = len(gen["matrices"][0])
        if size == 2:
            return product_a1([1.0])
        if size == 3:
            return A2(1)
    raise ParameterError("no root system given (use --preset or a root_system block)")


def _root_system(cfg):
    return build_root_system(_infer_preset(cfg))


def _samples(cfg):
    gen = cfg.get("generators")
    if not gen:
        raise ParameterError("this command needs a generators block in the config")
    common = dict(include_inverses=gen["include_inverses"], memory_cap=gen["memory_cap"],
                  workers=gen["workers"])
    if gen["realization"] == "ProductSL2" and "factors" in gen:
        facs = [[sl_element(m) for m in f] for f in gen["factors"]]
        return product_ball(facs, max_word_length=gen["max_word_length"], **common)
    if "matrices" not in gen:
        raise ParameterError("generators need 'matrices' (or 'factors' for ProductSL2)")
    if gen["realization"] == "SL":
        gens = [sl_element(m) for m in gen["matrices"]]
    else:
        gens = [product_sl2_element(m) for m in gen["matrices"]]
    return enumerate_ball(gens, max_word_length=gen["max_word_length"], **common)


def _emit(args, cfg, command, result, text, rs=None, extra_files=None) -> None:
    doc = envelope(command, result, rs, timestamp=not args.no_timestamp)
    js = dumps(doc)
    sys.stdout.write(js if args.json else text)
    files = {"report.json": js}
    formats = cfg.get("output", {}).get("formats", ["text"])
    if "text" in formats:
        files["report.txt"] = text
    if extra_files:
        files.update(extra_files)
    write_outputs(cfg.get("output", {}).get("dir"), files)


# -- commands -------------------------------------------------------------------------------

def cmd_rootsys(args):
    cfg = _load(args)
    rs = _root_system(cfg)
    w = rs.weyl
    herm_dim = EX.hermitian_cone_dimension(rs, w)
    herm = "whole closed chamber" if herm_dim == rs.rank else (
        "ℝ≥0·ρ" if herm_dim == 1 else f"{herm_dim}-dimensional face")
    result = {
        "positive_roots": [{"name": n, "std": r, "multiplicity": m}
                           for n, r, m in zip(rs.root_names, rs.positive_roots, rs.multiplicities)],
        "gram": rs.gram, "rho": rs.rho, "weyl_order": len(w),
        "hermitian_fixed_dim": herm_dim, "hermitian_dominant_cone": herm,
        "limit_cone_criterion_applicable": limit_cone_theorem_applicable(rs),
        "metric": "standard Euclidean product on the preset coordinates",
    }
    rows = [("preset", rs.describe())]
    rows += [(f"root {n}", f"{fmt_vec(r)}, m = {m}")
             for n, r, m in zip(rs.root_names, rs.positive_roots, rs.multiplicities)]
    rows += [("ρ", fmt_vec(rs.rho.std_coords)), ("ρ (root coords)", fmt_vec(rs.rho.root_coords))]
    if rs.preset.family == "A2_family":
        rows.append(("ρ in roots", f"ρ = {EX.multiple_label(rs.preset.m, 'α₃')}"))
    rows += [
             ("|W|", len(w)), ("Hermitian dominant cone", herm),
             ("limit-cone criterion", "applicable" if result["limit_cone_criterion_applicable"]
              else "not applicable")]
    _emit(args, cfg, "rootsys", result, aligned(rows), rs)
    return EXIT_OK


def cmd_norm(args):
    cfg = _load(args)
    rs = _root_system(cfg)
    w = rs.weyl
    lam = parse_functional(rs, args.lam)
    mu = parse_functional(rs, args.mu)
    val = poly_norm(rs, w, lam, mu)
    oracle = poly_norm_oracle(rs, w, lam, mu)
    inside = membership(rs, w, lam, mu)
    result = {"lambda": lam, "mu": mu, "poly_norm": val, "oracle": oracle, "member": inside}
    text = aligned([("‖λ‖_poly,μ", fmt(val)), ("oracle", fmt(oracle)),
                    ("λ ∈ conv(Wμ)", "yes" if inside else "no")])
    _emit(args, cfg, "norm", result, text, rs)
    return EXIT_OK


def cmd_hull(args):
    cfg = _load(args)
    rs = _root_system(cfg)
    h = hull(rs, rs.weyl, parse_functional(rs, args.mu))
    csv_text = h.to_csv()
    result = {"vertices": [v.std_coords for v in h.vertices], "facet_caps": h.facet_form}
    _emit(args, cfg, "hull", result, csv_text, rs, {"hull.csv": csv_text})
    return EXIT_OK


def cmd_intersect(args):
    cfg = _load(args)
    rs = _root_system(cfg)
    fam = [parse_functional(rs, s) for s in split_family(args.set)]
    mu_s = intersect(rs, fam)
    herm = is_hermitian_dominant(rs, rs.weyl, mu_s)
    label = None
    for name in rs.root_names + ("rho",):
        base = rs.named(name)
        c = mu_s.root_coords / np.where(base.root_coords == 0, np.nan, base.root_coords)
        if np.allclose(mu_s.std_coords, np.nanmean(c) * base.std_coords, atol=1e-12) and np.isfinite(np.nanmean(c)):
            label = EX.multiple_label(float(np.nanmean(c)), name)
            break
    result = {"family": fam, "mu_S": mu_s, "hermitian": herm, "label": label}
    text = aligned([("μ_S", fmt_vec(mu_s.std_coords)), ("μ_S (root coords)", fmt_vec(mu_s.root_coords)),
                    ("μ_S =", label or "-"), ("Hermitian", "yes" if herm else "no")])
    _emit(args, cfg, "intersect", result, text, rs)
    return EXIT_OK


def cmd_orbit(args):
    cfg = _load(args)
    samples = _samples(cfg)
    csv_text = write_samples_csv(samples)
    lengths = [s.word_length for s in samples]
    norms = [s.mu_plus.norm for s in samples]
    result = {"element_count": len(samples), "max_word_length": max(lengths),
              "max_mu_norm": max(norms)}
    text = aligned([("elements", len(samples)), ("max word length", max(lengths)),
                    ("max |μ₊|", fmt(max(norms)))])
    _emit(args, cfg, "orbit", result, text, None, {"samples.csv": csv_text})
    return EXIT_OK


def cmd_exponent(args):
    cfg = _load(args)
    rs = _root_system(cfg)
    an = cfg["analysis"]
    samples = _samples(cfg)
    mus = an.get("mu") or ["rho"]
    fw = an.get("fit_window")
    ests = []
    rows = []
    for spec in mus:
        mu = parse_functional(rs, spec)
        for modified in ((False, True) if an["modified"] else (False,)):
            e = critical_exponent(samples, rs, mu, modified=modified, fit_window=fw,
                                  estimator=an["estimator"], shell_width=an["shell_width"])
            ests.append(e)
            rows.append((f"{e.quantity}({spec})", f"{fmt(e.value)}  window [{fmt(e.fit_window[0])}, "
                         f"{fmt(e.fit_window[1])}], rms {fmt(e.fit_residual)}, n = {e.sample_count}"))
    result = {"estimates": [e.to_json() for e in ests], "element_count": len(samples),
              "provenance": "estimated"}
    _emit(args, cfg, "exponent", result, aligned(rows), rs,
          {"samples.csv": write_samples_csv(samples)})
    return EXIT_OK


def _direction_grid(rs, count):
    """Unit vectors along ``sum t_i h_i`` for ``t`` on the rank-2 segment (or the coweights)."""
    h = rs.coweights
    if rs.rank == 1:
        return [h[0] / np.linalg.norm(h[0])]
    dirs = []
    for k in range(count + 1):
        t = k / count
        v = t * h[0] + (1 - t) * h[-1] if rs.rank == 2 else h[k % rs.rank]
        dirs.append(v / np.linalg.norm(v))
    return dirs


def cmd_gif(args):
    cfg = _load(args)
    rs = _root_system(cfg)
    an = cfg["analysis"]
    samples = _samples(cfg)
    dirs = [np.asarray(an["direction"], float)] if an.get("direction") else \
        _direction_grid(rs, an["direction_grid"])
    ests, rows = [], []
    for u in dirs:
        u = u / np.linalg.norm(u)
        try:
            e = directional_growth(samples, rs, u, an["aperture"], an.get("fit_window"),
                                   estimator=an["estimator"], shell_width=an["shell_width"])
            ests.append(e.to_json())
            rows.append((f"ψ along {fmt_vec(u)}", f"{fmt(e.value)} (n = {e.sample_count})"))
        except NumericError as exc:
            ests.append({"direction": u.tolist(), "error": str(exc)})
            rows.append((f"ψ along {fmt_vec(u)}", f"insufficient data ({exc})"))
    stats = limit_cone_stats(samples, rs, an["radius_threshold"])
    lc = V.limit_cone_temperedness(rs, stats, an["wall_margin"])
    rows += [("limit-cone directions", len(stats.directions)),
             ("min wall distance", fmt(stats.min_wall_distance)), ("limit-cone verdict", lc)]
    result = {"directional": ests, "limit_cone": stats.to_json(), "limit_cone_verdict": lc,
              "provenance": "estimated"}
    _emit(args, cfg, "gif", result, aligned(rows), rs)
    return EXIT_OK


def cmd_verdict(args):
    cfg = _load(args)
    an = cfg["analysis"]
    source = "analytic"
    lc_stats = None
    if args.so2n is not None:
        given = cfg.get("root_system")
        if given and (given.get("preset") != "B2_SO2n" or int(given.get("n", args.so2n)) != args.so2n):
            raise ParameterError("--so2n conflicts with the configured root system")
        cfg["root_system"] = B2(args.so2n).to_json()
        rs = _root_system(cfg)
        dp_rho = V.delta_prime_from_psi(rs, V.so2n_psi(args.so2n), rs.rho, an["grid_resolution"])
        lc_stats = {"min_wall_distance": 0.0}
    elif args.product_deltas:
        d = parse_vector(args.product_deltas)
        if "root_system" not in cfg:
            cfg["root_system"] = product_a1([0.5, 0.5]).to_json()
        rs = _root_system(cfg)
        if rs.preset.family != "ProductA1" or rs.rank != len(d):
            raise ParameterError("--product-deltas needs a ProductA1 preset with matching k")
        rhos = rs.preset.rhos
        dp_rho = V.delta_prime_from_psi(
            rs, lambda H: float(sum(di * abs(h) for di, h in zip(d, H))), rs.rho,
            an["grid_resolution"])
        lc_stats = {"min_wall_distance": 0.0} if len(d) >= 2 else None
        if len(d) == 2:
            ref = V.product_reference(d, rhos, rhos)
            if abs(ref.sup_norm - max(0.0, dp_rho)) > 1e-9:
                raise NumericError("closed form and grid evaluation disagree")
    elif args.delta_prime_rho is not None:
        rs = _root_system(cfg)
        dp_rho = _parse_extended(args.delta_prime_rho)
    elif args.estimate:
        rs = _root_system(cfg)
        samples = _samples(cfg)
        est = critical_exponent(samples, rs, rs.rho, modified=True, fit_window=an.get("fit_window"),
                                estimator=an["estimator"], shell_width=an["shell_width"])
        dp_rho = est.value
        source = "estimated"
        lc_stats = limit_cone_stats(samples, rs, an["radius_threshold"])
    else:
        raise UsageError("verdict needs one of --so2n, --product-deltas, --delta-prime-rho, --estimate")
    w = rs.weyl
    v = V.temperedness_report(rs, w, dp_rho, an["metric_scale"], source, lc_stats, an["wall_margin"])
    if args.so2n is not None:
        for name in ("a3", "a4"):
            mu = rs.root(name)
            v.add_theta(rs, w, name, mu, V.delta_prime_from_psi(rs, V.so2n_psi(args.so2n), mu,
                                                                an["grid_resolution"]))
        fam = [v_["value"] * rs.root(n_) for n_, v_ in v.theta.items() if n_ in ("a3", "a4")]
        mu_g = intersect(rs, fam)
        v.special_points.append(("μ_Γ from {α₃, α₄}", mu_g))
    _emit(args, cfg, "verdict", v.to_json(), v.to_text(), rs)
    return EXIT_OK


def _parse_extended(text: str) -> float:
    t = text.strip().lower()
    if t in ("-inf", "-infinity"):
        return -math.inf
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    return parse_number(text)


def _golden(name: str, suffix: str) -> str | None:
    p = resources.files("polytemper.cli").joinpath("goldens", f"{name}{suffix}")
    return p.read_text(encoding="utf-8") if p.is_file() else None


def cmd_example(args):
    params = {}
    if args.name == "sl3" and args.m is not None:
        params["m"] = args.m
    if args.name == "so2n" and args.n is not None:
        params["n"] = args.n
    if args.name == "product" and args.rhos:
        params["rhos"] = tuple(parse_vector(args.rhos))
    result, text = EX.build_example(args.name, **params)
    doc = envelope(f"example {args.name}", result, None, timestamp=not args.no_timestamp)
    js = dumps(doc)
    sys.stdout.write(js if args.json else text)
    write_outputs(args.out, {"report.json": js, "report.txt": text})
    if args.write_golden:
        golden_doc = dumps(envelope(f"example {args.name}", result, None, timestamp=False))
        write_outputs(args.write_golden, {f"{args.name}.txt": text, f"{args.name}.json": golden_doc})
        return EXIT_OK
    stem = EX.golden_stem(args.name, params)
    if stem is None:
        sys.stderr.write("no golden file for these parameters; comparison skipped\n")
        return EXIT_OK
    expected_txt, expected_js = _golden(stem, ".txt"), _golden(stem, ".json")
    got_js = dumps(envelope(f"example {args.name}", result, None, timestamp=False))
    ok = expected_txt == text and expected_js == got_js
    sys.stderr.write(f"golden {stem}: {'match' if ok else 'MISMATCH'}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def _grid(text: str) -> list[float]:
    """``a:b:n`` (inclusive linspace) or a comma list."""
    if ":" in text:
        a, b, n = text.split(":")
        return np.linspace(parse_number(a), parse_number(b), int(n)).tolist()
    return parse_vector(text)


def cmd_spherical(args):
    s_grid, u_grid = _grid(args.s_grid), _grid(args.u_grid)
    rep = check_phi_bound(s_grid, u_grid)
    xb = xi_bounds(u_grid)
    result = {"max_violation": rep.max_violation, "min_slack": rep.min_slack, "bound_holds": rep.holds,
              "xi_lower_bound_holds": xb.lower_holds, "xi_fitted_C": xb.fitted_C,
              "xi_decreasing": xb.decreasing, "s_grid": s_grid, "u_grid": u_grid,
              "normalization": "a_u = diag(e^u, e^-u), rho(u) = u"}
    text = aligned([("φ_s ≤ e^{su}·Ξ", "holds" if rep.holds else "VIOLATED"),
                    ("min relative slack", fmt(rep.min_slack)),
                    ("e^{-u} ≤ Ξ(u)", "holds" if xb.lower_holds else "VIOLATED"),
                    ("fitted C in Ξ ≤ C(1+u)e^{-u}", f"{xb.fitted_C:.6f}"),
                    ("Ξ decreasing on grid", "yes" if xb.decreasing else "no")])
    cfg = {"output": {"dir": args.out, "formats": ["text"]}}
    _emit(args, cfg, "spherical", result, text, None, {"grid.csv": rep.to_csv()})
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------

def _common(p, with_rs=True):
    p.add_argument("--config", help="JSON run configuration (validated against the shipped schema)")
    p.add_argument("--out", help="output directory for report.json, report.txt and CSV files")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--no-timestamp", action="store_true", help="omit generated_at from JSON output")
    if with_rs:
        p.add_argument("--preset", choices=["A2_family", "B2_SO2n", "ProductA1"],
                       help="root system family (overrides the config)")
        p.add_argument("--m", type=int, help="A2 multiplicity (default 1)")
        p.add_argument("--n", type=int, help="SO(2,n) parameter, n >= 3")
        p.add_argument("--rhos", help="ProductA1 factor rhos, e.g. 1/2,1/2 (default 1/2 each)")


def _orbit_flags(p):
    p.add_argument("--max-word-length", type=int, help="word-ball radius (default 8)")
    p.add_argument("--no-inverses", action="store_true", help="do not add generator inverses")
    p.add_argument("--memory-cap", type=int, help="maximum number of elements (default 10^7)")
    p.add_argument("--workers", type=int, help="threads for Cartan projections (default 1)")
    p.add_argument("--fit-window", help="T_min,T_max (default: top 60%% of the observed range)")
    p.add_argument("--estimator", choices=["cumulative", "shell"], help="counting mode (default cumulative)")
    p.add_argument("--shell-width", type=float, help="shell width for the shell estimator (default 0.5)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polytemper", description=__doc__.splitlines()[0],
                                 epilog="Exit codes: 0 ok, 1 golden mismatch, 2 usage, 3 schema, "
                                        "4 numeric/insufficient data, 5 resource cap.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rootsys", help="roots, multiplicities, rho, |W|, Hermitian cone")
    _common(p)
    p.set_defaults(func=cmd_rootsys)

    p = sub.add_parser("norm", help="polyhedral norm of lambda with respect to conv(W mu)")
    _common(p)
    p.add_argument("--lambda", dest="lam", required=True, help="functional: name or std coords '3,1'")
    p.add_argument("--mu", required=True, help="dominant functional, e.g. a4, rho, 3/2*a3")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("hull", help="vertices of conv(W mu) as CSV")
    _common(p)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("intersect", help="mu_S with conv(W mu_S) = intersection over S")
    _common(p)
    p.add_argument("--set", action="append", required=True,
                   help="family members: names separated by ',' or coordinates separated by ';'")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("orbit", help="enumerate a word ball and stream samples.csv")
    _common(p)
    _orbit_flags(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("exponent", help="critical exponents delta(mu) and delta'(mu)")
    _common(p)
    _orbit_flags(p)
    p.add_argument("--mu", dest="mu_list", action="append", help="functional(s) (default rho)")
    p.add_argument("--modified", action="store_true", help="also fit the e^-rho weighted count")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("gif", help="directional growth and limit-cone statistics")
    _common(p)
    _orbit_flags(p)
    p.add_argument("--direction", help="unit direction in std coords (default: a grid)")
    p.add_argument("--direction-grid", type=int, help="number of grid steps (default 8)")
    p.add_argument("--aperture", type=float, help="cone half-angle in radians (default 0.1)")
    p.add_argument("--radius-threshold", type=float, help="limit-cone radius threshold (default 1)")
    p.add_argument("--wall-margin", type=float, help="wall distance counted as interior (default 0.01)")
    p.set_defaults(func=cmd_gif)

    p = sub.add_parser("verdict", help="temperedness, L^p range and Laplace bottom")
    _common(p)
    _orbit_flags(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--so2n", type=int, metavar="N", help="analytic SO(2,N) lattice-of-SO(1,N) input")
    src.add_argument("--product-deltas", help="analytic product input: factor exponents d1,d2")
    src.add_argument("--delta-prime-rho", help="given delta'(rho) (number, fraction or -inf)")
    src.add_argument("--estimate", action="store_true", help="estimate delta'(rho) from generators")
    p.add_argument("--metric-scale", type=float, help="scale of the invariant metric (default 1)")
    p.add_argument("--grid-resolution", type=int, help="chamber grid resolution (default 100)")
    p.add_argument("--radius-threshold", type=float, help="limit-cone radius threshold (default 1)")
    p.add_argument("--wall-margin", type=float, help="wall distance counted as interior (default 0.01)")
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("example", help="reproduce a worked example and diff against its golden")
    p.add_argument("name", choices=EX.EXAMPLES)
    p.add_argument("--m", type=int, help="sl3: multiplicity")
    p.add_argument("--n", type=int, help="so2n: n")
    p.add_argument("--rhos", help="product: factor rhos")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--write-golden", metavar="DIR", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("spherical", help="SL2 spherical-function bounds on a grid (grid.csv)")
    p.add_argument("--s-grid", default="0:1:5", help="s values, 'a:b:n' or comma list (default 0:1:5)")
    p.add_argument("--u-grid", default="0:20:41", help="u values (default 0:20:41)")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timestamp", action="store_true")
    p.set_defaults(func=cmd_spherical)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ParameterError, PreconditionError, NotAvailableError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SchemaError as exc:
        sys.stderr.write(f"config schema error: {exc}\n")
        return EXIT_SCHEMA
    except NumericError as exc:
        sys.stderr.write(f"numeric error: {exc}\n")
        return EXIT_NUMERIC
    except ResourceError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
