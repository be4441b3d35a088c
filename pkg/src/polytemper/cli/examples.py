"""Reproducible worked examples: SL3-type (A2), products of rank-one groups, SO_0(2, n).

Each builder returns ``(result_dict, text)``.  Every reported number is
recomputed from the library; ``source`` fields say whether it comes from a
closed form or from a numerical routine.
"""

from __future__ import annotations

import numpy as np

from .. import verdicts as V
from ..polyhedra import intersect, poly_norm
from ..root_system import A2, B2, build_root_system, is_hermitian_dominant, \
    limit_cone_theorem_applicable, opposition_involution, product_a1
from .reports import aligned, fmt, fmt_vec

EXAMPLES = ("sl3", "product", "so2n")
_SUB = {"1": "₁", "2": "₂", "3": "₃", "4": "₄"}
DEFAULT_PARAMS = {"sl3": {"m": 1}, "product": {"rhos": (0.5, 0.5)}, "so2n": {"n": 5}}


def multiple_label(c: float, name: str) -> str:
    return name if abs(c - 1.0) < 1e-12 else f"{fmt(c)}·{name}"


def hermitian_cone_dimension(rs, w) -> int:
    """Dimension of the fixed space of the opposition involution."""
    M = -w.w0
    return int(rs.rank - np.linalg.matrix_rank(M - np.eye(rs.rank), tol=1e-9))


# -- A2 -------------------------------------------------------------------------------

def example_sl3(m: int = 1):
    rs = build_root_system(A2(m))
    w = rs.weyl
    rho = rs.rho
    a1, a2, a3 = rs.root("a1"), rs.root("a2"), rs.root("a3")
    rho_mult = float(rho.root_coords[0])
    iota_swaps = opposition_involution(rs, w, a1).isclose(a2)
    herm_dim = hermitian_cone_dimension(rs, w)
    off_ray = rs.functional(rs.coweights[0])     # fundamental-weight direction off R rho
    herm_rho = is_hermitian_dominant(rs, w, rho)
    herm_off = is_hermitian_dominant(rs, w, off_ray)
    radial = [{"r": r, "poly_norm": poly_norm(rs, w, r * rho, rho)} for r in (0.25, 0.5, 1.0)]
    cap = V.a2_property_t_cap(m)
    result = {
        "m": m,
        "rho": rho,
        "rho_in_a3": rho_mult,
        "weyl_order": len(w),
        "iota_swaps_a1_a2": iota_swaps,
        "hermitian_fixed_dim": herm_dim,
        "hermitian_rho": herm_rho,
        "hermitian_off_ray": herm_off,
        "limit_cone_criterion_applicable": limit_cone_theorem_applicable(rs),
        "radial_norms": radial,
        "general_radial_cap": 1.0,
        "property_t_cap": {"value": cap, "source": "closed form (2m-1)/m"},
    }
    rows = [
        ("preset", rs.describe()),
        ("ρ", f"{multiple_label(rho_mult, 'α₃')}  {fmt_vec(rho.std_coords)}"),
        ("ρ = m·α₃", "yes" if abs(rho_mult - m) < 1e-12 else "no"),
        ("|W|", len(w)),
        ("ι(α₁) = α₂", "yes" if iota_swaps else "no"),
        ("Hermitian dominant cone", "ℝ≥0·ρ" if herm_dim == 1 and herm_rho and not herm_off else "other"),
        ("limit-cone criterion", "applicable" if result["limit_cone_criterion_applicable"] else "not applicable"),
    ]
    rows += [(f"‖{multiple_label(e['r'], 'ρ')}‖_poly,ρ", fmt(e["poly_norm"])) for e in radial]
    rows += [("radial cap, general", "r ≤ 1"), ("radial cap (2m−1)/m", f"{fmt(cap)}")]
    if m == 1:
        pt = V.property_t_functional(rs)
        theta_cap = poly_norm(rs, w, pt.cap, rho)
        result["theta_functional"] = {"theta": pt.theta, "cap_radial": theta_cap,
                                      "source": "Θ = ρ/2 rescales conv(Wρ)"}
        rows += [("Θ", "1/2·ρ"), ("radial cap from ρ − Θ", f"r ≤ {fmt(theta_cap)}")]
    points = []
    for dp in (-0.2, 0.0, 0.25, 0.4, 0.5, 1.0):
        p = V.a2_boundary_point(rs, dp)
        th = max(0.0, dp)
        lo, hi = V.laplace_bottom_interval(rs, dp, rho)
        points.append({"delta_prime_rho": dp, "point": p, "poly_norm": poly_norm(rs, w, p, rho),
                       "within_property_t_cap": th <= cap + 1e-12, "laplace_bottom": [lo, hi]})
        rows.append((f"δ′(ρ) = {fmt(dp)}",
                     f"point {multiple_label(th, 'ρ')}, ‖·‖_poly,ρ = {fmt(points[-1]['poly_norm'])}, "
                     f"bottom ∈ [{fmt(lo)}, {fmt(hi)}]"))
    result["boundary_points"] = points
    result["caveat"] = V.ZARISKI_CAVEAT
    rows.append(("note", V.ZARISKI_CAVEAT))
    rows.append(("note", "|ρ|² uses the preset metric (|αᵢ|² = 2)."))
    return result, "example sl3\n" + aligned(rows)


# -- products -------------------------------------------------------------------------

def product_grid(rhos=(0.5, 0.5), mu=(1.0, 1.0), size: int = 20, top: float = 1.0):
    """``product_reference`` over ``delta_i = top * k / (size - 1)``."""
    ds = [top * k / (size - 1) for k in range(size)]
    return ds, [[V.product_reference((d1, d2), rhos, mu) for d2 in ds] for d1 in ds]


def example_product(rhos=(0.5, 0.5)):
    rhos = tuple(float(r) for r in rhos)
    cases = []
    rows = [("preset", build_root_system(product_a1(rhos)).describe()),
            ("ψ", V.ProductReference.psi_formula),
            ("sup‖Re λ‖_poly,μ", "max((δ₁−ρ₁)/μ₁, (δ₂−ρ₂)/μ₂, 0)")]
    for d, mu in (((0.7, 0.3), (1.0, 1.0)), ((0.4, 0.4), (1.0, 1.0)), ((0.7, 0.3), (1.0, 0.0)),
                  ((0.3, 0.7), (1.0, 0.0)), ((0.9, 0.8), (2.0, 1.0))):
        ref = V.product_reference(d, rhos, mu)
        cases.append({"deltas": d, "mu": mu, "sup_norm": ref.sup_norm, "tempered": ref.tempered,
                      "mu_gamma": ref.mu_gamma})
        rows.append((f"δ = {fmt_vec(d)}, μ = {fmt_vec(mu)}",
                     f"sup = {fmt(ref.sup_norm)}, {'tempered' if ref.tempered else 'not tempered'}"))
    ds, grid = product_grid(rhos)
    table = [[cell.tempered for cell in row] for row in grid]
    sup = [[cell.sup_norm for cell in row] for row in grid]
    rows.append(("temperedness grid", f"δᵢ ∈ {{0, 1/19, …, 1}}, T = tempered (rows δ₁, cols δ₂)"))
    for d1, row in zip(ds, table):
        rows.append((f"  δ₁ = {d1:.4f}", "".join("T" if t else "." for t in row)))
    rank_one = []
    rs1 = build_root_system(product_a1([0.5]))
    for delta in (0.25, 0.5, 0.75, 1.0):
        b = V.rank_one_bottom(delta, 0.5)
        lo, hi = V.laplace_bottom_interval(rs1, V.delta_prime_rank_one(delta, 0.5), rs1.rho)
        rank_one.append({"delta": delta, "bottom": b, "interval": [lo, hi]})
        rows.append((f"rank one, δ = {fmt(delta)}", f"bottom = {fmt(b)}, interval [{fmt(lo)}, {fmt(hi)}]"))
    result = {"rhos": rhos, "cases": cases, "grid_deltas": ds, "grid_tempered": table,
              "grid_sup_norm": sup, "rank_one": rank_one,
              "source": "closed forms for products of Zariski-dense rank-one factors"}
    return result, "example product\n" + aligned(rows)


# -- SO_0(2, n) --------------------------------------------------------------------------

def example_so2n(n: int = 5, steps: int = 10, resolution: int = 100):
    rs = build_root_system(B2(n))
    w = rs.weyl
    psi = V.so2n_psi(n)
    rows = [("preset", rs.describe())]
    roots = []
    for name, vec, mult in zip(rs.root_names, rs.positive_roots, rs.multiplicities):
        roots.append({"name": name, "std": vec, "multiplicity": mult})
        rows.append((f"α{_SUB[name[1:]]}", f"{fmt_vec(vec)}, m = {mult}"))
    rows.append(("ρ", fmt_vec(rs.rho.std_coords)))
    lam = rs.functional([3.0, 1.0])
    n3 = poly_norm(rs, w, lam, rs.root("a3"))
    n4 = poly_norm(rs, w, lam, rs.root("a4"))
    rows += [("‖(3, 1)‖_poly,α₃ = λ₁ + λ₂", fmt(n3)), ("‖(3, 1)‖_poly,α₄ = λ₁", fmt(n4))]
    rows.append(("ψ_Γ₀", f"{n - 1}·v₁ on v₂ = 0, -∞ elsewhere"))
    table = []
    fam = []
    for k in range(steps + 1):
        mu = rs.functional([1.0, k / steps])
        dp_grid = V.delta_prime_from_psi(rs, psi, mu, resolution)
        dp_closed = V.so2n_reference(n, mu.std_coords).delta_prime
        table.append({"mu": mu.std_coords, "delta_prime_from_psi": dp_grid,
                      "delta_prime_closed_form": dp_closed})
        fam.append(dp_grid * mu)
    mu_gamma = intersect(rs, fam)
    c = float(mu_gamma.root_coords[0])
    is_a3_multiple = np.allclose(mu_gamma.root_coords, [c, c], atol=1e-9)
    dp_a3 = V.delta_prime_from_psi(rs, psi, rs.root("a3"), resolution)
    rows.append(("δ′(μ) closed form", f"(n−2)/(2μ₁) = {n - 2}/(2μ₁)"))
    rows.append(("δ′(α₃)", f"δ′ = {fmt(dp_a3)}"))
    rows.append(("grid for μ_Γ₀", f"μ = (1, k/{steps}), k = 0..{steps}; chamber resolution {resolution}"))
    rows.append(("μ_Γ₀", f"μ_Γ₀ = {multiple_label(c, 'α₃')}" if is_a3_multiple
                 else fmt_vec(mu_gamma.std_coords)))
    pt = V.property_t_functional(rs)
    cap_c = float(pt.cap.std_coords[0])
    rows.append(("Θ", f"{fmt_vec(pt.theta.std_coords)} = 1/2·(α₁ + α₄)"))
    rows.append(("2ρ − Θ", fmt_vec((2 * rs.rho - pt.theta).std_coords)))
    rows.append(("Property-T cap", f"conv(W(ρ − Θ)) = {pt.cap_description}"))
    dp_rho = V.delta_prime_from_psi(rs, psi, rs.rho, resolution)
    verdict = V.temperedness_report(rs, w, dp_rho, limit_cone_stats={"min_wall_distance": 0.0})
    lo, hi = V.laplace_bottom_interval(rs, dp_a3, rs.root("a3"))
    rows += [
        ("δ′(ρ)", f"{fmt(dp_rho)} (closed form (n−2)/n = {fmt((n - 2) / n)})"),
        ("tempered", "yes" if verdict.tempered else "no"),
        ("p_Γ", f"in ({fmt(verdict.p_strict_lower)}, {fmt(verdict.p_interval[1])}]"),
        ("|ρ|²", fmt(verdict.rho_norm_sq)),
        ("bottom, μ = α₃", f"[{fmt(lo)}, {fmt(hi)}] = [|ρ|² − {fmt(dp_a3 ** 2)}, |ρ|² − {fmt(dp_a3 ** 2 / 2)}]"),
        ("bottom, μ = ρ", "[" + ", ".join(fmt(x) for x in verdict.laplace_bottom_interval) + "]"),
        ("limit cone (ray v₂ = 0)", verdict.limit_cone_verdict),
    ]
    result = {
        "n": n,
        "roots": roots,
        "rho": rs.rho,
        "poly_norm_examples": {"lambda": [3.0, 1.0], "mu_a3": n3, "mu_a4": n4},
        "delta_prime_table": table,
        "delta_prime_a3": {"value": dp_a3, "source": "numerical sup of (ψ−ρ)/μ on chamber grid"},
        "mu_gamma": {"value": mu_gamma, "coefficient_of_a3": c if is_a3_multiple else None,
                     "grid_steps": steps, "chamber_resolution": resolution},
        "property_t": {"theta": pt.theta, "cap": pt.cap, "cap_coefficient_of_a4": cap_c,
                       "description": pt.cap_description},
        "verdict": verdict.to_json(),
        "laplace_bottom_a3": [lo, hi],
    }
    return result, "example so2n\n" + aligned(rows)


def build_example(name: str, **params):
    if name == "sl3":
        return example_sl3(int(params.get("m", 1)))
    if name == "product":
        return example_product(params.get("rhos", (0.5, 0.5)))
    if name == "so2n":
        return example_so2n(int(params.get("n", 5)))
    raise KeyError(name)


def golden_stem(name: str, params: dict) -> str | None:
    """Golden files exist for the default parameters only."""
    defaults = DEFAULT_PARAMS[name]
    norm = {k: (tuple(float(x) for x in v) if isinstance(v, (list, tuple)) else v)
            for k, v in params.items() if v is not None}
    for k, v in norm.items():
        if defaults.get(k) != v:
            return None
    return name
