"""Table reproduction and the validation dossier.

Every comparison against a published value is report content: a mismatch is
documented, never raised. Two frequency readings are carried side by side for
the wavefunction tables, because the published text both ties omega to the
determinant roots and later fixes omega = 0.01 Ha:

* omega_root:  the state is built at its own root, t = t_star;
* omega_fixed: the state is built at omega = 0.01 Ha (t = 10) regardless.

The dossier also quantifies the difference between the recurrence coefficient
chain and the explicitly printed closed-form coefficients, records which
published entries each reading reproduces, and attaches the independent
eigensolver's verdict per root.
"""

from __future__ import annotations

import math
from dataclasses import asdict

from . import __version__
from .model import energy_relative
from .oracle import validate_oscillator, validate_root
from .reference_data import load_reference
from .termination import (
    GammaConvention,
    coefficient_chain,
    printed_series_coefficients,
    solve_termination,
)
from .wavefunction import assemble_polynomial, moment, normalize

FIXED_OMEGA = 0.01          # Hartree; the alternative published reading
ROOT_MATCH_RTOL = 5e-5      # four significant figures
ETA_MATCH_ATOL = 5e-5       # four decimal places
R_MEAN_BRACKET = (1.0, 50.0)  # Bohr; loose sanity bracket for <r>

MATCH = "match"
MISMATCH = "mismatch"
ATTEMPT = "attempt"
REFERENCE_ONLY = "reference_only"
ASYMPTOTIC_FLAG = "asymptotic_flag"


def q6(x) -> float:
    """Quantize to the output format (%.6e) so files are byte-stable."""
    return float(f"{float(x):.6e}")


def _nearest(values: list[float], target: float) -> float | None:
    if not values:
        return None
    return min(values, key=lambda v: abs(v - target))


def _row(table_id, row_key, paper_value, computed_value, classification):
    delta = (abs(paper_value - computed_value)
             if (paper_value is not None and computed_value is not None) else None)
    return {
        "table_id": table_id,
        "row_key": row_key,
        "paper_value": q6(paper_value) if paper_value is not None else None,
        "computed_value": q6(computed_value) if computed_value is not None else None,
        "abs_delta": q6(delta) if delta is not None else None,
        "classification": classification,
    }


def _solved(convention: GammaConvention):
    """Cache of termination results for the published (n, l) grid."""
    out = {}
    ref = load_reference()
    for l in (0, 1):
        for n in (2, 3, 4, 5):
            out[(n, l)] = solve_termination(
                n, l, convention, asymptotic_flag=ref.asymptotic(n, l))
    return out


def build_tables(convention: GammaConvention = GammaConvention.TABLE) -> list[dict]:
    """Side-by-side rows for every published table cell."""
    ref = load_reference()
    solved = _solved(convention)
    rows: list[dict] = []

    for l, table_id in ((0, "table1"), (1, "table2")):
        published = ref.roots(l)
        for n in (2, 3, 4, 5):
            computed = [r.t_star for r in solved[(n, l)].rootset.roots]
            for i, pub in enumerate(published[n], start=1):
                near = _nearest(computed, pub)
                cls = (MATCH if near is not None
                       and abs(near - pub) <= ROOT_MATCH_RTOL * abs(pub)
                       else MISMATCH)
                rows.append(_row(table_id, f"n{n}.root{i}", pub, near, cls))
            if ref.asymptotic(n, l):
                rows.append(_row(table_id, f"n{n}.asymptotic", 0.0, None,
                                 ASYMPTOTIC_FLAG))
            for i, pub in enumerate(ref.comparison_roots(l).get(n, ()), start=1):
                rows.append(_row(table_id, f"n{n}.comparison{i}", pub, None,
                                 REFERENCE_ONLY))

    energies = ref.energies()
    pub_first_roots = ref.roots(0)
    for n in (2, 3, 4, 5):
        row = energies[n]
        rows.append(_row("table3", f"n{n}.eps_prime", row["eps_prime"], None,
                         REFERENCE_ONLY))
        rows.append(_row("table3", f"n{n}.eps_int", row["eps_int"], None,
                         REFERENCE_ONLY))
        computed_roots = [r.t_star for r in solved[(n, 0)].rootset.roots]
        near = _nearest(computed_roots, pub_first_roots[n][0])
        eta = energy_relative(n, 0, 1.0 / near ** 2) if near else None
        cls = (MATCH if eta is not None and abs(eta - row["eta"]) <= ETA_MATCH_ATOL
               else MISMATCH)
        rows.append(_row("table3", f"n{n}.eta", row["eta"], eta, cls))

    for l in (0, 1):
        for n in (2, 3, 4, 5):
            pub_n = ref.normalization(n, l)
            pub_r = ref.r_mean(n, l)
            for root in solved[(n, l)].rootset.roots:
                state = normalize(assemble_polynomial(n, l, root.t_star,
                                                      convention=convention))
                key = f"n{n}.l{l}.t{root.t_star:.5f}.omega_root"
                rows.append(_row("table4", key, pub_n, state.N, ATTEMPT))
                rows.append(_row("table5", key, pub_r, moment(state, 1), ATTEMPT))
            t_fixed = 1.0 / math.sqrt(FIXED_OMEGA)
            state = normalize(assemble_polynomial(n, l, t_fixed,
                                                  convention=convention))
            key = f"n{n}.l{l}.omega_fixed"
            rows.append(_row("table4", key, pub_n, state.N, ATTEMPT))
            rows.append(_row("table5", key, pub_r, moment(state, 1), ATTEMPT))
    return rows


def _dual_reading_attempts(convention: GammaConvention) -> tuple[list[dict], list[dict]]:
    """Tables 4-5 under both omega readings, plus the printed-coefficient value."""
    ref = load_reference()
    solved = _solved(convention)
    t_fixed = 1.0 / math.sqrt(FIXED_OMEGA)
    norm_rows, mom_rows = [], []
    for l in (0, 1):
        for n in (2, 3, 4, 5):
            pub_n = ref.normalization(n, l)
            pub_r = ref.r_mean(n, l)
            per_root_n, per_root_r = [], []
            for root in solved[(n, l)].rootset.roots:
                t = root.t_star
                chain_state = normalize(assemble_polynomial(n, l, t,
                                                            convention=convention))
                printed = printed_series_coefficients(l, t)[:n + 1]
                printed_state = normalize(assemble_polynomial(n, l, t,
                                                              A_chain=printed))
                per_root_n.append({
                    "t_star": q6(t),
                    "computed": q6(chain_state.N),
                    "abs_delta": q6(abs(chain_state.N - pub_n)),
                    "computed_printed_coeffs": q6(printed_state.N),
                    "abs_delta_printed": q6(abs(printed_state.N - pub_n)),
                })
                per_root_r.append({
                    "t_star": q6(t),
                    "computed": q6(moment(chain_state, 1)),
                    "abs_delta": q6(abs(moment(chain_state, 1) - pub_r)),
                    "computed_printed_coeffs": q6(moment(printed_state, 1)),
                    "abs_delta_printed": q6(abs(moment(printed_state, 1) - pub_r)),
                })
            fixed_state = normalize(assemble_polynomial(n, l, t_fixed,
                                                        convention=convention))
            norm_rows.append({
                "n": n, "l": l, "published": q6(pub_n),
                "omega_root": per_root_n,
                "omega_fixed": {"computed": q6(fixed_state.N),
                                "abs_delta": q6(abs(fixed_state.N - pub_n))},
            })
            mom_rows.append({
                "n": n, "l": l, "published": q6(pub_r),
                "omega_root": per_root_r,
                "omega_fixed": {"computed": q6(moment(fixed_state, 1)),
                                "abs_delta": q6(abs(moment(fixed_state, 1) - pub_r))},
            })
    return norm_rows, mom_rows


CAVEATS = [
    {
        "id": "gamma-index-conventions",
        "description": (
            "The displayed three-term recurrence and the printed closed form "
            "for the subdiagonal factors disagree by an index shift. The "
            "'table' convention (gamma_1 = 2n(1+alpha), shifted factors from "
            "p = 2) reproduces the published root tables; the 'literal' "
            "reading is computed alongside for comparison."),
    },
    {
        "id": "omega-reading-ambiguity",
        "description": (
            "The published wavefunction tables are tied both to 'omega at the "
            "root' and to a fixed omega = 0.01 Ha in the surrounding text. "
            "Both readings are emitted side by side; for n = 2 the published "
            "normalization and <r> agree with the omega-at-root reading to "
            "about 1e-4 relative (exactly, when evaluated at the 4-decimal "
            "rounded roots)."),
    },
    {
        "id": "printed-vs-chain-coefficients",
        "description": (
            "The printed closed-form series coefficients differ from the "
            "recurrence chain from A_3 on (printed A_3 constant term 6(2l+1) "
            "vs 7(2l+1) from the literal recurrence; the table-consistent "
            "chain differs in the linear term instead). The published n >= 3 "
            "normalization values are reproduced by the printed coefficients, "
            "not by the chain; both are quantified per root."),
    },
    {
        "id": "published-root-8.3627",
        "description": (
            "The published n=5, l=1 root 8.3627 does not satisfy its own "
            "cleared determinant (exact rational evaluation gives about "
            "-43.4); the certified root of that determinant is 8.360269. The "
            "companion root 21.6111 matches to all published digits, so the "
            "underlying polynomial is the same and the printed entry is in "
            "error."),
    },
    {
        "id": "unlisted-root-n5-l0",
        "description": (
            "The n=5, l=0 determinant has a second positive root near "
            "21.2573 that the published table omits (its caption only claims "
            "'some roots')."),
    },
    {
        "id": "asymptotic-entries",
        "description": (
            "The published 0 entries (omega -> infinity, called asymptotic "
            "solutions) are not roots of the cleared determinants and are "
            "carried as metadata flags only; no wavefunction is constructed "
            "for them. No printed criterion explains why they appear for "
            "n = 2, 3, 5 but not n = 4."),
    },
    {
        "id": "cm-energy-factor",
        "description": (
            "The separated center-of-mass equation admits a factor-2 reading "
            "of its eigenvalue; the closed form epsilon = omega_R (n_R + 1) "
            "with a single label n_R is used as printed, although a 2D "
            "oscillator spectrum would normally carry a two-fold label."),
    },
    {
        "id": "mean-r-span",
        "description": (
            "The eight states whose <r> the publication tabulates span about "
            "3.7-22.8 Bohr under the omega-at-root reading, consistent with "
            "the claimed 3.7-18.7 Bohr. The state at the published root "
            "t = 21.6111 (n=5, l=1), whose wavefunction the publication never "
            "tabulates, has <r> of about 63.4 Bohr (quadrature-checked) and "
            "falls outside the [1, 50] Bohr sanity bracket."),
    },
    {
        "id": "oracle-verdict",
        "description": (
            "The independent shooting eigensolver confirms the exactly "
            "solvable oscillator limit to better than 1e-6 relative but "
            "classifies every analytic root state as DISCREPANT (few-percent "
            "energy offsets, order-one ODE residuals). The termination "
            "machinery is internally consistent (exact dense-determinant "
            "agreement), so the discrepancy lies between the termination "
            "condition and the radial equation itself."),
    },
]


def build_report(n_values=(2, 3, 4, 5), l_values=(0, 1),
                 convention: GammaConvention = GammaConvention.TABLE,
                 steps: int = 20000, precision: float = 1e-13) -> dict:
    """The full validation dossier as one JSON-ready dict."""
    ref = load_reference()
    n_values = list(n_values)
    l_values = list(l_values)

    roots_section = []
    for conv in (GammaConvention.TABLE, GammaConvention.LITERAL):
        for l in l_values:
            for n in n_values:
                res = solve_termination(n, l, conv, precision=precision,
                                        asymptotic_flag=(l in (0, 1) and
                                                         ref.asymptotic(n, l)))
                published = ref.roots(l).get(n, ()) if l in (0, 1) else ()
                entries = []
                for root in res.rootset.roots:
                    chain, eff = coefficient_chain(n, l, root.t_star, conv)
                    near = _nearest(list(published), root.t_star)
                    entries.append({
                        "t_star": q6(root.t_star),
                        "omega": q6(root.omega),
                        "eta": q6(energy_relative(n, l, root.omega)),
                        "refinement_width": q6(root.refinement_width),
                        "effective_degree": eff,
                        "trailing_coefficient": q6(chain[-1]),
                        "nearest_published": q6(near) if near is not None else None,
                        "delta_published": q6(abs(near - root.t_star))
                        if near is not None else None,
                    })
                roots_section.append({
                    "n": n, "l": l, "convention": conv.value,
                    "asymptotic_flag": res.rootset.asymptotic_flag,
                    "negative_roots_discarded": res.rootset.negative_root_count,
                    "complex_roots_discarded": res.rootset.complex_root_count,
                    "roots": entries,
                })

    convention_differences = []
    for l in l_values:
        for n in n_values:
            t_table = [q6(r.t_star) for r in
                       solve_termination(n, l, GammaConvention.TABLE).rootset.roots]
            t_literal = [q6(r.t_star) for r in
                         solve_termination(n, l, GammaConvention.LITERAL).rootset.roots]
            convention_differences.append({
                "n": n, "l": l,
                "table_roots": t_table,
                "literal_roots": t_literal,
                "identical": t_table == t_literal,
            })

    oracle_rows = []
    for l in l_values:
        for n in n_values:
            res = solve_termination(n, l, convention)
            for root in res.rootset.roots:
                rec = validate_root(n, l, root.t_star, convention, steps=steps)
                d = asdict(rec)
                for k in ("t_star", "eta_analytic", "eta_oracle", "abs_delta",
                          "residual"):
                    d[k] = q6(d[k])
                oracle_rows.append(d)

    calibration = []
    for k, l in ((0, 0), (1, 0), (1, 1)):
        rec = validate_oscillator(k, l, steps=steps)
        d = asdict(rec)
        for key in ("t_star", "eta_analytic", "eta_oracle", "abs_delta",
                    "residual"):
            d[key] = q6(d[key])
        calibration.append(d)

    coeff_rows = []
    for l in (0, 1):
        for n in (2, 3, 4, 5):
            for root in solve_termination(n, l, convention).rootset.roots:
                chain, _ = coefficient_chain(n, l, root.t_star, convention)
                printed = printed_series_coefficients(l, root.t_star)[:n + 1]
                coeff_rows.append({
                    "n": n, "l": l, "t_star": q6(root.t_star),
                    "chain": [q6(a) for a in chain],
                    "printed": [q6(a) for a in printed],
                    "max_abs_diff": q6(max(abs(a - b)
                                           for a, b in zip(chain, printed))),
                })

    norm_rows, mom_rows = _dual_reading_attempts(convention)
    r_all: list[float] = []
    r_paper_roots: list[float] = []
    for row in mom_rows:
        published_roots = ref.roots(row["l"]).get(row["n"], ())
        for entry in row["omega_root"]:
            r_all.append(entry["computed"])
            if any(abs(entry["t_star"] - p) <= ROOT_MATCH_RTOL * p
                   for p in published_roots):
                r_paper_roots.append(entry["computed"])
    mean_r = {
        "values_all_roots": r_all,
        "values_paper_roots": r_paper_roots,
        "min": q6(min(r_paper_roots)) if r_paper_roots else None,
        "max": q6(max(r_paper_roots)) if r_paper_roots else None,
        "sanity_bracket_bohr": list(R_MEAN_BRACKET),
        "within_bracket": bool(r_paper_roots) and all(
            R_MEAN_BRACKET[0] <= v <= R_MEAN_BRACKET[1] for v in r_paper_roots),
        "claimed_range_bohr": list(ref.r_mean_claimed_range()),
    }

    asymptotic_entries = [
        {"n": n, "l": l,
         "note": "published 0 entry (omega -> infinity); metadata only, "
                 "not a determinant root"}
        for l in l_values for n in n_values
        if l in (0, 1) and ref.asymptotic(n, l)
    ]

    return {
        "meta": {"version": __version__, "convention": convention.value,
                 "precision": precision},
        "roots": roots_section,
        "convention_differences": convention_differences,
        "oracle": oracle_rows,
        "oscillator_calibration": calibration,
        "tables": build_tables(convention),
        "normalization_attempts": norm_rows,
        "moment_attempts": mom_rows,
        "coefficient_formulas": coeff_rows,
        "mean_r": mean_r,
        "asymptotic_entries": asymptotic_entries,
        "caveats": CAVEATS,
    }


def render_text(report: dict) -> str:
    """Human-readable rendering of the dossier."""
    lines: list[str] = []
    meta = report["meta"]
    lines.append(f"heunqdot validation dossier (version {meta['version']}, "
                 f"convention {meta['convention']}, precision {meta['precision']:g})")
    lines.append("")

    lines.append("== determinant roots (t = 1/sqrt(omega)) ==")
    for block in report["roots"]:
        head = (f"n={block['n']} l={block['l']} [{block['convention']}]"
                + ("  [asymptotic 0 entry flagged]" if block["asymptotic_flag"] else ""))
        lines.append(head)
        if not block["roots"]:
            lines.append("  no positive roots")
        for r in block["roots"]:
            pub = ("" if r["nearest_published"] is None else
                   f"  nearest published {r['nearest_published']:.6g} "
                   f"(|d| = {r['delta_published']:.2e})")
            lines.append(f"  t* = {r['t_star']:.6f}  omega = {r['omega']:.6e}  "
                         f"eta = {r['eta']:.6e}  eff.deg = {r['effective_degree']}"
                         + pub)
    lines.append("")

    lines.append("== oracle verdicts (independent shooting eigensolver) ==")
    for row in report["oracle"]:
        lines.append(
            f"n={row['n']} l={row['l']} t*={row['t_star']:.5f}: "
            f"eta_analytic = {row['eta_analytic']:.6e}, nearest oracle eta = "
            f"{row['eta_oracle']:.6e} ({row['oracle_nodes']} nodes), "
            f"|delta| = {row['abs_delta']:.2e}, ODE residual = "
            f"{row['residual']:.3g}  ->  {row['classification']}")
    lines.append("")

    lines.append("== oscillator calibration (Coulomb off; must be CONFIRMED) ==")
    for row in report["oscillator_calibration"]:
        lines.append(f"degree {row['n']} l={row['l']}: eta = "
                     f"{row['eta_analytic']:g} vs oracle {row['eta_oracle']:.9f} "
                     f"-> {row['classification']}")
    lines.append("")

    lines.append("== published-table reproduction ==")
    for row in report["tables"]:
        pv = "" if row["paper_value"] is None else f"{row['paper_value']:.6e}"
        cv = "" if row["computed_value"] is None else f"{row['computed_value']:.6e}"
        dv = "" if row["abs_delta"] is None else f"{row['abs_delta']:.2e}"
        lines.append(f"{row['table_id']:7s} {row['row_key']:30s} pub={pv:13s} "
                     f"computed={cv:13s} |d|={dv:9s} {row['classification']}")
    lines.append("")

    mr = report["mean_r"]
    lines.append(f"== <r> sanity == min {mr['min']}, max {mr['max']} Bohr; "
                 f"bracket {mr['sanity_bracket_bohr']} "
                 f"{'OK' if mr['within_bracket'] else 'VIOLATED'}; "
                 f"claimed span {mr['claimed_range_bohr']}")
    lines.append("")

    lines.append("== caveats ==")
    for c in report["caveats"]:
        lines.append(f"[{c['id']}] {c['description']}")
    lines.append("")
    return "\n".join(lines)
