//! CSV and JSON rendering. Both formats carry the same numeric values:
//! every float is formatted once as `%.12e`-style scientific notation and
//! that string is what appears in the CSV cell and in the JSON row, so
//! golden-file diffs are byte-stable.

use crate::request::RunRequest;
use casimir_graphene::lifshitz::{EnergyBreakdown, Estimate};
use casimir_graphene::sweep::{Mode, Quantity, ReportRow};

/// One float, 12 digits after the decimal point, scientific notation.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.12e}")
}

fn cell(e: &Estimate) -> [String; 2] {
    [fmt_sci(e.value), fmt_sci(e.abs_err)]
}

fn row_columns(quantity: Quantity, mode: Mode) -> Vec<&'static str> {
    let mut cols = vec!["a_m", "t_k", "validity_warning"];
    let full = mode == Mode::Full || mode == Mode::Both;
    let asym = mode == Mode::Asym || mode == Mode::Both;
    let q = |want: Quantity| quantity == want || quantity == Quantity::All;
    if q(Quantity::FreeEnergy) {
        if full {
            cols.extend(["free_energy_full_j_m2", "free_energy_full_err"]);
        }
        if asym {
            cols.extend(["free_energy_asym_j_m2", "free_energy_asym_err"]);
        }
    }
    if q(Quantity::Entropy) {
        if full {
            cols.extend(["entropy_full_j_k_m2", "entropy_full_err"]);
        }
        if asym {
            cols.extend(["entropy_asym_j_k_m2", "entropy_asym_err"]);
        }
    }
    if q(Quantity::Pressure) {
        if full {
            cols.extend(["pressure_full_pa", "pressure_full_err"]);
        }
        if asym {
            cols.extend(["pressure_asym_pa", "pressure_asym_err"]);
        }
    }
    cols
}

fn row_values(row: &ReportRow, quantity: Quantity, mode: Mode) -> Vec<String> {
    let mut vals = vec![
        fmt_sci(row.a),
        fmt_sci(row.t),
        if row.validity_warning { "1".into() } else { "0".into() },
    ];
    let full = mode == Mode::Full || mode == Mode::Both;
    let asym = mode == Mode::Asym || mode == Mode::Both;
    let q = |want: Quantity| quantity == want || quantity == Quantity::All;
    let mut push = |e: &Option<Estimate>| {
        let e = e.expect("field present for the requested quantity/mode");
        vals.extend(cell(&e));
    };
    if q(Quantity::FreeEnergy) {
        if full {
            push(&row.free_energy_full);
        }
        if asym {
            push(&row.free_energy_asym);
        }
    }
    if q(Quantity::Entropy) {
        if full {
            push(&row.entropy_full);
        }
        if asym {
            push(&row.entropy_asym);
        }
    }
    if q(Quantity::Pressure) {
        if full {
            push(&row.pressure_full);
        }
        if asym {
            push(&row.pressure_asym);
        }
    }
    vals
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn json_table(request: &RunRequest, command: &str, header: &[&str], rows: &[Vec<String>]) -> String {
    let meta = serde_json::json!({
        "tool": "casimir-graphene",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "alpha": fmt_sci(request.setup.alpha),
        "v_tilde": fmt_sci(request.setup.v_tilde),
        "hbar_c_j_m": fmt_sci(request.setup.hbar_c),
        "k_b_j_k": fmt_sci(request.setup.k_b),
        "rel_tol": fmt_sci(request.cfg.rel_tol),
        "l_max_cap": request.cfg.l_max_cap,
        "paper_approx": request.cfg.paper_approx,
        "workers": request.workers,
        "value_format": "%.12e",
    });
    let json_rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            let obj: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(r.iter())
                .map(|(k, v)| ((*k).to_string(), serde_json::Value::String(v.clone())))
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({ "meta": meta, "rows": json_rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Renders compute/sweep rows in the requested format.
pub fn render_rows(request: &RunRequest, command: &str, rows: &[ReportRow]) -> String {
    let header = row_columns(request.quantity, request.mode);
    let values: Vec<Vec<String>> = rows
        .iter()
        .map(|r| row_values(r, request.quantity, request.mode))
        .collect();
    match request.format {
        crate::request::FormatArg::Csv => csv_table(&header, &values),
        crate::request::FormatArg::Json => json_table(request, command, &header, &values),
    }
}

/// Renders the `constants` row.
#[allow(clippy::too_many_arguments)]
pub fn render_constants(
    request: &RunRequest,
    tau: f64,
    t_eff: f64,
    t_eff_g: f64,
    rho_tm_sq: f64,
    rho_te_sq: f64,
    c_tm: f64,
    c_te: f64,
) -> String {
    let header = vec![
        "a_m", "t_k", "alpha", "v_tilde", "tau", "t_eff_k", "t_eff_g_k", "rho_tm_sq", "rho_te_sq", "c_tm",
        "c_te",
    ];
    let row = vec![
        fmt_sci(request.setup.a),
        fmt_sci(request.setup.t),
        fmt_sci(request.setup.alpha),
        fmt_sci(request.setup.v_tilde),
        fmt_sci(tau),
        fmt_sci(t_eff),
        fmt_sci(t_eff_g),
        fmt_sci(rho_tm_sq),
        fmt_sci(rho_te_sq),
        fmt_sci(c_tm),
        fmt_sci(c_te),
    ];
    match request.format {
        crate::request::FormatArg::Csv => csv_table(&header, &[row]),
        crate::request::FormatArg::Json => json_table(request, "constants", &header, &[row]),
    }
}

/// Renders the `decompose` row.
pub fn render_breakdown(request: &RunRequest, b: &EnergyBreakdown) -> String {
    let header = vec![
        "a_m",
        "t_k",
        "e0_j_m2",
        "e0_err",
        "d1_tm_j_m2",
        "d1_tm_err",
        "d1_te_j_m2",
        "d1_te_err",
        "d2_l0_tm_j_m2",
        "d2_l0_tm_err",
        "d2_l0_te_j_m2",
        "d2_l0_te_err",
        "d2_tail_tm_j_m2",
        "d2_tail_tm_err",
        "d2_tail_te_j_m2",
        "d2_tail_te_err",
        "f_total_j_m2",
        "f_total_err",
        "residual_j_m2",
    ];
    let mut row = vec![fmt_sci(request.setup.a), fmt_sci(request.setup.t)];
    for e in [
        b.e0,
        b.d1_tm,
        b.d1_te,
        b.d2_l0_tm,
        b.d2_l0_te,
        b.d2_tail_tm,
        b.d2_tail_te,
        b.f_total,
    ] {
        row.extend(cell(&e));
    }
    row.push(fmt_sci(b.residual()));
    match request.format {
        crate::request::FormatArg::Csv => csv_table(&header, &[row]),
        crate::request::FormatArg::Json => json_table(request, "decompose", &header, &[row]),
    }
}
