//! CSV rendering with 12 significant digits.

use affqis::panel::MeasurePanel;
use affqis::sweep::SweepRow;
use affqis::verify::VerifyReport;

/// Every check a panel can report, in column order.
pub const CHECKS: [&str; 10] = [
    "sandwich_lower",
    "sandwich_upper",
    "sandwich_upper_raw",
    "holevo_lower",
    "holevo_upper",
    "holevo_upper_sqrt",
    "discord_bound",
    "q_bound",
    "n_bound",
    "ip_bound",
];

/// `x` with 12 significant digits: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros removed.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn panel_header() -> String {
    let mut cols: Vec<String> = [
        "param",
        "c_affinity",
        "c_fidelity_raw",
        "c_trace_raw",
        "c_trace_norm",
        "d_affinity",
        "d_lower",
        "q_corr",
        "n_corr",
        "ip",
    ]
    .map(String::from)
    .to_vec();
    cols.extend(CHECKS.iter().map(|c| format!("slack_{c}")));
    cols.extend(["d_lower_literal", "c_meas_min", "c_meas_max", "n_corr_unconstrained"].map(String::from));
    cols.join(",")
}

pub fn panel_csv(label: &str, panel: &MeasurePanel) -> String {
    let c = panel.correlations.as_ref();
    let mut fields = vec![
        quote(label),
        sig(panel.c_affinity),
        sig(panel.c_fidelity),
        sig(panel.c_trace_raw),
        sig(panel.c_trace_norm),
        opt(c.map(|c| c.d_affinity)),
        opt(c.map(|c| c.d_lower)),
        opt(c.map(|c| c.q_corr)),
        opt(c.map(|c| c.n_corr)),
        opt(c.map(|c| c.ip)),
    ];
    fields.extend(CHECKS.iter().map(|name| opt(panel.check(name).map(|k| k.slack))));
    fields.extend([
        opt(c.map(|c| c.d_lower_literal)),
        opt(c.map(|c| c.c_meas_min)),
        opt(c.map(|c| c.c_meas_max)),
        opt(c.map(|c| c.n_corr_unconstrained)),
    ]);
    format!("{}\n{}\n", panel_header(), fields.join(","))
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("param,closed_form,optimizer,gap\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            sig(r.param),
            sig(r.closed_form),
            sig(r.optimizer),
            sig(r.gap)
        ));
    }
    out
}

pub fn verify_csv(report: &VerifyReport) -> String {
    let mut out = String::from("suite,property,trials,passed,failed,errors,worst_slack,tolerance,status\n");
    for p in &report.properties {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            p.suite,
            p.property,
            p.trials,
            p.passed,
            p.trials - p.passed,
            p.errors,
            sig(p.worst_slack),
            sig(p.tolerance),
            if p.holds() { "pass" } else { "FAIL" }
        ));
    }
    out
}
