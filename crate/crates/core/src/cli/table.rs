use std::fmt::Write as _;

use serde::Serialize;

use crate::dielectrics::{AbsorptionWavelength, OpticalState};
use crate::mediadb::MediumDatabase;
use crate::sweep::{Attribution, SweepResult};

pub const OPTICAL_COLUMNS: [&str; 8] = [
    "f_hz",
    "lambda0_m",
    "eps_real",
    "eps_imag",
    "n_real",
    "n_imag",
    "lambda_g_m",
    "mu_abs_per_m",
];

pub const SWEEP_COLUMNS: [&str; 19] = [
    "medium",
    "axis",
    "axis_value",
    "f_hz",
    "lambda0_m",
    "distance_m",
    "beam_rad",
    "directivity",
    "eps_real",
    "eps_imag",
    "n_real",
    "n_imag",
    "lambda_g_m",
    "mu_abs_per_m",
    "spreading_db",
    "absorption_db",
    "scattering_db",
    "total_db",
    "scattering_clamped",
];

pub const ATTRIBUTION_COLUMNS: [&str; 7] = ["medium", "axis", "span_db", "min_db", "max_db", "at_min", "at_max"];

/// Formats `x` with `digits` significant digits, `%g` style: plain decimal
/// for exponents in `[-5, digits)`, otherwise `<mantissa>e<exp>`. Trailing
/// zeros are dropped. Output never depends on locale.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn optical_csv(states: &[OpticalState<f64>], digits: usize) -> String {
    let g = |x: f64| format_sig(x, digits);
    write_csv(
        &OPTICAL_COLUMNS,
        states.iter().map(|s| {
            [
                g(s.frequency.hz()),
                g(s.frequency.lambda_0()),
                g(s.permittivity.eps_real),
                g(s.permittivity.eps_imag),
                g(s.index.n_real),
                g(s.index.n_imag),
                g(s.lambda_g),
                g(s.mu_abs),
            ]
        }),
    )
}

#[derive(Serialize)]
struct OpticalRow {
    f_hz: f64,
    lambda0_m: f64,
    eps_real: f64,
    eps_imag: f64,
    n_real: f64,
    n_imag: f64,
    lambda_g_m: f64,
    mu_abs_per_m: f64,
}

pub fn optical_json(medium: &str, absorption: AbsorptionWavelength, states: &[OpticalState<f64>]) -> String {
    let rows: Vec<OpticalRow> = states
        .iter()
        .map(|s| OpticalRow {
            f_hz: s.frequency.hz(),
            lambda0_m: s.frequency.lambda_0(),
            eps_real: s.permittivity.eps_real,
            eps_imag: s.permittivity.eps_imag,
            n_real: s.index.n_real,
            n_imag: s.index.n_imag,
            lambda_g_m: s.lambda_g,
            mu_abs_per_m: s.mu_abs,
        })
        .collect();
    json(&serde_json::json!({
        "medium": medium,
        "absorption_wavelength": absorption,
        "rows": rows,
    }))
}

pub fn sweep_csv(result: &SweepResult, digits: usize) -> String {
    let g = |x: f64| format_sig(x, digits);
    let axis = result.request.axis.as_str();
    write_csv(
        &SWEEP_COLUMNS,
        result.rows.iter().map(|r| {
            [
                r.medium.clone(),
                axis.to_string(),
                g(r.axis_value),
                g(r.f_hz),
                g(r.lambda0_m),
                g(r.distance_m),
                g(r.beam_rad),
                g(r.directivity),
                g(r.optical.eps_real),
                g(r.optical.eps_imag),
                g(r.optical.n_real),
                g(r.optical.n_imag),
                g(r.optical.lambda_g_m),
                g(r.optical.mu_abs_per_m),
                g(r.loss.spreading_db),
                g(r.loss.absorption_db),
                g(r.loss.scattering_db),
                g(r.loss.total_db),
                r.scattering_clamped.to_string(),
            ]
        }),
    )
}

pub fn attribution_csv(spans: &[Attribution], digits: usize) -> String {
    let g = |x: f64| format_sig(x, digits);
    write_csv(
        &ATTRIBUTION_COLUMNS,
        spans.iter().map(|a| {
            [
                a.medium.clone(),
                a.axis.as_str().to_string(),
                g(a.span_db),
                g(a.min_db),
                g(a.max_db),
                g(a.at_min),
                g(a.at_max),
            ]
        }),
    )
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn validate_report(db: &MediumDatabase) -> String {
    let mut out = String::new();
    if db.source_paths().is_empty() {
        out.push_str("source: bundled data\n");
    }
    for p in db.source_paths() {
        let _ = writeln!(out, "source: {}", p.display());
    }
    let media: Vec<_> = db.media().collect();
    let particles: Vec<_> = db.particles().collect();
    let _ = writeln!(out, "media: {}", media.len());
    for m in media {
        let _ = writeln!(
            out,
            "  {} ({}): band [{}, {}] Hz; {}",
            m.id,
            m.display_name,
            format_sig(m.medium.band.min_hz, 6),
            format_sig(m.medium.band.max_hz, 6),
            m.provenance
        );
    }
    let _ = writeln!(out, "particles: {}", particles.len());
    for p in particles {
        let pop = &p.population;
        let _ = writeln!(
            out,
            "  {}: radius {} m, volume fraction {}, sigma_abs {} m^2, {:?}",
            p.id,
            format_sig(pop.radius(), 6),
            format_sig(pop.volume_fraction(), 6),
            format_sig(pop.sigma_abs(), 6),
            pop.size_class()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 9), "0");
        assert_eq!(format_sig(1e12, 9), "1e12");
        assert_eq!(format_sig(123456789.0, 9), "123456789");
        assert_eq!(format_sig(1234567890.0, 9), "1.23456789e9");
        assert_eq!(format_sig(0.000299792458, 9), "0.000299792458");
        assert_eq!(format_sig(1.4287215e-6, 4), "1.429e-6");
        assert_eq!(format_sig(-2.5, 3), "-2.5");
        assert_eq!(format_sig(2.0 / 3.0, 3), "0.667");
        assert_eq!(format_sig(9.9999, 3), "10");
        assert_eq!(format_sig(f64::NAN, 3), "NaN");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, 1.0 / 3.0, 223.34629884321762, 8.24e-12] {
            assert_eq!(format_sig(x, 17).parse::<f64>().unwrap(), x);
        }
    }
}
