//! Canonical text rendering.
//!
//! ```text
//! sum     := "0" | term { (" + " | " - ") term }
//! term    := [ "-" ] [ rational " * " ] body
//! body    := "1" | part { " * " part }
//! part    := "(2pi)" [ "^" int ] | "lambda" [ "^" int ] | factor
//! factor  := "osc(" time "; " energy ")"          -- exp(i·time·energy/λ²), no 1/λ² budget
//!          | "kosc(" time "; " energy ")"         -- same, owning one 1/λ²
//!          | "kosc" "^" int "(" time "; " energy ")"
//!          | "dk(" wave ", " wave ")"             -- δ(k - k')
//!          | "dt(" time ")" | "de(" energy ")"    -- δ(T), δ(E)
//!          | "N(" wave ")" | "(N(" wave ")+1)"
//! time    := signed sum of time labels, e.g. "t1 - t3"
//! energy  := signed sum of rational multiples of "w(k)", "k.k'", "k.p"
//! ```
//!
//! Terms appear in canonical order, so equal values render to equal strings.

use std::fmt::Write;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::comb::{Basis, EnergyComb, TimeComb};
use super::factor::ScalarFactor;
use super::label::LabelNames;
use super::monomial::ScalarMonomial;
use super::sum::ScalarSum;

fn signed_join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (negative, body)) in parts.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub fn render_time(t: &TimeComb, names: &dyn LabelNames) -> String {
    let parts = t
        .iter()
        .map(|(label, c)| {
            let name = names.time_name(label);
            let body = if c.abs() == 1 {
                name
            } else {
                format!("{} {}", c.abs(), name)
            };
            (c < 0, body)
        })
        .collect();
    signed_join(parts)
}

fn render_basis(b: Basis, names: &dyn LabelNames) -> String {
    match b {
        Basis::Omega(k) => format!("w({})", names.wave_name(k)),
        Basis::Dot(a, b) => format!("{}.{}", names.wave_name(a), names.wave_name(b)),
        Basis::DotP(k) => format!("{}.p", names.wave_name(k)),
    }
}

pub fn render_energy(e: &EnergyComb, names: &dyn LabelNames) -> String {
    let parts = e
        .iter()
        .map(|(b, c)| {
            let sym = render_basis(b, names);
            let mag = c.abs();
            let body = if mag.is_one() {
                sym
            } else {
                format!("{mag} {sym}")
            };
            (c.is_negative(), body)
        })
        .collect();
    signed_join(parts)
}

pub fn render_factor(f: &ScalarFactor, names: &dyn LabelNames) -> String {
    match f {
        ScalarFactor::OscExp {
            time,
            energy,
            budget,
        } => {
            let head = match budget {
                0 => "osc".to_string(),
                1 => "kosc".to_string(),
                b => format!("kosc^{b}"),
            };
            format!(
                "{head}({}; {})",
                render_time(time, names),
                render_energy(energy, names)
            )
        }
        ScalarFactor::DeltaK(a, b) => {
            format!("dk({}, {})", names.wave_name(*a), names.wave_name(*b))
        }
        ScalarFactor::TimeDelta(t) => format!("dt({})", render_time(t, names)),
        ScalarFactor::EnergyDelta(e) => format!("de({})", render_energy(e, names)),
        ScalarFactor::MFactor { k, offset: 0 } => format!("N({})", names.wave_name(*k)),
        ScalarFactor::MFactor { k, offset } => {
            format!("(N({})+{offset})", names.wave_name(*k))
        }
    }
}

fn power(base: &str, p: i32) -> Option<String> {
    match p {
        0 => None,
        1 => Some(base.to_string()),
        p => Some(format!("{base}^{p}")),
    }
}

/// Renders one monomial; the sign is returned separately.
fn render_body(m: &ScalarMonomial, names: &dyn LabelNames) -> (bool, String) {
    let mag: Rational64 = m.coeff.abs();
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() {
        parts.push(mag.to_string());
    }
    parts.extend(power("(2pi)", m.pow_2pi));
    parts.extend(power("lambda", m.pow_lambda));
    parts.extend(m.factors.iter().map(|f| render_factor(f, names)));
    let body = if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    };
    (m.coeff.is_negative(), body)
}

pub fn render_monomial(m: &ScalarMonomial, names: &dyn LabelNames) -> String {
    if m.coeff.is_zero() {
        return "0".to_string();
    }
    signed_join(vec![render_body(m, names)])
}

pub fn render_sum(s: &ScalarSum, names: &dyn LabelNames) -> String {
    signed_join(s.terms.iter().map(|m| render_body(m, names)).collect())
}

/// One term per line, for reports.
pub fn render_sum_lines(s: &ScalarSum, names: &dyn LabelNames) -> String {
    if s.is_zero() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for m in &s.terms {
        let _ = writeln!(out, "{}", render_monomial(m, names));
    }
    out
}
