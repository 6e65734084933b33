use std::f64::consts::TAU;

use serde_json::{json, Value};

use super::{CliError, Output, RepArgs};
use crate::algebras::{AlgebraKind, GradedStarAlgebra};
use crate::induce::{
    induce as induce_rep, induce_one_dimensional, max_relative_entry_difference, preset_rep, InducedRep, RepFamily,
};
use crate::pds::{orbit, stabilizer, Stabilizer};
use crate::spectrum::{positive_spectrum, section, Character, Sign};
use crate::verify::{
    bad_polynomial, covariance_check, positivity_check, relation_residual, sos_membership, well_behaved_check,
    SosError, SosVerdict,
};

/// Induced and preset matrices must agree to this many digits.
pub const GOLDEN_TOL: f64 = 1e-12;
/// Entrywise tolerance for `M(a_1) = u g(T)`.
pub const RECONSTRUCTION_TOL: f64 = 1e-12;
/// Bad polynomials may dip this far below zero from rounding.
pub const POSITIVITY_SLACK: f64 = 1e-10;
/// Label window `[-SAMPLE_RADIUS, SAMPLE_RADIUS]` of the entries shown by `classify`.
pub const SAMPLE_RADIUS: i64 = 6;

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn params_of(alg: &GradedStarAlgebra) -> &crate::numeric::Params {
    alg.params().expect("command-line algebras are numeric")
}

/// Shortest round-trip form, with an exponent for very small or large magnitudes.
fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// `3`, `1/2`, `2.5` as twice the spin.
pub fn parse_spin(s: &str) -> Result<u32, CliError> {
    let bad = || CliError::Usage(format!("spin `{s}` is not a non-negative integer or half-integer"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        return match d.trim() {
            "1" => Ok(2 * n),
            "2" => Ok(n),
            _ => Err(bad()),
        };
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    let l2 = 2.0 * x;
    if x < 0.0 || l2.fract() != 0.0 || l2 > u32::MAX as f64 {
        return Err(bad());
    }
    Ok(l2 as u32)
}

pub fn rep_family(a: &RepArgs) -> Result<RepFamily, CliError> {
    Ok(match a.rep.to_ascii_lowercase().replace('-', "_").as_str() {
        "fock" => RepFamily::Fock,
        "gamma" => RepFamily::Gamma { gamma: a.gamma },
        "one_dim" | "onedim" => RepFamily::OneDim { phi: a.phi },
        "podles_plus" | "plus" => RepFamily::PodlesPlus,
        "podles_minus" | "minus" => RepFamily::PodlesMinus,
        "podles_phi" => RepFamily::PodlesPhi { phi: a.phi },
        "uq" => RepFamily::Uq {
            omega: a.omega,
            l2: parse_spin(&a.l)?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown representation `{other}` (fock, gamma, one_dim, podles_plus, podles_minus, podles_phi, uq)"
            )))
        }
    })
}

pub fn list_algebras() -> Output {
    let descs: Vec<_> = GradedStarAlgebra::all_symbolic().iter().map(|a| a.descriptor()).collect();
    let mut table = vec![vec!["name".into(), "domain".into(), "generators".into(), "relations".into()]];
    for (alg, d) in GradedStarAlgebra::all_symbolic().iter().zip(&descs) {
        table.push(vec![
            alg.kind().cli_name().into(),
            d.domain.into(),
            d.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect::<Vec<_>>().join(" "),
            d.relations.join("; "),
        ]);
    }
    Output {
        result: json!({ "algebras": descs }),
        table,
        failed: false,
    }
}

pub fn spectrum(alg: &GradedStarAlgebra, depth: u32, cutoff: u64) -> Output {
    let desc = positive_spectrum(alg).expect("numeric preset");
    let mut rows = Vec::new();
    let mut table = vec![vec!["point".into(), "t".into(), "s".into(), "min_product".into(), "positive".into()]];
    let mut failed = false;
    for chi in desc.points(cutoff) {
        let min = chi.min_norm(depth);
        let ok = chi.is_positive(depth);
        failed |= !ok;
        table.push(vec![
            chi.label.to_string(),
            fmt_f64(chi.t),
            chi.s.map(fmt_f64).unwrap_or_default(),
            fmt_f64(min),
            ok.to_string(),
        ]);
        rows.push(json!({ "point": chi, "min_product": min, "positive": ok }));
    }
    Output {
        result: json!({ "description": desc, "depth": depth, "verification": rows }),
        table,
        failed,
    }
}

pub fn orbits(alg: &GradedStarAlgebra, max_radius: u64, cutoff: u64, gamma: &[f64]) -> Result<Output, CliError> {
    check_gamma(gamma)?;
    let points = section(alg, cutoff, gamma).expect("numeric preset");
    let mut out = Vec::new();
    let mut table = vec![vec![
        "section_point".into(),
        "stabilizer".into(),
        "orbit_size".into(),
        "truncated".into(),
        "labels".into(),
    ]];
    for chi in points {
        let o = orbit(&chi, max_radius);
        let labels = o.labels();
        table.push(vec![
            chi.label.to_string(),
            stab_name(o.stabilizer).into(),
            labels.len().to_string(),
            o.truncated.to_string(),
            labels.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
        ]);
        out.push(json!({
            "section_point": chi,
            "stabilizer": o.stabilizer,
            "labels": labels,
            "orbit_size": labels.len(),
            "truncated": o.truncated,
        }));
    }
    Ok(Output {
        result: json!({ "max_radius": max_radius, "orbits": out }),
        table,
        failed: false,
    })
}

fn stab_name(s: Stabilizer) -> &'static str {
    match s {
        Stabilizer::Trivial => "trivial",
        Stabilizer::AllOfZ => "all_of_z",
    }
}

fn check_gamma(gamma: &[f64]) -> Result<(), CliError> {
    match gamma.iter().find(|g| !(**g > 0.0 && **g <= 1.0)) {
        Some(g) => Err(CliError::Usage(format!("gamma sample {g} outside (0, 1]"))),
        None => Ok(()),
    }
}

/// Nonzero generator entries `(generator, row label, column label, re, im)`
/// with both labels in `[lo, hi]`.
fn entries(rep: &InducedRep, lo: i64, hi: i64) -> Vec<(String, i64, i64, f64, f64)> {
    let mut v = Vec::new();
    for (sym, m) in rep.algebra().generators().iter().zip(&rep.matrices) {
        for ((i, j), z) in m.entries() {
            let (gi, gj) = (rep.labels[i], rep.labels[j]);
            if (lo..=hi).contains(&gi) && (lo..=hi).contains(&gj) {
                v.push((sym.name.clone(), gi, gj, z.re, z.im));
            }
        }
    }
    v
}

fn entries_json(e: &[(String, i64, i64, f64, f64)]) -> Value {
    Value::Array(
        e.iter()
            .map(|(g, r, c, re, im)| json!({"generator": g, "row": r, "col": c, "re": re, "im": im}))
            .collect(),
    )
}

/// Dimension of the irreducible, `None` when infinite.
fn true_dim(rep: &InducedRep) -> Option<usize> {
    (!rep.truncated_below && !rep.truncated_above).then(|| rep.dim())
}

pub fn classify(alg: &GradedStarAlgebra, max_l2: u32, truncation: u64, gamma: &[f64]) -> Result<Output, CliError> {
    check_gamma(gamma)?;
    let points = section(alg, max_l2 as u64, gamma).expect("numeric preset");
    let mut reps = Vec::new();
    let mut table = vec![vec![
        "family".into(),
        "section_point".into(),
        "stabilizer".into(),
        "dim".into(),
        "parameter".into(),
        "preset_max_relative_difference".into(),
    ]];
    let mut failed = false;
    for chi in points {
        let stab = stabilizer(&chi);
        // a fixed point yields a circle of one-dimensional reps; φ = 0 stands for it
        let (rep, parameter) = match stab {
            Stabilizer::Trivial => (induce_rep(alg, &chi, truncation).map_err(domain)?, Value::Null),
            Stabilizer::AllOfZ => (
                induce_one_dimensional(alg, &chi, 0.0).map_err(domain)?,
                json!({"phi": "[0, 2pi)", "representative_phi": 0.0}),
            ),
        };
        let family = rep.family.clone().ok_or_else(|| domain("section point outside every preset family"))?;
        let preset = preset_rep(alg, &family, truncation).map_err(domain)?;
        let diff = max_relative_entry_difference(&rep, &preset).unwrap_or(f64::INFINITY);
        failed |= diff.is_nan() || diff > GOLDEN_TOL;
        let lo = if rep.truncated_below { -SAMPLE_RADIUS } else { i64::MIN };
        let hi = if rep.truncated_above { SAMPLE_RADIUS } else { i64::MAX };
        let dim = true_dim(&rep);
        table.push(vec![
            family_display(&family),
            chi.label.to_string(),
            stab_name(stab).into(),
            dim.map_or("infinite".into(), |d| d.to_string()),
            if parameter.is_null() { String::new() } else { "phi in [0, 2pi)".into() },
            fmt_f64(diff),
        ]);
        reps.push(json!({
            "family": family,
            "section_point": chi,
            "stabilizer": stab,
            "dim": dim,
            "window_dim": rep.dim(),
            "parameter": parameter,
            "preset_max_relative_difference": diff,
            "sample_entries": entries_json(&entries(&rep, lo, hi)),
        }));
    }
    Ok(Output {
        result: json!({ "count": reps.len(), "representations": reps }),
        table,
        failed,
    })
}

fn family_display(f: &RepFamily) -> String {
    match f {
        RepFamily::Gamma { gamma } => format!("gamma({gamma})"),
        RepFamily::Uq { omega, l2 } => {
            let l = if l2 % 2 == 0 { (l2 / 2).to_string() } else { format!("{l2}/2") };
            format!("uq(omega={omega:+},l={l})")
        }
        other => other.name().into(),
    }
}

fn parse_character(alg: &GradedStarAlgebra, text: &str) -> Result<Character, CliError> {
    let p = params_of(alg);
    let bad = || CliError::Usage(format!("cannot read character `{text}` for {}", alg.kind()));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let chi = match (alg.kind(), parts.as_slice()) {
        (AlgebraKind::QOscillator, ["fixed"]) => Character::fixed_point(p),
        (AlgebraKind::QOscillator, [g]) if g.starts_with("gamma=") => {
            let gamma: f64 = g["gamma=".len()..].parse().map_err(|_| bad())?;
            check_gamma(&[gamma])?;
            Character::gamma(p, gamma, 0)
        }
        (AlgebraKind::QOscillator, [k]) => Character::q_integer(p, k.parse().map_err(|_| bad())?),
        (AlgebraKind::Podles, ["infinity"]) => Character::infinity(p),
        (AlgebraKind::Podles, [m, s]) => {
            Character::podles(p, m.parse().map_err(|_| bad())?, Sign::parse(s).ok_or_else(bad)?)
        }
        (AlgebraKind::UqSu2, [m, n, s]) => Character::uq(
            p,
            m.parse().map_err(|_| bad())?,
            n.parse().map_err(|_| bad())?,
            Sign::parse(s).ok_or_else(bad)?,
        ),
        _ => return Err(bad()),
    };
    let needs_q_below_one = matches!(
        chi.label,
        crate::spectrum::CharLabel::FixedPoint | crate::spectrum::CharLabel::Gamma { .. }
    );
    if needs_q_below_one && p.q_f64() >= 1.0 {
        return Err(domain(format!("character `{text}` exists only for q < 1")));
    }
    Ok(chi)
}

/// Entry formula of the closed-form family, written in the customary basis index.
fn entry_formula(family: Option<&RepFamily>, generator: &str) -> &'static str {
    match (family, generator) {
        (Some(RepFamily::Fock), "a") => "a e_k = [[k]]^(1/2) e_(k-1), k = -g",
        (Some(RepFamily::Fock), "a*") => "a* e_k = [[k+1]]^(1/2) e_(k+1), k = -g",
        (Some(RepFamily::Gamma { .. }), "a") => "a e_k = ((1+q^(gamma+k))/(1-q))^(1/2) e_(k-1), k = -g",
        (Some(RepFamily::Gamma { .. }), "a*") => "a* e_k = ((1+q^(gamma+k+1))/(1-q))^(1/2) e_(k+1), k = -g",
        (Some(RepFamily::OneDim { .. }), "a") => "a = e^(i phi) (1-q)^(-1/2)",
        (Some(RepFamily::OneDim { .. }), "a*") => "a* = e^(-i phi) (1-q)^(-1/2)",
        (Some(RepFamily::PodlesPlus | RepFamily::PodlesMinus), "a") => "a e_k = q^(2k) lambda e_k, k = -g",
        (Some(RepFamily::PodlesPlus | RepFamily::PodlesMinus), "b") => {
            "b e_k = (q^(2k) lambda - q^(4k) lambda^2 + r)^(1/2) e_(k-1), k = -g"
        }
        (Some(RepFamily::PodlesPlus | RepFamily::PodlesMinus), "b*") => {
            "b* e_k = (q^(2k+2) lambda - q^(4k+4) lambda^2 + r)^(1/2) e_(k+1), k = -g"
        }
        (Some(RepFamily::PodlesPhi { .. }), "a") => "a = 0",
        (Some(RepFamily::PodlesPhi { .. }), "b") => "b = e^(i phi) r^(1/2)",
        (Some(RepFamily::PodlesPhi { .. }), "b*") => "b* = e^(-i phi) r^(1/2)",
        (Some(RepFamily::Uq { .. }), "K") => "K e_m = omega q^m e_m, m = g - l",
        (Some(RepFamily::Uq { .. }), "K^-1") => "K^-1 e_m = omega q^(-m) e_m, m = g - l",
        (Some(RepFamily::Uq { .. }), "E") => "E e_m = q^(m+1) ([l-m][l+m+1])^(1/2) e_(m+1), m = g - l",
        (Some(RepFamily::Uq { .. }), "F") => "F e_m = omega q^(-m) ([l+m][l-m+1])^(1/2) e_(m-1), m = g - l",
        _ => "induced: chi^g(x) on degree zero, chi^g(r* r)^(1/2) on the ladder",
    }
}

fn rep_json(rep: &InducedRep) -> Value {
    let gens: Vec<Value> = rep
        .algebra()
        .generators()
        .iter()
        .zip(&rep.matrices)
        .map(|(s, m)| {
            let coo: Vec<Value> = m.entries().map(|((i, j), z)| json!([i, j, z.re, z.im])).collect();
            json!({ "name": s.name, "coo": coo })
        })
        .collect();
    json!({
        "family": rep.family,
        "source": rep.source,
        "base": rep.base,
        "labels": rep.labels,
        "truncated_below": rep.truncated_below,
        "truncated_above": rep.truncated_above,
        "window": rep.window,
        "generators": gens,
        "spectral_data": rep.spectral_data(),
    })
}

pub fn induce(alg: &GradedStarAlgebra, character: &str, truncation: u64, phi: f64) -> Result<Output, CliError> {
    if !(0.0..TAU).contains(&phi) {
        return Err(CliError::Usage(format!("phase {phi} outside [0, 2pi)")));
    }
    let chi = parse_character(alg, character)?;
    let rep = match stabilizer(&chi) {
        Stabilizer::Trivial => induce_rep(alg, &chi, truncation),
        Stabilizer::AllOfZ => induce_one_dimensional(alg, &chi, phi),
    }
    .map_err(domain)?;
    let mut table = vec![vec![
        "generator".into(),
        "row_label".into(),
        "col_label".into(),
        "re".into(),
        "im".into(),
        "formula".into(),
    ]];
    for (g, r, c, re, im) in entries(&rep, i64::MIN, i64::MAX) {
        let f = entry_formula(rep.family.as_ref(), &g);
        table.push(vec![g, r.to_string(), c.to_string(), fmt_f64(re), fmt_f64(im), f.into()]);
    }
    Ok(Output {
        result: rep_json(&rep),
        table,
        failed: false,
    })
}

pub fn verify(alg: &GradedStarAlgebra, family: &RepFamily, truncation: u64, tol: f64) -> Result<Output, CliError> {
    let rep = preset_rep(alg, family, truncation).map_err(domain)?;
    let residuals = relation_residual(&rep, tol).map_err(domain)?;
    let wb = well_behaved_check(&rep, residuals.margin).map_err(domain)?;
    let mut table = vec![vec!["check".into(), "absolute".into(), "relative".into(), "pass".into()]];
    for r in residuals.relations.iter().chain(&residuals.adjointness) {
        table.push(vec![
            r.name.clone(),
            fmt_f64(r.absolute),
            fmt_f64(r.relative),
            (r.relative <= tol).to_string(),
        ]);
    }
    table.push(vec!["well_behaved".into(), String::new(), String::new(), wb.pass.to_string()]);
    let mut pass = residuals.pass && wb.pass;
    let positivity = match bad_polynomial(alg) {
        Some(p) => {
            let rpt = positivity_check(&rep, &p).map_err(domain)?;
            let ok = rpt.min_eigenvalue >= -POSITIVITY_SLACK;
            pass &= ok;
            table.push(vec![
                format!("positivity {}", p.display(alg)),
                fmt_f64(rpt.min_eigenvalue),
                String::new(),
                ok.to_string(),
            ]);
            json!({ "polynomial": p.display(alg).to_string(), "min_eigenvalue": rpt.min_eigenvalue,
                    "argmin_label": rpt.argmin_label, "pass": ok })
        }
        None => Value::Null,
    };
    Ok(Output {
        result: json!({
            "representation": family,
            "dim": rep.dim(),
            "residuals": residuals,
            "well_behaved": wb,
            "positivity": positivity,
            "pass": pass,
        }),
        table,
        failed: !pass,
    })
}

pub fn sos(alg: &GradedStarAlgebra, target: &str, degree: u32) -> Result<Output, CliError> {
    let p = alg.parse(target).map_err(|e| CliError::Usage(format!("--target: {e}")))?;
    let verdict = sos_membership(alg, &p, degree).map_err(|e| match e {
        SosError::DegreeBound { .. } => CliError::Usage(e.to_string()),
        _ => domain(e),
    })?;
    let mut table = vec![vec!["verdict".into(), "detail".into()]];
    match &verdict {
        SosVerdict::Member { certificate } => {
            for t in certificate {
                table.push(vec![
                    "member".into(),
                    format!("{} * a_{}* a_{} * |{}|^2", t.weight, t.k, t.k, t.p),
                ]);
            }
        }
        SosVerdict::Refuted { witnesses, within_ansatz } => {
            for w in witnesses {
                let vals = w.values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
                let kind = if *within_ansatz { "refuted_within_ansatz" } else { "refuted" };
                table.push(vec![kind.into(), format!("{} {vals}", w.label)]);
            }
        }
        SosVerdict::Inconclusive { reason } => table.push(vec!["inconclusive".into(), reason.clone()]),
    }
    let failed = matches!(verdict, SosVerdict::Inconclusive { .. });
    Ok(Output {
        result: json!({ "target": p.display(alg).to_string(), "degree": degree, "verdict": verdict }),
        table,
        failed,
    })
}

pub fn covariance(alg: &GradedStarAlgebra, family: &RepFamily, truncation: u64, tol: f64) -> Result<Output, CliError> {
    let rep = preset_rep(alg, family, truncation).map_err(domain)?;
    let r = covariance_check(&rep).map_err(domain)?;
    let pass = r.pass(tol, RECONSTRUCTION_TOL);
    let table = vec![
        vec!["check".into(), "value".into()],
        vec!["partial_isometry_defect".into(), fmt_f64(r.partial_isometry_defect)],
        vec!["projections_ok".into(), r.projections_ok.to_string()],
        vec!["shift_residual".into(), fmt_f64(r.shift_residual)],
        vec!["test_functions".into(), r.test_functions.to_string()],
        vec!["reconstruction_absolute".into(), fmt_f64(r.reconstruction_absolute)],
        vec!["reconstruction_relative".into(), fmt_f64(r.reconstruction_relative)],
        vec!["pass".into(), pass.to_string()],
    ];
    Ok(Output {
        result: json!({ "representation": family, "report": r, "pass": pass }),
        table,
        failed: !pass,
    })
}
