//! Built-in oracle suite run by `--seed-check`.

use parahoric_core::alcove::enumerate_p_c;
use parahoric_core::fusion::{vacua_dim, verlinde_dim_smatrix};
use parahoric_core::liealg::weyl_dim;
use parahoric_core::{FusionTable, HandleOrder, RootDatum, TypeLetter, Weight};

use crate::error::CliError;

pub struct CheckResult {
    pub name: &'static str,
    pub failure: Option<String>,
}

type Check = fn() -> Result<(), String>;

const TYPES: &[(TypeLetter, usize)] = &[
    (TypeLetter::A, 1),
    (TypeLetter::A, 4),
    (TypeLetter::B, 3),
    (TypeLetter::C, 3),
    (TypeLetter::D, 5),
    (TypeLetter::E, 6),
    (TypeLetter::E, 7),
    (TypeLetter::E, 8),
    (TypeLetter::F, 4),
    (TypeLetter::G, 2),
];

fn comarks() -> Result<(), String> {
    for &(l, r) in TYPES {
        let d = RootDatum::new(l, r).map_err(|e| e.to_string())?;
        let theta_norm = d.root_norm(d.marks());
        for (i, (&m, &a)) in d.marks().iter().zip(d.comarks()).enumerate() {
            if m * d.root_gram()[i][i] != a * theta_norm {
                return Err(format!(
                    "{d}: comark {a} at node {} disagrees with mark {m}",
                    i + 1
                ));
            }
        }
    }
    Ok(())
}

fn dimensions() -> Result<(), String> {
    let known: &[(TypeLetter, usize, usize, u128)] = &[
        (TypeLetter::E, 6, 1, 27),
        (TypeLetter::E, 7, 7, 56),
        (TypeLetter::E, 8, 8, 248),
        (TypeLetter::F, 4, 4, 26),
        (TypeLetter::G, 2, 1, 7),
        (TypeLetter::B, 3, 3, 8),
        (TypeLetter::D, 5, 5, 16),
    ];
    for &(l, r, node, dim) in known {
        let d = RootDatum::new(l, r).map_err(|e| e.to_string())?;
        let got = weyl_dim(&d, &Weight::fundamental(r, node)).map_err(|e| e.to_string())?;
        if got != dim {
            return Err(format!("{d} ω_{node}: dimension {got}, expected {dim}"));
        }
    }
    Ok(())
}

fn verlinde_agreement() -> Result<(), String> {
    let cases: &[(TypeLetter, usize, u32)] = &[
        (TypeLetter::A, 1, 3),
        (TypeLetter::A, 2, 2),
        (TypeLetter::B, 2, 2),
        (TypeLetter::G, 2, 1),
    ];
    for &(l, r, c) in cases {
        let d = RootDatum::new(l, r).map_err(|e| e.to_string())?;
        let table = FusionTable::new(&d, c).map_err(|e| e.to_string())?;
        let basis = enumerate_p_c(&d, c);
        for g in 0..=2 {
            for a in &basis {
                for b in &basis {
                    let ins = [a.clone(), b.clone()];
                    let fused = vacua_dim(&table, g, &ins, HandleOrder::Append)
                        .map_err(|e| e.to_string())?;
                    let trig = verlinde_dim_smatrix(&d, c, g, &ins).map_err(|e| e.to_string())?;
                    if fused != trig {
                        return Err(format!(
                            "{d} level {c} genus {g} [{a}, {b}]: fusion {fused}, S-matrix {trig}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn closed_forms() -> Result<(), String> {
    let d = RootDatum::new(TypeLetter::A, 1).map_err(|e| e.to_string())?;
    let t1 = FusionTable::new(&d, 1).map_err(|e| e.to_string())?;
    for g in 0..=6u32 {
        let v = vacua_dim(&t1, g, &[], HandleOrder::Append).map_err(|e| e.to_string())?;
        if v != 1 << g {
            return Err(format!("A1 level 1 genus {g}: {v}"));
        }
    }
    let t2 = FusionTable::new(&d, 2).map_err(|e| e.to_string())?;
    let v = vacua_dim(&t2, 2, &[], HandleOrder::Append).map_err(|e| e.to_string())?;
    if v != 10 {
        return Err(format!("A1 level 2 genus 2: {v}"));
    }
    Ok(())
}

pub fn run_checks() -> Vec<CheckResult> {
    let checks: [(&'static str, Check); 4] = [
        ("comarks agree with root lengths", comarks),
        ("Weyl dimensions of fundamental representations", dimensions),
        ("fusion recursion agrees with S-matrix", verlinde_agreement),
        ("closed-form Verlinde values", closed_forms),
    ];
    checks
        .into_iter()
        .map(|(name, f)| CheckResult {
            name,
            failure: f().err(),
        })
        .collect()
}

/// Prints one line per check and fails if any check failed.
pub fn seed_check(out: &mut impl std::io::Write) -> Result<(), CliError> {
    let results = run_checks();
    for r in &results {
        match &r.failure {
            None => writeln!(out, "PASS {}", r.name),
            Some(why) => writeln!(out, "FAIL {}: {why}", r.name),
        }
        .map_err(|e| CliError::SeedCheck(e.to_string()))?;
    }
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| r.failure.is_some())
        .map(|r| r.name)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::SeedCheck(failed.join(", ")))
    }
}
