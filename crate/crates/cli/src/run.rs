//! Executes a job and builds its report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use parahoric_core::alcove::{
    ell_of_datum, enumerate_p_c_f, is_special_by_comark, is_special_by_mark, l_of_facet, levi_weyl,
};
use parahoric_core::bwb::{b_h, b_pi, levi_dot_length};
use parahoric_core::fusion::{admissible_insertions, verlinde_dim, verlinde_dim_smatrix};
use parahoric_core::picard::{decompose_pullback, descends, facet_charge, pic_lattice};
use parahoric_core::{
    BwbInput, Error, Facet, FusionTable, Marking, ParahoricDatum, RootDatum, Weight,
};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::job::{Job, ParahoricSpec, SCHEMA_VERSION};

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Where fusion tables are persisted; `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
}

/// Result of one job: named fields plus a description of how each numeric
/// field was obtained.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub provenance: BTreeMap<&'static str, &'static str>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            fields: Map::new(),
            provenance: BTreeMap::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    fn tag(&mut self, key: &'static str, how: &'static str) -> &mut Self {
        self.provenance.insert(key, how);
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = self.fields.clone();
        out.insert("schema_version".into(), json!(SCHEMA_VERSION));
        out.insert("command".into(), json!(self.command));
        out.insert("provenance".into(), json!(self.provenance));
        let mut text =
            serde_json::to_string_pretty(&Value::Object(out)).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_human(&self) -> String {
        let mut text = String::new();
        writeln!(text, "{}", self.command).unwrap();
        for (key, value) in &self.fields {
            writeln!(text, "  {key}: {}", render(value)).unwrap();
        }
        text
    }
}

const INPUT: &str = "job input";

fn render(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn degree(d: Option<usize>) -> Value {
    d.map_or_else(|| json!("singular"), |n| json!(n))
}

fn labels(weights: &[Weight]) -> Value {
    json!(weights.iter().map(Weight::to_string).collect::<Vec<_>>())
}

pub fn run(job: &Job, options: &Options) -> Result<Report, CliError> {
    let spec = job.parahoric();
    let mut report = Report::new(job.name());
    report
        .set("type", json!(spec.letter.to_string()))
        .set("rank", json!(spec.rank))
        .tag("rank", INPUT);
    match job {
        Job::RootData { .. } => root_data(&spec.datum()?, &mut report),
        Job::Facets { .. } => facets(&spec.datum()?, &mut report)?,
        Job::Levels { .. } => levels(&spec.build()?, &mut report)?,
        Job::Weights { c, facet, .. } => weights(spec, *c, facet.as_deref(), &mut report)?,
        Job::Picard { bundle, .. } => {
            let p = spec.build()?;
            let lattice = pic_lattice(&p)?;
            report
                .set("free_rank", json!(lattice.free_rank))
                .set("charge_index", json!(lattice.charge_index))
                .tag("free_rank", "1 + Σ_x (|S(F_x)| − 1)")
                .tag("charge_index", "ℓ = lcm of l(F_x) over marked points");
            if let Some(bundle) = bundle {
                let dec = decompose_pullback(&p, bundle)?;
                let characters: BTreeMap<&String, Value> = dec
                    .characters
                    .iter()
                    .map(|(k, w)| (k, json!({"weight": w, "label": w.to_string()})))
                    .collect();
                report
                    .set("faltings_power", json!(dec.faltings_power))
                    .set("characters", json!(characters))
                    .tag("faltings_power", "central charge of the bundle")
                    .tag("characters", "Σ_{α ∈ S(F_x), α ≠ 0} n^x_α ω_α");
            }
        }
        Job::Descend { tuple, .. } => {
            let p = spec.build()?;
            let verdict = descends(&p, tuple)?;
            let charges: BTreeMap<&String, i64> = p
                .points()
                .iter()
                .map(|pt| {
                    (
                        &pt.label,
                        facet_charge(p.datum(), &pt.facet, &tuple[&pt.label]),
                    )
                })
                .collect();
            report
                .set("descends", json!(verdict.descends()))
                .set("verdict", json!(verdict))
                .set("reason", json!(verdict.to_string()))
                .set("charges", json!(charges))
                .set("ell", json!(ell_of_datum(&p)?))
                .tag(
                    "verdict",
                    "first point whose charge differs, else divisibility by ℓ",
                )
                .tag("charges", "Σ_{α ∈ S(F_x)} n_α a_α^∨ with a_0^∨ = 1")
                .tag("ell", "lcm of l(F_x) over marked points")
                .tag(
                    "descends",
                    "equal charges at every point, common value a multiple of ℓ",
                );
        }
        Job::Fusion { lambda, mu, .. } => {
            let datum = spec.datum()?;
            let table = open_table(&datum, spec.level, options)?;
            let product = table.product(lambda, mu)?;
            let terms: Vec<Value> = product
                .iter()
                .map(|(nu, n)| json!({"nu": nu, "label": nu.to_string(), "mult": n}))
                .collect();
            save_table(&table, options);
            report
                .set("level", json!(spec.level))
                .set("lambda", json!(lambda))
                .set("mu", json!(mu))
                .set("product", json!(terms))
                .tag("level", INPUT)
                .tag("lambda", INPUT)
                .tag("mu", INPUT)
                .tag(
                    "nu",
                    "dominant weights of λ ⊗ μ folded into the level-c alcove",
                )
                .tag(
                    "mult",
                    "Kac–Walton folding of tensor product multiplicities",
                );
        }
        Job::Verlinde {
            insertions, oracle, ..
        } => {
            let p = spec.build()?;
            let table = open_table(p.datum(), p.level(), options)?;
            let dim = verlinde_dim(&table, &p, insertions)?;
            save_table(&table, options);
            report
                .set("genus", json!(p.genus()))
                .set("level", json!(p.level()))
                .set("dim", json!(dim))
                .tag("genus", INPUT)
                .tag("level", INPUT)
                .tag(
                    "dim",
                    "genus factorization down to genus 0, then iterated fusion",
                );
            if *oracle {
                let ws = admissible_insertions(&p, insertions)?;
                let check = verlinde_dim_smatrix(p.datum(), p.level(), p.genus(), &ws)?;
                if check != dim {
                    return Err(Error::OracleDisagreement(format!(
                        "fusion recursion gives {dim}, S-matrix gives {check}"
                    ))
                    .into());
                }
                report.set("oracle_dim", json!(check)).tag(
                    "oracle_dim",
                    "trigonometric Verlinde sum over the level-c S-matrix, rounded",
                );
            }
        }
        Job::Bwb {
            weights,
            twist,
            boundary,
            ..
        } => bwb(&spec.build()?, weights, *twist, boundary, &mut report)?,
    }
    Ok(report)
}

fn open_table(datum: &RootDatum, level: u32, options: &Options) -> Result<FusionTable, CliError> {
    Ok(FusionTable::open(
        datum,
        level,
        options.cache_dir.as_deref(),
    )?)
}

fn save_table(table: &FusionTable, options: &Options) {
    if let Some(dir) = &options.cache_dir {
        if let Err(e) = table.save(dir) {
            eprintln!(
                "warning: could not write fusion cache in {}: {e}",
                dir.display()
            );
        }
    }
}

fn root_data(datum: &RootDatum, report: &mut Report) {
    let dual: Vec<usize> = datum.dual_permutation().iter().map(|i| i + 1).collect();
    report
        .set("cartan", json!(datum.cartan().rows()))
        .set("marks", json!(datum.marks()))
        .set("comarks", json!(datum.comarks()))
        .set("theta", json!(datum.theta()))
        .set("rho", json!(datum.rho()))
        .set("dual_coxeter_number", json!(datum.dual_coxeter_number()))
        .set("coxeter_number", json!(datum.coxeter_number()))
        .set("positive_roots", json!(datum.positive_roots().len()))
        .set("dual_nodes", json!(dual))
        .tag("cartan", "⟨α_i, α_j^∨⟩, Bourbaki numbering")
        .tag("marks", "coefficients of θ in the simple roots")
        .tag("comarks", "coefficients of θ^∨ in the simple coroots")
        .tag("theta", "highest root in fundamental-weight coordinates")
        .tag("rho", "half sum of positive roots")
        .tag("dual_coxeter_number", "1 + Σ comarks")
        .tag("coxeter_number", "1 + Σ marks")
        .tag(
            "positive_roots",
            "closure of the simple roots under reflection",
        )
        .tag("dual_nodes", "node permutation induced by −w_0");
}

fn facets(datum: &RootDatum, report: &mut Report) -> Result<(), CliError> {
    let rows = Facet::all(datum.rank())
        .into_iter()
        .map(|f| {
            let levi = levi_weyl(datum, &f)?;
            Ok(json!({
                "facet": f,
                "dimension": f.dimension(),
                "l": l_of_facet(datum, &f)?,
                "special_by_mark": is_special_by_mark(datum, &f),
                "special_by_comark": is_special_by_comark(datum, &f),
                "levi_semisimple_rank": levi.semisimple_rank(),
                "levi_positive_roots": levi.positive_roots().len(),
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    report
        .set("facets", json!(rows))
        .tag("facet", "every nonempty subset of affine nodes")
        .tag("l", "gcd of comarks over S(F), comark 1 at node 0")
        .tag("dimension", "|S(F)| − 1")
        .tag("levi_semisimple_rank", "number of vanishing affine nodes")
        .tag(
            "levi_positive_roots",
            "positive roots of the reflection group of the vanishing nodes",
        );
    Ok(())
}

fn levels(p: &ParahoricDatum, report: &mut Report) -> Result<(), CliError> {
    let ell = ell_of_datum(p)?;
    let points = p
        .points()
        .iter()
        .map(|pt| {
            Ok(json!({
                "label": pt.label,
                "facet": pt.facet,
                "l": l_of_facet(p.datum(), &pt.facet)?,
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    report
        .set("ell", json!(ell))
        .set("level", json!(p.level()))
        .set("level_is_multiple", json!(i64::from(p.level()) % ell == 0))
        .set("points", json!(points))
        .tag("level", INPUT)
        .tag("ell", "lcm of l(F_x) over marked points")
        .tag("l", "gcd of comarks over S(F), comark 1 at node 0");
    Ok(())
}

fn weights(
    spec: &ParahoricSpec,
    c: Option<u32>,
    facet: Option<&[usize]>,
    report: &mut Report,
) -> Result<(), CliError> {
    let datum = spec.datum()?;
    let c = c.unwrap_or(spec.level);
    let facet = match facet {
        Some(nodes) => Facet::new(nodes.iter().copied())?,
        None => Facet::iwahori(datum.rank()),
    };
    let list = enumerate_p_c_f(&datum, c, &facet)?;
    report
        .set("c", json!(c))
        .set("facet", json!(facet))
        .set("count", json!(list.len()))
        .set("weights", json!(list))
        .set("labels", labels(&list))
        .tag("c", "job input, defaulting to the parahoric level")
        .tag("facet", "job input, defaulting to the Iwahori facet")
        .tag(
            "weights",
            "Σ n_α ω_α over S(F) ∖ {0} with Σ n_α a_α^∨ = c, slack n_0 when 0 ∈ S(F)",
        )
        .tag("count", "size of the admissible set");
    Ok(())
}

fn bwb(
    p: &ParahoricDatum,
    weights: &BTreeMap<String, Weight>,
    twist: u32,
    boundary: &BTreeMap<String, Weight>,
    report: &mut Report,
) -> Result<(), CliError> {
    let datum = p.datum();
    for label in weights.keys().chain(boundary.keys()) {
        p.point(label)?;
    }
    let markings = p
        .points()
        .iter()
        .map(|pt| {
            let weight = weights
                .get(&pt.label)
                .cloned()
                .ok_or_else(|| Error::MissingPoint(pt.label.clone()))?;
            let boundary = boundary
                .get(&pt.label)
                .cloned()
                .unwrap_or_else(|| Weight::zero(datum.rank()));
            Ok(Marking {
                label: pt.label.clone(),
                facet: pt.facet.clone(),
                weight,
                boundary,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let input = BwbInput::new(datum.clone(), markings, twist)?;
    let mut per_point = Vec::new();
    for (m, combined) in input.markings().iter().zip(input.combined()) {
        per_point.push(json!({
            "label": m.label,
            "levi_length": degree(levi_dot_length(datum, &m.facet, &m.weight)?),
            "weyl_length": degree(datum.dot_dominant(&combined)?.length()),
            "combined": combined,
        }));
    }
    report
        .set("twist", json!(twist))
        .set("b_pi", degree(b_pi(&input)?))
        .set("b_h", degree(b_h(&input)?))
        .set("points", json!(per_point))
        .tag("twist", INPUT)
        .tag("combined", "λ_z + n·e(z)")
        .tag(
            "b_pi",
            "Σ over markings of Levi dot-action lengths with the Levi's ρ",
        )
        .tag(
            "b_h",
            "Σ over markings of Weyl dot-action lengths of λ_z + n·e(z)",
        )
        .tag(
            "levi_length",
            "length of the Levi Weyl element moving λ_z to the Levi dominant chamber",
        )
        .tag(
            "weyl_length",
            "length of the Weyl element moving λ_z + n·e(z) to the dominant chamber",
        );
    Ok(())
}
