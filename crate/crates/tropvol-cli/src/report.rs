//! Report shaping: serde structures for JSON output, CSV writers, and
//! the text tables. Machine-readable formats carry rationals as exact
//! `p/q` strings; floating point appears only in clearly labeled Monte
//! Carlo approximations.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use tropvol::{
    CheckReport, McEstimate, Objective, OracleOutcome, Polytrope, Pseudovertex, Rat,
    TropicalMatrix, TropicalScalar, VolumeReport,
};

/// Exact `p/q` form, denominator always present (`"3"` → `"3/1"`).
pub fn rat_pq(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn scalar_pq(s: &TropicalScalar) -> String {
    match s {
        TropicalScalar::Finite(v) => rat_pq(v),
        TropicalScalar::Infinity => "inf".into(),
    }
}

/// Matrix as rows of exact entry strings.
pub fn matrix_rows(m: &TropicalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| scalar_pq(m.get(i, j))).collect())
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HalfSpaceJson {
    pub i: usize,
    pub j: usize,
    pub bound: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PseudovertexJson {
    pub point: Vec<String>,
    pub generators: Vec<Vec<usize>>,
    pub tight: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gammas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ObjectiveJson {
    pub coefficients: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub enumerated: usize,
    pub duplicates_merged: usize,
    pub objective_retries: usize,
}

/// The full volume report: star, H-rep, per-vertex Lawrence data, exact
/// total, objective, and diagnostics.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub dim: usize,
    pub star: Vec<Vec<String>>,
    pub hrep: Vec<HalfSpaceJson>,
    pub pseudovertices: Vec<PseudovertexJson>,
    pub total: String,
    pub objective: ObjectiveJson,
    pub diagnostics: DiagnosticsJson,
}

fn geometry_json(pv: &Pseudovertex) -> PseudovertexJson {
    PseudovertexJson {
        point: pv.point.iter().map(rat_pq).collect(),
        generators: pv
            .generators
            .iter()
            .map(|mi| mi.entries().to_vec())
            .collect(),
        tight: pv.tight.iter().map(|&(i, j)| [i, j]).collect(),
        f_value: None,
        gammas: None,
        delta: None,
        term: None,
    }
}

fn objective_json(obj: &Objective) -> ObjectiveJson {
    ObjectiveJson {
        coefficients: obj.coefficients().iter().map(|c| c.to_string()).collect(),
        offset: obj.offset().to_string(),
    }
}

fn hrep_json(p: &Polytrope) -> Vec<HalfSpaceJson> {
    p.hrep()
        .iter()
        .map(|h| HalfSpaceJson {
            i: h.i,
            j: h.j,
            bound: rat_pq(&h.bound),
        })
        .collect()
}

pub fn volume_json(p: &Polytrope, report: &VolumeReport) -> ReportJson {
    let pseudovertices = report
        .terms
        .iter()
        .map(|t| {
            let mut pv = geometry_json(&t.vertex);
            pv.f_value = Some(rat_pq(&t.f_value));
            pv.gammas = Some(t.gammas.iter().map(|g| g.to_string()).collect());
            pv.delta = Some(t.delta.to_string());
            pv.term = Some(rat_pq(&t.term));
            pv
        })
        .collect();
    ReportJson {
        dim: p.dim(),
        star: matrix_rows(p.star()),
        hrep: hrep_json(p),
        pseudovertices,
        total: rat_pq(&report.total),
        objective: objective_json(&report.objective),
        diagnostics: DiagnosticsJson {
            enumerated: report.diagnostics.enumerated,
            duplicates_merged: report.diagnostics.duplicates_merged,
            objective_retries: report.diagnostics.objective_retries,
        },
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PvReportJson {
    pub dim: usize,
    pub pseudovertices: Vec<PseudovertexJson>,
}

pub fn pv_json(p: &Polytrope, pvs: &[Pseudovertex]) -> PvReportJson {
    PvReportJson {
        dim: p.dim(),
        pseudovertices: pvs.iter().map(geometry_json).collect(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HrepReportJson {
    pub dim: usize,
    pub hrep: Vec<HalfSpaceJson>,
}

pub fn hrep_report_json(p: &Polytrope) -> HrepReportJson {
    HrepReportJson {
        dim: p.dim(),
        hrep: hrep_json(p),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckJson {
    pub kleene: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    pub degenerate: Option<bool>,
    pub maximal: Option<bool>,
    pub simple: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct McJson {
    pub estimate: String,
    /// Float approximation of the exact `estimate`, for readability.
    pub estimate_approx: f64,
    pub stderr: String,
    pub stderr_approx: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

pub fn mc_json(est: &McEstimate) -> McJson {
    McJson {
        estimate: rat_pq(&est.estimate),
        estimate_approx: est.estimate.to_f64().unwrap_or(f64::NAN),
        stderr: rat_pq(&est.stderr),
        stderr_approx: est.stderr.to_f64().unwrap_or(f64::NAN),
        hits: est.hits,
        samples: est.samples,
        seed: est.seed,
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleJson {
    Exact {
        value: String,
        matches: bool,
    },
    MonteCarlo {
        #[serde(flatten)]
        estimate: McJson,
        within_three_sigma: bool,
    },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CrossCheckJson {
    pub dim: usize,
    pub default_total: String,
    pub alternate_total: String,
    pub objectives_match: bool,
    pub oracle: OracleJson,
    pub pass: bool,
    pub warnings: Vec<String>,
}

pub fn cross_check_json(report: &CheckReport) -> CrossCheckJson {
    CrossCheckJson {
        dim: report.dim,
        default_total: rat_pq(&report.default_total),
        alternate_total: rat_pq(&report.alternate_total),
        objectives_match: report.objectives_match,
        oracle: match &report.oracle {
            OracleOutcome::Exact { value, matches } => OracleJson::Exact {
                value: rat_pq(value),
                matches: *matches,
            },
            OracleOutcome::MonteCarlo {
                estimate,
                within_three_sigma,
            } => OracleJson::MonteCarlo {
                estimate: mc_json(estimate),
                within_three_sigma: *within_three_sigma,
            },
        },
        pass: report.pass,
        warnings: report.warnings.clone(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RandomJson {
    pub dim: usize,
    pub seed: u64,
    pub attempts: usize,
    pub star: Vec<Vec<String>>,
}

/// Render rows as an aligned text table with ` | ` separators.
fn aligned_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.chars().count());
        }
    }
    let fmt_row = |cells: &[String]| -> String {
        let mut out = String::new();
        for (k, cell) in cells.iter().enumerate() {
            if k > 0 {
                out.push_str(" | ");
            }
            let pad = widths[k] - cell.chars().count();
            out.push_str(cell);
            if k + 1 < cols {
                out.push_str(&" ".repeat(pad));
            }
        }
        out
    };
    let header_cells: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    let mut out = fmt_row(&header_cells);
    out.push('\n');
    out.push_str(&"-".repeat(out.trim_end().chars().count()));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row));
        out.push('\n');
    }
    out
}

fn join_generators(pv: &Pseudovertex) -> String {
    pv.generators
        .iter()
        .map(|mi| mi.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn point_text(point: &[Rat]) -> String {
    let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

fn normals_text(pv: &Pseudovertex, dim: usize) -> String {
    pv.tight
        .iter()
        .map(|&(i, j)| {
            let n = tropvol::pair_normal(i, j, dim);
            let parts: Vec<String> = n.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The volume table in the layout of the published tables: generators,
/// pseudovertex, facet normals, f(v), γ, N_v, and a closing total line.
pub fn volume_text(p: &Polytrope, report: &VolumeReport) -> String {
    let dim = p.dim();
    let rows: Vec<Vec<String>> = report
        .terms
        .iter()
        .map(|t| {
            vec![
                join_generators(&t.vertex),
                point_text(&t.vertex.point),
                normals_text(&t.vertex, dim),
                t.f_value.to_string(),
                format!(
                    "({})",
                    t.gammas
                        .iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                t.term.to_string(),
            ]
        })
        .collect();
    let mut out = aligned_table(
        &["generators", "pseudovertex", "facet normals", "f(v)", "gamma", "N_v"],
        &rows,
    );
    out.push_str(&format!("total = {}\n", report.total));
    out
}

pub fn pv_text(p: &Polytrope, pvs: &[Pseudovertex]) -> String {
    let dim = p.dim();
    let rows: Vec<Vec<String>> = pvs
        .iter()
        .map(|pv| {
            vec![
                join_generators(pv),
                point_text(&pv.point),
                pv.tight
                    .iter()
                    .map(|&(i, j)| format!("({i},{j})"))
                    .collect::<Vec<_>>()
                    .join(" "),
                normals_text(pv, dim),
            ]
        })
        .collect();
    aligned_table(&["generators", "point", "tight pairs", "facet normals"], &rows)
}

pub fn hrep_text(p: &Polytrope) -> String {
    let mut out = String::new();
    for h in p.hrep() {
        out.push_str(&h.to_string());
        out.push('\n');
    }
    out
}

/// CSV rows for the volume report; rationals as `p/q`, compound fields
/// space-joined, final record carrying the total.
pub fn volume_csv(p: &Polytrope, report: &VolumeReport) -> Result<String, csv::Error> {
    let dim = p.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "generators",
        "pseudovertex",
        "facet_normals",
        "f_value",
        "gammas",
        "delta",
        "term",
    ])?;
    for t in &report.terms {
        w.write_record([
            join_generators(&t.vertex),
            t.vertex
                .point
                .iter()
                .map(rat_pq)
                .collect::<Vec<_>>()
                .join(" "),
            normals_text(&t.vertex, dim),
            rat_pq(&t.f_value),
            t.gammas
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            t.delta.to_string(),
            rat_pq(&t.term),
        ])?;
    }
    let total = rat_pq(&report.total);
    w.write_record(["total", "", "", "", "", "", total.as_str()])?;
    finish_csv(w)
}

pub fn matrix_csv(m: &TropicalMatrix) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in matrix_rows(m) {
        w.write_record(&row)?;
    }
    finish_csv(w)
}

pub fn hrep_csv(p: &Polytrope) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "bound"])?;
    for h in p.hrep() {
        w.write_record([h.i.to_string(), h.j.to_string(), rat_pq(&h.bound)])?;
    }
    finish_csv(w)
}

pub fn pv_csv(p: &Polytrope, pvs: &[Pseudovertex]) -> Result<String, csv::Error> {
    let dim = p.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["generators", "point", "tight_pairs", "facet_normals"])?;
    for pv in pvs {
        w.write_record([
            join_generators(pv),
            pv.point.iter().map(rat_pq).collect::<Vec<_>>().join(" "),
            pv.tight
                .iter()
                .map(|&(i, j)| format!("({i},{j})"))
                .collect::<Vec<_>>()
                .join(" "),
            normals_text(pv, dim),
        ])?;
    }
    finish_csv(w)
}

/// Key/value CSV for flag- and verdict-style reports.
pub fn pairs_csv(pairs: &[(&str, String)]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"])?;
    for (k, v) in pairs {
        w.write_record([*k, v.as_str()])?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, csv::Error> {
    let bytes = w.into_inner().expect("csv writer flushes into memory");
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
