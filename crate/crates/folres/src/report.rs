//! Serializable report documents with a fixed field order, plus aligned
//! plain-text tables. Integer fields are emitted as exact decimal strings so
//! the JSON output is byte-stable and never subject to number formatting.

use serde::Serialize;

use crate::divisors::SeparatrixDivisor;
use crate::projective::AuditReport;
use crate::resolution::ResolutionTree;
use crate::valuation::ValuationReport;

#[derive(Serialize)]
pub struct ComponentRecord {
    pub id: usize,
    pub dicritical: bool,
    pub rho: String,
    pub val: String,
    pub epsilon: String,
    #[serde(rename = "nu_F")]
    pub nu_f: String,
    #[serde(rename = "nu_F_direct")]
    pub nu_f_direct: String,
    #[serde(rename = "nu_Psi")]
    pub nu_psi: String,
    pub xi: String,
    pub theorem_ok: bool,
    pub corollary_ok: bool,
}

#[derive(Serialize)]
pub struct RootSummary {
    pub nu_p: String,
    #[serde(rename = "nu_B")]
    pub nu_b: String,
    pub xi_p: String,
    pub second_type: bool,
    pub prop34_ok: bool,
}

#[derive(Serialize)]
pub struct VerifyDocument {
    pub components: Vec<ComponentRecord>,
    pub root: RootSummary,
}

#[derive(Serialize)]
pub struct PointRecord {
    pub id: usize,
    pub stage: u32,
    pub chart: usize,
    pub coords: [String; 2],
    pub on_components: Vec<usize>,
    pub class: String,
    pub blown_up: bool,
}

#[derive(Serialize)]
pub struct TreeComponentRecord {
    pub id: usize,
    pub birth_point: usize,
    pub dicritical: bool,
    pub rho: String,
    pub val: String,
}

#[derive(Serialize)]
pub struct ResolveDocument {
    pub blowups: usize,
    pub points: Vec<PointRecord>,
    pub components: Vec<TreeComponentRecord>,
}

#[derive(Serialize)]
pub struct BranchRecord {
    pub kind: String,
    pub coefficient: String,
    pub attach_component: Option<usize>,
    pub attach_coords: Option<[String; 2]>,
    pub root_multiplicity: String,
    /// Pairs (point id, multiplicity) over the centers the branch meets.
    pub m: Vec<(usize, u32)>,
}

#[derive(Serialize)]
pub struct BalancedDocument {
    pub branches: Vec<BranchRecord>,
    #[serde(rename = "nu_B")]
    pub nu_b: String,
}

#[derive(Serialize)]
pub struct AuditPointRecord {
    pub point: [String; 3],
    pub error: Option<String>,
    pub sum_nu: String,
    pub sum_psi: String,
    pub verify: Option<VerifyDocument>,
}

#[derive(Serialize)]
pub struct AuditDocument {
    pub degree: u32,
    pub points: Vec<AuditPointRecord>,
    pub lhs_direct: String,
    pub lhs_substituted: String,
    pub rhs: String,
    pub cross_check_ok: bool,
    pub inequality_ok: bool,
    pub point_list_complete: Option<bool>,
    pub disclaimer: String,
}

pub fn verify_document(report: &ValuationReport) -> VerifyDocument {
    VerifyDocument {
        components: report
            .components
            .iter()
            .map(|c| ComponentRecord {
                id: c.id,
                dicritical: c.dicritical,
                rho: c.rho.to_string(),
                val: c.val.to_string(),
                epsilon: c.epsilon.to_string(),
                nu_f: c.nu_f.to_string(),
                nu_f_direct: c.nu_f_direct.to_string(),
                nu_psi: c.nu_psi.to_string(),
                xi: c.xi.to_string(),
                theorem_ok: c.theorem_ok,
                corollary_ok: c.corollary_ok,
            })
            .collect(),
        root: RootSummary {
            nu_p: report.nu_p.to_string(),
            nu_b: report.nu_b.to_string(),
            xi_p: report.xi_p.to_string(),
            second_type: report.second_type,
            prop34_ok: report.prop34_ok,
        },
    }
}

pub fn resolve_document(tree: &ResolutionTree) -> ResolveDocument {
    ResolveDocument {
        blowups: tree.blowup_order.len(),
        points: tree
            .points
            .iter()
            .map(|p| PointRecord {
                id: p.id,
                stage: p.stage,
                chart: p.chart,
                coords: [p.coords.0.to_string(), p.coords.1.to_string()],
                on_components: p.on_components.iter().map(|&(c, _)| c).collect(),
                class: p.class.label().to_string(),
                blown_up: p.blown_up,
            })
            .collect(),
        components: tree
            .components
            .iter()
            .map(|c| TreeComponentRecord {
                id: c.id,
                birth_point: c.birth_point,
                dicritical: c.dicritical,
                rho: c.rho.to_string(),
                val: tree.val(c.id).to_string(),
            })
            .collect(),
    }
}

pub fn balanced_document(divisor: &SeparatrixDivisor) -> BalancedDocument {
    BalancedDocument {
        branches: divisor
            .branches
            .iter()
            .map(|(b, a)| BranchRecord {
                kind: b.kind.label().to_string(),
                coefficient: a.to_string(),
                attach_component: b.attach_comp,
                attach_coords: b
                    .attach_coords
                    .as_ref()
                    .map(|(u, v)| [u.to_string(), v.to_string()]),
                root_multiplicity: b.root_multiplicity().to_string(),
                m: b.m.iter().map(|(&q, &m)| (q, m)).collect(),
            })
            .collect(),
        nu_b: divisor.multiplicity_at_root().to_string(),
    }
}

pub fn audit_document(report: &AuditReport) -> AuditDocument {
    AuditDocument {
        degree: report.degree,
        points: report
            .points
            .iter()
            .map(|p| AuditPointRecord {
                point: [
                    p.point[0].to_string(),
                    p.point[1].to_string(),
                    p.point[2].to_string(),
                ],
                error: p.error.clone(),
                sum_nu: p.sum_nu.to_string(),
                sum_psi: p.sum_psi.to_string(),
                verify: p.report.as_ref().map(verify_document),
            })
            .collect(),
        lhs_direct: report.lhs_direct.to_string(),
        lhs_substituted: report.lhs_substituted.to_string(),
        rhs: report.rhs.to_string(),
        cross_check_ok: report.cross_check_ok,
        inequality_ok: report.inequality_ok,
        point_list_complete: report.complete,
        disclaimer: report.disclaimer.to_string(),
    }
}

/// Renders rows under a header with space-aligned columns.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], out: &mut String| {
        let mut parts = Vec::new();
        for (i, cell) in cells.iter().enumerate() {
            parts.push(format!("{:<width$}", cell, width = widths[i]));
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    let headers: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    render_row(&headers, &mut out);
    for row in rows {
        render_row(row, &mut out);
    }
    out
}

pub fn verify_table(doc: &VerifyDocument) -> String {
    let headers = [
        "D", "dicritical", "rho", "val", "eps", "nu_F", "nu_F_direct", "nu_Psi", "xi",
        "theorem", "corollary",
    ];
    let rows: Vec<Vec<String>> = doc
        .components
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.dicritical.to_string(),
                c.rho.clone(),
                c.val.clone(),
                c.epsilon.clone(),
                c.nu_f.clone(),
                c.nu_f_direct.clone(),
                c.nu_psi.clone(),
                c.xi.clone(),
                c.theorem_ok.to_string(),
                c.corollary_ok.to_string(),
            ]
        })
        .collect();
    let mut out = render_table(&headers, &rows);
    out.push_str(&format!(
        "root: nu_p={} nu_B={} xi_p={} second_type={} prop34_ok={}\n",
        doc.root.nu_p, doc.root.nu_b, doc.root.xi_p, doc.root.second_type, doc.root.prop34_ok
    ));
    out
}

pub fn resolve_table(doc: &ResolveDocument) -> String {
    let headers = ["point", "stage", "chart", "x", "y", "components", "class", "blown_up"];
    let rows: Vec<Vec<String>> = doc
        .points
        .iter()
        .map(|p| {
            vec![
                p.id.to_string(),
                p.stage.to_string(),
                p.chart.to_string(),
                p.coords[0].clone(),
                p.coords[1].clone(),
                format!("{:?}", p.on_components),
                p.class.clone(),
                p.blown_up.to_string(),
            ]
        })
        .collect();
    let mut out = format!("blow-ups: {}\n", doc.blowups);
    out.push_str(&render_table(&headers, &rows));
    let comp_headers = ["D", "birth_point", "dicritical", "rho", "val"];
    let comp_rows: Vec<Vec<String>> = doc
        .components
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.birth_point.to_string(),
                c.dicritical.to_string(),
                c.rho.clone(),
                c.val.clone(),
            ]
        })
        .collect();
    out.push_str(&render_table(&comp_headers, &comp_rows));
    out
}

pub fn balanced_table(doc: &BalancedDocument) -> String {
    let headers = ["kind", "coeff", "component", "attach", "m_root", "m"];
    let rows: Vec<Vec<String>> = doc
        .branches
        .iter()
        .map(|b| {
            vec![
                b.kind.clone(),
                b.coefficient.clone(),
                b.attach_component
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "-".into()),
                b.attach_coords
                    .as_ref()
                    .map(|[u, v]| format!("({u}, {v})"))
                    .unwrap_or_else(|| "-".into()),
                b.root_multiplicity.clone(),
                format!("{:?}", b.m),
            ]
        })
        .collect();
    let mut out = render_table(&headers, &rows);
    out.push_str(&format!("nu_B = {}\n", doc.nu_b));
    out
}

pub fn audit_table(doc: &AuditDocument) -> String {
    let headers = ["point", "sum_nu", "sum_psi", "status"];
    let rows: Vec<Vec<String>> = doc
        .points
        .iter()
        .map(|p| {
            vec![
                format!("[{}:{}:{}]", p.point[0], p.point[1], p.point[2]),
                p.sum_nu.clone(),
                p.sum_psi.clone(),
                p.error.clone().unwrap_or_else(|| "ok".into()),
            ]
        })
        .collect();
    let mut out = format!("degree: {}\n", doc.degree);
    out.push_str(&render_table(&headers, &rows));
    out.push_str(&format!(
        "lhs_direct={} lhs_substituted={} rhs={} cross_check_ok={} inequality_ok={}\n",
        doc.lhs_direct, doc.lhs_substituted, doc.rhs, doc.cross_check_ok, doc.inequality_ok
    ));
    if let Some(c) = doc.point_list_complete {
        out.push_str(&format!("point_list_complete={c}\n"));
    }
    out.push_str(&format!("note: {}\n", doc.disclaimer));
    out
}
