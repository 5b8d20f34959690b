//! Regeneration of the VMRT tables.
//!
//! The fixture file lists each table row as a family, a semantic node
//! descriptor and a few instantiated ranks with the expected values. Every
//! numeric field of an emitted row is recomputed from root data; only the
//! variety names are copied from the fixture.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::CrossedDiagram;
use crate::nested::NestedPair;
use crate::rootsys::{Family, LieType, RootSystem};

/// The fixture file shipped with the crate.
pub const DEFAULT_FIXTURES: &str = include_str!("../../fixtures/tables.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub tables: Vec<FixtureTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureTable {
    pub table: u8,
    pub caption: String,
    pub rows: Vec<FixtureRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub label: String,
    pub family: Family,
    /// `index:<k|n|n-m|number>`, `long` or `adjoint`.
    pub node: String,
    pub vmrt_name: String,
    pub vmrt: String,
    pub instances: Vec<FixtureInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureInstance {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub q_crosses: Vec<usize>,
    pub levi_ss: String,
    pub ambient_proj_dim: usize,
    pub cone_dim: usize,
}

impl Fixtures {
    pub fn load(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Semantic(format!("invalid fixture file: {e}")))
    }

    pub fn builtin() -> Self {
        Self::load(DEFAULT_FIXTURES).expect("bundled fixtures parse")
    }

    pub fn table(&self, which: u8) -> Result<&FixtureTable> {
        self.tables
            .iter()
            .find(|t| t.table == which)
            .ok_or_else(|| Error::Semantic(format!("no table {which} in fixtures")))
    }
}

/// One emitted row, every numeric field computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub label: String,
    pub g: String,
    pub p: String,
    pub q: String,
    pub q_crosses: Vec<usize>,
    pub levi_ss: String,
    pub ambient_proj_dim: usize,
    pub cone_dim: usize,
    pub vmrt_name: String,
    pub vmrt: String,
}

/// Mismatches between a computed row and its fixture values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub table: u8,
    pub label: String,
    pub g: String,
    pub mismatches: Vec<String>,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Output formats of [`emit_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown format {other:?}; expected json, text or latex"),
            }),
        }
    }
}

/// Resolve a semantic node descriptor for a concrete type.
pub fn resolve_node(rs: &RootSystem, descriptor: &str, k: Option<usize>) -> Result<usize> {
    let n = rs.rank();
    let bad = || Error::Semantic(format!("bad node descriptor {descriptor:?} for {}", rs.lie_type()));
    let node = if let Some(expr) = descriptor.strip_prefix("index:") {
        match expr {
            "k" => k.ok_or_else(bad)?,
            "n" => n,
            _ => match expr.strip_prefix("n-") {
                Some(m) => n.checked_sub(m.parse::<usize>().map_err(|_| bad())?).ok_or_else(bad)?,
                None => expr.parse().map_err(|_| bad())?,
            },
        }
    } else if descriptor == "long" {
        let longs: Vec<usize> = (1..=n).filter(|&i| rs.is_long_simple(i)).collect();
        match longs.as_slice() {
            [i] => *i,
            _ => return Err(bad()),
        }
    } else if descriptor == "adjoint" {
        // the nodes where the highest root pairs nontrivially with the coroot
        let theta = rs.highest_root().coeffs().to_vec();
        let hits: Vec<usize> = (1..=n).filter(|&i| rs.pairing_coeffs(&theta, i) != 0).collect();
        match hits.as_slice() {
            [i] => *i,
            _ => return Err(bad()),
        }
    } else {
        return Err(bad());
    };
    if node == 0 || node > n {
        return Err(bad());
    }
    Ok(node)
}

/// Compute a row from root data.
pub fn compute_row(table: u8, row: &FixtureRow, inst: &FixtureInstance) -> Result<TableRow> {
    let t = LieType::new(row.family, inst.rank)?;
    let rs = RootSystem::shared(t);
    let node = resolve_node(&rs, &row.node, inst.k)?;
    let np = NestedPair::new(Arc::clone(&rs), node)?;
    let p = CrossedDiagram::maximal(t, node)?;
    let q = CrossedDiagram::new(t, np.sigma_q().iter().copied())?;
    let p_minus1 = np.p_grading().dim(-1);
    Ok(TableRow {
        table,
        label: row.label.clone(),
        g: t.to_string(),
        p: p.to_string(),
        q: q.to_string(),
        q_crosses: np.sigma_q().iter().copied().collect(),
        levi_ss: np.p_grading().levi_type().label(),
        ambient_proj_dim: p_minus1 - 1,
        cone_dim: np.cone_dim(),
        vmrt_name: row.vmrt_name.clone(),
        vmrt: row.vmrt.clone(),
    })
}

fn check_row(computed: &TableRow, inst: &FixtureInstance) -> RowCheck {
    let mut mismatches = Vec::new();
    let mut cmp = |field: &str, got: String, want: String| {
        if got != want {
            mismatches.push(format!("{field}: computed {got}, fixture {want}"));
        }
    };
    cmp("q_crosses", format!("{:?}", computed.q_crosses), format!("{:?}", inst.q_crosses));
    cmp("levi_ss", computed.levi_ss.clone(), inst.levi_ss.clone());
    cmp("ambient_proj_dim", computed.ambient_proj_dim.to_string(), inst.ambient_proj_dim.to_string());
    cmp("cone_dim", computed.cone_dim.to_string(), inst.cone_dim.to_string());
    if computed.cone_dim > computed.ambient_proj_dim {
        mismatches.push("cone_dim exceeds ambient_proj_dim".into());
    }
    RowCheck {
        table: computed.table,
        label: computed.label.clone(),
        g: computed.g.clone(),
        mismatches,
    }
}

/// All rows of one table with their fixture comparison.
pub fn table_rows(fixtures: &Fixtures, which: u8) -> Result<Vec<(TableRow, RowCheck)>> {
    let table = fixtures.table(which)?;
    let mut out = Vec::new();
    for row in &table.rows {
        for inst in &row.instances {
            let computed = compute_row(which, row, inst)?;
            let check = check_row(&computed, inst);
            out.push((computed, check));
        }
    }
    Ok(out)
}

/// Render one table. Output is a pure function of the fixtures.
pub fn emit_table(fixtures: &Fixtures, which: u8, format: Format) -> Result<String> {
    let rows: Vec<TableRow> = table_rows(fixtures, which)?.into_iter().map(|(r, _)| r).collect();
    let caption = &fixtures.table(which)?.caption;
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(caption, &rows),
        Format::Latex => render_latex(caption, &rows),
    })
}

fn render_text(caption: &str, rows: &[TableRow]) -> String {
    let header = ["g", "p", "q", "p0_ss", "dim P(p_-1)", "dim C_o", "VMRT"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.g.clone(),
                r.p.clone(),
                r.q.clone(),
                r.levi_ss.clone(),
                r.ambient_proj_dim.to_string(),
                r.cone_dim.to_string(),
                r.vmrt_name.clone(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for c in &cells {
        for (w, x) in widths.iter_mut().zip(c) {
            *w = (*w).max(x.chars().count());
        }
    }
    let line = |items: &[String]| -> String {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(x, &w)| format!("{x}{}", " ".repeat(w - x.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = format!("{caption}\n");
    out.push_str(&line(&header.map(String::from)));
    out.push('\n');
    for c in &cells {
        out.push_str(&line(c));
        out.push('\n');
    }
    out
}

fn latex_type(s: &str) -> String {
    s.split('×')
        .map(|f| {
            let (letter, rank) = f.split_at(1);
            format!("{letter}_{{{rank}}}")
        })
        .collect::<Vec<_>>()
        .join("\\times ")
}

fn render_latex(caption: &str, rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {caption}");
    out.push_str("$\\mathfrak{g}$ & $\\mathfrak{p}$ & $\\mathfrak{q}$ & $\\mathfrak{p}_0^{ss}$ & $\\dim\\mathbb{P}(\\mathfrak{p}_{-1})$ & $\\dim\\mathcal{C}_o$ & VMRT \\\\\n\\hline\n");
    for r in rows {
        let _ = writeln!(
            out,
            "${}$ & \\texttt{{{}}} & \\texttt{{{}}} & ${}$ & {} & {} & {} \\\\",
            latex_type(&r.g),
            r.p.split(':').nth(1).unwrap_or(""),
            r.q.split(':').nth(1).unwrap_or(""),
            latex_type(&r.levi_ss),
            r.ambient_proj_dim,
            r.cone_dim,
            r.vmrt_name
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row<'a>(rows: &'a [(TableRow, RowCheck)], label: &str, g: &str) -> &'a TableRow {
        &rows.iter().find(|(r, _)| r.label == label && r.g == g).unwrap().0
    }

    #[test]
    fn examples() {
        let fx = Fixtures::builtin();
        let t2 = table_rows(&fx, 2).unwrap();
        let b4 = row(&t2, "B_n, alpha_3", "B4");
        assert_eq!(b4.q_crosses, vec![2, 3, 4]);
        assert_eq!(b4.levi_ss, "A2×B1");
        assert_eq!((b4.ambient_proj_dim, b4.cone_dim), (8, 3));

        let t1 = table_rows(&fx, 1).unwrap();
        let c3 = row(&t1, "C_n, alpha_n", "C3");
        assert_eq!(c3.cone_dim, 2);
        assert_eq!(c3.vmrt_name, "Veronese");

        let t3 = table_rows(&fx, 3).unwrap();
        let g2 = row(&t3, "G_2, long root", "G2");
        assert_eq!(g2.q, "G2:xx");
        assert_eq!(g2.p, "G2:*x");
        assert_eq!((g2.levi_ss.as_str(), g2.ambient_proj_dim, g2.cone_dim), ("A1", 3, 1));
    }

    #[test]
    fn descriptors() {
        let e8 = RootSystem::shared(LieType::new(Family::E, 8).unwrap());
        assert_eq!(resolve_node(&e8, "adjoint", None).unwrap(), 8);
        let f4 = RootSystem::shared(LieType::new(Family::F, 4).unwrap());
        assert_eq!(resolve_node(&f4, "adjoint", None).unwrap(), 1);
        assert!(resolve_node(&f4, "long", None).is_err());
        let d6 = RootSystem::shared(LieType::new(Family::D, 6).unwrap());
        assert_eq!(resolve_node(&d6, "index:n-1", None).unwrap(), 5);
        assert_eq!(resolve_node(&d6, "index:k", Some(3)).unwrap(), 3);
        assert!(resolve_node(&d6, "index:9", None).is_err());
    }

    #[test]
    fn formats_are_deterministic() {
        let fx = Fixtures::builtin();
        for which in 1..=3 {
            for f in [Format::Json, Format::Text, Format::Latex] {
                assert_eq!(emit_table(&fx, which, f).unwrap(), emit_table(&fx, which, f).unwrap());
            }
        }
        assert!(emit_table(&fx, 3, Format::Latex).unwrap().contains("$E_{8}$ & \\texttt{*******x} & \\texttt{******xx} & $E_{7}$ & 55 & 27"));
    }
}
