//! JSON reports behind the command-line subcommands.
//!
//! Every report has the same five top-level keys, in this order:
//! `case`, `classification`, `predictions`, `oracle`, `checks`. Nested maps
//! are sorted by key, so output is byte-stable.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chevalley::ChevalleyBasis;
use crate::error::{Error, Result};
use crate::grading::{classify_case, Case, CrossedDiagram, ParabolicGrading};
use crate::homology::{compare_with_kostant, harm_curv_checks, q_complex};
use crate::kostant::{classify_h2_positive, h2_components, Profile};
use crate::nested::{Component, NestedPair};
use crate::rootsys::{Family, LieType, RootSystem};

/// Outcome of one named check, with an optional witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn ok(pass: bool) -> Self {
        Check { pass, witness: None }
    }

    pub fn with_witness(pass: bool, witness: impl Into<String>) -> Self {
        Check {
            pass,
            witness: Some(witness.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub case: Value,
    pub classification: Value,
    pub predictions: Vec<Value>,
    pub oracle: Value,
    pub checks: BTreeMap<String, Check>,
    /// Set when the oracle could only deliver a partial verdict.
    #[serde(skip)]
    pub size_capped: bool,
}

impl Report {
    fn new(case: Value) -> Self {
        Report {
            case,
            classification: Value::Null,
            predictions: Vec::new(),
            oracle: Value::Null,
            checks: BTreeMap::new(),
            size_capped: false,
        }
    }

    fn check(&mut self, name: &str, c: Check) {
        self.checks.insert(name.to_string(), c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| !c.pass).map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn case_value(t: LieType, node: Option<usize>, diagram: &CrossedDiagram, rs: &RootSystem) -> Value {
    json!({
        "g": t.to_string(),
        "dim_g": rs.dim(),
        "diagram": diagram.to_string(),
        "node": node,
        "long": node.map(|i| rs.is_long_simple(i)),
    })
}

fn maximal_case(t: LieType, i: usize) -> Result<(Arc<RootSystem>, Value)> {
    let rs = RootSystem::shared(t);
    let d = CrossedDiagram::maximal(t, i)?;
    let v = case_value(t, Some(i), &d, &rs);
    Ok((rs, v))
}

/// `(A_n, alpha_1 / alpha_n)` and `(D_3, alpha_2 / alpha_3)`, where `q` has depth 2.
fn is_a_end(t: LieType, i: usize) -> bool {
    match t.family() {
        Family::A => i == 1 || i == t.rank(),
        Family::D => t.rank() == 3 && i >= 2,
        _ => false,
    }
}

/// The value of `depth(q)` the classification predicts, if any.
pub fn expected_depth_q(t: LieType, i: usize, case: Case) -> Option<i32> {
    if t.family() == Family::A && t.rank() == 1 {
        return None;
    }
    match case {
        Case::Symmetric if is_a_end(t, i) => Some(2),
        Case::Symmetric => Some(3),
        Case::Contact => Some(5),
        Case::BD3 => Some(6),
        _ => None,
    }
}

/// Grading data of an arbitrary crossed diagram.
pub fn cmd_info(d: &CrossedDiagram) -> Result<Report> {
    let t = d.lie_type();
    let rs = RootSystem::shared(t);
    let g = ParabolicGrading::new(Arc::clone(&rs), d.clone())?;
    let mut r = Report::new(case_value(t, d.node(), d, &rs));
    let dims: BTreeMap<String, usize> = g.dims().iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let levi = g.levi_type();
    r.classification = json!({
        "depth": g.depth(),
        "dims": dims,
        "levi_ss": levi.label(),
        "center_dim": levi.center_dim,
        "case": d.node().map(|i| classify_case(&rs, i).map(|c| c.label())).transpose()?,
    });
    let total: usize = g.dims().values().sum();
    r.check("dims_sum_to_dim_g", Check::ok(total == rs.dim()));
    r.check(
        "dims_symmetric",
        Check::ok(g.dims().iter().all(|(k, v)| g.dim(-k) == *v)),
    );
    r.check("p_minus_bracket_generated", Check::ok(g.bracket_generates()));
    Ok(r)
}

fn bracket_check(np: &NestedPair, a: Component, b: Component) -> Check {
    let rep = np.check_bracket_zero(a, b);
    match rep.witnesses.first() {
        None => Check::ok(true),
        Some((x, y)) => Check::with_witness(false, format!("[{x}, {y}] != 0")),
    }
}

/// Bigrading and bracket identities of the nested pair `q <= p` at node `i`.
pub fn cmd_nested(t: LieType, i: usize) -> Result<Report> {
    let (rs, case) = maximal_case(t, i)?;
    let np = NestedPair::new(Arc::clone(&rs), i)?;
    let mut r = Report::new(case);
    let dims: BTreeMap<String, usize> = np
        .bigraded_dims()
        .into_iter()
        .map(|((a, b), v)| (format!("{a},{b}"), v))
        .collect();
    let short_witness = if np.is_long() {
        Value::Null
    } else {
        let rep = np.check_bracket_zero(Component::QF(-1), Component::Q(-2));
        json!(rep.witnesses.first().map(|(x, y)| format!("[{x}, {y}] != 0")))
    };
    r.classification = json!({
        "case": np.case().label(),
        "sigma_q": np.sigma_q(),
        "depth_p": np.p_grading().depth(),
        "depth_q": np.depth_q(),
        "cone_dim": np.cone_dim(),
        "bigraded_dims": dims,
        "short_root_bracket_qf-1_q-2": short_witness,
    });
    if !np.is_long() {
        return Ok(r);
    }
    r.check("bracket_qf-1_q-2_zero", bracket_check(&np, Component::QF(-1), Component::Q(-2)));
    r.check("bracket_qf-1_q-3_zero", bracket_check(&np, Component::QF(-1), Component::Q(-3)));
    r.check("p0_cap_q_minus_is_qv-1", Check::ok(np.p0_cap_qminus_is_v1()));
    r.check("qv-1_abelian", Check::ok(np.check_abelian_v()));
    r.check("ff_model_bijection", Check::ok(np.ff_model_iso()));
    r.check("q-2_shape", Check::ok(np.q_minus2_shape()));
    r.check("p-1_partition", Check::ok(np.p_minus1_partition()));
    if let Some(expected) = expected_depth_q(t, i, np.case()) {
        r.check(
            "depth_q",
            Check::with_witness(np.depth_q() == expected, format!("expected {expected}, got {}", np.depth_q())),
        );
    }
    if matches!(np.case(), Case::Contact | Case::BD3) {
        r.check("p1_eq_q4", Check::ok(np.check_p1_eq_q4()?));
        r.check("bracket_q2_q-4_zero", bracket_check(&np, Component::Q(2), Component::Q(-4)));
        r.check("bracket_qf1_q-4_zero", bracket_check(&np, Component::QF(1), Component::Q(-4)));
    }
    Ok(r)
}

fn profile_label(p: Profile) -> &'static str {
    match p {
        Profile::Vanishing => "vanishing",
        Profile::R1 => "r1",
        Profile::R2 => "r2",
        Profile::R3 => "r3",
        Profile::R1R2 => "r1r2",
        Profile::Unclassified => "unclassified",
    }
}

/// Whether the positive homogeneities fit the case: nothing outside the
/// symmetric, contact and BD3 families, `{1}` in the contact and BD3 cases.
fn profile_consistent(t: LieType, case: Case, profile: Profile) -> Option<bool> {
    if t.family() == Family::A && t.rank() == 1 {
        return Some(profile == Profile::Vanishing);
    }
    match case {
        Case::ShortRoot => None,
        Case::Other => Some(profile == Profile::Vanishing),
        Case::Contact | Case::BD3 => Some(profile == Profile::R1),
        Case::Symmetric => Some(!matches!(profile, Profile::Vanishing | Profile::Unclassified)),
    }
}

/// Kostant's description of `H_2(p_+, g)` at node `i`.
pub fn cmd_kostant(t: LieType, i: usize) -> Result<Report> {
    let (rs, case) = maximal_case(t, i)?;
    let mut r = Report::new(case);
    let cls = classify_h2_positive(&rs, i)?;
    r.classification = json!({
        "case": cls.case.label(),
        "positive_homogeneities": cls.positive_rs,
        "profile": profile_label(cls.profile),
    });
    r.predictions = h2_components(&rs, i)?
        .into_iter()
        .map(|c| {
            json!({
                "word": c.word.to_string(),
                "triple": [c.triple.0.coeffs(), c.triple.1.coeffs(), c.triple.2.coeffs()],
                "r": c.r,
                "q_degree": c.q_degree,
                "lowest_weight": c.lowest_weight,
                "levi_dim": c.levi_dim,
            })
        })
        .collect();
    if let Some(ok) = profile_consistent(t, cls.case, cls.profile) {
        r.check(
            "profile_matches_case",
            Check::with_witness(ok, format!("{} with {:?}", cls.case.label(), cls.positive_rs)),
        );
    }
    Ok(r)
}

/// One line of the classification sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub g: String,
    pub node: usize,
    pub long: bool,
    pub case: String,
    pub positive_homogeneities: Vec<i32>,
    pub profile: String,
    pub depth_q: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1_eq_q4: Option<bool>,
}

/// The sweep over every maximal parabolic of every type of rank `<= max_rank`.
pub fn sweep(max_rank: usize) -> Result<Vec<SweepRow>> {
    let cases: Vec<(LieType, usize)> = LieType::all_up_to(max_rank)
        .into_iter()
        .flat_map(|t| (1..=t.rank()).map(move |i| (t, i)))
        .collect();
    cases
        .par_iter()
        .map(|&(t, i)| {
            let rs = RootSystem::shared(t);
            let cls = classify_h2_positive(&rs, i)?;
            let np = NestedPair::new(Arc::clone(&rs), i)?;
            let p1_eq_q4 = matches!(cls.case, Case::Contact | Case::BD3)
                .then(|| np.check_p1_eq_q4())
                .transpose()?;
            Ok(SweepRow {
                g: t.to_string(),
                node: i,
                long: rs.is_long_simple(i),
                case: cls.case.label().to_string(),
                positive_homogeneities: cls.positive_rs,
                profile: profile_label(cls.profile).to_string(),
                depth_q: np.depth_q(),
                p1_eq_q4,
            })
        })
        .collect()
}

/// Classification sweep with the structural checks.
pub fn cmd_classify(max_rank: usize) -> Result<Report> {
    if max_rank == 0 {
        return Err(Error::Semantic("max rank must be at least 1".into()));
    }
    let rows = sweep(max_rank)?;
    let mut r = Report::new(json!({ "max_rank": max_rank }));
    let positive: BTreeSet<&str> = rows
        .iter()
        .filter(|x| x.long && !x.positive_homogeneities.is_empty())
        .map(|x| x.case.as_str())
        .collect();
    let allowed: BTreeSet<&str> = ["symmetric", "contact", "BD3"].into_iter().collect();
    let mut bad_profile = Vec::new();
    let mut bad_depth = Vec::new();
    for row in &rows {
        let t: LieType = crate::dynkin_io::parse_type(&row.g)?;
        let case = classify_case(&RootSystem::shared(t), row.node)?;
        let profile = Profile::of(&row.positive_homogeneities);
        if profile_consistent(t, case, profile) == Some(false) {
            bad_profile.push(format!("{}:{}", row.g, row.node));
        }
        if let Some(e) = expected_depth_q(t, row.node, case) {
            if e != row.depth_q {
                bad_depth.push(format!("{}:{}", row.g, row.node));
            }
        }
    }
    r.check(
        "positive_families",
        Check::with_witness(positive.is_subset(&allowed), format!("{positive:?}")),
    );
    r.check(
        "profiles_match_cases",
        if bad_profile.is_empty() { Check::ok(true) } else { Check::with_witness(false, bad_profile.join(" ")) },
    );
    r.check(
        "depth_q",
        if bad_depth.is_empty() { Check::ok(true) } else { Check::with_witness(false, bad_depth.join(" ")) },
    );
    r.check(
        "p1_eq_q4",
        Check::ok(rows.iter().all(|x| x.p1_eq_q4 != Some(false))),
    );
    r.classification = serde_json::to_value(&rows).expect("rows serialize");
    Ok(r)
}

/// Brute-force Hodge oracle at node `i`, compared with the Kostant prediction.
pub fn cmd_oracle(t: LieType, i: usize, cap: usize) -> Result<Report> {
    let (rs, case) = maximal_case(t, i)?;
    let cb = Arc::new(ChevalleyBasis::new(Arc::clone(&rs)));
    let v = compare_with_kostant(&cb, i, cap)?;
    let mut r = Report::new(case);
    r.size_capped = v.partial;
    r.predictions = v
        .predicted
        .iter()
        .map(|c| json!({ "word": c.word.to_string(), "r": c.r, "levi_dim": c.levi_dim }))
        .collect();
    let by_degree = |m: &BTreeMap<i32, usize>| -> BTreeMap<String, usize> {
        m.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    };
    let degrees: Vec<Value> = v.hodge.degrees.iter().map(|d| json!(d)).collect();
    r.oracle = json!({
        "partial": v.partial,
        "total_harmonic": v.total_harmonic,
        "predicted_total": v.predicted_total,
        "harmonic_by_degree": by_degree(&v.harmonic_by_degree),
        "predicted_by_degree": v.predicted_by_degree.iter().map(|(k, x)| (k.to_string(), *x)).collect::<BTreeMap<_, _>>(),
        "degrees": degrees,
    });
    r.check("squares_vanish", Check::ok(v.hodge.squares_vanish));
    r.check(
        "hodge_identities",
        Check::ok(v.hodge.identities_hold()),
    );
    r.check("lowest_weight_harmonic", Check::ok(v.a_ok()));
    r.check(
        "harmonic_support",
        Check::with_witness(
            v.b_ok(),
            format!("predicted {:?}, observed {:?}", v.predicted_positive, v.observed_positive),
        ),
    );
    if let Some(ok) = v.c_ok() {
        r.check(
            "total_harmonic_dim",
            Check::with_witness(ok, format!("predicted {}, observed {:?}", v.predicted_total, v.total_harmonic)),
        );
    }
    let np = NestedPair::new(Arc::clone(&rs), i)?;
    let qualifies = match np.case() {
        Case::Symmetric => np.depth_q() == 3,
        Case::Contact | Case::BD3 => true,
        _ => false,
    };
    if qualifies {
        if q_complex(&cb, &np)?.dim(3) <= cap {
            let h = harm_curv_checks(&cb, &np)?;
            for (name, ok) in &h.checks {
                r.check(&format!("harm_curv_{name}"), Check::ok(*ok));
            }
        } else {
            r.size_capped = true;
        }
    }
    Ok(r)
}
