//! Running the tasks of a job and the JSON report they produce.
//!
//! Rationals are written as `"num/den"` strings, polynomials as coefficient
//! lists (lowest degree first) and polynomial matrices as nested lists.

use parahiggs::higgs::{Mode, SectionSpace};
use parahiggs::hitchin::{
    nilpotency_check, residue_nilpotency_check, strong_vanishing_check, Group, HitchinMap,
};
use parahiggs::pairing::{compatibility_check, compatible_higgs_space};
use parahiggs::scalar::format_rational;
use parahiggs::stability::{stability_decide_rank2, StabilityVerdict};
use parahiggs::verystable::{
    moduli_dimension, moduli_dimension_from_roots, scaling_parameters, serre_duality_check,
    very_stability_verdict,
};
use parahiggs::{Poly, PolyMatrix, QMatrix, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{JobConfig, Task};

pub const REPORT_SCHEMA: &str = "parahiggs.report/v1";
pub const TOOL: &str = concat!("parahiggs ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub name: String,
    pub seed: u64,
    pub instance: Value,
    pub tasks: Vec<TaskReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub task: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Report {
    pub fn task(&self, name: &str) -> Option<&TaskReport> {
        self.tasks.iter().find(|t| t.task == name)
    }

    pub fn all_ran(&self) -> bool {
        self.tasks.iter().all(|t| t.status == "ok")
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn q(x: &Rational) -> String {
    format_rational(x)
}

pub fn poly(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(q).collect()
}

pub fn poly_matrix(m: &PolyMatrix) -> Vec<Vec<Vec<String>>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(poly).collect())
        .collect()
}

pub fn q_matrix(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(q).collect())
        .collect()
}

fn space_json(w: &SectionSpace) -> Value {
    json!({
        "mode": w.mode().to_string(),
        "dimension": w.dimension(),
        "basis": w.basis().iter().map(|b| poly_matrix(b.matrix())).collect::<Vec<_>>(),
    })
}

fn group_of(cfg: &JobConfig) -> parahiggs::Result<Group> {
    Group::for_form(cfg.pairing.rank(), cfg.pairing.symmetry())
}

fn instance(cfg: &JobConfig) -> Value {
    let e = &cfg.bundle;
    json!({
        "group": group_of(cfg).map(|g| g.to_string()).unwrap_or_default(),
        "rank": e.rank(),
        "points": e.curve().points().iter().map(q).collect::<Vec<_>>(),
        "splitting": e.splitting(),
        "degree": e.degree(),
        "parabolic_degree": q(&e.parabolic_degree()),
        "weights": e.weights().iter().map(|w| w.iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "flags": if cfg.generic_flags { "generic" } else { "explicit" },
        "flag_matrices": e.flags().iter().map(q_matrix).collect::<Vec<_>>(),
        "pairing": {
            "symmetry": cfg.pairing.symmetry().to_string(),
            "target_degree": cfg.pairing.target_degree(),
            "omega": poly_matrix(cfg.pairing.omega()),
        },
    })
}

fn sections(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let strong = compatible_higgs_space(&cfg.bundle, &cfg.pairing, Mode::Strong);
    let parabolic = compatible_higgs_space(&cfg.bundle, &cfg.pairing, Mode::Parabolic);
    let compatible = strong
        .basis()
        .iter()
        .chain(parabolic.basis())
        .all(|b| compatibility_check(b.matrix(), &cfg.pairing).agree());
    Ok(json!({
        "twist": cfg.bundle.curve().log_canonical_degree(),
        "strong": space_json(&strong),
        "parabolic": space_json(&parabolic),
        "strong_inside_parabolic": strong.is_subspace_of(&parabolic),
        "compatibility_formulations_agree": compatible,
    }))
}

fn hitchin(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let map = HitchinMap::for_pairing(&cfg.pairing)?;
    let twist = cfg.bundle.curve().log_canonical_degree();
    let mut agree = true;
    let mut vanishing = true;
    let mut images = |mode: Mode| -> parahiggs::Result<Vec<Value>> {
        let w = compatible_higgs_space(&cfg.bundle, &cfg.pairing, mode);
        let mut out = Vec::new();
        for b in w.basis() {
            let image = map.image(b.matrix())?;
            let nilpotent = nilpotency_check(b.matrix());
            agree &= nilpotent == image.is_zero();
            let vanishes = strong_vanishing_check(&image, cfg.bundle.curve());
            if mode == Mode::Strong {
                vanishing &= vanishes;
            }
            out.push(json!({
                "coefficients": image.coefficients.iter().map(poly).collect::<Vec<_>>(),
                "degree_bounds": image.respects_degree_bounds(twist),
                "vanishes_at_points": vanishes,
                "nilpotent": nilpotent,
                "residues_nilpotent": residue_nilpotency_check(&cfg.bundle, b.matrix()),
            }));
        }
        Ok(out)
    };
    let strong = images(Mode::Strong)?;
    let parabolic = images(Mode::Parabolic)?;
    Ok(json!({
        "group": map.group().to_string(),
        "weights": map.group().weights(),
        "pfaffian_normalization": q(map.pfaffian_normalization()),
        "strong": strong,
        "parabolic": parabolic,
        "nilpotent_iff_zero_image": agree,
        "strong_images_vanish_at_points": vanishing,
    }))
}

fn equivariance(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let map = HitchinMap::for_pairing(&cfg.pairing)?;
    let params = scaling_parameters();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for mode in [Mode::Strong, Mode::Parabolic] {
        let w = compatible_higgs_space(&cfg.bundle, &cfg.pairing, mode);
        let mut fields: Vec<PolyMatrix> = w.basis().iter().map(|b| b.matrix().clone()).collect();
        if w.dimension() > 1 {
            // one mixed field so that cross terms are exercised
            let coeffs: Vec<Rational> = (0..w.dimension())
                .map(|i| params[i % params.len()].clone())
                .collect();
            fields.push(w.combination(&coeffs).matrix().clone());
        }
        for (i, phi) in fields.iter().enumerate() {
            for t in &params {
                checked += 1;
                if !map.equivariance_check(phi, t)? {
                    failures.push(json!({ "mode": mode.to_string(), "field": i, "t": q(t) }));
                }
            }
        }
    }
    Ok(json!({
        "method": "exact-comparison",
        "parameters": params.iter().map(q).collect::<Vec<_>>(),
        "checked": checked,
        "failures": failures,
        "passed": failures.is_empty(),
    }))
}

fn very_stable(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let v = very_stability_verdict(&cfg.bundle, &cfg.pairing, cfg.seed);
    let s = &v.strong;
    Ok(json!({
        "verdict": v.verdict,
        "method": s.method.to_string(),
        "certificate": v.certificate,
        "strong_dimension": v.strong_dimension,
        "nilpotent_locus": s.verdict.to_string(),
        "strongly_very_stable": v.strongly_very_stable,
        "very_stable": v.very_stable,
        "witness": s.witness.as_ref().map(|w| poly_matrix(w.matrix())),
        "witness_coordinates": s.witness_coordinates.as_ref().map(|c| c.iter().map(q).collect::<Vec<_>>()),
        "algebraic_witness": s.algebraic.as_ref().map(|a| json!({
            "defining_polynomial": poly(&a.defining_polynomial),
            "directions": a.directions.iter().map(poly).collect::<Vec<_>>(),
        })),
        "search_budget": s.budget,
        "nilpotent_fiber": v.fiber.iter().map(|f| poly_matrix(f.matrix())).collect::<Vec<_>>(),
    }))
}

fn stability_json(s: &StabilityVerdict, method: &str) -> Value {
    json!({
        "verdict": s.verdict.to_string(),
        "method": method,
        "slope": q(&s.slope),
        "max_line_degree": s.max_line_degree.as_ref().map(q),
        "witness": s.witness.as_ref().map(|w| json!({
            "degree": w.degree,
            "section": w.section.iter().map(poly).collect::<Vec<_>>(),
            "incidence": w.incidence,
            "induced_weights": w.induced_weights.iter().map(q).collect::<Vec<_>>(),
            "parabolic_degree": q(&w.parabolic_degree()),
        })),
        "conjugate_witness": s.conjugate_witness.as_ref().map(|c| json!({
            "radicand": q(&c.radicand),
            "re": c.re.iter().map(poly).collect::<Vec<_>>(),
            "im": c.im.iter().map(poly).collect::<Vec<_>>(),
            "degree": c.degree,
            "incidence": c.incidence,
            "induced_weights": c.induced_weights.iter().map(q).collect::<Vec<_>>(),
            "parabolic_degree": q(&c.parabolic_degree()),
        })),
    })
}

fn stability(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let plain = stability_decide_rank2(&cfg.bundle, &cfg.pairing, None)?;
    let strong = compatible_higgs_space(&cfg.bundle, &cfg.pairing, Mode::Strong);
    let higgs = match strong.basis().first() {
        Some(phi) => {
            let s = stability_decide_rank2(&cfg.bundle, &cfg.pairing, Some(phi.matrix()))?;
            stability_json(&s, "invariant-eigenlines")
        }
        None => Value::Null,
    };
    Ok(json!({
        "bundle": stability_json(&plain, "line-subbundle-enumeration"),
        "higgs_first_strong_basis_field": higgs,
    }))
}

fn serre(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let s = serre_duality_check(&cfg.bundle, &cfg.pairing)?;
    Ok(json!({
        "method": "riemann-roch",
        "strong_dimension": s.strong_dimension,
        "h0": s.h0,
        "rank": s.rank,
        "degree": s.degree,
        "euler_characteristic": s.euler_characteristic,
        "h1": s.h1,
        "passed": s.passed,
    }))
}

fn dimensions(cfg: &JobConfig) -> parahiggs::Result<Value> {
    let group = group_of(cfg)?;
    let r = cfg.bundle.curve().len() as i64;
    dimension_json(group, cfg.genus, r)
}

pub fn dimension_json(group: Group, g: i64, r: i64) -> parahiggs::Result<Value> {
    let closed = moduli_dimension(group, g, r)?;
    let roots = moduli_dimension_from_roots(group, g, r)?;
    Ok(json!({
        "group": group.to_string(),
        "genus": g,
        "marked_points": r,
        "dimension": closed,
        "dimension_from_roots": roots,
        "agree": closed == roots,
    }))
}

fn run_task(cfg: &JobConfig, task: Task) -> TaskReport {
    let result = match task {
        Task::Sections => sections(cfg),
        Task::Hitchin => hitchin(cfg),
        Task::Equivariance => equivariance(cfg),
        Task::VeryStable => very_stable(cfg),
        Task::Stability => stability(cfg),
        Task::Serre => serre(cfg),
        Task::Dimensions => dimensions(cfg),
    };
    match result {
        Ok(v) => TaskReport {
            task: task.name().into(),
            status: "ok".into(),
            error: None,
            result: Some(v),
        },
        Err(e) => TaskReport {
            task: task.name().into(),
            status: "error".into(),
            error: Some(e.to_string()),
            result: None,
        },
    }
}

/// Runs the configured tasks in their fixed order. Tasks run on separate
/// threads; the report lists them in order regardless of completion.
pub fn run_report(cfg: &JobConfig) -> Report {
    let mut tasks = cfg.tasks.clone();
    tasks.sort();
    tasks.dedup();
    let results: Vec<TaskReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = tasks
            .iter()
            .map(|&t| scope.spawn(move || run_task(cfg, t)))
            .collect();
        handles
            .into_iter()
            .zip(&tasks)
            .map(|(h, &t)| {
                h.join().unwrap_or_else(|_| TaskReport {
                    task: t.name().into(),
                    status: "error".into(),
                    error: Some("task panicked".into()),
                    result: None,
                })
            })
            .collect()
    });
    Report {
        schema: REPORT_SCHEMA.into(),
        tool: TOOL.into(),
        name: cfg.name.clone(),
        seed: cfg.seed,
        instance: instance(cfg),
        tasks: results,
    }
}
