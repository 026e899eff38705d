use std::collections::HashMap;
use std::time::Instant;

use serde_json::{json, Value};

use hlskit::exactalg::text::{first_difference, render};
use hlskit::poset::{elements_json, hasse_dot, parse_chain, Multichain};
use hlskit::series::{
    expand_multichain, expand_rational, hls, hls_modified, mv_hls, relation_check, weak_order_igusa, HlsRational,
    UniversalRational,
};
use hlskit::verify::{
    igusa_function, igusa_reciprocity, mobius_matrix, mobius_via_chains, verify_order_complex, verify_reciprocity,
    zeta_matrix, PolyMatrix, Verdict,
};
use hlskit::weight::{chain_weight, phi_tableau, project, theta_tableau, YVars};
use hlskit::{Error, Interval, Limits, Poset, PosetSpec, VarId, VarName, VarTable};

use crate::args::{Check, Common, Format, Special, Via};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CAP: u8 = 2;
pub const EXIT_FAILED: u8 = 3;

/// A command's rendered output and exit code.
pub struct Outcome {
    pub out: String,
    pub code: u8,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome { out, code: 0 }
    }
}

/// A command that could not produce its result.
pub struct Failure {
    pub msg: String,
    pub code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_USAGE };
        Failure { msg: e.to_string(), code }
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure { msg, code: EXIT_USAGE }
    }
}

impl From<&str> for Failure {
    fn from(msg: &str) -> Self {
        msg.to_string().into()
    }
}

type CmdResult = Result<Outcome, Failure>;

fn kind(modified: bool) -> Interval {
    if modified {
        Interval::Open
    } else {
        Interval::HalfOpen
    }
}

fn series(spec: &PosetSpec, modified: bool, t: &mut VarTable, limits: &Limits) -> Result<HlsRational, Error> {
    if modified {
        hls_modified(spec, t, limits)
    } else {
        hls(spec, t, limits)
    }
}

fn spec_json(spec: &PosetSpec) -> Value {
    json!({ "n": spec.n(), "r": spec.r() })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err("--format dot is only available for hasse".into());
    }
    Ok(())
}

fn with_millis(mut v: Value, start: Instant, common: &Common) -> Value {
    if !common.no_timing {
        v["millis"] = json!(start.elapsed().as_millis() as u64);
    }
    v
}

pub fn compute(common: &Common, modified: bool, stats_only: bool) -> CmdResult {
    no_dot(common.format)?;
    let spec = common.spec()?;
    let start = Instant::now();
    let mut t = VarTable::new();
    let h = series(&spec, modified, &mut t, &common.limits())?;
    let stats = json!({
        "chains": h.chains(),
        "terms": h.numerator().len(),
        "denom_factors": h.denominator().len(),
    });
    if common.format == Format::Json {
        let mut v = json!({
            "spec": spec_json(&spec),
            "series": if modified { "hls_modified" } else { "hls" },
            "denominator": h.denominator().iter().map(|e| e.render()).collect::<Vec<_>>(),
            "stats": with_millis(stats, start, common),
        });
        if !stats_only {
            v["numerator"] = json!(h.render_numerator(&t));
        }
        return Ok(Outcome::ok(pretty(&v)));
    }
    let mut out = String::new();
    if !stats_only {
        out += &format!("numerator: {}\ndenominator: {}\n", h.render_numerator(&t), h.render_denominator(&t));
    }
    out +=
        &format!("chains: {}\nterms: {}\ndenom_factors: {}\n", h.chains(), h.numerator().len(), h.denominator().len());
    Ok(Outcome::ok(out))
}

pub fn expand(common: &Common, max_degree: u32, modified: bool, via: Via) -> CmdResult {
    no_dot(common.format)?;
    let spec = common.spec()?;
    let limits = common.limits();
    let mut t = VarTable::new();
    let s = match via {
        Via::Multichain => expand_multichain(&spec, kind(modified), max_degree, &mut t, &limits)?,
        Via::Rational => expand_rational(&series(&spec, modified, &mut t, &limits)?, max_degree),
    };
    Ok(Outcome::ok(match common.format {
        Format::Json => {
            let mut v = s.to_json(&t);
            v["spec"] = spec_json(&spec);
            pretty(&v)
        }
        _ => s.render_table(&t),
    }))
}

pub fn project_chain(common: &Common, literal: &str, modified: bool) -> CmdResult {
    no_dot(common.format)?;
    let spec = common.spec()?;
    let chain = parse_chain(literal, &spec, kind(modified))?;
    let mc = Multichain::from_chain(&chain);
    let mut t = VarTable::new();
    let vars = YVars::new(&spec, &mut t);
    let weight = chain_weight(chain.elements(), &spec, &vars)?;
    let mut comps = Vec::new();
    for i in 0..spec.g() {
        let tab = project(&mc, i, &spec)?;
        let v = vars.component(i);
        comps.push((tab.clone(), render(&theta_tableau(&tab, v.y0), &t), render(&phi_tableau(&tab, &v.ys), &t)));
    }
    if common.format == Format::Json {
        let v = json!({
            "spec": spec_json(&spec),
            "chain": chain.render(),
            "components": comps.iter().map(|(tab, theta, phi)| json!({
                "tableau": tab.to_json(),
                "l_plus": tab.l_plus(),
                "theta": theta,
                "phi": phi,
            })).collect::<Vec<_>>(),
            "weight": render(&weight, &t),
        });
        return Ok(Outcome::ok(pretty(&v)));
    }
    let mut out = format!("chain: {}\n", chain.render());
    for (i, (tab, theta, phi)) in comps.iter().enumerate() {
        let cells: Vec<String> = tab.l_plus().iter().map(|(a, b)| format!("({a},{b})")).collect();
        out += &format!("component {}:\n{}\n", i + 1, tab.pretty());
        out += &format!("L+: {}\ntheta: {theta}\nphi: {phi}\n", cells.join(" "));
    }
    out += &format!("weight: {}\n", render(&weight, &t));
    Ok(Outcome::ok(out))
}

pub fn hasse(common: &Common) -> CmdResult {
    let spec = common.spec()?;
    let p = Poset::new(&spec, &common.limits())?;
    let edges = p.cover_relations();
    Ok(Outcome::ok(match common.format {
        Format::Dot => hasse_dot(&p),
        Format::Json => pretty(&json!({
            "spec": spec_json(&spec),
            "elements": elements_json(&p),
            "labels": p.elements().iter().map(|e| e.render()).collect::<Vec<_>>(),
            "edges": edges,
        })),
        Format::Text => {
            let mut out = format!("elements: {}\nedges: {}\n", p.len(), edges.len());
            for (a, b) in edges {
                out += &format!("{} < {}\n", p.element(a), p.element(b));
            }
            out
        }
    }))
}

fn render_rational(u: &UniversalRational, t: &VarTable) -> String {
    let den = if u.factors.is_empty() {
        "1".to_string()
    } else {
        u.factors.iter().map(|&v| format!("(1 - {})", t.name(v))).collect::<Vec<_>>().join("*")
    };
    format!("numerator: {}\ndenominator: {den}\n", render(&u.numerator, t))
}

fn subset_name(mask: u32) -> VarName {
    let members: Vec<u32> = (1..=32).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
    VarName::indexed("X", &members)
}

pub fn specialize(common: &Common, which: Special, g: Option<u32>) -> CmdResult {
    no_dot(common.format)?;
    let mut t = VarTable::new();
    let u = match which {
        Special::Igusa => igusa_function(&common.r_only()?, &mut t)?,
        Special::WeakOrder => {
            let g = g.ok_or("--g is required")?;
            if g > 12 {
                return Err(format!("--g {g} is too large (at most 12)").into());
            }
            let xs: HashMap<u32, VarId> = (1..1u32 << g).map(|m| (m, t.intern(subset_name(m)))).collect();
            weak_order_igusa(g, &|m| xs[&m])
        }
        Special::MvHls => {
            let n = match common.n.as_deref() {
                Some([n]) if *n <= 8 => *n,
                Some([n]) => return Err(format!("--n {n} is too large (at most 8)").into()),
                _ => return Err("mv-hls needs a single --n".into()),
            };
            let y = t.intern(VarName::plain("Y"));
            let xs: HashMap<u32, VarId> = (1..1u32 << n).map(|m| (m, t.intern(subset_name(m)))).collect();
            mv_hls(n, y, &|m| xs[&m])?
        }
    };
    Ok(Outcome::ok(match common.format {
        Format::Json => pretty(&json!({
            "kind": format!("{which:?}"),
            "numerator": render(&u.numerator, &t),
            "denominator": u.factors.iter().map(|&v| t.name(v).to_string()).collect::<Vec<_>>(),
        })),
        _ => render_rational(&u, &t),
    }))
}

struct Report {
    verdict: Verdict,
    counterexample: Option<String>,
}

impl Report {
    fn from_check(pass: bool, counterexample: impl FnOnce() -> Option<String>) -> Self {
        if pass {
            Report { verdict: Verdict::Pass, counterexample: None }
        } else {
            Report { verdict: Verdict::Fail, counterexample: counterexample() }
        }
    }
}

fn first_cell(m: &PolyMatrix, expected: &PolyMatrix, t: &VarTable) -> Option<String> {
    m.differences(expected)
        .first()
        .map(|&(i, j)| format!("entry ({}, {}) is {}", m.index()[i], m.index()[j], render(m.get(i, j), t)))
}

fn zeta_mobius(spec: &PosetSpec, limits: &Limits) -> Result<Report, Error> {
    let mut t = VarTable::new();
    let vars = YVars::new(spec, &mut t);
    let z = zeta_matrix(spec, &vars, limits)?;
    let m = mobius_matrix(spec, &vars, limits)?;
    let prod = z.matmul(&m)?;
    let id = PolyMatrix::identity(z.index().to_vec());
    if !prod.is_identity() {
        return Ok(Report::from_check(false, || first_cell(&prod, &id, &t)));
    }
    if spec.g() > 1 {
        let comps: Vec<(PolyMatrix, PolyMatrix)> = (0..spec.g())
            .map(|i| {
                let (c, v) = (spec.component(i), vars.only(i));
                Ok((zeta_matrix(&c, &v, limits)?, mobius_matrix(&c, &v, limits)?))
            })
            .collect::<Result<_, Error>>()?;
        let (mut zk, mut mk) = comps[0].clone();
        for (zi, mi) in &comps[1..] {
            zk = zk.kron(zi);
            mk = mk.kron(mi);
        }
        if zk != z {
            return Ok(Report::from_check(false, || first_cell(&zk, &z, &t).map(|s| format!("Kronecker zeta {s}"))));
        }
        if mk != m {
            return Ok(Report::from_check(false, || first_cell(&mk, &m, &t).map(|s| format!("Kronecker Möbius {s}"))));
        }
    }
    Ok(Report::from_check(true, || None))
}

fn mobius_chains(spec: &PosetSpec, limits: &Limits) -> Result<Report, Error> {
    let mut t = VarTable::new();
    let vars = YVars::new(spec, &mut t);
    let m = mobius_matrix(spec, &vars, limits)?;
    let p = Poset::new(spec, limits)?;
    for a in 0..p.len() {
        for b in 0..p.len() {
            if !p.leq(a, b) {
                continue;
            }
            let via = mobius_via_chains(&p, a, b, &vars, limits)?;
            if &via != m.get(a, b) {
                let msg = format!("({}, {}): chains give {}", p.element(a), p.element(b), render(&via, &t));
                return Ok(Report::from_check(false, || Some(msg)));
            }
        }
    }
    Ok(Report::from_check(true, || None))
}

pub fn verify(common: &Common, check: Check, modified: bool, max_degree: u32) -> CmdResult {
    no_dot(common.format)?;
    let limits = common.limits();
    let start = Instant::now();
    let mut t = VarTable::new();
    let (label, report) = match check {
        Check::Igusa => {
            let r = common.r_only()?;
            let rep = igusa_reciprocity(&r, &mut t, &limits)?;
            let label = PosetSpec::new(vec![0; r.len()], r)?;
            let verdict = if rep.certificate.vacuous {
                Report { verdict: Verdict::Vacuous, counterexample: None }
            } else {
                Report::from_check(rep.passed(), || {
                    Some(if !rep.numerators_agree {
                        "Igusa function differs from the renamed series".into()
                    } else if !rep.sides_agree {
                        "renamed certificate differs from the direct clearing".into()
                    } else {
                        first_difference(&rep.certificate.lhs, &rep.certificate.rhs, &t).unwrap_or_default()
                    })
                })
            };
            (label, verdict)
        }
        _ => {
            let spec = common.spec()?;
            let report = match check {
                Check::Reciprocity => {
                    let c = verify_reciprocity(&spec, kind(modified), &mut t, &limits)?;
                    match c.verdict() {
                        Verdict::Vacuous => Report { verdict: Verdict::Vacuous, counterexample: None },
                        v => Report::from_check(v == Verdict::Pass, || first_difference(&c.lhs, &c.rhs, &t)),
                    }
                }
                Check::Relation => Report::from_check(relation_check(&spec, &mut t, &limits)?, || {
                    Some("numerators or denominators differ".into())
                }),
                Check::ZetaMobius => zeta_mobius(&spec, &limits)?,
                Check::MobiusChains => mobius_chains(&spec, &limits)?,
                Check::OrderComplex => {
                    let rep = verify_order_complex(&spec, &mut t, &limits)?;
                    Report::from_check(rep.passed(), || {
                        rep.failures.first().map(|s| {
                            let names: Vec<String> = s.iter().map(|e| e.render()).collect();
                            format!("S = {{{}}} ({} failing subsets)", names.join(", "), rep.failures.len())
                        })
                    })
                }
                Check::DualExpansion => {
                    let a = expand_multichain(&spec, kind(modified), max_degree, &mut t, &limits)?;
                    let b = expand_rational(&series(&spec, modified, &mut t, &limits)?, max_degree);
                    let diff = a.first_difference(&b);
                    Report::from_check(diff.is_none(), || {
                        diff.map(|m| format!("coefficient of {}", hlskit::exactalg::text::render_monomial(&m, &t)))
                    })
                }
                Check::Igusa => unreachable!("handled above"),
            };
            (spec, report)
        }
    };
    let name = check_name(check, modified);
    let code = if report.verdict == Verdict::Fail { EXIT_FAILED } else { 0 };
    let out = if common.format == Format::Json {
        let mut v = json!({
            "check": name,
            "spec": spec_json(&label),
            "pass": match report.verdict {
                Verdict::Pass => json!(true),
                Verdict::Fail => json!(false),
                Verdict::Vacuous => Value::Null,
            },
            "verdict": report.verdict,
        });
        if let Some(c) = &report.counterexample {
            v["counterexample"] = json!(c);
        }
        pretty(&with_millis(v, start, common))
    } else {
        let word = match report.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "vacuous",
        };
        let mut out = format!("{name} {label}: {word}\n");
        if let Some(c) = &report.counterexample {
            out += &format!("counterexample: {c}\n");
        }
        out
    };
    Ok(Outcome { out, code })
}

fn check_name(check: Check, modified: bool) -> String {
    let base = match check {
        Check::Reciprocity => "reciprocity",
        Check::Relation => "relation",
        Check::ZetaMobius => "zeta-mobius",
        Check::MobiusChains => "mobius-chains",
        Check::OrderComplex => "order-complex",
        Check::Igusa => "igusa",
        Check::DualExpansion => "dual-expansion",
    };
    match (check, modified) {
        (Check::Reciprocity | Check::DualExpansion, true) => format!("{base}-modified"),
        _ => base.to_string(),
    }
}
