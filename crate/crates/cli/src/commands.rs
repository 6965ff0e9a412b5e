use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rug::Rational;
use serde::Serialize;
use serde_json::{json, Value};
use strebel::belyi::{self, RationalMap};
use strebel::exactnum::parse_rational;
use strebel::periods::{self, NumDiff, SolveOptions, TraceOptions};
use strebel::qdiff::{self, QuadDiff, StrebelParams};
use strebel::ribbon::{self, perm, EnumerateOptions, GraphJson, RibbonGraph};
use strebel::verify::{self, Check, Suite};
use strebel::{Error, ExactRatFunc};

use crate::config::{complex, gauss, json_arg, list, Failure, Format, Outcome, RunConfig};
use crate::FamilyArgs;

/// What a command produced: a JSON value, its text rendering, an optional plot and
/// whether a verification passed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub svg: Option<String>,
    pub passed: Option<bool>,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, text, svg: None, passed: None }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialise"),
            Format::Svg => self.svg.clone().unwrap_or_else(|| self.text.clone()),
            Format::Text => self.text.clone(),
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }

    pub fn exit_code(&self) -> u8 {
        match self.passed {
            Some(false) => 1,
            _ => 0,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialise")
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn show(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn exact_family(f: &FamilyArgs) -> Outcome<QuadDiff> {
    let params = StrebelParams::new(gauss(&f.lambda)?, gauss(&f.mu)?)?;
    Ok(qdiff::family(&params)?)
}

fn rational(s: &str) -> Outcome<Rational> {
    parse_rational(s).map_err(|e| Failure::Usage(format!("`{s}`: {e}")))
}

fn exact_map(arg: &str) -> Outcome<ExactRatFunc> {
    if let Some(text) = json_arg(arg)? {
        return serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("map JSON: {e}")));
    }
    let map = belyi::catalog(arg)?;
    map.as_exact().cloned().ok_or_else(|| Failure::Usage(format!("catalog map {arg} is not exact")))
}

fn differential(arg: &str) -> Outcome<QuadDiff> {
    if let Some(text) = json_arg(arg)? {
        return serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("differential JSON: {e}")));
    }
    Ok(belyi::catalog_differential(arg)?)
}

pub fn classify(cfg: &RunConfig, f: &FamilyArgs) -> Outcome<Report> {
    let q = exact_family(f)?;
    let class = qdiff::classify_numerator(q.r().num(), cfg.precision)?;
    let zeros: Vec<Value> =
        class.zeros().iter().map(|(z, m)| json!({ "value": z.to_string(), "multiplicity": m })).collect();
    let mut text = format!("{}\nR = {}\n", class.tag(), q.r());
    for (z, m) in class.zeros() {
        let shown = z.exact().map_or_else(|| show(z.to_complex64()), ToString::to_string);
        let _ = writeln!(text, "  zero {shown} (multiplicity {m})");
    }
    Ok(Report::new(json!({ "differential": to_json(&q), "class": class.tag(), "zeros": zeros }), text))
}

pub fn mu_of_lambda(lambda: &str) -> Outcome<Report> {
    let l = rational(lambda)?;
    let mu = qdiff::mu_double_zero(&l)?;
    Ok(Report::new(json!({ "lambda": l.to_string(), "mu": mu.to_string() }), mu.to_string()))
}

pub fn divisor(f: &FamilyArgs) -> Outcome<Report> {
    let d = qdiff::divisor_of(&exact_family(f)?)?;
    let mut text = format!("D = {d}\n");
    for e in d.poles.iter().chain(&d.zeros) {
        let _ = writeln!(text, "  {}: weight {}, angle {} pi", e.location, e.weight, e.angle_over_pi);
    }
    Ok(Report::new(to_json(&d), text))
}

pub fn pullback(map: &str, diff: &str) -> Outcome<Report> {
    let q = qdiff::pullback(&exact_map(map)?, &differential(diff)?);
    Ok(Report::new(to_json(&q), format!("R = {}", q.r())))
}

pub fn passport(cfg: &RunConfig, map: &str) -> Outcome<Report> {
    let f = RationalMap::exact(exact_map(map)?)?;
    let r = belyi::passport(&f, cfg.precision)?;
    let text = format!(
        "degree {}, passport {} (over 0 / 1 / inf), {}",
        r.degree,
        r.passport,
        if r.is_belyi { "Belyi".to_string() } else { format!("ramified elsewhere ({})", r.ramification_elsewhere) }
    );
    Ok(Report::new(to_json(&r), text))
}

pub fn min_degree(a: &str, b: &str, c: &str) -> Outcome<Report> {
    let r = belyi::min_degree(&rational(a)?, &rational(b)?, &rational(c)?)?;
    Ok(Report::new(to_json(&r), r.min_degree.to_string()))
}

fn checks_report(checks: Vec<Check>) -> Report {
    let passed = checks.iter().all(|c| c.passed);
    let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
    let ok = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(text, "{ok} of {} checks passed", checks.len());
    Report { json: json!({ "passed": passed, "checks": to_json(&checks) }), text, svg: None, passed: Some(passed) }
}

pub fn verify(ids: &[u8]) -> Outcome<Report> {
    let checks = ids.iter().map(|&id| verify::run(id)).collect::<strebel::Result<Vec<_>>>()?;
    Ok(checks_report(checks))
}

pub fn reproduce(suite: &str) -> Outcome<Report> {
    let suite = Suite::from_str(suite).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(checks_report(verify::run_suite(suite)))
}

pub fn example43(cfg: &RunConfig) -> Outcome<Report> {
    let roots = belyi::example43_solve(cfg.precision)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for r in &roots {
        let _ = writeln!(
            text,
            "t{}: a5 = {}, passport {}, |g(1) - g(a5)| = {:.1e}",
            r.index,
            show(r.a5.to_complex64()),
            r.passport,
            r.value_gap
        );
        for n in &r.normalizations {
            let _ = writeln!(text, "    lambda = {}, mu = {}", show(n.lambda), show(n.mu));
        }
        out.push(json!({
            "index": r.index,
            "a5": to_json(&r.a5),
            "passport": to_json(&r.passport),
            "value_gap": r.value_gap,
            "derivative_residual": r.derivative_residual,
            "normalizations": to_json(&r.normalizations),
        }));
    }
    let check = verify::run(13)?;
    let _ = writeln!(text, "{check}");
    Ok(Report { json: json!({ "roots": out, "check": to_json(&check) }), text, svg: None, passed: Some(check.passed) })
}

pub fn enumerate(degrees: &str, genus: usize, faces: usize, loopless: bool, feasible: Option<&str>) -> Outcome<Report> {
    let degrees: Vec<usize> = list(degrees)?;
    let residues = feasible.map(|s| s.split(',').map(rational).collect::<Outcome<Vec<_>>>()).transpose()?;
    let graphs = ribbon::enumerate(&degrees, &EnumerateOptions { genus, faces, loopless })?;
    let mut text = format!("{} classes\n", graphs.len());
    let mut out = Vec::new();
    for (k, g) in graphs.iter().enumerate() {
        let mut entry = json!({ "graph": to_json(&g.to_json()), "has_loop": g.has_loop() });
        let _ = write!(text, "{k}: {g}");
        if let Some(r) = &residues {
            let f = ribbon::metric_feasible(g, r)?;
            entry["feasibility"] = to_json(&f.status);
            let _ = write!(text, ", {:?}", f.status);
        }
        text.push('\n');
        out.push(entry);
    }
    Ok(Report::new(json!({ "count": graphs.len(), "graphs": out }), text))
}

pub fn aut(graph: &str, labels: Option<&str>) -> Outcome<Report> {
    let text_in = json_arg(graph)?.ok_or_else(|| Failure::Usage(format!("{graph} is neither JSON nor a file")))?;
    let j: GraphJson = serde_json::from_str(&text_in).map_err(|e| Failure::Usage(format!("graph JSON: {e}")))?;
    let g = RibbonGraph::from_json(&j)?;
    let r = ribbon::automorphisms(&g);
    let mut text = format!("{g}\norder {}, face-fixing {}", r.order, r.face_fixing_order);
    if let Some(l) = r.length_preserving_order {
        let _ = write!(text, ", length-preserving {l}");
    }
    let mut out = json!({ "automorphisms": to_json(&r) });
    if let Some(labels) = labels {
        let labels: Vec<usize> = list(labels)?;
        if labels.len() != g.edge_count() {
            return Err(Failure::Usage(format!("{} labels for {} edges", labels.len(), g.edge_count())));
        }
        let a = ribbon::label_action(&g, &labels);
        let _ = write!(text, "\nlabel action order {} (kernel {})", a.order(), a.kernel);
        out["label_action"] = to_json(&a);
    }
    Ok(Report::new(out, text))
}

pub fn dessin(a: &str, b: &str, c: &str) -> Outcome<Report> {
    let m = ribbon::dessin_from_metric(&rational(a)?, &rational(b)?, &rational(c)?)?;
    let d = &m.dessin;
    let (black, white) = (perm::cycles(d.sigma0()), perm::cycles(d.sigma1()));
    let text = format!(
        "degree {} (minimal {}), genus {}, passport {}\nblack {:?}\nwhite {:?}",
        d.degree(),
        m.min_degree.min_degree,
        d.genus(),
        d.passport(),
        black,
        white
    );
    let out = json!({
        "degree": d.degree(),
        "min_degree": to_json(&m.min_degree),
        "genus": d.genus(),
        "passport": to_json(&d.passport()),
        "black": black,
        "white": white,
    });
    Ok(Report::new(out, text))
}

fn numeric_family(cfg: &RunConfig, f: &FamilyArgs) -> Outcome<(Complex64, Complex64, NumDiff)> {
    let (lambda, mu) = (complex(&f.lambda)?, complex(&f.mu)?);
    Ok((lambda, mu, NumDiff::family(lambda, mu, cfg.precision)?))
}

pub fn periods(cfg: &RunConfig, f: &FamilyArgs) -> Outcome<Report> {
    let (_, _, q) = numeric_family(cfg, f)?;
    let mut r = periods::periods(&q, (cfg.tolerance * 1e-2).max(1e-14))?;
    // Edge lengths only exist for Strebel members with four simple zeros.
    let _ = r.attach_edge_lengths(&q, cfg.tolerance);
    let mut text = String::new();
    for p in &r.periods {
        let _ = writeln!(text, "P{:?} = {}", p.pair, show(p.value()));
    }
    let _ = write!(text, "residual {:.3e}", r.residual);
    if let Some(l) = r.edge_lengths {
        let _ = write!(text, "\nedge lengths {:.10} {:.10} {:.10}", l[0], l[1], l[2]);
    }
    Ok(Report::new(to_json(&r), text))
}

pub fn find_mu(cfg: &RunConfig, lambda: &str) -> Outcome<Report> {
    let l = complex(lambda)?;
    let opts = SolveOptions { tol: cfg.tolerance, prec: cfg.precision, ..SolveOptions::default() };
    let mu = periods::find_mu(l, &opts)?;
    let residual = periods::strebel_residual(l, mu, cfg.precision)?;
    let text = format!("mu = {}\nresidual {residual:.3e}", show(mu));
    Ok(Report::new(json!({ "lambda": pair(l), "mu": pair(mu), "residual": residual }), text))
}

pub fn edge_lengths(cfg: &RunConfig, f: &FamilyArgs, max_residual: f64) -> Outcome<Report> {
    let (lambda, given) = (complex(&f.lambda)?, complex(&f.mu)?);
    let residual = periods::strebel_residual(lambda, given, cfg.precision)?;
    if residual >= max_residual {
        return Err(Error::Domain(format!("not Strebel: residual {residual:.3e} >= {max_residual:.1e}")).into());
    }
    // Critical trajectories only join up at an accurate mu, so a rounded one is polished first.
    let opts = SolveOptions { tol: cfg.tolerance, prec: cfg.precision, ..SolveOptions::default() };
    let mu = if residual > cfg.tolerance { periods::find_mu_from(lambda, given, &opts)? } else { given };
    let l = periods::edge_lengths(lambda, mu, cfg.tolerance.max(1e-9), cfg.precision)?;
    let mut text = format!("{:.10} {:.10} {:.10}\nsum {:.10}", l[0], l[1], l[2], l.iter().sum::<f64>());
    if mu != given {
        let _ = write!(text, "\nmu polished to {} (given residual {residual:.1e})", show(mu));
    }
    let out = json!({ "lambda": pair(lambda), "mu": pair(mu), "given_residual": residual, "lengths": l });
    Ok(Report::new(out, text))
}

pub fn trace(
    cfg: &RunConfig,
    map: Option<&str>,
    lambda: Option<&str>,
    mu: Option<&str>,
    start: &str,
    svg: Option<&Path>,
) -> Outcome<Report> {
    let q = match (map, lambda, mu) {
        (Some(name), None, None) => NumDiff::from_quad(&belyi::catalog_differential(name)?, cfg.precision)?,
        (None, Some(l), Some(m)) => numeric_family(cfg, &FamilyArgs { lambda: l.into(), mu: m.into() })?.2,
        _ => return Err(Failure::Usage("give either --map or both --lambda and --mu".into())),
    };
    let z0 = complex(start)?;
    let t = periods::trace_trajectory(&q, z0, &TraceOptions::default())?;
    let plot = t.to_svg(&q);
    if let Some(path) = svg {
        fs::write(path, &plot).map_err(|e| Failure::Core(Error::Domain(format!("writing {}: {e}", path.display()))))?;
    }
    let text = format!(
        "{} trajectory through {}, q-length {:.12}, {} points, ends {:?}",
        if t.closed { "closed" } else { "critical" },
        show(z0),
        t.arc_length,
        t.points.len(),
        t.ends
    );
    let out = json!({
        "start": pair(z0),
        "closed": t.closed,
        "arc_length": t.arc_length,
        "ends": to_json(&t.ends),
        "horizontal_defect": t.horizontal_defect,
        "points": t.points.len(),
    });
    Ok(Report { json: out, text, svg: Some(plot), passed: None })
}
