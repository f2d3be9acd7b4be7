//! The five commands: `ring`, `classical`, `gromov`, `critical-points`, `verify`.

use std::time::Instant;

use serde_json::{json, Map, Value};

use qschubert_core::critical::{CriticalLocus, PointValue, DEFAULT_PRECISION_BITS};
use qschubert_core::invariants::{
    degree_shift_check, euler_hessian_check, euler_integral_check, genus_induction_check,
    gradient_vanishing_sum, ideal_vanishing_check, is_conjectural, required_degree, Evaluator,
};
use qschubert_core::parser::render_poly;
use qschubert_core::schur::classical_integral_schur;
use qschubert_core::{Backend, Error, GrassmannSpec, Monomial, Rational, WeightedPoly};

use crate::cache;
use crate::error::CliError;
use crate::report::{elapsed_ms, rational_json, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Prop31,
    Prop33,
    Cor32,
    Thm21,
    Vanishing,
    Shift,
    Backends,
}

fn spec_fields(spec: &GrassmannSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("r".into(), json!(spec.r()));
    m.insert("k".into(), json!(spec.k()));
    m
}

fn render_all(ps: &[WeightedPoly]) -> Vec<String> {
    ps.iter().map(render_poly).collect()
}

/// One JSON object for a single expression, an array for a batch.
fn collect(items: Vec<Value>, batch: bool) -> Value {
    match (batch, items.len()) {
        (false, 1) => items.into_iter().next().unwrap(),
        _ => Value::Array(items),
    }
}

pub fn ring(spec: GrassmannSpec) -> Result<Report, CliError> {
    let start = Instant::now();
    let pres = cache::presentation(spec)?;
    let mut m = spec_fields(&spec);
    m.insert("dimension".into(), json!(spec.dimension()));
    m.insert("critical_count".into(), json!(spec.critical_count()));
    m.insert(
        "ideal_generators".into(),
        json!(render_all(pres.ideal_generators())),
    );
    m.insert("potential".into(), json!(render_poly(pres.potential())));
    m.insert(
        "perturbed_potential".into(),
        json!(render_poly(pres.perturbed_potential())),
    );
    m.insert("gradient".into(), json!(render_all(pres.gradient())));
    m.insert("hessian".into(), json!(render_poly(pres.hessian())));
    m.insert("euler".into(), json!(render_poly(pres.euler())));
    m.insert(
        "poincare".into(),
        json!(pres.poincare().display_with("t").to_string()),
    );
    m.insert("elapsed_ms".into(), elapsed_ms(start.elapsed()));
    Ok(Report::ok(Value::Object(m)))
}

/// Classical integral by the Schur oracle and the residue formula.
pub fn classical(
    spec: GrassmannSpec,
    backend: Backend,
    polys: &[(String, WeightedPoly)],
    batch: bool,
) -> Result<Report, CliError> {
    let ev = cache::evaluator(spec, backend)?;
    let mut ok = true;
    let mut items = Vec::new();
    for (src, p) in polys {
        let start = Instant::now();
        let schur = classical_integral_schur(p, &spec)?;
        let residue = ev.classical_integral(p)?;
        let agree = schur == residue;
        ok &= agree;
        let mut m = spec_fields(&spec);
        m.insert("polynomial".into(), json!(src));
        m.insert("value".into(), rational_json(&schur));
        m.insert("schur".into(), rational_json(&schur));
        m.insert("residue".into(), rational_json(&residue));
        m.insert("agree".into(), json!(agree));
        m.insert("backend".into(), json!(backend.name()));
        m.insert("elapsed_ms".into(), elapsed_ms(start.elapsed()));
        items.push(Value::Object(m));
    }
    Ok(Report {
        value: collect(items, batch),
        ok,
    })
}

pub fn gromov(
    spec: GrassmannSpec,
    backend: Backend,
    genus: u32,
    degree: i64,
    polys: &[(String, WeightedPoly)],
    batch: bool,
) -> Result<Report, CliError> {
    let ev = cache::evaluator(spec, backend)?;
    let mut items = Vec::new();
    for (src, p) in polys {
        let start = Instant::now();
        let res = ev.gromov(genus, degree, p)?;
        let mut m = spec_fields(&spec);
        m.insert("d".into(), json!(degree));
        m.insert("genus".into(), json!(genus));
        m.insert("polynomial".into(), json!(src));
        m.insert("value".into(), rational_json(&res.value));
        m.insert("conjectural".into(), json!(res.conjectural));
        m.insert("backend".into(), json!(backend.name()));
        m.insert("points".into(), json!(res.points));
        m.insert("elapsed_ms".into(), elapsed_ms(start.elapsed()));
        items.push(Value::Object(m));
    }
    Ok(Report::ok(collect(items, batch)))
}

/// Critical points with their `Xi` values, exact and numeric.
pub fn critical_points(spec: GrassmannSpec, precision_bits: usize) -> Result<Report, CliError> {
    let start = Instant::now();
    let exact = CriticalLocus::new(spec, Backend::Exact)?;
    let float = CriticalLocus::new(spec, Backend::Float { precision_bits })?;
    let points: Vec<Value> = exact
        .points()
        .iter()
        .enumerate()
        .map(|(idx, pt)| {
            let xs: Vec<Value> = exact
                .eval_x(idx)
                .iter()
                .zip(float.eval_x(idx))
                .enumerate()
                .map(|(i, (e, f))| {
                    json!({
                        "variable": format!("X{}", i + 1),
                        "exact": e.to_display_string(),
                        "float": f.to_display_string(),
                    })
                })
                .collect();
            json!({ "roots": pt.root_indices(), "x": xs })
        })
        .collect();
    let mut m = spec_fields(&spec);
    m.insert("count".into(), json!(points.len()));
    m.insert(
        "roots".into(),
        json!(format!(
            "q_j = exp(i*pi*(2j+1)/{}), z = exp(i*pi/{})",
            spec.k(),
            spec.k()
        )),
    );
    m.insert("precision_bits".into(), json!(precision_bits));
    m.insert("points".into(), Value::Array(points));
    m.insert("elapsed_ms".into(), elapsed_ms(start.elapsed()));
    Ok(Report::ok(Value::Object(m)))
}

struct Checks {
    items: Vec<Value>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            items: Vec::new(),
            ok: true,
        }
    }

    fn push(&mut self, name: String, pass: bool, mut fields: Map<String, Value>) {
        self.ok &= pass;
        let mut m = Map::new();
        m.insert("check".into(), json!(name));
        m.insert("pass".into(), json!(pass));
        m.append(&mut fields);
        self.items.push(Value::Object(m));
    }
}

fn fields<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn monomial(nvars: usize, m: Monomial) -> WeightedPoly {
    WeightedPoly::monomial(nvars, m, Rational::from_integer(1.into()))
}

fn minimal_degree(spec: &GrassmannSpec, genus: u32) -> i64 {
    (0..)
        .find(|&d| required_degree(spec, d, genus) >= 0)
        .expect("degree exists")
}

fn monomials_for(spec: &GrassmannSpec, degree: i64, genus: u32) -> Vec<WeightedPoly> {
    let w = required_degree(spec, degree, genus) as u64;
    Monomial::all_of_degree(spec.r(), w)
        .into_iter()
        .map(|m| monomial(spec.r(), m))
        .collect()
}

pub fn verify(spec: GrassmannSpec, backend: Backend, suite: Suite) -> Result<Report, CliError> {
    let start = Instant::now();
    if suite == Suite::Shift && spec.r() != 2 {
        return Err(Error::Unsupported(format!(
            "the degree-shift suite is only defined for r = 2 (got r = {}); for odd r it is an \
             open question, since X_r^k = (-1)^r at every critical point",
            spec.r()
        ))
        .into());
    }
    let pres = cache::presentation(spec)?;
    let ev = cache::evaluator(spec, backend)?;
    let mut checks = Checks::new();
    let mut summary = None;
    match suite {
        Suite::Prop31 => {
            for p in monomials_for(&spec, 0, 0) {
                let residue = ev.classical_integral(&p)?;
                let schur = classical_integral_schur(&p, &spec)?;
                checks.push(
                    render_poly(&p),
                    residue == schur,
                    fields([
                        ("residue", rational_json(&residue)),
                        ("schur", rational_json(&schur)),
                    ]),
                );
            }
            let vol = WeightedPoly::variable(spec.r(), spec.r())?.pow((spec.k() - spec.r()) as u32);
            let v = ev.classical_integral(&vol)?;
            checks.push(
                format!("volume form {}", render_poly(&vol)),
                v == Rational::from_integer(1.into()),
                fields([("value", rational_json(&v))]),
            );
        }
        Suite::Prop33 => {
            let rep = euler_hessian_check(&pres, &ev)?;
            for c in &rep.points {
                checks.push(
                    c.point.to_string(),
                    c.equal,
                    fields([
                        ("euler", json!(c.euler.to_display_string())),
                        (
                            "signed_hessian",
                            json!(c.signed_hessian.to_display_string()),
                        ),
                    ]),
                );
            }
        }
        Suite::Cor32 => {
            let rep = euler_integral_check(&pres, &ev)?;
            summary = Some(json!(rep.expected));
            checks.push(
                "signed hessian integral = binomial(k,r) = euler integral".into(),
                rep.holds,
                fields([
                    ("expected", json!(rep.expected)),
                    ("residue_euler", rational_json(&rep.residue_euler)),
                    ("schur_euler", rational_json(&rep.schur_euler)),
                    (
                        "schur_signed_hessian",
                        rational_json(&rep.schur_signed_hessian),
                    ),
                ]),
            );
        }
        Suite::Thm21 => {
            for genus in 1..=3 {
                let d = minimal_degree(&spec, genus);
                for p in monomials_for(&spec, d, genus) {
                    let rep = genus_induction_check(&pres, &ev, d, genus, &p)?;
                    checks.push(
                        format!("g={genus} d={d} P={}", render_poly(&p)),
                        rep.holds,
                        fields([
                            ("lhs", rational_json(&rep.lhs)),
                            ("rhs", rational_json(&rep.rhs)),
                        ]),
                    );
                }
            }
        }
        Suite::Vanishing => {
            for m in spec.k() - spec.r() + 1..=spec.k() {
                let complement = spec.dimension() as i64 - m as i64;
                if complement < 0 {
                    continue;
                }
                for n in Monomial::all_of_degree(spec.r(), complement as u64) {
                    let n = monomial(spec.r(), n);
                    let rep = ideal_vanishing_check(&pres, &ev, m, &n)?;
                    checks.push(
                        format!("y_{m} * {}", render_poly(&n)),
                        rep.holds,
                        fields([("value", rational_json(&rep.sum))]),
                    );
                }
            }
            for i in 1..=spec.r() {
                let v = gradient_vanishing_sum(&pres, &ev, i, &WeightedPoly::one(spec.r()))?;
                checks.push(
                    format!("dW/dX{i}"),
                    v == Rational::from_integer(0.into()),
                    fields([("value", rational_json(&v))]),
                );
            }
        }
        Suite::Shift => {
            for genus in 0..=2 {
                let d = minimal_degree(&spec, genus);
                for p in monomials_for(&spec, d, genus) {
                    let rep = degree_shift_check(&ev, d, genus, &p)?;
                    checks.push(
                        format!("g={genus} d={d}->{} P={}", d + 2, render_poly(&p)),
                        rep.holds,
                        fields([
                            ("lhs", rational_json(&rep.lhs)),
                            ("rhs", rational_json(&rep.rhs)),
                        ]),
                    );
                }
            }
        }
        Suite::Backends => {
            let bits = match backend {
                Backend::Float { precision_bits } => precision_bits,
                Backend::Exact => DEFAULT_PRECISION_BITS,
            };
            let exact = cache::evaluator(spec, Backend::Exact)?;
            let float = cache::evaluator(
                spec,
                Backend::Float {
                    precision_bits: bits,
                },
            )?;
            for genus in 0..=2 {
                let d0 = minimal_degree(&spec, genus);
                for d in d0..=d0 + 1 {
                    for p in monomials_for(&spec, d, genus) {
                        let e = exact.gromov(genus, d, &p)?.value;
                        let f = float.gromov(genus, d, &p)?.value;
                        let residual = float_residual(&float, genus, &p);
                        checks.push(
                            format!("g={genus} d={d} P={}", render_poly(&p)),
                            e == f,
                            fields([
                                ("exact", rational_json(&e)),
                                ("float", rational_json(&f)),
                                ("residual", json!(format!("{residual:.1e}"))),
                            ]),
                        );
                    }
                }
            }
        }
    }
    let mut m = spec_fields(&spec);
    m.insert("suite".into(), json!(suite_name(suite)));
    m.insert("backend".into(), json!(backend.name()));
    m.insert("conjectural".into(), json!(is_conjectural(&spec)));
    m.insert("pass".into(), json!(checks.ok));
    if let Some(v) = summary {
        m.insert("value".into(), v);
    }
    m.insert("checks".into(), Value::Array(checks.items));
    m.insert("elapsed_ms".into(), elapsed_ms(start.elapsed()));
    Ok(Report {
        value: Value::Object(m),
        ok: checks.ok,
    })
}

fn float_residual(ev: &Evaluator, genus: u32, p: &WeightedPoly) -> f64 {
    match ev.residue_sum(p, genus as i64 - 1) {
        Ok(PointValue::Float(z)) => {
            let (_, residual, imag) = z.nearest_rational(&p.denominator_lcm());
            residual.max(imag)
        }
        _ => f64::NAN,
    }
}

pub fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Prop31 => "prop31",
        Suite::Prop33 => "prop33",
        Suite::Cor32 => "cor32",
        Suite::Thm21 => "thm21",
        Suite::Vanishing => "vanishing",
        Suite::Shift => "shift",
        Suite::Backends => "backends",
    }
}
