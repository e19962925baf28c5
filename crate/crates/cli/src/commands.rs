use crate::{Cli, Command, Global};
use iwk_core::hecke::{frob_charpoly_at_p, sym_transfer, OrdinaryFrobData};
use iwk_core::linalg::Matrix;
use iwk_core::linv::{admissible_direction, compare_check, greenberg_profile, i_k_ideal, parse_d_vector, LogJacobian};
use iwk_core::module_theory::{
    char_mod_s_check, congruence_decomposition_check, congruence_ideal, cubic_chain, kahler_fitting_ideal,
    FiniteFlatAlgebra, Presentation,
};
use iwk_core::poly::{parse_poly_literal, parse_rational};
use iwk_core::sl2::{decomposition_check, m_coeff, m_determinants, MCoeffTable};
use iwk_core::{base_change_adams, run_all, Error, IwasawaSeries, PadicContext, PadicNumber, RatPoly, ZpPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use std::path::Path;

pub enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(format!("Parse: {m}")),
            e => Failure::Math(e),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Ordered `key=value` fields; the JSON form carries the same keys.
pub struct Output {
    pub pass: bool,
    fields: Vec<(String, Value)>,
    /// Text form prints the single field's value alone.
    bare: bool,
    /// Verbatim text lines placed before the fields (report and table dumps).
    lines: Vec<String>,
}

impl Output {
    fn new() -> Self {
        Output { pass: true, fields: Vec::new(), bare: false, lines: Vec::new() }
    }

    fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    fn check(self, key: &str, ok: bool) -> Self {
        let mut s = self.field(key, ok);
        s.pass &= ok;
        s
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut m = Map::new();
            if !self.lines.is_empty() {
                m.insert("lines".into(), Value::from(self.lines.clone()));
            }
            for (k, v) in &self.fields {
                m.insert(k.clone(), v.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
            s.push('\n');
            return s;
        }
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        for (k, v) in &self.fields {
            let text = match v {
                Value::String(x) => x.clone(),
                Value::Array(xs) => xs.iter().map(plain).collect::<Vec<_>>().join(","),
                other => plain(other),
            };
            if self.bare {
                s.push_str(&text);
            } else {
                s.push_str(&format!("{k}={text}"));
            }
            s.push('\n');
        }
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn rational(s: &str) -> Res<BigRational> {
    Ok(parse_rational(s)?)
}

fn rationals(xs: &[String]) -> Res<Vec<BigRational>> {
    xs.iter().map(|x| rational(x)).collect()
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn context(g: &Global) -> Res<PadicContext> {
    PadicContext::new(g.p, g.precision).map_err(|e| Failure::Usage(format!("{}: {e}", e.name())))
}

pub fn run(cli: &Cli) -> Res<Output> {
    let g = &cli.global;
    if g.truncation == 0 {
        return Err(Failure::Usage("--truncation must be at least 1".into()));
    }
    context(g)?;
    match &cli.command {
        Command::Mcoeff { m, k, i } => mcoeff(*m, *k, *i),
        Command::Symtransfer { alpha, beta, n, norm } => {
            let h = sym_transfer(&rational(alpha)?, &rational(beta)?, *n, &BigInt::from(*norm))?;
            Ok(Output::new().field("T", strs(&h.t)).field("poly", h.to_poly().to_string()))
        }
        Command::Adams { poly, poly_file, f } => {
            let p = match (poly, poly_file) {
                (Some(lit), _) => RatPoly::new(parse_poly_literal(lit)?),
                (None, Some(path)) => RatPoly::from_text(&read(path)?)?,
                (None, None) => return Err(Failure::Usage("need --poly or --poly-file".into())),
            };
            let mut out = Output::new().field("poly", base_change_adams(&p, *f)?.to_string());
            out.bare = true;
            Ok(out)
        }
        Command::Frobpoly { u, lambda, norm, varpi, normalized } => {
            let u = rationals(u)?;
            let norm = BigInt::from(*norm);
            let varpi = rational(varpi)?;
            let d = if *normalized {
                OrdinaryFrobData::normalized(&u, lambda, &norm, &varpi)?
            } else {
                OrdinaryFrobData { u, lambda: lambda.clone(), norm, varpi }
            };
            let roots = d.roots()?;
            Ok(Output::new()
                .field("poly", frob_charpoly_at_p(&d)?.to_string())
                .field("roots", strs(&roots))
                .field("u_telescope", d.u_telescope().to_string()))
        }
        Command::Weierstrass { series, file } => weierstrass(g, series.as_deref(), file.as_deref()),
        Command::Fitting { file, i } => {
            let pres = Presentation::from_text(&read(file)?)?;
            let mut out = Output::new().field("ring", pres.ring_tag().as_str());
            let range = match i {
                Some(i) => *i..=*i,
                None => 0..=pres.rows(),
            };
            for i in range {
                out = out.field(&format!("F{i}"), pres.fitting_ideal(i).to_string());
            }
            Ok(out)
        }
        Command::Charideal { file, mod_s } => {
            let pres = Presentation::from_text(&read(file)?)?;
            let mut out = Output::new().field("char", pres.char_ideal()?.to_string());
            if *mod_s {
                out = out.check("char_mod_S", char_mod_s_check(&pres)?);
            }
            Ok(out)
        }
        Command::Congruence { roots, poly, root } => congruence(g, roots, poly.as_deref(), root.as_deref()),
        Command::Linv { file, direction } => linv(file, direction),
        Command::Ikideal { file, k } => ikideal(g, file, *k),
        Command::Compare { d, file } => {
            let d = match file {
                Some(path) => parse_d_vector(&read(path)?)?,
                None => rationals(d)?,
            };
            if d.is_empty() {
                return Err(Failure::Usage("need --d or --file".into()));
            }
            let c = compare_check(&d)?;
            Ok(Output::new()
                .field("n", d.len())
                .field("greenberg", strs(&c.greenberg))
                .field("product", c.product.to_string())
                .field("det_L", c.det_l.to_string())
                .field("det_F_prime", c.det_f_prime.to_string())
                .check("holds", c.holds)
                .check("intermediate_holds", c.intermediate_holds))
        }
        Command::Decomp { n, samples } => {
            let ok = decomposition_check(*n, *samples, g.seed)?;
            let d = m_determinants(*n)?;
            Ok(Output::new()
                .field("n", *n)
                .field("samples", *samples)
                .check("characters", ok)
                .field("det_M", d.det_m.to_string())
                .field("det_M_prime", d.det_m_prime.to_string())
                .check("det_relation", d.relation_holds))
        }
        Command::Suite => {
            let report = run_all(g.seed)?;
            let mut out = Output::new();
            out.lines = report.render().lines().map(str::to_string).collect();
            let verdict = if report.all_pass() { "ALL PASS".to_string() } else { format!("FAIL {}", report.failures()) };
            out.pass = report.all_pass();
            out.bare = true;
            Ok(out.field("result", verdict))
        }
    }
}

fn mcoeff(m: usize, k: Option<usize>, i: Option<usize>) -> Res<Output> {
    if let (Some(k), Some(i)) = (k, i) {
        let v = m_coeff(m, k, i)?;
        return Ok(Output::new().field("m", m).field("k", k).field("i", i).field("value", v.to_string()));
    }
    let t = MCoeffTable::new(m);
    let mut out = Output::new();
    out.lines = t.dump().lines().map(str::to_string).collect();
    Ok(out)
}

fn weierstrass(g: &Global, series: Option<&str>, file: Option<&Path>) -> Res<Output> {
    let f = match (series, file) {
        (Some(lit), _) => {
            let ctx = context(g)?;
            let c = parse_poly_literal(lit)?;
            if c.len() > g.truncation {
                return Err(Error::TruncationTooSmall { have: g.truncation, need: c.len() }.into());
            }
            IwasawaSeries::from_poly(&ZpPoly::from_rationals(&ctx, &c)?, g.truncation)
        }
        (None, Some(path)) => IwasawaSeries::from_text(&read(path)?)?,
        (None, None) => return Err(Failure::Usage("need --series or --file".into())),
    };
    let w = f.weierstrass_prepare()?;
    let round_trip = w.reconstruct() == f;
    Ok(Output::new()
        .field("mu", w.mu)
        .field("lambda", w.lambda())
        .field("P", w.poly.to_string())
        .field("U", w.unit.to_poly().to_string())
        .check("round_trip", round_trip))
}

fn congruence(g: &Global, roots: &[String], poly: Option<&str>, root: Option<&str>) -> Res<Output> {
    let ctx = context(g)?;
    let (alg, f, a) = match (poly, root) {
        (Some(lit), Some(r)) => {
            let f = RatPoly::new(parse_poly_literal(lit)?);
            let a = rational(r)?;
            (FiniteFlatAlgebra::monogenic(g.p, &f, &a)?, f, a)
        }
        _ => {
            let rs = rationals(roots)?;
            if rs.is_empty() {
                return Err(Failure::Usage("need --roots or --poly with --root".into()));
            }
            (FiniteFlatAlgebra::from_roots(g.p, &rs)?, RatPoly::from_roots(&rs), rs[0].clone())
        }
    };
    let c = congruence_ideal(&alg)?;
    let tate = kahler_fitting_ideal(&f, &a, &ctx)?;
    let mut out = Output::new()
        .field("rank", alg.rank())
        .field("c_phi", c.to_string())
        .field("kahler_fitting", tate.to_string())
        .check("tate", c == tate);
    if poly.is_none() && roots.len() == 3 {
        let rs = rationals(roots)?;
        let (r, s, alpha) = cubic_chain(g.p, &rs[0], &rs[1], &rs[2])?;
        let d = congruence_decomposition_check(&r, &s, &alpha)?;
        let v = |x: Option<i64>| x.map_or(Value::Null, Value::from);
        out = out
            .field("c_lambda", v(d.c_lambda))
            .field("c_beta", v(d.c_beta))
            .field("beta_c_alpha", v(d.beta_c_alpha))
            .check("decomposition", d.holds);
    }
    Ok(out)
}

fn linv(file: &Path, direction: &[String]) -> Res<Output> {
    let jac = LogJacobian::from_text(&read(file)?)?;
    let n = jac.n;
    let table = MCoeffTable::new(n);
    let y = if direction.is_empty() { admissible_direction(&table) } else { rationals(direction)? };
    let l = jac.l_matrix()?;
    let rows: Vec<Value> = (0..n).map(|i| Value::from(strs(l.matrix.row(i)).join(" "))).collect();
    let mut gr = Vec::with_capacity(n);
    for j in 1..=n {
        let prof = greenberg_profile(j, &table, &jac, std::slice::from_ref(&y))?;
        match prof.values[0].as_ref() {
            Some(v) => gr.push(Value::from(v.to_string())),
            None => return Err(Error::DegenerateDirection.into()),
        }
    }
    Ok(Output::new()
        .field("n", n)
        .field("constrained", jac.is_constrained())
        .field("L", rows)
        .field("det_L", l.det.to_string())
        .field("direction", strs(&y))
        .field("greenberg", gr))
}

fn ikideal(g: &Global, file: &Path, k: u32) -> Res<Output> {
    let ctx = context(g)?;
    let text = read(file)?;
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Failure::Usage("matrix file must start with its size n".into()))?;
    let vals = tokens.map(|t| rational(t)).collect::<Res<Vec<_>>>()?;
    if vals.len() != n * n {
        return Err(Failure::Usage(format!("expected {} entries, found {}", n * n, vals.len())));
    }
    let m = Matrix::new(n, n, vals.iter().map(|x| PadicNumber::from_rational(&ctx, x)).collect())?;
    let ideal = i_k_ideal(&m, &ctx, k)?;
    let gens: Vec<String> = ideal.generators().iter().map(|p| p.to_string()).collect();
    let expansion: Vec<String> =
        ideal.expansion_generators.iter().map(|p| ideal.layer().reduce(p)).filter(|p| !p.is_zero()).map(|p| p.to_string()).collect();
    let mut out = Output::new()
        .field("k", k)
        .field("generators", Value::from(gens))
        .field("expansion_generators", Value::from(expansion))
        .check("routes_agree", ideal.routes_agree(&ctx));
    if k == 0 {
        out.fields.push(("det_L".into(), json!(iwk_core::linalg::q_det(&Matrix::new(n, n, vals)?)?.to_string())));
    }
    Ok(out)
}
