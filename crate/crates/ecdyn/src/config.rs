//! JSON configuration ingestion: field and curve construction, coefficient
//! literal resolution, eager Frobenius/ordinarity/degree validation, and the
//! assembled [`Analysis`] handed to the pipelines.
//!
//! Coefficient literals come in three forms: a plain integer, "g^k" with g
//! the working-field generator, or a vector [c0, c1, ...] of coordinates
//! with respect to powers of the base-field generator γ. The latter makes
//! extension-field configs writable without fixing the working modulus by
//! hand; γ is pinned by `base_gen_minpoly` when given (deterministic
//! smallest root) and defaults to g^((q^n-1)/(q-1)).

use crate::curve::{validate_endo_rep, Curve, EndoMap, ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElem, Poly};
use crate::quadorder::{frobenius_f0, frobenius_rep, QuadInt, QuadOrder};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffLit {
    Int(i64),
    GPower(String),
    BaseVec(Vec<i64>),
}

impl Default for CoeffLit {
    fn default() -> Self {
        CoeffLit::Int(0)
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CurveCoeffs {
    #[serde(default)]
    pub a1: CoeffLit,
    #[serde(default)]
    pub a2: CoeffLit,
    #[serde(default)]
    pub a3: CoeffLit,
    #[serde(default)]
    pub a4: CoeffLit,
    #[serde(default)]
    pub a6: CoeffLit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Alpha2Config {
    pub num: Vec<CoeffLit>,
    pub den: Vec<CoeffLit>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaConfig {
    /// Numerator of α₁, little-endian coefficients.
    pub a: Vec<CoeffLit>,
    /// Denominator of α₁, little-endian coefficients.
    pub b: Vec<CoeffLit>,
    /// Optional y-component rational function.
    #[serde(default)]
    pub alpha2: Option<Alpha2Config>,
    /// [u, v] with α = u + v·ω_d in the endomorphism ring.
    pub quad_rep: [i64; 2],
    /// Squarefree negative d with End(E) = Z[ω_d].
    pub d: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Predict,
    Brute,
    Reconcile,
    Dot,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Characteristic.
    pub p: u64,
    /// Base field degree: q = p^s.
    pub s: u32,
    /// Extension the graph lives over: P¹(F_{q^n}).
    pub n: u32,
    /// Optional working-field modulus of degree s·n (little-endian, monic).
    #[serde(default)]
    pub modulus: Option<Vec<i64>>,
    /// Optional minimal polynomial of the base-field generator γ over F_p.
    #[serde(default)]
    pub base_gen_minpoly: Option<Vec<i64>>,
    pub curve: CurveCoeffs,
    pub alpha: AlphaConfig,
    /// Which pipelines `analyze` runs; defaults to all of them.
    #[serde(default)]
    pub tasks: Option<Vec<Task>>,
}

impl AnalysisConfig {
    pub fn wants(&self, task: Task) -> bool {
        match &self.tasks {
            None => true,
            Some(ts) => ts.contains(&task),
        }
    }
}

/// Everything the pipelines need, validated and embedded in one working
/// field.
pub struct Analysis {
    pub config: AnalysisConfig,
    pub field: Arc<Field>,
    /// Base-field generator used to interpret vector coefficient literals.
    pub gamma: FieldElem,
    pub curve: Curve,
    pub endo: EndoMap,
    pub order: QuadOrder,
    pub pi: QuadInt,
    /// |E(F_q)|.
    pub m: u64,
    pub trace: i64,
    pub f0: u64,
    pub validation: ValidationReport,
    pub warnings: Vec<String>,
}

pub fn parse_config(text: &str) -> Result<AnalysisConfig> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn load_config<P: AsRef<Path>>(path: P) -> Result<Analysis> {
    let text = std::fs::read_to_string(path)?;
    build_analysis(parse_config(&text)?)
}

fn resolve_coeff(
    field: &Arc<Field>,
    gamma: &FieldElem,
    lit: &CoeffLit,
    q_base: u64,
    what: &str,
) -> Result<FieldElem> {
    let value = match lit {
        CoeffLit::Int(n) => field.elem_from_int(*n),
        CoeffLit::GPower(s) => {
            let body = s
                .strip_prefix("g^")
                .ok_or_else(|| Error::Schema(format!("{what}: bad literal {s:?}, expected g^k")))?;
            let k: u64 = body
                .parse()
                .map_err(|_| Error::Schema(format!("{what}: bad exponent in {s:?}")))?;
            field.pow(&field.generator(), k)
        }
        CoeffLit::BaseVec(cs) => {
            if cs.len() as u32 > field.degree() {
                return Err(Error::Schema(format!(
                    "{what}: vector literal longer than the field degree"
                )));
            }
            let mut acc = field.zero();
            let mut pw = field.one();
            for &c in cs {
                acc = field.add(&acc, &field.mul(&field.elem_from_int(c), &pw));
                pw = field.mul(&pw, gamma);
            }
            acc
        }
    };
    if !field.in_subfield(&value, q_base) {
        return Err(Error::Schema(format!("{what}: value is not in the base field F_{q_base}")));
    }
    Ok(value)
}

fn resolve_poly(
    field: &Arc<Field>,
    gamma: &FieldElem,
    lits: &[CoeffLit],
    q_base: u64,
    what: &str,
) -> Result<Poly> {
    let mut coeffs = Vec::with_capacity(lits.len());
    for (i, lit) in lits.iter().enumerate() {
        coeffs.push(resolve_coeff(field, gamma, lit, q_base, &format!("{what}[{i}]"))?);
    }
    Ok(Poly::new(field, coeffs))
}

fn resolve_gamma(field: &Arc<Field>, cfg: &AnalysisConfig) -> Result<FieldElem> {
    let q_base = field.p().pow(cfg.s);
    if cfg.s == 1 {
        return Ok(field.one());
    }
    if let Some(minpoly) = &cfg.base_gen_minpoly {
        if minpoly.len() != cfg.s as usize + 1 {
            return Err(Error::Schema(format!(
                "base_gen_minpoly must have degree s = {}",
                cfg.s
            )));
        }
        let poly = Poly::from_ints(field, minpoly);
        for idx in 0..field.size() {
            let x = field.elem_from_index(idx);
            if field.is_zero(&poly.eval(field, &x)) {
                if !field.in_subfield(&x, q_base) {
                    return Err(Error::Schema(
                        "base_gen_minpoly root lies outside the base field".into(),
                    ));
                }
                return Ok(x);
            }
        }
        return Err(Error::Schema(
            "base_gen_minpoly has no root in the working field".into(),
        ));
    }
    // norm-compatible default: g^((q^n - 1)/(q - 1)) generates F_q*
    let k = (field.size() - 1) / (q_base - 1);
    Ok(field.pow(&field.generator(), k))
}

pub fn build_analysis(config: AnalysisConfig) -> Result<Analysis> {
    if config.s == 0 || config.n == 0 {
        return Err(Error::Schema("s and n must be positive".into()));
    }
    let working_degree = config
        .s
        .checked_mul(config.n)
        .ok_or_else(|| Error::Schema("s·n overflows".into()))?;
    if let Some(m) = &config.modulus {
        if m.len() != working_degree as usize + 1 {
            return Err(Error::Schema(format!(
                "modulus must have degree s·n = {working_degree}"
            )));
        }
    }
    let field = Arc::new(Field::new(config.p, working_degree, config.modulus.clone())?);
    let gamma = resolve_gamma(&field, &config)?;
    let q_base = config.p.pow(config.s);

    let mut warnings = Vec::new();
    let c = &config.curve;
    let a1 = resolve_coeff(&field, &gamma, &c.a1, q_base, "curve.a1")?;
    let a2 = resolve_coeff(&field, &gamma, &c.a2, q_base, "curve.a2")?;
    let a3 = resolve_coeff(&field, &gamma, &c.a3, q_base, "curve.a3")?;
    let a4 = resolve_coeff(&field, &gamma, &c.a4, q_base, "curve.a4")?;
    let a6 = resolve_coeff(&field, &gamma, &c.a6, q_base, "curve.a6")?;
    if !field.is_zero(&a1) || !field.is_zero(&a3) {
        warnings.push(
            "a1 or a3 is nonzero: E_0 is taken as the 2-torsion x-coordinates, \
             which differs from the literal y = 0 locus for such curves"
                .to_string(),
        );
    }
    let curve = Curve::new(field.clone(), config.s, a1, a2, a3, a4, a6)?;

    let m = curve.count_points(1)?;
    let trace = curve.check_ordinary(m)?;
    let (order, pi) = frobenius_rep(q_base, m, config.alpha.d)?;
    let f0 = frobenius_f0(q_base, m, config.alpha.d)?;
    if f0 > 1 {
        warnings.push(format!(
            "f0 = {f0} > 1: Z[π] is a proper suborder; End(E) = O_K is assumed on user responsibility"
        ));
    }

    let a_poly = resolve_poly(&field, &gamma, &config.alpha.a, q_base, "alpha.a")?;
    let b_poly = resolve_poly(&field, &gamma, &config.alpha.b, q_base, "alpha.b")?;
    let alpha2 = match &config.alpha.alpha2 {
        None => None,
        Some(a2cfg) => Some((
            resolve_poly(&field, &gamma, &a2cfg.num, q_base, "alpha.alpha2.num")?,
            resolve_poly(&field, &gamma, &a2cfg.den, q_base, "alpha.alpha2.den")?,
        )),
    };
    let rep = QuadInt::new(config.alpha.quad_rep[0], config.alpha.quad_rep[1]);
    let endo = EndoMap::new(&field, a_poly, b_poly, alpha2, rep)?;
    if endo.cancelled_common_factor() {
        warnings.push(
            "a(x) and b(x) had a common factor; it was cancelled and the reduced \
             denominator's zeros define the preimages of ∞"
                .to_string(),
        );
    }
    let rep_norm = order.norm(endo.rep());
    if num_bigint::BigInt::from(endo.map_degree()) != rep_norm {
        return Err(Error::DegreeNormMismatch {
            degree: endo.map_degree(),
            norm: rep_norm.to_string(),
        });
    }
    let validation = validate_endo_rep(&curve, &endo, &order, &pi);
    if validation.verdict == Verdict::Fail {
        warnings.push(
            "sampled point check failed: the claimed quad_rep does not act like the map"
                .to_string(),
        );
    }

    Ok(Analysis {
        config,
        field,
        gamma,
        curve,
        endo,
        order,
        pi,
        m,
        trace,
        f0,
        validation,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_1: &str = r#"{
        "p": 73, "s": 1, "n": 1,
        "curve": {"a4": -1},
        "alpha": {
            "a": [3, 0, -9, 0, 15, 0, -15, 0, 9, 0, -3],
            "b": [0, 1, 0, 28, 0, -21, 0, 28, 0, 1],
            "quad_rep": [3, -1],
            "d": -1
        }
    }"#;

    #[test]
    fn loads_example_1() {
        let analysis = build_analysis(parse_config(EXAMPLE_1).unwrap()).unwrap();
        assert_eq!(analysis.m, 80);
        assert_eq!(analysis.trace, -6);
        assert_eq!(analysis.pi, QuadInt::new(-3, 8));
        assert_eq!(analysis.f0, 16);
        assert_eq!(analysis.endo.map_degree(), 10);
        // α = 3 - i is not in Z[π]: degree check only
        assert_eq!(analysis.validation.verdict, Verdict::PassDegreeOnly);
        assert!(analysis
            .warnings
            .iter()
            .any(|w| w.contains("f0 = 16")));
    }

    #[test]
    fn rejects_nonprime_and_mismatched_degree() {
        let bad = EXAMPLE_1.replace("\"p\": 73", "\"p\": 6");
        assert!(matches!(
            build_analysis(parse_config(&bad).unwrap()),
            Err(Error::NotPrime(6))
        ));
        // degree-9 map claimed to be 3-i of norm 10
        let bad = EXAMPLE_1.replace(
            "\"a\": [3, 0, -9, 0, 15, 0, -15, 0, 9, 0, -3]",
            "\"a\": [3, 0, -9, 0, 15, 0, -15, 0, 9, 0]",
        );
        assert!(matches!(
            build_analysis(parse_config(&bad).unwrap()),
            Err(Error::DegreeNormMismatch { .. })
        ));
    }

    #[test]
    fn parse_error_is_distinguished() {
        assert!(matches!(parse_config("{ nope"), Err(Error::Parse(_))));
    }

    #[test]
    fn gpower_and_vector_literals() {
        let cfg = r#"{
            "p": 5, "s": 2, "n": 2,
            "base_gen_minpoly": [2, 4, 1],
            "curve": {"a4": 1, "a6": [0, 1]},
            "alpha": {
                "a": [[0, 1], 1],
                "b": [1],
                "quad_rep": [1, 0],
                "d": -21
            }
        }"#;
        // degree/norm check fails (map degree 1, N = 1 passes?): craft so it loads:
        // a = γ + x has degree 1 and quad_rep 1 + 0ω has norm 1: consistent
        let analysis = build_analysis(parse_config(cfg).unwrap()).unwrap();
        // γ satisfies γ² + 4γ + 2 = 0
        let f = &analysis.field;
        let g = &analysis.gamma;
        let v = f.add(
            &f.add(&f.mul(g, g), &f.mul(&f.elem_from_int(4), g)),
            &f.elem_from_int(2),
        );
        assert!(f.is_zero(&v));
        assert_eq!(analysis.m, 22);
        assert_eq!(analysis.pi, QuadInt::new(2, 1));
    }
}
