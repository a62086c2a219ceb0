//! JSON encodings: polynomials as term lists, matrices, certified Spin
//! elements and witness files.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{spin_certify, CliffordElem, SpinElem};
use crate::matrix::RingMat;
use crate::orbits::{
    factorization_check, verify_congruence_witness, CongruenceMap, Decomposition, ElementaryWitness, EpinFactor,
    EpinKind, Flavor, OrbitError,
};
use crate::ring::{Poly, Rational, RingCtx, RingElem};
use crate::suslin::UnitVector;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> JsonError {
    JsonError::Invalid(e.to_string())
}

// ---- polynomials and matrices ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// Terms from the leading monomial down (pure lex on `x1, y1, x2, y2, ...`).
pub type PolyJson = Vec<Term>;

pub fn poly_to_json(p: &Poly) -> PolyJson {
    p.terms()
        .iter()
        .map(|(m, c)| Term { coeff: format!("{}/{}", c.numer(), c.denom()), exps: m.clone() })
        .collect()
}

pub fn elem_to_json(e: &RingElem) -> PolyJson {
    poly_to_json(e.poly())
}

fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    let r: Rational = s.trim().parse().map_err(|_| JsonError::Invalid(format!("bad coefficient {s:?}")))?;
    Ok(r)
}

pub fn elem_from_json(ctx: RingCtx, terms: &[Term]) -> Result<RingElem, JsonError> {
    let nv = ctx.nvars();
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != nv {
            return Err(JsonError::Invalid(format!(
                "monomial has {} exponents, {ctx} has {nv} variables",
                t.exps.len()
            )));
        }
        parsed.push((t.exps.clone(), parse_rational(&t.coeff)?));
    }
    ctx.elem(Poly::from_terms(nv, parsed)).map_err(invalid)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub ctx: RingCtx,
    pub entries: Vec<Vec<PolyJson>>,
}

impl From<&RingMat> for MatrixJson {
    fn from(m: &RingMat) -> Self {
        let entries = (0..m.rows()).map(|i| (0..m.cols()).map(|j| elem_to_json(m.get(i, j))).collect()).collect();
        MatrixJson { rows: m.rows(), cols: m.cols(), ctx: m.ctx(), entries }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<RingMat, JsonError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(JsonError::Invalid(format!("entries do not form a {}x{} matrix", self.rows, self.cols)));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for r in &self.entries {
            rows.push(r.iter().map(|t| elem_from_json(self.ctx, t)).collect::<Result<Vec<_>, _>>()?);
        }
        let mut m = RingMat::zeros(self.ctx, self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, e) in r.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorJson {
    pub ctx: RingCtx,
    pub a: Vec<PolyJson>,
    pub b: Vec<PolyJson>,
}

impl VectorJson {
    pub fn new(a: &[RingElem], b: &[RingElem]) -> Self {
        let ctx = a.first().map_or(RingCtx::Rational, |e| e.ctx());
        VectorJson { ctx, a: a.iter().map(elem_to_json).collect(), b: b.iter().map(elem_to_json).collect() }
    }

    pub fn to_pair(&self) -> Result<(Vec<RingElem>, Vec<RingElem>), JsonError> {
        let conv = |v: &[PolyJson]| v.iter().map(|t| elem_from_json(self.ctx, t)).collect::<Result<Vec<_>, _>>();
        Ok((conv(&self.a)?, conv(&self.b)?))
    }

    pub fn to_unit_vector(&self) -> Result<UnitVector, JsonError> {
        let (a, b) = self.to_pair()?;
        UnitVector::new(a, b).map_err(invalid)
    }
}

// ---- Spin elements ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisImageJson {
    pub index: usize,
    pub image: MatrixJson,
    pub coords: Vec<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub unitary: bool,
    pub images: Vec<BasisImageJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinJson {
    pub n: usize,
    pub g: MatrixJson,
    pub so_matrix: MatrixJson,
    pub certificate: CertificateJson,
}

impl From<&SpinElem> for SpinJson {
    fn from(s: &SpinElem) -> Self {
        let cert = s.certificate();
        SpinJson {
            n: s.n(),
            g: s.element().matrix().into(),
            so_matrix: s.so_matrix().matrix().into(),
            certificate: CertificateJson {
                unitary: cert.unitary,
                images: cert
                    .images
                    .iter()
                    .map(|b| BasisImageJson {
                        index: b.index,
                        image: (&b.image).into(),
                        coords: b.coords.iter().map(elem_to_json).collect(),
                    })
                    .collect(),
            },
        }
    }
}

/// Input for `spin-check`: either `{"g": matrix}` or a bare matrix.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SpinInput {
    Wrapped { g: MatrixJson },
    Bare(MatrixJson),
}

impl SpinInput {
    pub fn matrix(&self) -> &MatrixJson {
        match self {
            SpinInput::Wrapped { g } | SpinInput::Bare(g) => g,
        }
    }
}

// ---- witness files ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub row: usize,
    pub col: usize,
    pub coeff: PolyJson,
}

fn factors_to_json(w: &ElementaryWitness) -> Vec<FactorJson> {
    w.factors().iter().map(|(i, j, l)| FactorJson { row: *i, col: *j, coeff: elem_to_json(l) }).collect()
}

fn factors_from_json(ctx: RingCtx, size: usize, fs: &[FactorJson]) -> Result<ElementaryWitness, JsonError> {
    let factors = fs
        .iter()
        .map(|f| Ok((f.row, f.col, elem_from_json(ctx, &f.coeff)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    ElementaryWitness::new(ctx, size, factors).map_err(invalid)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    #[serde(rename = "M")]
    pub m: MatrixJson,
    #[serde(rename = "N")]
    pub n: MatrixJson,
    pub i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpinKindJson {
    Dictionary,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpinJson {
    pub kind: EpinKindJson,
    pub size: usize,
    pub factors: Vec<FactorJson>,
}

/// Factorization witnesses are over Q; Epin elements are rebuilt from
/// their elementary factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub phi: MatrixJson,
    pub lambda: MatrixJson,
    pub epin: Vec<EpinJson>,
    pub stabilizer: MatrixJson,
    pub target: VectorJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flavor")]
pub enum WitnessSpec {
    #[serde(rename = "W_E")]
    WE(CongruenceJson),
    #[serde(rename = "W_SL")]
    WSL(CongruenceJson),
    #[serde(rename = "S_sim")]
    SSim(CongruenceJson),
    #[serde(rename = "factorization")]
    Factorization(FactorizationJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    #[serde(flatten)]
    pub spec: WitnessSpec,
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub flavor: String,
    pub expected: bool,
    pub accepted: bool,
    /// `accepted == expected`
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

/// Short variant name of an error, e.g. `ProductMismatch`.
pub fn error_name(e: &impl std::fmt::Debug) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

impl WitnessFile {
    pub fn congruence(
        flavor: Flavor,
        m: &RingMat,
        n: &RingMat,
        i: usize,
        map: &CongruenceMap,
        expected: bool,
    ) -> WitnessFile {
        let (factors, matrix) = match map {
            CongruenceMap::Elementary(w) => (Some(factors_to_json(w)), None),
            CongruenceMap::Matrix(e) => (None, Some(e.into())),
        };
        let body = CongruenceJson { m: m.into(), n: n.into(), i, factors, matrix };
        let spec = match flavor {
            Flavor::WE => WitnessSpec::WE(body),
            Flavor::WSL => WitnessSpec::WSL(body),
            Flavor::SSim => WitnessSpec::SSim(body),
        };
        WitnessFile { spec, expected }
    }

    pub fn factorization(phi: &SpinElem, d: &Decomposition, target: &UnitVector, expected: bool) -> WitnessFile {
        let epin = d
            .epin
            .iter()
            .map(|f| EpinJson {
                kind: match f.kind {
                    EpinKind::Dictionary => EpinKindJson::Dictionary,
                    EpinKind::Hyperbolic => EpinKindJson::Hyperbolic,
                },
                size: f.witness.size(),
                factors: factors_to_json(&f.witness),
            })
            .collect();
        let spec = WitnessSpec::Factorization(FactorizationJson {
            phi: phi.element().matrix().into(),
            lambda: (&d.lambda).into(),
            epin,
            stabilizer: d.stabilizer.matrix().into(),
            target: VectorJson::new(target.a(), target.b()),
        });
        WitnessFile { spec, expected }
    }

    pub fn flavor(&self) -> &'static str {
        match self.spec {
            WitnessSpec::WE(_) => "W_E",
            WitnessSpec::WSL(_) => "W_SL",
            WitnessSpec::SSim(_) => "S_sim",
            WitnessSpec::Factorization(_) => "factorization",
        }
    }

    /// Decodes the witness and runs the matching verifier. Decoding
    /// failures are errors; verifier failures are a rejection.
    pub fn verify(&self) -> Result<WitnessReport, JsonError> {
        let outcome = match &self.spec {
            WitnessSpec::WE(c) => self.run_congruence(Flavor::WE, c)?,
            WitnessSpec::WSL(c) => self.run_congruence(Flavor::WSL, c)?,
            WitnessSpec::SSim(c) => self.run_congruence(Flavor::SSim, c)?,
            WitnessSpec::Factorization(f) => run_factorization(f)?,
        };
        let (accepted, error, message) = match outcome {
            Ok(true) => (true, None, None),
            Ok(false) => (false, Some("CongruenceMismatch".to_string()), Some("the two sides differ".to_string())),
            Err(e) => (false, Some(error_name(&e)), Some(e.to_string())),
        };
        Ok(WitnessReport {
            flavor: self.flavor().to_string(),
            expected: self.expected,
            accepted,
            verdict: accepted == self.expected,
            error,
            message,
        })
    }

    fn run_congruence(&self, flavor: Flavor, c: &CongruenceJson) -> Result<Result<bool, OrbitError>, JsonError> {
        let (m, n) = (c.m.to_matrix()?, c.n.to_matrix()?);
        let map = match (&c.factors, &c.matrix) {
            (Some(fs), None) => CongruenceMap::Elementary(factors_from_json(m.ctx(), m.rows() + n.rows() + 2 * c.i, fs)?),
            (None, Some(e)) => CongruenceMap::Matrix(e.to_matrix()?),
            _ => return Err(JsonError::Invalid("exactly one of `factors` and `matrix` is required".into())),
        };
        Ok(verify_congruence_witness(&m, &n, c.i, &map, flavor))
    }
}

fn run_factorization(f: &FactorizationJson) -> Result<Result<bool, OrbitError>, JsonError> {
    let phi = f.phi.to_matrix()?;
    let lambda = f.lambda.to_matrix()?;
    let stabilizer = CliffordElem::new(f.stabilizer.to_matrix()?).map_err(invalid)?;
    let target = f.target.to_unit_vector()?;
    let mut epin = Vec::with_capacity(f.epin.len());
    for e in &f.epin {
        let w = factors_from_json(RingCtx::Rational, e.size, &e.factors)?;
        let factor = match e.kind {
            EpinKindJson::Dictionary => EpinFactor::dictionary(w),
            EpinKindJson::Hyperbolic => EpinFactor::hyperbolic(w),
        };
        match factor {
            Ok(x) => epin.push(x),
            Err(err) => return Ok(Err(err)),
        }
    }
    let phi = match CliffordElem::new(phi).and_then(|g| spin_certify(&g)) {
        Ok(p) => p,
        Err(e) => return Ok(Err(e.into())),
    };
    let d = Decomposition { lambda, epin, stabilizer };
    Ok(factorization_check(&phi, &d, &target).map(|()| true))
}

/// Certifies the matrix of a `spin-check` input.
pub fn spin_check(input: &SpinInput) -> Result<Result<SpinElem, crate::clifford::CliffordError>, JsonError> {
    let m = input.matrix().to_matrix()?;
    Ok(CliffordElem::new(m).and_then(|g| spin_certify(&g)))
}
