//! Registry of checkable identities and the report they produce.
//!
//! Every identity is a pure function of `(n, config)`; items run in parallel
//! but the report keeps registry order, so identical configs give
//! byte-identical JSON.

mod checks;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::matrix::RingMat;
use crate::ring::RingCtx;

pub use checks::REGISTRY;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Sampled,
}

/// Coefficient ring for symbolic checks of identities that do not need
/// `q(a, b) = 1`: the free polynomial ring over Q, or the quadric ring.
/// Unit-vector identities always run over the quadric ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingChoice {
    Rational,
    Quadric,
}

/// Largest `n` at which each family is checked symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub det: usize,
    pub product: usize,
    pub pfaffian: usize,
    pub class: usize,
    pub clifford: usize,
    /// largest `n` for which lifts `SL_n -> Spin_{2n}` are solved
    pub lift: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { det: 4, product: 6, pfaffian: 3, class: 4, clifford: 5, lift: 4 }
    }
}

impl Thresholds {
    /// The largest `n` any family accepts in symbolic mode.
    pub fn max_symbolic(&self) -> usize {
        [self.det, self.product, self.pfaffian, self.class, self.clifford].into_iter().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub mode: Mode,
    pub ring: RingChoice,
    /// sample points per sampled check, and trials per randomized check
    pub seeds: u64,
    pub thresholds: Thresholds,
    /// restrict to these identity names; `None` runs everything applicable
    pub identities: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            mode: Mode::Symbolic,
            ring: RingChoice::Rational,
            seeds: 20,
            thresholds: Thresholds::default(),
            identities: None,
        }
    }
}

impl SuiteConfig {
    pub fn sampled(seeds: u64) -> Self {
        SuiteConfig { mode: Mode::Sampled, seeds, ..Default::default() }
    }

    pub fn only(mut self, names: &[&str]) -> Self {
        self.identities = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub(crate) fn poly_ctx(&self, n: usize) -> RingCtx {
        match self.ring {
            RingChoice::Rational => RingCtx::Poly(n),
            RingChoice::Quadric => RingCtx::Quadric(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    /// generic coordinates, exact polynomial arithmetic
    Symbolic,
    /// seeded rational points
    Sampled,
    /// constant matrices, no free parameters
    Exact,
    /// seeded random group elements or witnesses
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub identity: String,
    pub n: usize,
    pub mode: RunMode,
    pub status: Status,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(results: Vec<CheckResult>) -> Self {
        let count = |s| results.iter().filter(|r| r.status == s).count();
        let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) };
        Report { results, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{status:<4}  n={:<2} {:<22} {}", r.n, r.identity, r.statement));
            if let Some(d) = &r.detail {
                out.push_str(&format!("  [{d}]"));
            }
            out.push('\n');
            if let Some(c) = &r.counterexample {
                out.push_str(&format!("      counterexample: {c}\n"));
            }
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}

/// Why a check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub detail: String,
    pub counterexample: Option<Value>,
}

impl Failure {
    pub fn new(detail: impl Into<String>) -> Self {
        Failure { detail: detail.into(), counterexample: None }
    }

    pub fn with(mut self, c: Value) -> Self {
        self.counterexample = Some(c);
        self
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::new(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

/// Compares two matrices; on mismatch reports the first differing entry.
pub fn expect_mat_eq(what: &str, lhs: &RingMat, rhs: &RingMat) -> Outcome {
    if lhs.shape() != rhs.shape() {
        return Err(Failure::new(format!("{what}: shapes {:?} vs {:?}", lhs.shape(), rhs.shape())));
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Err(Failure::new(format!("{what}: entry ({i}, {j}) differs")).with(serde_json::json!({
                    "entry": [i, j],
                    "lhs": lhs.get(i, j).to_string(),
                    "rhs": rhs.get(i, j).to_string(),
                })));
            }
        }
    }
    Ok(())
}

pub fn expect(what: &str, ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::new(what.to_string()))
    }
}

/// Attaches sample context (seed and coordinates) to a failure.
pub(crate) fn at_sample(seed: u64, coords: Value) -> impl FnOnce(Failure) -> Failure {
    move |mut f| {
        let inner = f.counterexample.take().unwrap_or(Value::Null);
        f.counterexample = Some(serde_json::json!({ "seed": seed, "point": coords, "mismatch": inner }));
        f
    }
}

/// How an identity decides between symbolic and sampled evaluation.
#[derive(Debug, Clone, Copy)]
pub enum Kind {
    /// symbolic up to the threshold picked out by the accessor, sampled otherwise
    Ring(fn(&Thresholds) -> usize),
    /// exact constant matrices
    Exact,
    /// seeded random instances, `lift`-bounded when they solve for lifts
    Randomized { needs_lift: bool },
    /// symbolic only, up to the threshold
    SymbolicOnly(fn(&Thresholds) -> usize),
}

pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub kind: Kind,
    pub applies: fn(usize) -> bool,
    pub run: fn(usize, RunMode, &SuiteConfig, u64) -> Outcome,
}

impl Identity {
    fn plan(&self, n: usize, cfg: &SuiteConfig) -> Result<RunMode, String> {
        let t = &cfg.thresholds;
        match self.kind {
            Kind::Exact => Ok(RunMode::Exact),
            Kind::Randomized { needs_lift } => {
                if needs_lift && n > t.lift {
                    Err(format!("lifts are solved only for n <= {}", t.lift))
                } else {
                    Ok(RunMode::Randomized)
                }
            }
            Kind::Ring(limit) => match cfg.mode {
                Mode::Sampled => Ok(RunMode::Sampled),
                Mode::Symbolic if n <= limit(t) => Ok(RunMode::Symbolic),
                Mode::Symbolic => Err(format!("symbolic threshold is n <= {}; use sampled mode", limit(t))),
            },
            Kind::SymbolicOnly(limit) => {
                if n <= limit(t) {
                    Ok(RunMode::Symbolic)
                } else {
                    Err(format!("symbolic threshold is n <= {}", limit(t)))
                }
            }
        }
    }

    pub fn check(&self, n: usize, cfg: &SuiteConfig, index: usize) -> CheckResult {
        let base = CheckResult {
            identity: self.name.to_string(),
            n,
            mode: RunMode::Exact,
            status: Status::Pass,
            statement: self.statement.to_string(),
            detail: None,
            counterexample: None,
        };
        match self.plan(n, cfg) {
            Err(why) => CheckResult { status: Status::Skipped, detail: Some(why), mode: self.nominal_mode(cfg), ..base },
            Ok(mode) => match (self.run)(n, mode, cfg, seed_base(index, n)) {
                Ok(()) => CheckResult { mode, ..base },
                Err(f) => CheckResult {
                    mode,
                    status: Status::Fail,
                    detail: Some(f.detail),
                    counterexample: f.counterexample,
                    ..base
                },
            },
        }
    }

    fn nominal_mode(&self, cfg: &SuiteConfig) -> RunMode {
        match (self.kind, cfg.mode) {
            (Kind::Exact, _) => RunMode::Exact,
            (Kind::Randomized { .. }, _) => RunMode::Randomized,
            (Kind::SymbolicOnly(_), _) | (Kind::Ring(_), Mode::Symbolic) => RunMode::Symbolic,
            (Kind::Ring(_), Mode::Sampled) => RunMode::Sampled,
        }
    }
}

/// Seeds are a pure function of the registry slot and `n`; trial `k` uses
/// `seed_base + k`.
fn seed_base(index: usize, n: usize) -> u64 {
    ((index as u64) << 40) | ((n as u64) << 24)
}

pub fn identity(name: &str) -> Option<&'static Identity> {
    REGISTRY.iter().find(|i| i.name == name)
}

pub fn identity_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|i| i.name).collect()
}

/// Runs every selected, applicable identity for each `n`, in registry order
/// within each `n`.
pub fn run_suite(ns: &[usize], cfg: &SuiteConfig) -> Report {
    let items: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| {
            REGISTRY
                .iter()
                .enumerate()
                .filter(move |(_, id)| (id.applies)(n))
                .filter(|(_, id)| cfg.identities.as_ref().is_none_or(|names| names.iter().any(|s| s == id.name)))
                .map(move |(k, _)| (n, k))
        })
        .collect();
    let results = items.par_iter().map(|&(n, k)| REGISTRY[k].check(n, cfg, k)).collect();
    Report::new(results)
}

/// The Suslin-matrix identities proper: determinant, both products,
/// transpose duality and the `J`/`E` laws.
pub const SUSLIN_IDENTITIES: [&str; 6] = ["det", "product", "transpose-duality", "j-laws", "e-invertible", "e-form"];

pub fn verify_suslin_suite(n: usize, cfg: &SuiteConfig) -> Report {
    let mut cfg = cfg.clone();
    cfg.identities = Some(SUSLIN_IDENTITIES.iter().map(|s| s.to_string()).collect());
    run_suite(&[n], &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names = identity_names();
        names.sort();
        let len = names.len();
        names.dedup();
        assert_eq!(names.len(), len);
    }

    #[test]
    fn suslin_suite_n2_passes() {
        let r = verify_suslin_suite(2, &SuiteConfig::default());
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.summary.pass, 6);
    }

    #[test]
    fn above_threshold_is_skipped() {
        let r = run_suite(&[5], &SuiteConfig::default().only(&["det"]));
        assert_eq!(r.results[0].status, Status::Skipped);
    }

    #[test]
    fn report_json_shape() {
        let r = run_suite(&[2], &SuiteConfig::default().only(&["j-laws"]));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["results"][0]["identity"], "j-laws");
        assert_eq!(v["results"][0]["status"], "pass");
        assert_eq!(v["results"][0]["mode"], "exact");
        assert!(v["results"][0].get("counterexample").is_none());
    }

    #[test]
    fn mismatch_reports_entry() {
        let q = RingCtx::Rational;
        let f = expect_mat_eq("x", &RingMat::identity(q, 2), &RingMat::zeros(q, 2, 2)).unwrap_err();
        assert_eq!(f.counterexample.unwrap()["entry"], serde_json::json!([0, 0]));
    }
}
