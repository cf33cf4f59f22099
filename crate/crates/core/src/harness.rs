//! Suite configuration, case registry and JSON verification reports.
//!
//! Every case id is a `-`-separated string whose tokens name the identity it
//! checks (`Com5-consistency`, `BJ-eq-BJ2-n4`, `expec-order4`, ...). The
//! [`COVERAGE`] manifest lists the identity labels that `verify all` must hit.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::basis::{
    bj_identity_mismatch, build_bj, build_family, certify_rank, leading_term_sign, matches_up_to_sign, reduction_sweep,
    BasisError, RankCertificate,
};
use crate::exactmath::{cauchy_random_check, GaussianRational};
use crate::fock::{
    annihilation_check, barred_pair_check, centrality_check, nilpotence_check, series_identity_check, table_action_check,
    word_sum, FockVector,
};
use crate::lattice::{
    bosonization_check, bosonized_vacuum_expectation, car_check, conjugation_check, hsupp_check, partitions,
    r_adjoint_disjoint_check, schur_monomial_rank, vacuum_annihilation_check, vacuum_expectation_series, BosonForm,
    FreeFermionLattice, LatticeError,
};
use crate::lrcoeff::{lr_consistency, lr_series, SubsetIndex};

pub const SCHEMA_VERSION: u32 = 1;

/// Default output directory for reports.
pub const REPORT_DIR_ENV: &str = "FBASIS_REPORT_DIR";

/// Setting this to `1` turns on the heavy cases.
pub const HEAVY_ENV: &str = "FBASIS_HEAVY";

pub const MAX_N: u32 = 4;
pub const MAX_ORDER: usize = 4;
pub const MAX_WINDOW: u32 = 6;
pub const MAX_WEIGHT: usize = 5;

/// Attempts per case when a random choice hits a singular point.
const RETRIES: u64 = 3;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("basis: {0}")]
    Basis(#[from] BasisError),
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fock,
    Lr,
    Basis,
    Lattice,
    All,
}

impl Suite {
    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Fock => "fock",
            Suite::Lr => "lr",
            Suite::Basis => "basis",
            Suite::Lattice => "lattice",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "fock" => Ok(Suite::Fock),
            "lr" => Ok(Suite::Lr),
            "basis" => Ok(Suite::Basis),
            "lattice" => Ok(Suite::Lattice),
            "all" => Ok(Suite::All),
            _ => Err(HarnessError::Usage(format!("unknown suite `{s}`"))),
        }
    }
}

/// Caps and seeds for one run. The basis cases run for every chain length up
/// to `n`; the lattice series cases run through `z^order` (the vacuum
/// expectation one order further); `weight` caps the monomial rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n: u32,
    pub order: usize,
    pub window: u32,
    pub weight: usize,
    /// Specialisation of `y`, in the scalar grammar.
    pub y: String,
    pub seed: u64,
    pub heavy: bool,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            n: 3,
            order: 3,
            window: 6,
            weight: 4,
            y: "3".into(),
            seed: 7,
            heavy: false,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |what: &str, v: String, cap: String| Err(HarnessError::Usage(format!("{what} = {v} outside {cap}")));
        if !(1..=MAX_N).contains(&self.n) {
            return bad("n", self.n.to_string(), format!("1..={MAX_N}"));
        }
        if self.order > MAX_ORDER {
            return bad("order", self.order.to_string(), format!("0..={MAX_ORDER}"));
        }
        if !(1..=MAX_WINDOW).contains(&self.window) {
            return bad("window", self.window.to_string(), format!("1..={MAX_WINDOW}"));
        }
        if self.weight > MAX_WEIGHT {
            return bad("weight", self.weight.to_string(), format!("0..={MAX_WEIGHT}"));
        }
        self.y_value()?;
        Ok(())
    }

    fn y_value(&self) -> Result<GaussianRational, HarnessError> {
        self.y.parse().map_err(|e| HarnessError::Usage(format!("y: {e}")))
    }

    /// Command line that reruns this configuration.
    pub fn reproducer(&self) -> String {
        let mut s = format!(
            "fbasis verify {} --n {} --order {} --window {} --weight {} --y {} --seed {}",
            self.suite, self.n, self.order, self.window, self.weight, self.y, self.seed
        );
        if self.heavy {
            s.push_str(" --heavy");
        }
        s
    }
}

/// `$FBASIS_REPORT_DIR/fbasis-<suite>.json`, or the current directory.
pub fn default_report_path(suite: Suite) -> PathBuf {
    let dir = std::env::var_os(REPORT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    dir.join(format!("fbasis-{suite}.json"))
}

pub fn heavy_from_env() -> bool {
    std::env::var(HEAVY_ENV).map(|v| v == "1").unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub id: String,
    pub status: Status,
    pub details: Value,
    /// Set on failures.
    pub reproducer: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub verdicts: Vec<VerdictRecord>,
    pub passed: bool,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &VerdictRecord> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail)
    }
}

/// Identity labels and the suite whose cases cover them.
pub const COVERAGE: &[(&str, Suite)] = &[
    ("Com1", Suite::Fock),
    ("Com2", Suite::Fock),
    ("Com3", Suite::Fock),
    ("Com4", Suite::Fock),
    ("Com5", Suite::Fock),
    ("Com6", Suite::Fock),
    ("tbcbc", Suite::Fock),
    ("bar1", Suite::Fock),
    ("bar2", Suite::Fock),
    ("monomial", Suite::Fock),
    ("kill", Suite::Fock),
    ("CIJK", Suite::Lr),
    ("Cauchy", Suite::Lr),
    ("BJ", Suite::Basis),
    ("BJ2", Suite::Basis),
    ("base", Suite::Basis),
    ("tmono", Suite::Basis),
    ("rank", Suite::Basis),
    ("CAR", Suite::Lattice),
    ("vacuum", Suite::Lattice),
    ("hbz", Suite::Lattice),
    ("hsupp", Suite::Lattice),
    ("hPhi", Suite::Lattice),
    ("hPsi", Suite::Lattice),
    ("expec", Suite::Lattice),
    ("formulah", Suite::Lattice),
    ("independence", Suite::Lattice),
];

/// Labels of the manifest that no verdict id mentions, restricted to the
/// suites in `suite`.
pub fn coverage_gaps(suite: Suite, verdicts: &[VerdictRecord]) -> Vec<&'static str> {
    COVERAGE
        .iter()
        .filter(|(_, s)| suite.includes(*s))
        .filter(|(label, _)| !verdicts.iter().any(|v| v.id.split('-').any(|t| t == *label)))
        .map(|(label, _)| *label)
        .collect()
}

struct Outcome {
    status: Status,
    details: Value,
}

impl Outcome {
    fn new(ok: bool, details: Value) -> Outcome {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            details,
        }
    }

    fn skip(reason: &str) -> Outcome {
        Outcome {
            status: Status::Skip,
            details: json!({ "reason": reason }),
        }
    }

    fn error(e: impl fmt::Display) -> Outcome {
        Outcome {
            status: Status::Fail,
            details: json!({ "error": e.to_string() }),
        }
    }

    /// Pass iff no counterexample was found.
    fn from_counterexample(found: Option<String>, details: Value) -> Outcome {
        let mut details = details;
        if let (Some(c), Value::Object(map)) = (&found, &mut details) {
            map.insert("counterexample".into(), Value::String(c.clone()));
        }
        Outcome::new(found.is_none(), details)
    }
}

type CaseFn = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Case {
    id: String,
    run: CaseFn,
}

/// Independent RNG stream per case, fixed by the run seed and the case id.
fn case_rng(seed: u64, id: &str) -> ChaCha8Rng {
    let h = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// The scalar `y` at which the lattice cases run. A singular configured value
/// is replaced by seeded draws, at most [`RETRIES`] times.
fn lattice_at(cfg: &SuiteConfig) -> Result<(FreeFermionLattice<GaussianRational>, GaussianRational), String> {
    let y = cfg.y_value().map_err(|e| e.to_string())?;
    if let Ok(l) = FreeFermionLattice::at(y.clone()) {
        return Ok((l, y));
    }
    let mut rng = case_rng(cfg.seed, "y-retry");
    for _ in 0..RETRIES {
        let y = GaussianRational::from_frac(rng.gen_range(2..50), rng.gen_range(1..7));
        if let Ok(l) = FreeFermionLattice::at(y.clone()) {
            return Ok((l, y));
        }
    }
    Err(format!("y = {} is singular and {RETRIES} redraws failed", cfg.y))
}

/// Reference list of the family at `n = 2`, each element a signed sum of
/// words on the vacuum.
pub const BASE_N2_LIST: [&str; 16] = [
    "b*2 b*1",
    "b*2",
    "b*1",
    "t*1 b*2 - t*2 b*1",
    "t*1 b*1",
    "1",
    "t*1",
    "t*2",
    "t*1 t*1",
    "c*1 b*1",
    "b*2 c*1 + c*2 b*1",
    "c*2",
    "c*1",
    "t*1 c*2 - t*2 c*1",
    "t*1 c*1",
    "c*2 c*1",
];

fn rank_with_retries(n: u32, seed: u64) -> Result<RankCertificate, BasisError> {
    let mut last = BasisError::SingularReduction;
    for attempt in 0..RETRIES {
        let base = seed.wrapping_add(1000 * attempt);
        match certify_rank(n, &[base, base.wrapping_add(1)]) {
            Ok(c) => return Ok(c),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn fock_cases(cfg: &SuiteConfig, cases: &mut Vec<Case>) {
    let seed = cfg.seed;
    let order = cfg.order;
    let mut add = |id: &str, f: CaseFn| cases.push(Case { id: id.into(), run: f });
    add(
        "Com1-centrality",
        Box::new(move || {
            let found = centrality_check(&mut case_rng(seed, "Com1-centrality"), 100);
            Outcome::from_counterexample(found, json!({ "words": 100, "max_index": 6 }))
        }),
    );
    add(
        "Com2-Com4-nilpotence",
        Box::new(move || {
            let found = nilpotence_check(&mut case_rng(seed, "Com2-Com4-nilpotence"), 50);
            Outcome::from_counterexample(found, json!({ "vectors": 50, "max_index": 6 }))
        }),
    );
    add(
        "tbcbc-Com3-Com6-table-vs-action",
        Box::new(move || {
            let found = table_action_check(&mut case_rng(seed, "tbcbc-Com3-Com6-table-vs-action"), 2, 4);
            Outcome::from_counterexample(found, json!({ "vectors": 2, "max_index": 4 }))
        }),
    );
    add(
        "Com5-consistency",
        Box::new(move || {
            let found = barred_pair_check(&mut case_rng(seed, "Com5-consistency"), 6);
            Outcome::from_counterexample(found, json!({ "max_index": 6 }))
        }),
    );
    let id = format!("bar1-bar2-series-order{order}");
    add(
        &id.clone(),
        Box::new(move || {
            let mut rng = case_rng(seed, &id);
            let mut samples = vec![FockVector::vacuum()];
            samples.extend((0..3).map(|_| FockVector::random(&mut rng, 4, 2)));
            Outcome::new(series_identity_check(order, &samples), json!({ "order": order, "samples": samples.len() }))
        }),
    );
    add(
        "kill-annihilation",
        Box::new(move || {
            let found = annihilation_check(&mut case_rng(seed, "kill-annihilation"), 30);
            Outcome::from_counterexample(found, json!({ "vectors": 30 }))
        }),
    );
    add(
        "monomial-text-round-trip",
        Box::new(move || {
            let mut rng = case_rng(seed, "monomial-text-round-trip");
            let bad = (0..50).map(|_| FockVector::random(&mut rng, 5, 3)).find(|v| v.to_string().parse::<FockVector>().ok().as_ref() != Some(v));
            Outcome::from_counterexample(bad.map(|v| v.to_string()), json!({ "vectors": 50 }))
        }),
    );
}

fn lr_cases(cfg: &SuiteConfig, cases: &mut Vec<Case>) {
    let seed = cfg.seed;
    for l in 1..=3usize {
        cases.push(Case {
            id: format!("CIJK-series-vs-tableau-l{l}"),
            run: Box::new(move || {
                let table = lr_series(l, 6);
                Outcome::new(lr_consistency(l, 6), json!({ "l": l, "cap": 6, "nonzero": table.entries().count() }))
            }),
        });
    }
    for l in 1..=4usize {
        let id = format!("Cauchy-l{l}");
        cases.push(Case {
            id: id.clone(),
            run: Box::new(move || {
                let found = cauchy_random_check(&mut case_rng(seed, &id), l, 20);
                let found = found.map(|pts| pts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "));
                Outcome::from_counterexample(found, json!({ "l": l, "point_sets": 20 }))
            }),
        });
    }
}

fn basis_cases(cfg: &SuiteConfig, cases: &mut Vec<Case>) {
    let (seed, heavy) = (cfg.seed, cfg.heavy);
    for n in 1..=cfg.n {
        cases.push(Case {
            id: format!("BJ-eq-BJ2-n{n}"),
            run: Box::new(move || match bj_identity_mismatch(n) {
                Ok(bad) => Outcome::from_counterexample(bad.map(|j| j.to_string()), json!({ "n": n, "subsets": 1u64 << n })),
                Err(e) => Outcome::error(e),
            }),
        });
        cases.push(Case {
            id: format!("BJ-leading-term-n{n}"),
            run: Box::new(move || {
                let mut signs = serde_json::Map::new();
                let mut ok = true;
                for l in 0..=n as usize {
                    for j in SubsetIndex::all(n, l) {
                        match leading_term_sign(n, &j) {
                            Ok(Some(s)) => {
                                signs.insert(j.to_string(), json!(s));
                            }
                            Ok(None) => {
                                ok = false;
                                signs.insert(j.to_string(), Value::Null);
                            }
                            Err(e) => return Outcome::error(e),
                        }
                    }
                }
                Outcome::new(ok, json!({ "n": n, "signs": signs }))
            }),
        });
        cases.push(Case {
            id: format!("base-n{n}-size"),
            run: Box::new(move || match build_family(n) {
                Ok(f) => Outcome::new(f.len() == 1 << (2 * n), json!({ "n": n, "elements": f.len() })),
                Err(e) => Outcome::error(e),
            }),
        });
        cases.push(Case {
            id: format!("tmono-schur-reduction-n{n}"),
            run: Box::new(move || match reduction_sweep(n) {
                Ok((count, bad)) => {
                    let bad = bad.map(|(j, m, nn)| format!("J={j} M0={m} N0={nn}"));
                    Outcome::from_counterexample(bad, json!({ "n": n, "cases": count }))
                }
                Err(e) => Outcome::error(e),
            }),
        });
        cases.push(Case {
            id: format!("rank-n{n}"),
            run: Box::new(move || {
                if n >= 4 && !heavy {
                    return Outcome::skip("n = 4 needs --heavy");
                }
                match rank_with_retries(n, seed) {
                    Ok(c) => Outcome::new(c.is_complete(), serde_json::to_value(&c).unwrap_or(Value::Null)),
                    Err(e) => Outcome::error(e),
                }
            }),
        });
    }
    if cfg.n >= 2 {
        cases.push(Case {
            id: "base-n2-list".into(),
            run: Box::new(|| {
                let listed: Result<Vec<FockVector>, _> = BASE_N2_LIST.iter().map(|s| word_sum(s)).collect();
                let (listed, family) = match (listed, build_family(2)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) => return Outcome::error(e),
                    (_, Err(e)) => return Outcome::error(e),
                };
                let values: Vec<FockVector> = family.into_iter().map(|e| e.value).collect();
                Outcome::new(matches_up_to_sign(&values, &listed), json!({ "elements": values.len() }))
            }),
        });
    }
}

fn lattice_cases(cfg: &SuiteConfig, cases: &mut Vec<Case>) {
    let (seed, order, window, heavy) = (cfg.seed, cfg.order, cfg.window, cfg.heavy);
    let lattice = match lattice_at(cfg) {
        Ok(l) => l,
        Err(e) => {
            cases.push(Case {
                id: "hbz-lattice-setup".into(),
                run: Box::new(move || Outcome::error(&e)),
            });
            return;
        }
    };
    let (lat, y) = lattice;
    let lat = std::sync::Arc::new(lat);
    let ys = y.to_string();

    let (l, id) = (lat.clone(), format!("CAR-window{window}"));
    cases.push(Case {
        id: id.clone(),
        run: Box::new(move || {
            let found = car_check(&*l, &mut case_rng(seed, &id), window);
            Outcome::from_counterexample(found, json!({ "max_window": window }))
        }),
    });
    let l = lat.clone();
    cases.push(Case {
        id: "vacuum-annihilation".into(),
        run: Box::new(move || Outcome::from_counterexample(vacuum_annihilation_check(&*l, 6), json!({ "reach": 6 }))),
    });
    let (l, y1) = (lat.clone(), ys.clone());
    let eo = order + 1;
    cases.push(Case {
        id: format!("expec-order{eo}"),
        run: Box::new(move || {
            let got = vacuum_expectation_series(&*l, eo);
            let want: Vec<GaussianRational> = (0..=eo).map(|p| GaussianRational::from_int([1, 0, -1].get(p).copied().unwrap_or(0))).collect();
            let shown: Vec<String> = got.iter().map(|c| c.to_string()).collect();
            Outcome::new(got == want, json!({ "order": eo, "y": y1, "coefficients": shown }))
        }),
    });
    let ps = 4;
    let l = lat.clone();
    cases.push(Case {
        id: format!("hbz-hsupp-p{ps}"),
        run: Box::new(move || {
            let found = hsupp_check(&*l, ps, &l.fock_panel());
            Outcome::from_counterexample(found, json!({ "max_p": ps, "panel": l.fock_panel().len() }))
        }),
    });
    let l = lat.clone();
    cases.push(Case {
        id: "hbz-R-disjoint-identity".into(),
        run: Box::new(move || {
            let found = r_adjoint_disjoint_check(&*l, &mut case_rng(seed, "hbz-R-disjoint-identity"), 6);
            Outcome::from_counterexample(found, json!({ "operators": 6 }))
        }),
    });
    for p in 0..=2i64 {
        let l = lat.clone();
        cases.push(Case {
            id: format!("hPhi-hPsi-p{p}-order{order}"),
            run: Box::new(move || {
                let panel: Vec<_> = l.fock_panel().into_iter().map(|(_, x)| x).collect();
                Outcome::new(conjugation_check(&*l, p, order, &panel), json!({ "p": p, "order": order, "panel": panel.len() }))
            }),
        });
    }
    let l = lat.clone();
    cases.push(Case {
        id: format!("formulah-normal-ordered-order{order}"),
        run: Box::new(move || {
            let panel: Vec<_> = l.fock_panel().into_iter().map(|(_, x)| x).collect();
            let ok = bosonization_check(&*l, order, &panel, BosonForm::NormalOrdered);
            Outcome::new(ok, json!({ "order": order, "panel": panel.len() }))
        }),
    });
    let l = lat.clone();
    cases.push(Case {
        id: "formulah-literal-prefactor".into(),
        run: Box::new(move || {
            let vac: Vec<String> = bosonized_vacuum_expectation(&*l, 4, BosonForm::Literal).iter().map(|c| c.to_string()).collect();
            Outcome {
                status: Status::Skip,
                details: json!({
                    "reason": "prefactor times the plain exponential is inconsistent with the vacuum expectation",
                    "vacuum_coefficients": vac,
                }),
            }
        }),
    });
    for w in 0..=cfg.weight {
        let y = y.clone();
        cases.push(Case {
            id: format!("independence-tmono-rank-w{w}"),
            run: Box::new(move || {
                if w >= 5 && !heavy {
                    return Outcome::skip("weight 5 needs --heavy");
                }
                let expect: usize = (0..=w).map(|k| partitions(k).len()).sum();
                match schur_monomial_rank(w, y.clone()) {
                    Ok(r) => Outcome::new(r.rank == expect, json!({ "weight": w, "expected": expect, "result": r })),
                    Err(e) => Outcome::error(e),
                }
            }),
        });
    }
}

/// Runs every registered case for the configured suite, concurrently; the
/// returned verdicts are in registration order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<VerdictRecord>, HarnessError> {
    cfg.validate()?;
    let mut cases = Vec::new();
    if cfg.suite.includes(Suite::Fock) {
        fock_cases(cfg, &mut cases);
    }
    if cfg.suite.includes(Suite::Lr) {
        lr_cases(cfg, &mut cases);
    }
    if cfg.suite.includes(Suite::Basis) {
        basis_cases(cfg, &mut cases);
    }
    if cfg.suite.includes(Suite::Lattice) {
        lattice_cases(cfg, &mut cases);
    }
    let reproducer = cfg.reproducer();
    Ok(cases
        .par_iter()
        .map(|c| {
            let o = (c.run)();
            VerdictRecord {
                id: c.id.clone(),
                status: o.status,
                reproducer: (o.status == Status::Fail).then(|| reproducer.clone()),
                details: o.details,
            }
        })
        .collect())
}

pub fn build_report(cfg: &SuiteConfig, verdicts: Vec<VerdictRecord>) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        passed: verdicts.iter().all(|v| v.status != Status::Fail),
        verdicts,
    }
}

/// Writes the report through a sibling temporary file and a rename.
pub fn write_report(report: &Report, path: &Path) -> Result<(), HarnessError> {
    let text = serde_json::to_string_pretty(report)?;
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.write_all(b"\n")?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<Report, HarnessError> {
    let report: Report = serde_json::from_str(&fs::read_to_string(path)?)?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(HarnessError::Usage(format!("schema version {} not supported", report.schema_version)));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandKind {
    Bj,
    Family,
    HstarMonomial,
    Lr,
}

impl FromStr for ExpandKind {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "bj" => Ok(ExpandKind::Bj),
            "family" => Ok(ExpandKind::Family),
            "hstar-monomial" => Ok(ExpandKind::HstarMonomial),
            "lr" => Ok(ExpandKind::Lr),
            _ => Err(HarnessError::Usage(format!("unknown expansion `{s}`"))),
        }
    }
}

/// Parameters of `expand`: `n` and `j` for `bj`/`family`/`lr` (`j.len()` is
/// `l` for `lr`); `j` is the partition for `hstar-monomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandRequest {
    pub kind: ExpandKind,
    pub n: u32,
    pub j: Vec<u32>,
    pub y: String,
}

/// Canonical text plus a JSON view of the same object.
pub fn expand(req: &ExpandRequest) -> Result<(String, Value), HarnessError> {
    let usage = |e: &dyn fmt::Display| HarnessError::Usage(e.to_string());
    match req.kind {
        ExpandKind::Bj => {
            let j = SubsetIndex::from_set(req.j.clone()).map_err(|e| usage(&e))?;
            let v = build_bj(req.n, &j)?;
            let text = v.to_string();
            Ok((text.clone(), json!({ "n": req.n, "j": j, "value": text })))
        }
        ExpandKind::Family => {
            if req.n > MAX_N {
                return Err(HarnessError::Usage(format!("n = {} outside 1..={MAX_N}", req.n)));
            }
            let family = build_family(req.n)?;
            let mut lines = Vec::new();
            let mut records = Vec::new();
            for e in &family {
                let value = e.value.to_string();
                lines.push(format!("J={} M={} N={}: {value}", e.j, e.m, e.n));
                records.push(json!({ "j": e.j, "m": e.m, "n": e.n, "value": value }));
            }
            Ok((lines.join("\n"), json!({ "n": req.n, "elements": records })))
        }
        ExpandKind::HstarMonomial => {
            let w: u32 = req.j.iter().sum();
            if w as usize > MAX_WEIGHT {
                return Err(HarnessError::Usage(format!("weight {w} outside 0..={MAX_WEIGHT}")));
            }
            let y: GaussianRational = req.y.parse().map_err(|e| usage(&e))?;
            let lat = FreeFermionLattice::at(y)?;
            let mut parts = req.j.clone();
            parts.sort_unstable();
            let mut x = lat.vacuum();
            for &p in &parts {
                x = lat.hstar_coeff(p as usize, &x);
            }
            let text = lat.trim(&x).to_string();
            Ok((text.clone(), json!({ "partition": req.j, "y": req.y, "value": text })))
        }
        ExpandKind::Lr => {
            if req.n > 6 || req.j.len() > 3 {
                return Err(HarnessError::Usage("lr needs cap ≤ 6 and l ≤ 3".into()));
            }
            let l = req.j.first().copied().unwrap_or(1) as usize;
            let csv = lr_series(l, req.n).to_csv();
            Ok((csv.clone(), json!({ "l": l, "cap": req.n, "csv": csv })))
        }
    }
}

/// Applies `FBASIS_HEAVY` to a configuration built elsewhere.
pub fn with_env(mut cfg: SuiteConfig) -> SuiteConfig {
    cfg.heavy |= heavy_from_env();
    cfg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            n: 1,
            order: 1,
            window: 2,
            weight: 1,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Fock, Suite::Lr, Suite::Basis, Suite::Lattice, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn caps_are_validated() {
        assert!(SuiteConfig { n: 5, ..SuiteConfig::default() }.validate().is_err());
        assert!(SuiteConfig { order: 5, ..SuiteConfig::default() }.validate().is_err());
        assert!(SuiteConfig { y: "x".into(), ..SuiteConfig::default() }.validate().is_err());
        assert!(SuiteConfig::default().validate().is_ok());
    }

    #[test]
    fn smallest_caps_pass_and_cover_the_manifest() {
        let cfg = small(Suite::All);
        let v = run_suite(&cfg).unwrap();
        let failed: Vec<_> = v.iter().filter(|r| r.status == Status::Fail).map(|r| r.id.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(coverage_gaps(Suite::All, &v), Vec::<&str>::new());
    }

    #[test]
    fn reports_are_reproducible_and_round_trip() {
        let cfg = small(Suite::Fock);
        let a = build_report(&cfg, run_suite(&cfg).unwrap());
        let b = build_report(&cfg, run_suite(&cfg).unwrap());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let dir = std::env::temp_dir().join(format!("fbasis-harness-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("r.json");
        write_report(&a, &path).unwrap();
        assert_eq!(read_report(&path).unwrap(), a);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn singular_y_is_redrawn() {
        let cfg = SuiteConfig { y: "1".into(), ..small(Suite::Lattice) };
        let (_, y) = lattice_at(&cfg).unwrap();
        assert_ne!(y, GaussianRational::from_int(1));
    }

    #[test]
    fn expansions_parse_back() {
        let req = ExpandRequest { kind: ExpandKind::Bj, n: 4, j: vec![3, 4], y: "3".into() };
        let (text, _) = expand(&req).unwrap();
        assert_eq!(text.parse::<FockVector>().unwrap(), word_sum("c*2 c*1 b*2 b*1").unwrap());
        let req = ExpandRequest { kind: ExpandKind::Bj, n: 2, j: vec![], y: "3".into() };
        assert_eq!(expand(&req).unwrap().0.parse::<FockVector>().unwrap(), word_sum("b*2 b*1").unwrap());
        let req = ExpandRequest { kind: ExpandKind::Family, n: 1, j: vec![], y: "3".into() };
        assert_eq!(expand(&req).unwrap().1["elements"].as_array().unwrap().len(), 4);
        let req = ExpandRequest { kind: ExpandKind::HstarMonomial, n: 0, j: vec![1], y: "3".into() };
        assert!(expand(&req).unwrap().0.starts_with("spin 0"));
        let req = ExpandRequest { kind: ExpandKind::Bj, n: 2, j: vec![5], y: "3".into() };
        assert!(expand(&req).is_err());
    }
}
