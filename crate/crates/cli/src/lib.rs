//! Command runners behind the `superdescent` binary.
//!
//! Every run produces a [`Report`]: the configuration it was computed from
//! (curve and `W` data inline), a SHA-256 of that configuration, and the
//! result. The result depends only on the configuration, so a report can be
//! re-verified by re-running it, see [`verify_report`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use superdescent::arith::primes_up_to;
use superdescent::curvecount::{bounded_point_search, count_points, zeta_of_curve, PointSearch};
use superdescent::descent::{
    dw_enumerate, find_rank0_twists, grow_selmer, selmer_ambient_bound, spec_poly, CurveSpec, DensityReport,
    GrowthReport, RootData, SelmerBound, SuperellipticCurve,
};
use superdescent::nftools::{
    cubic_twist_admissible, dw_member_nf, verify_fermat_model, CubicAdmissibility, FermatReport, WEntry,
};
use superdescent::symbols::{reciprocity_sweep, SweepReport};
use superdescent::{Error, PolyFq};

pub const SCHEMA: &str = "superdescent-report/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 3 for search exhaustion, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Exhausted(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// One subcommand with all of its inputs resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    Reciprocity {
        q: u64,
        r: u32,
        n: u64,
        maxdeg: usize,
    },
    Density {
        curve: CurveSpec,
        maxdeg: usize,
        /// Polynomials over `k'` as element encodings, low degree first.
        w: Vec<Vec<i64>>,
    },
    FindTwists {
        curve: CurveSpec,
        maxdeg: usize,
        bound: Option<usize>,
    },
    GrowSelmer {
        curve: CurveSpec,
        steps: usize,
        maxdeg: usize,
    },
    CubicAdmissible {
        amax: u64,
    },
    FermatCheck {
        ell: u64,
        d: i64,
    },
    DwNf {
        f: Vec<i64>,
        w: Vec<WEntry>,
        qmax: u64,
        ell: u64,
    },
}

impl Command {
    fn tabular(&self) -> bool {
        matches!(self, Command::Density { .. } | Command::DwNf { .. })
    }
}

/// Overrides applied to the curve file before it is embedded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overrides {
    pub q: Option<u64>,
    pub r: Option<u32>,
    pub ell: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, mut spec: CurveSpec) -> CurveSpec {
        if let Some(q) = self.q {
            spec.q = q;
        }
        if let Some(r) = self.r {
            spec.r = r;
        }
        if let Some(ell) = self.ell {
            spec.ell = ell;
        }
        spec
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub curve_path: Option<String>,
    #[serde(default)]
    pub overrides: Overrides,
    pub seed: u64,
    #[serde(default)]
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            curve_path: None,
            overrides: Overrides::default(),
            seed: 0,
            format: Format::Json,
        }
    }

    /// Hex SHA-256 of the compact JSON encoding.
    pub fn hash(&self) -> CliResult<String> {
        let bytes = serde_json::to_vec(self)?;
        Ok(format!("{:x}", Sha256::digest(bytes)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Status {
    pub exit_code: i32,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub seed: u64,
    pub config: RunConfig,
    pub config_hash: String,
    pub status: Status,
    pub result: Value,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_curve(path: &Path, overrides: &Overrides) -> CliResult<CurveSpec> {
    let spec: CurveSpec = read_json(path)?;
    Ok(overrides.apply(spec))
}

fn build_curve(spec: &CurveSpec) -> CliResult<SuperellipticCurve> {
    Ok(spec.build()?)
}

pub fn cmd_reciprocity(q: u64, r: u32, n: u64, maxdeg: usize) -> CliResult<SweepReport> {
    let field = superdescent::descent::spec_field(q, r)?;
    if (field.size() - 1) % n != 0 {
        return Err(CliError::Usage(format!("n = {n} does not divide q^r - 1 = {}", field.size() - 1)));
    }
    Ok(reciprocity_sweep(&field, n, maxdeg)?)
}

pub fn cmd_density(spec: &CurveSpec, maxdeg: usize, w: &[Vec<i64>]) -> CliResult<DensityReport> {
    let curve = build_curve(spec)?;
    let w = match curve.root_data() {
        RootData::ConstIrreducible { ext, .. } => w
            .iter()
            .map(|c| spec_poly(ext.ext(), c))
            .collect::<superdescent::Result<Vec<PolyFq>>>()?,
        _ if w.is_empty() => Vec::new(),
        other => {
            return Err(CliError::Usage(format!(
                "density tables need a constant irreducible f, got {} f",
                other.kind()
            )))
        }
    };
    Ok(dw_enumerate(maxdeg, &w, &curve)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistEntry {
    pub d: String,
    pub support: Vec<(String, u32)>,
    pub dim_sj: usize,
    pub dim_sd: usize,
    pub selmer: SelmerBound,
    pub points: Option<PointSearch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FindTwistsResult {
    pub maxdeg: usize,
    pub genus: usize,
    /// `#C(k)`.
    pub curve_points: u64,
    pub l_poly: Vec<i128>,
    /// `#E(k) = P(1)` for the constant Jacobian `E`.
    pub jacobian_order: i128,
    pub twists: Vec<TwistEntry>,
}

pub fn cmd_find_twists(
    spec: &CurveSpec,
    maxdeg: usize,
    bound: Option<usize>,
) -> CliResult<(FindTwistsResult, Vec<String>)> {
    let curve = build_curve(spec)?;
    let zeta = zeta_of_curve(&curve)?;
    let curve_points = count_points(&curve, 1)?;
    let mut violations = Vec::new();
    if zeta.genus == 1 && curve_points as i128 != zeta.jacobian_order {
        violations.push(format!("#C(k) = {curve_points} but P(1) = {}", zeta.jacobian_order));
    }
    let mut twists = Vec::new();
    for t in find_rank0_twists(&curve, maxdeg)? {
        let param = t.param.clone().expect("search results carry their twist");
        let selmer = selmer_ambient_bound(&curve, &param)?;
        if selmer.dim != 0 {
            violations.push(format!("D = {}: Selmer bound {} with equal kernels", t.d, selmer.dim));
        }
        let points = match bound {
            Some(b) => {
                let found = bounded_point_search(&curve.twist_by(&param)?, b)?;
                if param.degree() > 0 && found.total as i128 > zeta.jacobian_order {
                    violations.push(format!(
                        "D = {}: {} points of height ≤ {b} exceed #E(k) = {}",
                        t.d, found.total, zeta.jacobian_order
                    ));
                }
                Some(found)
            }
            None => None,
        };
        twists.push(TwistEntry {
            d: t.d,
            support: t.support,
            dim_sj: t.comparison.dim_sj,
            dim_sd: t.comparison.dim_sd,
            selmer,
            points,
        });
    }
    Ok((
        FindTwistsResult {
            maxdeg,
            genus: zeta.genus,
            curve_points,
            l_poly: zeta.l_poly,
            jacobian_order: zeta.jacobian_order,
            twists,
        },
        violations,
    ))
}

pub fn cmd_grow_selmer(spec: &CurveSpec, steps: usize, maxdeg: usize) -> CliResult<GrowthReport> {
    Ok(grow_selmer(&build_curve(spec)?, steps, maxdeg)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicResult {
    pub amax: u64,
    pub admissible: Vec<u64>,
    pub rows: Vec<CubicAdmissibility>,
}

pub fn cmd_cubic_admissible(amax: u64) -> CubicResult {
    let rows: Vec<CubicAdmissibility> = (1..=amax).map(cubic_twist_admissible).collect();
    CubicResult {
        amax,
        admissible: rows.iter().filter(|r| r.admissible).map(|r| r.a).collect(),
        rows,
    }
}

pub fn cmd_fermat_check(ell: u64, d: i64) -> CliResult<FermatReport> {
    Ok(verify_fermat_model(ell, d)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Member,
    Nonmember,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DwRow {
    pub q: u64,
    pub status: Membership,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DwNfResult {
    pub ell: u64,
    pub qmax: u64,
    pub members: Vec<u64>,
    pub rows: Vec<DwRow>,
}

/// Membership of every prime `q ≤ qmax` in `𝒟_W`; primes dividing `ℓΔ_f` or
/// meeting a `W` element are skipped with a note.
pub fn cmd_dw_nf(f: &[i64], w: &[WEntry], qmax: u64, ell: u64) -> CliResult<DwNfResult> {
    let mut rows = Vec::new();
    for q in primes_up_to(qmax) {
        let (status, note) = match dw_member_nf(q, w, f, ell) {
            Ok(true) => (Membership::Member, String::new()),
            Ok(false) => (Membership::Nonmember, String::new()),
            Err(Error::NotCoprime(msg)) => (Membership::Skipped, msg),
            Err(e) => return Err(e.into()),
        };
        rows.push(DwRow { q, status, note });
    }
    Ok(DwNfResult {
        ell,
        qmax,
        members: rows.iter().filter(|r| r.status == Membership::Member).map(|r| r.q).collect(),
        rows,
    })
}

fn to_value<T: Serialize>(x: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(x)?)
}

/// Run the configured command and wrap the result in a report.
pub fn run(config: &RunConfig) -> CliResult<Report> {
    if config.format == Format::Csv && !config.command.tabular() {
        return Err(CliError::Usage("CSV output is only available for density and dw-nf".into()));
    }
    let mut violations = Vec::new();
    let result = match &config.command {
        Command::Reciprocity { q, r, n, maxdeg } => {
            let rep = cmd_reciprocity(*q, *r, *n, *maxdeg)?;
            violations.extend(rep.violations.iter().map(|(g, h)| format!("({g}, {h})")));
            to_value(&rep)?
        }
        Command::Density { curve, maxdeg, w } => to_value(&cmd_density(curve, *maxdeg, w)?)?,
        Command::FindTwists { curve, maxdeg, bound } => {
            let (rep, v) = cmd_find_twists(curve, *maxdeg, *bound)?;
            violations = v;
            to_value(&rep)?
        }
        Command::GrowSelmer { curve, steps, maxdeg } => {
            let rep = cmd_grow_selmer(curve, *steps, *maxdeg)?;
            for (i, s) in rep.steps.iter().enumerate() {
                if !s.certified {
                    violations.push(format!("step {} (D = {}) is not certified", i + 1, s.d));
                }
            }
            to_value(&rep)?
        }
        Command::CubicAdmissible { amax } => to_value(&cmd_cubic_admissible(*amax))?,
        Command::FermatCheck { ell, d } => {
            let rep = cmd_fermat_check(*ell, *d)?;
            if !rep.verified {
                violations.push(format!("Fermat model for ℓ = {ell}, D = {d} does not verify"));
            }
            to_value(&rep)?
        }
        Command::DwNf { f, w, qmax, ell } => to_value(&cmd_dw_nf(f, w, *qmax, *ell)?)?,
    };
    Ok(Report {
        schema: SCHEMA.to_string(),
        seed: config.seed,
        config: config.clone(),
        config_hash: config.hash()?,
        status: Status {
            exit_code: if violations.is_empty() { 0 } else { 1 },
            violations,
        },
        result,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Render a report in the configured format.
pub fn render(report: &Report) -> CliResult<String> {
    match report.config.format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let columns: &[&str] = match report.config.command {
                Command::Density { .. } => &["degree", "primes", "members", "excluded", "fraction"],
                _ => &["q", "status", "note"],
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(columns)?;
            let rows = report.result["rows"].as_array().cloned().unwrap_or_default();
            for row in &rows {
                w.write_record(columns.iter().map(|c| cell(&row[*c])))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("CSV of UTF-8 cells"))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub config_hash_ok: bool,
    pub identical: bool,
}

/// Re-run a JSON report from its embedded configuration and compare the
/// rendering byte for byte.
pub fn verify_report(text: &str) -> CliResult<Verification> {
    let stored: Report = serde_json::from_str(text)?;
    if stored.schema != SCHEMA {
        return Err(CliError::Usage(format!("unknown report schema {}", stored.schema)));
    }
    let fresh = run(&stored.config)?;
    Ok(Verification {
        config_hash_ok: stored.config_hash == stored.config.hash()?,
        identical: render(&fresh)? == text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_cubic() -> CurveSpec {
        CurveSpec {
            q: 3,
            r: 1,
            ell: 2,
            f: vec![vec![1], vec![2], vec![0], vec![1]],
            designated_root: None,
        }
    }

    #[test]
    fn reciprocity_examples() {
        assert!(cmd_reciprocity(3, 1, 2, 4).unwrap().violations.is_empty());
        assert!(cmd_reciprocity(4, 1, 3, 3).unwrap().violations.is_empty());
        let err = cmd_reciprocity(3, 1, 3, 2).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn density_rows() {
        let rep = cmd_density(&constant_cubic(), 1, &[]).unwrap();
        assert_eq!(rep.rows.len(), 1);
        let rep = cmd_density(&constant_cubic(), 6, &[]).unwrap();
        let fr: Vec<f64> = rep.rows.iter().map(|r| r.fraction).collect();
        assert_eq!(fr, vec![1.0, 1.0, 0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn find_twists_degree_zero() {
        let (rep, v) = cmd_find_twists(&constant_cubic(), 0, Some(1)).unwrap();
        assert!(v.is_empty());
        assert_eq!(rep.twists.len(), 1);
        assert_eq!(rep.twists[0].d, "1");
        assert_eq!(rep.jacobian_order, 7);
    }

    #[test]
    fn cubic_admissible_examples() {
        let r = cmd_cubic_admissible(50);
        assert!(r.admissible.contains(&1) && r.admissible.contains(&37));
        assert!(!r.admissible.contains(&25));
        assert!(cmd_cubic_admissible(0).admissible.is_empty());
    }

    #[test]
    fn fermat_examples() {
        assert!(cmd_fermat_check(3, 1).unwrap().verified);
        assert!(cmd_fermat_check(5, 1).unwrap().verified);
        assert!(cmd_fermat_check(2, 1).is_err());
    }

    #[test]
    fn dw_nf_examples() {
        let r = cmd_dw_nf(&[-2, 0, 0, 1], &[], 50, 2).unwrap();
        assert!(r.members.contains(&7));
        assert!(!r.members.contains(&5));
        let row3 = r.rows.iter().find(|x| x.q == 3).unwrap();
        assert_eq!(row3.status, Membership::Skipped);
        assert!(r.rows.iter().any(|x| x.q == 2 && x.status == Membership::Skipped));
    }

    #[test]
    fn reports_are_deterministic_and_verify() {
        let mut cfg = RunConfig::new(Command::GrowSelmer {
            curve: CurveSpec {
                q: 3,
                r: 1,
                ell: 2,
                f: vec![vec![0], vec![0, 1], vec![-1, -1], vec![1]],
                designated_root: None,
            },
            steps: 1,
            maxdeg: 8,
        });
        cfg.seed = 17;
        let a = render(&run(&cfg).unwrap()).unwrap();
        let b = render(&run(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        let v = verify_report(&a).unwrap();
        assert!(v.config_hash_ok && v.identical);
        let tampered = a.replacen("\"certified\": true", "\"certified\": false", 1);
        assert!(!verify_report(&tampered).unwrap().identical);
    }

    #[test]
    fn csv_only_for_tables() {
        let mut cfg = RunConfig::new(Command::CubicAdmissible { amax: 5 });
        cfg.format = Format::Csv;
        assert_eq!(run(&cfg).unwrap_err().exit_code(), 2);
        let mut cfg = RunConfig::new(Command::DwNf {
            f: vec![-2, 0, 0, 1],
            w: vec![],
            qmax: 20,
            ell: 2,
        });
        cfg.format = Format::Csv;
        let out = render(&run(&cfg).unwrap()).unwrap();
        assert!(out.starts_with("q,status,note\n2,skipped,"));
    }
}
