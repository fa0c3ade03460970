use std::collections::BTreeMap;

use ff_linalg::PrimeField;
use flag_engine::{
    count_fixed_points, count_points, degree_bound, poincare_with, split_primes, Budget, CountMode, FlagError, Holdout,
};
use ideal_combinatorics::{dim_flag_variety, dual_c, elementary_ideal_sequence, is_self_dual, max_c, ElementaryIdeal};
use nilpotent_core::is_distinguished;
use paving_engine::{pave_fixed_locus, PavingCertificate, PavingOptions};
use serde::Serialize;

use crate::instance::{InstanceFile, Mode, SpecRecord};
use crate::CliError;

/// Run parameters after command-line overrides.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub budget: Budget,
    pub holdout: Option<u64>,
}

/// Files to write, in order, and the failure to report once they are written.
#[derive(Debug, Default)]
pub struct Report {
    pub files: Vec<(String, Vec<u8>)>,
    pub failure: Option<CliError>,
}

fn field(q: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(q).map_err(|e| CliError::Input(format!("q = {q}: {e}")))
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

fn csv_bytes<R: Serialize>(rows: &[R]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("flat record");
    }
    w.into_inner().expect("in-memory writer")
}

fn sorted_primes(q_list: &[u64]) -> Result<Vec<u64>, CliError> {
    if q_list.is_empty() {
        return Err(CliError::Input("q_list is empty".into()));
    }
    let mut qs = q_list.to_vec();
    qs.sort_unstable();
    qs.dedup();
    Ok(qs)
}

pub fn execute(instance: &InstanceFile, settings: Settings) -> Result<Report, CliError> {
    let specs: Vec<(String, &SpecRecord)> = instance.specs.iter().enumerate().map(|(i, s)| (s.id(i), s)).collect();
    match instance.mode {
        Mode::Count | Mode::FixedCount => count(instance, &specs, settings),
        Mode::Poincare => poincare(instance, &specs, settings),
        Mode::Pave => pave(&specs, settings),
        Mode::ClassifyIdeal => classify(&specs),
        Mode::Validate => validate(&specs),
    }
}

#[derive(Serialize)]
struct CountRow<'a> {
    spec_id: &'a str,
    q: u64,
    count: u64,
}

fn count(instance: &InstanceFile, specs: &[(String, &SpecRecord)], settings: Settings) -> Result<Report, CliError> {
    let qs = sorted_primes(&instance.q_list)?;
    let mut rows = Vec::new();
    for (id, record) in specs {
        let variety = record.variety_spec().and_then(|s| Ok(s.variety()?)).map_err(|e| e.context(id))?;
        for &q in &qs {
            let f = field(q)?;
            let n = if instance.mode == Mode::Count {
                count_points(&variety, f, settings.budget)
            } else {
                count_fixed_points(&variety, f, &[], settings.budget)
            }
            .map_err(|e| CliError::from(e).context(id))?;
            rows.push(CountRow { spec_id: id, q, count: n });
        }
    }
    Ok(Report { files: vec![("count.csv".into(), csv_bytes(&rows))], failure: None })
}

#[derive(Serialize)]
struct PolynomialRecord {
    id: String,
    coefficients: Vec<i64>,
    display: String,
    dim: usize,
    samples: BTreeMap<u64, u64>,
    holdout: Option<Holdout>,
    holdout_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn poincare(instance: &InstanceFile, specs: &[(String, &SpecRecord)], settings: Settings) -> Result<Report, CliError> {
    let mode = instance.count_mode.unwrap_or(CountMode::Full);
    let mut records = Vec::new();
    let mut failure = None;
    for (id, record) in specs {
        let variety = record.variety_spec().and_then(|s| Ok(s.variety()?)).map_err(|e| e.context(id))?;
        let d = degree_bound(&variety, mode);
        let holdout = settings.holdout.or(instance.holdout_prime);
        let primes: Vec<u64> = if instance.q_list.is_empty() {
            split_primes(variety.realization()).filter(|&q| Some(q) != holdout).take(d + 2).collect()
        } else {
            sorted_primes(&instance.q_list)?
        };
        let (fit, auto_holdout) = if instance.q_list.is_empty() {
            (&primes[..d + 1], primes.get(d + 1).copied())
        } else {
            (&primes[..], None)
        };
        let holdout = holdout.or(auto_holdout);
        match poincare_with(&variety, mode, &[], fit, holdout, settings.budget) {
            Ok(p) => {
                let ok = p.holdout_ok();
                if !ok {
                    failure.get_or_insert(CliError::Invariant(format!("spec {id}: holdout count does not match")));
                }
                records.push(PolynomialRecord {
                    id: id.clone(),
                    display: p.display(),
                    coefficients: p.coefficients,
                    dim: p.degree_bound,
                    samples: p.samples,
                    holdout: p.holdout,
                    holdout_ok: ok,
                    direct: None,
                    error: None,
                });
            }
            Err(FlagError::NonIntegral(c)) => {
                let msg = format!("interpolated coefficient {c} is not an integer");
                failure.get_or_insert(CliError::Invariant(format!("spec {id}: {msg}")));
                records.push(PolynomialRecord {
                    id: id.clone(),
                    coefficients: Vec::new(),
                    display: String::new(),
                    dim: d,
                    samples: BTreeMap::new(),
                    holdout: None,
                    holdout_ok: false,
                    direct: None,
                    error: Some(msg),
                });
            }
            Err(e) => return Err(CliError::from(e).context(id)),
        }
    }
    Ok(Report { files: vec![("poincare.json".into(), json(&records))], failure })
}

#[derive(Serialize)]
struct CertificateRecord<'a> {
    id: &'a str,
    certificate: &'a PavingCertificate,
}

#[derive(Serialize)]
struct AuditCsvRow<'a> {
    spec_id: &'a str,
    node: &'a str,
    stratum: &'a str,
    q: u64,
    check: &'a str,
    checked: u64,
    failed: u64,
}

fn pave(specs: &[(String, &SpecRecord)], settings: Settings) -> Result<Report, CliError> {
    let options = PavingOptions { budget: settings.budget, holdout: settings.holdout, ..Default::default() };
    let mut outcomes = Vec::new();
    for (id, record) in specs {
        let spec = record.variety_spec().map_err(|e| e.context(id))?;
        let outcome = pave_fixed_locus(&spec, &options).map_err(|e| CliError::from(e).context(id))?;
        outcomes.push((id.as_str(), outcome));
    }
    let certificates: Vec<CertificateRecord> =
        outcomes.iter().map(|(id, o)| CertificateRecord { id, certificate: &o.certificate }).collect();
    let polynomials: Vec<PolynomialRecord> = outcomes
        .iter()
        .map(|(id, o)| {
            let p = &o.certificate.polynomial;
            PolynomialRecord {
                id: id.to_string(),
                coefficients: p.coefficients.clone(),
                display: p.display(),
                dim: p.degree_bound,
                samples: p.samples.clone(),
                holdout: p.holdout.clone(),
                holdout_ok: p.holdout_ok(),
                direct: o.certificate.direct.as_ref().map(|d| d.coefficients.clone()),
                error: None,
            }
        })
        .collect();
    let audit: Vec<AuditCsvRow> = outcomes
        .iter()
        .flat_map(|(id, o)| {
            o.audit.iter().map(move |a| AuditCsvRow {
                spec_id: id,
                node: &a.node,
                stratum: &a.stratum,
                q: a.q,
                check: &a.check,
                checked: a.checked,
                failed: a.failed,
            })
        })
        .collect();
    let failure = outcomes.iter().find(|(_, o)| !o.certificate.is_clean()).map(|(id, o)| {
        let v = &o.certificate.violations;
        CliError::Invariant(format!(
            "spec {id}: {} violation(s); first: {} at node {} ({}), q = {}: {}",
            v.len(),
            v[0].check,
            v[0].node,
            v[0].stratum,
            v[0].q,
            v[0].detail
        ))
    });
    Ok(Report {
        files: vec![
            ("certificate.json".into(), json(&certificates)),
            ("poincare.json".into(), json(&polynomials)),
            ("audit.csv".into(), csv_bytes(&audit)),
        ],
        failure,
    })
}

#[derive(Serialize)]
struct RootRecord {
    root: Vec<i32>,
    #[serde(flatten)]
    ideal: ElementaryIdeal,
}

#[derive(Serialize)]
struct ClassifyRecord {
    id: String,
    roots: Vec<RootRecord>,
    c: Vec<usize>,
    dual: Option<Vec<usize>>,
    self_dual: Option<bool>,
}

fn classify(specs: &[(String, &SpecRecord)]) -> Result<Report, CliError> {
    let mut out = Vec::new();
    for (id, record) in specs {
        let shape = record.shape().map_err(|e| e.context(id))?;
        if record.roots.is_empty() {
            return Err(CliError::Input(format!("spec {id}: classify-ideal needs a nonempty `roots` list")));
        }
        let mut roots = Vec::new();
        let mut c: Option<Vec<usize>> = None;
        for alpha in &record.roots {
            let ideal = elementary_ideal_sequence(alpha, &shape).map_err(|e| CliError::from(e).context(id))?;
            c = Some(match c {
                None => ideal.c().clone(),
                Some(prev) => max_c(&prev, ideal.c()).map_err(|e| CliError::from(e).context(id))?,
            });
            roots.push(RootRecord { root: alpha.clone(), ideal });
        }
        let c = c.expect("nonempty roots");
        let (dual, self_dual) = if shape.form.has_form() {
            let dual = dual_c(&c, shape.k()).map_err(|e| CliError::from(e).context(id))?;
            (Some(dual), Some(is_self_dual(&c)))
        } else {
            (None, None)
        };
        out.push(ClassifyRecord { id: id.clone(), roots, c, dual, self_dual });
    }
    Ok(Report { files: vec![("classify.json".into(), json(&out))], failure: None })
}

#[derive(Serialize)]
struct ValidateRecord {
    id: String,
    m: usize,
    k: usize,
    dim_flag_variety: usize,
    distinguished: Option<bool>,
    self_dual: Option<bool>,
}

fn validate(specs: &[(String, &SpecRecord)]) -> Result<Report, CliError> {
    let mut out = Vec::new();
    for (id, record) in specs {
        let shape = record.shape().map_err(|e| e.context(id))?;
        let (distinguished, self_dual) = if record.parts.is_empty() {
            (None, None)
        } else {
            let spec = record.variety_spec().map_err(|e| e.context(id))?;
            spec.variety().map_err(|e| CliError::from(e).context(id))?;
            (Some(is_distinguished(&spec.jordan)), shape.form.has_form().then(|| is_self_dual(&spec.ideal)))
        };
        out.push(ValidateRecord {
            id: id.clone(),
            m: shape.m,
            k: shape.k(),
            dim_flag_variety: dim_flag_variety(&shape),
            distinguished,
            self_dual,
        });
    }
    Ok(Report { files: vec![("validate.json".into(), json(&out))], failure: None })
}
