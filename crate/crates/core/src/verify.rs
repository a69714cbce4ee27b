//! The identity suite: a manifest of expression identities, evaluated and
//! checked exactly, plus the ordered replay of the 3x3 argument.

use std::path::Path;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{is_central, is_normal_qcentral};
use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::pbw::{Algebra, Shape};

const DEFAULT_MANIFEST: &str = include_str!("../data/identities.toml");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `lhs - rhs` normalizes to zero.
    #[default]
    Equal,
    /// `lhs` q-commutes with every generator.
    Normal,
    /// `lhs` commutes with every generator.
    Central,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    pub name: String,
    /// Column count; also the row count unless `m` is given.
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub lhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default)]
    pub check: CheckKind,
    pub anchor: String,
    #[serde(default)]
    pub replay: bool,
}

impl IdentityRecord {
    pub fn shape(&self) -> Result<Shape> {
        Shape::new(self.m.unwrap_or(self.n), self.n)
    }

    fn parsed(&self) -> Result<(Expr, Option<Expr>)> {
        let wrap = |side: &str, e: Error| Error::Manifest(format!("record '{}', {side}: {e}", self.name));
        let lhs = expr::parse(&self.lhs).map_err(|e| wrap("lhs", e))?;
        let rhs = self.rhs.as_deref().map(expr::parse).transpose().map_err(|e| wrap("rhs", e))?;
        match (self.check, &rhs) {
            (CheckKind::Equal, None) => Err(Error::Manifest(format!("record '{}' needs an rhs", self.name))),
            (CheckKind::Normal | CheckKind::Central, Some(_)) => Err(Error::Manifest(format!(
                "record '{}' checks a single element and takes no rhs",
                self.name
            ))),
            _ => Ok((lhs, rhs)),
        }
    }

    /// Evaluates and checks the record in `alg`. Evaluation errors count as
    /// failures.
    pub fn run(&self, alg: &Algebra) -> RecordResult {
        let outcome = (|| -> Result<(bool, Option<String>)> {
            let (lhs, rhs) = self.parsed()?;
            let l = expr::eval(&lhs, alg)?;
            match self.check {
                CheckKind::Equal => {
                    let r = expr::eval(rhs.as_ref().expect("validated"), alg)?;
                    let residual = l.checked_sub(&r)?;
                    Ok((residual.is_zero(), Some(residual.to_string())))
                }
                CheckKind::Normal => match is_normal_qcentral(alg, &l) {
                    Ok(cert) => Ok((cert.verify(alg)?, None)),
                    Err(Error::NoUniformTwist(msg)) => Ok((false, Some(msg))),
                    Err(e) => Err(e),
                },
                CheckKind::Central => {
                    let ok = is_central(alg, &l)?;
                    let witness = (!ok)
                        .then(|| {
                            alg.shape()
                                .generators()
                                .map(|g| alg.commutator(&l, &alg.gen(g)))
                                .find(|c| c.as_ref().map_or(true, |c| !c.is_zero()))
                                .map(|c| c.map(|c| c.to_string()))
                        })
                        .flatten()
                        .transpose()?;
                    Ok((ok, witness))
                }
            }
        })();
        let (status, residual, error) = match outcome {
            Ok((true, r)) => (Status::Pass, r, None),
            Ok((false, r)) => (Status::Fail, r, None),
            Err(e) => (Status::Fail, None, Some(e.to_string())),
        };
        RecordResult {
            name: self.name.clone(),
            anchor: self.anchor.clone(),
            check: self.check,
            status,
            residual,
            error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub identity: Vec<IdentityRecord>,
}

impl Manifest {
    /// The manifest compiled into the crate.
    pub fn builtin() -> Self {
        Self::from_toml(DEFAULT_MANIFEST).expect("built-in manifest is valid")
    }

    /// Parses and validates: every expression must parse and names must be
    /// unique.
    pub fn from_toml(text: &str) -> Result<Self> {
        let m: Manifest = toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        let mut names = std::collections::HashSet::new();
        for r in &m.identity {
            if !names.insert(&r.name) {
                return Err(Error::Manifest(format!("duplicate record name '{}'", r.name)));
            }
            r.shape()?;
            r.parsed()?;
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn for_shape(&self, shape: Shape) -> Vec<&IdentityRecord> {
        self.identity
            .iter()
            .filter(|r| r.shape().is_ok_and(|s| s == shape))
            .collect()
    }

    pub fn record(&self, name: &str) -> Option<&IdentityRecord> {
        self.identity.iter().find(|r| r.name == name)
    }

    pub fn replay_steps(&self) -> Vec<&IdentityRecord> {
        self.identity.iter().filter(|r| r.replay).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordResult {
    pub name: String,
    pub anchor: String,
    pub check: CheckKind,
    pub status: Status,
    /// Canonical `lhs - rhs` for equalities; a failure witness otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub shape: String,
    /// `"exact"` or the value q was specialized to.
    pub q: String,
    pub passed: bool,
    pub results: Vec<RecordResult>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &RecordResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }
}

/// Runs `records` concurrently in `alg`; results keep the input order.
pub fn run_records(alg: &Algebra, records: &[&IdentityRecord]) -> SuiteReport {
    let results: Vec<RecordResult> = records.par_iter().map(|r| r.run(alg)).collect();
    SuiteReport {
        shape: alg.shape().to_string(),
        q: alg.specialization().map_or("exact".into(), |v| v.to_string()),
        passed: results.iter().all(|r| r.status == Status::Pass),
        results,
    }
}

/// Every record of the manifest for the square shape `n`, over Q(q).
pub fn run_identity_suite(manifest: &Manifest, n: usize) -> Result<SuiteReport> {
    let alg = Algebra::square(n)?;
    let records = manifest.for_shape(alg.shape());
    if records.is_empty() {
        return Err(Error::Manifest(format!("no records for n = {n}")));
    }
    Ok(run_records(&alg, &records))
}

/// The replay steps of the manifest, in order, in `alg`.
pub fn replay_in(alg: &Algebra, manifest: &Manifest) -> Result<SuiteReport> {
    let steps = manifest.replay_steps();
    if steps.is_empty() {
        return Err(Error::Manifest("manifest has no replay steps".into()));
    }
    if let Some(r) = steps.iter().find(|r| r.shape().ok() != Some(alg.shape())) {
        return Err(Error::ShapeMismatch(format!("replay step '{}' is not on {}", r.name, alg.shape())));
    }
    Ok(run_records(alg, &steps))
}

/// Replays the 3x3 argument over Q(q), or with q specialized to `q`.
pub fn replay_n3_proof(manifest: &Manifest, q: Option<BigRational>) -> Result<SuiteReport> {
    let shape = Shape::square(3)?;
    let alg = match q {
        Some(v) => Algebra::specialized(shape, v)?,
        None => Algebra::new(shape),
    };
    replay_in(&alg, manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RationalFunction;
    use crate::pbw::Relations;

    #[test]
    fn builtin_suite_passes() {
        let m = Manifest::builtin();
        for n in [2, 3] {
            let r = run_identity_suite(&m, n).unwrap();
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{bad:#?}");
        }
    }

    #[test]
    fn replay_exact_and_specialized() {
        let m = Manifest::builtin();
        let exact = replay_n3_proof(&m, None).unwrap();
        assert!(exact.passed);
        let special = replay_n3_proof(&m, Some(BigRational::from_integer(2.into()))).unwrap();
        assert!(special.passed);
        assert_eq!(special.q, "2");
        assert_eq!(exact.results.len(), special.results.len());
    }

    #[test]
    fn perturbed_record_fails_with_residual() {
        let mut m = Manifest::builtin();
        let rec = m.identity.iter_mut().find(|r| r.name == "minor-product-12-13").unwrap();
        rec.rhs = Some(format!("{} + Y[1,1]^3", rec.rhs.as_ref().unwrap()));
        let r = run_identity_suite(&m, 3).unwrap();
        assert!(!r.passed);
        let bad: Vec<_> = r.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].residual.as_deref(), Some("-Y[1,1]^3"));
    }

    #[test]
    fn sandboxed_relation_breaks_replay() {
        let mut rel = Relations::standard(&RationalFunction::q());
        *rel.coefficients_mut()[4] = RationalFunction::zero();
        let alg = Algebra::with_relations(Shape::square(3).unwrap(), rel);
        let r = replay_in(&alg, &Manifest::builtin()).unwrap();
        assert!(r.failures().count() > 1);
    }

    #[test]
    fn invalid_manifests() {
        let bad_expr = "[[identity]]\nname = \"x\"\nn = 2\nlhs = \"Y[1,\"\nrhs = \"1\"\nanchor = \"\"\n";
        assert!(matches!(Manifest::from_toml(bad_expr), Err(Error::Manifest(_))));
        let no_rhs = "[[identity]]\nname = \"x\"\nn = 2\nlhs = \"1\"\nanchor = \"\"\n";
        assert!(Manifest::from_toml(no_rhs).is_err());
        let dup = format!("{0}{0}", "[[identity]]\nname = \"x\"\nn = 2\nlhs = \"1\"\nrhs = \"1\"\nanchor = \"\"\n");
        assert!(Manifest::from_toml(&dup).is_err());
        assert!(Manifest::from_toml("[[identity]]\nname = 3\n").is_err());
    }
}
