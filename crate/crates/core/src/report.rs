//! Ring-independent entry points returning serializable reports; the
//! command-line tool is a thin layer over these.

use serde::Serialize;

use crate::document::{AnyModule, Codec, MatrixDocument, SubspaceDocument};
use crate::error::{Error, Result};
use crate::flock::{sweep, Flock, FlockReport, SweepOptions};
use crate::groups::{sample_points, verify_annihilator, AdditiveGroup, MultiplicativeGroup, DEFAULT_EXTENSION, DEFAULT_TORUS_PRIME};
use crate::linalg::{Level, ModuleMatrix};
use crate::matroid::{Matroid, MatroidJson};
use crate::scalars::Scalars;
use crate::valuated::{check_circuit_identity, valuated_circuits, ValuatedMatroid, ValuationJson};
use crate::{map_module, with_module};

fn right_q<S: Codec>(m: &ModuleMatrix<S>) -> Result<ModuleMatrix<S>> {
    m.as_right()
}

pub fn matroid(m: &AnyModule, base: usize) -> Result<MatroidJson> {
    with_module!(m, n => {
        let r = right_q(n)?;
        Ok(Matroid::from_matrix(r.scalars().frac(), &r.q_matrix()).to_json(base))
    })
}

pub fn lindstrom(m: &AnyModule) -> Result<ValuatedMatroid> {
    with_module!(m, n => {
        let r = right_q(n)?;
        Ok(ValuatedMatroid::lindstrom(r.scalars().frac(), &r.q_matrix()))
    })
}

pub fn lindstrom_json(m: &AnyModule, base: usize) -> Result<ValuationJson> {
    Ok(lindstrom(m)?.to_json(base))
}

pub fn dual(m: &AnyModule) -> Result<AnyModule> {
    map_module!(m, n => n.dual_module())
}

pub fn saturate(m: &AnyModule) -> Result<AnyModule> {
    map_module!(m, n => n.saturate())
}

pub fn perp(m: &AnyModule) -> Result<AnyModule> {
    map_module!(m, n => n.perp())
}

fn ambient(m: &AnyModule) -> usize {
    with_module!(m, n => n.ambient())
}

pub fn flock_slice(m: &AnyModule, alpha: &[i64]) -> Result<SubspaceDocument> {
    if alpha.len() != ambient(m) {
        return Err(Error::Dimension(format!(
            "alpha has {} entries for ambient dimension {}",
            alpha.len(),
            ambient(m)
        )));
    }
    with_module!(m, n => {
        let f = Flock::from_module(&right_q(n)?)?;
        let slice = f.slice(alpha)?;
        Ok(SubspaceDocument::new(f.field(), &slice.space))
    })
}

pub fn flock_check(m: &AnyModule, radius: i64) -> Result<FlockReport> {
    with_module!(m, n => {
        let f = Flock::from_module(&right_q(n)?)?;
        sweep(&f, radius, SweepOptions { axioms: true, consistency: true })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub count: usize,
    pub seed: u64,
    pub annihilated: bool,
}

/// Sample points of the subgroup given by the module and check that the
/// equations of its complement vanish on them.
pub fn sample_verify(m: &AnyModule, count: usize, seed: u64) -> Result<SampleReport> {
    let annihilated = match m {
        AnyModule::Skew(n) => {
            let n = n.as_right()?;
            let g = AdditiveGroup::new(n.scalars(), DEFAULT_EXTENSION)?;
            verify_annihilator(&g, &n.perp()?, &sample_points(&g, &n, count, seed)?)?
        }
        AnyModule::Integers(n) => {
            let n = n.as_right()?;
            let g = MultiplicativeGroup::new(DEFAULT_TORUS_PRIME)?;
            verify_annihilator(&g, &n.perp()?, &sample_points(&g, &n, count, seed)?)?
        }
        AnyModule::Hurwitz(_) => return Err(Error::unsupported("hurwitz", "point evaluation")),
    };
    Ok(SampleReport { count, seed, annihilated })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub radius: i64,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let tag = match i.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {}: {}\n", i.name, i.detail));
        }
        out
    }
}

fn item(name: &str, pass: bool, detail: impl Into<String>) -> CheckItem {
    CheckItem {
        name: name.into(),
        status: if pass { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn module_checks<S: Codec>(n: &ModuleMatrix<S>, radius: i64) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let sat = n.saturate()?;
    let pp = n.perp()?.perp()?;
    items.push(item(
        "perp_perp_is_saturation",
        pp.span_equal(&sat, Level::Ring)?,
        format!("saturated input: {}", n.span_equal(&sat, Level::Ring)?),
    ));
    items.push(item("saturation_idempotent", sat.saturate()?.span_equal(&sat, Level::Ring)?, ""));

    let right = n.as_right()?;
    let q = right.q_matrix();
    let vm = ValuatedMatroid::lindstrom(right.scalars().frac(), &q);
    let exch = vm.exchange_violation();
    items.push(item(
        "valuated_exchange",
        exch.is_none(),
        exch.map_or_else(|| format!("{} bases", vm.matroid().bases().len()), |v| format!("violation at {v:?}")),
    ));
    let tt = vm.three_term_all();
    items.push(item(
        "three_term",
        tt.is_ok(),
        match tt {
            Ok(c) => format!("{c} quadruples"),
            Err(e) => format!("violation at {e:?}"),
        },
    ));
    let circuits = valuated_circuits(right.scalars().frac(), &q);
    let ci = check_circuit_identity(&vm, &circuits);
    items.push(item(
        "circuit_identity",
        ci.is_ok(),
        match ci {
            Ok(c) => format!("{c} identities over {} circuits", circuits.len()),
            Err(e) => format!("violation at {e:?}"),
        },
    ));

    match Flock::from_module(&right) {
        Ok(f) => {
            let rep = sweep(&f, radius, SweepOptions { axioms: true, consistency: true })?;
            let detail = if rep.ok() {
                format!("{} points, {} slices", rep.points, rep.slices_computed)
            } else {
                rep.violations.join("; ")
            };
            items.push(item("flock_axioms_and_consistency", rep.ok(), detail));
        }
        Err(Error::Unsupported { ring, operation }) => items.push(CheckItem {
            name: "flock_axioms_and_consistency".into(),
            status: Status::Skipped,
            detail: format!("{operation} is unsupported for {ring}"),
        }),
        Err(e) => return Err(e),
    }
    Ok(items)
}

/// The full invariant suite for one module.
pub fn check(m: &AnyModule, radius: i64) -> Result<CheckReport> {
    if radius < 0 {
        return Err(Error::Precondition("radius must be nonnegative".into()));
    }
    let items = with_module!(m, n => module_checks(n, radius))?;
    Ok(CheckReport { radius, items })
}

/// JSON document for a module result.
pub fn module_document(m: &AnyModule, base: usize) -> MatrixDocument {
    MatrixDocument::from_any(m, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load_example;

    #[test]
    fn kf_check_passes() {
        let ex = load_example("kf_u24").unwrap();
        let m = ex.module("N").unwrap();
        let rep = check(&m, 1).unwrap();
        assert!(rep.ok(), "{}", rep.render());
        assert_eq!(matroid(&m, 1).unwrap().bases.len(), 6);
        assert!(sample_verify(&m, 10, 1).unwrap().annihilated);
    }

    #[test]
    fn hurwitz_flock_is_unsupported() {
        let ex = load_example("nonfano").unwrap();
        let m = ex.module("hurwitz").unwrap();
        assert_eq!(flock_slice(&m, &[0; 7]).unwrap_err().exit_code(), 4);
        assert_eq!(sample_verify(&m, 1, 1).unwrap_err().exit_code(), 4);
        let rep = check(&m, 0).unwrap();
        assert!(rep.ok());
        assert!(rep.items.iter().any(|i| i.status == Status::Skipped));
    }
}
