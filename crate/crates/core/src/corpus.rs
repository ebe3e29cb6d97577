//! The registry of worked examples: matrices shipped as JSON data together
//! with their expected facts, and the code that recomputes those facts.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::document::{AnyModule, MatrixDocument};
use crate::error::{Error, Result};
use crate::flock::{sweep, Flock, SweepOptions};
use crate::groups::{
    point_from_params, sample_points, verify_annihilator, AdditiveGroup, GroupModel, MultiplicativeGroup,
    DEFAULT_EXTENSION, DEFAULT_TORUS_PRIME,
};
use crate::linalg::{rank, Level, ModuleMatrix};
use crate::matrix::Matrix;
use crate::matroid::{k_subsets, mask_of, Mask, Matroid};
use crate::scalars::{
    EuclideanRing, FieldElem, FiniteField, HurwitzScalars, IntegerScalars, Rationals, Ring, Scalars, SkewScalars,
    Val,
};
use crate::valuated::ValuatedMatroid;

/// Environment variable naming a directory that replaces the built-in data.
pub const DATA_DIR_ENV: &str = "ENDOMATROID_DATA_DIR";

/// Seed and sample count used for point checks.
pub const SAMPLE_SEED: u64 = 42;
pub const SAMPLE_COUNT: usize = 100;

const EMBEDDED: [(&str, &str); 7] = [
    ("kf_u24", include_str!("../data/kf_u24.json")),
    ("dual_u24", include_str!("../data/dual_u24.json")),
    ("toric", include_str!("../data/toric.json")),
    ("elliptic9", include_str!("../data/elliptic9.json")),
    ("nonfano", include_str!("../data/nonfano.json")),
    ("nondual_u24", include_str!("../data/nondual_u24.json")),
    ("lindstrom_grid", include_str!("../data/lindstrom_grid.json")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Stated,
    Trivial,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub source: Source,
    pub value: Value,
}

/// One registry entry as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example {
    pub id: String,
    pub summary: String,
    pub modules: BTreeMap<String, MatrixDocument>,
    pub expected: BTreeMap<String, Expected>,
}

impl Example {
    pub fn document(&self, name: &str) -> Result<&MatrixDocument> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::Schema(format!("example `{}` has no module `{name}`", self.id)))
    }

    pub fn module(&self, name: &str) -> Result<AnyModule> {
        self.document(name)?.to_module()
    }

    fn skew(&self, name: &str) -> Result<ModuleMatrix<SkewScalars>> {
        match self.module(name)? {
            AnyModule::Skew(m) => Ok(m),
            _ => Err(self.wrong_ring(name, "skew_poly")),
        }
    }

    fn integers(&self, name: &str) -> Result<ModuleMatrix<IntegerScalars>> {
        match self.module(name)? {
            AnyModule::Integers(m) => Ok(m),
            _ => Err(self.wrong_ring(name, "integers")),
        }
    }

    fn hurwitz(&self, name: &str) -> Result<ModuleMatrix<HurwitzScalars>> {
        match self.module(name)? {
            AnyModule::Hurwitz(m) => Ok(m),
            _ => Err(self.wrong_ring(name, "hurwitz")),
        }
    }

    fn wrong_ring(&self, name: &str, kind: &str) -> Error {
        Error::Schema(format!("module `{name}` of `{}` must be over {kind}", self.id))
    }
}

pub fn list_examples() -> Vec<&'static str> {
    EMBEDDED.iter().map(|(id, _)| *id).collect()
}

/// Read an example, from the override directory when it is set.
pub fn load_example(id: &str) -> Result<Example> {
    let builtin = EMBEDDED
        .iter()
        .find(|(name, _)| *name == id)
        .ok_or_else(|| Error::UnknownExample(id.to_string()))?
        .1;
    let text = match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(format!("{id}.json"));
            std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        }
        None => builtin.to_string(),
    };
    let ex: Example = serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{id}: {e}")))?;
    if ex.id != id {
        return Err(Error::Schema(format!("file for `{id}` declares id `{}`", ex.id)));
    }
    Ok(ex)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactResult {
    pub name: String,
    pub source: Source,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub id: String,
    pub summary: String,
    pub facts: Vec<FactResult>,
}

impl ExampleReport {
    pub fn ok(&self) -> bool {
        self.facts.iter().all(|f| f.pass)
    }

    pub fn fact(&self, name: &str) -> Option<&FactResult> {
        self.facts.iter().find(|f| f.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}: {}\n", self.id, self.summary);
        for f in &self.facts {
            let tag = if f.pass { "PASS" } else { "FAIL" };
            let prov = serde_json::to_value(f.source).expect("source serializes");
            out.push_str(&format!("  [{tag}] {} ({}): {}", f.name, prov.as_str().unwrap_or(""), f.actual));
            if !f.pass {
                out.push_str(&format!(" (expected {})", f.expected));
            }
            out.push('\n');
        }
        out
    }
}

/// Recompute every fact of an example and compare with the stored values.
pub fn run_example(id: &str) -> Result<ExampleReport> {
    let ex = load_example(id)?;
    let actual = match id {
        "kf_u24" => kf_u24(&ex)?,
        "dual_u24" => dual_u24(&ex)?,
        "toric" => toric(&ex)?,
        "elliptic9" => elliptic9(&ex)?,
        "nonfano" => nonfano(&ex)?,
        "nondual_u24" => nondual_u24(&ex)?,
        "lindstrom_grid" => lindstrom_grid(&ex)?,
        _ => return Err(Error::UnknownExample(id.to_string())),
    };
    let mut facts = Vec::with_capacity(actual.len());
    for (name, value) in actual {
        let exp = ex
            .expected
            .get(name)
            .ok_or_else(|| Error::Schema(format!("`{id}` has no expected value for `{name}`")))?;
        facts.push(FactResult {
            name: name.to_string(),
            source: exp.source,
            pass: exp.value == value,
            expected: exp.value.clone(),
            actual: value,
        });
    }
    if let Some(extra) = ex.expected.keys().find(|k| !facts.iter().any(|f| &f.name == *k)) {
        return Err(Error::Schema(format!("`{id}` expects unknown fact `{extra}`")));
    }
    Ok(ExampleReport {
        id: ex.id,
        summary: ex.summary,
        facts,
    })
}

type Facts = Vec<(&'static str, Value)>;

fn bases_value(m: &Matroid, base: usize) -> Value {
    json!(m.to_json(base).bases)
}

/// Valuation values on all `r`-subsets in lexicographic order.
pub fn table_value(vm: &ValuatedMatroid) -> Value {
    Value::Array(
        vm.table()
            .into_iter()
            .map(|(_, v)| match v {
                Val::Finite(x) => json!(x),
                Val::Infinity => json!("inf"),
            })
            .collect(),
    )
}

pub fn lindstrom_of<S: Scalars>(n: &ModuleMatrix<S>) -> Result<ValuatedMatroid> {
    let right = n.as_right()?;
    Ok(ValuatedMatroid::lindstrom(n.scalars().frac(), &right.q_matrix()))
}

fn matroid_of<S: Scalars>(n: &ModuleMatrix<S>) -> Result<Matroid> {
    let right = n.as_right()?;
    Ok(Matroid::from_matrix(n.scalars().frac(), &right.q_matrix()))
}

fn one_based(sets: &[&[usize]]) -> Vec<Mask> {
    sets.iter()
        .map(|s| mask_of(&s.iter().map(|i| i - 1).collect::<Vec<_>>()))
        .collect()
}

fn rows_rank<S: Scalars>(n: &ModuleMatrix<S>, rows: &[usize]) -> usize {
    rank(n.scalars().frac(), &n.q_matrix().select_rows(rows))
}

/// Compare `point_from_params` with a closed-form expression on random parameters.
fn point_formula(
    g: &AdditiveGroup,
    n: &ModuleMatrix<SkewScalars>,
    formula: impl Fn(&FiniteField, FieldElem, FieldElem) -> Vec<FieldElem>,
) -> Result<bool> {
    let mut rng = SplitMix64::seed_from_u64(SAMPLE_SEED);
    for _ in 0..SAMPLE_COUNT {
        let (a, b) = (g.random(&mut rng), g.random(&mut rng));
        let pt = point_from_params(g, n, &[a, b])?;
        if pt.coords != formula(g.field(), a, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn full_sweep<S: Scalars>(n: &ModuleMatrix<S>, radius: i64) -> Result<bool> {
    let flock = Flock::from_module(n)?;
    let opts = SweepOptions {
        axioms: true,
        consistency: true,
    };
    Ok(sweep(&flock, radius, opts)?.ok())
}

fn kf_u24(ex: &Example) -> Result<Facts> {
    let n = ex.skew("N")?;
    let perp = ex.skew("perp")?;
    let s = n.scalars();
    let g = AdditiveGroup::new(s, DEFAULT_EXTENSION)?;
    let formula = point_formula(&g, &n, |f, a, b| {
        let ab = f.add_elem(a, b);
        vec![a, b, ab, f.add_elem(a, f.mul_elem(b, b))]
    })?;
    let points = sample_points(&g, &n, SAMPLE_COUNT, SAMPLE_SEED)?;
    let flock = Flock::from_module(&n)?;
    let field = flock.field().clone();
    let zero = flock.slice(&[0, 0, 0, 0])?;
    let zero_cols: Vec<Vec<u64>> = zero.space.basis.col_vecs().iter().map(|c| c.iter().map(|x| x.0).collect()).collect();
    let e4 = flock.slice(&[0, 0, 0, 1])?;
    Ok(vec![
        ("bases", bases_value(&matroid_of(&n)?, 1)),
        ("saturated", json!(n.is_saturated()?)),
        ("perp_matches", json!(n.perp()?.span_equal(&perp, Level::Ring)?)),
        ("point_formula", json!(formula)),
        ("lindstrom", table_value(&lindstrom_of(&n)?)),
        ("annihilator", json!(verify_annihilator(&g, &n.perp()?, &points)?)),
        ("slice_zero", json!(zero_cols)),
        ("slice_e4_bases", bases_value(&e4.space.matroid(&field), 1)),
        ("flock_radius1", json!(full_sweep(&n, 1)?)),
    ])
}

fn dual_u24(ex: &Example) -> Result<Facts> {
    let n = ex.skew("N")?;
    let primal = ex.skew("primal")?;
    let g = AdditiveGroup::new(n.scalars(), DEFAULT_EXTENSION)?;
    let formula = point_formula(&g, &n, |f, a, b| {
        let b2 = f.mul_elem(b, b);
        vec![f.add_elem(a, b2), f.add_elem(a, b), a, b2]
    })?;
    let mu = lindstrom_of(&n)?;
    let primal_dual = lindstrom_of(&primal)?.dual();
    Ok(vec![
        ("bases", bases_value(&matroid_of(&n)?, 1)),
        ("dual_of_primal", json!(primal.dual_module()?.span_equal(&n, Level::Ring)?)),
        ("point_formula", json!(formula)),
        ("lindstrom", table_value(&mu)),
        ("shift_to_dual", json!(mu.differ_by_trivial(&primal_dual)?.is_some())),
    ])
}

fn toric(ex: &Example) -> Result<Facts> {
    let n = ex.integers("N")?;
    let g = MultiplicativeGroup::new(DEFAULT_TORUS_PRIME)?;
    let points = sample_points(&g, &n, SAMPLE_COUNT, SAMPLE_SEED)?;
    Ok(vec![
        ("bases", bases_value(&matroid_of(&n)?, 1)),
        ("lindstrom", table_value(&lindstrom_of(&n)?)),
        ("saturated", json!(n.is_saturated()?)),
        ("annihilator", json!(verify_annihilator(&g, &n.perp()?, &points)?)),
        ("flock_radius2", json!(full_sweep(&n, 2)?)),
    ])
}

/// Rank of a matrix over `Q(i)`, computed through the real `2 × 2` block
/// embedding `x + yi ↦ [[x, −y], [y, x]]`.
pub fn gaussian_rank(entries: &Matrix<(BigRational, BigRational)>) -> usize {
    let (r, c) = (entries.rows(), entries.cols());
    let big = Matrix::from_fn(2 * r, 2 * c, |i, j| {
        let (x, y) = entries.get(i / 2, j / 2);
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => x.clone(),
            (0, 1) => -y.clone(),
            _ => y.clone(),
        }
    });
    rank(&Rationals::new(2), &big) / 2
}

fn elliptic9(ex: &Example) -> Result<Facts> {
    let n = ex.hurwitz("N")?;
    let char2 = ex.skew("char2")?;
    let m = matroid_of(&n)?;
    let lines = [mask_of(&[0, 3, 8]), mask_of(&[1, 4, 8]), mask_of(&[2, 5, 8])];
    let t345 = mask_of(&[3, 4, 5]);
    let gauss = n.matrix().try_map(|h| {
        let d = h.doubled();
        if !(d[2].is_zero() && d[3].is_zero()) {
            return Err(Error::Precondition("entry outside Z[i]".into()));
        }
        let two = BigInt::from(2);
        Ok((
            BigRational::new(d[0].clone(), two.clone()),
            BigRational::new(d[1].clone(), two),
        ))
    })?;
    let agree = k_subsets(9, 3).into_iter().all(|t| {
        let rows: Vec<usize> = crate::matroid::elements(t);
        (gaussian_rank(&gauss.select_rows(&rows)) == 3) == m.is_basis(t)
    });
    Ok(vec![
        ("rank", json!(m.rank())),
        ("caption_lines_dependent", json!(lines.iter().all(|&l| !m.is_basis(l)))),
        ("basis_345_independent", json!(m.is_basis(t345))),
        ("char2_345_dependent", json!(rows_rank(&char2, &[3, 4, 5]) < 3)),
        ("gaussian_agreement", json!(agree)),
    ])
}

/// `γ(w) = w(456) − w(125) − w(136) − w(234) + 2·w(123)`.
pub fn gamma_coefficients() -> Vec<(Mask, i64)> {
    let sets = one_based(&[&[4, 5, 6], &[1, 2, 5], &[1, 3, 6], &[2, 3, 4], &[1, 2, 3]]);
    sets.into_iter().zip([1, -1, -1, -1, 2]).collect()
}

fn nonfano(ex: &Example) -> Result<Facts> {
    let z = ex.integers("integers")?;
    let h = ex.hurwitz("hurwitz")?;
    let char2 = ex.skew("char2")?;
    let gamma = gamma_coefficients();
    Ok(vec![
        ("gamma_integers", json!(lindstrom_of(&z)?.linear_functional(&gamma)?)),
        ("gamma_hurwitz", json!(lindstrom_of(&h)?.linear_functional(&gamma)?)),
        ("char2_456_dependent", json!(rows_rank(&char2, &[3, 4, 5]) < 3)),
        ("bases_integers", json!(matroid_of(&z)?.bases().len())),
    ])
}

/// `w({1,4}) + w({2,3}) − w({1,3}) − w({2,4})`.
pub fn cross_ratio_coefficients() -> Vec<(Mask, i64)> {
    let sets = one_based(&[&[1, 4], &[2, 3], &[1, 3], &[2, 4]]);
    sets.into_iter().zip([1, 1, -1, -1]).collect()
}

fn nondual_u24(ex: &Example) -> Result<Facts> {
    let primal = ex.skew("primal")?;
    let cleared = ex.skew("printed_dual_cleared")?;
    let s = primal.scalars();
    let frac = s.frac();
    // the printed matrix has F⁻¹ in its second column; the stored one is that column times F
    let finv = frac.f_pow_inv(1);
    let mut printed = cleared.q_matrix();
    for i in 0..printed.rows() {
        let x = frac.mul(printed.get(i, 1), &finv);
        printed.set(i, 1, x);
    }
    let w_primal = lindstrom_of(&primal)?;
    let w_printed = ValuatedMatroid::lindstrom(frac, &printed);
    let cr = cross_ratio_coefficients();
    let y0 = primal.matrix().get(3, 1);
    let vy0 = s
        .base()
        .valuation(y0)
        .finite()
        .ok_or_else(|| Error::Invariant("y0 must be nonzero".into()))?;
    let shift = w_printed.differ_by_trivial(&w_primal.dual())?;
    Ok(vec![
        ("primal_combination", json!(w_primal.linear_functional(&cr)?)),
        ("y0_valuation_mod3", json!(vy0.rem_euclid(3))),
        ("dual_combination", json!(w_printed.linear_functional(&cr)?)),
        ("dual_valuation_combination", json!(w_printed.dual().linear_functional(&cr)?)),
        (
            "differ_by_trivial",
            shift.map_or(Value::Null, |a| json!(a.iter().map(|x| x.to_string()).collect::<Vec<_>>())),
        ),
    ])
}

fn lindstrom_grid(ex: &Example) -> Result<Facts> {
    let n = ex.skew("N")?;
    let commuting = ex.skew("commuting")?;
    let rows = [7, 11, 13, 14];
    Ok(vec![
        ("rank", json!(n.rank())),
        ("rows_8_12_14_15_independent", json!(rows_rank(&n, &rows) == 4)),
        ("commuting_rows_dependent", json!(rows_rank(&commuting, &rows) < 4)),
    ])
}
