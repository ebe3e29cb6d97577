//! Linear flock slices `V_α = reduction of (π^{−α}V) ∩ Rⁿ` and checks of the
//! flock axioms against the Lindström valuation.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{column_basis, column_echelon, right_kernel, ModuleMatrix};
use crate::matrix::Matrix;
use crate::matroid::{elements, Matroid};
use crate::scalars::{DivisionRing, FieldElem, FiniteField, FracElem, Ring, Scalars, Val};
use crate::valuated::ValuatedMatroid;

/// A subspace of `Lⁿ` given by a basis in reduced column echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub basis: Matrix<FieldElem>,
}

impl Subspace {
    pub fn new(field: &FiniteField, m: &Matrix<FieldElem>) -> Self {
        Subspace {
            basis: column_echelon(field, m),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// `{x ∈ V : x_i = 0}`.
    pub fn meet_hyperplane(&self, field: &FiniteField, i: usize) -> Subspace {
        let row = self.basis.select_rows(&[i]);
        let k = right_kernel(field, &row);
        Subspace::new(field, &crate::matrix::mul(field, &self.basis, &k))
    }

    /// The image of `V` with coordinate `i` set to zero.
    pub fn zero_coordinate(&self, field: &FiniteField, i: usize) -> Subspace {
        let mut m = self.basis.clone();
        for j in 0..m.cols() {
            m.set(i, j, FieldElem(0));
        }
        Subspace::new(field, &m)
    }

    /// Apply a field map to every coordinate.
    pub fn map(&self, field: &FiniteField, f: impl Fn(FieldElem) -> FieldElem) -> Subspace {
        Subspace::new(field, &self.basis.map(|&x| f(x)))
    }

    /// The matroid on the coordinates.
    pub fn matroid(&self, field: &FiniteField) -> Matroid {
        Matroid::from_matrix(field, &self.basis)
    }
}

/// `V_α` together with the `α` it was computed at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlockSlice {
    pub alpha: Vec<i64>,
    pub space: Subspace,
}

/// Precomputed data for slicing a fixed right subspace `V ⊆ Qⁿ`.
#[derive(Debug, Clone)]
pub struct Flock<S: Scalars> {
    scalars: S,
    basis: Matrix<FracElem<S>>,
    field: FiniteField,
    pi: FracElem<S>,
    pi_inv: FracElem<S>,
    spread: i64,
}

impl<S: Scalars> Flock<S> {
    /// Flock of the right column span of `a`.
    pub fn new(scalars: S, a: &Matrix<FracElem<S>>) -> Result<Self> {
        if !scalars.supports_flock() {
            return Err(Error::unsupported(scalars.kind().name(), "flock slices"));
        }
        let field = scalars.residue_field()?.clone();
        let frac = scalars.frac();
        let basis = a.select_cols(&column_basis(frac, a));
        let vals: Vec<i64> = basis
            .entries()
            .iter()
            .filter_map(|x| frac.valuation(x).finite())
            .collect();
        let spread = match (vals.iter().min(), vals.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        };
        let pi = scalars.embed(&scalars.uniformizer());
        let pi_inv = frac.inv(&pi)?;
        Ok(Flock {
            scalars,
            basis,
            field,
            pi,
            pi_inv,
            spread,
        })
    }

    /// Flock of a module, saturated first (a left module is replaced by the
    /// right module it cuts out).
    pub fn from_module(n: &ModuleMatrix<S>) -> Result<Self> {
        let sat = n.as_right()?.saturate()?;
        Flock::new(n.scalars().clone(), &sat.q_matrix())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<FracElem<S>> {
        &self.basis
    }

    pub fn scalars(&self) -> &S {
        &self.scalars
    }

    /// `π^e` in `Q`.
    fn pi_pow(&self, e: i64) -> FracElem<S> {
        let frac = self.scalars.frac();
        if e >= 0 {
            frac.pow(&self.pi, e as u64)
        } else {
            frac.pow(&self.pi_inv, e.unsigned_abs())
        }
    }

    pub fn slice(&self, alpha: &[i64]) -> Result<FlockSlice> {
        let (n, r) = (self.ambient(), self.dim());
        if alpha.len() != n {
            return Err(Error::Dimension(format!("α has length {}, expected {n}", alpha.len())));
        }
        let frac = self.scalars.frac();
        let scales: Vec<FracElem<S>> = alpha.iter().map(|&a| self.pi_pow(-a)).collect();
        let mut m = Matrix::from_fn(n, r, |i, j| frac.mul(&scales[i], self.basis.get(i, j)));
        let amax = alpha.iter().map(|a| a.abs()).max().unwrap_or(0);
        let cap = (n * r) as i64 * (1 + amax) + self.spread + 1;
        let mut dirty: Vec<usize> = (0..r).collect();
        let mut steps = 0i64;
        loop {
            for &j in &dirty {
                let low = (0..n)
                    .map(|i| frac.valuation(m.get(i, j)))
                    .min()
                    .and_then(Val::finite)
                    .expect("basis columns are nonzero");
                if low != 0 {
                    let s = self.pi_pow(-low);
                    for i in 0..n {
                        let v = frac.mul(m.get(i, j), &s);
                        m.set(i, j, v);
                    }
                }
            }
            let red = m.try_map(|x| self.scalars.residue(x))?;
            let kernel = right_kernel(&self.field, &red);
            if kernel.cols() == 0 {
                return Ok(FlockSlice {
                    alpha: alpha.to_vec(),
                    space: Subspace::new(&self.field, &red),
                });
            }
            steps += 1;
            if steps > cap {
                return Err(Error::IterationCap(cap as usize));
            }
            // a residue dependency lifts to a combination of strictly higher valuation
            let lambda = kernel.col(0);
            let j0 = lambda.iter().position(|x| x.0 != 0).expect("nonzero kernel vector");
            let lifts = lambda
                .iter()
                .map(|&x| self.scalars.lift(x))
                .collect::<Result<Vec<_>>>()?;
            for i in 0..n {
                let mut acc = frac.zero();
                for (j, l) in lifts.iter().enumerate() {
                    if lambda[j].0 != 0 {
                        acc = frac.add(&acc, &frac.mul(m.get(i, j), l));
                    }
                }
                m.set(i, j0, acc);
            }
            dirty = vec![j0];
        }
    }

    /// The residue automorphism `φ` applied coordinatewise.
    pub fn twist(&self, v: &Subspace) -> Result<Subspace> {
        let m = v.basis.try_map(|&x| self.scalars.residue_twist(x))?;
        Ok(Subspace::new(&self.field, &m))
    }
}

/// Bases minimizing `μ(B) − Σ_{i∈B} α_i`.
pub fn argmin_matroid(vm: &ValuatedMatroid, alpha: &[i64]) -> Matroid {
    let scored: Vec<(u64, i64)> = vm
        .basis_values()
        .into_iter()
        .map(|(b, v)| (b, v - elements(b).iter().map(|&i| alpha[i]).sum::<i64>()))
        .collect();
    let best = scored.iter().map(|x| x.1).min().expect("a matroid has a basis");
    Matroid::from_bases(vm.ground_size(), scored.into_iter().filter(|x| x.1 == best).map(|x| x.0))
        .expect("nonempty")
}

/// Outcome of a sweep over the box `[−radius, radius]ⁿ`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct FlockReport {
    pub radius: i64,
    pub points: usize,
    pub slices_computed: usize,
    pub dimension_checks: usize,
    pub hyperplane_checks: usize,
    pub twist_checks: usize,
    pub consistency_checks: usize,
    pub violations: Vec<String>,
}

impl FlockReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All integer vectors in `[−radius, radius]ⁿ`, in lexicographic order.
pub fn alpha_box(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn fmt_alpha(a: &[i64]) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// What a sweep verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub axioms: bool,
    pub consistency: bool,
}

/// Verifies on the box: `dim V_α = dim V`; `V_α ∩ {x_i = 0}` equals
/// `V_{α+e_i}` with coordinate `i` zeroed; `V_{α−(1,…,1)} = φ(V_α)`; and the
/// matroid of `V_α` has the bases minimizing `μ(B) − Σ_{i∈B} α_i`.
pub fn sweep<S: Scalars>(flock: &Flock<S>, radius: i64, opts: SweepOptions) -> Result<FlockReport> {
    let n = flock.ambient();
    let points = alpha_box(n, radius);
    let mut needed: HashSet<Vec<i64>> = points.iter().cloned().collect();
    if opts.axioms {
        for a in &points {
            for i in 0..n {
                let mut b = a.clone();
                b[i] += 1;
                needed.insert(b);
            }
            needed.insert(a.iter().map(|x| x - 1).collect());
        }
    }
    let needed: Vec<Vec<i64>> = needed.into_iter().collect();
    let slices: HashMap<Vec<i64>, Subspace> = needed
        .par_iter()
        .map(|a| flock.slice(a).map(|s| (a.clone(), s.space)))
        .collect::<Result<_>>()?;
    let vm = opts
        .consistency
        .then(|| ValuatedMatroid::lindstrom(flock.scalars().frac(), flock.basis()));
    let field = flock.field();
    let dim = flock.dim();
    let partial: Vec<FlockReport> = points
        .par_iter()
        .map(|a| {
            let mut rep = FlockReport::default();
            let va = &slices[a];
            rep.dimension_checks += 1;
            if va.dim() != dim {
                rep.violations.push(format!("dim V_[{}] = {} but dim V = {dim}", fmt_alpha(a), va.dim()));
            }
            if opts.axioms {
                for i in 0..n {
                    let mut b = a.clone();
                    b[i] += 1;
                    rep.hyperplane_checks += 1;
                    if va.meet_hyperplane(field, i) != slices[&b].zero_coordinate(field, i) {
                        rep.violations.push(format!("hyperplane axiom fails at α = [{}], i = {i}", fmt_alpha(a)));
                    }
                }
                let lower: Vec<i64> = a.iter().map(|x| x - 1).collect();
                rep.twist_checks += 1;
                match flock.twist(va) {
                    Ok(t) if t == slices[&lower] => {}
                    Ok(_) => rep.violations.push(format!("twist axiom fails at α = [{}]", fmt_alpha(a))),
                    Err(e) => rep.violations.push(e.to_string()),
                }
            }
            if let Some(vm) = &vm {
                rep.consistency_checks += 1;
                if va.matroid(field) != argmin_matroid(vm, a) {
                    rep.violations.push(format!(
                        "slice matroid differs from the valuation argmin at α = [{}]",
                        fmt_alpha(a)
                    ));
                }
            }
            rep
        })
        .collect();
    let mut report = FlockReport {
        radius,
        points: points.len(),
        slices_computed: slices.len(),
        ..Default::default()
    };
    for p in partial {
        report.dimension_checks += p.dimension_checks;
        report.hyperplane_checks += p.hyperplane_checks;
        report.twist_checks += p.twist_checks;
        report.consistency_checks += p.consistency_checks;
        report.violations.extend(p.violations);
    }
    report.violations.sort();
    report.violations.truncate(20);
    Ok(report)
}

pub fn check_flock_axioms<S: Scalars>(flock: &Flock<S>, radius: i64) -> Result<FlockReport> {
    sweep(flock, radius, SweepOptions { axioms: true, consistency: false })
}

pub fn check_flock_valuation_consistency<S: Scalars>(flock: &Flock<S>, radius: i64) -> Result<FlockReport> {
    sweep(flock, radius, SweepOptions { axioms: false, consistency: true })
}
