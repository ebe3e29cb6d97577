//! Duality and minors on every module shipped with the examples.

use endomatroid::corpus::{list_examples, load_example};
use endomatroid::linalg::{right_kernel, ModuleMatrix};
use endomatroid::matrix::mul;
use endomatroid::matroid::{mask_of, Matroid};
use endomatroid::scalars::Scalars;
use endomatroid::with_module;

fn matroid_of<S: Scalars>(n: &ModuleMatrix<S>) -> Matroid {
    let r = n.as_right().unwrap();
    Matroid::from_matrix(n.scalars().frac(), &r.q_matrix())
}

fn check_module<S: Scalars>(label: &str, n: &ModuleMatrix<S>) {
    let m = matroid_of(n);
    let dual = n.dual_module().unwrap();
    assert_eq!(matroid_of(&dual), m.dual(), "{label}: dual module");

    let right = n.as_right().unwrap();
    let q = right.q_matrix();
    let frac = n.scalars().frac();
    for i in 0..q.rows() {
        let keep: Vec<usize> = (0..q.rows()).filter(|&k| k != i).collect();
        // deletion drops the coordinate
        let deleted = right.restrict_rows(&keep).unwrap();
        assert_eq!(matroid_of(&deleted), m.delete(mask_of(&[i])).unwrap(), "{label}: delete {i}");
        // contraction restricts to {x_i = 0} and then drops the coordinate
        let k = right_kernel(frac, &q.select_rows(&[i]));
        let contracted = mul(frac, &q, &k).select_rows(&keep);
        assert_eq!(
            Matroid::from_matrix(frac, &contracted),
            m.contract(mask_of(&[i])).unwrap(),
            "{label}: contract {i}"
        );
    }
}

#[test]
fn dual_and_minors_on_corpus() {
    for id in list_examples() {
        let ex = load_example(id).unwrap();
        for name in ex.modules.keys() {
            let m = ex.module(name).unwrap();
            with_module!(&m, n => check_module(&format!("{id}/{name}"), n));
        }
    }
}
