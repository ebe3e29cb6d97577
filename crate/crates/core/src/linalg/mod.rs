//! Linear algebra over `E` and `Q`.

pub mod division;
pub mod hermite;
pub mod module;

pub use division::{
    column_basis, column_echelon, column_span_contains, column_span_equal, dieudonne_val, left_kernel,
    rank, right_kernel, row_basis, rref, solve_right, EchelonRows,
};
pub use hermite::{column_hermite, left_kernel_ring, right_kernel_ring, ring_span_contains, row_hermite, ColumnHermite};
pub use module::{Level, ModuleMatrix, Orientation};
