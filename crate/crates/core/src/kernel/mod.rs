//! Strong log Fourier-Mukai kernels as formal sums of diagonal and graph
//! atoms: composition, non-categorical adjoints, excess intersections and
//! the induced action on log Hochschild homology.

mod adjoint;
mod checks;
mod compose;
mod excess;
mod expr;
mod hochschild;
mod morphism;

pub use adjoint::{adjoint_exchange_check, adjoint_exchange_sides, left_adjoint, right_adjoint};
pub use checks::{
    bicategory_law_check, functoriality_check, random_kernel_pair, FunctorialityReport, KernelPair, ROUTES,
};
pub use compose::{compose, compose_atoms};
pub use excess::{excess_data, excess_intersection, sym_decomposition, ExcessData};
pub use expr::{parse_kernel, Atom, KernelExpr, KERNEL_GRAMMAR};
pub use hochschild::{
    atom_scalar, chern_log, chern_log_expansion, chern_log_with, euler_pairing, euler_pairing_traced,
    hh_action, hh_action_with, EulerTrace, HochschildClass, TraceSign, TraceStep,
};
pub use morphism::LogMorphism;
