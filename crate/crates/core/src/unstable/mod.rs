//! Unstable modules over the Steenrod algebra, truncated at a maximal degree, and the
//! functors used to model cohomology of Sylow 2-subgroups of symmetric groups.

mod functors;
mod models;
mod module;
mod poly;

pub use functors::{
    fiber_product, gysin_dims, nu_map, phi, quadratic, quadratic_p_decorated, r1, rho_map, sym2_invariants, tau, tau_dims,
    tensor, FiberProduct, Quadratic, SymElement, Sym2, R1,
};
pub use models::{sylow_alternating_dims, sylow_power_of_two_module, sylow_symmetric_module};
pub use module::{binomial_mod2, binomial_mod2_signed, ModuleDump, ModuleMap, SqEntry, UnstableModule};
pub use poly::{cohomology_elementary_abelian, polynomial_p, restriction_map, restriction_with, trivial_module, Monomials};
