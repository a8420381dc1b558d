use super::functors::{gysin_dims, quadratic_p_decorated, tensor};
use super::module::UnstableModule;
use super::poly::{polynomial_p, trivial_module};
use crate::error::Result;

/// `H*(𝔖_{2^m})` restricted to its Sylow subgroup, as a P-module: `F2` for `m = 0`,
/// `P` for `m = 1`, then iterated quadratic constructions.
pub fn sylow_power_of_two_module(m: u32, max_degree: usize) -> Result<UnstableModule> {
    match m {
        0 => trivial_module(max_degree),
        _ => {
            let mut module = polynomial_p(max_degree)?;
            for _ in 1..m {
                module = quadratic_p_decorated(&module)?.module;
            }
            Ok(module)
        }
    }
}

/// The model of `H*(Syl₂(𝔖_n))` through degree `N`: the tensor product of the
/// power-of-two models over the binary digits of `n`, carrying `u` for the sign class.
pub fn sylow_symmetric_module(n: usize, max_degree: usize) -> Result<UnstableModule> {
    let mut result = trivial_module(max_degree)?;
    let mut bits = n;
    let mut m = 0;
    while bits > 0 {
        if bits & 1 == 1 && m > 0 {
            result = tensor(&result, &sylow_power_of_two_module(m, max_degree)?)?;
        }
        bits >>= 1;
        m += 1;
    }
    Ok(result)
}

/// Dimensions of `H*(Syl₂(𝔄_n))` in degrees `≤ N − 1`, from the Gysin sequence of the
/// sign class on the symmetric model.
pub fn sylow_alternating_dims(n: usize, max_degree: usize) -> Result<Vec<usize>> {
    gysin_dims(&sylow_symmetric_module(n, max_degree)?)
}
