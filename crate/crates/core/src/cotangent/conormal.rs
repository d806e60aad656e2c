//! The conormal module `I/I²` and the module of differentials `Ω_{S/k}`.

use crate::error::{Error, Result};
use crate::groebner::{image_contains, kernel, syzygy_matrix, Base, GradedMatrix, Ideal};
use crate::koszul_tate::{homology_generators, koszul_complex};
use crate::modules::PresentedModule;

/// `I/I²` presented through Koszul homology, and directly.
#[derive(Clone, Debug)]
pub struct Conormal {
    /// Generators the images of the generators of `I`, relations the
    /// images of minimal 1-cycles: `H_1 -> S^n -> I/I² -> 0`.
    pub module: PresentedModule,
    /// Relations the syzygies of `I` reduced mod `I`.
    pub direct: PresentedModule,
    /// Minimal generators of `H_1` as columns of `R^n`.
    pub cycles: GradedMatrix,
    /// The two relation modules coincide in `S^n`.
    pub agree: bool,
}

pub fn conormal_presentation(i: &Ideal) -> Result<Conormal> {
    if !i.is_minimally_generated() {
        return Err(Error::precondition(
            "generators are not minimal; trim first",
        ));
    }
    let ring = i.ring();
    let base = Base::Quotient(i.clone());
    let k = koszul_complex(ring, i.gens())?;
    let cycles = homology_generators(&k, 1)?;
    let iota = cycles.map_entries(|p| base.reduce(p));
    let module = PresentedModule::new(&base, iota.clone())?;
    let syz = syzygy_matrix(&GradedMatrix::row_of(ring, i.gens())?).map_entries(|p| base.reduce(p));
    let direct = PresentedModule::new(&base, syz.clone())?;
    let agree = image_contains(&iota, &syz, &base)? && image_contains(&syz, &iota, &base)?;
    if !agree {
        return Err(Error::invariant(
            "Koszul 1-cycles and syzygies give different conormal relations",
        ));
    }
    Ok(Conormal {
        module,
        direct,
        cycles,
        agree,
    })
}

/// `Ω_{S/k}` and the kernel of `I/I² -> Ω_{R/k} ⊗ S`.
#[derive(Clone, Debug)]
pub struct Kaehler {
    pub module: PresentedModule,
    /// Jacobian `(∂g_j/∂x_i)` mod `I`: rows the `dx_i`, columns the generators.
    pub jacobian: GradedMatrix,
    pub delta_kernel: PresentedModule,
    pub kernel_zero: bool,
}

pub fn kaehler_module(i: &Ideal) -> Result<Kaehler> {
    let ring = i.ring();
    let base = Base::Quotient(i.clone());
    let n = ring.nvars();
    let gens = i.minimal_generators();
    let cols: Vec<Vec<_>> = gens
        .iter()
        .map(|g| (0..n).map(|v| base.reduce(&g.derivative(v))).collect())
        .collect();
    let col_degrees = gens
        .iter()
        .map(|g| g.degree().unwrap_or(0) as i32)
        .collect();
    let jacobian = GradedMatrix::from_columns(ring, vec![1; n], col_degrees, cols)?;
    let module = PresentedModule::new(&base, jacobian.clone())?;
    let delta_kernel = if gens.is_empty() {
        PresentedModule::zero(&base)
    } else {
        let trimmed = i.trimmed();
        let conormal = conormal_presentation(&trimmed)?;
        let rel = conormal.module.presentation().clone();
        let ker = kernel(&jacobian, &base);
        PresentedModule::subquotient(&base, &ker, &rel)?.minimal_presentation()
    };
    let kernel_zero = delta_kernel.is_zero()?;
    Ok(Kaehler {
        module,
        jacobian,
        delta_kernel,
        kernel_zero,
    })
}
