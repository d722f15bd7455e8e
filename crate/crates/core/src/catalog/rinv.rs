use num_bigint::BigInt;
use num_traits::Signed;

use super::model::valuation;
use super::table::Table1Row;
use super::CatalogError;
use crate::lattice::{make_named, mod2_nullity, LatticeError, RInvariant};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RContext {
    pub p: Option<u64>,
    pub expect_nullity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInvariantReport {
    pub pass: bool,
    pub nullity: usize,
    pub dim_h: usize,
    pub det_abs: BigInt,
    /// `p`-adic valuation of `det K` when a characteristic is given.
    pub p_valuation: Option<u32>,
    pub issues: Vec<String>,
}

/// Re-checks isotropy of `H`, then `nullity >= dim H` and the expected
/// nullity if one is given.
pub fn r_invariant_check(claimed: &RInvariant, ctx: &RContext) -> Result<RInvariantReport, LatticeError> {
    let checked = RInvariant::new(claimed.k.clone(), claimed.h.clone())?;
    let nullity = mod2_nullity(&checked.k)?.nullity;
    let dim_h = checked.dim_h();
    let mut issues = Vec::new();
    if nullity < dim_h {
        issues.push(format!("nullity {nullity} < dim H = {dim_h}"));
    }
    if let Some(e) = ctx.expect_nullity {
        if e != nullity {
            issues.push(format!("nullity {nullity}, expected {e}"));
        }
    }
    let det_abs = checked.k.det().abs();
    Ok(RInvariantReport {
        pass: issues.is_empty(),
        nullity,
        dim_h,
        p_valuation: ctx.p.map(|p| valuation(&det_abs, p)),
        det_abs,
        issues,
    })
}

/// The row's `(K, H)`, with `H` spanned by the first `h_dim` vectors of the
/// kernel of `q_{K/2K}`, which is totally isotropic.
pub fn row_r_invariant(row: &Table1Row) -> Result<RInvariant, CatalogError> {
    let k = make_named(row.k_lattice)?;
    let kernel = mod2_nullity(&k)?.kernel_basis;
    if kernel.len() < row.h_dim {
        return Err(CatalogError::Inconsistent(format!(
            "{}: q-kernel of {} has dimension {} < {}",
            row.key,
            row.k_lattice,
            kernel.len(),
            row.h_dim
        )));
    }
    Ok(RInvariant::new(k, kernel[..row.h_dim].to_vec())?)
}
