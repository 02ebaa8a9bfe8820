//! The `SL(3)` computation comparing the two lifts of the longest Weyl element.

use std::fmt;

use super::context::SlContext;
use super::matrix::Matrix;
use super::sl2;
use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::rootdata::CheckResult;
use crate::tits::TorusElement;

fn check(name: &str, ok: bool, detail: impl FnOnce() -> String) -> CheckResult {
    CheckResult::new(name, if ok { vec![] } else { vec![detail()] })
}

/// Runs the `SL(3)` identities over `F`; fails with [`Error::CharacteristicTwo`] when `½ ∉ F`.
pub fn verify_appendix<F: Field + fmt::Display>() -> Result<Vec<CheckResult>> {
    let half = F::half_checked().ok_or(Error::CharacteristicTwo)?;
    let ctx = SlContext::<F>::new(3)?;
    let mut out = Vec::new();

    out.push(check("J", *ctx.j() == Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]), || {
        format!("J = {}", ctx.j())
    }));

    let n1 = ctx.simple_lift(0);
    let n2 = ctx.simple_lift(1);
    let n3 = n1.mul(&n2).mul(&n1);
    let n3_expected = Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
    out.push(check("n3", n3 == n3_expected && n3 == n2.mul(&n1).mul(&n2), || format!("n3 = {n3}")));

    let n3p = sl2::adprime(&sl2::weyl_rep::<F>())?;
    let z = F::zero();
    let n3p_expected = Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), half.clone()],
        vec![z.clone(), -F::one(), z.clone()],
        vec![F::from_i64(2), z.clone(), z],
    ]);
    out.push(check("n3_prime", n3p == n3p_expected, || format!("n3' = {n3p}")));

    let half_alpha3 = ctx.torus(&TorusElement::cocharacter(&half, &[1, 1]))?;
    out.push(check("n3_prime_eq_half_alpha3_n3", n3p == half_alpha3.mul(&n3), || {
        format!("(1/2)^α3∨ n3 = {}", half_alpha3.mul(&n3))
    }));

    let samples = [
        sl2::upper(F::from_i64(3)),
        sl2::lower(F::from_i64(-2)),
        sl2::weyl_rep(),
        sl2::diag2(F::from_i64(2), half.clone()),
    ];
    let mut swap = Vec::new();
    for g in &samples {
        if ctx.theta_matrix(&ctx.xi(0, g))? != ctx.xi(1, g) {
            swap.push(format!("θ(ξ1({g:?})) ≠ ξ2"));
        }
        let h = ctx.xi(0, g).mul(&ctx.xi(1, &samples[0]));
        if ctx.theta_matrix(&ctx.theta_matrix(&h)?)? != h {
            swap.push("θ² ≠ 1".into());
        }
    }
    out.push(CheckResult::new("theta_swaps_xi", swap));

    let mut fixed = Vec::new();
    for g in &samples {
        let m = sl2::adprime(g)?;
        if !ctx.is_theta_fixed(&m)? {
            fixed.push(format!("adprime({g:?}) not θ-fixed"));
        }
    }
    out.push(CheckResult::new("adprime_in_fixed_group", fixed));

    let fixed_weyl = ctx.theta().fixed_weyl_elements(ctx.datum());
    let w0 = ctx.datum().longest_element();
    let ok = fixed_weyl.len() == 2 && fixed_weyl.iter().any(|w| w.is_identity()) && fixed_weyl.contains(&w0);
    out.push(check("fixed_weyl_group", ok, || format!("Ω^θ = {fixed_weyl:?}")));
    Ok(out)
}
