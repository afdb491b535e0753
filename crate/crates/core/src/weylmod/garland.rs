//! Garland series and the relation they induce on highest map-weight
//! vectors: scalar coefficients, the closed product form, the even-root
//! annihilator polynomials, and the in-module identity check.

use super::{MapWeight, ModuleVector, WeightModule};
use crate::algebra_base::{Polynomial, Scalar};
use crate::liesuper::ChevalleyData;
use crate::rootdata::{Parity, SimpleSystem};
use crate::{Error, Result};

fn even_positive_coroot<'a>(
    sys: &SimpleSystem,
    chev: &'a ChevalleyData,
    pos_idx: usize,
) -> Result<&'a [Scalar]> {
    let roots = sys.positive_roots();
    if pos_idx >= roots.len() {
        return Err(Error::invalid("root index out of range"));
    }
    if roots[pos_idx].parity != Parity::Even {
        return Err(Error::invalid(
            "Garland data is defined for even positive roots only",
        ));
    }
    chev.h_dual[pos_idx]
        .as_deref()
        .ok_or_else(|| Error::internal("missing sl(2) coroot for an even root"))
}

/// Coefficients c_0..c_maxdeg of the Garland series acting on the highest
/// vector: c_0 = 1 and k·c_k = −Σ_{i=1..k} ψ(H_α ⊗ aⁱ)·c_{k−i}.
pub fn garland_scalars(
    psi: &MapWeight,
    a: &Polynomial,
    sys: &SimpleSystem,
    chev: &ChevalleyData,
    pos_idx: usize,
    maxdeg: usize,
) -> Result<Vec<Scalar>> {
    let h_dual = even_positive_coroot(sys, chev, pos_idx)?;
    let mut c = Vec::with_capacity(maxdeg + 1);
    c.push(Scalar::one());
    // Power sums ψ(H_α ⊗ aⁱ).
    let mut powers = Vec::with_capacity(maxdeg + 1);
    let mut apow = Polynomial::one();
    for _ in 0..maxdeg {
        apow = &apow * a;
        powers.push(psi.eval_poly(h_dual, &apow));
    }
    for k in 1..=maxdeg {
        let mut acc = Scalar::zero();
        for i in 1..=k {
            acc += &powers[i - 1] * &c[k - i];
        }
        let kk = Scalar::from_int(k as i64).inv()?;
        c.push(-(acc * kk));
    }
    Ok(c)
}

/// The closed product form of the same coefficients: the expansion of
/// ∏ᵢ (1 − a(zᵢ)·u)^{λᵢ(H_α)} to the requested degree.
pub fn garland_product_form(
    psi: &MapWeight,
    a: &Polynomial,
    sys: &SimpleSystem,
    chev: &ChevalleyData,
    pos_idx: usize,
    maxdeg: usize,
) -> Result<Vec<Scalar>> {
    let h_dual = even_positive_coroot(sys, chev, pos_idx)?;
    // Polynomial in u with scalar coefficients.
    let mut prod = Polynomial::one();
    for (z, lam) in psi.entries() {
        let m = lam
            .pair(h_dual)
            .to_i64()
            .filter(|&x| x >= 0)
            .ok_or_else(|| Error::internal("component pairing is not a natural number"))?;
        let factor = Polynomial::from_coeffs(vec![Scalar::one(), -a.eval(z)]);
        prod = &prod * &factor.pow(m as u32);
    }
    Ok((0..=maxdeg).map(|k| prod.coeff(k)).collect())
}

/// The annihilator polynomial Q_α = ∏ᵢ (t − zᵢ)^{λᵢ(H_α)}. In any module
/// with highest map-weight ψ, (Y_α ⊗ f·Q_α)·w = 0 for every polynomial f.
pub fn even_root_annihilator(
    psi: &MapWeight,
    sys: &SimpleSystem,
    chev: &ChevalleyData,
    pos_idx: usize,
) -> Result<Polynomial> {
    let h_dual = even_positive_coroot(sys, chev, pos_idx)?;
    let mut q = Polynomial::one();
    for (z, lam) in psi.entries() {
        let m = lam
            .pair(h_dual)
            .to_i64()
            .filter(|&x| x >= 0)
            .ok_or_else(|| Error::internal("component pairing is not a natural number"))?;
        q = &q * &Polynomial::linear(z).pow(m as u32);
    }
    Ok(q)
}

/// Evaluates the residual of the Garland identity in a constructed
/// module:
///   (X_α⊗a)^m (Y_α⊗1)^{m+1} w − (−1)^m Σᵢ (Y_α⊗a^{m−i}) cᵢ w.
/// The difference of the two sides lies in U(g⊗A)(n⁺⊗A), which kills the
/// cyclic vector, so the residual must be exactly zero.
pub fn garland_identity_check(
    module: &WeightModule,
    m: usize,
    a: &Polynomial,
    pos_idx: usize,
) -> Result<ModuleVector> {
    let chev = module.chev.clone();
    let sys = &module.sys;
    let _ = even_positive_coroot(sys, &chev, pos_idx)?;
    let w = module.cyclic_vector();
    let x = chev.x[pos_idx].clone();
    let y = chev.y[pos_idx].clone();
    let one = Polynomial::one();

    // Left side: lower m+1 times with Y_α ⊗ 1, then raise m times with
    // X_α ⊗ a.
    let mut lhs = w.clone();
    for _ in 0..=m {
        lhs = module.act_poly(&y, &one, &lhs)?;
    }
    for _ in 0..m {
        lhs = module.act_poly(&x, a, &lhs)?;
    }

    // Right side: (−1)^m Σ cᵢ (Y_α ⊗ a^{m−i}) w.
    let c = garland_scalars(&module.psi, a, sys, &chev, pos_idx, m)?;
    let sign = if m % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
    let mut rhs = ModuleVector::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let apow = a.pow((m - i) as u32);
        let term = module.act_poly(&y, &apow, &w)?;
        rhs = rhs.add(&term.scaled(&(&sign * ci)))?;
    }
    lhs.sub(&rhs)
}
