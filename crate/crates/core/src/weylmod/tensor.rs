//! Tensor products of weight modules with the Koszul sign rule, and the
//! factorization check for local Weyl modules at disjoint supports.

use super::{local_weyl, Character, MapWeight, ModuleContext, ModuleVector, TruncationPlan, WeightModule};
use crate::algebra_base::{Polynomial, Scalar};
use crate::liesuper::Combo;
use crate::rootdata::{Parity, Weight};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The tensor product of two modules over the same g and simple system.
/// Truncations of the factors may differ: the action of x ⊗ a restricts
/// along the diagonal embedding and each factor reduces `a` in its own
/// coefficient algebra.
pub struct TensorModule {
    pub left: Arc<WeightModule>,
    pub right: Arc<WeightModule>,
    spaces: Vec<TensorSpace>,
    /// (left space, left index, right space, right index) → (space, pos).
    index: BTreeMap<(usize, usize, usize, usize), (usize, usize)>,
}

pub struct TensorSpace {
    pub weight: Weight,
    /// Basis entries (left space, left index, right space, right index).
    pub basis: Vec<(usize, usize, usize, usize)>,
    pub parities: Vec<Parity>,
}

/// A homogeneous vector of a tensor module; None is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector(pub Option<(usize, Vec<Scalar>)>);

impl TensorVector {
    pub fn zero() -> Self {
        TensorVector(None)
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            None => true,
            Some((_, v)) => v.iter().all(Scalar::is_zero),
        }
    }

    fn add_term(&mut self, space: usize, pos: usize, dim: usize, c: &Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match &mut self.0 {
            None => {
                let mut v = vec![Scalar::zero(); dim];
                v[pos] = c.clone();
                self.0 = Some((space, v));
            }
            Some((s, v)) => {
                if *s != space {
                    return Err(Error::invalid("mixing weights in a tensor vector"));
                }
                v[pos] += c.clone();
            }
        }
        Ok(())
    }

    pub fn sub(&self, other: &TensorVector) -> Result<TensorVector> {
        match (&self.0, &other.0) {
            (None, None) => Ok(TensorVector::zero()),
            (Some((s, v)), None) => Ok(TensorVector(Some((*s, v.clone())))),
            (None, Some((s, v))) => {
                Ok(TensorVector(Some((*s, v.iter().map(|c| -c).collect()))))
            }
            (Some((s1, v1)), Some((s2, v2))) => {
                if s1 != s2 {
                    return Err(Error::invalid("subtracting tensor vectors of different weights"));
                }
                Ok(TensorVector(Some((*s1, v1.iter().zip(v2).map(|(a, b)| a - b).collect()))))
            }
        }
    }
}

/// Builds the tensor product module. Basis = pairs of factor basis
/// vectors with parity sums; the character is the convolution of the
/// factor characters.
pub fn tensor_module(left: Arc<WeightModule>, right: Arc<WeightModule>) -> Result<TensorModule> {
    if left.family != right.family {
        return Err(Error::invalid("tensor factors live over different algebras"));
    }
    let lb: Vec<_> = left.sys.base().iter().map(|r| r.coords.clone()).collect();
    let rb: Vec<_> = right.sys.base().iter().map(|r| r.coords.clone()).collect();
    if lb != rb {
        return Err(Error::invalid("tensor factors use different simple systems"));
    }
    let mut grouped: BTreeMap<Weight, Vec<(usize, usize, usize, usize)>> = BTreeMap::new();
    for (ls, lsp) in left.spaces().iter().enumerate() {
        if lsp.dim == 0 {
            continue;
        }
        for (rs, rsp) in right.spaces().iter().enumerate() {
            if rsp.dim == 0 {
                continue;
            }
            let w = lsp.weight.add(&rsp.weight);
            let entry = grouped.entry(w).or_default();
            for li in 0..lsp.dim {
                for ri in 0..rsp.dim {
                    entry.push((ls, li, rs, ri));
                }
            }
        }
    }
    let mut spaces = Vec::new();
    let mut index = BTreeMap::new();
    for (weight, basis) in grouped {
        let parities: Vec<Parity> = basis
            .iter()
            .map(|&(ls, li, rs, ri)| {
                left.spaces()[ls].parities[li].combine(right.spaces()[rs].parities[ri])
            })
            .collect();
        for (pos, key) in basis.iter().enumerate() {
            index.insert(*key, (spaces.len(), pos));
        }
        spaces.push(TensorSpace { weight, basis, parities });
    }
    Ok(TensorModule { left, right, spaces, index })
}

impl TensorModule {
    pub fn dimension(&self) -> usize {
        self.spaces.iter().map(|s| s.basis.len()).sum()
    }

    pub fn spaces(&self) -> &[TensorSpace] {
        &self.spaces
    }

    pub fn character(&self) -> Character {
        Character(
            self.spaces
                .iter()
                .map(|s| (s.weight.clone(), s.basis.len()))
                .collect(),
        )
    }

    /// w_left ⊗ w_right.
    pub fn cyclic_vector(&self) -> Result<TensorVector> {
        let lw = self.left.cyclic_vector();
        let rw = self.right.cyclic_vector();
        let (ls, lv) = lw.0.ok_or_else(|| Error::internal("left factor has no cyclic vector"))?;
        let (rs, rv) = rw.0.ok_or_else(|| Error::internal("right factor has no cyclic vector"))?;
        let mut out = TensorVector::zero();
        for (li, lc) in lv.iter().enumerate() {
            for (ri, rc) in rv.iter().enumerate() {
                let &(space, pos) = self
                    .index
                    .get(&(ls, li, rs, ri))
                    .ok_or_else(|| Error::internal("cyclic pair missing from tensor basis"))?;
                out.add_term(space, pos, self.spaces[space].basis.len(), &(lc * rc))?;
            }
        }
        Ok(out)
    }

    /// Action of x ⊗ a with x a homogeneous g-combination:
    /// x(u⊗v) = xu⊗v + (−1)^{|x||u|} u⊗xv.
    pub fn act_poly(&self, combo: &Combo, a: &Polynomial, v: &TensorVector) -> Result<TensorVector> {
        let Some((space_idx, coeffs)) = &v.0 else {
            return Ok(TensorVector::zero());
        };
        let x_parity = self
            .left
            .g
            .combo_parity(combo)
            .ok_or_else(|| Error::invalid("tensor action requires a homogeneous element"))?;
        let space = &self.spaces[*space_idx];
        let mut out = TensorVector::zero();
        for (pos, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (ls, li, rs, ri) = space.basis[pos];
            // Left action.
            let mut lbasis = ModuleVector(Some((
                ls,
                unit_vec(self.left.spaces()[ls].dim, li),
            )));
            lbasis = self.left.act_poly(combo, a, &lbasis)?;
            if let Some((ls2, lv)) = lbasis.0 {
                for (li2, lc) in lv.iter().enumerate() {
                    if lc.is_zero() {
                        continue;
                    }
                    if let Some(&(tspace, tpos)) = self.index.get(&(ls2, li2, rs, ri)) {
                        out.add_term(tspace, tpos, self.spaces[tspace].basis.len(), &(c * lc))?;
                    } else {
                        return Err(Error::internal("tensor image outside basis"));
                    }
                }
            }
            // Right action with the Koszul sign.
            let u_parity = self.left.spaces()[ls].parities[li];
            let sign = if x_parity == Parity::Odd && u_parity == Parity::Odd {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };
            let mut rbasis = ModuleVector(Some((
                rs,
                unit_vec(self.right.spaces()[rs].dim, ri),
            )));
            rbasis = self.right.act_poly(combo, a, &rbasis)?;
            if let Some((rs2, rv)) = rbasis.0 {
                for (ri2, rc) in rv.iter().enumerate() {
                    if rc.is_zero() {
                        continue;
                    }
                    if let Some(&(tspace, tpos)) = self.index.get(&(ls, li, rs2, ri2)) {
                        out.add_term(
                            tspace,
                            tpos,
                            self.spaces[tspace].basis.len(),
                            &(&(c * rc) * &sign),
                        )?;
                    } else {
                        return Err(Error::internal("tensor image outside basis"));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn unit_vec(dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = Scalar::one();
    v
}

/// Report of the tensor-factorization check for local Weyl modules.
pub struct TensorReport {
    pub char_left: Character,
    pub char_right: Character,
    pub char_sum: Character,
    pub convolution: Character,
    pub dims: (usize, usize, usize),
    pub truncations: (u32, u32, u32),
    pub holds: bool,
}

/// Verifies ch W(ψ₁+ψ₂) = ch W(ψ₁)·ch W(ψ₂) for map weights with
/// disjoint supports. Overlapping supports violate the hypothesis and are
/// refused rather than reported false.
pub fn verify_tensor_theorem(
    ctx: &ModuleContext,
    psi1: &MapWeight,
    psi2: &MapWeight,
    max_dim: usize,
) -> Result<TensorReport> {
    let i1 = psi1.eval_ideal();
    let i2 = psi2.eval_ideal();
    if !i1.support_disjoint(&i2) {
        return Err(Error::invalid(
            "evaluation supports overlap; the factorization hypothesis fails",
        ));
    }
    let plan1 = TruncationPlan::default_for(psi1, &ctx.sys, &ctx.rs)?;
    let plan2 = TruncationPlan::default_for(psi2, &ctx.sys, &ctx.rs)?;
    let psi_sum = psi1.merge(psi2, &ctx.sys)?;
    let plan_sum = TruncationPlan::default_for(&psi_sum, &ctx.sys, &ctx.rs)?;
    let w1 = super::local_weyl_with_max_dim(ctx, psi1, plan1, max_dim)?;
    let w2 = super::local_weyl_with_max_dim(ctx, psi2, plan2, max_dim)?;
    let w12 = super::local_weyl_with_max_dim(ctx, &psi_sum, plan_sum, max_dim)?;
    let _ = local_weyl;
    let char_left = w1.character();
    let char_right = w2.character();
    let char_sum = w12.character();
    let convolution = char_left.convolve(&char_right);
    let holds = char_sum == convolution;
    Ok(TensorReport {
        dims: (w1.dimension(), w2.dimension(), w12.dimension()),
        truncations: (w1.truncation, w2.truncation, w12.truncation),
        char_left,
        char_right,
        char_sum,
        convolution,
        holds,
    })
}
