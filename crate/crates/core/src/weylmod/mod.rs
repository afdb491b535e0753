//! The module engine: map weights ψ, generalized Kac modules, local Weyl
//! modules computed through truncations, Garland series, characters,
//! tensor products, and the tensor-factorization verifier.

mod engine;
mod garland;
mod oracle;
mod tensor;

pub use garland::{
    even_root_annihilator, garland_identity_check, garland_product_form, garland_scalars,
};
pub use oracle::brute_force_character;
pub use tensor::{tensor_module, verify_tensor_theorem, TensorModule, TensorReport, TensorVector};

use crate::algebra_base::{truncated_algebra, FactoredIdeal, FinDimCommAlgebra, Polynomial, Scalar};
use crate::liesuper::{chevalley_data, realize, ChevalleyData, Combo, LieSuperalgebra};
use crate::rootdata::{
    check_condition, lambda_plus_check, root_system, system_from_selector, Parity, RootSystem,
    SimpleSystem, Weight,
};
use crate::{Error, Result};
use engine::{Engine, EngineOutput, SpaceData};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// Everything needed to build modules over one (family, simple system)
/// pair: the root datum, the realization, and the Chevalley data.
pub struct ModuleContext {
    pub rs: Arc<RootSystem>,
    pub sys: SimpleSystem,
    pub g: Arc<LieSuperalgebra>,
    pub chev: Arc<ChevalleyData>,
}

impl ModuleContext {
    pub fn new(family: &crate::rootdata::Family, selector: &str) -> Result<ModuleContext> {
        let (rs, _) = root_system(family)?;
        let sys = system_from_selector(&rs, selector)?;
        let g = Arc::new(realize(family)?);
        let chev = Arc::new(chevalley_data(&g, &rs, &sys)?);
        Ok(ModuleContext { rs: Arc::new(rs), sys, g, chev })
    }

    pub fn with_system(&self, sys: SimpleSystem) -> Result<ModuleContext> {
        let chev = Arc::new(chevalley_data(&self.g, &self.rs, &sys)?);
        Ok(ModuleContext { rs: self.rs.clone(), sys, g: self.g.clone(), chev })
    }
}

/// A finitely supported evaluation functional on h⊗ℚ[t]:
/// ψ(h ⊗ t^k) = Σᵢ λᵢ(h)·zᵢ^k over pairwise-distinct points zᵢ with
/// nonzero weights λᵢ, each required to be dominant integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapWeight {
    entries: Vec<(Scalar, Weight)>,
    restriction: Weight,
}

impl MapWeight {
    pub fn entries(&self) -> &[(Scalar, Weight)] {
        &self.entries
    }

    /// ψ|_h = Σᵢ λᵢ.
    pub fn restriction(&self) -> &Weight {
        &self.restriction
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// ψ(h ⊗ t^k) for a Cartan element given by its dual coordinates.
    pub fn eval_power(&self, h_dual: &[Scalar], k: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (z, lam) in &self.entries {
            acc += lam.pair(h_dual) * z.pow(k as u32);
        }
        acc
    }

    /// ψ(h ⊗ a) for a polynomial a.
    pub fn eval_poly(&self, h_dual: &[Scalar], a: &Polynomial) -> Scalar {
        let mut acc = Scalar::zero();
        for (z, lam) in &self.entries {
            acc += lam.pair(h_dual) * a.eval(z);
        }
        acc
    }

    /// The evaluation ideal ∏ (t − zᵢ); the unit ideal for ψ = 0.
    pub fn eval_ideal(&self) -> FactoredIdeal {
        FactoredIdeal::from_points(self.entries.iter().map(|(z, _)| (z.clone(), 1)))
    }

    /// Pointwise sum of two map weights; weights at shared points add.
    pub fn merge(&self, other: &MapWeight, sys: &SimpleSystem) -> Result<MapWeight> {
        let mut entries: Vec<(Scalar, Weight)> = self.entries.clone();
        for (z, lam) in &other.entries {
            if let Some(e) = entries.iter_mut().find(|(p, _)| p == z) {
                e.1 = e.1.add(lam);
            } else {
                entries.push((z.clone(), lam.clone()));
            }
        }
        psi_make(entries, sys)
    }
}

/// Builds and validates a map weight from (point, weight) entries.
/// Zero-weight entries are dropped; duplicate points are rejected; every
/// component weight and the restriction must be dominant integral.
pub fn psi_make(entries: Vec<(Scalar, Weight)>, sys: &SimpleSystem) -> Result<MapWeight> {
    let mut seen: Vec<&Scalar> = vec![];
    for (z, _) in &entries {
        if seen.contains(&z) {
            return Err(Error::invalid(format!("duplicate evaluation point {z}")));
        }
        seen.push(z);
    }
    for (z, lam) in &entries {
        if !lambda_plus_check(lam, sys) {
            return Err(Error::invalid(format!(
                "component weight at point {z} is not dominant integral"
            )));
        }
    }
    let dim = entries
        .first()
        .map(|(_, w)| w.dim())
        .unwrap_or_else(|| sys.base().first().map(|r| r.coords.len()).unwrap_or(0));
    let mut kept: Vec<(Scalar, Weight)> =
        entries.into_iter().filter(|(_, w)| !w.is_zero()).collect();
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    let mut restriction = Weight::zero(dim);
    for (_, w) in &kept {
        restriction = restriction.add(w);
    }
    if !lambda_plus_check(&restriction, sys) {
        return Err(Error::invalid("restriction of ψ to h is not dominant integral"));
    }
    Ok(MapWeight { entries: kept, restriction })
}

/// Truncation plan for local Weyl computations: work over
/// B = ℚ[t]/I_eval^M, optionally increasing M until two consecutive
/// truncations agree.
#[derive(Clone, Copy, Debug)]
pub struct TruncationPlan {
    pub exponent: u32,
    pub adaptive: bool,
}

impl TruncationPlan {
    /// The conservative default exponent:
    /// max(1, max_{α ∈ Δ₀⁺} λ(H_α)) × (height of the highest root).
    /// Together with the even-root annihilators and the height induction
    /// this exponent provably reaches the stable module.
    pub fn default_for(psi: &MapWeight, sys: &SimpleSystem, rs: &RootSystem) -> Result<Self> {
        let lambda = psi.restriction();
        let mut max_val: i64 = 0;
        for root in sys.positive_roots().iter().filter(|r| r.parity == Parity::Even) {
            let v = lambda.pair(&rs.coroot(root));
            let vi = v
                .to_i64()
                .ok_or_else(|| Error::internal("non-integral pairing on an even coroot"))?;
            max_val = max_val.max(vi);
        }
        let exponent = (max_val.max(1) as u32) * sys.max_height().max(1);
        Ok(TruncationPlan { exponent, adaptive: true })
    }

    pub fn forced(exponent: u32) -> Self {
        TruncationPlan { exponent, adaptive: false }
    }
}

/// Weight-multiplicity function of a module; finitely supported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character(pub BTreeMap<Weight, usize>);

impl Character {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn get(&self, w: &Weight) -> usize {
        self.0.get(w).copied().unwrap_or(0)
    }

    /// Convolution: the character of a tensor product.
    pub fn convolve(&self, other: &Character) -> Character {
        let mut out: BTreeMap<Weight, usize> = BTreeMap::new();
        for (wa, ma) in &self.0 {
            for (wb, mb) in &other.0 {
                *out.entry(wa.add(wb)).or_insert(0) += ma * mb;
            }
        }
        Character(out)
    }
}

/// A vector in a weight module, homogeneous of one weight. `None` is the
/// zero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector(pub Option<(usize, Vec<Scalar>)>);

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector(None)
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            None => true,
            Some((_, coeffs)) => coeffs.iter().all(Scalar::is_zero),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero();
        }
        ModuleVector(self.0.as_ref().map(|(s, v)| (*s, v.iter().map(|x| x * c).collect())))
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        match (&self.0, &other.0) {
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            (Some((s1, v1)), Some((s2, v2))) => {
                if s1 != s2 {
                    return Err(Error::invalid("adding vectors of different weights"));
                }
                Ok(ModuleVector(Some((*s1, v1.iter().zip(v2).map(|(a, b)| a + b).collect()))))
            }
        }
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.add(&other.scaled(&Scalar::from_int(-1)))
    }
}

/// One weight space of a computed module, with labeled basis vectors.
pub struct ModuleSpace {
    pub weight: Weight,
    pub drop: Vec<u32>,
    pub dim: usize,
    pub parities: Vec<Parity>,
    pub labels: Vec<String>,
}

/// A computed cyclic weight module (generalized Kac module or truncated
/// local Weyl module) with its full action machinery retained. Immutable
/// after construction; the interior lock only guards the rewriting memo.
pub struct WeightModule {
    pub family: crate::rootdata::Family,
    pub sys: SimpleSystem,
    pub rs: Arc<RootSystem>,
    pub g: Arc<LieSuperalgebra>,
    pub chev: Arc<ChevalleyData>,
    pub b: Arc<FinDimCommAlgebra>,
    pub psi: MapWeight,
    pub lambda: Weight,
    /// Truncation exponent actually used.
    pub truncation: u32,
    /// Exponent at which the adaptive loop observed stabilization.
    pub stabilized_at: Option<u32>,
    spaces: Vec<ModuleSpace>,
    drop_to_space: BTreeMap<Vec<u32>, usize>,
    inner: Mutex<EngineInner>,
}

struct EngineInner {
    engine: Engine,
    data: BTreeMap<Vec<u32>, SpaceData>,
}

impl WeightModule {
    pub fn dimension(&self) -> usize {
        self.spaces.iter().map(|s| s.dim).sum()
    }

    pub fn spaces(&self) -> &[ModuleSpace] {
        &self.spaces
    }

    pub fn space_of_weight(&self, w: &Weight) -> Option<usize> {
        self.spaces.iter().position(|s| &s.weight == w)
    }

    pub fn character(&self) -> Character {
        Character(
            self.spaces
                .iter()
                .filter(|s| s.dim > 0)
                .map(|s| (s.weight.clone(), s.dim))
                .collect(),
        )
    }

    /// The cyclic highest-weight vector.
    pub fn cyclic_vector(&self) -> ModuleVector {
        let top = self.drop_to_space[&vec![0u32; self.sys.rank()]];
        let mut coeffs = vec![Scalar::zero(); self.spaces[top].dim];
        coeffs[0] = Scalar::one();
        ModuleVector(Some((top, coeffs)))
    }

    /// Applies the algebra basis element x_{gi} ⊗ b_{bi} to a module
    /// vector. A result whose weight leaves the frontier is the zero
    /// vector (logged); this is only legal for vectors that die.
    pub fn act(&self, gi: usize, bi: usize, v: &ModuleVector) -> Result<ModuleVector> {
        let Some((space_idx, coeffs)) = &v.0 else {
            return Ok(ModuleVector::zero());
        };
        let space = &self.spaces[*space_idx];
        if coeffs.len() != space.dim {
            return Err(Error::invalid("module vector has wrong length"));
        }
        let mut inner = self.inner.lock().expect("engine lock");
        let EngineInner { engine, data } = &mut *inner;
        let src = &data[&space.drop];
        // Lift to the free space F, act, then reduce mod the relations.
        let mut acc: engine::LinComb = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = src.monomials[src.module_basis[k]].clone();
            let image = engine.mult_elem(gi, bi, &mono);
            for (m, ic) in image {
                let e = acc.entry(m).or_insert_with(Scalar::zero);
                *e += c * &ic;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let Some(first) = acc.keys().next() else {
            return Ok(ModuleVector::zero());
        };
        let tdrop = engine.mono_drop(first);
        let Some(target) = data.get(&tdrop) else {
            log::warn!("action image left the working region at drop {tdrop:?}; it must vanish");
            return Ok(ModuleVector::zero());
        };
        let mut dense = vec![Scalar::zero(); target.monomials.len()];
        for (m, c) in acc {
            let pos = *target
                .index
                .get(&m)
                .ok_or_else(|| Error::internal("action image outside enumerated basis"))?;
            dense[pos] = c;
        }
        let reduced = target.nspace.reduce(dense);
        if !target.in_frontier {
            if reduced.iter().any(|c| !c.is_zero()) {
                return Err(Error::internal("action image survives outside the frontier"));
            }
            return Ok(ModuleVector::zero());
        }
        let out: Vec<Scalar> =
            target.module_basis.iter().map(|&pos| reduced[pos].clone()).collect();
        let tspace = self.drop_to_space[&tdrop];
        if out.iter().all(Scalar::is_zero) {
            return Ok(ModuleVector::zero());
        }
        Ok(ModuleVector(Some((tspace, out))))
    }

    /// Applies Σ cᵢ·(xᵢ ⊗ b) for a g-combination and a B-coefficient
    /// vector (typically the reduction of a polynomial into B).
    pub fn act_element(
        &self,
        combo: &Combo,
        b_coeffs: &[Scalar],
        v: &ModuleVector,
    ) -> Result<ModuleVector> {
        let mut acc = ModuleVector::zero();
        for (gi, c) in combo {
            for (bi, bc) in b_coeffs.iter().enumerate() {
                if bc.is_zero() {
                    continue;
                }
                let img = self.act(*gi, bi, v)?;
                acc = acc.add(&img.scaled(&(c * bc)))?;
            }
        }
        Ok(acc)
    }

    /// Applies x ⊗ a for a polynomial a (reduced into B).
    pub fn act_poly(
        &self,
        combo: &Combo,
        a: &Polynomial,
        v: &ModuleVector,
    ) -> Result<ModuleVector> {
        let b_coeffs = self.b.reduce(a);
        self.act_element(combo, &b_coeffs, v)
    }

    /// Per-weight dimension map keyed by drop coordinates.
    pub fn dims_by_drop(&self) -> BTreeMap<Vec<u32>, usize> {
        self.spaces.iter().map(|s| (s.drop.clone(), s.dim)).collect()
    }
}

fn psi_table(g: &LieSuperalgebra, b: &FinDimCommAlgebra, psi: &MapWeight) -> Vec<Vec<Scalar>> {
    g.cartan_dual()
        .iter()
        .map(|dual| (0..b.dim()).map(|k| psi.eval_power(dual, k)).collect())
        .collect()
}

fn power_relations(ctx: &ModuleContext, lambda: &Weight) -> Result<Vec<engine::PowerRelation>> {
    let mut rels = Vec::new();
    for (alpha, h) in ctx.sys.even_simple().iter().zip(ctx.sys.even_coroots()) {
        let v = lambda.pair(h);
        let vi = v
            .to_i64()
            .filter(|&x| x >= 0)
            .ok_or_else(|| Error::invalid("weight is not dominant integral"))?;
        let pos = ctx
            .sys
            .positive_index(&alpha.coords)
            .ok_or_else(|| Error::internal("even simple root missing from positives"))?;
        rels.push(engine::PowerRelation { pos_idx: pos, exponent: vi as u32 + 1 });
    }
    Ok(rels)
}

fn assemble_module(
    ctx: &ModuleContext,
    b: Arc<FinDimCommAlgebra>,
    psi: MapWeight,
    out: EngineOutput,
    truncation: u32,
) -> Result<WeightModule> {
    let EngineOutput { engine, spaces: data, frontier, lambda } = out;
    let mut spaces = Vec::new();
    let mut drop_to_space = BTreeMap::new();
    for drop in &frontier {
        let sd = &data[drop];
        let dim = sd.module_basis.len();
        let mut weight = lambda.clone();
        for (j, &c) in drop.iter().enumerate() {
            weight = weight.sub_root(&ctx.sys.base()[j], &Scalar::from_int(c as i64));
        }
        let parities: Vec<Parity> = sd
            .module_basis
            .iter()
            .map(|&p| engine.mono_parity(&sd.monomials[p]))
            .collect();
        let labels: Vec<String> = sd
            .module_basis
            .iter()
            .map(|&p| engine.mono_label(&sd.monomials[p]))
            .collect();
        drop_to_space.insert(drop.clone(), spaces.len());
        spaces.push(ModuleSpace { weight, drop: drop.clone(), dim, parities, labels });
    }
    let module = WeightModule {
        family: ctx.rs.family.clone(),
        sys: ctx.sys.clone(),
        rs: ctx.rs.clone(),
        g: ctx.g.clone(),
        chev: ctx.chev.clone(),
        b,
        psi,
        lambda,
        truncation,
        stabilized_at: None,
        spaces,
        drop_to_space,
        inner: Mutex::new(EngineInner { engine, data }),
    };
    check_weyl_invariance(&module)?;
    Ok(module)
}

/// The character of a completed module must be invariant under the even
/// Weyl group; simple reflections generate it.
fn check_weyl_invariance(module: &WeightModule) -> Result<()> {
    let ch = module.character();
    for (w, m) in &ch.0 {
        for (alpha, h) in module.sys.even_simple().iter().zip(module.sys.even_coroots()) {
            let refl = w.sub_root(alpha, &w.pair(h));
            if ch.get(&refl) != *m {
                return Err(Error::internal(format!(
                    "character is not Weyl invariant at weight {w}"
                )));
            }
        }
    }
    Ok(())
}

/// The generalized Kac module: the g-module generated by a highest
/// weight vector with the even-simple power relations, computed over the
/// one-dimensional coefficient algebra.
pub fn kac_module(ctx: &ModuleContext, lambda: &Weight) -> Result<WeightModule> {
    kac_module_with(ctx, lambda, &engine::BuildParams::default())
}

pub fn kac_module_with_max_dim(
    ctx: &ModuleContext,
    lambda: &Weight,
    max_dim: usize,
) -> Result<WeightModule> {
    kac_module_with(ctx, lambda, &engine::BuildParams { max_dim })
}

fn kac_module_with(
    ctx: &ModuleContext,
    lambda: &Weight,
    params: &engine::BuildParams,
) -> Result<WeightModule> {
    if !lambda_plus_check(lambda, &ctx.sys) {
        return Err(Error::invalid("weight is not dominant integral for the even part"));
    }
    let ideal = FactoredIdeal::from_points([(Scalar::zero(), 1)]);
    let b = Arc::new(truncated_algebra(&ideal)?);
    let psi = psi_make(vec![(Scalar::zero(), lambda.clone())], &ctx.sys)?;
    let table = psi_table(&ctx.g, &b, &psi);
    let rels = power_relations(ctx, lambda)?;
    let out = engine::build(
        ctx.g.clone(),
        b.clone(),
        &ctx.rs,
        &ctx.sys,
        table,
        lambda.clone(),
        &rels,
        params,
    )?;
    assemble_module(ctx, b, psi, out, 1)
}

/// The local Weyl module of ψ, computed as the quotient by the extra
/// relations (g ⊗ I_eval^M)·w over B = ℚ[t]/I_eval^M. Dimensions are
/// nondecreasing in M; with `adaptive` the exponent is raised until two
/// consecutive truncations agree. The conservative seed already
/// guarantees agreement, so having to move past it is logged.
pub fn local_weyl(
    ctx: &ModuleContext,
    psi: &MapWeight,
    plan: TruncationPlan,
) -> Result<WeightModule> {
    local_weyl_with(ctx, psi, plan, &engine::BuildParams::default())
}

pub fn local_weyl_with_max_dim(
    ctx: &ModuleContext,
    psi: &MapWeight,
    plan: TruncationPlan,
    max_dim: usize,
) -> Result<WeightModule> {
    local_weyl_with(ctx, psi, plan, &engine::BuildParams { max_dim })
}

fn local_weyl_with(
    ctx: &ModuleContext,
    psi: &MapWeight,
    plan: TruncationPlan,
    params: &engine::BuildParams,
) -> Result<WeightModule> {
    let report = check_condition(&ctx.rs, &ctx.sys);
    if !report.holds {
        return Err(Error::unsupported(
            "simple system violates the odd-partner condition; the finiteness argument \
             is unavailable for local Weyl modules",
        ));
    }
    if plan.exponent < 1 {
        return Err(Error::invalid("truncation exponent must be at least 1"));
    }
    let lambda = psi.restriction().clone();
    if !lambda_plus_check(&lambda, &ctx.sys) {
        return Err(Error::invalid("restriction of ψ is not dominant integral"));
    }
    let build_at = |m: u32| -> Result<WeightModule> {
        let ideal = if psi.is_zero() {
            FactoredIdeal::from_points([(Scalar::zero(), 1)])
        } else {
            psi.eval_ideal().power(m)?
        };
        let b = Arc::new(truncated_algebra(&ideal)?);
        let table = psi_table(&ctx.g, &b, psi);
        let rels = power_relations(ctx, &lambda)?;
        let out = engine::build(
            ctx.g.clone(),
            b.clone(),
            &ctx.rs,
            &ctx.sys,
            table,
            lambda.clone(),
            &rels,
            params,
        )?;
        assemble_module(ctx, b, psi.clone(), out, m)
    };
    if !plan.adaptive {
        return build_at(plan.exponent);
    }
    let mut m = plan.exponent;
    let mut current = build_at(m)?;
    loop {
        let next = build_at(m + 1)?;
        if next.dimension() < current.dimension() {
            return Err(Error::internal(
                "truncated module dimensions decreased with the exponent",
            ));
        }
        if next.character() == current.character() {
            if m != plan.exponent {
                log::warn!(
                    "truncation stabilized at {m}, beyond the seed {}",
                    plan.exponent
                );
            }
            let mut module = current;
            module.stabilized_at = Some(m);
            return Ok(module);
        }
        if m > plan.exponent + 8 {
            return Err(Error::internal(
                "truncation failed to stabilize within 8 exponents past the seed",
            ));
        }
        m += 1;
        current = next;
    }
}

/// The character of a module (finitely supported; total = dimension).
pub fn character(module: &WeightModule) -> Character {
    module.character()
}


#[cfg(test)]
mod garland_tests {
    use super::tests::{ctx, psi_at};
    use super::*;
    use crate::algebra_base::Polynomial;

    fn poly_t() -> Polynomial {
        Polynomial::t()
    }

    fn poly_t_minus_1() -> Polynomial {
        Polynomial::linear(&Scalar::one())
    }

    fn poly_t_sq() -> Polynomial {
        Polynomial::t().pow(2)
    }

    #[test]
    fn scalars_examples() {
        let c = ctx("sl:2", "good");
        let alpha = 0; // the unique positive root, height 1
        // psi = 0: the series is identically 1.
        let psi0 = psi_make(vec![], &c.sys).unwrap();
        let s = garland_scalars(&psi0, &poly_t(), &c.sys, &c.chev, alpha, 4).unwrap();
        assert_eq!(s[0], Scalar::one());
        assert!(s[1..].iter().all(Scalar::is_zero));
        // psi = m@0 with a = t: a(0) = 0, so again (1, 0, 0, ...).
        let psi_m = psi_at(&c, &[(0, &[3])]);
        let s2 = garland_scalars(&psi_m, &poly_t(), &c.sys, &c.chev, alpha, 4).unwrap();
        assert_eq!(s2[0], Scalar::one());
        assert!(s2[1..].iter().all(Scalar::is_zero));
        // psi = 1@1 with a = t: the series is 1 - u.
        let psi_1 = psi_at(&c, &[(1, &[1])]);
        let s3 = garland_scalars(&psi_1, &poly_t(), &c.sys, &c.chev, alpha, 3).unwrap();
        assert_eq!(s3, vec![Scalar::one(), Scalar::from_int(-1), Scalar::zero(), Scalar::zero()]);
        // Odd roots are rejected.
        let c2 = ctx("osp:1,2", "good");
        let psi_o = psi_make(vec![], &c2.sys).unwrap();
        let delta = c2.sys.positive_index(&[1]).unwrap();
        assert!(garland_scalars(&psi_o, &poly_t(), &c2.sys, &c2.chev, delta, 2).is_err());
    }

    #[test]
    fn scalars_agree_with_product_form() {
        // Recursion vs closed product form to degree 6, several psi and a.
        let c = ctx("sl:2", "good");
        let psis = [
            psi_at(&c, &[(0, &[2])]),
            psi_at(&c, &[(0, &[1]), (1, &[1])]),
            psi_at(&c, &[(0, &[1]), (2, &[3])]),
        ];
        for psi in &psis {
            for a in [poly_t(), poly_t_minus_1(), poly_t_sq()] {
                let rec = garland_scalars(psi, &a, &c.sys, &c.chev, 0, 6).unwrap();
                let prod = garland_product_form(psi, &a, &c.sys, &c.chev, 0, 6).unwrap();
                assert_eq!(rec, prod, "a = {a}");
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let c = ctx("sl:2", "good");
        // psi = m@0: Q = t^m.
        let psi = psi_at(&c, &[(0, &[2])]);
        let q = even_root_annihilator(&psi, &c.sys, &c.chev, 0).unwrap();
        assert_eq!(q, Polynomial::t().pow(2));
        // psi = 1@0 + 1@1: Q = t(t-1).
        let psi2 = psi_at(&c, &[(0, &[1]), (1, &[1])]);
        let q2 = even_root_annihilator(&psi2, &c.sys, &c.chev, 0).unwrap();
        assert_eq!(q2, &Polynomial::t() * &poly_t_minus_1());
        // Zero pairing: Q = 1.
        let psi0 = psi_make(vec![], &c.sys).unwrap();
        assert_eq!(even_root_annihilator(&psi0, &c.sys, &c.chev, 0).unwrap(), Polynomial::one());
    }

    #[test]
    fn annihilator_contract_in_module() {
        // (Y_alpha ⊗ t^l Q_alpha) w = 0 in the constructed local Weyl
        // module, for l up to the codimension of B.
        let c = ctx("sl:2", "good");
        let psi = psi_at(&c, &[(0, &[1]), (1, &[1])]);
        let plan = TruncationPlan::default_for(&psi, &c.sys, &c.rs).unwrap();
        let module = local_weyl(&c, &psi, plan).unwrap();
        let q = even_root_annihilator(&psi, &c.sys, &c.chev, 0).unwrap();
        let w = module.cyclic_vector();
        let y = c.chev.y[0].clone();
        for l in 0..=module.b.dim() {
            let f = q.shift(l);
            let img = module.act_poly(&y, &f, &w).unwrap();
            assert!(img.is_zero(), "l = {l}");
        }
        // Spanning: (Y ⊗ t^m) w lies in span{(Y ⊗ t^l) w : l < lambda(H)}.
        // Here lambda(H) = 2, so the images of t^0 and t^1 span all of
        // them. Verify by rank computation over the weight space.
        let lam_h = 2usize;
        let mut span = crate::linalg::RowSpace::new(4);
        let mut dense = |v: &ModuleVector| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); 4];
            if let Some((s, coeffs)) = &v.0 {
                let base: usize = module.spaces()[..*s].iter().map(|sp| sp.dim).sum();
                for (i, c) in coeffs.iter().enumerate() {
                    out[base + i] = c.clone();
                }
            }
            out
        };
        for l in 0..lam_h {
            let img = module.act_poly(&y, &Polynomial::one().shift(l), &w).unwrap();
            span.insert(dense(&img));
        }
        for m in lam_h..module.b.dim() + 2 {
            let img = module.act_poly(&y, &Polynomial::one().shift(m), &w).unwrap();
            assert!(span.contains(dense(&img)), "m = {m}");
        }
    }

    #[test]
    fn annihilator_derivation_via_garland_expansion() {
        // The derivation of Q_alpha: expanding the Garland identity with
        // a = t - z at each point z yields (Y ⊗ (t-z)^l Q_alpha) w = 0;
        // the l = 0 instance at the first point is exactly Q_alpha.
        let c = ctx("sl:2", "good");
        let psi = psi_at(&c, &[(0, &[1]), (1, &[1])]);
        let plan = TruncationPlan::default_for(&psi, &c.sys, &c.rs).unwrap();
        let module = local_weyl(&c, &psi, plan).unwrap();
        let w = module.cyclic_vector();
        let y = c.chev.y[0].clone();
        let q = even_root_annihilator(&psi, &c.sys, &c.chev, 0).unwrap();
        let m = 2usize; // lambda(H_alpha)
        for (z, _) in psi.entries() {
            let a = Polynomial::linear(z);
            for extra in 0..=1usize {
                let mm = m + extra;
                let coeffs = garland_scalars(&psi, &a, &c.sys, &c.chev, 0, mm).unwrap();
                // P(t) = sum_k c_k a^{mm-k}; the relation (Y ⊗ P) w = 0.
                let mut p = Polynomial::zero();
                for (k, ck) in coeffs.iter().enumerate() {
                    p = &p + &a.pow((mm - k) as u32).scale(ck);
                }
                let img = module.act_poly(&y, &p, &w).unwrap();
                assert!(img.is_zero(), "z = {z}, extra = {extra}");
                // P equals (t-z)^extra * Q up to the identity's shape.
                let expect = &a.pow(extra as u32) * &q;
                assert_eq!(p, expect, "z = {z}, extra = {extra}");
            }
        }
    }

    #[test]
    fn identity_residuals_vanish() {
        // Residual = 0 for m <= 3, a in {t, t-1, t^2}, every even positive
        // root, in sl(2) and osp(1,2) local Weyl modules.
        for (family, entries) in [("sl:2", vec![(0i64, vec![1i64])]), ("osp:1,2", vec![(0, vec![1])])]
        {
            let c = ctx(family, "good");
            let list: Vec<(Scalar, Weight)> = entries
                .iter()
                .map(|(z, vals)| {
                    let vv: Vec<Scalar> = vals.iter().map(|&v| Scalar::from_int(v)).collect();
                    (
                        Scalar::from_int(*z),
                        crate::rootdata::weight_from_values(&c.rs, &c.sys, &vv).unwrap(),
                    )
                })
                .collect();
            let psi = psi_make(list, &c.sys).unwrap();
            let plan = TruncationPlan::default_for(&psi, &c.sys, &c.rs).unwrap();
            let module = local_weyl(&c, &psi, plan).unwrap();
            for (pos, root) in c.sys.positive_roots().iter().enumerate() {
                if root.parity != Parity::Even {
                    continue;
                }
                for m in 0..=3usize {
                    for a in [poly_t(), poly_t_minus_1(), poly_t_sq()] {
                        let res = garland_identity_check(&module, m, &a, pos).unwrap();
                        assert!(res.is_zero(), "{family} root {pos} m={m} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn m_zero_is_trivial_identity() {
        let c = ctx("sl:2", "good");
        let psi = psi_at(&c, &[(0, &[1])]);
        let module = local_weyl(&c, &psi, TruncationPlan::forced(1)).unwrap();
        let res = garland_identity_check(&module, 0, &poly_t(), 0).unwrap();
        assert!(res.is_zero());
    }
}


#[cfg(test)]
mod tensor_tests {
    use super::tests::{ctx, psi_at};
    use super::*;
    use std::sync::Arc;

    #[test]
    fn tensor_theorem_sl2() {
        let c = ctx("sl:2", "good");
        let psi1 = psi_at(&c, &[(0, &[1])]);
        let psi2 = psi_at(&c, &[(1, &[1])]);
        let report = verify_tensor_theorem(&c, &psi1, &psi2, 10_000).unwrap();
        assert!(report.holds);
        assert_eq!(report.dims, (2, 2, 4));
        // Overlapping supports are refused.
        match verify_tensor_theorem(&c, &psi1, &psi1, 10_000) {
            Err(Error::Invalid(_)) => {}
            Err(other) => panic!("expected Invalid, got {other}"),
            Ok(_) => panic!("expected refusal on overlapping supports"),
        }
    }

    #[test]
    fn tensor_theorem_osp12() {
        let c = ctx("osp:1,2", "good");
        let psi1 = psi_at(&c, &[(0, &[1])]);
        let psi2 = psi_at(&c, &[(1, &[1])]);
        let report = verify_tensor_theorem(&c, &psi1, &psi2, 10_000).unwrap();
        assert!(report.holds);
        assert_eq!(report.dims.2, report.dims.0 * report.dims.1);
    }

    #[test]
    fn trivial_tensor_preserves_character() {
        let c = ctx("sl:2", "good");
        let psi0 = psi_make(vec![], &c.sys).unwrap();
        let trivial =
            Arc::new(local_weyl(&c, &psi0, TruncationPlan::forced(1)).unwrap());
        let psi = psi_at(&c, &[(0, &[2])]);
        let plan = TruncationPlan::default_for(&psi, &c.sys, &c.rs).unwrap();
        let module = Arc::new(local_weyl(&c, &psi, plan).unwrap());
        let t = tensor_module(trivial, module.clone()).unwrap();
        assert_eq!(t.dimension(), module.dimension());
        assert_eq!(t.character(), module.character());
        // Character of a tensor is the convolution of characters.
        let t2 = tensor_module(module.clone(), module.clone()).unwrap();
        assert_eq!(t2.character(), module.character().convolve(&module.character()));
    }

    #[test]
    fn tensor_action_respects_brackets() {
        use crate::algebra_base::Polynomial;
        let c = ctx("sl:2", "good");
        let psi1 = psi_at(&c, &[(0, &[1])]);
        let psi2 = psi_at(&c, &[(1, &[1])]);
        let m1 = Arc::new(local_weyl(&c, &psi1, TruncationPlan::forced(1)).unwrap());
        let m2 = Arc::new(local_weyl(&c, &psi2, TruncationPlan::forced(1)).unwrap());
        let t = tensor_module(m1, m2).unwrap();
        let w = t.cyclic_vector().unwrap();
        // Super-commutation of the action on sampled vectors: for x, y in
        // g and polynomials a, b: [x⊗a, y⊗b] acts as the graded commutator.
        let polys = [Polynomial::one(), Polynomial::t()];
        let d = c.g.dim();
        for gi in 0..d {
            for gj in 0..d {
                for a in &polys {
                    for b in &polys {
                        let xi = vec![(gi, Scalar::one())];
                        let xj = vec![(gj, Scalar::one())];
                        let xy = t.act_poly(&xi, a, &t.act_poly(&xj, b, &w).unwrap()).unwrap();
                        let yx = t.act_poly(&xj, b, &t.act_poly(&xi, a, &w).unwrap()).unwrap();
                        // [x⊗a, y⊗b] acts as xy − (−1)^{|x||y|} yx.
                        let koszul = if c.g.parity(gi) == Parity::Odd
                            && c.g.parity(gj) == Parity::Odd
                        {
                            Scalar::from_int(-1)
                        } else {
                            Scalar::one()
                        };
                        let scaled_yx = match &yx.0 {
                            None => TensorVector::zero(),
                            Some((s, v)) => TensorVector(Some((
                                *s,
                                v.iter().map(|cc| cc * &koszul).collect(),
                            ))),
                        };
                        let graded = xy.sub(&scaled_yx).unwrap();
                        let mut bracket_side = TensorVector::zero();
                        let ab = a * b;
                        let combo = c.g.bracket_basis(gi, gj).clone();
                        if !combo.is_empty() {
                            bracket_side = t.act_poly(&combo, &ab, &w).unwrap();
                        }
                        assert!(
                            graded.sub(&bracket_side).unwrap().is_zero(),
                            "gi={gi} gj={gj} a={a} b={b}"
                        );
                    }
                }
            }
        }
    }
}
