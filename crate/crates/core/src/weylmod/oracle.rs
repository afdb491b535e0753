//! Independent brute-force closure. Instead of the structured
//! raising/Cartan/lowering factorization with per-phase worklists, the
//! relation submodule is closed under *all* generator applications by a
//! naive global fixpoint, and the module itself is then generated forward
//! from the cyclic vector by repeatedly applying all lowering generators
//! and reducing against the relation space by full-rank elimination. The
//! resulting character must agree with the structured engine exactly.

use super::engine::{
    apply_to_vector, cartan_generators, enumerate_monomials, lowering_generators,
    raising_generators, region_boxes, Engine, SpaceData,
};
use super::{psi_table, power_relations, Character, ModuleContext, WeightModule};
use crate::algebra_base::Scalar;
use crate::linalg::RowSpace;
use crate::rootdata::frontier_drops;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Recomputes the character of a constructed module by the brute-force
/// route, from the same inputs (algebra, coefficient algebra, simple
/// system, ψ).
pub fn brute_force_character(module: &WeightModule) -> Result<Character> {
    let ctx = ModuleContext {
        rs: module.rs.clone(),
        sys: module.sys.clone(),
        g: module.g.clone(),
        chev: module.chev.clone(),
    };
    let table = psi_table(&module.g, &module.b, &module.psi);
    let mut engine = Engine::new(
        module.g.clone(),
        module.b.clone(),
        module.sys.clone(),
        table,
    )?;
    let lambda = module.lambda.clone();
    let relations = power_relations(&ctx, &lambda)?;
    let frontier = frontier_drops(&lambda, &module.rs, &module.sys, module.b.dim() as u32)?;
    let frontier_set: BTreeSet<Vec<u32>> = frontier.iter().cloned().collect();
    let region = region_boxes(&module.sys, &frontier, &relations)?;

    // Free-space bases over the region.
    let mut spaces: BTreeMap<Vec<u32>, SpaceData> = BTreeMap::new();
    for drop in &region {
        let monomials = enumerate_monomials(&engine, drop);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let nspace = RowSpace::new(monomials.len());
        spaces.insert(
            drop.clone(),
            SpaceData {
                monomials,
                index,
                nspace,
                in_frontier: frontier_set.contains(drop),
                module_basis: vec![],
            },
        );
    }

    // Relation vectors, then one global fixpoint over all generators.
    let mut queue: VecDeque<(Vec<u32>, Vec<Scalar>)> = VecDeque::new();
    for rel in &relations {
        let id = engine.gen_id(rel.pos_idx, 0);
        let mono = vec![(id, rel.exponent)];
        let drop = engine.mono_drop(&mono);
        let space = spaces
            .get_mut(&drop)
            .ok_or_else(|| Error::internal("relation drop outside oracle region"))?;
        let mut vec = vec![Scalar::zero(); space.monomials.len()];
        vec[*space.index.get(&mono).ok_or_else(|| Error::internal("missing relation monomial"))?] =
            Scalar::one();
        if space.nspace.insert(vec.clone()) {
            queue.push_back((drop, vec));
        }
    }
    let mut all_gens = raising_generators(&engine)?;
    all_gens.extend(cartan_generators(&engine));
    all_gens.extend(lowering_generators(&engine)?);
    while let Some((drop, vec)) = queue.pop_front() {
        for &(gi, bi) in &all_gens {
            if let Some((tdrop, tvec)) = apply_to_vector(&mut engine, &spaces, &drop, &vec, gi, bi)?
            {
                let space = spaces.get_mut(&tdrop).unwrap();
                if space.nspace.insert(tvec.clone()) {
                    queue.push_back((tdrop, tvec));
                }
            }
        }
    }

    // Forward generation from the cyclic vector under the lowering
    // generators, reducing against the relation space at each step.
    let lowering = lowering_generators(&engine)?;
    let zero_drop = vec![0u32; module.sys.rank()];
    let mut generated: BTreeMap<Vec<u32>, RowSpace> = region
        .iter()
        .map(|d| (d.clone(), RowSpace::new(spaces[d].monomials.len())))
        .collect();
    let top = spaces
        .get(&zero_drop)
        .ok_or_else(|| Error::internal("cyclic drop missing"))?;
    if top.monomials.len() != 1 {
        return Err(Error::internal("cyclic weight space of the free module is not a line"));
    }
    let w = top.nspace.reduce(vec![Scalar::one()]);
    if w.iter().all(Scalar::is_zero) {
        return Err(Error::internal("cyclic vector died in the oracle"));
    }
    let mut fwd: VecDeque<(Vec<u32>, Vec<Scalar>)> = VecDeque::new();
    generated.get_mut(&zero_drop).unwrap().insert(w.clone());
    fwd.push_back((zero_drop, w));
    while let Some((drop, vec)) = fwd.pop_front() {
        for &(gi, bi) in &lowering {
            if let Some((tdrop, tvec)) = apply_to_vector(&mut engine, &spaces, &drop, &vec, gi, bi)?
            {
                let reduced = spaces[&tdrop].nspace.reduce(tvec);
                if reduced.iter().all(Scalar::is_zero) {
                    continue;
                }
                if generated.get_mut(&tdrop).unwrap().insert(reduced.clone()) {
                    fwd.push_back((tdrop, reduced));
                }
            }
        }
    }

    // Character from the generated ranks; weights outside the frontier
    // must not survive.
    let mut out = BTreeMap::new();
    for (drop, space) in &generated {
        let rank = space.rank();
        if rank == 0 {
            continue;
        }
        if !frontier_set.contains(drop) {
            return Err(Error::internal(
                "oracle generated a vector outside the weight frontier",
            ));
        }
        let mut weight = lambda.clone();
        for (j, &c) in drop.iter().enumerate() {
            weight = weight.sub_root(&module.sys.base()[j], &Scalar::from_int(c as i64));
        }
        out.insert(weight, rank);
    }
    Ok(Character(out))
}
