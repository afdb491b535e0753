//! The structured module engine.
//!
//! A cyclic highest-weight module over g⊗B is computed inside the free
//! lowering space F = U(n⁻⊗B)·w, whose basis consists of normal-ordered
//! monomials in the negative root vectors Y_α⊗b. The relation submodule
//! N = U(g⊗B)·(relation vectors) is computed through the triangular
//! factorization of the enveloping algebra: raising closure, then Cartan
//! closure, then a single top-down lowering sweep. All work is restricted
//! to a finite, upward-closed region of weights that provably contains
//! every weight of the finished module; weight spaces outside the
//! frontier must come out zero and are checked to do so.

use crate::algebra_base::{FinDimCommAlgebra, Scalar};
use crate::linalg::RowSpace;
use crate::liesuper::LieSuperalgebra;
use crate::rootdata::{frontier_drops, Parity, RootSystem, SimpleSystem, Weight};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

/// Normal-ordered monomial: (generator id, exponent) pairs with strictly
/// increasing ids; odd generators have exponent 1.
pub(crate) type Monomial = Vec<(u32, u32)>;

/// Linear combination of monomials. BTreeMap keeps iteration, and hence
/// every downstream basis choice, deterministic.
pub(crate) type LinComb = BTreeMap<Monomial, Scalar>;

/// A lowering generator of the monomial alphabet: the canonical basis
/// vector of g_{−α} tensored with a basis element of B.
#[derive(Clone, Debug)]
pub(crate) struct Gen {
    /// Basis index in g of the canonical vector spanning g_{−α}.
    pub g_idx: usize,
    pub b_idx: usize,
    /// Index of α in `sys.positive_roots()`.
    pub pos_idx: usize,
    pub parity: Parity,
    /// Σ-coordinates of α.
    pub drop: Vec<u32>,
}

/// Classification of a g-basis element relative to the simple system.
#[derive(Clone, Debug)]
enum ElemKind {
    /// Position in the Cartan basis list.
    Cartan(usize),
    /// Root vector of a positive root.
    Raise,
    /// Root vector of a negative root (index into positive_roots of −α).
    Lower(usize),
}

pub(crate) struct Engine {
    pub g: Arc<LieSuperalgebra>,
    pub b: Arc<FinDimCommAlgebra>,
    pub sys: SimpleSystem,
    kind: Vec<ElemKind>,
    pub gens: Vec<Gen>,
    /// (position index of α, b index) → lowering generator id.
    lower_id: HashMap<(usize, usize), u32>,
    /// ψ values on the Cartan basis: psi[cartan position][b index].
    psi: Vec<Vec<Scalar>>,
    memo: HashMap<(usize, usize, Monomial), LinComb>,
}

impl Engine {
    pub fn new(
        g: Arc<LieSuperalgebra>,
        b: Arc<FinDimCommAlgebra>,
        sys: SimpleSystem,
        psi: Vec<Vec<Scalar>>,
    ) -> Result<Engine> {
        let mut kind = Vec::with_capacity(g.dim());
        for i in 0..g.dim() {
            if let Some(root) = g.root_of_basis(i) {
                if sys.positive_index(root).is_some() {
                    kind.push(ElemKind::Raise);
                } else {
                    let neg: Vec<i64> = root.iter().map(|c| -c).collect();
                    let p = sys
                        .positive_index(&neg)
                        .ok_or_else(|| Error::internal("root is neither positive nor negative"))?;
                    kind.push(ElemKind::Lower(p));
                }
            } else {
                let cpos = g
                    .cartan()
                    .iter()
                    .position(|&c| c == i)
                    .ok_or_else(|| Error::internal("rootless basis element outside the Cartan"))?;
                kind.push(ElemKind::Cartan(cpos));
            }
        }
        // Monomial alphabet: even generators before odd, then by root
        // height, root coordinates, and B-degree.
        let mut gens = Vec::new();
        for (pos_idx, root) in sys.positive_roots().iter().enumerate() {
            let neg: Vec<i64> = root.coords.iter().map(|c| -c).collect();
            let g_idx = g
                .root_vector(&neg)
                .ok_or_else(|| Error::internal("missing negative root vector"))?;
            for b_idx in 0..b.dim() {
                gens.push(Gen {
                    g_idx,
                    b_idx,
                    pos_idx,
                    parity: root.parity,
                    drop: sys.positive_coords(pos_idx).to_vec(),
                });
            }
        }
        gens.sort_by(|a, c| {
            let ka = (
                a.parity.bit(),
                sys.heights()[a.pos_idx],
                &sys.positive_roots()[a.pos_idx].coords,
                a.b_idx,
            );
            let kc = (
                c.parity.bit(),
                sys.heights()[c.pos_idx],
                &sys.positive_roots()[c.pos_idx].coords,
                c.b_idx,
            );
            ka.cmp(&kc)
        });
        let lower_id: HashMap<(usize, usize), u32> = gens
            .iter()
            .enumerate()
            .map(|(id, gen)| ((gen.pos_idx, gen.b_idx), id as u32))
            .collect();
        Ok(Engine { g, b, sys, kind, gens, lower_id, psi, memo: HashMap::new() })
    }

    pub fn gen_id(&self, pos_idx: usize, b_idx: usize) -> u32 {
        self.lower_id[&(pos_idx, b_idx)]
    }

    fn gen(&self, id: u32) -> &Gen {
        &self.gens[id as usize]
    }

    /// Σ-drop of a monomial.
    pub fn mono_drop(&self, mono: &Monomial) -> Vec<u32> {
        let k = self.sys.rank();
        let mut d = vec![0u32; k];
        for &(id, e) in mono {
            for (x, c) in d.iter_mut().zip(&self.gen(id).drop) {
                *x += e * c;
            }
        }
        d
    }

    pub fn mono_parity(&self, mono: &Monomial) -> Parity {
        let mut p = Parity::Even;
        for &(id, e) in mono {
            if self.gen(id).parity == Parity::Odd && e % 2 == 1 {
                p = p.combine(Parity::Odd);
            }
        }
        p
    }

    pub fn mono_label(&self, mono: &Monomial) -> String {
        if mono.is_empty() {
            return "w".to_string();
        }
        let mut s = String::new();
        for &(id, e) in mono {
            let gen = self.gen(id);
            let root = &self.sys.positive_roots()[gen.pos_idx];
            s.push_str(&format!("Y{:?}", root.coords));
            if gen.b_idx > 0 {
                s.push_str(&format!("*{}", self.b.basis_label(gen.b_idx)));
            }
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
            s.push(' ');
        }
        s.push('w');
        s
    }

    /// Left multiplication of the algebra basis element x_{gi} ⊗ b_{bi}
    /// onto a normal-ordered monomial applied to the cyclic vector.
    pub fn mult_elem(&mut self, gi: usize, bi: usize, mono: &Monomial) -> LinComb {
        if let Some(hit) = self.memo.get(&(gi, bi, mono.clone())) {
            return hit.clone();
        }
        let result = self.mult_elem_inner(gi, bi, mono);
        self.memo.insert((gi, bi, mono.clone()), result.clone());
        result
    }

    fn mult_elem_inner(&mut self, gi: usize, bi: usize, mono: &Monomial) -> LinComb {
        let mut out = LinComb::new();
        if mono.is_empty() {
            match self.kind[gi].clone() {
                ElemKind::Raise => {}
                ElemKind::Cartan(cpos) => {
                    let v = self.psi[cpos][bi].clone();
                    if !v.is_zero() {
                        out.insert(vec![], v);
                    }
                }
                ElemKind::Lower(pos) => {
                    let id = self.gen_id(pos, bi);
                    out.insert(vec![(id, 1)], Scalar::one());
                }
            }
            return out;
        }
        let (head_id, head_exp) = mono[0];
        let head = self.gen(head_id).clone();
        // Pure insertion cases for lowering elements.
        if let ElemKind::Lower(pos) = self.kind[gi].clone() {
            let my_id = self.gen_id(pos, bi);
            if my_id < head_id {
                let mut m = mono.clone();
                m.insert(0, (my_id, 1));
                out.insert(m, Scalar::one());
                return out;
            }
            if my_id == head_id {
                let gen = self.gen(my_id).clone();
                if gen.parity == Parity::Even {
                    let mut m = mono.clone();
                    m[0].1 += 1;
                    out.insert(m, Scalar::one());
                    return out;
                }
                // Odd square: u·u = ½[u,u] inside the enveloping algebra.
                debug_assert_eq!(head_exp, 1);
                let tail: Monomial = mono[1..].to_vec();
                let half = Scalar::from_frac(1, 2);
                let pairs = {
                    let g = self.g.clone();
                    let b = self.b.clone();
                    bracket_pairs(&g, &b, gen.g_idx, gen.b_idx, gen.g_idx, gen.b_idx)
                };
                for (k, r, c) in pairs {
                    let sub = self.mult_elem(k, r, &tail);
                    accumulate(&mut out, &sub, &(&half * &c));
                }
                return out;
            }
        }
        // Swap: u·y·(rest) = (−1)^{|u||y|} y·(u·rest) + [u,y]·rest.
        let mut tail = mono.clone();
        if head_exp > 1 {
            tail[0].1 -= 1;
        } else {
            tail.remove(0);
        }
        let u_parity = self.g.parity(gi);
        let sign = if u_parity == Parity::Odd && head.parity == Parity::Odd {
            Scalar::from_int(-1)
        } else {
            Scalar::one()
        };
        let a = self.mult_elem(gi, bi, &tail);
        for (m, c) in a {
            let back = self.mult_elem(head.g_idx, head.b_idx, &m);
            accumulate(&mut out, &back, &(&sign * &c));
        }
        let pairs = {
            let g = self.g.clone();
            let b = self.b.clone();
            bracket_pairs(&g, &b, gi, bi, head.g_idx, head.b_idx)
        };
        for (k, r, c) in pairs {
            let sub = self.mult_elem(k, r, &tail);
            accumulate(&mut out, &sub, &c);
        }
        out
    }
}

fn bracket_pairs(
    g: &LieSuperalgebra,
    b: &FinDimCommAlgebra,
    i: usize,
    p: usize,
    j: usize,
    q: usize,
) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (k, c) in g.bracket_basis(i, j) {
        for (r, bc) in b.mul_basis(p, q).iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            out.push((*k, r, c * bc));
        }
    }
    out
}

fn accumulate(out: &mut LinComb, add: &LinComb, factor: &Scalar) {
    if factor.is_zero() {
        return;
    }
    for (m, c) in add {
        let e = out.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += factor * c;
        if e.is_zero() {
            out.remove(m);
        }
    }
}

/// Per-drop data of the free space F and the relation subspace N.
pub(crate) struct SpaceData {
    pub monomials: Vec<Monomial>,
    pub index: BTreeMap<Monomial, usize>,
    pub nspace: RowSpace,
    pub in_frontier: bool,
    /// Positions of the monomials representing the module basis
    /// (non-pivot columns of the relation space).
    pub module_basis: Vec<usize>,
}

pub(crate) struct EngineOutput {
    pub engine: Engine,
    pub spaces: BTreeMap<Vec<u32>, SpaceData>,
    pub frontier: Vec<Vec<u32>>,
    pub lambda: Weight,
}

/// Relation specification: Y_α^{k} applied to the cyclic vector, with α a
/// positive root (position index) and k its exponent.
pub(crate) struct PowerRelation {
    pub pos_idx: usize,
    pub exponent: u32,
}

pub(crate) struct BuildParams {
    pub max_dim: usize,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams { max_dim: 10_000 }
    }
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn build(
    g: Arc<LieSuperalgebra>,
    b: Arc<FinDimCommAlgebra>,
    rs: &RootSystem,
    sys: &SimpleSystem,
    psi: Vec<Vec<Scalar>>,
    lambda: Weight,
    relations: &[PowerRelation],
    params: &BuildParams,
) -> Result<EngineOutput> {
    let mut engine = Engine::new(g, b, sys.clone(), psi)?;
    let cap = engine.b.dim() as u32;
    let frontier = frontier_drops(&lambda, rs, sys, cap)?;
    let frontier_set: BTreeSet<Vec<u32>> = frontier.iter().cloned().collect();
    let region = region_boxes(sys, &frontier, relations)?;

    // Enumerate the monomial basis of F over the region.
    let mut spaces: BTreeMap<Vec<u32>, SpaceData> = BTreeMap::new();
    let mut frontier_total = 0usize;
    for drop in &region {
        let monomials = enumerate_monomials(&engine, drop);
        let in_frontier = frontier_set.contains(drop);
        if in_frontier {
            frontier_total += monomials.len();
            if frontier_total > params.max_dim.saturating_mul(8).max(200_000) {
                return Err(Error::unsupported(
                    "free module exceeds the configured dimension budget",
                ));
            }
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let nspace = RowSpace::new(monomials.len());
        spaces.insert(
            drop.clone(),
            SpaceData { monomials, index, nspace, in_frontier, module_basis: vec![] },
        );
    }

    // Relation vectors.
    let mut worklist: Vec<(Vec<u32>, Vec<Scalar>)> = Vec::new();
    for rel in relations {
        let id = engine.gen_id(rel.pos_idx, 0);
        let mono: Monomial = vec![(id, rel.exponent)];
        let drop = engine.mono_drop(&mono);
        let space = spaces
            .get_mut(&drop)
            .ok_or_else(|| Error::internal("relation drop missing from region"))?;
        let mut vec = vec![Scalar::zero(); space.monomials.len()];
        let pos = *space
            .index
            .get(&mono)
            .ok_or_else(|| Error::internal("relation monomial missing from basis"))?;
        vec[pos] = Scalar::one();
        if space.nspace.insert(vec.clone()) {
            worklist.push((drop, vec));
        }
    }

    // Raising closure: close under the simple raising operators ⊗ B.
    let raising: Vec<(usize, usize)> = raising_generators(&engine)?;
    while let Some((drop, vec)) = worklist.pop() {
        for &(gi, bi) in &raising {
            if let Some((tdrop, tvec)) =
                apply_to_vector(&mut engine, &spaces, &drop, &vec, gi, bi)?
            {
                let space = spaces.get_mut(&tdrop).unwrap();
                if space.nspace.insert(tvec.clone()) {
                    worklist.push((tdrop, tvec));
                }
            }
        }
    }

    // Cartan closure (weight-preserving, so per-drop worklists).
    let cartan_gens: Vec<(usize, usize)> = cartan_generators(&engine);
    let drops: Vec<Vec<u32>> = spaces.keys().cloned().collect();
    for drop in &drops {
        let mut work: Vec<Vec<Scalar>> = spaces[drop].nspace.rows().to_vec();
        while let Some(vec) = work.pop() {
            for &(gi, bi) in &cartan_gens {
                if let Some((tdrop, tvec)) =
                    apply_to_vector(&mut engine, &spaces, drop, &vec, gi, bi)?
                {
                    debug_assert_eq!(&tdrop, drop);
                    let space = spaces.get_mut(&tdrop).unwrap();
                    if space.nspace.insert(tvec.clone()) {
                        work.push(tvec);
                    }
                }
            }
        }
    }

    // Lowering span: one sweep over the region in increasing total drop.
    let lowering: Vec<(usize, usize)> = lowering_generators(&engine)?;
    let mut order: Vec<Vec<u32>> = spaces.keys().cloned().collect();
    order.sort_by_key(|d| (d.iter().map(|&x| x as u64).sum::<u64>(), d.clone()));
    for drop in &order {
        let rows = spaces[drop].nspace.rows().to_vec();
        for vec in rows {
            for &(gi, bi) in &lowering {
                if let Some((tdrop, tvec)) =
                    apply_to_vector(&mut engine, &spaces, drop, &vec, gi, bi)?
                {
                    spaces.get_mut(&tdrop).unwrap().nspace.insert(tvec);
                }
            }
        }
    }

    // Quotient bases; weights outside the frontier must die exactly.
    let mut total = 0usize;
    for (drop, space) in spaces.iter_mut() {
        let dim = space.monomials.len() - space.nspace.rank();
        if !space.in_frontier && dim != 0 {
            return Err(Error::internal(format!(
                "nonzero weight space outside the frontier at drop {drop:?}"
            )));
        }
        if space.in_frontier {
            total += dim;
            space.module_basis = (0..space.monomials.len())
                .filter(|&c| !space.nspace.is_pivot(c))
                .collect();
        }
    }
    if total > params.max_dim {
        return Err(Error::unsupported(format!(
            "module dimension {total} exceeds limit {}",
            params.max_dim
        )));
    }
    if spaces
        .get(&vec![0u32; sys.rank()])
        .map(|s| s.module_basis.len())
        != Some(1)
    {
        return Err(Error::internal("highest weight space is not one-dimensional"));
    }
    Ok(EngineOutput { engine, spaces, frontier, lambda })
}

/// The working region of Σ-drops: the union of the coordinate boxes
/// below the frontier drops and below the relation drops. Boxes are
/// downward-closed in Σ-coordinates, which is exactly the
/// upward-closedness in weights that the closure arguments need.
pub(crate) fn region_boxes(
    sys: &SimpleSystem,
    frontier: &[Vec<u32>],
    relations: &[PowerRelation],
) -> Result<BTreeSet<Vec<u32>>> {
    let mut box_tops: Vec<Vec<u32>> = frontier.to_vec();
    for rel in relations {
        let root_drop = sys.positive_coords(rel.pos_idx);
        box_tops.push(root_drop.iter().map(|&c| c * rel.exponent).collect());
    }
    let mut region: BTreeSet<Vec<u32>> = BTreeSet::new();
    for top in &box_tops {
        let mut c = vec![0u32; top.len()];
        loop {
            region.insert(c.clone());
            let mut i = 0;
            loop {
                if i == c.len() {
                    break;
                }
                if c[i] < top[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = 0;
                i += 1;
            }
            if i == c.len() {
                break;
            }
            if region.len() > 4_000_000 {
                return Err(Error::unsupported("working weight region is too large"));
            }
        }
    }
    Ok(region)
}

pub(crate) fn raising_generators(engine: &Engine) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for beta in engine.sys.base() {
        let gi = engine
            .g
            .root_vector(&beta.coords)
            .ok_or_else(|| Error::internal("missing simple raising vector"))?;
        for bi in 0..engine.b.dim() {
            out.push((gi, bi));
        }
    }
    Ok(out)
}

pub(crate) fn cartan_generators(engine: &Engine) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &ci in engine.g.cartan() {
        for bi in 0..engine.b.dim() {
            out.push((ci, bi));
        }
    }
    out
}

pub(crate) fn lowering_generators(engine: &Engine) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for beta in engine.sys.base() {
        let neg: Vec<i64> = beta.coords.iter().map(|c| -c).collect();
        let gi = engine
            .g
            .root_vector(&neg)
            .ok_or_else(|| Error::internal("missing simple lowering vector"))?;
        for bi in 0..engine.b.dim() {
            out.push((gi, bi));
        }
    }
    Ok(out)
}

/// Applies a single algebra basis element to a dense vector of F at the
/// given drop. Returns the target drop and dense vector, or None when the
/// result is zero or leaves the working region (which is only legal for
/// vectors that die in the module).
pub(crate) fn apply_to_vector(
    engine: &mut Engine,
    spaces: &BTreeMap<Vec<u32>, SpaceData>,
    drop: &[u32],
    vec: &[Scalar],
    gi: usize,
    bi: usize,
) -> Result<Option<(Vec<u32>, Vec<Scalar>)>> {
    let space = &spaces[drop];
    let mut acc = LinComb::new();
    for (pos, c) in vec.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let image = engine.mult_elem(gi, bi, &space.monomials[pos]);
        accumulate(&mut acc, &image, c);
    }
    let Some(first) = acc.keys().next() else {
        return Ok(None);
    };
    let tdrop = engine.mono_drop(first);
    let Some(target) = spaces.get(&tdrop) else {
        return Ok(None);
    };
    let mut out = vec![Scalar::zero(); target.monomials.len()];
    for (m, c) in acc {
        let d = engine.mono_drop(&m);
        if d != tdrop {
            return Err(Error::internal("inhomogeneous image under a graded operator"));
        }
        let pos = *target
            .index
            .get(&m)
            .ok_or_else(|| Error::internal("image monomial missing from enumerated basis"))?;
        out[pos] = c;
    }
    Ok(Some((tdrop, out)))
}

/// All normal-ordered monomials with the exact Σ-drop. Odd generators are
/// capped at exponent one; even exponents are bounded by the drop.
pub(crate) fn enumerate_monomials(engine: &Engine, drop: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current: Monomial = Vec::new();
    let remaining = drop.to_vec();
    recurse(engine, 0, remaining, &mut current, &mut out);
    out.sort();
    out
}

fn recurse(
    engine: &Engine,
    gen_id: usize,
    remaining: Vec<u32>,
    current: &mut Monomial,
    out: &mut Vec<Monomial>,
) {
    if remaining.iter().all(|&c| c == 0) {
        out.push(current.clone());
        return;
    }
    if gen_id == engine.gens.len() {
        return;
    }
    let gen = &engine.gens[gen_id];
    // Exponent 0 first, then as many as the drop allows.
    recurse(engine, gen_id + 1, remaining.clone(), current, out);
    let mut rem = remaining;
    let max_exp = if gen.parity == Parity::Odd { 1 } else { u32::MAX };
    let mut e = 0;
    while e < max_exp {
        // Subtract one more copy of the generator drop if possible.
        let mut ok = true;
        for (r, c) in rem.iter().zip(&gen.drop) {
            if r < c {
                ok = false;
                break;
            }
        }
        if !ok {
            break;
        }
        for (r, c) in rem.iter_mut().zip(&gen.drop) {
            *r -= c;
        }
        e += 1;
        current.push((gen_id as u32, e));
        recurse(engine, gen_id + 1, rem.clone(), current, out);
        current.pop();
    }
}
