//! Ideals of ℚ[t] presented in factored form, their support arithmetic,
//! and the finite-dimensional quotient algebras ℚ[t]/I.

use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// An ideal of ℚ[t] with all roots rational, stored as the factorization
/// of its monic generator: pairwise-distinct roots with positive
/// multiplicities, kept sorted. The empty list is the unit ideal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactoredIdeal {
    factors: Vec<IdealFactor>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IdealFactor {
    pub root: Scalar,
    pub mult: u32,
}

/// Lattice / ring operations on factored ideals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdealOp {
    /// I + J, the gcd of generators: per-root minimum multiplicity.
    Sum,
    /// I·J: per-root multiplicity sums.
    Product,
    /// I ∩ J, the lcm of generators: per-root maximum multiplicity.
    Intersection,
    /// I^n (the second operand is ignored).
    Power(u32),
}

impl FactoredIdeal {
    /// The unit ideal (1) = ℚ[t].
    pub fn unit() -> Self {
        FactoredIdeal { factors: vec![] }
    }

    /// Builds an ideal from (root, multiplicity) entries. Duplicate roots
    /// are merged by summing multiplicities; zero multiplicities are
    /// rejected at the type level by construction below.
    pub fn from_points(entries: impl IntoIterator<Item = (Scalar, u32)>) -> Self {
        let mut map: BTreeMap<Scalar, u32> = BTreeMap::new();
        for (root, mult) in entries {
            if mult == 0 {
                continue;
            }
            *map.entry(root).or_insert(0) += mult;
        }
        FactoredIdeal {
            factors: map.into_iter().map(|(root, mult)| IdealFactor { root, mult }).collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[IdealFactor] {
        &self.factors
    }

    /// The support: the set of roots (rational points of MaxSpec
    /// containing the ideal).
    pub fn support(&self) -> Vec<Scalar> {
        self.factors.iter().map(|f| f.root.clone()).collect()
    }

    pub fn support_disjoint(&self, other: &FactoredIdeal) -> bool {
        self.factors.iter().all(|f| other.multiplicity(&f.root) == 0)
    }

    pub fn multiplicity(&self, root: &Scalar) -> u32 {
        self.factors
            .iter()
            .find(|f| &f.root == root)
            .map(|f| f.mult)
            .unwrap_or(0)
    }

    /// Codimension in ℚ[t]: the sum of multiplicities.
    pub fn codim(&self) -> u32 {
        self.factors.iter().map(|f| f.mult).sum()
    }

    /// Monic generator ∏ (t − z_i)^{m_i}.
    pub fn generator(&self) -> Polynomial {
        let mut g = Polynomial::one();
        for f in &self.factors {
            g = &g * &Polynomial::linear(&f.root).pow(f.mult);
        }
        g
    }

    pub fn combine(&self, rhs: &FactoredIdeal, op: IdealOp) -> Result<FactoredIdeal> {
        let roots: BTreeMap<Scalar, ()> = self
            .factors
            .iter()
            .chain(rhs.factors.iter())
            .map(|f| (f.root.clone(), ()))
            .collect();
        let mut out = Vec::new();
        for (root, _) in roots {
            let a = self.multiplicity(&root);
            let b = rhs.multiplicity(&root);
            let m = match op {
                IdealOp::Sum => a.min(b),
                IdealOp::Product => a + b,
                IdealOp::Intersection => a.max(b),
                IdealOp::Power(n) => {
                    if n < 1 {
                        return Err(Error::invalid("ideal power requires n >= 1"));
                    }
                    a * n
                }
            };
            if m > 0 {
                out.push(IdealFactor { root, mult: m });
            }
        }
        Ok(FactoredIdeal { factors: out })
    }

    pub fn power(&self, n: u32) -> Result<FactoredIdeal> {
        self.combine(&FactoredIdeal::unit(), IdealOp::Power(n))
    }
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "(1)");
        }
        write!(f, "({})", self.generator())
    }
}

/// A finite-dimensional commutative quotient ℚ[t]/I with basis the
/// residues of 1, t, …, t^{d−1} and an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct FinDimCommAlgebra {
    ideal: FactoredIdeal,
    generator: Polynomial,
    dim: usize,
    /// table[p][q] = coefficients of t^{p+q} mod generator.
    table: Vec<Vec<Vec<Scalar>>>,
}

impl FinDimCommAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ideal(&self) -> &FactoredIdeal {
        &self.ideal
    }

    pub fn generator(&self) -> &Polynomial {
        &self.generator
    }

    /// Index of the unit element in the basis (the residue of 1).
    pub fn unit_index(&self) -> usize {
        0
    }

    pub fn basis_label(&self, k: usize) -> String {
        match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        }
    }

    /// Coefficients of the product of basis elements p and q.
    pub fn mul_basis(&self, p: usize, q: usize) -> &[Scalar] {
        &self.table[p][q]
    }

    /// Residue of an arbitrary polynomial as a coefficient vector.
    pub fn reduce(&self, poly: &Polynomial) -> Vec<Scalar> {
        let (_, rem) = poly.divrem(&self.generator).expect("monic generator");
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, c) in rem.coeffs().iter().enumerate() {
            out[k] = c.clone();
        }
        out
    }
}

/// Builds the truncated quotient algebra ℚ[t]/I for a non-unit ideal.
pub fn truncated_algebra(ideal: &FactoredIdeal) -> Result<FinDimCommAlgebra> {
    if ideal.is_unit() {
        return Err(Error::invalid("zero algebra: quotient by the unit ideal"));
    }
    let generator = ideal.generator();
    let dim = ideal.codim() as usize;
    let mut table = Vec::with_capacity(dim);
    for p in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for q in 0..dim {
            let prod = Polynomial::one().shift(p + q);
            let (_, rem) = prod.divrem(&generator)?;
            let mut coeffs = vec![Scalar::zero(); dim];
            for (k, c) in rem.coeffs().iter().enumerate() {
                coeffs[k] = c.clone();
            }
            row.push(coeffs);
        }
        table.push(row);
    }
    Ok(FinDimCommAlgebra {
        ideal: ideal.clone(),
        generator,
        dim,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(entries: &[(i64, u32)]) -> FactoredIdeal {
        FactoredIdeal::from_points(entries.iter().map(|&(z, m)| (Scalar::from_int(z), m)))
    }

    #[test]
    fn construction_and_merge() {
        let i = ideal(&[(0, 1), (1, 1)]);
        assert_eq!(i.codim(), 2);
        assert_eq!(i.support(), vec![Scalar::from_int(0), Scalar::from_int(1)]);

        assert_eq!(ideal(&[]), FactoredIdeal::unit());
        assert_eq!(FactoredIdeal::unit().codim(), 0);
        assert!(FactoredIdeal::unit().support().is_empty());

        // Duplicate roots merge by summing multiplicities; the generator
        // matches the polynomial-multiplication oracle.
        let merged = ideal(&[(2, 2), (2, 1)]);
        assert_eq!(merged.codim(), 3);
        let oracle = &Polynomial::linear(&Scalar::from_int(2)).pow(2)
            * &Polynomial::linear(&Scalar::from_int(2));
        assert_eq!(merged.generator(), oracle);
    }

    #[test]
    fn generator_refactors() {
        // Dividing out each claimed factor exactly reproduces the list.
        let i = ideal(&[(0, 2), (1, 1), (-3, 3)]);
        let mut g = i.generator();
        for f in i.factors() {
            for _ in 0..f.mult {
                let (q, r) = g.divrem(&Polynomial::linear(&f.root)).unwrap();
                assert!(r.is_zero());
                g = q;
            }
            assert!(!g.eval(&f.root).is_zero() || g.is_zero());
        }
        assert_eq!(g, Polynomial::one());
    }

    #[test]
    fn support_of_powers() {
        let i = ideal(&[(2, 1)]);
        let cube = i.power(3).unwrap();
        assert_eq!(cube.support(), i.support());
        assert_eq!(cube.codim(), 3);
        assert_eq!(FactoredIdeal::unit().power(5).unwrap(), FactoredIdeal::unit());
    }

    #[test]
    fn combine_ops() {
        let a = ideal(&[(0, 1)]);
        let b = ideal(&[(1, 1)]);
        // Disjoint supports: sum is the unit ideal, product = intersection.
        assert_eq!(a.combine(&b, IdealOp::Sum).unwrap(), FactoredIdeal::unit());
        let prod = a.combine(&b, IdealOp::Product).unwrap();
        assert_eq!(prod, a.combine(&b, IdealOp::Intersection).unwrap());
        assert_eq!(prod, ideal(&[(0, 1), (1, 1)]));

        assert_eq!(a.combine(&a, IdealOp::Sum).unwrap(), a);

        let sq = ideal(&[(0, 1), (1, 1)]).power(2).unwrap();
        assert_eq!(sq.codim(), 4);
        let oracle = {
            let f = ideal(&[(0, 1), (1, 1)]).generator();
            &f * &f
        };
        assert_eq!(sq.generator(), oracle);
    }

    #[test]
    fn codim_additive_under_product() {
        let a = ideal(&[(0, 2), (5, 1)]);
        let b = ideal(&[(0, 1), (-2, 4)]);
        let p = a.combine(&b, IdealOp::Product).unwrap();
        assert_eq!(p.codim(), a.codim() + b.codim());
    }

    #[test]
    fn truncated_algebra_small() {
        // (t): the quotient is the ground field.
        let q = truncated_algebra(&ideal(&[(0, 1)])).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.mul_basis(0, 0), &[Scalar::one()]);

        // (t^2): dual numbers, t·t = 0.
        let d = truncated_algebra(&ideal(&[(0, 2)])).unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.mul_basis(1, 1), &[Scalar::zero(), Scalar::zero()]);

        assert!(truncated_algebra(&FactoredIdeal::unit()).is_err());
    }

    #[test]
    fn chinese_remainder_idempotents() {
        // ℚ[t]/(t(t-1)): e0 = 1 - t, e1 = t are orthogonal idempotents.
        let q = truncated_algebra(&ideal(&[(0, 1), (1, 1)])).unwrap();
        let e0 = Polynomial::from_coeffs(vec![Scalar::one(), Scalar::from_int(-1)]);
        let e1 = Polynomial::t();
        let sq = |p: &Polynomial| q.reduce(&(p * p));
        assert_eq!(sq(&e0), q.reduce(&e0));
        assert_eq!(sq(&e1), q.reduce(&e1));
        let cross = q.reduce(&(&e0 * &e1));
        assert!(cross.iter().all(Scalar::is_zero));

        // CRT oracle via extended gcd: u·f0 + v·f1 = 1 for the coprime
        // factors; then e1 = u·f0 is 1 at root 1 and 0 at root 0.
        let f0 = Polynomial::t();
        let f1 = Polynomial::linear(&Scalar::one());
        let (g, u, _) = f0.xgcd(&f1);
        assert_eq!(g, Polynomial::one());
        let idem = &u * &f0;
        assert_eq!(q.reduce(&idem), q.reduce(&e1));
    }

    #[test]
    fn algebra_laws_exhaustive() {
        let q = truncated_algebra(&ideal(&[(0, 2), (1, 1)])).unwrap();
        let d = q.dim();
        let mul = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); d];
            for (p, ca) in a.iter().enumerate() {
                for (r, cb) in b.iter().enumerate() {
                    for (k, c) in q.mul_basis(p, r).iter().enumerate() {
                        out[k] += ca.clone() * cb.clone() * c.clone();
                    }
                }
            }
            out
        };
        let basis: Vec<Vec<Scalar>> = (0..d)
            .map(|k| {
                let mut v = vec![Scalar::zero(); d];
                v[k] = Scalar::one();
                v
            })
            .collect();
        for a in 0..d {
            assert_eq!(mul(&basis[q.unit_index()], &basis[a]), basis[a]);
            for b in 0..d {
                assert_eq!(mul(&basis[a], &basis[b]), mul(&basis[b], &basis[a]));
                for c in 0..d {
                    let lhs = mul(&mul(&basis[a], &basis[b]), &basis[c]);
                    let rhs = mul(&basis[a], &mul(&basis[b], &basis[c]));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
