//! The supported families and their coordinate-level data: ambient
//! dimension, invariant bilinear form, parity functional, full root list,
//! and distinguished simple system.
//!
//! Roots live in integer ε/δ coordinates. For F(4) the coordinates are
//! doubled so the half-integral odd roots become integral; for G(3) the
//! relation ε₁+ε₂+ε₃ = 0 is eliminated by expressing ε₃ = −ε₁−ε₂, which
//! makes the ε-block form non-diagonal. Global scaling of the form is
//! irrelevant to Cartan matrices and isotropy, so each family uses the
//! smallest convenient normalization.

use crate::algebra_base::Scalar;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Support level of a family: `Full` families have matrix realizations
/// with exact structure constants; `RootDataOnly` families expose root
/// systems, reflections, and condition checks but no module-level
/// operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SupportLevel {
    Full,
    RootDataOnly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// gl(m,n). `n = 0` gives the ordinary gl(m).
    Gl { m: usize, n: usize },
    /// sl(m,n) with m ≠ n, or sl(n,n) with n ≥ 2. `n = 0` gives sl(m).
    Sl { m: usize, n: usize },
    /// A(n,n): root data of gl(n+1,n+1); not realized at module level.
    Ann { n: usize },
    /// osp(M, 2n) with M ≥ 1, n ≥ 1. Covers B(m,n) (M = 2m+1),
    /// C(n+1) (M = 2) and D(m,n) (M = 2m, m ≥ 2).
    Osp { big_m: usize, n: usize },
    F4,
    G3,
    /// D(2,1;α) with rational α ∉ {0, −1}.
    D21 { alpha: Scalar },
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match self {
            Family::Gl { m, n } => {
                if m + n == 0 {
                    return Err(Error::invalid("gl(0,0) is empty"));
                }
            }
            Family::Sl { m, n } => {
                if m + n < 2 {
                    return Err(Error::invalid("sl(m,n) needs m+n >= 2"));
                }
                if m == n && *n < 2 {
                    return Err(Error::invalid("sl(n,n) needs n >= 2"));
                }
            }
            Family::Ann { n } => {
                if *n < 1 {
                    return Err(Error::invalid("A(n,n) needs n >= 1"));
                }
            }
            Family::Osp { big_m, n } => {
                if *big_m < 1 || *n < 1 {
                    return Err(Error::invalid("osp(M,2n) needs M >= 1 and n >= 1"));
                }
            }
            Family::F4 | Family::G3 => {}
            Family::D21 { alpha } => {
                if alpha.is_zero() || *alpha == Scalar::from_int(-1) {
                    return Err(Error::invalid("D(2,1;a) needs a not in {0, -1}"));
                }
            }
        }
        Ok(())
    }

    pub fn support_level(&self) -> SupportLevel {
        match self {
            Family::Gl { .. } | Family::Sl { .. } | Family::Osp { .. } => SupportLevel::Full,
            Family::Ann { .. } | Family::F4 | Family::G3 | Family::D21 { .. } => {
                SupportLevel::RootDataOnly
            }
        }
    }

    /// Number of ε coordinates and δ coordinates of the ambient space.
    /// For F(4), G(3), D(2,1;α) this is the split used by the stored
    /// tables, not a matrix block structure.
    pub fn eps_delta(&self) -> (usize, usize) {
        match self {
            Family::Gl { m, n } | Family::Sl { m, n } => (*m, *n),
            Family::Ann { n } => (n + 1, n + 1),
            Family::Osp { big_m, n } => (big_m / 2, *n),
            Family::F4 => (3, 1),
            Family::G3 => (2, 1),
            Family::D21 { .. } => (3, 0),
        }
    }

    pub fn dim(&self) -> usize {
        let (e, d) = self.eps_delta();
        e + d
    }

    /// Coordinate labels, ε-block then δ-block, except for the
    /// exceptional families where the table order is fixed explicitly.
    pub fn coord_labels(&self) -> Vec<String> {
        match self {
            Family::F4 => vec!["2d".into(), "2e1".into(), "2e2".into(), "2e3".into()],
            Family::G3 => vec!["d".into(), "e1".into(), "e2".into()],
            Family::D21 { .. } => vec!["e1".into(), "e2".into(), "e3".into()],
            _ => {
                let (m, n) = self.eps_delta();
                let mut v: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
                v.extend((1..=n).map(|j| format!("d{j}")));
                v
            }
        }
    }

    /// Invariant symmetric bilinear form on the coordinate space.
    pub fn form(&self) -> Vec<Vec<Scalar>> {
        let one = Scalar::one;
        match self {
            Family::F4 => diag(vec![Scalar::from_int(-3), one(), one(), one()]),
            Family::G3 => {
                // Coordinates (δ, ε₁, ε₂) with ε₃ = −ε₁−ε₂;
                // (δ,δ) = −2, (εᵢ,εⱼ) = 2δᵢⱼ − (1−δᵢⱼ).
                vec![
                    vec![Scalar::from_int(-2), Scalar::zero(), Scalar::zero()],
                    vec![Scalar::zero(), Scalar::from_int(2), Scalar::from_int(-1)],
                    vec![Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(2)],
                ]
            }
            Family::D21 { alpha } => diag(vec![
                -(Scalar::one() + alpha.clone()),
                Scalar::one(),
                alpha.clone(),
            ]),
            _ => {
                let (m, n) = self.eps_delta();
                let mut d = vec![one(); m];
                d.extend(vec![-one(); n]);
                diag(d)
            }
        }
    }

    /// Positive-definite form invariant under the even Weyl group: the
    /// invariant form with every negative diagonal block flipped. Used
    /// only to bound enumerations.
    pub fn positive_form(&self) -> Vec<Vec<Scalar>> {
        match self {
            Family::G3 => {
                let mut f = self.form();
                f[0][0] = Scalar::from_int(2);
                f
            }
            Family::D21 { alpha } => diag(vec![
                (Scalar::one() + alpha.clone()).abs(),
                Scalar::one(),
                alpha.abs(),
            ]),
            Family::F4 => diag(vec![
                Scalar::from_int(3),
                Scalar::one(),
                Scalar::one(),
                Scalar::one(),
            ]),
            _ => {
                let (m, n) = self.eps_delta();
                diag(vec![Scalar::one(); m + n])
            }
        }
    }

    /// Functional computing the parity of a root from its coordinates.
    pub fn parity_functional(&self) -> Vec<i64> {
        match self {
            Family::F4 | Family::G3 => {
                let mut p = vec![0; self.dim()];
                p[0] = 1;
                p
            }
            Family::D21 { .. } => vec![1, 1, 1],
            _ => {
                let (m, n) = self.eps_delta();
                let mut p = vec![0; m];
                p.extend(vec![1; n]);
                p
            }
        }
    }

    /// The full root list, deduplicated and sorted.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let unit = |k: usize, c: i64| {
            let mut v = vec![0i64; dim];
            v[k] = c;
            v
        };
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut add = |v: Vec<i64>| {
            if v.iter().any(|&c| c != 0) {
                set.insert(v);
            }
        };
        match self {
            Family::Gl { .. } | Family::Sl { .. } | Family::Ann { .. } => {
                let d = dim;
                for r in 0..d {
                    for s in 0..d {
                        if r != s {
                            let mut v = vec![0i64; d];
                            v[r] = 1;
                            v[s] = -1;
                            add(v);
                        }
                    }
                }
            }
            Family::Osp { big_m, n } => {
                let m = big_m / 2;
                let odd_m = big_m % 2 == 1;
                let eps = |i: usize| i;
                let del = |j: usize| m + j;
                for i in 0..m {
                    for j in (i + 1)..m {
                        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0i64; dim];
                            v[eps(i)] = a;
                            v[eps(j)] += b;
                            add(v);
                        }
                    }
                    if odd_m {
                        add(unit(eps(i), 1));
                        add(unit(eps(i), -1));
                    }
                }
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0i64; dim];
                            v[del(i)] = a;
                            v[del(j)] += b;
                            add(v);
                        }
                    }
                    add(unit(del(i), 2));
                    add(unit(del(i), -2));
                    if odd_m {
                        add(unit(del(i), 1));
                        add(unit(del(i), -1));
                    }
                }
                // Odd roots ±ε_i ± δ_j; for M = 2 the single ε coordinate
                // carries no even roots (so(2) is abelian).
                let e_range = if *big_m == 2 { 1 } else { m };
                for i in 0..e_range {
                    for j in 0..*n {
                        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0i64; dim];
                            v[eps(i)] = a;
                            v[del(j)] = b;
                            add(v);
                        }
                    }
                }
            }
            Family::F4 => {
                add(vec![2, 0, 0, 0]);
                add(vec![-2, 0, 0, 0]);
                for i in 1..4usize {
                    add(unit(i, 2));
                    add(unit(i, -2));
                    for j in (i + 1)..4 {
                        for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                            let mut v = vec![0i64; 4];
                            v[i] = a;
                            v[j] = b;
                            add(v);
                        }
                    }
                }
                for s0 in [1i64, -1] {
                    for s1 in [1i64, -1] {
                        for s2 in [1i64, -1] {
                            for s3 in [1i64, -1] {
                                add(vec![s0, s1, s2, s3]);
                            }
                        }
                    }
                }
            }
            Family::G3 => {
                // ε₁ = (0,1,0), ε₂ = (0,0,1), ε₃ = (0,−1,−1), δ = (1,0,0).
                let e = [vec![0i64, 1, 0], vec![0i64, 0, 1], vec![0i64, -1, -1]];
                add(vec![2, 0, 0]);
                add(vec![-2, 0, 0]);
                add(vec![1, 0, 0]);
                add(vec![-1, 0, 0]);
                for i in 0..3 {
                    for s in [1i64, -1] {
                        add(e[i].iter().map(|&c| s * c).collect());
                        for sd in [1i64, -1] {
                            let mut v: Vec<i64> = e[i].iter().map(|&c| s * c).collect();
                            v[0] += sd;
                            add(v);
                        }
                    }
                    for j in 0..3 {
                        if i != j {
                            add((0..3).map(|k| e[i][k] - e[j][k]).collect());
                        }
                    }
                }
            }
            Family::D21 { .. } => {
                for i in 0..3usize {
                    add(unit(i, 2));
                    add(unit(i, -2));
                }
                for s0 in [1i64, -1] {
                    for s1 in [1i64, -1] {
                        for s2 in [1i64, -1] {
                            add(vec![s0, s1, s2]);
                        }
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// The distinguished simple system (exactly one odd simple root).
    pub fn distinguished_base(&self) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let pair = |a: usize, b: usize| {
            let mut v = vec![0i64; dim];
            v[a] = 1;
            v[b] = -1;
            v
        };
        match self {
            Family::Gl { m, n } | Family::Sl { m, n } => gl_base(*m, *n, dim),
            Family::Ann { n } => gl_base(n + 1, n + 1, dim),
            Family::Osp { big_m, n } => {
                let m = big_m / 2;
                let mut base = vec![];
                for j in 0..(n - 1) {
                    base.push(pair(m + j, m + j + 1));
                }
                match big_m {
                    1 => {
                        // B(0,n): the odd simple root δ_n is non-isotropic.
                        let mut v = vec![0i64; dim];
                        v[m + n - 1] = 1;
                        base.push(v);
                    }
                    2 => {
                        // C(n+1): base ε₁−δ₁, δ-chain, 2δ_n.
                        let mut b = vec![pair(0, 1)];
                        for j in 0..(n - 1) {
                            b.push(pair(1 + j, 1 + j + 1));
                        }
                        let mut v = vec![0i64; dim];
                        v[*n] = 2;
                        b.push(v);
                        return b;
                    }
                    _ => {
                        base.push(pair(m + n - 1, 0));
                        for i in 0..(m - 1) {
                            base.push(pair(i, i + 1));
                        }
                        if big_m % 2 == 1 {
                            let mut v = vec![0i64; dim];
                            v[m - 1] = 1;
                            base.push(v);
                        } else {
                            let mut v = vec![0i64; dim];
                            v[m - 2] = 1;
                            v[m - 1] = 1;
                            base.push(v);
                        }
                    }
                }
                base
            }
            Family::F4 => vec![
                vec![1, -1, -1, -1],
                vec![0, 0, 0, 2],
                vec![0, 0, 2, -2],
                vec![0, 2, -2, 0],
            ],
            Family::G3 => vec![vec![1, 1, 0], vec![0, 0, 1], vec![0, -1, -2]],
            Family::D21 { .. } => vec![vec![1, -1, -1], vec![0, 2, 0], vec![0, 0, 2]],
        }
    }
}

fn gl_base(m: usize, n: usize, dim: usize) -> Vec<Vec<i64>> {
    let pair = |a: usize, b: usize| {
        let mut v = vec![0i64; dim];
        v[a] = 1;
        v[b] = -1;
        v
    };
    let mut base = vec![];
    for i in 0..m.saturating_sub(1) {
        base.push(pair(i, i + 1));
    }
    if m >= 1 && n >= 1 {
        base.push(pair(m - 1, m));
    }
    for j in 0..n.saturating_sub(1) {
        base.push(pair(m + j, m + j + 1));
    }
    base
}

fn diag(entries: Vec<Scalar>) -> Vec<Vec<Scalar>> {
    let n = entries.len();
    let mut f = vec![vec![Scalar::zero(); n]; n];
    for (i, e) in entries.into_iter().enumerate() {
        f[i][i] = e;
    }
    f
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gl { m, n } => write!(f, "gl:{m},{n}"),
            Family::Sl { m, n } => write!(f, "sl:{m},{n}"),
            Family::Ann { n } => write!(f, "A:{n}"),
            Family::Osp { big_m, n } => write!(f, "osp:{},{}", big_m, 2 * n),
            Family::F4 => write!(f, "F4"),
            Family::G3 => write!(f, "G3"),
            Family::D21 { alpha } => write!(f, "D21a:{alpha}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Descriptors: `gl:m,n`, `sl:m,n` (or `sl:m` for sl(m)), `osp:M,N`
    /// with N even, `A:n`, `F4`, `G3`, `D21a:p/q` (also `D21a:alpha=p/q`).
    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        let fam = match s.split_once(':') {
            None => match s {
                "F4" | "f4" => Family::F4,
                "G3" | "g3" => Family::G3,
                _ => return Err(Error::invalid(format!("unknown family `{s}`"))),
            },
            Some((tag, rest)) => {
                let parse_two = |rest: &str| -> Result<(usize, usize)> {
                    let nums: Vec<&str> = rest.split(',').collect();
                    let parse = |x: &str| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::invalid(format!("bad parameter `{x}` in `{s}`")))
                    };
                    match nums.as_slice() {
                        [a] => Ok((parse(a)?, 0)),
                        [a, b] => Ok((parse(a)?, parse(b)?)),
                        _ => Err(Error::invalid(format!("expected 1 or 2 parameters in `{s}`"))),
                    }
                };
                match tag {
                    "gl" => {
                        let (m, n) = parse_two(rest)?;
                        Family::Gl { m, n }
                    }
                    "sl" => {
                        let (m, n) = parse_two(rest)?;
                        Family::Sl { m, n }
                    }
                    "A" | "a" => {
                        let (n, z) = parse_two(rest)?;
                        if z != 0 && z != n {
                            return Err(Error::invalid("A(n,n) takes a single parameter n"));
                        }
                        Family::Ann { n }
                    }
                    "osp" => {
                        let (big_m, two_n) = parse_two(rest)?;
                        if two_n == 0 || two_n % 2 != 0 {
                            return Err(Error::invalid(format!(
                                "osp:{big_m},{two_n}: second parameter must be even and positive"
                            )));
                        }
                        Family::Osp { big_m, n: two_n / 2 }
                    }
                    "D21a" | "d21a" => {
                        let lit = rest.trim().trim_start_matches("alpha=").trim_start_matches("α=");
                        let alpha: Scalar = lit.parse()?;
                        Family::D21 { alpha }
                    }
                    _ => return Err(Error::invalid(format!("unknown family tag `{tag}`"))),
                }
            }
        };
        fam.validate()?;
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_descriptors() {
        assert_eq!("gl:1,2".parse::<Family>().unwrap(), Family::Gl { m: 1, n: 2 });
        assert_eq!("sl:2".parse::<Family>().unwrap(), Family::Sl { m: 2, n: 0 });
        assert_eq!("osp:1,2".parse::<Family>().unwrap(), Family::Osp { big_m: 1, n: 1 });
        assert_eq!("osp:3,2".parse::<Family>().unwrap(), Family::Osp { big_m: 3, n: 1 });
        assert_eq!(
            "D21a:2/3".parse::<Family>().unwrap(),
            Family::D21 { alpha: Scalar::from_frac(2, 3) }
        );
        assert!("sl:1,1".parse::<Family>().is_err());
        assert!("osp:3,3".parse::<Family>().is_err());
        assert!("D21a:-1".parse::<Family>().is_err());
        assert!("q:1".parse::<Family>().is_err());
    }

    #[test]
    fn root_counts() {
        // gl(1,2): 2 even and 4 odd roots.
        let fam = Family::Gl { m: 1, n: 2 };
        let p = fam.parity_functional();
        let (even, odd): (Vec<_>, Vec<_>) = fam
            .roots()
            .into_iter()
            .partition(|r| r.iter().zip(&p).map(|(c, q)| c * q).sum::<i64>() % 2 == 0);
        assert_eq!((even.len(), odd.len()), (2, 4));

        // osp(1,2): Δ0 = ±2δ, Δ1 = ±δ.
        let b01 = Family::Osp { big_m: 1, n: 1 };
        assert_eq!(b01.roots(), vec![vec![-2], vec![-1], vec![1], vec![2]]);

        // F(4): 40 = 24 + 16 roots; G(3): 12 + 2 even, 14 odd.
        assert_eq!(Family::F4.roots().len(), 36);
        assert_eq!(Family::G3.roots().len(), 28);
        assert_eq!(Family::D21 { alpha: Scalar::one() }.roots().len(), 14);
    }
}
