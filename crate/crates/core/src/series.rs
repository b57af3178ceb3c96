//! Dimension formulas and the power-series identities relating the
//! dimensions of the free quadri-algebra, its primitive part and its
//! dendriform generators.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

/// Longest series handled.
pub const SERIES_CAP: usize = 12;

/// Printed dimensions of the free quadri-algebra on one generator, n = 1..10.
pub const PRINTED_A: [u64; 10] = [1, 4, 23, 156, 1_162, 9_162, 75_819, 644_908, 5_616_182, 49_826_712];
/// Printed dimensions of its primitive part.
pub const PRINTED_B: [u64; 10] = [1, 3, 16, 105, 768, 6_006, 49_152, 415_701, 3_604_480, 31_870_410];
/// Printed dimensions of its space of dendriform generators.
pub const PRINTED_C: [u64; 10] = [1, 2, 10, 64, 462, 3_584, 29_172, 245_760, 2_124_694, 18_743_296];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series of length {0} exceeds the cap {SERIES_CAP}")]
    TooLong(usize),
    #[error("leading coefficient must be at least 1")]
    LeadingCoefficient,
    #[error("degree must be at least 1")]
    ZeroDegree,
}

/// Coefficients `a_1, …, a_N` of a series without constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<IntSeries, SeriesError> {
        if coeffs.len() > SERIES_CAP {
            return Err(SeriesError::TooLong(coeffs.len()));
        }
        Ok(IntSeries { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<IntSeries, SeriesError> {
        IntSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^n`, `n ≥ 1`.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check_leading(&self) -> Result<(), SeriesError> {
        match self.coeffs.first() {
            Some(c) if *c >= BigInt::one() => Ok(()),
            _ => Err(SeriesError::LeadingCoefficient),
        }
    }

    /// Product truncated to the shorter length.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let n = self.len().min(other.len());
        let mut out = vec![BigInt::zero(); n];
        for i in 1..=n {
            for j in 1..=n - i {
                out[i + j - 1] += &self.coeffs[i - 1] * &other.coeffs[j - 1];
            }
        }
        IntSeries { coeffs: out }
    }
}

/// `(1/n)·Σ_{j=n}^{2n−1} C(3n, n+1+j)·C(j−1, j−n)`. The sum alone is
/// `n` times the dimension; the division is exact.
pub fn dim_quad(n: usize) -> Result<BigInt, SeriesError> {
    let sum = dim_quad_raw_sum(n)?;
    debug_assert!((&sum % BigInt::from(n)).is_zero());
    Ok(sum / BigInt::from(n))
}

/// The binomial sum without the `1/n` factor.
pub fn dim_quad_raw_sum(n: usize) -> Result<BigInt, SeriesError> {
    if n == 0 {
        return Err(SeriesError::ZeroDegree);
    }
    let big = |x: usize| BigInt::from(x);
    Ok((n..2 * n)
        .map(|j| binomial(big(3 * n), big(n + 1 + j)) * binomial(big(j - 1), big(j - n)))
        .sum())
}

/// Compositional inverse of a series with linear coefficient one.
pub fn compositional_inverse(g: &IntSeries) -> Result<IntSeries, SeriesError> {
    if g.coeff(1) != BigInt::one() {
        return Err(SeriesError::LeadingCoefficient);
    }
    // h_n is fixed by requiring [tⁿ] g(h(t)) = 0 for n ≥ 2
    let len = g.len();
    let mut h = IntSeries {
        coeffs: vec![BigInt::zero(); len],
    };
    h.coeffs[0] = BigInt::one();
    for n in 2..=len {
        let value = compose(g, &h);
        h.coeffs[n - 1] = -value.coeff(n);
    }
    Ok(h)
}

/// `f(h(t))` for series without constant term, truncated to `len(h)`.
pub fn compose(f: &IntSeries, h: &IntSeries) -> IntSeries {
    let len = h.len();
    let mut out = vec![BigInt::zero(); len];
    let mut power = h.clone();
    for k in 1..=len.min(f.len()) {
        let fk = f.coeff(k);
        for (o, p) in out.iter_mut().zip(&power.coeffs) {
            *o += &fk * p;
        }
        power = power.mul(h);
    }
    IntSeries { coeffs: out }
}

/// Quad dimensions from Koszul duality: the inverse of `−f_{Quad^!}(−t)`.
pub fn dim_quad_from_dual(len: usize) -> Result<IntSeries, SeriesError> {
    let g = IntSeries::new(
        (1..=len)
            .map(|n| {
                let sq = dim_quad_shriek(n);
                if n % 2 == 1 {
                    sq
                } else {
                    -sq
                }
            })
            .collect(),
    )?;
    compositional_inverse(&g)
}

pub fn dim_quad_series(len: usize) -> Result<IntSeries, SeriesError> {
    IntSeries::new((1..=len).map(dim_quad).collect::<Result<_, _>>()?)
}

/// `dim Quad^!(n) = n²`.
pub fn dim_quad_shriek(n: usize) -> BigInt {
    BigInt::from(n * n)
}

/// `Catalan(n) = C(2n, n)/(n+1)`, the dimension of `Dend(n)`.
pub fn catalan(n: usize) -> BigInt {
    binomial(BigInt::from(2 * n), BigInt::from(n)) / BigInt::from(n + 1)
}

/// `f_Dend(t) = Σ_{n≥1} Catalan(n) tⁿ`, truncated.
pub fn free_dendriform_series(len: usize) -> Result<IntSeries, SeriesError> {
    IntSeries::new((1..=len).map(catalan).collect())
}

/// Coefficients of `B = A/(1+A)`, from `b_n = a_n − Σ_{k<n} a_k b_{n−k}`.
pub fn primitive_series_from(a: &IntSeries) -> Result<IntSeries, SeriesError> {
    a.check_leading()?;
    let mut b: Vec<BigInt> = Vec::with_capacity(a.len());
    for n in 1..=a.len() {
        let mut v = a.coeff(n);
        for k in 1..n {
            v -= a.coeff(k) * &b[n - k - 1];
        }
        b.push(v);
    }
    IntSeries::new(b)
}

/// The series `C` with `A = f_Dend(C)`. The linear coefficient of
/// `f_Dend` is one, so `c_n` is `a_n` minus the part of `f_Dend(C)` of
/// degree `n` that only involves `c_1, …, c_{n−1}`.
pub fn dendriform_generator_series_from(a: &IntSeries) -> Result<IntSeries, SeriesError> {
    a.check_leading()?;
    let len = a.len();
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    for n in 1..=len {
        // tentative c_n = 0, then read off the degree-n defect
        let mut trial = c.clone();
        trial.push(BigInt::zero());
        let value = compose_with_dendriform(&IntSeries { coeffs: trial })?;
        c.push(a.coeff(n) - value.coeff(n));
    }
    IntSeries::new(c)
}

/// `f_Dend(C)` truncated to the length of `C`.
pub fn compose_with_dendriform(c: &IntSeries) -> Result<IntSeries, SeriesError> {
    Ok(compose(&free_dendriform_series(c.len())?, c))
}

/// Rows `n, a_n, b_n, c_n` computed from the binomial formula.
pub fn table(len: usize) -> Result<Vec<[BigInt; 4]>, SeriesError> {
    let a = dim_quad_series(len)?;
    let b = primitive_series_from(&a)?;
    let c = dendriform_generator_series_from(&a)?;
    Ok((1..=len)
        .map(|n| [BigInt::from(n), a.coeff(n), b.coeff(n), c.coeff(n)])
        .collect())
}

pub fn table_csv(len: usize) -> Result<String, SeriesError> {
    let mut s = String::from("n,a_n,b_n,c_n\n");
    for row in table(len)? {
        writeln!(s, "{},{},{},{}", row[0], row[1], row[2], row[3]).expect("writing to a String");
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::presentation;
    use crate::rewrite::RewriteSystem;
    use proptest::prelude::*;

    fn printed(row: &[u64]) -> IntSeries {
        IntSeries::new(row.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn dim_quad_values() {
        assert_eq!(dim_quad(1).unwrap(), BigInt::from(1));
        assert_eq!(dim_quad(2).unwrap(), BigInt::from(4));
        assert_eq!(dim_quad(3).unwrap(), BigInt::from(32 - 9));
        assert_eq!(dim_quad(10).unwrap(), BigInt::from(49_826_712u64));
        // every printed entry but the sixth; see `printed_sixth_entry`
        let a = dim_quad_series(10).unwrap();
        for n in (1..=10).filter(|&n| n != 6) {
            assert_eq!(a.coeff(n), BigInt::from(PRINTED_A[n - 1]), "n={n}");
        }
        assert!(dim_quad(0).is_err());
        // the bare sum is n times too large
        assert_eq!(dim_quad_raw_sum(2).unwrap(), BigInt::from(8));
    }

    #[test]
    fn printed_sixth_entry() {
        // 9192 from the formula and from duality; the printed 9162 is
        // also incompatible with the printed b_6 and c_6
        assert_eq!(dim_quad(6).unwrap(), BigInt::from(9192));
        assert_eq!(dim_quad_from_dual(6).unwrap().coeff(6), BigInt::from(9192));
        let mut a = dim_quad_series(6).unwrap().coeffs().to_vec();
        a[5] = BigInt::from(PRINTED_A[5]);
        let a = IntSeries::new(a).unwrap();
        assert_ne!(primitive_series_from(&a).unwrap().coeff(6), BigInt::from(PRINTED_B[5]));
        assert_ne!(dendriform_generator_series_from(&a).unwrap().coeff(6), BigInt::from(PRINTED_C[5]));
    }

    #[test]
    fn dim_quad_agrees_with_koszul_duality() {
        assert_eq!(dim_quad_from_dual(SERIES_CAP).unwrap(), dim_quad_series(SERIES_CAP).unwrap());
    }

    #[test]
    fn dim_quad_matches_theta_image() {
        // independent: rank of Θ in arities 3 and 4 (computed in the operad
        // tests) and the free counts minus relations in arity 3
        assert_eq!(dim_quad(3).unwrap(), BigInt::from(32 - presentation("Quad").unwrap().relations.len()));
        assert_eq!(dim_quad(4).unwrap(), BigInt::from(156));
    }

    #[test]
    fn primitive_row() {
        let b = primitive_series_from(&dim_quad_series(10).unwrap()).unwrap();
        assert_eq!(b.coeff(2), BigInt::from(3));
        assert_eq!(b.coeff(3), BigInt::from(16));
        assert_eq!(b, printed(&PRINTED_B));
        let geometric = primitive_series_from(&IntSeries::from_i64(&[1, 0, 0, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!(geometric, IntSeries::from_i64(&[1, -1, 1, -1, 1, -1]).unwrap());
    }

    #[test]
    fn dendriform_row() {
        let c = dendriform_generator_series_from(&dim_quad_series(10).unwrap()).unwrap();
        assert_eq!(c.coeff(2), BigInt::from(2));
        assert_eq!(c.coeff(3), BigInt::from(10));
        assert_eq!(c, printed(&PRINTED_C));
        let one = dendriform_generator_series_from(&free_dendriform_series(8).unwrap()).unwrap();
        assert_eq!(one, IntSeries::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0]).unwrap());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            primitive_series_from(&IntSeries::from_i64(&[0, 1]).unwrap()),
            Err(SeriesError::LeadingCoefficient)
        ));
        assert!(IntSeries::from_i64(&[1; 13]).is_err());
    }

    #[test]
    fn quad_shriek_and_dend_dimensions_match_rewriting() {
        let q = RewriteSystem::standard(&presentation("QuadShriek").unwrap());
        let d = RewriteSystem::standard(&presentation("Dend").unwrap());
        let qd = q.normal_form_dims(1..=6);
        let dd = d.normal_form_dims(1..=6);
        for n in 1..=6 {
            assert_eq!(BigInt::from(qd[n - 1]), dim_quad_shriek(n));
            assert_eq!(BigInt::from(dd[n - 1]), catalan(n));
        }
    }

    #[test]
    fn squares_generating_function() {
        // Σ n² Xⁿ (1 − X)³ = X(1 + X)
        let s = IntSeries::new((1..=10).map(dim_quad_shriek).collect()).unwrap();
        let mut prod = vec![BigInt::zero(); 11];
        let cube = [1i64, -3, 3, -1];
        for n in 1..=10 {
            for (k, c) in cube.iter().enumerate() {
                if n + k <= 10 {
                    prod[n + k] += s.coeff(n) * BigInt::from(*c);
                }
            }
        }
        let expected: Vec<BigInt> = [0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(prod, expected);
    }

    #[test]
    fn csv_export() {
        let csv = table_csv(3).unwrap();
        assert_eq!(csv, "n,a_n,b_n,c_n\n1,1,1,1\n2,4,3,2\n3,23,16,10\n");
    }

    proptest! {
        #[test]
        fn primitive_inverts(a in proptest::collection::vec(-50i64..50, 1..8), lead in 1i64..5) {
            let mut coeffs = vec![lead];
            coeffs.extend(a);
            let a = IntSeries::from_i64(&coeffs).unwrap();
            // B(1 + A) = A
            let b = primitive_series_from(&a).unwrap();
            let ab = b.mul(&a);
            for n in 1..=a.len() {
                prop_assert_eq!(b.coeff(n) + ab.coeff(n), a.coeff(n));
            }
        }

        #[test]
        fn dendriform_inverts(a in proptest::collection::vec(-50i64..50, 1..8), lead in 1i64..5) {
            let mut coeffs = vec![lead];
            coeffs.extend(a);
            let a = IntSeries::from_i64(&coeffs).unwrap();
            let c = dendriform_generator_series_from(&a).unwrap();
            prop_assert_eq!(compose_with_dendriform(&c).unwrap(), a);
        }
    }
}
