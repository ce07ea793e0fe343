//! Exact scalar arithmetic over ℚ and the real quadratic field ℚ(√5),
//! plus exact matrix rank. No floating point exists anywhere in this crate.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoxError, CoxResult};

/// An exact real scalar: either a rational or an element a + b√5 of ℚ(√5).
///
/// Canonical form: a `Qsqrt5` value with b = 0 is demoted to `Rational` on
/// construction, so equal values always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Qsqrt5 { a: BigRational, b: BigRational },
}

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldScalar::Rational(BigRational::one())
    }

    pub fn integer(n: i64) -> Self {
        FieldScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        FieldScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        FieldScalar::Rational(r)
    }

    /// a + b√5 in canonical form (b = 0 collapses to the rational a).
    pub fn qsqrt5(a: BigRational, b: BigRational) -> Self {
        if b.is_zero() {
            FieldScalar::Rational(a)
        } else {
            FieldScalar::Qsqrt5 { a, b }
        }
    }

    pub fn qsqrt5_i64(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        Self::qsqrt5(
            BigRational::new(BigInt::from(a_num), BigInt::from(a_den)),
            BigRational::new(BigInt::from(b_num), BigInt::from(b_den)),
        )
    }

    /// The golden ratio φ = (1 + √5)/2 = 2 cos(π/5).
    pub fn phi() -> Self {
        Self::qsqrt5_i64(1, 2, 1, 2)
    }

    /// The two components (a, b) of a + b√5; b = 0 for rationals.
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            FieldScalar::Rational(r) => (r.clone(), BigRational::zero()),
            FieldScalar::Qsqrt5 { a, b } => (a.clone(), b.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldScalar::Rational(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldScalar::Rational(_))
    }

    /// Sign of the real value: -1, 0 or 1. For a + b√5 with mixed-sign parts
    /// the comparison reduces to a² vs 5b² (√5 is irrational, so never a tie).
    pub fn signum(&self) -> i32 {
        match self {
            FieldScalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            FieldScalar::Qsqrt5 { a, b } => {
                let sa = if a.is_zero() {
                    0
                } else if a.is_positive() {
                    1
                } else {
                    -1
                };
                let sb = if b.is_positive() { 1 } else { -1 };
                if sa == 0 {
                    return sb;
                }
                if sa == sb {
                    return sa;
                }
                let a2 = a * a;
                let b2_5 = b * b * BigRational::from_integer(BigInt::from(5));
                match a2.cmp(&b2_5) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("√5 is irrational"),
                }
            }
        }
    }

    pub fn checked_div(&self, rhs: &FieldScalar) -> CoxResult<FieldScalar> {
        if rhs.is_zero() {
            return Err(CoxError::DivisionByZero);
        }
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        if b.is_zero() && d.is_zero() {
            return Ok(FieldScalar::Rational(a / c));
        }
        // 1/(c + d√5) = (c - d√5)/(c² - 5d²)
        let norm = &c * &c - &d * &d * BigRational::from_integer(BigInt::from(5));
        let inv_a = &c / &norm;
        let inv_b = -(&d / &norm);
        Ok(FieldScalar::qsqrt5(
            &a * &inv_a + &b * &inv_b * BigRational::from_integer(BigInt::from(5)),
            &a * &inv_b + &b * &inv_a,
        ))
    }
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(x + y),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                FieldScalar::qsqrt5(a + c, b + d)
            }
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(x - y),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                FieldScalar::qsqrt5(a - c, b - d)
            }
        }
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(x * y),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                let five = BigRational::from_integer(BigInt::from(5));
                FieldScalar::qsqrt5(&a * &c + &b * &d * five, &a * &d + &b * &c)
            }
        }
    }
}

impl Div for &FieldScalar {
    type Output = FieldScalar;
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(-r),
            FieldScalar::Qsqrt5 { a, b } => FieldScalar::Qsqrt5 {
                a: -a,
                b: -b,
            },
        }
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldScalar {
    /// Canonical text form: "3/2", "-1", "1/2+1/2r5", "0-1r5".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            FieldScalar::Qsqrt5 { a, b } => {
                if b.is_negative() {
                    write!(f, "{}-{}r5", fmt_rational(a), fmt_rational(&-b))
                } else {
                    write!(f, "{}+{}r5", fmt_rational(a), fmt_rational(b))
                }
            }
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A dense matrix of exact scalars. Exists to provide exact rank; callers
/// build one row at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<FieldScalar>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), n_cols, "ragged matrix");
        }
        ExactMatrix {
            n_rows,
            n_cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![FieldScalar::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = FieldScalar::one();
        }
        Self::from_rows(rows)
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        ExactMatrix {
            n_rows,
            n_cols,
            entries: vec![FieldScalar::zero(); n_rows * n_cols],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldScalar {
        &self.entries[r * self.n_cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        self.entries[r * self.n_cols + c] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    /// Exact rank by Gaussian elimination. Pivots on the first nonzero entry
    /// in each column; there is no tolerance anywhere.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.n_cols {
            if rank == m.n_rows {
                break;
            }
            let pivot_row = (rank..m.n_rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != rank {
                for c in 0..m.n_cols {
                    let a = m.at(rank, c).clone();
                    let b = m.at(p, c).clone();
                    m.set(rank, c, b);
                    m.set(p, c, a);
                }
            }
            let pivot = m.at(rank, col).clone();
            for r in (rank + 1)..m.n_rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &pivot;
                for c in col..m.n_cols {
                    let v = m.at(r, c) - &(&factor * m.at(rank, c));
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Stable hash of a scalar (used by tests to confirm canonical-form
/// uniqueness).
pub fn scalar_hash(s: &FieldScalar) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldScalar {
        FieldScalar::ratio(n, d)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn sqrt5_conjugate_product() {
        let p = FieldScalar::qsqrt5_i64(1, 1, 1, 1);
        let m = FieldScalar::qsqrt5_i64(1, 1, -1, 1);
        assert_eq!(&p * &m, FieldScalar::integer(-4));
        assert!((&p * &m).is_rational());
    }

    #[test]
    fn golden_ratio_square() {
        let phi = FieldScalar::phi();
        let phi2 = &phi * &phi;
        assert_eq!(phi2, FieldScalar::qsqrt5_i64(3, 2, 1, 2));
        // φ² = φ + 1
        assert_eq!(phi2, &phi + &FieldScalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            q(1, 1).checked_div(&FieldScalar::zero()),
            Err(CoxError::DivisionByZero)
        ));
    }

    #[test]
    fn qsqrt5_division_round_trip() {
        let x = FieldScalar::qsqrt5_i64(2, 3, -1, 2);
        let y = FieldScalar::qsqrt5_i64(-1, 1, 1, 3);
        let z = &(&x * &y) / &y;
        assert_eq!(z, x);
    }

    #[test]
    fn canonical_form_is_unique() {
        // (1+√5)(1−√5) demotes to the rational −4 with the same hash as a
        // directly constructed −4.
        let p = &FieldScalar::qsqrt5_i64(1, 1, 1, 1) * &FieldScalar::qsqrt5_i64(1, 1, -1, 1);
        assert_eq!(scalar_hash(&p), scalar_hash(&FieldScalar::integer(-4)));
        assert_eq!(
            scalar_hash(&FieldScalar::qsqrt5_i64(7, 3, 0, 1)),
            scalar_hash(&q(7, 3))
        );
    }

    #[test]
    fn signum_mixed_parts() {
        // 3 - √5 > 0, 2 - √5 < 0
        assert_eq!(FieldScalar::qsqrt5_i64(3, 1, -1, 1).signum(), 1);
        assert_eq!(FieldScalar::qsqrt5_i64(2, 1, -1, 1).signum(), -1);
        assert_eq!(FieldScalar::qsqrt5_i64(-3, 1, 1, 1).signum(), -1);
        assert_eq!(FieldScalar::qsqrt5_i64(-2, 1, 1, 1).signum(), 1);
        assert_eq!(FieldScalar::zero().signum(), 0);
    }

    #[test]
    fn ordering_is_total() {
        let phi = FieldScalar::phi();
        assert!(q(8, 5) < phi && phi < q(13, 8));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(3, 2).to_string(), "3/2");
        assert_eq!(q(-4, 1).to_string(), "-4");
        assert_eq!(FieldScalar::phi().to_string(), "1/2+1/2r5");
        assert_eq!(FieldScalar::qsqrt5_i64(0, 1, -1, 1).to_string(), "0-1r5");
    }

    #[test]
    fn identity_matrix_rank() {
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        assert_eq!(ExactMatrix::zeros(4, 3).rank(), 0);
    }

    #[test]
    fn reflection_matrix_minus_identity_has_rank_one() {
        // t_{α₁} in the A₂ simple basis sends α₁ ↦ -α₁, α₂ ↦ α₁+α₂;
        // subtracting the identity leaves a rank-1 matrix.
        let t = ExactMatrix::from_rows(vec![
            vec![FieldScalar::integer(-1), FieldScalar::integer(1)],
            vec![FieldScalar::integer(0), FieldScalar::integer(1)],
        ]);
        let mut diff = t.clone();
        for i in 0..2 {
            diff.set(i, i, t.at(i, i) - &FieldScalar::one());
        }
        assert_eq!(diff.rank(), 1);
    }

    #[test]
    fn rank_with_qsqrt5_entries() {
        let phi = FieldScalar::phi();
        // Rows (1, φ) and (φ, φ²) are proportional.
        let m = ExactMatrix::from_rows(vec![
            vec![FieldScalar::one(), phi.clone()],
            vec![phi.clone(), &phi * &phi],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let m = ExactMatrix::from_rows(vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(0, 1), q(1, 1), q(1, 1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = FieldScalar> {
            (-30i64..30, 1i64..12).prop_map(|(n, d)| FieldScalar::ratio(n, d))
        }

        fn scalar() -> impl Strategy<Value = FieldScalar> {
            prop_oneof![
                rational(),
                ((-20i64..20, 1i64..8), (-20i64..20, 1i64..8))
                    .prop_map(|((an, ad), (bn, bd))| FieldScalar::qsqrt5_i64(an, ad, bn, bd)),
            ]
        }

        proptest! {
            #[test]
            fn add_sub_round_trip(a in scalar(), b in scalar()) {
                prop_assert_eq!(&(&a + &b) - &b, a);
            }

            #[test]
            fn mul_div_round_trip(a in scalar(), b in scalar()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!(&(&a * &b) / &b, a);
            }

            #[test]
            fn equal_values_hash_equal(a in scalar(), b in scalar()) {
                // canonical-form uniqueness: sums built in different orders
                // are identical representations
                let left = &a + &b;
                let right = &b + &a;
                prop_assert_eq!(scalar_hash(&left), scalar_hash(&right));
                prop_assert_eq!(left, right);
            }

            #[test]
            fn rank_transpose(entries in proptest::collection::vec(rational(), 12)) {
                let rows: Vec<Vec<FieldScalar>> =
                    entries.chunks(4).map(|c| c.to_vec()).collect();
                let m = ExactMatrix::from_rows(rows);
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }
        }
    }
}
