//! Exact integer polynomials in one and two variables: the shared
//! representation of F- and M-triangles and everything derived from them.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::FieldScalar;

/// Dense bivariate integer polynomial; `coeff[k][l]` is the coefficient of
/// x^k y^l. Trailing zero rows and columns are trimmed so equality is
/// coefficientwise on canonical forms.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeff: Vec<Vec<BigInt>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeff: vec![] }
    }

    pub fn constant(c: i64) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, BigInt::from(c));
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// c · x^k y^l
    pub fn monomial(k: usize, l: usize, c: i64) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(k, l, BigInt::from(c));
        p
    }

    pub fn from_grid(grid: Vec<Vec<BigInt>>) -> Self {
        let mut p = BiPoly { coeff: grid };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_empty()
    }

    pub fn deg_x(&self) -> usize {
        self.coeff.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.coeff.iter().map(|r| r.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn get(&self, k: usize, l: usize) -> BigInt {
        self.coeff
            .get(k)
            .and_then(|row| row.get(l))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, k: usize, l: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if self.coeff.len() <= k {
            self.coeff.resize(k + 1, vec![]);
        }
        if self.coeff[k].len() <= l {
            self.coeff[k].resize(l + 1, BigInt::zero());
        }
        self.coeff[k][l] += c;
        self.trim();
    }

    fn trim(&mut self) {
        for row in &mut self.coeff {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.coeff.last().is_some_and(Vec::is_empty) {
            self.coeff.pop();
        }
    }

    /// Iterate nonzero terms as (x-power, y-power, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeff.iter().enumerate().flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(l, c)| (k, l, c))
        })
    }

    /// Exact evaluation at rational (or ℚ(√5)) points.
    pub fn eval(&self, x0: &FieldScalar, y0: &FieldScalar) -> FieldScalar {
        let mut acc = FieldScalar::zero();
        let mut xp = FieldScalar::one();
        for row in &self.coeff {
            let mut yp = FieldScalar::one();
            for c in row {
                if !c.is_zero() {
                    let c = FieldScalar::from_rational(num_rational::BigRational::from_integer(
                        c.clone(),
                    ));
                    acc = &acc + &(&(&c * &xp) * &yp);
                }
                yp = &yp * y0;
            }
            xp = &xp * x0;
        }
        acc
    }

    /// Substitute y = 0, returning the univariate slice in x.
    pub fn slice_y0(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeff
                .iter()
                .map(|row| row.first().cloned().unwrap_or_else(BigInt::zero))
                .collect(),
        )
    }

    /// JSON rendering with the canonical schema
    /// `{"deg_x":k,"deg_y":l,"coeff":[[...]]}`, row index = x-power.
    pub fn to_json(&self) -> serde_json::Value {
        let dx = self.deg_x();
        let dy = self.deg_y();
        let grid: Vec<Vec<serde_json::Value>> = (0..=dx)
            .map(|k| (0..=dy).map(|l| bigint_json(&self.get(k, l))).collect())
            .collect();
        serde_json::json!({ "deg_x": dx, "deg_y": dy, "coeff": grid })
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c.clone()) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, l, c) in rhs.terms() {
            out.add_term(k, l, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, l, c) in rhs.terms() {
            out.add_term(k, l, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k1, l1, c1) in self.terms() {
            for (k2, l2, c2) in rhs.terms() {
                out.add_term(k1 + k2, l1 + l2, c1 * c2);
            }
        }
        out
    }
}

/// Bases accepted by [`binomial_expand`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialBase {
    /// (x + y)^p
    XPlusY,
    /// (1 - y)^p
    OneMinusY,
    /// y^p
    Y,
}

/// Exact expansion of (x+y)^p, (1−y)^p or y^p with binomial coefficients.
pub fn binomial_expand(base: BinomialBase, power: usize) -> BiPoly {
    let mut out = BiPoly::zero();
    match base {
        BinomialBase::XPlusY => {
            let mut c = BigInt::one();
            for i in 0..=power {
                out.add_term(i, power - i, binom_step(&mut c, power, i));
            }
        }
        BinomialBase::OneMinusY => {
            let mut c = BigInt::one();
            for i in 0..=power {
                let coeff = binom_step(&mut c, power, i);
                out.add_term(0, i, if i % 2 == 0 { coeff } else { -coeff });
            }
        }
        BinomialBase::Y => out.add_term(0, power, BigInt::one()),
    }
    out
}

// Yields C(p, i) and advances the accumulator to C(p, i+1).
fn binom_step(acc: &mut BigInt, p: usize, i: usize) -> BigInt {
    let current = acc.clone();
    if i < p {
        *acc = &*acc * BigInt::from(p - i) / BigInt::from(i + 1);
    }
    current
}

fn fmt_poly_terms(terms: Vec<(String, BigInt)>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (mono, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let lead = if i == 0 {
            if c.is_negative() {
                "-".to_string()
            } else {
                String::new()
            }
        } else if c.is_negative() {
            " - ".to_string()
        } else {
            " + ".to_string()
        };
        if mono.is_empty() {
            write!(f, "{lead}{mag}")?;
        } else if mag.is_one() {
            write!(f, "{lead}{mono}")?;
        } else {
            write!(f, "{lead}{mag}{mono}")?;
        }
    }
    Ok(())
}

fn power_str(var: &str, p: usize) -> String {
    match p {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{p}"),
    }
}

impl fmt::Display for BiPoly {
    /// Terms ordered by total degree, x-power descending within a degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dy = self.deg_y();
        let mut keyed: Vec<(usize, usize, String, BigInt)> = vec![];
        for k in 0..=self.deg_x() {
            for l in 0..=dy {
                let c = self.get(k, l);
                if !c.is_zero() {
                    let mono = format!("{}{}", power_str("x", k), power_str("y", l));
                    keyed.push((k + l, k, mono, c));
                }
            }
        }
        keyed.sort_by(|a, b| (a.0, std::cmp::Reverse(a.1)).cmp(&(b.0, std::cmp::Reverse(b.1))));
        fmt_poly_terms(keyed.into_iter().map(|(_, _, m, c)| (m, c)).collect(), f)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dense univariate integer polynomial, ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeff: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeff: vec![] }
    }

    pub fn from_coeffs(coeff: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeff };
        p.trim();
        p
    }

    pub fn from_i64(coeff: &[i64]) -> Self {
        Self::from_coeffs(coeff.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeff.last().is_some_and(Zero::is_zero) {
            self.coeff.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeff.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> BigInt {
        self.coeff.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, k: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if self.coeff.len() <= k {
            self.coeff.resize(k + 1, BigInt::zero());
        }
        self.coeff[k] += c;
        self.trim();
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeff
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.coeff.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree(),
            "coeff": self.coeff.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in rhs.coeff.iter().enumerate() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (k1, c1) in self.coeff.iter().enumerate() {
            for (k2, c2) in rhs.coeff.iter().enumerate() {
                if !c1.is_zero() && !c2.is_zero() {
                    out.add_term(k1 + k2, c1 * c2);
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, BigInt)> = self
            .coeff
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (power_str("y", k), c.clone()))
            .collect();
        fmt_poly_terms(terms, f)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Display a univariate polynomial in a chosen variable name.
pub fn unipoly_display(p: &UniPoly, var: &str) -> String {
    format!("{p}").replace('y', var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_zero_is_identity() {
        let p = BiPoly::monomial(2, 1, 3);
        assert_eq!(&p + &BiPoly::zero(), p);
    }

    #[test]
    fn square_of_x_plus_y() {
        let xy = &BiPoly::monomial(1, 0, 1) + &BiPoly::monomial(0, 1, 1);
        let sq = &xy * &xy;
        assert_eq!(sq, binomial_expand(BinomialBase::XPlusY, 2));
        assert_eq!(sq.get(1, 1), BigInt::from(2));
    }

    #[test]
    fn difference_of_squares() {
        let one_minus_y = binomial_expand(BinomialBase::OneMinusY, 1);
        let one_plus_y = &BiPoly::one() + &BiPoly::monomial(0, 1, 1);
        let prod = &one_minus_y * &one_plus_y;
        let expected = &BiPoly::one() - &BiPoly::monomial(0, 2, 1);
        assert_eq!(prod, expected);
    }

    #[test]
    fn binomial_expansions() {
        assert_eq!(binomial_expand(BinomialBase::XPlusY, 0), BiPoly::one());
        let c = binomial_expand(BinomialBase::OneMinusY, 3);
        assert_eq!(c.get(0, 0), BigInt::from(1));
        assert_eq!(c.get(0, 1), BigInt::from(-3));
        assert_eq!(c.get(0, 2), BigInt::from(3));
        assert_eq!(c.get(0, 3), BigInt::from(-1));
        // (x+y)² y (1−y)⁰ = x²y + 2xy² + y³
        let p = &binomial_expand(BinomialBase::XPlusY, 2) * &binomial_expand(BinomialBase::Y, 1);
        assert_eq!(p.get(2, 1), BigInt::from(1));
        assert_eq!(p.get(1, 2), BigInt::from(2));
        assert_eq!(p.get(0, 3), BigInt::from(1));
    }

    #[test]
    fn binomial_power_additivity() {
        for base in [BinomialBase::XPlusY, BinomialBase::OneMinusY, BinomialBase::Y] {
            for i in 0..4usize {
                for j in 0..4usize {
                    let lhs = &binomial_expand(base, i) * &binomial_expand(base, j);
                    assert_eq!(lhs, binomial_expand(base, i + j));
                }
            }
        }
    }

    #[test]
    fn eval_exact() {
        // F_{A1} = 1 + x + y at (1,1) = 3
        let f = &(&BiPoly::one() + &BiPoly::monomial(1, 0, 1)) + &BiPoly::monomial(0, 1, 1);
        assert_eq!(
            f.eval(&FieldScalar::one(), &FieldScalar::one()),
            FieldScalar::integer(3)
        );
        assert_eq!(f.eval(&FieldScalar::zero(), &FieldScalar::zero()), FieldScalar::one());
    }

    #[test]
    fn display_readable() {
        let m = &(&BiPoly::one() - &BiPoly::monomial(1, 0, 1)) + &BiPoly::monomial(1, 1, 1);
        assert_eq!(m.to_string(), "1 - x + xy");
    }

    #[test]
    fn json_schema_shape() {
        let p = BiPoly::monomial(1, 0, 2);
        let v = p.to_json();
        assert_eq!(v["deg_x"], 1);
        assert_eq!(v["deg_y"], 0);
        assert_eq!(v["coeff"][1][0], 2);
    }

    #[test]
    fn unipoly_product_and_eval() {
        let p = UniPoly::from_i64(&[1, 1]);
        let q = UniPoly::from_i64(&[1, 3, 1]);
        let prod = &p * &q;
        assert_eq!(prod, UniPoly::from_i64(&[1, 4, 4, 1]));
        assert_eq!(prod.eval_int(1), BigInt::from(10));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = BiPoly> {
            proptest::collection::vec((0usize..4, 0usize..4, -9i64..9), 0..6).prop_map(|terms| {
                let mut p = BiPoly::zero();
                for (k, l, c) in terms {
                    p.add_term(k, l, BigInt::from(c));
                }
                p
            })
        }

        proptest! {
            #[test]
            fn addition_commutes(p in poly(), q in poly()) {
                prop_assert_eq!(&p + &q, &q + &p);
            }

            #[test]
            fn multiplication_associates(p in poly(), q in poly(), r in poly()) {
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            }

            #[test]
            fn multiplication_distributes(p in poly(), q in poly(), r in poly()) {
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            }

            #[test]
            fn subtraction_inverts_addition(p in poly(), q in poly()) {
                prop_assert_eq!(&(&p + &q) - &q, p);
            }
        }
    }
}
