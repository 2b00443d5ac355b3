use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::gaussian::GaussianRational;
use crate::scalar::Scalar;

/// A univariate polynomial in the noise probability `p` with Gaussian
/// rational coefficients.
///
/// `coeffs[k]` is the coefficient of `p^k`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients and two equal
/// polynomials have identical storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyP {
    coeffs: Vec<GaussianRational>,
}

impl PolyP {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Real rational coefficients, lowest degree first.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(GaussianRational::real).collect())
    }

    /// Real coefficients given as `(num, den)` pairs, lowest degree first.
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&(n, d)| GaussianRational::real(super::rational(n, d)))
                .collect(),
        )
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `p`.
    pub fn p() -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `p^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn conjugate(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(Scalar::conj).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    /// Exact evaluation by Horner's rule.
    pub fn evaluate_at(&self, p: &BigRational) -> GaussianRational {
        let x = GaussianRational::real(p.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * &x) + c)
    }

    /// Horner's rule in floating point over coefficients converted once.
    pub fn evaluate_f64(&self, p: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * p + c.to_complex64()
            })
    }

    /// Real-coefficient polynomials evaluated to `f64`; `None` when any
    /// coefficient has an imaginary part.
    pub fn evaluate_real_f64(&self, p: f64) -> Option<f64> {
        if self.coeffs.iter().all(GaussianRational::is_real) {
            Some(
                self.coeffs
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * p + c.re.to_f64().unwrap_or(f64::NAN)),
            )
        } else {
            None
        }
    }

    /// Degree-by-degree differences against `other`, as
    /// `(degree, self coefficient, other coefficient)`.
    pub fn coefficient_diffs(
        &self,
        other: &Self,
    ) -> Vec<(usize, GaussianRational, GaussianRational)> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .filter_map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                (a != b).then_some((k, a, b))
            })
            .collect()
    }
}

impl fmt::Display for PolyP {
    /// Canonical text: `c0 + c1*p + c2*p^2 + ...`, zero terms omitted,
    /// signs carried by the coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*p")?,
                _ => write!(f, "{c}*p^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a PolyP> for &'a PolyP {
    type Output = PolyP;
    fn add(self, rhs: &PolyP) -> PolyP {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyP::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a PolyP> for &'a PolyP {
    type Output = PolyP;
    fn sub(self, rhs: &PolyP) -> PolyP {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyP::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a - b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => -b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<'a> Mul<&'a PolyP> for &'a PolyP {
    type Output = PolyP;
    fn mul(self, rhs: &PolyP) -> PolyP {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyP::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                out[i + j] = &out[i + j] + &prod;
            }
        }
        PolyP::from_coeffs(out)
    }
}

impl Add for PolyP {
    type Output = PolyP;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for PolyP {
    type Output = PolyP;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for PolyP {
    type Output = PolyP;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for PolyP {
    type Output = PolyP;
    fn neg(self) -> Self {
        PolyP {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl Scalar for PolyP {
    fn zero() -> Self {
        PolyP { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    fn from_ratio(num: i64, den: u64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn conj(&self) -> Self {
        self.conjugate()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn as_real(&self) -> Option<f64> {
        match self.coeffs.len() {
            0 => Some(0.0),
            1 => self.coeffs[0].as_real(),
            _ => None,
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use proptest::prelude::*;

    fn one_minus_p() -> PolyP {
        &PolyP::one() - &PolyP::p()
    }

    #[test]
    fn square_of_one_minus_p() {
        assert_eq!(
            one_minus_p().mul_ref(&one_minus_p()),
            PolyP::from_ratios(&[(1, 1), (-2, 1), (1, 1)])
        );
    }

    #[test]
    fn one_minus_two_p_to_the_eighth() {
        let two_p = PolyP::p().scale(&GaussianRational::from_ratio(2, 1));
        let expanded = (&PolyP::one() - &two_p).pow(8);
        let printed = PolyP::from_ratios(&[
            (1, 1),
            (-16, 1),
            (112, 1),
            (-448, 1),
            (1120, 1),
            (-1792, 1),
            (1792, 1),
            (-1024, 1),
            (256, 1),
        ]);
        assert_eq!(expanded, printed);
    }

    #[test]
    fn trims_and_degrees() {
        let z = PolyP::from_ratios(&[(0, 1), (0, 1)]);
        assert!(Scalar::is_zero(&z));
        assert_eq!(z.degree(), None);
        assert_eq!(one_minus_p().pow(12).degree(), Some(12));
        assert_eq!((&one_minus_p() - &one_minus_p()).degree(), None);
    }

    #[test]
    fn canonical_text() {
        assert_eq!(one_minus_p().pow(2).to_string(), "1 + -2*p + 1*p^2");
        let q = PolyP::from_coeffs(vec![
            GaussianRational::from_parts(1, 4, 0, 1),
            GaussianRational::zero(),
            GaussianRational::from_parts(0, 1, 3, 2),
        ]);
        assert_eq!(q.to_string(), "1/4 + (0,3/2)*p^2");
        assert_eq!(PolyP::zero().to_string(), "0");
    }

    #[test]
    fn derivative_and_evaluation() {
        let q = PolyP::from_ratios(&[(1, 4), (-5, 2), (73, 4)]);
        assert_eq!(q.derivative(), PolyP::from_ratios(&[(-5, 2), (73, 2)]));
        assert_eq!(
            q.evaluate_at(&rational(0, 1)),
            GaussianRational::from_parts(1, 4, 0, 1)
        );
        assert_eq!(q.evaluate_real_f64(0.5), Some(0.25 - 1.25 + 73.0 / 16.0));
    }

    fn poly() -> impl Strategy<Value = PolyP> {
        prop::collection::vec((-9i64..9, 1i64..5, -9i64..9, 1i64..5), 0..6).prop_map(|cs| {
            PolyP::from_coeffs(
                cs.into_iter()
                    .map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), n in -5i64..5, d in 1i64..6) {
            let x = rational(n, d);
            prop_assert_eq!((&a * &b).evaluate_at(&x), &a.evaluate_at(&x) * &b.evaluate_at(&x));
            prop_assert_eq!((&a + &b).evaluate_at(&x), &a.evaluate_at(&x) + &b.evaluate_at(&x));
            prop_assert_eq!(a.conjugate().evaluate_at(&x), a.evaluate_at(&x).conj());
        }

        #[test]
        fn product_degree_is_additive(a in poly(), b in poly()) {
            let prod = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => prop_assert_eq!(prod.degree(), Some(da + db)),
                _ => prop_assert!(Scalar::is_zero(&prod)),
            }
        }
    }
}
