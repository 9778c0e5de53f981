use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coefficient, FieldSpec};

use super::monomial::Monomial;
use super::multipoly::MultiPoly;
use super::space::VarSpace;

/// Homogeneous form in `T0, T1`; `coeffs[k]` multiplies `T0^(d-k) T1^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: FieldSpec,
    coeffs: Vec<Coefficient>,
}

impl BinaryForm {
    pub fn new(field: FieldSpec, coeffs: Vec<Coefficient>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec, degree: u32) -> Self {
        BinaryForm { field, coeffs: vec![field.zero(); degree as usize + 1] }
    }

    /// `c * T0^(d-k) * T1^k`.
    pub fn monomial(field: FieldSpec, degree: u32, k: u32, c: Coefficient) -> Self {
        let mut f = BinaryForm::zero(field, degree);
        f.coeffs[k as usize] = c;
        f
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> &Coefficient {
        &self.coeffs[k as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    /// Coefficient of the largest monomial present (highest power of T0).
    pub fn leading_coeff(&self) -> Option<&Coefficient> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Coefficient) -> BinaryForm {
        BinaryForm { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Scales so the leading coefficient is 1; the zero form is unchanged.
    pub fn monic(&self) -> BinaryForm {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn try_add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree() as i64, got: other.degree() as i64 });
        }
        Ok(BinaryForm {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// `T0^a * T1^b * self`.
    pub fn shift(&self, a: u32, b: u32) -> BinaryForm {
        let mut coeffs = vec![self.field.zero(); b as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.extend(std::iter::repeat_n(self.field.zero(), a as usize));
        BinaryForm { field: self.field, coeffs }
    }

    pub fn to_poly(&self, space: &Arc<VarSpace>) -> MultiPoly {
        let d = self.degree();
        let n = space.nvars();
        MultiPoly::from_terms(
            space,
            self.field,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[0] = d - k as u32;
                e[1] = k as u32;
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Reads a polynomial in `T0, T1` only, homogeneous of the given degree.
    pub fn from_poly(p: &MultiPoly, degree: u32) -> Result<BinaryForm> {
        let mut f = BinaryForm::zero(p.field(), degree);
        for (m, c) in p.terms() {
            if m.0[2..].iter().any(|&e| e > 0) {
                return Err(Error::NotHomogeneous("binary"));
            }
            if m.0[0] + m.0[1] != degree {
                return Err(Error::DegreeMismatch { expected: degree as i64, got: (m.0[0] + m.0[1]) as i64 });
            }
            f.coeffs[m.0[1] as usize] = c.clone();
        }
        Ok(f)
    }

    pub fn evaluate(&self, t0: &Coefficient, t1: &Coefficient) -> Coefficient {
        let d = self.degree();
        self.coeffs.iter().enumerate().fold(self.field.zero(), |acc, (k, c)| {
            let mut v = c.clone();
            for _ in 0..(d - k as u32) {
                v = &v * t0;
            }
            for _ in 0..k {
                v = &v * t1;
            }
            &acc + &v
        })
    }

    /// Powers `(a, b)` such that `T0^a T1^b` is the largest monomial factor.
    fn monomial_content(&self) -> (u32, u32) {
        let first = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form");
        (self.degree() - last as u32, first as u32)
    }

    /// Dehomogenization at `T0 = 1` after removing monomial content, as
    /// ascending coefficients in `t = T1`.
    fn core_univariate(&self) -> Vec<Coefficient> {
        let first = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form");
        self.coeffs[first..=last].to_vec()
    }
}

fn trim(mut v: Vec<Coefficient>) -> Vec<Coefficient> {
    while v.last().is_some_and(Coefficient::is_zero) {
        v.pop();
    }
    v
}

fn uni_rem(a: &[Coefficient], b: &[Coefficient]) -> Vec<Coefficient> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().expect("nonempty") * &lb;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&q * bc);
        }
        r = trim(r);
    }
    r
}

fn uni_gcd(a: Vec<Coefficient>, b: Vec<Coefficient>) -> Vec<Coefficient> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Monic gcd (leading coefficient 1) of two binary forms.
pub fn gcd_binary_forms(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (true, false) => return Ok(b.monic()),
        (false, true) => return Ok(a.monic()),
        _ => {}
    }
    let (a0, a1) = a.monomial_content();
    let (b0, b1) = b.monomial_content();
    let g = uni_gcd(a.core_univariate(), b.core_univariate());
    let core = BinaryForm::new(a.field, g);
    Ok(core.shift(a0.min(b0), a1.min(b1)).monic())
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        self.try_add(rhs).expect("forms of equal degree")
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        self.try_add(&-rhs).expect("forms of equal degree")
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        BinaryForm { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.field, self.degree() + rhs.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(&VarSpace::binary()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(Q, c)
    }

    #[test]
    fn monomial_gcd() {
        // T0^2 T1 and T0 T1^2
        assert_eq!(gcd_binary_forms(&form(&[0, 1, 0, 0]), &form(&[0, 0, 1, 0])).unwrap(), form(&[0, 1, 0]));
    }

    #[test]
    fn coprime_pure_powers() {
        let a = BinaryForm::monomial(Q, 14, 0, Q.one());
        let b = BinaryForm::monomial(Q, 12, 12, Q.one());
        assert_eq!(gcd_binary_forms(&a, &b).unwrap(), form(&[1]));
    }

    #[test]
    fn gcd_with_itself_is_monic() {
        let f = form(&[0, 3, -6, 9]);
        assert_eq!(gcd_binary_forms(&f, &f).unwrap(), form(&[0, 1, -2, 3]));
    }

    #[test]
    fn both_zero() {
        assert_eq!(gcd_binary_forms(&form(&[0, 0]), &form(&[0])), Err(Error::BothZero));
    }

    #[test]
    fn display() {
        assert_eq!(form(&[1, 0, -2]).to_string(), "T0^2 - 2*T1^2");
    }

    proptest! {
        #[test]
        fn common_factor_divides_gcd(
            g in proptest::collection::vec(-4i64..5, 1..4),
            a in proptest::collection::vec(-4i64..5, 1..4),
            b in proptest::collection::vec(-4i64..5, 1..4),
        ) {
            let (g, a, b) = (form(&g), form(&a), form(&b));
            prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
            let h = gcd_binary_forms(&(&g * &a), &(&g * &b)).unwrap();
            // g must divide h: check via gcd(h, g) == monic g
            prop_assert_eq!(gcd_binary_forms(&h, &g).unwrap(), g.monic());
            prop_assert!(h.degree() >= g.degree());
        }
    }
}
