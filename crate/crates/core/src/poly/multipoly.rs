use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coefficient, FieldSpec};

use super::monomial::Monomial;
use super::space::VarSpace;

/// Sparse polynomial; terms are keyed by monomial in ascending grevlex
/// order, so the leading term is the last entry. No zero coefficients are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    space: Arc<VarSpace>,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Coefficient>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Bi,
    Tri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multidegree {
    Bi(i64, i64),
    Tri(i64, i64, i64),
}

fn check_space(a: &Arc<VarSpace>, b: &Arc<VarSpace>) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(a.to_string(), b.to_string()))
    }
}

impl MultiPoly {
    pub fn zero(space: &Arc<VarSpace>, field: FieldSpec) -> Self {
        MultiPoly { space: space.clone(), field, terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<VarSpace>, c: Coefficient) -> Self {
        MultiPoly::monomial(space, Monomial::one(space.nvars()), c)
    }

    pub fn one(space: &Arc<VarSpace>, field: FieldSpec) -> Self {
        MultiPoly::constant(space, field.one())
    }

    pub fn monomial(space: &Arc<VarSpace>, m: Monomial, c: Coefficient) -> Self {
        assert_eq!(m.nvars(), space.nvars(), "monomial length does not match {space}");
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { space: space.clone(), field, terms }
    }

    pub fn var(space: &Arc<VarSpace>, field: FieldSpec, i: usize) -> Self {
        MultiPoly::monomial(space, Monomial::var(space.nvars(), i, 1), field.one())
    }

    /// Builds from (exponents, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(space: &Arc<VarSpace>, field: FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut p = MultiPoly::zero(space, field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coefficient)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_space(&self.space, &other.space)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_space(&self.space, &other.space)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_space(&self.space, &other.space)?;
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let prod = c1 * c2;
                acc.entry(m1.mul(m2)).and_modify(|e| *e = &*e + &prod).or_insert(prod);
            }
        }
        Ok(MultiPoly {
            space: self.space.clone(),
            field: self.field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Coefficient) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.space, self.field);
        }
        MultiPoly {
            space: self.space.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.space, self.field);
        }
        MultiPoly {
            space: self.space.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.space, self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn term_bidegree(&self, m: &Monomial) -> (i64, i64) {
        m.0.iter().enumerate().fold((0, 0), |(a, b), (i, &e)| {
            let (x, y) = self.space.bigrade(i);
            (a + x * e as i64, b + y * e as i64)
        })
    }

    fn term_tridegree(&self, m: &Monomial) -> Option<(i64, i64, i64)> {
        m.0.iter().enumerate().try_fold((0, 0, 0), |(a, b, c), (i, &e)| {
            let (x, y, z) = self.space.trigrade(i)?;
            let e = e as i64;
            Some((a + x * e, b + y * e, c + z * e))
        })
    }

    pub fn multidegree(&self, grading: Grading) -> Result<Multidegree> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match grading {
            Grading::Bi => {
                let mut degs = self.terms.keys().map(|m| self.term_bidegree(m));
                let first = degs.next().expect("nonzero");
                if degs.all(|d| d == first) {
                    Ok(Multidegree::Bi(first.0, first.1))
                } else {
                    Err(Error::NotHomogeneous("bi"))
                }
            }
            Grading::Tri => {
                let mut degs = self.terms.keys().map(|m| self.term_tridegree(m));
                let first = degs.next().flatten().ok_or(Error::NotHomogeneous("tri"))?;
                if degs.all(|d| d == Some(first)) {
                    Ok(Multidegree::Tri(first.0, first.1, first.2))
                } else {
                    Err(Error::NotHomogeneous("tri"))
                }
            }
        }
    }

    pub fn bidegree(&self) -> Result<(i64, i64)> {
        match self.multidegree(Grading::Bi)? {
            Multidegree::Bi(i, j) => Ok((i, j)),
            Multidegree::Tri(..) => unreachable!(),
        }
    }

    pub fn tridegree(&self) -> Result<(i64, i64, i64)> {
        match self.multidegree(Grading::Tri)? {
            Multidegree::Tri(i, j, k) => Ok((i, j, k)),
            Multidegree::Bi(..) => unreachable!(),
        }
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn try_divide(&self, g: &MultiPoly) -> Result<Option<MultiPoly>> {
        check_space(&self.space, &g.space)?;
        let Some((lm, lc)) = g.leading() else { return Err(Error::DivisorZero) };
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.space, self.field);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = m.div(lm);
            let qc = c * &lc_inv;
            rem = &rem - &g.mul_term(&qm, &qc);
            quot.add_term(qm, &qc);
        }
        Ok(Some(quot))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly], target: &Arc<VarSpace>) -> Result<MultiPoly> {
        if images.len() != self.space.nvars() {
            return Err(Error::SpaceMismatch(self.space.to_string(), format!("{} images", images.len())));
        }
        for img in images {
            check_space(img.space(), target)?;
        }
        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                t = &t * p;
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Coefficient]) -> Coefficient {
        assert_eq!(point.len(), self.space.nvars());
        self.terms.iter().fold(self.field.zero(), |acc, (m, c)| {
            let v = m.0.iter().zip(point).fold(c.clone(), |v, (&e, x)| (0..e).fold(v, |v, _| &v * x));
            &acc + &v
        })
    }

    /// Groups terms by their exponents on `vars`; each value has those
    /// exponents zeroed.
    pub fn split_by(&self, vars: std::ops::Range<usize>) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.0[vars.clone()].to_vec();
            let mut rest = m.clone();
            for i in vars.clone() {
                rest.0[i] = 0;
            }
            out.entry(key).or_insert_with(|| MultiPoly::zero(&self.space, self.field)).add_term(rest, c);
        }
        out
    }

    /// Re-expresses the polynomial in a space sharing the first `n` variables.
    pub fn embed(&self, target: &Arc<VarSpace>) -> MultiPoly {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[i] = x;
                }
            }
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(target, self.field, terms)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$f(rhs).expect("operands share a variable space")
            }
        }
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-&self.field.one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF: FieldSpec = FieldSpec::Prime(32003);

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &VarSpace::tz(), Q).unwrap()
    }

    fn random_form(rng: &mut ChaCha8Rng, space: &Arc<VarSpace>, field: FieldSpec, deg: u32) -> MultiPoly {
        let n = space.nvars();
        let mut poly = MultiPoly::zero(space, field);
        for _ in 0..6 {
            let mut e = vec![0u32; n];
            for _ in 0..deg {
                e[rng.random_range(0..n)] += 1;
            }
            poly.add_term(Monomial(e), &field.random(rng));
        }
        poly
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("T0 + T1") * &p("T0 - T1"), p("T0^2 - T1^2"));
    }

    #[test]
    fn additive_inverse() {
        let f = p("3*T0*Z1 - 2/5*T1^2");
        assert!((&f + &f.scale(&Q.from_i64(-1))).is_zero());
    }

    #[test]
    fn product_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let space = VarSpace::tz();
        let f = random_form(&mut rng, &space, GF, 3);
        let g = random_form(&mut rng, &space, GF, 3);
        let fg = &f * &g;
        for _ in 0..5 {
            let pt: Vec<Coefficient> = (0..space.nvars()).map(|_| GF.random(&mut rng)).collect();
            assert_eq!(fg.evaluate(&pt), &f.evaluate(&pt) * &g.evaluate(&pt));
        }
    }

    #[test]
    fn space_mismatch() {
        let a = MultiPoly::one(&VarSpace::tz(), Q);
        let b = MultiPoly::one(&VarSpace::blocks(1, 1), Q);
        assert!(matches!(a.try_add(&b), Err(Error::SpaceMismatch(..))));
    }

    #[test]
    fn degrees() {
        assert_eq!(MultiPoly::one(&VarSpace::tz(), Q).bidegree().unwrap(), (0, 0));
        assert_eq!(p("T1*Z0 - T0*Z1").bidegree().unwrap(), (1, 1));
        assert_eq!(p("T1 + Z0").bidegree(), Err(Error::NotHomogeneous("bi")));
        assert_eq!(MultiPoly::zero(&VarSpace::tz(), Q).bidegree(), Err(Error::ZeroPolynomial));
        let b = VarSpace::blocks(1, 2);
        let g = parse_poly("T0*X1*Y2^2", &b, Q).unwrap();
        assert_eq!(g.tridegree().unwrap(), (1, 1, 2));
        assert_eq!(g.bidegree().unwrap(), (1, 3));
        let s = parse_poly("T0^3*X", &VarSpace::scroll(1, 2), Q).unwrap();
        assert_eq!(s.bidegree().unwrap(), (2, 1));
    }

    #[test]
    fn division() {
        let g = p("T0*Z1 - T1*Z0 + Z2^2");
        let h = p("T1^2 + 3*Z0*Z1");
        assert_eq!((&g * &h).try_divide(&g).unwrap(), Some(h));
        let f = &g + &MultiPoly::one(&VarSpace::tz(), Q);
        assert_eq!(f.try_divide(&g).unwrap(), None);
        let zero = MultiPoly::zero(&VarSpace::tz(), Q);
        assert_eq!(zero.try_divide(&g).unwrap(), Some(zero.clone()));
        assert_eq!(g.try_divide(&zero), Err(Error::DivisorZero));
    }

    #[test]
    fn leading_term_is_grevlex_max() {
        let b = VarSpace::blocks(2, 0);
        let f = parse_poly("X1^2 - X0*X2", &b, Q).unwrap();
        assert_eq!(f.leading().unwrap().0, &Monomial::var(b.nvars(), b.x(1), 2));
    }

    #[test]
    fn substitution_is_homomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tz = VarSpace::tz();
        let ts = VarSpace::ts(2);
        let images: Vec<MultiPoly> = (0..tz.nvars()).map(|_| random_form(&mut rng, &ts, GF, 1)).collect();
        let f = random_form(&mut rng, &tz, GF, 2);
        let g = random_form(&mut rng, &tz, GF, 2);
        let lhs = (&f * &g).substitute(&images, &ts).unwrap();
        let rhs = &f.substitute(&images, &ts).unwrap() * &g.substitute(&images, &ts).unwrap();
        assert_eq!(lhs, rhs);
    }

    mod props {
        use super::{random_form, ChaCha8Rng, Monomial, MultiPoly, SeedableRng, VarSpace, GF};
        use proptest::prelude::*;
        use rand::Rng as _;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn divide_round_trip(seed in any::<u64>(), da in 0u32..4, db in 1u32..4) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let space = VarSpace::blocks(1, 2);
                let f = random_form(&mut rng, &space, GF, da);
                let g = random_form(&mut rng, &space, GF, db);
                prop_assume!(!g.is_zero());
                prop_assert_eq!((&f * &g).try_divide(&g).unwrap(), Some(f));
            }

            #[test]
            fn bidegree_additive(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let space = VarSpace::tz();
                let mono = |rng: &mut ChaCha8Rng| {
                    let e: Vec<u32> = (0..5).map(|_| rng.random_range(0..3)).collect();
                    MultiPoly::monomial(&space, Monomial(e), GF.random_nonzero(rng))
                };
                let (a, b) = (mono(&mut rng), mono(&mut rng));
                let (da, db) = (a.bidegree().unwrap(), b.bidegree().unwrap());
                prop_assert_eq!((&a * &b).bidegree().unwrap(), (da.0 + db.0, da.1 + db.1));
            }
        }
    }
}
