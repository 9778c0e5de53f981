use std::cmp::Ordering;

/// Exponent vector over a variable space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

/// Graded reverse lexicographic order with variables ranked by index
/// (index 0 largest). Higher total degree wins; ties are broken at the last
/// differing variable, where the smaller exponent wins.
pub fn grevlex_compare(a: &Monomial, b: &Monomial) -> Ordering {
    assert_eq!(a.0.len(), b.0.len(), "monomials over different spaces");
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.0.iter().zip(&b.0).rev().find(|(x, y)| x != y).map_or(Ordering::Equal, |(x, y)| y.cmp(x)))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(n);
        m.0[i] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn pencil_leading_term() {
        // T0, T1, X0, X1: T1*X0 beats T0*X1
        assert_eq!(grevlex_compare(&m(&[0, 1, 1, 0]), &m(&[1, 0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn quadric_leading_term() {
        // X0..X3: X1*X2 beats X0*X3, X2^2 beats X1*X3
        assert_eq!(grevlex_compare(&m(&[0, 1, 1, 0]), &m(&[1, 0, 0, 1])), Ordering::Greater);
        assert_eq!(grevlex_compare(&m(&[0, 0, 2, 0]), &m(&[0, 1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        let a = m(&[2, 0, 1]);
        assert_eq!(grevlex_compare(&a, &a), Ordering::Equal);
    }

    #[test]
    fn degree_first() {
        assert_eq!(grevlex_compare(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 5).prop_map(Monomial)
    }

    proptest! {
        #[test]
        fn multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = grevlex_compare(&a, &b);
            prop_assert_eq!(grevlex_compare(&c.mul(&a), &c.mul(&b)), ab);
        }

        #[test]
        fn antisymmetric_and_total(a in arb_mono(), b in arb_mono()) {
            prop_assert_eq!(grevlex_compare(&a, &b), grevlex_compare(&b, &a).reverse());
            if grevlex_compare(&a, &b) == Ordering::Equal {
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn transitive(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}
