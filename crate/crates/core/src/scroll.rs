//! The toric ideal of the rational normal scroll: its binomial generators,
//! normal forms modulo them, and an S-pair check of the Gröbner property.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::par::{par_map, Execution};
use crate::poly::{Monomial, MultiPoly, VarSpace};

#[derive(Debug, Clone)]
pub struct ScrollBasis {
    pub mu1: u32,
    pub mu2: u32,
    pub space: Arc<VarSpace>,
    pub field: FieldSpec,
    /// `T1 X_(i-1) - T0 X_i` then `T1 Y_(j-1) - T0 Y_j`.
    pub pencils: Vec<MultiPoly>,
    /// X-quadrics, then Y-quadrics, then mixed quadrics.
    pub quadrics: Vec<MultiPoly>,
}

/// `μ1 + μ2 + C(μ1,2) + C(μ2,2) + μ1·μ2`.
pub fn expected_count(mu1: u32, mu2: u32) -> usize {
    let (a, b) = (mu1 as usize, mu2 as usize);
    a + b + a * a.saturating_sub(1) / 2 + b * b.saturating_sub(1) / 2 + a * b
}

fn binomial(space: &Arc<VarSpace>, field: FieldSpec, plus: &[(usize, u32)], minus: &[(usize, u32)]) -> MultiPoly {
    let mono = |vs: &[(usize, u32)]| {
        let mut e = vec![0; space.nvars()];
        for &(v, x) in vs {
            e[v] += x;
        }
        Monomial(e)
    };
    MultiPoly::from_terms(space, field, [(mono(plus), field.one()), (mono(minus), -&field.one())])
}

pub fn scroll_generators(mu1: u32, mu2: u32, field: FieldSpec) -> ScrollBasis {
    let sp = VarSpace::blocks(mu1, mu2);
    let (t0, t1) = (0, 1);
    let x = |i: u32| sp.x(i);
    let y = |i: u32| sp.y(i);
    let mut pencils = Vec::new();
    for i in 1..=mu1 {
        pencils.push(binomial(&sp, field, &[(t1, 1), (x(i - 1), 1)], &[(t0, 1), (x(i), 1)]));
    }
    for j in 1..=mu2 {
        pencils.push(binomial(&sp, field, &[(t1, 1), (y(j - 1), 1)], &[(t0, 1), (y(j), 1)]));
    }
    let mut quadrics = Vec::new();
    for i in 1..mu1 {
        for j in i..mu1 {
            quadrics.push(binomial(&sp, field, &[(x(i), 1), (x(j), 1)], &[(x(i - 1), 1), (x(j + 1), 1)]));
        }
    }
    for i in 1..mu2 {
        for j in i..mu2 {
            quadrics.push(binomial(&sp, field, &[(y(i), 1), (y(j), 1)], &[(y(i - 1), 1), (y(j + 1), 1)]));
        }
    }
    for i in 1..=mu1 {
        for j in 0..mu2 {
            quadrics.push(binomial(&sp, field, &[(x(i), 1), (y(j), 1)], &[(x(i - 1), 1), (y(j + 1), 1)]));
        }
    }
    ScrollBasis { mu1, mu2, space: sp, field, pencils, quadrics }
}

impl ScrollBasis {
    pub fn elements(&self) -> impl Iterator<Item = &MultiPoly> + '_ {
        self.pencils.iter().chain(&self.quadrics)
    }

    pub fn len(&self) -> usize {
        self.pencils.len() + self.quadrics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Remainder of division by `divisors` under grevlex, with the number of
/// reduction steps taken.
pub fn reduce(f: &MultiPoly, divisors: &[&MultiPoly]) -> (MultiPoly, usize) {
    let binomial = divisors.iter().all(|g| g.len() <= 2);
    if binomial {
        reduce_binomial(f, divisors)
    } else {
        reduce_generic(f, divisors)
    }
}

fn reduce_generic(f: &MultiPoly, divisors: &[&MultiPoly]) -> (MultiPoly, usize) {
    let mut rest = f.clone();
    let mut rem = MultiPoly::zero(f.space(), f.field());
    let mut steps = 0;
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = divisors.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m)));
        match hit {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero divisor");
                let factor = &c * &lc.inv().expect("nonzero");
                rest = &rest - &g.mul_term(&m.div(lm), &factor);
                steps += 1;
            }
            None => {
                let term = MultiPoly::monomial(f.space(), m, c);
                rest = &rest - &term;
                rem = &rem + &term;
            }
        }
    }
    (rem, steps)
}

/// Each reduction of a term by a binomial yields a single term, so the
/// remainder is built term by term.
fn reduce_binomial(f: &MultiPoly, divisors: &[&MultiPoly]) -> (MultiPoly, usize) {
    let field = f.field();
    let rules: Vec<(Monomial, Option<(Monomial, _)>)> = divisors
        .iter()
        .filter_map(|g| {
            let mut terms = g.terms().rev();
            let (lm, lc) = terms.next()?;
            let lc_inv = lc.inv().expect("nonzero");
            let tail = terms.next().map(|(m, c)| (m.clone(), -&(c * &lc_inv)));
            Some((lm.clone(), tail))
        })
        .collect();
    let mut rem = MultiPoly::zero(f.space(), field);
    let mut steps = 0;
    for (m, c) in f.terms() {
        let (mut m, mut c) = (m.clone(), c.clone());
        loop {
            let Some((lm, tail)) = rules.iter().find(|(lm, _)| lm.divides(&m)) else {
                rem = &rem + &MultiPoly::monomial(f.space(), m, c);
                break;
            };
            steps += 1;
            match tail {
                None => break,
                Some((tm, tc)) => {
                    m = m.div(lm).mul(tm);
                    c = &c * tc;
                }
            }
        }
    }
    (rem, steps)
}

pub fn normal_form(f: &MultiPoly, basis: &ScrollBasis) -> MultiPoly {
    let divisors: Vec<&MultiPoly> = basis.elements().collect();
    reduce(f, &divisors).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerReport {
    pub pairs: usize,
    pub max_steps: usize,
}

pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let l = lf.lcm(lg);
    &f.mul_term(&l.div(lf), &cf.inv().expect("nonzero")) - &g.mul_term(&l.div(lg), &cg.inv().expect("nonzero"))
}

pub fn buchberger_check(basis: &ScrollBasis) -> Result<BuchbergerReport> {
    buchberger_check_with(basis, Execution::default())
}

/// Reduces every S-polynomial; the first pair with nonzero remainder is an error.
pub fn buchberger_check_with(basis: &ScrollBasis, exec: Execution) -> Result<BuchbergerReport> {
    let elems: Vec<&MultiPoly> = basis.elements().collect();
    let pairs: Vec<(usize, usize)> =
        (0..elems.len()).flat_map(|i| ((i + 1)..elems.len()).map(move |j| (i, j))).collect();
    let results = par_map(exec, &pairs, |&(i, j)| {
        let (nf, steps) = reduce(&s_polynomial(elems[i], elems[j]), &elems);
        (nf.is_zero(), steps)
    });
    let mut max_steps = 0;
    for (&(i, j), (ok, steps)) in pairs.iter().zip(results) {
        if !ok {
            return Err(Error::SPairNonzero(i, j));
        }
        max_steps = max_steps.max(steps);
    }
    Ok(BuchbergerReport { pairs: pairs.len(), max_steps })
}

/// Indices of basis elements whose remainder modulo the others is zero.
pub fn redundant_elements(basis: &ScrollBasis) -> Vec<usize> {
    let elems: Vec<&MultiPoly> = basis.elements().collect();
    (0..elems.len())
        .filter(|&i| {
            let others: Vec<&MultiPoly> = elems.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| *g).collect();
            reduce(elems[i], &others).0.is_zero()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mubasis::SpaceCurve;
    use crate::poly::{parse_poly, BinaryForm};
    use crate::ringmaps::SpaceMaps;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF: FieldSpec = FieldSpec::Prime(32003);

    #[test]
    fn counts() {
        assert_eq!(scroll_generators(0, 0, Q).len(), 0);
        assert_eq!(scroll_generators(3, 5, Q).len(), 36);
        let b = scroll_generators(0, 1, Q);
        assert_eq!(b.len(), 1);
        assert_eq!(b.pencils[0].to_string(), "T1*Y0 - T0*Y1");
        for mu2 in 0..=6 {
            for mu1 in 0..=mu2 {
                assert_eq!(scroll_generators(mu1, mu2, Q).len(), expected_count(mu1, mu2));
            }
        }
    }

    #[test]
    fn leading_terms_are_distinct_quadratics() {
        let b = scroll_generators(3, 4, Q);
        let lts: Vec<&Monomial> = b.elements().map(|g| g.leading().unwrap().0).collect();
        for (k, m) in lts.iter().enumerate() {
            assert_eq!(m.degree(), 2);
            assert!(!lts[..k].contains(m));
        }
    }

    #[test]
    fn killed_by_phi_prime() {
        let curve = SpaceCurve::new(
            17,
            3,
            5,
            BinaryForm::monomial(Q, 14, 0, Q.one()),
            BinaryForm::monomial(Q, 12, 12, Q.one()),
        )
        .unwrap();
        let maps = SpaceMaps::new(&curve);
        for g in scroll_generators(3, 5, Q).elements() {
            assert!(maps.phi_prime.apply(g).unwrap().is_zero(), "{g}");
        }
    }

    #[test]
    fn self_reduction_and_stability() {
        let b = scroll_generators(2, 3, GF);
        for g in b.elements() {
            assert!(normal_form(g, &b).is_zero());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = parse_poly("X0*Y3*T1 + 5*X2*Y1 + T0^2*X1 - Y1*Y2", &b.space, GF).unwrap();
        let mut g = f.clone();
        for h in b.elements() {
            let m = Monomial::var(b.space.nvars(), rng.random_range(0..b.space.nvars()), 1);
            g = &g + &h.mul_term(&m, &GF.random(&mut rng));
        }
        assert_eq!(normal_form(&f, &b), normal_form(&g, &b));
        let generic: Vec<&MultiPoly> = b.elements().collect();
        assert_eq!(reduce_generic(&g, &generic).0, normal_form(&f, &b));
    }

    #[test]
    fn small_buchberger() {
        assert_eq!(buchberger_check(&scroll_generators(0, 1, Q)).unwrap().pairs, 0);
        assert!(buchberger_check(&scroll_generators(1, 1, Q)).is_ok());
        assert!(buchberger_check(&scroll_generators(2, 3, Q)).is_ok());
    }

    #[test]
    fn broken_basis_is_caught() {
        let mut b = scroll_generators(2, 2, Q);
        b.quadrics.pop();
        b.quadrics.remove(0);
        assert!(matches!(buchberger_check(&b), Err(Error::SPairNonzero(..))));
    }

    #[test]
    fn minimal_at_desk_scale() {
        for mu2 in 0..=3 {
            for mu1 in 0..=mu2 {
                assert!(redundant_elements(&scroll_generators(mu1, mu2, Q)).is_empty());
            }
        }
    }
}
