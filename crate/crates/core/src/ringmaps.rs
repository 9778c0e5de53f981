//! The substitution homomorphisms between the four ambient rings and the
//! membership tests they induce.
//!
//! ```text
//!   K[T,Z] --Γ--> K[T,Xblk,Yblk] --Φ'--> K[T,X,Y] --φ--> K[T,s]
//!      Ω = Φ'∘Γ,   Φ = φ∘Φ',   ψ = φ∘Ω
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::mubasis::{MuData, SpaceCurve, Triple};
use crate::poly::{BinaryForm, Monomial, MultiPoly, VarSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapName {
    Phi,
    PhiPrime,
    SmallPhi,
    Gamma,
    Omega,
    Psi,
}

/// A ring map given by the images of the source variables.
#[derive(Debug, Clone)]
pub struct RingMap {
    pub name: MapName,
    pub source: Arc<VarSpace>,
    pub target: Arc<VarSpace>,
    images: Vec<MultiPoly>,
}

impl RingMap {
    pub fn new(name: MapName, source: &Arc<VarSpace>, target: &Arc<VarSpace>, images: Vec<MultiPoly>) -> Self {
        assert_eq!(images.len(), source.nvars());
        RingMap { name, source: source.clone(), target: target.clone(), images }
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.space() != &self.source {
            return Err(Error::SpaceMismatch(f.space().to_string(), self.source.to_string()));
        }
        f.substitute(&self.images, &self.target)
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }
}

/// `T0^(n-i) T1^i` as a polynomial.
fn t_power(space: &Arc<VarSpace>, field: FieldSpec, n: u32, i: u32) -> MultiPoly {
    let mut e = vec![0; space.nvars()];
    e[0] = n - i;
    e[1] = i;
    MultiPoly::monomial(space, Monomial(e), field.one())
}

fn identity_on_t(target: &Arc<VarSpace>, field: FieldSpec) -> Vec<MultiPoly> {
    vec![MultiPoly::var(target, field, 0), MultiPoly::var(target, field, 1)]
}

/// Maps and data of the space-curve side.
#[derive(Debug, Clone)]
pub struct SpaceMaps {
    pub curve: SpaceCurve,
    pub blocks: Arc<VarSpace>,
    pub scroll: Arc<VarSpace>,
    pub ts: Arc<VarSpace>,
    pub phi: RingMap,
    pub phi_prime: RingMap,
    pub small_phi: RingMap,
    g: MultiPoly,
}

impl SpaceMaps {
    pub fn new(curve: &SpaceCurve) -> Self {
        let field = curve.field;
        let (mu1, mu2) = (curve.mu1, curve.mu2);
        let blocks = VarSpace::blocks(mu1, mu2);
        let scroll = VarSpace::scroll(mu1, mu2);
        let ts = VarSpace::ts(curve.d);
        let x = MultiPoly::var(&scroll, field, scroll.x(0));
        let y = MultiPoly::var(&scroll, field, scroll.y(0));
        let s = MultiPoly::var(&ts, field, ts.s());
        let alpha_s = &curve.alpha.to_poly(&ts) * &s;
        let beta_s = &curve.beta.to_poly(&ts) * &s;

        let mut pp = identity_on_t(&scroll, field);
        let mut ph = identity_on_t(&ts, field);
        for i in 0..=mu1 {
            pp.push(&t_power(&scroll, field, mu1, i) * &x);
            ph.push(&t_power(&ts, field, mu1, i) * &alpha_s);
        }
        for i in 0..=mu2 {
            pp.push(&t_power(&scroll, field, mu2, i) * &y);
            ph.push(&t_power(&ts, field, mu2, i) * &beta_s);
        }
        let mut sp = identity_on_t(&ts, field);
        sp.push(alpha_s);
        sp.push(beta_s);

        let g = &(&curve.alpha.to_poly(&scroll) * &y) - &(&curve.beta.to_poly(&scroll) * &x);
        SpaceMaps {
            curve: curve.clone(),
            phi: RingMap::new(MapName::Phi, &blocks, &ts, ph),
            phi_prime: RingMap::new(MapName::PhiPrime, &blocks, &scroll, pp),
            small_phi: RingMap::new(MapName::SmallPhi, &scroll, &ts, sp),
            blocks,
            scroll,
            ts,
            g,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.curve.field
    }

    /// `g = α·Y - β·X`.
    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    /// Membership in the space-curve Rees ideal: `g` divides `Φ'(F)`.
    pub fn in_i(&self, f: &MultiPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        f.bidegree()?;
        Ok(self.phi_prime.apply(f)?.try_divide(&self.g)?.is_some())
    }

    /// `X^a Y^b` in the scroll ring.
    pub fn xy_power(&self, a: u32, b: u32) -> MultiPoly {
        let mut e = vec![0; self.scroll.nvars()];
        e[self.scroll.x(0)] = a;
        e[self.scroll.y(0)] = b;
        MultiPoly::monomial(&self.scroll, Monomial(e), self.field().one())
    }
}

/// Maps of the plane-curve side, plus the space-side maps of the split.
#[derive(Debug, Clone)]
pub struct PlaneMaps {
    pub mu: MuData,
    pub space: SpaceMaps,
    pub tz: Arc<VarSpace>,
    pub gamma: RingMap,
    pub omega: RingMap,
    pub psi: RingMap,
    p_form: MultiPoly,
    q_form: MultiPoly,
}

/// `Σ t_j Z_j` in `K[T,Z]`.
pub fn linear_form(t: &Triple, tz: &Arc<VarSpace>) -> MultiPoly {
    let field = t[0].field();
    (0..3).fold(MultiPoly::zero(tz, field), |acc, j| &acc + &(&t[j].to_poly(tz) * &MultiPoly::var(tz, field, tz.z(j))))
}

/// `Σ_i c_i V_(offset+i)` for a form's coefficient row.
fn coefficient_row(form: &BinaryForm, space: &Arc<VarSpace>, var: impl Fn(u32) -> usize) -> MultiPoly {
    let field = form.field();
    form.coeffs()
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(space, field), |acc, (i, c)| &acc + &MultiPoly::var(space, field, var(i as u32)).scale(c))
}

impl PlaneMaps {
    pub fn new(mu: &MuData) -> Self {
        let field = mu.field;
        let space = SpaceMaps::new(&mu.space_curve());
        let tz = VarSpace::tz();
        let blocks = space.blocks.clone();
        let scroll = space.scroll.clone();
        let ts = space.ts.clone();
        let x = MultiPoly::var(&scroll, field, scroll.x(0));
        let y = MultiPoly::var(&scroll, field, scroll.y(0));
        let s = MultiPoly::var(&ts, field, ts.s());

        let mut gamma = identity_on_t(&blocks, field);
        let mut omega = identity_on_t(&scroll, field);
        let mut psi = identity_on_t(&ts, field);
        for j in 0..3 {
            gamma.push(
                &coefficient_row(&mu.a[j], &blocks, |i| blocks.x(i))
                    + &coefficient_row(&mu.b[j], &blocks, |i| blocks.y(i)),
            );
            omega.push(&(&mu.a[j].to_poly(&scroll) * &x) + &(&mu.b[j].to_poly(&scroll) * &y));
            psi.push(&mu.f[j].to_poly(&ts) * &s);
        }
        PlaneMaps {
            mu: mu.clone(),
            gamma: RingMap::new(MapName::Gamma, &tz, &blocks, gamma),
            omega: RingMap::new(MapName::Omega, &tz, &scroll, omega),
            psi: RingMap::new(MapName::Psi, &tz, &ts, psi),
            p_form: linear_form(&mu.p, &tz),
            q_form: linear_form(&mu.q, &tz),
            space,
            tz,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.mu.field
    }

    pub fn p_form(&self) -> &MultiPoly {
        &self.p_form
    }

    pub fn q_form(&self) -> &MultiPoly {
        &self.q_form
    }

    /// Membership in the plane-curve Rees ideal: `g` divides `Ω(F)`.
    pub fn in_k(&self, f: &MultiPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        f.bidegree()?;
        Ok(self.omega.apply(f)?.try_divide(self.space.g())?.is_some())
    }

    /// Quotient `Ω(F) / g` when it exists.
    pub fn omega_quotient(&self, f: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.omega.apply(f)?.try_divide(self.space.g())
    }

    /// Membership in `ker Ω`, which is generated by the p-form.
    pub fn in_ker_omega(&self, f: &MultiPoly) -> Result<bool> {
        Ok(f.try_divide(&self.p_form)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mubasis::{generate_instance, ParamCurve};
    use crate::poly::parse_poly;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn conic_maps() -> PlaneMaps {
        let curve = ParamCurve::from_i64(Q, [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        PlaneMaps::new(&MuData::compute(&curve).unwrap())
    }

    #[test]
    fn pencil_in_kernel_of_phi_prime() {
        let curve = generate_instance(7, 1, 2, FieldSpec::Prime(32003), 2).unwrap();
        let maps = SpaceMaps::new(&MuData::compute(&curve).unwrap().space_curve());
        let pencil = parse_poly("T1*X0 - T0*X1", &maps.blocks, maps.field()).unwrap();
        assert!(maps.phi_prime.apply(&pencil).unwrap().is_zero());
        let x0 = parse_poly("X0", &maps.blocks, maps.field()).unwrap();
        assert!(!maps.in_i(&x0).unwrap());
    }

    #[test]
    fn p_and_q_forms() {
        let m = conic_maps();
        assert_eq!(m.p_form().to_string(), "T1*Z0 - T0*Z1");
        assert_eq!(m.q_form().to_string(), "T1*Z1 - T0*Z2");
        assert!(m.omega.apply(m.p_form()).unwrap().is_zero());
        assert!(m.in_k(m.p_form()).unwrap());
        let quot = m.omega_quotient(m.q_form()).unwrap().unwrap();
        assert_eq!(quot, MultiPoly::one(&m.space.scroll, Q).scale(&Q.from_i64(-1)));
        assert!(m.in_ker_omega(m.p_form()).unwrap());
        assert!(!m.in_ker_omega(m.q_form()).unwrap());
        assert!(m.in_ker_omega(&MultiPoly::zero(&m.tz, Q)).unwrap());
        let z0 = MultiPoly::var(&m.tz, Q, m.tz.z(0));
        assert!(!m.in_k(&z0).unwrap());
    }

    #[test]
    fn not_homogeneous_is_rejected() {
        let m = conic_maps();
        let f = parse_poly("Z0 + T0*Z1", &m.tz, Q).unwrap();
        assert!(matches!(m.in_k(&f), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn wrong_space_is_rejected() {
        let m = conic_maps();
        let f = MultiPoly::one(&m.space.blocks, Q);
        assert!(matches!(m.omega.apply(&f), Err(Error::SpaceMismatch(..))));
    }
}
