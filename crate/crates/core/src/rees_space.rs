//! Explicit generators of the space-curve Rees ideal: the scroll binomials
//! plus one `Ψ` per staircase generator and shift `t`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::generators::{GeneratorSet, Provenance};
use crate::par::{par_map, Execution};
use crate::poly::{BinaryForm, Monomial, MultiPoly, VarSpace};
use crate::ringmaps::SpaceMaps;
use crate::scroll::scroll_generators;
use crate::staircase::{staircase_min_gens, StaircaseGen};

#[derive(Debug, Clone)]
pub struct TriLift {
    pub target: BinaryForm,
    pub tri: (u32, u32, u32),
    pub lift: MultiPoly,
}

/// `X_i -> T0^(μ1-i) T1^i`, `Y_i -> T0^(μ2-i) T1^i`, into `K[T0,T1]`.
pub fn collapse_images(blocks: &Arc<VarSpace>, field: FieldSpec) -> Vec<MultiPoly> {
    let (mu1, mu2) = blocks.block_sizes().expect("block space");
    let bin = VarSpace::binary();
    let t = |n: u32, i: u32| MultiPoly::monomial(&bin, Monomial(vec![n - i, i]), field.one());
    let mut out = vec![MultiPoly::var(&bin, field, 0), MultiPoly::var(&bin, field, 1)];
    out.extend((0..=mu1).map(|i| t(mu1, i)));
    out.extend((0..=mu2).map(|i| t(mu2, i)));
    out
}

/// Spreads weight `w` over `n` block variables of size `mu`: as many
/// `V_mu` as fit, then one partial index, the rest `V_0`.
fn fill_block(e: &mut [u32], base: impl Fn(u32) -> usize, n: u32, mu: u32, w: u32) {
    if mu == 0 {
        e[base(0)] += n;
        return;
    }
    let (full, r) = (w / mu, w % mu);
    e[base(mu)] += full;
    let mut used = full;
    if r > 0 {
        e[base(r)] += 1;
        used += 1;
    }
    e[base(0)] += n - used;
}

/// A `(i,j,k)`-trihomogeneous preimage of `h` under the collapse map,
/// filling the Y-block first, then the X-block, then `T1`.
pub fn tri_lift(h: &BinaryForm, (i, j, k): (u32, u32, u32), blocks: &Arc<VarSpace>) -> Result<TriLift> {
    let (mu1, mu2) = blocks.block_sizes().expect("block space");
    let deg = i + j * mu1 + k * mu2;
    if h.degree() != deg {
        return Err(Error::DegreeMismatch { expected: deg as i64, got: h.degree() as i64 });
    }
    let field = h.field();
    let terms = h.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(v, c)| {
        let v = v as u32;
        let wy = v.min(k * mu2);
        let wx = (v - wy).min(j * mu1);
        let b = v - wy - wx;
        let mut e = vec![0; blocks.nvars()];
        e[0] = i - b;
        e[1] = b;
        fill_block(&mut e, |r| blocks.x(r), j, mu1, wx);
        fill_block(&mut e, |r| blocks.y(r), k, mu2, wy);
        (Monomial(e), c.clone())
    });
    let lift = MultiPoly::from_terms(blocks, field, terms);
    let image = lift.substitute(&collapse_images(blocks, field), &VarSpace::binary())?;
    if BinaryForm::from_poly(&image, deg)? != *h {
        return Err(Error::InternalInconsistency(format!("lift of {h} does not collapse back")));
    }
    if !lift.is_zero() && lift.tridegree()? != (i as i64, j as i64, k as i64) {
        return Err(Error::InternalInconsistency(format!("lift of {h} has the wrong tridegree")));
    }
    Ok(TriLift { target: h.clone(), tri: (i, j, k), lift })
}

#[derive(Debug, Clone)]
pub struct PsiGenerator {
    pub ell: usize,
    pub t: u32,
    pub stair: StaircaseGen,
    pub a_part: MultiPoly,
    pub b_part: MultiPoly,
    pub psi: MultiPoly,
}

/// `T0^t T1^(s-t)`.
fn shift_form(field: FieldSpec, s: u32, t: u32) -> BinaryForm {
    BinaryForm::monomial(field, s, s - t, field.one())
}

pub fn psi_generator(ell: usize, t: u32, maps: &SpaceMaps, stair: &StaircaseGen) -> Result<PsiGenerator> {
    let s = stair.s;
    if t > s {
        return Err(Error::InvalidParameters(format!("shift {t} exceeds {s}")));
    }
    let field = maps.field();
    let (i, j, k) = stair.v;
    let shift = shift_form(field, s, t);
    let a_part = tri_lift(&(&maps.curve.alpha * &shift), (i, j, k + 1), &maps.blocks)?.lift;
    let b_part = tri_lift(&(&maps.curve.beta * &shift), (i, j + 1, k), &maps.blocks)?.lift;
    let psi = &a_part - &b_part;
    let expected = &(maps.g() * &maps.xy_power(j, k)) * &shift.to_poly(&maps.scroll);
    if maps.phi_prime.apply(&psi)? != expected {
        return Err(Error::InternalInconsistency(format!("image of psi^{t}_{:?} is off", stair.v)));
    }
    Ok(PsiGenerator { ell, t, stair: *stair, a_part, b_part, psi })
}

/// All `Ψ^t` in staircase order, `t` ascending.
pub fn psi_family(maps: &SpaceMaps, exec: Execution) -> Result<Vec<PsiGenerator>> {
    let c = &maps.curve;
    let stairs = staircase_min_gens(c.mu1, c.mu2, c.d)?;
    let jobs: Vec<(usize, u32, StaircaseGen)> =
        stairs.iter().enumerate().flat_map(|(ell, st)| (0..=st.s).map(move |t| (ell, t, *st))).collect();
    par_map(exec, &jobs, |(ell, t, st)| psi_generator(*ell, *t, maps, st)).into_iter().collect()
}

pub fn rees_space_generators(maps: &SpaceMaps) -> Result<GeneratorSet> {
    rees_space_generators_with(maps, Execution::default())
}

pub fn rees_space_generators_with(maps: &SpaceMaps, exec: Execution) -> Result<GeneratorSet> {
    let field = maps.field();
    let c = &maps.curve;
    let mut set = GeneratorSet::new(&maps.blocks, field);
    let scroll = scroll_generators(c.mu1, c.mu2, field);
    for g in scroll.pencils {
        set.push(Provenance::Pencil, g);
    }
    for g in scroll.quadrics {
        set.push(Provenance::Quadric, g);
    }
    for p in psi_family(maps, exec)? {
        set.push(Provenance::Psi { ell: p.ell, t: p.t, v: p.stair.v }, p.psi);
    }
    Ok(set)
}
