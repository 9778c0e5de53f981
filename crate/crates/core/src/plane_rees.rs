//! The plane-curve side: the determinantal operators `D_A`, `D_B`, the family
//! `D_A^a D_B^b (q)`, the alternate `A`-lift through the syzygies of `B`, and
//! the congruences between `Γ` of the family and the `Ψ^0` generators.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::generators::{GeneratorSet, Provenance};
use crate::linalg::{solve_multi, Matrix};
use crate::mubasis::{cross, dot, syzygy_pair, MuData, Triple};
use crate::par::{par_map, Execution};
use crate::poly::{BinaryForm, Monomial, MultiPoly, VarSpace};
use crate::rees_space::psi_generator;
use crate::ringmaps::{linear_form, PlaneMaps};
use crate::staircase::{check_parameters, staircase_min_gens, StaircaseGen};

/// `F` together with `F^(ℓ)` such that `F = Σ p_ℓ F^(ℓ)`.
#[derive(Debug, Clone)]
pub struct DOperand {
    pub f: MultiPoly,
    pub parts: [MultiPoly; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionStatus {
    Guaranteed,
    AttemptedOk,
    AttemptedFailed,
    NotGuaranteed,
}

impl fmt::Display for RegionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionStatus::Guaranteed => "guaranteed",
            RegionStatus::AttemptedOk => "attempted-ok",
            RegionStatus::AttemptedFailed => "attempted-failed",
            RegionStatus::NotGuaranteed => "not-guaranteed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionEntry {
    pub a: u32,
    pub b: u32,
    pub bidegree: (i64, i64),
    pub status: RegionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionDiagram {
    pub d: u32,
    pub mu1: u32,
    pub mu2: u32,
    pub entries: Vec<RegionEntry>,
    pub p_marker: (i64, i64),
    pub q_marker: (i64, i64),
    pub warnings: Vec<String>,
}

impl RegionDiagram {
    pub fn mu(&self) -> u32 {
        self.mu1 + self.mu2
    }

    /// Points strictly below the line `i + μ2·j = d - μ1` lie in the region
    /// where the Rees ideal is generated by `p`.
    pub fn below_bottom_edge(&self, (i, j): (i64, i64)) -> bool {
        i + self.mu2 as i64 * j < (self.d - self.mu1) as i64
    }

    pub fn pairs_with(&self, status: RegionStatus) -> Vec<(u32, u32)> {
        self.entries.iter().filter(|e| e.status == status).map(|e| (e.a, e.b)).collect()
    }

    pub fn bidegrees_with(&self, status: RegionStatus) -> Vec<(i64, i64)> {
        self.entries.iter().filter(|e| e.status == status).map(|e| e.bidegree).collect()
    }
}

fn guaranteed(d: i64, mu1: i64, mu2: i64, a: i64, b: i64) -> bool {
    let mu = mu1 + mu2;
    let i = d - mu - a * mu1 - b * mu2;
    if b == 0 {
        i >= mu + mu2 - mu1 - 1
    } else {
        i >= mu - 1
    }
}

/// Lattice of `(a,b)` with `i = d-μ-aμ1-bμ2`: the guaranteed pairs and the
/// remaining ones with `i >= μ`. With `μ1 = 0` only `a = 0` is listed.
pub fn enumerate_region(d: u32, mu1: u32, mu2: u32) -> Result<RegionDiagram> {
    check_parameters(mu1, mu2, d)?;
    if mu2 == 0 {
        return Err(Error::InvalidParameters("plane curves need mu2 >= 1".into()));
    }
    let (di, m1, m2) = (d as i64, mu1 as i64, mu2 as i64);
    let mu = m1 + m2;
    let top = di - mu;
    let mut warnings = Vec::new();
    if mu1 == 0 {
        warnings.push("mu1 = 0: D_A leaves the T-degree unchanged, only the D_B chain is produced".to_string());
    }
    let amax = if mu1 == 0 { 0 } else { top / m1 };
    let bmax = top / m2;
    let mut entries = Vec::new();
    for b in 0..=bmax {
        for a in 0..=amax {
            let i = top - a * m1 - b * m2;
            if i < 0 {
                break;
            }
            let status = if (a, b) == (0, 0) || guaranteed(di, m1, m2, a, b) {
                RegionStatus::Guaranteed
            } else if i >= mu {
                RegionStatus::NotGuaranteed
            } else {
                continue;
            };
            entries.push(RegionEntry { a: a as u32, b: b as u32, bidegree: (i, a + b + 1), status });
        }
    }
    Ok(RegionDiagram { d, mu1, mu2, entries, p_marker: (mu, 1), q_marker: (top, 1), warnings })
}

pub fn region_diagram(mu: &MuData) -> Result<RegionDiagram> {
    enumerate_region(mu.d, mu.mu1, mu.mu2)
}

/// Coefficients `h_k` with `f = Σ h_k·forms[k]`, solved independently for
/// each Z-monomial; `None` when no solution exists.
fn combination(f: &MultiPoly, forms: &[BinaryForm]) -> Result<Option<Vec<MultiPoly>>> {
    let tz = f.space();
    let field = f.field();
    let (i, _) = f.bidegree()?;
    let i = u32::try_from(i).map_err(|_| Error::InvalidParameters("negative T-degree".into()))?;
    let widths: Vec<u32> = forms.iter().map(|g| (i + 1).saturating_sub(g.degree())).collect();
    let offsets: Vec<usize> = widths
        .iter()
        .scan(0usize, |acc, &w| {
            let o = *acc;
            *acc += w as usize;
            Some(o)
        })
        .collect();
    let ncols: usize = widths.iter().map(|&w| w as usize).sum();
    if ncols == 0 {
        return Ok(None);
    }
    let mut mat = Matrix::zeros(field, i as usize + 1, ncols);
    for (k, g) in forms.iter().enumerate() {
        for e in 0..widths[k] as usize {
            for (r, c) in g.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    mat.set(e + r, offsets[k] + e, c.clone());
                }
            }
        }
    }
    let groups = f.split_by(2..5);
    let rhs = groups
        .values()
        .map(|t| BinaryForm::from_poly(t, i).map(|b| b.coeffs().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let sols = solve_multi(&mat, &rhs)?;
    let mut parts: Vec<Vec<(Monomial, _)>> = vec![Vec::new(); forms.len()];
    for (zexp, sol) in groups.keys().zip(sols) {
        let Some(x) = sol else { return Ok(None) };
        for (k, g) in forms.iter().enumerate() {
            let hdeg = i + 1 - g.degree().min(i + 1);
            for e in 0..widths[k] {
                let c = &x[offsets[k] + e as usize];
                if !c.is_zero() {
                    let m = Monomial(vec![hdeg - 1 - e, e, zexp[0], zexp[1], zexp[2]]);
                    parts[k].push((m, c.clone()));
                }
            }
        }
    }
    Ok(Some(parts.into_iter().map(|t| MultiPoly::from_terms(tz, field, t)).collect()))
}

/// `Z × v` with `v` a triple of binary forms, as polynomials in `K[T,Z]`.
fn z_cross(v: &Triple, tz: &Arc<VarSpace>) -> [MultiPoly; 3] {
    let field = v[0].field();
    let z = |j| MultiPoly::var(tz, field, tz.z(j));
    let t = |j: usize| v[j].to_poly(tz);
    [&(&z(1) * &t(2)) - &(&z(2) * &t(1)), &(&z(2) * &t(0)) - &(&z(0) * &t(2)), &(&z(0) * &t(1)) - &(&z(1) * &t(0))]
}

#[derive(Debug, Clone)]
pub struct PlaneRees {
    pub maps: PlaneMaps,
    za: [MultiPoly; 3],
    zb: [MultiPoly; 3],
    /// `b_k·A` and `b_k·Z` for the syzygy pair `(b_1, b_2)` of `B`.
    pa: [BinaryForm; 2],
    rho: [MultiPoly; 2],
}

impl PlaneRees {
    pub fn new(mu: &MuData) -> Result<Self> {
        let maps = PlaneMaps::new(mu);
        let tz = maps.tz.clone();
        let ((b1, _), (b2, _)) = syzygy_pair(&mu.b, mu.mu2)?;
        Ok(PlaneRees {
            za: z_cross(&mu.a, &tz),
            zb: z_cross(&mu.b, &tz),
            pa: [dot(&b1, &mu.a), dot(&b2, &mu.a)],
            rho: [linear_form(&b1, &tz), linear_form(&b2, &tz)],
            maps,
        })
    }

    pub fn mu(&self) -> &MuData {
        &self.maps.mu
    }

    pub fn field(&self) -> FieldSpec {
        self.maps.field()
    }

    pub fn tz(&self) -> &Arc<VarSpace> {
        &self.maps.tz
    }

    /// `det(Z; A; B)` expanded along the first row.
    pub fn p_determinant(&self) -> MultiPoly {
        let mu = self.mu();
        let ab = cross(&mu.a, &mu.b);
        linear_form(&ab, self.tz())
    }

    pub fn express_in_p(&self, f: &MultiPoly) -> Result<DOperand> {
        let (i, j) = f.bidegree()?;
        let parts = combination(f, &self.mu().p)?.ok_or(Error::NotInPIdeal(i, j))?;
        let recon = (0..3).fold(MultiPoly::zero(self.tz(), self.field()), |acc, l| {
            &acc + &(&self.mu().p[l].to_poly(self.tz()) * &parts[l])
        });
        if recon != *f {
            return Err(Error::InternalInconsistency("p-decomposition does not reproduce F".into()));
        }
        let [p0, p1, p2]: [MultiPoly; 3] = parts.try_into().expect("three parts");
        Ok(DOperand { f: f.clone(), parts: [p0, p1, p2] })
    }

    fn det_row(&self, f: &MultiPoly, row: &[MultiPoly; 3]) -> Result<MultiPoly> {
        let op = self.express_in_p(f)?;
        Ok(op.parts.iter().zip(row).fold(MultiPoly::zero(self.tz(), self.field()), |acc, (x, y)| &acc + &(x * y)))
    }

    /// `det(F^(ℓ); Z; A)`, bidegree `(i - μ2, j + 1)`.
    pub fn d_b(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.det_row(f, &self.za)
    }

    /// `det(F^(ℓ); Z; B)`, bidegree `(i - μ1, j + 1)`.
    pub fn d_a(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.det_row(f, &self.zb)
    }

    /// `D_A^a D_B^b (F)`, applying `D_A` first so that every intermediate
    /// stays in the range where the p-decomposition exists.
    pub fn d_composite(&self, f: &MultiPoly, a: u32, b: u32) -> Result<MultiPoly> {
        let mut g = f.clone();
        for _ in 0..a {
            g = self.d_a(&g)?;
        }
        for _ in 0..b {
            g = self.d_b(&g)?;
        }
        Ok(g)
    }

    /// `F^A = h1 ρ1 + h2 ρ2` where `F = h1 (b1·A) + h2 (b2·A)`.
    pub fn syzygy_a_lift(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let (i, j) = f.bidegree()?;
        let h = combination(f, &self.pa)?.ok_or(Error::NotInPAIdeal(i, j))?;
        Ok(&(&h[0] * &self.rho[0]) + &(&h[1] * &self.rho[1]))
    }

    /// Expected `Ω`-image `(-1)^(b+1) X^a Y^b g` of a family member.
    pub fn family_image(&self, a: u32, b: u32) -> MultiPoly {
        let s = &self.maps.space;
        let img = s.g() * &s.xy_power(a, b);
        if b.is_multiple_of(2) {
            -img
        } else {
            img
        }
    }

    pub fn dd_family(&self) -> Result<(GeneratorSet, RegionDiagram)> {
        self.dd_family_with(Execution::default())
    }

    /// Members for every listed `(a,b)`: a `D_A` chain from `q`, then a `D_B`
    /// chain from each of its links. Pairs outside the guaranteed range are
    /// attempted and recorded.
    pub fn dd_family_with(&self, exec: Execution) -> Result<(GeneratorSet, RegionDiagram)> {
        let mut diagram = region_diagram(self.mu())?;
        let amax = diagram.entries.iter().map(|e| e.a).max().unwrap_or(0);
        let mut a_chain = vec![Some(self.maps.q_form().clone())];
        for _ in 0..amax {
            let next = a_chain.last().cloned().flatten().and_then(|g| self.d_a(&g).ok());
            a_chain.push(next);
        }
        let cols: Vec<(u32, u32)> = (0..=amax)
            .map(|a| (a, diagram.entries.iter().filter(|e| e.a == a).map(|e| e.b).max().unwrap_or(0)))
            .collect();
        let chains = par_map(exec, &cols, |&(a, bmax)| {
            let mut out = vec![a_chain[a as usize].clone()];
            for _ in 0..bmax {
                let next = out.last().cloned().flatten().and_then(|g| self.d_b(&g).ok());
                out.push(next);
            }
            out
        });
        let mut set = GeneratorSet::new(self.tz(), self.field());
        for e in diagram.entries.iter_mut() {
            let member = chains[e.a as usize][e.b as usize].as_ref().filter(|g| !g.is_zero());
            match (member, e.status) {
                (Some(g), RegionStatus::Guaranteed) => {
                    set.push(Provenance::DFamily { a: e.a, b: e.b }, g.clone());
                }
                (None, RegionStatus::Guaranteed) => {
                    diagram.warnings.push(format!("guaranteed member ({},{}) could not be formed", e.a, e.b));
                    e.status = RegionStatus::AttemptedFailed;
                }
                (Some(_), _) => e.status = RegionStatus::AttemptedOk,
                (None, _) => e.status = RegionStatus::AttemptedFailed,
            }
        }
        Ok((set, diagram))
    }

    /// Checks `Φ'(Γ(member)) = (-1)^(b+1) Φ'(Ψ^0)` and the `Ω`-image of
    /// every family member.
    pub fn lift_and_check(&self, family: &GeneratorSet) -> Result<LiftReport> {
        self.lift_and_check_with(family, Execution::default())
    }

    pub fn lift_and_check_with(&self, family: &GeneratorSet, exec: Execution) -> Result<LiftReport> {
        let mu = self.mu();
        let space = &self.maps.space;
        let stairs = staircase_min_gens(mu.mu1, mu.mu2, mu.d)?;
        let members: Vec<(u32, u32, &MultiPoly)> = family
            .items
            .iter()
            .filter_map(|g| match g.provenance {
                Provenance::DFamily { a, b } => Some((a, b, &g.poly)),
                _ => None,
            })
            .collect();
        let rows = par_map(exec, &members, |&(a, b, f)| -> Result<LiftRow> {
            let i = (mu.d - mu.mu) as i64 - (a * mu.mu1) as i64 - (b * mu.mu2) as i64;
            let v =
                (u32::try_from(i).map_err(|_| Error::InvalidParameters(format!("({a},{b}) outside region")))?, a, b);
            let stair = StaircaseGen { v, s: 0 };
            let ell = stairs
                .iter()
                .position(|s| *s == stair)
                .ok_or_else(|| Error::InternalInconsistency(format!("{v:?} is not a staircase generator")))?;
            let psi = psi_generator(ell, 0, space, &stair)?;
            let lhs = space.phi_prime.apply(&self.maps.gamma.apply(f)?)?;
            let rhs = space.phi_prime.apply(&psi.psi)?;
            let rhs = if b % 2 == 0 { -rhs } else { rhs };
            let image = self.maps.omega.apply(f)? == self.family_image(a, b);
            Ok(LiftRow { a, b, congruence: lhs == rhs, image, in_k: self.maps.in_k(f)? })
        });
        Ok(LiftReport { rows: rows.into_iter().collect::<Result<_>>()? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftRow {
    pub a: u32,
    pub b: u32,
    pub congruence: bool,
    pub image: bool,
    pub in_k: bool,
}

impl LiftRow {
    pub fn passed(&self) -> bool {
        self.congruence && self.image && self.in_k
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub rows: Vec<LiftRow>,
}

impl LiftReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(LiftRow::passed)
    }

    pub fn ensure(&self) -> Result<()> {
        match self.rows.iter().find(|r| !r.passed()) {
            Some(r) => Err(Error::CongruenceFailed(r.a, r.b)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for LiftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let mark = if r.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "(a,b)=({},{}) congruence={} image={} in_K={} {mark}",
                r.a, r.b, r.congruence, r.image, r.in_k
            )?;
        }
        Ok(())
    }
}
