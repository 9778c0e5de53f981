//! μ-basis `(p, q)` of a parametrization, the split `(A, B)` of `p`, and the
//! forms `α, β` with `α·A + β·B = f`.
//!
//! Normalization: `p` has leading coefficient 1 in its first nonzero
//! component, `q` is scaled so that `p × q = f`, `A` is scaled like `p`, and
//! `B` so that `A × B = p`. Then `α = -(q·B)` and `β = q·A` hold exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Coefficient, FieldSpec};
use crate::linalg::{nullspace, Matrix, SparseEchelon, SparseVec};
use crate::poly::{gcd_binary_forms, BinaryForm};

pub type Triple = [BinaryForm; 3];

pub fn dot(a: &Triple, b: &Triple) -> BinaryForm {
    let t = [&a[0] * &b[0], &a[1] * &b[1], &a[2] * &b[2]];
    &(&t[0] + &t[1]) + &t[2]
}

/// Cross product; the signed 2×2 minors of the matrix with rows `a, b`.
pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

pub fn scale_triple(t: &Triple, c: &Coefficient) -> Triple {
    [t[0].scale(c), t[1].scale(c), t[2].scale(c)]
}

fn triple_degree(t: &Triple) -> u32 {
    t[0].degree()
}

fn triple_is_zero(t: &Triple) -> bool {
    t.iter().all(BinaryForm::is_zero)
}

/// A rational plane curve parametrization by three forms of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    field: FieldSpec,
    f: Triple,
}

impl ParamCurve {
    pub fn new(f: Triple) -> Result<Self> {
        let d = f[0].degree();
        for g in &f[1..] {
            if g.degree() != d {
                return Err(Error::DegreeMismatch { expected: d as i64, got: g.degree() as i64 });
            }
        }
        Ok(ParamCurve { field: f[0].field(), f })
    }

    pub fn from_i64(field: FieldSpec, f: [&[i64]; 3]) -> Result<Self> {
        ParamCurve::new(f.map(|c| BinaryForm::from_i64(field, c)))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.f[0].degree()
    }

    pub fn forms(&self) -> &Triple {
        &self.f
    }
}

/// Checks `d > 1`, linear independence and coprimality of the input forms.
pub fn validate(curve: &ParamCurve) -> Result<()> {
    let d = curve.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let rows: Vec<Vec<Coefficient>> = curve.f.iter().map(|g| g.coeffs().to_vec()).collect();
    if Matrix::from_rows(curve.field, rows)?.rank() < 3 {
        return Err(Error::LinearlyDependent);
    }
    let g = gcd_binary_forms(&gcd_binary_forms(&curve.f[0], &curve.f[1])?, &curve.f[2])?;
    if g.degree() > 0 {
        return Err(Error::CommonFactor(g.to_string()));
    }
    Ok(())
}

/// Basis of `{h in K[T]_m^3 : h·forms = 0}` from the echelon nullspace.
/// Unknowns are ordered component by component, each from `T0^m` to `T1^m`.
pub fn syzygies_at(forms: &Triple, m: u32) -> Vec<Triple> {
    let field = forms[0].field();
    let d = triple_degree(forms) as usize;
    let m = m as usize;
    let mut mat = Matrix::zeros(field, m + d + 1, 3 * (m + 1));
    for (c, form) in forms.iter().enumerate() {
        for e in 0..=m {
            for (k, coef) in form.coeffs().iter().enumerate() {
                if !coef.is_zero() {
                    mat.set(e + k, c * (m + 1) + e, coef.clone());
                }
            }
        }
    }
    nullspace(&mat)
        .into_iter()
        .map(|v| {
            let part = |c: usize| BinaryForm::new(field, v[c * (m + 1)..(c + 1) * (m + 1)].to_vec());
            [part(0), part(1), part(2)]
        })
        .collect()
}

fn triple_vec(t: &Triple) -> SparseVec {
    t.iter()
        .flat_map(|g| g.coeffs().iter())
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Leading coefficient of the first nonzero component set to 1.
fn normalize_leading(t: &Triple) -> Triple {
    let lc = t.iter().find_map(BinaryForm::leading_coeff).expect("nonzero syzygy").inv().expect("nonzero");
    scale_triple(t, &lc)
}

/// The two generators of the syzygy module of `forms`, found by stepping up
/// the degree. The second is the first echelon vector at its degree that is
/// not a multiple of the first. `bound` caps the search degree.
pub fn syzygy_pair(forms: &Triple, bound: u32) -> Result<((Triple, u32), (Triple, u32))> {
    let field = forms[0].field();
    let mut first = None;
    for m in 0..=bound {
        if let Some(v) = syzygies_at(forms, m).into_iter().next() {
            first = Some((normalize_leading(&v), m));
            break;
        }
    }
    let (p, mu) = first.ok_or_else(|| Error::InternalInconsistency("no syzygy found".into()))?;
    for m in mu..=bound {
        let mut span = SparseEchelon::new(field);
        for e in 0..=(m - mu) {
            span.insert(triple_vec(&p.clone().map(|g| g.shift(m - mu - e, e))));
        }
        let candidates = syzygies_at(forms, m);
        if candidates.len() <= span.rank() {
            continue;
        }
        if let Some(q) = candidates.into_iter().find(|v| !span.contains(triple_vec(v))) {
            return Ok(((p, mu), (q, m)));
        }
    }
    Err(Error::InternalInconsistency(format!("no second syzygy up to degree {bound}")))
}

/// Scalar `c` with `lhs = c * rhs`, when it exists.
fn proportionality(lhs: &Triple, rhs: &Triple) -> Option<Coefficient> {
    let (k, r) =
        rhs.iter().enumerate().find_map(|(k, g)| g.coeffs().iter().position(|c| !c.is_zero()).map(|i| (k, i)))?;
    let c = lhs[k].coeff(r as u32).checked_div(rhs[k].coeff(r as u32)).ok()?;
    (scale_triple(rhs, &c) == *lhs).then_some(c)
}

/// μ-basis `(p, q, μ)` of the curve, normalized so that `p × q = f`.
pub fn syzygy_basis(curve: &ParamCurve) -> Result<(Triple, Triple, u32)> {
    let ((p, mu), (q, _)) = syzygy_pair(&curve.f, curve.degree())?;
    let c = proportionality(&cross(&p, &q), &curve.f)
        .ok_or_else(|| Error::InternalInconsistency("minors of (p;q) are not proportional to f".into()))?;
    let q = scale_triple(&q, &c.inv()?);
    Ok((p, q, mu))
}

/// Split μ-basis `(A, B, μ1, μ2)` of `p`, normalized so that `A × B = p`.
pub fn mu_split(p: &Triple) -> Result<(Triple, Triple, u32, u32)> {
    let g = gcd_binary_forms(&gcd_binary_forms(&p[0], &p[1])?, &p[2])?;
    if g.degree() > 0 {
        return Err(Error::CommonFactorInP(g.to_string()));
    }
    let ((a, mu1), (b, mu2)) = syzygy_pair(p, triple_degree(p))?;
    let c = proportionality(&cross(&a, &b), p)
        .ok_or_else(|| Error::InternalInconsistency("minors of (A;B) are not proportional to p".into()))?;
    Ok((a, scale_triple(&b, &c.inv()?), mu1, mu2))
}

/// `α = -(q·B)`, `β = q·A`, checked against `α·A + β·B = f`.
pub fn alpha_beta(f: &Triple, q: &Triple, a: &Triple, b: &Triple) -> Result<(BinaryForm, BinaryForm)> {
    let alpha = -&dot(q, b);
    let beta = dot(q, a);
    let recon: Vec<BinaryForm> = (0..3).map(|k| &(&alpha * &a[k]) + &(&beta * &b[k])).collect();
    if recon.iter().zip(f).any(|(x, y)| x != y) {
        return Err(Error::DecompositionMismatch);
    }
    Ok((alpha, beta))
}

/// Complete syzygy data of a plane curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuData {
    pub field: FieldSpec,
    pub d: u32,
    pub f: Triple,
    pub p: Triple,
    pub q: Triple,
    pub mu: u32,
    pub a: Triple,
    pub b: Triple,
    pub mu1: u32,
    pub mu2: u32,
    pub alpha: BinaryForm,
    pub beta: BinaryForm,
}

impl MuData {
    pub fn compute(curve: &ParamCurve) -> Result<MuData> {
        validate(curve)?;
        let (p, q, mu) = syzygy_basis(curve)?;
        let (a, b, mu1, mu2) = mu_split(&p)?;
        let (alpha, beta) = alpha_beta(&curve.f, &q, &a, &b)?;
        Ok(MuData { field: curve.field, d: curve.degree(), f: curve.f.clone(), p, q, mu, a, b, mu1, mu2, alpha, beta })
    }

    pub fn space_curve(&self) -> SpaceCurve {
        SpaceCurve {
            field: self.field,
            d: self.d,
            mu1: self.mu1,
            mu2: self.mu2,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }

    /// Names of violated invariants; empty when all hold.
    pub fn invariant_failures(&self) -> Vec<&'static str> {
        let mut bad = Vec::new();
        let zero = |t: &BinaryForm| t.is_zero();
        if !zero(&dot(&self.p, &self.f)) || !zero(&dot(&self.q, &self.f)) {
            bad.push("syzygy");
        }
        if !zero(&dot(&self.a, &self.p)) || !zero(&dot(&self.b, &self.p)) {
            bad.push("split syzygy");
        }
        if cross(&self.p, &self.q) != self.f {
            bad.push("minors of (p;q)");
        }
        if cross(&self.a, &self.b) != self.p {
            bad.push("minors of (A;B)");
        }
        let recon: Vec<BinaryForm> = (0..3).map(|k| &(&self.alpha * &self.a[k]) + &(&self.beta * &self.b[k])).collect();
        if recon.iter().zip(&self.f).any(|(x, y)| x != y) {
            bad.push("decomposition");
        }
        if self.alpha != -&dot(&self.q, &self.b) || self.beta != dot(&self.q, &self.a) {
            bad.push("alpha/beta formula");
        }
        match gcd_binary_forms(&self.alpha, &self.beta) {
            Ok(g) if g.degree() == 0 => {}
            _ => bad.push("gcd(alpha, beta)"),
        }
        if self.mu1 + self.mu2 != self.mu || self.mu1 > self.mu2 || 2 * self.mu > self.d {
            bad.push("degrees");
        }
        if self.alpha.degree() != self.d - self.mu1 || self.beta.degree() != self.d - self.mu2 {
            bad.push("alpha/beta degrees");
        }
        if (0..self.mu).any(|m| !syzygies_at(&self.f, m).is_empty()) {
            bad.push("syzygy below mu");
        }
        bad
    }
}

/// Data of the space curve on the scroll: `α, β` and the block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceCurve {
    pub field: FieldSpec,
    pub d: u32,
    pub mu1: u32,
    pub mu2: u32,
    pub alpha: BinaryForm,
    pub beta: BinaryForm,
}

impl SpaceCurve {
    pub fn new(d: u32, mu1: u32, mu2: u32, alpha: BinaryForm, beta: BinaryForm) -> Result<Self> {
        if mu1 > mu2 || 2 * (mu1 + mu2) > d {
            return Err(Error::InvalidParameters(format!(
                "need mu1 <= mu2 and mu1 + mu2 <= d/2, got ({mu1}, {mu2}, {d})"
            )));
        }
        if alpha.degree() + mu1 != d {
            return Err(Error::DegreeMismatch { expected: (d - mu1) as i64, got: alpha.degree() as i64 });
        }
        if beta.degree() + mu2 != d {
            return Err(Error::DegreeMismatch { expected: (d - mu2) as i64, got: beta.degree() as i64 });
        }
        let g = gcd_binary_forms(&alpha, &beta)?;
        if g.degree() > 0 {
            return Err(Error::CommonFactor(g.to_string()));
        }
        Ok(SpaceCurve { field: alpha.field(), d, mu1, mu2, alpha, beta })
    }

    pub fn mu(&self) -> u32 {
        self.mu1 + self.mu2
    }
}

fn random_form(field: FieldSpec, degree: u32, rng: &mut ChaCha8Rng) -> BinaryForm {
    BinaryForm::new(field, (0..=degree).map(|_| field.random(rng)).collect())
}

fn random_triple(field: FieldSpec, degree: u32, rng: &mut ChaCha8Rng) -> Triple {
    [random_form(field, degree, rng), random_form(field, degree, rng), random_form(field, degree, rng)]
}

pub const GENERATION_ATTEMPTS: u32 = 100;

/// Random curve `f = α·A + β·B` whose recomputed μ-basis has the requested
/// `(μ1, μ2)`. When `2μ = d` the pencil of degree-μ syzygies makes the
/// echelon pick generic, so the top `T1` coefficients of `A0, B0` are zeroed
/// to steer the pick onto `A × B`.
pub fn generate_instance(d: u32, mu1: u32, mu2: u32, field: FieldSpec, seed: u64) -> Result<ParamCurve> {
    if mu1 > mu2 || 2 * (mu1 + mu2) > d || d < 2 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= mu1 <= mu2, mu1 + mu2 <= d/2 and d >= 2, got ({mu1}, {mu2}, {d})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = mu1 + mu2;
    for _ in 0..GENERATION_ATTEMPTS {
        let mut a = random_triple(field, mu1, &mut rng);
        let mut b = random_triple(field, mu2, &mut rng);
        if 2 * mu == d {
            a[0] = BinaryForm::new(field, {
                let mut c = a[0].coeffs().to_vec();
                c[mu1 as usize] = field.zero();
                c
            });
            b[0] = BinaryForm::new(field, {
                let mut c = b[0].coeffs().to_vec();
                c[mu2 as usize] = field.zero();
                c
            });
        }
        let alpha = random_form(field, d - mu1, &mut rng);
        let beta = random_form(field, d - mu2, &mut rng);
        if alpha.is_zero() || beta.is_zero() || triple_is_zero(&a) || triple_is_zero(&b) {
            continue;
        }
        let f: Triple = std::array::from_fn(|k| &(&alpha * &a[k]) + &(&beta * &b[k]));
        let curve = ParamCurve::new(f)?;
        match MuData::compute(&curve) {
            Ok(md) if md.mu == mu && md.mu1 == mu1 && md.mu2 == mu2 => {
                if gcd_binary_forms(&md.alpha, &md.beta)?.degree() == 0 {
                    return Ok(curve);
                }
            }
            _ => continue,
        }
    }
    Err(Error::GenerationFailed { d, mu1, mu2, attempts: GENERATION_ATTEMPTS })
}
