//! Brute-force linear algebra on single bidegrees: kernels of the ring maps,
//! dimensions of ideals, and minimality certificates for generator lists.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::generators::GeneratorSet;
use crate::linalg::{nullspace, Matrix, SparseEchelon, SparseVec};
use crate::par::{par_map, Execution};
use crate::poly::{Monomial, MultiPoly, VarSpace};
use crate::ringmaps::{PlaneMaps, RingMap};

/// Nonzero entries the sparse echelon form may hold in one certificate step.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone)]
pub struct BidegreeSlice {
    pub space: Arc<VarSpace>,
    pub bidegree: (i64, i64),
    /// Sorted by grevlex, largest last.
    pub basis: Vec<Monomial>,
}

/// Multisets of size `j` over `vars`, as exponent vectors of length `n`.
fn multisets(n: usize, vars: &[usize], j: u32) -> Vec<Vec<u32>> {
    fn rec(vars: &[usize], j: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match vars.split_first() {
            None => {
                if j == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&v, rest)) => {
                for e in 0..=j {
                    cur[v] = e;
                    rec(rest, j - e, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, j, &mut vec![0; n], &mut out);
    out
}

impl BidegreeSlice {
    /// Every variable other than `T0, T1` has second grade 1, so a monomial is
    /// a choice of `j` such variables plus a `T`-monomial filling the first grade.
    pub fn new(space: &Arc<VarSpace>, (i, j): (i64, i64)) -> Self {
        let n = space.nvars();
        let mut basis = Vec::new();
        if j >= 0 {
            let others: Vec<usize> = (2..n).collect();
            for mut e in multisets(n, &others, j as u32) {
                let used: i64 = others.iter().map(|&v| space.bigrade(v).0 * e[v] as i64).sum();
                let t = i - used;
                if t < 0 {
                    continue;
                }
                for k in 0..=t as u32 {
                    e[0] = t as u32 - k;
                    e[1] = k;
                    basis.push(Monomial(e.clone()));
                }
            }
        }
        basis.sort();
        BidegreeSlice { space: space.clone(), bidegree: (i, j), basis }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Random linear combination of the whole basis.
    pub fn random_element<R: Rng + ?Sized>(&self, field: FieldSpec, rng: &mut R) -> MultiPoly {
        let terms = self.basis.iter().map(|m| (m.clone(), field.random(rng)));
        MultiPoly::from_terms(&self.space, field, terms.collect::<Vec<_>>())
    }
}

/// Basis of the kernel of `map` restricted to the slice.
pub fn kernel_at(map: &RingMap, slice: &BidegreeSlice) -> Result<Vec<MultiPoly>> {
    if slice.space != map.source {
        return Err(Error::SpaceMismatch(slice.space.to_string(), map.source.to_string()));
    }
    if slice.is_empty() {
        return Ok(Vec::new());
    }
    let field = map.images()[0].field();
    let images = slice
        .basis
        .iter()
        .map(|m| map.apply(&MultiPoly::monomial(&slice.space, m.clone(), field.one())))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = Matrix::zeros(field, rows.len(), slice.len());
    for (c, img) in images.iter().enumerate() {
        for (m, x) in img.terms() {
            mat.set(rows[m], c, x.clone());
        }
    }
    Ok(nullspace(&mat)
        .into_iter()
        .map(|v| {
            let terms = slice.basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero());
            MultiPoly::from_terms(&slice.space, field, terms)
        })
        .collect())
}

/// Assigns column indices to monomials on first sight.
#[derive(Default)]
struct Interner(HashMap<Monomial, usize>);

impl Interner {
    fn vector(&mut self, f: &MultiPoly) -> SparseVec {
        f.terms()
            .map(|(m, c)| {
                let next = self.0.len();
                (*self.0.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect()
    }
}

/// All `m·g` landing in `target`, for `g` of bidegree `deg`.
fn multiples<'a>(g: &'a MultiPoly, deg: (i64, i64), target: (i64, i64)) -> impl Iterator<Item = MultiPoly> + 'a {
    let co = BidegreeSlice::new(g.space(), (target.0 - deg.0, target.1 - deg.1));
    let one = g.field().one();
    co.basis.into_iter().map(move |m| g.mul_term(&m, &one))
}

fn below(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 <= b.0 && a.1 <= b.1 && a != b
}

fn check_budget(span: &SparseEchelon, budget: usize) -> Result<()> {
    if span.entries() > budget {
        return Err(Error::BudgetExceeded { needed: span.entries(), budget });
    }
    Ok(())
}

/// Dimension of the degree-`slice` part of the ideal generated by `gens`.
pub fn ideal_dim_at(gens: &[MultiPoly], slice: &BidegreeSlice) -> Result<usize> {
    let Some(first) = gens.first() else { return Ok(0) };
    let mut span = SparseEchelon::new(first.field());
    let mut cols = Interner::default();
    for g in gens {
        let deg = g.bidegree()?;
        if deg.0 <= slice.bidegree.0 && deg.1 <= slice.bidegree.1 {
            for h in multiples(g, deg, slice.bidegree) {
                span.insert(cols.vector(&h));
            }
        }
    }
    Ok(span.rank())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    /// One flag per input generator, in input order.
    pub minimal: Vec<bool>,
    pub max_entries: usize,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.minimal.iter().all(|&b| b)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.minimal.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i).collect()
    }
}

/// Groups generator indices by bidegree.
fn by_bidegree(polys: &[&MultiPoly]) -> Result<BTreeMap<(i64, i64), Vec<usize>>> {
    let mut groups: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (k, g) in polys.iter().enumerate() {
        groups.entry(g.bidegree()?).or_default().push(k);
    }
    Ok(groups)
}

/// Generators in `group` are certified when they stay independent modulo
/// `lower`. On a rank drop each one is retested against the others.
fn certify_group(
    lower: &SparseEchelon,
    cols: &mut Interner,
    group: &[&MultiPoly],
    budget: usize,
) -> Result<(Vec<bool>, usize)> {
    let mut all = lower.clone();
    let mut independent = true;
    for g in group {
        independent &= all.insert(cols.vector(g));
        check_budget(&all, budget)?;
    }
    if independent {
        return Ok((vec![true; group.len()], all.entries()));
    }
    let mut flags = Vec::with_capacity(group.len());
    for (k, g) in group.iter().enumerate() {
        let mut others = lower.clone();
        for (l, h) in group.iter().enumerate() {
            if l != k {
                others.insert(cols.vector(h));
            }
        }
        check_budget(&others, budget)?;
        flags.push(!others.contains(cols.vector(g)));
    }
    Ok((flags, all.entries()))
}

/// For each bidegree present, the generators there must be independent
/// modulo all monomial multiples of generators of strictly lower bidegree.
pub fn minimality_certificate(gens: &GeneratorSet, budget: usize) -> Result<MinimalityReport> {
    minimality_certificate_with(gens, budget, Execution::default())
}

pub fn minimality_certificate_with(gens: &GeneratorSet, budget: usize, exec: Execution) -> Result<MinimalityReport> {
    let polys: Vec<&MultiPoly> = gens.polys().collect();
    let groups: Vec<((i64, i64), Vec<usize>)> = by_bidegree(&polys)?.into_iter().collect();
    let results = par_map(exec, &groups, |(deg, idx)| -> Result<(Vec<bool>, usize)> {
        let mut lower = SparseEchelon::new(gens.field);
        let mut cols = Interner::default();
        for g in &polys {
            let gd = g.bidegree()?;
            if below(gd, *deg) {
                for h in multiples(g, gd, *deg) {
                    lower.insert(cols.vector(&h));
                }
                check_budget(&lower, budget)?;
            }
        }
        let group: Vec<&MultiPoly> = idx.iter().map(|&k| polys[k]).collect();
        certify_group(&lower, &mut cols, &group, budget)
    });
    let mut minimal = vec![false; polys.len()];
    let mut max_entries = 0;
    for ((_, idx), res) in groups.iter().zip(results) {
        let (flags, entries) = res?;
        max_entries = max_entries.max(entries);
        for (&k, f) in idx.iter().zip(flags) {
            minimal[k] = f;
        }
    }
    Ok(MinimalityReport { minimal, max_entries })
}

/// The degree-`(i,j)` elements of the Rees ideal that come from lower
/// degrees: `T·K_(i-1,j) + Z·K_(i,j-1)`.
fn decomposables(maps: &PlaneMaps, (i, j): (i64, i64), span: &mut SparseEchelon, cols: &mut Interner) -> Result<()> {
    let tz = &maps.tz;
    let field = maps.field();
    let one = field.one();
    let mut add = |from: (i64, i64), vars: &[usize]| -> Result<()> {
        if from.0 < 0 || from.1 < 1 {
            return Ok(());
        }
        for k in kernel_at(&maps.psi, &BidegreeSlice::new(tz, from))? {
            for &v in vars {
                span.insert(cols.vector(&k.mul_term(&Monomial::var(tz.nvars(), v, 1), &one)));
            }
        }
        Ok(())
    };
    add((i - 1, j), &[0, 1])?;
    add((i, j - 1), &[tz.z(0), tz.z(1), tz.z(2)])
}

/// Members at each bidegree must be independent modulo the decomposable
/// part of the Rees ideal there, so they belong to some minimal system.
pub fn plane_minimality_certificate(
    maps: &PlaneMaps,
    members: &[MultiPoly],
    budget: usize,
) -> Result<MinimalityReport> {
    let polys: Vec<&MultiPoly> = members.iter().collect();
    let groups: Vec<((i64, i64), Vec<usize>)> = by_bidegree(&polys)?.into_iter().collect();
    let results = par_map(Execution::default(), &groups, |(deg, idx)| -> Result<(Vec<bool>, usize)> {
        let mut lower = SparseEchelon::new(maps.field());
        let mut cols = Interner::default();
        decomposables(maps, *deg, &mut lower, &mut cols)?;
        check_budget(&lower, budget)?;
        let group: Vec<&MultiPoly> = idx.iter().map(|&k| polys[k]).collect();
        certify_group(&lower, &mut cols, &group, budget)
    });
    let mut minimal = vec![false; polys.len()];
    let mut max_entries = 0;
    for ((_, idx), res) in groups.iter().zip(results) {
        let (flags, entries) = res?;
        max_entries = max_entries.max(entries);
        for (&k, f) in idx.iter().zip(flags) {
            minimal[k] = f;
        }
    }
    Ok(MinimalityReport { minimal, max_entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BelowBottom {
    pub bidegree: (i64, i64),
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub all_divisible: bool,
}

impl BelowBottom {
    pub fn holds(&self) -> bool {
        self.kernel_dim == self.expected_dim && self.all_divisible
    }
}

/// Kernel of `ψ` at `(i,j)` against `p`-form times the slice `(i-μ, j-1)`.
pub fn below_bottom_check(maps: &PlaneMaps, (i, j): (i64, i64)) -> Result<BelowBottom> {
    let tz = &maps.tz;
    let kernel = kernel_at(&maps.psi, &BidegreeSlice::new(tz, (i, j)))?;
    let expected_dim = BidegreeSlice::new(tz, (i - maps.mu.mu as i64, j - 1)).len();
    let mut all_divisible = true;
    for k in &kernel {
        all_divisible &= k.try_divide(maps.p_form())?.is_some();
    }
    Ok(BelowBottom { bidegree: (i, j), kernel_dim: kernel.len(), expected_dim, all_divisible })
}

/// Compares `ker Φ'` at a bidegree with the span of the scroll generators.
pub fn scroll_kernel_matches(phi_prime: &RingMap, scroll: &[MultiPoly], bidegree: (i64, i64)) -> Result<bool> {
    let slice = BidegreeSlice::new(&phi_prime.source, bidegree);
    let kernel = kernel_at(phi_prime, &slice)?;
    let field: FieldSpec = phi_prime.images()[0].field();
    let mut span = SparseEchelon::new(field);
    let mut cols = Interner::default();
    for g in scroll {
        let deg = g.bidegree()?;
        if deg.0 <= bidegree.0 && deg.1 <= bidegree.1 {
            for h in multiples(g, deg, bidegree) {
                span.insert(cols.vector(&h));
            }
        }
    }
    let rank = span.rank();
    let contained = kernel.iter().all(|k| span.contains(cols.vector(k)));
    Ok(rank == kernel.len() && contained)
}
