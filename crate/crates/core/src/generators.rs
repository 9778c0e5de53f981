//! Tagged generator lists shared by the space-curve and plane-curve sides.

use std::fmt;
use std::sync::Arc;

use crate::field::FieldSpec;
use crate::poly::{MultiPoly, VarSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Pencil,
    Quadric,
    Psi { ell: usize, t: u32, v: (u32, u32, u32) },
    PForm,
    QForm,
    DFamily { a: u32, b: u32 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Pencil => write!(f, "pencil"),
            Provenance::Quadric => write!(f, "quadric"),
            Provenance::Psi { t, v: (i, j, k), .. } => write!(f, "psi^{t}_({i},{j},{})", k + 1),
            Provenance::PForm => write!(f, "p"),
            Provenance::QForm => write!(f, "q"),
            Provenance::DFamily { a, b } => write!(f, "DA^{a} DB^{b} q"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub provenance: Provenance,
    pub bidegree: (i64, i64),
    pub poly: MultiPoly,
}

impl Generator {
    /// Panics on the zero polynomial or a non-bihomogeneous one.
    pub fn new(provenance: Provenance, poly: MultiPoly) -> Self {
        let bidegree = poly.bidegree().expect("generators are nonzero and bihomogeneous");
        Generator { provenance, bidegree, poly }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub space: Arc<VarSpace>,
    pub field: FieldSpec,
    pub items: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(space: &Arc<VarSpace>, field: FieldSpec) -> Self {
        GeneratorSet { space: space.clone(), field, items: Vec::new() }
    }

    pub fn push(&mut self, provenance: Provenance, poly: MultiPoly) {
        self.items.push(Generator::new(provenance, poly));
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &MultiPoly> + '_ {
        self.items.iter().map(|g| &g.poly)
    }

    pub fn count(&self, pred: impl Fn(&Provenance) -> bool) -> usize {
        self.items.iter().filter(|g| pred(&g.provenance)).count()
    }

    /// Sorted bidegrees of the generators matching `pred`.
    pub fn bidegrees(&self, pred: impl Fn(&Provenance) -> bool) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = self.items.iter().filter(|g| pred(&g.provenance)).map(|g| g.bidegree).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.items {
            writeln!(f, "[{}] ({},{}) {}", g.provenance, g.bidegree.0, g.bidegree.1, g.poly)?;
        }
        Ok(())
    }
}
