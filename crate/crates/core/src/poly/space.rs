use std::fmt;
use std::sync::Arc;

/// The ambient rings: 𝕂[T,Z], the block ring 𝕂[T,Xblk,Yblk], the scroll
/// ring 𝕂[T,X,Y], the target ring 𝕂[T,s], and 𝕂[T] for binary forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Binary,
    TZ,
    Blocks { mu1: u32, mu2: u32 },
    Scroll { mu1: u32, mu2: u32 },
    TS { d: u32 },
}

/// Variable names and gradings. `T0, T1` are always the first two variables.
#[derive(Debug, Clone)]
pub struct VarSpace {
    kind: SpaceKind,
    names: Vec<String>,
    bigrade: Vec<(i64, i64)>,
}

impl PartialEq for VarSpace {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for VarSpace {}

impl VarSpace {
    pub fn new(kind: SpaceKind) -> Arc<VarSpace> {
        let mut names = vec!["T0".to_string(), "T1".to_string()];
        let mut bigrade = vec![(1, 0), (1, 0)];
        match kind {
            SpaceKind::Binary => {}
            SpaceKind::TZ => {
                for j in 0..3 {
                    names.push(format!("Z{j}"));
                    bigrade.push((0, 1));
                }
            }
            SpaceKind::Blocks { mu1, mu2 } => {
                for i in 0..=mu1 {
                    names.push(format!("X{i}"));
                    bigrade.push((0, 1));
                }
                for i in 0..=mu2 {
                    names.push(format!("Y{i}"));
                    bigrade.push((0, 1));
                }
            }
            SpaceKind::Scroll { mu1, mu2 } => {
                names.push("X".into());
                bigrade.push((-(mu1 as i64), 1));
                names.push("Y".into());
                bigrade.push((-(mu2 as i64), 1));
            }
            SpaceKind::TS { d } => {
                names.push("s".into());
                bigrade.push((-(d as i64), 1));
            }
        }
        Arc::new(VarSpace { kind, names, bigrade })
    }

    pub fn binary() -> Arc<VarSpace> {
        VarSpace::new(SpaceKind::Binary)
    }

    pub fn tz() -> Arc<VarSpace> {
        VarSpace::new(SpaceKind::TZ)
    }

    pub fn blocks(mu1: u32, mu2: u32) -> Arc<VarSpace> {
        VarSpace::new(SpaceKind::Blocks { mu1, mu2 })
    }

    pub fn scroll(mu1: u32, mu2: u32) -> Arc<VarSpace> {
        VarSpace::new(SpaceKind::Scroll { mu1, mu2 })
    }

    pub fn ts(d: u32) -> Arc<VarSpace> {
        VarSpace::new(SpaceKind::TS { d })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bigrade(&self, i: usize) -> (i64, i64) {
        self.bigrade[i]
    }

    /// (T, X-block, Y-block) degree of a variable of the block ring.
    pub fn trigrade(&self, i: usize) -> Option<(i64, i64, i64)> {
        let SpaceKind::Blocks { mu1, .. } = self.kind else { return None };
        Some(match i {
            0 | 1 => (1, 0, 0),
            _ if i < 3 + mu1 as usize => (0, 1, 0),
            _ => (0, 0, 1),
        })
    }

    /// Index of `X_i` in the block ring, or of `X` in the scroll ring.
    pub fn x(&self, i: u32) -> usize {
        match self.kind {
            SpaceKind::Blocks { mu1, .. } => {
                assert!(i <= mu1, "X{i} outside block of size {}", mu1 + 1);
                2 + i as usize
            }
            SpaceKind::Scroll { .. } => 2,
            k => panic!("no X variable in {k:?}"),
        }
    }

    /// Index of `Y_i` in the block ring, or of `Y` in the scroll ring.
    pub fn y(&self, i: u32) -> usize {
        match self.kind {
            SpaceKind::Blocks { mu1, mu2 } => {
                assert!(i <= mu2, "Y{i} outside block of size {}", mu2 + 1);
                3 + mu1 as usize + i as usize
            }
            SpaceKind::Scroll { .. } => 3,
            k => panic!("no Y variable in {k:?}"),
        }
    }

    pub fn z(&self, j: usize) -> usize {
        assert_eq!(self.kind, SpaceKind::TZ);
        2 + j
    }

    pub fn s(&self) -> usize {
        assert!(matches!(self.kind, SpaceKind::TS { .. }));
        2
    }

    pub fn block_sizes(&self) -> Option<(u32, u32)> {
        match self.kind {
            SpaceKind::Blocks { mu1, mu2 } | SpaceKind::Scroll { mu1, mu2 } => Some((mu1, mu2)),
            _ => None,
        }
    }
}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{}]", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_layout() {
        let s = VarSpace::blocks(3, 5);
        assert_eq!(s.nvars(), 2 + 4 + 6);
        assert_eq!(s.name(s.x(3)), "X3");
        assert_eq!(s.name(s.y(0)), "Y0");
        assert_eq!(s.trigrade(s.x(0)), Some((0, 1, 0)));
        assert_eq!(s.trigrade(s.y(5)), Some((0, 0, 1)));
        assert_eq!(s.trigrade(1), Some((1, 0, 0)));
    }

    #[test]
    fn negative_scroll_grades() {
        let s = VarSpace::scroll(3, 5);
        assert_eq!(s.bigrade(s.x(0)), (-3, 1));
        assert_eq!(s.bigrade(s.y(0)), (-5, 1));
        assert_eq!(VarSpace::ts(17).bigrade(2), (-17, 1));
    }
}
