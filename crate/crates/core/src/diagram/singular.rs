//! Diagrams with marked double points. A double point remembers the
//! crossing it replaced; resolving it positively or negatively restores a
//! crossing of that sign in place.

use super::LinkDiagram;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularDiagram {
    base: LinkDiagram,
    double_points: BTreeSet<usize>,
}

impl SingularDiagram {
    pub fn new(base: LinkDiagram) -> SingularDiagram {
        SingularDiagram {
            base,
            double_points: BTreeSet::new(),
        }
    }

    /// Mark the crossing at `idx` as a double point.
    pub fn singularize(&self, idx: usize) -> Result<SingularDiagram> {
        if idx >= self.base.num_crossings() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                len: self.base.num_crossings(),
            });
        }
        if self.double_points.contains(&idx) {
            return Err(Error::AlreadyADoublePoint(idx));
        }
        let mut out = self.clone();
        out.double_points.insert(idx);
        Ok(out)
    }

    /// Replace the double point at `idx` with a crossing of the requested
    /// sign (+1 or -1). The underlying crossing is switched when its sign
    /// disagrees.
    pub fn resolve(&self, idx: usize, sign: i64) -> Result<SingularDiagram> {
        if !self.double_points.contains(&idx) {
            return Err(Error::NotADoublePoint(idx));
        }
        debug_assert!(sign == 1 || sign == -1);
        let base = if self.base.sign(idx)? == sign {
            self.base.clone()
        } else {
            self.base.switch_crossing(idx)?
        };
        let mut double_points = self.double_points.clone();
        double_points.remove(&idx);
        Ok(SingularDiagram {
            base,
            double_points,
        })
    }

    pub fn base(&self) -> &LinkDiagram {
        &self.base
    }

    pub fn double_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.double_points.iter().copied()
    }

    pub fn num_double_points(&self) -> usize {
        self.double_points.len()
    }
}
