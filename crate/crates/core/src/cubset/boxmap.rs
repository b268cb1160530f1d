//! Morphisms of the box category.
//!
//! A morphism `I^m -> I^n` is a map `{0,1}^m -> {0,1}^n` in which every
//! output coordinate is either a constant or an input coordinate, the
//! input coordinates being used at most once and in increasing order. Such
//! maps are exactly the composites of face inclusions and degeneracy
//! projections, and each one factors uniquely as a projection (the
//! unused inputs) followed by a face inclusion (the constant outputs).

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Coord {
    Const(bool),
    Var(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoxMorphism {
    source: usize,
    coords: Vec<Coord>,
}

/// The unique factorization `faces ∘ degeneracies` of a box morphism.
///
/// Axes are 1-based. `degeneracies` lists the deleted input axes in
/// ascending order; `faces` lists the constant output axes in ascending
/// order together with their sign.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CanonicalWord {
    pub source: usize,
    pub target: usize,
    pub degeneracies: Vec<usize>,
    pub faces: Vec<(usize, u8)>,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum BoxError {
    #[error("variable coordinates must be increasing and below the source dimension {dim}")]
    BadCoordinates { dim: usize },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("cannot compose a morphism into I^{0} with one out of I^{1}")]
    Mismatch(usize, usize),
}

impl BoxMorphism {
    pub fn new(source: usize, coords: Vec<Coord>) -> Result<Self, BoxError> {
        let mut last: Option<usize> = None;
        for c in &coords {
            if let Coord::Var(v) = *c {
                if v >= source || last.is_some_and(|l| v <= l) {
                    return Err(BoxError::BadCoordinates { dim: source });
                }
                last = Some(v);
            }
        }
        Ok(BoxMorphism { source, coords })
    }

    pub fn identity(n: usize) -> Self {
        BoxMorphism { source: n, coords: (0..n).map(Coord::Var).collect() }
    }

    /// The face inclusion `I^{n-1} -> I^n` inserting `sign` at 0-based `axis`.
    pub fn face(n: usize, axis: usize, sign: bool) -> Self {
        assert!(axis < n, "face axis {axis} out of range for I^{n}");
        let mut coords: Vec<Coord> = (0..n - 1).map(Coord::Var).collect();
        coords.insert(axis, Coord::Const(sign));
        BoxMorphism { source: n - 1, coords }
    }

    /// The projection `I^n -> I^{n-1}` forgetting 0-based `axis`.
    pub fn projection(n: usize, axis: usize) -> Self {
        assert!(axis < n, "projection axis {axis} out of range for I^{n}");
        BoxMorphism { source: n, coords: (0..n).filter(|&j| j != axis).map(Coord::Var).collect() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// `self` followed by `next`, i.e. the composite `next ∘ self`.
    pub fn then(&self, next: &BoxMorphism) -> Result<BoxMorphism, BoxError> {
        if next.source != self.target() {
            return Err(BoxError::Mismatch(self.target(), next.source));
        }
        let coords = next
            .coords
            .iter()
            .map(|c| match *c {
                Coord::Const(b) => Coord::Const(b),
                Coord::Var(t) => self.coords[t],
            })
            .collect();
        Ok(BoxMorphism { source: self.source, coords })
    }

    pub fn apply(&self, point: &[bool]) -> Vec<bool> {
        assert_eq!(point.len(), self.source);
        self.coords
            .iter()
            .map(|c| match *c {
                Coord::Const(b) => b,
                Coord::Var(t) => point[t],
            })
            .collect()
    }

    pub fn is_projection(&self) -> bool {
        self.coords.iter().all(|c| matches!(c, Coord::Var(_)))
    }

    /// Bitmask of input axes that the morphism forgets.
    pub fn deleted_inputs(&self) -> u64 {
        let mut used = 0u64;
        for c in &self.coords {
            if let Coord::Var(t) = *c {
                used |= 1 << t;
            }
        }
        low_mask(self.source) & !used
    }

    pub fn canonical_word(&self) -> CanonicalWord {
        let deleted = self.deleted_inputs();
        CanonicalWord {
            source: self.source,
            target: self.target(),
            degeneracies: (0..self.source).filter(|t| deleted >> t & 1 == 1).map(|t| t + 1).collect(),
            faces: self
                .coords
                .iter()
                .enumerate()
                .filter_map(|(j, c)| match *c {
                    Coord::Const(b) => Some((j + 1, u8::from(b))),
                    Coord::Var(_) => None,
                })
                .collect(),
        }
    }

    /// Rebuilds a morphism from its canonical word.
    pub fn from_word(word: &CanonicalWord) -> Result<BoxMorphism, BoxError> {
        let mut m = BoxMorphism::identity(word.source);
        let mut deg = word.degeneracies.clone();
        deg.sort_unstable();
        for &axis in deg.iter().rev() {
            if axis == 0 || axis > m.target() {
                return Err(BoxError::AxisOutOfRange { axis, dim: m.target() });
            }
            m = m.then(&BoxMorphism::projection(m.target(), axis - 1))?;
        }
        let mut faces = word.faces.clone();
        faces.sort_unstable();
        for &(axis, sign) in &faces {
            if axis == 0 || axis > m.target() + 1 {
                return Err(BoxError::AxisOutOfRange { axis, dim: m.target() + 1 });
            }
            m = m.then(&BoxMorphism::face(m.target() + 1, axis - 1, sign == 1))?;
        }
        if m.target() != word.target {
            return Err(BoxError::Mismatch(m.target(), word.target));
        }
        Ok(m)
    }
}

impl fmt::Display for BoxMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I^{} -> I^{} [", self.source, self.target())?;
        for (j, c) in self.coords.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            match c {
                Coord::Const(b) => write!(f, "{}", u8::from(*b))?,
                Coord::Var(t) => write!(f, "x{}", t + 1)?,
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Removes bit `axis` from `mask`, shifting higher bits down.
pub(crate) fn remove_axis(mask: u64, axis: usize) -> u64 {
    let low = mask & low_mask(axis);
    let high = (mask >> (axis + 1)) << axis;
    low | high
}

/// Inserts `bit` at position `axis`, shifting higher bits up.
pub(crate) fn insert_axis(mask: u64, axis: usize, bit: bool) -> u64 {
    let low = mask & low_mask(axis);
    let high = (mask >> axis) << (axis + 1);
    low | high | (u64::from(bit) << axis)
}

/// Drops the positions in `removed` from `mask`, compacting the rest.
pub(crate) fn squeeze(mask: u64, removed: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    let mut pos = 0;
    while (mask | removed) >> pos != 0 {
        if removed >> pos & 1 == 0 {
            if mask >> pos & 1 == 1 {
                out |= 1 << k;
            }
            k += 1;
        }
        pos += 1;
    }
    out
}
