use super::{CellId, CellRef, CubicalSet};

/// A map of cubical sets, stored as the image of every nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellMap {
    images: Vec<Vec<CellRef>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("map covers {got} cells in dimension {dim}, source has {expected}")]
    Shape { dim: usize, expected: usize, got: usize },
    #[error("image of {cell} has dimension {got}")]
    Dimension { cell: CellId, got: usize },
    #[error("image of {0} is not a cell of the target")]
    Missing(CellId),
    #[error("map does not commute with face ({axis}, {sign}) of {cell}")]
    Face { cell: CellId, axis: usize, sign: u8 },
}

impl CellMap {
    pub fn new(images: Vec<Vec<CellRef>>) -> Self {
        CellMap { images }
    }

    pub fn identity(k: &CubicalSet) -> Self {
        CellMap {
            images: k
                .counts()
                .iter()
                .enumerate()
                .map(|(d, &n)| (0..n).map(|i| CellRef::nondegenerate(CellId::new(d, i))).collect())
                .collect(),
        }
    }

    pub fn image(&self, cell: CellId) -> CellRef {
        self.images[cell.dim][cell.index]
    }

    pub fn images(&self) -> &[Vec<CellRef>] {
        &self.images
    }

    pub fn map_ref(&self, r: &CellRef) -> CellRef {
        self.image(r.cell).degenerated_by(r.deleted)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CellMap) -> CellMap {
        CellMap { images: self.images.iter().map(|v| v.iter().map(|r| next.map_ref(r)).collect()).collect() }
    }

    /// Checks that the map is a well-defined map `source -> target`.
    pub fn verify(&self, source: &CubicalSet, target: &CubicalSet) -> Result<(), MapError> {
        let counts = source.counts();
        for d in 0..counts.len().max(self.images.len()) {
            let expected = counts.get(d).copied().unwrap_or(0);
            let got = self.images.get(d).map_or(0, Vec::len);
            if expected != got {
                return Err(MapError::Shape { dim: d, expected, got });
            }
        }
        for c in source.all_cells() {
            let img = self.image(c);
            if img.dim() != c.dim {
                return Err(MapError::Dimension { cell: c, got: img.dim() });
            }
            if !target.contains(img.cell) {
                return Err(MapError::Missing(c));
            }
            for axis in 0..c.dim {
                for sign in [false, true] {
                    if self.map_ref(&source.face(c, axis, sign)) != target.face_of(&img, axis, sign) {
                        return Err(MapError::Face { cell: c, axis, sign: u8::from(sign) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the map sends nondegenerate cells bijectively onto the
    /// nondegenerate cells of `target`.
    pub fn is_isomorphism(&self, target: &CubicalSet) -> bool {
        let mut hit: Vec<Vec<bool>> = target.counts().iter().map(|&n| vec![false; n]).collect();
        for r in self.images.iter().flatten() {
            if r.is_degenerate() || !target.contains(r.cell) || hit[r.cell.dim][r.cell.index] {
                return false;
            }
            hit[r.cell.dim][r.cell.index] = true;
        }
        hit.iter().flatten().all(|&h| h)
    }

    /// Whether distinct nondegenerate cells have distinct nondegenerate images.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|r| !r.is_degenerate() && seen.insert(r.cell))
    }

    /// The inverse of an isomorphism onto `target`.
    pub fn inverse(&self, target: &CubicalSet) -> Option<CellMap> {
        if !self.is_isomorphism(target) {
            return None;
        }
        let mut inv: Vec<Vec<CellRef>> = target.counts().iter().map(|&n| vec![CellRef::nondegenerate(CellId::new(0, 0)); n]).collect();
        for (d, v) in self.images.iter().enumerate() {
            for (i, r) in v.iter().enumerate() {
                inv[r.cell.dim][r.cell.index] = CellRef::nondegenerate(CellId::new(d, i));
            }
        }
        Some(CellMap { images: inv })
    }
}
