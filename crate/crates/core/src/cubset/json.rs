use serde::{Deserialize, Serialize};

use super::{CellId, CellRef, CubeError, CubicalSet, CubicalSetBuilder};

/// One entry of the face table; axes and degeneracy indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub axis: usize,
    pub sign: u8,
    #[serde(default)]
    pub degeneracies: Vec<usize>,
    pub target: CellId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub dim: usize,
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub faces: Vec<FaceJson>,
}

/// Serialized form of a cubical set. Cells are listed by dimension, then
/// index; faces by axis, then sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub counts: Vec<usize>,
    pub cells: Vec<CellJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<CellId>,
}

impl CubicalSet {
    pub fn to_json(&self) -> ComplexJson {
        let cells = self
            .all_cells()
            .map(|c| CellJson {
                dim: c.dim,
                index: c.index,
                label: self.label(c).map(str::to_owned),
                faces: (0..c.dim)
                    .flat_map(|axis| [false, true].map(|s| (axis, s)))
                    .map(|(axis, s)| {
                        let f = self.face(c, axis, s);
                        FaceJson { axis: axis + 1, sign: u8::from(s), degeneracies: f.degeneracy_word(), target: f.cell }
                    })
                    .collect(),
            })
            .collect();
        ComplexJson { counts: self.counts(), cells, basepoint: self.basepoint() }
    }

    pub fn from_json(j: &ComplexJson) -> Result<CubicalSet, CubeError> {
        let mut cells: Vec<&CellJson> = j.cells.iter().collect();
        cells.sort_by_key(|c| (c.dim, c.index));
        let mut b = CubicalSetBuilder::new();
        for c in cells {
            if c.index != b.num_cells(c.dim) {
                return Err(CubeError::Malformed(format!("cell {}:{} is out of sequence", c.dim, c.index)));
            }
            let mut slots: Vec<Option<CellRef>> = vec![None; 2 * c.dim];
            for f in &c.faces {
                if f.axis == 0 || f.axis > c.dim || f.sign > 1 {
                    return Err(CubeError::Malformed(format!("bad face slot ({}, {}) on cell {}:{}", f.axis, f.sign, c.dim, c.index)));
                }
                let mut deleted = 0u64;
                for &d in &f.degeneracies {
                    if d == 0 || d >= c.dim.max(1) || deleted >> (d - 1) & 1 == 1 {
                        return Err(CubeError::Malformed(format!("bad degeneracy index {d} on cell {}:{}", c.dim, c.index)));
                    }
                    deleted |= 1 << (d - 1);
                }
                let slot = 2 * (f.axis - 1) + usize::from(f.sign);
                if slots[slot].replace(CellRef { cell: f.target, deleted }).is_some() {
                    return Err(CubeError::Malformed(format!("duplicate face slot on cell {}:{}", c.dim, c.index)));
                }
            }
            let faces = slots
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CubeError::Malformed(format!("cell {}:{} is missing faces", c.dim, c.index)))?;
            b.add_cell(c.dim, faces, c.label.clone())?;
        }
        b.set_basepoint(j.basepoint);
        let k = b.build()?;
        if !j.counts.is_empty() && j.counts != k.counts() {
            return Err(CubeError::Malformed(format!("declared counts {:?} differ from cells {:?}", j.counts, k.counts())));
        }
        Ok(k)
    }
}
