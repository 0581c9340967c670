use std::collections::BTreeMap;

use crate::elim::rank;
use crate::exec::Exec;
use crate::scalar::Field;
use crate::sparse::SparseMatrix;
use crate::LinError;

/// A finite window of a chain complex. `differentials[d]` maps degree `d`
/// to degree `d - 1`; an absent differential inside the window is zero.
#[derive(Clone, Debug)]
pub struct ChainComplexSlice {
    field: Field,
    lo: i64,
    hi: i64,
    basis_sizes: BTreeMap<i64, usize>,
    differentials: BTreeMap<i64, SparseMatrix>,
}

/// Homology dimensions per degree with a reliability flag for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub dims: BTreeMap<i64, usize>,
    pub reliable: BTreeMap<i64, bool>,
}

impl HomologyTable {
    pub fn reliable_dims(&self) -> BTreeMap<i64, usize> {
        self.dims
            .iter()
            .filter(|(d, _)| self.reliable[d])
            .map(|(d, n)| (*d, *n))
            .collect()
    }
}

impl ChainComplexSlice {
    /// Degrees `lo..=hi`; sizes outside the map are 0.
    pub fn new(field: Field, lo: i64, hi: i64, basis_sizes: BTreeMap<i64, usize>) -> Self {
        assert!(lo <= hi, "empty degree window");
        ChainComplexSlice { field, lo, hi, basis_sizes, differentials: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn size(&self, d: i64) -> usize {
        self.basis_sizes.get(&d).copied().unwrap_or(0)
    }

    pub fn differential(&self, d: i64) -> Option<&SparseMatrix> {
        self.differentials.get(&d)
    }

    /// Stores the differential out of degree `d`. Its target must be degree
    /// `d - 1`, which may lie just below the window.
    pub fn set_differential(&mut self, d: i64, m: SparseMatrix) -> Result<(), LinError> {
        if m.cols() != self.size(d) || m.rows() != self.size(d - 1) {
            return Err(LinError::DimensionMismatch(format!(
                "differential out of degree {d} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.size(d - 1),
                self.size(d)
            )));
        }
        self.differentials.insert(d, m);
        Ok(())
    }

    /// Checks `d_{d} ∘ d_{d+1} = 0` wherever both are stored.
    pub fn check_complex(&self) -> Result<(), LinError> {
        for (d, upper) in &self.differentials {
            if let Some(lower) = self.differentials.get(&(d - 1)) {
                if !lower.mul(upper)?.is_zero() {
                    return Err(LinError::NotAComplex { degree: *d });
                }
            }
        }
        Ok(())
    }

    fn rank_of(&self, d: i64) -> usize {
        self.differentials.get(&d).map_or(0, rank)
    }

    /// `dim H_d = dim ker d_d - rank d_{d+1}`. Degrees at the window edges
    /// are flagged unreliable since a neighbour lies outside the slice.
    pub fn homology_dims(&self, exec: Exec) -> Result<HomologyTable, LinError> {
        self.check_complex()?;
        let degs: Vec<i64> = (self.lo..=self.hi + 1).collect();
        let ranks: BTreeMap<i64, usize> =
            exec.map(&degs, |&d| (d, self.rank_of(d))).into_iter().collect();
        let mut dims = BTreeMap::new();
        let mut reliable = BTreeMap::new();
        for d in self.lo..=self.hi {
            let kernel = self.size(d) - ranks[&d];
            dims.insert(d, kernel - ranks[&(d + 1)]);
            reliable.insert(d, d > self.lo && d < self.hi);
        }
        Ok(HomologyTable { dims, reliable })
    }

    /// Euler characteristic of the basis over the window.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi)
            .map(|d| if d.rem_euclid(2) == 0 { self.size(d) as i64 } else { -(self.size(d) as i64) })
            .sum()
    }
}
