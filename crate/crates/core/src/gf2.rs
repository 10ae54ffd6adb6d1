//! Incremental Gaussian elimination over GF(2) with column provenance.
//!
//! Columns are inserted one at a time and reduced against the current
//! basis. Every basis entry remembers which original columns XOR to its
//! reduced vector, so span queries can be answered with an explicit
//! combination of inserted columns, and columns that reduce to zero yield
//! null-space vectors directly.

use std::collections::HashSet;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::sieve::ExponentVector;

#[derive(Debug, Clone)]
struct BasisEntry {
    reduced: BitVec,
    /// Over insertion positions.
    combination: BitVec,
}

/// Row-reduction state for a growing set of columns.
///
/// The pivot of a basis entry is the lowest set bit of its reduced vector.
#[derive(Debug, Clone, Default)]
pub struct Gf2Eliminator {
    basis: Vec<BasisEntry>,
    /// `pivot_slot[bit]` is the basis entry whose pivot is `bit`.
    pivot_slot: Vec<Option<u32>>,
    ids: Vec<u64>,
    seen: HashSet<u64>,
    null_combinations: Vec<BitVec>,
}

/// A vector partially reduced against an eliminator, together with the
/// inserted columns already folded into it.
///
/// Keeping a residual around lets a caller grow the eliminator and re-check
/// membership without redoing earlier reduction steps.
#[derive(Debug, Clone)]
pub struct Residual {
    vector: BitVec,
    combination: BitVec,
}

impl Residual {
    pub fn new(target: &ExponentVector) -> Self {
        Self {
            vector: target.bits().clone(),
            combination: BitVec::new(),
        }
    }

    /// True once the target is fully explained by inserted columns.
    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }
}

impl Gf2Eliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn nullity(&self) -> usize {
        self.null_combinations.len()
    }

    pub fn inserted_count(&self) -> usize {
        self.ids.len()
    }

    pub fn column_ids(&self) -> &[u64] {
        &self.ids
    }

    fn pivot_of(&self, bit: usize) -> Option<&BasisEntry> {
        match self.pivot_slot.get(bit) {
            Some(Some(i)) => Some(&self.basis[*i as usize]),
            _ => None,
        }
    }

    fn reduce_in_place(&self, vector: &mut BitVec, combination: &mut BitVec) {
        while let Some(low) = vector.lowest_one() {
            match self.pivot_of(low) {
                Some(entry) => {
                    vector.xor_assign(&entry.reduced);
                    combination.xor_assign(&entry.combination);
                }
                None => break,
            }
        }
    }

    /// Reduce `col` against the basis and record it under `id`.
    ///
    /// Returns `true` when the column was dependent, i.e. it produced a new
    /// null-space vector.
    pub fn insert_column(&mut self, col: &ExponentVector, id: u64) -> Result<bool> {
        if !self.seen.insert(id) {
            return Err(Error::InvalidArgument(format!(
                "column {id} was already inserted"
            )));
        }
        let position = self.ids.len();
        self.ids.push(id);

        let mut vector = col.bits().clone();
        let mut combination = BitVec::new();
        combination.toggle(position);
        self.reduce_in_place(&mut vector, &mut combination);

        match vector.lowest_one() {
            None => {
                self.null_combinations.push(combination);
                Ok(true)
            }
            Some(pivot) => {
                if pivot >= self.pivot_slot.len() {
                    self.pivot_slot.resize(pivot + 1, None);
                }
                self.pivot_slot[pivot] = Some(self.basis.len() as u32);
                self.basis.push(BasisEntry {
                    reduced: vector,
                    combination,
                });
                Ok(false)
            }
        }
    }

    /// Continue reducing a residual against the current basis.
    pub fn refine(&self, residual: &mut Residual) {
        self.reduce_in_place(&mut residual.vector, &mut residual.combination);
    }

    /// Ids of the inserted columns folded into a fully reduced residual.
    pub fn residual_ids(&self, residual: &Residual) -> Option<Vec<u64>> {
        residual
            .is_zero()
            .then(|| self.combination_ids(&residual.combination))
    }

    /// A combination of inserted columns XOR-ing to `target`, if any.
    /// Ids come back in insertion order.
    pub fn solve(&self, target: &ExponentVector) -> Option<Vec<u64>> {
        let mut residual = Residual::new(target);
        self.refine(&mut residual);
        self.residual_ids(&residual)
    }

    pub fn in_span(&self, target: &ExponentVector) -> bool {
        let mut vector = target.bits().clone();
        let mut scratch = BitVec::new();
        self.reduce_in_place(&mut vector, &mut scratch);
        vector.is_zero()
    }

    /// Null-space basis, one id list per dependent column, in the order the
    /// dependencies were discovered.
    pub fn null_space_basis(&self) -> Vec<Vec<u64>> {
        self.null_combinations
            .iter()
            .map(|c| self.combination_ids(c))
            .collect()
    }

    /// Null-space basis as combinations over insertion positions.
    pub fn null_combinations(&self) -> &[BitVec] {
        &self.null_combinations
    }

    pub fn combination_ids(&self, combination: &BitVec) -> Vec<u64> {
        combination.iter_ones().map(|i| self.ids[i]).collect()
    }
}
