//! Sector-shaped arrays stored in linear memory, addressed by a packing function.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::packing::PackingFamily;
use crate::sector::LatticePoint;

/// Dense storage for values indexed by the points of a sector. The cell for `p`
/// lives at offset `rank(p)`, so a gap-free prefix of ranks wastes no space.
#[derive(Clone, Debug)]
pub struct SectorArray<T> {
    family: PackingFamily,
    storage: Vec<Option<T>>,
    population: usize,
}

impl<T> SectorArray<T> {
    pub fn new(family: PackingFamily) -> Self {
        SectorArray { family, storage: Vec::new(), population: 0 }
    }

    pub fn family(&self) -> &PackingFamily {
        &self.family
    }

    /// Length of the backing storage; always zero or a power of two.
    pub fn capacity(&self) -> usize {
        self.storage.len()
    }

    /// Number of occupied cells.
    pub fn population(&self) -> usize {
        self.population
    }

    pub fn is_empty(&self) -> bool {
        self.population == 0
    }

    /// Storage offset of `p`, checked against the machine word range.
    pub fn offset(&self, p: &LatticePoint) -> Result<usize> {
        let rank = self.family.rank(p)?;
        let limit = isize::MAX as usize / std::mem::size_of::<Option<T>>().max(1);
        rank.to_usize()
            .filter(|&off| off < limit)
            .ok_or_else(|| Error::Capacity(rank.to_string()))
    }

    fn grow_to(&mut self, offset: usize) {
        if offset >= self.storage.len() {
            let len = (offset + 1).next_power_of_two();
            self.storage.resize_with(len, || None);
        }
    }

    /// Stores `value` at `p`, returning the value it displaced.
    pub fn put(&mut self, p: &LatticePoint, value: T) -> Result<Option<T>> {
        let offset = self.offset(p)?;
        self.grow_to(offset);
        let old = self.storage[offset].replace(value);
        if old.is_none() {
            self.population += 1;
        }
        Ok(old)
    }

    pub fn get(&self, p: &LatticePoint) -> Result<Option<&T>> {
        let offset = self.offset(p)?;
        Ok(self.storage.get(offset).and_then(Option::as_ref))
    }

    /// Occupied cells in offset order, with points recovered by unranking.
    pub fn iter(&self) -> impl Iterator<Item = (usize, LatticePoint, &T)> + '_ {
        self.storage.iter().enumerate().filter_map(move |(offset, cell)| {
            cell.as_ref().map(|v| (offset, self.family.unrank(&BigUint::from(offset)), v))
        })
    }

    /// Fills ranks `0..n` with `generator(point)`.
    pub fn dense_prefix_fill(&mut self, n: usize, mut generator: impl FnMut(&LatticePoint) -> T) {
        if n == 0 {
            return;
        }
        self.grow_to(n - 1);
        for (offset, cell) in self.storage[..n].iter_mut().enumerate() {
            let point = self.family.unrank(&BigUint::from(offset));
            if cell.replace(generator(&point)).is_none() {
                self.population += 1;
            }
        }
    }
}
