use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use super::{Matroid, MatroidError, Subset};

/// Largest ground set for flat and circuit enumeration.
pub const ENUMERATION_MAX: usize = 20;

/// A closed set together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub members: Subset,
    pub rank: usize,
}

/// All flats of a matroid, grouped by rank and sorted by bitmask within
/// each rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    flats_by_rank: Vec<Vec<Subset>>,
    index: HashMap<Subset, (usize, usize)>,
}

impl FlatLattice {
    /// Breadth-first over ranks: each rank-(r+1) flat is the closure of a
    /// rank-r flat plus one outside element.
    pub(crate) fn enumerate(m: &Matroid) -> Result<Self, MatroidError> {
        let n = m.n();
        if n > ENUMERATION_MAX {
            return Err(MatroidError::TooLarge {
                n,
                max: ENUMERATION_MAX,
            });
        }
        let mut levels = vec![vec![m.closure(Subset::empty()).members]];
        for _ in 0..m.rank_total() {
            let mut next = HashSet::new();
            for &f in levels.last().expect("nonempty") {
                let mut covered = f;
                for i in 0..n {
                    if covered.contains(i) {
                        continue;
                    }
                    let g = m.closure(f.with(i)).members;
                    covered = covered.union(g);
                    next.insert(g);
                }
            }
            let mut next: Vec<Subset> = next.into_iter().collect();
            next.sort_unstable();
            levels.push(next);
        }
        Ok(Self::from_levels(levels))
    }

    pub(crate) fn from_levels(flats_by_rank: Vec<Vec<Subset>>) -> Self {
        let index = flats_by_rank
            .iter()
            .enumerate()
            .flat_map(|(r, level)| level.iter().enumerate().map(move |(i, &f)| (f, (r, i))))
            .collect();
        FlatLattice {
            flats_by_rank,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.flats_by_rank.len() - 1
    }

    /// Flats of rank `r`, or an empty slice beyond the top rank.
    pub fn level(&self, r: usize) -> &[Subset] {
        self.flats_by_rank.get(r).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<Subset>] {
        &self.flats_by_rank
    }

    pub fn whitney(&self) -> Vec<usize> {
        self.flats_by_rank.iter().map(Vec::len).collect()
    }

    /// `(rank, position)` of a flat.
    pub fn index_of(&self, s: Subset) -> Option<(usize, usize)> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    pub fn flats(&self) -> impl Iterator<Item = Flat> + '_ {
        self.flats_by_rank
            .iter()
            .enumerate()
            .flat_map(|(rank, level)| level.iter().map(move |&members| Flat { members, rank }))
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Vec<Vec<usize>>> = self
            .flats_by_rank
            .iter()
            .map(|level| level.iter().map(|f| f.to_vec()).collect())
            .collect();
        json!({ "rank": self.rank(), "flats_by_rank": levels })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitney_numbers_of_small_examples() {
        assert_eq!(Matroid::fano().whitney().unwrap(), vec![1, 7, 7, 1]);
        assert_eq!(Matroid::non_pappus().whitney().unwrap(), vec![1, 9, 20, 1]);
        assert_eq!(
            Matroid::uniform(3, 7).unwrap().whitney().unwrap(),
            vec![1, 7, 21, 1]
        );
        assert_eq!(
            Matroid::uniform(6, 10).unwrap().whitney().unwrap(),
            vec![1, 10, 45, 120, 210, 252, 1]
        );
    }

    #[test]
    fn four_collinear_plus_one() {
        let m = Matroid::from_lines(5, &[vec![0, 1, 2, 3]]).unwrap();
        let lattice = m.flats().unwrap();
        assert_eq!(lattice.whitney(), vec![1, 5, 5, 1]);
        let big = Subset::from_indices(5, &[0, 1, 2, 3]).unwrap();
        assert!(lattice.contains(big));
        for i in 0..4 {
            assert!(lattice.contains(Subset::from_indices(5, &[i, 4]).unwrap()));
        }
    }

    #[test]
    fn parallel_classes_form_rank_one_flats() {
        let q = crate::exactlin::FieldSpec::Rationals;
        let p = crate::exactlin::ExactMatrix::from_i64_rows(q, &[[1, 0], [2, 0], [0, 1]]).unwrap();
        let m = Matroid::linear(p).unwrap();
        let lattice = m.flats().unwrap();
        assert_eq!(
            lattice.level(1),
            &[Subset::from_bits(0b011), Subset::from_bits(0b100)]
        );
    }

    #[test]
    fn lattice_is_cached_and_indexed() {
        let m = Matroid::fano();
        let a = m.flats().unwrap();
        let b = m.flats().unwrap();
        assert!(std::sync::Arc::ptr_eq(&a, &b));
        assert_eq!(a.index_of(Subset::empty()), Some((0, 0)));
        assert_eq!(a.index_of(Subset::full(7)), Some((3, 0)));
        assert_eq!(a.len(), 16);
        assert!(a.level(4).is_empty());
    }

    #[test]
    fn enumeration_guard() {
        let m = Matroid::uniform(2, 21).unwrap();
        assert!(matches!(m.flats(), Err(MatroidError::TooLarge { .. })));
    }

    #[test]
    fn json_shape() {
        let m = Matroid::uniform(1, 2).unwrap();
        assert_eq!(
            m.flats().unwrap().to_json(),
            json!({"rank": 1, "flats_by_rank": [[[]], [[0, 1]]]})
        );
    }
}
