//! Restriction to a flat and contraction of a flat.

use super::{Matroid, MatroidError, Subset};

impl Matroid {
    fn require_flat(&self, f: Subset) -> Result<(), MatroidError> {
        if !f.is_subset_of(self.ground()) || !self.is_flat(f) {
            return Err(MatroidError::NotAFlat(f.to_vec()));
        }
        Ok(())
    }

    /// Restriction `M^F`: ground set the members of `F`, renumbered in
    /// increasing order. Linear matroids stay linear.
    pub fn restriction(&self, f: Subset) -> Result<Matroid, MatroidError> {
        self.require_flat(f)?;
        let lift = f.to_vec();
        if let Some(p) = self.realization() {
            if !lift.is_empty() {
                return Matroid::linear(p.select_rows(&lift));
            }
        }
        Ok(Matroid::minor(self, lift, Subset::empty()))
    }

    /// Contraction `M_F`: ground set the complement of `F`, renumbered in
    /// increasing order, with `rank(S) = rank_M(S ∪ F) - rank_M(F)`.
    pub fn contraction(&self, f: Subset) -> Result<Matroid, MatroidError> {
        self.require_flat(f)?;
        if f == self.ground() {
            return Err(MatroidError::FullFlat);
        }
        let lift = self.ground().difference(f).to_vec();
        Ok(Matroid::minor(self, lift, f))
    }
}
