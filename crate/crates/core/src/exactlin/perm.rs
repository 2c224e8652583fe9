use super::LinAlgError;

/// A bijection of `{0, .., N-1}`, stored as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, LinAlgError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(LinAlgError::NotAPermutation(images));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, LinAlgError> {
        if self.len() != other.len() {
            return Err(LinAlgError::DimensionMismatch(format!(
                "composing permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Pairs `i < j` with `σ(i) > σ(j)`.
    pub fn inversions(&self) -> usize {
        let n = self.len();
        (0..n)
            .map(|i| {
                (i + 1..n)
                    .filter(|&j| self.images[i] > self.images[j])
                    .count()
            })
            .sum()
    }

    pub fn sign(&self) -> i8 {
        permutation_sign(self)
    }
}

/// `(-1)^(number of inversions)`.
pub fn permutation_sign(sigma: &Permutation) -> i8 {
    if sigma.inversions().is_multiple_of(2) {
        1
    } else {
        -1
    }
}
