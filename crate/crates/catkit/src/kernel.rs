//! Free-logic primitives: the existence predicate and the three equalities,
//! plus quantification restricted to existing elements.
//!
//! Elements are dense indices `0..size`. Non-existence is a mask, not a
//! sentinel: checkers never assume a unique non-existent element, although
//! model constructors are free to designate one for convenience.

use crate::error::{CatError, Result};

/// Quantifier mode for [`Carrier::quantify_existing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// A finite domain with an existence mask. The domain is required to be a
/// strict superset of the existing subset, so an explicit non-existent
/// element is always available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    existing: Vec<bool>,
}

impl Carrier {
    pub fn new(existing: Vec<bool>) -> Result<Self> {
        if existing.is_empty() {
            return Err(CatError::input("carrier must have size >= 1"));
        }
        if existing.iter().all(|&e| e) {
            return Err(CatError::input(
                "carrier must contain at least one non-existent element",
            ));
        }
        Ok(Carrier { existing })
    }

    /// Existing indices given as a list; everything else is non-existent.
    pub fn from_existing_indices(size: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = vec![false; size];
        for &i in indices {
            if i >= size {
                return Err(CatError::input(format!(
                    "existing index {i} out of range for carrier of size {size}"
                )));
            }
            mask[i] = true;
        }
        Carrier::new(mask)
    }

    pub fn size(&self) -> usize {
        self.existing.len()
    }

    /// The existence predicate E.
    #[inline]
    pub fn ex(&self, x: usize) -> bool {
        self.existing[x]
    }

    pub fn mask(&self) -> &[bool] {
        &self.existing
    }

    pub fn existing_indices(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.ex(x)).collect()
    }

    /// The first non-existent index; guaranteed to exist by construction.
    pub fn undefined_element(&self) -> usize {
        self.existing.iter().position(|&e| !e).unwrap()
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.size() {
            Err(CatError::input(format!(
                "index {x} out of range for carrier of size {}",
                self.size()
            )))
        } else {
            Ok(())
        }
    }

    /// Existing identity: x ≃ y iff x = y and both exist.
    pub fn existing_identity(&self, x: usize, y: usize) -> Result<bool> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.eq_e(x, y))
    }

    /// Kleene equality: x ≅ y iff (E x ∨ E y) → x = y.
    pub fn kleene_eq(&self, x: usize, y: usize) -> Result<bool> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.eq_k(x, y))
    }

    /// Directed equality: x ≥ y iff E x → x = y.
    pub fn directed_eq(&self, x: usize, y: usize) -> Result<bool> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.eq_d(x, y))
    }

    /// Unchecked ≃ for hot loops over known-valid indices.
    #[inline]
    pub fn eq_e(&self, x: usize, y: usize) -> bool {
        x == y && self.existing[x] && self.existing[y]
    }

    /// Unchecked ≅.
    #[inline]
    pub fn eq_k(&self, x: usize, y: usize) -> bool {
        if self.existing[x] || self.existing[y] {
            x == y
        } else {
            true
        }
    }

    /// Unchecked ≥.
    #[inline]
    pub fn eq_d(&self, x: usize, y: usize) -> bool {
        if self.existing[x] {
            x == y
        } else {
            true
        }
    }

    /// Quantify `pred` over the existing elements only.
    pub fn quantify_existing(&self, mode: Quantifier, pred: impl Fn(usize) -> bool) -> bool {
        let mut existing = (0..self.size()).filter(|&x| self.ex(x));
        match mode {
            Quantifier::Forall => existing.all(pred),
            Quantifier::Exists => existing.any(pred),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carrier(size: usize, existing: &[usize]) -> Carrier {
        Carrier::from_existing_indices(size, existing).unwrap()
    }

    #[test]
    fn existing_identity_examples() {
        let c = carrier(3, &[0, 1]);
        assert!(c.existing_identity(0, 0).unwrap());
        assert!(!c.existing_identity(2, 2).unwrap());
        assert!(!c.existing_identity(0, 1).unwrap());
    }

    #[test]
    fn kleene_examples() {
        let c = carrier(4, &[0, 1]);
        assert!(c.kleene_eq(2, 3).unwrap());
        assert!(!c.kleene_eq(0, 1).unwrap());
        for x in 0..4 {
            assert!(c.kleene_eq(x, x).unwrap());
        }
    }

    #[test]
    fn directed_examples() {
        let c = carrier(3, &[0, 1]);
        assert!(c.directed_eq(2, 0).unwrap());
        assert!(c.directed_eq(2, 1).unwrap());
        assert!(!c.directed_eq(0, 1).unwrap());
        assert!(c.directed_eq(0, 0).unwrap());
    }

    #[test]
    fn quantifier_examples() {
        let all_nonexistent = carrier(2, &[]);
        assert!(all_nonexistent.quantify_existing(Quantifier::Forall, |_| false));
        assert!(!all_nonexistent.quantify_existing(Quantifier::Exists, |_| true));

        let c = carrier(3, &[0, 1]);
        assert!(c.quantify_existing(Quantifier::Exists, |x| x == 1));
        assert!(c.quantify_existing(Quantifier::Forall, |x| c.ex(x)));
    }

    #[test]
    fn index_out_of_range_is_input_error() {
        let c = carrier(2, &[0]);
        assert!(c.existing_identity(0, 2).is_err());
        assert!(c.kleene_eq(5, 0).is_err());
        assert!(c.directed_eq(0, 9).is_err());
    }

    #[test]
    fn rejects_degenerate_carriers() {
        assert!(Carrier::new(vec![]).is_err());
        assert!(Carrier::new(vec![true, true]).is_err());
        assert!(Carrier::new(vec![false]).is_ok());
    }
}
