//! Finite one-sorted categories as dense tables, the axiom checker, and the
//! opposite/product constructors.
//!
//! The axiom set S1–S6 + NE is the Scott-style presentation: writing x·y for
//! comp(x,y) ("x after y"),
//!
//!   S1: E(dom x) → E x
//!   S2: E(cod y) → E y
//!   S3: E(x·y) ↔ dom x ≃ cod y
//!   S4: x·(y·z) ≅ (x·y)·z
//!   S5: x·dom x ≅ x
//!   S6: cod y · y ≅ y
//!   NE: at least one non-existent element
//!
//! Objects are the identities: the existing dom-fixpoints.

use rayon::prelude::*;

use crate::error::{CatError, Result};
use crate::kernel::Carrier;
use crate::report::{StructureReport, Violation};

/// A finite one-sorted category: carrier with existence mask plus total
/// dom/cod/composition tables. Immutable after construction; all checks are
/// pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    carrier: Carrier,
    dom: Vec<usize>,
    cod: Vec<usize>,
    /// Row-major n×n: comp[x*n + y] = x·y.
    comp: Vec<usize>,
}

impl FiniteCategory {
    pub fn new(
        carrier: Carrier,
        dom: Vec<usize>,
        cod: Vec<usize>,
        comp_rows: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = carrier.size();
        if dom.len() != n || cod.len() != n {
            return Err(CatError::input(format!(
                "dom/cod tables must have length {n} (got {}/{})",
                dom.len(),
                cod.len()
            )));
        }
        if comp_rows.len() != n {
            return Err(CatError::input(format!(
                "comp table must have {n} rows (got {})",
                comp_rows.len()
            )));
        }
        let mut comp = Vec::with_capacity(n * n);
        for (x, row) in comp_rows.iter().enumerate() {
            if row.len() != n {
                return Err(CatError::input(format!(
                    "comp row {x} has length {} (expected {n})",
                    row.len()
                )));
            }
            comp.extend_from_slice(row);
        }
        for (name, table) in [("dom", &dom), ("cod", &cod), ("comp", &comp)] {
            if let Some(&bad) = table.iter().find(|&&v| v >= n) {
                return Err(CatError::input(format!(
                    "{name} table entry {bad} out of range 0..{n}"
                )));
            }
        }
        Ok(FiniteCategory {
            carrier,
            dom,
            cod,
            comp,
        })
    }

    pub fn from_flat(carrier: Carrier, dom: Vec<usize>, cod: Vec<usize>, comp: Vec<usize>) -> Result<Self> {
        let n = carrier.size();
        if comp.len() != n * n {
            return Err(CatError::input(format!(
                "flat comp table must have {} entries (got {})",
                n * n,
                comp.len()
            )));
        }
        let rows = comp.chunks(n).map(|r| r.to_vec()).collect();
        FiniteCategory::new(carrier, dom, cod, rows)
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    #[inline]
    pub fn ex(&self, x: usize) -> bool {
        self.carrier.ex(x)
    }

    #[inline]
    pub fn dom(&self, x: usize) -> usize {
        self.dom[x]
    }

    #[inline]
    pub fn cod(&self, x: usize) -> usize {
        self.cod[x]
    }

    /// x·y, "x after y".
    #[inline]
    pub fn comp(&self, x: usize, y: usize) -> usize {
        self.comp[x * self.carrier.size() + y]
    }

    pub fn dom_table(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod_table(&self) -> &[usize] {
        &self.cod
    }

    pub fn comp_flat(&self) -> &[usize] {
        &self.comp
    }

    pub fn undefined_element(&self) -> usize {
        self.carrier.undefined_element()
    }

    /// Id x := E x ∧ dom x ≃ x.
    #[inline]
    pub fn is_identity(&self, x: usize) -> bool {
        self.ex(x) && self.carrier.eq_e(self.dom[x], x)
    }

    /// The objects of the one-sorted view, in index order.
    pub fn identities(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_identity(x)).collect()
    }

    /// { f : E f ∧ dom f ≃ a ∧ cod f ≃ b } for identities a, b.
    pub fn hom_set(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        for x in [a, b] {
            if x >= self.size() || !self.is_identity(x) {
                return Err(CatError::input(format!("{x} is not an identity")));
            }
        }
        Ok((0..self.size())
            .filter(|&f| self.ex(f) && self.carrier.eq_e(self.dom[f], a) && self.carrier.eq_e(self.cod[f], b))
            .collect())
    }

    /// Two-sided inverse of f, if any.
    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        if !self.ex(f) {
            return None;
        }
        let (a, b) = (self.dom[f], self.cod[f]);
        (0..self.size()).find(|&g| {
            self.ex(g)
                && self.carrier.eq_e(self.comp(g, f), a)
                && self.carrier.eq_e(self.comp(f, g), b)
        })
    }

    /// Check the axiom set S1–S6 + NE. Each violated axiom is reported with
    /// its lexicographically minimal witness tuple.
    pub fn check(&self) -> StructureReport {
        let n = self.size();
        let c = &self.carrier;
        let mut report = StructureReport::new();

        // NE holds by Carrier construction, but a category deserialized from
        // hostile input still goes through Carrier::new, so just recount.
        report.checked += n as u64;
        if (0..n).all(|x| c.ex(x)) {
            report.violate("NE", &[]);
        }

        for x in 0..n {
            report.tick();
            if c.ex(self.dom[x]) && !c.ex(x) {
                report.violate("S1", &[x]);
                break;
            }
        }
        for y in 0..n {
            report.tick();
            if c.ex(self.cod[y]) && !c.ex(y) {
                report.violate("S2", &[y]);
                break;
            }
        }
        'outer: for x in 0..n {
            for y in 0..n {
                report.tick();
                if c.ex(self.comp(x, y)) != c.eq_e(self.dom[x], self.cod[y]) {
                    report.violate("S3", &[x, y]);
                    break 'outer;
                }
            }
        }
        if let Some(w) = self.first_s4_violation() {
            report.violate("S4", &w);
        }
        report.checked += (n as u64).pow(3);
        for x in 0..n {
            report.tick();
            if !c.eq_k(self.comp(x, self.dom[x]), x) {
                report.violate("S5", &[x]);
                break;
            }
        }
        for y in 0..n {
            report.tick();
            if !c.eq_k(self.comp(self.cod[y], y), y) {
                report.violate("S6", &[y]);
                break;
            }
        }
        report.sorted()
    }

    /// Lexicographically first (x,y,z) with x·(y·z) ≇ (x·y)·z.
    fn first_s4_violation(&self) -> Option<Vec<usize>> {
        let n = self.size();
        let c = &self.carrier;
        (0..n)
            .into_par_iter()
            .filter_map(|x| {
                let row_x = &self.comp[x * n..(x + 1) * n];
                for y in 0..n {
                    let xy = row_x[y];
                    let row_y = &self.comp[y * n..(y + 1) * n];
                    let row_xy = &self.comp[xy * n..(xy + 1) * n];
                    for z in 0..n {
                        let lhs = row_x[row_y[z]];
                        let rhs = row_xy[z];
                        // ¬eq_k: distinct and not both non-existent.
                        if lhs != rhs && (c.ex(lhs) || c.ex(rhs)) {
                            return Some(vec![x, y, z]);
                        }
                    }
                }
                None
            })
            .min()
    }

    /// Re-evaluate a single named axiom at the given witness, in isolation.
    /// Used to confirm that reported violations are real.
    pub fn verify_violation(&self, v: &Violation) -> bool {
        let c = &self.carrier;
        let w = &v.witness;
        let holds = match (v.law.as_str(), w.as_slice()) {
            ("NE", []) => (0..self.size()).any(|x| !c.ex(x)),
            ("S1", [x]) => !c.ex(self.dom[*x]) || c.ex(*x),
            ("S2", [y]) => !c.ex(self.cod[*y]) || c.ex(*y),
            ("S3", [x, y]) => c.ex(self.comp(*x, *y)) == c.eq_e(self.dom[*x], self.cod[*y]),
            ("S4", [x, y, z]) => c.eq_k(
                self.comp(*x, self.comp(*y, *z)),
                self.comp(self.comp(*x, *y), *z),
            ),
            ("S5", [x]) => c.eq_k(self.comp(*x, self.dom[*x]), *x),
            ("S6", [y]) => c.eq_k(self.comp(self.cod[*y], *y), *y),
            _ => return false,
        };
        !holds
    }

    /// The opposite category: dom/cod swapped, composition flipped.
    pub fn opposite(&self) -> FiniteCategory {
        let n = self.size();
        let mut comp = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                comp[x * n + y] = self.comp(y, x);
            }
        }
        FiniteCategory {
            carrier: self.carrier.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            comp,
        }
    }

    /// The product category C×D with pair (x,y) encoded as x·|D|+y.
    pub fn product(&self, other: &FiniteCategory, max_size: usize) -> Result<FiniteCategory> {
        let (nc, nd) = (self.size(), other.size());
        let n = nc
            .checked_mul(nd)
            .filter(|&n| n <= max_size)
            .ok_or_else(|| {
                CatError::Resource(format!(
                    "product carrier {nc}x{nd} exceeds configured limit {max_size}"
                ))
            })?;
        let enc = |x: usize, y: usize| x * nd + y;
        let mut existing = vec![false; n];
        let mut dom = vec![0; n];
        let mut cod = vec![0; n];
        for x in 0..nc {
            for y in 0..nd {
                let p = enc(x, y);
                existing[p] = self.ex(x) && other.ex(y);
                dom[p] = enc(self.dom[x], other.dom[y]);
                cod[p] = enc(self.cod[x], other.cod[y]);
            }
        }
        let mut comp = vec![0; n * n];
        for x1 in 0..nc {
            for y1 in 0..nd {
                let p = enc(x1, y1);
                for x2 in 0..nc {
                    let cx = self.comp(x1, x2);
                    for y2 in 0..nd {
                        comp[p * n + enc(x2, y2)] = enc(cx, other.comp(y1, y2));
                    }
                }
            }
        }
        Ok(FiniteCategory {
            carrier: Carrier::new(existing)?,
            dom,
            cod,
            comp,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    /// Z/2 as a one-object category: elements 0 (unit), 1 (flip), 2 undefined.
    pub fn z2() -> FiniteCategory {
        models::monoid_category(&[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    #[test]
    fn z2_passes_axioms() {
        let report = z2().check();
        assert!(report.verdict(), "{report}");
    }

    #[test]
    fn redirected_composition_breaks_s3() {
        let cat = z2();
        let n = cat.size();
        let mut rows: Vec<Vec<usize>> = cat.comp_flat().chunks(n).map(|r| r.to_vec()).collect();
        rows[1][1] = 2; // 1·1 redirected to the undefined element
        let broken = FiniteCategory::new(
            cat.carrier().clone(),
            cat.dom_table().to_vec(),
            cat.cod_table().to_vec(),
            rows,
        )
        .unwrap();
        let report = broken.check();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "S3" && v.witness == vec![1, 1]));
        assert!(broken.verify_violation(&report.violations[0]));
    }

    #[test]
    fn s1_fires_on_nonexistent_with_existing_dom() {
        // Single existing identity 0, undefined 1 with dom 1 = 0 (existing).
        let carrier = Carrier::from_existing_indices(2, &[0]).unwrap();
        let cat = FiniteCategory::new(
            carrier,
            vec![0, 0],
            vec![0, 1],
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        let report = cat.check();
        assert!(report.violations.iter().any(|v| v.law == "S1" && v.witness == vec![1]));
    }

    #[test]
    fn identities_and_homs() {
        let cat = z2();
        assert_eq!(cat.identities(), vec![0]);
        assert_eq!(cat.hom_set(0, 0).unwrap(), vec![0, 1]);
        assert!(cat.hom_set(1, 0).is_err());
    }

    #[test]
    fn empty_existing_carrier_is_legal() {
        let carrier = Carrier::from_existing_indices(1, &[]).unwrap();
        let cat = FiniteCategory::new(carrier, vec![0], vec![0], vec![vec![0]]).unwrap();
        assert!(cat.check().verdict());
        assert!(cat.identities().is_empty());
    }

    #[test]
    fn opposite_is_involutive_and_valid() {
        let cat = models::poset_category(&models::LatticeSpec::divisors(12)).unwrap();
        let op = cat.opposite();
        assert!(op.check().verdict());
        assert_eq!(op.opposite(), cat);
        assert_eq!(op.identities(), cat.identities());
    }

    #[test]
    fn product_category_is_valid() {
        let a = z2();
        let b = models::poset_category(&models::LatticeSpec::divisors(4)).unwrap();
        let p = a.product(&b, 600).unwrap();
        assert_eq!(p.size(), a.size() * b.size());
        assert!(p.check().verdict());
        // identities of the product are exactly pairs of identities
        let b_ids = b.identities();
        let bn = b.size();
        let mut expected: Vec<usize> = a
            .identities()
            .iter()
            .flat_map(|&x| b_ids.iter().map(move |&y| x * bn + y))
            .collect();
        expected.sort_unstable();
        assert_eq!(p.identities(), expected);
    }

    #[test]
    fn product_size_cap_is_enforced() {
        let a = z2();
        match a.product(&a, 5) {
            Err(CatError::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn composite_dom_cod_derived_property() {
        // E(x·y) implies dom(x·y) ≃ dom y and cod(x·y) ≃ cod x.
        for cat in [
            z2(),
            models::poset_category(&models::LatticeSpec::divisors(12)).unwrap(),
        ] {
            let c = cat.carrier();
            for x in 0..cat.size() {
                for y in 0..cat.size() {
                    let xy = cat.comp(x, y);
                    if c.ex(xy) {
                        assert!(c.eq_e(cat.dom(xy), cat.dom(y)));
                        assert!(c.eq_e(cat.cod(xy), cat.cod(x)));
                    }
                }
            }
        }
    }
}
