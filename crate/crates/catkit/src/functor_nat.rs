//! Functors and natural transformations over finite one-sorted categories,
//! in both formulations: fully pointwise (checked by [`NatTransMap::check`])
//! and component-wise on identities, extended to all morphisms by
//! η(x) = G(x)·η(dom x) ([`extend_components`]).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};
use crate::report::StructureReport;

/// A total map between category carriers, claimed to be a functor. The five
/// conditions (existence preservation both ways, dom/cod preservation up to
/// Kleene equality, lax composition up to directed equality) are verified by
/// [`FunctorMap::check`].
#[derive(Clone, Debug, PartialEq)]
pub struct FunctorMap {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub map: Vec<usize>,
}

impl FunctorMap {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.size() {
            return Err(CatError::input(format!(
                "functor map must be total: expected {} entries, got {}",
                source.size(),
                map.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(CatError::input(format!(
                "functor map entry {bad} out of range for target of size {}",
                target.size()
            )));
        }
        Ok(FunctorMap { source, target, map })
    }

    pub fn identity(cat: &Arc<FiniteCategory>) -> FunctorMap {
        FunctorMap {
            source: Arc::clone(cat),
            target: Arc::clone(cat),
            map: (0..cat.size()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Verify the functor conditions (1)–(5).
    pub fn check(&self) -> StructureReport {
        let mut report = StructureReport::new();
        let (src, tgt) = (&self.source, &self.target);
        let tc = tgt.carrier();
        for x in 0..src.size() {
            report.tick();
            let fx = self.map[x];
            if src.ex(x) && !tgt.ex(fx) {
                report.violate("functor_1", &[x]);
            }
            if !src.ex(x) && tgt.ex(fx) {
                report.violate("functor_2", &[x]);
            }
            if !tc.eq_k(self.map[src.dom(x)], tgt.dom(fx)) {
                report.violate("functor_3", &[x]);
            }
            if !tc.eq_k(self.map[src.cod(x)], tgt.cod(fx)) {
                report.violate("functor_4", &[x]);
            }
        }
        for x in 0..src.size() {
            for y in 0..src.size() {
                report.tick();
                // F(x·y) ≥ F(x)·F(y), directed equality exactly as stated.
                if !tc.eq_d(self.map[src.comp(x, y)], tgt.comp(self.map[x], self.map[y])) {
                    report.violate("functor_5", &[x, y]);
                }
            }
        }
        report.sorted()
    }
}

/// Composite F∘G; requires target of G = source of F (structurally).
pub fn compose_functors(f: &FunctorMap, g: &FunctorMap) -> Result<FunctorMap> {
    if g.target.as_ref() != f.source.as_ref() {
        return Err(CatError::input(
            "compose_functors: target of inner functor differs from source of outer functor",
        ));
    }
    Ok(FunctorMap {
        source: Arc::clone(&g.source),
        target: Arc::clone(&f.target),
        map: g.map.iter().map(|&x| f.map[x]).collect(),
    })
}

/// A natural transformation candidate between parallel functors, given as a
/// total table on the source carrier.
#[derive(Clone, Debug)]
pub struct NatTransMap {
    pub f: FunctorMap,
    pub g: FunctorMap,
    pub eta: Vec<usize>,
}

impl NatTransMap {
    pub fn new(f: FunctorMap, g: FunctorMap, eta: Vec<usize>) -> Result<Self> {
        if f.source.as_ref() != g.source.as_ref() || f.target.as_ref() != g.target.as_ref() {
            return Err(CatError::input(
                "natural transformation requires parallel functors",
            ));
        }
        if eta.len() != f.source.size() {
            return Err(CatError::input(format!(
                "eta must be total: expected {} entries, got {}",
                f.source.size(),
                eta.len()
            )));
        }
        if let Some(&bad) = eta.iter().find(|&&v| v >= f.target.size()) {
            return Err(CatError::input(format!(
                "eta entry {bad} out of range for target of size {}",
                f.target.size()
            )));
        }
        Ok(NatTransMap { f, g, eta })
    }

    /// Verify conditions (1)–(5) of the pointwise formulation.
    ///
    /// Condition (4) compares cod(η(x)) with cod(G(x)) — the only reading
    /// under which the extension recipe η(x) = G(x)·η(dom x) typechecks.
    /// Whether the F-sided variant also holds is reported as a note, never
    /// as a violation.
    pub fn check(&self) -> StructureReport {
        let mut report = StructureReport::new();
        let src = &self.f.source;
        let tgt = &self.f.target;
        let tc = tgt.carrier();
        let mut f_variant = true;
        for x in 0..src.size() {
            report.tick();
            let ex = self.eta[x];
            if src.ex(x) && !tgt.ex(ex) {
                report.violate("nat_1", &[x]);
            }
            if !src.ex(x) && tgt.ex(ex) {
                report.violate("nat_2", &[x]);
            }
            if !tc.eq_k(tgt.dom(ex), tgt.dom(self.f.map[x])) {
                report.violate("nat_3", &[x]);
            }
            if !tc.eq_k(tgt.cod(ex), tgt.cod(self.g.map[x])) {
                report.violate("nat_4", &[x]);
            }
            if !tc.eq_k(tgt.cod(ex), tgt.cod(self.f.map[x])) {
                f_variant = false;
            }
        }
        for x in 0..src.size() {
            for y in 0..src.size() {
                report.tick();
                if src.ex(src.comp(x, y)) {
                    let lhs = tgt.comp(self.eta[x], self.f.map[y]);
                    let rhs = tgt.comp(self.g.map[x], self.eta[y]);
                    if !tc.eq_e(lhs, rhs) {
                        report.violate("nat_5", &[x, y]);
                    }
                }
            }
        }
        report.note(format!(
            "cod condition (4) with F instead of G {}",
            if f_variant { "also holds" } else { "does not hold" }
        ));
        report.sorted()
    }

    /// Verify that every component at an identity is an isomorphism.
    pub fn check_iso(&self) -> StructureReport {
        let mut report = StructureReport::new();
        for a in self.f.source.identities() {
            report.tick();
            if self.f.target.inverse_of(self.eta[a]).is_none() {
                report.violate("component_not_iso", &[a]);
            }
        }
        report.sorted()
    }

    /// Invert a natural isomorphism: components are the two-sided inverses,
    /// extended against (G, F).
    pub fn invert(&self) -> Result<NatTransMap> {
        let mut components = BTreeMap::new();
        for a in self.f.source.identities() {
            let inv = self.f.target.inverse_of(self.eta[a]).ok_or_else(|| {
                CatError::input(format!("component at identity {a} is not invertible"))
            })?;
            components.insert(a, inv);
        }
        extend_components(&components, &self.g, &self.f)
    }
}

/// Extend an identity-indexed component family to a full transformation via
/// η(x) = G(x)·η(dom x); non-existing x map to a designated non-existent
/// element of the target.
pub fn extend_components(
    components: &BTreeMap<usize, usize>,
    f: &FunctorMap,
    g: &FunctorMap,
) -> Result<NatTransMap> {
    if f.source.as_ref() != g.source.as_ref() || f.target.as_ref() != g.target.as_ref() {
        return Err(CatError::input(
            "extend_components requires parallel functors",
        ));
    }
    let src = &f.source;
    let tgt = &f.target;
    let tc = tgt.carrier();
    for &a in &src.identities() {
        let &c = components.get(&a).ok_or_else(|| {
            CatError::input(format!("missing component for identity {a}"))
        })?;
        if c >= tgt.size()
            || !tgt.ex(c)
            || !tc.eq_e(tgt.dom(c), f.map[a])
            || !tc.eq_e(tgt.cod(c), g.map[a])
        {
            return Err(CatError::input(format!(
                "component at identity {a} is not a morphism F({a}) -> G({a})"
            )));
        }
    }
    let undef = tgt.undefined_element();
    let eta = (0..src.size())
        .map(|x| {
            if src.ex(x) {
                tgt.comp(g.map[x], components[&src.dom(x)])
            } else {
                undef
            }
        })
        .collect();
    NatTransMap::new(f.clone(), g.clone(), eta)
}
