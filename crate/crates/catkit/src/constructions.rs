//! Universal-property gadgets decided by exhaustive search: terminal/initial
//! objects, binary (co)products, equalizers, mono/epi classification,
//! pullbacks, generic finite limits, exponentials, subobject classifiers,
//! the structure ladder up to the topos predicate, and the
//! monos-are-equalizers theorem check.
//!
//! All searches run in deterministic ascending index order, so the first
//! witness found — and every report — is reproducible. Uniqueness clauses
//! (∃!) are decided by counting existing candidates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};
use crate::report::StructureReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Product,
    Coproduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectPolarity {
    Terminal,
    Initial,
}

/// A claimed binary (co)product: apex object plus the two projections
/// (injections for coproducts).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductWitness {
    pub object: usize,
    pub proj1: usize,
    pub proj2: usize,
    pub polarity: Polarity,
}

/// A claimed exponential Bᴬ with its evaluation map and the product
/// witnesses (X×A, for the exponent A) the check is quantified over. The
/// universal property is verified exactly for the objects X present in
/// `products`; the map must at least contain `expo` itself, which types
/// `eval`.
#[derive(Clone, Debug)]
pub struct ExponentialWitness {
    pub expo: usize,
    pub eval: usize,
    pub products: BTreeMap<usize, ProductWitness>,
}

/// A finite diagram: a list of identities and edges between node positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagram {
    pub nodes: Vec<usize>,
    /// (element, from-node position, to-node position).
    pub edges: Vec<(usize, usize, usize)>,
}

/// A cone over a diagram: apex identity plus one leg per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cone {
    pub apex: usize,
    pub legs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubobjectClassifierWitness {
    pub omega: usize,
    pub truth: usize,
    pub terminal: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoEpi {
    pub mono: bool,
    pub epi: bool,
}

/// Per-level verdicts of the structure ladder. `has_exponentials` is None
/// when the category is not cartesian (the rung is skipped, not failed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureLadder {
    pub has_terminal: bool,
    pub terminal: Option<usize>,
    pub has_binary_products: bool,
    pub failing_pair: Option<(usize, usize)>,
    pub has_exponentials: Option<bool>,
    pub has_subobject_classifier: bool,
    pub omega: Option<usize>,
    pub truth: Option<usize>,
    pub is_topos: bool,
}

fn require_identity(cat: &FiniteCategory, x: usize, what: &str) -> Result<()> {
    if x >= cat.size() || !cat.is_identity(x) {
        return Err(CatError::input(format!("{what} {x} is not an identity")));
    }
    Ok(())
}

fn require_existing(cat: &FiniteCategory, x: usize, what: &str) -> Result<()> {
    if x >= cat.size() || !cat.ex(x) {
        return Err(CatError::input(format!("{what} {x} is not an existing element")));
    }
    Ok(())
}

fn arrows_with_cod(cat: &FiniteCategory, obj: usize) -> Vec<usize> {
    let c = cat.carrier();
    (0..cat.size())
        .filter(|&x| cat.ex(x) && c.eq_e(cat.cod(x), obj))
        .collect()
}

/// Find an identity T with |hom(A,T)| = 1 for every identity A (dualized for
/// Initial). The report lists every candidate; the first is returned.
pub fn find_terminal(
    cat: &FiniteCategory,
    polarity: ObjectPolarity,
) -> (Option<usize>, StructureReport) {
    let mut report = StructureReport::new();
    let ids = cat.identities();
    let mut candidates = Vec::new();
    for &t in &ids {
        report.tick();
        let ok = ids.iter().all(|&a| {
            let hom = match polarity {
                ObjectPolarity::Terminal => cat.hom_set(a, t),
                ObjectPolarity::Initial => cat.hom_set(t, a),
            };
            hom.map(|h| h.len() == 1).unwrap_or(false)
        });
        if ok {
            candidates.push(t);
        }
    }
    report.note(format!(
        "{:?} candidates: {candidates:?}",
        polarity
    ));
    (candidates.first().copied(), report)
}

/// Verify a binary (co)product witness for the pair (a, b) by the universal
/// property: every span (f : X→a, g : X→b) factors through exactly one
/// h : X→P (dualized for coproducts).
pub fn check_product(
    cat: &FiniteCategory,
    w: &ProductWitness,
    a: usize,
    b: usize,
) -> Result<StructureReport> {
    match w.polarity {
        Polarity::Product => check_product_in(cat, w, a, b),
        Polarity::Coproduct => {
            // A coproduct is exactly a product in the opposite category; the
            // element indexing is unchanged.
            check_product_in(&cat.opposite(), w, a, b)
        }
    }
}

fn check_product_in(
    cat: &FiniteCategory,
    w: &ProductWitness,
    a: usize,
    b: usize,
) -> Result<StructureReport> {
    require_identity(cat, a, "factor")?;
    require_identity(cat, b, "factor")?;
    require_identity(cat, w.object, "apex")?;
    require_existing(cat, w.proj1, "projection")?;
    require_existing(cat, w.proj2, "projection")?;
    let c = cat.carrier();
    for (p, target) in [(w.proj1, a), (w.proj2, b)] {
        if !c.eq_e(cat.dom(p), w.object) || !c.eq_e(cat.cod(p), target) {
            return Err(CatError::input(format!(
                "projection {p} is not a morphism {} -> {target}",
                w.object
            )));
        }
    }
    let mut report = StructureReport::new();
    for x in cat.identities() {
        let hx = arrows_with_cod_from(cat, x);
        for &f in hx.iter().filter(|&&f| c.eq_e(cat.cod(f), a)) {
            for &g in hx.iter().filter(|&&g| c.eq_e(cat.cod(g), b)) {
                report.tick();
                let mut count = 0;
                for &h in hx.iter().filter(|&&h| c.eq_e(cat.cod(h), w.object)) {
                    if c.eq_e(cat.comp(w.proj1, h), f) && c.eq_e(cat.comp(w.proj2, h), g) {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                    }
                }
                if count != 1 {
                    report.violate("universal_property", &[f, g]);
                }
            }
        }
    }
    Ok(report.sorted())
}

fn arrows_with_cod_from(cat: &FiniteCategory, dom_obj: usize) -> Vec<usize> {
    let c = cat.carrier();
    (0..cat.size())
        .filter(|&x| cat.ex(x) && c.eq_e(cat.dom(x), dom_obj))
        .collect()
}

/// Exhaustive (co)product search per identity pair. The verdict is true iff
/// every pair has a witness; each failing pair is a violation.
pub fn find_binary_products(
    cat: &FiniteCategory,
    polarity: Polarity,
) -> (BTreeMap<(usize, usize), Option<ProductWitness>>, StructureReport) {
    let work = match polarity {
        Polarity::Product => cat.clone(),
        Polarity::Coproduct => cat.opposite(),
    };
    let ids = work.identities();
    // Count-based pre-filter: a product P of (a,b) must satisfy
    // |hom(X,P)| = |hom(X,a)|·|hom(X,b)| for every X.
    let hom_count: BTreeMap<(usize, usize), usize> = ids
        .iter()
        .flat_map(|&x| {
            let work = &work;
            ids.iter()
                .map(move |&y| ((x, y), work.hom_set(x, y).unwrap().len()))
        })
        .collect();
    let mut table = BTreeMap::new();
    let mut report = StructureReport::new();
    for &a in &ids {
        for &b in &ids {
            report.tick();
            let mut found = None;
            'candidates: for &p in &ids {
                if ids
                    .iter()
                    .any(|&x| hom_count[&(x, p)] != hom_count[&(x, a)] * hom_count[&(x, b)])
                {
                    continue;
                }
                for &p1 in &work.hom_set(p, a).unwrap() {
                    for &p2 in &work.hom_set(p, b).unwrap() {
                        let w = ProductWitness {
                            object: p,
                            proj1: p1,
                            proj2: p2,
                            polarity: Polarity::Product,
                        };
                        if check_product_in(&work, &w, a, b).unwrap().verdict() {
                            found = Some(ProductWitness { polarity, ..w });
                            break 'candidates;
                        }
                    }
                }
            }
            if found.is_none() {
                report.violate("no_witness", &[a, b]);
            }
            table.insert((a, b), found);
        }
    }
    (table, report.sorted())
}

fn is_equalizer(cat: &FiniteCategory, e: usize, f: usize, g: usize) -> bool {
    let c = cat.carrier();
    if !cat.ex(e) || !c.eq_e(cat.cod(e), cat.dom(f)) {
        return false;
    }
    if !c.eq_e(cat.comp(f, e), cat.comp(g, e)) {
        return false;
    }
    for h in arrows_with_cod(cat, cat.dom(f)) {
        if !c.eq_e(cat.comp(f, h), cat.comp(g, h)) {
            continue;
        }
        let mut count = 0;
        for k in 0..cat.size() {
            if cat.ex(k) && c.eq_e(cat.comp(e, k), h) {
                count += 1;
                if count > 1 {
                    return false;
                }
            }
        }
        if count != 1 {
            return false;
        }
    }
    true
}

/// Verify that e equalizes the parallel pair (f, g): f·e ≃ g·e and every h
/// with f·h ≃ g·h factors through e exactly once.
pub fn check_equalizer(
    cat: &FiniteCategory,
    e: usize,
    f: usize,
    g: usize,
) -> Result<StructureReport> {
    for (x, what) in [(e, "equalizer"), (f, "arrow"), (g, "arrow")] {
        require_existing(cat, x, what)?;
    }
    let c = cat.carrier();
    if !c.eq_e(cat.dom(f), cat.dom(g)) || !c.eq_e(cat.cod(f), cat.cod(g)) {
        return Err(CatError::input(format!("{f} and {g} are not parallel")));
    }
    if !c.eq_e(cat.cod(e), cat.dom(f)) {
        return Err(CatError::input(format!(
            "equalizer candidate {e} does not target dom({f})"
        )));
    }
    let mut report = StructureReport::new();
    report.tick();
    if !c.eq_e(cat.comp(f, e), cat.comp(g, e)) {
        report.violate("equalizes", &[e]);
    }
    for h in arrows_with_cod(cat, cat.dom(f)) {
        if !c.eq_e(cat.comp(f, h), cat.comp(g, h)) {
            continue;
        }
        report.tick();
        let mut count = 0;
        for k in 0..cat.size() {
            if cat.ex(k) && c.eq_e(cat.comp(e, k), h) {
                count += 1;
            }
        }
        if count != 1 {
            report.violate("universal_property", &[h]);
        }
    }
    Ok(report.sorted())
}

/// Decide mono/epi by enumeration over all test pairs.
pub fn classify_mono_epi(cat: &FiniteCategory, f: usize) -> Result<MonoEpi> {
    require_existing(cat, f, "morphism")?;
    let c = cat.carrier();
    let into = arrows_with_cod(cat, cat.dom(f));
    let mut mono = true;
    'mono: for &g in &into {
        for &h in &into {
            if g != h && c.eq_e(cat.comp(f, g), cat.comp(f, h)) {
                mono = false;
                break 'mono;
            }
        }
    }
    let outof = arrows_with_cod_from(cat, cat.cod(f));
    let mut epi = true;
    'epi: for &g in &outof {
        for &h in &outof {
            if g != h && c.eq_e(cat.comp(g, f), cat.comp(h, f)) {
                epi = false;
                break 'epi;
            }
        }
    }
    Ok(MonoEpi { mono, epi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareMode {
    Corner,
    Pullback,
}

fn is_pullback(cat: &FiniteCategory, p0: usize, p1: usize, f: usize, g: usize) -> bool {
    let c = cat.carrier();
    if !cat.ex(p0)
        || !cat.ex(p1)
        || !c.eq_e(cat.dom(p0), cat.dom(p1))
        || !c.eq_e(cat.cod(p0), cat.dom(f))
        || !c.eq_e(cat.cod(p1), cat.dom(g))
        || !c.eq_e(cat.comp(f, p0), cat.comp(g, p1))
    {
        return false;
    }
    let apex = cat.dom(p0);
    for q0 in arrows_with_cod(cat, cat.dom(f)) {
        for q1 in arrows_with_cod(cat, cat.dom(g)) {
            if !c.eq_e(cat.dom(q0), cat.dom(q1)) || !c.eq_e(cat.comp(f, q0), cat.comp(g, q1)) {
                continue;
            }
            let mut count = 0;
            for h in arrows_with_cod(cat, apex) {
                if c.eq_e(cat.comp(p0, h), q0) && c.eq_e(cat.comp(p1, h), q1) {
                    count += 1;
                    if count > 1 {
                        return false;
                    }
                }
            }
            if count != 1 {
                return false;
            }
        }
    }
    true
}

/// Corner mode checks that (f, g) form a cospan; pullback mode additionally
/// checks that (p0, p1) complete it to a pullback square.
pub fn check_corner_pullback(
    cat: &FiniteCategory,
    p0: usize,
    p1: usize,
    f: usize,
    g: usize,
    mode: SquareMode,
) -> Result<StructureReport> {
    require_existing(cat, f, "arrow")?;
    require_existing(cat, g, "arrow")?;
    let c = cat.carrier();
    let mut report = StructureReport::new();
    report.tick();
    if !c.eq_e(cat.cod(f), cat.cod(g)) {
        report.violate("corner", &[f, g]);
        return Ok(report);
    }
    if mode == SquareMode::Corner {
        return Ok(report);
    }
    require_existing(cat, p0, "leg")?;
    require_existing(cat, p1, "leg")?;
    if !c.eq_e(cat.dom(p0), cat.dom(p1))
        || !c.eq_e(cat.cod(p0), cat.dom(f))
        || !c.eq_e(cat.cod(p1), cat.dom(g))
    {
        return Err(CatError::input(format!(
            "legs ({p0},{p1}) do not form a span over dom({f}) and dom({g})"
        )));
    }
    report.tick();
    if !c.eq_e(cat.comp(f, p0), cat.comp(g, p1)) {
        report.violate("square_commutes", &[p0, p1, f, g]);
    }
    let apex = cat.dom(p0);
    for q0 in arrows_with_cod(cat, cat.dom(f)) {
        for q1 in arrows_with_cod(cat, cat.dom(g)) {
            if !c.eq_e(cat.dom(q0), cat.dom(q1)) || !c.eq_e(cat.comp(f, q0), cat.comp(g, q1)) {
                continue;
            }
            report.tick();
            let mut count = 0;
            for h in arrows_with_cod(cat, apex) {
                if c.eq_e(cat.comp(p0, h), q0) && c.eq_e(cat.comp(p1, h), q1) {
                    count += 1;
                }
            }
            if count != 1 {
                report.violate("universal_property", &[q0, q1]);
            }
        }
    }
    Ok(report.sorted())
}

/// Exhaustive pullback search over leg pairs for the cospan (f, g).
pub fn find_pullback(
    cat: &FiniteCategory,
    f: usize,
    g: usize,
) -> Result<(Option<(usize, usize)>, StructureReport)> {
    require_existing(cat, f, "arrow")?;
    require_existing(cat, g, "arrow")?;
    let c = cat.carrier();
    if !c.eq_e(cat.cod(f), cat.cod(g)) {
        return Err(CatError::input(format!("({f},{g}) is not a corner")));
    }
    let mut report = StructureReport::new();
    let p0s = arrows_with_cod(cat, cat.dom(f));
    let p1s = arrows_with_cod(cat, cat.dom(g));
    for &p0 in &p0s {
        for &p1 in &p1s {
            report.tick();
            if !c.eq_e(cat.dom(p0), cat.dom(p1)) {
                continue;
            }
            if is_pullback(cat, p0, p1, f, g) {
                report.note(format!("pullback legs ({p0},{p1})"));
                return Ok((Some((p0, p1)), report));
            }
        }
    }
    report.note("no pullback found".to_string());
    Ok((None, report))
}

fn validate_diagram(cat: &FiniteCategory, d: &Diagram) -> Result<()> {
    let c = cat.carrier();
    for &n in &d.nodes {
        require_identity(cat, n, "diagram node")?;
    }
    for &(u, i, j) in &d.edges {
        if i >= d.nodes.len() || j >= d.nodes.len() {
            return Err(CatError::input(format!(
                "edge ({u},{i},{j}) references a missing node"
            )));
        }
        require_existing(cat, u, "diagram edge")?;
        if !c.eq_e(cat.dom(u), d.nodes[i]) || !c.eq_e(cat.cod(u), d.nodes[j]) {
            return Err(CatError::input(format!(
                "edge {u} does not run from node {i} to node {j}"
            )));
        }
    }
    Ok(())
}

fn cone_commutes(cat: &FiniteCategory, d: &Diagram, apex_legs: &[usize]) -> bool {
    let c = cat.carrier();
    d.edges
        .iter()
        .all(|&(u, i, j)| c.eq_e(cat.comp(u, apex_legs[i]), apex_legs[j]))
}

/// All commuting cones with the given apex, as leg tuples.
fn cones_with_apex(cat: &FiniteCategory, d: &Diagram, apex: usize) -> Vec<Vec<usize>> {
    let hom: Vec<Vec<usize>> = d
        .nodes
        .iter()
        .map(|&n| cat.hom_set(apex, n).unwrap())
        .collect();
    let mut out = Vec::new();
    let mut legs = vec![0usize; d.nodes.len()];
    fn rec(
        cat: &FiniteCategory,
        d: &Diagram,
        hom: &[Vec<usize>],
        legs: &mut Vec<usize>,
        pos: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == hom.len() {
            if cone_commutes(cat, d, legs) {
                out.push(legs.clone());
            }
            return;
        }
        for &l in &hom[pos] {
            legs[pos] = l;
            rec(cat, d, hom, legs, pos + 1, out);
        }
    }
    if d.nodes.is_empty() {
        out.push(Vec::new());
    } else {
        rec(cat, d, &hom, &mut legs, 0, &mut out);
    }
    out
}

/// Verify that the cone is a limit: its legs commute with every edge and
/// every other commuting cone factors through it exactly once.
pub fn check_limit(cat: &FiniteCategory, cone: &Cone, d: &Diagram) -> Result<StructureReport> {
    validate_diagram(cat, d)?;
    require_identity(cat, cone.apex, "cone apex")?;
    if cone.legs.len() != d.nodes.len() {
        return Err(CatError::input(format!(
            "cone has {} legs for {} nodes",
            cone.legs.len(),
            d.nodes.len()
        )));
    }
    let c = cat.carrier();
    for (i, &l) in cone.legs.iter().enumerate() {
        require_existing(cat, l, "cone leg")?;
        if !c.eq_e(cat.dom(l), cone.apex) || !c.eq_e(cat.cod(l), d.nodes[i]) {
            return Err(CatError::input(format!(
                "leg {l} is not a morphism apex -> node {i}"
            )));
        }
    }
    let mut report = StructureReport::new();
    for (k, &(u, i, j)) in d.edges.iter().enumerate() {
        report.tick();
        if !c.eq_e(cat.comp(u, cone.legs[i]), cone.legs[j]) {
            report.violate("cone_commutes", &[k, u]);
        }
    }
    for x in cat.identities() {
        for other in cones_with_apex(cat, d, x) {
            report.tick();
            let mut count = 0;
            for &h in &cat.hom_set(x, cone.apex).unwrap() {
                if (0..d.nodes.len()).all(|i| c.eq_e(cat.comp(cone.legs[i], h), other[i])) {
                    count += 1;
                }
            }
            if count != 1 {
                let mut witness = vec![x];
                witness.extend_from_slice(&other);
                report.violate("universal_property", &witness);
            }
        }
    }
    Ok(report.sorted())
}

/// The unique mediating arrow into the product for the span (f, g), if the
/// witness really is a product.
fn pair_into(
    cat: &FiniteCategory,
    w: &ProductWitness,
    f: usize,
    g: usize,
) -> Option<usize> {
    let c = cat.carrier();
    let mut found = None;
    for h in arrows_with_cod(cat, w.object) {
        if c.eq_e(cat.comp(w.proj1, h), f) && c.eq_e(cat.comp(w.proj2, h), g) {
            if found.is_some() {
                return None;
            }
            found = Some(h);
        }
    }
    found
}

/// Verify an exponential witness for Bᴬ over the objects X present in the
/// witness's product map: every f : X×A → B is eval·(h×id_A) for exactly one
/// h : X → Bᴬ, with h×id_A synthesized from the stored product witnesses.
pub fn check_exponential(
    cat: &FiniteCategory,
    w: &ExponentialWitness,
    a: usize,
    b: usize,
) -> Result<StructureReport> {
    require_identity(cat, a, "exponent")?;
    require_identity(cat, b, "base")?;
    require_identity(cat, w.expo, "exponential object")?;
    require_existing(cat, w.eval, "evaluation map")?;
    let c = cat.carrier();
    let pe = w.products.get(&w.expo).ok_or_else(|| {
        CatError::input(format!("missing product witness for pair ({}, {a})", w.expo))
    })?;
    let mut report = StructureReport::new();
    for (x, pw) in &w.products {
        require_identity(cat, *x, "product-map key")?;
        report.absorb(
            &format!("product_{x}"),
            check_product(cat, pw, *x, a)?,
        );
    }
    if !c.eq_e(cat.dom(w.eval), pe.object) || !c.eq_e(cat.cod(w.eval), b) {
        return Err(CatError::input(format!(
            "eval {} is not a morphism {} -> {b}",
            w.eval, pe.object
        )));
    }
    if !report.verdict() {
        // Product witnesses are broken; the currying check would be
        // meaningless.
        return Ok(report.sorted());
    }
    for (&x, pw) in &w.products {
        for &f in &cat.hom_set(pw.object, b).unwrap() {
            report.tick();
            let mut count = 0;
            for &h in &cat.hom_set(x, w.expo).unwrap() {
                // h×id_A : X×A → Bᴬ×A mediates (h·π₁, π₂).
                let Some(hxa) = pair_into(cat, pe, cat.comp(h, pw.proj1), pw.proj2) else {
                    continue;
                };
                if c.eq_e(cat.comp(w.eval, hxa), f) {
                    count += 1;
                }
            }
            if count != 1 {
                report.violate("universal_property", &[x, f]);
            }
        }
    }
    Ok(report.sorted())
}

/// The unique arrow X → terminal, assuming the terminal verdict holds.
fn bang(cat: &FiniteCategory, x: usize, terminal: usize) -> Result<usize> {
    cat.hom_set(x, terminal)?
        .first()
        .copied()
        .ok_or_else(|| CatError::input(format!("{terminal} is not terminal: hom({x},·) empty")))
}

/// All existing monomorphisms, ascending.
pub fn monomorphisms(cat: &FiniteCategory) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for f in 0..cat.size() {
        if cat.ex(f) && classify_mono_epi(cat, f)?.mono {
            out.push(f);
        }
    }
    Ok(out)
}

/// The classifying maps of a mono m under the witness: all χ : B → Ω making
/// (m, !_A) a pullback of (χ, truth). A valid classifier yields exactly one.
fn classifying_maps(
    cat: &FiniteCategory,
    w: &SubobjectClassifierWitness,
    m: usize,
) -> Result<Vec<usize>> {
    let c = cat.carrier();
    let b = cat.cod(m);
    let a = cat.dom(m);
    let bang_a = bang(cat, a, w.terminal)?;
    let mut out = Vec::new();
    for &chi in &cat.hom_set(b, w.omega)? {
        // Cheap commutation filter before the universal check.
        if c.eq_e(cat.comp(chi, m), cat.comp(w.truth, bang_a))
            && is_pullback(cat, m, bang_a, chi, w.truth)
        {
            out.push(chi);
        }
    }
    Ok(out)
}

/// For every mono m : A ↣ B, there must be exactly one χ_m : B → Ω making
/// (m, !_A) a pullback of (χ_m, truth).
pub fn check_subobject_classifier(
    cat: &FiniteCategory,
    w: &SubobjectClassifierWitness,
) -> Result<StructureReport> {
    require_identity(cat, w.omega, "omega")?;
    require_identity(cat, w.terminal, "terminal")?;
    require_existing(cat, w.truth, "truth")?;
    let c = cat.carrier();
    if !c.eq_e(cat.dom(w.truth), w.terminal) || !c.eq_e(cat.cod(w.truth), w.omega) {
        return Err(CatError::input(format!(
            "truth {} is not a morphism {} -> {}",
            w.truth, w.terminal, w.omega
        )));
    }
    if find_terminal(cat, ObjectPolarity::Terminal).0 != Some(w.terminal)
        && bang(cat, w.terminal, w.terminal).is_err()
    {
        return Err(CatError::input(format!("{} is not terminal", w.terminal)));
    }
    let mut report = StructureReport::new();
    for m in monomorphisms(cat)? {
        report.tick();
        match classifying_maps(cat, w, m)?.len() {
            1 => {}
            0 => report.violate("classifier_existence", &[m]),
            _ => report.violate("classifier_uniqueness", &[m]),
        }
    }
    Ok(report.sorted())
}

/// Search all (Ω, truth) pairs for a subobject classifier.
pub fn find_subobject_classifier(
    cat: &FiniteCategory,
) -> Result<(Option<SubobjectClassifierWitness>, StructureReport)> {
    let mut report = StructureReport::new();
    let Some(terminal) = find_terminal(cat, ObjectPolarity::Terminal).0 else {
        report.note("no terminal object; classifier impossible".to_string());
        return Ok((None, report));
    };
    let monos = monomorphisms(cat)?;
    for omega in cat.identities() {
        'truths: for &truth in &cat.hom_set(terminal, omega)? {
            report.tick();
            let w = SubobjectClassifierWitness {
                omega,
                truth,
                terminal,
            };
            for &m in &monos {
                if classifying_maps(cat, &w, m)?.len() != 1 {
                    continue 'truths;
                }
            }
            report.note(format!("classifier: omega {omega}, truth {truth}"));
            return Ok((Some(w), report));
        }
    }
    report.note("no subobject classifier".to_string());
    Ok((None, report))
}

/// Run the structure ladder: terminal, binary products (cartesian),
/// exponentials (cartesian closed; only attempted when cartesian),
/// subobject classifier, topos.
pub fn analyze_structure(cat: &FiniteCategory) -> Result<(StructureLadder, StructureReport)> {
    let mut report = StructureReport::new();
    let (terminal, tr) = find_terminal(cat, ObjectPolarity::Terminal);
    report.absorb("terminal", tr);
    let (products, pr) = find_binary_products(cat, Polarity::Product);
    let failing_pair = pr
        .violations
        .first()
        .map(|v| (v.witness[0], v.witness[1]));
    let has_binary_products = pr.verdict();
    report.absorb("products", pr);
    let cartesian = terminal.is_some() && has_binary_products;

    let has_exponentials = if cartesian {
        let mut all = true;
        'pairs: for &a in &cat.identities() {
            // Product witnesses X×A for the exponent a, shared per a.
            let pmap: BTreeMap<usize, ProductWitness> = cat
                .identities()
                .iter()
                .map(|&x| (x, products[&(x, a)].unwrap()))
                .collect();
            for &b in &cat.identities() {
                if find_exponential(cat, &pmap, a, b)?.is_none() {
                    report.note(format!("no exponential for (a={a}, b={b})"));
                    all = false;
                    break 'pairs;
                }
            }
        }
        Some(all)
    } else {
        None
    };

    let (classifier, cr) = find_subobject_classifier(cat)?;
    report.absorb("classifier", cr);
    let ladder = StructureLadder {
        has_terminal: terminal.is_some(),
        terminal,
        has_binary_products,
        failing_pair,
        has_exponentials,
        has_subobject_classifier: classifier.is_some(),
        omega: classifier.map(|w| w.omega),
        truth: classifier.map(|w| w.truth),
        is_topos: cartesian && has_exponentials == Some(true) && classifier.is_some(),
    };
    report.note(format!(
        "ladder: terminal={:?} products={} exponentials={:?} classifier={:?} topos={}",
        ladder.terminal,
        ladder.has_binary_products,
        ladder.has_exponentials,
        ladder.omega,
        ladder.is_topos
    ));
    Ok((ladder, report))
}

/// Search for an exponential Bᴬ given product witnesses X×A per object X.
pub fn find_exponential(
    cat: &FiniteCategory,
    products: &BTreeMap<usize, ProductWitness>,
    a: usize,
    b: usize,
) -> Result<Option<ExponentialWitness>> {
    for &expo in &cat.identities() {
        let Some(pe) = products.get(&expo) else {
            continue;
        };
        for &eval in &cat.hom_set(pe.object, b)? {
            let w = ExponentialWitness {
                expo,
                eval,
                products: products.clone(),
            };
            if check_exponential(cat, &w, a, b)?.verdict() {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Check that every mono is an equalizer. When a subobject classifier
/// witness is supplied, the candidate pair (χ_m, truth·!_B) is tried first;
/// otherwise (and as a fallback) all parallel pairs out of cod m are
/// searched.
pub fn monos_are_equalizers(
    cat: &FiniteCategory,
    classifier: Option<&SubobjectClassifierWitness>,
) -> Result<StructureReport> {
    let mut report = StructureReport::new();
    let monos = monomorphisms(cat)?;
    report.note(format!("{} monomorphisms", monos.len()));
    for &m in &monos {
        report.tick();
        let b = cat.cod(m);
        let mut ok = false;
        if let Some(w) = classifier {
            if let (Ok(chis), Ok(bang_b)) = (classifying_maps(cat, w, m), bang(cat, b, w.terminal))
            {
                let g = cat.comp(w.truth, bang_b);
                ok = chis.first().is_some_and(|&chi| is_equalizer(cat, m, chi, g));
            }
        }
        if !ok {
            let c = cat.carrier();
            'search: for f in arrows_with_cod_from(cat, b) {
                for g in arrows_with_cod_from(cat, b) {
                    if c.eq_e(cat.cod(f), cat.cod(g)) && is_equalizer(cat, m, f, g) {
                        ok = true;
                        break 'search;
                    }
                }
            }
        }
        if !ok {
            report.violate("not_equalizer", &[m]);
        }
    }
    Ok(report.sorted())
}
