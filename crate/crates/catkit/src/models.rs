//! Constructors for the stock example categories and SMCC models: one-object
//! monoid categories, poset/lattice categories and their Heyting SMCC
//! structure, skeletal finite-set categories, discrete group models, and a
//! small category-of-categories.
//!
//! Every constructor output passes its corresponding checker; the test suites
//! assert this as the module's master property.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};
use crate::functor_nat::FunctorMap;
use crate::kernel::Carrier;
use crate::monoidal::{BraidingData, ClosedStructure, MonoidalStructure, SmccModel};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A finite partial order on labelled elements, validated at construction.
/// Meets/joins are computed on demand and may fail (the order need not be a
/// lattice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    labels: Vec<u64>,
    /// Row-major k×k: leq[i*k + j] = (element i ≤ element j).
    leq: Vec<bool>,
}

impl LatticeSpec {
    pub fn new(labels: Vec<u64>, rel: impl Fn(u64, u64) -> bool) -> Result<Self> {
        let k = labels.len();
        if k == 0 {
            return Err(CatError::input("order must have at least one element"));
        }
        for i in 0..k {
            for j in i + 1..k {
                if labels[i] == labels[j] {
                    return Err(CatError::input(format!("duplicate label {}", labels[i])));
                }
            }
        }
        let mut leq = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                leq[i * k + j] = rel(labels[i], labels[j]);
            }
        }
        let spec = LatticeSpec { labels, leq };
        for i in 0..k {
            if !spec.le(i, i) {
                return Err(CatError::input(format!(
                    "order not reflexive at {}",
                    spec.labels[i]
                )));
            }
            for j in 0..k {
                if i != j && spec.le(i, j) && spec.le(j, i) {
                    return Err(CatError::input(format!(
                        "order not antisymmetric at ({}, {})",
                        spec.labels[i], spec.labels[j]
                    )));
                }
                for l in 0..k {
                    if spec.le(i, j) && spec.le(j, l) && !spec.le(i, l) {
                        return Err(CatError::input(format!(
                            "order not transitive at ({}, {}, {})",
                            spec.labels[i], spec.labels[j], spec.labels[l]
                        )));
                    }
                }
            }
        }
        Ok(spec)
    }

    /// Divisors of n ordered by divisibility.
    pub fn divisors(n: u64) -> LatticeSpec {
        let labels: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        LatticeSpec::new(labels, |a, b| b % a == 0).expect("divisibility is a partial order")
    }

    /// The Boolean algebra on k generators: subsets of {0..k} as bitmasks
    /// ordered by inclusion.
    pub fn boolean(k: u32) -> LatticeSpec {
        let labels: Vec<u64> = (0..1u64 << k).collect();
        LatticeSpec::new(labels, |a, b| a & b == a).expect("inclusion is a partial order")
    }

    /// The diamond M₃: bottom 0, three incomparable middles 1,2,3, top 4.
    /// A (modular, non-distributive) lattice; its residuals do not exist.
    pub fn diamond_m3() -> LatticeSpec {
        LatticeSpec::new(vec![0, 1, 2, 3, 4], |a, b| a == b || a == 0 || b == 4)
            .expect("M3 is a partial order")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> u64 {
        self.labels[i]
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size() + j]
    }

    fn extremum(&self, candidates: &[usize], lower: bool, what: &str) -> Result<usize> {
        // The greatest (lower=true: among lower bounds) or least element of
        // `candidates`.
        let found = candidates.iter().copied().find(|&m| {
            candidates
                .iter()
                .all(|&x| if lower { self.le(x, m) } else { self.le(m, x) })
        });
        found.ok_or_else(|| {
            CatError::input(format!(
                "{what} does not exist (candidates {:?})",
                candidates.iter().map(|&x| self.labels[x]).collect::<Vec<_>>()
            ))
        })
    }

    /// Greatest lower bound of elements i and j.
    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        let lb: Vec<usize> = (0..self.size())
            .filter(|&x| self.le(x, i) && self.le(x, j))
            .collect();
        self.extremum(
            &lb,
            true,
            &format!("meet of {} and {}", self.labels[i], self.labels[j]),
        )
    }

    /// Least upper bound of elements i and j.
    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        let ub: Vec<usize> = (0..self.size())
            .filter(|&x| self.le(i, x) && self.le(j, x))
            .collect();
        self.extremum(
            &ub,
            false,
            &format!("join of {} and {}", self.labels[i], self.labels[j]),
        )
    }

    pub fn top(&self) -> Result<usize> {
        self.extremum(&(0..self.size()).collect::<Vec<_>>(), true, "top")
    }

    pub fn bottom(&self) -> Result<usize> {
        self.extremum(&(0..self.size()).collect::<Vec<_>>(), false, "bottom")
    }

    /// Relative pseudo-complement a → c: the largest x with x∧a ≤ c.
    /// Exists for every pair exactly when the lattice is a Heyting algebra.
    pub fn residual(&self, a: usize, c: usize) -> Result<usize> {
        let admissible: Vec<usize> = (0..self.size())
            .filter(|&x| {
                self.meet(x, a)
                    .map(|m| self.le(m, c))
                    .unwrap_or(false)
            })
            .collect();
        let mut r = *admissible.first().ok_or_else(|| {
            CatError::Model(format!(
                "residual {} -> {} has no admissible elements",
                self.labels[a], self.labels[c]
            ))
        })?;
        for &x in &admissible[1..] {
            r = self.join(r, x)?;
        }
        if admissible.contains(&r) {
            Ok(r)
        } else {
            Err(CatError::Model(format!(
                "residual {} -> {} undefined: join of admissible elements is {} with {}∧{} ≰ {}",
                self.labels[a],
                self.labels[c],
                self.labels[r],
                self.labels[r],
                self.labels[a],
                self.labels[c]
            )))
        }
    }
}

/// Dense arrow indexing for a poset category: one arrow per related pair,
/// enumerated by (source, target) lex order, undefined element last.
struct PosetIndex {
    pairs: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl PosetIndex {
    fn new(spec: &LatticeSpec) -> PosetIndex {
        let k = spec.size();
        let mut pairs = Vec::new();
        let mut index = BTreeMap::new();
        for i in 0..k {
            for j in 0..k {
                if spec.le(i, j) {
                    index.insert((i, j), pairs.len());
                    pairs.push((i, j));
                }
            }
        }
        PosetIndex { pairs, index }
    }

    fn undefined(&self) -> usize {
        self.pairs.len()
    }

    fn arrow(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }
}

/// The thin category of a partial order: one morphism per related pair.
pub fn poset_category(spec: &LatticeSpec) -> Result<FiniteCategory> {
    let idx = PosetIndex::new(spec);
    let n = idx.undefined() + 1;
    let u = idx.undefined();
    let carrier = Carrier::from_existing_indices(n, &(0..u).collect::<Vec<_>>())?;
    let mut dom = vec![u; n];
    let mut cod = vec![u; n];
    for (p, &(i, j)) in idx.pairs.iter().enumerate() {
        dom[p] = idx.arrow(i, i).unwrap();
        cod[p] = idx.arrow(j, j).unwrap();
    }
    let mut comp = vec![u; n * n];
    for (x, &(a, b)) in idx.pairs.iter().enumerate() {
        for (y, &(c, d)) in idx.pairs.iter().enumerate() {
            // x·y = "x after y": defined iff dom x = cod y, i.e. a = d.
            if a == d {
                comp[x * n + y] = idx.arrow(c, b).expect("transitivity");
            }
        }
    }
    FiniteCategory::from_flat(carrier, dom, cod, comp)
}

/// The (source label, target label) of an arrow in a poset category, or None
/// for the undefined element.
pub fn poset_object_of(spec: &LatticeSpec, element: usize) -> Option<(u64, u64)> {
    let idx = PosetIndex::new(spec);
    idx.pairs
        .get(element)
        .map(|&(i, j)| (spec.label(i), spec.label(j)))
}

/// The arrow index for labels a ≤ b in a poset category, if the pair is
/// related.
pub fn poset_arrow(spec: &LatticeSpec, a: u64, b: u64) -> Option<usize> {
    let i = spec.index_of(a)?;
    let j = spec.index_of(b)?;
    PosetIndex::new(spec).arrow(i, j)
}

/// Lift a map on lattice labels to a functor candidate between poset
/// categories. Arrows whose image pair is unrelated in the target map to the
/// undefined element, so non-monotone maps yield tables that fail the
/// functor check rather than an error here.
pub fn poset_functor_from_object_map(
    source: &Arc<FiniteCategory>,
    src_spec: &LatticeSpec,
    target: &Arc<FiniteCategory>,
    tgt_spec: &LatticeSpec,
    obj_map: impl Fn(u64) -> u64,
) -> Result<FunctorMap> {
    let src_idx = PosetIndex::new(src_spec);
    let tgt_idx = PosetIndex::new(tgt_spec);
    if source.size() != src_idx.undefined() + 1 || target.size() != tgt_idx.undefined() + 1 {
        return Err(CatError::input(
            "category size does not match its order spec",
        ));
    }
    let mut image = Vec::with_capacity(src_spec.size());
    for i in 0..src_spec.size() {
        let lbl = obj_map(src_spec.label(i));
        image.push(tgt_spec.index_of(lbl).ok_or_else(|| {
            CatError::input(format!("label {lbl} is not an element of the target order"))
        })?);
    }
    let mut map = vec![tgt_idx.undefined(); source.size()];
    for (p, &(i, j)) in src_idx.pairs.iter().enumerate() {
        if let Some(arrow) = tgt_idx.arrow(image[i], image[j]) {
            map[p] = arrow;
        }
    }
    FunctorMap::new(Arc::clone(source), Arc::clone(target), map)
}

/// One-object category of a monoid given by its multiplication table.
/// Elements 0..k are the monoid elements, element k is undefined.
pub fn monoid_category(table: &[Vec<usize>], unit: usize) -> Result<FiniteCategory> {
    let k = table.len();
    if k == 0 {
        return Err(CatError::input("monoid must be non-empty"));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(CatError::input(format!(
                "multiplication table row {i} has length {} (expected {k})",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= k) {
            return Err(CatError::input(format!("table entry {bad} out of range")));
        }
    }
    if unit >= k {
        return Err(CatError::input(format!("unit index {unit} out of range")));
    }
    for x in 0..k {
        if table[unit][x] != x || table[x][unit] != x {
            return Err(CatError::input(format!("{unit} is not a unit: fails at {x}")));
        }
    }
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                if table[x][table[y][z]] != table[table[x][y]][z] {
                    return Err(CatError::input(format!(
                        "multiplication not associative at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    let n = k + 1;
    let carrier = Carrier::from_existing_indices(n, &(0..k).collect::<Vec<_>>())?;
    let dom = (0..n).map(|x| if x < k { unit } else { k }).collect();
    let cod = (0..n).map(|x| if x < k { unit } else { k }).collect();
    let mut comp = vec![k; n * n];
    for x in 0..k {
        for y in 0..k {
            comp[x * n + y] = table[x][y];
        }
    }
    FiniteCategory::from_flat(carrier, dom, cod, comp)
}

// --- skeletal finite sets -------------------------------------------------

/// Number of functions m → n, with 0⁰ = 1.
fn fun_count(m: usize, n: usize) -> usize {
    n.pow(m as u32)
}

fn finset_blocks(max_n: usize) -> Vec<((usize, usize), usize)> {
    // ((m, n), block start) in (m, n) lex order.
    let mut blocks = Vec::new();
    let mut start = 0;
    for m in 0..=max_n {
        for n in 0..=max_n {
            blocks.push(((m, n), start));
            start += fun_count(m, n);
        }
    }
    blocks
}

fn finset_total(max_n: usize) -> usize {
    (0..=max_n)
        .flat_map(|m| (0..=max_n).map(move |n| fun_count(m, n)))
        .sum()
}

/// Canonical index of the function m → n with the given value tuple:
/// block start of (m,n) plus Σ f(i)·nⁱ (little-endian mixed radix).
pub fn finset_encode(max_n: usize, m: usize, n: usize, f: &[usize]) -> Result<usize> {
    if m > max_n || n > max_n {
        return Err(CatError::input(format!(
            "objects ({m},{n}) out of range 0..={max_n}"
        )));
    }
    if f.len() != m {
        return Err(CatError::input(format!(
            "function table has {} entries (expected {m})",
            f.len()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= n) {
        return Err(CatError::input(format!("function value {bad} out of range 0..{n}")));
    }
    let start = finset_blocks(max_n)
        .iter()
        .find(|&&((bm, bn), _)| (bm, bn) == (m, n))
        .map(|&(_, s)| s)
        .unwrap();
    let offset: usize = f.iter().rev().fold(0, |acc, &v| acc * n + v);
    Ok(start + offset)
}

/// Decode an element index into (m, n, value tuple); None for the undefined
/// element.
pub fn finset_decode(max_n: usize, x: usize) -> Option<(usize, usize, Vec<usize>)> {
    for ((m, n), start) in finset_blocks(max_n) {
        let count = fun_count(m, n);
        if x < start + count {
            let mut off = x - start;
            let mut f = Vec::with_capacity(m);
            for _ in 0..m {
                f.push(off % n);
                off /= n;
            }
            return Some((m, n, f));
        }
    }
    None
}

/// The identity element on the object (set of size) m.
pub fn finset_object(max_n: usize, m: usize) -> Result<usize> {
    finset_encode(max_n, m, m, &(0..m).collect::<Vec<_>>())
}

/// Skeletal category of finite sets: one object per cardinality 0..=maxN,
/// all functions between them as morphisms, plus one undefined element.
pub fn skeletal_finset(max_n: usize, max_size: usize) -> Result<FiniteCategory> {
    let total = finset_total(max_n) + 1;
    if total > max_size {
        return Err(CatError::Resource(format!(
            "skeletal finite-set category up to {max_n} has {total} elements, exceeding limit {max_size}"
        )));
    }
    let u = total - 1;
    let carrier = Carrier::from_existing_indices(total, &(0..u).collect::<Vec<_>>())?;
    let decoded: Vec<(usize, usize, Vec<usize>)> = (0..u)
        .map(|x| finset_decode(max_n, x).unwrap())
        .collect();
    let mut dom = vec![u; total];
    let mut cod = vec![u; total];
    for (x, (m, n, _)) in decoded.iter().enumerate() {
        dom[x] = finset_object(max_n, *m)?;
        cod[x] = finset_object(max_n, *n)?;
    }
    let mut comp = vec![u; total * total];
    for (x, (mx, nx, fx)) in decoded.iter().enumerate() {
        for (y, (my, ny, fy)) in decoded.iter().enumerate() {
            // x·y defined iff dom x = cod y, i.e. mx = ny.
            if mx == ny {
                let g: Vec<usize> = fy.iter().map(|&i| fx[i]).collect();
                comp[x * total + y] = finset_encode(max_n, *my, *nx, &g)?;
            }
        }
    }
    FiniteCategory::from_flat(carrier, dom, cod, comp)
}

// --- SMCC models ----------------------------------------------------------

/// Heyting-algebra SMCC on a distributive lattice: base is the poset
/// category, ⊗ = meet, e = top, all structural isos are the unique arrows,
/// ⊸ = relative pseudo-complement. Fails with a model error on
/// non-distributive lattices (the residual does not exist).
pub fn heyting_smcc(spec: &LatticeSpec) -> Result<SmccModel> {
    let idx = PosetIndex::new(spec);
    let base = Arc::new(poset_category(spec)?);
    let n = base.size();
    let u = idx.undefined();
    let top = spec.top()?;

    let mut meet = vec![vec![0usize; spec.size()]; spec.size()];
    let mut res = vec![vec![0usize; spec.size()]; spec.size()];
    for i in 0..spec.size() {
        for j in 0..spec.size() {
            meet[i][j] = spec.meet(i, j)?;
            res[i][j] = spec.residual(i, j)?;
        }
    }

    let arrow = |i: usize, j: usize| idx.arrow(i, j).expect("order-respecting arrow");
    let mut tensor = vec![u; n * n];
    let mut impl_table = vec![u; n * n];
    for (x, &(a, b)) in idx.pairs.iter().enumerate() {
        for (y, &(c, d)) in idx.pairs.iter().enumerate() {
            tensor[x * n + y] = arrow(meet[a][c], meet[b][d]);
            // ⊸ is contravariant in its first argument:
            // x⊸y : (cod x → dom y) → (dom x → cod y).
            impl_table[x * n + y] = arrow(res[b][c], res[a][d]);
        }
    }

    let ids = base.identities();
    let obj_of = |id_elem: usize| idx.pairs[id_elem].0;
    let t = |x: usize, y: usize| tensor[x * n + y];
    let mut alpha = BTreeMap::new();
    let mut lam = BTreeMap::new();
    let mut rho = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    for &a in &ids {
        // e⊗A = A⊗e = A since top is the unit of meet.
        lam.insert(a, a);
        rho.insert(a, a);
        for &b in &ids {
            gamma.insert((a, b), t(a, b));
            for &c in &ids {
                alpha.insert((a, b, c), t(t(a, b), c));
            }
        }
    }

    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for &a_id in &ids {
        let a = obj_of(a_id);
        for &b_id in &ids {
            let b = obj_of(b_id);
            let ab = meet[a][b];
            for (f, &(df, cf)) in idx.pairs.iter().enumerate() {
                if df == ab {
                    phi.insert((a_id, b_id, f), arrow(b, res[a][cf]));
                }
            }
        }
        for &c_id in &ids {
            let c = obj_of(c_id);
            let hom = res[a][c];
            for (g, &(dg, cg)) in idx.pairs.iter().enumerate() {
                if cg == hom {
                    psi.insert((a_id, c_id, g), arrow(meet[a][dg], c));
                }
            }
        }
    }

    Ok(SmccModel {
        monoidal: MonoidalStructure {
            base,
            tensor,
            unit: arrow(top, top),
            alpha_inv: alpha.clone(),
            alpha,
            lam_inv: lam.clone(),
            lam,
            rho_inv: rho.clone(),
            rho,
        },
        braiding: BraidingData {
            gamma_inv: gamma.iter().map(|(&(a, b), &v)| ((b, a), v)).collect(),
            gamma,
        },
        closed: ClosedStructure {
            impl_table,
            phi,
            psi,
        },
    })
}

/// Discrete SMCC on ℤ/n: n identity objects plus undefined, ⊗ = addition
/// mod n, e = 0, all structural isos identities, A⊸C = C−A mod n.
pub fn group_smcc(n: usize) -> Result<SmccModel> {
    if n == 0 {
        return Err(CatError::input("modulus must be >= 1"));
    }
    let size = n + 1;
    let u = n;
    let carrier = Carrier::from_existing_indices(size, &(0..n).collect::<Vec<_>>())?;
    let dom: Vec<usize> = (0..size).collect();
    let cod = dom.clone();
    let mut comp = vec![u; size * size];
    for x in 0..n {
        comp[x * size + x] = x;
    }
    let base = Arc::new(FiniteCategory::from_flat(carrier, dom, cod, comp)?);

    let mut tensor = vec![u; size * size];
    let mut impl_table = vec![u; size * size];
    for x in 0..n {
        for y in 0..n {
            tensor[x * size + y] = (x + y) % n;
            impl_table[x * size + y] = (n + y - x) % n;
        }
    }
    let t = |x: usize, y: usize| (x + y) % n;
    let mut alpha = BTreeMap::new();
    let mut lam = BTreeMap::new();
    let mut rho = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for a in 0..n {
        lam.insert(a, a);
        rho.insert(a, a);
        for b in 0..n {
            gamma.insert((a, b), t(a, b));
            for c in 0..n {
                alpha.insert((a, b, c), t(t(a, b), c));
            }
            // The only f with dom f = a⊗b is id_{a+b}; Φ(a,b,id) = id_b.
            phi.insert((a, b, t(a, b)), b);
            // The only g with cod g = a⊸c is id_{c-a}; Ψ(a,c,id) = id_c.
            psi.insert((a, b, (n + b - a) % n), b);
        }
    }

    Ok(SmccModel {
        monoidal: MonoidalStructure {
            base,
            tensor,
            unit: 0,
            alpha_inv: alpha.clone(),
            alpha,
            lam_inv: lam.clone(),
            lam,
            rho_inv: rho.clone(),
            rho,
        },
        braiding: BraidingData {
            gamma_inv: gamma.clone(),
            gamma,
        },
        closed: ClosedStructure {
            impl_table,
            phi,
            psi,
        },
    })
}

// --- category of categories -----------------------------------------------

/// A finite category of categories: objects are the given categories,
/// morphisms are all total maps passing the functor check (with non-existing
/// elements canonically mapped to the target's designated undefined element,
/// so the morphism set is closed under composition).
///
/// Enumeration is exponential, so inputs are capped at 4 existing morphisms
/// each; the construction exists to validate the concept, not to scale.
pub fn cat_of_cats(cats: &[FiniteCategory], max_size: usize) -> Result<FiniteCategory> {
    if cats.is_empty() {
        return Err(CatError::input("need at least one category"));
    }
    let arcs: Vec<Arc<FiniteCategory>> = cats.iter().map(|c| Arc::new(c.clone())).collect();
    for (i, cat) in arcs.iter().enumerate() {
        if !cat.check().verdict() {
            return Err(CatError::input(format!("input category {i} fails the axioms")));
        }
        if cat.carrier().existing_indices().len() > 4 {
            return Err(CatError::input(format!(
                "input category {i} has more than 4 existing morphisms"
            )));
        }
    }

    // key: (source index, target index, total map) → morphism index.
    let mut functors: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (i, src) in arcs.iter().enumerate() {
        let src_existing = src.carrier().existing_indices();
        for (j, tgt) in arcs.iter().enumerate() {
            let tgt_existing = tgt.carrier().existing_indices();
            let undef = tgt.undefined_element();
            // Assign each existing source element an existing target element;
            // non-existing elements go to the canonical undefined element.
            let mut assignment = vec![0usize; src_existing.len()];
            loop {
                let mut map = vec![undef; src.size()];
                for (slot, &x) in src_existing.iter().enumerate() {
                    map[x] = tgt_existing[assignment[slot]];
                }
                let f = FunctorMap::new(Arc::clone(src), Arc::clone(tgt), map.clone())?;
                if f.check().verdict() {
                    functors.push((i, j, map));
                    if functors.len() + 1 > max_size {
                        return Err(CatError::Resource(format!(
                            "category of categories exceeds limit {max_size}"
                        )));
                    }
                }
                // Next assignment in mixed radix; empty source has exactly
                // the one all-undefined map.
                if src_existing.is_empty() || tgt_existing.is_empty() {
                    break;
                }
                let mut pos = 0;
                loop {
                    assignment[pos] += 1;
                    if assignment[pos] < tgt_existing.len() {
                        break;
                    }
                    assignment[pos] = 0;
                    pos += 1;
                    if pos == assignment.len() {
                        break;
                    }
                }
                if pos == assignment.len() {
                    break;
                }
            }
        }
    }

    let total = functors.len() + 1;
    let u = total - 1;
    let index: BTreeMap<(usize, usize, Vec<usize>), usize> = functors
        .iter()
        .enumerate()
        .map(|(x, f)| (f.clone(), x))
        .collect();
    let id_of = |i: usize| -> usize {
        let mut map: Vec<usize> = (0..arcs[i].size()).collect();
        let undef = arcs[i].undefined_element();
        for x in 0..arcs[i].size() {
            if !arcs[i].ex(x) {
                map[x] = undef;
            }
        }
        index[&(i, i, map)]
    };
    let carrier = Carrier::from_existing_indices(total, &(0..u).collect::<Vec<_>>())?;
    let mut dom = vec![u; total];
    let mut cod = vec![u; total];
    for (x, &(i, j, _)) in functors.iter().enumerate() {
        dom[x] = id_of(i);
        cod[x] = id_of(j);
    }
    let mut comp = vec![u; total * total];
    for (x, (jx, kx, fx)) in functors.iter().enumerate() {
        for (y, (iy, jy, fy)) in functors.iter().enumerate() {
            // x·y defined iff dom x = cod y, i.e. the middle object matches.
            if jx == jy {
                let map: Vec<usize> = fy.iter().map(|&e| fx[e]).collect();
                comp[x * total + y] = index[&(*iy, *kx, map)];
            }
        }
    }
    FiniteCategory::from_flat(carrier, dom, cod, comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_MAX_SIZE;

    #[test]
    fn divisor_lattice_has_expected_order() {
        let spec = LatticeSpec::divisors(12);
        assert_eq!(spec.size(), 6);
        assert_eq!(spec.label(spec.top().unwrap()), 12);
        assert_eq!(spec.label(spec.bottom().unwrap()), 1);
        let i4 = spec.index_of(4).unwrap();
        let i6 = spec.index_of(6).unwrap();
        assert_eq!(spec.label(spec.meet(i4, i6).unwrap()), 2);
        assert_eq!(spec.label(spec.join(i4, i6).unwrap()), 12);
    }

    #[test]
    fn order_axiom_violations_are_input_errors() {
        assert!(LatticeSpec::new(vec![0, 1], |_, _| false).is_err()); // not reflexive
        assert!(LatticeSpec::new(vec![0, 1], |_, _| true).is_err()); // not antisymmetric
        assert!(LatticeSpec::new(vec![0, 0], |a, b| a <= b).is_err()); // duplicate
    }

    #[test]
    fn poset_category_is_thin_and_valid() {
        let spec = LatticeSpec::divisors(12);
        let cat = poset_category(&spec).unwrap();
        assert!(cat.check().verdict());
        assert_eq!(cat.identities().len(), 6);
        for &a in &cat.identities() {
            for &b in &cat.identities() {
                assert!(cat.hom_set(a, b).unwrap().len() <= 1);
            }
        }
    }

    #[test]
    fn discrete_order_has_only_identities() {
        let spec = LatticeSpec::new(vec![10, 20, 30], |a, b| a == b).unwrap();
        let cat = poset_category(&spec).unwrap();
        assert_eq!(cat.identities().len(), 3);
        assert_eq!(cat.carrier().existing_indices().len(), 3);
    }

    #[test]
    fn monoid_category_validation() {
        // Left-zero semigroup has no unit.
        assert!(monoid_category(&[vec![0, 0], vec![1, 1]], 0).is_err());
        // Non-associative magma.
        assert!(monoid_category(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]], 0).is_err());
        // Trivial monoid: one object, one arrow.
        let triv = monoid_category(&[vec![0]], 0).unwrap();
        assert!(triv.check().verdict());
        assert_eq!(triv.identities(), vec![0]);
        assert_eq!(triv.size(), 2);
    }

    #[test]
    fn finset_counts_and_identities() {
        let cat = skeletal_finset(4, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(cat.carrier().existing_indices().len(), 499);
        assert_eq!(cat.identities().len(), 5);
        assert!(cat.check().verdict());
        // |hom(2,3)| = 3² = 9.
        let o2 = finset_object(4, 2).unwrap();
        let o3 = finset_object(4, 3).unwrap();
        assert_eq!(cat.hom_set(o2, o3).unwrap().len(), 9);
        // Objects 0..2 variant has 3 identities.
        let small = skeletal_finset(2, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(small.identities().len(), 3);
    }

    #[test]
    fn finset_zero_is_single_identity() {
        let cat = skeletal_finset(0, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(cat.carrier().existing_indices().len(), 1);
        assert!(cat.check().verdict());
    }

    #[test]
    fn finset_encode_decode_round_trip() {
        for x in 0..finset_total(3) {
            let (m, n, f) = finset_decode(3, x).unwrap();
            assert_eq!(finset_encode(3, m, n, &f).unwrap(), x);
        }
        assert!(finset_decode(3, finset_total(3)).is_none());
        assert!(finset_encode(3, 2, 2, &[0]).is_err());
        assert!(finset_encode(3, 5, 1, &[0; 5]).is_err());
    }

    #[test]
    fn finset_composition_is_function_composition() {
        let cat = skeletal_finset(3, DEFAULT_MAX_SIZE).unwrap();
        let f = finset_encode(3, 2, 3, &[1, 2]).unwrap();
        let g = finset_encode(3, 3, 2, &[0, 1, 1]).unwrap();
        // g∘f : 2 → 2, i ↦ g(f(i)) = [1, 1].
        assert_eq!(cat.comp(g, f), finset_encode(3, 2, 2, &[1, 1]).unwrap());
        // f·g is also defined (dom f = cod g = object 2... no: dom f = 2,
        // cod g = 2): f∘g : 3 → 3, i ↦ f(g(i)) = [1, 2, 2].
        assert_eq!(cat.comp(f, g), finset_encode(3, 3, 3, &[1, 2, 2]).unwrap());
    }

    #[test]
    fn finset_cap_is_resource_error() {
        match skeletal_finset(4, 100) {
            Err(CatError::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn heyting_m3_fails_construction() {
        match heyting_smcc(&LatticeSpec::diamond_m3()) {
            Err(CatError::Model(msg)) => assert!(msg.contains("residual")),
            other => panic!("expected model error, got {other:?}"),
        }
    }

    #[test]
    fn heyting_adjunction_holds_exhaustively() {
        for spec in [LatticeSpec::boolean(2), LatticeSpec::divisors(12)] {
            for a in 0..spec.size() {
                for b in 0..spec.size() {
                    for c in 0..spec.size() {
                        let lhs = spec.le(spec.meet(a, b).unwrap(), c);
                        let rhs = spec.le(b, spec.residual(a, c).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn stock_smcc_bases_pass_axioms() {
        let bool4 = heyting_smcc(&LatticeSpec::boolean(2)).unwrap();
        assert!(bool4.base().check().verdict());
        let z3 = group_smcc(3).unwrap();
        assert!(z3.base().check().verdict());
        assert_eq!(z3.base().identities().len(), 3);
    }

    #[test]
    fn trivial_cat_of_cats() {
        let triv = monoid_category(&[vec![0]], 0).unwrap();
        let cc = cat_of_cats(&[triv], DEFAULT_MAX_SIZE).unwrap();
        assert!(cc.check().verdict());
        assert_eq!(cc.carrier().existing_indices().len(), 1);
        assert_eq!(cc.identities().len(), 1);
    }

    #[test]
    fn functor_count_trivial_to_discrete() {
        let triv = monoid_category(&[vec![0]], 0).unwrap();
        let spec = LatticeSpec::new(vec![0, 1], |a, b| a == b).unwrap();
        let disc = poset_category(&spec).unwrap();
        let cc = cat_of_cats(&[triv.clone(), disc.clone()], DEFAULT_MAX_SIZE).unwrap();
        assert!(cc.check().verdict());
        // Identity functors are exactly the identities of the result.
        assert_eq!(cc.identities().len(), 2);
        // hom(trivial, discrete) = 2: pick either object.
        let ids = cc.identities();
        // Determine which identity is which by counting endofunctors:
        // trivial has 1, the 2-object discrete category has 4 maps of which
        // the functors are the 4 object maps... enumerate via hom sets.
        let h01 = cc.hom_set(ids[0], ids[1]).unwrap().len();
        let h10 = cc.hom_set(ids[1], ids[0]).unwrap().len();
        assert_eq!(h01.max(h10), 2); // trivial → discrete
        assert_eq!(h01.min(h10), 1); // discrete → trivial (collapse)
    }

    #[test]
    fn cat_of_cats_rejects_large_inputs() {
        let cat = poset_category(&LatticeSpec::divisors(12)).unwrap();
        assert!(cat_of_cats(&[cat], DEFAULT_MAX_SIZE).is_err());
    }

    #[test]
    fn gcd_lcm_oracle() {
        assert_eq!(gcd(12, 6), 6);
        assert_eq!(gcd(4, 6), 2);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(0, 5), 0);
    }
}
