//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see them). Criteria combine
//! stock-model verdicts, independent oracles, and seeded mutation suites.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use catkit::category::FiniteCategory;
use catkit::constructions::{
    analyze_structure, check_product, monomorphisms, monos_are_equalizers, Polarity,
    ProductWitness, SubobjectClassifierWitness,
};
use catkit::imll::{
    compile_proof, dom_cod_check, evaluate_term, parse_proof, Environment, MorphismTerm,
};
use catkit::io::CategoryFile;
use catkit::kernel::Carrier;
use catkit::models::{self, LatticeSpec};
use catkit::monoidal::{
    check_right_closed, derive_eval, derive_right_closed, double_negation, check_dn_naturality,
    SmccModel,
};

fn criterion(name: &str, limit: Duration, body: impl FnOnce() + UnwindSafe) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    println!(
        "acceptance {name}: {} ({elapsed:.2?})",
        if outcome.is_ok() { "pass" } else { "fail" }
    );
    if let Err(p) = outcome {
        resume_unwind(p);
    }
    assert!(
        elapsed < limit,
        "{name} took {elapsed:.2?}, limit {limit:.2?}"
    );
}

fn z2() -> FiniteCategory {
    models::monoid_category(&[vec![0, 1], vec![1, 0]], 0).unwrap()
}

fn divisors12() -> (LatticeSpec, FiniteCategory) {
    let spec = LatticeSpec::divisors(12);
    let cat = models::poset_category(&spec).unwrap();
    (spec, cat)
}

fn finset4() -> FiniteCategory {
    models::skeletal_finset(4, 600).unwrap()
}

fn tiny_cat_of_cats() -> FiniteCategory {
    let c1 = models::monoid_category(&[vec![0]], 0).unwrap();
    let c2 = models::poset_category(&LatticeSpec::divisors(2)).unwrap();
    models::cat_of_cats(&[c1, c2], 600).unwrap()
}

fn bool4() -> SmccModel {
    models::heyting_smcc(&LatticeSpec::boolean(2)).unwrap()
}

fn z3_smcc() -> SmccModel {
    models::group_smcc(3).unwrap()
}

#[test]
fn criterion_1_axiom_suite_with_mutations() {
    criterion("1 axiom suite + mutation suite", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xCA7);
        for cat in [z2(), divisors12().1, finset4(), tiny_cat_of_cats()] {
            let report = cat.check();
            assert!(report.verdict(), "stock model failed: {report}");
            let file = CategoryFile::from_category(&cat);
            let n = file.size;
            // Mutants come from the seeded stream sequentially; the checks
            // themselves are independent and run in parallel.
            let mutants: Vec<CategoryFile> = (0..50)
                .map(|_| {
                    let mut mutant = file.clone();
                    // Flip one random dom/cod/comp entry to a new index.
                    let table = rng.gen_range(0..3);
                    let slot = rng.gen_range(0..n);
                    let entry: &mut usize = match table {
                        0 => &mut mutant.dom[slot],
                        1 => &mut mutant.cod[slot],
                        _ => &mut mutant.comp[slot][rng.gen_range(0..n)],
                    };
                    let old = *entry;
                    let mut new = rng.gen_range(0..n);
                    if new == old {
                        new = (new + 1) % n;
                    }
                    *entry = new;
                    mutant
                })
                .collect();
            mutants.par_iter().for_each(|mutant| {
                let mutated = mutant.to_category(600).unwrap();
                let report = mutated.check();
                // Either clean, or every named axiom re-fails in isolation
                // at its witness.
                for v in &report.violations {
                    assert!(
                        mutated.verify_violation(v),
                        "reported {} at {:?} does not re-fail",
                        v.law,
                        v.witness
                    );
                }
            });
        }
    });
}

#[test]
fn criterion_2_products_are_gcd_coproducts_lcm() {
    criterion("2 divisor products = gcd / coproducts = lcm", Duration::from_secs(1), || {
        let (spec, cat) = divisors12();
        let labels: Vec<u64> = (1..=12).filter(|d| 12 % d == 0).collect();
        assert_eq!(labels.len() * labels.len(), 36);
        for &a in &labels {
            for &b in &labels {
                let ida = models::poset_arrow(&spec, a, a).unwrap();
                let idb = models::poset_arrow(&spec, b, b).unwrap();
                let g = models::gcd(a, b);
                let l = models::lcm(a, b);
                let product = ProductWitness {
                    object: models::poset_arrow(&spec, g, g).unwrap(),
                    proj1: models::poset_arrow(&spec, g, a).unwrap(),
                    proj2: models::poset_arrow(&spec, g, b).unwrap(),
                    polarity: Polarity::Product,
                };
                let rep = check_product(&cat, &product, ida, idb).unwrap();
                assert!(rep.verdict(), "product of ({a},{b}): {rep}");
                let coproduct = ProductWitness {
                    object: models::poset_arrow(&spec, l, l).unwrap(),
                    proj1: models::poset_arrow(&spec, a, l).unwrap(),
                    proj2: models::poset_arrow(&spec, b, l).unwrap(),
                    polarity: Polarity::Coproduct,
                };
                let rep = check_product(&cat, &coproduct, ida, idb).unwrap();
                assert!(rep.verdict(), "coproduct of ({a},{b}): {rep}");
            }
        }
    });
}

#[test]
fn criterion_3_topos_ladder_on_finset() {
    criterion("3 structure ladder", Duration::from_secs(60), || {
        let cat = finset4();
        let (ladder, _) = analyze_structure(&cat).unwrap();
        assert!(ladder.has_terminal);
        assert_eq!(ladder.terminal, Some(models::finset_object(4, 1).unwrap()));
        assert!(!ladder.has_binary_products);
        assert_eq!(
            ladder.failing_pair,
            Some((
                models::finset_object(4, 2).unwrap(),
                models::finset_object(4, 3).unwrap()
            ))
        );
        assert!(ladder.has_subobject_classifier);
        assert_eq!(ladder.omega, Some(models::finset_object(4, 2).unwrap()));
        assert!(!ladder.is_topos);

        let trivial = models::monoid_category(&[vec![0]], 0).unwrap();
        let (ladder, _) = analyze_structure(&trivial).unwrap();
        assert!(ladder.is_topos);
    });
}

#[test]
fn criterion_4_monos_are_equalizers() {
    criterion("4 monos are equalizers", Duration::from_secs(60), || {
        let cat = finset4();
        let (ladder, _) = analyze_structure(&cat).unwrap();
        let classifier = SubobjectClassifierWitness {
            omega: ladder.omega.unwrap(),
            truth: ladder.truth.unwrap(),
            terminal: ladder.terminal.unwrap(),
        };
        let rep = monos_are_equalizers(&cat, Some(&classifier)).unwrap();
        assert!(rep.verdict(), "{rep}");
        // Injection-count oracle: monos 2→3 are the 3·2 injections.
        let o2 = models::finset_object(4, 2).unwrap();
        let o3 = models::finset_object(4, 3).unwrap();
        let count = monomorphisms(&cat)
            .unwrap()
            .into_iter()
            .filter(|&m| cat.dom(m) == o2 && cat.cod(m) == o3)
            .count();
        assert_eq!(count, 6);
    });
}

#[test]
fn criterion_5_smcc_coherence_with_mutations() {
    criterion("5 SMCC coherence + mutation suite", Duration::from_secs(30), || {
        for s in [bool4(), z3_smcc()] {
            let rep = s.check().unwrap();
            assert!(rep.verdict(), "{rep}");
        }
        // Mutating one entry of a component family must surface in that
        // family's laws (or the coherence laws quantified over it).
        let allowed: &[(&str, &[&str])] = &[
            ("alpha", &["alpha", "triangle", "pentagon", "hexagon"]),
            ("lambda", &["lambda", "triangle"]),
            ("rho", &["rho", "triangle"]),
            ("gamma", &["gamma", "hexagon", "symmetry"]),
            ("phi", &["closed", "psi_natural", "right_closed"]),
            ("psi", &["closed", "psi_natural", "right_closed"]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5CC);
        let pristine = bool4();
        let n = pristine.base().size();
        for _ in 0..50 {
            let mut s = pristine.clone();
            let (family, families) = allowed[rng.gen_range(0..allowed.len())];
            {
                let value = rng.gen_range(0..n);
                let bump = |m: &mut BTreeMap<(usize, usize, usize), usize>,
                            rng: &mut ChaCha8Rng,
                            value: usize| {
                    let keys: Vec<_> = m.keys().copied().collect();
                    let k = keys[rng.gen_range(0..keys.len())];
                    let v = if m[&k] == value { (value + 1) % n } else { value };
                    m.insert(k, v);
                };
                match family {
                    "alpha" => bump(&mut s.monoidal.alpha, &mut rng, value),
                    "phi" => bump(&mut s.closed.phi, &mut rng, value),
                    "psi" => bump(&mut s.closed.psi, &mut rng, value),
                    "gamma" => {
                        let keys: Vec<_> = s.braiding.gamma.keys().copied().collect();
                        let k = keys[rng.gen_range(0..keys.len())];
                        let v = if s.braiding.gamma[&k] == value {
                            (value + 1) % n
                        } else {
                            value
                        };
                        s.braiding.gamma.insert(k, v);
                    }
                    one_key => {
                        let m = if one_key == "lambda" {
                            &mut s.monoidal.lam
                        } else {
                            &mut s.monoidal.rho
                        };
                        let keys: Vec<_> = m.keys().copied().collect();
                        let k = keys[rng.gen_range(0..keys.len())];
                        let v = if m[&k] == value { (value + 1) % n } else { value };
                        m.insert(k, v);
                    }
                }
            }
            let rep = s.check().unwrap();
            assert!(!rep.verdict(), "mutated {family} went undetected");
            for v in &rep.violations {
                assert!(
                    families.iter().any(|fam| v.law.contains(fam)),
                    "mutated {family} but law {} fired",
                    v.law
                );
            }
        }
    });
}

#[test]
fn criterion_6_currying_entails_evaluation() {
    criterion("6 eval universal property + right closure", Duration::from_secs(30), || {
        for s in [bool4(), z3_smcc()] {
            let ids = s.base().identities();
            for &a in &ids {
                for &b in &ids {
                    // Errors exactly when existence or uniqueness of the
                    // mediating morphism fails.
                    derive_eval(&s.monoidal, &s.closed, a, b).unwrap();
                }
            }
            let rc = derive_right_closed(&s.monoidal, &s.braiding, &s.closed).unwrap();
            let rep = check_right_closed(&s.monoidal, &rc).unwrap();
            assert!(rep.verdict(), "{rep}");
        }
    });
}

#[test]
fn criterion_7_double_negation() {
    criterion("7 double negation + naturality", Duration::from_secs(10), || {
        for s in [bool4(), z3_smcc()] {
            let base = s.base().clone();
            let n = base.size();
            let ids = base.identities();
            let bottom = ids[0];
            for &a in &ids {
                let d = double_negation(&s, a, bottom).unwrap();
                assert!(base.ex(d));
                assert_eq!(base.dom(d), a);
                let not_a = s.closed.impl_of(n, a, bottom);
                assert_eq!(base.cod(d), s.closed.impl_of(n, not_a, bottom));
            }
            assert!(check_dn_naturality(&s, bottom).unwrap().verdict());
        }
        for n in [1, 2, 5] {
            let s = models::group_smcc(n).unwrap();
            for bottom in 0..n {
                for a in 0..n {
                    assert_eq!(double_negation(&s, a, bottom).unwrap(), a);
                }
            }
        }
    });
}

#[test]
fn criterion_8_imll_corpus() {
    criterion("8 IMLL corpus", Duration::from_secs(10), || {
        let corpus = [
            "(ax a)",
            "(lr (ax a))",
            "(xchg 0 (ll 0 (ax a) (ax b)))",
            "(xchg 0 (tr (ax b) (ax a)))",
            "(1r)",
            "(lr (ll 0 (ax a) (ax bot)))",
        ];
        let dneg_text = corpus[5];
        for s in [bool4(), z3_smcc()] {
            let ids = s.base().identities();
            let k = ids.len();
            let envs: Vec<Environment> = (0..3)
                .map(|i| Environment {
                    atoms: BTreeMap::from([
                        ("a".to_string(), ids[i % k]),
                        ("b".to_string(), ids[(i + 1) % k]),
                        ("bot".to_string(), ids[(2 * i) % k]),
                    ]),
                    bottom: "bot".to_string(),
                })
                .collect();
            for text in corpus {
                let tree = parse_proof(text).unwrap();
                let (sq, term) = compile_proof(&tree).unwrap();
                for env in &envs {
                    env.validate(&s).unwrap();
                    let rep = dom_cod_check(&term, &sq, env, &s).unwrap();
                    assert!(rep.verdict(), "{text}: {rep}");
                    if text == dneg_text {
                        assert!(matches!(term, MorphismTerm::Curry(_, _, _)));
                        let v = evaluate_term(&term, env, &s).unwrap();
                        let d = double_negation(&s, env.atoms["a"], env.atoms["bot"]).unwrap();
                        assert!(s.base().carrier().eq_k(v, d));
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_9_kernel_equality_lattice() {
    criterion("9 free-logic equality lattice", Duration::from_secs(5), || {
        for n in 1..=6usize {
            for mask in 0..(1u32 << n) {
                let indices: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let Ok(c) = Carrier::from_existing_indices(n, &indices) else {
                    continue; // all-existing carriers violate NE
                };
                for x in 0..n {
                    assert!(c.eq_k(x, x));
                    assert_eq!(c.eq_e(x, x), c.ex(x));
                    assert!(c.eq_d(x, x));
                    for y in 0..n {
                        assert_eq!(c.eq_k(x, y), c.eq_k(y, x));
                        assert_eq!(c.eq_e(x, y), c.eq_e(y, x));
                        if c.eq_e(x, y) {
                            assert!(c.eq_k(x, y) && c.eq_d(x, y));
                        }
                        for z in 0..n {
                            if c.eq_k(x, y) && c.eq_k(y, z) {
                                assert!(c.eq_k(x, z));
                            }
                            if c.eq_e(x, y) && c.eq_e(y, z) {
                                assert!(c.eq_e(x, z));
                            }
                            if c.eq_d(x, y) && c.eq_d(y, z) {
                                assert!(c.eq_d(x, z));
                            }
                        }
                    }
                }
            }
        }
    });
}
