//! Property checks shared by the property suite and the acceptance gate.
//! Each one drives a proptest runner from a fixed seed and returns the first
//! failure as text.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use serde_json::{json, Value};

use loopss::algebra::{parse_element, Element, Generator, Presentation};
use loopss::cli::build_report;
use loopss::linalg::{subquotient, Lattice};
use loopss::naturality::{check_naturality, run_scenario};
use loopss::ring::{Ring, Scalar};
use loopss::scenarios::{materialize, parse_scenario, serialize_scenario, Preset, PresetId};
use loopss::sseq::{collapse_report, run_to_limit, Bidegree, CollapseResult, Derivation, Run};

use super::{determinantal_invariants, WindowComplex};

pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn drive<S: Strategy>(
    cases: u32,
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases, seed).run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

pub fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        3 => Just(Ring::Integers),
        1 => Just(Ring::Rationals),
        1 => Just(Ring::PrimeField(2)),
        1 => Just(Ring::PrimeField(3)),
        1 => Just(Ring::PrimeField(5)),
    ]
}

/// Fiber `u` (exterior, 1), `s` (exterior, 3), `y` (divided power, 2),
/// `t` (polynomial, 2); base `c` (truncated, 2, height 3), `e` (exterior, 3).
pub fn test_algebra(ring: Ring) -> Presentation {
    Presentation::new(
        ring,
        vec![
            Generator::exterior("u", 1),
            Generator::exterior("s", 3),
            Generator::divided_power("y", 2),
            Generator::polynomial("t", 2),
            Generator::truncated("c", 2, 3),
            Generator::exterior("e", 3),
        ],
        "test algebra",
    )
    .unwrap()
}

const FIBER_GENERATORS: usize = 4;

/// A product of generator powers, with exponents small enough to stay cheap.
fn monomial_strategy() -> impl Strategy<Value = Vec<u32>> {
    (0u32..2, 0u32..2, 0u32..4, 0u32..3, 0u32..3, 0u32..2).prop_map(|(a, b, c, d, e, f)| vec![a, b, c, d, e, f])
}

fn build(p: &Presentation, terms: &[(Vec<u32>, i64)]) -> Element {
    let mut out = Element::zero(p);
    for (exps, c) in terms {
        let mut m = p.unit();
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 {
                m = p.multiply(&m, &p.generator_power(i, k)).unwrap();
            }
        }
        out = out.add(&m.scale(&p.ring().from_int(*c), p), p).unwrap();
    }
    out
}

fn element_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((monomial_strategy(), -4i64..=4), 0..4)
}

fn degree(p: &Presentation, exps: &[u32]) -> u32 {
    exps.iter().zip(p.generators()).map(|(e, g)| e * g.degree).sum()
}

/// Associativity, graded commutativity and the divided-power product rule.
pub fn algebra_laws(cases: u32) -> Result<(), String> {
    let strategy = (ring_strategy(), element_strategy(), element_strategy(), element_strategy(), monomial_strategy(), monomial_strategy(), 0u32..4, 0u32..4);
    drive(cases, 11, strategy, |(ring, a, b, c, ma, mb, i, j)| {
        let p = test_algebra(ring);
        let (a, b, c) = (build(&p, &a), build(&p, &b), build(&p, &c));
        let left = p.multiply(&p.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = p.multiply(&a, &p.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let (x, y) = (build(&p, &[(ma.clone(), 1)]), build(&p, &[(mb.clone(), 1)]));
        let sign = if degree(&p, &ma) * degree(&p, &mb) % 2 == 1 { -1 } else { 1 };
        let xy = p.multiply(&x, &y).unwrap();
        let yx = p.multiply(&y, &x).unwrap().scale(&ring.from_int(sign), &p);
        prop_assert_eq!(xy, yx);

        let product = p.multiply(&p.generator_power(2, i), &p.generator_power(2, j)).unwrap();
        let binom = (1..=i as i64).fold(1i64, |acc, k| acc * (j as i64 + k) / k);
        let expected = p.generator_power(2, i + j).scale(&ring.from_int(binom), &p);
        prop_assert_eq!(product, expected);

        let u = p.generator(0);
        prop_assert!(p.multiply(&u, &u).unwrap().is_zero());
        prop_assert!(p.power(&p.generator(4), 3).unwrap().is_zero());
        Ok(())
    })
}

/// `d(ab) = d(a)·b + (-1)^{|a|} a·d(b)` for a derivation with random values
/// on the fiber generators.
pub fn leibniz_identity(cases: u32) -> Result<(), String> {
    let images = prop::collection::vec(element_strategy(), FIBER_GENERATORS);
    let strategy = (ring_strategy(), images, monomial_strategy(), -3i64..=3, element_strategy());
    drive(cases, 12, strategy, |(ring, images, ma, ca, b)| {
        let p = test_algebra(ring);
        let mut d = Derivation::new(2, &p, true);
        for (g, terms) in images.iter().enumerate() {
            let want = p.generators()[g].degree + 1;
            let homogeneous: Vec<_> = terms.iter().filter(|(m, _)| degree(&p, m) == want).cloned().collect();
            d.set(g, 1, build(&p, &homogeneous));
        }
        let a = build(&p, &[(ma.clone(), ca)]);
        let b = build(&p, &b);
        let lhs = d.apply(&p.multiply(&a, &b).unwrap()).unwrap();
        let sign = if degree(&p, &ma) % 2 == 1 { -1 } else { 1 };
        let first = p.multiply(&d.apply(&a).unwrap(), &b).unwrap();
        let second = p.multiply(&a, &d.apply(&b).unwrap()).unwrap().scale(&ring.from_int(sign), &p);
        prop_assert_eq!(lhs, first.add(&second, &p).unwrap());
        Ok(())
    })
}

/// `parse(render(x)) = x`.
pub fn render_parse_closure(cases: u32) -> Result<(), String> {
    drive(cases, 13, (ring_strategy(), element_strategy()), |(ring, terms)| {
        let p = test_algebra(ring);
        let x = build(&p, &terms);
        let text = x.render(&p);
        let back = parse_element(&p, &text, &BTreeMap::new()).map_err(|e| fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, x, "{}", text);
        Ok(())
    })
}

/// Exterior fiber generators `u_i` of one odd degree `2j - 1` transgressing
/// to random base classes of degree `2j`. Only `d_{2j}` can be nonzero, so
/// `E_{2j} = E_2`.
#[derive(Debug, Clone)]
pub struct Transgression {
    pub ring: Ring,
    pub j: u32,
    pub fiber: usize,
    pub base: Vec<(u32, u32)>,
    pub coefficients: Vec<Vec<i64>>,
}

impl Transgression {
    fn base_monomials(&self, target: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &(deg, height) in &self.base {
            out = out.into_iter().flat_map(|m: Vec<u32>| (0..height).map(move |e| [m.clone(), vec![e * deg]].concat())).collect();
        }
        let mut out: Vec<Vec<u32>> = out
            .into_iter()
            .filter(|m| m.iter().sum::<u32>() == target)
            .map(|m| m.iter().zip(&self.base).map(|(d, (deg, _))| d / deg).collect())
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> Value {
        let fiber: Vec<Value> = (0..self.fiber)
            .map(|i| json!({"name": format!("u{}", i + 1), "degree": 2 * self.j - 1, "kind": "exterior"}))
            .collect();
        let base: Vec<Value> = self
            .base
            .iter()
            .enumerate()
            .map(|(i, &(deg, h))| json!({"name": format!("b{}", i + 1), "degree": deg, "kind": "truncated", "height": h}))
            .collect();
        let monomials = self.base_monomials(2 * self.j);
        let assignments: Vec<Value> = (0..self.fiber)
            .map(|i| {
                let mut image = String::new();
                let terms = monomials
                    .iter()
                    .zip(&self.coefficients[i])
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| {
                        let factors: Vec<String> = m
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(g, &e)| if e == 1 { format!("b{}", g + 1) } else { format!("b{}^{e}", g + 1) })
                            .collect();
                        (c, factors.join("*"))
                    });
                for (c, m) in terms {
                    let sign = if c < 0 { "-" } else { "+" };
                    if image.is_empty() {
                        image = format!("{}{}*{m}", if c < 0 { "-" } else { "" }, c.abs());
                    } else {
                        image = format!("{image} {sign} {}*{m}", c.abs());
                    }
                }
                if image.is_empty() {
                    image = "0".to_string();
                }
                json!({"page": 2 * self.j, "source": format!("u{}", i + 1), "image": image})
            })
            .collect();
        let p_max: u32 = self.base.iter().map(|(d, h)| d * (h - 1)).sum::<u32>().max(2 * self.j);
        json!({
            "description": "random transgression",
            "ring": self.ring.to_string(),
            "fiber": {"generators": fiber},
            "base": {"generators": base},
            "window": {"p_max": p_max, "q_max": self.fiber as u32 * (2 * self.j - 1)},
            "assignments": assignments,
        })
    }

    pub fn dimension(&self) -> usize {
        (1usize << self.fiber) * self.base.iter().map(|&(_, h)| h as usize).product::<usize>()
    }
}

pub fn transgression_strategy() -> impl Strategy<Value = Transgression> {
    let base = prop::collection::vec((prop_oneof![Just(2u32), Just(4u32)], 2u32..=3), 1..=2);
    (ring_strategy(), 1u32..=2, 1usize..=3, base, prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 3)).prop_map(
        |(ring, j, fiber, base, coefficients)| {
            let heights: usize = base.iter().map(|&(_, h)| h as usize).product();
            let mut fiber = fiber;
            while (1usize << fiber) * heights > 40 {
                fiber -= 1;
            }
            Transgression { ring, j, fiber, base, coefficients }
        },
    )
}

pub fn run_json(v: &Value) -> Result<Run, TestCaseError> {
    let s = parse_scenario(&v.to_string()).map_err(|e| fail(format!("{e}\n{v}")))?;
    run_to_limit(&s).map_err(|e| fail(format!("{e}")))
}

/// `d_r ∘ d_r` lands in the boundaries on every page, for cells whose
/// neighbours are all reliable.
pub fn check_dd_zero(run: &Run) -> Result<(), String> {
    for (i, ds) in run.differentials.iter().enumerate() {
        let page = &run.pages[i];
        for (src, d) in &ds.maps {
            let Some(next) = ds.from_source(d.target) else { continue };
            let cells = [page.cells[src].clone(), page.cells[&d.target].clone(), page.cells[&next.target].clone()];
            if !cells.iter().all(|c| c.reliable) {
                continue;
            }
            for z in cells[0].cycles.basis_vectors() {
                let w = next.lift.apply(&d.lift.apply(z));
                if !cells[2].boundaries.contains(&w) {
                    return Err(format!("d{}∘d{} ≠ 0 from {src}", ds.page, ds.page));
                }
            }
        }
    }
    Ok(())
}

fn presets() -> Vec<PresetId> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(PresetId::PathCpnDiag { n });
        out.push(PresetId::PairWithMorphism { n });
    }
    out.extend([PresetId::FreeLoopRankOne { m: 1, k: 3 }, PresetId::FreeLoopRankOne { m: 2, k: 2 }]);
    out
}

/// `d∘d = 0` on every computed page of random transgressions and of every
/// preset.
pub fn dd_zero_on_pages(cases: u32) -> Result<(), String> {
    for id in presets() {
        let linked = run_scenario(&materialize(&Preset::new(id)).unwrap()).map_err(|e| e.to_string())?;
        check_dd_zero(&linked.run).map_err(|e| format!("{id}: {e}"))?;
    }
    drive(cases, 14, transgression_strategy(), |t| {
        let run = run_json(&t.to_json())?;
        check_dd_zero(&run).map_err(fail)
    })
}

/// `E_{2j+1}` from `turn_page` equals the homology of the whole-window
/// complex assembled from the lifted `d_{2j}`.
pub fn turn_page_matches_oracle(cases: u32) -> Result<(), String> {
    drive(cases, 15, transgression_strategy(), |t| {
        prop_assume!(t.dimension() <= 40);
        let run = run_json(&t.to_json())?;
        let r = 2 * t.j;
        let (Some(d), Ok(page), Ok(next)) = (run.differentials_on(r), run.page(r), run.page(r + 1)) else {
            return Ok(());
        };
        for (cell, c) in &run.page(2).unwrap().cells {
            prop_assert_eq!(&page.cells[cell].cycles, &c.cycles);
            prop_assert_eq!(&page.cells[cell].boundaries, &c.boundaries);
        }
        let complex = WindowComplex::new(&run.layout, d);
        prop_assert!(complex.squares_to_zero(t.ring));
        for &cell in complex.offsets.keys() {
            let (free, torsion) = complex.homology(cell, r, t.ring);
            let got = next.invariants(cell).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(got.free_rank, free, "free rank at {}", cell);
            prop_assert_eq!(&got.torsion, &torsion, "torsion at {}", cell);
        }
        Ok(())
    })
}

/// Over Q the Euler characteristic of the whole window is the same on every
/// page.
pub fn euler_characteristic_stable(cases: u32) -> Result<(), String> {
    drive(cases, 16, transgression_strategy(), |mut t| {
        t.ring = Ring::Rationals;
        let run = run_json(&t.to_json())?;
        let chi = |r: usize| -> i64 {
            run.pages[r]
                .cells
                .keys()
                .map(|&c| {
                    let rank = run.pages[r].invariants(c).unwrap().free_rank as i64;
                    if c.total() % 2 == 0 { rank } else { -rank }
                })
                .sum()
        };
        for r in 1..run.pages.len() {
            prop_assert_eq!(chi(r), chi(0));
        }
        Ok(())
    })
}

/// A page whose differentials all vanish is copied unchanged to the next.
pub fn check_page_stability(run: &Run) -> Result<(), String> {
    for (i, ds) in run.differentials.iter().enumerate() {
        let page = &run.pages[i];
        if ds.maps.values().all(|d| !d.is_nonzero_on(page)) {
            let next = &run.pages[i + 1];
            for &c in page.cells.keys() {
                if page.invariants(c).unwrap() != next.invariants(c).unwrap() {
                    return Err(format!("E{} → E{} changed at {c} without a differential", page.index, next.index));
                }
            }
        }
    }
    Ok(())
}

pub fn page_stability(cases: u32) -> Result<(), String> {
    for id in presets() {
        let linked = run_scenario(&materialize(&Preset::new(id)).unwrap()).map_err(|e| e.to_string())?;
        check_page_stability(&linked.run).map_err(|e| format!("{id}: {e}"))?;
    }
    drive(cases, 17, transgression_strategy(), |t| check_page_stability(&run_json(&t.to_json())?).map_err(fail))
}

fn to_scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_integer(BigInt::from(x))).collect()
}

/// Number of elements of the subgroup of `(Z/N)^m` generated by `gens`.
fn subgroup_size(gens: &[Vec<i64>], m: usize, n: i64) -> usize {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier = vec![vec![0; m]];
    seen.insert(vec![0; m]);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(n)).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Over Z: `|Z/(B + N·Z)| = N^f ∏ gcd(N, t_i)` for every `N`, counted by
/// enumerating `(Z/N)^m` in the coordinates of a basis of `Z`. Over `F_p`:
/// `|Z| / |B|` counted by enumerating both spans.
pub fn subquotient_matches_enumeration(cases: u32) -> Result<(), String> {
    let vector = |k: usize| prop::collection::vec(-4i64..=4, k);
    let strategy = (1usize..=3, 0usize..=3, prop_oneof![Just(None), Just(Some(3u64)), Just(Some(5u64))])
        .prop_flat_map(move |(k, m, p)| {
            (Just(k), Just(p), prop::collection::vec(vector(k), m.min(k)), prop::collection::vec(prop::collection::vec(-2i64..=2, m.min(k)), 0..=3))
        });
    drive(cases, 18, strategy, |(k, p, basis, combos)| {
        let m = basis.len();
        let as_int = |rows: &[Vec<i64>]| -> super::IntMatrix { rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect() };
        prop_assume!(m == 0 || super::rank(&as_int(&basis), p) == m);
        let boundary_coords: Vec<Vec<i64>> = combos.clone();
        let boundary: Vec<Vec<i64>> = boundary_coords
            .iter()
            .map(|c| (0..k).map(|i| c.iter().zip(&basis).map(|(a, b)| a * b[i]).sum()).collect())
            .collect();
        let ring = p.map_or(Ring::Integers, Ring::PrimeField);
        let cycles = Lattice::from_generators(ring, k, basis.iter().map(|v| to_scalars(v)).collect());
        let boundaries = Lattice::from_generators(ring, k, boundary.iter().map(|v| to_scalars(v)).collect());
        let got = subquotient(&cycles, &boundaries).map_err(|e| fail(e.to_string()))?;
        match p {
            Some(p) => {
                let span = |gens: &[Vec<i64>]| subgroup_size(gens, k, p as i64);
                let (z, b) = (span(&basis), span(&boundary));
                prop_assert_eq!(p.pow(got.free_rank as u32) as usize, z / b);
                prop_assert!(got.torsion.is_empty());
            }
            None => {
                let det_torsion: BigInt =
                    determinantal_invariants(&as_int(&boundary_coords)).iter().product::<BigInt>().max(BigInt::from(1));
                prop_assume!(det_torsion <= BigInt::from(64));
                let limit: i64 = det_torsion.try_into().unwrap();
                for n in (1..=6).chain(1..=limit).filter(|n| limit % n == 0 || *n <= 6) {
                    if m == 0 {
                        continue;
                    }
                    let count = n.pow(m as u32) as usize / subgroup_size(&boundary_coords, m, n);
                    let predicted = n.pow(got.free_rank as u32)
                        * got.torsion.iter().map(|t| num_integer::gcd(i64::try_from(t.clone()).unwrap(), n)).product::<i64>();
                    prop_assert_eq!(count as i64, predicted, "N = {}", n);
                }
                if m == 0 {
                    prop_assert!(got.is_zero());
                }
            }
        }
        Ok(())
    })
}

/// `φ_r d_r = d̄_r φ_r` on the pair presets, checked both by the library
/// and directly on the transported generators.
pub fn naturality_on_pairs() -> Result<(), String> {
    for n in 1..=4 {
        let s = materialize(&Preset::new(PresetId::PairWithMorphism { n })).unwrap();
        let linked = run_scenario(&s).map_err(|e| e.to_string())?;
        let link = s.link.as_ref().unwrap();
        let source = &linked.source.as_ref().unwrap().run;
        let violations = check_naturality(source, &linked.run, &link.morphism).map_err(|e| e.to_string())?;
        if !violations.is_empty() {
            return Err(format!("n={n}: {violations:?}"));
        }
        let phi = link.morphism.e2_map(&link.source, &s).unwrap();
        for (a, b) in &link.pairs {
            for assignment in link.source.assignments.iter().filter(|x| x.source == *a) {
                let pushed = phi.apply(&assignment.image).unwrap();
                let here = linked.run.scenario.assignments.iter().find(|x| x.page == assignment.page && x.source == *b);
                match here {
                    Some(x) if x.image == pushed => {}
                    _ => return Err(format!("n={n}: d{} of {} not transported", assignment.page, s.render(b))),
                }
            }
        }
    }
    Ok(())
}

/// The JSON report is identical across repeated runs and thread counts.
pub fn report_determinism() -> Result<(), String> {
    for id in [PresetId::PairWithMorphism { n: 2 }, PresetId::PathCpnDiag { n: 3 }] {
        let s = materialize(&Preset::new(id)).unwrap();
        let text = serialize_scenario(&s);
        let fp = loopss::cli::fingerprint(text.as_bytes());
        let mut outputs = BTreeSet::new();
        for threads in [1, 2, 4] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let json = pool.install(|| {
                let s = parse_scenario(&text).unwrap();
                let linked = run_scenario(&s).unwrap();
                build_report(&linked, &fp, None).unwrap().to_json()
            });
            outputs.insert(json);
        }
        if outputs.len() != 1 {
            return Err(format!("{id}: {} distinct reports", outputs.len()));
        }
    }
    Ok(())
}

fn permuted(v: &Value, fiber_perm: &[usize], base_perm: &[usize]) -> Value {
    let mut v = v.clone();
    for (block, perm) in [("fiber", fiber_perm), ("base", base_perm)] {
        let gens = v[block]["generators"].as_array().unwrap().clone();
        let order = perm.iter().copied().filter(|&i| i < gens.len());
        v[block]["generators"] = Value::Array(order.map(|i| gens[i].clone()).collect());
    }
    if let Some(src) = v.get("source").cloned() {
        if !src.is_null() {
            v["source"] = permuted(&src, fiber_perm, base_perm);
        }
    }
    v
}

fn collapse_key(run: &Run) -> Option<(u32, Bidegree)> {
    match collapse_report(run).unwrap() {
        CollapseResult::Collapses => None,
        CollapseResult::NonCollapse { page, source, .. } => Some((page, source)),
    }
}

/// Reordering generators inside the fiber and base blocks leaves the
/// collapse verdict's page and source bidegree unchanged.
pub fn collapse_permutation_invariance(cases: u32) -> Result<(), String> {
    let perm = || Just((0..3usize).collect::<Vec<_>>()).prop_shuffle();
    let mut bases: Vec<Value> = presets()
        .into_iter()
        .map(|id| serde_json::from_str(&serialize_scenario(&materialize(&Preset::new(id)).unwrap())).unwrap())
        .collect();
    bases.sort_by_key(|v| v.to_string());
    let bases_len = bases.len();
    let strategy = (0..bases_len + 1, transgression_strategy(), perm(), perm());
    drive(cases, 19, strategy, |(which, t, fp, bp)| {
        let v = if which < bases_len { bases[which].clone() } else { t.to_json() };
        let key = |v: &Value| -> Result<Option<(u32, Bidegree)>, TestCaseError> {
            let s = parse_scenario(&v.to_string()).map_err(|e| fail(e.to_string()))?;
            Ok(collapse_key(&run_scenario(&s).map_err(|e| fail(e.to_string()))?.run))
        };
        prop_assert_eq!(key(&v)?, key(&permuted(&v, &fp, &bp))?);
        Ok(())
    })
}

/// Every name a property suite runs, with its driver.
pub fn all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("graded-algebra laws", algebra_laws(cases)),
        ("Leibniz identity", leibniz_identity(cases)),
        ("d∘d = 0 on every page", dd_zero_on_pages(cases)),
        ("turn_page vs whole-window oracle", turn_page_matches_oracle(cases)),
        ("subquotient vs enumeration", subquotient_matches_enumeration(cases)),
        ("naturality on the preset pair", naturality_on_pairs()),
        ("report byte-determinism", report_determinism()),
        ("collapse permutation invariance", collapse_permutation_invariance(cases)),
    ]
}
