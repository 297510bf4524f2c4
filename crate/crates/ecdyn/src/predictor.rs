//! Structure prediction: from the ideal factorizations of (δ) = (π_qⁿ ∓ 1)
//! and (α) alone, the cycle census of each class A_n / B_n and the level
//! sizes of every tree, without touching the graph. `reconcile` then
//! compares the prediction against a brute-force [`FunctionalGraph`] item
//! by item.
//!
//! The handful of points the counting theorems exclude (orders 1, 2 and the
//! order-2×2 tuple, all with x-coordinate in E_0) are covered exactly by
//! direct iteration of r on the ≤ 4 elements of E_0, which is forward-closed.

use crate::curve::{ClassTag, Curve, EndoMap};
use crate::dynamics::{eval_r, CycleRecord, FunctionalGraph};
use crate::error::{Error, Result};
use crate::ff::ProjVertex;
use crate::quadorder::{
    Factorization, IdealHnf, PrimeIdealFactor, QuadInt, QuadOrder, SplitKind,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Which class S the pipeline is run for: δ = πⁿ - 1 (A) or πⁿ + 1 (B).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn name(&self, n: u32) -> String {
        match self {
            Side::A => format!("A_{n}"),
            Side::B => format!("B_{n}"),
        }
    }
    pub fn tag(&self) -> ClassTag {
        match self {
            Side::A => ClassTag::A,
            Side::B => ClassTag::B,
        }
    }
}

/// δ := πⁿ - 1 (side A) or πⁿ + 1 (side B).
pub fn delta_of(order: &QuadOrder, pi: &QuadInt, n: u32, side: Side) -> QuadInt {
    let pn = order.pow(pi, n);
    match side {
        Side::A => order.sub(&pn, &QuadInt::one()),
        Side::B => order.add(&pn, &QuadInt::one()),
    }
}

/// The factorization of (δ) routed into the cycle part I_c (primes not
/// dividing (α)) and the tree part I_t (primes dividing (α)).
#[derive(Debug, Clone)]
pub struct DeltaSplit {
    pub side: Side,
    pub delta: QuadInt,
    pub ic: Vec<PrimeIdealFactor>,
    pub it: Vec<PrimeIdealFactor>,
}

pub fn split_ct(
    side: Side,
    delta: QuadInt,
    delta_factors: &Factorization,
    alpha_factors: &Factorization,
) -> DeltaSplit {
    let mut ic = Vec::new();
    let mut it = Vec::new();
    for f in &delta_factors.factors {
        if alpha_factors.contains_prime(&f.ideal) {
            it.push(f.clone());
        } else {
            ic.push(f.clone());
        }
    }
    DeltaSplit { side, delta, ic, it }
}

/// Upper end of the level interval H_i for one prime-power factor:
/// e for split/inert, ⌊(e+1)/2⌋ for ramified.
pub fn h_max(factor: &PrimeIdealFactor) -> u32 {
    match factor.kind {
        SplitKind::Ramified { .. } => (factor.exponent + 1) / 2,
        _ => factor.exponent,
    }
}

/// Number of points of additive order p^h in R/𝔅^e.
pub fn n_count(factor: &PrimeIdealFactor, h: u32) -> Result<BigInt> {
    let max = h_max(factor);
    if h > max {
        return Err(Error::LevelOutOfRange { h, max });
    }
    if h == 0 {
        return Ok(BigInt::one());
    }
    let p = BigInt::from(factor.p);
    let e = factor.exponent;
    Ok(match factor.kind {
        SplitKind::Split { .. } => p.pow(h) - p.pow(h - 1),
        SplitKind::Inert => p.pow(2 * h) - p.pow(2 * (h - 1)),
        SplitKind::Ramified { .. } => {
            if e % 2 == 0 || h <= (e - 1) / 2 {
                p.pow(2 * h) - p.pow(2 * (h - 1))
            } else {
                // e odd, h = (e+1)/2
                p.pow(2 * h - 1) - p.pow(2 * (h - 1))
            }
        }
    })
}

/// Sign achieved by the minimal power: α^s ≡ +1 or -1 mod 𝔅^h.
pub type SignedPeriod = (u64, i8);

/// s_{h_i} = min{v ≥ 1 : α^v ± 1 ∈ 𝔅_i^{h_i}}, with the achieving sign.
/// Multiplication is reduced modulo 𝔅^h each step; the search is capped at
/// N(𝔅^h) iterations, which only triggers when α is not invertible there.
pub fn s_min(
    order: &QuadOrder,
    alpha: &QuadInt,
    factor: &PrimeIdealFactor,
    h: u32,
) -> Result<SignedPeriod> {
    if h == 0 {
        return Ok((1, 1));
    }
    let ideal = order.ideal_pow(&factor.ideal, h);
    let cap = ideal.norm().to_u64().unwrap_or(u64::MAX);
    s_min_in_ideal(order, alpha, &ideal, cap)
}

fn s_min_in_ideal(
    order: &QuadOrder,
    alpha: &QuadInt,
    ideal: &IdealHnf,
    cap: u64,
) -> Result<SignedPeriod> {
    let one = QuadInt::one();
    let alpha_red = ideal.reduce(alpha);
    let mut w = one.clone();
    for v in 1..=cap {
        w = ideal.reduce(&order.mul(&w, &alpha_red));
        if ideal.contains(&order.sub(&w, &one)) {
            return Ok((v, 1));
        }
        if ideal.contains(&order.add(&w, &one)) {
            return Ok((v, -1));
        }
    }
    Err(Error::SearchCapExceeded(cap))
}

/// α^e mod ideal by square and multiply.
fn pow_mod_ideal(order: &QuadOrder, alpha: &QuadInt, e: u64, ideal: &IdealHnf) -> QuadInt {
    let mut r = ideal.reduce(&QuadInt::one());
    let mut b = ideal.reduce(alpha);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = ideal.reduce(&order.mul(&r, &b));
        }
        b = ideal.reduce(&order.mul(&b, &b));
        e >>= 1;
    }
    r
}

/// Everything the cycle theorem says about one admissible tuple h.
#[derive(Debug, Clone)]
pub struct CycleClass {
    pub h: Vec<u32>,
    pub n_counts: Vec<BigInt>,
    pub s_parts: Vec<SignedPeriod>,
    pub s_prime: u64,
    pub s: u64,
    /// |C^S_h|; zero when the tuple is excluded.
    pub count: BigInt,
    pub excluded: Option<String>,
}

/// Evaluate the cycle theorem for one tuple h over the I_c factors.
pub fn cycle_class(
    order: &QuadOrder,
    alpha: &QuadInt,
    ic: &[PrimeIdealFactor],
    h: &[u32],
) -> Result<CycleClass> {
    assert_eq!(ic.len(), h.len());
    // orders of the components, to apply the small-order exclusions
    let mut point_order = BigInt::one();
    for (factor, &hi) in ic.iter().zip(h) {
        point_order *= BigInt::from(factor.p).pow(hi);
    }
    let excluded = if point_order == BigInt::one() {
        Some("order 1: the point at infinity".to_string())
    } else if point_order == BigInt::from(2) {
        Some("order 2: x-coordinate lies in E_0".to_string())
    } else if point_order == BigInt::from(4) && h.iter().all(|&hi| hi <= 1) {
        Some("order (2,2): the point has order 2, x-coordinate lies in E_0".to_string())
    } else {
        None
    };
    let mut n_counts = Vec::with_capacity(ic.len());
    let mut s_parts = Vec::with_capacity(ic.len());
    let mut s_prime = 1u64;
    let mut joint = order.whole_ring();
    for (factor, &hi) in ic.iter().zip(h) {
        n_counts.push(n_count(factor, hi)?);
        let sp = s_min(order, alpha, factor, hi)?;
        s_prime = s_prime.lcm(&sp.0);
        s_parts.push(sp);
        if hi > 0 {
            joint = order.ideal_mul(&joint, &order.ideal_pow(&factor.ideal, hi));
        }
    }
    if excluded.is_some() {
        return Ok(CycleClass {
            h: h.to_vec(),
            n_counts,
            s_parts,
            s_prime,
            s: s_prime,
            count: BigInt::zero(),
            excluded,
        });
    }
    // s = s' when α^{s'} ≡ ±1 modulo the product ideal ∏𝔅_i^{h_i}, else 2s'
    let w = pow_mod_ideal(order, alpha, s_prime, &joint);
    let one = QuadInt::one();
    let sign_consistent = joint.contains(&order.sub(&w, &one)) || joint.contains(&order.add(&w, &one));
    let s = if sign_consistent { s_prime } else { 2 * s_prime };
    let total: BigInt = n_counts.iter().product();
    let (count, rem) = total.div_rem(&BigInt::from(2 * s));
    if !rem.is_zero() {
        return Err(Error::PredictionInconsistent(format!(
            "2·s_h = {} does not divide ∏ n_h = {} at h = {:?}",
            2 * s,
            total,
            h
        )));
    }
    Ok(CycleClass { h: h.to_vec(), n_counts, s_parts, s_prime, s, count, excluded: None })
}

/// All tuples of H = ∏ [0, h_max(i)] in odometer order.
pub fn enumerate_h(ic: &[PrimeIdealFactor]) -> Vec<Vec<u32>> {
    let bounds: Vec<u32> = ic.iter().map(h_max).collect();
    let mut tuples = vec![];
    let mut cur = vec![0u32; ic.len()];
    loop {
        tuples.push(cur.clone());
        let mut i = 0;
        loop {
            if i == cur.len() {
                return tuples;
            }
            if cur[i] < bounds[i] {
                cur[i] += 1;
                for c in cur.iter_mut().take(i) {
                    *c = 0;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Orbit data of the ≤ 4 elements of E_0 under r: the cycles they form and,
/// for the preperiodic ones, their depth and root. E_0 is forward-closed,
/// so the whole computation happens inside E_0.
#[derive(Debug, Clone)]
pub struct E0Orbits {
    /// Vertex indices of E_0 (∞ is the last index of the graph).
    pub members: Vec<u32>,
    pub cycles: Vec<CycleRecord>,
    /// (vertex, depth, root) for each non-periodic element of E_0.
    pub tails: Vec<(u32, u32, u32)>,
}

pub fn trace_e0(curve: &Curve, endo: &EndoMap) -> Result<E0Orbits> {
    let field = curve.field();
    let inf_idx = field.size() as u32;
    let idx_of = |v: &ProjVertex| -> u32 {
        match v {
            ProjVertex::Infinity => inf_idx,
            ProjVertex::Finite(x) => field.index_of(x) as u32,
        }
    };
    let e0 = curve.e0_set();
    let members: Vec<u32> = e0.iter().map(&idx_of).collect();
    let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
    for v in &e0 {
        let img = eval_r(field, endo, v);
        let iv = idx_of(v);
        let iw = idx_of(&img);
        if !members.contains(&iw) {
            return Err(Error::PredictionInconsistent(format!(
                "E_0 is not forward-closed under r (vertex {iv} maps outside); \
                 the supplied map is not an endomorphism x-map of this curve"
            )));
        }
        succ.insert(iv, iw);
    }
    // peel the tiny functional graph
    let mut indeg: BTreeMap<u32, u32> = members.iter().map(|&v| (v, 0)).collect();
    for &w in succ.values() {
        *indeg.get_mut(&w).unwrap() += 1;
    }
    let mut queue: Vec<u32> = members.iter().copied().filter(|v| indeg[v] == 0).collect();
    let mut periodic: BTreeMap<u32, bool> = members.iter().map(|&v| (v, true)).collect();
    while let Some(v) = queue.pop() {
        periodic.insert(v, false);
        let w = succ[&v];
        let d = indeg.get_mut(&w).unwrap();
        *d -= 1;
        if *d == 0 {
            queue.push(w);
        }
    }
    let mut cycles = Vec::new();
    let mut seen: BTreeMap<u32, bool> = members.iter().map(|&v| (v, false)).collect();
    for &v in &members {
        if periodic[&v] && !seen[&v] {
            let mut cyc = Vec::new();
            let mut w = v;
            while !seen[&w] {
                seen.insert(w, true);
                cyc.push(w);
                w = succ[&w];
            }
            cycles.push(CycleRecord { length: cyc.len(), members: cyc });
        }
    }
    let mut tails = Vec::new();
    for &v in &members {
        if !periodic[&v] {
            let mut w = v;
            let mut d = 0u32;
            while !periodic[&w] {
                w = succ[&w];
                d += 1;
            }
            tails.push((v, d, w));
        }
    }
    Ok(E0Orbits { members, cycles, tails })
}

/// Cycles of S not covered by the counting formula: ∞ as a fixed point and
/// whatever cycles the other E_0 elements fall into. E_0 ⊆ A_n ∩ B_n, so
/// these belong to both class censuses.
pub fn special_cycles(curve: &Curve, endo: &EndoMap) -> Result<Vec<CycleRecord>> {
    Ok(trace_e0(curve, endo)?.cycles)
}

/// The tree theorem for one class: depth, the raw level sizes v_h and the
/// per-root adjusted sizes. E_0-rooted trees use (v_h + ṽ_h)/2, all other
/// roots get v_h - ṽ_h with ṽ_h = 0 by forward closure of E_0.
#[derive(Debug, Clone)]
pub struct TreeShape {
    pub side: Side,
    pub depth: u32,
    /// (prime norm, e_i, f_i) per I_t factor.
    pub it_profile: Vec<(BigInt, u32, u32)>,
    pub v: Vec<BigInt>,
    pub non_e0_levels: Vec<BigInt>,
    /// Predicted levels for each periodic E_0 root (vertex index).
    pub e0_root_levels: Vec<(u32, Vec<BigInt>)>,
    /// ṽ_h per periodic E_0 root, h = 1..depth (used by the union check).
    pub e0_adjustments: Vec<(u32, Vec<BigInt>)>,
}

pub fn tree_shape(
    order: &QuadOrder,
    split: &DeltaSplit,
    alpha_factors: &Factorization,
    e0: &E0Orbits,
) -> Result<TreeShape> {
    let e0_roots: Vec<u32> =
        e0.cycles.iter().flat_map(|c| c.members.iter().copied()).collect();
    if split.it.is_empty() {
        // every element of S is r-periodic
        return Ok(TreeShape {
            side: split.side,
            depth: 0,
            it_profile: vec![],
            v: vec![],
            non_e0_levels: vec![],
            e0_root_levels: e0_roots.iter().map(|&r| (r, vec![])).collect(),
            e0_adjustments: e0_roots.iter().map(|&r| (r, vec![])).collect(),
        });
    }
    let mut it_profile = Vec::new();
    let mut depth = 0u32;
    for factor in &split.it {
        let f = alpha_factors.exponent_of(&factor.ideal);
        debug_assert!(f >= 1, "I_t primes divide (alpha) by construction");
        let e = factor.exponent;
        depth = depth.max(e.div_ceil(f));
        it_profile.push((factor.prime_norm(), e, f));
    }
    let mut v = Vec::with_capacity(depth as usize);
    for h in 1..=depth {
        let mut big = BigInt::one();
        let mut small = BigInt::one();
        for (norm, e, f) in &it_profile {
            big *= norm.pow((*e).min(f * h));
            small *= norm.pow((*e).min(f * (h - 1)));
        }
        v.push(big - small);
    }
    let mut e0_root_levels = Vec::new();
    let mut e0_adjustments = Vec::new();
    for &root in &e0_roots {
        let mut adj = vec![BigInt::zero(); depth as usize];
        for &(_, d, r) in &e0.tails {
            if r == root {
                if d > depth {
                    return Err(Error::PredictionInconsistent(format!(
                        "an E_0 element sits at depth {d} below root {root}, \
                         deeper than the predicted tree depth {depth}"
                    )));
                }
                adj[(d - 1) as usize] += 1;
            }
        }
        let mut levels = Vec::with_capacity(depth as usize);
        for h in 0..depth as usize {
            let sum: BigInt = &v[h] + &adj[h];
            let (half, rem) = sum.div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                return Err(Error::PredictionInconsistent(format!(
                    "v_{} + ṽ_{} = {} is odd at E_0 root {root}",
                    h + 1,
                    h + 1,
                    &v[h] + &adj[h]
                )));
            }
            levels.push(half);
        }
        e0_root_levels.push((root, levels));
        e0_adjustments.push((root, adj));
    }
    Ok(TreeShape {
        side: split.side,
        depth,
        it_profile,
        v: v.clone(),
        non_e0_levels: v,
        e0_root_levels,
        e0_adjustments,
    })
}

/// Prediction for one class S.
#[derive(Debug, Clone)]
pub struct ClassPrediction {
    pub side: Side,
    pub delta: QuadInt,
    pub delta_factors: Factorization,
    pub split: DeltaSplit,
    pub cycle_classes: Vec<CycleClass>,
    pub tree: TreeShape,
}

impl ClassPrediction {
    /// Formula-predicted cycle census: length -> number of cycles.
    pub fn formula_census(&self) -> BTreeMap<u64, BigInt> {
        let mut census = BTreeMap::new();
        for cc in &self.cycle_classes {
            if cc.excluded.is_none() && !cc.count.is_zero() {
                *census.entry(cc.s).or_insert_with(BigInt::zero) += &cc.count;
            }
        }
        census
    }
}

/// Predictions for both classes plus the shared E_0 orbit data.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub n: u32,
    pub alpha: QuadInt,
    pub alpha_factors: Factorization,
    pub a: ClassPrediction,
    pub b: ClassPrediction,
    pub e0: E0Orbits,
}

impl StructureReport {
    pub fn class(&self, side: Side) -> &ClassPrediction {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    /// Full predicted census for a class: formula cycles plus the special
    /// cycles traced through E_0.
    pub fn predicted_census(&self, side: Side) -> BTreeMap<u64, BigInt> {
        let mut census = self.class(side).formula_census();
        for cyc in &self.e0.cycles {
            *census.entry(cyc.length as u64).or_insert_with(BigInt::zero) += 1;
        }
        census
    }
}

/// Run both class pipelines.
pub fn predict(
    curve: &Curve,
    endo: &EndoMap,
    order: &QuadOrder,
    pi: &QuadInt,
) -> Result<StructureReport> {
    let n = curve.ext_degree();
    let alpha_factors = order.factor_principal(endo.rep())?;
    let e0 = trace_e0(curve, endo)?;
    let mut predictions = Vec::new();
    for side in [Side::A, Side::B] {
        let delta = delta_of(order, pi, n, side);
        let delta_factors = order.factor_principal(&delta)?;
        let split = split_ct(side, delta.clone(), &delta_factors, &alpha_factors);
        let mut cycle_classes = Vec::new();
        for h in enumerate_h(&split.ic) {
            cycle_classes.push(cycle_class(order, endo.rep(), &split.ic, &h)?);
        }
        let tree = tree_shape(order, &split, &alpha_factors, &e0)?;
        predictions.push(ClassPrediction { side, delta, delta_factors, split, cycle_classes, tree });
    }
    let b = predictions.pop().unwrap();
    let a = predictions.pop().unwrap();
    Ok(StructureReport { n, alpha: endo.rep().clone(), alpha_factors, a, b, e0 })
}

/// One verified comparison between prediction and brute force.
#[derive(Debug, Clone)]
pub struct ReconcileItem {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

/// The full reconciliation verdict.
#[derive(Debug, Clone)]
pub struct ReconcileReport {
    pub items: Vec<ReconcileItem>,
    pub passed: bool,
}

fn census_string(census: &BTreeMap<u64, BigInt>) -> String {
    if census.is_empty() {
        return "(empty)".to_string();
    }
    census
        .iter()
        .map(|(len, cnt)| format!("{cnt}×len{len}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn levels_string(levels: &[BigInt]) -> String {
    if levels.is_empty() {
        return "depth 0".to_string();
    }
    format!(
        "({})",
        levels.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    )
}

/// Compare a [`StructureReport`] with a brute-force graph: per-class cycle
/// censuses, per-root tree depths and level sizes, the union of the A- and
/// B-trees at E_0 roots, the forward-closure lemmas and the counting
/// identities.
pub fn reconcile(report: &StructureReport, graph: &FunctionalGraph) -> ReconcileReport {
    let mut items = Vec::new();
    let mut push = |name: String, expected: String, actual: String| {
        let passed = expected == actual;
        items.push(ReconcileItem { name, passed, expected, actual });
    };

    // lemma stability
    let violations = graph.class_stability_violations();
    push(
        "lemma stability: r preserves A, B and E_0".into(),
        "0 violations".into(),
        format!("{} violations", violations.len()),
    );

    // partition identity
    let (na, nb, ne) = graph.class_sizes();
    push(
        "partition: #A + #B - #E_0 = q^n + 1".into(),
        format!("{}", graph.size()),
        format!("{}", na + nb - ne),
    );

    // conservation
    push(
        "conservation: Σ(cycles + trees) = q^n + 1".into(),
        format!("{}", graph.size()),
        format!("{}", graph.conservation_total()),
    );

    for side in [Side::A, Side::B] {
        let class = report.class(side);
        let name = side.name(report.n);

        // cycle census
        let predicted = report.predicted_census(side);
        let brute: BTreeMap<u64, BigInt> = graph
            .cycle_census(Some(side.tag()))
            .into_iter()
            .map(|(len, cnt)| (len as u64, BigInt::from(cnt)))
            .collect();
        push(
            format!("cycle census of {name}"),
            census_string(&predicted),
            census_string(&brute),
        );

        // counting identity: Σ s_h·|C_h| + special members = periodic in S
        let mut covered: BigInt = class
            .cycle_classes
            .iter()
            .map(|cc| BigInt::from(cc.s) * &cc.count)
            .sum();
        for cyc in &report.e0.cycles {
            covered += BigInt::from(cyc.length);
        }
        let brute_periodic = graph
            .periodic_vertices()
            .filter(|&v| graph.class_flags(v).has(side.tag()))
            .count();
        push(
            format!("periodic count of {name}"),
            covered.to_string(),
            brute_periodic.to_string(),
        );

        // trees at every periodic root of the class
        let profiles = graph.tree_profiles(Some(side.tag()));
        let mut roots_checked = 0usize;
        let mut tree_ok = true;
        let mut first_fail = String::new();
        for v in graph.periodic_vertices() {
            let fl = graph.class_flags(v);
            if !fl.has(side.tag()) {
                continue;
            }
            roots_checked += 1;
            let expect: Vec<BigInt> = if fl.in_e0 {
                class
                    .tree
                    .e0_root_levels
                    .iter()
                    .find(|(r, _)| *r == v)
                    .map(|(_, l)| l.clone())
                    .unwrap_or_default()
            } else {
                class.tree.non_e0_levels.clone()
            };
            let mut expect = expect;
            while expect.last().map_or(false, |x| x.is_zero()) {
                expect.pop();
            }
            let got: Vec<BigInt> = profiles
                .get(&v)
                .map(|t| t.levels.iter().map(|&x| BigInt::from(x)).collect())
                .unwrap_or_default();
            if got != expect {
                tree_ok = false;
                if first_fail.is_empty() {
                    first_fail = format!(
                        "root {v}: predicted {} vs brute {}",
                        levels_string(&expect),
                        levels_string(&got)
                    );
                }
            }
            // non-E_0 roots: the unrestricted tree must coincideytes with the
            // class tree (every predecessor stays in S \ E_0)
        }
        push(
            format!("tree shapes of {name} ({roots_checked} roots)"),
            "all roots match".into(),
            if tree_ok { "all roots match".into() } else { first_fail },
        );
    }

    // unrestricted trees: at non-E_0 roots T^S = T^{q^n}; at E_0 roots the
    // levels are |T^A_h| + |T^B_h| - ṽ_h
    let unrestricted = graph.tree_profiles(None);
    let mut ok = true;
    let mut first_fail = String::new();
    for v in graph.periodic_vertices() {
        let fl = graph.class_flags(v);
        let got: Vec<BigInt> = unrestricted
            .get(&v)
            .map(|t| t.levels.iter().map(|&x| BigInt::from(x)).collect())
            .unwrap_or_default();
        let mut expect: Vec<BigInt> = if fl.in_e0 {
            let a_levels = report
                .a
                .tree
                .e0_root_levels
                .iter()
                .find(|(r, _)| *r == v)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            let b_levels = report
                .b
                .tree
                .e0_root_levels
                .iter()
                .find(|(r, _)| *r == v)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            let adj = report
                .a
                .tree
                .e0_adjustments
                .iter()
                .find(|(r, _)| *r == v)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            let adj_b = report
                .b
                .tree
                .e0_adjustments
                .iter()
                .find(|(r, _)| *r == v)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            let depth = a_levels.len().max(b_levels.len());
            let mut out = Vec::with_capacity(depth);
            for h in 0..depth {
                let mut t = BigInt::zero();
                if let Some(x) = a_levels.get(h) {
                    t += x;
                }
                if let Some(x) = b_levels.get(h) {
                    t += x;
                }
                // ṽ_h is counted in both classes; remove one copy
                let a_adj = adj.get(h).cloned().unwrap_or_default();
                let b_adj = adj_b.get(h).cloned().unwrap_or_default();
                debug_assert_eq!(a_adj, b_adj);
                t -= a_adj;
                out.push(t);
            }
            out
        } else if fl.in_a {
            report.a.tree.non_e0_levels.clone()
        } else {
            report.b.tree.non_e0_levels.clone()
        };
        while expect.last().map_or(false, |x| x.is_zero()) {
            expect.pop();
        }
        if got != expect {
            ok = false;
            if first_fail.is_empty() {
                first_fail = format!(
                    "root {v}: predicted {} vs brute {}",
                    levels_string(&expect),
                    levels_string(&got)
                );
            }
        }
    }
    push(
        "unrestricted trees (union T^A ∪ T^B at E_0 roots)".into(),
        "all roots match".into(),
        if ok { "all roots match".into() } else { first_fail },
    );

    let passed = items.iter().all(|i| i.passed);
    ReconcileReport { items, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::dynamics::build_graph;
    use crate::ff::{Field, Poly};
    use crate::quadorder::frobenius_rep;
    use std::sync::Arc;

    fn example_1() -> (Curve, EndoMap, QuadOrder, QuadInt) {
        let f = Arc::new(Field::new(73, 1, None).unwrap());
        let zero = f.zero();
        let curve = Curve::new(
            f.clone(),
            1,
            zero.clone(),
            zero.clone(),
            zero.clone(),
            f.elem_from_int(-1),
            zero,
        )
        .unwrap();
        let a = Poly::from_ints(&f, &[3, 0, -9, 0, 15, 0, -15, 0, 9, 0, -3]);
        let b = Poly::from_ints(&f, &[0, 1, 0, 28, 0, -21, 0, 28, 0, 1]);
        let endo = EndoMap::new(&f, a, b, None, QuadInt::new(3, -1)).unwrap();
        let (order, pi) = frobenius_rep(73, 80, -1).unwrap();
        (curve, endo, order, pi)
    }

    #[test]
    fn delta_values() {
        let (_, _, order, pi) = example_1();
        assert_eq!(delta_of(&order, &pi, 1, Side::A), QuadInt::new(-4, 8));
        assert_eq!(delta_of(&order, &pi, 1, Side::B), QuadInt::new(-2, 8));
        assert_eq!(order.norm(&delta_of(&order, &pi, 1, Side::B)), BigInt::from(68));
        let r21 = QuadOrder::new(-21).unwrap();
        let pi25 = QuadInt::new(2, 1);
        assert_eq!(delta_of(&r21, &pi25, 2, Side::B), QuadInt::new(-16, 4));
    }

    #[test]
    fn split_ct_example_1() {
        let (_, endo, order, pi) = example_1();
        let afac = order.factor_principal(endo.rep()).unwrap();
        // A side: both primes of (δ) divide (α): I_c empty
        let delta = delta_of(&order, &pi, 1, Side::A);
        let dfac = order.factor_principal(&delta).unwrap();
        let split = split_ct(Side::A, delta, &dfac, &afac);
        assert!(split.ic.is_empty());
        assert_eq!(split.it.len(), 2);
        // B side: I_c = (-1+4i) norm 17, I_t = (1+i)²
        let delta = delta_of(&order, &pi, 1, Side::B);
        let dfac = order.factor_principal(&delta).unwrap();
        let split = split_ct(Side::B, delta, &dfac, &afac);
        assert_eq!(split.ic.len(), 1);
        assert_eq!(split.ic[0].p, 17);
        assert_eq!(split.it.len(), 1);
        assert_eq!((split.it[0].p, split.it[0].exponent), (2, 2));
    }

    #[test]
    fn n_count_cases() {
        let order = QuadOrder::new(-19).unwrap();
        // split 17, e = 1: n_1 = 16
        let f17 = order.factor_principal(&QuadInt::new(3, 1)).unwrap().factors[0].clone();
        assert_eq!(n_count(&f17, 0).unwrap(), BigInt::one());
        assert_eq!(n_count(&f17, 1).unwrap(), BigInt::from(16));
        assert!(matches!(n_count(&f17, 2), Err(Error::LevelOutOfRange { .. })));
        // inert 2, e = 1: n_1 = 3
        let f2 = order.factor_principal(&QuadInt::new(2, 0)).unwrap().factors[0].clone();
        assert_eq!(n_count(&f2, 1).unwrap(), BigInt::from(3));
        // split 5 at level 2 (from (π+1) = (1-ω)²(2)): n_2 = 20
        let fac = order.factor_principal(&QuadInt::new(8, 2)).unwrap();
        let f5 = fac.factors[0].clone();
        assert_eq!((f5.p, f5.exponent), (5, 2));
        assert_eq!(n_count(&f5, 2).unwrap(), BigInt::from(20));
        // ramified odd exponent: (1+i)^5 in Z[i] would have h_max = 3
        let zi = QuadOrder::new(-1).unwrap();
        let f = zi.factor_principal(&QuadInt::new(4, 4)).unwrap().factors[0].clone();
        assert_eq!((f.p, f.exponent), (2, 5));
        assert_eq!(h_max(&f), 3);
        assert_eq!(n_count(&f, 1).unwrap(), BigInt::from(3));
        assert_eq!(n_count(&f, 2).unwrap(), BigInt::from(12));
        assert_eq!(n_count(&f, 3).unwrap(), BigInt::from(16));
    }

    #[test]
    fn s_min_example_values() {
        // Example 1, B side: s at (-1+4i), h=1 is 8
        let zi = QuadOrder::new(-1).unwrap();
        let alpha = QuadInt::new(3, -1);
        let delta = QuadInt::new(-2, 8);
        let fac = zi.factor_principal(&delta).unwrap();
        let b17 = fac.factors[0].clone();
        assert_eq!(s_min(&zi, &alpha, &b17, 1).unwrap().0, 8);
        assert_eq!(s_min(&zi, &alpha, &b17, 0).unwrap(), (1, 1));
        // Example 2: s at (2), h=1 is 3
        let r19 = QuadOrder::new(-19).unwrap();
        let alpha = QuadInt::new(3, 1);
        let f2 = r19.factor_principal(&QuadInt::new(2, 0)).unwrap().factors[0].clone();
        assert_eq!(s_min(&r19, &alpha, &f2, 1).unwrap().0, 3);
        // Example 3: s at (ω-4), h=1 is 18
        let r21 = QuadOrder::new(-21).unwrap();
        let alpha = QuadInt::new(1, 1);
        let fac = r21.factor_principal(&QuadInt::new(-16, 4)).unwrap();
        let b37 = fac.factors[0].clone();
        assert_eq!(b37.p, 37);
        assert_eq!(s_min(&r21, &alpha, &b37, 1).unwrap(), (18, -1));
    }

    #[test]
    fn s_min_monotone_in_h() {
        // Example 2, B side: (π+1) = (1-ω)²·(2) is coprime to (α) = (3+ω)
        let r19 = QuadOrder::new(-19).unwrap();
        let alpha = QuadInt::new(3, 1);
        let fac = r19.factor_principal(&QuadInt::new(8, 2)).unwrap();
        for factor in &fac.factors {
            let mut prev = 0;
            for h in 0..=h_max(factor) {
                let (s, _) = s_min(&r19, &alpha, factor, h).unwrap();
                assert!(s >= prev);
                prev = s;
            }
        }
        // s_min demands invertibility: primes dividing (α) exceed the cap
        let zi = QuadOrder::new(-1).unwrap();
        let alpha = QuadInt::new(3, -1);
        let shared = zi.factor_principal(&QuadInt::new(-4, 8)).unwrap().factors[1].clone();
        assert_eq!(shared.p, 2);
        assert!(matches!(s_min(&zi, &alpha, &shared, 1), Err(Error::SearchCapExceeded(_))));
    }

    #[test]
    fn cycle_classes_example_1_b_side() {
        let (curve, endo, order, pi) = example_1();
        let report = predict(&curve, &endo, &order, &pi).unwrap();
        // B side: h=(1) gives one 8-cycle
        let census = report.b.formula_census();
        assert_eq!(census, BTreeMap::from([(8, BigInt::one())]));
        // A side: formula contributes nothing; special cycles: just ∞
        assert!(report.a.formula_census().is_empty());
        assert_eq!(report.e0.cycles.len(), 1);
        assert_eq!(report.e0.cycles[0].length, 1);
        // predicted censuses including specials
        assert_eq!(report.predicted_census(Side::A), BTreeMap::from([(1, BigInt::one())]));
        assert_eq!(
            report.predicted_census(Side::B),
            BTreeMap::from([(1, BigInt::one()), (8, BigInt::one())])
        );
        // trees: A side depth 4 with v = (9, 10, 20, 40), ∞-levels (5,6,10,20)
        assert_eq!(report.a.tree.depth, 4);
        assert_eq!(
            report.a.tree.v,
            vec![BigInt::from(9), BigInt::from(10), BigInt::from(20), BigInt::from(40)]
        );
        let inf = curve.field().size() as u32;
        let (root, levels) = &report.a.tree.e0_root_levels[0];
        assert_eq!(*root, inf);
        assert_eq!(
            *levels,
            vec![BigInt::from(5), BigInt::from(6), BigInt::from(10), BigInt::from(20)]
        );
        // B side: depth 2, non-E_0 levels (1, 2), ∞-levels (1, 2)
        assert_eq!(report.b.tree.depth, 2);
        assert_eq!(report.b.tree.non_e0_levels, vec![BigInt::from(1), BigInt::from(2)]);
        let (_, levels) = &report.b.tree.e0_root_levels[0];
        assert_eq!(*levels, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn reconcile_example_1() {
        let (curve, endo, order, pi) = example_1();
        let report = predict(&curve, &endo, &order, &pi).unwrap();
        let graph = build_graph(&curve, &endo, 1).unwrap();
        let rec = reconcile(&report, &graph);
        for item in &rec.items {
            assert!(item.passed, "{}: {} vs {}", item.name, item.expected, item.actual);
        }
        assert!(rec.passed);
    }

    #[test]
    fn reconcile_catches_a_wrong_representation() {
        let (curve, _, order, pi) = example_1();
        let f = curve.field().clone();
        let a = Poly::from_ints(&f, &[3, 0, -9, 0, 15, 0, -15, 0, 9, 0, -3]);
        let b = Poly::from_ints(&f, &[0, 1, 0, 28, 0, -21, 0, 28, 0, 1]);
        // conjugate representation: wrong I_c/I_t routing on the A side
        let endo = EndoMap::new(&f, a, b, None, QuadInt::new(3, 1)).unwrap();
        let report = predict(&curve, &endo, &order, &pi).unwrap();
        let graph = build_graph(&curve, &endo, 1).unwrap();
        let rec = reconcile(&report, &graph);
        assert!(!rec.passed);
    }

    #[test]
    fn h_enumeration_covers_the_box() {
        let zi = QuadOrder::new(-1).unwrap();
        let fac = zi.factor_principal(&QuadInt::new(-4, 8)).unwrap();
        let tuples = enumerate_h(&fac.factors);
        // bounds: split 5 has e=1, ramified 2^4 has h_max = 2: 2 × 3 tuples
        assert_eq!(tuples.len(), 6);
        assert!(tuples.contains(&vec![0, 0]));
        assert!(tuples.contains(&vec![1, 2]));
    }
}
