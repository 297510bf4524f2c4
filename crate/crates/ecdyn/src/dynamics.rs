//! Brute-force construction of the functional graph G^{q^n} of the map r on
//! P¹(F_{q^n}), exact cycle and tree extraction, class-restricted censuses
//! and deterministic DOT export. This is the oracle the predictor is
//! reconciled against.
//!
//! Vertices are indexed by field element index, with ∞ as the last vertex.
//! Periodicity is found by in-degree peeling: repeatedly remove vertices
//! with no remaining predecessors; the survivors are exactly the r-periodic
//! elements. Depth and root annotations come from a reverse BFS out of the
//! periodic set.

use crate::curve::{ClassFlags, ClassTag, Curve, EndoMap};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElem, ProjVertex};
use std::collections::BTreeMap;
use std::collections::VecDeque;

/// Cap on q^n + 1 when building a graph.
pub const MAX_GRAPH_SIZE: u64 = crate::ff::MAX_FIELD_SIZE as u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    pub length: usize,
    /// Vertex indices in traversal order, starting from the smallest-index
    /// member encountered first.
    pub members: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeRecord {
    pub root: u32,
    pub depth: usize,
    /// levels[h-1] = number of (restricted) tree vertices at level h.
    pub levels: Vec<u64>,
}

/// The functional graph of r with all per-vertex annotations.
#[derive(Debug, Clone)]
pub struct FunctionalGraph {
    size: usize,
    succ: Vec<u32>,
    periodic: Vec<bool>,
    depth: Vec<u32>,
    root: Vec<u32>,
    flags: Vec<ClassFlags>,
    cycles: Vec<CycleRecord>,
}

/// r(x): ∞ if x = ∞ or b(x) = 0, else a(x)/b(x).
pub fn eval_r(field: &Field, endo: &EndoMap, x: &ProjVertex) -> ProjVertex {
    match x {
        ProjVertex::Infinity => ProjVertex::Infinity,
        ProjVertex::Finite(x) => {
            let bx = endo.denominator().eval(field, x);
            if field.is_zero(&bx) {
                ProjVertex::Infinity
            } else {
                let ax = endo.numerator().eval(field, x);
                ProjVertex::Finite(field.div(&ax, &bx).unwrap())
            }
        }
    }
}

/// Successor array over vertex indices for one contiguous range of finite
/// vertices, with batched inversion of the denominators.
fn fill_succ_range(field: &Field, endo: &EndoMap, start: u64, out: &mut [u32], inf_idx: u32) {
    let mut pending: Vec<(usize, FieldElem, FieldElem)> = Vec::with_capacity(out.len());
    for (off, slot) in out.iter_mut().enumerate() {
        let x = field.elem_from_index(start + off as u64);
        let bx = endo.denominator().eval(field, &x);
        if field.is_zero(&bx) {
            *slot = inf_idx;
        } else {
            let ax = endo.numerator().eval(field, &x);
            pending.push((off, ax, bx));
        }
    }
    // Montgomery trick: one field inversion for the whole range
    if pending.is_empty() {
        return;
    }
    let mut prefix = Vec::with_capacity(pending.len());
    let mut acc = field.one();
    for (_, _, bx) in &pending {
        acc = field.mul(&acc, bx);
        prefix.push(acc.clone());
    }
    let mut inv_acc = field.inv(&acc).expect("product of nonzero denominators");
    for i in (0..pending.len()).rev() {
        let (off, ax, bx) = &pending[i];
        let inv_bx = if i == 0 {
            inv_acc.clone()
        } else {
            field.mul(&inv_acc, &prefix[i - 1])
        };
        out[*off] = field.index_of(&field.mul(ax, &inv_bx)) as u32;
        inv_acc = field.mul(&inv_acc, bx);
    }
}

/// Build G^{q^n} for the loaded curve and endomorphism. `threads` > 1
/// evaluates the successor array in parallel over disjoint ranges; the
/// result is independent of the thread count.
pub fn build_graph(curve: &Curve, endo: &EndoMap, threads: usize) -> Result<FunctionalGraph> {
    let field = curve.field();
    let q = field.size();
    if q + 1 > MAX_GRAPH_SIZE {
        return Err(Error::ScaleExceeded { size: q as u128 + 1, cap: MAX_GRAPH_SIZE as u128 });
    }
    let size = (q + 1) as usize;
    let inf_idx = (size - 1) as u32;
    let mut succ = vec![0u32; size];
    succ[size - 1] = inf_idx;
    let threads = threads.max(1).min(size);
    let finite = &mut succ[..size - 1];
    if threads == 1 || finite.len() < 1024 {
        fill_succ_range(field, endo, 0, finite, inf_idx);
    } else {
        let chunk = finite.len().div_ceil(threads);
        std::thread::scope(|scope| {
            for (i, slice) in finite.chunks_mut(chunk).enumerate() {
                let field = &**field;
                scope.spawn(move || {
                    fill_succ_range(field, endo, (i * chunk) as u64, slice, inf_idx);
                });
            }
        });
    }

    // in-degree peeling: survivors are the periodic vertices
    let mut indeg = vec![0u32; size];
    for &w in &succ {
        indeg[w as usize] += 1;
    }
    let mut queue: VecDeque<u32> =
        (0..size as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut periodic = vec![true; size];
    while let Some(v) = queue.pop_front() {
        periodic[v as usize] = false;
        let w = succ[v as usize] as usize;
        indeg[w] -= 1;
        if indeg[w] == 0 {
            queue.push_back(w as u32);
        }
    }

    // cycles, walked from the smallest unvisited periodic vertex
    let mut cycles = Vec::new();
    let mut seen = vec![false; size];
    for v in 0..size as u32 {
        if periodic[v as usize] && !seen[v as usize] {
            let mut members = Vec::new();
            let mut w = v;
            while !seen[w as usize] {
                seen[w as usize] = true;
                members.push(w);
                w = succ[w as usize];
            }
            cycles.push(CycleRecord { length: members.len(), members });
        }
    }

    // predecessor lists in CSR form
    let mut offsets = vec![0usize; size + 1];
    for &w in &succ {
        offsets[w as usize + 1] += 1;
    }
    for i in 0..size {
        offsets[i + 1] += offsets[i];
    }
    let mut preds = vec![0u32; size];
    let mut cursor = offsets.clone();
    for (v, &w) in succ.iter().enumerate() {
        preds[cursor[w as usize]] = v as u32;
        cursor[w as usize] += 1;
    }

    // reverse BFS out of the periodic set: depth to cycle and tree root
    let mut depth = vec![0u32; size];
    let mut root: Vec<u32> = (0..size as u32).collect();
    let mut bfs: VecDeque<u32> = VecDeque::new();
    for v in 0..size {
        if periodic[v] {
            for &u in &preds[offsets[v]..offsets[v + 1]] {
                if !periodic[u as usize] {
                    depth[u as usize] = 1;
                    root[u as usize] = v as u32;
                    bfs.push_back(u);
                }
            }
        }
    }
    while let Some(v) = bfs.pop_front() {
        for &u in &preds[offsets[v as usize]..offsets[v as usize + 1]] {
            depth[u as usize] = depth[v as usize] + 1;
            root[u as usize] = root[v as usize];
            bfs.push_back(u);
        }
    }

    let flags = curve.class_flags_all();
    debug_assert_eq!(flags.len(), size);
    Ok(FunctionalGraph { size, succ, periodic, depth, root, flags, cycles })
}

impl FunctionalGraph {
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn infinity_index(&self) -> u32 {
        (self.size - 1) as u32
    }
    pub fn succ(&self, v: u32) -> u32 {
        self.succ[v as usize]
    }
    pub fn is_periodic(&self, v: u32) -> bool {
        self.periodic[v as usize]
    }
    pub fn depth_to_cycle(&self, v: u32) -> u32 {
        self.depth[v as usize]
    }
    pub fn root_of(&self, v: u32) -> u32 {
        self.root[v as usize]
    }
    pub fn class_flags(&self, v: u32) -> ClassFlags {
        self.flags[v as usize]
    }
    pub fn cycles(&self) -> &[CycleRecord] {
        &self.cycles
    }
    pub fn vertex(&self, field: &Field, v: u32) -> ProjVertex {
        if v == self.infinity_index() {
            ProjVertex::Infinity
        } else {
            ProjVertex::Finite(field.elem_from_index(v as u64))
        }
    }
    pub fn periodic_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.size as u32).filter(|&v| self.periodic[v as usize])
    }

    /// Cycle-length multiset, optionally restricted to cycles whose
    /// vertices carry the class flag. Classes are forward-closed, so a
    /// cycle is in the class iff any of its members is.
    pub fn cycle_census(&self, restrict: Option<ClassTag>) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for cyc in &self.cycles {
            let keep = match restrict {
                None => true,
                Some(tag) => self.flags[cyc.members[0] as usize].has(tag),
            };
            if keep {
                *census.entry(cyc.length).or_insert(0) += 1;
            }
        }
        census
    }

    /// Level sizes of the tree hanging off one periodic vertex, excluding
    /// the cycle predecessor; level h = vertices at distance h whose whole
    /// forward path stays off the cycle. With a restriction, only vertices
    /// carrying the class flag are counted.
    pub fn tree_profile(&self, root: u32, restrict: Option<ClassTag>) -> Result<TreeRecord> {
        if !self.periodic[root as usize] {
            return Err(Error::NotPeriodic(root));
        }
        Ok(self.tree_profiles(restrict).remove(&root).unwrap_or(TreeRecord {
            root,
            depth: 0,
            levels: vec![],
        }))
    }

    /// Tree profiles for every periodic root in one pass.
    pub fn tree_profiles(&self, restrict: Option<ClassTag>) -> BTreeMap<u32, TreeRecord> {
        let mut out: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
        for v in 0..self.size as u32 {
            if self.periodic[v as usize] {
                out.entry(v).or_default();
                continue;
            }
            if let Some(tag) = restrict {
                if !self.flags[v as usize].has(tag) {
                    continue;
                }
            }
            let levels = out.entry(self.root[v as usize]).or_default();
            let h = self.depth[v as usize] as usize;
            if levels.len() < h {
                levels.resize(h, 0);
            }
            levels[h - 1] += 1;
        }
        out.into_iter()
            .map(|(root, mut levels)| {
                while levels.last() == Some(&0) {
                    levels.pop();
                }
                (root, TreeRecord { root, depth: levels.len(), levels })
            })
            .collect()
    }

    /// Violations of the forward-closure lemmas: vertices whose class flag
    /// is not preserved by r. Empty for a genuine endomorphism.
    pub fn class_stability_violations(&self) -> Vec<u32> {
        let mut bad = Vec::new();
        for v in 0..self.size as u32 {
            let fv = self.flags[v as usize];
            let fw = self.flags[self.succ[v as usize] as usize];
            if (fv.in_a && !fw.in_a) || (fv.in_b && !fw.in_b) || (fv.in_e0 && !fw.in_e0) {
                bad.push(v);
            }
        }
        bad
    }

    /// (#A, #B, #E0) over all of P¹.
    pub fn class_sizes(&self) -> (usize, usize, usize) {
        let mut na = 0;
        let mut nb = 0;
        let mut ne = 0;
        for fl in &self.flags {
            na += fl.in_a as usize;
            nb += fl.in_b as usize;
            ne += fl.in_e0 as usize;
        }
        (na, nb, ne)
    }

    /// Σ over components of (cycle length + tree sizes); equals the vertex
    /// count for any functional graph.
    pub fn conservation_total(&self) -> u64 {
        let cycle_total: u64 = self.cycles.iter().map(|c| c.length as u64).sum();
        let tree_total: u64 = self
            .tree_profiles(None)
            .values()
            .map(|t| t.levels.iter().sum::<u64>())
            .sum();
        cycle_total + tree_total
    }

    /// Deterministic DOT rendering: nodes sorted by vertex index, UTF-8
    /// labels from the exponent convention, LF line endings.
    pub fn export_dot(&self, field: &Field, color_by_class: bool) -> String {
        let mut out = String::new();
        out.push_str("digraph functional_graph {\n");
        out.push_str("  node [shape=circle, fontsize=10];\n");
        for v in 0..self.size as u32 {
            let label = field.vertex_label(&self.vertex(field, v));
            let fl = self.flags[v as usize];
            let mut attrs = format!("label=\"{label}\"");
            if color_by_class {
                let color = if fl.in_e0 {
                    "gold"
                } else if fl.in_a {
                    "lightblue"
                } else {
                    "lightsalmon"
                };
                attrs.push_str(&format!(", style=filled, fillcolor={color}"));
            }
            if self.periodic[v as usize] {
                attrs.push_str(", penwidth=2");
            }
            out.push_str(&format!("  v{v} [{attrs}];\n"));
        }
        for v in 0..self.size as u32 {
            out.push_str(&format!("  v{v} -> v{};\n", self.succ[v as usize]));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Poly;
    use crate::quadorder::QuadInt;
    use std::sync::Arc;

    fn example_1() -> (Curve, EndoMap) {
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
        // α₁ = -3·σ₁ with σ₁ = (x¹⁰-3x⁸+5x⁶-5x⁴+3x²-1)/(x⁹+28x⁷-21x⁵+28x³+x)
        let a = Poly::from_ints(&f, &[3, 0, -9, 0, 15, 0, -15, 0, 9, 0, -3]);
        let b = Poly::from_ints(&f, &[0, 1, 0, 28, 0, -21, 0, 28, 0, 1]);
        let endo = EndoMap::new(&f, a, b, None, QuadInt::new(3, -1)).unwrap();
        (curve, endo)
    }

    #[test]
    fn eval_r_matches_the_paper_edges() {
        let (curve, endo) = example_1();
        let f = curve.field();
        assert_eq!(eval_r(f, &endo, &ProjVertex::Infinity), ProjVertex::Infinity);
        // b(0) = 0 so r('0') = ∞
        assert_eq!(eval_r(f, &endo, &ProjVertex::Finite(f.zero())), ProjVertex::Infinity);
        // cycle edge 5 -> 15 in exponent labels
        let g5 = f.pow(&f.generator(), 5);
        let img = eval_r(f, &endo, &ProjVertex::Finite(g5));
        assert_eq!(f.vertex_label(&img), "15");
    }

    #[test]
    fn example_1_graph_structure() {
        let (curve, endo) = example_1();
        let g = build_graph(&curve, &endo, 1).unwrap();
        assert_eq!(g.size(), 74);
        assert!(g.class_stability_violations().is_empty());
        assert_eq!(g.conservation_total(), 74);
        // full census: the fixed point ∞ and one 8-cycle
        let census = g.cycle_census(None);
        assert_eq!(census, BTreeMap::from([(1, 1), (8, 1)]));
        // B-side: both cycles are in B_1; A-side: only ∞
        assert_eq!(g.cycle_census(Some(ClassTag::B)), BTreeMap::from([(1, 1), (8, 1)]));
        assert_eq!(g.cycle_census(Some(ClassTag::A)), BTreeMap::from([(1, 1)]));
        // tree at ∞ restricted to A_1: depth 4, levels (5, 6, 10, 20)
        let t = g.tree_profile(g.infinity_index(), Some(ClassTag::A)).unwrap();
        assert_eq!(t.levels, vec![5, 6, 10, 20]);
        // restricted to B_1: depth 2, levels (1, 2)
        let t = g.tree_profile(g.infinity_index(), Some(ClassTag::B)).unwrap();
        assert_eq!(t.levels, vec![1, 2]);
        // every non-E0 periodic B root carries a (1, 2) tree
        for v in g.periodic_vertices() {
            let fl = g.class_flags(v);
            if fl.in_b && !fl.in_e0 {
                let t = g.tree_profile(v, Some(ClassTag::B)).unwrap();
                assert_eq!(t.levels, vec![1, 2], "root {v}");
            }
        }
        // unrestricted tree at ∞ equals the A_1 tree here
        let t = g.tree_profile(g.infinity_index(), None).unwrap();
        assert_eq!(t.levels, vec![5, 6, 10, 20]);
        assert!(matches!(g.tree_profile(2, None), Err(Error::NotPeriodic(2))));
    }

    #[test]
    fn thread_count_does_not_change_the_graph() {
        let (curve, endo) = example_1();
        let g1 = build_graph(&curve, &endo, 1).unwrap();
        let g4 = build_graph(&curve, &endo, 4).unwrap();
        assert_eq!(g1.succ, g4.succ);
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let (curve, endo) = example_1();
        let g = build_graph(&curve, &endo, 1).unwrap();
        let dot = g.export_dot(curve.field(), true);
        let dot2 = g.export_dot(curve.field(), true);
        assert_eq!(dot, dot2);
        assert_eq!(dot.matches("->").count(), 74);
        assert_eq!(dot.matches("label=").count(), 74);
        assert!(dot.contains("label=\"∞\""));
        assert!(dot.contains("label=\"'0'\""));
        assert!(dot.ends_with("}\n"));
        assert!(!dot.contains('\r'));
    }

    #[test]
    fn tiny_field_graph() {
        // F_2 with r(x) = x: 3 vertices ∞, '0', g⁰, all fixed
        let f = Arc::new(Field::new(2, 1, None).unwrap());
        let curve = Curve::new(
            f.clone(),
            1,
            f.one(),
            f.zero(),
            f.zero(),
            f.zero(),
            f.one(),
        )
        .unwrap();
        let endo = EndoMap::new(
            &f,
            Poly::from_ints(&f, &[0, 1]),
            Poly::from_ints(&f, &[1]),
            None,
            QuadInt::new(1, 0),
        )
        .unwrap();
        let g = build_graph(&curve, &endo, 1).unwrap();
        assert_eq!(g.size(), 3);
        let dot = g.export_dot(&f, false);
        assert_eq!(dot.matches("->").count(), 3);
        assert_eq!(g.cycle_census(None), BTreeMap::from([(1, 3)]));
    }
}
