//! Brute-force checks that share no state with the strategies: bijection
//! scans of small finite posets, from-scratch step rechecks, and pointwise
//! conformance of the witness operations.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certificate::Invariant;
use crate::condensation::Pair;
use crate::element::Element;
use crate::error::OracleError;
use crate::order::{FinitePoset, Structure};
use crate::strategies::universal::pregrown_state;
use crate::structures::{structure_by_id, RandomPosetState};
use crate::verify::VerificationReport;

/// Largest poset [`exhaustive_endo_scan`] accepts.
pub const SCAN_LIMIT: usize = 8;
/// Largest size [`labeled_posets`] generates.
pub const GENERATOR_LIMIT: usize = 6;
/// Largest size [`labeled_posets_by_table`] filters.
pub const TABLE_LIMIT: usize = 5;

const PREFIX: u64 = 48;
const MAX_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub size: usize,
    pub bijections: u64,
    pub homomorphic: u64,
    pub automorphisms: u64,
    /// Homomorphic bijections whose inverse is not homomorphic.
    pub bad: Vec<Vec<usize>>,
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger suffix entry");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Classifies every bijection of the ground set of `fp`.
pub fn exhaustive_endo_scan(fp: &FinitePoset) -> Result<ScanReport, OracleError> {
    let n = fp.len();
    if n > SCAN_LIMIT {
        return Err(OracleError::SizeGuard { what: "the bijection scan", size: n, limit: SCAN_LIMIT });
    }
    let mut report = ScanReport { size: n, bijections: 0, homomorphic: 0, automorphisms: 0, bad: Vec::new() };
    let mut f: Vec<usize> = (0..n).collect();
    loop {
        report.bijections += 1;
        let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        if pairs().all(|(i, j)| !fp.leq(i, j) || fp.leq(f[i], f[j])) {
            report.homomorphic += 1;
            if pairs().all(|(i, j)| fp.leq(i, j) == fp.leq(f[i], f[j])) {
                report.automorphisms += 1;
            } else {
                report.bad.push(f.clone());
            }
        }
        if !next_permutation(&mut f) {
            return Ok(report);
        }
    }
}

fn poset_from_below(below: &[u64]) -> FinitePoset {
    let n = below.len();
    let table = (0..n)
        .map(|i| (0..n).map(|j| i == j || below[j] >> i & 1 == 1).collect())
        .collect();
    let elements = (0..n as i64).map(Element::Int).collect();
    FinitePoset::from_table(elements, table).expect("generated tables are partial orders")
}

/// All partial orders on `{0, .., n-1}`. Each is built by adding the last
/// point with a down-closed set below it and an up-closed set above it.
pub fn labeled_posets(n: usize) -> Result<Vec<FinitePoset>, OracleError> {
    if n > GENERATOR_LIMIT {
        return Err(OracleError::SizeGuard { what: "the poset generator", size: n, limit: GENERATOR_LIMIT });
    }
    // `below[j]` is the bitmask of points strictly below `j`.
    let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
    for m in 0..n {
        let mut next = Vec::new();
        for below in &layer {
            let above: Vec<u64> = (0..m)
                .map(|i| (0..m).filter(|&j| below[j] >> i & 1 == 1).fold(0, |acc, j| acc | 1 << j))
                .collect();
            for d in 0u64..1 << m {
                if (0..m).any(|i| d >> i & 1 == 1 && below[i] & !d != 0) {
                    continue;
                }
                for u in 0u64..1 << m {
                    let up_closed = (0..m).all(|i| u >> i & 1 == 0 || above[i] & !u == 0);
                    let separated = (0..m).all(|i| d >> i & 1 == 0 || above[i] & u == u);
                    if d & u != 0 || !up_closed || !separated {
                        continue;
                    }
                    let mut grown: Vec<u64> = below.iter().enumerate().map(|(j, &b)| b | if u >> j & 1 == 1 { d | 1 << m } else { 0 }).collect();
                    grown.push(d);
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    Ok(layer.iter().map(|b| poset_from_below(b)).collect())
}

/// All partial orders on `{0, .., n-1}` found by filtering every reflexive
/// relation for antisymmetry and transitivity.
pub fn labeled_posets_by_table(n: usize) -> Result<Vec<FinitePoset>, OracleError> {
    if n > TABLE_LIMIT {
        return Err(OracleError::SizeGuard { what: "the table filter", size: n, limit: TABLE_LIMIT });
    }
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << off.len() {
        let mut rel = vec![vec![false; n]; n];
        for (k, &(i, j)) in off.iter().enumerate() {
            rel[i][j] = bits >> k & 1 == 1;
        }
        (0..n).for_each(|i| rel[i][i] = true);
        let antisymmetric = off.iter().all(|&(i, j)| !(rel[i][j] && rel[j][i]));
        let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k])));
        if antisymmetric && transitive {
            let below = (0..n).map(|j| (0..n).filter(|&i| i != j && rel[i][j]).fold(0, |acc, i| acc | 1 << i)).collect::<Vec<u64>>();
            out.push(poset_from_below(&below));
        }
    }
    Ok(out)
}

/// Order table of a generated poset, row-major.
pub fn order_table(fp: &FinitePoset) -> Vec<bool> {
    let n = fp.len();
    (0..n).flat_map(|i| (0..n).map(move |j| fp.leq(i, j))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub size: usize,
    pub posets: usize,
    pub bijections: u64,
    pub homomorphic: u64,
    pub automorphisms: u64,
    pub bad: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteSweep {
    pub max_size: usize,
    pub sizes: Vec<SizeSummary>,
    /// Up to [`MAX_FAILURES`] offending bijections, as order tables and maps.
    pub failures: Vec<String>,
}

impl FiniteSweep {
    pub fn passed(&self) -> bool {
        self.sizes.iter().all(|s| s.bad == 0)
    }
}

/// Scans every labeled poset of size `0..=max_size`.
pub fn finite_sweep(max_size: usize) -> Result<FiniteSweep, OracleError> {
    if max_size > GENERATOR_LIMIT {
        return Err(OracleError::SizeGuard { what: "the poset generator", size: max_size, limit: GENERATOR_LIMIT });
    }
    let mut sweep = FiniteSweep { max_size, sizes: Vec::new(), failures: Vec::new() };
    for n in 0..=max_size {
        let posets = labeled_posets(n)?;
        let mut s = SizeSummary { size: n, posets: posets.len(), bijections: 0, homomorphic: 0, automorphisms: 0, bad: 0 };
        for fp in &posets {
            let r = exhaustive_endo_scan(fp)?;
            s.bijections += r.bijections;
            s.homomorphic += r.homomorphic;
            s.automorphisms += r.automorphisms;
            s.bad += r.bad.len() as u64;
            for f in r.bad.iter().take(MAX_FAILURES.saturating_sub(sweep.failures.len())) {
                sweep.failures.push(format!("table {:?} map {f:?}", order_table(fp)));
            }
        }
        sweep.sizes.push(s);
    }
    Ok(sweep)
}

/// Whether some pair of `pairs` is unrelated but has related images.
pub fn has_bad_pair(st: &dyn Structure, pairs: &[Pair]) -> bool {
    pairs.iter().any(|(x1, y1)| pairs.iter().any(|(x2, y2)| x1 != x2 && !st.leq(x1, x2) && st.leq(y1, y2)))
}

/// Rechecks the map `before ∪ added` from scratch: membership, freshness,
/// injectivity, order preservation, badness, and for open-domain
/// invariants down-closure of the domain. Field bounds, when given, must
/// dominate every domain and range point. Convexity needs the region
/// records of a certificate and is left to the verifier.
pub fn recheck_step(
    st: &dyn Structure,
    before: &[Pair],
    added: &[Pair],
    invariant: Invariant,
    upper: Option<&Element>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let all: Vec<&Pair> = before.iter().chain(added).collect();

    let errs = all
        .iter()
        .flat_map(|(x, y)| [x, y])
        .filter(|e| !st.contains(e))
        .map(|e| format!("{e} is not a member"))
        .collect();
    report.push("members", errs, "all points are members");

    let mut errs = Vec::new();
    for (x, y) in added {
        if before.iter().any(|(b, _)| b == x) {
            errs.push(format!("{x} is already in the domain"));
        }
        if before.iter().any(|(_, c)| c == y) {
            errs.push(format!("{y} is already in the range"));
        }
    }
    report.push("fresh", errs, "added points are new");

    let mut errs = Vec::new();
    for (i, (x1, y1)) in all.iter().enumerate() {
        for (x2, y2) in &all[i + 1..] {
            if x1 == x2 && y1 != y2 {
                errs.push(format!("{x1} has images {y1} and {y2}"));
            }
            if y1 == y2 && x1 != x2 {
                errs.push(format!("{x1} and {x2} both map to {y1}"));
            }
        }
    }
    report.push("injective", errs, "a function and injective");

    let mut errs = Vec::new();
    for (x1, y1) in &all {
        for (x2, y2) in &all {
            if st.leq(x1, x2) && !st.leq(y1, y2) {
                errs.push(format!("{x1} <= {x2} but {y1} </= {y2}"));
            }
        }
    }
    report.push("order", errs, "order preserving");

    let pairs: Vec<Pair> = all.iter().map(|p| (*p).clone()).collect();
    let errs = if has_bad_pair(st, &pairs) { vec![] } else { vec!["no unrelated pair has related images".into()] };
    report.push("bad", errs, "an unrelated pair has related images");

    if matches!(invariant, Invariant::OpenDomain | Invariant::OpenDomainBoundedField) {
        let dom: HashSet<&Element> = all.iter().map(|(x, _)| x).collect();
        let mut errs = Vec::new();
        for x in &dom {
            match st.principal_ideal(x) {
                Ok(ideal) => errs.extend(ideal.iter().filter(|z| !dom.contains(z)).map(|z| format!("{z} <= {x} is missing"))),
                Err(e) => errs.push(e.to_string()),
            }
        }
        report.push("open-domain", errs, "domain is down-closed");
    }

    if let Some(q) = upper {
        let errs = all
            .iter()
            .flat_map(|(x, y)| [x, y])
            .filter(|e| !st.leq(e, q))
            .map(|e| format!("{e} </= {q}"))
            .collect();
        report.push("bounded-field", errs, format!("field below {q}"));
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformanceReport {
    pub structure: String,
    pub seed: u64,
    pub trials: usize,
    /// Witnesses produced and checked.
    pub witnesses: u64,
    /// Requests the oracle judged invalid and the structure refused.
    pub rejected: u64,
    pub failures: Vec<String>,
}

impl ConformanceReport {
    fn new(structure: String, seed: u64, trials: usize) -> Self {
        ConformanceReport { structure, seed, trials, witnesses: 0, rejected: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(msg);
        }
    }
}

/// Draws random requests for every witness operation `structure`
/// supports and checks the answers pointwise.
pub fn witness_conformance(structure: &str, trials: usize, seed: u64) -> Result<ConformanceReport, OracleError> {
    if structure == "random-poset" {
        return Ok(random_poset_conformance(pregrown_state(), trials, seed));
    }
    let st = structure_by_id(structure)?;
    Ok(structure_conformance(st.as_ref(), trials, seed))
}

/// Conformance of upper bounds, minimal-layer elements, increasing chains
/// and ideal embeddings, drawn from the first enumerated elements.
pub fn structure_conformance(st: &dyn Structure, trials: usize, seed: u64) -> ConformanceReport {
    let mut rep = ConformanceReport::new(st.id(), seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prefix: Vec<Element> = (0..PREFIX).map_while(|n| st.enumerate(n)).collect();
    let caps = st.capabilities();
    let root = st.root();
    for t in 0..trials {
        let k = rng.gen_range(1..=3);
        let s: Vec<Element> = prefix.choose_multiple(&mut rng, k).cloned().collect();
        let shown = s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        if caps.directed {
            match st.upper_bound(&s) {
                Ok(u) if st.contains(&u) && s.iter().all(|x| st.leq(x, &u)) => rep.witnesses += 1,
                Ok(u) => rep.fail(format!("trial {t}: upper_bound({shown}) = {u} is not an upper bound")),
                Err(e) => rep.fail(format!("trial {t}: upper_bound({shown}): {e}")),
            }
            match st.strict_upper_bound(&s) {
                Ok(u) if st.contains(&u) && s.iter().all(|x| st.lt(x, &u)) => rep.witnesses += 1,
                Ok(u) => rep.fail(format!("trial {t}: strict_upper_bound({shown}) = {u} is not strictly above")),
                Err(e) => rep.fail(format!("trial {t}: strict_upper_bound({shown}): {e}")),
            }
            match st.increasing_chain_above(&s[0], &|_| false, 3) {
                Ok(c) if c.len() == 3 && st.lt(&s[0], &c[0]) && c.windows(2).all(|w| st.lt(&w[0], &w[1])) => rep.witnesses += 1,
                Ok(c) => rep.fail(format!("trial {t}: chain above {} is not increasing: {c:?}", s[0])),
                Err(e) => rep.fail(format!("trial {t}: chain above {}: {e}", s[0])),
            }
        }
        if caps.has_min_set {
            let i = rng.gen_range(0..4);
            match st.min_layer(i) {
                Ok(m) => match prefix.iter().find(|y| st.lt(y, &m) && Some(*y) != root.as_ref()) {
                    None if st.contains(&m) => rep.witnesses += 1,
                    None => rep.fail(format!("trial {t}: min_layer({i}) = {m} is not a member")),
                    Some(y) => rep.fail(format!("trial {t}: min_layer({i}) = {m} lies above {y}")),
                },
                Err(e) => rep.fail(format!("trial {t}: min_layer({i}): {e}")),
            }
        }
        if caps.self_embedding_above {
            let (a, p) = (&s[0], s.last().expect("nonempty"));
            match (st.embed_ideal_above(a, p), st.principal_ideal(a)) {
                (Ok(eta), Ok(ideal)) => {
                    let dom: HashSet<&Element> = eta.iter().map(|(x, _)| x).collect();
                    let ok = dom.len() == eta.len()
                        && ideal.len() == dom.len()
                        && ideal.iter().all(|x| dom.contains(x))
                        && eta.iter().all(|(_, y)| st.contains(y) && st.leq(p, y))
                        && eta.iter().all(|(x1, y1)| eta.iter().all(|(x2, y2)| st.leq(x1, x2) == st.leq(y1, y2)));
                    if ok {
                        rep.witnesses += 1;
                    } else {
                        rep.fail(format!("trial {t}: embedding of the ideal of {a} above {p} is not an order embedding into [{p}, .)"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => rep.fail(format!("trial {t}: embedding of the ideal of {a} above {p}: {e}")),
            }
        }
    }
    rep
}

fn valid_request(st: &RandomPosetState, l: &[usize], g: &[usize], u: &[usize]) -> bool {
    let all: HashSet<usize> = l.iter().chain(g).chain(u).copied().collect();
    all.len() == l.len() + g.len() + u.len()
        && l.iter().all(|&a| g.iter().all(|&b| st.lt(a, b)))
        && u.iter().all(|&c| l.iter().all(|&a| !st.lt(c, a)))
        && g.iter().all(|&b| u.iter().all(|&c| !st.lt(b, c)))
}

fn strict_order_errors(st: &RandomPosetState) -> Vec<String> {
    let n = st.len();
    let mut errs = Vec::new();
    for x in 0..n {
        if st.lt(x, x) {
            errs.push(format!("v{x} < v{x}"));
        }
        for y in (0..n).filter(|&y| st.lt(x, y)) {
            if st.lt(y, x) {
                errs.push(format!("v{x} < v{y} < v{x}"));
            }
            errs.extend((0..n).filter(|&z| st.lt(y, z) && !st.lt(x, z)).map(|z| format!("v{x} < v{y} < v{z} but not v{x} < v{z}")));
        }
    }
    errs
}

type Request = (Vec<usize>, Vec<usize>, Vec<usize>);

fn pick(rng: &mut ChaCha8Rng, from: &[usize]) -> Vec<usize> {
    let k = rng.gen_range(0..=2.min(from.len()));
    from.choose_multiple(rng, k).copied().collect()
}

/// Up to two vertices each for `L`, then `G` above all of `L`, then `U`
/// clear of both, so the extension conditions hold.
fn draw_valid_request(st: &RandomPosetState, rng: &mut ChaCha8Rng) -> Request {
    let vertices: Vec<usize> = (0..st.len()).collect();
    let l = pick(rng, &vertices);
    let above: Vec<usize> = vertices.iter().copied().filter(|&v| l.iter().all(|&a| st.lt(a, v))).collect();
    let g = pick(rng, &above);
    let free: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|v| !l.contains(v) && !g.contains(v))
        .filter(|&c| l.iter().all(|&a| !st.lt(c, a)) && g.iter().all(|&b| !st.lt(b, c)))
        .collect();
    let u = pick(rng, &free);
    (l, g, u)
}

/// Grows a random poset fragment by `steps` seeded one-point extensions.
pub fn grow_random(steps: usize, seed: u64) -> RandomPosetState {
    let mut st = RandomPosetState::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..steps {
        let (l, g, u) = draw_valid_request(&st, &mut rng);
        st.rp_witness(&l, &g, &u).expect("drawn requests satisfy the extension conditions");
    }
    st
}

/// Random one-point extension requests against a growing random poset.
/// Most requests satisfy the extension conditions by construction; the
/// rest are arbitrary and must be refused exactly when they are invalid.
pub fn random_poset_conformance(mut st: RandomPosetState, trials: usize, seed: u64) -> ConformanceReport {
    let mut rep = ConformanceReport::new("random-poset".into(), seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let n = st.len();
        let (l, g, u) = if rng.gen_bool(0.2) {
            let vertices: Vec<usize> = (0..n).collect();
            (pick(&mut rng, &vertices), pick(&mut rng, &vertices), pick(&mut rng, &vertices))
        } else {
            draw_valid_request(&st, &mut rng)
        };
        let expected = valid_request(&st, &l, &g, &u);
        match (st.rp_witness(&l, &g, &u), expected) {
            (Ok(p), true) => {
                rep.witnesses += 1;
                if p != n {
                    rep.fail(format!("trial {t}: witness v{p} is not the fresh vertex v{n}"));
                }
                for x in 0..n {
                    let below = l.iter().any(|&a| st.leq(x, a));
                    let above = g.iter().any(|&b| st.leq(b, x));
                    if st.lt(x, p) != below || st.lt(p, x) != above {
                        rep.fail(format!("trial {t}: v{p} is misplaced against v{x} for L={l:?} G={g:?}"));
                    }
                }
                if u.iter().any(|&c| st.leq(c, p) || st.leq(p, c)) {
                    rep.fail(format!("trial {t}: v{p} is comparable to a member of U={u:?}"));
                }
            }
            (Err(_), false) => {
                rep.rejected += 1;
                if st.len() != n {
                    rep.fail(format!("trial {t}: a refused request still grew the poset"));
                }
            }
            (Ok(p), false) => rep.fail(format!("trial {t}: invalid request L={l:?} G={g:?} U={u:?} produced v{p}")),
            (Err(e), true) => rep.fail(format!("trial {t}: valid request L={l:?} G={g:?} U={u:?} refused: {e}")),
        }
    }
    for e in strict_order_errors(&st) {
        rep.fail(format!("strict order: {e}"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(n: usize, strict: &[(usize, usize)]) -> FinitePoset {
        let table = (0..n).map(|i| (0..n).map(|j| i == j || strict.contains(&(i, j))).collect()).collect();
        FinitePoset::from_table((0..n as i64).map(Element::Int).collect(), table).unwrap()
    }

    #[test]
    fn two_chain_has_one_homomorphic_bijection() {
        let r = exhaustive_endo_scan(&poset(2, &[(0, 1)])).unwrap();
        assert_eq!((r.bijections, r.homomorphic, r.automorphisms), (2, 1, 1));
        assert!(r.bad.is_empty());
    }

    #[test]
    fn two_antichain_is_fully_symmetric() {
        let r = exhaustive_endo_scan(&poset(2, &[])).unwrap();
        assert_eq!((r.bijections, r.homomorphic, r.automorphisms), (2, 2, 2));
    }

    #[test]
    fn diamond_scan() {
        let r = exhaustive_endo_scan(&poset(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])).unwrap();
        assert_eq!(r.bijections, 24);
        assert_eq!(r.automorphisms, 2);
        assert!(r.bad.is_empty());
    }

    #[test]
    fn scan_guard() {
        let big = poset(9, &[]);
        assert!(matches!(exhaustive_endo_scan(&big), Err(OracleError::SizeGuard { size: 9, .. })));
    }

    #[test]
    fn generator_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| labeled_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
        assert!(labeled_posets(7).is_err());
    }

    #[test]
    fn generator_matches_table_filter() {
        for n in 0..=4 {
            let mut a: Vec<Vec<bool>> = labeled_posets(n).unwrap().iter().map(order_table).collect();
            let mut b: Vec<Vec<bool>> = labeled_posets_by_table(n).unwrap().iter().map(order_table).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "size {n}");
        }
    }

    #[test]
    fn sweep_to_four_is_clean() {
        let s = finite_sweep(4).unwrap();
        assert!(s.passed());
        assert_eq!(s.sizes[4].posets, 219);
        assert_eq!(s.sizes[4].bijections, 219 * 24);
    }

    #[test]
    fn random_poset_conformance_is_clean() {
        let r = witness_conformance("random-poset", 300, 7).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.witnesses > 200 && r.rejected > 0);
    }

    #[test]
    fn grown_fragments_are_reproducible() {
        let a = grow_random(60, 9);
        assert_eq!(a.len(), 60);
        assert_eq!(a.dump(), grow_random(60, 9).dump());
        assert!(strict_order_errors(&a).is_empty());
    }

    #[test]
    fn corrupted_random_poset_is_caught() {
        let mut st = pregrown_state();
        st.insert_relation_unchecked(2, 0);
        let r = random_poset_conformance(st, 20, 1);
        assert!(r.failures.iter().any(|f| f.starts_with("strict order")), "{:?}", r.failures);
    }

    #[test]
    fn divisibility_conformance_is_clean() {
        let r = witness_conformance("divisibility", 200, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn every_structure_conforms() {
        for id in crate::structures::STRUCTURE_IDS {
            let r = witness_conformance(id, 40, 11).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.failures);
            assert!(r.witnesses > 0, "{id}");
        }
    }

    /// Divisibility with `2 | 6` removed from the order.
    struct Corrupted(crate::structures::Divisibility);

    impl Structure for Corrupted {
        fn id(&self) -> String {
            "corrupted".into()
        }
        fn capabilities(&self) -> crate::order::Capabilities {
            crate::order::Capabilities { directed: true, ..Default::default() }
        }
        fn parse(&self, s: &str) -> Result<Element, crate::error::ParseError> {
            self.0.parse(s)
        }
        fn contains(&self, x: &Element) -> bool {
            self.0.contains(x)
        }
        fn leq(&self, x: &Element, y: &Element) -> bool {
            !(x == &Element::nat(2) && y == &Element::nat(6)) && self.0.leq(x, y)
        }
        fn enumerate(&self, n: u64) -> Option<Element> {
            self.0.enumerate(n)
        }
        fn index_of(&self, x: &Element) -> Option<num_bigint::BigUint> {
            self.0.index_of(x)
        }
        fn root(&self) -> Option<Element> {
            self.0.root()
        }
        fn upper_bound(&self, s: &[Element]) -> Result<Element, crate::error::StructureError> {
            self.0.upper_bound(s)
        }
        fn strict_upper_bound(&self, s: &[Element]) -> Result<Element, crate::error::StructureError> {
            self.0.strict_upper_bound(s)
        }
        fn increasing_chain_above(
            &self,
            p: &Element,
            avoid: &dyn Fn(&Element) -> bool,
            k: usize,
        ) -> Result<Vec<Element>, crate::error::StructureError> {
            self.0.increasing_chain_above(p, avoid, k)
        }
    }

    #[test]
    fn corrupted_order_is_caught() {
        let r = structure_conformance(&Corrupted(crate::structures::Divisibility), 300, 5);
        assert!(!r.passed());
        assert!(r.failures.iter().any(|f| f.contains("is not an upper bound")), "{:?}", r.failures);
    }
}
