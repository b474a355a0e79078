//! Independent re-checking of a certificate: the verifier rebuilds the
//! structure, replays every step against its own coverage model and
//! re-derives every claimed property without consulting any strategy.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certificate::{decode_pairs, Certificate, Invariant, StepKind};
use crate::condensation::{check_new_pairs, find_bad_witness, verify_partial_condensation, BadWitness, Pair, PartialCondensation};
use crate::element::Element;
use crate::engine::first_uncovered;
use crate::error::StructureError;
use crate::order::Structure;
use crate::structures::plane::{add, point_lt, sub, to_point, Point, Q};
use crate::structures::{structure_by_id, Plane, RandomPoset, RandomPosetState};

/// Midpoint samples drawn per comparable pair of domain points in the
/// rational plane, besides the exact midpoint.
pub const CONVEX_SAMPLES: usize = 100;
const SAMPLE_DENOMINATOR: i64 = 256;
const MAX_DETAILS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "[ok]  " } else { "[FAIL]" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        out
    }

    pub(crate) fn push(&mut self, name: &str, errors: Vec<String>, ok_detail: impl Into<String>) {
        let passed = errors.is_empty();
        let detail = if passed {
            ok_detail.into()
        } else {
            let mut shown: Vec<String> = errors.iter().take(MAX_DETAILS).cloned().collect();
            if errors.len() > MAX_DETAILS {
                shown.push(format!("and {} more", errors.len() - MAX_DETAILS));
            }
            shown.join("; ")
        };
        self.checks.push(Check { name: name.into(), passed, detail });
    }
}

fn load_structure(c: &Certificate) -> Result<Box<dyn Structure>, StructureError> {
    match (&c.random_poset, c.structure.as_str()) {
        (Some(dump), "random-poset") => Ok(Box::new(RandomPoset::new(RandomPosetState::from_dump(dump)?))),
        (None, "random-poset") => Err(StructureError::Invalid("random-poset certificate without its fragment".into())),
        (Some(_), other) => Err(StructureError::Invalid(format!("{other} certificate carries a random-poset fragment"))),
        (None, id) => structure_by_id(id),
    }
}

struct ParsedStep {
    kind: StepKind,
    target: Element,
    added: Vec<Pair>,
}

/// `x <= y` by exact cross multiplication.
fn q_le(x: &Q, y: &Q) -> bool {
    i128::from(*x.numer()) * i128::from(*y.denom()) <= i128::from(*y.numer()) * i128::from(*x.denom())
}

fn le(x: &Point, y: &Point) -> bool {
    q_le(&x.0, &y.0) && q_le(&x.1, &y.1)
}

/// A translated region of the rational plane, rebuilt from step glue.
struct Region {
    below: bool,
    target: Point,
    shift: Point,
    guards: Vec<Point>,
    guard_set: HashSet<Point>,
    /// The meet (below) or join (above) of the guards: every region point
    /// lies between it and the target.
    corner: Point,
}

impl Region {
    fn new(below: bool, target: Point, shift: Point, guards: Vec<Point>) -> Self {
        let fold = if below { crate::structures::plane::meet } else { crate::structures::plane::join };
        let corner = guards.iter().skip(1).fold(guards[0], |acc, g| fold(&acc, g));
        let guard_set = guards.iter().copied().collect();
        Region { below, target, shift, guards, guard_set, corner }
    }

    fn holds(&self, z: &Point) -> bool {
        self.holds_hinted(z, &[])
    }

    /// Region membership, trying the guards in `hints` first.
    fn holds_hinted(&self, z: &Point, hints: &[Point]) -> bool {
        let inside = if self.below {
            le(z, &self.target) && le(&self.corner, z)
        } else {
            le(&self.target, z) && le(z, &self.corner)
        };
        if !inside {
            return false;
        }
        let guarded = |g: &Point| if self.below { le(g, z) } else { le(z, g) };
        hints.iter().any(|h| self.guard_set.contains(h) && guarded(h)) || self.guards.iter().any(guarded)
    }
}

/// Domain and range as the verifier sees them: explicit pairs, plus
/// translated regions on the rational plane. Explicit pairs take
/// precedence, then the earliest region.
struct Model {
    map: PartialCondensation,
    explicit: Vec<Point>,
    regions: Vec<Region>,
    planar: bool,
}

impl Model {
    fn new(seed: &[Pair], planar: bool) -> Self {
        let mut m = Model { map: PartialCondensation::new(), explicit: Vec::new(), regions: Vec::new(), planar };
        for (x, y) in seed {
            m.insert(x.clone(), y.clone());
        }
        m
    }

    fn insert(&mut self, x: Element, y: Element) -> bool {
        if self.planar {
            self.explicit.push(to_point(&x));
        }
        self.map.insert(x, y).is_ok()
    }

    fn region_of(&self, z: &Point, element: &Element) -> Option<&Region> {
        if self.map.in_dom(element) {
            return None;
        }
        self.regions.iter().find(|r| r.holds(z))
    }

    fn covers_dom(&self, x: &Element) -> bool {
        self.map.in_dom(x) || (!self.regions.is_empty() && self.region_of(&to_point(x), x).is_some())
    }

    fn covers_ran(&self, y: &Element) -> bool {
        if self.map.in_ran(y) {
            return true;
        }
        if self.regions.is_empty() {
            return false;
        }
        let yp = to_point(y);
        self.regions.iter().enumerate().any(|(k, r)| {
            let z = sub(&yp, &r.shift);
            let ze = Element::RatPair(z.0, z.1);
            !self.map.in_dom(&ze) && self.regions.iter().position(|s| s.holds(&z)) == Some(k)
        })
    }

    /// Image of a point of the rational plane, `None` outside the domain.
    /// `hints` are domain points likely to guard `z`.
    fn image(&self, z: &Point, hints: &[Point]) -> Option<Point> {
        let e = Element::RatPair(z.0, z.1);
        if let Some(y) = self.map.image(&e) {
            return Some(to_point(y));
        }
        self.regions.iter().find(|r| r.holds_hinted(z, hints)).map(|r| add(z, &r.shift))
    }
}

fn parse_pairs(st: &dyn Structure, pairs: &[[String; 2]]) -> Result<Vec<Pair>, String> {
    decode_pairs(st, pairs).map_err(|e| e.to_string())
}

fn parse_one(st: &dyn Structure, s: &str) -> Result<Element, String> {
    let x = st.parse(s).map_err(|e| e.to_string())?;
    if !st.contains(&x) {
        return Err(format!("{x} is not an element of {}", st.id()));
    }
    Ok(x)
}

fn parse_steps(st: &dyn Structure, c: &Certificate) -> Result<Vec<ParsedStep>, String> {
    c.steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Ok(ParsedStep {
                kind: s.kind,
                target: parse_one(st, &s.target).map_err(|e| format!("step {i}: {e}"))?,
                added: parse_pairs(st, &s.added).map_err(|e| format!("step {i}: {e}"))?,
            })
        })
        .collect()
}

fn is_lift(strategy: &str) -> bool {
    matches!(strategy, "product-lift" | "subset-lift")
}

/// Re-checks everything a certificate claims. Never mutates it.
pub fn verify_certificate(c: &Certificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    let st = match load_structure(c) {
        Ok(st) => {
            report.push("structure", vec![], st.id());
            st
        }
        Err(e) => {
            report.push("structure", vec![e.to_string()], "");
            return report;
        }
    };
    let st = st.as_ref();
    let parsed = (|| -> Result<_, String> {
        let seed = parse_pairs(st, &c.seed)?;
        let steps = parse_steps(st, c)?;
        let final_map = parse_pairs(st, &c.final_map)?;
        let w = &c.bad_witness;
        let witness = BadWitness {
            x1: parse_one(st, &w.x1)?,
            x2: parse_one(st, &w.x2)?,
            y1: parse_one(st, &w.y1)?,
            y2: parse_one(st, &w.y2)?,
        };
        Ok((seed, steps, final_map, witness))
    })();
    let (seed, steps, final_map, witness) = match parsed {
        Ok(p) => {
            report.push("parse", vec![], "all encodings parse");
            p
        }
        Err(e) => {
            report.push("parse", vec![e], "");
            return report;
        }
    };

    let seed_errors: Vec<String> = verify_partial_condensation(st, &seed).err().map(|v| v.to_string()).into_iter().collect();
    report.push("seed", seed_errors, format!("{} pairs, a partial condensation", seed.len()));

    let mut w_errors = Vec::new();
    if !witness.holds_in(st) {
        w_errors.push(format!("{} </= {} and {} <= {} is not the case", witness.x1, witness.x2, witness.y1, witness.y2));
    }
    let seed_set: HashSet<&Pair> = seed.iter().collect();
    for p in witness.pairs() {
        if !seed_set.contains(&p) {
            w_errors.push(format!("{} -> {} is not a seed pair", p.0, p.1));
        }
    }
    if find_bad_witness(st, &seed).as_ref() != Some(&witness) {
        w_errors.push("not the least witness of the seed".into());
    }
    report.push(
        "bad-witness",
        w_errors,
        format!("{} </= {} while {} <= {}", witness.x1, witness.x2, witness.y1, witness.y2),
    );

    let planar = c.structure == "qxq";
    let mut model = Model::new(&seed, planar);
    let mut schedule_errors = Vec::new();
    let mut step_errors = Vec::new();
    let mut invariant = InvariantChecker::new(st, c, &seed);
    let (mut dom_cursor, mut ran_cursor) = (0u64, 0u64);
    let mut last_lift_index: Option<num_bigint::BigUint> = None;
    for (i, step) in steps.iter().enumerate() {
        if is_lift(&c.strategy) {
            if step.kind != StepKind::Dom {
                schedule_errors.push(format!("step {i}: transfer steps are domain steps"));
            }
            let idx = st.index_of(&step.target);
            if idx.is_none() || last_lift_index.as_ref().is_some_and(|prev| Some(prev) >= idx.as_ref()) {
                schedule_errors.push(format!("step {i}: targets must strictly increase in index"));
            }
            last_lift_index = idx;
            if model.covers_dom(&step.target) {
                schedule_errors.push(format!("step {i}: {} is already in the domain", step.target));
            }
            if step.added.len() != 1 || step.added[0].0 != step.target {
                schedule_errors.push(format!("step {i}: a transfer step adds exactly the pair at its target"));
            }
        } else {
            let expected = if i % 2 == 0 { StepKind::Dom } else { StepKind::Ran };
            if step.kind != expected {
                schedule_errors.push(format!("step {i}: expected a {} step", expected.name()));
            }
            let want = match step.kind {
                StepKind::Dom => {
                    dom_cursor = first_uncovered(st, dom_cursor, |x| model.covers_dom(x));
                    st.enumerate(dom_cursor)
                }
                StepKind::Ran => {
                    ran_cursor = first_uncovered(st, ran_cursor, |y| model.covers_ran(y));
                    st.enumerate(ran_cursor)
                }
            };
            if want.as_ref() != Some(&step.target) {
                schedule_errors.push(format!(
                    "step {i}: target {} is not the least uncovered element{}",
                    step.target,
                    want.map(|w| format!(" {w}")).unwrap_or_default()
                ));
            }
            if step.kind == StepKind::Ran && (step.added.len() != 1 || step.added[0].1 != step.target) {
                step_errors.push(format!("step {i}: a range step adds exactly one pair, onto its target"));
            }
        }
        if let Err(v) = check_new_pairs(st, model.map.pairs(), &step.added) {
            step_errors.push(format!("step {i}: {v}"));
            continue;
        }
        if planar {
            if let Err(e) = invariant.glue_region(i, &c.steps[i].glue, step, &model) {
                step_errors.push(format!("step {i}: {e}"));
            }
        }
        let old_len = model.map.len();
        for (x, y) in &step.added {
            model.insert(x.clone(), y.clone());
        }
        if let Some(r) = invariant.pending_region.take() {
            model.regions.push(r);
        }
        let covered = match step.kind {
            StepKind::Dom => model.covers_dom(&step.target),
            StepKind::Ran => model.covers_ran(&step.target),
        };
        if !covered {
            step_errors.push(format!("step {i}: target {} is not covered afterwards", step.target));
        }
        invariant.after_step(i, &c.steps[i].bounds, step, &model, old_len);
    }
    report.push("schedule", schedule_errors, format!("{} steps in order", steps.len()));
    report.push("steps", step_errors, "every step extends a partial condensation");

    let replayed: HashSet<&Pair> = model.map.pairs().iter().collect();
    let recorded: HashSet<&Pair> = final_map.iter().collect();
    let mut replay_errors = Vec::new();
    if recorded.len() != final_map.len() {
        replay_errors.push("final map lists a pair twice".into());
    }
    if replayed != recorded {
        let missing = replayed.difference(&recorded).count();
        let extra = recorded.difference(&replayed).count();
        replay_errors.push(format!("replay differs from the final map: {missing} missing, {extra} extra"));
    }
    report.push("replay", replay_errors, format!("{} pairs reproduced", final_map.len()));

    let seed_missing: Vec<String> = seed
        .iter()
        .filter(|p| !recorded.contains(p))
        .map(|(x, y)| format!("{x} -> {y} missing from the final map"))
        .collect();
    report.push("seed-in-final", seed_missing, "the final map extends the seed");

    let mut final_w = Vec::new();
    if !witness.pairs().iter().all(|p| recorded.contains(p)) || !witness.holds_in(st) {
        final_w.push("the witness is not present in the final map".into());
    }
    report.push("final-witness", final_w, "the final map is not a partial isomorphism");

    let inv_errors = invariant.finish(&c.bounds);
    report.push("invariant", inv_errors, format!("{} holds at every step", c.invariant.name()));

    let dom_prefix = first_uncovered(st, 0, |x| model.covers_dom(x));
    let ran_prefix = first_uncovered(st, 0, |y| model.covers_ran(y));
    let mut cov_errors = Vec::new();
    if dom_prefix != c.coverage.dom_prefix || ran_prefix != c.coverage.ran_prefix {
        cov_errors.push(format!(
            "recorded dom/ran prefixes {}/{}, recomputed {dom_prefix}/{ran_prefix}",
            c.coverage.dom_prefix, c.coverage.ran_prefix
        ));
    }
    report.push("coverage", cov_errors, format!("first {dom_prefix} in the domain, first {ran_prefix} in the range"));
    report
}

/// Per-step checks of the declared invariant.
struct InvariantChecker<'a> {
    st: &'a dyn Structure,
    invariant: Invariant,
    errors: Vec<String>,
    prev_p: Option<Element>,
    prev_q: Option<Element>,
    seed_field: Vec<Element>,
    seen_step_bounds: bool,
    pending_region: Option<Region>,
    plane: Option<Plane>,
}

impl<'a> InvariantChecker<'a> {
    fn new(st: &'a dyn Structure, c: &Certificate, seed: &[Pair]) -> Self {
        let plane = match c.structure.as_str() {
            "zxz" => Some(Plane::integer()),
            "qxq" => Some(Plane::rational()),
            _ => None,
        };
        let mut chk = InvariantChecker {
            st,
            invariant: c.invariant,
            errors: Vec::new(),
            prev_p: None,
            prev_q: None,
            seed_field: seed.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect(),
            seen_step_bounds: false,
            pending_region: None,
            plane,
        };
        if chk.invariant.open_domain() {
            let dom: HashSet<&Element> = seed.iter().map(|p| &p.0).collect();
            for (x, _) in seed {
                chk.check_ideal("seed", x, &dom);
            }
        }
        if chk.invariant == Invariant::ConvexBoundedField {
            if plane.is_none() {
                chk.errors.push(format!("convexity is only checkable on the planes, not {}", c.structure));
            } else {
                let dom: Vec<Element> = seed.iter().map(|p| p.0.clone()).collect();
                chk.check_convex("seed", &dom, &dom, None);
            }
        }
        chk
    }

    fn check_ideal(&mut self, at: &str, x: &Element, dom: &HashSet<&Element>) {
        match self.st.principal_ideal(x) {
            Ok(ideal) => {
                if let Some(z) = ideal.iter().find(|z| !dom.contains(z)) {
                    self.errors.push(format!("{at}: {z} <= {x} is outside the domain"));
                }
            }
            Err(e) => self.errors.push(format!("{at}: {e}")),
        }
    }

    fn parse_bound(&mut self, at: &str, s: &Option<String>) -> Option<Element> {
        let s = s.as_ref()?;
        match self.st.parse(s) {
            Ok(e) => Some(e),
            Err(e) => {
                self.errors.push(format!("{at}: {e}"));
                None
            }
        }
    }

    /// Rebuilds the translated region a rational-plane domain step glues on.
    fn glue_region(
        &mut self,
        i: usize,
        glue: &Option<crate::certificate::Glue>,
        step: &ParsedStep,
        model: &Model,
    ) -> Result<(), String> {
        if step.kind != StepKind::Dom {
            return Ok(());
        }
        let g = glue.as_ref().ok_or("domain step without glue")?;
        let below = match g.case.as_deref() {
            Some("below") => true,
            Some("above") => false,
            Some("incomparable") => return Ok(()),
            other => return Err(format!("unknown glue case {other:?}")),
        };
        let shift = g.shift.as_ref().ok_or("translation without shift")?;
        let shift = to_point(&Plane::rational().parse(shift).map_err(|e| e.to_string())?);
        if g.anchors != Some(model.explicit.len()) {
            return Err(format!("glue anchors {:?}, domain has {} explicit points", g.anchors, model.explicit.len()));
        }
        let target = to_point(&step.target);
        let image = Element::RatPair(add(&target, &shift).0, add(&target, &shift).1);
        if step.added != vec![(step.target.clone(), image)] {
            return Err(format!("step {i}: the target is not sent to its translate"));
        }
        let guards: Vec<Point> = model
            .explicit
            .iter()
            .filter(|x| if below { point_lt(x, &target) } else { point_lt(&target, x) })
            .copied()
            .collect();
        if guards.is_empty() {
            return Err("translated region without guarding domain points".into());
        }
        self.pending_region = Some(Region::new(below, target, shift, guards));
        Ok(())
    }

    fn after_step(&mut self, i: usize, bounds: &Option<crate::certificate::BoundsRecord>, step: &ParsedStep, model: &Model, old_len: usize) {
        let at = format!("step {i}");
        let new_pairs = &model.map.pairs()[old_len..];
        if self.invariant.open_domain() {
            let dom: HashSet<&Element> = model.map.domain().collect();
            for (x, _) in new_pairs {
                self.check_ideal(&at, x, &dom);
            }
            if step.kind == StepKind::Dom {
                match self.st.principal_ideal(&step.target) {
                    Ok(ideal) if new_pairs.len() > ideal.len() => self
                        .errors
                        .push(format!("{at}: {} pairs added for an ideal of size {}", new_pairs.len(), ideal.len())),
                    _ => {}
                }
            }
        }
        let needs_bounds = matches!(self.invariant, Invariant::OpenDomainBoundedField | Invariant::ConvexBoundedField);
        if needs_bounds {
            let Some(b) = bounds else {
                self.errors.push(format!("{at}: no bounds recorded"));
                return;
            };
            let p = self.parse_bound(&at, &b.p);
            let q = self.parse_bound(&at, &b.q);
            let mut field: Vec<Element> = new_pairs.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
            if !self.seen_step_bounds {
                field.extend(self.seed_field.clone());
                self.seen_step_bounds = true;
            }
            if let Some(r) = model.regions.last().filter(|_| step.kind == StepKind::Dom && self.plane.is_some_and(|pl| pl.is_rational())) {
                if r.target == to_point(&step.target) {
                    field.extend(region_corners(r).into_iter().map(|z| Element::RatPair(z.0, z.1)));
                }
            }
            self.check_bounds(&at, p, q, &field);
        }
        if self.invariant == Invariant::ConvexBoundedField && self.plane.is_some() {
            let all: Vec<Element> = model.map.domain().cloned().collect();
            let new: Vec<Element> = new_pairs.iter().map(|p| p.0.clone()).collect();
            self.check_convex(&at, &new, &all, Some((i, model)));
        }
    }

    fn check_bounds(&mut self, at: &str, p: Option<Element>, q: Option<Element>, field: &[Element]) {
        let st = self.st;
        let strict = self.invariant == Invariant::ConvexBoundedField;
        if strict && p.is_none() {
            self.errors.push(format!("{at}: no lower bound recorded"));
        }
        let Some(q) = q else {
            self.errors.push(format!("{at}: no upper bound recorded"));
            return;
        };
        let above = |x: &Element, bound: &Element| if strict { st.lt(x, bound) } else { st.leq(x, bound) };
        if let Some(x) = field.iter().find(|x| !above(x, &q)) {
            self.errors.push(format!("{at}: {x} is not below the bound {q}"));
        }
        if let Some(p) = &p {
            if let Some(x) = field.iter().find(|x| !st.lt(p, x)) {
                self.errors.push(format!("{at}: {x} is not above the bound {p}"));
            }
        }
        if let Some(prev) = &self.prev_q {
            if !st.leq(prev, &q) {
                self.errors.push(format!("{at}: upper bound {q} does not dominate the previous {prev}"));
            }
        }
        if let (Some(prev), Some(p)) = (&self.prev_p, &p) {
            if !st.leq(p, prev) {
                self.errors.push(format!("{at}: lower bound {p} is not below the previous {prev}"));
            }
        }
        self.prev_q = Some(q);
        self.prev_p = p;
    }

    /// Every point between a new domain point and a comparable domain
    /// point is in the domain: exactly on the integer plane, by sampling on
    /// the rational plane.
    fn check_convex(&mut self, at: &str, new: &[Element], all: &[Element], model: Option<(usize, &Model)>) {
        let plane = self.plane.expect("planar structure");
        let dom: HashSet<Point> = all.iter().map(to_point).collect();
        let new_pts: Vec<Point> = new.iter().map(to_point).collect();
        let mut pairs: Vec<(Point, Point)> = Vec::new();
        for (k, n) in new_pts.iter().enumerate() {
            for x in all.iter().map(to_point) {
                let later_new = new_pts[k + 1..].contains(&x);
                if later_new {
                    continue;
                }
                if point_lt(&x, n) {
                    pairs.push((x, *n));
                } else if point_lt(n, &x) {
                    pairs.push((*n, x));
                }
            }
        }
        if !plane.is_rational() {
            for (lo, hi) in pairs {
                for i in lo.0.to_integer()..=hi.0.to_integer() {
                    for j in lo.1.to_integer()..=hi.1.to_integer() {
                        let z = (Q::from_integer(i), Q::from_integer(j));
                        if !dom.contains(&z) {
                            self.errors.push(format!("{at}: ({i},{j}) lies between domain points but is not in the domain"));
                            return;
                        }
                    }
                }
            }
            return;
        }
        let Some((step, model)) = model else {
            if let Some((lo, hi)) = pairs.first() {
                self.errors.push(format!("{at}: comparable domain points {lo:?} < {hi:?} in the rational plane"));
            }
            return;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + step as u64);
        for (lo, hi) in pairs {
            let hints = [lo, hi];
            let (Some(flo), Some(fhi)) = (model.image(&lo, &hints), model.image(&hi, &hints)) else {
                self.errors.push(format!("{at}: a domain point has no image"));
                return;
            };
            let half = Q::new(1, 2);
            let mut samples = vec![(lo.0 + (hi.0 - lo.0) * half, lo.1 + (hi.1 - lo.1) * half)];
            for _ in 0..CONVEX_SAMPLES {
                let u = Q::new(rng.gen_range(0..=SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR);
                let v = Q::new(rng.gen_range(0..=SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR);
                samples.push((lo.0 + (hi.0 - lo.0) * u, lo.1 + (hi.1 - lo.1) * v));
            }
            for z in samples {
                match model.image(&z, &hints) {
                    None => {
                        self.errors.push(format!(
                            "{at}: sample {} between domain points is outside the domain",
                            Element::RatPair(z.0, z.1)
                        ));
                        return;
                    }
                    Some(fz) if !le(&flo, &fz) || !le(&fz, &fhi) => {
                        self.errors.push(format!(
                            "{at}: order not preserved at sample {}",
                            Element::RatPair(z.0, z.1)
                        ));
                        return;
                    }
                    Some(_) => {}
                }
            }
        }
    }

    fn finish(mut self, bounds: &Option<crate::certificate::BoundsRecord>) -> Vec<String> {
        let needs_bounds = matches!(self.invariant, Invariant::OpenDomainBoundedField | Invariant::ConvexBoundedField);
        if needs_bounds {
            match bounds {
                None => self.errors.push("no final bounds recorded".into()),
                Some(b) => {
                    let p = self.parse_bound("final", &b.p);
                    let q = self.parse_bound("final", &b.q);
                    if self.seen_step_bounds {
                        if q != self.prev_q || p != self.prev_p {
                            self.errors.push("final bounds differ from the last step's".into());
                        }
                    } else {
                        let field = self.seed_field.clone();
                        self.check_bounds("final", p, q, &field);
                    }
                }
            }
        }
        self.errors
    }
}

fn region_corners(r: &Region) -> Vec<Point> {
    let mut lo = r.guards[0];
    let mut hi = r.guards[0];
    for g in &r.guards[1..] {
        lo = crate::structures::plane::meet(&lo, g);
        hi = crate::structures::plane::join(&hi, g);
    }
    let (a, b) = if r.below { (lo, r.target) } else { (r.target, hi) };
    vec![a, b, add(&a, &r.shift), add(&b, &r.shift)]
}
