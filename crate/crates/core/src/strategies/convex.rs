//! Extension on the integer and rational planes, keeping the domain convex
//! and the field inside an open box `(p, q)`.
//!
//! On the integer plane every glued region is finite and is added pair by
//! pair. On the rational plane a region is infinite; only the target is
//! added explicitly and the region is recorded as a translation piece, so
//! the domain is the explicit pairs plus the pieces.

use std::collections::HashSet;

use num_traits::One;

use crate::certificate::{Glue, Invariant};
use crate::condensation::{Pair, PartialCondensation};
use crate::element::Element;
use crate::engine::{Extension, Strategy};
use crate::error::StrategyError;
use crate::order::Structure;
use crate::structures::plane::{
    add, incomparable_to_box, interval_embed, join, meet, point_leq, point_lt, sub, to_point, Direction,
    Point, Q,
};
use crate::structures::Plane;

/// A translated region of the rational plane. `Below`: the points
/// `z <= target` above one of the guards. `Above`: the points
/// `z >= target` below one of them. The guards are the explicit domain
/// points, among the first `anchors`, on the same side of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub direction: Direction,
    pub target: Point,
    pub shift: Point,
    pub anchors: usize,
    pub guards: Vec<Point>,
    /// Meet (below) or join (above) of the guards.
    corner: Point,
}

impl Piece {
    pub fn new(direction: Direction, target: Point, shift: Point, explicit: &[Point]) -> Self {
        let guards = explicit
            .iter()
            .filter(|x| match direction {
                Direction::Below => point_leq(x, &target),
                Direction::Above => point_leq(&target, x),
            })
            .copied()
            .collect::<Vec<Point>>();
        let fold = match direction {
            Direction::Below => meet,
            Direction::Above => join,
        };
        let corner = guards.iter().skip(1).fold(guards.first().copied().unwrap_or(target), |acc, g| fold(&acc, g));
        Piece { direction, target, shift, anchors: explicit.len(), guards, corner }
    }

    /// Region condition, ignoring precedence.
    pub fn holds(&self, z: &Point) -> bool {
        match self.direction {
            Direction::Below => {
                point_leq(z, &self.target)
                    && point_leq(&self.corner, z)
                    && self.guards.iter().any(|x| point_leq(x, z))
            }
            Direction::Above => {
                point_leq(&self.target, z)
                    && point_leq(z, &self.corner)
                    && self.guards.iter().any(|x| point_leq(z, x))
            }
        }
    }
}

/// The piece owning `z`: the first whose region holds it, unless `z` is
/// explicit.
pub fn owner(pieces: &[Piece], explicit: &HashSet<Point>, z: &Point) -> Option<usize> {
    if explicit.contains(z) {
        return None;
    }
    pieces.iter().position(|pc| pc.holds(z))
}

pub fn floor_point(p: &Point) -> Point {
    (p.0.floor(), p.1.floor())
}

pub fn ceil_point(p: &Point) -> Point {
    (p.0.ceil(), p.1.ceil())
}

fn one_one() -> Point {
    (Q::one(), Q::one())
}

/// Integer box strictly enclosing `points`, with a margin of one.
pub fn enclosing_box(points: &[Point]) -> (Point, Point) {
    let lo = points.iter().skip(1).fold(points[0], |m, x| meet(&m, x));
    let hi = points.iter().skip(1).fold(points[0], |m, x| join(&m, x));
    (sub(&floor_point(&lo), &one_one()), add(&ceil_point(&hi), &one_one()))
}

pub fn point_name(p: &Point) -> String {
    Element::RatPair(p.0, p.1).to_string()
}

pub struct Convex {
    plane: Plane,
    seed: Vec<Pair>,
    p: Point,
    q: Point,
    pieces: Vec<Piece>,
    /// Explicit domain points in insertion order.
    explicit: Vec<Point>,
    explicit_set: HashSet<Point>,
}

/// The least incomparable pair among the points strictly above the origin
/// within the first 64 enumerated elements, `a0` the earlier one, and
/// `b0` their join.
pub fn default_plane_seed(plane: &Plane) -> Result<(Element, Element, Element), StrategyError> {
    let origin = (Q::from_integer(0), Q::from_integer(0));
    let above: Vec<Element> = (0..64)
        .filter_map(|n| plane.enumerate(n))
        .filter(|x| point_lt(&origin, &to_point(x)))
        .collect();
    for (i, x) in above.iter().enumerate() {
        for y in &above[i + 1..] {
            if !plane.comparable(x, y) {
                let b0 = plane.element(&join(&to_point(x), &to_point(y)));
                return Ok((x.clone(), y.clone(), b0));
            }
        }
    }
    Err(StrategyError::InvalidSeed("no incomparable pair above the origin".into()))
}

/// On the integer plane every point between two comparable domain points
/// must be in the domain; on the rational plane the domain must be an
/// antichain, since any nontrivial interval is infinite.
pub fn check_seed_convex(plane: &Plane, seed: &[Pair]) -> Result<(), StrategyError> {
    let dom: Vec<Point> = seed.iter().map(|(x, _)| to_point(x)).collect();
    for x in &dom {
        for y in &dom {
            if !point_lt(x, y) {
                continue;
            }
            if plane.is_rational() {
                return Err(StrategyError::InvalidSeed(format!(
                    "{} < {}: a seed domain in the rational plane must be an antichain",
                    point_name(x),
                    point_name(y)
                )));
            }
            for i in x.0.to_integer()..=y.0.to_integer() {
                for j in x.1.to_integer()..=y.1.to_integer() {
                    let z = (Q::from_integer(i), Q::from_integer(j));
                    if !dom.contains(&z) {
                        return Err(StrategyError::InvalidSeed(format!(
                            "domain is not convex: ({i},{j}) lies between {} and {}",
                            plane.element(x),
                            plane.element(y)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

impl Convex {
    pub fn new(plane: Plane, seed: Vec<Pair>) -> Self {
        let field: Vec<Point> = seed.iter().flat_map(|(x, y)| [to_point(x), to_point(y)]).collect();
        let (p, q) = enclosing_box(&field);
        let explicit: Vec<Point> = seed.iter().map(|(x, _)| to_point(x)).collect();
        let explicit_set = explicit.iter().copied().collect();
        Convex { plane, seed, p, q, pieces: Vec::new(), explicit, explicit_set }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn push_explicit(&mut self, x: Point) {
        self.explicit.push(x);
        self.explicit_set.insert(x);
    }

    fn grow_box(&mut self, points: &[Point]) {
        let mut all = points.to_vec();
        all.push(self.p);
        all.push(self.q);
        let (p, q) = enclosing_box(&all);
        self.p = p;
        self.q = q;
    }

    fn glue(&self, case: &str, shift: Option<&Point>, anchors: Option<usize>) -> Glue {
        Glue {
            embedding: "translation".into(),
            case: Some(case.into()),
            shift: shift.map(point_name),
            anchors,
        }
    }

    fn in_dom(&self, z: &Point) -> bool {
        self.explicit_set.contains(z) || owner(&self.pieces, &self.explicit_set, z).is_some()
    }

    /// Integer points of `[lo, hi]` satisfying `keep`, in index order.
    fn lattice_region(&self, lo: &Point, hi: &Point, keep: impl Fn(&Point) -> bool) -> Vec<Element> {
        let (x0, x1) = (lo.0.to_integer(), hi.0.to_integer());
        let (y0, y1) = (lo.1.to_integer(), hi.1.to_integer());
        let mut out: Vec<Element> = (x0..=x1)
            .flat_map(|x| (y0..=y1).map(move |y| (Q::from_integer(x), Q::from_integer(y))))
            .filter(|z| keep(z))
            .map(|z| self.plane.element(&z))
            .collect();
        out.sort_by_cached_key(|x| self.plane.index_of(x));
        out
    }
}

impl Strategy for Convex {
    fn id(&self) -> &'static str {
        "convex"
    }

    fn structure(&self) -> &dyn Structure {
        &self.plane
    }

    fn invariant(&self) -> Invariant {
        Invariant::ConvexBoundedField
    }

    fn seed(&self) -> Vec<Pair> {
        self.seed.clone()
    }

    fn bounds(&self) -> Option<(Option<Element>, Option<Element>)> {
        Some((Some(self.plane.element(&self.p)), Some(self.plane.element(&self.q))))
    }

    /// Three cases by where the domain sits relative to `a`. Domain points
    /// below `a`: glue the points between them and `a` above `q`. Domain
    /// points above `a`: glue the points between `a` and them below `p`.
    /// Neither: pair `a` with a point incomparable to the box.
    fn extend_dom(&mut self, _map: &PartialCondensation, a: &Element) -> Result<Extension, StrategyError> {
        let ap = to_point(a);
        if self.in_dom(&ap) {
            return Err(StrategyError::Precondition(format!("{a} is already in the domain")));
        }
        let lows: Vec<Point> = self.explicit.iter().filter(|x| point_lt(x, &ap)).copied().collect();
        let highs: Vec<Point> = self.explicit.iter().filter(|x| point_lt(&ap, x)).copied().collect();
        let anchors = self.explicit.len();
        let (added, glue, corners) = match (lows.is_empty(), highs.is_empty()) {
            (false, false) => {
                return Err(StrategyError::Precondition(format!(
                    "{a} lies strictly between domain points, so the domain is not convex"
                )))
            }
            (false, true) => {
                let m = lows.iter().skip(1).fold(lows[0], |acc, x| meet(&acc, x));
                let t = interval_embed(&m, &ap, Direction::Above, &self.q);
                let region: Vec<Element> = if self.plane.is_rational() {
                    self.pieces.push(Piece::new(Direction::Below, ap, t, &self.explicit));
                    vec![a.clone()]
                } else {
                    self.lattice_region(&m, &ap, |z| !self.explicit_set.contains(z) && lows.iter().any(|x| point_leq(x, z)))
                };
                let added: Vec<Pair> = region
                    .into_iter()
                    .map(|z| {
                        let img = self.plane.element(&add(&to_point(&z), &t));
                        (z, img)
                    })
                    .collect();
                (added, self.glue("below", Some(&t), Some(anchors)), vec![m, ap, add(&m, &t), add(&ap, &t)])
            }
            (true, false) => {
                let big = highs.iter().skip(1).fold(highs[0], |acc, x| join(&acc, x));
                let t = interval_embed(&ap, &big, Direction::Below, &self.p);
                let region: Vec<Element> = if self.plane.is_rational() {
                    self.pieces.push(Piece::new(Direction::Above, ap, t, &self.explicit));
                    vec![a.clone()]
                } else {
                    self.lattice_region(&ap, &big, |z| !self.explicit_set.contains(z) && highs.iter().any(|x| point_leq(z, x)))
                };
                let added: Vec<Pair> = region
                    .into_iter()
                    .map(|z| {
                        let img = self.plane.element(&add(&to_point(&z), &t));
                        (z, img)
                    })
                    .collect();
                (added, self.glue("above", Some(&t), Some(anchors)), vec![big, ap, add(&big, &t), add(&ap, &t)])
            }
            (true, true) => {
                let b = incomparable_to_box(&self.p, &self.q);
                let added = vec![(a.clone(), self.plane.element(&b))];
                (added, self.glue("incomparable", None, None), vec![ap, b])
            }
        };
        for (x, _) in &added {
            self.push_explicit(to_point(x));
        }
        self.grow_box(&corners);
        Ok(Extension { added, glue: Some(glue) })
    }

    fn extend_ran(&mut self, map: &PartialCondensation, b: &Element) -> Result<Extension, StrategyError> {
        if self.covers_ran(map, b) {
            return Err(StrategyError::Precondition(format!("{b} is already in the range")));
        }
        let a = incomparable_to_box(&self.p, &self.q);
        let bp = to_point(b);
        self.push_explicit(a);
        self.grow_box(&[a, bp]);
        Ok(Extension::pairs(vec![(self.plane.element(&a), b.clone())]))
    }

    fn covers_dom(&self, map: &PartialCondensation, x: &Element) -> bool {
        map.in_dom(x) || (!self.pieces.is_empty() && owner(&self.pieces, &self.explicit_set, &to_point(x)).is_some())
    }

    fn covers_ran(&self, map: &PartialCondensation, y: &Element) -> bool {
        if map.in_ran(y) {
            return true;
        }
        let yp = to_point(y);
        self.pieces.iter().enumerate().any(|(k, pc)| {
            let z = sub(&yp, &pc.shift);
            owner(&self.pieces, &self.explicit_set, &z) == Some(k)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_generic;

    #[test]
    fn default_seed_on_the_integer_plane() {
        let (a0, a1, b0) = default_plane_seed(&Plane::integer()).unwrap();
        assert_eq!((a0, a1, b0), (Element::Pair(0, 1), Element::Pair(1, 0), Element::Pair(1, 1)));
    }

    #[test]
    fn origin_is_glued_below() {
        let seed = vec![
            (Element::Pair(0, 1), Element::Pair(1, 1)),
            (Element::Pair(1, 0), Element::Pair(0, 1)),
        ];
        let mut s = Convex::new(Plane::integer(), seed);
        assert_eq!(s.bounds().unwrap(), (Some(Element::Pair(-1, -1)), Some(Element::Pair(2, 2))));
        let cert = run_generic(&mut s, 2).unwrap();
        assert_eq!(cert.steps[0].target, "(0,0)");
        assert_eq!(cert.steps[0].glue.as_ref().unwrap().case.as_deref(), Some("above"));
        assert_eq!(cert.steps[0].added, vec![["(0,0)".to_string(), "(-2,-2)".to_string()]]);
    }

    #[test]
    fn rational_pieces_cover_their_regions() {
        let plane = Plane::rational();
        let (a0, a1, b0) = default_plane_seed(&plane).unwrap();
        let mut s = Convex::new(plane, vec![(a0.clone(), b0), (a1, a0)]);
        let cert = run_generic(&mut s, 40).unwrap();
        assert_eq!(cert.steps.len(), 40);
        assert!(!s.pieces().is_empty());
    }
}
