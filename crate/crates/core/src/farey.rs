//! Slopes in the extended rationals, the Farey triangulation and its quotients
//! with `k` triangles around every vertex, and normal generators of the
//! subgroup generated by `k`-th powers of primitive elements.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Automorphism, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FareyError {
    #[error("{p}/{q} is not a reduced fraction")]
    NotCoprime { p: i64, q: i64 },
    #[error("the number of triangles per vertex must be at least 2, got {0}")]
    BadDegree(u32),
    #[error("cannot parse slope {0:?}")]
    Parse(String),
}

/// A point `p/q` of `Q ∪ {1/0}` with `gcd(|p|, q) = 1` and `q > 0`, or `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    /// Normalizes the sign; `(p, q)` and `(-p, -q)` name the same slope.
    pub fn new(p: i64, q: i64) -> Result<Slope, FareyError> {
        if p.gcd(&q) != 1 {
            return Err(FareyError::NotCoprime { p, q });
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        Ok(Slope { p, q })
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    /// `max(|p|, q)`, the level of the slope in the Stern–Brocot enumeration.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }

    /// Slopes in canonical order: by height, then `∞` first and otherwise by
    /// decreasing value.
    pub fn enumerate() -> impl Iterator<Item = Slope> {
        std::iter::once(Slope::INFINITY).chain((1..).flat_map(|h: i64| {
            let mut level: Vec<Slope> = Vec::new();
            for q in 1..=h {
                for p in -h..=h {
                    if p.abs().max(q) == h && p.gcd(&q) == 1 {
                        level.push(Slope { p, q });
                    }
                }
            }
            level.sort();
            level
        }))
    }

    fn cmp_value(&self, other: &Slope) -> Ordering {
        match (self.q == 0, other.q == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128)),
        }
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Slope) -> Ordering {
        self.height().cmp(&other.height()).then_with(|| other.cmp_value(self))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.p),
            q => write!(f, "{}/{}", self.p, q),
        }
    }
}

impl FromStr for Slope {
    type Err = FareyError;
    fn from_str(s: &str) -> Result<Slope, FareyError> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞" | "1/0") {
            return Ok(Slope::INFINITY);
        }
        let bad = || FareyError::Parse(s.to_string());
        let (p, q) = match t.split_once('/') {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => (t.parse().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Slope, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Continued-fraction steps taking `∞` to a slope with `p, q > 0`.
/// `Right(m)` is `a ↦ a, b ↦ aᵐb`; `Left(m)` is `a ↦ abᵐ, b ↦ b`; the descent
/// ends at `∞` or, via `a ↦ b, b ↦ a⁻¹`, at `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Right(i64),
    Left(i64),
    Quarter,
}

fn descent(p: i64, q: i64) -> Vec<Step> {
    debug_assert!(p >= 0 && q >= 0);
    let (mut p, mut q) = (p, q);
    let mut steps = Vec::new();
    loop {
        if q == 0 {
            return steps;
        }
        if p == 0 {
            steps.push(Step::Quarter);
            return steps;
        }
        if p >= q {
            steps.push(Step::Right(p / q));
            p %= q;
        } else {
            steps.push(Step::Left(q / p));
            q %= p;
        }
    }
}

fn step_matrix(s: Step) -> [[i64; 2]; 2] {
    match s {
        Step::Right(m) => [[1, m], [0, 1]],
        Step::Left(m) => [[1, 0], [m, 1]],
        Step::Quarter => [[0, -1], [1, 0]],
    }
}

fn mat_mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

const REFLECT: [[i64; 2]; 2] = [[1, 0], [0, -1]];
const MINUS_ONE: [[i64; 2]; 2] = [[-1, 0], [0, -1]];

/// An `SL(2, Z)` matrix with first column `(p, q)`, built from the
/// continued-fraction descent; it sends `1/0` to the slope under the Möbius
/// action. Equals the abelianization of [`outer_rep`].
pub fn stern_brocot_matrix(s: &Slope) -> [[i64; 2]; 2] {
    let base = descent(s.p.abs(), s.q)
        .into_iter()
        .map(step_matrix)
        .fold([[1, 0], [0, 1]], mat_mul);
    if s.p < 0 {
        mat_mul(mat_mul(mat_mul(REFLECT, base), REFLECT), MINUS_ONE)
    } else {
        base
    }
}

/// Möbius action of an integer matrix on a slope.
pub fn mobius(m: [[i64; 2]; 2], s: &Slope) -> Slope {
    let p = m[0][0] * s.p + m[0][1] * s.q;
    let q = m[1][0] * s.p + m[1][1] * s.q;
    Slope::new(p, q).expect("unimodular image of a reduced fraction")
}

/// An orientation-preserving automorphism whose abelianization has first
/// column `(p, q)`. Positive slopes use the continued-fraction twists; a
/// negative slope `-p/q` conjugates the one for `p/q` by `b ↦ b⁻¹` and then
/// precomposes `a ↦ a⁻¹, b ↦ b⁻¹`.
pub fn outer_rep(s: &Slope) -> Automorphism {
    let base = descent(s.p.abs(), s.q)
        .into_iter()
        .map(|st| match st {
            Step::Right(m) => Automorphism::right_twist(m),
            Step::Left(m) => Automorphism::left_twist(m),
            Step::Quarter => Automorphism::psi1(),
        })
        .fold(Automorphism::identity(), |acc, x| acc.compose(&x));
    if s.p < 0 {
        let r = Automorphism::reflect_b();
        r.compose(&base).compose(&r).compose(&Automorphism::psi1().pow(2))
    } else {
        base
    }
}

/// The image of `a` under [`outer_rep`]; a primitive word with
/// abelianization exactly `(p, q)`.
pub fn primitive_word(s: &Slope) -> Word {
    if s.p < 0 {
        // same value as outer_rep(s).apply(a) without composing automorphisms
        let r = Automorphism::reflect_b();
        return r.apply(&primitive_word(&Slope { p: -s.p, q: s.q })).inv();
    }
    outer_rep(s).apply(&Word::a())
}

/// A finite triangulated surface, or a patch of one.
#[derive(Clone, Debug, Serialize)]
pub struct TriComplex {
    pub k: u32,
    /// Slope label of each vertex, where a lift has been fixed.
    pub labels: Vec<Option<Slope>>,
    pub edges: Vec<(usize, usize)>,
    /// Triangles oriented counterclockwise.
    pub triangles: Vec<[usize; 3]>,
    /// Counterclockwise neighbors of each vertex; `None` marks positions
    /// beyond the boundary of a patch.
    pub links: Vec<Vec<Option<usize>>>,
    /// Parent of each vertex in the spanning tree used for the labels; each
    /// labelled tree edge is an edge of the Farey triangulation.
    pub parents: Vec<Option<usize>>,
}

impl TriComplex {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Whether every link is a full cycle of length `k`.
    pub fn is_closed(&self) -> bool {
        self.links.iter().all(|l| l.iter().all(Option::is_some))
    }

    fn from_triangles(k: u32, n: usize, triangles: Vec<[usize; 3]>) -> TriComplex {
        let edges: BTreeSet<(usize, usize)> = triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        let links = (0..n).map(|v| link_from_triangles(k as usize, v, &triangles)).collect();
        TriComplex {
            k,
            labels: vec![None; n],
            edges: edges.into_iter().collect(),
            triangles,
            links,
            parents: vec![None; n],
        }
    }
}

fn link_from_triangles(k: usize, v: usize, triangles: &[[usize; 3]]) -> Vec<Option<usize>> {
    let mut next: Vec<(usize, usize)> = Vec::new();
    for t in triangles {
        for r in 0..3 {
            if t[r] == v {
                next.push((t[(r + 1) % 3], t[(r + 2) % 3]));
            }
        }
    }
    let mut out = vec![None; k];
    if next.is_empty() {
        return out;
    }
    // a path starts at a neighbor that is never a successor
    let start = next
        .iter()
        .map(|&(x, _)| x)
        .find(|x| next.iter().all(|&(_, y)| y != *x))
        .unwrap_or(next[0].0);
    let mut cur = start;
    let mut used = vec![false; next.len()];
    out[0] = Some(cur);
    let mut pos = 1;
    while let Some(i) = (0..next.len()).find(|&i| !used[i] && next[i].0 == cur) {
        used[i] = true;
        cur = next[i].1;
        if cur == start || pos >= k {
            break;
        }
        out[pos] = Some(cur);
        pos += 1;
    }
    out
}

type Vec2 = (i64, i64);

fn det(x: Vec2, y: Vec2) -> i64 {
    x.0 * y.1 - x.1 * y.0
}

fn canon(v: Vec2) -> Vec2 {
    if v.1 < 0 || (v.1 == 0 && v.0 < 0) {
        (-v.0, -v.1)
    } else {
        v
    }
}

fn residue_class(v: Vec2, k: i64) -> Vec2 {
    let a = (v.0.rem_euclid(k), v.1.rem_euclid(k));
    let b = ((-v.0).rem_euclid(k), (-v.1).rem_euclid(k));
    a.min(b)
}

fn to_slope(v: Vec2) -> Slope {
    Slope::new(v.0, v.1).expect("primitive vector")
}

/// Closed quotient for `k ≤ 5`: vertices are primitive vectors modulo `k` up to
/// sign, and the neighbors of `X` with `det(X, Y) = 1` are `Y + jX`.
fn closed_quotient(k: u32) -> TriComplex {
    let kk = k as i64;
    let mut index: HashMap<Vec2, usize> = HashMap::new();
    let mut reps: Vec<(Vec2, Vec2)> = Vec::new();
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut add = |x: Vec2,
                   y: Vec2,
                   parent: Option<usize>,
                   reps: &mut Vec<(Vec2, Vec2)>,
                   parents: &mut Vec<Option<usize>>,
                   queue: &mut VecDeque<usize>| {
        let c = residue_class(x, kk);
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(c) {
            let y = if det(x, y) == 1 { y } else { (-y.0, -y.1) };
            e.insert(reps.len());
            reps.push((x, y));
            parents.push(parent);
            queue.push_back(reps.len() - 1);
        }
        index[&c]
    };
    add((1, 0), (0, 1), None, &mut reps, &mut parents, &mut queue);
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    while let Some(v) = queue.pop_front() {
        let (x, y) = reps[v];
        let mut link = Vec::with_capacity(k as usize);
        for j in 0..kk {
            let w = (y.0 + j * x.0, y.1 + j * x.1);
            link.push(add(w, x, Some(v), &mut reps, &mut parents, &mut queue));
        }
        if cycles.len() <= v {
            cycles.resize(v + 1, Vec::new());
        }
        cycles[v] = link;
    }
    let mut seen = BTreeSet::new();
    let mut triangles = Vec::new();
    for (v, link) in cycles.iter().enumerate() {
        for j in 0..link.len() {
            let t = [v, link[j], link[(j + 1) % link.len()]];
            let r = (0..3).map(|s| [t[s], t[(s + 1) % 3], t[(s + 2) % 3]]).min().unwrap();
            if seen.insert(r) {
                triangles.push(t);
            }
        }
    }
    let mut c = TriComplex::from_triangles(k, reps.len(), triangles);
    c.links = cycles.into_iter().map(|l| l.into_iter().map(Some).collect()).collect();
    c.labels = reps.iter().map(|&(x, _)| Some(to_slope(x))).collect();
    c.parents = parents;
    c
}

/// The combinatorial ball of the given radius in the triangulation with `k`
/// triangles at every vertex, grown layer by layer around vertex 0.
fn ball(k: u32, radius: u32) -> TriComplex {
    let ku = k as usize;
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut count = vec![0usize; ku + 1];
    for i in 0..ku {
        triangles.push([0, 1 + i, 1 + (i + 1) % ku]);
    }
    count[1..=ku].fill(2);
    count[0] = ku;
    let mut boundary: Vec<usize> = (1..=ku).collect();
    for _ in 1..radius {
        let len = boundary.len();
        let mut n = count.len();
        // shared[i] is the new vertex on the triangle over edge (b_{i-1}, b_i)
        let shared: Vec<usize> = (0..len).map(|i| n + i).collect();
        n += len;
        count.resize(n, 0);
        let mut next_boundary = Vec::new();
        for i in 0..len {
            let b = boundary[i];
            let prev = boundary[(i + len - 1) % len];
            let missing = ku - count[b] - 1;
            assert!(
                missing >= 2,
                "vertex {b} has {} triangles, too many for k = {k}",
                count[b]
            );
            let fresh: Vec<usize> = (n..n + missing - 2).collect();
            n += missing - 2;
            count.resize(n, 0);
            let mut fan = vec![shared[i]];
            fan.extend(&fresh);
            fan.push(shared[(i + 1) % len]);
            triangles.push([b, prev, fan[0]]);
            for w in fan.windows(2) {
                triangles.push([b, w[0], w[1]]);
            }
            next_boundary.extend(fan[..fan.len() - 1].iter().copied());
        }
        count = vec![0; n];
        for t in &triangles {
            for &v in t {
                count[v] += 1;
            }
        }
        boundary = next_boundary;
    }
    let n = count.len();
    TriComplex::from_triangles(k, n, triangles)
}

/// The quotient triangulation with `k` triangles per vertex: the closed sphere
/// for `k ≤ 5` (radius ignored) and a ball of the given radius otherwise.
pub fn quotient_complex(k: u32, radius: u32) -> Result<TriComplex, FareyError> {
    match k {
        0 | 1 => Err(FareyError::BadDegree(k)),
        2..=5 => Ok(closed_quotient(k)),
        _ => {
            let mut c = ball(k, radius.max(1));
            let (lifts, parents) = lift_ball(&c);
            c.labels = lifts.into_iter().map(|v| Some(to_slope(v))).collect();
            c.parents = parents;
            Ok(c)
        }
    }
}

/// Default patch radius for `k ≥ 6`.
pub const DEFAULT_RADIUS: u32 = 3;

fn centered(offset: i64, k: i64) -> i64 {
    let r = offset.rem_euclid(k);
    if r > k / 2 {
        r - k
    } else {
        r
    }
}

/// Breadth-first lift of a ball into the Farey triangulation. A vertex with
/// lift `X` and reference neighbor lift `Y`, `det(X, Y) = 1`, sends the
/// neighbor `j` steps counterclockwise from the reference to `Y + jX`.
fn lift_ball(c: &TriComplex) -> (Vec<Vec2>, Vec<Option<usize>>) {
    let k = c.k as i64;
    let n = c.vertex_count();
    let mut lift: Vec<Option<Vec2>> = vec![None; n];
    let mut reference: Vec<Option<usize>> = vec![None; n];
    lift[0] = Some((1, 0));
    let first = c.links[0][0].expect("center has a full link");
    lift[first] = Some((0, 1));
    reference[first] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        let x = lift[v].unwrap();
        let link = &c.links[v];
        let closed = link.iter().all(Option::is_some);
        let (rpos, rv) = match reference[v] {
            Some(r) => (link.iter().position(|&u| u == Some(r)).unwrap(), r),
            None => (0, first),
        };
        let mut y = lift[rv].unwrap();
        if det(x, y) != 1 {
            y = (-y.0, -y.1);
        }
        for (pos, u) in link.iter().enumerate() {
            let Some(u) = *u else { continue };
            if lift[u].is_none() {
                let raw = pos as i64 - rpos as i64;
                let j = if closed { centered(raw, k) } else { raw };
                lift[u] = Some(canon((y.0 + j * x.0, y.1 + j * x.1)));
                reference[u] = Some(v);
            }
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    reference[first] = Some(0);
    (
        lift.into_iter().map(|v| v.expect("ball is connected")).collect(),
        reference,
    )
}

/// A normal generator `base^power` attached to a lifted vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalGenerator {
    pub slope: Slope,
    pub base: Word,
    pub power: u32,
}

impl NormalGenerator {
    pub fn word(&self) -> Word {
        self.base.pow(self.power as i64)
    }
}

fn offsets(k: i64) -> Vec<i64> {
    (-((k - 1) / 2)..=k / 2).filter(|&j| j != 0).collect()
}

/// Lifted spanning tree of the closed quotient. Phase one grows from `∞`
/// through positive slopes, refusing a class whose image under
/// `x ↦ -1/x` is already taken; phase two adds `0` and grows from it.
/// Candidates are ranked by height and then by decreasing value.
fn closed_tree(k: u32) -> Vec<Slope> {
    let kk = k as i64;
    let mut reference: HashMap<Vec2, Vec2> = HashMap::new();
    let mut taken: BTreeMap<Vec2, Vec2> = BTreeMap::new();
    let mut order: Vec<Vec2> = Vec::new();
    let grow = |roots: Vec<Vec2>,
                reference: &mut HashMap<Vec2, Vec2>,
                taken: &mut BTreeMap<Vec2, Vec2>,
                order: &mut Vec<Vec2>,
                paired: bool| {
        let mut tree = roots;
        loop {
            let mut best: Option<(Slope, Vec2, Vec2)> = None;
            for &x in &tree {
                let y0 = reference[&x];
                for j in offsets(kk) {
                    let y = canon((y0.0 + j * x.0, y0.1 + j * x.1));
                    if paired && !(y.1 == 0 || y.0 > 0) {
                        continue;
                    }
                    let c = residue_class(y, kk);
                    if taken.contains_key(&c) {
                        continue;
                    }
                    if paired && taken.contains_key(&residue_class(canon((-c.1, c.0)), kk)) {
                        continue;
                    }
                    let r = to_slope(y);
                    if best.as_ref().is_none_or(|b| r < b.0) {
                        best = Some((r, y, x));
                    }
                }
            }
            let Some((_, y, x)) = best else { return };
            reference.insert(y, x);
            taken.insert(residue_class(y, kk), y);
            order.push(y);
            tree.push(y);
        }
    };
    let inf = (1, 0);
    let zero = (0, 1);
    reference.insert(inf, zero);
    taken.insert(residue_class(inf, kk), inf);
    order.push(inf);
    grow(vec![inf], &mut reference, &mut taken, &mut order, true);
    if let std::collections::btree_map::Entry::Vacant(e) = taken.entry(residue_class(zero, kk)) {
        reference.insert(zero, inf);
        e.insert(zero);
        order.push(zero);
        grow(vec![zero], &mut reference, &mut taken, &mut order, false);
    }
    order.into_iter().map(to_slope).collect()
}

/// Normal generators `w(s)^k`, one per vertex of a lifted spanning tree of the
/// quotient complex. Complete for `k ≤ 5`; for larger `k` the patch of the
/// given radius is used.
pub fn normal_generators(k: u32, radius: u32) -> Result<Vec<NormalGenerator>, FareyError> {
    let slopes = match k {
        0 | 1 => return Err(FareyError::BadDegree(k)),
        2..=5 => closed_tree(k),
        _ => {
            let mut s: Vec<Slope> = quotient_complex(k, radius)?.labels.into_iter().flatten().collect();
            s.sort();
            s
        }
    };
    Ok(slopes
        .into_iter()
        .map(|slope| NormalGenerator {
            slope,
            base: primitive_word(&slope),
            power: k,
        })
        .collect())
}

/// Reference generator tables for `k = 2..5`: slope and base word, as
/// published for the lifted trees of the tetrahedron, octahedron and
/// icosahedron quotients.
pub fn reference_generators(k: u32) -> Option<Vec<(Slope, Word)>> {
    let rows: &[(i64, i64, &str)] = match k {
        2 => &[(1, 0, "a"), (0, 1, "b"), (1, 1, "ab")],
        3 => &[(1, 0, "a"), (0, 1, "b"), (1, 1, "ab"), (-1, 1, "aB")],
        4 => &[
            (1, 0, "a"),
            (0, 1, "b"),
            (1, 1, "ab"),
            (-1, 1, "aB"),
            (2, 1, "a^2b"),
            (1, 2, "ab^2"),
        ],
        5 => &[
            (1, 0, "a"),
            (0, 1, "b"),
            (1, 1, "ab"),
            (-1, 1, "aB"),
            (2, 1, "a^2b"),
            (1, 2, "ab^2"),
            (-2, 1, "a^2B"),
            (-1, 2, "aB^2"),
            (3, 2, "a^2bab"),
            (-2, 3, "aBaB^2"),
            (5, 2, "a^3ba^2b"),
            (-2, 5, "aB^2aB^3"),
        ],
        _ => return None,
    };
    Some(
        rows.iter()
            .map(|&(p, q, w)| (Slope::new(p, q).unwrap(), w.parse().expect("table word")))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{conjugate_test, is_primitive};

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(s(-3, -2), s(3, 2));
        assert_eq!(s(-1, 0), Slope::INFINITY);
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
        assert_eq!("-2/5".parse::<Slope>().unwrap(), s(-2, 5));
        assert_eq!("inf".parse::<Slope>().unwrap(), Slope::INFINITY);
    }

    #[test]
    fn enumeration_starts_canonically() {
        let first: Vec<Slope> = Slope::enumerate().take(8).collect();
        assert_eq!(
            first,
            vec![
                Slope::INFINITY,
                s(1, 1),
                s(0, 1),
                s(-1, 1),
                s(2, 1),
                s(1, 2),
                s(-1, 2),
                s(-2, 1)
            ]
        );
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(stern_brocot_matrix(&Slope::INFINITY), [[1, 0], [0, 1]]);
        assert_eq!(stern_brocot_matrix(&Slope::ZERO), [[0, -1], [1, 0]]);
        let m = stern_brocot_matrix(&s(3, 2));
        assert_eq!((m[0][0], m[1][0]), (3, 2));
        assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        let m = stern_brocot_matrix(&s(-2, 5));
        assert_eq!((m[0][0], m[1][0]), (-2, 5));
        assert_eq!(mobius(m, &Slope::INFINITY), s(-2, 5));
    }

    #[test]
    fn outer_rep_matches_matrix() {
        for slope in Slope::enumerate().take(60) {
            let r = outer_rep(&slope);
            assert_eq!(r.forward().abelian_matrix(), stern_brocot_matrix(&slope), "{slope}");
            assert_eq!(r.orientation(), 1);
            assert_eq!(primitive_word(&slope).abelianize(), (slope.p(), slope.q()));
        }
    }

    #[test]
    fn primitive_word_examples() {
        assert_eq!(primitive_word(&Slope::INFINITY), Word::a());
        assert!(conjugate_test(&primitive_word(&s(1, 1)), &"ab".parse().unwrap()));
        assert!(conjugate_test(&primitive_word(&s(1, 2)), &"ab^2".parse().unwrap()));
        assert!(conjugate_test(&outer_rep(&Slope::ZERO).apply(&Word::a()), &Word::b()));
        assert!(conjugate_test(&primitive_word(&s(5, 2)), &"a^3ba^2b".parse().unwrap()));
    }

    #[test]
    fn closed_quotients_are_spheres() {
        for (k, v) in [(2, 3), (3, 4), (4, 6), (5, 12)] {
            let c = quotient_complex(k, 0).unwrap();
            assert_eq!(c.vertex_count(), v);
            assert_eq!(c.edges.len(), v * k as usize / 2);
            assert_eq!(c.triangles.len(), v * k as usize / 3);
            assert_eq!(c.euler_characteristic(), 2);
            assert!(c.is_closed());
        }
        let oct = quotient_complex(4, 0).unwrap();
        assert_eq!((oct.edges.len(), oct.triangles.len()), (12, 8));
    }

    #[test]
    fn every_edge_in_two_triangles() {
        for k in 3..=5 {
            let c = quotient_complex(k, 0).unwrap();
            for &(x, y) in &c.edges {
                let n = c.triangles.iter().filter(|t| t.contains(&x) && t.contains(&y)).count();
                assert_eq!(n, 2);
            }
        }
    }

    #[test]
    fn generator_tables_reproduced() {
        for k in 2..=5 {
            let gens = normal_generators(k, 0).unwrap();
            let table = reference_generators(k).unwrap();
            assert_eq!(gens.len(), table.len());
            for (slope, word) in table {
                let g = gens
                    .iter()
                    .find(|g| g.slope == slope)
                    .unwrap_or_else(|| panic!("k={k} slope {slope}"));
                assert!(
                    conjugate_test(&g.base, &word) || conjugate_test(&g.base, &word.inv()),
                    "k={k} slope {slope}"
                );
                assert!(is_primitive(&g.base));
            }
        }
    }

    #[test]
    fn ball_sizes_for_six() {
        let c = quotient_complex(6, 2).unwrap();
        assert_eq!(c.vertex_count(), 19);
        let c = quotient_complex(6, 3).unwrap();
        assert_eq!(c.vertex_count(), 37);
    }

    #[test]
    fn ball_lift_is_a_tree_in_the_farey_graph() {
        for (k, r) in [(6, 3), (7, 3), (8, 2)] {
            let c = quotient_complex(k, r).unwrap();
            let labels: Vec<Slope> = c.labels.iter().map(|l| l.unwrap()).collect();
            let distinct: BTreeSet<Slope> = labels.iter().copied().collect();
            assert_eq!(distinct.len(), labels.len(), "k={k}");
            for (x, parent) in c.parents.iter().enumerate() {
                let Some(y) = *parent else { continue };
                assert!(c.edges.contains(&(y.min(x), y.max(x))));
                let (u, v) = (labels[x], labels[y]);
                assert_eq!(det((u.p(), u.q()), (v.p(), v.q())).abs(), 1, "k={k} {u} {v}");
            }
            assert_eq!(c.parents.iter().filter(|p| p.is_none()).count(), 1);
            for (v, link) in c.links.iter().enumerate() {
                let deg = link.iter().flatten().count();
                assert!(deg <= k as usize);
                if link.iter().all(Option::is_some) {
                    assert_eq!(c.triangles.iter().filter(|t| t.contains(&v)).count(), k as usize);
                }
            }
        }
    }

    #[test]
    fn generators_grow_with_radius_for_six() {
        let counts: Vec<usize> = (1..=4).map(|r| normal_generators(6, r).unwrap().len()).collect();
        assert!(counts.windows(2).all(|w| w[1] > w[0]), "{counts:?}");
    }
}
