//! Root systems and minuscule orbit polytopes.
//!
//! All Euclidean data is scaled by 2, so that spin weights and the E7 roots
//! `½(Σ_I e − Σ_{I^c} e)` have integer coordinates. Reflections only use the
//! ratio `2(v,α)/(α,α)`, which does not see the scale.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::combinatorics::{GroundSet, Parity, SubsetMask};
use crate::error::{Error, Result};
use crate::tropical::{VariableId, VertexLabel};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<i64>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![0; dim])
    }

    /// `scale · e_i` with `i` 1-based.
    pub fn axis(dim: usize, i: usize, scale: i64) -> Self {
        let mut v = Vector::zero(dim);
        v.0[i - 1] = scale;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Vector {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// True when `self` is a real multiple of `other` (both nonzero).
    pub fn is_parallel(&self, other: &Vector) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.0[i] * other.0[j] == self.0[j] * other.0[i]))
    }
}

/// `⟨v, α⟩ = 2(v,α)/(α,α)` when it is an integer.
pub fn pairing(v: &Vector, alpha: &Vector) -> Option<i64> {
    let num = 2 * v.dot(alpha);
    let den = alpha.dot(alpha);
    (den != 0 && num % den == 0).then(|| num / den)
}

/// `s_α(v) = v − ⟨v,α⟩ α`.
pub fn reflect(v: &Vector, alpha: &Vector) -> Result<Vector> {
    let c = pairing(v, alpha)
        .ok_or_else(|| Error::NonIntegralPairing { v: v.0.clone(), alpha: alpha.0.clone() })?;
    Ok(v.sub(&alpha.scale(c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// A_r in R^{r+1}.
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::A(r) => write!(f, "A{r}"),
            RootKind::B(n) => write!(f, "B{n}"),
            RootKind::C(n) => write!(f, "C{n}"),
            RootKind::D(n) => write!(f, "D{n}"),
            RootKind::E6 => write!(f, "E6"),
            RootKind::E7 => write!(f, "E7"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootKind,
    dim: usize,
    roots: Vec<Vector>,
    simple: Vec<Vector>,
    positive: Vec<usize>,
}

fn signed_pairs(dim: usize, scale: i64) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 1..=dim {
        for j in i + 1..=dim {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(Vector::axis(dim, i, si * scale).add(&Vector::axis(dim, j, sj * scale)));
            }
        }
    }
    out
}

fn signed_axes(dim: usize, scale: i64) -> Vec<Vector> {
    (1..=dim).flat_map(|i| [Vector::axis(dim, i, scale), Vector::axis(dim, i, -scale)]).collect()
}

fn e7_roots() -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 1..=8 {
        for j in 1..=8 {
            if i != j {
                out.push(Vector::axis(8, i, 2).add(&Vector::axis(8, j, -2)));
            }
        }
    }
    for mask in GroundSet::new(8).unwrap().subsets_of_size(4) {
        out.push(Vector((1..=8).map(|k| if mask.contains(k) { 1 } else { -1 }).collect()));
    }
    out
}

impl RootSystem {
    fn from_roots(kind: RootKind, dim: usize, roots: Vec<Vector>) -> Self {
        // A regular functional: distinct powers of two never cancel on these roots.
        let f = Vector((0..dim).map(|i| 1i64 << (dim - 1 - i)).collect());
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].dot(&f) > 0).collect();
        let pos_set: BTreeSet<&Vector> = positive.iter().map(|&i| &roots[i]).collect();
        let simple = positive
            .iter()
            .map(|&i| &roots[i])
            .filter(|a| !pos_set.iter().any(|b| pos_set.contains(&a.sub(b))))
            .cloned()
            .collect();
        RootSystem { kind, dim, roots, simple, positive }
    }

    /// A_{n−1} acting on R^n.
    pub fn a(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParams(format!("A_{{n-1}} needs n >= 2, got {n}")));
        }
        let dim = n as usize;
        let mut roots = Vec::new();
        for i in 1..=dim {
            for j in 1..=dim {
                if i != j {
                    roots.push(Vector::axis(dim, i, 2).add(&Vector::axis(dim, j, -2)));
                }
            }
        }
        Ok(Self::from_roots(RootKind::A(n - 1), dim, roots))
    }

    pub fn b(n: u32) -> Result<Self> {
        check_rank(n, 1)?;
        let dim = n as usize;
        let mut roots = signed_pairs(dim, 2);
        roots.extend(signed_axes(dim, 2));
        Ok(Self::from_roots(RootKind::B(n), dim, roots))
    }

    pub fn c(n: u32) -> Result<Self> {
        check_rank(n, 1)?;
        let dim = n as usize;
        let mut roots = signed_pairs(dim, 2);
        roots.extend(signed_axes(dim, 4));
        Ok(Self::from_roots(RootKind::C(n), dim, roots))
    }

    pub fn d(n: u32) -> Result<Self> {
        check_rank(n, 2)?;
        Ok(Self::from_roots(RootKind::D(n), n as usize, signed_pairs(n as usize, 2)))
    }

    pub fn e7() -> Self {
        Self::from_roots(RootKind::E7, 8, e7_roots())
    }

    /// The E7 roots orthogonal to e_7 + e_8.
    pub fn e6() -> Self {
        let w = Vector::axis(8, 7, 1).add(&Vector::axis(8, 8, 1));
        let roots = e7_roots().into_iter().filter(|r| r.dot(&w) == 0).collect();
        Self::from_roots(RootKind::E6, 8, roots)
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple
    }

    /// One root from each pair ±α, i.e. one per reflecting hyperplane.
    pub fn positive_roots(&self) -> impl Iterator<Item = &Vector> {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

fn check_rank(n: u32, min: u32) -> Result<()> {
    if n < min || n > 24 {
        return Err(Error::BadParams(format!("rank {n} outside {min}..=24")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolytopeName {
    Hypersimplex { n: u32, k: u32 },
    Cube(u32),
    Demicube(u32, Parity),
    CrossD(u32),
    CrossC(u32),
    E6_221,
    E7_321,
}

impl fmt::Display for PolytopeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeName::Hypersimplex { n, k } => write!(f, "hypersimplex({n},{k})"),
            PolytopeName::Cube(n) => write!(f, "cube({n})"),
            PolytopeName::Demicube(n, Parity::Even) => write!(f, "demicube({n},+)"),
            PolytopeName::Demicube(n, Parity::Odd) => write!(f, "demicube({n},-)"),
            PolytopeName::CrossD(n) => write!(f, "cross_D({n})"),
            PolytopeName::CrossC(n) => write!(f, "cross_C({n})"),
            PolytopeName::E6_221 => write!(f, "2_21"),
            PolytopeName::E7_321 => write!(f, "3_21"),
        }
    }
}

impl FromStr for PolytopeName {
    type Err = Error;

    /// Accepts `2_21`, `3_21`, `e6_221`, `e7_321`, and `name(args)` forms such as
    /// `cube(3)`, `demicube(4,+)`, `hypersimplex(4,2)`, `cross_D(3)`, `cross_C(3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParams(format!("unknown polytope {s:?}"));
        match s {
            "2_21" | "e6_221" => return Ok(PolytopeName::E6_221),
            "3_21" | "e7_321" => return Ok(PolytopeName::E7_321),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(bad)?.split(',').map(str::trim).collect();
        let num = |a: &str| a.parse::<u32>().map_err(|_| bad());
        match (head, args.as_slice()) {
            ("hypersimplex", [n, k]) => Ok(PolytopeName::Hypersimplex { n: num(n)?, k: num(k)? }),
            ("cube", [n]) => Ok(PolytopeName::Cube(num(n)?)),
            ("demicube", [n, "+"]) => Ok(PolytopeName::Demicube(num(n)?, Parity::Even)),
            ("demicube", [n, "-"]) => Ok(PolytopeName::Demicube(num(n)?, Parity::Odd)),
            ("cross_D", [n]) => Ok(PolytopeName::CrossD(num(n)?)),
            ("cross_C", [n]) => Ok(PolytopeName::CrossC(num(n)?)),
            _ => Err(bad()),
        }
    }
}

/// For each reflecting hyperplane: the image of every vertex and the sign of its pairing.
#[derive(Debug)]
struct ReflectionTable {
    image: Vec<Vec<u16>>,
    sign: Vec<Vec<i8>>,
    separating: Vec<Vec<u16>>,
}

#[derive(Debug)]
pub struct AmbientPolytope {
    name: PolytopeName,
    labels: Vec<VariableId>,
    coords: Vec<Vector>,
    root_system: RootSystem,
    by_coords: HashMap<Vector, usize>,
    by_label: HashMap<VariableId, usize>,
    table: OnceLock<ReflectionTable>,
}

fn cube_vertex(n: u32, s: SubsetMask) -> Vector {
    Vector((1..=n).map(|i| if s.contains(i) { 1 } else { -1 }).collect())
}

pub fn build(name: PolytopeName) -> Result<AmbientPolytope> {
    let mut vertices: Vec<(VariableId, Vector)> = Vec::new();
    let rs = match name {
        PolytopeName::Hypersimplex { n, k } => {
            if n < 2 || k == 0 || k >= n || n > 16 {
                return Err(Error::BadParams(format!("hypersimplex({n},{k})")));
            }
            for s in GroundSet::new(n)?.subsets_of_size(k) {
                let v = Vector((1..=n).map(|i| if s.contains(i) { 2 } else { 0 }).collect());
                vertices.push((VariableId::Subset(s), v));
            }
            RootSystem::a(n)?
        }
        PolytopeName::Cube(n) => {
            check_small(n, 1)?;
            for s in GroundSet::new(n)?.subsets() {
                vertices.push((VariableId::Subset(s), cube_vertex(n, s)));
            }
            RootSystem::b(n)?
        }
        PolytopeName::Demicube(n, p) => {
            check_small(n, 2)?;
            for s in GroundSet::new(n)?.subsets_of_parity(p) {
                vertices.push((VariableId::Subset(s), cube_vertex(n, s)));
            }
            RootSystem::d(n)?
        }
        PolytopeName::CrossD(n) | PolytopeName::CrossC(n) => {
            check_small(n, 2)?;
            for i in 1..=n as i32 {
                for sign in [1, -1] {
                    vertices.push((
                        VariableId::SignedAxis(sign * i),
                        Vector::axis(n as usize, i as usize, 2 * sign as i64),
                    ));
                }
            }
            if matches!(name, PolytopeName::CrossD(_)) {
                RootSystem::d(n)?
            } else {
                RootSystem::c(n)?
            }
        }
        PolytopeName::E6_221 => {
            // Coordinates as listed, then doubled.
            for i in 1..=6u8 {
                let a = Vector::axis(8, i as usize, 4).add(&Vector::axis(8, 7, 4));
                vertices.push((VariableId::Vertex(VertexLabel::A(i)), a));
            }
            for i in 1..=6u8 {
                let b = Vector::axis(8, i as usize, 4).add(&Vector::axis(8, 8, 4));
                vertices.push((VariableId::Vertex(VertexLabel::B(i)), b));
            }
            for i in 1..=6u8 {
                for j in i + 1..=6 {
                    let mut c = Vector(vec![2; 8]);
                    c.0[i as usize - 1] -= 4;
                    c.0[j as usize - 1] -= 4;
                    vertices.push((VariableId::Vertex(VertexLabel::C(i, j)), c));
                }
            }
            RootSystem::e6()
        }
        PolytopeName::E7_321 => {
            for i in 1..=8u8 {
                for j in i + 1..=8 {
                    let mut a = Vector(vec![-2; 8]);
                    a.0[i as usize - 1] += 8;
                    a.0[j as usize - 1] += 8;
                    vertices.push((VariableId::Vertex(VertexLabel::Neg(i, j)), a.neg()));
                    vertices.push((VariableId::Vertex(VertexLabel::Pos(i, j)), a));
                }
            }
            vertices.sort_by_key(|(l, _)| *l);
            RootSystem::e7()
        }
    };
    let by_coords = vertices.iter().enumerate().map(|(i, (_, v))| (v.clone(), i)).collect();
    let by_label = vertices.iter().enumerate().map(|(i, (l, _))| (*l, i)).collect();
    let (labels, coords) = vertices.into_iter().unzip();
    Ok(AmbientPolytope {
        name,
        labels,
        coords,
        root_system: rs,
        by_coords,
        by_label,
        table: OnceLock::new(),
    })
}

fn check_small(n: u32, min: u32) -> Result<()> {
    if n < min || n > 16 {
        return Err(Error::BadParams(format!("size {n} outside {min}..=16")));
    }
    Ok(())
}

impl AmbientPolytope {
    pub fn name(&self) -> PolytopeName {
        self.name
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn labels(&self) -> &[VariableId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> VariableId {
        self.labels[i]
    }

    pub fn coords(&self) -> &[Vector] {
        &self.coords
    }

    pub fn vertex(&self, i: usize) -> &Vector {
        &self.coords[i]
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn index_of_label(&self, l: &VariableId) -> Option<usize> {
        self.by_label.get(l).copied()
    }

    pub fn index_of_coords(&self, v: &Vector) -> Option<usize> {
        self.by_coords.get(v).copied()
    }

    fn table(&self) -> &ReflectionTable {
        self.table.get_or_init(|| {
            let nv = self.len();
            let mut image = Vec::new();
            let mut sign = Vec::new();
            for alpha in self.root_system.positive_roots() {
                let mut img = Vec::with_capacity(nv);
                let mut sg = Vec::with_capacity(nv);
                for v in &self.coords {
                    let r = reflect(v, alpha).expect("vertex pairings are integral");
                    let j = self.index_of_coords(&r).expect("vertex set is closed under reflections");
                    img.push(j as u16);
                    sg.push(v.dot(alpha).signum() as i8);
                }
                image.push(img);
                sign.push(sg);
            }
            let mut separating = vec![Vec::new(); nv * nv];
            for u in 0..nv {
                for v in 0..nv {
                    separating[u * nv + v] = (0..sign.len())
                        .filter(|&h| sign[h][u] as i32 * sign[h][v] as i32 == -1)
                        .map(|h| h as u16)
                        .collect();
                }
            }
            ReflectionTable { image, sign, separating }
        })
    }

    /// Number of reflecting hyperplanes.
    pub fn hyperplane_count(&self) -> usize {
        self.table().image.len()
    }

    /// Image of vertex `v` under the reflection in hyperplane `h`.
    pub fn reflect_vertex(&self, h: usize, v: usize) -> usize {
        self.table().image[h][v] as usize
    }

    /// Hyperplanes strictly separating vertices `u` and `v`.
    pub fn separating_hyperplanes(&self, u: usize, v: usize) -> &[u16] {
        &self.table().separating[u * self.len() + v]
    }

    /// Sign of the pairing of vertex `v` with the positive root of hyperplane `h`.
    pub fn side(&self, h: usize, v: usize) -> i8 {
        self.table().sign[h][v]
    }

    /// The positive root defining hyperplane `h`.
    pub fn hyperplane_root(&self, h: usize) -> &Vector {
        self.root_system.positive_roots().nth(h).expect("hyperplane index in range")
    }

    /// True if every root reflection maps the vertex set onto itself.
    pub fn is_reflection_closed(&self) -> bool {
        self.root_system.roots().iter().all(|alpha| {
            let mut hit = vec![false; self.len()];
            for v in &self.coords {
                match reflect(v, alpha).ok().and_then(|r| self.index_of_coords(&r)) {
                    Some(j) if !hit[j] => hit[j] = true,
                    _ => return false,
                }
            }
            true
        })
    }

    /// Vertices reachable from `start` by simple reflections.
    pub fn simple_orbit(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for alpha in self.root_system.simple_roots() {
                let r = reflect(&self.coords[i], alpha).expect("integral pairing");
                if let Some(j) = self.index_of_coords(&r) {
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
        seen
    }
}

/// Graph distances on the 1-skeleton of 2_21 or 3_21, read off from inner products.
#[derive(Clone, Debug)]
pub struct DistanceProfile {
    /// `inner_products[d - 1]` is the inner product of two vertices at distance `d`.
    pub inner_products: Vec<i64>,
    distance: Vec<Vec<u8>>,
    /// Number of vertices at distance 1, 2, ... from any vertex.
    pub counts: Vec<usize>,
}

impl DistanceProfile {
    pub fn distance(&self, u: usize, v: usize) -> u8 {
        self.distance[u][v]
    }

    pub fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.distance.len()).filter(move |&v| self.distance[u][v] == 1)
    }
}

fn require_exceptional(p: &AmbientPolytope) -> Result<()> {
    match p.name {
        PolytopeName::E6_221 | PolytopeName::E7_321 => Ok(()),
        other => Err(Error::UnsupportedPolytope(other.to_string())),
    }
}

pub fn adjacency_profile(p: &AmbientPolytope) -> Result<DistanceProfile> {
    require_exceptional(p)?;
    let nv = p.len();
    let mut values: Vec<i64> = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            values.push(p.coords[u].dot(&p.coords[v]));
        }
    }
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    let class = |x: i64| values.iter().position(|&y| y == x).unwrap() as u8 + 1;
    let distance: Vec<Vec<u8>> = (0..nv)
        .map(|u| {
            (0..nv)
                .map(|v| if u == v { 0 } else { class(p.coords[u].dot(&p.coords[v])) })
                .collect()
        })
        .collect();
    // The largest inner product defines adjacency; BFS must reproduce every class.
    for s in 0..nv {
        let mut dist = vec![u8::MAX; nv];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..nv {
                if distance[u][v] == 1 && dist[v] == u8::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        assert_eq!(dist, distance[s], "inner-product classes disagree with graph distance");
    }
    let counts: Vec<usize> =
        (1..=values.len()).map(|d| distance[0].iter().filter(|&&x| x as usize == d).count()).collect();
    for row in &distance {
        for (d, &c) in counts.iter().enumerate() {
            assert_eq!(row.iter().filter(|&&x| x as usize == d + 1).count(), c, "not distance-regular");
        }
    }
    Ok(DistanceProfile { inner_products: values, distance, counts })
}

/// A cross-polytope facet and its antipodal pairs, as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossFacet {
    /// For 2_21 the vertex whose non-neighbours form the facet.
    pub apex: Option<usize>,
    pub vertices: Vec<usize>,
    pub antipodes: Vec<(usize, usize)>,
}

fn facet_antipodes(prof: &DistanceProfile, vertices: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, &u) in vertices.iter().enumerate() {
        for &v in &vertices[x + 1..] {
            if prof.distance(u, v) == 2 {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn cross_facets(p: &AmbientPolytope) -> Result<Vec<CrossFacet>> {
    require_exceptional(p)?;
    let prof = adjacency_profile(p)?;
    let nv = p.len();
    let mut facets = Vec::new();
    match p.name {
        PolytopeName::E6_221 => {
            for a in 0..nv {
                let vertices: Vec<usize> = (0..nv).filter(|&b| prof.distance(a, b) == 2).collect();
                let antipodes = facet_antipodes(&prof, &vertices);
                facets.push(CrossFacet { apex: Some(a), vertices, antipodes });
            }
        }
        _ => {
            let mut seen = BTreeSet::new();
            for u in 0..nv {
                for v in u + 1..nv {
                    if prof.distance(u, v) != 2 {
                        continue;
                    }
                    let mut vertices: Vec<usize> = (0..nv)
                        .filter(|&w| w == u || w == v || (prof.distance(u, w) == 1 && prof.distance(v, w) == 1))
                        .collect();
                    vertices.sort_unstable();
                    if seen.insert(vertices.clone()) {
                        let antipodes = facet_antipodes(&prof, &vertices);
                        facets.push(CrossFacet { apex: None, vertices, antipodes });
                    }
                }
            }
        }
    }
    Ok(facets)
}

/// The 28 pairs of vertices at distance three in 3_21.
pub fn antipodes_321(p: &AmbientPolytope) -> Result<Vec<(usize, usize)>> {
    if p.name != PolytopeName::E7_321 {
        return Err(Error::UnsupportedPolytope(p.name.to_string()));
    }
    let prof = adjacency_profile(p)?;
    let nv = p.len();
    let mut out = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            if prof.distance(u, v) == 3 {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

/// All roots α (with sign) such that (u,α) and (v,α) are nonzero with opposite signs.
pub fn separating_roots(u: &Vector, v: &Vector, rs: &RootSystem) -> Result<Vec<Vector>> {
    if u == v {
        return Err(Error::BadParams("separating_roots needs distinct vectors".into()));
    }
    Ok(rs
        .roots()
        .iter()
        .filter(|a| u.dot(a).signum() * v.dot(a).signum() == -1)
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector(c.to_vec())
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(reflect(&v(&[2, 0]), &v(&[2, -2])).unwrap(), v(&[0, 2]));
        // δ_∅ in cube(3), short root e_3.
        assert_eq!(reflect(&v(&[-1, -1, -1]), &v(&[0, 0, 2])).unwrap(), v(&[-1, -1, 1]));
        assert!(matches!(
            reflect(&v(&[1, 0]), &v(&[2, 2])),
            Err(Error::NonIntegralPairing { .. })
        ));
    }

    #[test]
    fn root_counts() {
        for n in 2..=6u32 {
            let n2 = (n * n) as usize;
            assert_eq!(RootSystem::a(n).unwrap().len(), (n * (n - 1)) as usize);
            assert_eq!(RootSystem::b(n).unwrap().len(), 2 * n2);
            assert_eq!(RootSystem::c(n).unwrap().len(), 2 * n2);
            assert_eq!(RootSystem::d(n).unwrap().len(), (2 * n * (n - 1)) as usize);
            assert_eq!(RootSystem::a(n).unwrap().simple_roots().len(), n as usize - 1);
            assert_eq!(RootSystem::b(n).unwrap().simple_roots().len(), n as usize);
            assert_eq!(RootSystem::c(n).unwrap().simple_roots().len(), n as usize);
            assert_eq!(RootSystem::d(n).unwrap().simple_roots().len(), n as usize);
        }
        assert_eq!(RootSystem::e6().len(), 72);
        assert_eq!(RootSystem::e7().len(), 126);
        assert_eq!(RootSystem::e6().simple_roots().len(), 6);
        assert_eq!(RootSystem::e7().simple_roots().len(), 7);
    }

    #[test]
    fn root_systems_are_closed_and_crystallographic() {
        let systems = [
            RootSystem::a(4).unwrap(),
            RootSystem::b(4).unwrap(),
            RootSystem::c(4).unwrap(),
            RootSystem::d(4).unwrap(),
            RootSystem::e6(),
            RootSystem::e7(),
        ];
        for rs in &systems {
            let set: BTreeSet<&Vector> = rs.roots().iter().collect();
            for a in rs.roots() {
                assert!(set.contains(&a.neg()), "{} not closed under negation", rs.kind());
                for b in rs.roots() {
                    assert!(pairing(a, b).is_some(), "{} pairing not integral", rs.kind());
                    assert!(set.contains(&reflect(a, b).unwrap()), "{} not reflection closed", rs.kind());
                }
            }
        }
    }

    #[test]
    fn e6_is_e7_orthogonal_slice() {
        let w = v(&[0, 0, 0, 0, 0, 0, 1, 1]);
        let e6: BTreeSet<Vector> = RootSystem::e6().roots().iter().cloned().collect();
        let slice: BTreeSet<Vector> =
            RootSystem::e7().roots().iter().filter(|r| pairing(&w, r) == Some(0)).cloned().collect();
        assert_eq!(e6, slice);
    }

    #[test]
    fn vertex_counts_and_relations() {
        let e6 = build(PolytopeName::E6_221).unwrap();
        assert_eq!(e6.len(), 27);
        for c in e6.coords() {
            assert_eq!(c.0[..6].iter().sum::<i64>(), 4);
            assert_eq!(c.0[6] + c.0[7], 4);
        }
        let e7 = build(PolytopeName::E7_321).unwrap();
        assert_eq!(e7.len(), 56);
        assert!(e7.coords().iter().all(|c| c.0.iter().sum::<i64>() == 0));
        assert_eq!(build(PolytopeName::Demicube(4, Parity::Even)).unwrap().len(), 8);
        assert_eq!(build(PolytopeName::Hypersimplex { n: 5, k: 2 }).unwrap().len(), 10);
        assert!(build(PolytopeName::Hypersimplex { n: 3, k: 3 }).is_err());
    }

    #[test]
    fn every_polytope_is_one_orbit() {
        let names = [
            PolytopeName::Hypersimplex { n: 5, k: 2 },
            PolytopeName::Cube(4),
            PolytopeName::Demicube(4, Parity::Even),
            PolytopeName::Demicube(5, Parity::Odd),
            PolytopeName::CrossD(4),
            PolytopeName::CrossC(3),
            PolytopeName::E6_221,
            PolytopeName::E7_321,
        ];
        for name in names {
            let p = build(name).unwrap();
            assert!(p.is_reflection_closed(), "{name}");
            assert_eq!(p.simple_orbit(0).len(), p.len(), "{name}");
            let labels: BTreeSet<_> = p.labels().iter().collect();
            assert_eq!(labels.len(), p.len());
        }
    }

    #[test]
    fn e6_reflection_of_a_vertex() {
        let p = build(PolytopeName::E6_221).unwrap();
        let a1 = p.index_of_label(&VariableId::Vertex(VertexLabel::A(1))).unwrap();
        let a2 = p.index_of_label(&VariableId::Vertex(VertexLabel::A(2))).unwrap();
        let alpha = Vector::axis(8, 1, 2).add(&Vector::axis(8, 2, -2));
        assert_eq!(reflect(p.vertex(a1), &alpha).unwrap(), *p.vertex(a2));
    }

    #[test]
    fn profiles() {
        let e6 = build(PolytopeName::E6_221).unwrap();
        let prof = adjacency_profile(&e6).unwrap();
        assert_eq!(prof.counts, vec![16, 10]);
        let l = |x| e6.index_of_label(&VariableId::Vertex(x)).unwrap();
        for i in 1..=6u8 {
            for j in 1..=6u8 {
                if i != j {
                    let c = if i < j { VertexLabel::C(i, j) } else { VertexLabel::C(j, i) };
                    assert_eq!(prof.distance(l(VertexLabel::A(i)), l(c)), 2);
                }
            }
        }
        let e7 = build(PolytopeName::E7_321).unwrap();
        let prof = adjacency_profile(&e7).unwrap();
        assert_eq!(prof.counts, vec![27, 27, 1]);
        // Doubled coordinates multiply inner products by 4.
        assert_eq!(prof.inner_products, vec![32, -32, -96]);
        let l = |x| e7.index_of_label(&VariableId::Vertex(x)).unwrap();
        assert_eq!(prof.distance(l(VertexLabel::Pos(1, 2)), l(VertexLabel::Neg(1, 2))), 3);
        let cube = build(PolytopeName::Cube(3)).unwrap();
        assert!(matches!(adjacency_profile(&cube), Err(Error::UnsupportedPolytope(_))));
    }

    #[test]
    fn separating_root_examples() {
        let d2 = RootSystem::d(2).unwrap();
        let u = v(&[2, 0]);
        let w = v(&[-2, 0]);
        assert_eq!(separating_roots(&u, &w, &d2).unwrap().len(), 4);
        let c2 = RootSystem::c(2).unwrap();
        let sep = separating_roots(&u, &w, &c2).unwrap();
        assert_eq!(sep.len(), 6);
        assert!(sep.contains(&v(&[4, 0])));
        assert!(separating_roots(&u, &u, &d2).is_err());
    }

    #[test]
    fn names_parse() {
        for name in [
            PolytopeName::Hypersimplex { n: 5, k: 2 },
            PolytopeName::Cube(4),
            PolytopeName::Demicube(4, Parity::Even),
            PolytopeName::Demicube(5, Parity::Odd),
            PolytopeName::CrossD(4),
            PolytopeName::CrossC(3),
            PolytopeName::E6_221,
            PolytopeName::E7_321,
        ] {
            assert_eq!(name.to_string().parse::<PolytopeName>().unwrap(), name);
        }
        assert!("cube".parse::<PolytopeName>().is_err());
    }
}
