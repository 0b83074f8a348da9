//! Generators for the tropical strong exchange equations of every minuscule type.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{GroundSet, Parity, SubsetMask};
use crate::error::{Error, Result};
use crate::polytopes::{antipodes_321, cross_facets, AmbientPolytope, PolytopeName};
use crate::tropical::{BoolQuadric, Monomial, VariableId};

/// Largest n for which the type B and D generators run (they visit 4^n pairs).
pub const MAX_EQUATION_N: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    A { n: u32, k: u32 },
    B(u32),
    /// The type D equations on subsets of the given parity.
    D(u32, Parity),
    DCross(u32),
    CCross(u32),
    E6,
    E7,
}

impl FamilyTag {
    /// Short family name used in JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            FamilyTag::A { .. } => "A",
            FamilyTag::B(_) => "B",
            FamilyTag::D(_, Parity::Even) => "D+",
            FamilyTag::D(_, Parity::Odd) => "D-",
            FamilyTag::DCross(_) => "D-cross",
            FamilyTag::CCross(_) => "C-cross",
            FamilyTag::E6 => "E6",
            FamilyTag::E7 => "E7",
        }
    }

    pub fn n(&self) -> Option<u32> {
        match *self {
            FamilyTag::A { n, .. }
            | FamilyTag::B(n)
            | FamilyTag::D(n, _)
            | FamilyTag::DCross(n)
            | FamilyTag::CCross(n) => Some(n),
            FamilyTag::E6 | FamilyTag::E7 => None,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::A { n, k } => write!(f, "A({n},{k})"),
            FamilyTag::B(n) => write!(f, "B({n})"),
            FamilyTag::D(n, Parity::Even) => write!(f, "D({n},+)"),
            FamilyTag::D(n, Parity::Odd) => write!(f, "D({n},-)"),
            FamilyTag::DCross(n) => write!(f, "D_cross({n})"),
            FamilyTag::CCross(n) => write!(f, "C_cross({n})"),
            FamilyTag::E6 => write!(f, "E6"),
            FamilyTag::E7 => write!(f, "E7"),
        }
    }
}

/// The data an equation was generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationLabel {
    Pair { i: SubsetMask, j: SubsetMask },
    CrossPolytope,
    /// A cross-polytope facet of 2_21 or 3_21, with the 2_21 vertex it belongs to.
    Facet { apex: Option<VariableId>, vertices: Vec<VariableId> },
    /// The antipodes of 3_21 itself.
    Antipodes,
}

impl EquationLabel {
    pub fn to_json(&self) -> Value {
        match self {
            EquationLabel::Pair { i, j } => json!({ "I": i.to_vec(), "J": j.to_vec() }),
            EquationLabel::CrossPolytope => json!({ "cross": true }),
            EquationLabel::Facet { apex, vertices } => {
                let vs: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
                match apex {
                    Some(a) => json!({ "apex": a.to_string(), "facet": vs }),
                    None => json!({ "facet": vs }),
                }
            }
            EquationLabel::Antipodes => json!({ "antipodes": "3_21" }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Every generator that produced this monomial set, in generation order.
    pub labels: Vec<EquationLabel>,
    pub quadric: BoolQuadric,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationJson {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub label: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub merged: Vec<Value>,
    pub monomials: BoolQuadric,
}

#[derive(Clone, Debug)]
pub struct EquationFamily {
    tag: FamilyTag,
    equations: Vec<Equation>,
}

impl EquationFamily {
    /// Collects generated equations, merging those with identical monomial sets.
    pub fn from_generated(tag: FamilyTag, gen: impl IntoIterator<Item = (EquationLabel, BoolQuadric)>) -> Self {
        let mut equations: Vec<Equation> = Vec::new();
        let mut seen: HashMap<BoolQuadric, usize> = HashMap::new();
        for (label, quadric) in gen {
            match seen.get(&quadric) {
                Some(&i) => equations[i].labels.push(label),
                None => {
                    seen.insert(quadric.clone(), equations.len());
                    equations.push(Equation { labels: vec![label], quadric });
                }
            }
        }
        EquationFamily { tag, equations }
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn quadrics(&self) -> impl Iterator<Item = &BoolQuadric> {
        self.equations.iter().map(|e| &e.quadric)
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, q: &BoolQuadric) -> bool {
        self.equations.iter().any(|e| &e.quadric == q)
    }

    pub fn to_json(&self) -> Vec<EquationJson> {
        self.equations
            .iter()
            .map(|e| EquationJson {
                family: self.tag.code().to_string(),
                n: self.tag.n(),
                label: e.labels[0].to_json(),
                merged: e.labels[1..].iter().map(EquationLabel::to_json).collect(),
                monomials: e.quadric.clone(),
            })
            .collect()
    }
}

fn subset_monomial(a: SubsetMask, b: SubsetMask) -> Monomial {
    Monomial::subsets(a, b)
}

/// f^(A)_{I,J} for |I| = k−1, |J| = k+1, |J \ I| ≥ 3.
pub fn gen_type_a(n: u32, k: u32) -> Result<EquationFamily> {
    if k == 0 || k >= n {
        return Err(Error::BadRank { n, k });
    }
    let g = GroundSet::new(n)?;
    let mut gen = Vec::new();
    for i in g.subsets_of_size(k - 1) {
        for j in g.subsets_of_size(k + 1) {
            let diff = j.minus(i);
            if diff.len() >= 3 {
                let q = BoolQuadric::new(diff.elements().map(|x| subset_monomial(i.toggle(x), j.toggle(x))));
                gen.push((EquationLabel::Pair { i, j }, q));
            }
        }
    }
    Ok(EquationFamily::from_generated(FamilyTag::A { n, k }, gen))
}

fn type_b_quadric(i: SubsetMask, j: SubsetMask) -> BoolQuadric {
    let d = i.sym_diff(j);
    let mut q = BoolQuadric::new(d.elements().map(|x| subset_monomial(i.toggle(x), j.toggle(x))));
    if d.len() % 2 == 1 {
        q.insert(subset_monomial(i, j));
    }
    q
}

fn check_equation_n(n: u32, min: u32) -> Result<GroundSet> {
    if n < min || n > MAX_EQUATION_N {
        return Err(Error::BadParams(format!("n = {n} outside {min}..={MAX_EQUATION_N}")));
    }
    GroundSet::new(n)
}

/// ℱ^(B)_n: one equation per (I, J) with |I Δ J| ≥ 3, identified in 𝔹[X].
pub fn gen_type_b(n: u32) -> Result<EquationFamily> {
    let g = check_equation_n(n, 3)?;
    let mut gen = Vec::new();
    for i in g.subsets() {
        for j in g.subsets() {
            if i.sym_diff(j).len() >= 3 {
                gen.push((EquationLabel::Pair { i, j }, type_b_quadric(i, j)));
            }
        }
    }
    Ok(EquationFamily::from_generated(FamilyTag::B(n), gen))
}

/// The two halves of ℱ^(D)_n, by the parity of the subsets they involve.
#[derive(Clone, Debug)]
pub struct TypeDFamilies {
    pub even: EquationFamily,
    pub odd: EquationFamily,
}

impl TypeDFamilies {
    pub fn for_parity(&self, p: Parity) -> &EquationFamily {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}

/// ℱ^(D)_n: the even-case type B equations with |I Δ J| ≥ 4. n = 3 gives empty families.
pub fn gen_type_d(n: u32) -> Result<TypeDFamilies> {
    let g = check_equation_n(n, 3)?;
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for i in g.subsets() {
        for j in g.subsets() {
            let d = i.sym_diff(j).len();
            if d >= 4 && d % 2 == 0 {
                let item = (EquationLabel::Pair { i, j }, type_b_quadric(i, j));
                // The monomials involve I Δ x, of the parity opposite to I.
                if i.len() % 2 == 1 {
                    even.push(item);
                } else {
                    odd.push(item);
                }
            }
        }
    }
    Ok(TypeDFamilies {
        even: EquationFamily::from_generated(FamilyTag::D(n, Parity::Even), even),
        odd: EquationFamily::from_generated(FamilyTag::D(n, Parity::Odd), odd),
    })
}

/// The single equation ⊕_i x_i ⊙ x_{−i}.
pub fn cross_d_equation(n: u32) -> BoolQuadric {
    BoolQuadric::new(
        (1..=n as i32).map(|i| Monomial::new(VariableId::SignedAxis(i), VariableId::SignedAxis(-i))),
    )
}

pub fn gen_cross_d(n: u32) -> Result<EquationFamily> {
    if !(2..=24).contains(&n) {
        return Err(Error::BadParams(format!("cross polytope rank {n}")));
    }
    Ok(EquationFamily::from_generated(
        FamilyTag::DCross(n),
        [(EquationLabel::CrossPolytope, cross_d_equation(n))],
    ))
}

/// Type C cross polytopes impose no equations.
pub fn gen_cross_c(n: u32) -> Result<EquationFamily> {
    if !(2..=24).contains(&n) {
        return Err(Error::BadParams(format!("cross polytope rank {n}")));
    }
    Ok(EquationFamily::from_generated(FamilyTag::CCross(n), []))
}

fn facet_equation(p: &AmbientPolytope, pairs: &[(usize, usize)]) -> BoolQuadric {
    BoolQuadric::new(pairs.iter().map(|&(u, v)| Monomial::new(p.label(u), p.label(v))))
}

/// ℱ^(E)_6: for each vertex A, the antipodes of the cross polytope of vertices not adjacent to A.
pub fn gen_e6(p: &AmbientPolytope) -> Result<EquationFamily> {
    if p.name() != PolytopeName::E6_221 {
        return Err(Error::UnsupportedPolytope(p.name().to_string()));
    }
    let gen = cross_facets(p)?.into_iter().map(|f| {
        let label = EquationLabel::Facet {
            apex: f.apex.map(|a| p.label(a)),
            vertices: f.vertices.iter().map(|&v| p.label(v)).collect(),
        };
        (label, facet_equation(p, &f.antipodes))
    });
    Ok(EquationFamily::from_generated(FamilyTag::E6, gen.collect::<Vec<_>>()))
}

/// ℱ^(E)_7: one equation per 6-cross-polytope facet, plus the antipodes of 3_21.
pub fn gen_e7(p: &AmbientPolytope) -> Result<EquationFamily> {
    if p.name() != PolytopeName::E7_321 {
        return Err(Error::UnsupportedPolytope(p.name().to_string()));
    }
    let mut gen: Vec<_> = cross_facets(p)?
        .into_iter()
        .map(|f| {
            let label = EquationLabel::Facet { apex: None, vertices: f.vertices.iter().map(|&v| p.label(v)).collect() };
            (label, facet_equation(p, &f.antipodes))
        })
        .collect();
    gen.push((EquationLabel::Antipodes, facet_equation(p, &antipodes_321(p)?)));
    Ok(EquationFamily::from_generated(FamilyTag::E7, gen))
}

/// Applies a permutation of [n] (given as images of 1..=n) to a subset.
pub fn permute_subset(s: SubsetMask, perm: &[u32]) -> SubsetMask {
    s.elements().fold(SubsetMask::EMPTY, |acc, i| acc.toggle(perm[i as usize - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::build;
    use crate::tropical::VertexLabel;

    fn set(v: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(v).unwrap()
    }

    fn sm(a: &[u32], b: &[u32]) -> Monomial {
        Monomial::subsets(set(a), set(b))
    }

    /// Brute-force count of (I, J) pairs, without deduplication.
    fn type_a_pairs(n: u32, k: u32) -> usize {
        let mut count = 0;
        for i in 0u32..1 << n {
            for j in 0u32..1 << n {
                if i.count_ones() + 1 == k && j.count_ones() == k + 1 && (j & !i).count_ones() >= 3 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn type_a_examples() {
        let f = gen_type_a(4, 2).unwrap();
        let q = BoolQuadric::new([sm(&[1, 2], &[3, 4]), sm(&[1, 3], &[2, 4]), sm(&[1, 4], &[2, 3])]);
        assert!(f.contains(&q));
        assert_eq!(gen_type_a(3, 1).unwrap().len(), 0);
        assert_eq!(gen_type_a(3, 2).unwrap().len(), 0);
        assert_eq!(gen_type_a(4, 1).unwrap().len(), 0);
        assert_eq!(gen_type_a(4, 2).unwrap().len(), 1);
        assert!(matches!(gen_type_a(4, 0), Err(Error::BadRank { .. })));
        assert!(matches!(gen_type_a(4, 4), Err(Error::BadRank { .. })));
        for (n, k) in [(4, 2), (5, 2), (5, 3), (6, 3)] {
            let fam = gen_type_a(n, k).unwrap();
            let labels: usize = fam.equations().iter().map(|e| e.labels.len()).sum();
            assert_eq!(labels, type_a_pairs(n, k));
        }
    }

    #[test]
    fn type_b_counts() {
        assert_eq!(gen_type_b(3).unwrap().len(), 1);
        let b4 = gen_type_b(4).unwrap();
        assert_eq!(b4.len(), 10);
        let q = BoolQuadric::new([
            sm(&[], &[1, 2, 3, 4]),
            sm(&[1, 2], &[3, 4]),
            sm(&[1, 3], &[2, 4]),
            sm(&[1, 4], &[2, 3]),
        ]);
        assert!(b4.contains(&q));
        let b3 = gen_type_b(3).unwrap();
        assert_eq!(b3.equations()[0].quadric.len(), 4);
        assert_eq!(b3.equations()[0].labels.len(), 8);
    }

    #[test]
    fn type_d_is_b_subfamily() {
        assert!(gen_type_d(3).unwrap().even.is_empty());
        assert!(gen_type_d(3).unwrap().odd.is_empty());
        let d4 = gen_type_d(4).unwrap();
        let f = BoolQuadric::new([
            sm(&[], &[1, 2, 3, 4]),
            sm(&[1, 2], &[3, 4]),
            sm(&[1, 3], &[2, 4]),
            sm(&[1, 4], &[2, 3]),
        ]);
        assert!(d4.even.contains(&f));
        assert_eq!(d4.even.len(), 1);
        assert_eq!(d4.odd.len(), 1);
        for n in 4..=6 {
            let b = gen_type_b(n).unwrap();
            let d = gen_type_d(n).unwrap();
            let parity_of = |q: &BoolQuadric| -> Option<u32> {
                let ps: Vec<u32> = q.variables().iter().map(|v| v.subset().unwrap().len() % 2).collect();
                ps.iter().all(|&p| p == ps[0]).then_some(ps[0])
            };
            let mut expected_even = 0;
            let mut expected_odd = 0;
            for e in b.equations() {
                let Some(p) = parity_of(&e.quadric) else { continue };
                let big = e.labels.iter().any(|l| match l {
                    EquationLabel::Pair { i, j } => i.sym_diff(*j).len() >= 4,
                    _ => false,
                });
                if big {
                    if p == 0 {
                        expected_even += 1;
                        assert!(d.even.contains(&e.quadric));
                    } else {
                        expected_odd += 1;
                        assert!(d.odd.contains(&e.quadric));
                    }
                }
            }
            assert_eq!(d.even.len(), expected_even);
            assert_eq!(d.odd.len(), expected_odd);
            for q in d.even.quadrics() {
                assert_eq!(parity_of(q), Some(0));
                assert!(b.contains(q));
            }
            for q in d.odd.quadrics() {
                assert_eq!(parity_of(q), Some(1));
                assert!(b.contains(q));
            }
        }
    }

    fn map_subsets(q: &BoolQuadric, perm: &[u32]) -> BoolQuadric {
        q.map_vars(|v| match v {
            VariableId::Subset(s) => VariableId::Subset(permute_subset(s, perm)),
            other => other,
        })
    }

    #[test]
    fn symmetric_group_equivariance() {
        for n in 3..=5u32 {
            let mut fams = vec![gen_type_b(n).unwrap()];
            for k in 1..n {
                fams.push(gen_type_a(n, k).unwrap());
            }
            if n >= 4 {
                let d = gen_type_d(n).unwrap();
                fams.push(d.even);
                fams.push(d.odd);
            }
            for a in 1..=n {
                for b in a + 1..=n {
                    let mut perm: Vec<u32> = (1..=n).collect();
                    perm.swap(a as usize - 1, b as usize - 1);
                    for fam in &fams {
                        for q in fam.quadrics() {
                            assert!(fam.contains(&map_subsets(q, &perm)), "{} ({a} {b})", fam.tag());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_families() {
        let d2 = gen_cross_d(2).unwrap();
        assert_eq!(d2.len(), 1);
        let expected = BoolQuadric::new([
            Monomial::new(VariableId::SignedAxis(1), VariableId::SignedAxis(-1)),
            Monomial::new(VariableId::SignedAxis(2), VariableId::SignedAxis(-2)),
        ]);
        assert_eq!(d2.equations()[0].quadric, expected);
        assert_eq!(gen_cross_d(5).unwrap().equations()[0].quadric.len(), 5);
        assert!(gen_cross_c(3).unwrap().is_empty());
        assert!(gen_cross_c(7).unwrap().is_empty());
        assert_eq!(gen_cross_c(3).unwrap().tag(), FamilyTag::CCross(3));
    }

    fn vx(l: VertexLabel) -> VariableId {
        VariableId::Vertex(l)
    }

    #[test]
    fn e6_family() {
        let p = build(PolytopeName::E6_221).unwrap();
        let f = gen_e6(&p).unwrap();
        assert_eq!(f.len(), 27);
        assert!(f.quadrics().all(|q| q.len() == 5));
        // f_{c_12}: {a1,b2},{a2,b1},{c34,c56},{c35,c46},{c36,c45}.
        let c = |i, j| vx(VertexLabel::C(i, j));
        let expected = BoolQuadric::new([
            Monomial::new(vx(VertexLabel::A(1)), vx(VertexLabel::B(2))),
            Monomial::new(vx(VertexLabel::A(2)), vx(VertexLabel::B(1))),
            Monomial::new(c(3, 4), c(5, 6)),
            Monomial::new(c(3, 5), c(4, 6)),
            Monomial::new(c(3, 6), c(4, 5)),
        ]);
        let e = f
            .equations()
            .iter()
            .find(|e| matches!(&e.labels[0], EquationLabel::Facet { apex: Some(a), .. } if *a == c(1, 2)))
            .unwrap();
        assert_eq!(e.quadric, expected);
        // ◊(a_1) has antipodes {b_j, c_1j}.
        let a1 = f
            .equations()
            .iter()
            .find(|e| matches!(&e.labels[0], EquationLabel::Facet { apex: Some(a), .. } if *a == vx(VertexLabel::A(1))))
            .unwrap();
        let expected = BoolQuadric::new((2..=6).map(|j| Monomial::new(vx(VertexLabel::B(j)), c(1, j))));
        assert_eq!(a1.quadric, expected);
    }

    #[test]
    fn e6_weyl_transitive() {
        let p = build(PolytopeName::E6_221).unwrap();
        let f = gen_e6(&p).unwrap();
        let simple: Vec<usize> = (0..p.hyperplane_count())
            .filter(|&h| {
                let r = p.hyperplane_root(h);
                p.root_system().simple_roots().iter().any(|s| s == r || s.neg() == *r)
            })
            .collect();
        assert_eq!(simple.len(), 6);
        let image = |q: &BoolQuadric, h: usize| {
            q.map_vars(|v| p.label(p.reflect_vertex(h, p.index_of_label(&v).unwrap())))
        };
        let mut reached = vec![f.equations()[0].quadric.clone()];
        let mut frontier = reached.clone();
        while let Some(q) = frontier.pop() {
            for &h in &simple {
                let r = image(&q, h);
                assert!(f.contains(&r));
                if !reached.contains(&r) {
                    reached.push(r.clone());
                    frontier.push(r);
                }
            }
        }
        assert_eq!(reached.len(), 27);
    }

    #[test]
    fn e7_family() {
        let p = build(PolytopeName::E7_321).unwrap();
        let f = gen_e7(&p).unwrap();
        assert_eq!(f.len(), 127);
        assert_eq!(f.quadrics().filter(|q| q.len() == 6).count(), 126);
        let big: Vec<_> = f.quadrics().filter(|q| q.len() == 28).collect();
        assert_eq!(big.len(), 1);
        for i in 1..=8u8 {
            for j in i + 1..=8 {
                assert!(big[0].contains(&Monomial::new(vx(VertexLabel::Pos(i, j)), vx(VertexLabel::Neg(i, j)))));
            }
        }
        assert!(gen_e7(&build(PolytopeName::E6_221).unwrap()).is_err());
    }

    #[test]
    fn no_degenerate_equations() {
        let mut fams = vec![gen_type_b(5).unwrap(), gen_type_a(5, 2).unwrap(), gen_cross_d(3).unwrap()];
        let d = gen_type_d(5).unwrap();
        fams.push(d.even);
        fams.push(d.odd);
        fams.push(gen_e6(&build(PolytopeName::E6_221).unwrap()).unwrap());
        for fam in &fams {
            assert!(fam.quadrics().all(|q| q.len() >= 2), "{}", fam.tag());
        }
    }

    #[test]
    fn json_shape() {
        let f = gen_type_b(4).unwrap();
        let js = serde_json::to_value(f.to_json()).unwrap();
        let first = &js[0];
        assert_eq!(first["family"], "B");
        assert_eq!(first["n"], 4);
        assert!(first["label"]["I"].is_array());
        assert!(first["monomials"][0][0].is_array());
    }
}
