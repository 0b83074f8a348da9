//! Exchange-property checkers for set systems and for subsets of orbit-polytope vertices.

use serde::Serialize;

use crate::combinatorics::{SetSystem, SubsetMask};
use crate::error::{Error, Result};
use crate::lp;
use crate::polytopes::AmbientPolytope;
use crate::tropical::VariableId;

fn pairs_of(d: SubsetMask) -> impl Iterator<Item = (u32, u32)> {
    let elems: Vec<u32> = d.elements().collect();
    let e2 = elems.clone();
    elems.into_iter().flat_map(move |a| e2.clone().into_iter().map(move |b| (a, b)))
}

fn check_rank(m: &SetSystem, k: u32) -> Result<()> {
    match m.members().iter().find(|s| s.len() != k) {
        Some(s) => Err(Error::RankMismatch { expected: k, found: s.len() }),
        None => Ok(()),
    }
}

fn nonempty(m: &SetSystem) -> Result<()> {
    if m.is_empty() {
        Err(Error::EmptySystem)
    } else {
        Ok(())
    }
}

/// Basis exchange: for A, B ∈ M and a ∈ A \ B there is b ∈ B \ A with A Δ {a, b} ∈ M.
pub fn is_matroid(m: &SetSystem, k: u32) -> Result<bool> {
    check_rank(m, k)?;
    let ms = m.members();
    Ok(ms.iter().all(|&a_set| {
        ms.iter().all(|&b_set| {
            a_set.minus(b_set).elements().all(|a| {
                b_set.minus(a_set).elements().any(|b| m.contains(a_set.toggle(a).toggle(b)))
            })
        })
    }))
}

/// For distinct A, B ∈ M some a ∈ A \ B, b ∈ B \ A has A Δ {a,b}, B Δ {a,b} ∈ M.
pub fn is_strong_matroid_a(m: &SetSystem, k: u32) -> Result<bool> {
    check_rank(m, k)?;
    let ms = m.members();
    Ok(ms.iter().enumerate().all(|(x, &a_set)| {
        ms[x + 1..].iter().all(|&b_set| {
            a_set.minus(b_set).elements().any(|a| {
                b_set.minus(a_set).elements().any(|b| {
                    let ab = SubsetMask::single(a).union(SubsetMask::single(b));
                    m.contains(a_set.sym_diff(ab)) && m.contains(b_set.sym_diff(ab))
                })
            })
        })
    }))
}

/// Symmetric exchange, with a = b allowed.
pub fn is_delta_matroid(m: &SetSystem) -> Result<bool> {
    nonempty(m)?;
    let ms = m.members();
    Ok(ms.iter().all(|&a_set| {
        ms.iter().all(|&b_set| {
            let d = a_set.sym_diff(b_set);
            d.elements().all(|a| d.elements().any(|b| m.contains(exchange(a_set, a, b))))
        })
    }))
}

fn exchange(s: SubsetMask, a: u32, b: u32) -> SubsetMask {
    if a == b {
        s.toggle(a)
    } else {
        s.toggle(a).toggle(b)
    }
}

/// A pair of members with no joint exchange, if one exists.
pub fn strong_delta_violation(m: &SetSystem) -> Result<Option<(SubsetMask, SubsetMask)>> {
    nonempty(m)?;
    let ms = m.members();
    for (x, &a_set) in ms.iter().enumerate() {
        for &b_set in &ms[x + 1..] {
            let ok = pairs_of(a_set.sym_diff(b_set))
                .any(|(a, b)| a <= b && m.contains(exchange(a_set, a, b)) && m.contains(exchange(b_set, a, b)));
            if !ok {
                return Ok(Some((a_set, b_set)));
            }
        }
    }
    Ok(None)
}

/// Strong exchange for Δ-matroids: distinct A, B ∈ M admit a, b ∈ A Δ B (possibly equal)
/// with A Δ {a,b} and B Δ {a,b} both in M.
pub fn is_strong_delta(m: &SetSystem) -> Result<bool> {
    Ok(strong_delta_violation(m)?.is_none())
}

/// Strong exchange for even Δ-matroids: as `is_strong_delta` but with a ≠ b.
pub fn is_strong_even_delta(m: &SetSystem) -> Result<bool> {
    nonempty(m)?;
    let ms = m.members();
    Ok(ms.iter().enumerate().all(|(x, &a_set)| {
        ms[x + 1..].iter().all(|&b_set| {
            pairs_of(a_set.sym_diff(b_set))
                .any(|(a, b)| a < b && m.contains(exchange(a_set, a, b)) && m.contains(exchange(b_set, a, b)))
        })
    }))
}

/// Wenzel's exchange: for every a ∈ A Δ B some b ≠ a works for both A and B.
pub fn is_wenzel(m: &SetSystem) -> Result<bool> {
    nonempty(m)?;
    let ms = m.members();
    Ok(ms.iter().all(|&a_set| {
        ms.iter().all(|&b_set| {
            let d = a_set.sym_diff(b_set);
            d.elements().all(|a| {
                d.elements()
                    .any(|b| b != a && m.contains(exchange(a_set, a, b)) && m.contains(exchange(b_set, a, b)))
            })
        })
    }))
}

pub fn is_even_delta_matroid(m: &SetSystem) -> Result<bool> {
    Ok(m.is_even() && is_delta_matroid(m)?)
}

/// A set of chosen vertices of an ambient polytope.
#[derive(Clone, Debug)]
pub struct VertexSubset<'a> {
    polytope: &'a AmbientPolytope,
    chosen: Vec<bool>,
}

impl<'a> VertexSubset<'a> {
    pub fn from_indices(polytope: &'a AmbientPolytope, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut chosen = vec![false; polytope.len()];
        for i in idx {
            chosen[i] = true;
        }
        VertexSubset { polytope, chosen }
    }

    pub fn from_labels(polytope: &'a AmbientPolytope, labels: &[VariableId]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| polytope.index_of_label(l).ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(polytope, idx))
    }

    /// Bit i of `mask` selects vertex i.
    pub fn from_mask(polytope: &'a AmbientPolytope, mask: u64) -> Self {
        Self::from_indices(polytope, (0..polytope.len()).filter(|&i| mask >> i & 1 == 1))
    }

    /// The cube vertices δ_I for the members of a set system.
    pub fn from_set_system(polytope: &'a AmbientPolytope, m: &SetSystem) -> Result<Self> {
        let labels: Vec<VariableId> = m.members().iter().map(|&s| VariableId::Subset(s)).collect();
        Self::from_labels(polytope, &labels)
    }

    pub fn polytope(&self) -> &AmbientPolytope {
        self.polytope
    }

    pub fn contains(&self, i: usize) -> bool {
        self.chosen[i]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.chosen.len()).filter(|&i| self.chosen[i]).collect()
    }

    pub fn labels(&self) -> Vec<VariableId> {
        self.indices().into_iter().map(|i| self.polytope.label(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.chosen.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A chosen pair with no separating reflection keeping both inside, if any.
    pub fn strong_exchange_violation(&self) -> Option<(usize, usize)> {
        let idx = self.indices();
        let p = self.polytope;
        for (x, &u) in idx.iter().enumerate() {
            for &v in &idx[x + 1..] {
                let ok = p.separating_hyperplanes(u, v).iter().any(|&h| {
                    let h = h as usize;
                    self.chosen[p.reflect_vertex(h, u)] && self.chosen[p.reflect_vertex(h, v)]
                });
                if !ok {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// For a chosen pair, a separating hyperplane whose reflection keeps both chosen.
    pub fn exchange_witness(&self, u: usize, v: usize) -> Option<usize> {
        let p = self.polytope;
        p.separating_hyperplanes(u, v).iter().map(|&h| h as usize).find(|&h| {
            self.chosen[p.reflect_vertex(h, u)] && self.chosen[p.reflect_vertex(h, v)]
        })
    }

    /// The edges of the convex hull of the chosen vertices, by exact LP.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let idx = self.indices();
        let p = self.polytope;
        let mut out = Vec::new();
        for (x, &u) in idx.iter().enumerate() {
            for &v in &idx[x + 1..] {
                let e = p.vertex(u).sub(p.vertex(v));
                let ds: Vec<Vec<i64>> = idx
                    .iter()
                    .filter(|&&w| w != u && w != v)
                    .map(|&w| p.vertex(u).sub(p.vertex(w)).0)
                    .collect();
                if lp::separable(&ds, &e.0) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// An edge of the hull not parallel to any root, if any.
    pub fn non_root_edge(&self) -> Option<(usize, usize)> {
        let p = self.polytope;
        self.edges().into_iter().find(|&(u, v)| {
            let d = p.vertex(u).sub(p.vertex(v));
            !p.root_system().roots().iter().any(|r| r.is_parallel(&d))
        })
    }
}

pub fn coxeter_strong_exchange(m: &VertexSubset) -> bool {
    m.strong_exchange_violation().is_none()
}

/// Every edge of the convex hull of the chosen vertices is parallel to a root.
pub fn is_coxeter_matroid(m: &VertexSubset) -> bool {
    m.non_root_edge().is_none()
}

/// Verdict object printed by the `check` command.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SetSystemReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matroid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wenzel: Option<bool>,
    pub strong: bool,
    pub tropical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_equation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_pair: Option<(Vec<u32>, Vec<u32>)>,
}
