//! Tropical quadrics over the Boolean semifield and their satisfaction predicate.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{SetSystem, SubsetMask};
use crate::error::{Error, Result};
use crate::quadrics::RationalQuadric;

/// Vertex names of 2_21 (`a_i`, `b_i`, `c_ij`) and 3_21 (`a_ij`, `-a_ij`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    A(u8),
    B(u8),
    C(u8, u8),
    Pos(u8, u8),
    Neg(u8, u8),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::A(i) => write!(f, "a{i}"),
            VertexLabel::B(i) => write!(f, "b{i}"),
            VertexLabel::C(i, j) => write!(f, "c{i}{j}"),
            VertexLabel::Pos(i, j) => write!(f, "a{i}{j}"),
            VertexLabel::Neg(i, j) => write!(f, "-a{i}{j}"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let mut chars = rest.chars();
        let head = chars.next().ok_or_else(bad)?;
        let digits: Vec<u8> = chars
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let label = match (neg, head, digits.as_slice()) {
            (false, 'a', [i]) => VertexLabel::A(*i),
            (false, 'b', [i]) => VertexLabel::B(*i),
            (false, 'c', [i, j]) => VertexLabel::C(*i, *j),
            (false, 'a', [i, j]) => VertexLabel::Pos(*i, *j),
            (true, 'a', [i, j]) => VertexLabel::Neg(*i, *j),
            _ => return Err(bad()),
        };
        Ok(label)
    }
}

/// Index of a coordinate variable. One tag family is used per equation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Subset(SubsetMask),
    /// `±i`, the cross-polytope vertex `±e_i`.
    SignedAxis(i32),
    Vertex(VertexLabel),
}

impl VariableId {
    pub fn subset(self) -> Option<SubsetMask> {
        match self {
            VariableId::Subset(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Subset(m) => write!(f, "x{m}"),
            VariableId::SignedAxis(i) => write!(f, "x{i:+}"),
            VariableId::Vertex(v) => write!(f, "x_{v}"),
        }
    }
}

impl Serialize for VariableId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            VariableId::Subset(m) => m.serialize(s),
            VariableId::SignedAxis(i) => s.serialize_i32(*i),
            VariableId::Vertex(v) => s.serialize_str(&v.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for VariableId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Array(_) => {
                let m: SubsetMask = serde_json::from_value(v).map_err(D::Error::custom)?;
                Ok(VariableId::Subset(m))
            }
            serde_json::Value::Number(n) => n
                .as_i64()
                .filter(|&i| i != 0 && i.abs() <= 64)
                .map(|i| VariableId::SignedAxis(i as i32))
                .ok_or_else(|| D::Error::custom("signed axis must be a nonzero integer")),
            serde_json::Value::String(s) => {
                s.parse().map(VariableId::Vertex).map_err(D::Error::custom)
            }
            _ => Err(D::Error::custom("unrecognised variable")),
        }
    }
}

/// An unordered pair of variables, stored with `u <= v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub u: VariableId,
    pub v: VariableId,
}

impl Monomial {
    pub fn new(a: VariableId, b: VariableId) -> Self {
        if a <= b {
            Monomial { u: a, v: b }
        } else {
            Monomial { u: b, v: a }
        }
    }

    pub fn subsets(a: SubsetMask, b: SubsetMask) -> Self {
        Monomial::new(VariableId::Subset(a), VariableId::Subset(b))
    }

    pub fn map(self, f: impl Fn(VariableId) -> VariableId) -> Self {
        Monomial::new(f(self.u), f(self.v))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.u, self.v).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (u, v) = <(VariableId, VariableId)>::deserialize(d)?;
        Ok(Monomial::new(u, v))
    }
}

/// A tropical quadric: a set of monomials, so repeated monomials collapse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoolQuadric {
    monomials: BTreeSet<Monomial>,
}

impl BoolQuadric {
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        BoolQuadric { monomials: monomials.into_iter().collect() }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn insert(&mut self, m: Monomial) -> bool {
        self.monomials.insert(m)
    }

    pub fn remove(&mut self, m: &Monomial) -> bool {
        self.monomials.remove(m)
    }

    pub fn map_vars(&self, f: impl Fn(VariableId) -> VariableId) -> BoolQuadric {
        BoolQuadric::new(self.monomials.iter().map(|m| m.map(&f)))
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.monomials.iter().flat_map(|m| [m.u, m.v]).collect()
    }
}

/// The variables assigned 1; everything else is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoolAssignment {
    pub ones: HashSet<VariableId>,
}

impl BoolAssignment {
    pub fn new(ones: impl IntoIterator<Item = VariableId>) -> Self {
        BoolAssignment { ones: ones.into_iter().collect() }
    }

    /// ν_M for a set system.
    pub fn from_set_system(m: &SetSystem) -> Self {
        BoolAssignment::new(m.members().iter().map(|&s| VariableId::Subset(s)))
    }

    pub fn get(&self, v: &VariableId) -> bool {
        self.ones.contains(v)
    }
}

/// True iff the number of monomials with both variables equal to 1 is not exactly one.
pub fn satisfies(nu: &BoolAssignment, f: &BoolQuadric) -> bool {
    let mut fired = 0;
    for m in f.monomials() {
        if nu.get(&m.u) && nu.get(&m.v) {
            fired += 1;
            if fired > 1 {
                return true;
            }
        }
    }
    fired != 1
}

pub fn satisfies_all<'a>(
    nu: &BoolAssignment,
    fs: impl IntoIterator<Item = &'a BoolQuadric>,
) -> (bool, Option<usize>) {
    for (i, f) in fs.into_iter().enumerate() {
        if !satisfies(nu, f) {
            return (false, Some(i));
        }
    }
    (true, None)
}

/// The support of a collected rational quadric.
pub fn tropicalize(q: &RationalQuadric) -> BoolQuadric {
    BoolQuadric::new(q.terms().map(|(m, _)| *m))
}

/// An equation list with variables replaced by dense indices, for fast sweeps.
#[derive(Clone, Debug)]
pub struct CompiledFamily {
    vars: Vec<VariableId>,
    index: HashMap<VariableId, usize>,
    equations: Vec<Vec<(u32, u32)>>,
}

impl CompiledFamily {
    pub fn new<'a>(fs: impl IntoIterator<Item = &'a BoolQuadric>) -> Self {
        let mut vars = Vec::new();
        let mut index = HashMap::new();
        let mut intern = |v: VariableId| -> u32 {
            *index.entry(v).or_insert_with(|| {
                vars.push(v);
                vars.len() - 1
            }) as u32
        };
        let equations = fs
            .into_iter()
            .map(|f| f.monomials().map(|m| (intern(m.u), intern(m.v))).collect())
            .collect();
        CompiledFamily { vars, index, equations }
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.vars
    }

    pub fn index_of(&self, v: &VariableId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Index of the first violated equation, where `one(i)` gives the value of variable `i`.
    pub fn first_violation(&self, one: impl Fn(usize) -> bool) -> Option<usize> {
        self.equations.iter().position(|eq| {
            let mut fired = 0;
            for &(u, v) in eq {
                if one(u as usize) && one(v as usize) {
                    fired += 1;
                    if fired > 1 {
                        break;
                    }
                }
            }
            fired == 1
        })
    }

    pub fn violations(&self, one: impl Fn(usize) -> bool) -> usize {
        self.equations
            .iter()
            .filter(|eq| eq.iter().filter(|&&(u, v)| one(u as usize) && one(v as usize)).count() == 1)
            .count()
    }

    /// Values of all variables under ν_M, as a bit mask (requires at most 64 variables).
    pub fn mask_of(&self, m: &SetSystem) -> u64 {
        assert!(self.vars.len() <= 64);
        let mut bits = 0u64;
        for (i, v) in self.vars.iter().enumerate() {
            if let VariableId::Subset(s) = v {
                if m.contains(*s) {
                    bits |= 1 << i;
                }
            }
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::GroundSet;

    fn s(v: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(v).unwrap()
    }

    fn f_b3() -> BoolQuadric {
        BoolQuadric::new([
            Monomial::subsets(s(&[]), s(&[1, 2, 3])),
            Monomial::subsets(s(&[1]), s(&[2, 3])),
            Monomial::subsets(s(&[2]), s(&[1, 3])),
            Monomial::subsets(s(&[3]), s(&[1, 2])),
        ])
    }

    fn system(sets: &[&[u32]]) -> SetSystem {
        SetSystem::new(GroundSet::new(3).unwrap(), sets.iter().map(|x| s(x))).unwrap()
    }

    #[test]
    fn satisfaction_examples() {
        let m = system(&[&[], &[1], &[2], &[3], &[1, 2, 3]]);
        assert!(!satisfies(&BoolAssignment::from_set_system(&m), &f_b3()));
        assert!(satisfies(&BoolAssignment::default(), &f_b3()));
        let two = system(&[&[1], &[2, 3], &[2], &[1, 3]]);
        assert!(satisfies(&BoolAssignment::from_set_system(&two), &f_b3()));
        assert!(satisfies(&BoolAssignment::default(), &BoolQuadric::default()));
    }

    #[test]
    fn satisfies_all_examples() {
        let fam = [f_b3()];
        let only_empty = system(&[&[]]);
        assert_eq!(satisfies_all(&BoolAssignment::from_set_system(&only_empty), &fam), (true, None));
        let all = SetSystem::new(GroundSet::new(3).unwrap(), GroundSet::new(3).unwrap().subsets()).unwrap();
        assert_eq!(satisfies_all(&BoolAssignment::from_set_system(&all), &fam), (true, None));
        let bad = system(&[&[], &[1], &[2], &[3], &[1, 2, 3]]);
        assert_eq!(satisfies_all(&BoolAssignment::from_set_system(&bad), &fam), (false, Some(0)));
    }

    #[test]
    fn monomial_collapse_and_flip() {
        let mut f = f_b3();
        assert!(!f.insert(Monomial::subsets(s(&[2, 3]), s(&[1]))));
        assert_eq!(f.len(), 4);
        let m = system(&[&[], &[1], &[2], &[3], &[1, 2, 3]]);
        let nu = BoolAssignment::from_set_system(&m);
        f.remove(&Monomial::subsets(s(&[]), s(&[1, 2, 3])));
        assert!(satisfies(&nu, &f));
    }

    #[test]
    fn square_monomial_is_single_variable_test() {
        let x = VariableId::SignedAxis(1);
        let f = BoolQuadric::new([Monomial::new(x, x)]);
        assert!(!satisfies(&BoolAssignment::new([x]), &f));
        assert!(satisfies(&BoolAssignment::default(), &f));
    }

    #[test]
    fn compiled_matches_direct() {
        let fam = [f_b3()];
        let c = CompiledFamily::new(&fam);
        let g = GroundSet::new(3).unwrap();
        let all: Vec<_> = g.subsets().collect();
        for m in crate::combinatorics::enumerate_set_systems(g, &all).unwrap() {
            let bits = c.mask_of(&m);
            let fast = c.first_violation(|i| bits >> i & 1 == 1);
            let slow = satisfies_all(&BoolAssignment::from_set_system(&m), &fam).1;
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn labels_round_trip() {
        for l in [
            VertexLabel::A(3),
            VertexLabel::B(6),
            VertexLabel::C(2, 5),
            VertexLabel::Pos(1, 8),
            VertexLabel::Neg(4, 7),
        ] {
            assert_eq!(l.to_string().parse::<VertexLabel>().unwrap(), l);
        }
        assert!("z1".parse::<VertexLabel>().is_err());
        let vars = vec![
            VariableId::Subset(s(&[1, 3])),
            VariableId::SignedAxis(-2),
            VariableId::Vertex(VertexLabel::Neg(1, 2)),
        ];
        let text = serde_json::to_string(&vars).unwrap();
        assert_eq!(text, r#"[[1,3],-2,"-a12"]"#);
        let back: Vec<VariableId> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, vars);
    }
}
