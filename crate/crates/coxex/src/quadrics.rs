//! Exact quadrics: Plücker relations, the type B/D quadratic embedding
//! equations, the Lichtenstein basis `p^M_{N,L}`, and the `g_H` action.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ell, ell_elem, sort_length, GroundSet, OrderedMultiset, SubsetMask};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::tropical::{Monomial, VariableId};

pub type Rational = BigRational;

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// A quadratic form in collected form: zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalQuadric {
    terms: BTreeMap<Monomial, Rational>,
}

impl RationalQuadric {
    pub fn zero() -> Self {
        RationalQuadric::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_subsets(&mut self, a: SubsetMask, b: SubsetMask, c: i64) {
        self.add_term(Monomial::subsets(a, b), int(c));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> RationalQuadric {
        let mut out = RationalQuadric::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn add(&self, other: &RationalQuadric) -> RationalQuadric {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(*m, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &RationalQuadric) -> RationalQuadric {
        self.add(&other.scale(&int(-1)))
    }

    /// Value at a point; variables missing from `x` are 0.
    pub fn eval(&self, x: &HashMap<VariableId, Rational>) -> Rational {
        let get = |v: &VariableId| x.get(v).cloned().unwrap_or_else(Rational::zero);
        self.terms.iter().map(|(m, c)| c * get(&m.u) * get(&m.v)).sum()
    }

    /// True if every coefficient is ±1.
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && c.abs().is_one())
    }

    /// `Some(c)` with `self = c · other`, if the two are proportional and nonzero.
    pub fn ratio_to(&self, other: &RationalQuadric) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let r = self.coefficient(m) / c;
        (other.scale(&r) == *self).then_some(r)
    }

    pub fn to_json(&self, family: &str, label: serde_json::Value) -> QuadricJson {
        QuadricJson {
            family: family.to_string(),
            label,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { vars: (m.u, m.v), coeff: c.to_string() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub vars: (VariableId, VariableId),
    pub coeff: String,
}

/// `{"family":"B","label":{...},"terms":[{"vars":[[..],[..]],"coeff":"-1"}]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricJson {
    pub family: String,
    pub label: serde_json::Value,
    pub terms: Vec<TermJson>,
}

pub fn pair_label(i: SubsetMask, j: SubsetMask) -> serde_json::Value {
    serde_json::json!({ "I": i.to_vec(), "J": j.to_vec() })
}

/// F^(A)_{I,J} = Σ_{i ∈ J\I} (−1)^{ℓ(i,I)+ℓ(i,J)} x_{I∪i} x_{J\i}.
pub fn plucker_a(i_set: SubsetMask, j_set: SubsetMask) -> Result<RationalQuadric> {
    let diff = j_set.minus(i_set);
    if j_set.len() != i_set.len() + 2 || diff.len() < 3 {
        return Err(Error::BadShape(format!(
            "need |J| = |I| + 2 and |J \\ I| >= 3, got I={i_set} J={j_set}"
        )));
    }
    let mut q = RationalQuadric::zero();
    for i in diff.elements() {
        let s = sign(ell_elem(i, i_set) + ell_elem(i, j_set));
        q.add_subsets(i_set.toggle(i), j_set.toggle(i), s);
    }
    Ok(q)
}

fn embedding_terms(i_set: SubsetMask, j_set: SubsetMask) -> RationalQuadric {
    let d = i_set.sym_diff(j_set);
    let mut q = RationalQuadric::zero();
    for i in d.elements() {
        let s = sign(ell_elem(i, i_set) + ell_elem(i, j_set));
        q.add_subsets(i_set.toggle(i), j_set.toggle(i), s);
    }
    if d.len() % 2 == 1 {
        q.add_subsets(i_set, j_set, -1);
    }
    q
}

/// F^(B)_{I,J}; requires |I Δ J| ≥ 3.
pub fn embed_b(i_set: SubsetMask, j_set: SubsetMask) -> Result<RationalQuadric> {
    let d = i_set.sym_diff(j_set).len();
    if d < 3 {
        return Err(Error::TooSmall(d));
    }
    Ok(embedding_terms(i_set, j_set))
}

/// ex_{(K, K Δ S)}. Computed from the formula for every S; it vanishes exactly when |S| ≤ 2.
pub fn ex(k: SubsetMask, s: SubsetMask) -> RationalQuadric {
    embedding_terms(k, k.sym_diff(s))
}

/// F^(D)_{I,J}; requires |I| ≡ |J| mod 2 and |I Δ J| ≥ 4.
pub fn embed_d(i_set: SubsetMask, j_set: SubsetMask) -> Result<RationalQuadric> {
    let d = i_set.sym_diff(j_set).len();
    if d % 2 == 1 {
        return Err(Error::BadParity);
    }
    if d < 4 {
        return Err(Error::TooSmall(d));
    }
    Ok(embedding_terms(i_set, j_set))
}

/// Σ_i x_i x_{−i}.
pub fn cross_d_quadric(n: u32) -> RationalQuadric {
    let mut q = RationalQuadric::zero();
    for i in 1..=n as i32 {
        q.add_term(
            Monomial::new(VariableId::SignedAxis(i), VariableId::SignedAxis(-i)),
            Rational::one(),
        );
    }
    q
}

/// The face Q_{N,L} of the n-cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AntipodeFrame {
    n: u32,
    big_n: SubsetMask,
    big_l: SubsetMask,
}

impl AntipodeFrame {
    pub fn new(n: u32, big_n: SubsetMask, big_l: SubsetMask) -> Result<Self> {
        let g = GroundSet::new(n)?;
        if !g.contains(big_n) || !g.contains(big_l) {
            return Err(Error::BadParams(format!("N={big_n} or L={big_l} outside [{n}]")));
        }
        if !big_n.intersection(big_l).is_empty() {
            return Err(Error::NotDisjoint);
        }
        Ok(AntipodeFrame { n, big_n, big_l })
    }

    /// The frame in which (I, J) is an antipode.
    pub fn of_pair(n: u32, i_set: SubsetMask, j_set: SubsetMask) -> Result<Self> {
        let l = i_set.union(j_set).complement(n);
        AntipodeFrame::new(n, i_set.intersection(j_set), l)
    }

    pub fn all(n: u32) -> Vec<AntipodeFrame> {
        let g = GroundSet::new(n).expect("valid n");
        let mut out = Vec::new();
        for nn in g.subsets() {
            for l in g.subsets() {
                if nn.intersection(l).is_empty() {
                    out.push(AntipodeFrame { n, big_n: nn, big_l: l });
                }
            }
        }
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn big_n(&self) -> SubsetMask {
        self.big_n
    }

    pub fn big_l(&self) -> SubsetMask {
        self.big_l
    }

    pub fn s(&self) -> SubsetMask {
        self.big_n.union(self.big_l).complement(self.n)
    }

    pub fn m(&self) -> u32 {
        self.s().len()
    }

    pub fn contains(&self, k: SubsetMask) -> bool {
        self.big_n.is_subset(k) && k.intersection(self.big_l).is_empty() && k.is_subset(SubsetMask::full(self.n))
    }

    pub fn antipode(&self, k: SubsetMask) -> SubsetMask {
        k.sym_diff(self.s())
    }

    /// Members of the face, in increasing mask order.
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        GroundSet::new(self.n).expect("valid n").subsets().filter(|k| self.contains(*k))
    }

    /// Unordered antipodes, each as (K, K̄) with K the smaller mask.
    pub fn antipodes(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask)> + '_ {
        self.members().map(|k| (k, self.antipode(k))).filter(|(k, kb)| k <= kb)
    }
}

/// The integer [K, K̄] before reduction mod 2.
pub fn bracket_value(k: SubsetMask, frame: &AntipodeFrame) -> Result<usize> {
    if !frame.contains(k) {
        return Err(Error::NotInFace);
    }
    let n = frame.n();
    let (nn, l) = (frame.big_n(), frame.big_l());
    let kbar = frame.antipode(k);
    let kbar_c = kbar.complement(n);
    let inc = OrderedMultiset::increasing;
    let k_minus_n = inc(k.minus(nn));
    let t1 = kbar_c.len() as usize * (nn.len() + l.len()) as usize;
    let t2 = inc(kbar_c).reversed().concat(&inc(kbar)).sort_length();
    let t3 = n as usize * kbar.len() as usize;
    let t4 = inc(l).concat(&k_minus_n).sort_length();
    let t5 = inc(nn).reversed().concat(&k_minus_n).sort_length();
    Ok(t1 + t2 + t3 + t4 + t5)
}

/// Parity of [K, K̄] (0 or 1).
pub fn bracket(k: SubsetMask, frame: &AntipodeFrame) -> Result<u8> {
    Ok((bracket_value(k, frame)? % 2) as u8)
}

fn m_nl_contains(frame: &AntipodeFrame, x: i64) -> bool {
    let n = frame.n() as i64;
    let m = frame.m() as i64;
    if (m - 2..=m + 2).contains(&x) {
        return false;
    }
    let base = 2 * ((n + 1) / 2) - frame.big_n().len() as i64 - frame.big_l().len() as i64;
    (0..2).any(|eps| (x - base + eps).rem_euclid(4) == 0)
}

/// {t : 2t ∈ M_{N,L}, 0 ≤ t ≤ m}.
pub fn admissible_sizes_from_residues(frame: &AntipodeFrame) -> BTreeSet<u32> {
    (0..=frame.m()).filter(|&t| m_nl_contains(frame, 2 * t as i64)).collect()
}

/// γ = ⌈n/2⌉ + ⌊(m − n)/2⌋.
pub fn gamma(n: u32, m: u32) -> i64 {
    let (n, m) = (n as i64, m as i64);
    (n + 1) / 2 + (m - n).div_euclid(2)
}

/// {t ≠ γ : t ≡ γ mod 2, 0 ≤ t ≤ m}.
pub fn admissible_sizes_from_gamma(frame: &AntipodeFrame) -> BTreeSet<u32> {
    let g = gamma(frame.n(), frame.m());
    (0..=frame.m())
        .filter(|&t| (t as i64 - g).rem_euclid(2) == 0 && t as i64 != g)
        .collect()
}

pub fn admissible_m_sizes(frame: &AntipodeFrame) -> BTreeSet<u32> {
    let a = admissible_sizes_from_residues(frame);
    let b = admissible_sizes_from_gamma(frame);
    assert_eq!(a, b, "the two descriptions of admissible |M| disagree for {frame:?}");
    a
}

/// Coefficient (−1)^{|K^c ∩ M| + [K,K̄]} of x_K x_K̄ read from the ordered antipode (K, K̄).
pub fn lichtenstein_coefficient(m: SubsetMask, k: SubsetMask, frame: &AntipodeFrame) -> Result<i64> {
    let kc = k.complement(frame.n());
    Ok(sign(kc.intersection(m).len() as usize + bracket(k, frame)? as usize))
}

fn check_lichtenstein_args(m: SubsetMask, frame: &AntipodeFrame) -> Result<()> {
    if !m.intersection(frame.big_n()).is_empty() || !m.intersection(frame.big_l()).is_empty() {
        return Err(Error::NotDisjoint);
    }
    if !frame.contains(frame.big_n().union(m)) {
        return Err(Error::BadParams(format!("M={m} outside [{}]", frame.n())));
    }
    if !admissible_m_sizes(frame).contains(&m.len()) {
        return Err(Error::NotAdmissible(m.len()));
    }
    Ok(())
}

/// p^M_{N,L}, one term per unordered antipode.
pub fn lichtenstein_b(m: SubsetMask, frame: &AntipodeFrame) -> Result<RationalQuadric> {
    check_lichtenstein_args(m, frame)?;
    let mut q = RationalQuadric::zero();
    for (k, kbar) in frame.antipodes() {
        let c = lichtenstein_coefficient(m, k, frame)?;
        let c_swapped = lichtenstein_coefficient(m, kbar, frame)?;
        assert_eq!(c, c_swapped, "p^M is not symmetric at K={k}, M={m}, frame={frame:?}");
        q.add_subsets(k, kbar, c);
    }
    Ok(q)
}

/// Every admissible triple (M, N, L) on [n].
pub fn lichtenstein_triples(n: u32) -> Vec<(SubsetMask, AntipodeFrame)> {
    let mut out = Vec::new();
    for frame in AntipodeFrame::all(n) {
        let sizes = admissible_m_sizes(&frame);
        let s = frame.s();
        for m in GroundSet::new(n).expect("valid n").subsets() {
            if m.is_subset(s) && sizes.contains(&m.len()) {
                out.push((m, frame));
            }
        }
    }
    out
}

pub fn lichtenstein_basis(n: u32) -> Vec<RationalQuadric> {
    lichtenstein_triples(n)
        .into_iter()
        .map(|(m, f)| lichtenstein_b(m, &f).expect("admissible by construction"))
        .collect()
}

/// Every nonzero ex_{(K, K Δ S)} on [n], one per unordered antipode.
pub fn all_ex(n: u32) -> Vec<RationalQuadric> {
    let mut out = Vec::new();
    for frame in AntipodeFrame::all(n) {
        if frame.m() < 3 {
            continue;
        }
        for (k, _) in frame.antipodes() {
            out.push(ex(k, frame.s()));
        }
    }
    out
}

fn g_single(i: u32, a: SubsetMask) -> (i64, SubsetMask) {
    (sign(a.len() as usize + ell_elem(i, a)), a.toggle(i))
}

/// g_H(x_A) for H = {h_1 < ... < h_k}, with g_H = g_{h_1} ⋯ g_{h_k}.
pub fn g_variable(h: SubsetMask, a: SubsetMask) -> (i64, SubsetMask) {
    let mut s = 1;
    let mut cur = a;
    let hs: Vec<u32> = h.elements().collect();
    for &i in hs.iter().rev() {
        let (t, next) = g_single(i, cur);
        s *= t;
        cur = next;
    }
    (s, cur)
}

/// The signed substitution x_A ↦ g_H(x_A), extended multiplicatively.
pub fn apply_g(h: SubsetMask, q: &RationalQuadric) -> Result<RationalQuadric> {
    let mut out = RationalQuadric::zero();
    for (m, c) in q.terms() {
        let (a, b) = match (m.u, m.v) {
            (VariableId::Subset(a), VariableId::Subset(b)) => (a, b),
            (VariableId::Subset(_), other) | (other, _) => {
                return Err(Error::NotSubsetVariable(other.to_string()))
            }
        };
        let (sa, a2) = g_variable(h, a);
        let (sb, b2) = g_variable(h, b);
        out.add_term(Monomial::subsets(a2, b2), c * int(sa * sb));
    }
    Ok(out)
}

fn monomial_index(qs: &[&RationalQuadric]) -> HashMap<Monomial, usize> {
    let mut idx = HashMap::new();
    for q in qs {
        for (m, _) in q.terms() {
            let next = idx.len();
            idx.entry(*m).or_insert(next);
        }
    }
    idx
}

fn to_row(q: &RationalQuadric, idx: &HashMap<Monomial, usize>) -> SparseRow {
    let lcm = q
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
    q.terms()
        .map(|(m, c)| (idx[m], (c * Rational::from_integer(lcm.clone())).to_integer()))
        .collect()
}

/// Dimension of the span of a list of quadrics.
pub fn span_rank(qs: &[RationalQuadric]) -> usize {
    let refs: Vec<&RationalQuadric> = qs.iter().collect();
    let idx = monomial_index(&refs);
    crate::linalg::rank(qs.iter().map(|q| to_row(q, &idx)))
}

/// Row-space equality by exact elimination.
pub fn span_equal(a: &[RationalQuadric], b: &[RationalQuadric]) -> bool {
    let refs: Vec<&RationalQuadric> = a.iter().chain(b).collect();
    let idx = monomial_index(&refs);
    let mut ea = Echelon::new();
    for q in a {
        ea.insert(to_row(q, &idx));
    }
    let mut eb = Echelon::new();
    for q in b {
        eb.insert(to_row(q, &idx));
    }
    ea.rank() == eb.rank() && b.iter().all(|q| ea.contains(to_row(q, &idx)))
}

/// A basis of span(qs) ∩ {quadrics using only monomials accepted by `keep`}.
pub fn span_restricted(qs: &[RationalQuadric], keep: impl Fn(&Monomial) -> bool) -> Vec<RationalQuadric> {
    let mut monos: Vec<Monomial> = qs.iter().flat_map(|q| q.terms().map(|(m, _)| *m)).collect();
    monos.sort();
    monos.dedup();
    // Rejected monomials get the smallest column indices, so echelon rows whose
    // pivot is a kept column contain no rejected monomials.
    monos.sort_by_key(|m| keep(m));
    let idx: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut e = Echelon::new();
    for q in qs {
        e.insert(to_row(q, &idx));
    }
    e.rows()
        .filter(|r| r.keys().next().is_some_and(|&c| keep(&monos[c])))
        .map(|r| {
            let mut q = RationalQuadric::zero();
            for (c, v) in r {
                q.add_term(monos[*c], Rational::from_integer(v.clone()));
            }
            q
        })
        .collect()
}

/// True if `q` lies in the span of `basis`.
pub fn in_span(basis: &[RationalQuadric], q: &RationalQuadric) -> bool {
    let refs: Vec<&RationalQuadric> = basis.iter().chain(std::iter::once(q)).collect();
    let idx = monomial_index(&refs);
    let mut e = Echelon::new();
    for b in basis {
        e.insert(to_row(b, &idx));
    }
    e.contains(to_row(q, &idx))
}

/// The quadric Σ_i (−1)^{[KΔi, K̄Δi]} x x + [|S| odd](−1)^{n−1+[K,K̄]} x_K x_K̄.
pub fn ex_bracket_form(k: SubsetMask, frame: &AntipodeFrame) -> Result<RationalQuadric> {
    let s = frame.s();
    let kbar = frame.antipode(k);
    let mut q = RationalQuadric::zero();
    for i in s.elements() {
        let c = sign(bracket(k.toggle(i), frame)? as usize);
        q.add_subsets(k.toggle(i), kbar.toggle(i), c);
    }
    if s.len() % 2 == 1 {
        let c = sign(frame.n() as usize - 1 + bracket(k, frame)? as usize);
        q.add_subsets(k, kbar, c);
    }
    Ok(q)
}

/// Coefficients of χ_b in the y-variables: one entry per ordered antipode (K, K̄) with K ⊆ S.
fn chi_coefficients(n: u32, s: SubsetMask, b: u32) -> BTreeMap<SubsetMask, BigInt> {
    let g = GroundSet::new(n).expect("valid n");
    let mut out = BTreeMap::new();
    for k in g.subsets().filter(|k| k.is_subset(s)) {
        let kc = k.complement(n);
        let mut total = BigInt::zero();
        for m in g.subsets().filter(|m| m.is_subset(s) && m.len() == b) {
            total += sign(kc.intersection(m).len() as usize);
        }
        out.insert(k, total);
    }
    out
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// χ_b[y] via Σ_k (−1)^k C(a,k) C(m−a,b−k) with a = |K̄|.
pub fn chi_binomial(m: u32, a: u32, b: u32) -> BigInt {
    let (m, a, b) = (m as i64, a as i64, b as i64);
    (0..=a).map(|k| binomial(a, k) * binomial(m - a, b - k) * sign(k as usize)).sum()
}

/// Coefficient of y_(K,K̄) in ex_{(∅,S)} written in the y-variables, |S| = m.
pub fn ex_y_coefficient(n: u32, m: u32, k_size: u32) -> i64 {
    if k_size == 1 || k_size + 1 == m {
        1
    } else if (k_size == 0 || k_size == m) && m % 2 == 1 {
        sign(n as usize - 1)
    } else {
        0
    }
}

/// χ_b = Σ_{|M| = b, M ⊆ S} p^M_{∅,S^c} with one term per unordered antipode.
/// Sizes of the wrong parity are allowed; they are not Lichtenstein equations.
pub fn chi_quadric(frame: &AntipodeFrame, b: u32) -> Result<RationalQuadric> {
    let s = frame.s();
    let mut chi = RationalQuadric::zero();
    for m in GroundSet::new(frame.n())?.subsets_of_size(b).filter(|m| m.is_subset(s)) {
        for (k, kbar) in frame.antipodes() {
            chi.add_subsets(k, kbar, lichtenstein_coefficient(m, k, frame)?);
        }
    }
    Ok(chi)
}

/// Verifies ex_{(∅,S)} = ±2^{−(m−2)} Σ_{b ≡ γ} (γ − b) χ_b.
///
/// Three things are checked. The coefficient χ_b[y_(K,K̄)] computed from its
/// definition matches the binomial sum. In the ordered y-variables the right side
/// has coefficient 1 at |K| = m − 1, (−1)^{n−1}[m odd] at |K| = m, 0 for 2 ≤ |K| ≤ m − 2,
/// and at (K̄, K) it is (−1)^γ times its value at (K, K̄). Finally, as a polynomial in the
/// x-variables the right side equals ±ex_{(∅,S)}; the sign depends on S through the
/// brackets and is the global sign left open by the change to y-variables.
pub fn chi_identity_check(n: u32, s: SubsetMask) -> Result<bool> {
    let m = s.len();
    if m < 3 {
        return Err(Error::SNotLargeEnough(m));
    }
    let frame = AntipodeFrame::new(n, SubsetMask::EMPTY, s.complement(n))?;
    let g = gamma(n, m);
    let scale = Rational::new(BigInt::one(), BigInt::from(1u64) << (m - 2));

    let mut y_rhs: BTreeMap<SubsetMask, Rational> = BTreeMap::new();
    let mut x_rhs = RationalQuadric::zero();
    for b in 0..=m {
        if (b as i64 - g).rem_euclid(2) != 0 {
            continue;
        }
        let coeff = int(g - b as i64) * &scale;
        for (k, c) in chi_coefficients(n, s, b) {
            if c != chi_binomial(m, frame.antipode(k).len(), b) {
                return Ok(false);
            }
            *y_rhs.entry(k).or_insert_with(Rational::zero) += &coeff * Rational::from_integer(c);
        }
        x_rhs = x_rhs.add(&chi_quadric(&frame, b)?.scale(&coeff));
    }

    let reflect = int(sign(g.rem_euclid(2) as usize));
    for k in frame.members() {
        let r = y_rhs[&k].clone();
        if k.len() * 2 >= m && k.len() >= 2 && r != int(ex_y_coefficient(n, m, k.len())) {
            return Ok(false);
        }
        if y_rhs[&frame.antipode(k)] != &reflect * &r {
            return Ok(false);
        }
    }
    Ok(x_rhs.ratio_to(&ex(SubsetMask::EMPTY, s)).is_some_and(|r| r.abs().is_one()))
}

/// The factor γ_{|M|} by which Σ_{antipodes} p^M[x_K x_K̄] ex_{(K,K̄)} exceeds p^M.
pub fn p_from_ex_gamma(n: u32, m: u32, size_m: u32) -> i64 {
    sign(n as usize) * (m as i64 - 2 * size_m as i64) - (m % 2) as i64
}

/// The factor as printed alongside the claim, −(−1)^n(m − 2|M|) − [m odd].
pub fn p_from_ex_gamma_as_printed(n: u32, m: u32, size_m: u32) -> i64 {
    -sign(n as usize) * (m as i64 - 2 * size_m as i64) - (m % 2) as i64
}

/// Σ over unordered antipodes (K, K̄) of Q_{N,L} of p^M[x_K x_K̄] · ex_{(K, K̄)}.
pub fn p_from_ex_combination(m: SubsetMask, frame: &AntipodeFrame) -> Result<RationalQuadric> {
    check_lichtenstein_args(m, frame)?;
    let mut total = RationalQuadric::zero();
    for (k, _) in frame.antipodes() {
        let c = lichtenstein_coefficient(m, k, frame)?;
        total = total.add(&ex(k, frame.s()).scale(&int(c)));
    }
    Ok(total)
}

/// Same combination but with ex_{(K, K^c)} taken literally on the whole cube.
pub fn p_from_ex_literal_combination(m: SubsetMask, frame: &AntipodeFrame) -> Result<RationalQuadric> {
    check_lichtenstein_args(m, frame)?;
    let mut total = RationalQuadric::zero();
    for (k, _) in frame.antipodes() {
        let c = lichtenstein_coefficient(m, k, frame)?;
        total = total.add(&ex(k, SubsetMask::full(frame.n())).scale(&int(c)));
    }
    Ok(total)
}

/// Checks p^M_{N,L} = (1/γ_{|M|}) Σ p^M[x_K x_K̄] ex_{(K,K̄)} with frame-relative antipodes.
pub fn p_from_ex_check(m: SubsetMask, frame: &AntipodeFrame) -> Result<bool> {
    let combo = p_from_ex_combination(m, frame)?;
    let p = lichtenstein_b(m, frame)?;
    let g = p_from_ex_gamma(frame.n(), frame.m(), m.len());
    if g == 0 {
        return Ok(false);
    }
    Ok(combo.scale(&Rational::new(BigInt::one(), BigInt::from(g))) == p)
}

/// Type A Plücker quadrics for (n, k), labelled by (I, J).
pub fn plucker_family(n: u32, k: u32) -> Result<Vec<((SubsetMask, SubsetMask), RationalQuadric)>> {
    if k == 0 || k >= n {
        return Err(Error::BadRank { n, k });
    }
    let g = GroundSet::new(n)?;
    let mut out = Vec::new();
    for i in g.subsets_of_size(k - 1) {
        for j in g.subsets_of_size(k + 1) {
            if j.minus(i).len() >= 3 {
                out.push(((i, j), plucker_a(i, j)?));
            }
        }
    }
    Ok(out)
}

/// ℰ^(B)_n labelled by (I, J).
pub fn embed_b_family(n: u32) -> Result<Vec<((SubsetMask, SubsetMask), RationalQuadric)>> {
    let g = GroundSet::new(n)?;
    let mut out = Vec::new();
    for i in g.subsets() {
        for j in g.subsets() {
            if i.sym_diff(j).len() >= 3 {
                out.push(((i, j), embed_b(i, j)?));
            }
        }
    }
    Ok(out)
}

/// ℰ^(D)_n split by the parity of the supporting subsets: (even, odd).
#[allow(clippy::type_complexity)]
pub fn embed_d_family(
    n: u32,
) -> Result<(Vec<((SubsetMask, SubsetMask), RationalQuadric)>, Vec<((SubsetMask, SubsetMask), RationalQuadric)>)> {
    let g = GroundSet::new(n)?;
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for i in g.subsets() {
        for j in g.subsets() {
            let d = i.sym_diff(j).len();
            if d >= 4 && d % 2 == 0 {
                let q = embed_d(i, j)?;
                // Supports are I Δ i, which have the parity opposite to |I|.
                if i.len() % 2 == 1 {
                    even.push(((i, j), q));
                } else {
                    odd.push(((i, j), q));
                }
            }
        }
    }
    Ok((even, odd))
}

/// Sign (−1)^{|H||S| + ℓ(H,S)} relating ex_{(H, HΔS)} to g_H ex_{(∅,S)}.
pub fn g_lemma_sign(h: SubsetMask, s: SubsetMask) -> i64 {
    sign((h.len() * s.len()) as usize + ell(h, s))
}

#[doc(hidden)]
pub fn sort_length_of(v: &[u32]) -> usize {
    sort_length(v)
}
