//! Fraction-free row echelon form over sparse integer rows.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type SparseRow = BTreeMap<usize, BigInt>;

fn normalize(row: &mut SparseRow) {
    row.retain(|_, v| !v.is_zero());
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g > BigInt::one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
    if let Some((_, lead)) = row.iter().next() {
        if lead.is_negative() {
            for v in row.values_mut() {
                *v = -&*v;
            }
        }
    }
}

/// Incrementally built echelon basis. Rows are only ever combined as
/// `p·r − c·pivot` with integer `p`, `c`, then divided by their content.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        normalize(&mut row);
        loop {
            let Some((&lead, _)) = row.iter().next() else { return row };
            let Some(pivot) = self.pivots.get(&lead) else { return row };
            let p = pivot[&lead].clone();
            let c = row[&lead].clone();
            let mut out = SparseRow::new();
            for (k, v) in &row {
                out.insert(*k, v * &p);
            }
            for (k, v) in pivot {
                let e = out.entry(*k).or_insert_with(BigInt::zero);
                *e -= v * &c;
            }
            normalize(&mut out);
            row = out;
        }
    }

    /// Adds a row; returns true if it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        match r.keys().next() {
            None => false,
            Some(&lead) => {
                self.pivots.insert(lead, r);
                true
            }
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
