//! Exact feasibility of small homogeneous linear systems by Fourier–Motzkin elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The constraint a·x ≥ b, with a.len() equal to the number of live variables.
#[derive(Clone, Debug)]
struct Row {
    a: Vec<BigInt>,
    b: BigInt,
    /// Original constraints this row was combined from (Chernikov's rule).
    origin: u128,
}

fn make_primitive(row: &mut Row) {
    let g = row.a.iter().fold(row.b.abs(), |g, v| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in &mut row.a {
        *v /= &g;
    }
    row.b /= &g;
}

/// Keeps only the strongest of each set of rows with the same left-hand side.
fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut best: HashMap<Vec<BigInt>, Row> = HashMap::new();
    for r in rows {
        match best.get(&r.a) {
            Some(old) if old.b >= r.b => {}
            _ => {
                best.insert(r.a.clone(), r);
            }
        }
    }
    best.into_values().collect()
}

/// Decides whether some rational x satisfies e·x = 0 and d·x ≥ 1 for every d in `ds`.
pub fn separable(ds: &[Vec<i64>], e: &[i64]) -> bool {
    assert!(ds.len() <= 128, "too many constraints for origin tracking");
    let dim = e.len();
    let mut rows: Vec<Row> = ds
        .iter()
        .enumerate()
        .map(|(i, d)| {
            assert_eq!(d.len(), dim);
            Row { a: d.iter().map(|&x| BigInt::from(x)).collect(), b: BigInt::one(), origin: 1u128 << i }
        })
        .collect();

    // Substitute the equality: x_p = −(Σ_{j≠p} e_j x_j)/e_p, scaled by |e_p|.
    if let Some(p) = e.iter().position(|&x| x != 0) {
        let ep = BigInt::from(e[p]);
        let s = BigInt::from(e[p].signum());
        for r in &mut rows {
            let rp = r.a[p].clone();
            let mut a = Vec::with_capacity(dim - 1);
            for j in 0..dim {
                if j == p {
                    continue;
                }
                // |e_p|·(a_j − a_p e_j / e_p) = s·(e_p a_j − a_p e_j)
                a.push(&s * (&ep * &r.a[j] - &rp * BigInt::from(e[j])));
            }
            r.a = a;
            r.b = &r.b * ep.abs();
        }
    }

    let mut eliminated = 0u32;
    loop {
        for r in &mut rows {
            make_primitive(r);
        }
        rows = dedup(rows);
        let vars = rows.first().map_or(0, |r| r.a.len());
        if vars == 0 {
            return rows.iter().all(|r| !r.b.is_positive());
        }
        // Eliminate the variable producing the fewest new rows.
        let j = (0..vars)
            .min_by_key(|&j| {
                let pos = rows.iter().filter(|r| r.a[j].is_positive()).count();
                let neg = rows.iter().filter(|r| r.a[j].is_negative()).count();
                pos * neg
            })
            .unwrap();
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.a[j].is_positive() {
                pos.push(r);
            } else if r.a[j].is_negative() {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        eliminated += 1;
        let mut next: Vec<Row> = zero
            .into_iter()
            .map(|mut r| {
                r.a.remove(j);
                r
            })
            .collect();
        for p in &pos {
            for q in &neg {
                let origin = p.origin | q.origin;
                if origin.count_ones() > eliminated + 1 {
                    continue;
                }
                let (cp, cq) = (-&q.a[j], p.a[j].clone());
                let a: Vec<BigInt> = (0..vars)
                    .filter(|&k| k != j)
                    .map(|k| &cp * &p.a[k] + &cq * &q.a[k])
                    .collect();
                let b = &cp * &p.b + &cq * &q.b;
                next.push(Row { a, b, origin });
            }
        }
        // Unbounded variable with only one-sided rows: those rows can always be met.
        rows = next;
        if rows.is_empty() {
            return true;
        }
    }
}
