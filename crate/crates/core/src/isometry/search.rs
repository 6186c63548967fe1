//! Backtracking search for isometries between reduced Gram matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::enumerate::enumerate_all;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

struct Cand {
    v: Vec<i64>,
    // h1 · v
    gv: Vec<i64>,
}

fn small(g: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..g.rows())
        .map(|i| {
            g.row(i)
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Precondition("Gram entry exceeds 64 bits".into())))
                .collect()
        })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn norm_counts(h: &IntMatrix, bound: &BigInt) -> BTreeMap<BigInt, usize> {
    let mut m = BTreeMap::new();
    for v in enumerate_all(h, bound) {
        *m.entry(h.bilinear(&v, &v)).or_insert(0) += 1;
    }
    m
}

/// All (or the first) integer `V` with `Vᵀ·h1·V = h2`, as column lists.
/// Both matrices are assumed positive definite and of equal determinant.
pub(crate) fn backtrack(
    h1: &IntMatrix,
    h2: &IntMatrix,
    budget: u64,
    want_all: bool,
) -> Result<Vec<Vec<Vec<i64>>>> {
    let n = h1.rows();
    let bound = (0..n).map(|i| h2[(i, i)].clone()).max().expect("rank at least 1");
    if norm_counts(h1, &bound) != norm_counts(h2, &bound) {
        return Ok(Vec::new());
    }
    let g1 = small(h1)?;
    let g2 = small(h2)?;
    let mut by_norm: BTreeMap<i64, Vec<Cand>> = BTreeMap::new();
    for v in enumerate_all(h1, &bound) {
        let v: Vec<i64> = v.iter().map(|x| x.to_i64().expect("short vector coordinate")).collect();
        let gv: Vec<i64> = g1.iter().map(|row| dot(row, &v) as i64).collect();
        let nv = dot(&v, &gv) as i64;
        by_norm.entry(nv).or_default().push(Cand { v, gv });
    }
    let count = |j: usize| by_norm.get(&g2[j][j]).map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (count(j), j));
    if count(order[0]) == 0 {
        return Ok(Vec::new());
    }
    let lists: Vec<&[Cand]> = order.iter().map(|&j| by_norm[&g2[j][j]].as_slice()).collect();

    let mut st = State { nodes: 0, budget, want_all, found: Vec::new(), chosen: Vec::with_capacity(n) };
    st.go(&lists, &order, &g2)?;
    Ok(st
        .found
        .into_iter()
        .map(|cols| {
            // cols follow `order`; put them back in natural column order
            let mut out = vec![Vec::new(); n];
            for (pos, &j) in order.iter().enumerate() {
                out[j] = cols[pos].clone();
            }
            out
        })
        .collect())
}

struct State<'a> {
    nodes: u64,
    budget: u64,
    want_all: bool,
    found: Vec<Vec<Vec<i64>>>,
    chosen: Vec<&'a Cand>,
}

impl<'a> State<'a> {
    fn go(&mut self, lists: &[&'a [Cand]], order: &[usize], g2: &[Vec<i64>]) -> Result<bool> {
        let depth = self.chosen.len();
        if depth == lists.len() {
            self.found.push(self.chosen.iter().map(|c| c.v.clone()).collect());
            return Ok(!self.want_all);
        }
        let j = order[depth];
        for c in lists[depth] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let ok = self
                .chosen
                .iter()
                .enumerate()
                .all(|(p, u)| dot(&c.gv, &u.v) == g2[order[p]][j] as i128);
            if !ok {
                continue;
            }
            self.chosen.push(c);
            let stop = self.go(lists, order, g2)?;
            self.chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
