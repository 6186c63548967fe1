//! Independent reference implementations used by the property suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use tracelattice::bhargava::{GroupElement, TernaryPair};
use tracelattice::exact::IntMatrix;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut acc = BigInt::from(0);
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn dot(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let n = g.len();
    (0..n).map(|i| (0..n).map(|j| x[i] * g[i][j] * y[j]).sum::<i64>()).sum()
}

/// All nonzero `x` with `xᵀGx ≤ bound`, by a box search with
/// `xᵢ² ≤ bound·(G⁻¹)ᵢᵢ`.
pub fn box_vectors(g: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let det = cofactor_det(g);
    let det: f64 = det.to_string().parse().unwrap();
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| g[r][c]).collect())
                .collect();
            let m: f64 = cofactor_det(&minor).to_string().parse().unwrap();
            (bound as f64 * m / det).sqrt().floor() as i64 + 1
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(i: usize, x: &mut Vec<i64>, radius: &[i64], g: &[Vec<i64>], bound: i64, out: &mut Vec<Vec<i64>>) {
        if i == x.len() {
            if x.iter().any(|&v| v != 0) && dot(g, x, x) <= bound {
                out.push(x.clone());
            }
            return;
        }
        for v in -radius[i]..=radius[i] {
            x[i] = v;
            rec(i + 1, x, radius, g, bound, out);
        }
    }
    rec(0, &mut x, &radius, g, bound, &mut out);
    out
}

/// Number of integer `U` with `UᵀGU = G`, choosing each column among the
/// vectors of the right norm.
pub fn brute_aut_count(g: &[Vec<i64>]) -> usize {
    let n = g.len();
    let maxd = (0..n).map(|i| g[i][i]).max().unwrap();
    let vs = box_vectors(g, maxd);
    let cands: Vec<Vec<&Vec<i64>>> = (0..n).map(|j| vs.iter().filter(|v| dot(g, v, v) == g[j][j]).collect()).collect();
    fn rec(j: usize, chosen: &mut Vec<Vec<i64>>, cands: &[Vec<&Vec<i64>>], g: &[Vec<i64>]) -> usize {
        if j == cands.len() {
            return 1;
        }
        let mut count = 0;
        for v in &cands[j] {
            if (0..j).all(|i| dot(g, &chosen[i], v) == g[i][j]) {
                chosen.push((*v).clone());
                count += rec(j + 1, chosen, cands, g);
                chosen.pop();
            }
        }
        count
    }
    rec(0, &mut Vec::new(), &cands, g)
}

pub fn squarefree_by_trial(d: i64) -> bool {
    let a = d.unsigned_abs();
    (2..).take_while(|k: &u64| k * k <= a).all(|k| !a.is_multiple_of(k * k))
}

/// `d ≡ 1 (mod 4)` squarefree, or `d = 4m` with `m ≡ 2, 3 (mod 4)` squarefree.
pub fn fundamental_by_definition(d: i64) -> bool {
    if d.rem_euclid(4) == 1 {
        return squarefree_by_trial(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        return matches!(m.rem_euclid(4), 2 | 3) && squarefree_by_trial(m);
    }
    false
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string().parse().unwrap()).collect()).collect()
}

/// A random positive-definite symmetric matrix with entries in `[−10, 10]`.
pub fn random_pd<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    loop {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = rng.gen_range(1..=10);
            for j in i + 1..n {
                let v = rng.gen_range(-10..=10);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        let m = IntMatrix::from_fn(n, n, |i, j| BigInt::from(g[i][j]));
        if m.is_positive_definite() {
            return m;
        }
    }
}

pub fn random_pair<R: Rng>(rng: &mut R) -> TernaryPair {
    TernaryPair::from_i64(std::array::from_fn(|_| rng.gen_range(-5..=5)), std::array::from_fn(|_| rng.gen_range(-5..=5)))
}

/// A product of elementary transvections, a permutation-with-sign, and a
/// random `GL₂(ℤ)` word.
pub fn random_group_element<R: Rng>(rng: &mut R) -> GroupElement {
    let mut g3 = IntMatrix::identity(3);
    for _ in 0..rng.gen_range(1..6) {
        let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if a == b {
            continue;
        }
        let q = BigInt::from(rng.gen_range(-2..=2));
        for k in 0..3 {
            let v = &g3[(k, b)] + &g3[(k, a)] * &q;
            g3[(k, b)] = v;
        }
    }
    if rng.gen_bool(0.5) {
        // a rotation by a quarter turn in two coordinates keeps det 1
        g3.swap_cols(0, 1);
        for k in 0..3 {
            g3[(k, 0)] = -&g3[(k, 0)];
        }
    }
    let gens = [[0i64, 1, 1, 0], [1, 1, 0, 1], [1, 0, 0, -1], [1, 0, -1, 1]];
    let mut g2 = IntMatrix::identity(2);
    for _ in 0..rng.gen_range(0..5) {
        let e = gens[rng.gen_range(0..gens.len())];
        g2 = &g2 * &IntMatrix::from_i64(&[&[e[0], e[1]], &[e[2], e[3]]]);
    }
    GroupElement::new(g2, g3).expect("generated element is valid")
}
