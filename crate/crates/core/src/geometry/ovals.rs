//! Heuristic count of the connected components of a real plane quartic.
//!
//! The projective plane is covered by the three closed squares
//! `{|t_a|, |t_b| ≤ |t_k| = 1}`. Each square is sampled on a regular grid,
//! signs are evaluated exactly at integer lifts of the grid vertices, and
//! marching squares links sign changes across cells. Edges on the border of
//! a square have the same integer vertices (up to sign) in the neighbouring
//! square, which glues the three charts. Components that never cross a grid
//! edge are missed, so the count is not certified.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{QuarticForm, QUARTIC_EXPONENTS};

pub const DEFAULT_DEPTH: u32 = 9;
const MAX_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OvalCount {
    pub count: usize,
    pub depth: u32,
    pub stabilized: bool,
}

/// Counts at `depth` and `depth - 1`; stabilized when they agree.
pub fn count_ovals(f: &QuarticForm, depth: u32) -> OvalCount {
    let depth = depth.clamp(2, MAX_DEPTH);
    let Some(coeffs) = f.canonical() else {
        return OvalCount {
            count: 0,
            depth,
            stabilized: false,
        };
    };
    let coeffs = balanced(&coeffs);
    let fine = components(&coeffs, depth);
    let coarse = components(&coeffs, depth - 1);
    OvalCount {
        count: fine,
        depth,
        stabilized: fine == coarse,
    }
}

fn log2_abs(c: &BigInt) -> f64 {
    let bits = c.bits();
    if bits <= 60 {
        (c.abs().to_u64().unwrap() as f64).log2()
    } else {
        let top = (c.abs() >> (bits - 60)).to_u64().unwrap() as f64;
        top.log2() + (bits - 60) as f64
    }
}

/// Substitutes `t_i -> 2^{k_i} t_i` with `k_i` chosen so that the pure
/// powers `t_i⁴` get comparable coefficients. A positive diagonal change of
/// coordinates does not change the real curve up to projective
/// equivalence, but it spreads features that would otherwise be squeezed
/// below the grid spacing. The scale is only a heuristic; signs are still
/// evaluated exactly.
fn balanced(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut weight = [0f64; 3];
    for (i, w) in weight.iter_mut().enumerate() {
        // the largest coefficient among the monomials richest in t_i
        let best = (1..=4u8).rev().find_map(|deg| {
            QUARTIC_EXPONENTS
                .iter()
                .zip(coeffs)
                .filter(|(e, c)| e[i] == deg && !c.is_zero())
                .map(|(_, c)| log2_abs(c) / deg as f64)
                .reduce(f64::max)
        });
        *w = best.unwrap_or(0.0);
    }
    let top = weight.iter().copied().fold(f64::MIN, f64::max);
    let k: Vec<u32> = weight.iter().map(|w| (top - w).round() as u32).collect();
    let scaled: Vec<BigInt> = QUARTIC_EXPONENTS
        .iter()
        .zip(coeffs)
        .map(|(e, c)| {
            let shift: u32 = (0..3).map(|i| k[i] * e[i] as u32).sum();
            c << shift
        })
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    scaled.into_iter().map(|x| x / &g).collect()
}

/// Row polynomial in one variable, with an `i128` copy when it fits.
struct RowPoly {
    big: [BigInt; 5],
    small: Option<[i128; 5]>,
}

impl RowPoly {
    fn new(big: [BigInt; 5]) -> Self {
        let small = big
            .iter()
            .map(|c| c.to_i128())
            .collect::<Option<Vec<i128>>>()
            .map(|v| [v[0], v[1], v[2], v[3], v[4]]);
        RowPoly { big, small }
    }

    /// Sign of the value at `x`, zero counted as positive.
    fn nonnegative(&self, x: i64) -> bool {
        if let Some(c) = &self.small {
            let x = x as i128;
            let mut acc: Option<i128> = Some(c[4]);
            for k in (0..4).rev() {
                acc = acc.and_then(|a| a.checked_mul(x)).and_then(|a| a.checked_add(c[k]));
            }
            if let Some(v) = acc {
                return v >= 0;
            }
        }
        let x = BigInt::from(x);
        let mut acc = self.big[4].clone();
        for k in (0..4).rev() {
            acc = acc * &x + &self.big[k];
        }
        !acc.is_negative()
    }
}

/// `f` restricted to `t_k = n`, `t_a = a`, as a polynomial in `t_b`.
fn row_poly(coeffs: &[BigInt], k: usize, a: usize, b: usize, n: i64, av: i64) -> RowPoly {
    let mut out: [BigInt; 5] = Default::default();
    for (e, c) in QUARTIC_EXPONENTS.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let scale = BigInt::from(n).pow(e[k] as u32) * BigInt::from(av).pow(e[a] as u32);
        out[e[b] as usize] += c * scale;
    }
    RowPoly::new(out)
}

fn canonical_key(mut v: [i64; 3]) -> [i64; 3] {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v = v.map(|x| -x);
    }
    v
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

fn components(coeffs: &[BigInt], depth: u32) -> usize {
    let cells = 1usize << depth;
    let n = cells as i64;
    let mut nodes: HashMap<([i64; 3], [i64; 3]), usize> = HashMap::new();
    let mut uf = UnionFind(Vec::new());
    for k in 0..3 {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        let vertex = |i: usize, j: usize| {
            let mut v = [0i64; 3];
            v[k] = n;
            v[a] = 2 * i as i64 - n;
            v[b] = 2 * j as i64 - n;
            canonical_key(v)
        };
        let vertex_signs: Vec<Vec<bool>> = (0..=cells)
            .into_par_iter()
            .map(|i| {
                let row = row_poly(coeffs, k, a, b, n, 2 * i as i64 - n);
                (0..=cells).map(|j| row.nonnegative(2 * j as i64 - n)).collect()
            })
            .collect();
        let center_signs: Vec<Vec<bool>> = (0..cells)
            .into_par_iter()
            .map(|i| {
                let row = row_poly(coeffs, k, a, b, n, 2 * i as i64 + 1 - n);
                (0..cells).map(|j| row.nonnegative(2 * j as i64 + 1 - n)).collect()
            })
            .collect();
        for i in 0..cells {
            for j in 0..cells {
                // corners in cyclic order: (i,j), (i+1,j), (i+1,j+1), (i,j+1)
                let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
                let s = corners.map(|(x, y)| vertex_signs[x][y]);
                let mut crossing = [None; 4];
                for e in 0..4 {
                    if s[e] != s[(e + 1) % 4] {
                        let (p, q) = (corners[e], corners[(e + 1) % 4]);
                        let (kp, kq) = (vertex(p.0, p.1), vertex(q.0, q.1));
                        let key = if kp <= kq { (kp, kq) } else { (kq, kp) };
                        let next = nodes.len();
                        let id = *nodes.entry(key).or_insert(next);
                        if id == uf.0.len() {
                            uf.0.push(id);
                        }
                        crossing[e] = Some(id);
                    }
                }
                let ids: Vec<usize> = crossing.iter().flatten().copied().collect();
                match ids.len() {
                    2 => uf.union(ids[0], ids[1]),
                    4 => {
                        // edge e joins corner e to corner e+1; a segment cuts
                        // off every corner whose sign differs from the center
                        let c = center_signs[i][j];
                        let e = |x: usize| crossing[x].unwrap();
                        if s[1] != c {
                            uf.union(e(0), e(1));
                            uf.union(e(2), e(3));
                        } else {
                            uf.union(e(3), e(0));
                            uf.union(e(1), e(2));
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    let total = uf.0.len();
    (0..total).filter(|&x| uf.find(x) == x).count()
}
