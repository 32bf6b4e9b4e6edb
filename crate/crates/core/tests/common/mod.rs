//! Independent oracles: dense `Vec<Vec<bool>>` elimination and exhaustive
//! enumeration. Nothing here calls the library's linear algebra or solver.

#![allow(dead_code)]

use involutive_cfk::{Generator, IotaComplex};

pub type Dense = Vec<Vec<bool>>;

pub fn dense(c_rows: usize, c_cols: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Dense {
    let mut m = vec![vec![false; c_cols]; c_rows];
    for (r, c) in entries {
        m[r][c] ^= true;
    }
    m
}

/// Differential as a dense matrix (row = target, column = source), read off the arrows.
pub fn diff_dense(c: &IotaComplex) -> Dense {
    dense(c.len(), c.len(), c.diff_arrows().into_iter().map(|(s, d)| (d, s)))
}

pub fn iota_dense(c: &IotaComplex) -> Dense {
    dense(c.len(), c.len(), c.iota_arrows().into_iter().map(|(s, d)| (d, s)))
}

pub fn rank(m: &Dense) -> usize {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col]) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][col] {
                for k in 0..cols {
                    let v = m[rank][k];
                    m[r][k] ^= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![false; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] {
                for j in 0..m {
                    out[i][j] ^= b[l][j];
                }
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p ^ q).collect()).collect()
}

pub fn is_zero(a: &Dense) -> bool {
    a.iter().all(|r| r.iter().all(|v| !v))
}

/// Homology dimensions (even, odd) over F2, from ranks of the full
/// differential restricted to each parity.
pub fn homology_dims(c: &IotaComplex) -> (usize, usize) {
    let d = diff_dense(c);
    let parity = |g: &Generator| g.maslov.rem_euclid(2) as usize;
    let gens = c.generators();
    let idx = |p: usize| (0..c.len()).filter(|&i| parity(&gens[i]) == p).collect::<Vec<_>>();
    let (even, odd) = (idx(0), idx(1));
    let block = |from: &[usize], to: &[usize]| -> Dense {
        to.iter().map(|&r| from.iter().map(|&s| d[r][s]).collect()).collect()
    };
    let r_eo = rank(&block(&even, &odd));
    let r_oe = rank(&block(&odd, &even));
    (even.len() - r_eo - r_oe, odd.len() - r_oe - r_eo)
}

/// `U`-exponent of a degree-`deg` entry `x -> y`, if the parity allows one.
pub fn exponent(x: &Generator, y: &Generator, deg: i64) -> Option<i64> {
    let t = y.maslov - x.maslov - deg;
    (t.rem_euclid(2) == 0).then_some(t / 2)
}

pub fn filtered_ok(x: &Generator, y: &Generator, deg: i64) -> bool {
    exponent(x, y, deg).is_some_and(|q| q >= 0 && q >= y.alexander - x.alexander)
}

pub fn skew_ok(x: &Generator, y: &Generator, deg: i64) -> bool {
    exponent(x, y, deg).is_some_and(|q| q >= -x.alexander && q >= y.alexander)
}

/// Positions `(src, dst)` of all admissible entries.
pub fn positions(c1: &IotaComplex, c2: &IotaComplex, deg: i64, skew: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, x) in c1.generators().iter().enumerate() {
        for (j, y) in c2.generators().iter().enumerate() {
            let ok = if skew { skew_ok(x, y, deg) } else { filtered_ok(x, y, deg) };
            if ok {
                out.push((i, j));
            }
        }
    }
    out
}

/// A cycle of the unit parity that is not a boundary, by enumeration.
pub fn homology_generator(c: &IotaComplex) -> Option<Vec<bool>> {
    let n = c.len();
    assert!(n <= 20, "enumeration too large");
    let d = diff_dense(c);
    let r = rank(&d);
    for bits in 1u32..(1 << n) {
        let v: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        let dv = mul(&d, &v.iter().map(|&b| vec![b]).collect());
        if !is_zero(&dv) {
            continue;
        }
        let mut aug = d.clone();
        for (row, &b) in aug.iter_mut().zip(&v) {
            row.push(b);
        }
        if rank(&aug) > r {
            return Some(v);
        }
    }
    None
}

/// Whether the column vector `v` is a boundary in `c`.
pub fn is_boundary(c: &IotaComplex, v: &[bool]) -> bool {
    let d = diff_dense(c);
    let mut aug = d.clone();
    for (row, &b) in aug.iter_mut().zip(v) {
        row.push(b);
    }
    rank(&aug) == rank(&d)
}

/// Exhaustive search over all `(F, H)` supported on admissible positions for a
/// local map `c1 -> c2`. Returns the number of candidates and whether one works.
pub fn brute_force_local_map(c1: &IotaComplex, c2: &IotaComplex) -> (usize, bool) {
    let f_pos = positions(c1, c2, 0, false);
    let h_pos = positions(c1, c2, 1, true);
    let k = f_pos.len() + h_pos.len();
    assert!(k <= 20, "2^{k} candidates is too many");
    let (d1, d2, i1, i2) = (diff_dense(c1), diff_dense(c2), iota_dense(c1), iota_dense(c2));
    let z = homology_generator(c1);
    let mut found = false;
    for bits in 0u64..(1 << k) {
        let f = dense(c2.len(), c1.len(), f_pos.iter().enumerate().filter(|(b, _)| bits >> b & 1 == 1).map(|(_, &(s, d))| (d, s)));
        let h = dense(
            c2.len(),
            c1.len(),
            h_pos.iter().enumerate().filter(|(b, _)| bits >> (f_pos.len() + b) & 1 == 1).map(|(_, &(s, d))| (d, s)),
        );
        if !is_zero(&add(&mul(&d2, &f), &mul(&f, &d1))) {
            continue;
        }
        let lhs = add(&mul(&f, &i1), &mul(&i2, &f));
        let rhs = add(&mul(&d2, &h), &mul(&h, &d1));
        if lhs != rhs {
            continue;
        }
        let Some(z) = &z else { continue };
        let fz: Vec<bool> = mul(&f, &z.iter().map(|&b| vec![b]).collect()).into_iter().map(|r| r[0]).collect();
        if is_boundary(c2, &fz) {
            continue;
        }
        found = true;
        break;
    }
    (k, found)
}
