//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's own solvers; only its number and cone types are reused.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use pic2cone::conegeo::Vec2;
use pic2cone::{Cone2, LatMat, QF};

pub fn oguiso_f() -> LatMat {
    LatMat::from_rows(-1, -6, 6, 35).unwrap()
}

pub fn oguiso_tau1() -> LatMat {
    LatMat::from_rows(-1, 0, 6, 1).unwrap()
}

pub fn oguiso_tau2() -> LatMat {
    LatMat::from_rows(1, 6, 0, -1).unwrap()
}

fn entry(m: &LatMat, i: usize, j: usize) -> i64 {
    i64::try_from(&m.entries()[i][j]).unwrap()
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).find(|x| x * x == n)
}

/// Eigenvalues of a hyperbolic `det = 1` matrix as elements of `Q(sqrt(d))`,
/// found by brute-force factoring of the discriminant.
pub fn hyperbolic_eigenvalues(f: &LatMat, d: u64) -> (QF, QF) {
    assert_eq!(f.det(), 1);
    let tr = entry(f, 0, 0) + entry(f, 1, 1);
    let disc = (tr as i128) * (tr as i128) - 4;
    let s = isqrt(disc / d as i128).filter(|s| s * s * d as i128 == disc).expect("discriminant in the field");
    let half = |sgn: i64| {
        QF::new(
            num_rational::BigRational::new(BigInt::from(tr), BigInt::from(2)),
            num_rational::BigRational::new(BigInt::from(sgn as i128 * s), BigInt::from(2)),
            d,
        )
    };
    (half(1), half(-1))
}

/// `B^-1 f B` for `B` with columns the eigenvectors `(b, lambda - a)`.
pub fn eigenbasis_matrix(f: &LatMat, d: u64) -> [[QF; 2]; 2] {
    let (l1, l2) = hyperbolic_eigenvalues(f, d);
    let (a, b) = (QF::from_int(entry(f, 0, 0), d), QF::from_int(entry(f, 0, 1), d));
    assert!(!b.is_zero());
    let col = |l: &QF| [b.clone(), l - &a];
    let (c1, c2) = (col(&l1), col(&l2));
    let det = &(&c1[0] * &c2[1]) - &(&c2[0] * &c1[1]);
    let inv = [[&c2[1] / &det, -(&c2[0] / &det)], [-(&c1[1] / &det), &c1[0] / &det]];
    let fm = [
        [QF::from_int(entry(f, 0, 0), d), b.clone()],
        [QF::from_int(entry(f, 1, 0), d), QF::from_int(entry(f, 1, 1), d)],
    ];
    let bm = [[c1[0].clone(), c2[0].clone()], [c1[1].clone(), c2[1].clone()]];
    mat_mul(&mat_mul(&inv, &fm), &bm)
}

pub fn mat_mul(x: &[[QF; 2]; 2], y: &[[QF; 2]; 2]) -> [[QF; 2]; 2] {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Matrix of `F -> F o M - F` on coefficient vectors, computed from the
/// symmetric multilinear form by summing over all `2^n` index tuples.
/// Coefficient `m` is the value on `m` copies of `x1` and `n - m` of `x2`.
pub fn invariance_system(n: u32, m: &[[QF; 2]; 2]) -> Vec<Vec<QF>> {
    let d = m[0][0].d();
    let n = n as usize;
    let mut rows = Vec::with_capacity(n + 1);
    for out in 0..=n {
        // argument tuple: `out` copies of basis vector 0, then basis vector 1
        let args: Vec<usize> = (0..n).map(|t| if t < out { 0 } else { 1 }).collect();
        let mut row = vec![QF::zero(d); n + 1];
        for mask in 0u32..(1 << n) {
            // image index j_t for each slot; weight is prod M[j_t][args_t]
            let mut w = QF::one(d);
            let mut ones_of_x1 = 0;
            for (t, &arg) in args.iter().enumerate() {
                let j = ((mask >> t) & 1) as usize;
                if j == 0 {
                    ones_of_x1 += 1;
                }
                w = &w * &m[j][arg];
            }
            row[ones_of_x1] = &row[ones_of_x1] + &w;
        }
        row[out] = &row[out] - &QF::one(d);
        rows.push(row);
    }
    rows
}

/// Coordinates that vanish on every solution of `A x = 0`.
pub fn forced_zero_coordinates(mut a: Vec<Vec<QF>>) -> BTreeSet<usize> {
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        a[r] = a[r].iter().map(|x| x * &inv).collect();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                a[i] = a[i].iter().zip(a[r].iter()).map(|(x, y)| x - &(&k * y)).collect();
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    // null vector for free column f: x_f = 1, x_pivot = -a[row][f]
    let mut nonzero = BTreeSet::new();
    for &f in &free {
        nonzero.insert(f);
        for (row, &pc) in pivots.iter().enumerate() {
            if !a[row][f].is_zero() {
                nonzero.insert(pc);
            }
        }
    }
    (0..cols).filter(|c| !nonzero.contains(c)).collect()
}

pub fn interior_point(c: &Cone2) -> Vec2 {
    c.r1().vector().add(&c.r2().vector())
}

/// Interiors meet iff some endpoint or midpoint of one lies strictly inside the other.
pub fn interiors_overlap(a: &Cone2, b: &Cone2) -> bool {
    let strictly = |c: &Cone2, v: &Vec2| c.contains(&v.ray().unwrap(), true);
    a == b
        || strictly(b, &a.r1().vector())
        || strictly(b, &a.r2().vector())
        || strictly(a, &b.r1().vector())
        || strictly(a, &b.r2().vector())
        || strictly(b, &interior_point(a))
        || strictly(a, &interior_point(b))
}
