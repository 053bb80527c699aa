#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use rand::Rng;
use skeleta::cli::{parse_corpus, Format};
use skeleta::exactla::IntMatrix;
use skeleta::polytope::LatticePolytope;
use skeleta::{build_complex, homology_q};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn load(name: &str) -> Vec<(String, LatticePolytope)> {
    let bytes = std::fs::read(data_path(name)).unwrap();
    parse_corpus(&bytes, Format::detect(&bytes))
        .unwrap()
        .into_iter()
        .map(|d| {
            let p = d.skeleton_polytope().unwrap();
            (d.name.unwrap_or_else(|| name.to_string()), p)
        })
        .collect()
}

pub fn polygons() -> Vec<(String, LatticePolytope)> {
    load("reflexive_polygons.json")
}

/// Every bundled polytope the skeleton can be built from.
pub fn corpus() -> Vec<(String, LatticePolytope)> {
    let mut all = polygons();
    all.extend(load("reflexive_3d.json"));
    all.extend(load("p4.json"));
    all.extend(load("segment.txt"));
    all
}

pub fn poly(v: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::new(v.iter().map(|x| x.to_vec()).collect()).unwrap()
}

pub fn big_triangle() -> LatticePolytope {
    poly(&[&[2, -1], &[-1, 2], &[-1, -1]])
}

pub fn octahedron() -> LatticePolytope {
    poly(&[
        &[1, 0, 0],
        &[-1, 0, 0],
        &[0, 1, 0],
        &[0, -1, 0],
        &[0, 0, 1],
        &[0, 0, -1],
    ])
}

pub fn cube() -> LatticePolytope {
    let v: Vec<Vec<i64>> = (0..8)
        .map(|m| {
            (0..3)
                .map(|b| if m >> b & 1 == 1 { 1 } else { -1 })
                .collect()
        })
        .collect();
    LatticePolytope::new(v).unwrap()
}

pub fn betti(p: &LatticePolytope) -> Vec<usize> {
    homology_q(&build_complex(p).unwrap())
        .unwrap()
        .betti
        .unwrap()
}

/// A random element of GL_d(ℤ) as a product of elementary moves, with small
/// entries so transformed polytopes stay cheap.
pub fn random_unimodular(d: usize, rng: &mut impl Rng) -> IntMatrix {
    let mut g = vec![vec![0i64; d]; d];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..d);
        match rng.gen_range(0..3) {
            0 if d > 1 => {
                let mut j = rng.gen_range(0..d - 1);
                if j >= i {
                    j += 1;
                }
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let src = g[j].clone();
                for (x, y) in g[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
            1 if d > 1 => {
                let j = (i + 1 + rng.gen_range(0..d - 1)) % d;
                g.swap(i, j);
            }
            _ => {
                for x in g[i].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    IntMatrix::from_rows(&g)
}

/// Exact determinant over i128 by fraction-free elimination, independent
/// of the library's BigInt routines.
pub fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors from determinantal divisors: `s_k = d_k / d_{k-1}`,
/// `d_k` the gcd of all `k x k` minors.
pub fn invariant_factors_by_minors(a: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let m = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect())
                    .collect();
                g = gcd(g, det_i128(m));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn big(x: i128) -> BigInt {
    BigInt::from(x)
}
