//! The bigraded E¹ complex of the skeleton and its E² page.
//!
//! `C_{deg,r} = ⊕_{dim F = deg} (⋀^r M_F)^{⊕|P_F|}`, with differential
//! `C_{deg,r} -> C_{deg-1,r}` given by the signed sum over codimension-one
//! subfaces of the maps induced by the attaching maps. A basis element of
//! `C_{deg,r}` is a triple (face, component, r-subset of the `M_F` basis);
//! bases are ordered by face, then component, then subset.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{binomial, rank_q, smith_normal_form, subsets, wedge_matrix, IntMatrix};
use crate::polytope::{FaceId, LatticePolytope};
use crate::skeleton::Skeleton;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub face: FaceId,
    pub component: usize,
    pub wedge: Vec<usize>,
}

/// E¹ page: chain groups `C_{deg,r}` and differentials `D_{deg,r}`.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    n: usize,
    // [deg][r], r in 0..=n-deg
    bases: Vec<Vec<Vec<BasisElement>>>,
    // [deg-1][r]: D_{deg,r} for deg >= 1
    boundaries: Vec<Vec<IntMatrix>>,
}

impl BigradedComplex {
    /// Dimension `n` of the skeleton; nonzero groups have `deg + r <= n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self, deg: usize, r: usize) -> &[BasisElement] {
        self.bases
            .get(deg)
            .and_then(|row| row.get(r))
            .map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, deg: usize, r: usize) -> usize {
        self.basis(deg, r).len()
    }

    /// `D_{deg,r}: C_{deg,r} -> C_{deg-1,r}`, for `deg >= 1` and
    /// `r <= n - deg`.
    pub fn boundary(&self, deg: usize, r: usize) -> Option<&IntMatrix> {
        self.boundaries.get(deg.checked_sub(1)?)?.get(r)
    }

    /// `dim C_{deg,r}` laid out as `[deg][r]`.
    pub fn chain_dims(&self) -> Vec<Vec<usize>> {
        self.bases
            .iter()
            .map(|row| row.iter().map(Vec::len).collect())
            .collect()
    }

    /// Checks `D_{deg-1,r} D_{deg,r} = 0` everywhere.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for deg in 2..=self.n {
            for r in 0..=self.n - deg {
                let (outer, inner) = (
                    self.boundary(deg - 1, r).expect("exists for deg-1 >= 1"),
                    self.boundary(deg, r).expect("exists for deg <= n - r"),
                );
                if !outer.checked_mul(inner)?.is_zero() {
                    return Err(Error::BoundarySquared { deg, r });
                }
            }
        }
        Ok(())
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.n).flat_map(move |deg| (0..=self.n - deg).map(move |r| (deg, r)))
    }
}

/// Builds the E¹ complex of a reflexive facet-simplicial polytope.
pub fn build_complex(p: &LatticePolytope) -> Result<BigradedComplex> {
    complex_of(&Skeleton::new(p)?)
}

/// Builds the E¹ complex from precomputed skeleton data.
pub fn complex_of(skeleton: &Skeleton) -> Result<BigradedComplex> {
    let n = skeleton.dim();
    let lattice = skeleton.lattice();

    let mut bases = Vec::with_capacity(n + 1);
    // offsets[deg][r][face]: start of that face's block within C_{deg,r}
    let mut offsets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    for deg in 0..=n {
        let mut row = Vec::with_capacity(n - deg + 1);
        let mut off_row = Vec::with_capacity(n - deg + 1);
        for r in 0..=n - deg {
            let mut basis = Vec::new();
            let mut offs = vec![usize::MAX; lattice.len()];
            for face in lattice.ids_of_dim(deg) {
                let g = skeleton.group(face);
                offs[face.0] = basis.len();
                for component in 0..g.component_order {
                    for wedge in subsets(g.torus_rank, r) {
                        basis.push(BasisElement {
                            face,
                            component,
                            wedge,
                        });
                    }
                }
            }
            row.push(basis);
            off_row.push(offs);
        }
        bases.push(row);
        offsets.push(off_row);
    }

    let mut boundaries = Vec::with_capacity(n);
    for deg in 1..=n {
        let mut row = Vec::with_capacity(n - deg + 1);
        for r in 0..=n - deg {
            let mut d = IntMatrix::zeros(bases[deg - 1][r].len(), bases[deg][r].len());
            for coface in lattice.ids_of_dim(deg) {
                let big = skeleton.group(coface);
                let col_block = binomial(big.torus_rank, r);
                for &(face, sign) in lattice.boundary(coface) {
                    let small = skeleton.group(face);
                    let row_block = binomial(small.torus_rank, r);
                    let map = skeleton.attaching_map(face, coface)?;
                    let wedge = wedge_matrix(&map.torus_map, r)?;
                    let sign = BigInt::from(sign);
                    for (k, &image) in map.component_map.iter().enumerate() {
                        let col0 = offsets[deg][r][coface.0] + k * col_block;
                        let row0 = offsets[deg - 1][r][face.0] + image * row_block;
                        for a in 0..row_block {
                            for b in 0..col_block {
                                let w = &wedge[(a, b)];
                                if !w.is_zero() {
                                    d[(row0 + a, col0 + b)] += &sign * w;
                                }
                            }
                        }
                    }
                }
            }
            row.push(d);
        }
        boundaries.push(row);
    }

    Ok(BigradedComplex {
        n,
        bases,
        boundaries,
    })
}

/// Locate a basis element in `C_{deg,r}` by linear search; used by tests
/// and reports, never in the hot path.
pub fn basis_index(
    c: &BigradedComplex,
    deg: usize,
    r: usize,
    elem: &BasisElement,
) -> Option<usize> {
    c.basis(deg, r).iter().position(|e| e == elem)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Q,
    Z,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Q => "Q",
            Ring::Z => "Z",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub deg: usize,
    pub r: usize,
    pub factors: Vec<u64>,
}

/// E² page and derived numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub ring: Ring,
    pub n: usize,
    /// `dim C_{deg,r}` as `[deg][r]`.
    pub chain_dims: Vec<Vec<usize>>,
    /// Rank of `E²_{deg,r}` as `[deg][r]`.
    pub e2_dims: Vec<Vec<usize>>,
    /// `b_k = Σ_{deg+r=k} rank E²_{deg,r}`. Only reported over ℚ, where the
    /// spectral sequence is expected (not proven) to degenerate at E².
    pub betti: Option<Vec<usize>>,
    /// Invariant factors > 1 of the integral E² page, by cell.
    pub torsion: Vec<TorsionEntry>,
    pub euler: i64,
    /// True when `betti` relies on E² = E^∞.
    pub conjectural_degeneration: bool,
}

impl HomologyReport {
    pub fn e2(&self, deg: usize, r: usize) -> usize {
        self.e2_dims
            .get(deg)
            .and_then(|row| row.get(r))
            .copied()
            .unwrap_or(0)
    }
}

fn assemble(
    c: &BigradedComplex,
    ring: Ring,
    ranks: &[Vec<usize>],
    torsion: Vec<TorsionEntry>,
) -> HomologyReport {
    let n = c.n;
    let rank_of = |deg: usize, r: usize| -> usize {
        if deg == 0 || deg > n || r > n - deg {
            0
        } else {
            ranks[deg - 1][r]
        }
    };
    let e2_dims: Vec<Vec<usize>> = (0..=n)
        .map(|deg| {
            (0..=n - deg)
                .map(|r| c.dim(deg, r) - rank_of(deg, r) - rank_of(deg + 1, r))
                .collect()
        })
        .collect();
    let betti = (ring == Ring::Q).then(|| {
        (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|deg| e2_dims[deg].get(k - deg).copied().unwrap_or(0))
                    .sum()
            })
            .collect()
    });
    HomologyReport {
        ring,
        n,
        chain_dims: c.chain_dims(),
        e2_dims,
        betti,
        torsion,
        euler: euler_characteristic(c),
        conjectural_degeneration: ring == Ring::Q,
    }
}

/// E² over ℚ. Fails if `∂² ≠ 0`.
pub fn homology_q(c: &BigradedComplex) -> Result<HomologyReport> {
    c.check_boundary_squared()?;
    let ranks: Vec<Vec<usize>> = c
        .boundaries
        .par_iter()
        .map(|row| row.par_iter().map(rank_q).collect())
        .collect();
    Ok(assemble(c, Ring::Q, &ranks, Vec::new()))
}

/// E² over ℤ, with torsion. Fails if `∂² ≠ 0`.
///
/// The torsion of `ker D_{deg,r} / im D_{deg+1,r}` is the nontrivial part
/// of the Smith form of `D_{deg+1,r}`, since the kernel is saturated.
pub fn homology_z(c: &BigradedComplex) -> Result<HomologyReport> {
    c.check_boundary_squared()?;
    let factors: Vec<Vec<Vec<BigInt>>> = c
        .boundaries
        .par_iter()
        .map(|row| {
            row.par_iter()
                .map(|d| smith_normal_form(d).invariant_factors)
                .collect()
        })
        .collect();
    let ranks: Vec<Vec<usize>> = factors
        .iter()
        .map(|row| row.iter().map(Vec::len).collect())
        .collect();
    let mut torsion = Vec::new();
    for (deg, r) in c.cells() {
        let Some(fs) = factors.get(deg).and_then(|row| row.get(r)) else {
            continue;
        };
        let big: Vec<u64> = fs
            .iter()
            .filter(|f| !f.is_one())
            .map(|f| {
                f.to_u64().ok_or_else(|| {
                    Error::Internal(format!("torsion coefficient {f} exceeds 64 bits"))
                })
            })
            .try_collect()?;
        if !big.is_empty() {
            torsion.push(TorsionEntry {
                deg,
                r,
                factors: big,
            });
        }
    }
    Ok(assemble(c, Ring::Z, &ranks, torsion))
}

/// `Σ (-1)^{deg+r} dim C_{deg,r}`.
pub fn euler_characteristic(c: &BigradedComplex) -> i64 {
    c.cells()
        .map(|(deg, r)| {
            let dim = i64::try_from(c.dim(deg, r)).expect("chain group size fits in i64");
            if (deg + r) % 2 == 0 {
                dim
            } else {
                -dim
            }
        })
        .sum()
}

/// Column of `D_{deg,r}` as a sparse list, handy for printing.
pub fn boundary_column(
    c: &BigradedComplex,
    deg: usize,
    r: usize,
    col: usize,
) -> Vec<(usize, BigInt)> {
    c.boundary(deg, r)
        .map(|d| {
            (0..d.rows())
                .filter(|&i| !d[(i, col)].is_zero())
                .map(|i| (i, d[(i, col)].clone()))
                .collect()
        })
        .unwrap_or_default()
}
