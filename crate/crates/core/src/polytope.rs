//! Lattice polytopes given by their vertices: facets, polar duality,
//! reflexivity, the simplicial face lattice and a few lattice-point counts.
//!
//! Facets are found by brute force over `d`-subsets of the vertex list with
//! exact arithmetic. That is quadratic-ish in the worst case but the inputs
//! here are reflexive polytopes of dimension at most four, which have a few
//! dozen vertices at most.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{rank_q, wedge_matrix, IntMatrix};

/// Supporting inequality `normal · x >= offset` with a primitive normal,
/// together with the vertices on the facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<usize>,
}

impl Facet {
    fn slack(&self, x: &[i64]) -> i128 {
        dot(&self.normal, x) - i128::from(self.offset)
    }
}

/// A full-dimensional lattice polytope stored as its vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

impl LatticePolytope {
    /// Validates the vertex list and computes the facets.
    ///
    /// Every listed point must be a vertex of the convex hull, the hull must
    /// be full-dimensional, and no point may repeat.
    pub fn new(vertices: Vec<Vec<i64>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        if vertices.is_empty() || dim == 0 {
            return Err(Error::InvalidPolytope("no vertices".into()));
        }
        if let Some(i) = vertices.iter().position(|v| v.len() != dim) {
            return Err(Error::InvalidPolytope(format!(
                "vertex {i} has {} coordinates, expected {dim}",
                vertices[i].len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if let Some(j) = seen.insert(v, i) {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {i} duplicates vertex {j}: {}",
                    fmt_point(v)
                )));
            }
        }
        if affine_dimension(&vertices, &(0..vertices.len()).collect_vec()) != dim {
            return Err(Error::InvalidPolytope(format!(
                "hull is not full-dimensional in Z^{dim}"
            )));
        }

        let facets = hull_facets(&vertices, dim)?;
        for (i, v) in vertices.iter().enumerate() {
            let normals: Vec<&Vec<i64>> = facets
                .iter()
                .filter(|f| f.vertices.contains(&i))
                .map(|f| &f.normal)
                .collect();
            if normals.is_empty() || rank_q(&IntMatrix::from_rows(&normals)) < dim {
                return Err(Error::InvalidPolytope(format!(
                    "point {i} = {} is not a vertex of the hull",
                    fmt_point(v)
                )));
            }
        }
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    /// Ambient lattice rank `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[i64] {
        &self.vertices[i]
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Rows are the vertices.
    pub fn vertex_matrix(&self, indices: &[usize]) -> IntMatrix {
        let rows: Vec<&Vec<i64>> = indices.iter().map(|&i| &self.vertices[i]).collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, self.dim);
        }
        IntMatrix::from_rows(&rows)
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset < 0)
    }

    /// Applies `x -> g x` to every vertex; `g` must be unimodular.
    pub fn transform(&self, g: &IntMatrix) -> Result<Self> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} transform for a polytope in Z^{}",
                g.rows(),
                g.cols(),
                self.dim
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let x: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
                g.apply(&x).iter().map(to_i64).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    /// The same polytope with its vertex list reordered: vertex `i` of the
    /// result is vertex `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(order.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    /// True when both polytopes have the same vertex set.
    pub fn same_vertex_set(&self, other: &Self) -> bool {
        let a: BTreeSet<_> = self.vertices.iter().collect();
        let b: BTreeSet<_> = other.vertices.iter().collect();
        a == b
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "conv{{{}}}",
            self.vertices.iter().map(|v| fmt_point(v)).join(", ")
        )
    }
}

fn fmt_point(v: &[i64]) -> String {
    format!("({})", v.iter().join(","))
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| i128::from(x) * i128::from(y))
        .sum()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidPolytope(format!("coordinate {x} exceeds 64 bits")))
}

/// Dimension of the affine span of the selected points.
fn affine_dimension(points: &[Vec<i64>], indices: &[usize]) -> usize {
    let Some((&first, rest)) = indices.split_first() else {
        return 0;
    };
    if rest.is_empty() {
        return 0;
    }
    let diffs: Vec<Vec<i64>> = rest
        .iter()
        .map(|&i| {
            points[i]
                .iter()
                .zip(&points[first])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    rank_q(&IntMatrix::from_rows(&diffs))
}

/// Primitive normal of the hyperplane through `d` points, if they span one.
fn hyperplane_normal(
    points: &[Vec<i64>],
    subset: &[usize],
    dim: usize,
) -> Result<Option<Vec<i64>>> {
    let base = &points[subset[0]];
    let mut diffs = IntMatrix::zeros(dim - 1, dim);
    for (r, &i) in subset[1..].iter().enumerate() {
        for c in 0..dim {
            diffs[(r, c)] = BigInt::from(points[i][c] - base[c]);
        }
    }
    // the maximal minors of the difference matrix give the normal (cofactor expansion)
    let minors = wedge_matrix(&diffs, dim - 1)?;
    let mut normal: Vec<BigInt> = (0..dim)
        .map(|k| {
            // column subsets are lexicographic, so subset k omits column dim-1-k
            let omitted = dim - 1 - k;
            let m = minors[(0, k)].clone();
            if omitted.is_multiple_of(2) {
                (omitted, m)
            } else {
                (omitted, -m)
            }
        })
        .sorted_by_key(|(omitted, _)| *omitted)
        .map(|(_, m)| m)
        .collect();
    let g = normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Ok(None);
    }
    for x in &mut normal {
        *x = &*x / &g;
    }
    Ok(Some(normal.iter().map(to_i64).collect::<Result<_>>()?))
}

fn hull_facets(points: &[Vec<i64>], dim: usize) -> Result<Vec<Facet>> {
    let mut found: BTreeMap<Vec<usize>, Facet> = BTreeMap::new();
    for subset in (0..points.len()).combinations(dim) {
        let Some(normal) = hyperplane_normal(points, &subset, dim)? else {
            continue;
        };
        let offset = dot(&normal, &points[subset[0]]);
        let slacks: Vec<i128> = points.iter().map(|x| dot(&normal, x) - offset).collect();
        let (normal, offset) = if slacks.iter().all(|&s| s >= 0) {
            (normal, offset)
        } else if slacks.iter().all(|&s| s <= 0) {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            continue;
        };
        let on: Vec<usize> = (0..points.len()).filter(|&i| slacks[i] == 0).collect();
        if found.contains_key(&on) {
            continue;
        }
        let offset = i64::try_from(offset)
            .map_err(|_| Error::InvalidPolytope("facet offset exceeds 64 bits".into()))?;
        found.insert(
            on.clone(),
            Facet {
                normal,
                offset,
                vertices: on,
            },
        );
    }
    Ok(found.into_values().collect())
}

/// Polar dual `{y : <y, x> >= -1 for all x in p}` as a lattice polytope.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let mut vertices = Vec::with_capacity(p.facets.len());
    for f in &p.facets {
        let scale = -f.offset;
        if f.normal.iter().any(|x| x % scale != 0) {
            let coords = f
                .normal
                .iter()
                .map(|&x| {
                    let g = x.gcd(&scale);
                    if scale / g == 1 {
                        format!("{}", x / g)
                    } else {
                        format!("{}/{}", x / g, scale / g)
                    }
                })
                .join(",");
            return Err(Error::DualNotLattice(format!("({coords})")));
        }
        vertices.push(f.normal.iter().map(|x| x / scale).collect());
    }
    LatticePolytope::new(vertices)
}

/// Origin in the interior and every facet at lattice distance one from it.
pub fn is_reflexive(p: &LatticePolytope) -> bool {
    p.facets.iter().all(|f| f.offset == -1)
}

/// Every facet is a simplex, i.e. has exactly `d` vertices.
pub fn is_facet_simplicial(p: &LatticePolytope) -> bool {
    p.facets.iter().all(|f| f.vertices.len() == p.dim)
}

/// Every vertex lies on exactly `d` facets (the polar dual is
/// facet-simplicial). Decided combinatorially, so it also makes sense when
/// the dual is not a lattice polytope.
pub fn is_vertex_simplicial(p: &LatticePolytope) -> bool {
    (0..p.vertices.len())
        .all(|i| p.facets.iter().filter(|f| f.vertices.contains(&i)).count() == p.dim)
}

/// Index of a face within its [`FaceLattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceId(pub usize);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A proper face of a facet-simplicial polytope, i.e. a simplex on the
/// listed vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains(&self, other: &Face) -> bool {
        other
            .vertices
            .iter()
            .all(|v| self.vertices.binary_search(v).is_ok())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.vertices.iter().join(","))
    }
}

/// Codimension-one incidence `face ⊂ coface` with its orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub face: FaceId,
    pub coface: FaceId,
    pub sign: i8,
}

/// All proper faces of a facet-simplicial polytope.
///
/// Faces are ordered by dimension and then lexicographically by vertex
/// tuple. A face `F` obtained from `F'` by dropping the `i`-th vertex
/// (0-based, sorted) has sign `(-1)^i`.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    ambient_dim: usize,
    faces: Vec<Face>,
    dim_starts: Vec<usize>,
    index: HashMap<Vec<usize>, FaceId>,
    incidences: Vec<Incidence>,
    boundary: Vec<Vec<(FaceId, i8)>>,
    cofaces: Vec<Vec<FaceId>>,
}

impl FaceLattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.0]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).map(FaceId)
    }

    /// Face ids of the given dimension, in lattice order.
    pub fn ids_of_dim(&self, dim: usize) -> impl Iterator<Item = FaceId> {
        let start = self
            .dim_starts
            .get(dim)
            .copied()
            .unwrap_or(self.faces.len());
        let end = self
            .dim_starts
            .get(dim + 1)
            .copied()
            .unwrap_or(self.faces.len());
        (start..end).map(FaceId)
    }

    /// Number of faces in each dimension `0..d`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .map(|k| self.ids_of_dim(k).count())
            .collect()
    }

    pub fn find(&self, vertices: &[usize]) -> Option<FaceId> {
        self.index
            .get(&Face::new(vertices.to_vec()).vertices)
            .copied()
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    /// Codimension-one subfaces with signs.
    pub fn boundary(&self, id: FaceId) -> &[(FaceId, i8)] {
        &self.boundary[id.0]
    }

    /// Codimension-one cofaces.
    pub fn cofaces(&self, id: FaceId) -> &[FaceId] {
        &self.cofaces[id.0]
    }

    pub fn sign(&self, face: FaceId, coface: FaceId) -> Option<i8> {
        self.boundary[coface.0]
            .iter()
            .find(|(f, _)| *f == face)
            .map(|&(_, s)| s)
    }

    /// All faces containing `id`, including itself, in lattice order.
    pub fn star(&self, id: FaceId) -> Vec<FaceId> {
        let face = self.face(id);
        self.ids()
            .filter(|&g| self.face(g).contains(face))
            .collect()
    }
}

/// Builds the face lattice of a reflexive facet-simplicial polytope.
pub fn enumerate_faces(p: &LatticePolytope) -> Result<FaceLattice> {
    if !is_reflexive(p) {
        return Err(Error::NotReflexive);
    }
    if !is_facet_simplicial(p) {
        return Err(Error::NotFacetSimplicial);
    }
    let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for facet in &p.facets {
        for k in 1..=facet.vertices.len() {
            for sub in facet.vertices.iter().copied().combinations(k) {
                all.insert((k - 1, sub));
            }
        }
    }
    let faces: Vec<Face> = all.into_iter().map(|(_, v)| Face { vertices: v }).collect();
    let index: HashMap<Vec<usize>, FaceId> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.vertices.clone(), FaceId(i)))
        .collect();
    let mut dim_starts = Vec::with_capacity(p.dim);
    for k in 0..p.dim {
        dim_starts.push(
            faces
                .iter()
                .position(|f| f.dim() >= k)
                .unwrap_or(faces.len()),
        );
    }

    let mut incidences = Vec::new();
    let mut boundary = vec![Vec::new(); faces.len()];
    let mut cofaces = vec![Vec::new(); faces.len()];
    for (j, coface) in faces.iter().enumerate() {
        if coface.vertices.len() < 2 {
            continue;
        }
        for omit in 0..coface.vertices.len() {
            let mut sub = coface.vertices.clone();
            sub.remove(omit);
            let face = index[&sub];
            let sign = if omit % 2 == 0 { 1 } else { -1 };
            incidences.push(Incidence {
                face,
                coface: FaceId(j),
                sign,
            });
            boundary[j].push((face, sign));
            cofaces[face.0].push(FaceId(j));
        }
    }
    for c in &mut cofaces {
        c.sort_unstable();
    }
    Ok(FaceLattice {
        ambient_dim: p.dim,
        faces,
        dim_starts,
        index,
        incidences,
        boundary,
        cofaces,
    })
}

/// Lattice points of `p` as `(interior, boundary)`, by bounding-box
/// enumeration.
pub fn lattice_points(p: &LatticePolytope) -> (u64, u64) {
    let lo: Vec<i64> = (0..p.dim)
        .map(|c| p.vertices.iter().map(|v| v[c]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..p.dim)
        .map(|c| p.vertices.iter().map(|v| v[c]).max().unwrap())
        .collect();
    let (mut interior, mut boundary) = (0, 0);
    let mut x = lo.clone();
    loop {
        let slacks: Vec<i128> = p.facets.iter().map(|f| f.slack(&x)).collect();
        if slacks.iter().all(|&s| s >= 0) {
            if slacks.iter().all(|&s| s > 0) {
                interior += 1;
            } else {
                boundary += 1;
            }
        }
        // odometer step
        let mut c = 0;
        loop {
            if c == p.dim {
                return (interior, boundary);
            }
            if x[c] < hi[c] {
                x[c] += 1;
                break;
            }
            x[c] = lo[c];
            c += 1;
        }
    }
}

/// `d!` times the Euclidean volume, from a pulling triangulation.
pub fn normalized_volume(p: &LatticePolytope) -> BigInt {
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let facet_sets: Vec<Vec<usize>> = p.facets.iter().map(|f| f.vertices.clone()).collect();
    pulling_triangulation(&p.vertices, &facet_sets, &all, p.dim)
        .iter()
        .map(|simplex| simplex_volume(&p.vertices, simplex))
        .sum()
}

/// Simplices (as vertex index lists) of a pulling triangulation of the face
/// spanned by `face`, which has dimension `dim`.
fn pulling_triangulation(
    points: &[Vec<i64>],
    facets: &[Vec<usize>],
    face: &[usize],
    dim: usize,
) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let subfaces: BTreeSet<Vec<usize>> = facets
        .iter()
        .map(|g| {
            face.iter()
                .copied()
                .filter(|v| g.binary_search(v).is_ok())
                .collect::<Vec<_>>()
        })
        .filter(|t| t.len() >= dim && t.len() < face.len() && !t.contains(&apex))
        .filter(|t| affine_dimension(points, t) == dim - 1)
        .collect();
    let mut out = Vec::new();
    for sub in subfaces {
        for mut simplex in pulling_triangulation(points, facets, &sub, dim - 1) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

fn simplex_volume(points: &[Vec<i64>], simplex: &[usize]) -> BigInt {
    let base = &points[simplex[0]];
    let rows: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    IntMatrix::from_rows(&rows)
        .determinant()
        .expect("simplex edge matrix is square")
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn big_triangle() -> LatticePolytope {
        poly(&[&[2, -1], &[-1, 2], &[-1, -1]])
    }

    fn octahedron() -> LatticePolytope {
        poly(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ])
    }

    fn cube() -> LatticePolytope {
        let v: Vec<Vec<i64>> = (0..8)
            .map(|m| {
                (0..3)
                    .map(|b| if m >> b & 1 == 1 { 1 } else { -1 })
                    .collect()
            })
            .collect();
        LatticePolytope::new(v).unwrap()
    }

    /// Brute-force polar dual: intersect `d`-subsets of the half-spaces
    /// `<y, v> >= -1` over the rationals and keep the feasible points.
    fn halfspace_dual_oracle(p: &LatticePolytope) -> BTreeSet<Vec<i64>> {
        use crate::exactla::solve_exact;
        let d = p.dim();
        let mut out = BTreeSet::new();
        for sub in (0..p.vertices().len()).combinations(d) {
            let a = p.vertex_matrix(&sub);
            let b = IntMatrix::from_rows(&vec![vec![-1i64]; d]);
            let Ok(y) = solve_exact(&a, &b) else { continue };
            let y = y.column(0);
            let feasible = p.vertices().iter().all(|v| {
                let s: num_rational::BigRational =
                    v.iter().zip(&y).map(|(&c, yi)| yi * BigInt::from(c)).sum();
                s >= num_rational::BigRational::from_integer((-1).into())
            });
            if feasible {
                assert!(y.iter().all(|c| c.is_integer()));
                out.insert(y.iter().map(|c| c.to_integer().to_i64().unwrap()).collect());
            }
        }
        out
    }

    #[test]
    fn dual_of_big_triangle() {
        let dual = polar_dual(&big_triangle()).unwrap();
        let expected = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(dual.same_vertex_set(&expected));
        let oracle = halfspace_dual_oracle(&big_triangle());
        assert_eq!(oracle, dual.vertices().iter().cloned().collect());
    }

    #[test]
    fn segment_is_self_dual() {
        let s = poly(&[&[-1], &[1]]);
        assert!(polar_dual(&s).unwrap().same_vertex_set(&s));
    }

    #[test]
    fn octahedron_dual_is_cube() {
        let dual = polar_dual(&octahedron()).unwrap();
        assert!(dual.same_vertex_set(&cube()));
        assert_eq!(
            halfspace_dual_oracle(&octahedron()),
            dual.vertices().iter().cloned().collect()
        );
    }

    #[test]
    fn dual_errors() {
        let t = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(polar_dual(&t), Err(Error::OriginNotInterior));
        // the facet x = 2 dualizes to (-1/2, 0)
        let r = poly(&[&[2, 1], &[2, -1], &[-1, 1], &[-1, -1]]);
        match polar_dual(&r) {
            Err(Error::DualNotLattice(v)) => assert!(v.contains("1/2"), "{v}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validity_checks() {
        assert!(is_reflexive(&big_triangle()));
        assert!(is_facet_simplicial(&big_triangle()));
        assert!(!is_reflexive(&poly(&[&[0, 0], &[1, 0], &[0, 1]])));
        assert!(!is_facet_simplicial(&cube()));
        assert!(is_vertex_simplicial(&cube()));
        assert!(is_facet_simplicial(&octahedron()));
        assert!(!is_vertex_simplicial(&octahedron()));
    }

    #[test]
    fn rejects_bad_vertex_lists() {
        let dup = LatticePolytope::new(vec![vec![1, 0], vec![1, 0], vec![0, 1]]);
        assert!(matches!(dup, Err(Error::InvalidPolytope(_))));
        let flat = LatticePolytope::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert!(matches!(flat, Err(Error::InvalidPolytope(_))));
        let interior = LatticePolytope::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1], vec![0, 0]]);
        assert!(matches!(interior, Err(Error::InvalidPolytope(_))));
        let edge_point =
            LatticePolytope::new(vec![vec![2, -1], vec![-1, 2], vec![-1, -1], vec![-1, 0]]);
        assert!(matches!(edge_point, Err(Error::InvalidPolytope(_))));
    }

    #[test]
    fn f_vectors() {
        assert_eq!(
            enumerate_faces(&big_triangle()).unwrap().f_vector(),
            vec![3, 3]
        );
        assert_eq!(
            enumerate_faces(&octahedron()).unwrap().f_vector(),
            vec![6, 12, 8]
        );
        assert_eq!(
            enumerate_faces(&poly(&[&[-1], &[1]])).unwrap().f_vector(),
            vec![2]
        );
        assert!(matches!(
            enumerate_faces(&cube()),
            Err(Error::NotFacetSimplicial)
        ));
        assert!(matches!(
            enumerate_faces(&poly(&[&[0, 0], &[1, 0], &[0, 1]])),
            Err(Error::NotReflexive)
        ));
    }

    #[test]
    fn octahedron_facets_match_brute_force() {
        // oracle: sign patterns. each octant gives one facet through ±e1, ±e2, ±e3
        let p = octahedron();
        let lattice = enumerate_faces(&p).unwrap();
        let facets: BTreeSet<Vec<usize>> = lattice
            .ids_of_dim(2)
            .map(|id| lattice.face(id).vertices.clone())
            .collect();
        let mut expected = BTreeSet::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    expected.insert(vec![a, b, c]);
                }
            }
        }
        assert_eq!(facets, expected);
    }

    #[test]
    fn sign_coherence() {
        for p in [big_triangle(), octahedron()] {
            let lattice = enumerate_faces(&p).unwrap();
            for top in lattice.ids() {
                let mut sums: HashMap<FaceId, i32> = HashMap::new();
                for &(mid, s1) in lattice.boundary(top) {
                    for &(low, s2) in lattice.boundary(mid) {
                        *sums.entry(low).or_default() += i32::from(s1) * i32::from(s2);
                    }
                }
                assert!(sums.values().all(|&s| s == 0));
            }
        }
    }

    #[test]
    fn counts_and_volumes() {
        assert_eq!(lattice_points(&big_triangle()), (1, 9));
        assert_eq!(normalized_volume(&big_triangle()), BigInt::from(9));
        let small = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(lattice_points(&small), (1, 3));
        assert_eq!(normalized_volume(&small), BigInt::from(3));
        assert_eq!(normalized_volume(&octahedron()), BigInt::from(8));
        assert_eq!(normalized_volume(&cube()), BigInt::from(48));
        assert_eq!(lattice_points(&cube()), (1, 26));
        assert_eq!(normalized_volume(&poly(&[&[-1], &[1]])), BigInt::from(2));
    }

    #[test]
    fn shoelace_oracle_on_polygons() {
        let polygons: Vec<Vec<[i64; 2]>> = vec![
            vec![[-1, -1], [2, -1], [0, 1], [-1, 1]],
            vec![[-1, 0], [0, -1], [1, -1], [1, 0], [0, 1], [-1, 1]],
            vec![[-1, -1], [3, -1], [-1, 1]],
        ];
        for ccw in polygons {
            let twice_area: i64 = (0..ccw.len())
                .map(|i| {
                    let (a, b) = (ccw[i], ccw[(i + 1) % ccw.len()]);
                    a[0] * b[1] - a[1] * b[0]
                })
                .sum();
            let p = LatticePolytope::new(ccw.iter().map(|x| x.to_vec()).collect()).unwrap();
            assert_eq!(normalized_volume(&p), BigInt::from(twice_area.abs()));
        }
    }

    #[test]
    fn star_of_vertex() {
        let lattice = enumerate_faces(&octahedron()).unwrap();
        let v = lattice.find(&[0]).unwrap();
        assert_eq!(lattice.star(v).len(), 9);
        let t = enumerate_faces(&big_triangle()).unwrap();
        let v = t.find(&[2]).unwrap();
        assert_eq!(t.star(v).len(), 3);
    }
}
