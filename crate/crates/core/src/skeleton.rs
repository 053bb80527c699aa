//! Combinatorial model of the skeleton attached to a facet-simplicial
//! reflexive polytope.
//!
//! Each proper face `F` with vertex set `V_F` carries the compact group
//! `G_F = {m ∈ M_R : m(v) ∈ Z for v ∈ V_F} / M`. Its identity component is
//! a torus with `H_1 = M_F = V_F^⊥ ∩ M`, and its component group `P_F` is
//! read off the Smith normal form `S = U A V` of the vertex matrix `A`
//! (rows are vertices): for `m ∈ G_F`, the integer vector `U A m` reduced
//! modulo the invariant factors is the component of `m`.
//!
//! For `F ⊂ F'` we have `G_{F'} ⊂ G_F`, and that inclusion is recorded as an
//! [`AttachingMap`]: a lattice map `M_{F'} -> M_F` plus the induced map on
//! components.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{
    integer_kernel, smith_normal_form, solve_exact, IntMatrix, SmithDecomposition,
};
use crate::polytope::{enumerate_faces, Face, FaceId, FaceLattice, LatticePolytope};

/// Stacky fan of the polytope: one simplicial cone per face, and the
/// vertices themselves as the chosen ray generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackyFan {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    /// Each cone lists indices into `rays`.
    pub cones: Vec<Vec<usize>>,
}

/// The group `G_F` of one face, in Smith coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGroupData {
    pub face: FaceId,
    pub vertices: Vec<usize>,
    /// `|J| x d`, one row per vertex of the face.
    pub vertex_matrix: IntMatrix,
    pub smith: SmithDecomposition,
    /// Dimension `s = d - |J|` of the identity component.
    pub torus_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    /// `|P_F|`, the product of the invariant factors.
    pub component_order: usize,
    /// `d x s`; columns form a ℤ-basis of `M_F`.
    pub mf_basis: IntMatrix,
    // positions of the invariant factors > 1, and those factors
    nontrivial: Vec<(usize, usize)>,
}

impl FaceGroupData {
    fn compute(p: &LatticePolytope, face: FaceId, vertices: &[usize]) -> Result<Self> {
        let vertex_matrix = p.vertex_matrix(vertices);
        let smith = smith_normal_form(&vertex_matrix);
        if smith.rank() != vertices.len() {
            return Err(Error::Internal(format!(
                "vertex matrix of face {vertices:?} is not of full row rank"
            )));
        }
        let invariant_factors = smith.invariant_factors.clone();
        let mut nontrivial = Vec::new();
        let mut order = 1usize;
        for (i, f) in invariant_factors.iter().enumerate() {
            let f = f.to_usize().ok_or_else(|| {
                Error::Internal(format!("invariant factor {f} too large to enumerate"))
            })?;
            if f > 1 {
                nontrivial.push((i, f));
            }
            order = order
                .checked_mul(f)
                .ok_or_else(|| Error::Internal("component group too large".into()))?;
        }
        let mf_basis = integer_kernel(&vertex_matrix);
        Ok(Self {
            face,
            vertices: vertices.to_vec(),
            torus_rank: p.dim() - vertices.len(),
            vertex_matrix,
            smith,
            invariant_factors,
            component_order: order,
            mf_basis,
            nontrivial,
        })
    }

    /// Invariant factors greater than one; `P_F` is the product of the
    /// corresponding cyclic groups.
    pub fn component_moduli(&self) -> Vec<usize> {
        self.nontrivial.iter().map(|&(_, f)| f).collect()
    }

    /// All elements of `P_F` in lexicographic tuple order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        (0..self.component_order)
            .map(|i| self.component_tuple(i))
            .collect()
    }

    /// Tuple of the `index`-th element of `P_F` (first coordinate most
    /// significant).
    pub fn component_tuple(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.nontrivial.len()];
        for (slot, &(_, f)) in tuple.iter_mut().zip(&self.nontrivial).rev() {
            *slot = index % f;
            index /= f;
        }
        tuple
    }

    pub fn component_index(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.nontrivial)
            .fold(0, |acc, (&k, &(_, f))| acc * f + k % f)
    }

    /// Which component of `G_F` the point `m ∈ M_R` lies in.
    ///
    /// Fails if `m` does not take integer values on the vertices of `F`.
    pub fn component_of(&self, m: &[BigRational]) -> Result<Vec<usize>> {
        let values = self.vertex_matrix.apply_rational(m);
        if values.iter().any(|x| !x.is_integer()) {
            return Err(Error::NonIntegral(format!(
                "point is not in G_F for face {:?}",
                self.vertices
            )));
        }
        let values: Vec<BigInt> = values.iter().map(BigRational::to_integer).collect();
        let coords = self.smith.u.apply(&values);
        Ok(self
            .nontrivial
            .iter()
            .map(|&(i, f)| {
                let k = coords[i].mod_floor(&BigInt::from(f));
                k.to_usize().expect("residue is below the modulus")
            })
            .collect())
    }

    /// A point of `M_R` in the given component: `V y` with
    /// `y_i = k_i / s_ii` on the nontrivial coordinates and zero elsewhere.
    pub fn lift(&self, tuple: &[usize]) -> Vec<BigRational> {
        let d = self.vertex_matrix.cols();
        let mut y = vec![BigRational::zero(); d];
        for (&k, &(i, f)) in tuple.iter().zip(&self.nontrivial) {
            y[i] = BigRational::new(BigInt::from(k), BigInt::from(f));
        }
        (0..d)
            .map(|row| {
                (0..d).fold(BigRational::zero(), |acc, c| {
                    acc + BigRational::from_integer(self.smith.v[(row, c)].clone()) * &y[c]
                })
            })
            .collect()
    }
}

/// The inclusion `G_{F'} ⊂ G_F` for faces `F ⊂ F'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachingMap {
    pub face: FaceId,
    pub coface: FaceId,
    /// `s x s'` with `mf_basis(F) * torus_map == mf_basis(F')`.
    pub torus_map: IntMatrix,
    /// Image in `P_F` (by component index) of each element of `P_{F'}`.
    pub component_map: Vec<usize>,
}

impl AttachingMap {
    /// `self` after `inner`, where `inner: G_{F''} -> G_{F'}` and
    /// `self: G_{F'} -> G_F`.
    pub fn compose(&self, inner: &AttachingMap) -> Result<AttachingMap> {
        if inner.face != self.coface {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose maps through {} and {}",
                inner.face, self.coface
            )));
        }
        Ok(AttachingMap {
            face: self.face,
            coface: inner.coface,
            torus_map: self.torus_map.checked_mul(&inner.torus_map)?,
            component_map: inner
                .component_map
                .iter()
                .map(|&k| self.component_map[k])
                .collect(),
        })
    }
}

/// Faces, their groups and the maps between them.
#[derive(Clone, Debug)]
pub struct Skeleton {
    polytope: LatticePolytope,
    lattice: FaceLattice,
    groups: Vec<FaceGroupData>,
}

impl Skeleton {
    pub fn new(p: &LatticePolytope) -> Result<Self> {
        let lattice = enumerate_faces(p)?;
        Self::with_lattice(p, lattice)
    }

    pub fn with_lattice(p: &LatticePolytope, lattice: FaceLattice) -> Result<Self> {
        let groups = lattice
            .ids()
            .map(|id| FaceGroupData::compute(p, id, &lattice.face(id).vertices))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            polytope: p.clone(),
            lattice,
            groups,
        })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn group(&self, id: FaceId) -> &FaceGroupData {
        &self.groups[id.0]
    }

    pub fn groups(&self) -> &[FaceGroupData] {
        &self.groups
    }

    /// Dimension `n = d - 1` of the skeleton.
    pub fn dim(&self) -> usize {
        self.polytope.dim() - 1
    }

    pub fn fan(&self) -> StackyFan {
        StackyFan {
            rank: self.polytope.dim(),
            rays: self.polytope.vertices().to_vec(),
            cones: self
                .lattice
                .faces()
                .iter()
                .map(|f| f.vertices.clone())
                .collect(),
        }
    }

    /// Replaces the chosen basis of `M_F` for one face.
    ///
    /// The new columns must lie in `M_F` and span it over ℤ.
    pub fn with_mf_basis(mut self, face: FaceId, basis: IntMatrix) -> Result<Self> {
        let group = &self.groups[face.0];
        if basis.rows() != group.mf_basis.rows() || basis.cols() != group.mf_basis.cols() {
            return Err(Error::DimensionMismatch(format!(
                "basis of M_F must be {}x{}",
                group.mf_basis.rows(),
                group.mf_basis.cols()
            )));
        }
        if !group.vertex_matrix.checked_mul(&basis)?.is_zero() {
            return Err(Error::InvalidPolytope(
                "basis vectors are not in M_F".into(),
            ));
        }
        // same lattice iff the change of basis is unimodular
        let change = solve_exact(&group.mf_basis, &basis)?.to_integral()?;
        if change.determinant()?.abs() != BigInt::one() {
            return Err(Error::InvalidPolytope("basis does not span M_F".into()));
        }
        self.groups[face.0].mf_basis = basis;
        Ok(self)
    }

    /// The inclusion `G_{F'} ⊂ G_F` for any `F ⊆ F'`.
    pub fn inclusion_map(&self, face: FaceId, coface: FaceId) -> Result<AttachingMap> {
        let (f, g) = (self.lattice.face(face), self.lattice.face(coface));
        if !g.contains(f) {
            return Err(Error::NotIncident {
                face: f.vertices.clone(),
                coface: g.vertices.clone(),
            });
        }
        let (small, big) = (&self.groups[face.0], &self.groups[coface.0]);
        let torus_map = solve_exact(&small.mf_basis, &big.mf_basis)?.to_integral()?;
        let component_map = (0..big.component_order)
            .map(|k| {
                let m = big.lift(&big.component_tuple(k));
                small.component_of(&m).map(|t| small.component_index(&t))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AttachingMap {
            face,
            coface,
            torus_map,
            component_map,
        })
    }

    /// [`Self::inclusion_map`] restricted to codimension-one pairs.
    pub fn attaching_map(&self, face: FaceId, coface: FaceId) -> Result<AttachingMap> {
        let (f, g) = (self.lattice.face(face), self.lattice.face(coface));
        if g.vertices.len() != f.vertices.len() + 1 || !g.contains(f) {
            return Err(Error::NotIncident {
                face: f.vertices.clone(),
                coface: g.vertices.clone(),
            });
        }
        self.inclusion_map(face, coface)
    }

    /// One stratum `G_F x F°` per proper face.
    pub fn strata(&self) -> Vec<(&Face, &FaceGroupData)> {
        self.lattice.faces().iter().zip(&self.groups).collect()
    }

    /// Faces `F' ⊇ F`: the strata in the chart indexed by the cone of `F`.
    pub fn chart(&self, face: FaceId) -> Vec<FaceId> {
        self.lattice.star(face)
    }

    fn resolve(&self, face: &Face) -> Result<FaceId> {
        self.lattice
            .find(&face.vertices)
            .ok_or_else(|| Error::UnknownFace(face.vertices.clone()))
    }
}

impl fmt::Display for FaceGroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torus = match self.torus_rank {
            0 => "pt".to_string(),
            1 => "S^1".to_string(),
            s => format!("T^{s}"),
        };
        let moduli = self.component_moduli();
        if moduli.is_empty() {
            write!(f, "{torus}")
        } else {
            let parts: Vec<String> = moduli.iter().map(|m| format!("Z/{m}")).collect();
            write!(f, "{torus} x {}", parts.join(" x "))
        }
    }
}

/// Group data of a single face of `p`.
pub fn face_group(p: &LatticePolytope, face: &Face) -> Result<FaceGroupData> {
    let lattice = enumerate_faces(p)?;
    let id = lattice
        .find(&face.vertices)
        .ok_or_else(|| Error::UnknownFace(face.vertices.clone()))?;
    FaceGroupData::compute(p, id, &lattice.face(id).vertices)
}

/// Attaching map for a codimension-one pair of faces of `p`.
pub fn attaching_map(p: &LatticePolytope, face: &Face, coface: &Face) -> Result<AttachingMap> {
    let skeleton = Skeleton::new(p)?;
    let (a, b) = (skeleton.resolve(face)?, skeleton.resolve(coface)?);
    skeleton.attaching_map(a, b)
}

/// All strata of the skeleton of `p`.
pub fn strata(p: &LatticePolytope) -> Result<Vec<(Face, FaceGroupData)>> {
    let skeleton = Skeleton::new(p)?;
    Ok(skeleton
        .strata()
        .into_iter()
        .map(|(f, g)| (f.clone(), g.clone()))
        .collect())
}

/// Faces in the chart of `face`.
pub fn chart(p: &LatticePolytope, face: &Face) -> Result<Vec<Face>> {
    let lattice = enumerate_faces(p)?;
    let id = lattice
        .find(&face.vertices)
        .ok_or_else(|| Error::UnknownFace(face.vertices.clone()))?;
    Ok(lattice
        .star(id)
        .into_iter()
        .map(|g| lattice.face(g).clone())
        .collect())
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

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn vertex_group_is_a_circle() {
        let g = face_group(&big_triangle(), &Face::new(vec![2])).unwrap();
        assert_eq!(g.torus_rank, 1);
        assert_eq!(g.invariant_factors, ints(&[1]));
        assert_eq!(g.component_order, 1);
        assert!((&g.vertex_matrix * &g.mf_basis).is_zero());
        assert_eq!(g.to_string(), "S^1");
    }

    #[test]
    fn edge_group_is_z3() {
        let g = face_group(&big_triangle(), &Face::new(vec![0, 2])).unwrap();
        assert_eq!(g.torus_rank, 0);
        assert_eq!(g.invariant_factors, ints(&[1, 3]));
        assert_eq!(g.component_order, 3);
        assert_eq!(g.to_string(), "pt x Z/3");
        // the three points (k/3, 1 - k/3) land in the three components
        let mut seen: Vec<Vec<usize>> = (0..3)
            .map(|k| {
                let m = [
                    BigRational::new(k.into(), 3.into()),
                    BigRational::new((3 - k).into(), 3.into()),
                ];
                g.component_of(&m).unwrap()
            })
            .collect();
        seen.sort();
        assert_eq!(seen, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn octahedron_facet_group_is_trivial() {
        let g = face_group(&octahedron(), &Face::new(vec![0, 2, 4])).unwrap();
        assert_eq!(g.torus_rank, 0);
        assert_eq!(g.component_order, 1);
    }

    #[test]
    fn points_on_the_circle() {
        let sk = Skeleton::new(&big_triangle()).unwrap();
        let lat = sk.lattice();
        let v = lat.find(&[2]).unwrap();
        let e = lat.find(&[0, 2]).unwrap();
        let map = sk.attaching_map(v, e).unwrap();
        assert_eq!(map.torus_map.rows(), 1);
        assert_eq!(map.torus_map.cols(), 0);
        assert_eq!(map.component_map, vec![0, 0, 0]);
    }

    #[test]
    fn attaching_map_rejects_non_incident_pairs() {
        let sk = Skeleton::new(&big_triangle()).unwrap();
        let lat = sk.lattice();
        let v = lat.find(&[1]).unwrap();
        let e = lat.find(&[0, 2]).unwrap();
        assert!(matches!(
            sk.attaching_map(v, e),
            Err(Error::NotIncident { .. })
        ));
        let o = Skeleton::new(&octahedron()).unwrap();
        let v = o.lattice().find(&[0]).unwrap();
        let f = o.lattice().find(&[0, 2, 4]).unwrap();
        assert!(o.attaching_map(v, f).is_err());
        assert!(o.inclusion_map(v, f).is_ok());
    }

    #[test]
    fn strata_counts() {
        let s = strata(&big_triangle()).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.iter().filter(|(_, g)| g.torus_rank == 1).count(), 3);
        assert_eq!(s.iter().filter(|(_, g)| g.component_order == 3).count(), 3);
        let seg = strata(&poly(&[&[-1], &[1]])).unwrap();
        assert_eq!(seg.len(), 2);
        assert!(seg
            .iter()
            .all(|(_, g)| g.torus_rank == 0 && g.component_order == 1));
        assert_eq!(strata(&octahedron()).unwrap().len(), 26);
    }

    #[test]
    fn charts() {
        let t = big_triangle();
        assert_eq!(chart(&t, &Face::new(vec![0])).unwrap().len(), 3);
        assert_eq!(
            chart(&t, &Face::new(vec![0, 1])).unwrap(),
            vec![Face::new(vec![0, 1])]
        );
        assert_eq!(chart(&octahedron(), &Face::new(vec![0])).unwrap().len(), 9);
        assert!(matches!(
            chart(&t, &Face::new(vec![0, 1, 2])),
            Err(Error::UnknownFace(_))
        ));
    }

    #[test]
    fn functoriality_on_octahedron_flag() {
        let sk = Skeleton::new(&octahedron()).unwrap();
        let lat = sk.lattice();
        let (v, e, f) = (
            lat.find(&[0]).unwrap(),
            lat.find(&[0, 2]).unwrap(),
            lat.find(&[0, 2, 4]).unwrap(),
        );
        let composite = sk
            .attaching_map(v, e)
            .unwrap()
            .compose(&sk.attaching_map(e, f).unwrap())
            .unwrap();
        assert_eq!(composite, sk.inclusion_map(v, f).unwrap());
    }

    #[test]
    fn basis_change_is_validated() {
        let sk = Skeleton::new(&octahedron()).unwrap();
        let v = sk.lattice().find(&[0]).unwrap();
        let b = sk.group(v).mf_basis.clone();
        // doubling a column leaves a sublattice of index 2
        let mut doubled = b.clone();
        for i in 0..doubled.rows() {
            doubled[(i, 0)] = &doubled[(i, 0)] * 2;
        }
        assert!(sk.clone().with_mf_basis(v, doubled).is_err());
        let swapped = b.select_columns(&[1, 0]);
        assert!(sk.with_mf_basis(v, swapped).is_ok());
    }

    #[test]
    fn facet_orders_sum_to_volume() {
        use crate::polytope::normalized_volume;
        for p in [big_triangle(), octahedron()] {
            let sk = Skeleton::new(&p).unwrap();
            let top = p.dim() - 1;
            let total: usize = sk
                .lattice()
                .ids_of_dim(top)
                .map(|id| sk.group(id).component_order)
                .sum();
            assert_eq!(BigInt::from(total), normalized_volume(&p));
        }
    }
}
