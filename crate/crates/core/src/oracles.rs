//! Independent checks on the computed homology.
//!
//! None of these go through the skeleton or the chain complex: the curve
//! Betti numbers come from lattice point counts, and the Euler
//! characteristic from the normalized volume.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{complex_of, homology_q, homology_z, BigradedComplex, HomologyReport};
use crate::polytope::{is_reflexive, lattice_points, normalized_volume, LatticePolytope};
use crate::skeleton::Skeleton;

/// Betti numbers `(b0, b1)` of a generic affine curve whose Newton polygon
/// is the reflexive polygon `p`: genus = interior points (here 1), one
/// puncture per boundary lattice segment.
pub fn dk_curve_betti(p: &LatticePolytope) -> Result<(u64, u64)> {
    if p.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: p.dim(),
        });
    }
    if !is_reflexive(p) {
        return Err(Error::NotReflexive);
    }
    let (interior, boundary) = lattice_points(p);
    Ok((1, 2 * interior + boundary - 1))
}

/// Euler characteristic of the generic affine hypersurface with Newton
/// polytope `p`: `(-1)^(d-1)` times the normalized volume.
pub fn bkk_euler(p: &LatticePolytope) -> Result<i64> {
    let vol = normalized_volume(p)
        .to_i64()
        .ok_or_else(|| Error::Internal("normalized volume exceeds 64 bits".into()))?;
    Ok(if (p.dim() - 1).is_multiple_of(2) {
        vol
    } else {
        -vol
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            name: name.to_string(),
            passed: expected == computed,
            expected,
            computed,
        }
    }

    fn failed(name: &str, expected: impl ToString, error: &Error) -> Self {
        Self {
            name: name.to_string(),
            expected: expected.to_string(),
            computed: format!("error: {error}"),
            passed: false,
        }
    }
}

/// Outcome of [`verify`]. `passed` is true iff every entry of `checks`
/// passed; `expectations` are reported but do not affect it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub polytope_id: String,
    pub checks: Vec<Check>,
    pub expectations: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    fn finish(polytope_id: String, checks: Vec<Check>, expectations: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            polytope_id,
            checks,
            expectations,
            passed,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }
}

/// Builds the complex for `p` and runs every check on it.
pub fn verify(polytope_id: impl Into<String>, p: &LatticePolytope) -> VerificationReport {
    let id = polytope_id.into();
    let built = Skeleton::new(p).and_then(|s| complex_of(&s));
    let complex = match built {
        Ok(c) => c,
        Err(e) => {
            return VerificationReport::finish(
                id,
                vec![Check::failed("construction", "complex", &e)],
                Vec::new(),
            )
        }
    };
    match homology_q(&complex) {
        Ok(q) => verify_computed(id, p, &complex, &q),
        Err(e) => VerificationReport::finish(
            id,
            vec![Check::failed("boundary_squared_zero", "0", &e)],
            Vec::new(),
        ),
    }
}

/// Runs the checks against an already computed complex and ℚ report.
pub fn verify_computed(
    polytope_id: String,
    p: &LatticePolytope,
    complex: &BigradedComplex,
    q: &HomologyReport,
) -> VerificationReport {
    let mut checks = Vec::new();

    checks.push(match bkk_euler(p) {
        Ok(chi) => Check::new("euler_vs_volume", chi, q.euler),
        Err(e) => Check::failed("euler_vs_volume", "volume", &e),
    });

    let betti = q.betti.clone().unwrap_or_default();
    if p.dim() == 2 {
        checks.push(match dk_curve_betti(p) {
            Ok((b0, b1)) => Check::new("curve_betti", fmt_list(&[b0, b1]), fmt_list(&betti)),
            Err(e) => Check::failed("curve_betti", "betti", &e),
        });
    }

    checks.push(match complex.check_boundary_squared() {
        Ok(()) => Check::new("boundary_squared_zero", "0", "0"),
        Err(e) => Check::failed("boundary_squared_zero", "0", &e),
    });

    checks.push(match homology_z(complex) {
        Ok(z) => Check::new(
            "rational_vs_integral_ranks",
            format!("{:?}", q.e2_dims),
            format!("{:?}", z.e2_dims),
        ),
        Err(e) => Check::failed("rational_vs_integral_ranks", format!("{:?}", q.e2_dims), &e),
    });

    let mut expectations = Vec::new();
    if p.dim() >= 2 {
        let b0 = betti.first().copied().unwrap_or(0);
        expectations.push(Check::new("connected", 1, b0));
    }
    VerificationReport::finish(polytope_id, checks, expectations)
}

fn fmt_list<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn curve_formula() {
        assert_eq!(
            dk_curve_betti(&poly(&[&[2, -1], &[-1, 2], &[-1, -1]])).unwrap(),
            (1, 10)
        );
        assert_eq!(
            dk_curve_betti(&poly(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap(),
            (1, 4)
        );
        assert_eq!(
            dk_curve_betti(&poly(&[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]])).unwrap(),
            (1, 9)
        );
        assert!(matches!(
            dk_curve_betti(&poly(&[&[-1], &[1]])),
            Err(Error::WrongDimension {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn euler_from_volume() {
        assert_eq!(
            bkk_euler(&poly(&[&[2, -1], &[-1, 2], &[-1, -1]])).unwrap(),
            -9
        );
        assert_eq!(bkk_euler(&poly(&[&[-1], &[1]])).unwrap(), 2);
        let oct = poly(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        assert_eq!(bkk_euler(&oct).unwrap(), 8);
        let report = verify("octahedron", &oct);
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "euler_vs_volume" && c.passed));
    }

    #[test]
    fn big_triangle_passes() {
        let report = verify("p2-cubic", &poly(&[&[2, -1], &[-1, 2], &[-1, -1]]));
        assert!(report.passed, "{report:?}");
        assert_eq!(report.checks.len(), 4);
        assert!(report.expectations.iter().all(|c| c.passed));
    }

    #[test]
    fn invalid_input_is_recorded_not_raised() {
        let cube: Vec<Vec<i64>> = (0..8)
            .map(|m| {
                (0..3)
                    .map(|b| if m >> b & 1 == 1 { 1 } else { -1 })
                    .collect()
            })
            .collect();
        let report = verify("cube", &LatticePolytope::new(cube).unwrap());
        assert!(!report.passed);
        assert_eq!(report.checks[0].name, "construction");
    }
}
