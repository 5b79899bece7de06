//! Independent volume oracle: count lattice points in integer dilates of a
//! polytope and recover the leading coefficient of its Ehrhart
//! quasipolynomial, which equals the relative volume. Deliberately built on
//! nothing but membership tests and enumeration, so it cross-checks the
//! triangulation channel.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{gauss, lcm_list, solve_integer, Int, QVector, Rational};
use crate::polytope::{affine_lattice, Polytope};

/// Enumeration is capped at this dimension; the corpus never needs more.
pub const MAX_DIM: usize = 4;

/// Exact lattice-point count of the dilate tP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DilateCount {
    pub t: u64,
    pub count: u64,
}

/// Count |tP ∩ Z^n| by walking the affine lattice of the span inside the
/// coordinate box spanned by the dilated vertices.
pub fn count_dilate(p: &Polytope, t: u64) -> Result<DilateCount> {
    enumerate(p, t, false).map(|count| DilateCount { t, count })
}

/// Count lattice points in the relative interior of tP.
pub fn count_dilate_interior(p: &Polytope, t: u64) -> Result<DilateCount> {
    enumerate(p, t, true).map(|count| DilateCount { t, count })
}

fn enumerate(p: &Polytope, t: u64, strict: bool) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidInput("dilation factor must be positive".into()));
    }
    let d = p.dim();
    if d > MAX_DIM {
        return Err(Error::Unsupported(format!(
            "dilate counting is capped at dimension {MAX_DIM}, got {d}"
        )));
    }
    let t_rat = Rational::from_integer(Int::from(t));
    let scaled = p.hrep().scaled(&t_rat);

    // A lattice point of the scaled affine span, if any.
    let eq_rows: Vec<Vec<Int>> = scaled
        .equalities()
        .iter()
        .map(|(n, _)| n.coords().iter().map(|x| x.to_integer()).collect())
        .collect();
    let eq_rhs: Vec<Rational> = scaled.equalities().iter().map(|(_, b)| b.clone()).collect();
    let Some(anchor) = solve_integer(&eq_rows, &eq_rhs) else {
        return Ok(0);
    };
    let anchor = QVector::new(anchor.into_iter().map(Rational::from_integer).collect());

    if d == 0 {
        let inside = if strict {
            scaled.contains_relative_interior(&anchor)
        } else {
            scaled.contains(&anchor)
        };
        return Ok(u64::from(inside));
    }

    let basis = affine_lattice(p)
        .map(|l| l.basis)
        .unwrap_or_else(|_| crate::linalg::saturated_lattice_basis(p.direction_basis(), p.ambient_dim()));
    let basis_vectors = basis.basis_vectors();

    // Lattice-coordinate bounds from the dilated vertices.
    let mut lo = vec![Rational::zero(); d];
    let mut hi = vec![Rational::zero(); d];
    for (k, v) in p.vertices().iter().enumerate() {
        let shifted = &v.scale(&t_rat) - &anchor;
        let coords = basis
            .coordinates_of(&shifted)
            .expect("dilated vertex lies in the scaled affine span");
        for (j, c) in coords.into_iter().enumerate() {
            if k == 0 || c < lo[j] {
                lo[j] = c.clone();
            }
            if k == 0 || c > hi[j] {
                hi[j] = c;
            }
        }
    }
    let lo: Vec<Int> = lo.iter().map(Rational::ceil).map(|c| c.to_integer()).collect();
    let hi: Vec<Int> = hi.iter().map(Rational::floor).map(|c| c.to_integer()).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(0);
    }

    // Inequality values are updated incrementally along the lattice walk:
    // value_i(anchor + sum m_j b_j) = value_i(anchor) + sum m_j (n_i . b_j).
    let base: Vec<Rational> =
        scaled.inequalities().iter().map(|(normal, _)| normal.dot(&anchor)).collect();
    let rhs: Vec<Rational> = scaled.inequalities().iter().map(|(_, b)| b.clone()).collect();
    let steps: Vec<Vec<Rational>> = basis_vectors
        .iter()
        .map(|b| scaled.inequalities().iter().map(|(normal, _)| normal.dot(b)).collect())
        .collect();

    struct Walk<'a> {
        lo: &'a [Int],
        hi: &'a [Int],
        steps: &'a [Vec<Rational>],
        rhs: &'a [Rational],
        strict: bool,
        count: u64,
    }
    impl Walk<'_> {
        fn descend(&mut self, level: usize, values: &[Rational]) {
            let width = u64::try_from(&(&self.hi[level] - &self.lo[level]))
                .expect("lattice box width fits in u64");
            let mut current: Vec<Rational> = values
                .iter()
                .zip(&self.steps[level])
                .map(|(v, s)| v + s * Rational::from_integer(self.lo[level].clone()))
                .collect();
            for step in 0..=width {
                if level + 1 == self.steps.len() {
                    let inside = current
                        .iter()
                        .zip(self.rhs)
                        .all(|(v, b)| if self.strict { v < b } else { v <= b });
                    if inside {
                        self.count += 1;
                    }
                } else {
                    self.descend(level + 1, &current);
                }
                if step < width {
                    for (v, s) in current.iter_mut().zip(&self.steps[level]) {
                        *v += s;
                    }
                }
            }
        }
    }

    let mut walk = Walk { lo: &lo, hi: &hi, steps: &steps, rhs: &rhs, strict, count: 0 };
    walk.descend(0, &base);
    Ok(walk.count)
}

/// The lcm of the vertex-coordinate denominators: a period of the Ehrhart
/// quasipolynomial (not necessarily minimal, which is irrelevant for the
/// leading coefficient).
pub fn period(p: &Polytope) -> u64 {
    let denoms: Vec<u64> = p
        .vertices()
        .iter()
        .flat_map(|v| v.coords().iter().map(|x| u64::try_from(x.denom()).expect("small denominator")))
        .collect();
    lcm_list(&denoms)
}

/// Leading coefficient of the Ehrhart quasipolynomial, computed by
/// interpolating the degree-d polynomial through the counts at
/// t = p, 2p, ..., (d+1)p and verified against the count at (d+2)p.
/// Equals the relative volume.
pub fn leading_coefficient(p: &Polytope) -> Result<Rational> {
    let d = p.dim();
    let step = period(p);
    let samples: Vec<(u64, u64)> = (1..=d as u64 + 2)
        .map(|k| Ok((k * step, count_dilate(p, k * step)?.count)))
        .collect::<Result<_>>()?;
    let fit: Vec<(Rational, Rational)> = samples[..=d]
        .iter()
        .map(|&(t, c)| {
            (Rational::from_integer(Int::from(t)), Rational::from_integer(Int::from(c)))
        })
        .collect();
    let coeffs = interpolate(&fit);
    // consistency check one period further out
    let (t_check, c_check) = samples[d + 1];
    let predicted = evaluate(&coeffs, &Rational::from_integer(Int::from(t_check)));
    if predicted != Rational::from_integer(Int::from(c_check)) {
        return Err(Error::InterpolationMismatch {
            degree: d,
            detail: format!(
                "count at t={t_check} is {c_check}, polynomial predicts {predicted}"
            ),
        });
    }
    Ok(coeffs[d].clone())
}

/// Interpolated polynomial through the dilate counts at multiples of the
/// period, coefficients low to high. Exposed for the reciprocity test.
pub fn interpolated_polynomial(p: &Polytope) -> Result<Vec<Rational>> {
    let d = p.dim();
    let step = period(p);
    let fit: Vec<(Rational, Rational)> = (1..=d as u64 + 1)
        .map(|k| {
            let t = k * step;
            Ok((
                Rational::from_integer(Int::from(t)),
                Rational::from_integer(Int::from(count_dilate(p, t)?.count)),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(interpolate(&fit))
}

/// Coefficients (low to high) of the unique polynomial of degree < #points
/// through the given points, by solving the Vandermonde system exactly.
fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let k = points.len();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|(t, _)| {
            let mut row = Vec::with_capacity(k);
            let mut power = Rational::one();
            for _ in 0..k {
                row.push(power.clone());
                power *= t;
            }
            row
        })
        .collect();
    let rhs: Vec<Rational> = points.iter().map(|(_, c)| c.clone()).collect();
    gauss::solve(&rows, &rhs).expect("distinct interpolation nodes")
}

pub fn evaluate(coeffs: &[Rational], t: &Rational) -> Rational {
    let mut value = Rational::zero();
    for c in coeffs.iter().rev() {
        value = value * t + c;
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{e_vector, rational};
    use crate::polytope::convex_hull;

    fn segment_k2() -> Polytope {
        convex_hull(&[QVector::from_ints(&[1, -1]), QVector::from_ints(&[-1, 1])]).unwrap()
    }

    #[test]
    fn dilate_counts_of_the_segment() {
        let p = segment_k2();
        assert_eq!(count_dilate(&p, 1).unwrap().count, 3);
        assert_eq!(count_dilate(&p, 2).unwrap().count, 5);
        assert_eq!(count_dilate(&p, 3).unwrap().count, 7);
    }

    #[test]
    fn leading_coefficient_of_the_segment() {
        assert_eq!(leading_coefficient(&segment_k2()).unwrap(), rational(2, 1));
    }

    #[test]
    fn point_dilate() {
        let origin = convex_hull(&[QVector::zeros(2)]).unwrap();
        assert_eq!(count_dilate(&origin, 7).unwrap().count, 1);
        assert_eq!(leading_coefficient(&origin).unwrap(), rational(1, 1));
    }

    #[test]
    fn fractional_segment_counts_on_its_period() {
        // conv{±(1/3, 1/3, 1/3, -1)}: period 3, counts 3, 5, 7 at t = 3, 6, 9
        let v = QVector::new(vec![
            rational(1, 3),
            rational(1, 3),
            rational(1, 3),
            rational(-1, 1),
        ]);
        let p = convex_hull(&[v.clone(), -&v]).unwrap();
        assert_eq!(period(&p), 3);
        assert_eq!(count_dilate(&p, 3).unwrap().count, 3);
        assert_eq!(count_dilate(&p, 6).unwrap().count, 5);
        // off-period dilates have no lattice points in the span
        assert_eq!(count_dilate(&p, 1).unwrap().count, 0);
        assert_eq!(leading_coefficient(&p).unwrap(), rational(2, 3));
    }

    #[test]
    fn unit_cube_polynomial() {
        let mut corners = Vec::new();
        for mask in 0..8 {
            corners.push(QVector::from_ints(&[mask & 1, (mask >> 1) & 1, (mask >> 2) & 1]));
        }
        let cube = convex_hull(&corners).unwrap();
        assert_eq!(count_dilate(&cube, 2).unwrap().count, 27);
        assert_eq!(leading_coefficient(&cube).unwrap(), rational(1, 1));
        // interior of 2P has (2-1)^3 = 1 point
        assert_eq!(count_dilate_interior(&cube, 2).unwrap().count, 1);
    }

    #[test]
    fn dimension_cap() {
        let mut corners = Vec::new();
        for mask in 0..32 {
            corners.push(QVector::from_ints(&[
                mask & 1,
                (mask >> 1) & 1,
                (mask >> 2) & 1,
                (mask >> 3) & 1,
                (mask >> 4) & 1,
            ]));
        }
        let cube5 = convex_hull(&corners).unwrap();
        assert!(matches!(count_dilate(&cube5, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn monotone_in_t_for_polytopes_containing_the_origin() {
        let p = segment_k2();
        let mut last = 0;
        for t in 1..=5 {
            let c = count_dilate(&p, t).unwrap().count;
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn reciprocity_for_the_triangle() {
        // lattice triangle conv{0, e1, e2}: L(t) = (t+1)(t+2)/2,
        // interior count of tP must equal (-1)^2 L(-t)
        let p = convex_hull(&[QVector::zeros(2), e_vector(0, 2), e_vector(1, 2)]).unwrap();
        let coeffs = interpolated_polynomial(&p).unwrap();
        for t in 1..=4u64 {
            let interior = count_dilate_interior(&p, t).unwrap().count;
            let at_minus_t = evaluate(&coeffs, &rational(-(t as i64), 1));
            assert_eq!(Rational::from_integer(Int::from(interior)), at_minus_t);
        }
    }
}
