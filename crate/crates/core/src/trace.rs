//! Numeric leaf tracing by fourth-order Runge–Kutta steps along Hamiltonian
//! vector fields. Step `s` follows the field of hamiltonian `s mod m`, so the
//! trajectory is a composition of Hamiltonian flows and stays in one leaf.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poisson::PoissonStructure;
use crate::{FPolynomial, QPolynomial};

/// Coordinates beyond this norm abort the trace.
pub const NORM_GUARD: f64 = 1e8;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LeafTrace {
    /// `steps + 1` positions, starting at `x0`.
    pub points: Vec<Vec<f64>>,
    /// Numeric rank of the Hamiltonian fields at `x0`.
    pub initial_dimension: usize,
    /// Largest numeric rank of the Hamiltonian fields along the trace.
    pub dimension: usize,
    /// Polygonal length of the trajectory.
    pub length: f64,
}

impl LeafTrace {
    /// `max |f(x_s) − f(x_0)| / max(|f(x_0)|, 1e-300)`.
    pub fn max_relative_drift(&self, f: &QPolynomial) -> f64 {
        let f = to_float(f);
        let f0 = f.eval(&self.points[0]);
        let drift = self.points.iter().map(|x| (f.eval(x) - f0).abs()).fold(0.0, f64::max);
        drift / f0.abs().max(1e-300)
    }
}

fn to_float(p: &QPolynomial) -> FPolynomial {
    p.map_coefficients(crate::scalar::Field::to_f64)
}

/// Traces from `x0`. An empty `hamiltonians` list means the coordinate
/// functions.
pub fn trace_leaf(
    pi: &PoissonStructure,
    x0: &[f64],
    hamiltonians: &[QPolynomial],
    steps: usize,
    dt: f64,
) -> Result<LeafTrace> {
    let n = pi.dim();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    let hams: Vec<QPolynomial> = if hamiltonians.is_empty() {
        (0..n).map(|i| pi.chart().var(i)).collect()
    } else {
        hamiltonians.to_vec()
    };
    let fields: Vec<Vec<FPolynomial>> = hams
        .iter()
        .map(|h| pi.hamiltonian(h).to_vector().iter().map(to_float).collect())
        .collect();
    let eval = |field: &[FPolynomial], x: &[f64]| -> Vec<f64> { field.iter().map(|p| p.eval(x)).collect() };
    let rank_at = |x: &[f64]| -> usize {
        let rows: Vec<Vec<f64>> = fields.iter().map(|f| eval(f, x)).collect();
        Matrix::from_rows(rows).rank()
    };
    let axpy = |x: &[f64], k: &[f64], h: f64| -> Vec<f64> { x.iter().zip(k).map(|(a, b)| a + h * b).collect() };

    let initial_dimension = rank_at(x0);
    let mut dimension = initial_dimension;
    let mut points = Vec::with_capacity(steps + 1);
    points.push(x0.to_vec());
    let mut length = 0.0;
    let mut x = x0.to_vec();
    for step in 0..steps {
        let field = &fields[step % fields.len()];
        let k1 = eval(field, &x);
        let k2 = eval(field, &axpy(&x, &k1, dt / 2.0));
        let k3 = eval(field, &axpy(&x, &k2, dt / 2.0));
        let k4 = eval(field, &axpy(&x, &k3, dt));
        let next: Vec<f64> = (0..n)
            .map(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect();
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm > NORM_GUARD {
            return Err(Error::StepBlowUp { step: step + 1, norm });
        }
        length += next.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        dimension = dimension.max(rank_at(&next));
        x = next;
        points.push(x.clone());
    }
    Ok(LeafTrace {
        points,
        initial_dimension,
        dimension,
        length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::library::su2;
    use crate::poly::Chart;

    fn su2_structure() -> PoissonStructure {
        PoissonStructure::new(su2().linear_bivector()).unwrap()
    }

    #[test]
    fn su2_sphere_is_conserved() {
        let pi = su2_structure();
        let tr = trace_leaf(&pi, &[1.0, 0.0, 0.0], &[], 2000, 1e-3).unwrap();
        let r2 = pi.chart().parse("x1^2 + x2^2 + x3^2").unwrap();
        assert!(tr.max_relative_drift(&r2) < 1e-10);
        assert_eq!(tr.dimension, 2);
        assert!(tr.length > 0.1);
    }

    #[test]
    fn origin_is_fixed() {
        let tr = trace_leaf(&su2_structure(), &[0.0; 3], &[], 100, 1e-2).unwrap();
        assert_eq!(tr.length, 0.0);
        assert_eq!(tr.dimension, 0);
        assert!(tr.points.iter().all(|p| p == &vec![0.0; 3]));
    }

    #[test]
    fn heisenberg_plane_t_zero() {
        let c = Chart::new(["x", "y", "t"]);
        let pi = PoissonStructure::from_components(&c, &[(0, 1, "t")]).unwrap();
        let tr = trace_leaf(&pi, &[0.0; 3], &[], 100, 1e-2).unwrap();
        assert!(tr.points.iter().all(|p| p[2] == 0.0));
        // π vanishes on t = 0, so the leaf through the origin is a point
        assert_eq!(tr.dimension, 0);
        let off = trace_leaf(&pi, &[0.0, 0.0, 1.0], &[], 100, 1e-2).unwrap();
        assert!(off.points.iter().all(|p| p[2] == 1.0));
        assert_eq!(off.dimension, 2);
    }

    #[test]
    fn blow_up_is_reported() {
        let c = Chart::new(["x", "y"]);
        let pi = PoissonStructure::from_components(&c, &[(0, 1, "x^2")]).unwrap();
        let h = c.parse("-y").unwrap();
        let err = trace_leaf(&pi, &[1.0, 0.0], &[h], 100_000, 1e-2).unwrap_err();
        assert!(matches!(err, Error::StepBlowUp { .. }));
    }
}
