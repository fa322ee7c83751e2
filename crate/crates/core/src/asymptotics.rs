//! Roots of one-variable specializations of a stretched family.
//!
//! Fixing `x2 = ξ2, …, xn = ξn` on a circle `|ξ| = R` turns each term into a
//! polynomial `P_k(z)` in the first variable. As `k` grows, the nonzero
//! roots of `P_k` accumulate on that circle.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recurrence::SchurSequence;

/// Largest degree handed to the root finder.
pub const MAX_DEGREE: usize = 5000;
/// Root-finder iteration cap.
pub const MAX_ITERATIONS: usize = 10_000;
/// Acceptance threshold on the relative residual of a root.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Roots closer to the origin than this fraction of `R` are left out of
/// [`RootCloud::deviation`].
pub const ORIGIN_FRACTION: f64 = 0.05;

const TRIM: f64 = 1e-14;
const RADIUS_TOLERANCE: f64 = 1e-12;

/// Dense univariate polynomial with complex coefficients, lowest degree
/// first, trimmed so the leading coefficient is not negligible.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Drops leading coefficients smaller than `1e-14` times the largest one.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= TRIM * scale) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::zero());
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        ComplexPoly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `Σ |a_j|·|z|^j`, the natural size of `p(z)` for residual tests.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// `|p(z)| / Σ |a_j|·|z|^j`.
    pub fn relative_residual(&self, z: Complex64) -> f64 {
        let s = self.scale_at(z);
        if s == 0.0 {
            0.0
        } else {
            self.eval(z).norm() / s
        }
    }

    /// `p(z)` and `p'(z)` by Horner's rule.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }
}

/// `P_k(z) = term(k)(z, ξ2, …, ξn)`.
///
/// Powers of `x1` are collected exactly first. Each coefficient is then
/// evaluated once: exactly when every `ξ` is a real integer, in floating
/// point otherwise.
pub fn specialize(seq: &mut SchurSequence, k: usize, xi: &[Complex64]) -> Result<ComplexPoly> {
    let n = seq.n();
    if xi.len() + 1 != n {
        return Err(Error::WrongArity {
            expected: n - 1,
            got: xi.len(),
        });
    }
    if let Some(first) = xi.first() {
        let r = first.norm();
        if xi.iter().any(|x| (x.norm() - r).abs() > RADIUS_TOLERANCE * r.max(1.0)) {
            return Err(Error::UnequalRadii(xi.iter().map(|x| x.to_string()).collect()));
        }
    }
    let integer_point: Option<Vec<BigInt>> = xi
        .iter()
        .map(|x| (x.im == 0.0 && x.re.fract() == 0.0).then(|| BigInt::from(x.re as i64)))
        .collect();
    let collected = seq.term(k)?.collect_first();
    let degree = collected.keys().next_back().copied().unwrap_or(0) as usize;
    if degree > MAX_DEGREE {
        return Err(Error::Precondition(format!(
            "degree {degree} at index {k} exceeds the cap of {MAX_DEGREE}"
        )));
    }
    let mut coeffs = vec![Complex64::zero(); degree + 1];
    for (power, c) in collected {
        coeffs[power as usize] = match &integer_point {
            Some(p) => Complex64::new(c.eval_int(p)?.to_f64().unwrap_or(f64::NAN), 0.0),
            None => c.eval_complex(xi)?,
        };
    }
    let p = ComplexPoly::new(coeffs);
    if p.is_zero() {
        return Err(Error::ZeroSpecialization { k });
    }
    Ok(p)
}

/// Output of [`find_roots`].
#[derive(Clone, Debug)]
pub struct Roots {
    /// All roots with multiplicity; exact zero roots come first.
    pub roots: Vec<Complex64>,
    /// Indices into `roots` whose relative residual stayed above
    /// [`RESIDUAL_TOLERANCE`].
    pub unconverged: Vec<usize>,
    pub iterations: usize,
}

/// All complex roots by Aberth–Ehrlich simultaneous iteration.
///
/// Exact zero roots are split off first. The remaining roots start equally
/// spaced on the Cauchy-bound circle, in a configuration symmetric under
/// conjugation, and are updated all at once each sweep, so the run is
/// deterministic.
pub fn find_roots(p: &ComplexPoly) -> Result<Roots> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let q = ComplexPoly {
        coeffs: p.coeffs[zeros..].to_vec(),
    };
    let d = q.degree();
    let mut roots = vec![Complex64::zero(); zeros];
    if d == 0 {
        return Ok(Roots {
            roots,
            unconverged: Vec::new(),
            iterations: 0,
        });
    }

    let lead = q.coeffs[d];
    let bound = 1.0 + q.coeffs[..d].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(bound, std::f64::consts::PI * (2 * j + 1) as f64 / d as f64))
        .collect();
    let mut done = vec![false; d];
    let eps = f64::EPSILON * (4 * d) as f64;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && done.iter().any(|&x| !x) {
        iterations += 1;
        let mut next = z.clone();
        for j in 0..d {
            if done[j] {
                continue;
            }
            let (pz, dpz) = q.eval_with_derivative(z[j]);
            if pz.norm() <= eps * q.scale_at(z[j]) {
                done[j] = true;
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..d).filter(|&i| i != j).map(|i| (z[j] - z[i]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            next[j] = z[j] - step;
            if step.norm() <= f64::EPSILON * z[j].norm() {
                done[j] = true;
            }
        }
        z = next;
    }
    roots.extend(z);
    let unconverged = roots
        .iter()
        .enumerate()
        // NaN residuals count as unconverged
        .filter(|(_, r)| p.relative_residual(**r).partial_cmp(&RESIDUAL_TOLERANCE) != Some(std::cmp::Ordering::Less))
        .map(|(i, _)| i)
        .collect();
    Ok(Roots {
        roots,
        unconverged,
        iterations,
    })
}

/// Roots of `P_k` with their distance from the circle `|z| = R`.
#[derive(Clone, Debug, Serialize)]
pub struct RootCloud {
    pub k: usize,
    #[serde(serialize_with = "serialize_complex")]
    pub roots: Vec<Complex64>,
    pub radius: f64,
    /// `max | |z| − R |` over roots with `|z| ≥ 0.05·R`; zero if none.
    pub deviation: f64,
    pub unconverged: Vec<usize>,
}

fn serialize_complex<S: serde::Serializer>(roots: &[Complex64], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(roots.iter().map(|z| [z.re, z.im]))
}

impl RootCloud {
    pub fn new(k: usize, roots: Vec<Complex64>, radius: f64, unconverged: Vec<usize>) -> Self {
        let deviation = roots
            .iter()
            .filter(|z| z.norm() >= ORIGIN_FRACTION * radius)
            .map(|z| (z.norm() - radius).abs())
            .fold(0.0, f64::max);
        RootCloud {
            k,
            roots,
            radius,
            deviation,
            unconverged,
        }
    }
}

/// Root clouds of `P_k` for `k = max(1, first valid index) ..= kmax`.
pub fn limit_experiment(seq: &mut SchurSequence, xi: &[Complex64], kmax: usize) -> Result<Vec<RootCloud>> {
    let family = seq.family();
    if family.mu == family.nu {
        return Err(Error::DegenerateFamily);
    }
    let radius = xi.first().map_or(1.0, |x| x.norm());
    let start = seq.shift().max(1);
    let mut clouds = Vec::new();
    for k in start..=kmax {
        let p = specialize(seq, k, xi)?;
        let cloud = if p.degree() == 0 {
            RootCloud::new(k, Vec::new(), radius, Vec::new())
        } else {
            let r = find_roots(&p)?;
            RootCloud::new(k, r.roots, radius, r.unconverged)
        };
        clouds.push(cloud);
    }
    Ok(clouds)
}

/// `k,root_index,re,im,modulus,deviation`, one row per root. The deviation
/// column is that root's own `| |z| − R |`; the cloud's value is the maximum
/// over rows with `modulus ≥ 0.05·R`.
pub fn write_csv<W: Write>(clouds: &[RootCloud], out: &mut W) -> io::Result<()> {
    writeln!(out, "k,root_index,re,im,modulus,deviation")?;
    for cloud in clouds {
        for (i, z) in cloud.roots.iter().enumerate() {
            let m = z.norm();
            writeln!(
                out,
                "{},{},{:.12e},{:.12e},{:.12e},{:.12e}",
                cloud.k,
                i,
                z.re,
                z.im,
                m,
                (m - cloud.radius).abs()
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partitions::Partition;
    use crate::recurrence::{build_sequence, Family};

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn specialize_examples() {
        let mut h = build_sequence(&Family::stretched(part![1], part![], 2)).unwrap();
        let p = specialize(&mut h, 4, &[one()]).unwrap();
        assert_eq!(p, ComplexPoly::from_real(&[1.0; 5]));

        let mut col = build_sequence(&Family::stretched(part![1, 1], part![], 2)).unwrap();
        let p = specialize(&mut col, 3, &[one()]).unwrap();
        assert_eq!(p, ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0]));

        let mut stair = build_sequence(&Family::stretched(Partition::staircase(2), part![], 3)).unwrap();
        assert_eq!(specialize(&mut stair, 3, &[one(), one()]).unwrap().degree(), 6);

        assert!(matches!(
            specialize(&mut h, 1, &[one(), one()]),
            Err(Error::WrongArity { .. })
        ));
        let mut stair = build_sequence(&Family::stretched(Partition::staircase(2), part![], 3)).unwrap();
        assert!(matches!(
            specialize(&mut stair, 1, &[one(), Complex64::new(2.0, 0.0)]),
            Err(Error::UnequalRadii(_))
        ));
    }

    #[test]
    fn complex_xi_matches_direct_evaluation() {
        let mut seq = build_sequence(&Family::stretched(part![2, 1], part![1], 2)).unwrap();
        let xi = Complex64::from_polar(1.0, 0.7);
        let p = specialize(&mut seq, 3, &[xi]).unwrap();
        let z = Complex64::new(0.3, -0.2);
        let direct = seq.term(3).unwrap().eval_complex(&[z, xi]).unwrap();
        assert!((p.eval(z) - direct).norm() < 1e-12);
    }

    #[test]
    fn roots_of_small_polynomials() {
        let r = find_roots(&ComplexPoly::from_real(&[1.0, 1.0, 1.0])).unwrap();
        assert!(r.unconverged.is_empty());
        for z in &r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-8);
            assert!((z.powu(3) - one()).norm() < 1e-8);
        }
        let r = find_roots(&ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.roots, vec![Complex64::zero(); 3]);
        assert_eq!(
            find_roots(&ComplexPoly::from_real(&[2.0])).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn staircase_roots_on_unit_circle() {
        let mut stair = build_sequence(&Family::stretched(Partition::staircase(2), part![], 3)).unwrap();
        let p = specialize(&mut stair, 4, &[one(), one()]).unwrap();
        let r = find_roots(&p).unwrap();
        assert!(r.unconverged.is_empty());
        assert_eq!(r.roots.len(), 8);
        for z in &r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-6, "{z}");
        }
    }

    #[test]
    fn h_family_clouds() {
        let mut h = build_sequence(&Family::stretched(part![1], part![], 2)).unwrap();
        let clouds = limit_experiment(&mut h, &[one()], 12).unwrap();
        assert_eq!(clouds.len(), 12);
        for c in &clouds {
            assert_eq!(c.roots.len(), c.k);
            assert!(c.deviation < 1e-12, "k={} deviation={}", c.k, c.deviation);
        }
        let mut trivial = build_sequence(&Family::stretched(part![1], part![1], 2)).unwrap();
        assert_eq!(
            limit_experiment(&mut trivial, &[one()], 3).unwrap_err(),
            Error::DegenerateFamily
        );
    }

    #[test]
    fn csv_layout() {
        let cloud = RootCloud::new(
            2,
            vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.5)],
            1.0,
            vec![],
        );
        assert_eq!(cloud.deviation, 0.5);
        let mut buf = Vec::new();
        write_csv(&[cloud], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,root_index,re,im,modulus,deviation");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("2,1,0.000000000000e0,5.000000000000e-1"));
    }
}
