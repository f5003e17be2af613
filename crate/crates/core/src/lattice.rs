//! Exact evolution on a truncated chain.
//!
//! The Hamiltonian restricted to `{-R, ..., R}` is a real symmetric tridiagonal
//! matrix with zero diagonal. It is diagonalised once with the implicit QL
//! algorithm, after which `exp(-iHt) delta_0 = Z exp(-i Lambda t) Z^T delta_0`
//! costs `O(N^2)` per time.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::amplitudes::{AmplitudeField, Method};
use crate::error::{Error, Result};
use crate::params::{check_time, WalkParams};

/// Sweeps allowed per eigenvalue before the QL iteration is declared stuck.
const MAX_QL_ITERATIONS: usize = 60;

/// Mass tolerated on the outermost sites before the lattice is doubled.
const EDGE_MASS_LIMIT: f64 = 1e-12;
const EDGE_SITES: usize = 5;
const MAX_DOUBLINGS: usize = 6;

/// Decompositions kept in the process-wide cache before it is flushed.
const CACHE_CAPACITY: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedHamiltonian {
    radius: usize,
    /// `couplings[i]` is the bond `(x, x + 1)` with `x = i - R`.
    couplings: Vec<f64>,
}

impl TruncatedHamiltonian {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// Strength of the bond `(x, x + 1)`, or `None` if it leaves the window.
    pub fn coupling(&self, x: i64) -> Option<f64> {
        let r = self.radius as i64;
        (-r..r).contains(&x).then(|| self.couplings[(x + r) as usize])
    }

    /// Matrix entry `H[x, y]` with rows and columns indexed by position.
    pub fn entry(&self, x: i64, y: i64) -> f64 {
        match y - x {
            1 => self.coupling(x).unwrap_or(0.0),
            -1 => self.coupling(y).unwrap_or(0.0),
            _ => 0.0,
        }
    }

    /// `H v` for a vector indexed from `-R` to `R`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (i, &c) in self.couplings.iter().enumerate() {
            out[i] += c * v[i + 1];
            out[i + 1] += c * v[i];
        }
        out
    }

    /// `<v, H v>`.
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let hv = self.apply(v);
        v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

/// The chain on `{-R, ..., R}`: bond `(x, x + 1)` carries `gamma0` for even `x`, `gamma1` for odd `x`.
pub fn build_hamiltonian(params: &WalkParams, radius: usize) -> Result<TruncatedHamiltonian> {
    if radius < 1 {
        return Err(Error::InvalidArgument("lattice radius must be at least 1".into()));
    }
    let r = radius as i64;
    let couplings =
        (-r..r).map(|x| if x.rem_euclid(2) == 0 { params.gamma0() } else { params.gamma1() }).collect();
    Ok(TruncatedHamiltonian { radius, couplings })
}

/// Eigenpairs of a truncated Hamiltonian; `vectors` is column-major.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
    dim: usize,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }
}

/// Implicit QL with Wilkinson shifts on diagonal `d` and sub-diagonal `e` (`e.len() == d.len() - 1`).
pub fn tridiagonal_eigen(diag: &[f64], offdiag: &[f64]) -> Result<Eigensystem> {
    let n = diag.len();
    assert!(n >= 1 && offdiag.len() + 1 == n);
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let scale = (0..n).map(|i| d[i].abs() + e[i].abs()).fold(0.0, f64::max);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                // Floored by the matrix scale so zero diagonals converge.
                let dd = (d[m].abs() + d[m + 1].abs()).max(scale);
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::Eigen { index: l, iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (left, right) = z.split_at_mut((i + 1) * n);
                let zi = &mut left[i * n..];
                let zi1 = &mut right[..n];
                for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                    let f = *b;
                    *b = s * *a + c * f;
                    *a = c * *a - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(Eigensystem { values: d, vectors: z, dim: n })
}

type CacheKey = (u64, u64, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Eigensystem>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Eigensystem>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Decomposition of the chain with the given radius, shared across calls.
pub fn eigensystem(params: &WalkParams, radius: usize) -> Result<Arc<Eigensystem>> {
    let key = (params.gamma0().to_bits(), params.gamma1().to_bits(), radius);
    if let Some(hit) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(hit));
    }
    let h = build_hamiltonian(params, radius)?;
    let eig = Arc::new(tridiagonal_eigen(&vec![0.0; h.dim()], h.couplings())?);
    let mut map = cache().write().unwrap_or_else(|e| e.into_inner());
    if map.len() >= CACHE_CAPACITY {
        map.clear();
    }
    Ok(Arc::clone(map.entry(key).or_insert(eig)))
}

/// `exp(-iHt) delta_0` on the whole truncated chain, with no check for reflections.
pub fn evolve_on_lattice(params: &WalkParams, t: f64, radius: usize) -> Result<Vec<Complex64>> {
    check_time(t)?;
    let eig = eigensystem(params, radius)?;
    let n = eig.dim();
    let mut psi = vec![Complex64::new(0.0, 0.0); n];
    for (j, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vector(j);
        let weight = Complex64::from_polar(v[radius], -lambda * t);
        for (p, &vx) in psi.iter_mut().zip(v) {
            *p += weight * vx;
        }
    }
    Ok(psi)
}

fn edge_mass(psi: &[Complex64]) -> f64 {
    let k = EDGE_SITES.min(psi.len());
    let head: f64 = psi[..k].iter().map(|v| v.norm_sqr()).sum();
    let tail: f64 = psi[psi.len() - k..].iter().map(|v| v.norm_sqr()).sum();
    head + tail
}

/// Amplitudes on `{-R, ..., R}` from the exact propagator.
///
/// The chain actually diagonalised is at least as large as the light-cone rule and is
/// doubled while its outermost sites hold more than `1e-12` of the mass.
pub fn evolve(params: &WalkParams, t: f64, radius: usize) -> Result<AmplitudeField> {
    check_time(t)?;
    let mut lattice_radius = radius.max(params.light_cone_radius(t)).max(EDGE_SITES);
    let mut psi = evolve_on_lattice(params, t, lattice_radius)?;
    let mut doublings = 0;
    while edge_mass(&psi) > EDGE_MASS_LIMIT {
        if doublings == MAX_DOUBLINGS {
            let captured = 1.0 - edge_mass(&psi);
            return Err(Error::Mass { captured, required: 1.0 - EDGE_MASS_LIMIT });
        }
        lattice_radius *= 2;
        psi = evolve_on_lattice(params, t, lattice_radius)?;
        doublings += 1;
    }
    let start = lattice_radius - radius;
    let window = psi[start..start + 2 * radius + 1].to_vec();
    Ok(AmplitudeField::from_values(t, radius, Method::LatticeOracle, window))
}
