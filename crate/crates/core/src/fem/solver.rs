//! Krylov solvers: Jacobi-preconditioned conjugate gradients for SPD
//! systems and BiCGStab for the nonsymmetric velocity operator.

use crate::error::SolverError;
use crate::fem::sparse::CsrMatrix;

/// Anything that can apply a square matrix to a vector.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
    /// Diagonal used for Jacobi preconditioning; `None` means unpreconditioned.
    fn diagonal(&self) -> Option<Vec<f64>> {
        None
    }
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        assert_eq!(self.nrows(), self.ncols(), "operator must be square");
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.mul_vec_into(x, y);
    }

    fn diagonal(&self) -> Option<Vec<f64>> {
        Some(CsrMatrix::diagonal(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Target relative residual `||b - Ax|| / ||b||`.
    pub tol: f64,
    /// Iteration cap; `None` means `10 * n`.
    pub max_iter: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: None,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, max_iter: None }
    }

    fn cap(&self, n: usize) -> usize {
        self.max_iter.unwrap_or(10 * n.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolveStats {
    pub iterations: usize,
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residual<A: LinearOperator + ?Sized>(a: &A, x: &[f64], b: &[f64], r: &mut [f64]) {
    a.apply(x, r);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
}

fn jacobi(a: &(impl LinearOperator + ?Sized), n: usize, require_positive: bool) -> Result<Vec<f64>, SolverError> {
    match a.diagonal() {
        Some(d) => d
            .iter()
            .map(|&v| {
                if (require_positive && v <= 0.0) || v == 0.0 || !v.is_finite() {
                    Err(SolverError::Breakdown {
                        iteration: 0,
                        reason: "unusable diagonal for Jacobi preconditioner",
                    })
                } else {
                    Ok(1.0 / v)
                }
            })
            .collect(),
        None => Ok(vec![1.0; n]),
    }
}

fn check_dims(n: usize, b: &[f64], x: &[f64]) -> Result<(), SolverError> {
    for len in [b.len(), x.len()] {
        if len != n {
            return Err(SolverError::DimensionMismatch { expected: n, found: len });
        }
    }
    Ok(())
}

/// Preconditioned conjugate gradients; `x` holds the initial guess.
pub fn conjugate_gradient<A: LinearOperator + ?Sized>(
    a: &A,
    b: &[f64],
    x: &mut [f64],
    opts: SolverOptions,
) -> Result<SolveStats, SolverError> {
    let n = a.dim();
    check_dims(n, b, x)?;
    let bnorm = norm(b);
    if bnorm == 0.0 {
        x.fill(0.0);
        return Ok(SolveStats::default());
    }
    let minv = jacobi(a, n, true)?;
    let cap = opts.cap(n);

    let mut r = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut ap = vec![0.0; n];
    let mut iterations = 0;

    // The outer loop restarts from the true residual whenever the recursive
    // residual claims convergence but the true one disagrees.
    for _restart in 0..4 {
        residual(a, x, b, &mut r);
        let mut rel = norm(&r) / bnorm;
        if rel <= opts.tol {
            return Ok(SolveStats { iterations, residual: rel });
        }
        for i in 0..n {
            z[i] = minv[i] * r[i];
        }
        p.copy_from_slice(&z);
        let mut rz = dot(&r, &z);
        while iterations < cap {
            iterations += 1;
            a.apply(&p, &mut ap);
            let pap = dot(&p, &ap);
            if !(pap > 0.0) {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "non-positive curvature: operator is not positive definite",
                });
            }
            let alpha = rz / pap;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            rel = norm(&r) / bnorm;
            if !rel.is_finite() {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "non-finite residual",
                });
            }
            if rel <= opts.tol {
                break;
            }
            for i in 0..n {
                z[i] = minv[i] * r[i];
            }
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        residual(a, x, b, &mut r);
        let true_rel = norm(&r) / bnorm;
        if true_rel <= opts.tol {
            return Ok(SolveStats {
                iterations,
                residual: true_rel,
            });
        }
        if iterations >= cap {
            return Err(SolverError::NotConverged {
                iterations,
                residual: true_rel,
            });
        }
    }
    residual(a, x, b, &mut r);
    Err(SolverError::NotConverged {
        iterations,
        residual: norm(&r) / bnorm,
    })
}

/// Right-preconditioned BiCGStab; `x` holds the initial guess.
pub fn bicgstab<A: LinearOperator + ?Sized>(
    a: &A,
    b: &[f64],
    x: &mut [f64],
    opts: SolverOptions,
) -> Result<SolveStats, SolverError> {
    let n = a.dim();
    check_dims(n, b, x)?;
    let bnorm = norm(b);
    if bnorm == 0.0 {
        x.fill(0.0);
        return Ok(SolveStats::default());
    }
    let minv = jacobi(a, n, false)?;
    let cap = opts.cap(n);

    let mut r = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut phat = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut shat = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut iterations = 0;

    for _restart in 0..4 {
        residual(a, x, b, &mut r);
        let mut rel = norm(&r) / bnorm;
        if rel <= opts.tol {
            return Ok(SolveStats { iterations, residual: rel });
        }
        let r0 = r.clone();
        let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
        v.fill(0.0);
        p.fill(0.0);
        while iterations < cap {
            iterations += 1;
            let rho_new = dot(&r0, &r);
            if rho_new.abs() < 1e-300 {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "rho vanished",
                });
            }
            let beta = (rho_new / rho) * (alpha / omega);
            rho = rho_new;
            for i in 0..n {
                p[i] = r[i] + beta * (p[i] - omega * v[i]);
                phat[i] = minv[i] * p[i];
            }
            a.apply(&phat, &mut v);
            let r0v = dot(&r0, &v);
            if r0v.abs() < 1e-300 {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "r0 orthogonal to A p",
                });
            }
            alpha = rho / r0v;
            for i in 0..n {
                s[i] = r[i] - alpha * v[i];
            }
            if norm(&s) / bnorm <= opts.tol {
                for i in 0..n {
                    x[i] += alpha * phat[i];
                }
                rel = norm(&s) / bnorm;
                r.copy_from_slice(&s);
                break;
            }
            for i in 0..n {
                shat[i] = minv[i] * s[i];
            }
            a.apply(&shat, &mut t);
            let tt = dot(&t, &t);
            if tt == 0.0 {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "A s vanished",
                });
            }
            omega = dot(&t, &s) / tt;
            for i in 0..n {
                x[i] += alpha * phat[i] + omega * shat[i];
                r[i] = s[i] - omega * t[i];
            }
            rel = norm(&r) / bnorm;
            if !rel.is_finite() {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "non-finite residual",
                });
            }
            if rel <= opts.tol {
                break;
            }
            if omega == 0.0 {
                return Err(SolverError::Breakdown {
                    iteration: iterations,
                    reason: "omega vanished",
                });
            }
        }
        let _ = rel;
        residual(a, x, b, &mut r);
        let true_rel = norm(&r) / bnorm;
        if true_rel <= opts.tol {
            return Ok(SolveStats {
                iterations,
                residual: true_rel,
            });
        }
        if iterations >= cap {
            return Err(SolverError::NotConverged {
                iterations,
                residual: true_rel,
            });
        }
    }
    residual(a, x, b, &mut r);
    Err(SolverError::NotConverged {
        iterations,
        residual: norm(&r) / bnorm,
    })
}

/// Solves an SPD sparse system from a zero initial guess.
pub fn sparse_solve_spd(a: &CsrMatrix, b: &[f64], tol: f64) -> Result<Vec<f64>, SolverError> {
    let mut x = vec![0.0; b.len()];
    conjugate_gradient(a, b, &mut x, SolverOptions::with_tol(tol))?;
    Ok(x)
}

/// Solves a general nonsingular sparse system from a zero initial guess.
pub fn sparse_solve_general(a: &CsrMatrix, b: &[f64], tol: f64) -> Result<Vec<f64>, SolverError> {
    let mut x = vec![0.0; b.len()];
    bicgstab(a, b, &mut x, SolverOptions::with_tol(tol))?;
    Ok(x)
}
