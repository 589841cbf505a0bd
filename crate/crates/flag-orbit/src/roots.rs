//! Root data for the classical families A_l, C_l and D_l in their concrete
//! matrix realizations.
//!
//! - A_l: sl(l+1, C), Cartan = traceless diagonals, roots λ_i - λ_j;
//! - C_l: sp(l, C) = {A : AΩ + ΩA^T = 0}, Cartan = diag(Λ, -Λ), roots
//!   ±(λ_i - λ_j), ±(λ_i + λ_j), ±2λ_i;
//! - D_l: the realization g_1 = {A : AF + FA^T = 0} with F the
//!   antidiagonal block form, Cartan = diag(Λ, -Λ), roots ±(λ_i ± λ_j).
//!
//! Each root is a functional on the diagonal Cartan recorded by its integer
//! coefficients over the λ_i, where λ_i reads the i-th diagonal entry.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Cx, Scalar};
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    C,
    D,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

/// Integer combination of the diagonal functionals λ_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct RootFunctional {
    pub coeffs: Vec<i32>,
}

impl RootFunctional {
    pub fn new(coeffs: Vec<i32>) -> Self {
        RootFunctional { coeffs }
    }

    /// λ_i - λ_j over `len` diagonal functionals.
    pub fn difference(len: usize, i: usize, j: usize) -> Self {
        let mut c = vec![0; len];
        c[i] += 1;
        c[j] -= 1;
        RootFunctional::new(c)
    }

    /// λ_i + λ_j (i = j gives 2λ_i).
    pub fn sum(len: usize, i: usize, j: usize) -> Self {
        let mut c = vec![0; len];
        c[i] += 1;
        c[j] += 1;
        RootFunctional::new(c)
    }

    pub fn negated(&self) -> Self {
        RootFunctional::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        RootFunctional::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Evaluate on a diagonal Cartan element: the combination of the first
    /// `coeffs.len()` diagonal entries.
    pub fn eval<S: Scalar>(&self, h: &SquareMatrix<S>) -> Cx<S> {
        let mut v = Cx::<S>::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                v = v + h.at(i, i) * crate::scalar::cx(c as f64, 0.0);
            }
        }
        v
    }
}

impl std::fmt::Display for RootFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}l{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}l{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem<S: Scalar> {
    pub family: Family,
    pub rank: usize,
    /// Dimension of the ambient matrices: l+1 for A_l, 2l for C_l and D_l.
    pub matrix_dim: usize,
    pub simple_roots: Vec<RootFunctional>,
    /// Positive roots, ordered lexicographically by simple-root coordinates.
    pub positive_roots: Vec<RootFunctional>,
    /// Simple-root coordinates of each positive root, aligned with
    /// `positive_roots`.
    pub simple_coords: Vec<Vec<i32>>,
    pub cartan_basis: Vec<SquareMatrix<S>>,
}

pub fn matrix_dim(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank + 1,
        Family::C | Family::D => 2 * rank,
    }
}

/// Construct the root system of the family at the given rank.
pub fn build_root_system<S: Scalar>(family: Family, rank: usize) -> Result<RootSystem<S>> {
    if rank < 1 {
        return Err(Error::InvalidParams("rank must be at least 1".into()));
    }
    if family == Family::D && rank < 2 {
        return Err(Error::InvalidParams("family D requires rank >= 2".into()));
    }
    let dim = matrix_dim(family, rank);
    let lam = match family {
        Family::A => rank + 1,
        Family::C | Family::D => rank,
    };

    let simple_roots: Vec<RootFunctional> = match family {
        Family::A => (0..rank)
            .map(|i| RootFunctional::difference(lam, i, i + 1))
            .collect(),
        Family::C => {
            let mut v: Vec<RootFunctional> = (0..rank - 1)
                .map(|i| RootFunctional::difference(lam, i, i + 1))
                .collect();
            v.push(RootFunctional::sum(lam, rank - 1, rank - 1));
            v
        }
        Family::D => {
            let mut v: Vec<RootFunctional> = (0..rank - 1)
                .map(|i| RootFunctional::difference(lam, i, i + 1))
                .collect();
            v.push(RootFunctional::sum(lam, rank - 2, rank - 1));
            v
        }
    };

    let mut positive_roots = Vec::new();
    match family {
        Family::A => {
            for i in 0..lam {
                for j in i + 1..lam {
                    positive_roots.push(RootFunctional::difference(lam, i, j));
                }
            }
        }
        Family::C => {
            for i in 0..lam {
                for j in i + 1..lam {
                    positive_roots.push(RootFunctional::difference(lam, i, j));
                    positive_roots.push(RootFunctional::sum(lam, i, j));
                }
                positive_roots.push(RootFunctional::sum(lam, i, i));
            }
        }
        Family::D => {
            for i in 0..lam {
                for j in i + 1..lam {
                    positive_roots.push(RootFunctional::difference(lam, i, j));
                    positive_roots.push(RootFunctional::sum(lam, i, j));
                }
            }
        }
    }

    let mut simple_coords = Vec::with_capacity(positive_roots.len());
    for root in &positive_roots {
        simple_coords.push(simple_coordinates(root, &simple_roots)?);
    }
    let mut order: Vec<usize> = (0..positive_roots.len()).collect();
    order.sort_by(|&a, &b| simple_coords[a].cmp(&simple_coords[b]));
    let positive_roots: Vec<_> = order.iter().map(|&k| positive_roots[k].clone()).collect();
    let simple_coords: Vec<_> = order.iter().map(|&k| simple_coords[k].clone()).collect();

    let cartan_basis: Vec<SquareMatrix<S>> = match family {
        Family::A => (0..rank)
            .map(|k| {
                let mut h = SquareMatrix::zeros(dim);
                h.set(k, k, crate::scalar::cx(1.0, 0.0));
                h.set(k + 1, k + 1, crate::scalar::cx(-1.0, 0.0));
                h
            })
            .collect(),
        Family::C | Family::D => (0..rank)
            .map(|k| {
                let mut h = SquareMatrix::zeros(dim);
                h.set(k, k, crate::scalar::cx(1.0, 0.0));
                h.set(rank + k, rank + k, crate::scalar::cx(-1.0, 0.0));
                h
            })
            .collect(),
    };

    Ok(RootSystem {
        family,
        rank,
        matrix_dim: dim,
        simple_roots,
        positive_roots,
        simple_coords,
        cartan_basis,
    })
}

/// Expand a root over the simple roots; the coordinates must come out as
/// nonnegative integers for a positive root.
fn simple_coordinates(root: &RootFunctional, simple: &[RootFunctional]) -> Result<Vec<i32>> {
    // least squares over the λ-coefficient vectors, then integer rounding
    let cols: Vec<Vec<f64>> = simple
        .iter()
        .map(|s| s.coeffs.iter().map(|&c| c as f64).collect())
        .collect();
    let b: Vec<f64> = root.coeffs.iter().map(|&c| c as f64).collect();
    let x = crate::linalg::svd(&cols).solve(&b, 1e-12);
    let mut out = Vec::with_capacity(x.len());
    let mut recon = vec![0.0f64; b.len()];
    for (k, &c) in x.iter().enumerate() {
        let r = c.round();
        if (c - r).abs() > 1e-9 || r < 0.0 {
            return Err(Error::InvalidParams(format!(
                "root {root} is not a nonnegative integer combination of simple roots"
            )));
        }
        for (j, &sc) in simple[k].coeffs.iter().enumerate() {
            recon[j] += r * sc as f64;
        }
        out.push(r as i32);
    }
    for (j, &bj) in b.iter().enumerate() {
        if (recon[j] - bj).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "root {root} lies outside the span of the simple roots"
            )));
        }
    }
    Ok(out)
}

impl<S: Scalar> RootSystem<S> {
    pub fn is_root(&self, f: &RootFunctional) -> bool {
        self.positive_roots
            .iter()
            .any(|r| r == f || r.negated() == *f)
    }

    /// Index of a positive root.
    pub fn positive_index(&self, f: &RootFunctional) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == f)
    }

    /// Expected number of positive roots for the family.
    pub fn expected_positive_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::C => l * l,
            Family::D => l * (l - 1),
        }
    }
}
