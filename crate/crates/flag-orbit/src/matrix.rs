//! Dense complex square matrices: the carrier for every Lie algebra and
//! Lie group element in the crate.
//!
//! The matrices involved are tiny (dimension at most 16), so everything is
//! plain row-major storage with direct loops. Equality is entrywise within
//! a tolerance; the matrix exponential is scaling-and-squaring with a
//! Padé(13) approximant; characteristic polynomials come from the
//! Faddeev–LeVerrier recursion.

use crate::error::{Error, Result};
use crate::scalar::{Cx, Scalar};
use num_complex::Complex;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SquareMatrix<S> {
    dim: usize,
    entries: Vec<(S, S)>,
}

impl<S: Scalar> SquareMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            entries: vec![(S::zero(), S::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.set(k, k, Complex::one());
        }
        m
    }

    /// Elementary matrix E_ij.
    pub fn elementary(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(i, j, Complex::one());
        m
    }

    pub fn from_diag(diag: &[Cx<S>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, d) in diag.iter().enumerate() {
            m.set(k, k, *d);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Cx<S>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Assemble a 2n x 2n matrix from four n x n blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.dim;
        assert!(b.dim == n && c.dim == n && d.dim == n);
        Self::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a.at(i, j),
            (true, false) => b.at(i, j - n),
            (false, true) => c.at(i - n, j),
            (false, false) => d.at(i - n, j - n),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Cx<S> {
        let (re, im) = self.entries[i * self.dim + j];
        Complex::new(re, im)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cx<S>) {
        self.entries[i * self.dim + j] = (v.re, v.im);
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.dim, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, c: Cx<S>) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(i, j) * c)
    }

    pub fn scale_re(&self, s: S) -> Self {
        self.scale(Complex::new(s, S::zero()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.at(i, j) + a * rhs.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i))
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(i, j).conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i).conj())
    }

    pub fn trace(&self) -> Cx<S> {
        let mut t = Cx::<S>::zero();
        for k in 0..self.dim {
            t = t + self.at(k, k);
        }
        t
    }

    pub fn frob_norm(&self) -> S {
        let mut s = S::zero();
        for &(re, im) in &self.entries {
            s = s + re * re + im * im;
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> S {
        let mut m = S::zero();
        for &(re, im) in &self.entries {
            let a = Complex::new(re, im).norm();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Maximum column sum of entry moduli.
    pub fn one_norm(&self) -> S {
        let mut best = S::zero();
        for j in 0..self.dim {
            let mut col = S::zero();
            for i in 0..self.dim {
                col = col + self.at(i, j).norm();
            }
            if col > best {
                best = col;
            }
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|&(re, im)| re.is_finite() && im.is_finite())
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, rhs: &Self, tol: S) -> bool {
        self.dim == rhs.dim && self.sub(rhs).max_abs() <= tol
    }

    /// Flatten to real coordinates (re, im per entry, row-major).
    pub fn real_coords(&self) -> Vec<S> {
        let mut v = Vec::with_capacity(2 * self.entries.len());
        for &(re, im) in &self.entries {
            v.push(re);
            v.push(im);
        }
        v
    }

    pub fn from_real_coords(dim: usize, coords: &[S]) -> Self {
        assert_eq!(coords.len(), 2 * dim * dim);
        let entries = coords.chunks(2).map(|c| (c[0], c[1])).collect();
        SquareMatrix { dim, entries }
    }

    /// Coefficients of the characteristic polynomial, lowest degree first,
    /// with leading coefficient 1 (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Vec<Cx<S>> {
        let n = self.dim;
        let mut coeffs = vec![Cx::<S>::zero(); n + 1];
        coeffs[n] = Cx::one();
        let mut m = Self::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = -am.trace() / Complex::new(S::from_usize(k).unwrap(), S::zero());
            coeffs[n - k] = c;
            m = am;
            for d in 0..n {
                m.set(d, d, m.at(d, d) + c);
            }
        }
        coeffs
    }

    pub fn det(&self) -> Cx<S> {
        let c0 = self.char_poly()[0];
        if self.dim % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        solve(self, &Self::identity(self.dim))
    }

    /// Matrix exponential by scaling and squaring with a Padé(13)
    /// approximant (Higham 2005). `exp(A) exp(-A)` stays within tolerance
    /// of the identity for the operator norms used in this crate.
    pub fn exp(&self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.dim;
        let theta13 = S::real(5.371_920_351_148_152);
        let norm = self.one_norm();
        let s = if norm > theta13 {
            (norm / theta13).log2().ceil().lossy_f64() as i32
        } else {
            0
        };
        let a = self.scale_re(S::real(0.5).powi(s));

        const B: [f64; 14] = [
            64764752532480000.0,
            32382376266240000.0,
            7771770303897600.0,
            1187353796428800.0,
            129060195264000.0,
            10559470521600.0,
            670442572800.0,
            33522128640.0,
            1323241920.0,
            40840800.0,
            960960.0,
            16380.0,
            182.0,
            1.0,
        ];
        let b = |k: usize| Complex::new(S::real(B[k]), S::zero());

        let id = Self::identity(n);
        let a2 = a.mul(&a);
        let a4 = a2.mul(&a2);
        let a6 = a2.mul(&a4);

        // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
        let inner_u = a6
            .scale(b(13))
            .add(&a4.scale(b(11)))
            .add(&a2.scale(b(9)));
        let u = a.mul(
            &a6.mul(&inner_u)
                .add(&a6.scale(b(7)))
                .add(&a4.scale(b(5)))
                .add(&a2.scale(b(3)))
                .add(&id.scale(b(1))),
        );
        let inner_v = a6
            .scale(b(12))
            .add(&a4.scale(b(10)))
            .add(&a2.scale(b(8)));
        let v = a6
            .mul(&inner_v)
            .add(&a6.scale(b(6)))
            .add(&a4.scale(b(4)))
            .add(&a2.scale(b(2)))
            .add(&id.scale(b(0)));

        let mut r = solve(&v.sub(&u), &v.add(&u))?;
        for _ in 0..s {
            r = r.mul(&r);
        }
        Ok(r)
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for SquareMatrix<S> {
    type Output = (S, S);
    fn index(&self, (i, j): (usize, usize)) -> &(S, S) {
        &self.entries[i * self.dim + j]
    }
}

impl<S: Scalar> std::fmt::Debug for SquareMatrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SquareMatrix(dim={})", self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                let z = self.at(i, j);
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// Commutator [A, B] = AB - BA.
pub fn bracket<S: Scalar>(a: &SquareMatrix<S>, b: &SquareMatrix<S>) -> Result<SquareMatrix<S>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(comm(a, b))
}

/// Commutator without the dimension check, for internal hot paths.
#[inline]
pub(crate) fn comm<S: Scalar>(a: &SquareMatrix<S>, b: &SquareMatrix<S>) -> SquareMatrix<S> {
    a.mul(b).sub(&b.mul(a))
}

/// Solve A X = B by Gaussian elimination with partial pivoting.
pub fn solve<S: Scalar>(a: &SquareMatrix<S>, b: &SquareMatrix<S>) -> Result<SquareMatrix<S>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let n = a.dim;
    let mut lu = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let mut piv = col;
        let mut best = lu.at(col, col).norm();
        for r in col + 1..n {
            let v = lu.at(r, col).norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best <= S::epsilon() * S::real(16.0) * a.one_norm().max(S::one()) {
            return Err(Error::SingularSystem("complex linear solve"));
        }
        if piv != col {
            for j in 0..n {
                let t = lu.at(col, j);
                lu.set(col, j, lu.at(piv, j));
                lu.set(piv, j, t);
                let t = x.at(col, j);
                x.set(col, j, x.at(piv, j));
                x.set(piv, j, t);
            }
        }
        let d = lu.at(col, col);
        for r in col + 1..n {
            let f = lu.at(r, col) / d;
            if f.norm() == S::zero() {
                continue;
            }
            for j in col..n {
                let v = lu.at(r, j) - f * lu.at(col, j);
                lu.set(r, j, v);
            }
            for j in 0..n {
                let v = x.at(r, j) - f * x.at(col, j);
                x.set(r, j, v);
            }
        }
    }
    for col in (0..n).rev() {
        let d = lu.at(col, col);
        for j in 0..n {
            x.set(col, j, x.at(col, j) / d);
        }
        for r in 0..col {
            let f = lu.at(r, col);
            for j in 0..n {
                let v = x.at(r, j) - f * x.at(col, j);
                x.set(r, j, v);
            }
        }
    }
    Ok(x)
}

/// Householder QR of a complex square matrix, with Q unitary of determinant
/// one and R upper triangular. Used to split a group element of Sl(n, C)
/// into its compact and triangular parts.
pub fn qr_special_unitary<S: Scalar>(
    g: &SquareMatrix<S>,
) -> Result<(SquareMatrix<S>, SquareMatrix<S>)> {
    let n = g.dim;
    let mut r = g.clone();
    let mut q = SquareMatrix::<S>::identity(n);
    for col in 0..n.saturating_sub(1) {
        // Householder vector for column `col`
        let mut norm2 = S::zero();
        for i in col..n {
            norm2 = norm2 + r.at(i, col).norm_sqr();
        }
        let norm = norm2.sqrt();
        if norm <= S::epsilon() * S::real(16.0) {
            continue;
        }
        let x0 = r.at(col, col);
        let phase = if x0.norm() > S::zero() {
            x0 / Complex::new(x0.norm(), S::zero())
        } else {
            Cx::<S>::one()
        };
        let alpha = -phase * Complex::new(norm, S::zero());
        let mut v: Vec<Cx<S>> = (col..n).map(|i| r.at(i, col)).collect();
        v[0] = v[0] - alpha;
        let vnorm2 = v.iter().map(|z| z.norm_sqr()).fold(S::zero(), |a, b| a + b);
        if vnorm2 <= S::epsilon() {
            continue;
        }
        let two = Complex::new(S::real(2.0) / vnorm2, S::zero());
        // apply H = I - 2 v v* / |v|^2 on the left of r and the right of q
        for j in 0..n {
            let mut dot = Cx::<S>::zero();
            for (k, vi) in v.iter().enumerate() {
                dot = dot + vi.conj() * r.at(col + k, j);
            }
            let dot = dot * two;
            for (k, vi) in v.iter().enumerate() {
                let val = r.at(col + k, j) - *vi * dot;
                r.set(col + k, j, val);
            }
        }
        for i in 0..n {
            let mut dot = Cx::<S>::zero();
            for (k, vi) in v.iter().enumerate() {
                dot = dot + q.at(i, col + k) * *vi;
            }
            let dot = dot * two;
            for (k, vi) in v.iter().enumerate() {
                let val = q.at(i, col + k) - dot * vi.conj();
                q.set(i, col + k, val);
            }
        }
    }
    // push the determinant phase of q into r so that det(Q) = 1
    let detq = q.det();
    let phase = detq / Complex::new(detq.norm(), S::zero());
    let mut q1 = q;
    let mut r1 = r;
    for i in 0..n {
        q1.set(i, 0, q1.at(i, 0) / phase);
    }
    for j in 0..n {
        r1.set(0, j, r1.at(0, j) * phase);
    }
    Ok((q1, r1))
}
