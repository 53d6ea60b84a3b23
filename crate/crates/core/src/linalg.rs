//! Minimal dense complex linear algebra for the small (2x2, 4x4) systems
//! this crate works with: Gaussian elimination, characteristic polynomials,
//! Durand-Kerner root finding, inverse-iteration eigenvectors, and a
//! scaling-and-squaring matrix exponential.

use num_complex::Complex64;

type C = Complex64;

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    a: Vec<C>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![C::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[C]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "from_rows requires a square layout");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x += y;
        }
        out
    }

    pub fn scale(&self, s: C) -> SquareMatrix {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Solve A x = b by Gaussian elimination with partial pivoting.
    /// Returns None when a pivot collapses to zero.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut a = self.a.clone();
        let mut x: Vec<C> = b.to_vec();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .norm()
                        .partial_cmp(&a[s * n + col].norm())
                        .unwrap()
                })
                .unwrap();
            if a[pivot_row * n + col].norm() == 0.0 {
                return None;
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                x.swap(col, pivot_row);
            }
            let pivot = a[col * n + col];
            for row in (col + 1)..n {
                let factor = a[row * n + col] / pivot;
                if factor == C::new(0.0, 0.0) {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= factor * v;
                }
                let xc = x[col];
                x[row] -= factor * xc;
            }
        }
        for col in (0..n).rev() {
            let mut acc = x[col];
            for j in (col + 1)..n {
                acc -= a[col * n + j] * x[j];
            }
            x[col] = acc / a[col * n + col];
        }
        Some(x)
    }

    /// Monic characteristic polynomial coefficients [c0, c1, ..., c_{n-1}, 1]
    /// via the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<C> {
        let n = self.n;
        let mut coeffs = vec![C::new(0.0, 0.0); n + 1];
        coeffs[n] = C::new(1.0, 0.0);
        let mut m = SquareMatrix::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let c = -m.trace() / C::new(k as f64, 0.0);
            coeffs[n - k] = c;
            for i in 0..n {
                m[(i, i)] += c;
            }
        }
        coeffs
    }

    /// All eigenvalues, as roots of the characteristic polynomial.
    pub fn eigenvalues(&self) -> Vec<C> {
        durand_kerner(&self.char_poly())
    }

    /// Eigenvector for a computed eigenvalue, by shifted inverse iteration.
    /// The returned vector has unit Euclidean norm.
    pub fn eigenvector(&self, lambda: C) -> Vec<C> {
        let n = self.n;
        // Shift slightly off the eigenvalue so A - lambda I stays invertible.
        let shift = lambda + C::new(1e-10 * (1.0 + lambda.norm()), 0.0);
        let mut shifted = self.clone();
        for i in 0..n {
            shifted[(i, i)] -= shift;
        }
        let mut v: Vec<C> = (0..n)
            .map(|i| C::new(1.0, 0.3 * (i as f64 + 1.0)))
            .collect();
        normalize(&mut v);
        for _ in 0..8 {
            match shifted.solve(&v) {
                Some(mut w) => {
                    normalize(&mut w);
                    v = w;
                }
                None => break,
            }
        }
        v
    }

    /// exp(self) by scaling and squaring with a Pade(6) approximant.
    pub fn expm(&self) -> SquareMatrix {
        let norm = self.one_norm();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(C::new(1.0 / 2f64.powi(s as i32), 0.0));
        let mut result = pade6(&scaled);
        for _ in 0..s {
            result = result.mul(&result);
        }
        result
    }
}

impl std::ops::Index<(usize, usize)> for SquareMatrix {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.a[i * self.n + j]
    }
}

fn normalize(v: &mut [C]) {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Pade(6) approximant to exp(A); accurate for ||A|| <= 0.5.
fn pade6(a: &SquareMatrix) -> SquareMatrix {
    // p(x) = sum b_k x^k, exp(A) ~ p(A) q(A)^-1 with q(x) = p(-x);
    // b_k = (2m-k)! m! / ((2m)! k! (m-k)!) at m = 6.
    const B: [f64; 7] = [
        1.0,
        0.5,
        5.0 / 44.0,
        1.0 / 66.0,
        1.0 / 792.0,
        1.0 / 15840.0,
        1.0 / 665280.0,
    ];
    let n = a.dim();
    let mut term = SquareMatrix::identity(n);
    let mut p = SquareMatrix::zeros(n);
    let mut q = SquareMatrix::zeros(n);
    for (k, &bk) in B.iter().enumerate() {
        let scaled = term.scale(C::new(bk, 0.0));
        p = p.add(&scaled);
        if k % 2 == 0 {
            q = q.add(&scaled);
        } else {
            q = q.add(&scaled.scale(C::new(-1.0, 0.0)));
        }
        term = term.mul(a);
    }
    // Solve q X = p column by column.
    let mut out = SquareMatrix::zeros(n);
    for j in 0..n {
        let col: Vec<C> = (0..n).map(|i| p[(i, j)]).collect();
        let x = q.solve(&col).expect("Pade denominator is singular");
        for i in 0..n {
            out[(i, j)] = x[i];
        }
    }
    out
}

/// Roots of a polynomial given by monic-normalizable coefficients
/// [c0, c1, ..., cn] (c0 + c1 z + ... + cn z^n), by the Durand-Kerner
/// simultaneous iteration.
pub fn durand_kerner(coeffs: &[C]) -> Vec<C> {
    let n = coeffs.len() - 1;
    assert!(n >= 1, "polynomial must have positive degree");
    let lead = coeffs[n];
    let monic: Vec<C> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    // Deliberately non-real, non-root-of-unity start points.
    let seed = C::new(0.4, 0.9);
    let mut z: Vec<C> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * C::new(radius, 0.0))
        .collect();
    let eval = |x: C| -> C {
        let mut acc = C::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..500 {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Collided iterates: nudge apart and retry next sweep.
                z[i] += C::new(1e-8 * radius, 1e-8 * radius);
                max_step = f64::MAX;
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 * radius.max(1.0) {
            break;
        }
    }
    z
}
