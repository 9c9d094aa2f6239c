//! Dense complex polynomials in `(x0, x1)`.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    // coefficient of x0^i x1^j at i * stride + j
    coeffs: Vec<Complex64>,
    stride: usize,
}

impl Poly2 {
    pub fn constant(c: Complex64, max_degree: usize) -> Self {
        let stride = max_degree + 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); stride * stride];
        coeffs[0] = c;
        Self { coeffs, stride }
    }

    fn zeros_like(&self) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); self.coeffs.len()],
            stride: self.stride,
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        if i < self.stride && j < self.stride {
            self.coeffs[i * self.stride + j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn at(&mut self, i: usize, j: usize) -> &mut Complex64 {
        assert!(i < self.stride && j < self.stride, "polynomial degree overflow");
        &mut self.coeffs[i * self.stride + j]
    }

    /// `a·x0·p + b·x1·p`
    pub fn mul_linear(&self, a: Complex64, b: Complex64) -> Self {
        let mut out = self.zeros_like();
        for i in 0..self.stride {
            for j in 0..self.stride {
                let c = self.coeff(i, j);
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                *out.at(i + 1, j) += a * c;
                *out.at(i, j + 1) += b * c;
            }
        }
        out
    }

    /// Partial derivative in `x0` (`axis = 0`) or `x1` (`axis = 1`).
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = self.zeros_like();
        for i in 0..self.stride {
            for j in 0..self.stride {
                let c = self.coeff(i, j);
                match axis {
                    0 if i > 0 => *out.at(i - 1, j) += c * i as f64,
                    1 if j > 0 => *out.at(i, j - 1) += c * j as f64,
                    _ => {}
                }
            }
        }
        out
    }

    pub fn axpy(&mut self, alpha: Complex64, other: &Self) {
        assert_eq!(self.stride, other.stride);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += alpha * b;
        }
    }

    pub fn scaled(mut self, alpha: Complex64) -> Self {
        for c in &mut self.coeffs {
            *c *= alpha;
        }
        self
    }

    pub fn eval(&self, x0: f64, x1: f64) -> Complex64 {
        // Horner in x0 over Horner in x1
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (0..self.stride).rev() {
            let mut row = Complex64::new(0.0, 0.0);
            for j in (0..self.stride).rev() {
                row = row * x1 + self.coeffs[i * self.stride + j];
            }
            acc = acc * x0 + row;
        }
        acc
    }
}
