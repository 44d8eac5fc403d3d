use std::fmt;

use super::{Scalar, Semiring, TropicalError};

/// Dense row-major matrix over one of the two dioids.
///
/// Values are immutable after construction; every operation returns a new
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    semiring: Semiring,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        rows: usize,
        cols: usize,
        semiring: Semiring,
        data: Vec<Scalar>,
    ) -> Result<Matrix, TropicalError> {
        if data.len() != rows * cols {
            return Err(TropicalError::BadLength {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            semiring,
            data,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        semiring: Semiring,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            semiring,
            data,
        }
    }

    /// Builds a matrix from nested rows of `f64`, mapping IEEE infinities to
    /// the sentinels. Panics on ragged input.
    pub fn from_rows(semiring: Semiring, rows: &[Vec<f64>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(rows.len(), cols, semiring, |i, j| {
            Scalar::from_f64(rows[i][j])
        })
    }

    /// Column vector with finite entries.
    pub fn column(semiring: Semiring, values: &[f64]) -> Matrix {
        Matrix::from_fn(values.len(), 1, semiring, |i, _| Scalar::Finite(values[i]))
    }

    /// Column vector from arbitrary scalars.
    pub fn column_of(semiring: Semiring, values: &[Scalar]) -> Matrix {
        Matrix::from_fn(values.len(), 1, semiring, |i, _| values[i])
    }

    /// All-ε matrix.
    pub fn zeros(rows: usize, cols: usize, semiring: Semiring) -> Matrix {
        Matrix::from_fn(rows, cols, semiring, |_, _| semiring.zero())
    }

    /// Identity `E` (or `E'` for min-plus).
    pub fn identity(n: usize, semiring: Semiring) -> Matrix {
        Matrix::from_fn(n, n, semiring, |i, j| {
            if i == j {
                semiring.one()
            } else {
                semiring.zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Entries of a single-column matrix.
    pub fn as_column(&self) -> Vec<Scalar> {
        self.col(0)
    }

    pub fn map(&self, f: impl Fn(Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            semiring: self.semiring,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.semiring, |i, j| self.get(j, i))
    }

    /// Number of entries different from ε.
    pub fn support_len(&self) -> usize {
        self.data
            .iter()
            .filter(|&&v| !self.semiring.is_zero(v))
            .count()
    }

    fn check_same_shape(&self, other: &Matrix, op: &'static str) -> Result<(), TropicalError> {
        if self.semiring != other.semiring {
            return Err(TropicalError::SemiringMismatch {
                op,
                left: self.semiring,
                right: other.semiring,
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(TropicalError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    fn require_square(&self, op: &'static str) -> Result<usize, TropicalError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(TropicalError::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Entrywise ⊕.
    pub fn add(&self, other: &Matrix) -> Result<Matrix, TropicalError> {
        self.check_same_shape(other, "add")?;
        let s = self.semiring;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            semiring: s,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| s.add(a, b))
                .collect(),
        })
    }

    /// Matrix product `⊗` (or `⊗'` for min-plus operands).
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, TropicalError> {
        if self.semiring != other.semiring {
            return Err(TropicalError::SemiringMismatch {
                op: "mul",
                left: self.semiring,
                right: other.semiring,
            });
        }
        if self.cols != other.rows {
            return Err(TropicalError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let s = self.semiring;
        Ok(Matrix::from_fn(self.rows, other.cols, s, |i, j| {
            (0..self.cols).fold(s.zero(), |acc, k| {
                s.add(acc, s.mul(self.get(i, k), other.get(k, j)))
            })
        }))
    }

    /// `self ⊗ x` for a vector of scalars.
    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, TropicalError> {
        Ok(self.mul(&Matrix::column_of(self.semiring, x))?.as_column())
    }

    /// `λ ⊗ A`.
    pub fn scale(&self, lambda: Scalar) -> Matrix {
        let s = self.semiring;
        self.map(|v| s.mul(lambda, v))
    }

    /// `A^k`, with `A^0` the identity.
    pub fn power(&self, k: usize) -> Result<Matrix, TropicalError> {
        let n = self.require_square("power")?;
        let mut result = Matrix::identity(n, self.semiring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Conjugate `A♯`: transpose of the entrywise inverse, landing in the
    /// dual semiring.
    pub fn conjugate(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.semiring.dual(), |i, j| {
            -self.get(j, i)
        })
    }

    /// Entrywise negation with sentinel swap and flipped tag, without the
    /// transpose. Maps min-plus problems onto max-plus ones while keeping
    /// every circuit in place.
    pub fn negate_dual(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            semiring: self.semiring.dual(),
            data: self.data.iter().map(|&v| -v).collect(),
        }
    }

    /// `A⁺ = A ⊕ A² ⊕ … ⊕ A^d`.
    ///
    /// Fails with [`TropicalError::StarDiverges`] when a diagonal entry of the
    /// result is strictly better than `e` in the semiring's order (a positive
    /// circuit in max-plus, a negative one in min-plus).
    pub fn kleene_plus(&self) -> Result<Matrix, TropicalError> {
        let n = self.require_square("kleene_plus")?;
        let s = self.semiring;
        let mut acc = Matrix::zeros(n, n, s);
        let mut term = self.clone();
        for step in 1..=n {
            acc = acc.add(&term)?;
            if step < n {
                term = term.mul(self)?;
            }
        }
        for i in 0..n {
            let d = acc.get(i, i);
            if s.add(d, s.one()) != s.one() {
                return Err(TropicalError::StarDiverges { node: i });
            }
        }
        Ok(acc)
    }

    /// `A* = E ⊕ A⁺`; with no improving circuit this equals the sum of the
    /// first `d-1` powers.
    pub fn kleene_star(&self) -> Result<Matrix, TropicalError> {
        let plus = self.kleene_plus()?;
        plus.add(&Matrix::identity(self.rows, self.semiring))
    }

    /// Entrywise `self <= other` in the standard numeric order, whatever the
    /// tags are.
    pub fn leq(&self, other: &Matrix) -> Result<bool, TropicalError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(TropicalError::DimensionMismatch {
                op: "leq",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a <= b))
    }
}

/// Greatest `x` with `A ⊗ x <= y`, i.e. `A♯ ⊗' y`.
///
/// `a` must be max-plus; `y` is read in min-plus whatever its tag, since only
/// the numeric values matter for the order.
pub fn residual_left(a: &Matrix, y: &Matrix) -> Result<Matrix, TropicalError> {
    if a.semiring() != Semiring::MaxPlus {
        return Err(TropicalError::SemiringMismatch {
            op: "residual_left",
            left: a.semiring(),
            right: Semiring::MaxPlus,
        });
    }
    if a.rows() != y.rows() {
        return Err(TropicalError::DimensionMismatch {
            op: "residual_left",
            left: (a.rows(), a.cols()),
            right: (y.rows(), y.cols()),
        });
    }
    let y_min = Matrix::new(y.rows(), y.cols(), Semiring::MinPlus, y.entries().to_vec())?;
    a.conjugate().mul(&y_min)
}

impl fmt::Display for Matrix {
    /// Text format: header `rows cols tag`, then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.semiring)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
