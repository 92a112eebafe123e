use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact complex rational.
pub type Scalar = Complex<BigRational>;

pub fn scalar(re: (i64, i64), im: (i64, i64)) -> Scalar {
    Complex::new(
        BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
        BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
    )
}

pub fn one() -> Scalar {
    Complex::new(BigRational::one(), BigRational::zero())
}

/// Sparse matrix; each row holds its nonzero entries sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, one())]).collect(),
        }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for (i, row) in entries.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix of the map sending basis vector `j` to basis vector `f(j)`.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for j in 0..cols {
            m.set(f(j), j, one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let e = acc.entry(*j).or_insert_with(Scalar::zero);
                    *e = &*e + a * b;
                }
            }
            out.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    /// Kronecker product, left factor most significant.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i1, row1) in self.data.iter().enumerate() {
            for i2 in 0..other.rows {
                let r = &mut out.data[i1 * other.rows + i2];
                for (j1, a) in row1 {
                    for (j2, b) in &other.data[i2] {
                        r.push((j1 * other.cols + j2, a * b));
                    }
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            out.data[j].push((i, v.conj()));
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }
}

/// `m ⊗ n -> n ⊗ m`.
pub fn swap(m: usize, n: usize) -> Matrix {
    Matrix::from_fn(m * n, m * n, |k| (k % n) * m + k / n)
}

/// `Σ e_i ⊗ e_i` as a column.
pub fn cup(d: usize) -> Matrix {
    let mut c = Matrix::zeros(d * d, 1);
    for i in 0..d {
        c.set(i * d + i, 0, one());
    }
    c
}

pub fn cap(d: usize) -> Matrix {
    cup(d).dagger()
}

/// Rearranges tensor factors of sizes `dims`: output factor `j` is input factor `sources[j]`.
pub fn permute_factors(dims: &[usize], sources: &[usize]) -> Matrix {
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = sources.iter().map(|&s| dims[s]).collect();
    Matrix::from_fn(total, total, |col| {
        let mut digits = vec![0; dims.len()];
        let mut rest = col;
        for k in (0..dims.len()).rev() {
            digits[k] = rest % dims[k];
            rest /= dims[k];
        }
        sources
            .iter()
            .zip(&out_dims)
            .fold(0, |acc, (&s, &d)| acc * d + digits[s])
    })
}
