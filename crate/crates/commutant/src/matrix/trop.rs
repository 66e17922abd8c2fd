//! Dense matrices over the max-plus semiring with exact rational entries.

use num_rational::Rational64;

use crate::error::Error;
use crate::tropical::TropicalScalar;
use crate::Result;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    n: usize,
    entries: Vec<TropicalScalar>,
}

impl TropMatrix {
    pub fn new(n: usize, entries: Vec<TropicalScalar>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structure("matrix dimension must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Structure(format!(
                "matrix body has {} entries, expected {}",
                entries.len(),
                n * n
            )));
        }
        Ok(TropMatrix { n, entries })
    }

    /// All entries `-inf` (the additive zero matrix).
    pub fn zero(n: usize) -> Self {
        TropMatrix::new(n, vec![TropicalScalar::NegInf; n * n]).expect("well formed")
    }

    /// Rational 0 on the diagonal, `-inf` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = TropMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = TropicalScalar::one();
        }
        m
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n);
        let mut m = TropMatrix::zero(n);
        m.entries[i * n + j] = TropicalScalar::one();
        m
    }

    /// Every entry the multiplicative identity (rational 0).
    pub fn all_units(n: usize) -> Self {
        TropMatrix::new(n, vec![TropicalScalar::one(); n * n]).expect("well formed")
    }

    pub fn jordan(n: usize) -> Self {
        let mut m = TropMatrix::zero(n);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = TropicalScalar::one();
        }
        m
    }

    pub fn diagonal(diag: &[TropicalScalar]) -> Self {
        let n = diag.len();
        let mut m = TropMatrix::zero(n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// `a` on the diagonal, `-inf` off it.
    pub fn scalar(n: usize, a: TropicalScalar) -> Self {
        TropMatrix::diagonal(&vec![a; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[TropicalScalar] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> TropicalScalar {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TropicalScalar) {
        self.entries[i * self.n + j] = v;
    }

    fn same_space(&self, other: &TropMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "matrix dimensions differ: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Entrywise maximum.
    pub fn add(&self, other: &TropMatrix) -> Result<TropMatrix> {
        self.same_space(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.add(b))
            .collect();
        TropMatrix::new(self.n, entries)
    }

    /// Max-plus product.
    pub fn mul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        self.same_space(other)?;
        let n = self.n;
        let mut entries = vec![TropicalScalar::NegInf; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = TropicalScalar::NegInf;
                for t in 0..n {
                    acc = acc.add(self.entries[i * n + t].mul(other.entries[t * n + j]));
                }
                entries[i * n + j] = acc;
            }
        }
        TropMatrix::new(n, entries)
    }

    pub fn scalar_mul(&self, a: TropicalScalar) -> TropMatrix {
        let entries = self.entries.iter().map(|&e| a.mul(e)).collect();
        TropMatrix {
            n: self.n,
            entries,
        }
    }

    pub fn transpose(&self) -> TropMatrix {
        let n = self.n;
        let mut entries = vec![TropicalScalar::NegInf; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        TropMatrix { n, entries }
    }

    pub fn commutes(&self, other: &TropMatrix) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.mul(other)? == other.mul(self)?)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| i == j || self.entries[i * n + j] == TropicalScalar::NegInf)
        })
    }

    /// Scalar matrices `a (x) I` (including the all `-inf` zero matrix) are
    /// exactly the central elements of the tropical matrix semiring.
    pub fn is_scalar(&self) -> bool {
        if !self.is_diagonal() {
            return false;
        }
        let d0 = self.get(0, 0);
        (1..self.n).all(|i| self.get(i, i) == d0)
    }

    pub fn max_entry(&self) -> TropicalScalar {
        self.entries
            .iter()
            .copied()
            .max()
            .expect("matrices are nonempty")
    }

    /// Least finite entry, or `None` when every entry is `-inf`.
    pub fn min_finite_entry(&self) -> Option<Rational64> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                TropicalScalar::Finite(r) => Some(*r),
                TropicalScalar::NegInf => None,
            })
            .min()
    }

    pub fn row_max(&self, i: usize) -> TropicalScalar {
        (0..self.n)
            .map(|j| self.get(i, j))
            .max()
            .expect("rows are nonempty")
    }

    pub fn col_max(&self, j: usize) -> TropicalScalar {
        (0..self.n)
            .map(|i| self.get(i, j))
            .max()
            .expect("columns are nonempty")
    }

    /// If every row maximum and every column maximum equals one common value
    /// `a`, returns `Some(a)`.
    pub fn uniform_row_col_max(&self) -> Option<TropicalScalar> {
        let a = self.row_max(0);
        for i in 1..self.n {
            if self.row_max(i) != a {
                return None;
            }
        }
        for j in 0..self.n {
            if self.col_max(j) != a {
                return None;
            }
        }
        Some(a)
    }

    pub fn body_string(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn to_literal(&self) -> String {
        let mut out = format!("matrix {} over tropical\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Debug for TropMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[tropical | {}]", self.body_string())
    }
}

impl std::fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.body_string())
    }
}
