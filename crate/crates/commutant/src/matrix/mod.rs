//! Square matrices over finite semiring tables and over the tropical
//! semiring, plus the packed Boolean kernel.

mod bits;
mod parse;
mod trop;

pub use bits::BitMatrix;
pub use parse::{parse_matrix, parse_matrix_file_name};
pub use trop::TropMatrix;

use std::sync::Arc;

use crate::error::Error;
use crate::semiring::{boolean, ElementId, SemiringTable};
use crate::Result;

/// Number of n x n matrices over a k-element semiring, `k^(n^2)`, or `None`
/// on u64 overflow.
pub fn space_size(k: usize, n: usize) -> Option<u64> {
    let mut size: u64 = 1;
    for _ in 0..n * n {
        size = size.checked_mul(k as u64)?;
    }
    Some(size)
}

/// Writes the row-major digits of `code` in base `k` into `out`. The first
/// entry is the most significant digit, so numeric order of codes equals
/// lexicographic order of entry vectors.
pub fn decode_entries(k: usize, code: u64, out: &mut [ElementId]) {
    let mut c = code;
    for slot in out.iter_mut().rev() {
        *slot = (c % k as u64) as ElementId;
        c /= k as u64;
    }
    debug_assert_eq!(c, 0, "code out of range for the matrix space");
}

/// Inverse of [`decode_entries`].
pub fn encode_entries(k: usize, entries: &[ElementId]) -> u64 {
    entries
        .iter()
        .fold(0u64, |acc, &e| acc * k as u64 + e as u64)
}

/// A dense n x n matrix over a finite semiring table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinMatrix {
    semiring: Arc<SemiringTable>,
    n: usize,
    entries: Vec<ElementId>,
}

impl FinMatrix {
    pub fn new(semiring: Arc<SemiringTable>, n: usize, entries: Vec<ElementId>) -> Result<Self> {
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
        let k = semiring.order();
        if let Some(bad) = entries.iter().find(|&&e| e as usize >= k) {
            return Err(Error::Structure(format!(
                "entry index {bad} out of range for semiring of order {k}"
            )));
        }
        Ok(FinMatrix {
            semiring,
            n,
            entries,
        })
    }

    pub fn zero(semiring: Arc<SemiringTable>, n: usize) -> Self {
        FinMatrix::new(semiring, n, vec![0; n * n]).expect("zero matrix is well formed")
    }

    pub fn identity(semiring: Arc<SemiringTable>, n: usize) -> Self {
        let mut m = FinMatrix::zero(semiring, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Unit matrix with a single 1 at `(i, j)` (0-based).
    pub fn unit(semiring: Arc<SemiringTable>, n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "unit position out of range");
        let mut m = FinMatrix::zero(semiring, n);
        m.entries[i * n + j] = 1;
        m
    }

    /// Matrix with every entry 1.
    pub fn all_units(semiring: Arc<SemiringTable>, n: usize) -> Self {
        let len = n * n;
        FinMatrix::new(semiring, n, vec![1; len]).expect("all-units matrix is well formed")
    }

    /// Upper-shift matrix with 1s on the superdiagonal.
    pub fn jordan(semiring: Arc<SemiringTable>, n: usize) -> Self {
        let mut m = FinMatrix::zero(semiring, n);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = 1;
        }
        m
    }

    pub fn semiring(&self) -> &Arc<SemiringTable> {
        &self.semiring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[ElementId] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ElementId {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ElementId) {
        assert!((v as usize) < self.semiring.order());
        self.entries[i * self.n + j] = v;
    }

    pub(crate) fn same_space(&self, other: &FinMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "matrix dimensions differ: {} vs {}",
                self.n, other.n
            )));
        }
        if !Arc::ptr_eq(&self.semiring, &other.semiring) && self.semiring != other.semiring {
            return Err(Error::Mismatch(format!(
                "matrices live over different semirings: {} vs {}",
                self.semiring.name(),
                other.semiring.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FinMatrix) -> Result<FinMatrix> {
        self.same_space(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.semiring.add(a, b))
            .collect();
        FinMatrix::new(self.semiring.clone(), self.n, entries)
    }

    pub fn mul(&self, other: &FinMatrix) -> Result<FinMatrix> {
        self.same_space(other)?;
        let n = self.n;
        let s = &self.semiring;
        let mut entries = vec![0 as ElementId; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = s.mul(self.entries[i * n], other.entries[j]);
                for t in 1..n {
                    let term = s.mul(self.entries[i * n + t], other.entries[t * n + j]);
                    acc = s.add(acc, term);
                }
                entries[i * n + j] = acc;
            }
        }
        FinMatrix::new(self.semiring.clone(), n, entries)
    }

    pub fn scalar_mul(&self, a: ElementId) -> Result<FinMatrix> {
        if a as usize >= self.semiring.order() {
            return Err(Error::Domain(format!(
                "scalar index {a} out of range for semiring {}",
                self.semiring.name()
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|&e| self.semiring.mul(a, e))
            .collect();
        FinMatrix::new(self.semiring.clone(), self.n, entries)
    }

    pub fn transpose(&self) -> FinMatrix {
        let n = self.n;
        let mut entries = vec![0 as ElementId; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        FinMatrix {
            semiring: self.semiring.clone(),
            n,
            entries,
        }
    }

    pub fn pow(&self, e: u32) -> Result<FinMatrix> {
        let mut acc = FinMatrix::identity(self.semiring.clone(), self.n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn commutes(&self, other: &FinMatrix) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Support matrix over the Boolean semiring: entry 1 wherever this
    /// matrix is nonzero.
    pub fn supp(&self) -> FinMatrix {
        let entries = self
            .entries
            .iter()
            .map(|&e| if e == 0 { 0 } else { 1 })
            .collect();
        FinMatrix {
            semiring: boolean(),
            n: self.n,
            entries,
        }
    }

    /// Base-k integer code of the entry vector, row major, first entry most
    /// significant. Codes order matrices lexicographically.
    pub fn code(&self) -> u64 {
        encode_entries(self.semiring.order(), &self.entries)
    }

    pub fn from_code(semiring: Arc<SemiringTable>, n: usize, code: u64) -> Result<FinMatrix> {
        let size = space_size(semiring.order(), n)
            .ok_or_else(|| Error::Budget(format!("matrix space for n={n} overflows u64")))?;
        if code >= size {
            return Err(Error::Domain(format!(
                "code {code} out of range for {} matrices",
                size
            )));
        }
        let mut entries = vec![0 as ElementId; n * n];
        decode_entries(semiring.order(), code, &mut entries);
        FinMatrix::new(semiring, n, entries)
    }

    /// Single-line rendering of the entries, rows separated by `;`.
    pub fn body_string(&self) -> String {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.semiring.element_name(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Multi-line matrix literal accepted by [`parse_matrix`].
    pub fn to_literal(&self) -> String {
        let mut out = format!("matrix {} over {}\n", self.n, self.semiring.name());
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n)
                .map(|j| self.semiring.element_name(self.get(i, j)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Debug for FinMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} | {}]", self.semiring.name(), self.body_string())
    }
}

impl std::fmt::Display for FinMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.body_string())
    }
}

/// A matrix over either scalar domain, used at I/O boundaries.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Finite(FinMatrix),
    Tropical(TropMatrix),
}

impl AnyMatrix {
    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Finite(m) => m.n(),
            AnyMatrix::Tropical(m) => m.n(),
        }
    }

    pub fn semiring_name(&self) -> &str {
        match self {
            AnyMatrix::Finite(m) => m.semiring().name(),
            AnyMatrix::Tropical(_) => "tropical",
        }
    }

    pub fn commutes(&self, other: &AnyMatrix) -> Result<bool> {
        match (self, other) {
            (AnyMatrix::Finite(a), AnyMatrix::Finite(b)) => a.commutes(b),
            (AnyMatrix::Tropical(a), AnyMatrix::Tropical(b)) => a.commutes(b),
            _ => Err(Error::Mismatch(
                "cannot compare a finite-semiring matrix with a tropical matrix".into(),
            )),
        }
    }

    pub fn to_literal(&self) -> String {
        match self {
            AnyMatrix::Finite(m) => m.to_literal(),
            AnyMatrix::Tropical(m) => m.to_literal(),
        }
    }

    pub fn body_string(&self) -> String {
        match self {
            AnyMatrix::Finite(m) => m.body_string(),
            AnyMatrix::Tropical(m) => m.body_string(),
        }
    }

    pub fn as_finite(&self) -> Result<&FinMatrix> {
        match self {
            AnyMatrix::Finite(m) => Ok(m),
            AnyMatrix::Tropical(_) => Err(Error::Mismatch(
                "expected a finite-semiring matrix, found a tropical one".into(),
            )),
        }
    }

    pub fn as_tropical(&self) -> Result<&TropMatrix> {
        match self {
            AnyMatrix::Tropical(m) => Ok(m),
            AnyMatrix::Finite(_) => Err(Error::Mismatch(
                "expected a tropical matrix, found a finite-semiring one".into(),
            )),
        }
    }
}
