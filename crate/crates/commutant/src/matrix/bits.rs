//! Boolean matrices up to 8 x 8 packed into a single u64.
//!
//! Entry (i, j) lives at bit `i*n + j`. Multiplication runs one word
//! operation per inner index: selecting column k of the left operand as
//! stride bits and multiplying by row k of the right operand broadcasts that
//! row into every selected row slot, and since row slots are disjoint the
//! carry-free sum is exactly the Boolean OR.

use std::sync::Arc;

use super::FinMatrix;
use crate::error::Error;
use crate::semiring::{boolean, SemiringTable};
use crate::Result;

/// `COL_STRIDE[n]` has bit `i*n` set for each `i < n`.
const fn col_strides() -> [u64; 9] {
    let mut table = [0u64; 9];
    let mut n = 1;
    while n <= 8 {
        let mut i = 0;
        while i < n {
            table[n] |= 1u64 << (i * n);
            i += 1;
        }
        n += 1;
    }
    table
}

const COL_STRIDE: [u64; 9] = col_strides();

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: u8,
    bits: u64,
}

impl BitMatrix {
    pub fn new(n: usize, bits: u64) -> Result<BitMatrix> {
        if n == 0 || n > 8 {
            return Err(Error::Domain(format!(
                "bit-packed matrices support 1 <= n <= 8, got {n}"
            )));
        }
        let used = n * n;
        if used < 64 && bits >> used != 0 {
            return Err(Error::Structure(format!(
                "bit pattern {bits:#x} has bits beyond the {used} used positions"
            )));
        }
        Ok(BitMatrix { n: n as u8, bits })
    }

    pub fn zero(n: usize) -> BitMatrix {
        BitMatrix::new(n, 0).expect("zero pattern is valid")
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zero(n);
        for i in 0..n {
            m.bits |= 1u64 << (i * n + i);
        }
        m
    }

    pub fn unit(n: usize, i: usize, j: usize) -> BitMatrix {
        assert!(i < n && j < n);
        let mut m = BitMatrix::zero(n);
        m.bits |= 1u64 << (i * n + j);
        m
    }

    pub fn all_units(n: usize) -> BitMatrix {
        let used = n * n;
        let bits = if used == 64 { u64::MAX } else { (1u64 << used) - 1 };
        BitMatrix { n: n as u8, bits }
    }

    pub fn jordan(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zero(n);
        for i in 0..n.saturating_sub(1) {
            m.bits |= 1u64 << (i * n + i + 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits >> (i * self.n as usize + j)) & 1 == 1
    }

    /// Boolean matrix product via the row-broadcast kernel; no per-entry
    /// loops.
    #[inline]
    pub fn mul(self, rhs: BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n as usize;
        let row_mask = (1u64 << n) - 1;
        let stride = COL_STRIDE[n];
        let mut c = 0u64;
        for k in 0..n {
            let brow = (rhs.bits >> (k * n)) & row_mask;
            let acol = (self.bits >> k) & stride;
            c |= acol.wrapping_mul(brow);
        }
        BitMatrix { n: self.n, bits: c }
    }

    /// Entrywise OR (Boolean matrix addition).
    #[inline]
    pub fn or(self, rhs: BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.n, rhs.n);
        BitMatrix {
            n: self.n,
            bits: self.bits | rhs.bits,
        }
    }

    pub fn transpose(self) -> BitMatrix {
        let n = self.n as usize;
        let mut bits = 0u64;
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    bits |= 1u64 << (j * n + i);
                }
            }
        }
        BitMatrix { n: self.n, bits }
    }

    #[inline]
    pub fn commutes(self, rhs: BitMatrix) -> bool {
        self.mul(rhs).bits == rhs.mul(self).bits
    }

    /// Converts the base-2 matrix code (first entry most significant) to the
    /// packed form (entry t at bit t).
    pub fn from_code(n: usize, code: u64) -> Result<BitMatrix> {
        let used = n * n;
        if n == 0 || n > 8 {
            return Err(Error::Domain(format!(
                "bit-packed matrices support 1 <= n <= 8, got {n}"
            )));
        }
        if used < 64 && code >> used != 0 {
            return Err(Error::Domain(format!(
                "code {code} out of range for {used}-bit matrices"
            )));
        }
        let mut bits = 0u64;
        for t in 0..used {
            if (code >> (used - 1 - t)) & 1 == 1 {
                bits |= 1u64 << t;
            }
        }
        Ok(BitMatrix { n: n as u8, bits })
    }

    pub fn code(&self) -> u64 {
        let used = self.n as usize * self.n as usize;
        let mut code = 0u64;
        for t in 0..used {
            code = (code << 1) | ((self.bits >> t) & 1);
        }
        code
    }

    pub fn from_fin(m: &FinMatrix) -> Result<BitMatrix> {
        if **m.semiring() != *boolean() {
            return Err(Error::Mismatch(format!(
                "bit-packed kernel requires the boolean semiring, got {}",
                m.semiring().name()
            )));
        }
        let n = m.n();
        if n > 8 {
            return Err(Error::Domain(format!(
                "bit-packed matrices support n <= 8, got {n}"
            )));
        }
        let mut bits = 0u64;
        for (t, &e) in m.entries().iter().enumerate() {
            if e != 0 {
                bits |= 1u64 << t;
            }
        }
        Ok(BitMatrix { n: n as u8, bits })
    }

    pub fn to_fin(self, semiring: Arc<SemiringTable>) -> FinMatrix {
        debug_assert_eq!(*semiring, *boolean());
        let n = self.n as usize;
        let entries = (0..n * n)
            .map(|t| ((self.bits >> t) & 1) as u8)
            .collect();
        FinMatrix::new(semiring, n, entries).expect("bit pattern expands to a valid matrix")
    }
}
