//! Exhaustive enumeration over M_n(S) for finite S: centralizers, the
//! center, polynomial centralizers of the upper-shift matrix, and nilpotent
//! sets. All scans run in canonical code order, so results are deterministic
//! regardless of worker count.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Error;
use crate::matrix::{decode_entries, space_size, FinMatrix, TropMatrix};
use crate::semiring::{ElementId, SemiringTable};
use crate::Result;

/// Default cap on the number of matrices a single exhaustive scan may visit.
pub const ENUMERATION_BUDGET: u64 = 1 << 24;

/// Cap on candidate x ground-set certification work inside [`center_codes`].
const CERTIFY_BUDGET: u64 = 1 << 34;

/// Size of M_n(S) after checking it against a budget.
pub fn checked_space(semiring: &SemiringTable, n: usize, budget: u64) -> Result<u64> {
    let size = space_size(semiring.order(), n).ok_or_else(|| {
        Error::Budget(format!(
            "matrix space {}^{} does not fit in 64 bits",
            semiring.order(),
            n * n
        ))
    })?;
    if size > budget {
        return Err(Error::Budget(format!(
            "matrix space has {size} elements, over the enumeration budget {budget}"
        )));
    }
    Ok(size)
}

/// Advances `entries` to the next base-k vector; returns false on wrap.
#[inline]
pub(crate) fn increment_entries(k: usize, entries: &mut [ElementId]) -> bool {
    for slot in entries.iter_mut().rev() {
        if (*slot as usize) + 1 < k {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Both products compared entry by entry with early exit; the workhorse for
/// adjacency scans over table semirings.
#[inline]
pub(crate) fn commutes_entries(
    table: &SemiringTable,
    n: usize,
    a: &[ElementId],
    b: &[ElementId],
) -> bool {
    for i in 0..n {
        for j in 0..n {
            let mut ab = table.mul(a[i * n], b[j]);
            let mut ba = table.mul(b[i * n], a[j]);
            for t in 1..n {
                ab = table.add(ab, table.mul(a[i * n + t], b[t * n + j]));
                ba = table.add(ba, table.mul(b[i * n + t], a[t * n + j]));
            }
            if ab != ba {
                return false;
            }
        }
    }
    true
}

/// Runs `pred` over every code in `0..size` in parallel chunks and returns
/// the accepted codes in ascending order.
pub(crate) fn parallel_filter_codes<F>(size: u64, k: usize, n: usize, pred: F) -> Vec<u64>
where
    F: Fn(u64, &[ElementId]) -> bool + Sync,
{
    const CHUNK: u64 = 1 << 12;
    let chunks = size.div_ceil(CHUNK);
    let nested: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(size);
            let mut scratch = vec![0 as ElementId; n * n];
            decode_entries(k, start, &mut scratch);
            let mut hits = Vec::new();
            for code in start..end {
                if pred(code, &scratch) {
                    hits.push(code);
                }
                increment_entries(k, &mut scratch);
            }
            hits
        })
        .collect();
    nested.into_iter().flatten().collect()
}

/// All matrices commuting with `a`, in ascending code order. `a` itself is
/// included (everything commutes with itself).
pub fn centralizer(a: &FinMatrix, budget: u64) -> Result<Vec<FinMatrix>> {
    let semiring = a.semiring().clone();
    let n = a.n();
    let size = checked_space(&semiring, n, budget)?;
    let table = &*semiring;
    let target = a.entries();
    let codes = parallel_filter_codes(size, table.order(), n, |_, entries| {
        commutes_entries(table, n, target, entries)
    });
    codes
        .into_iter()
        .map(|code| FinMatrix::from_code(semiring.clone(), n, code))
        .collect()
}

/// All matrices of the form `a_0 I + a_1 J + ... + a_{n-1} J^{n-1}` where `J`
/// is the upper-shift matrix (or its transpose), deduplicated and sorted by
/// code.
pub fn polynomial_centralizer_j(
    semiring: Arc<SemiringTable>,
    n: usize,
    transposed: bool,
) -> Result<Vec<FinMatrix>> {
    let k = semiring.order();
    let mut tuples: u64 = 1;
    for _ in 0..n {
        tuples = tuples
            .checked_mul(k as u64)
            .filter(|&t| t <= ENUMERATION_BUDGET)
            .ok_or_else(|| {
                Error::Budget(format!(
                    "coefficient space {k}^{n} exceeds the enumeration budget"
                ))
            })?;
    }
    let j = if transposed {
        FinMatrix::jordan(semiring.clone(), n).transpose()
    } else {
        FinMatrix::jordan(semiring.clone(), n)
    };
    let mut powers = Vec::with_capacity(n);
    powers.push(FinMatrix::identity(semiring.clone(), n));
    for i in 1..n {
        powers.push(powers[i - 1].mul(&j)?);
    }
    let mut coeff = vec![0 as ElementId; n];
    let mut seen = BTreeSet::new();
    loop {
        let mut acc = FinMatrix::zero(semiring.clone(), n);
        for (i, &c) in coeff.iter().enumerate() {
            acc = acc.add(&powers[i].scalar_mul(c)?)?;
        }
        seen.insert(acc.code());
        if !increment_entries(k, &mut coeff) {
            break;
        }
    }
    seen.into_iter()
        .map(|code| FinMatrix::from_code(semiring.clone(), n, code))
        .collect()
}

/// Codes of the central matrices of M_n(S), ascending.
///
/// Candidates are filtered against the unit matrices and identity-plus-unit
/// matrices first, then certified against the whole ground set, so the
/// result does not depend on any structural assumption about S.
pub fn center_codes(semiring: &Arc<SemiringTable>, n: usize, budget: u64) -> Result<Vec<u64>> {
    let size = checked_space(semiring, n, budget)?;
    let table = &**semiring;
    let k = table.order();
    let mut generators: Vec<Vec<ElementId>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let unit = FinMatrix::unit(semiring.clone(), n, i, j);
            let plus = FinMatrix::identity(semiring.clone(), n).add(&unit)?;
            generators.push(unit.entries().to_vec());
            generators.push(plus.entries().to_vec());
        }
    }
    let candidates = parallel_filter_codes(size, k, n, |_, entries| {
        generators
            .iter()
            .all(|g| commutes_entries(table, n, entries, g))
    });
    let work = candidates.len() as u64 * size;
    if work > CERTIFY_BUDGET {
        return Err(Error::Budget(format!(
            "center certification needs {work} commutation checks, over the cap {CERTIFY_BUDGET}"
        )));
    }
    let certified: Vec<u64> = candidates
        .into_par_iter()
        .filter(|&cand| {
            let mut cm = vec![0 as ElementId; n * n];
            decode_entries(k, cand, &mut cm);
            let mut other = vec![0 as ElementId; n * n];
            let mut code = 0u64;
            loop {
                if !commutes_entries(table, n, &cm, &other) {
                    return false;
                }
                code += 1;
                if code >= size || !increment_entries(k, &mut other) {
                    return true;
                }
            }
        })
        .collect();
    Ok(certified)
}

/// Central matrices of M_n(S) as matrices, ascending code order.
pub fn center(semiring: &Arc<SemiringTable>, n: usize, budget: u64) -> Result<Vec<FinMatrix>> {
    center_codes(semiring, n, budget)?
        .into_iter()
        .map(|code| FinMatrix::from_code(semiring.clone(), n, code))
        .collect()
}

/// Codes of all nilpotent matrices in M_n(S) (some power is the zero
/// matrix), ascending. Power sequences are followed until they hit zero or
/// cycle.
pub fn nilpotent_codes(semiring: &Arc<SemiringTable>, n: usize, budget: u64) -> Result<Vec<u64>> {
    let size = checked_space(semiring, n, budget)?;
    let zero = FinMatrix::zero(semiring.clone(), n);
    let codes: Vec<u64> = (0..size)
        .filter(|&code| {
            let a = FinMatrix::from_code(semiring.clone(), n, code).expect("code in range");
            let mut p = a.clone();
            let mut seen = HashSet::new();
            loop {
                if p == zero {
                    return true;
                }
                if !seen.insert(p.code()) {
                    return false;
                }
                p = p.mul(&a).expect("same space");
            }
        })
        .collect();
    Ok(codes)
}

/// For a non-scalar tropical matrix, a unit matrix (or the all-units matrix)
/// that fails to commute with it; `None` for scalar matrices. This is the
/// certificate behind treating scalars as the whole tropical center.
pub fn tropical_central_witness(a: &TropMatrix) -> Option<TropMatrix> {
    if a.is_scalar() {
        return None;
    }
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            let u = TropMatrix::unit(n, i, j);
            if !a.commutes(&u).expect("same dimension") {
                return Some(u);
            }
        }
    }
    let e = TropMatrix::all_units(n);
    if !a.commutes(&e).expect("same dimension") {
        return Some(e);
    }
    unreachable!("non-scalar tropical matrices fail against a unit matrix or the all-units matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{boolean, chain, modular};
    use crate::tropical::TropicalScalar;

    /// Independent oracle: centralizer by direct product comparison over the
    /// whole space, no shared kernels.
    fn brute_centralizer(a: &FinMatrix) -> Vec<u64> {
        let semiring = a.semiring().clone();
        let n = a.n();
        let size = space_size(semiring.order(), n).unwrap();
        (0..size)
            .filter(|&code| {
                let m = FinMatrix::from_code(semiring.clone(), n, code).unwrap();
                m.mul(a).unwrap() == a.mul(&m).unwrap()
            })
            .collect()
    }

    /// Independent oracle: center as the matrices commuting with every
    /// matrix, no generator filtering.
    fn brute_center(semiring: &Arc<SemiringTable>, n: usize) -> Vec<u64> {
        let size = space_size(semiring.order(), n).unwrap();
        let all: Vec<FinMatrix> = (0..size)
            .map(|code| FinMatrix::from_code(semiring.clone(), n, code).unwrap())
            .collect();
        all.iter()
            .filter(|m| {
                all.iter()
                    .all(|x| m.mul(x).unwrap() == x.mul(m).unwrap())
            })
            .map(|m| m.code())
            .collect()
    }

    #[test]
    fn shift_centralizer_boolean_n2() {
        let b = boolean();
        let j = FinMatrix::jordan(b.clone(), 2);
        let got = centralizer(&j, ENUMERATION_BUDGET).unwrap();
        let codes: Vec<u64> = got.iter().map(|m| m.code()).collect();
        assert_eq!(codes, brute_centralizer(&j));
        // Exactly the polynomials in J: 0, J, I, I+J.
        let expect: BTreeSet<u64> = [
            FinMatrix::zero(b.clone(), 2).code(),
            j.code(),
            FinMatrix::identity(b.clone(), 2).code(),
            FinMatrix::identity(b.clone(), 2).add(&j).unwrap().code(),
        ]
        .into_iter()
        .collect();
        assert_eq!(codes.into_iter().collect::<BTreeSet<_>>(), expect);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn polynomial_centralizer_equals_enumerated_small_cases() {
        for (semiring, n) in [
            (boolean(), 2),
            (boolean(), 3),
            (modular(4).unwrap(), 2),
            (modular(2).unwrap(), 3),
            (chain(3).unwrap(), 2),
        ] {
            for transposed in [false, true] {
                let j = if transposed {
                    FinMatrix::jordan(semiring.clone(), n).transpose()
                } else {
                    FinMatrix::jordan(semiring.clone(), n)
                };
                let enumerated: Vec<u64> = centralizer(&j, ENUMERATION_BUDGET)
                    .unwrap()
                    .iter()
                    .map(|m| m.code())
                    .collect();
                let poly: Vec<u64> =
                    polynomial_centralizer_j(semiring.clone(), n, transposed)
                        .unwrap()
                        .iter()
                        .map(|m| m.code())
                        .collect();
                assert_eq!(
                    enumerated,
                    poly,
                    "{} n={n} transposed={transposed}",
                    semiring.name()
                );
            }
        }
    }

    #[test]
    fn polynomial_centralizer_sizes() {
        assert_eq!(
            polynomial_centralizer_j(modular(4).unwrap(), 2, false)
                .unwrap()
                .len(),
            16
        );
        assert_eq!(
            polynomial_centralizer_j(modular(2).unwrap(), 3, false)
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            polynomial_centralizer_j(boolean(), 2, false).unwrap().len(),
            4
        );
    }

    #[test]
    fn center_is_scalars_for_small_builtins() {
        for (semiring, n) in [
            (boolean(), 2),
            (modular(4).unwrap(), 2),
            (chain(3).unwrap(), 2),
        ] {
            let got = center_codes(&semiring, n, ENUMERATION_BUDGET).unwrap();
            assert_eq!(got, brute_center(&semiring, n), "{}", semiring.name());
            let scalars: Vec<u64> = (0..semiring.order() as ElementId)
                .map(|a| {
                    FinMatrix::identity(semiring.clone(), n)
                        .scalar_mul(a)
                        .unwrap()
                        .code()
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            assert_eq!(got, scalars, "{}", semiring.name());
        }
    }

    #[test]
    fn nilpotents_over_entire_antinegative_semirings_are_strictly_triangular() {
        let b = boolean();
        let got = nilpotent_codes(&b, 2, ENUMERATION_BUDGET).unwrap();
        let expect: Vec<u64> = [
            FinMatrix::zero(b.clone(), 2).code(),
            FinMatrix::unit(b.clone(), 2, 0, 1).code(),
            FinMatrix::unit(b.clone(), 2, 1, 0).code(),
        ]
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
        assert_eq!(got, expect);

        let c3 = chain(3).unwrap();
        let got = nilpotent_codes(&c3, 2, ENUMERATION_BUDGET).unwrap();
        assert_eq!(got.len(), 5, "zero plus two strict triangles times two nonzero scalars");
    }

    #[test]
    fn modular_nilpotents_can_need_high_powers() {
        // Over Z_4, [[2,1],[2,2]] squares to 2I and only its fourth power
        // vanishes; the cycle detector must not cut off early.
        let z4 = modular(4).unwrap();
        let m = FinMatrix::new(z4.clone(), 2, vec![2, 1, 2, 2]).unwrap();
        assert_ne!(m.pow(2).unwrap(), FinMatrix::zero(z4.clone(), 2));
        assert_eq!(m.pow(4).unwrap(), FinMatrix::zero(z4.clone(), 2));
        let nil = nilpotent_codes(&z4, 2, ENUMERATION_BUDGET).unwrap();
        assert!(nil.contains(&m.code()));
    }

    #[test]
    fn tropical_centrality_witnesses() {
        assert!(tropical_central_witness(&TropMatrix::zero(3)).is_none());
        assert!(tropical_central_witness(&TropMatrix::scalar(
            3,
            TropicalScalar::finite(-7, 2)
        ))
        .is_none());
        let d = TropMatrix::diagonal(&[
            TropicalScalar::integer(0),
            TropicalScalar::integer(-1),
            TropicalScalar::integer(-2),
        ]);
        let w = tropical_central_witness(&d).expect("distinct diagonal is not central");
        assert!(!d.commutes(&w).unwrap());
        let u = TropMatrix::unit(4, 2, 1);
        assert!(tropical_central_witness(&u).is_some());
    }
}
