//! Finite semirings presented by explicit operation tables.
//!
//! A `SemiringTable` stores the addition and multiplication tables of a
//! finite semiring over at most [`MAX_ORDER`] elements. Tables are kept in a
//! canonical element order: index 0 is the additive identity and index 1 the
//! multiplicative identity. The loader reorders arbitrary input tables into
//! this form; everything downstream (matrix codes, graph vertex indices,
//! exported artifacts) relies on it.

mod parse;

pub use parse::{parse_semiring_table, serialize_semiring_table};

use std::sync::{Arc, OnceLock};

use crate::error::Error;
use crate::Result;

/// Index of an element within a [`SemiringTable`].
pub type ElementId = u8;

/// Largest supported table order. Keeps `ElementId` in one byte and bounds
/// exhaustive M_2(S) scans at 64^4 matrices.
pub const MAX_ORDER: usize = 64;

/// A finite semiring given by k x k addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct SemiringTable {
    name: String,
    elements: Vec<String>,
    add: Vec<ElementId>,
    mul: Vec<ElementId>,
}

impl std::fmt::Debug for SemiringTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SemiringTable")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}

impl SemiringTable {
    /// Builds a table from raw parts, checking structure only (dimensions,
    /// entry ranges, name sanity). Axioms are checked separately by
    /// [`SemiringTable::validate_axioms`] so that broken tables can still be
    /// inspected and reported on.
    pub fn from_parts(
        name: impl Into<String>,
        elements: Vec<String>,
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
    ) -> Result<Self> {
        let k = elements.len();
        if k < 2 {
            return Err(Error::Structure(format!(
                "semiring order must be at least 2, got {k}"
            )));
        }
        if k > MAX_ORDER {
            return Err(Error::Structure(format!(
                "semiring order {k} exceeds maximum supported order {MAX_ORDER}"
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Structure(format!("element {i} has an empty name")));
            }
            if e.contains(':') || e.contains('#') {
                return Err(Error::Structure(format!(
                    "element name {e:?} contains a reserved character"
                )));
            }
            if elements[..i].contains(e) {
                return Err(Error::Structure(format!("duplicate element name {e:?}")));
            }
        }
        for (label, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != k * k {
                return Err(Error::Structure(format!(
                    "{label} table has {} entries, expected {}",
                    table.len(),
                    k * k
                )));
            }
            if let Some(bad) = table.iter().find(|&&e| e as usize >= k) {
                return Err(Error::Structure(format!(
                    "{label} table contains out-of-range element index {bad}"
                )));
            }
        }
        Ok(SemiringTable {
            name: name.into(),
            elements,
            add,
            mul,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_name(&self, id: ElementId) -> &str {
        &self.elements[id as usize]
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn element_id(&self, name: &str) -> Option<ElementId> {
        self.elements
            .iter()
            .position(|e| e == name)
            .map(|i| i as ElementId)
    }

    pub fn zero(&self) -> ElementId {
        0
    }

    pub fn one(&self) -> ElementId {
        1
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    pub fn add_table(&self) -> &[ElementId] {
        &self.add
    }

    pub fn mul_table(&self) -> &[ElementId] {
        &self.mul
    }

    /// Mutates one table cell in place. Exists for axiom fuzzing: mutated
    /// tables are expected to fail [`SemiringTable::validate_axioms`].
    pub fn set_cell(&mut self, table: TableSelector, a: ElementId, b: ElementId, v: ElementId) {
        let k = self.elements.len();
        assert!((a as usize) < k && (b as usize) < k && (v as usize) < k);
        let idx = a as usize * k + b as usize;
        match table {
            TableSelector::Add => self.add[idx] = v,
            TableSelector::Mul => self.mul[idx] = v,
        }
    }

    pub fn cell(&self, table: TableSelector, a: ElementId, b: ElementId) -> ElementId {
        match table {
            TableSelector::Add => self.add(a, b),
            TableSelector::Mul => self.mul(a, b),
        }
    }

    fn find_two_sided_identity(&self, table: &[ElementId]) -> Option<ElementId> {
        let k = self.elements.len();
        (0..k)
            .find(|&e| (0..k).all(|a| table[e * k + a] as usize == a && table[a * k + e] as usize == a))
            .map(|e| e as ElementId)
    }

    /// Reorders elements so the additive identity sits at index 0 and the
    /// multiplicative identity at index 1. Fails if either identity is
    /// missing or if they coincide (the trivial semiring is rejected).
    pub fn canonicalize(&self) -> Result<SemiringTable> {
        let k = self.elements.len();
        let zero = self
            .find_two_sided_identity(&self.add)
            .ok_or_else(|| Error::Structure("table has no additive identity element".into()))?;
        let one = self
            .find_two_sided_identity(&self.mul)
            .ok_or_else(|| Error::Structure("table has no multiplicative identity element".into()))?;
        if zero == one {
            return Err(Error::Structure(
                "additive and multiplicative identities coincide".into(),
            ));
        }
        // perm[old] = new; identities first, the rest keep relative order.
        let mut perm = vec![0 as ElementId; k];
        perm[zero as usize] = 0;
        perm[one as usize] = 1;
        let mut next = 2;
        for old in 0..k {
            if old != zero as usize && old != one as usize {
                perm[old] = next;
                next += 1;
            }
        }
        let mut elements = vec![String::new(); k];
        for old in 0..k {
            elements[perm[old] as usize] = self.elements[old].clone();
        }
        let remap = |table: &[ElementId]| {
            let mut out = vec![0 as ElementId; k * k];
            for a in 0..k {
                for b in 0..k {
                    out[perm[a] as usize * k + perm[b] as usize] = perm[table[a * k + b] as usize];
                }
            }
            out
        };
        Ok(SemiringTable {
            name: self.name.clone(),
            elements,
            add: remap(&self.add),
            mul: remap(&self.mul),
        })
    }

    pub fn is_canonical(&self) -> bool {
        self.find_two_sided_identity(&self.add) == Some(0)
            && self.find_two_sided_identity(&self.mul) == Some(1)
    }

    /// Checks every semiring axiom and reports each violated one with the
    /// first counterexample in scan order. An empty report means the table is
    /// a semiring in canonical element order.
    pub fn validate_axioms(&self) -> AxiomReport {
        let k = self.elements.len();
        let mut violations = Vec::new();
        let mut record = |axiom: Axiom, witness: &[ElementId], table: &SemiringTable| {
            let names = witness
                .iter()
                .map(|&e| table.element_name(e).to_string())
                .collect::<Vec<_>>()
                .join(", ");
            violations.push(AxiomViolation {
                axiom,
                witness: witness.to_vec(),
                witness_names: format!("({names})"),
            });
        };

        'comm: for a in 0..k as ElementId {
            for b in 0..k as ElementId {
                if self.add(a, b) != self.add(b, a) {
                    record(Axiom::AddCommutative, &[a, b], self);
                    break 'comm;
                }
            }
        }
        'aassoc: for a in 0..k as ElementId {
            for b in 0..k as ElementId {
                for c in 0..k as ElementId {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        record(Axiom::AddAssociative, &[a, b, c], self);
                        break 'aassoc;
                    }
                }
            }
        }
        if let Some(a) = (0..k as ElementId).find(|&a| self.add(0, a) != a || self.add(a, 0) != a) {
            record(Axiom::AddIdentity, &[a], self);
        }
        'massoc: for a in 0..k as ElementId {
            for b in 0..k as ElementId {
                for c in 0..k as ElementId {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        record(Axiom::MulAssociative, &[a, b, c], self);
                        break 'massoc;
                    }
                }
            }
        }
        if let Some(a) = (0..k as ElementId).find(|&a| self.mul(1, a) != a || self.mul(a, 1) != a) {
            record(Axiom::MulIdentity, &[a], self);
        }
        'ldist: for a in 0..k as ElementId {
            for b in 0..k as ElementId {
                for c in 0..k as ElementId {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        record(Axiom::LeftDistributive, &[a, b, c], self);
                        break 'ldist;
                    }
                }
            }
        }
        'rdist: for a in 0..k as ElementId {
            for b in 0..k as ElementId {
                for c in 0..k as ElementId {
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        record(Axiom::RightDistributive, &[a, b, c], self);
                        break 'rdist;
                    }
                }
            }
        }
        if let Some(a) = (0..k as ElementId).find(|&a| self.mul(0, a) != 0 || self.mul(a, 0) != 0) {
            record(Axiom::ZeroAnnihilates, &[a], self);
        }
        AxiomReport { violations }
    }

    /// Classifies a valid table. Callers should run
    /// [`SemiringTable::validate_axioms`] first; the flags are meaningless on
    /// broken tables.
    pub fn classify(&self) -> SemiringProperties {
        let k = self.elements.len() as ElementId;
        let commutative = (0..k).all(|a| (0..k).all(|b| self.mul(a, b) == self.mul(b, a)));
        let antinegative =
            (0..k).all(|a| (0..k).all(|b| self.add(a, b) != 0 || (a == 0 && b == 0)));
        let entire = (1..k).all(|a| (1..k).all(|b| self.mul(a, b) != 0));
        let division =
            (1..k).all(|a| (1..k).any(|b| self.mul(a, b) == 1 && self.mul(b, a) == 1));
        SemiringProperties {
            commutative,
            antinegative,
            entire,
            division,
        }
    }

    /// Smallest pair of nonzero elements whose product is zero, in
    /// lexicographic `(x, y)` order. `None` on entire semirings.
    pub fn find_zero_divisor_pair(&self) -> Option<(ElementId, ElementId)> {
        let k = self.elements.len() as ElementId;
        for x in 1..k {
            for y in 1..k {
                if self.mul(x, y) == 0 {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Which of the two operation tables a cell address refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSelector {
    Add,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    AddCommutative,
    AddAssociative,
    AddIdentity,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
    ZeroAnnihilates,
}

impl Axiom {
    pub fn description(self) -> &'static str {
        match self {
            Axiom::AddCommutative => "addition is not commutative",
            Axiom::AddAssociative => "addition is not associative",
            Axiom::AddIdentity => "0 is not an additive identity",
            Axiom::MulAssociative => "multiplication is not associative",
            Axiom::MulIdentity => "1 is not a multiplicative identity",
            Axiom::LeftDistributive => "multiplication does not left-distribute over addition",
            Axiom::RightDistributive => "multiplication does not right-distribute over addition",
            Axiom::ZeroAnnihilates => "0 does not annihilate under multiplication",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
    /// Witness rendered with element names, e.g. `(2, 3)`.
    pub witness_names: String,
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: witness {}", self.axiom.description(), self.witness_names)
    }
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiringProperties {
    pub commutative: bool,
    pub antinegative: bool,
    pub entire: bool,
    pub division: bool,
}

/// The shared Boolean semiring `{0, 1}` with `1 + 1 = 1`.
pub fn boolean() -> Arc<SemiringTable> {
    static BOOLEAN: OnceLock<Arc<SemiringTable>> = OnceLock::new();
    BOOLEAN
        .get_or_init(|| {
            Arc::new(
                SemiringTable::from_parts(
                    "boolean",
                    vec!["0".into(), "1".into()],
                    vec![0, 1, 1, 1],
                    vec![0, 0, 0, 1],
                )
                .expect("builtin boolean table is structurally valid"),
            )
        })
        .clone()
}

/// Integers modulo `m` under the usual operations, for `2 <= m <= 64`.
pub fn modular(m: usize) -> Result<Arc<SemiringTable>> {
    if !(2..=MAX_ORDER).contains(&m) {
        return Err(Error::Domain(format!(
            "modular semiring requires modulus in 2..={MAX_ORDER}, got {m}"
        )));
    }
    let elements = (0..m).map(|e| e.to_string()).collect();
    let mut add = vec![0 as ElementId; m * m];
    let mut mul = vec![0 as ElementId; m * m];
    for a in 0..m {
        for b in 0..m {
            add[a * m + b] = ((a + b) % m) as ElementId;
            mul[a * m + b] = ((a * b) % m) as ElementId;
        }
    }
    Ok(Arc::new(SemiringTable::from_parts(
        format!("modular:{m}"),
        elements,
        add,
        mul,
    )?))
}

/// Totally ordered chain on `k` elements with join as addition and meet as
/// multiplication. Bottom is the additive identity, top the multiplicative
/// one; a single middle element is named `m`, several are `m1 < m2 < ...`.
pub fn chain(k: usize) -> Result<Arc<SemiringTable>> {
    if !(2..=MAX_ORDER).contains(&k) {
        return Err(Error::Domain(format!(
            "chain semiring requires order in 2..={MAX_ORDER}, got {k}"
        )));
    }
    let mut elements = vec!["0".to_string(), "1".to_string()];
    for i in 1..k.saturating_sub(1) {
        elements.push(if k == 3 { "m".into() } else { format!("m{i}") });
    }
    // Height of element id within the chain: 0 is bottom, 1 is top.
    let rank = |e: usize| -> usize {
        match e {
            0 => 0,
            1 => k - 1,
            _ => e - 1,
        }
    };
    let mut add = vec![0 as ElementId; k * k];
    let mut mul = vec![0 as ElementId; k * k];
    for a in 0..k {
        for b in 0..k {
            let (lo, hi) = if rank(a) <= rank(b) { (a, b) } else { (b, a) };
            add[a * k + b] = hi as ElementId;
            mul[a * k + b] = lo as ElementId;
        }
    }
    Ok(Arc::new(SemiringTable::from_parts(
        format!("chain:{k}"),
        elements,
        add,
        mul,
    )?))
}

/// A semiring usable as a matrix scalar domain: either a finite table or the
/// max-plus (tropical) semiring over exact rationals.
#[derive(Clone)]
pub enum SemiringKind {
    Finite(Arc<SemiringTable>),
    Tropical,
}

impl SemiringKind {
    /// Resolves a builtin semiring name: `boolean`, `modular:<m>`,
    /// `chain:<k>`, or `tropical`.
    pub fn resolve(name: &str) -> Result<SemiringKind> {
        if name == "boolean" {
            return Ok(SemiringKind::Finite(boolean()));
        }
        if name == "tropical" {
            return Ok(SemiringKind::Tropical);
        }
        if let Some(rest) = name.strip_prefix("modular:") {
            let m: usize = rest.parse().map_err(|_| {
                Error::Domain(format!("invalid modulus {rest:?} in semiring name {name:?}"))
            })?;
            return Ok(SemiringKind::Finite(modular(m)?));
        }
        if let Some(rest) = name.strip_prefix("chain:") {
            let k: usize = rest.parse().map_err(|_| {
                Error::Domain(format!("invalid order {rest:?} in semiring name {name:?}"))
            })?;
            return Ok(SemiringKind::Finite(chain(k)?));
        }
        Err(Error::Domain(format!(
            "unknown semiring {name:?}; expected boolean, modular:<m>, chain:<k>, or tropical"
        )))
    }

    pub fn name(&self) -> &str {
        match self {
            SemiringKind::Finite(t) => t.name(),
            SemiringKind::Tropical => "tropical",
        }
    }

    pub fn as_finite(&self) -> Result<&Arc<SemiringTable>> {
        match self {
            SemiringKind::Finite(t) => Ok(t),
            SemiringKind::Tropical => Err(Error::Domain(
                "the tropical semiring is infinite; this operation requires a finite \
                 semiring table"
                    .into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_canonical_and_valid() {
        for table in [
            boolean(),
            modular(4).unwrap(),
            modular(6).unwrap(),
            chain(3).unwrap(),
            chain(2).unwrap(),
        ] {
            assert!(table.is_canonical(), "{} not canonical", table.name());
            let report = table.validate_axioms();
            assert!(
                report.is_valid(),
                "{}: {:?}",
                table.name(),
                report.violations
            );
        }
    }

    #[test]
    fn chain_two_matches_boolean_tables() {
        let b = boolean();
        let c = chain(2).unwrap();
        assert_eq!(b.add_table(), c.add_table());
        assert_eq!(b.mul_table(), c.mul_table());
    }

    #[test]
    fn chain_three_has_expected_order() {
        let c = chain(3).unwrap();
        let zero = c.element_id("0").unwrap();
        let one = c.element_id("1").unwrap();
        let m = c.element_id("m").unwrap();
        assert_eq!((zero, one), (0, 1));
        assert_eq!(c.add(m, one), one, "max(m, 1) = 1");
        assert_eq!(c.add(m, zero), m, "max(m, 0) = m");
        assert_eq!(c.mul(m, one), m, "min(m, 1) = m");
        assert_eq!(c.mul(m, zero), zero, "min(m, 0) = 0");
    }

    #[test]
    fn zero_divisor_pairs() {
        assert_eq!(modular(4).unwrap().find_zero_divisor_pair(), Some((2, 2)));
        assert_eq!(modular(6).unwrap().find_zero_divisor_pair(), Some((2, 3)));
        assert_eq!(boolean().find_zero_divisor_pair(), None);
        assert_eq!(chain(3).unwrap().find_zero_divisor_pair(), None);
    }

    #[test]
    fn classification_spot_checks() {
        let b = boolean().classify();
        assert!(b.commutative && b.antinegative && b.entire && b.division);
        let z4 = modular(4).unwrap().classify();
        assert!(z4.commutative && !z4.antinegative && !z4.entire && !z4.division);
    }

    #[test]
    fn mutated_identity_cell_is_reported() {
        let mut t = (*boolean()).clone();
        t.set_cell(TableSelector::Mul, 1, 1, 0);
        let report = t.validate_axioms();
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom.description() == "1 is not a multiplicative identity"));
    }

    #[test]
    fn canonicalize_reorders_scrambled_table() {
        // Boolean with elements swapped: index 0 is "one", index 1 is "zero".
        let raw = SemiringTable::from_parts(
            "swapped",
            vec!["t".into(), "f".into()],
            // add: t+t=t, t+f=t, f+t=t, f+f=f  (or, with f = zero)
            vec![0, 0, 0, 1],
            // mul: t*t=t, t*f=f, f*t=f, f*f=f (and)
            vec![0, 1, 1, 1],
        )
        .unwrap();
        assert!(!raw.is_canonical());
        let fixed = raw.canonicalize().unwrap();
        assert!(fixed.is_canonical());
        assert_eq!(fixed.element_name(0), "f");
        assert_eq!(fixed.element_name(1), "t");
        assert!(fixed.validate_axioms().is_valid());
    }

    #[test]
    fn trivial_semiring_rejected() {
        let raw = SemiringTable::from_parts(
            "weird",
            vec!["x".into(), "y".into()],
            vec![0, 1, 1, 0],
            vec![0, 1, 1, 0],
        )
        .unwrap();
        // x is both the additive and multiplicative identity.
        let err = raw.canonicalize().unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
    }

    #[test]
    fn resolve_builtin_names() {
        assert_eq!(SemiringKind::resolve("boolean").unwrap().name(), "boolean");
        assert_eq!(
            SemiringKind::resolve("modular:4").unwrap().name(),
            "modular:4"
        );
        assert_eq!(SemiringKind::resolve("chain:3").unwrap().name(), "chain:3");
        assert!(matches!(
            SemiringKind::resolve("tropical").unwrap(),
            SemiringKind::Tropical
        ));
        assert!(SemiringKind::resolve("galois:9").is_err());
        assert!(SemiringKind::resolve("modular:1").is_err());
        assert!(SemiringKind::resolve("modular:x").is_err());
    }
}
