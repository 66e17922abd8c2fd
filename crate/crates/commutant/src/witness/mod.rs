//! Explicit matrices, claimed paths, and path constructors for the claims
//! checked by [`verify`]: Boolean distance-4 witnesses, tropical connection
//! paths of length at most 4, and zero-divisor paths of length at most 3
//! over nonentire semirings. Every constructor validates its own output
//! before returning it.

pub mod verify;

use std::sync::Arc;

use crate::error::Error;
use crate::matrix::{FinMatrix, TropMatrix};
use crate::semiring::{boolean, SemiringTable};
use crate::tropical::TropicalScalar;
use crate::Result;

/// A claimed path: consecutive vertices must be distinct and commuting, no
/// vertex may be central, and the length may not exceed `max_length`.
#[derive(Debug, Clone)]
pub struct PathWitness<M> {
    pub claim: String,
    pub max_length: usize,
    pub vertices: Vec<M>,
}

impl<M> PathWitness<M> {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Collapses consecutive duplicates and cuts revisit loops, preserving edge
/// validity: every consecutive pair of the output was consecutive (or equal)
/// in the input.
fn simplify<M: PartialEq>(vertices: Vec<M>) -> Vec<M> {
    let mut out: Vec<M> = Vec::with_capacity(vertices.len());
    for v in vertices {
        if let Some(pos) = out.iter().position(|x| *x == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}

fn check_path<M, C, Z>(w: &PathWitness<M>, commutes: C, central: Z) -> Result<()>
where
    M: PartialEq,
    C: Fn(&M, &M) -> Result<bool>,
    Z: Fn(&M) -> bool,
{
    if w.vertices.is_empty() {
        return Err(Error::Domain(format!("path {}: no vertices", w.claim)));
    }
    if w.length() > w.max_length {
        return Err(Error::Domain(format!(
            "path {}: length {} exceeds the claimed bound {}",
            w.claim,
            w.length(),
            w.max_length
        )));
    }
    for (i, v) in w.vertices.iter().enumerate() {
        if central(v) {
            return Err(Error::Domain(format!(
                "path {}: vertex {i} is central",
                w.claim
            )));
        }
    }
    for (i, pair) in w.vertices.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return Err(Error::Domain(format!(
                "path {}: vertices {i} and {} coincide",
                w.claim,
                i + 1
            )));
        }
        if !commutes(&pair[0], &pair[1])? {
            return Err(Error::Domain(format!(
                "path {}: vertices {i} and {} do not commute",
                w.claim,
                i + 1
            )));
        }
    }
    Ok(())
}

impl PathWitness<TropMatrix> {
    /// Tropical centrality is scalarity.
    pub fn validate(&self) -> Result<()> {
        check_path(self, |a, b| a.commutes(b), |v| v.is_scalar())
    }
}

impl PathWitness<FinMatrix> {
    /// `center` holds the sorted codes of the central matrices.
    pub fn validate(&self, center: &[u64]) -> Result<()> {
        check_path(
            self,
            |a: &FinMatrix, b: &FinMatrix| a.commutes(b),
            |v| center.binary_search(&v.code()).is_ok(),
        )
    }
}

/// The Boolean distance-4 endpoint pair: explicit 3x3 matrices, and for
/// n >= 4 the block shape with first row (0,...,0,1), first column
/// (0,0,1,...,1), lower-right transposed shift block, paired with
/// blockdiag(1, shift).
pub fn boolean_witness_pair(n: usize) -> Result<(FinMatrix, FinMatrix)> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "distance-4 witnesses need n >= 3, got {n}"
        )));
    }
    let b = boolean();
    if n == 3 {
        let a = FinMatrix::new(b.clone(), 3, vec![0, 0, 1, 0, 0, 0, 1, 1, 0])?;
        let bm = FinMatrix::new(b.clone(), 3, vec![1, 0, 0, 0, 0, 1, 0, 0, 0])?;
        return Ok((a, bm));
    }
    let mut a = FinMatrix::zero(b.clone(), n);
    a.set(0, n - 1, 1);
    for i in 2..n {
        a.set(i, 0, 1);
    }
    for r in 2..n {
        a.set(r, r - 1, 1);
    }
    let mut bm = FinMatrix::zero(b.clone(), n);
    bm.set(0, 0, 1);
    for r in 1..n - 1 {
        bm.set(r, r + 1, 1);
    }
    Ok((a, bm))
}

/// The ten displayed 3x3 Boolean matrices adjacent to the witness endpoints,
/// each set in ascending code order.
pub fn expected_neighbor_sets_n3() -> (Vec<FinMatrix>, Vec<FinMatrix>) {
    let b = boolean();
    let mk = |rows: [[u8; 3]; 3]| {
        FinMatrix::new(
            b.clone(),
            3,
            rows.iter().flatten().copied().collect::<Vec<_>>(),
        )
        .expect("entries in range")
    };
    let mut side_a = vec![
        mk([[1, 0, 1], [0, 1, 0], [1, 1, 1]]),
        mk([[1, 1, 0], [0, 0, 0], [0, 0, 1]]),
        mk([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        mk([[1, 1, 1], [0, 0, 0], [1, 1, 1]]),
        mk([[1, 1, 1], [0, 1, 0], [1, 1, 1]]),
    ];
    let mut side_b = vec![
        mk([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        mk([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        mk([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
        mk([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
        mk([[0, 0, 0], [0, 1, 1], [0, 0, 1]]),
    ];
    side_a.sort_by_key(|m| m.code());
    side_b.sort_by_key(|m| m.code());
    (side_a, side_b)
}

/// The shift matrix and its transpose over any finite semiring.
pub fn jn_pair(semiring: Arc<SemiringTable>, n: usize) -> (FinMatrix, FinMatrix) {
    let j = FinMatrix::jordan(semiring, n);
    let t = j.transpose();
    (j, t)
}

/// Which construction produced (part of) a tropical connection path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TropicalBranch {
    /// Nondiagonal endpoint routed through its max-shift to the all-units matrix.
    Nondiagonal,
    /// Repeated-diagonal endpoint routed through the paired-zeros matrix.
    RepeatedDiagonal,
    /// Distinct-diagonal endpoint bridged to a nondiagonal one.
    DistinctDiagonal,
}

/// A verified tropical path together with the constructions it used.
#[derive(Debug, Clone)]
pub struct TropicalPath {
    pub witness: PathWitness<TropMatrix>,
    pub branches: Vec<TropicalBranch>,
}

#[derive(PartialEq, Clone, Copy)]
enum TropShape {
    Nondiagonal,
    RepeatedDiagonal,
    DistinctDiagonal,
}

fn trop_shape(m: &TropMatrix) -> TropShape {
    if !m.is_diagonal() {
        return TropShape::Nondiagonal;
    }
    let n = m.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, i) == m.get(j, j) {
                return TropShape::RepeatedDiagonal;
            }
        }
    }
    TropShape::DistinctDiagonal
}

/// Two hops from a nonscalar, non-distinct-diagonal matrix to the all-units
/// matrix.
fn route_to_all_units(m: &TropMatrix) -> (Vec<TropMatrix>, TropicalBranch) {
    let n = m.n();
    let e = TropMatrix::all_units(n);
    if m.is_diagonal() {
        let (mut pi, mut pj) = (0, 1);
        'scan: for i in 0..n {
            for j in (i + 1)..n {
                if m.get(i, i) == m.get(j, j) {
                    (pi, pj) = (i, j);
                    break 'scan;
                }
            }
        }
        let mut f = TropMatrix::identity(n);
        f.set(pi, pj, TropicalScalar::integer(0));
        f.set(pj, pi, TropicalScalar::integer(0));
        (vec![m.clone(), f, e], TropicalBranch::RepeatedDiagonal)
    } else {
        let a = m.max_entry();
        let shifted = m.add(&TropMatrix::scalar(n, a)).expect("same dimension");
        (vec![m.clone(), shifted, e], TropicalBranch::Nondiagonal)
    }
}

/// All-finite matrix with `mu` on the diagonal and `eps` elsewhere.
fn mu_eps_matrix(n: usize, mu: TropicalScalar, eps: TropicalScalar) -> TropMatrix {
    let mut b = TropMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, if i == j { mu } else { eps });
        }
    }
    b
}

/// Connected components of the undirected off-diagonal support graph;
/// returns the component id per index and the component count.
fn support_components(m: &TropMatrix) -> (Vec<usize>, usize) {
    let n = m.n();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if comp[v] == usize::MAX
                    && (m.get(u, v) != TropicalScalar::zero() || m.get(v, u) != TropicalScalar::zero())
                {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Largest `c` such that `I + c E_{i,j}` commutes with `k`; `None` when no
/// finite `c` works, `Some(None)` is avoided by encoding "unconstrained" as 0.
fn shear_coefficient(k: &TropMatrix, i: usize, j: usize) -> Option<TropicalScalar> {
    let n = k.n();
    let neg_inf = TropicalScalar::zero();
    let mut bound: Option<TropicalScalar> = None;
    for l in 0..n {
        if l == j {
            continue;
        }
        let kjl = k.get(j, l);
        if kjl == neg_inf {
            continue;
        }
        let kil = k.get(i, l);
        if kil == neg_inf {
            return None;
        }
        let slack = kil.finite_sub(kjl).expect("both operands finite");
        bound = Some(bound.map_or(slack, |b| if slack < b { slack } else { b }));
    }
    for r in 0..n {
        if r == i {
            continue;
        }
        let kri = k.get(r, i);
        if kri == neg_inf {
            continue;
        }
        let krj = k.get(r, j);
        if krj == neg_inf {
            return None;
        }
        let slack = krj.finite_sub(kri).expect("both operands finite");
        bound = Some(bound.map_or(slack, |b| if slack < b { slack } else { b }));
    }
    Some(bound.unwrap_or(TropicalScalar::integer(0)))
}

/// Bridge from a distinct-diagonal matrix to a nondiagonal one in at most 4
/// edges: the two-block scalar / mu-eps-block / mu-eps construction first,
/// then constant-diagonal normalizations of powers of the target, reached
/// through a component-indicator diagonal or a single commuting shear.
fn bridge_distinct_diagonal(d: &TropMatrix, y: &TropMatrix) -> Result<Vec<TropMatrix>> {
    let n = d.n();
    let mu = y.max_entry();
    let eps = TropicalScalar::Finite(
        y.min_finite_entry().expect("nondiagonal matrix has a finite entry"),
    );
    let mut tilde = TropMatrix::zero(n);
    for i in 0..n {
        tilde.set(i, i, if i < 2 { d.get(0, 0) } else { d.get(1, 1) });
    }
    let mut c = mu_eps_matrix(2, mu, eps);
    let mut cm = TropMatrix::identity(n);
    for i in 0..n {
        cm.set(i, i, mu);
    }
    for i in 0..2 {
        for j in 0..2 {
            cm.set(i, j, c.get(i, j));
        }
    }
    c = cm;
    let b = mu_eps_matrix(n, mu, eps);
    let direct = simplify(vec![d.clone(), tilde.clone(), c, b, y.clone()]);
    let probe = PathWitness {
        claim: String::new(),
        max_length: 4,
        vertices: direct,
    };
    if probe.validate().is_ok() {
        return Ok(probe.vertices);
    }
    let mut power = y.clone();
    for _ in 1..=n {
        let peak = power.max_entry();
        if peak != TropicalScalar::zero() && !power.is_diagonal() {
            let k = power
                .add(&TropMatrix::scalar(n, peak))
                .expect("same dimension");
            let (comp, count) = support_components(&k);
            if count > 1 {
                let g = TropMatrix::diagonal(
                    &comp
                        .iter()
                        .map(|&c| TropicalScalar::integer(c as i64))
                        .collect::<Vec<_>>(),
                );
                let candidate = simplify(vec![d.clone(), g, k.clone(), y.clone()]);
                let probe = PathWitness {
                    claim: String::new(),
                    max_length: 4,
                    vertices: candidate,
                };
                if probe.validate().is_ok() {
                    return Ok(probe.vertices);
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let Some(cij) = shear_coefficient(&k, i, j) else {
                        continue;
                    };
                    let mut shear = TropMatrix::identity(n);
                    shear.set(i, j, cij);
                    let mut g = TropMatrix::identity(n);
                    for l in 0..n {
                        let v = if l == i || l == j {
                            TropicalScalar::integer(0)
                        } else {
                            TropicalScalar::integer(-(l as i64) - 1)
                        };
                        g.set(l, l, v);
                    }
                    let candidate =
                        simplify(vec![d.clone(), g, shear, k.clone(), y.clone()]);
                    let probe = PathWitness {
                        claim: String::new(),
                        max_length: 4,
                        vertices: candidate,
                    };
                    if probe.validate().is_ok() {
                        return Ok(probe.vertices);
                    }
                }
            }
        }
        power = power.mul(y).expect("same dimension");
    }
    Err(Error::Internal(format!(
        "no length-4 connection found from {} to {}",
        d.to_literal(),
        y.to_literal()
    )))
}

/// A verified path of length at most 4 between two nonscalar tropical
/// matrices (n >= 3), following the diagonal/nondiagonal case analysis.
pub fn tropical_connect(x: &TropMatrix, y: &TropMatrix) -> Result<TropicalPath> {
    if x.n() != y.n() {
        return Err(Error::Mismatch(format!(
            "endpoint dimensions {} and {} differ",
            x.n(),
            y.n()
        )));
    }
    if x.n() < 3 {
        return Err(Error::Domain(format!(
            "tropical connection paths need n >= 3, got {}",
            x.n()
        )));
    }
    for (label, m) in [("first", x), ("second", y)] {
        if m.is_scalar() {
            return Err(Error::Domain(format!(
                "{label} endpoint is a scalar matrix and not a vertex"
            )));
        }
    }
    let finish = |vertices: Vec<TropMatrix>, branches: Vec<TropicalBranch>, label: &str| {
        let witness = PathWitness {
            claim: format!("thm-3.2/{label}"),
            max_length: 4,
            vertices,
        };
        witness
            .validate()
            .map_err(|e| Error::Internal(format!("constructed path failed validation: {e}")))?;
        Ok(TropicalPath { witness, branches })
    };
    if x == y {
        return finish(vec![x.clone()], vec![], "identical");
    }
    let (sx, sy) = (trop_shape(x), trop_shape(y));
    match (sx, sy) {
        (TropShape::Nondiagonal, TropShape::Nondiagonal)
        | (TropShape::Nondiagonal, TropShape::RepeatedDiagonal)
        | (TropShape::RepeatedDiagonal, TropShape::Nondiagonal)
        | (TropShape::RepeatedDiagonal, TropShape::RepeatedDiagonal) => {
            let (half_x, bx) = route_to_all_units(x);
            let (half_y, by) = route_to_all_units(y);
            let mut vertices = half_x;
            vertices.extend(half_y.into_iter().rev().skip(1));
            let label = match (bx, by) {
                (TropicalBranch::Nondiagonal, TropicalBranch::Nondiagonal) => "nondiagonal",
                (TropicalBranch::RepeatedDiagonal, TropicalBranch::RepeatedDiagonal) => {
                    "repeated-diagonal"
                }
                _ => "mixed",
            };
            finish(simplify(vertices), vec![bx, by], label)
        }
        (TropShape::DistinctDiagonal, TropShape::Nondiagonal) => {
            let vertices = bridge_distinct_diagonal(x, y)?;
            finish(vertices, vec![TropicalBranch::DistinctDiagonal], "distinct-diagonal")
        }
        (TropShape::Nondiagonal, TropShape::DistinctDiagonal) => {
            let mut vertices = bridge_distinct_diagonal(y, x)?;
            vertices.reverse();
            finish(vertices, vec![TropicalBranch::DistinctDiagonal], "distinct-diagonal")
        }
        // Both endpoints diagonal: diagonal matrices commute.
        _ => finish(vec![x.clone(), y.clone()], vec![], "diagonal-diagonal"),
    }
}

/// Which zero-divisor construction connected the endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonentireCase {
    /// Both scaled endpoints stayed noncentral.
    BothNoncentral,
    /// One scaled endpoint fell into the center; a scaled unit matrix stands in.
    OneCentral,
    /// Both scaled endpoints fell into the center.
    BothCentral,
}

/// A verified path with the case that produced it.
#[derive(Debug, Clone)]
pub struct NonentirePath {
    pub witness: PathWitness<FinMatrix>,
    pub case: NonentireCase,
}

/// A verified path of length at most 3 between noncentral matrices over a
/// commutative nonentire semiring, built from the least zero-divisor pair.
/// `center` holds the sorted central codes of M_n(S).
pub fn nonentire_connect(
    a: &FinMatrix,
    b: &FinMatrix,
    center: &[u64],
) -> Result<NonentirePath> {
    a.same_space(b)?;
    let semiring = a.semiring().clone();
    let n = a.n();
    if n < 2 {
        return Err(Error::Domain(format!(
            "zero-divisor paths need n >= 2, got {n}"
        )));
    }
    if !semiring.classify().commutative {
        return Err(Error::Domain(format!(
            "semiring {} is not commutative",
            semiring.name()
        )));
    }
    let Some((x, y)) = semiring.find_zero_divisor_pair() else {
        return Err(Error::Domain(format!(
            "semiring {} is entire; no zero-divisor path exists",
            semiring.name()
        )));
    };
    let central = |m: &FinMatrix| center.binary_search(&m.code()).is_ok();
    for (label, m) in [("first", a), ("second", b)] {
        if central(m) {
            return Err(Error::Domain(format!(
                "{label} endpoint is central and not a vertex"
            )));
        }
    }
    let xa = a.scalar_mul(x)?;
    let yb = b.scalar_mul(y)?;
    let xu = FinMatrix::unit(semiring.clone(), n, 0, 1).scalar_mul(x)?;
    let yu = FinMatrix::unit(semiring.clone(), n, 0, 1).scalar_mul(y)?;
    let (vertices, case, label) = match (central(&xa), central(&yb)) {
        (false, false) => (
            vec![a.clone(), xa, yb, b.clone()],
            NonentireCase::BothNoncentral,
            "case-1",
        ),
        (true, false) => (
            vec![a.clone(), xu, yb, b.clone()],
            NonentireCase::OneCentral,
            "case-2",
        ),
        (false, true) => (
            vec![a.clone(), xa, yu, b.clone()],
            NonentireCase::OneCentral,
            "case-2",
        ),
        (true, true) => (
            vec![a.clone(), xu, yu, b.clone()],
            NonentireCase::BothCentral,
            "case-3",
        ),
    };
    let witness = PathWitness {
        claim: format!("thm-4.2/{label}"),
        max_length: 3,
        vertices: simplify(vertices),
    };
    witness
        .validate(center)
        .map_err(|e| Error::Internal(format!("constructed path failed validation: {e}")))?;
    Ok(NonentirePath { witness, case })
}
