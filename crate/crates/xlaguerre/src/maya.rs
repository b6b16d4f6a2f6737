//! Maya diagrams and partitions: the combinatorial indexing of seed
//! function families.
//!
//! A Maya diagram assigns a filled or empty box to every integer position,
//! with all but finitely many negative boxes filled and all but finitely
//! many non-negative boxes empty. It is stored as the pair of exception
//! lists (n′₁,…,n′_{r₄} | n₁,…,n_{r₁}): n′ = −k−1 for each empty box at a
//! negative position k, and n for each filled box at a non-negative
//! position n.

use std::fmt;

/// A Maya diagram in two-list normal form; both lists strictly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MayaDiagram {
    excluded_negative: Vec<u32>,
    included_nonnegative: Vec<u32>,
}

fn strictly_decreasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

/// Smallest non-negative integer absent from a strictly decreasing list.
fn mex(v: &[u32]) -> u32 {
    let mut k = 0;
    while v.contains(&k) {
        k += 1;
    }
    k
}

impl MayaDiagram {
    pub fn new(
        excluded_negative: Vec<u32>,
        included_nonnegative: Vec<u32>,
    ) -> Result<Self, String> {
        if !strictly_decreasing(&excluded_negative) {
            return Err(format!(
                "excluded list {:?} is not strictly decreasing",
                excluded_negative
            ));
        }
        if !strictly_decreasing(&included_nonnegative) {
            return Err(format!(
                "included list {:?} is not strictly decreasing",
                included_nonnegative
            ));
        }
        Ok(MayaDiagram {
            excluded_negative,
            included_nonnegative,
        })
    }

    pub fn empty() -> Self {
        MayaDiagram {
            excluded_negative: vec![],
            included_nonnegative: vec![],
        }
    }

    /// Parses "(a,b,…|c,d,…)" with either side possibly empty or "∅".
    pub fn parse(text: &str) -> Result<Self, String> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| format!("diagram {:?} is not parenthesized", text))?;
        let (left, right) = inner
            .split_once('|')
            .ok_or_else(|| format!("diagram {:?} has no '|' separator", text))?;
        let parse_side = |side: &str| -> Result<Vec<u32>, String> {
            let side = side.trim();
            if side.is_empty() || side == "∅" {
                return Ok(vec![]);
            }
            side.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| format!("bad diagram entry {:?}", tok))
                })
                .collect()
        };
        MayaDiagram::new(parse_side(left)?, parse_side(right)?)
    }

    pub fn excluded_negative(&self) -> &[u32] {
        &self.excluded_negative
    }

    pub fn included_nonnegative(&self) -> &[u32] {
        &self.included_nonnegative
    }

    /// Occupancy of the box at integer position k.
    pub fn is_filled(&self, k: i64) -> bool {
        if k >= 0 {
            self.included_nonnegative.contains(&(k as u32))
        } else {
            !self.excluded_negative.contains(&((-k - 1) as u32))
        }
    }

    /// Translates the box pattern by t: box k of the result is box k − t of
    /// the input.
    pub fn shift(&self, t: i64) -> MayaDiagram {
        let top = self
            .included_nonnegative
            .first()
            .map(|&n| n as i64)
            .unwrap_or(-1);
        let mut included = Vec::new();
        for k in (0..=(top + t).max(t - 1)).rev() {
            if self.is_filled(k - t) {
                included.push(k as u32);
            }
        }
        let bottom = self
            .excluded_negative
            .first()
            .map(|&n| -(n as i64) - 1 + t)
            .unwrap_or(0)
            .min(t)
            .min(-1);
        let mut excluded = Vec::new();
        for k in bottom..0 {
            if !self.is_filled(k - t) {
                excluded.push((-k - 1) as u32);
            }
        }
        MayaDiagram {
            excluded_negative: excluded,
            included_nonnegative: included,
        }
    }

    /// No empty boxes at negative positions and box 0 empty.
    pub fn is_canonical(&self) -> bool {
        self.excluded_negative.is_empty() && !self.included_nonnegative.contains(&0)
    }

    /// No filled boxes at non-negative positions and box −1 filled.
    pub fn is_conjugate_canonical(&self) -> bool {
        self.included_nonnegative.is_empty() && !self.excluded_negative.contains(&0)
    }

    /// The shift t with shift(M, t) canonical.
    pub fn canonical_shift(&self) -> i64 {
        match self.excluded_negative.first() {
            Some(&n1p) => n1p as i64 + 1,
            None => -(mex(&self.included_nonnegative) as i64),
        }
    }

    /// The shift t′ with shift(M, t′) conjugate canonical.
    pub fn conjugate_canonical_shift(&self) -> i64 {
        match self.included_nonnegative.first() {
            Some(&n1) => -(n1 as i64) - 1,
            None => mex(&self.excluded_negative) as i64,
        }
    }

    /// The partition μ_j = n_j − r + j read from the included list;
    /// requires an empty excluded list.
    pub fn to_partition(&self) -> Result<Partition, String> {
        if !self.excluded_negative.is_empty() {
            return Err(format!(
                "diagram {} still has empty boxes at negative positions",
                self
            ));
        }
        let r = self.included_nonnegative.len() as i64;
        let parts = self
            .included_nonnegative
            .iter()
            .enumerate()
            .map(|(i, &n)| (n as i64 - r + i as i64 + 1) as u32)
            .collect();
        Partition::new(parts)
    }

    /// The partition read from the excluded list by the same index
    /// arithmetic; requires an empty included list. Applied to the
    /// conjugate canonical form this yields the conjugate partition.
    pub fn to_partition_conjugate_reading(&self) -> Result<Partition, String> {
        if !self.included_nonnegative.is_empty() {
            return Err(format!(
                "diagram {} still has filled boxes at non-negative positions",
                self
            ));
        }
        let r = self.excluded_negative.len() as i64;
        let parts = self
            .excluded_negative
            .iter()
            .enumerate()
            .map(|(i, &n)| (n as i64 - r + i as i64 + 1) as u32)
            .collect();
        Partition::new(parts)
    }
}

/// Length of the partition obtained from shift(M, t) for a canonical (or
/// conjugate-canonical-style) shift t, without performing the shift.
pub fn partition_length(m: &MayaDiagram, t: i64) -> i64 {
    let r1 = m.included_nonnegative.len() as i64;
    let r4 = m.excluded_negative.len() as i64;
    if t > 0 {
        r1 + m.excluded_negative[0] as i64 + 1 - r4
    } else if t == 0 {
        r1
    } else {
        r1 - mex(&m.included_nonnegative) as i64
    }
}

impl fmt::Display for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[u32]| -> String {
            if v.is_empty() {
                "∅".to_string()
            } else {
                v.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        write!(
            f,
            "({}|{})",
            side(&self.excluded_negative),
            side(&self.included_nonnegative)
        )
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, String> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("parts {:?} are not weakly decreasing", parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The length r(·).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, j: usize) -> u32 {
        self.parts.get(j).copied().unwrap_or(0)
    }

    /// True iff consecutive parts agree in pairs (and the length is even);
    /// the empty partition counts as even.
    pub fn is_even(&self) -> bool {
        self.parts.len() % 2 == 0
            && self.parts.chunks(2).all(|c| c[0] == c[1])
    }

    /// Young-diagram transpose.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// The pair (M₁, M₂) indexing a seed family, with the four seed counts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramPair {
    pub m1: MayaDiagram,
    pub m2: MayaDiagram,
}

impl DiagramPair {
    pub fn new(m1: MayaDiagram, m2: MayaDiagram) -> Self {
        DiagramPair { m1, m2 }
    }

    /// Number of seeds of the first kind: filled non-negative boxes of M₁.
    pub fn r1(&self) -> usize {
        self.m1.included_nonnegative().len()
    }

    /// Second kind: filled non-negative boxes of M₂.
    pub fn r2(&self) -> usize {
        self.m2.included_nonnegative().len()
    }

    /// Third kind: empty negative boxes of M₂.
    pub fn r3(&self) -> usize {
        self.m2.excluded_negative().len()
    }

    /// Fourth kind: empty negative boxes of M₁.
    pub fn r4(&self) -> usize {
        self.m1.excluded_negative().len()
    }

    pub fn r(&self) -> usize {
        self.r1() + self.r2() + self.r3() + self.r4()
    }

    /// Canonical shifts (t₁, t₂) and conjugate canonical shifts (t₁′, t₂′).
    pub fn shifts(&self) -> (i64, i64, i64, i64) {
        (
            self.m1.canonical_shift(),
            self.m2.canonical_shift(),
            self.m1.conjugate_canonical_shift(),
            self.m2.conjugate_canonical_shift(),
        )
    }

    /// Partitions (μ, ν) of the canonically shifted diagrams.
    pub fn partitions(&self) -> (Partition, Partition) {
        let mu = self
            .m1
            .shift(self.m1.canonical_shift())
            .to_partition()
            .expect("canonical shift clears excluded boxes");
        let nu = self
            .m2
            .shift(self.m2.canonical_shift())
            .to_partition()
            .expect("canonical shift clears excluded boxes");
        (mu, nu)
    }

    /// Conjugate partitions (μ′, ν′) of the conjugate canonical forms.
    pub fn conjugate_partitions(&self) -> (Partition, Partition) {
        let mu = self
            .m1
            .shift(self.m1.conjugate_canonical_shift())
            .to_partition_conjugate_reading()
            .expect("conjugate canonical shift clears included boxes");
        let nu = self
            .m2
            .shift(self.m2.conjugate_canonical_shift())
            .to_partition_conjugate_reading()
            .expect("conjugate canonical shift clears included boxes");
        (mu, nu)
    }

    /// The canonical partition μ of the first diagram is even; this is the
    /// condition for the weight denominator to be zero-free on [0,∞).
    pub fn is_admissible(&self) -> bool {
        self.partitions().0.is_even()
    }

}

impl fmt::Display for DiagramPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M₁={}, M₂={}", self.m1, self.m2)
    }
}

/// All diagrams whose list entries are below `limit`, for exhaustive sweeps.
pub fn all_diagrams(limit: u32) -> Vec<MayaDiagram> {
    let subsets: Vec<Vec<u32>> = (0u32..(1 << limit))
        .map(|bits| (0..limit).rev().filter(|&k| bits & (1 << k) != 0).collect())
        .collect();
    let mut out = Vec::new();
    for exc in &subsets {
        for inc in &subsets {
            out.push(MayaDiagram::new(exc.clone(), inc.clone()).unwrap());
        }
    }
    out
}
