//! Finite loops given by Cayley tables, their identity checks, a few
//! generators, and the loop algebra functor.

use rayon::prelude::*;

use crate::error::{Error, Line, LoopError, Result};
use crate::linear::LinearMap;
use crate::structures::{HopfData, HopfQuasigroupData};
use crate::scalar::Field;

/// A validated Cayley table with identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopTable {
    table: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl LoopTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<LoopTable> {
        if let Some(l) = &labels {
            if l.len() != self.order() {
                return Err(Error::ShapeMismatch {
                    context: "loop labels".into(),
                    left: vec![self.order()],
                    right: vec![l.len()],
                });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// The unique `y` with `y x = e`.
    pub fn left_inverse(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.table[y][x] == 0).expect("Latin square")
    }

    /// The unique `y` with `x y = e`.
    pub fn right_inverse(&self, x: usize) -> usize {
        self.table[x].iter().position(|&v| v == 0).expect("Latin square")
    }

    /// Whether `perm` is a bijection respecting the product.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        (0..n).all(|x| (0..n).all(|y| perm[self.mul(x, y)] == self.mul(perm[x], perm[y])))
    }
}

pub fn validate_loop(table: Vec<Vec<usize>>) -> Result<LoopTable, LoopError> {
    let n = table.len();
    if n == 0 {
        return Err(LoopError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(LoopError::NotSquare { row, len: r.len(), order: n });
        }
        if let Some(col) = r.iter().position(|&v| v >= n) {
            return Err(LoopError::ValueOutOfRange { row, col, value: r[col] });
        }
    }
    #[allow(clippy::needless_range_loop)]
    for line in [Line::Row, Line::Column] {
        for index in 0..n {
            let mut seen = vec![false; n];
            for k in 0..n {
                let value = match line {
                    Line::Row => table[index][k],
                    Line::Column => table[k][index],
                };
                if std::mem::replace(&mut seen[value], true) {
                    return Err(LoopError::NotLatinSquare { line, index, value });
                }
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| table[0][i] != i || table[i][0] != i) {
        return Err(LoopError::IdentityNotZero(i));
    }
    Ok(LoopTable { table, labels: None })
}

/// Failed instance of a loop identity: the elements substituted and the
/// two sides' values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWitness {
    pub tuple: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopFlag {
    pub holds: bool,
    pub witness: Option<LoopWitness>,
}

impl LoopFlag {
    fn from_witness(witness: Option<LoopWitness>) -> LoopFlag {
        LoopFlag {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopPropertyReport {
    pub two_sided_inverses: LoopFlag,
    pub left_inverse_property: LoopFlag,
    pub right_inverse_property: LoopFlag,
    pub moufang: LoopFlag,
    pub associative: LoopFlag,
}

impl LoopPropertyReport {
    pub fn is_ip(&self) -> bool {
        self.two_sided_inverses.holds && self.left_inverse_property.holds && self.right_inverse_property.holds
    }

    pub fn flags(&self) -> [(&'static str, &LoopFlag); 5] {
        [
            ("two_sided_inverses", &self.two_sided_inverses),
            ("left_inverse_property", &self.left_inverse_property),
            ("right_inverse_property", &self.right_inverse_property),
            ("moufang", &self.moufang),
            ("associative", &self.associative),
        ]
    }
}

/// Smallest tuple in `0..n` to the power `arity` (lexicographic) where the
/// two sides differ.
fn scan(n: usize, arity: u32, sides: impl Fn(&[usize]) -> (usize, usize) + Sync) -> Option<LoopWitness> {
    let total = n.pow(arity);
    let decode = |mut k: usize| {
        let mut t = vec![0; arity as usize];
        for slot in t.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        t
    };
    let k = (0..total).into_par_iter().find_first(|&k| {
        let (l, r) = sides(&decode(k));
        l != r
    })?;
    let tuple = decode(k);
    let (lhs, rhs) = sides(&tuple);
    Some(LoopWitness { tuple, lhs, rhs })
}

pub fn loop_properties(l: &LoopTable) -> LoopPropertyReport {
    let n = l.order();
    let m = |x, y| l.mul(x, y);
    let lam: Vec<usize> = (0..n).map(|x| l.left_inverse(x)).collect();
    let rho: Vec<usize> = (0..n).map(|x| l.right_inverse(x)).collect();
    LoopPropertyReport {
        two_sided_inverses: LoopFlag::from_witness(scan(n, 1, |t| (lam[t[0]], rho[t[0]]))),
        // x^λ (x y) = y
        left_inverse_property: LoopFlag::from_witness(scan(n, 2, |t| (m(lam[t[0]], m(t[0], t[1])), t[1]))),
        // (y x) x^ρ = y
        right_inverse_property: LoopFlag::from_witness(scan(n, 2, |t| (m(m(t[1], t[0]), rho[t[0]]), t[1]))),
        // ((x y) x) z = x (y (x z))
        moufang: LoopFlag::from_witness(scan(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            (m(m(m(x, y), x), z), m(x, m(y, m(x, z))))
        })),
        associative: LoopFlag::from_witness(scan(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            (m(m(x, y), z), m(x, m(y, z)))
        })),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    /// Elements `e, r, r², s, sr, sr²`.
    S3,
}

pub fn gen_group(kind: GroupKind) -> Result<LoopTable> {
    let (table, labels): (Vec<Vec<usize>>, Vec<String>) = match kind {
        GroupKind::Cyclic(0) => return Err(Error::ZeroDimension),
        GroupKind::Cyclic(n) => (
            (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
            (0..n)
                .map(|i| match i {
                    0 => "e".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g{i}"),
                })
                .collect(),
        ),
        GroupKind::S3 => {
            // s^k r^i at index 3k + i; r s = s r⁻¹.
            let mul = |a: usize, b: usize| {
                let (k, i) = (a / 3, a % 3);
                let (l, j) = (b / 3, b % 3);
                let i = if l == 1 { (3 - i) % 3 } else { i };
                3 * ((k + l) % 2) + (i + j) % 3
            };
            (
                (0..6).map(|a| (0..6).map(|b| mul(a, b)).collect()).collect(),
                ["e", "r", "r2", "s", "sr", "sr2"].map(String::from).to_vec(),
            )
        }
    };
    validate_loop(table)?.with_labels(Some(labels))
}

/// The doubling `M(G, 2)` on `G ∪ Gu`, with `gu` at index `n + g`.
pub fn gen_chein_double(g: &LoopTable) -> Result<LoopTable> {
    if let Some(w) = loop_properties(g).associative.witness {
        return Err(Error::NotAGroup(w.tuple[0], w.tuple[1], w.tuple[2]));
    }
    let n = g.order();
    let inv = |x: usize| g.right_inverse(x);
    let m = |x, y| g.mul(x, y);
    let table = (0..2 * n)
        .map(|a| {
            (0..2 * n)
                .map(|b| match (a < n, b < n) {
                    (true, true) => m(a, b),
                    (true, false) => n + m(b - n, a),
                    (false, true) => n + m(a - n, inv(b)),
                    (false, false) => m(inv(b - n), a - n),
                })
                .collect()
        })
        .collect();
    let labels = g.labels().map(|l| {
        l.iter()
            .cloned()
            .chain(l.iter().map(|s| if s == "e" { "u".to_string() } else { format!("{s}u") }))
            .collect()
    });
    validate_loop(table)?.with_labels(labels)
}

/// `kL` with `Δ(x) = x ⊗ x`, `ε(x) = 1`, `S(x) = x⁻¹`. Requires an IP loop.
pub fn loop_algebra(l: &LoopTable, field: Field) -> Result<HopfQuasigroupData> {
    let props = loop_properties(l);
    if !props.is_ip() {
        return Err(Error::NotIpLoop(Box::new(props)));
    }
    let n = l.order();
    let mul_images: Vec<usize> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| l.mul(x, y)).collect();
    let mul = LinearMap::from_basis_images(field, &[n, n], &[n], &mul_images)?;
    let unit = LinearMap::from_basis_images(field, &[1], &[n], &[0])?;
    let comul_images: Vec<usize> = (0..n).map(|x| x * n + x).collect();
    let comul = LinearMap::from_basis_images(field, &[n], &[n, n], &comul_images)?;
    let counit = LinearMap::from_basis_images(field, &[n], &[1], &vec![0; n])?;
    let inverses: Vec<usize> = (0..n).map(|x| l.right_inverse(x)).collect();
    let antipode = LinearMap::from_basis_images(field, &[n], &[n], &inverses)?;
    let data = HopfData::new(field, n, mul, unit, comul, counit, antipode)?
        .with_labels(l.labels().map(|s| s.to_vec()))?;
    Ok(HopfQuasigroupData::new(data))
}
