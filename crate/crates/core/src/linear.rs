//! Sparse exact linear maps between tensor powers of basis spaces.
//!
//! A space is described by its shape, the ordered list of factor dimensions.
//! Pure tensors of basis vectors are flattened left-factor major: with factor
//! dims `(d1, ..., dk)` the element `e_{i1} ⊗ ... ⊗ e_{ik}` has index
//! `i1·(d2···dk) + i2·(d3···dk) + ... + ik`. Every stored matrix and every
//! reported witness uses this convention.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Column count above which compositions are evaluated on the rayon pool.
pub(crate) const PAR_THRESHOLD: usize = 64;

/// A sparse column: strictly increasing row indices, no zero values.
pub type SparseColumn = Vec<(usize, Scalar)>;

pub fn total_dim(shape: &[usize]) -> usize {
    shape.iter().product()
}

pub(crate) fn validate_shape(shape: &[usize]) -> Result<()> {
    if shape.is_empty() || shape.contains(&0) {
        return Err(Error::ZeroDimension);
    }
    shape
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .map(|_| ())
        .ok_or_else(|| Error::ShapeMismatch {
            context: "dimension overflow".into(),
            left: shape.to_vec(),
            right: vec![],
        })
}

/// Drops unit factors; a shape made only of unit factors becomes `[1]`.
pub fn squeeze(shape: &[usize]) -> Vec<usize> {
    let s: Vec<usize> = shape.iter().copied().filter(|&d| d != 1).collect();
    if s.is_empty() {
        vec![1]
    } else {
        s
    }
}

pub fn flat_index(shape: &[usize], multi: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), multi.len());
    shape
        .iter()
        .zip(multi)
        .fold(0, |acc, (&d, &i)| acc * d + i)
}

pub fn multi_index(shape: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; shape.len()];
    for (slot, &d) in out.iter_mut().zip(shape).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

/// Sorts by index, sums duplicates and drops zeros.
pub(crate) fn normalize(mut terms: Vec<(usize, Scalar)>) -> SparseColumn {
    if terms.len() <= 1 {
        terms.retain(|(_, v)| !v.is_zero());
        return terms;
    }
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SparseColumn = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = &*acc + &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Kronecker product of two sparse columns, the right one of length `right_len`.
pub(crate) fn kron_columns(left: &[(usize, Scalar)], right: &[(usize, Scalar)], right_len: usize) -> SparseColumn {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for (i, a) in left {
        for (j, b) in right {
            out.push((i * right_len + j, a * b));
        }
    }
    out
}

/// An element of a tensor-power space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    shape: Vec<usize>,
    entries: SparseColumn,
}

impl Vector {
    pub fn zero(field: Field, shape: &[usize]) -> Result<Vector> {
        validate_shape(shape)?;
        Ok(Vector {
            field,
            shape: shape.to_vec(),
            entries: vec![],
        })
    }

    pub fn basis(field: Field, shape: &[usize], index: usize) -> Result<Vector> {
        validate_shape(shape)?;
        let n = total_dim(shape);
        if index >= n {
            return Err(Error::EntryOutOfRange {
                row: index,
                col: 0,
                rows: n,
                cols: 1,
            });
        }
        Ok(Vector {
            field,
            shape: shape.to_vec(),
            entries: vec![(index, field.one())],
        })
    }

    pub fn from_entries(
        field: Field,
        shape: &[usize],
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Vector> {
        validate_shape(shape)?;
        let n = total_dim(shape);
        let mut terms = Vec::new();
        for (i, v) in entries {
            if v.field() != field {
                return Err(Error::MixedFields(v.field(), field));
            }
            if i >= n {
                return Err(Error::EntryOutOfRange {
                    row: i,
                    col: 0,
                    rows: n,
                    cols: 1,
                });
            }
            terms.push((i, v));
        }
        Ok(Vector {
            field,
            shape: shape.to_vec(),
            entries: normalize(terms),
        })
    }

    pub(crate) fn from_column(field: Field, shape: Vec<usize>, entries: SparseColumn) -> Vector {
        Vector {
            field,
            shape,
            entries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        total_dim(&self.shape)
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Scalar {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .map(|k| self.entries[k].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn tensor(&self, other: &Vector) -> Result<Vector> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        Ok(Vector {
            field: self.field,
            entries: kron_columns(&self.entries, &other.entries, other.dim()),
            shape,
        })
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch {
                context: "vector addition".into(),
                left: self.shape.clone(),
                right: other.shape.clone(),
            });
        }
        let mut terms = self.entries.clone();
        terms.extend(other.entries.iter().cloned());
        Ok(Vector {
            field: self.field,
            shape: self.shape.clone(),
            entries: normalize(terms),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Vector> {
        if c.field() != self.field {
            return Err(Error::MixedFields(c.field(), self.field));
        }
        Ok(Vector {
            field: self.field,
            shape: self.shape.clone(),
            entries: normalize(self.entries.iter().map(|(i, v)| (*i, v * c)).collect()),
        })
    }

    /// Same coefficients viewed in another shape of equal total dimension.
    pub fn reshape(&self, shape: &[usize]) -> Result<Vector> {
        validate_shape(shape)?;
        if total_dim(shape) != self.dim() {
            return Err(Error::ShapeMismatch {
                context: "vector reshape".into(),
                left: self.shape.clone(),
                right: shape.to_vec(),
            });
        }
        Ok(Vector {
            field: self.field,
            shape: shape.to_vec(),
            entries: self.entries.clone(),
        })
    }

    /// Entries keyed by multi-index in this vector's shape.
    pub fn multi_entries(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.entries
            .iter()
            .map(|(i, v)| (multi_index(&self.shape, *i), v.clone()))
            .collect()
    }
}

/// A sparse exact matrix from the space of shape `domain` to the space of
/// shape `codomain`. Columns are stored sparsely with rows in increasing
/// order, so two maps are equal exactly when their storage is equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: Field,
    domain: Vec<usize>,
    codomain: Vec<usize>,
    cols: Vec<SparseColumn>,
}

impl LinearMap {
    pub fn zero(field: Field, domain: &[usize], codomain: &[usize]) -> Result<LinearMap> {
        validate_shape(domain)?;
        validate_shape(codomain)?;
        Ok(LinearMap {
            field,
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            cols: vec![Vec::new(); total_dim(domain)],
        })
    }

    pub fn identity(field: Field, dim: usize) -> Result<LinearMap> {
        Self::identity_on(field, &[dim])
    }

    pub fn identity_on(field: Field, shape: &[usize]) -> Result<LinearMap> {
        validate_shape(shape)?;
        let one = field.one();
        Ok(LinearMap {
            field,
            domain: shape.to_vec(),
            codomain: shape.to_vec(),
            cols: (0..total_dim(shape)).map(|j| vec![(j, one.clone())]).collect(),
        })
    }

    /// Builds a map from `(row, column, value)` triples. Zero values are
    /// dropped; repeated keys are rejected.
    pub fn from_entries(
        field: Field,
        domain: &[usize],
        codomain: &[usize],
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<LinearMap> {
        validate_shape(domain)?;
        validate_shape(codomain)?;
        let rows = total_dim(codomain);
        let ncols = total_dim(domain);
        let mut cols: Vec<SparseColumn> = vec![Vec::new(); ncols];
        for (r, c, v) in entries {
            if v.field() != field {
                return Err(Error::MixedFields(v.field(), field));
            }
            if r >= rows || c >= ncols {
                return Err(Error::EntryOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols: ncols,
                });
            }
            cols[c].push((r, v));
        }
        for (c, col) in cols.iter_mut().enumerate() {
            col.sort_by_key(|(r, _)| *r);
            if let Some(w) = col.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateEntry(w[0].0, c));
            }
            col.retain(|(_, v)| !v.is_zero());
        }
        Ok(LinearMap {
            field,
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            cols,
        })
    }

    /// Builds a map sending basis index `j` to basis index `images[j]`.
    pub fn from_basis_images(field: Field, domain: &[usize], codomain: &[usize], images: &[usize]) -> Result<LinearMap> {
        let one = field.one();
        Self::from_entries(
            field,
            domain,
            codomain,
            images.iter().enumerate().map(|(j, &i)| (i, j, one.clone())),
        )
    }

    pub(crate) fn from_columns(field: Field, domain: Vec<usize>, codomain: Vec<usize>, cols: Vec<SparseColumn>) -> LinearMap {
        debug_assert_eq!(cols.len(), total_dim(&domain));
        LinearMap {
            field,
            domain,
            codomain,
            cols,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain_shape(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain_shape(&self) -> &[usize] {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        total_dim(&self.codomain)
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.cols[col]
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|k| self.cols[col][k].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    /// All nonzero entries, sorted by row and then column.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out: Vec<(usize, usize, Scalar)> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
            .collect();
        out.sort_by_key(|(r, c, _)| (*r, *c));
        out
    }

    /// Returns a copy with entry `(row, col)` replaced by `value`.
    pub fn with_entry(&self, row: usize, col: usize, value: Scalar) -> Result<LinearMap> {
        if value.field() != self.field {
            return Err(Error::MixedFields(value.field(), self.field));
        }
        if row >= self.rows() || col >= self.cols() {
            return Err(Error::EntryOutOfRange {
                row,
                col,
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let mut out = self.clone();
        let column = &mut out.cols[col];
        match column.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(k) if value.is_zero() => {
                column.remove(k);
            }
            Ok(k) => column[k].1 = value,
            Err(_) if value.is_zero() => {}
            Err(k) => column.insert(k, (row, value)),
        }
        Ok(out)
    }

    /// Same matrix with new shape annotations of equal total dimensions.
    pub fn reshape(&self, domain: &[usize], codomain: &[usize]) -> Result<LinearMap> {
        validate_shape(domain)?;
        validate_shape(codomain)?;
        if total_dim(domain) != self.cols() || total_dim(codomain) != self.rows() {
            return Err(Error::ShapeMismatch {
                context: "reshape".into(),
                left: [self.domain.clone(), self.codomain.clone()].concat(),
                right: [domain.to_vec(), codomain.to_vec()].concat(),
            });
        }
        Ok(LinearMap {
            field: self.field,
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            cols: self.cols.clone(),
        })
    }

    /// Matrix transpose; domain and codomain shapes trade places.
    pub fn transpose(&self) -> LinearMap {
        let mut cols: Vec<SparseColumn> = vec![Vec::new(); self.rows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        LinearMap {
            field: self.field,
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            cols,
        }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.field() != self.field {
            return Err(Error::MixedFields(v.field(), self.field));
        }
        if v.dim() != self.cols() {
            return Err(Error::ShapeMismatch {
                context: "apply".into(),
                left: self.domain.clone(),
                right: v.shape().to_vec(),
            });
        }
        let mut terms = Vec::new();
        for (j, c) in v.entries() {
            terms.extend(self.cols[*j].iter().map(|(r, x)| (*r, x * c)));
        }
        Ok(Vector::from_column(self.field, self.codomain.clone(), normalize(terms)))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinearMap) -> Result<LinearMap> {
        compose(self, g)
    }

    /// `self ⊗ g`.
    pub fn tensor(&self, g: &LinearMap) -> Result<LinearMap> {
        tensor(self, g)
    }

    pub fn is_canonical(&self) -> bool {
        self.cols.iter().all(|col| {
            col.windows(2).all(|w| w[0].0 < w[1].0)
                && col
                    .iter()
                    .all(|(r, v)| *r < self.rows() && !v.is_zero() && v.is_canonical() && v.field() == self.field)
        })
    }
}

/// `f ∘ g`: codomain shape from `f`, domain shape from `g`.
pub fn compose(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
    if f.field != g.field {
        return Err(Error::MixedFields(f.field, g.field));
    }
    if f.cols() != g.rows() {
        return Err(Error::ShapeMismatch {
            context: "compose".into(),
            left: f.domain.clone(),
            right: g.codomain.clone(),
        });
    }
    let column = |gc: &SparseColumn| {
        let mut terms = Vec::new();
        for (k, c) in gc {
            terms.extend(f.cols[*k].iter().map(|(r, x)| (*r, x * c)));
        }
        normalize(terms)
    };
    let cols: Vec<SparseColumn> = if g.cols() >= PAR_THRESHOLD {
        g.cols.par_iter().map(column).collect()
    } else {
        g.cols.iter().map(column).collect()
    };
    Ok(LinearMap::from_columns(f.field, g.domain.clone(), f.codomain.clone(), cols))
}

/// Kronecker product `f ⊗ g` under the left-factor-major convention.
pub fn tensor(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
    if f.field != g.field {
        return Err(Error::MixedFields(f.field, g.field));
    }
    let grows = g.rows();
    let mut cols = Vec::with_capacity(f.cols() * g.cols());
    for fc in &f.cols {
        for gc in &g.cols {
            cols.push(kron_columns(fc, gc, grows));
        }
    }
    let mut domain = f.domain.clone();
    domain.extend_from_slice(&g.domain);
    let mut codomain = f.codomain.clone();
    codomain.extend_from_slice(&g.codomain);
    validate_shape(&domain)?;
    validate_shape(&codomain)?;
    Ok(LinearMap::from_columns(f.field, domain, codomain, cols))
}

/// The permutation `x ⊗ y ↦ y ⊗ x` from shape `[dx, dy]` to `[dy, dx]`.
pub fn flip_map(field: Field, dx: usize, dy: usize) -> Result<LinearMap> {
    validate_shape(&[dx, dy])?;
    let images: Vec<usize> = (0..dx * dy).map(|k| flip_index(dx, dy, k)).collect();
    LinearMap::from_basis_images(field, &[dx, dy], &[dy, dx], &images)
}

pub(crate) fn flip_index(dx: usize, dy: usize, k: usize) -> usize {
    let (i, j) = (k / dy, k % dy);
    j * dx + i
}
