//! Lazily evaluated composites of linear maps.
//!
//! Condition formulas such as `(μ_A ⊗ μ_H) ∘ (id_A ⊗ R ⊗ id_H)` are built as
//! expression trees and evaluated one basis column at a time, so the
//! Kronecker factors (`id ⊗ flip ⊗ id` on a 24⁴-dimensional space, say) are
//! never materialized. [`MapExpr::materialize`] yields exactly the matrix that
//! [`crate::linear::compose`] and [`crate::linear::tensor`] would produce.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linear::{
    flip_index, kron_columns, multi_index, normalize, squeeze, total_dim, LinearMap, SparseColumn, Vector,
    PAR_THRESHOLD,
};
use crate::report::Witness;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug)]
pub enum MapExpr<'a> {
    Map(&'a LinearMap),
    Owned(LinearMap),
    Id(usize),
    Flip(usize, usize),
    Tensor(Vec<MapExpr<'a>>),
    /// Composition in written order: `[f, g, h]` is `f ∘ g ∘ h`.
    Compose(Vec<MapExpr<'a>>),
}

pub fn map(m: &LinearMap) -> MapExpr<'_> {
    MapExpr::Map(m)
}

pub fn owned<'a>(m: LinearMap) -> MapExpr<'a> {
    MapExpr::Owned(m)
}

pub fn id<'a>(d: usize) -> MapExpr<'a> {
    MapExpr::Id(d)
}

pub fn flip<'a>(dx: usize, dy: usize) -> MapExpr<'a> {
    MapExpr::Flip(dx, dy)
}

pub fn tensor<'a>(factors: impl IntoIterator<Item = MapExpr<'a>>) -> MapExpr<'a> {
    MapExpr::Tensor(factors.into_iter().collect())
}

pub fn chain<'a>(maps: impl IntoIterator<Item = MapExpr<'a>>) -> MapExpr<'a> {
    MapExpr::Compose(maps.into_iter().collect())
}

impl<'a> MapExpr<'a> {
    pub fn domain_shape(&self) -> Vec<usize> {
        match self {
            MapExpr::Map(m) => m.domain_shape().to_vec(),
            MapExpr::Owned(m) => m.domain_shape().to_vec(),
            MapExpr::Id(d) => vec![*d],
            MapExpr::Flip(dx, dy) => vec![*dx, *dy],
            MapExpr::Tensor(fs) => fs.iter().flat_map(|f| f.domain_shape()).collect(),
            MapExpr::Compose(fs) => fs.last().map(|f| f.domain_shape()).unwrap_or_default(),
        }
    }

    pub fn codomain_shape(&self) -> Vec<usize> {
        match self {
            MapExpr::Map(m) => m.codomain_shape().to_vec(),
            MapExpr::Owned(m) => m.codomain_shape().to_vec(),
            MapExpr::Id(d) => vec![*d],
            MapExpr::Flip(dx, dy) => vec![*dy, *dx],
            MapExpr::Tensor(fs) => fs.iter().flat_map(|f| f.codomain_shape()).collect(),
            MapExpr::Compose(fs) => fs.first().map(|f| f.codomain_shape()).unwrap_or_default(),
        }
    }

    fn domain_dim(&self) -> usize {
        match self {
            MapExpr::Map(m) => m.cols(),
            MapExpr::Owned(m) => m.cols(),
            MapExpr::Id(d) => *d,
            MapExpr::Flip(dx, dy) => dx * dy,
            MapExpr::Tensor(fs) => fs.iter().map(MapExpr::domain_dim).product(),
            MapExpr::Compose(fs) => fs.last().map_or(1, MapExpr::domain_dim),
        }
    }

    fn codomain_dim(&self) -> usize {
        match self {
            MapExpr::Map(m) => m.rows(),
            MapExpr::Owned(m) => m.rows(),
            MapExpr::Id(d) => *d,
            MapExpr::Flip(dx, dy) => dx * dy,
            MapExpr::Tensor(fs) => fs.iter().map(MapExpr::codomain_dim).product(),
            MapExpr::Compose(fs) => fs.first().map_or(1, MapExpr::codomain_dim),
        }
    }

    /// Checks that adjacent factors of every composition agree on their
    /// shared space, up to unit factors.
    pub fn validate(&self) -> Result<()> {
        match self {
            MapExpr::Map(_) | MapExpr::Owned(_) => Ok(()),
            MapExpr::Id(d) => nonzero(&[*d]),
            MapExpr::Flip(dx, dy) => nonzero(&[*dx, *dy]),
            MapExpr::Tensor(fs) => {
                if fs.is_empty() {
                    return Err(empty("tensor"));
                }
                fs.iter().try_for_each(MapExpr::validate)
            }
            MapExpr::Compose(fs) => {
                if fs.is_empty() {
                    return Err(empty("compose"));
                }
                fs.iter().try_for_each(MapExpr::validate)?;
                for w in fs.windows(2) {
                    let (outer, inner) = (w[0].domain_shape(), w[1].codomain_shape());
                    if squeeze(&outer) != squeeze(&inner) {
                        return Err(Error::ShapeMismatch {
                            context: "composite".into(),
                            left: outer,
                            right: inner,
                        });
                    }
                }
                Ok(())
            }
        }
    }

    fn field(&self) -> Option<Field> {
        match self {
            MapExpr::Map(m) => Some(m.field()),
            MapExpr::Owned(m) => Some(m.field()),
            MapExpr::Id(_) | MapExpr::Flip(..) => None,
            MapExpr::Tensor(fs) | MapExpr::Compose(fs) => fs.iter().find_map(MapExpr::field),
        }
    }

    fn check_fields(&self, field: Field) -> Result<()> {
        match self {
            MapExpr::Map(m) if m.field() != field => Err(Error::MixedFields(m.field(), field)),
            MapExpr::Owned(m) if m.field() != field => Err(Error::MixedFields(m.field(), field)),
            MapExpr::Tensor(fs) | MapExpr::Compose(fs) => fs.iter().try_for_each(|f| f.check_fields(field)),
            _ => Ok(()),
        }
    }

    /// The image of basis vector `j` of the domain.
    pub(crate) fn apply_basis(&self, j: usize, one: &Scalar) -> SparseColumn {
        match self {
            MapExpr::Map(m) => m.column(j).to_vec(),
            MapExpr::Owned(m) => m.column(j).to_vec(),
            MapExpr::Id(_) => vec![(j, one.clone())],
            MapExpr::Flip(dx, dy) => vec![(flip_index(*dx, *dy, j), one.clone())],
            MapExpr::Tensor(fs) => {
                let mut rest = j;
                let mut idx = vec![0; fs.len()];
                for (k, f) in fs.iter().enumerate().rev() {
                    let d = f.domain_dim();
                    idx[k] = rest % d;
                    rest /= d;
                }
                let mut acc: SparseColumn = vec![(0, one.clone())];
                for (f, i) in fs.iter().zip(idx) {
                    let col = f.apply_basis(i, one);
                    acc = if acc.len() == 1 && acc[0].1.is_one() {
                        let base = acc[0].0 * f.codomain_dim();
                        col.into_iter().map(|(r, x)| (base + r, x)).collect()
                    } else if col.len() == 1 && col[0].1.is_one() {
                        let (len, r) = (f.codomain_dim(), col[0].0);
                        acc.into_iter().map(|(i, x)| (i * len + r, x)).collect()
                    } else {
                        kron_columns(&acc, &col, f.codomain_dim())
                    };
                }
                acc
            }
            MapExpr::Compose(fs) => {
                let mut iter = fs.iter().rev();
                let mut v = match iter.next() {
                    Some(f) => f.apply_basis(j, one),
                    None => return vec![],
                };
                for f in iter {
                    if v.is_empty() {
                        break;
                    }
                    v = f.apply_sparse(&v, one);
                }
                v
            }
        }
    }

    fn apply_sparse(&self, v: &[(usize, Scalar)], one: &Scalar) -> SparseColumn {
        let mut terms = Vec::new();
        for (j, c) in v {
            let col = self.apply_basis(*j, one);
            if c.is_one() {
                terms.extend(col);
            } else {
                terms.extend(col.into_iter().map(|(r, x)| (r, &x * c)));
            }
        }
        normalize(terms)
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.validate()?;
        self.check_fields(v.field())?;
        let dom = self.domain_shape();
        if total_dim(&dom) != v.dim() {
            return Err(Error::ShapeMismatch {
                context: "apply".into(),
                left: dom,
                right: v.shape().to_vec(),
            });
        }
        let one = v.field().one();
        let col = self.apply_sparse(v.entries(), &one);
        Ok(Vector::from_column(v.field(), self.codomain_shape(), col))
    }

    /// Evaluates the composite into a single sparse matrix.
    pub fn materialize(&self, field: Field) -> Result<LinearMap> {
        self.validate()?;
        self.check_fields(field)?;
        let domain = self.domain_shape();
        let n = total_dim(&domain);
        let one = field.one();
        let column = |j: usize| normalize(self.apply_basis(j, &one));
        let cols: Vec<SparseColumn> = if n >= PAR_THRESHOLD {
            (0..n).into_par_iter().map(column).collect()
        } else {
            (0..n).map(column).collect()
        };
        Ok(LinearMap::from_columns(field, domain, self.codomain_shape(), cols))
    }

    /// The field of the first concrete matrix in the tree, if any.
    pub fn inferred_field(&self) -> Option<Field> {
        self.field()
    }
}

fn nonzero(shape: &[usize]) -> Result<()> {
    if shape.contains(&0) {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

fn empty(what: &str) -> Error {
    Error::ShapeMismatch {
        context: format!("empty {what}"),
        left: vec![],
        right: vec![],
    }
}

/// Compares two composites column by column. Returns the witness at the
/// smallest domain index where they differ, or `None` when they are equal.
/// The index is decoded in the squeezed domain shape, which for left-major
/// flattening makes it the lexicographically smallest failing basis tuple.
pub fn compare(lhs: &MapExpr<'_>, rhs: &MapExpr<'_>, field: Field) -> Result<Option<Witness>> {
    lhs.validate()?;
    rhs.validate()?;
    lhs.check_fields(field)?;
    rhs.check_fields(field)?;
    let (ld, rd) = (squeeze(&lhs.domain_shape()), squeeze(&rhs.domain_shape()));
    let (lc, rc) = (squeeze(&lhs.codomain_shape()), squeeze(&rhs.codomain_shape()));
    if ld != rd || lc != rc {
        return Err(Error::ShapeMismatch {
            context: "equation sides".into(),
            left: [ld, lc].concat(),
            right: [rd, rc].concat(),
        });
    }
    let one = field.one();
    let n = total_dim(&ld);
    let differs = |j: &usize| normalize(lhs.apply_basis(*j, &one)) != normalize(rhs.apply_basis(*j, &one));
    let first = if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().find_first(differs)
    } else {
        (0..n).find(differs)
    };
    Ok(first.map(|j| Witness {
        tuple: multi_index(&ld, j),
        lhs: Vector::from_column(field, lc.clone(), normalize(lhs.apply_basis(j, &one))),
        rhs: Vector::from_column(field, lc.clone(), normalize(rhs.apply_basis(j, &one))),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{compose, flip_map, tensor as ktensor};
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn arb_map(domain: Vec<usize>, codomain: Vec<usize>) -> impl Strategy<Value = LinearMap> {
        let rows = total_dim(&codomain);
        let cols = total_dim(&domain);
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..=3], rows * cols).prop_map(move |vals| {
            let entries = vals
                .iter()
                .enumerate()
                .map(|(k, &v)| (k / cols, k % cols, Q.from_i64(v)));
            LinearMap::from_entries(Q, &domain, &codomain, entries).unwrap()
        })
    }

    proptest! {
        // Lazy evaluation must agree with the materialized kernel.
        #[test]
        fn lazy_matches_materialized(
            f in arb_map(vec![2, 3], vec![2]),
            g in arb_map(vec![3], vec![3, 3]),
            h in arb_map(vec![2], vec![2]),
        ) {
            // (f ⊗ id_3) ∘ (h ⊗ g) ∘ flip(3, 2)
            let lazy = chain([
                tensor([map(&f), id(3)]),
                tensor([map(&h), map(&g)]),
                flip(3, 2),
            ]).materialize(Q).unwrap();
            let id3 = LinearMap::identity(Q, 3).unwrap();
            let eager = compose(
                &compose(&ktensor(&f, &id3).unwrap(), &ktensor(&h, &g).unwrap()).unwrap(),
                &flip_map(Q, 3, 2).unwrap(),
            ).unwrap();
            prop_assert_eq!(lazy, eager);
        }
    }

    #[test]
    fn compare_finds_smallest_difference() {
        let id4 = LinearMap::identity_on(Q, &[2, 2]).unwrap();
        let f = flip_map(Q, 2, 2).unwrap();
        let w = compare(&map(&id4), &map(&f), Q).unwrap().unwrap();
        assert_eq!(w.tuple, vec![0, 1]);
        assert_eq!(w.lhs.entries(), &[(1, Q.one())]);
        assert_eq!(w.rhs.entries(), &[(2, Q.one())]);
        assert!(compare(&map(&id4), &chain([flip(2, 2), flip(2, 2)]), Q).unwrap().is_none());
    }

    #[test]
    fn compare_rejects_mismatched_sides() {
        let a = LinearMap::identity_on(Q, &[2, 3]).unwrap();
        assert!(matches!(compare(&map(&a), &flip(2, 3), Q), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(chain([id(2), id(3)]).validate(), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn unit_factors_are_squeezed() {
        // ε ⊗ id vs id ⊗ ε on a 1-dimensional factor.
        let one = LinearMap::identity(Q, 1).unwrap();
        let lhs = tensor([map(&one), id(3)]);
        assert!(compare(&lhs, &id(3), Q).unwrap().is_none());
    }
}
