use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Which picture a matrix belongs to. Real realms never carry imaginary entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realm {
    Real32,
    Real16,
    Complex16,
    Other,
}

impl Realm {
    pub fn is_real(self) -> bool {
        matches!(self, Realm::Real32 | Realm::Real16)
    }

    /// The natural tag for a real matrix of the given size.
    pub fn real_for(dim: usize) -> Realm {
        match dim {
            32 => Realm::Real32,
            16 => Realm::Real16,
            _ => Realm::Other,
        }
    }

    fn combine(self, other: Realm) -> Realm {
        match (self, other) {
            (a, b) if a == b => a,
            (Realm::Complex16, Realm::Real16) | (Realm::Real16, Realm::Complex16) => Realm::Complex16,
            _ => Realm::Other,
        }
    }
}

impl fmt::Display for Realm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realm::Real32 => "real-32",
            Realm::Real16 => "real-16",
            Realm::Complex16 => "complex-16",
            Realm::Other => "other",
        })
    }
}

/// Dense square matrix over the Gaussian rationals, row-major.
///
/// Equality and hashing look at the entries only; the realm is a tag.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<GaussianRational>,
    realm: Realm,
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for ExactMatrix {}

impl std::hash::Hash for ExactMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.entries.hash(state);
    }
}

impl ExactMatrix {
    pub fn new(dim: usize, entries: Vec<GaussianRational>, realm: Realm) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { left: dim * dim, right: entries.len() });
        }
        let m = ExactMatrix { dim, entries, realm };
        m.check_realm()?;
        Ok(m)
    }

    fn check_realm(&self) -> Result<()> {
        let expected_dim = match self.realm {
            Realm::Real32 => Some(32),
            Realm::Real16 | Realm::Complex16 => Some(16),
            Realm::Other => None,
        };
        if let Some(d) = expected_dim {
            if d != self.dim {
                return Err(Error::DimensionMismatch { left: d, right: self.dim });
            }
        }
        if self.realm.is_real() && !self.is_real() {
            return Err(Error::WrongRealm { expected: self.realm.to_string(), found: "complex entries".into() });
        }
        Ok(())
    }

    pub fn from_fn(dim: usize, realm: Realm, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self::new(dim, entries, realm)
    }

    /// Real matrix from small integers, tagged by size.
    pub fn from_ints(dim: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        Self::from_fn(dim, Realm::real_for(dim), |r, c| GaussianRational::from_int(f(r, c)))
            .expect("integer matrix is real")
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_ints(dim, |_, _| 0)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_ints(dim, |r, c| (r == c) as i64)
    }

    /// Assemble a square block matrix from a square grid of equal-sized blocks.
    pub fn from_blocks(blocks: &[Vec<ExactMatrix>]) -> Result<Self> {
        let n = blocks.len();
        if n == 0 || blocks.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("block grid must be square and non-empty".into()));
        }
        let b = blocks[0][0].dim;
        for m in blocks.iter().flatten() {
            if m.dim != b {
                return Err(Error::DimensionMismatch { left: b, right: m.dim });
            }
        }
        let dim = n * b;
        let real = blocks.iter().flatten().all(|m| m.is_real());
        let realm = if real { Realm::real_for(dim) } else { Realm::Other };
        Self::from_fn(dim, realm, |r, c| blocks[r / b][c / b].get(r % b, c % b).clone())
    }

    /// The `size × size` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Result<Self> {
        if row + size > self.dim || col + size > self.dim || size == 0 {
            return Err(Error::InvalidArgument(format!("block ({row},{col}) of size {size} out of range")));
        }
        let real = self.is_real();
        let realm = if real { Realm::real_for(size) } else if size == 16 { Realm::Complex16 } else { Realm::Other };
        Self::from_fn(size, realm, |r, c| self.get(row + r, col + c).clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn realm(&self) -> Realm {
        self.realm
    }

    /// Retag the matrix; fails if the entries or size are incompatible with the new realm.
    pub fn with_realm(mut self, realm: Realm) -> Result<Self> {
        self.realm = realm;
        self.check_realm()?;
        Ok(self)
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_real)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { dim: self.dim, entries, realm: self.realm.combine(other.realm) })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        ExactMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect(), realm: self.realm }
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.map(|x| x.scale(s))
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = self.map(|x| x * s);
        if !s.is_real() && self.realm.is_real() {
            out.realm = if self.dim == 16 { Realm::Complex16 } else { Realm::Other };
        }
        out
    }

    /// Exact product, skipping zero entries on both sides.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let rows_b: Vec<Vec<usize>> =
            (0..n).map(|k| (0..n).filter(|&j| !other.get(k, j).is_zero()).collect()).collect();
        let mut entries = vec![GaussianRational::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &rows_b[k] {
                    entries[i * n + j] += &(a * other.get(k, j));
                }
            }
        }
        Ok(ExactMatrix { dim: n, entries, realm: self.realm.combine(other.realm) })
    }

    /// Commutator `AB − BA`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Anticommutator `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        ExactMatrix {
            dim: n,
            entries: (0..n * n).map(|i| self.get(i % n, i / n).clone()).collect(),
            realm: self.realm,
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        ExactMatrix {
            dim: n,
            entries: (0..n * n).map(|i| self.get(i % n, i / n).conj()).collect(),
            realm: self.realm,
        }
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::ZERO;
        for i in 0..self.dim {
            t += self.get(i, i);
        }
        t
    }

    /// `trace(A* B)` computed entrywise as `Σ conj(a_ij) b_ij`.
    pub fn herm_inner(&self, other: &Self) -> Result<GaussianRational> {
        self.same_dim(other)?;
        let mut t = GaussianRational::ZERO;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                t += &(&a.conj() * b);
            }
        }
        Ok(t)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|r| (r + 1..n).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_skew(&self) -> bool {
        let n = self.dim;
        (0..n).all(|r| self.get(r, r).is_zero() && (r + 1..n).all(|c| *self.get(r, c) == -self.get(c, r)))
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.conj_transpose() == self.neg()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        (0..n).all(|r| (0..n).all(|c| *self.get(r, c) == GaussianRational::from_int((r == c) as i64)))
    }

    pub fn is_neg_identity(&self) -> bool {
        self.neg().is_identity()
    }

    /// `[[A, −B], [B, A]]` for `M = A + iB`; requires a complex-16 tag.
    pub fn realify(&self) -> Result<Self> {
        if self.realm != Realm::Complex16 {
            return Err(Error::WrongRealm { expected: Realm::Complex16.to_string(), found: self.realm.to_string() });
        }
        self.realify_any()
    }

    /// Realification without the realm check, for small complex prototypes.
    pub(crate) fn realify_any(&self) -> Result<Self> {
        let n = self.dim;
        Self::from_fn(2 * n, Realm::real_for(2 * n), |r, c| {
            let x = self.get(r % n, c % n);
            let v = match (r < n, c < n) {
                (true, true) | (false, false) => x.re.clone(),
                (true, false) => -&x.im,
                (false, true) => x.im.clone(),
            };
            GaussianRational::real(v)
        })
    }

    /// Real matrix with rational entries as `i64`, if every entry is a real integer that fits.
    pub fn to_i64_real(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|x| if x.is_real() { x.re.to_i64() } else { None }).collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small(dim: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_fn(dim, Realm::Other, |r, c| GaussianRational::from_int(vals[r * dim + c])).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = small(3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let id = ExactMatrix::identity(3);
        assert_eq!(id.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&id).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.bracket(&b).is_err());
        assert!(a.herm_inner(&b).is_err());
    }

    #[test]
    fn realify_of_i_times_identity() {
        let i_id = ExactMatrix::identity(16).scale(&GaussianRational::I);
        assert_eq!(i_id.realm(), Realm::Complex16);
        let r = i_id.realify().unwrap();
        assert_eq!(r.realm(), Realm::Real32);
        let z = ExactMatrix::zeros(16);
        let id = ExactMatrix::identity(16);
        let expected = ExactMatrix::from_blocks(&[vec![z.clone(), id.neg()], vec![id, z]]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn realify_of_real_matrix_is_block_diagonal() {
        let a = ExactMatrix::from_ints(16, |r, c| (r as i64) - 2 * (c as i64));
        let r = a.clone().with_realm(Realm::Complex16).unwrap().realify().unwrap();
        let z = ExactMatrix::zeros(16);
        assert_eq!(r, ExactMatrix::from_blocks(&[vec![a.clone(), z.clone()], vec![z, a]]).unwrap());
    }

    #[test]
    fn realify_rejects_real_realm() {
        assert!(matches!(ExactMatrix::identity(16).realify(), Err(Error::WrongRealm { .. })));
    }

    #[test]
    fn realm_rejects_complex_entries() {
        let e = vec![GaussianRational::I; 256];
        assert!(ExactMatrix::new(16, e, Realm::Real16).is_err());
    }

    #[test]
    fn bracket_with_self_vanishes() {
        let a = small(2, &[1, 2, 3, 4]);
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn herm_inner_of_identity() {
        let id = ExactMatrix::identity(16);
        assert_eq!(id.herm_inner(&id).unwrap(), GaussianRational::from_int(16));
    }

    fn arb_complex(dim: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-3i64..4, -3i64..4), dim * dim).prop_map(move |v| {
            let e = v
                .into_iter()
                .map(|(a, b)| GaussianRational::new(Rational::from_integer(a), Rational::from_integer(b)))
                .collect();
            ExactMatrix::new(dim, e, Realm::Other).unwrap()
        })
    }

    proptest! {
        #[test]
        fn matrix_laws(a in arb_complex(3), b in arb_complex(3), c in arb_complex(3)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().trace(), b.mul(&a).unwrap().trace());
            prop_assert_eq!(a.herm_inner(&b).unwrap(), b.herm_inner(&a).unwrap().conj());
            prop_assert_eq!(a.herm_inner(&b).unwrap(), a.conj_transpose().mul(&b).unwrap().trace());
        }
    }
}
