//! Octonions over the basis `(1, i, j, k, e, f, g, h)`.
//!
//! The table is the Cayley–Dickson double of the quaternions,
//! `(a, b)(c, d) = (ac − d̄b, da + bc̄)`, with `e = (0, 1)`, `f = ie`, `g = je`,
//! `h = ke`. It is the unique table whose right multiplications reproduce the
//! Kähler forms checked in [`crate::catalog`].

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{ExactMatrix, GaussianRational, Rational, Realm};

pub const BASIS_NAMES: [&str; 8] = ["1", "i", "j", "k", "e", "f", "g", "h"];

/// Product of two basis units: `e_x · e_y = sign · e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignedUnit {
    pub sign: i8,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    table: [[SignedUnit; 8]; 8],
}

fn quat_mul(p: [i64; 4], q: [i64; 4]) -> [i64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn quat_conj([a, b, c, d]: [i64; 4]) -> [i64; 4] {
    [a, -b, -c, -d]
}

fn cayley_dickson(x: [i64; 8], y: [i64; 8]) -> [i64; 8] {
    let split = |v: [i64; 8]| ([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]]);
    let (a, b) = split(x);
    let (c, d) = split(y);
    let lhs = quat_mul(a, c);
    let lhs2 = quat_mul(quat_conj(d), b);
    let rhs = quat_mul(d, a);
    let rhs2 = quat_mul(b, quat_conj(c));
    let mut out = [0; 8];
    for t in 0..4 {
        out[t] = lhs[t] - lhs2[t];
        out[t + 4] = rhs[t] + rhs2[t];
    }
    out
}

impl MulTable {
    pub fn cayley_dickson() -> Self {
        let unit = |n: usize| {
            let mut v = [0i64; 8];
            v[n] = 1;
            v
        };
        let mut table = [[SignedUnit { sign: 1, index: 0 }; 8]; 8];
        for (x, row) in table.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                let p = cayley_dickson(unit(x), unit(y));
                let index = p.iter().position(|&c| c != 0).expect("basis product is nonzero");
                *cell = SignedUnit { sign: p[index] as i8, index };
            }
        }
        MulTable { table }
    }

    /// The table used everywhere in the crate.
    pub fn standard() -> &'static MulTable {
        static TABLE: OnceLock<MulTable> = OnceLock::new();
        TABLE.get_or_init(MulTable::cayley_dickson)
    }

    pub fn product(&self, x: usize, y: usize) -> SignedUnit {
        self.table[x][y]
    }

    pub fn rows(&self) -> &[[SignedUnit; 8]; 8] {
        &self.table
    }

    /// Compact `"+i"`/`"-k"` rendering, row by row.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.table
            .iter()
            .map(|row| {
                row.iter().map(|u| format!("{}{}", if u.sign > 0 { '+' } else { '-' }, BASIS_NAMES[u.index])).collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Octonion(pub [Rational; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(Default::default())
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(n: usize) -> Self {
        let mut o = Self::zero();
        o.0[n] = Rational::ONE;
        o
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion(c.map(Rational::from_integer))
    }

    pub fn coeffs(&self) -> &[Rational; 8] {
        &self.0
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0.clone();
        for x in c.iter_mut().skip(1) {
            *x = -&*x;
        }
        Octonion(c)
    }

    /// Sum of squared coordinates.
    pub fn norm(&self) -> Rational {
        self.0.iter().fold(Rational::ZERO, |acc, x| acc + x * x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Octonion(self.0.clone().map(|x| &x * r))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.0.clone();
        for (x, y) in c.iter_mut().zip(&o.0) {
            *x += y;
        }
        Octonion(c)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .zip(BASIS_NAMES)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if n == "1" { c.to_string() } else { format!("{c}{n}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let t = MulTable::standard();
    let mut out = Octonion::zero();
    for (a, xa) in x.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, yb) in y.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let u = t.product(a, b);
            let p = xa * yb;
            if u.sign > 0 {
                out.0[u.index] += &p;
            } else {
                out.0[u.index] -= &p;
            }
        }
    }
    out
}

/// Matrix of `x ↦ x·u`: column `c` holds the coordinates of `e_c · u`.
pub fn right_mult_matrix(u: &Octonion) -> ExactMatrix {
    let cols: Vec<Octonion> = (0..8).map(|c| oct_mul(&Octonion::basis(c), u)).collect();
    ExactMatrix::from_fn(8, Realm::Other, |r, c| GaussianRational::real(cols[c].0[r].clone()))
        .expect("8x8 real matrix")
}

/// `R_uv = R_u ∘ R_v`.
pub fn right_mult_composition(u: &Octonion, v: &Octonion) -> ExactMatrix {
    right_mult_matrix(u).mul(&right_mult_matrix(v)).expect("equal dimensions")
}
