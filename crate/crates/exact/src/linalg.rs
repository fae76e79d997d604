//! Reduced row echelon form, rank and kernels over Q.
//!
//! Elimination first runs over `Ratio<i64>` with checked operations and
//! restarts over `BigRational` on the first overflow. Either way the result
//! is exact.

use crate::rational::Q;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

type R64 = Ratio<i64>;

trait Field: Clone + Zero + One + PartialEq + CheckedSub + CheckedMul + CheckedDiv + CheckedAdd {}
impl Field for R64 {}
impl Field for Q {}

fn eliminate<T: Field>(rows: &mut Vec<Vec<T>>, ncols: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, i);
        let inv = T::one().checked_div(&rows[r][c])?;
        let mut nz = Vec::new();
        for j in c..ncols {
            if !rows[r][j].is_zero() {
                rows[r][j] = rows[r][j].checked_mul(&inv)?;
                nz.push(j);
            }
        }
        let prow: Vec<(usize, T)> = nz.iter().map(|&j| (j, rows[r][j].clone())).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for (j, v) in &prow {
                let t = f.checked_mul(v)?;
                rows[i][*j] = rows[i][*j].checked_sub(&t)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Some(pivots)
}

fn to_small(x: &Q) -> Option<R64> {
    Some(R64::new_raw(x.numer().to_i64()?, x.denom().to_i64()?))
}

fn from_small(x: &R64) -> Q {
    Q::new_raw(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

#[derive(Clone, Debug)]
enum Store {
    Small(Vec<Vec<R64>>),
    Big(Vec<Vec<Q>>),
}

/// Reduced row echelon form with zero rows removed.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    pivots: Vec<usize>,
    store: Store,
}

impl Rref {
    /// Every row must have length `ncols`.
    pub fn new(rows: &[Vec<Q>], ncols: usize) -> Rref {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        let small: Option<Vec<Vec<R64>>> = rows
            .iter()
            .map(|r| r.iter().map(to_small).collect::<Option<Vec<_>>>())
            .collect();
        if let Some(mut s) = small {
            if let Some(pivots) = eliminate(&mut s, ncols) {
                return Rref { ncols, pivots, store: Store::Small(s) };
            }
        }
        let mut b = rows.to_vec();
        let pivots = eliminate(&mut b, ncols).expect("BigRational elimination cannot overflow");
        Rref { ncols, pivots, store: Store::Big(b) }
    }

    /// Sparse integer rows `(column, value)`; repeated columns are summed.
    pub fn from_sparse_int(rows: &[Vec<(usize, i64)>], ncols: usize) -> Rref {
        let mut small: Vec<Vec<R64>> = vec![vec![R64::zero(); ncols]; rows.len()];
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                small[i][j] += R64::from_integer(v);
            }
        }
        let backup = small.clone();
        if let Some(pivots) = eliminate(&mut small, ncols) {
            return Rref { ncols, pivots, store: Store::Small(small) };
        }
        let mut b: Vec<Vec<Q>> = backup.iter().map(|r| r.iter().map(from_small).collect()).collect();
        let pivots = eliminate(&mut b, ncols).expect("BigRational elimination cannot overflow");
        Rref { ncols, pivots, store: Store::Big(b) }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        match &self.store {
            Store::Small(s) => from_small(&s[row][col]),
            Store::Big(b) => b[row][col].clone(),
        }
    }

    pub fn is_zero_at(&self, row: usize, col: usize) -> bool {
        match &self.store {
            Store::Small(s) => s[row][col].is_zero(),
            Store::Big(b) => b[row][col].is_zero(),
        }
    }
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    Rref::new(rows, ncols).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Pivot(usize),
    Free(usize),
}

/// Kernel of a matrix in free-variable form: basis vector `b` is 1 at the
/// free column `free[b]`, 0 at the other free columns, and `-R[row][free[b]]`
/// at the pivot column of `row`.
///
/// Because the basis is the identity on free columns, the coordinates of any
/// kernel vector are simply its values at the free columns.
#[derive(Clone, Debug)]
pub struct Kernel {
    rref: Rref,
    role: Vec<Role>,
    free: Vec<usize>,
}

impl Kernel {
    pub fn from_rref(rref: Rref) -> Kernel {
        let mut role = Vec::with_capacity(rref.ncols);
        let mut free = Vec::new();
        let mut next = rref.pivots.iter().enumerate().peekable();
        for c in 0..rref.ncols {
            match next.peek() {
                Some(&(row, &pc)) if pc == c => {
                    role.push(Role::Pivot(row));
                    next.next();
                }
                _ => {
                    role.push(Role::Free(free.len()));
                    free.push(c);
                }
            }
        }
        Kernel { rref, role, free }
    }

    pub fn of(rows: &[Vec<Q>], ncols: usize) -> Kernel {
        Self::from_rref(Rref::new(rows, ncols))
    }

    pub fn of_sparse_int(rows: &[Vec<(usize, i64)>], ncols: usize) -> Kernel {
        Self::from_rref(Rref::from_sparse_int(rows, ncols))
    }

    /// The full space `Q^n` (no constraints).
    pub fn full(n: usize) -> Kernel {
        Self::from_rref(Rref { ncols: n, pivots: vec![], store: Store::Small(vec![]) })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rref.ncols
    }

    pub fn free_cols(&self) -> &[usize] {
        &self.free
    }

    pub fn entry(&self, basis: usize, col: usize) -> Q {
        match self.role[col] {
            Role::Free(j) => {
                if j == basis {
                    Q::one()
                } else {
                    Q::zero()
                }
            }
            Role::Pivot(row) => -self.rref.get(row, self.free[basis]),
        }
    }

    /// Nonzero entries of basis vector `basis`, sorted by column.
    pub fn vector(&self, basis: usize) -> Vec<(usize, Q)> {
        let f = self.free[basis];
        let mut out = Vec::new();
        for (row, &pc) in self.rref.pivots.iter().enumerate() {
            if !self.rref.is_zero_at(row, f) {
                out.push((pc, -self.rref.get(row, f)));
            }
        }
        out.push((f, Q::one()));
        out.sort_by_key(|e| e.0);
        out
    }

    /// Coordinates of `v` (assumed to lie in the kernel) in this basis.
    pub fn coords_of(&self, v: &[Q]) -> Vec<Q> {
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}
