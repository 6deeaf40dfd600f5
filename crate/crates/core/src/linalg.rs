//! Dense exact linear algebra over `ℚ` on small matrices (rank ≤ 8).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{QVec, Rat};

pub type QMat = Vec<QVec>;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], k: &Rat) -> QVec {
    a.iter().map(|x| x * k).collect()
}

pub fn neg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

/// `a + k·b`.
pub fn axpy(a: &[Rat], k: &Rat, b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

pub fn is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn mat_vec(m: &[QVec], v: &[Rat]) -> QVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn transpose(m: &[QVec]) -> QMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[QVec], b: &[QVec]) -> QMat {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the non-zero rows and their pivot columns.
pub fn rref(rows: &[QVec], ncols: usize) -> (QMat, Vec<usize>) {
    let mut m: QMat = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = scale(&m[r], &inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = -m[i][c].clone();
                m[i] = axpy(&m[i], &k, &m[r]);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row·x = 0 for every row}`.
pub fn nullspace(rows: &[QVec], ncols: usize) -> QMat {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); ncols];
            x[f] = Rat::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Canonical basis (RREF rows) of the row space.
pub fn span_basis(rows: &[QVec], ncols: usize) -> QMat {
    rref(rows, ncols).0
}

pub fn in_span(basis_rref: &[QVec], v: &[Rat]) -> bool {
    let mut rows = basis_rref.to_vec();
    rows.push(v.to_vec());
    rank(&rows, v.len()) == basis_rref.len()
}

pub fn inverse(m: &[QVec]) -> Option<QMat> {
    let n = m.len();
    let aug: QMat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Orthogonal projection (standard dot) of `v` onto the complement of the
/// span of `basis`.
pub fn project_out(basis: &[QVec], v: &[Rat]) -> QVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve (B Bᵀ) c = B v, then v − Bᵀ c.
    let gram: QMat = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: QVec = basis.iter().map(|b| dot(b, v)).collect();
    let inv = inverse(&gram).expect("projection basis must be independent");
    let c = mat_vec(&inv, &rhs);
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        out = axpy(&out, &-ci.clone(), b);
    }
    out
}

/// Projection of `v` onto the complement of `span(basis)`, orthogonal for
/// the scalar product `x·metric·y`.
pub fn project_out_metric(metric: &[QVec], basis: &[QVec], v: &[Rat]) -> QVec {
    let indep = span_basis(basis, v.len());
    if indep.is_empty() {
        return v.to_vec();
    }
    let mbi: QMat = indep.iter().map(|b| mat_vec(metric, b)).collect();
    let g: QMat = mbi
        .iter()
        .map(|a| indep.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: QVec = mbi.iter().map(|a| dot(a, v)).collect();
    let c = mat_vec(&inverse(&g).expect("metric is definite"), &rhs);
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(&indep) {
        out = axpy(&out, &-ci.clone(), b);
    }
    out
}

/// Positive rescaling of `v` to a primitive integer vector.
pub fn primitive(v: &[Rat]) -> QVec {
    if is_zero(v) {
        return v.to_vec();
    }
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

pub fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
