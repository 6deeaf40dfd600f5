//! Diagonal seminorms on `V = k^{d+1}` with values in `q^ℚ ∪ {0}`, their
//! homothety classes, the section `j` to multiplicative seminorms on `S•V`,
//! canonical representatives, limits of log-affine sequences and stabilizer
//! shapes.
//!
//! Values are stored as exponents: `|e_i|(x) = q^{exps[i]}`, `−∞` for zero.
//! Where actual field elements appear (changes of basis) the field is `ℚ`
//! with the 2-adic absolute value, so `q = 2`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg::{self, QMat};
use crate::rational::{ceil, padic_log_abs, rat, to_f64, ExtRat, Rat};

pub const RESIDUE_PRIME: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagSeminorm {
    #[serde(with = "crate::rational::serde_extvec")]
    pub exps: Vec<ExtRat>,
}

impl DiagSeminorm {
    pub fn new(exps: Vec<ExtRat>) -> Result<Self> {
        if exps.is_empty() {
            return domain("a seminorm needs at least one coordinate");
        }
        if exps.iter().all(|e| !e.is_finite()) {
            return domain("the zero seminorm is excluded");
        }
        Ok(DiagSeminorm { exps })
    }

    pub fn from_rats(exps: &[Rat]) -> Self {
        DiagSeminorm {
            exps: exps.iter().cloned().map(ExtRat::Finite).collect(),
        }
    }

    /// The Gauss point: every basis vector has value 1.
    pub fn gauss(dim: usize) -> Self {
        DiagSeminorm {
            exps: vec![ExtRat::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn max_exp(&self) -> Rat {
        self.exps
            .iter()
            .filter_map(ExtRat::finite)
            .max()
            .cloned()
            .expect("non-zero seminorm")
    }

    pub fn shift(&self, by: &Rat) -> Self {
        DiagSeminorm {
            exps: self.exps.iter().map(|e| e.shift(by)).collect(),
        }
    }

    pub fn class(&self) -> SeminormClass {
        SeminormClass(self.shift(&-self.max_exp()))
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.exps[i].is_finite()).collect()
    }
}

/// A homothety class, represented by the seminorm whose largest finite
/// exponent is 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeminormClass(pub DiagSeminorm);

impl SeminormClass {
    pub fn exps(&self) -> &[ExtRat] {
        &self.0.exps
    }
}

/// A polynomial in `X_0..X_d` recorded by the values `|a_ν| = q^{val}` of its
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValuedPolynomial {
    pub terms: Vec<(Vec<u32>, ExtRat)>,
}

impl ValuedPolynomial {
    pub fn monomial(nu: Vec<u32>) -> Self {
        ValuedPolynomial {
            terms: vec![(nu, ExtRat::zero())],
        }
    }
}

/// `max_i (coeff_vals[i] + exps[i])`.
pub fn eval_vector(x: &DiagSeminorm, coeff_vals: &[ExtRat]) -> Result<ExtRat> {
    if coeff_vals.len() != x.dim() {
        return domain("vector and seminorm have different dimensions");
    }
    Ok(x.exps
        .iter()
        .zip(coeff_vals)
        .map(|(e, c)| e + c)
        .max()
        .unwrap_or(ExtRat::NegInf))
}

fn monomial_value(exps: &[ExtRat], nu: &[u32]) -> ExtRat {
    let mut acc = ExtRat::zero();
    for (e, &k) in exps.iter().zip(nu) {
        acc = &acc + &e.scale(k);
    }
    acc
}

/// `j(x)(Σ a_ν X^ν) = max_ν |a_ν| ∏ |e_i|(x)^{ν_i}`.
pub fn eval_polynomial_j(x: &DiagSeminorm, p: &ValuedPolynomial) -> Result<ExtRat> {
    let mut best = ExtRat::NegInf;
    for (nu, val) in &p.terms {
        if nu.len() != x.dim() {
            return domain("monomial and seminorm have different dimensions");
        }
        best = best.max(val + &monomial_value(&x.exps, nu));
    }
    Ok(best)
}

/// A seminorm on `S•V` that is monomial in the basis `f_i = Σ_j basis[i][j] e_j`
/// with `|f_i| = q^{exps[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSeminorm {
    pub basis: QMat,
    pub exps: Vec<ExtRat>,
}

/// A polynomial in the `e`-variables with coefficients in `ℚ`.
pub type Polynomial = Vec<(Vec<u32>, Rat)>;

impl MonomialSeminorm {
    /// Coordinates of the `e_j` in the basis `f`.
    fn e_in_f(&self) -> Result<QMat> {
        // f = B e with B = basis, so e = B⁻¹ f; row j of B⁻¹ expresses e_j.
        linalg::inverse(&self.basis).ok_or_else(|| Error::Domain("basis is not invertible".into()))
    }

    fn eval_f_poly(&self, terms: &HashMap<Vec<u32>, Rat>) -> ExtRat {
        terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mu, c)| &padic_log_abs(c, RESIDUE_PRIME) + &monomial_value(&self.exps, mu))
            .max()
            .unwrap_or(ExtRat::NegInf)
    }

    /// `z(P)` for `P` written in the `e`-variables.
    pub fn eval(&self, p: &Polynomial) -> Result<ExtRat> {
        let m = self.e_in_f()?;
        let n = self.exps.len();
        let mut total: HashMap<Vec<u32>, Rat> = HashMap::new();
        for (nu, coeff) in p {
            if nu.len() != n {
                return domain("monomial and seminorm have different dimensions");
            }
            let mut prod: HashMap<Vec<u32>, Rat> = HashMap::from([(vec![0; n], coeff.clone())]);
            for (j, &k) in nu.iter().enumerate() {
                for _ in 0..k {
                    let mut next: HashMap<Vec<u32>, Rat> = HashMap::new();
                    for (mu, c) in &prod {
                        for (i, mji) in m[j].iter().enumerate() {
                            if mji.is_zero() {
                                continue;
                            }
                            let mut mu2 = mu.clone();
                            mu2[i] += 1;
                            *next.entry(mu2).or_insert_with(Rat::zero) += c * mji;
                        }
                    }
                    prod = next;
                }
            }
            for (mu, c) in prod {
                *total.entry(mu).or_insert_with(Rat::zero) += c;
            }
        }
        Ok(self.eval_f_poly(&total))
    }

    /// `τ(z)`: the restriction to `V`, evaluated on the basis vectors `e_j`.
    pub fn restriction_on_basis(&self) -> Result<Vec<ExtRat>> {
        let n = self.exps.len();
        (0..n)
            .map(|j| {
                let mut nu = vec![0; n];
                nu[j] = 1;
                self.eval(&vec![(nu, Rat::one())])
            })
            .collect()
    }
}

/// `j(x)(P)` for a polynomial with actual coefficients.
pub fn eval_j_rational(x: &DiagSeminorm, p: &Polynomial) -> Result<ExtRat> {
    let vp = ValuedPolynomial {
        terms: p
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(nu, c)| (nu.clone(), padic_log_abs(c, RESIDUE_PRIME)))
            .collect(),
    };
    eval_polynomial_j(x, &vp)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub samples: usize,
    pub equalities: usize,
    /// Samples where `z` exceeds `j(τ(z))`.
    pub violations: Vec<usize>,
}

impl DominationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `z ≤ j(x)` on the sample polynomials, where `x = τ(z)` must hold
/// on the basis vectors.
pub fn domination_check(x: &DiagSeminorm, z: &MonomialSeminorm, samples: &[Polynomial]) -> Result<DominationReport> {
    if z.restriction_on_basis()? != x.exps {
        return domain("the restriction of z to V is not x");
    }
    let mut equalities = 0;
    let mut violations = Vec::new();
    for (i, p) in samples.iter().enumerate() {
        let lhs = z.eval(p)?;
        let rhs = eval_j_rational(x, p)?;
        if lhs > rhs {
            violations.push(i);
        } else if lhs == rhs {
            equalities += 1;
        }
    }
    Ok(DominationReport {
        samples: samples.len(),
        equalities,
        violations,
    })
}

/// All monomials of total degree `1..=max_deg` in `n` variables.
pub fn monomials_up_to(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_deg, &mut Vec::new(), &mut out);
    out.retain(|m| m.iter().any(|&k| k > 0));
    out.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    out
}

/// A monomial seminorm whose restriction to `V` is `x`: the basis is `e`
/// permuted so that values decrease, then sheared by an integral unipotent
/// upper-triangular matrix, which only adds vectors of smaller value.
pub fn sheared_monomial(x: &DiagSeminorm, shear: &[Vec<i64>]) -> MonomialSeminorm {
    let n = x.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x.exps[b].cmp(&x.exps[a]));
    let basis: QMat = (0..n)
        .map(|i| {
            let mut row = vec![Rat::zero(); n];
            row[order[i]] = Rat::one();
            for j in i + 1..n {
                row[order[j]] = rat(shear[i][j]);
            }
            row
        })
        .collect();
    MonomialSeminorm {
        basis,
        exps: order.iter().map(|&i| x.exps[i].clone()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub kernel: Vec<usize>,
    pub label: String,
}

/// The kernel `W` of `x` and the stratum (building of `PGL(V/W)`) it lies in.
pub fn kernel_and_stratum(x: &DiagSeminorm) -> Stratum {
    let kernel = x.kernel();
    let label = if kernel.is_empty() {
        "open stratum (norms)".to_string()
    } else {
        let span: Vec<String> = kernel.iter().map(|i| format!("e{}", i + 1)).collect();
        let quotient = x.dim() - kernel.len();
        format!(
            "W = span({}), building of PGL of a {quotient}-dimensional quotient{}",
            span.join(", "),
            if quotient == 1 { " (closed orbit)" } else { "" }
        )
    };
    Stratum { kernel, label }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub seminorm: DiagSeminorm,
    /// `perm[i]` is the original index moved to position `i`.
    pub perm: Vec<usize>,
    #[serde(with = "crate::rational::serde_q")]
    pub shift: Rat,
}

/// Sorts the exponents in decreasing order (`−∞` last) and shifts by an
/// integer so the largest lies in `(0, 1]`.
pub fn canonical_representative(x: &DiagSeminorm) -> CanonicalForm {
    let mut perm: Vec<usize> = (0..x.dim()).collect();
    perm.sort_by(|&a, &b| x.exps[b].cmp(&x.exps[a]));
    let top = x.max_exp();
    let shift = Rat::one() - Rat::from_integer(ceil(&top));
    let seminorm = DiagSeminorm {
        exps: perm.iter().map(|&i| x.exps[i].shift(&shift)).collect(),
    };
    CanonicalForm { seminorm, perm, shift }
}

/// `0 ≤ |e_d| ≤ … ≤ |e_0| ≤ q` with `|e_0| > 1`.
pub fn in_window(x: &DiagSeminorm) -> bool {
    let sorted = x.exps.windows(2).all(|w| w[0] >= w[1]);
    let top = &x.exps[0];
    sorted && *top > ExtRat::zero() && *top <= ExtRat::Finite(Rat::one())
}

/// `max_{|I| = m} |e_I|(x)`: the sum of the `m` largest exponents.
pub fn exterior_invariant(x: &DiagSeminorm, m: usize) -> Result<ExtRat> {
    if m == 0 || m > x.dim() {
        return domain(format!("exterior power {m} out of range 1..={}", x.dim()));
    }
    let mut e = x.exps.clone();
    e.sort_by(|a, b| b.cmp(a));
    Ok(e[..m].iter().fold(ExtRat::zero(), |acc, v| &acc + v))
}

/// `n(w)·diag(ϖ^ν)`: the permutation `perm` sends `e_i` to `e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialElement {
    pub perm: Vec<usize>,
    pub nu: Vec<i64>,
}

impl MonomialElement {
    pub fn identity(n: usize) -> Self {
        MonomialElement {
            perm: (0..n).collect(),
            nu: vec![0; n],
        }
    }
}

/// `exps'[i] = exps[w⁻¹(i)] + ν_i`.
pub fn monomial_action(g: &MonomialElement, x: &DiagSeminorm) -> Result<DiagSeminorm> {
    let n = x.dim();
    let seen: BTreeSet<usize> = g.perm.iter().copied().collect();
    if g.perm.len() != n || g.nu.len() != n || seen.len() != n || seen.iter().any(|&i| i >= n) {
        return domain("monomial element does not match the dimension");
    }
    let mut inv = vec![0; n];
    for (i, &p) in g.perm.iter().enumerate() {
        inv[p] = i;
    }
    Ok(DiagSeminorm {
        exps: (0..n).map(|i| x.exps[inv[i]].shift(&rat(g.nu[i]))).collect(),
    })
}

/// `|e_i|(z_n) = q^{a_i + n·b_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogAffineSequence {
    #[serde(with = "crate::rational::serde_qvec")]
    pub a: Vec<Rat>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub b: Vec<Rat>,
}

impl LogAffineSequence {
    pub fn at(&self, n: &Rat) -> DiagSeminorm {
        DiagSeminorm::from_rats(&linalg::axpy(&self.a, n, &self.b))
    }

    /// `|e_i|(z_n) / max_j |e_j|(z_n)` in floating point with `q = 2`.
    pub fn normalized_values(&self, n: &Rat) -> Vec<f64> {
        let x = self.at(n);
        let top = x.max_exp();
        x.exps
            .iter()
            .map(|e| to_f64(&(e.finite().unwrap() - &top)).exp2())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceLimitReport {
    pub permutation: Vec<usize>,
    pub index_set: Vec<usize>,
    pub limit: SeminormClass,
}

/// Limit in `X(V,k)` of a log-affine sequence: the coordinates of maximal
/// slope survive with their offsets, the others become the kernel.
pub fn classify_sequence(s: &LogAffineSequence) -> Result<SequenceLimitReport> {
    if s.a.len() != s.b.len() || s.a.is_empty() {
        return domain("offsets and slopes must be non-empty and of equal length");
    }
    let n = s.a.len();
    let mut permutation: Vec<usize> = (0..n).collect();
    permutation.sort_by(|&i, &j| s.b[j].cmp(&s.b[i]).then_with(|| s.a[j].cmp(&s.a[i])));
    let top = s.b.iter().max().unwrap();
    let index_set: Vec<usize> = (0..n).filter(|&i| &s.b[i] == top).collect();
    let exps = (0..n)
        .map(|j| {
            if index_set.contains(&j) {
                ExtRat::Finite(s.a[j].clone())
            } else {
                ExtRat::NegInf
            }
        })
        .collect();
    Ok(SequenceLimitReport {
        permutation,
        index_set,
        limit: DiagSeminorm { exps }.class(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerDescription {
    pub kernel: Vec<usize>,
    pub quotient_rank: usize,
    pub is_vertex: bool,
    /// Number of classes modulo `ℤ` among the finite exponents.
    pub lattice_classes: usize,
    pub block_shape: String,
}

/// Block shape of the stabilizer of `x` in `GL(V)`, in a basis listing the
/// non-kernel vectors first.
pub fn stabilizer_description(x: &DiagSeminorm) -> StabilizerDescription {
    let kernel = x.kernel();
    let m = x.dim() - kernel.len();
    let residues: BTreeSet<Rat> = x
        .exps
        .iter()
        .filter_map(ExtRat::finite)
        .map(|r| r - r.floor())
        .collect();
    let is_vertex = residues.len() == 1;
    let upper = if is_vertex {
        format!("k^×·GL({m},k°) on V/W")
    } else {
        format!(
            "k^× times the stabilizer of a point of a facet with {} vertices, inside a conjugate of GL({m},k°), on V/W",
            residues.len()
        )
    };
    let block_shape = if kernel.is_empty() {
        upper
    } else {
        format!("{upper}; GL({},k) on W; lower-left block arbitrary; upper-right block zero", kernel.len())
    };
    StabilizerDescription {
        kernel,
        quotient_rank: m,
        is_vertex,
        lattice_classes: residues.len(),
        block_shape,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ext(xs: &[Option<i64>]) -> DiagSeminorm {
        DiagSeminorm::new(
            xs.iter()
                .map(|x| x.map_or(ExtRat::NegInf, |v| ExtRat::Finite(rat(v))))
                .collect(),
        )
        .unwrap()
    }

    const NI: Option<i64> = None;

    fn f(v: i64) -> ExtRat {
        ExtRat::Finite(rat(v))
    }

    #[test]
    fn vectors() {
        let x = ext(&[Some(0), Some(0), NI]);
        assert_eq!(eval_vector(&x, &[ExtRat::NegInf, ExtRat::NegInf, f(0)]).unwrap(), ExtRat::NegInf);
        let x = ext(&[Some(3), Some(1), Some(0)]);
        assert_eq!(eval_vector(&x, &[f(0), f(0), ExtRat::NegInf]).unwrap(), f(3));
        assert_eq!(eval_vector(&DiagSeminorm::gauss(3), &[f(-1), f(-1), f(-1)]).unwrap(), f(-1));
        assert!(eval_vector(&x, &[f(0)]).is_err());
        assert!(DiagSeminorm::new(vec![ExtRat::NegInf]).is_err());
    }

    #[test]
    fn polynomials() {
        let x = ext(&[Some(1), Some(0)]);
        assert_eq!(eval_polynomial_j(&x, &ValuedPolynomial::monomial(vec![1, 1])).unwrap(), f(1));
        let x = ext(&[Some(0), NI]);
        assert_eq!(eval_polynomial_j(&x, &ValuedPolynomial::monomial(vec![0, 1])).unwrap(), ExtRat::NegInf);
        assert_eq!(eval_polynomial_j(&x, &ValuedPolynomial::monomial(vec![2, 0])).unwrap(), f(0));
        let p = ValuedPolynomial {
            terms: vec![(vec![1, 0], f(-2)), (vec![0, 2], f(5))],
        };
        assert_eq!(eval_polynomial_j(&DiagSeminorm::gauss(2), &p).unwrap(), f(5));
    }

    #[test]
    fn domination_in_sheared_basis() {
        let x = ext(&[Some(1), Some(3)]);
        let z = sheared_monomial(&x, &[vec![0, 1], vec![0, 0]]);
        let samples: Vec<Polynomial> = monomials_up_to(2, 2)
            .into_iter()
            .map(|m| vec![(m, Rat::one())])
            .chain([vec![(vec![1, 0], Rat::one()), (vec![0, 1], Rat::one())]])
            .collect();
        let r = domination_check(&x, &z, &samples).unwrap();
        assert!(r.ok());
        // An orthogonal basis of x yields j(x) itself.
        assert_eq!(r.equalities, 6);
        let z0 = sheared_monomial(&x, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(domination_check(&x, &z0, &samples).unwrap().equalities, 6);
        // Shearing toward the larger vector changes the restriction.
        let bad = MonomialSeminorm {
            basis: vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]],
            exps: vec![f(1), f(3)],
        };
        assert!(domination_check(&x, &bad, &samples).is_err());
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(monomials_up_to(2, 2).len(), 5);
        assert_eq!(monomials_up_to(3, 3).len(), 19);
    }

    #[test]
    fn strata() {
        assert!(kernel_and_stratum(&DiagSeminorm::gauss(3)).kernel.is_empty());
        assert_eq!(kernel_and_stratum(&ext(&[Some(0), Some(1), NI])).kernel, vec![2]);
        let s = kernel_and_stratum(&ext(&[Some(0), NI, NI]));
        assert_eq!(s.kernel, vec![1, 2]);
        assert!(s.label.contains("closed orbit"));
    }

    #[test]
    fn canonical_forms() {
        let c = canonical_representative(&ext(&[Some(0), Some(2), NI]));
        assert_eq!(c.seminorm, ext(&[Some(1), Some(-1), NI]));
        assert_eq!(c.perm, vec![1, 0, 2]);
        assert_eq!(c.shift, rat(-1));
        assert_eq!(canonical_representative(&DiagSeminorm::gauss(3)).seminorm, ext(&[Some(1); 3]));
        let x = ext(&[Some(1), Some(0)]);
        assert_eq!(canonical_representative(&x).seminorm, x);
        assert!(in_window(&x));
    }

    #[test]
    fn exterior_powers() {
        assert_eq!(exterior_invariant(&ext(&[Some(3), Some(1), Some(0)]), 2).unwrap(), f(4));
        assert_eq!(exterior_invariant(&ext(&[Some(0), Some(0), NI]), 3).unwrap(), ExtRat::NegInf);
        assert_eq!(exterior_invariant(&ext(&[Some(2); 3]), 1).unwrap(), f(2));
        assert!(exterior_invariant(&ext(&[Some(2); 3]), 0).is_err());
        assert!(exterior_invariant(&ext(&[Some(2); 3]), 4).is_err());
    }

    #[test]
    fn monomial_actions() {
        let g = MonomialElement {
            perm: vec![0, 1, 2],
            nu: vec![1, 0, 0],
        };
        assert_eq!(monomial_action(&g, &DiagSeminorm::gauss(3)).unwrap(), ext(&[Some(1), Some(0), Some(0)]));
        let swap = MonomialElement {
            perm: vec![1, 0],
            nu: vec![0, 0],
        };
        assert_eq!(monomial_action(&swap, &ext(&[Some(3), Some(1)])).unwrap(), ext(&[Some(1), Some(3)]));
        let x = ext(&[Some(3), NI]);
        assert_eq!(monomial_action(&MonomialElement::identity(2), &x).unwrap(), x);
        // A 3-cycle: e0 → e1 → e2 → e0.
        let cyc = MonomialElement {
            perm: vec![1, 2, 0],
            nu: vec![0, 0, 0],
        };
        assert_eq!(
            monomial_action(&cyc, &ext(&[Some(5), Some(6), Some(7)])).unwrap(),
            ext(&[Some(7), Some(5), Some(6)])
        );
    }

    #[test]
    fn sequences() {
        let s = LogAffineSequence {
            a: vec![rat(0); 3],
            b: vec![rat(2), rat(2), rat(1)],
        };
        let r = classify_sequence(&s).unwrap();
        assert_eq!(r.index_set, vec![0, 1]);
        assert_eq!(r.limit.exps(), &[f(0), f(0), ExtRat::NegInf]);
        let s = LogAffineSequence {
            a: vec![rat(5), rat(0)],
            b: vec![rat(1), rat(1)],
        };
        assert_eq!(classify_sequence(&s).unwrap().limit.exps(), &[f(0), f(-5)]);
        let s = LogAffineSequence {
            a: vec![rat(1), frac(1, 2), rat(3)],
            b: vec![rat(0); 3],
        };
        let r = classify_sequence(&s).unwrap();
        assert_eq!(r.index_set, vec![0, 1, 2]);
        assert_eq!(r.permutation, vec![2, 0, 1]);
        assert_eq!(r.limit, DiagSeminorm::from_rats(&s.a).class());
    }

    #[test]
    fn stabilizers() {
        let s = stabilizer_description(&ext(&[Some(0), Some(0), NI]));
        assert_eq!((s.kernel.clone(), s.quotient_rank, s.is_vertex), (vec![2], 2, true));
        assert!(s.block_shape.contains("GL(2,k°)"));
        let x = DiagSeminorm::new(vec![f(0), ExtRat::Finite(frac(1, 2)), ExtRat::NegInf]).unwrap();
        assert!(!stabilizer_description(&x).is_vertex);
        let s = stabilizer_description(&DiagSeminorm::gauss(3));
        assert!(s.kernel.is_empty() && s.is_vertex);
    }
}
