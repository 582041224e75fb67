//! Sparse multivariate polynomials over `f64`, monomial sets, borders,
//! prolongations and the connected-to-1 machinery.
//!
//! Monomials are exponent vectors with a cached total degree and are
//! totally ordered by graded lexicographic order, which fixes a canonical
//! iteration order everywhere downstream.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::EPS_ZERO;

/// Error raised by monomial arithmetic on mismatched variable counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "monomial variable counts differ: {} vs {}",
            self.left, self.right
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DimensionMismatch {}

/// A monomial `x^alpha` as an exponent vector, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { exponents, degree }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
            degree: 0,
        }
    }

    /// The variable `x_i` (0-based) in `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[i] = 1;
        Monomial {
            exponents,
            degree: 1,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn check_dims(&self, other: &Monomial) -> Result<(), DimensionMismatch> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(DimensionMismatch {
                left: self.nvars(),
                right: other.nvars(),
            })
        }
    }

    /// Componentwise exponent sum.
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, DimensionMismatch> {
        self.check_dims(other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Monomial {
            exponents,
            degree: self.degree + other.degree,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("variable count mismatch")
    }

    /// Multiply by the variable `x_i`.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[i] += 1;
        Monomial {
            exponents,
            degree: self.degree + 1,
        }
    }

    /// True iff `self` divides `other` (coordinatewise `<=`).
    pub fn checked_divides(&self, other: &Monomial) -> Result<bool, DimensionMismatch> {
        self.check_dims(other)?;
        Ok(self
            .exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.checked_divides(other).expect("variable count mismatch")
    }

    /// Exact division `other / self`; `None` when `self` does not divide.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exponents = other
            .exponents
            .iter()
            .zip(&self.exponents)
            .map(|(b, a)| b - a)
            .collect();
        Some(Monomial {
            exponents,
            degree: other.degree - self.degree,
        })
    }

    /// Quotient by one variable, `self / x_i`, when `x_i` divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exponents[i] == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[i] -= 1;
        Some(Monomial {
            exponents,
            degree: self.degree - 1,
        })
    }

    /// Evaluate at a point, coordinates given per variable.
    pub fn eval(&self, point: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(point)
            .map(|(&e, &x)| x.powi(e as i32))
            .product()
    }

    pub fn eval_complex(&self, point: &[nalgebra::Complex<f64>]) -> nalgebra::Complex<f64> {
        self.exponents
            .iter()
            .zip(point)
            .map(|(&e, &z)| z.powi(e as i32))
            .product()
    }
}

/// Graded lexicographic order: degree first, then lex on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: finite map monomial -> coefficient, pruned at
/// [`EPS_ZERO`].
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: f64, nvars: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, 1.0);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, f64)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    /// Monomials with nonzero coefficient, in graded lex order.
    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Accumulate `c` on `m`, pruning the entry when it falls below the
    /// zero tolerance.
    pub fn add_term(&mut self, m: Monomial, c: f64) {
        debug_assert_eq!(m.nvars(), self.nvars);
        let new = self.terms.get(&m).copied().unwrap_or(0.0) + c;
        if new.abs() < EPS_ZERO {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, new);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (k, c) in self.terms() {
            out.add_term(k.mul(m), c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Largest coefficient magnitude; 0 for the zero polynomial.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// The graded-lex largest monomial of the support.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.terms().map(|(m, c)| c * m.eval(point)).sum()
    }

    pub fn eval_complex(&self, point: &[nalgebra::Complex<f64>]) -> nalgebra::Complex<f64> {
        self.terms()
            .map(|(m, c)| m.eval_complex(point) * nalgebra::Complex::new(c, 0.0))
            .sum()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Graded-lex descending, leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if *c < 0.0 {
                    write!(f, "-")?;
                }
            } else if *c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if (mag - 1.0).abs() < 1e-12 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Prolongation `S+ = S ∪ x1·S ∪ … ∪ xn·S` of a monomial set.
pub fn prolongation<'a>(set: impl IntoIterator<Item = &'a Monomial>) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for m in set {
        let n = m.nvars();
        out.insert(m.clone());
        for i in 0..n {
            out.insert(m.mul_var(i));
        }
    }
    out
}

/// Border `∂S = S+ \ S` of a monomial set.
pub fn border(set: &BTreeSet<Monomial>) -> BTreeSet<Monomial> {
    prolongation(set).difference(set).cloned().collect()
}

/// True iff `1 ∈ S` and every non-constant member factors as `x_i · m'`
/// with `m'` in the set.
pub fn is_connected_to_1(set: &BTreeSet<Monomial>) -> bool {
    let Some(first) = set.iter().next() else {
        return false;
    };
    if !first.is_one() {
        return false;
    }
    // BTreeSet iterates in graded order, so divisors are seen first.
    for m in set.iter().skip(1) {
        let ok = (0..m.nvars()).any(|i| m.div_var(i).is_some_and(|q| set.contains(&q)));
        if !ok {
            return false;
        }
    }
    true
}

/// An ordered monomial set `B` used as (candidate) basis of the quotient
/// algebra. Always contains 1 and is kept connected to 1 by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    members: BTreeSet<Monomial>,
}

impl MonomialBasis {
    /// The basis `{1}`.
    pub fn unit(nvars: usize) -> Self {
        let mut members = BTreeSet::new();
        members.insert(Monomial::one(nvars));
        MonomialBasis { nvars, members }
    }

    /// Build from members; panics unless the set is connected to 1.
    pub fn new(nvars: usize, members: BTreeSet<Monomial>) -> Self {
        assert!(
            is_connected_to_1(&members),
            "monomial basis must be connected to 1"
        );
        MonomialBasis { nvars, members }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    /// Members in graded lex order.
    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<Monomial> {
        &self.members
    }

    /// Members of degree at most `t`.
    pub fn members_up_to(&self, t: u32) -> Vec<Monomial> {
        self.iter().filter(|m| m.degree() <= t).cloned().collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.members.iter().next_back().map_or(0, Monomial::degree)
    }

    pub fn prolongation(&self) -> BTreeSet<Monomial> {
        prolongation(self.members.iter())
    }

    pub fn border(&self) -> BTreeSet<Monomial> {
        border(&self.members)
    }

    /// The B-index `δ_B(m)`: the smallest `k` with `m ∈ B^[k]`, i.e. the
    /// smallest degree of a cofactor `m''` in a factorization `m = m'·m''`
    /// with `m' ∈ B`. Finite for every monomial since `1 ∈ B`.
    pub fn b_index(&self, m: &Monomial) -> u32 {
        let mut best = m.degree(); // via m = 1 · m
        for b in &self.members {
            if b.degree() >= m.degree() && !(b == m) {
                // members at least as large as m cannot divide it properly
                continue;
            }
            if b.divides(m) {
                best = best.min(m.degree() - b.degree());
                if best == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Whether `p` is supported inside the basis.
    pub fn supports(&self, p: &Polynomial) -> bool {
        p.support().all(|m| self.contains(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exp: &[u32]) -> Monomial {
        Monomial::new(exp.to_vec())
    }

    #[test]
    fn monomial_mul_adds_exponents() {
        assert_eq!(m(&[1, 0]).mul(&m(&[0, 1])), m(&[1, 1]));
        assert_eq!(m(&[0, 0]).mul(&m(&[2, 3])), m(&[2, 3]));
        assert_eq!(m(&[1, 1]).mul(&m(&[1, 1])), m(&[2, 2]));
    }

    #[test]
    fn monomial_mul_dimension_mismatch() {
        assert!(m(&[1]).checked_mul(&m(&[1, 0])).is_err());
    }

    #[test]
    fn divides_is_coordinatewise() {
        assert!(m(&[1]).divides(&m(&[2])));
        assert!(!m(&[2]).divides(&m(&[1])));
        assert!(!m(&[1, 0]).divides(&m(&[0, 2])));
    }

    #[test]
    fn prolongation_of_unit() {
        let s: BTreeSet<_> = [m(&[0, 0])].into();
        let got = prolongation(s.iter());
        let want: BTreeSet<_> = [m(&[0, 0]), m(&[1, 0]), m(&[0, 1])].into();
        assert_eq!(got, want);
    }

    #[test]
    fn prolongation_univariate_segment() {
        let s: BTreeSet<_> = [m(&[0]), m(&[1])].into();
        let want: BTreeSet<_> = [m(&[0]), m(&[1]), m(&[2])].into();
        assert_eq!(prolongation(s.iter()), want);
    }

    #[test]
    fn prolongation_degree_one_full() {
        let s: BTreeSet<_> = [m(&[0, 0]), m(&[1, 0]), m(&[0, 1])].into();
        let want: BTreeSet<_> = [
            m(&[0, 0]),
            m(&[1, 0]),
            m(&[0, 1]),
            m(&[2, 0]),
            m(&[1, 1]),
            m(&[0, 2]),
        ]
        .into();
        assert_eq!(prolongation(s.iter()), want);
    }

    #[test]
    fn border_examples() {
        let s: BTreeSet<_> = [m(&[0, 0])].into();
        let want: BTreeSet<_> = [m(&[1, 0]), m(&[0, 1])].into();
        assert_eq!(border(&s), want);

        let s: BTreeSet<_> = [m(&[0, 0]), m(&[1, 0]), m(&[0, 1])].into();
        let want: BTreeSet<_> = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2])].into();
        assert_eq!(border(&s), want);

        // The four monomials indexing the 4x4 univariate moment matrix.
        let s: BTreeSet<_> = [m(&[0]), m(&[1]), m(&[2]), m(&[3])].into();
        let want: BTreeSet<_> = [m(&[4])].into();
        assert_eq!(border(&s), want);
    }

    #[test]
    fn border_disjoint_union_property() {
        let s: BTreeSet<_> = [m(&[0, 0]), m(&[1, 0]), m(&[1, 1])].into();
        let b = border(&s);
        let p = prolongation(s.iter());
        assert!(b.intersection(&s).next().is_none());
        let union: BTreeSet<_> = b.union(&s).cloned().collect();
        assert_eq!(union, p);
        assert!(p.len() <= 3 * s.len());
    }

    #[test]
    fn connectivity_checks() {
        let s: BTreeSet<_> = [m(&[0, 0]), m(&[1, 0]), m(&[1, 1])].into();
        assert!(is_connected_to_1(&s));
        let s: BTreeSet<_> = [m(&[0, 0]), m(&[1, 1])].into();
        assert!(!is_connected_to_1(&s));
        let s: BTreeSet<_> = [m(&[1, 0])].into();
        assert!(!is_connected_to_1(&s));
    }

    #[test]
    fn b_index_examples() {
        let b = MonomialBasis::new(1, [m(&[0]), m(&[1])].into());
        assert_eq!(b.b_index(&m(&[1])), 0);
        assert_eq!(b.b_index(&m(&[2])), 1);
        assert_eq!(b.b_index(&m(&[4])), 3);
        // delta_B(m) <= deg(m) always
        let b2 = MonomialBasis::unit(2);
        assert_eq!(b2.b_index(&m(&[2, 1])), 3);
    }

    #[test]
    fn polynomial_arithmetic_prunes_zeros() {
        let x = Polynomial::from_monomial(m(&[1]));
        let one = Polynomial::constant(1.0, 1);
        let p = x.sub(&one); // x - 1
        let q = p.add(&one); // x
        assert_eq!(q.len(), 1);
        let r = p.sub(&p);
        assert!(r.is_zero());
    }

    #[test]
    fn polynomial_mul_commutes() {
        let p = Polynomial::from_terms(2, [(m(&[1, 0]), 2.0), (m(&[0, 1]), -1.0)]);
        let q = Polynomial::from_terms(2, [(m(&[1, 1]), 1.0), (m(&[0, 0]), 3.0)]);
        assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn display_round_trip_shape() {
        let p = Polynomial::from_terms(
            1,
            [
                (m(&[4]), 1.0),
                (m(&[3]), -1.0),
                (m(&[1]), -1.0),
                (m(&[0]), 1.0),
            ],
        );
        assert_eq!(alloc::format!("{p}"), "x1^4 - x1^3 - x1 + 1");
    }
}
