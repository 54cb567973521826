//! Sparse multivariate polynomials with exact coefficients, generic over the
//! coefficient [`Scalar`]. Terms are keyed by exponent vectors in lex order,
//! so iteration and serialization are deterministic.

use std::collections::BTreeMap;



use crate::field::Scalar;

/// Exponent vector; index is the variable, value the exponent.
pub type Exponents = Vec<u16>;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    /// Number of variables every exponent vector is padded to.
    pub nvars: usize,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: C) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Exponents, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &exp) in point.iter().zip(e) {
                for _ in 0..exp {
                    term = term * x.clone();
                }
            }
            total = total + term;
        }
        total
    }

    /// Substitutes `x_i -> 1 - x_i` for every variable.
    pub fn substitute_one_minus(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.nvars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                let lin = Self::one(self.nvars).sub(&Self::var(self.nvars, i));
                for _ in 0..exp {
                    term = term.mul(&lin);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Collapses all variables to a single one, returning dense coefficients
    /// by total degree.
    pub fn to_univariate(&self) -> Vec<C> {
        let mut out: Vec<C> = Vec::new();
        for (e, c) in &self.terms {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            if out.len() <= d {
                out.resize(d + 1, C::zero());
            }
            out[d] = out[d].clone() + c.clone();
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    fn leading(&self) -> Option<(&Exponents, &C)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `self / divisor` when the remainder is zero.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dlead, dcoef) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quo = Self::zero(self.nvars);
        while let Some((rlead, rcoef)) = rem.leading() {
            let mut qexp = vec![0u16; self.nvars];
            for i in 0..self.nvars {
                if rlead[i] < dlead[i] {
                    return None;
                }
                qexp[i] = rlead[i] - dlead[i];
            }
            let qcoef = rcoef.clone() / dcoef.clone();
            let qterm = Self::monomial(self.nvars, qexp, qcoef);
            rem = rem.sub(&qterm.mul(divisor));
            quo = quo.add(&qterm);
        }
        Some(quo)
    }
}

/// Dense univariate helpers used for Z-graded Hilbert numerators.
pub mod uni {
    use super::*;

    /// Divides a univariate polynomial (dense, ascending) by (1 - t)^k,
    /// returning None if the division is not exact.
    pub fn divide_by_one_minus_t<C: Scalar>(coeffs: &[C], k: usize) -> Option<Vec<C>> {
        let mut cur: Vec<C> = coeffs.to_vec();
        for _ in 0..k {
            // synthetic division by (1 - t): if f = (1-t) g then
            // g_i = f_0 + f_1 + ... + f_i truncated at deg(f) - 1
            if cur.is_empty() {
                continue;
            }
            let mut acc = C::zero();
            let mut next = Vec::with_capacity(cur.len().saturating_sub(1));
            for (i, c) in cur.iter().enumerate() {
                acc = acc + c.clone();
                if i + 1 < cur.len() {
                    next.push(acc.clone());
                }
            }
            if !acc.is_zero() {
                return None; // remainder f(1) must vanish
            }
            while next.last().is_some_and(|c| c.is_zero()) {
                next.pop();
            }
            cur = next;
        }
        Some(cur)
    }

    pub fn eval_at_one<C: Scalar>(coeffs: &[C]) -> C {
        coeffs.iter().fold(C::zero(), |a, c| a + c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn q(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn arithmetic_roundtrip() {
        let x = Polynomial::<Rat>::var(2, 0);
        let y = Polynomial::<Rat>::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        let x2 = x.mul(&x);
        let y2 = y.mul(&y);
        assert_eq!(p, x2.sub(&y2));
        assert_eq!(p.evaluate(&[q(3), q(2)]), q(5));
    }

    #[test]
    fn exact_division() {
        let x = Polynomial::<Rat>::var(2, 0);
        let y = Polynomial::<Rat>::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.divide_exact(&x.add(&y)).unwrap(), x.sub(&y));
        assert!(x.divide_exact(&y).is_none());
    }

    #[test]
    fn one_minus_substitution() {
        // x + y - xy at (1-x, 1-y) = 1 - xy
        let x = Polynomial::<Rat>::var(2, 0);
        let y = Polynomial::<Rat>::var(2, 1);
        let p = x.add(&y).sub(&x.mul(&y));
        let s = p.substitute_one_minus();
        let expect = Polynomial::one(2).sub(&x.mul(&y));
        assert_eq!(s, expect);
    }

    #[test]
    fn univariate_division() {
        // 1 - 3t^2 + 2t^3 = (1-t)^2 (1 + 2t)
        let f = vec![q(1), q(0), q(-3), q(2)];
        let g = uni::divide_by_one_minus_t(&f, 2).unwrap();
        assert_eq!(g, vec![q(1), q(2)]);
        assert!(uni::divide_by_one_minus_t(&f, 3).is_none());
    }
}
