//! Sparse multivariate polynomials, generic over the scalar type.
//!
//! The exact layer instantiates these with big rationals; the optimizer
//! works with the same polynomials mapped to `f64`. Terms live in a
//! `BTreeMap` keyed by exponent vectors, so iteration order, and with it
//! the canonical text form, is deterministic.

use num_traits::{FromPrimitive, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field-like scalars the polynomial layer can work over.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
    + Display
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + PartialOrd
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + FromPrimitive
        + Display
{
}

#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Polynomial::constant(nvars, T::from_i64(c).unwrap())
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.add_term(e, T::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: T) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Polynomial::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
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
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, coeff) in &self.terms {
            out.terms.insert(e.clone(), coeff.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Polynomial::constant(self.nvars, T::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c.clone() * T::from_u32(e[var]).unwrap());
        }
        out
    }

    pub fn evaluate(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars);
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`. All substitutes must share a
    /// variable count, which becomes the result's.
    pub fn compose(&self, subs: &[Polynomial<T>]) -> Polynomial<T> {
        assert_eq!(subs.len(), self.nvars);
        let out_vars = subs.first().map_or(0, |p| p.nvars);
        assert!(subs.iter().all(|p| p.nvars == out_vars));
        let mut acc = Polynomial::zero(out_vars);
        // cache powers of each substitute
        let mut powers: Vec<Vec<Polynomial<T>>> = subs
            .iter()
            .map(|p| vec![Polynomial::constant(out_vars, T::one()), p.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficient of `x_var^deg` as a polynomial with that variable removed
    /// from every exponent (set to 0).
    pub fn coeff_of(&self, var: usize, deg: u32) -> Polynomial<T> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == deg {
                let mut ne = e.clone();
                ne[var] = 0;
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// For a univariate polynomial: the scalar coefficient of `x^deg`.
    pub fn univariate_coeff(&self, deg: u32) -> T {
        assert_eq!(self.nvars, 1);
        self.terms.get(&vec![deg]).cloned().unwrap_or_else(T::zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// `base * (base - 1) * .. * (base - k + 1)`.
    pub fn falling_factorial(base: &Polynomial<T>, k: u32) -> Polynomial<T> {
        let mut acc = Polynomial::constant(base.nvars, T::one());
        for j in 0..k {
            acc = acc.mul(&base.sub(&Polynomial::from_i64(base.nvars, j as i64)));
        }
        acc
    }

    /// Applies `perm` to the variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial<T> {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[perm[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.nvars;
        let mut perm: Vec<usize> = (0..n).collect();
        // Heap's algorithm over all variable permutations
        let mut c = vec![0usize; n];
        if *self != self.permute_vars(&perm) {
            return false;
        }
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                if *self != self.permute_vars(&perm) {
                    return false;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        true
    }

    /// Canonical text form: terms in exponent order, coefficients via their
    /// `Display` (rationals print as `p/q`).
    pub fn to_canonical_string(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut s = format!("{c}");
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    s.push_str(&format!("*{}", names[i]));
                } else if k > 1 {
                    s.push_str(&format!("*{}^{}", names[i], k));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl<T: Scalar + Signed> Polynomial<T> {
    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use crate::{rat, Rat, RatPoly};

    #[test]
    fn arithmetic_and_derivative() {
        // p = x^2 y + 2 y
        let x = RatPoly::var(2, 0);
        let y = RatPoly::var(2, 1);
        let p = x.pow(2).mul(&y).add(&y.scale(&rat(2, 1)));
        assert_eq!(p.total_degree(), 3);
        let dx = p.derivative(0);
        assert_eq!(dx.to_canonical_string(&["x", "y"]), "2*x*y");
        let val = p.evaluate(&[rat(3, 1), rat(5, 1)]);
        assert_eq!(val, rat(55, 1));
    }

    #[test]
    fn falling_factorial_matches_products() {
        let x = RatPoly::var(1, 0);
        let ff = RatPoly::falling_factorial(&x, 3);
        for n in 0..8i64 {
            let v = ff.evaluate(&[rat(n, 1)]);
            assert_eq!(v, rat(n * (n - 1) * (n - 2), 1));
        }
    }

    #[test]
    fn compose_substitutes() {
        // p(x, y) = x y; substitute x -> t/2, y -> t/2 gives t^2/4
        let p = RatPoly::var(2, 0).mul(&RatPoly::var(2, 1));
        let t_half = RatPoly::var(1, 0).scale(&rat(1, 2));
        let q = p.compose(&[t_half.clone(), t_half]);
        assert_eq!(q.univariate_coeff(2), rat(1, 4));
    }

    #[test]
    fn symmetry_detection() {
        let x = RatPoly::var(2, 0);
        let y = RatPoly::var(2, 1);
        let sym = x.mul(&y).add(&x.add(&y));
        assert!(sym.is_symmetric());
        let asym = x.pow(2).mul(&y);
        assert!(!asym.is_symmetric());
    }

    #[test]
    fn canonical_string_is_sorted_and_rational() {
        let x = RatPoly::var(2, 0);
        let y = RatPoly::var(2, 1);
        let p = y.scale(&rat(1, 2)).add(&x.pow(2)).sub(&RatPoly::from_i64(2, 3));
        assert_eq!(p.to_canonical_string(&["n1", "n2"]), "-3 + 1/2*n2 + 1*n1^2");
        let zero: RatPoly = RatPoly::zero(1);
        assert_eq!(zero.to_canonical_string(&["n"]), "0");
        let _: Rat = p.evaluate(&[rat(0, 1), rat(0, 1)]);
    }
}
