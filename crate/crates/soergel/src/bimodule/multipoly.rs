//! Multivariate polynomials over the rationals with the symmetric-group
//! action, Demazure operators, and the even-degree splitting used by the
//! bimodule lab.
//!
//! Variables carry degree 2, so every polynomial degree here is even; the
//! rationals are needed because the invariant/anti-invariant splitting
//! divides by 2.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in `vars` variables x1..x_vars with rational coefficients.
/// Exponent vectors always have length `vars`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl MultiPoly {
    pub fn zero(vars: usize) -> MultiPoly {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> MultiPoly {
        MultiPoly::constant(vars, BigRational::one())
    }

    pub fn constant(vars: usize, c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The variable x_{i+1} (0-based index).
    pub fn var(vars: usize, i: usize) -> MultiPoly {
        assert!(i < vars, "variable index {i} out of range for {vars} variables");
        let mut exps = vec![0; vars];
        exps[i] = 1;
        let mut p = MultiPoly::zero(vars);
        p.add_term(exps, BigRational::one());
        p
    }

    pub fn monomial(vars: usize, exps: Vec<u32>, c: BigRational) -> MultiPoly {
        assert_eq!(exps.len(), vars);
        let mut p = MultiPoly::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.vars])
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        debug_assert_eq!(exps.len(), self.vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Total degree in the grading where each variable has degree 2, or None
    /// for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| 2 * e.iter().map(|&k| k as i64).sum::<i64>())
            .max()
    }

    /// The common degree of all monomials, or None if mixed (or zero).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| 2 * e.iter().map(|&k| k as i64).sum::<i64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The action of the i-th simple transposition: swap x_{i+1} and x_{i+2}.
    pub fn act_gen(&self, s: usize) -> MultiPoly {
        assert!(s + 1 < self.vars, "letter {} needs at least {} variables", s + 1, s + 2);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(s, s + 1);
                (e, c.clone())
            })
            .collect();
        MultiPoly { vars: self.vars, terms }
    }

    /// The action of a product of simple transpositions, applied left to
    /// right: act_word([s, t]) = t-action after s-action.
    pub fn act_word(&self, word: &[u8]) -> MultiPoly {
        word.iter().fold(self.clone(), |p, &s| p.act_gen(s as usize))
    }

}

/// The simple root alpha_s = x_{s+1} - x_{s+2} (0-based letter s).
pub fn alpha(vars: usize, s: usize) -> MultiPoly {
    &MultiPoly::var(vars, s) - &MultiPoly::var(vars, s + 1)
}

/// The Demazure operator for the letter s: (p - s(p)) / alpha_s. The
/// division is exact because the numerator is antisymmetric in the two
/// variables; it is performed by synthetic division.
pub fn demazure(s: usize, p: &MultiPoly) -> MultiPoly {
    let num = p - &p.act_gen(s);
    div_exact_by_var_difference(&num, s, s + 1)
}

/// Divides p exactly by (x_{i+1} - x_{j+1}), panicking if the division
/// leaves a remainder.
fn div_exact_by_var_difference(p: &MultiPoly, i: usize, j: usize) -> MultiPoly {
    let vars = p.vars;
    if p.is_zero() {
        return MultiPoly::zero(vars);
    }
    // write p = sum_k c_k(...) x_{i+1}^k with the x_{i+1}-exponent stripped
    let top = p.terms.keys().map(|e| e[i]).max().unwrap() as usize;
    let mut coeffs = vec![MultiPoly::zero(vars); top + 1];
    for (e, c) in &p.terms {
        let k = e[i] as usize;
        let mut e = e.clone();
        e[i] = 0;
        coeffs[k].add_term(e, c.clone());
    }
    // synthetic division by (y - a) with y = x_{i+1}, a = x_{j+1}
    let a = MultiPoly::var(vars, j);
    let mut quot = vec![MultiPoly::zero(vars); top.max(1)];
    let mut carry = MultiPoly::zero(vars);
    for k in (1..=top).rev() {
        let b = &coeffs[k] + &(&a * &carry);
        quot[k - 1] = b.clone();
        carry = b;
    }
    let remainder = &coeffs[0] + &(&a * &carry);
    assert!(remainder.is_zero(), "inexact division by x{} - x{}", i + 1, j + 1);
    let mut out = MultiPoly::zero(vars);
    for (k, q) in quot.iter().enumerate() {
        for (e, c) in &q.terms {
            let mut e = e.clone();
            e[i] += k as u32;
            out.add_term(e, c.clone());
        }
    }
    out
}

/// Splits p = a + b * alpha_s with a and b invariant under s:
/// a = (p + s(p))/2 and b = demazure(s, p)/2.
pub fn invariant_split(s: usize, p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let half = rat(1, 2);
    let a = (p + &p.act_gen(s)).scale(&half);
    let b = demazure(s, p).scale(&half);
    debug_assert_eq!(&a + &(&b * &alpha(p.vars, s)), *p);
    debug_assert_eq!(a.act_gen(s), a);
    debug_assert_eq!(b.act_gen(s), b);
    (a, b)
}

/// All exponent vectors of the given total degree, in lexicographic order.
pub fn monomials_of_degree(vars: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(vars - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, total, &mut Vec::new(), &mut out);
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = MultiPoly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&x(0) + &x(1)) * &x(0); // x1^2 + x1 x2
        assert_eq!(p.coeff(&[2, 0]), BigRational::one());
        assert_eq!(p.coeff(&[1, 1]), BigRational::one());
        assert_eq!(p.to_string(), "x1^2 + x1*x2");
        assert_eq!((&p - &p).to_string(), "0");
        let q = &MultiPoly::constant(2, rat(-1, 2)) * &x(1);
        assert_eq!(q.to_string(), "-1/2*x2");
        assert_eq!((&p + &q).to_string(), "x1^2 + x1*x2 - 1/2*x2");
    }

    #[test]
    fn degrees_are_doubled() {
        let p = &x(0) * &x(0);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.homogeneous_degree(), Some(4));
        let mixed = &p + &x(1);
        assert_eq!(mixed.degree(), Some(4));
        assert_eq!(mixed.homogeneous_degree(), None);
        assert_eq!(MultiPoly::zero(2).degree(), None);
    }

    #[test]
    fn transposition_action() {
        let p = MultiPoly::var(3, 0); // x1
        assert_eq!(p.act_gen(0), MultiPoly::var(3, 1));
        assert_eq!(p.act_gen(1), p); // s2 fixes x1
        // braid relation on polynomials: s1 s2 s1 = s2 s1 s2
        let q = &(&MultiPoly::var(3, 0) * &MultiPoly::var(3, 1)) + &MultiPoly::var(3, 2);
        assert_eq!(q.act_word(&[0, 1, 0]), q.act_word(&[1, 0, 1]));
    }

    #[test]
    fn demazure_examples() {
        // d(x1) = 1
        assert_eq!(demazure(0, &x(0)), MultiPoly::one(2));
        // d(x1 x2) = 0 (symmetric)
        assert_eq!(demazure(0, &(&x(0) * &x(1))), MultiPoly::zero(2));
        // d(x1^2) = x1 + x2
        assert_eq!(demazure(0, &(&x(0) * &x(0))), &x(0) + &x(1));
        // d(x2) = -1
        assert_eq!(demazure(0, &x(1)), MultiPoly::constant(2, rat(-1, 1)));
    }

    #[test]
    fn demazure_satisfies_the_twisted_leibniz_rule() {
        // d(fg) = d(f) g + s(f) d(g), on seeded pseudo-random pairs
        let mut state = 0x5eed_5eed_5eed_5eedu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let vars = 3;
            let mut f = MultiPoly::zero(vars);
            let mut g = MultiPoly::zero(vars);
            for _ in 0..4 {
                let e1 = vec![(next() % 3) as u32, (next() % 3) as u32, (next() % 2) as u32];
                let e2 = vec![(next() % 2) as u32, (next() % 3) as u32, (next() % 3) as u32];
                f.add_term(e1, rat((next() % 9) as i64 - 4, 1));
                g.add_term(e2, rat((next() % 9) as i64 - 4, 2));
            }
            for s in 0..2 {
                let lhs = demazure(s, &(&f * &g));
                let rhs = &(&demazure(s, &f) * &g) + &(&f.act_gen(s) * &demazure(s, &g));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn demazure_squares_to_zero_and_lowers_degree() {
        let p = &(&x(0) * &x(0)) * &x(1);
        let d = demazure(0, &p);
        assert_eq!(demazure(0, &d), MultiPoly::zero(2));
        assert_eq!(d.degree(), Some(p.degree().unwrap() - 2));
    }

    #[test]
    fn invariant_split_examples() {
        // x1 = (x1+x2)/2 + (1/2) alpha
        let (a, b) = invariant_split(0, &x(0));
        assert_eq!(a, (&x(0) + &x(1)).scale(&rat(1, 2)));
        assert_eq!(b, MultiPoly::constant(2, rat(1, 2)));
        // alpha itself: a = 0, b = 1
        let (a, b) = invariant_split(0, &alpha(2, 0));
        assert!(a.is_zero());
        assert_eq!(b, MultiPoly::one(2));
        // an invariant splits as itself
        let inv = &(&x(0) * &x(1)) + &MultiPoly::one(2);
        let (a, b) = invariant_split(0, &inv);
        assert_eq!(a, inv);
        assert!(b.is_zero());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 0), vec![vec![0, 0]]);
        assert_eq!(monomials_of_degree(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        // binomial(total + vars - 1, vars - 1)
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }
}
