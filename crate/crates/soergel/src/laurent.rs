//! Sparse Laurent polynomials over the integers in one variable `v`.
//!
//! This is the coefficient ring for everything downstream: Hecke algebra
//! elements, Kazhdan-Lusztig polynomials, graded ranks and length generating
//! functions all live here. Coefficients are arbitrary-precision integers,
//! the representation is a sparse exponent-to-coefficient map, and zero
//! coefficients are stripped eagerly so that equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial `sum c_k v^k` with `c_k` integers, `k` integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The monomial `v^exp`.
    pub fn monomial(exp: i64) -> Self {
        Self::term(exp, BigInt::one())
    }

    /// The variable `v` itself.
    pub fn v() -> Self {
        Self::monomial(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(0, BigInt::from(c))
    }

    /// The single term `c * v^exp`.
    pub fn term(exp: i64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(exp, c) in pairs {
            p.add_term(exp, &BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Coefficient of `v^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// The bar involution `v -> v^{-1}`: negates every exponent.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Evaluation at `v = 1`: the sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// True iff the polynomial lies in `v Z[v]`: every exponent is >= 1.
    pub fn in_v_zv(&self) -> bool {
        self.terms.keys().all(|&e| e >= 1)
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Multiplication by `v^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, k)| (e, k * c)).collect() }
    }

    /// The part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(&e, _)| e > 0).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with an arbitrary variable name, ascending exponents.
    pub fn format_with_var(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&exp, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            match (exp, unit) {
                (0, _) => out.push_str(&abs.to_string()),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{abs}{var}")),
                (_, true) => out.push_str(&format!("{var}^{exp}")),
                (_, false) => out.push_str(&format!("{abs}{var}^{exp}")),
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with_var("v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with_var("v"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, &-c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

/// JSON shape: `{"coeffs": {"<exponent>": <coefficient>, ...}}`.
/// Exponents are string keys; coefficients are JSON numbers of unbounded size.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: BTreeMap<String, serde_json::Number>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let n = serde_json::Number::from_string_unchecked(c.to_string());
                (e.to_string(), n)
            })
            .collect();
        PolyRepr { coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut poly = LaurentPoly::zero();
        for (key, num) in repr.coeffs {
            let exp: i64 = key
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent key {key:?}")))?;
            let digits = num.to_string();
            let coeff = digits
                .parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("coefficient {digits} is not an integer")))?;
            poly.add_term(exp, &coeff);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic xorshift generator for the algebraic-law checks.
    struct Rng(u64);

    impl Rng {
        fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }

        fn poly(&mut self) -> LaurentPoly {
            let mut p = LaurentPoly::zero();
            let n = self.next() % 5;
            for _ in 0..n {
                let exp = (self.next() % 13) as i64 - 6;
                let c = (self.next() % 19) as i64 - 9;
                p.add_term(exp, &BigInt::from(c));
            }
            p
        }
    }

    #[test]
    fn product_example() {
        let a = LaurentPoly::from_pairs(&[(-1, 1), (1, 1)]); // v^-1 + v
        let sq = &a * &a;
        assert_eq!(sq, LaurentPoly::from_pairs(&[(-2, 1), (0, 2), (2, 1)]));
    }

    #[test]
    fn bar_swaps_exponents() {
        let a = LaurentPoly::from_pairs(&[(-2, 3), (5, -1)]);
        assert_eq!(a.bar(), LaurentPoly::from_pairs(&[(2, 3), (-5, -1)]));
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn eval_one_sums_coefficients() {
        let a = LaurentPoly::from_pairs(&[(0, 1), (2, 2), (-3, 4)]);
        assert_eq!(a.eval_one(), BigInt::from(7));
    }

    #[test]
    fn zero_normal_form() {
        let mut a = LaurentPoly::monomial(3);
        a.add_term(3, &BigInt::from(-1));
        assert!(a.is_zero());
        assert_eq!(a, LaurentPoly::zero());
        assert_eq!(a.to_string(), "0");
    }

    #[test]
    fn in_v_zv_boundary() {
        assert!(LaurentPoly::from_pairs(&[(1, 1), (3, 1)]).in_v_zv());
        assert!(!LaurentPoly::one().in_v_zv());
        assert!(!LaurentPoly::from_pairs(&[(-1, 1), (2, 1)]).in_v_zv());
        assert!(LaurentPoly::zero().in_v_zv());
    }

    #[test]
    fn display_forms() {
        let a = LaurentPoly::from_pairs(&[(-2, 1), (0, -2), (1, 1), (3, -3)]);
        assert_eq!(a.to_string(), "v^-2 - 2 + v - 3v^3");
        assert_eq!(LaurentPoly::from_pairs(&[(0, 1), (1, 2), (2, 2), (3, 1)]).format_with_var("q"), "1 + 2q + 2q^2 + q^3");
    }

    #[test]
    fn ring_laws_hold_on_random_samples() {
        let mut rng = Rng(0x5eed);
        for _ in 0..200 {
            let (a, b, c) = (rng.poly(), rng.poly(), rng.poly());
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &LaurentPoly::one(), a);
            assert_eq!(&a - &a, LaurentPoly::zero());
            // bar and eval_one are ring homomorphisms
            assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            assert_eq!((&a * &b).eval_one(), a.eval_one() * b.eval_one());
            assert_eq!((&a + &b).eval_one(), a.eval_one() + b.eval_one());
            assert_eq!(a.bar().eval_one(), a.eval_one());
        }
    }

    #[test]
    fn json_round_trip_and_schema() {
        let a = LaurentPoly::from_pairs(&[(1, 1), (3, 1)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"coeffs":{"1":1,"3":1}}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);

        let zero: LaurentPoly = serde_json::from_str(r#"{"coeffs":{}}"#).unwrap();
        assert!(zero.is_zero());
        assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), r#"{"coeffs":{}}"#);

        // arbitrary-precision coefficients survive the round trip
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::term(-4, big.clone());
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back.coeff(-4), big);
    }

    #[test]
    fn json_rejects_non_integer_coefficients() {
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"coeffs":{"1":1.5}}"#).is_err());
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"coeffs":{"x":1}}"#).is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = LaurentPoly::from_pairs(&[(-1, 1), (1, 1)]);
        assert_eq!(a.pow(0), LaurentPoly::one());
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }
}
