//! Elements of Bott-Samelson bimodules in type A, in normal form.
//!
//! The bimodule attached to a word (s_1, ..., s_m) is the tensor product
//! R (x) R (x) ... (x) R over the invariant subrings of the letters, shifted
//! by m. As a left module it is free on the 2^m "leg labels": each tensor
//! slot holds either 1 or the simple root alpha of its letter. An element is
//! stored as a map from labels to left polynomial coefficients, which is the
//! normal form produced by rewriting slots right to left.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::multipoly::{alpha, invariant_split, rat, MultiPoly};
use super::LabError;
use crate::laurent::LaurentPoly;

/// Checks that every letter of a word acts on the available variables:
/// letter s (0-based) permutes x_{s+1} and x_{s+2}.
pub fn validate_word(vars: usize, word: &[u8]) -> Result<(), LabError> {
    for &s in word {
        if (s as usize) + 1 >= vars {
            return Err(LabError::InvalidWord(format!(
                "letter {} needs at least {} variables, have {}",
                s + 1,
                s as usize + 2,
                vars
            )));
        }
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElt {
    vars: usize,
    word: Vec<u8>,
    shift: i64,
    coords: BTreeMap<u64, MultiPoly>,
}

impl TensorElt {
    pub fn zero(vars: usize, word: &[u8]) -> Result<TensorElt, LabError> {
        validate_word(vars, word)?;
        assert!(word.len() <= 63, "words longer than 63 letters are not supported");
        Ok(TensorElt {
            vars,
            word: word.to_vec(),
            shift: word.len() as i64,
            coords: BTreeMap::new(),
        })
    }

    /// The generating tensor 1 (x) 1 (x) ... (x) 1.
    pub fn bs_unit(vars: usize, word: &[u8]) -> Result<TensorElt, LabError> {
        let mut out = TensorElt::zero(vars, word)?;
        out.coords.insert(0, MultiPoly::one(vars));
        Ok(out)
    }

    /// Builds an element directly from normal-form coordinates; the caller
    /// vouches that the word is valid and zero polynomials are absent.
    pub(crate) fn from_raw_coords(
        vars: usize,
        word: &[u8],
        coords: BTreeMap<u64, MultiPoly>,
    ) -> TensorElt {
        debug_assert!(validate_word(vars, word).is_ok());
        debug_assert!(coords.values().all(|p| !p.is_zero()));
        TensorElt {
            vars,
            word: word.to_vec(),
            shift: word.len() as i64,
            coords,
        }
    }

    /// Normalizes a simple tensor f_0 (x) f_1 (x) ... (x) f_m over the given
    /// word (slots.len() must be word.len() + 1), rewriting right to left.
    pub fn from_simple(vars: usize, word: &[u8], slots: &[MultiPoly]) -> Result<TensorElt, LabError> {
        let mut out = TensorElt::zero(vars, word)?;
        if slots.len() != word.len() + 1 {
            return Err(LabError::ShapeMismatch(format!(
                "{} slots for a word of length {}",
                slots.len(),
                word.len()
            )));
        }
        for s in slots {
            assert_eq!(s.vars(), vars);
        }
        fn rec(word: &[u8], slots: &[MultiPoly], out: &mut BTreeMap<u64, MultiPoly>, bits: u64) {
            let m = word.len();
            if m == 0 {
                if !slots[0].is_zero() {
                    match out.get_mut(&bits) {
                        Some(p) => {
                            *p = &*p + &slots[0];
                            if p.is_zero() {
                                out.remove(&bits);
                            }
                        }
                        None => {
                            out.insert(bits, slots[0].clone());
                        }
                    }
                }
                return;
            }
            let s = word[m - 1] as usize;
            let (a, b) = invariant_split(s, &slots[m]);
            for (bit, part) in [(0u64, a), (1u64, b)] {
                if part.is_zero() {
                    continue;
                }
                let mut inner: Vec<MultiPoly> = slots[..m].to_vec();
                inner[m - 1] = &inner[m - 1] * &part;
                rec(&word[..m - 1], &inner, out, bits | (bit << (m - 1)));
            }
        }
        rec(word, slots, &mut out.coords, 0);
        Ok(out)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (u64, &MultiPoly)> {
        self.coords.iter().map(|(&l, p)| (l, p))
    }

    pub fn coeff(&self, label: u64) -> MultiPoly {
        self.coords.get(&label).cloned().unwrap_or_else(|| MultiPoly::zero(self.vars))
    }

    /// Degree of the basis element with the given label, shift included:
    /// each alpha leg contributes 2, the shift subtracts the word length.
    pub fn label_degree(&self, label: u64) -> i64 {
        2 * label.count_ones() as i64 - self.shift
    }

    /// The slot contents of a label: alpha of the letter where the bit is
    /// set, 1 elsewhere.
    pub fn label_slots(&self, label: u64) -> Vec<MultiPoly> {
        self.word
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                if label >> k & 1 == 1 {
                    alpha(self.vars, s as usize)
                } else {
                    MultiPoly::one(self.vars)
                }
            })
            .collect()
    }

    fn compatible(&self, other: &TensorElt) {
        assert_eq!(self.vars, other.vars);
        assert_eq!(self.word, other.word);
        assert_eq!(self.shift, other.shift);
    }

    pub fn add(&self, other: &TensorElt) -> TensorElt {
        self.compatible(other);
        let mut out = self.clone();
        for (&l, p) in &other.coords {
            match out.coords.get_mut(&l) {
                Some(q) => {
                    *q = &*q + p;
                    if q.is_zero() {
                        out.coords.remove(&l);
                    }
                }
                None => {
                    out.coords.insert(l, p.clone());
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &TensorElt) -> TensorElt {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, c: &BigRational) -> TensorElt {
        let mut out = self.clone();
        if c.is_zero() {
            out.coords.clear();
            return out;
        }
        out.coords = self.coords.iter().map(|(&l, p)| (l, p.scale(c))).collect();
        out
    }

    /// The left action of R: multiply every coefficient.
    pub fn mul_left(&self, p: &MultiPoly) -> TensorElt {
        let mut out = self.clone();
        out.coords.clear();
        for (&l, f) in &self.coords {
            let q = f * p;
            if !q.is_zero() {
                out.coords.insert(l, q);
            }
        }
        out
    }

    /// The right action of R: multiply into the rightmost slot, then
    /// renormalize.
    pub fn mul_right(&self, p: &MultiPoly) -> TensorElt {
        let mut out = TensorElt::zero(self.vars, &self.word).unwrap();
        for (&l, f) in &self.coords {
            let mut slots = vec![f.clone()];
            slots.extend(self.label_slots(l));
            let last = slots.len() - 1;
            slots[last] = &slots[last] * p;
            out = out.add(&TensorElt::from_simple(self.vars, &self.word, &slots).unwrap());
        }
        out
    }

    /// The common degree of all terms (coefficient degree plus label
    /// degree), or None if the element is zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self
            .coords
            .iter()
            .map(|(&l, p)| p.homogeneous_degree().map(|d| d + self.label_degree(l)));
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }

    /// Coordinates after applying k (x)_R -, i.e. killing the augmentation
    /// ideal on the left: only the constant terms of the coefficients
    /// survive.
    pub fn scalar_coords(&self) -> BTreeMap<u64, BigRational> {
        let mut out = BTreeMap::new();
        for (&l, p) in &self.coords {
            let c = p.constant_term();
            if !c.is_zero() {
                out.insert(l, c);
            }
        }
        out
    }

    fn label_string(&self, label: u64) -> String {
        (0..self.word.len())
            .map(|k| if label >> k & 1 == 1 { 'a' } else { '1' })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coords
            .iter()
            .map(|(&l, p)| {
                json!({
                    "label": self.label_string(l),
                    "coeff": p.to_string(),
                })
            })
            .collect();
        json!({
            "word": self.word.iter().map(|&s| s as u64 + 1).collect::<Vec<_>>(),
            "shift": self.shift,
            "terms": terms,
        })
    }
}

impl fmt::Display for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&l, p) in &self.coords {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}) * [{}]", p, self.label_string(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The graded rank of the Bott-Samelson bimodule of a word as a free left
/// module: the sum of v^(degree) over the 2^m leg labels, which equals
/// (v + 1/v)^m.
pub fn graded_left_rank(word: &[u8]) -> LaurentPoly {
    let m = word.len();
    let mut out = LaurentPoly::zero();
    for label in 0u64..(1 << m) {
        out += &LaurentPoly::monomial(2 * label.count_ones() as i64 - m as i64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::multipoly::rat;

    fn x(vars: usize, i: usize) -> MultiPoly {
        MultiPoly::var(vars, i)
    }

    #[test]
    fn the_motivating_normal_form() {
        // 1 (x) x1 in B_s = ((x1+x2)/2) (1(x)1) + (1/2)(1(x)alpha)
        let t = TensorElt::from_simple(2, &[0], &[MultiPoly::one(2), x(2, 0)]).unwrap();
        assert_eq!(t.coeff(0), (&x(2, 0) + &x(2, 1)).scale(&rat(1, 2)));
        assert_eq!(t.coeff(1), MultiPoly::constant(2, rat(1, 2)));
        assert_eq!(t.to_string(), "(1/2*x1 + 1/2*x2) * [1] + (1/2) * [a]");
    }

    #[test]
    fn unit_and_right_action_agree_with_simple_tensors() {
        let u = TensorElt::bs_unit(2, &[0]).unwrap();
        let via_action = u.mul_right(&x(2, 0));
        let via_simple = TensorElt::from_simple(2, &[0], &[MultiPoly::one(2), x(2, 0)]).unwrap();
        assert_eq!(via_action, via_simple);
    }

    #[test]
    fn normalization_is_idempotent() {
        // re-expanding a normal form into simple tensors and normalizing
        // again reproduces it
        let t = TensorElt::from_simple(
            3,
            &[0, 1],
            &[x(3, 0), &x(3, 1) + &x(3, 2), &(&x(3, 0) * &x(3, 0)) + &x(3, 1)],
        )
        .unwrap();
        let mut again = TensorElt::zero(3, &[0, 1]).unwrap();
        for (l, f) in t.coords() {
            let mut slots = vec![f.clone()];
            slots.extend(t.label_slots(l));
            again = again.add(&TensorElt::from_simple(3, &[0, 1], &slots).unwrap());
        }
        assert_eq!(again, t);
    }

    #[test]
    fn actions_commute_with_normalization() {
        let slots = [&x(3, 0) + &x(3, 2), x(3, 1), &x(3, 0) * &x(3, 1)];
        let t = TensorElt::from_simple(3, &[0, 1], &slots).unwrap();
        let p = &x(3, 2) + &MultiPoly::one(3);
        // left action on slot 0 before or after normalizing
        let mut left_slots = slots.clone();
        left_slots[0] = &left_slots[0] * &p;
        assert_eq!(
            TensorElt::from_simple(3, &[0, 1], &left_slots).unwrap(),
            t.mul_left(&p)
        );
        // right action on the last slot before or after normalizing
        let mut right_slots = slots.clone();
        right_slots[2] = &right_slots[2] * &p;
        assert_eq!(
            TensorElt::from_simple(3, &[0, 1], &right_slots).unwrap(),
            t.mul_right(&p)
        );
        // the two actions commute with each other
        assert_eq!(t.mul_left(&p).mul_right(&x(3, 0)), t.mul_right(&x(3, 0)).mul_left(&p));
    }

    #[test]
    fn invariants_pass_through_tensors() {
        // an s-invariant in the right slot of B_s migrates to the left
        let inv = &x(2, 0) * &x(2, 1); // x1 x2 is s-invariant
        let t = TensorElt::from_simple(2, &[0], &[MultiPoly::one(2), inv.clone()]).unwrap();
        assert_eq!(t.coeff(0), inv);
        assert!(t.coeff(1).is_zero());
    }

    #[test]
    fn degrees_and_shift() {
        let u = TensorElt::bs_unit(2, &[0, 0]).unwrap();
        assert_eq!(u.shift(), 2);
        assert_eq!(u.label_degree(0), -2);
        assert_eq!(u.label_degree(0b01), 0);
        assert_eq!(u.label_degree(0b11), 2);
        assert_eq!(u.homogeneous_degree(), Some(-2));
        assert_eq!(u.mul_left(&x(2, 0)).homogeneous_degree(), Some(0));
        // mixed element
        let mixed = u.add(&u.mul_left(&x(2, 0)));
        assert_eq!(mixed.homogeneous_degree(), None);
    }

    #[test]
    fn graded_rank_is_the_binomial_expansion() {
        for m in 0..=4usize {
            let word: Vec<u8> = vec![0; m];
            let want = LaurentPoly::from_pairs(&[(1, 1), (-1, 1)]).pow(m as u32);
            assert_eq!(graded_left_rank(&word), want, "length {m}");
        }
        // free-basis cardinality at v = 1 is 2^m
        let rank = graded_left_rank(&[0, 1, 0]);
        assert_eq!(rank.eval_one(), 8.into());
    }

    #[test]
    fn scalar_coordinates_kill_the_left_ideal() {
        let u = TensorElt::bs_unit(2, &[0]).unwrap();
        let t = u.mul_right(&x(2, 0));
        // (x1+x2)/2 (1(x)1) + 1/2 (1(x)a): constants survive only on label 1
        let sc = t.scalar_coords();
        assert_eq!(sc.len(), 1);
        assert_eq!(sc[&1], rat(1, 2));
        // left multiples vanish entirely
        assert!(t.mul_left(&x(2, 1)).scalar_coords().is_empty());
    }

    #[test]
    fn word_validation() {
        assert!(TensorElt::bs_unit(2, &[1]).is_err());
        assert!(TensorElt::bs_unit(3, &[1]).is_ok());
        assert!(TensorElt::from_simple(2, &[0], &[MultiPoly::one(2)]).is_err());
    }

    #[test]
    fn json_shape() {
        let t = TensorElt::bs_unit(3, &[0, 1]).unwrap().mul_right(&x(3, 1));
        let v = t.to_json();
        assert_eq!(v["word"], json!([1, 2]));
        assert_eq!(v["shift"], json!(2));
        let terms = v["terms"].as_array().unwrap();
        assert!(terms.iter().any(|t| t["label"] == "1a"), "terms: {terms:?}");
        assert!(terms.iter().all(|t| t["label"].as_str().unwrap().len() == 2));
    }
}
