//! The split Grothendieck group of Soergel bimodules, decategorified.
//!
//! Classes of indecomposables are indexed by group elements with grading
//! shifts; the character map chi sends the class of B_w to the KL basis
//! element b_w and is inverted by phi on effective (non-negative) classes.
//! Decomposition multiplicities of Bott-Samelson products are *defined* here
//! through the KL basis expansion — the decategorified form of the
//! indecomposable-classification theorem — which makes positivity of the
//! expansions a checkable invariant rather than an assumption.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, EltId};
use crate::hecke::{bigint_json, pairing, HeckeElt, KLRoute, KLTable};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error)]
pub enum CategorifyError {
    #[error("not an effective class: coefficient of b[{word}] is {poly}")]
    NotEffective { word: String, poly: LaurentPoly },
    #[error("invalid search target: {0}")]
    InvalidTarget(String),
}

/// A non-negative combination of shifted indecomposable classes [B_w(k)],
/// stored in the folded form w -> Laurent polynomial with coefficient of v^k
/// the multiplicity of B_w(k).
#[derive(Clone)]
pub struct SBimClass {
    sys: Arc<CoxeterSystem>,
    combo: BTreeMap<EltId, LaurentPoly>,
}

impl PartialEq for SBimClass {
    fn eq(&self, other: &SBimClass) -> bool {
        crate::hecke::same_system(&self.sys, &other.sys) && self.combo == other.combo
    }
}

impl Eq for SBimClass {}

impl fmt::Debug for SBimClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl SBimClass {
    pub fn zero(sys: Arc<CoxeterSystem>) -> SBimClass {
        SBimClass { sys, combo: BTreeMap::new() }
    }

    /// The class of the indecomposable B_w, unshifted.
    pub fn indecomposable(sys: Arc<CoxeterSystem>, w: EltId) -> SBimClass {
        SBimClass::shifted(sys, w, 0)
    }

    /// The class of B_w(k).
    pub fn shifted(sys: Arc<CoxeterSystem>, w: EltId, k: i64) -> SBimClass {
        let mut combo = BTreeMap::new();
        combo.insert(w, LaurentPoly::monomial(k));
        SBimClass { sys, combo }
    }

    /// Folds a multiplicity map, rejecting negative entries.
    pub fn from_combo(
        sys: Arc<CoxeterSystem>,
        combo: BTreeMap<EltId, LaurentPoly>,
    ) -> Result<SBimClass, CategorifyError> {
        for (&w, p) in &combo {
            if !p.all_coeffs_nonnegative() {
                return Err(CategorifyError::NotEffective {
                    word: sys.word_string(w),
                    poly: p.clone(),
                });
            }
        }
        let combo = combo.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(SBimClass { sys, combo })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn is_zero(&self) -> bool {
        self.combo.is_empty()
    }

    /// Graded multiplicity of B_w summands (folded view).
    pub fn poly(&self, w: EltId) -> LaurentPoly {
        self.combo.get(&w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EltId, &LaurentPoly)> {
        self.combo.iter().map(|(&w, p)| (w, p))
    }

    /// The shift-multiset view: triples (w, shift, multiplicity), sorted by
    /// (w, shift). Folding them back reproduces `poly`.
    pub fn summands(&self) -> Vec<(EltId, i64, BigInt)> {
        let mut out = Vec::new();
        for (&w, p) in &self.combo {
            for (k, c) in p.iter() {
                out.push((w, k, c.clone()));
            }
        }
        out
    }

    pub fn add(&self, other: &SBimClass) -> SBimClass {
        let mut combo = self.combo.clone();
        for (&w, p) in &other.combo {
            let slot = combo.entry(w).or_insert_with(LaurentPoly::zero);
            *slot += p;
        }
        SBimClass { sys: self.sys.clone(), combo }
    }

    /// Total number of indecomposable summands with multiplicity.
    pub fn total_multiplicity(&self) -> BigInt {
        self.combo.values().map(|p| p.eval_one()).sum()
    }

    pub fn to_json(&self, word: Option<&[u8]>) -> Value {
        let summands: Vec<Value> = self
            .summands()
            .into_iter()
            .map(|(w, shift, mult)| {
                json!({
                    "w": self.sys.word_string(w),
                    "shift": shift,
                    "mult": bigint_json(&mult),
                })
            })
            .collect();
        match word {
            Some(w) => json!({
                "word": w.iter().map(|&s| s as u64 + 1).collect::<Vec<_>>(),
                "summands": summands,
            }),
            None => json!({ "summands": summands }),
        }
    }
}

impl fmt::Display for SBimClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.combo.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, shift, mult) in self.summands() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if !mult.is_one() {
                write!(f, "{mult} x ")?;
            }
            write!(f, "B[{}]", self.sys.word_string(w))?;
            if shift != 0 {
                write!(f, "({shift})")?;
            }
        }
        Ok(())
    }
}

/// Expands a Hecke element in the KL basis; coefficients may be negative.
pub fn kl_expand(table: &KLTable, h: &HeckeElt) -> BTreeMap<EltId, LaurentPoly> {
    let mut rest: BTreeMap<EltId, LaurentPoly> =
        h.terms().map(|(x, p)| (x, p.clone())).collect();
    let mut coeffs = BTreeMap::new();
    while let Some((&x, _)) = rest.iter().next_back() {
        let c = rest.remove(&x).unwrap();
        if c.is_zero() {
            continue;
        }
        for (&y, p) in table.poly_row(x) {
            if y == x {
                continue;
            }
            let slot = rest.entry(y).or_insert_with(LaurentPoly::zero);
            *slot -= &(&c * p);
            if slot.is_zero() {
                rest.remove(&y);
            }
        }
        coeffs.insert(x, c);
    }
    coeffs
}

/// The decomposition class of the Bott-Samelson product over `word`
/// (0-based letters, not necessarily reduced): the product of the b_s is
/// re-expanded in the KL basis and read as a sum of shifted indecomposables.
pub fn bs_class(table: &KLTable, word: &[u8]) -> Result<SBimClass, CoxeterError> {
    let sys = table.system();
    let mut h = HeckeElt::unit(sys.clone());
    for &s in word {
        if (s as usize) >= sys.rank() {
            return Err(CoxeterError::InvalidWord(format!(
                "letter {} out of range for rank {}",
                s as usize + 1,
                sys.rank()
            )));
        }
        let gen = sys.right_mult(sys.identity(), s as usize);
        h = &h * &table.kl_basis(gen);
    }
    let combo = kl_expand(table, &h);
    Ok(SBimClass::from_combo(sys.clone(), combo)
        .expect("Bott-Samelson decompositions are positive"))
}

/// The character map: [B_w(k)] -> v^k b_w, extended additively.
pub fn chi(table: &KLTable, class: &SBimClass) -> HeckeElt {
    let mut h = HeckeElt::zero(table.system().clone());
    for (w, p) in class.iter() {
        h = &h + &table.kl_basis(w).scale(p);
    }
    h
}

/// Inverse of chi on effective elements: expands in the KL basis and reads
/// the coefficients as graded multiplicities.
pub fn phi(table: &KLTable, h: &HeckeElt) -> Result<SBimClass, CategorifyError> {
    let combo = kl_expand(table, h);
    SBimClass::from_combo(table.system().clone(), combo)
}

/// Graded rank of the Hom space between the underlying bimodule classes,
/// via the Hom formula: the pairing of the characters.
pub fn hom_graded_rank(table: &KLTable, a: &SBimClass, b: &SBimClass) -> LaurentPoly {
    pairing(&chi(table, a), &chi(table, b))
}

#[derive(Clone, Debug, Default)]
pub struct PositivityReport {
    pub polys_checked: usize,
    pub products_checked: usize,
    pub violations: Vec<String>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks non-negativity of every KL coefficient polynomial and, optionally,
/// of every structure constant of the KL basis (the graded multiplicities of
/// all pairwise products). Violations are reported in scan order.
pub fn positivity_scan(table: &KLTable, check_products: bool) -> PositivityReport {
    let sys = table.system();
    let mut report = PositivityReport::default();
    for x in sys.elements() {
        for (&y, p) in table.poly_row(x) {
            report.polys_checked += 1;
            if !p.all_coeffs_nonnegative() {
                report.violations.push(format!(
                    "h[{}, {}] = {} has a negative coefficient",
                    sys.word_string(y),
                    sys.word_string(x),
                    p
                ));
            }
        }
    }
    if check_products {
        let n = sys.size() as u32;
        let per_x: Vec<(usize, Vec<String>)> = (0..n)
            .into_par_iter()
            .map(|xi| {
                let x = EltId(xi);
                let bx = table.kl_basis(x);
                let mut checked = 0;
                let mut bad = Vec::new();
                for yi in 0..n {
                    let y = EltId(yi);
                    let prod = &bx * &table.kl_basis(y);
                    for (z, c) in kl_expand(table, &prod) {
                        checked += 1;
                        if !c.all_coeffs_nonnegative() {
                            bad.push(format!(
                                "b[{}] * b[{}] has coefficient {} at b[{}]",
                                sys.word_string(x),
                                sys.word_string(y),
                                c,
                                sys.word_string(z)
                            ));
                        }
                    }
                }
                (checked, bad)
            })
            .collect();
        for (checked, bad) in per_x {
            report.products_checked += checked;
            report.violations.extend(bad);
        }
    }
    report
}

/// A witness that v^m * target appears as a KL coefficient polynomial in
/// some symmetric group S_n.
#[derive(Clone, Debug)]
pub struct PoloWitness {
    pub n: u32,
    pub m: i64,
    pub y_word: String,
    pub x_word: String,
    pub poly: LaurentPoly,
}

fn validate_polo_target(target: &LaurentPoly) -> Result<(), CategorifyError> {
    if target.is_zero() {
        return Err(CategorifyError::InvalidTarget("target is zero".into()));
    }
    if !target.all_coeffs_nonnegative() {
        return Err(CategorifyError::InvalidTarget(
            "coefficients must be non-negative".into(),
        ));
    }
    if target.iter().any(|(e, _)| e < 0 || e % 2 != 0) {
        return Err(CategorifyError::InvalidTarget(
            "exponents must be non-negative and even (a polynomial in q = v^2)".into(),
        ));
    }
    let lead = target.max_exp().map(|e| target.coeff(e));
    if lead != Some(BigInt::one()) {
        return Err(CategorifyError::InvalidTarget("target must be monic".into()));
    }
    Ok(())
}

/// Searches the symmetric groups S_2, ..., S_max_n for a KL coefficient of
/// the form v^m * target with m >= 0 (coefficient polynomials have
/// non-negative valuation, so negative shifts would let any monomial target
/// match trivially). Scans x in enumeration order, and within the first x
/// carrying a match returns the witness with the smallest shift m (ties
/// broken by y). Deterministic.
pub fn polo_search(
    target: &LaurentPoly,
    max_n: u32,
) -> Result<Option<PoloWitness>, CategorifyError> {
    validate_polo_target(target)?;
    let t_min = target.min_exp().unwrap();
    for n in 2..=max_n {
        let matrix = CoxeterMatrix::type_a(n as usize - 1);
        let cap: usize = (2..=n as usize).product();
        let sys = Arc::new(
            CoxeterSystem::build(matrix, cap)
                .expect("the enumeration cap is exactly the group order"),
        );
        let table = KLTable::build(sys.clone(), KLRoute::MuRecursion);
        for x in sys.elements() {
            let mut best: Option<(i64, EltId)> = None;
            for (&y, h) in table.poly_row(x) {
                let m = h.min_exp().unwrap() - t_min;
                if m >= 0 && h == &target.shifted(m) && best.map_or(true, |(bm, _)| m < bm) {
                    best = Some((m, y));
                }
            }
            if let Some((m, y)) = best {
                return Ok(Some(PoloWitness {
                    n,
                    m,
                    y_word: sys.word_string(y),
                    x_word: sys.word_string(x),
                    poly: table.poly(y, x),
                }));
            }
        }
    }
    Ok(None)
}

/// Parses a polynomial in q with non-negative integer coefficients, e.g.
/// "1 + q", "q^2", "3q^3 + q", returning it as a Laurent polynomial in v
/// with q = v^2.
pub fn parse_q_poly(text: &str) -> Result<LaurentPoly, CategorifyError> {
    let bad = |part: &str| {
        CategorifyError::InvalidTarget(format!("cannot parse term {part:?} of {text:?}"))
    };
    let mut out = LaurentPoly::zero();
    for part in text.split('+') {
        let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        if part.is_empty() {
            return Err(bad(&part));
        }
        let (coeff_str, exp) = match part.find('q') {
            None => (part.as_str(), 0i64),
            Some(i) => {
                let tail = &part[i + 1..];
                let exp = if tail.is_empty() {
                    1
                } else {
                    let t = tail.strip_prefix('^').ok_or_else(|| bad(&part))?;
                    t.parse::<i64>().map_err(|_| bad(&part))?
                };
                (part[..i].trim_end_matches('*'), exp)
            }
        };
        let coeff: BigInt = if coeff_str.is_empty() {
            BigInt::one()
        } else {
            coeff_str.parse().map_err(|_| bad(&part))?
        };
        if coeff.is_negative() || exp < 0 {
            return Err(bad(&part));
        }
        out.add_term(2 * exp, &coeff);
    }
    Ok(out)
}
