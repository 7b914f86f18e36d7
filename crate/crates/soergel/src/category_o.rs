//! The Grothendieck group of the principal block of category O, with its
//! Verma basis, translation-functor action, and the classes of projective
//! and simple objects.
//!
//! Everything here lives at the specialization v = 1: classes are integer
//! combinations of Verma classes `[M_w]`, indexed by group elements. The
//! projective classes are produced by their own wall-crossing recursion, so
//! agreement with the specialized KL basis is a genuine cross-check rather
//! than a restatement.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterSystem, EltId};
use crate::hecke::{same_system, KLTable, SignConvention};

/// An integer combination of Verma classes. Zero coordinates are never
/// stored.
#[derive(Clone)]
pub struct GrothOElt {
    sys: Arc<CoxeterSystem>,
    coords: BTreeMap<EltId, BigInt>,
}

impl GrothOElt {
    pub fn zero(sys: Arc<CoxeterSystem>) -> GrothOElt {
        GrothOElt { sys, coords: BTreeMap::new() }
    }

    /// The class of the Verma module attached to w.
    pub fn verma(sys: Arc<CoxeterSystem>, w: EltId) -> GrothOElt {
        let mut coords = BTreeMap::new();
        coords.insert(w, BigInt::one());
        GrothOElt { sys, coords }
    }

    pub fn from_coords(sys: Arc<CoxeterSystem>, coords: BTreeMap<EltId, BigInt>) -> GrothOElt {
        let coords = coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        GrothOElt { sys, coords }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, w: EltId) -> BigInt {
        self.coords.get(&w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = (EltId, &BigInt)> {
        self.coords.iter().map(|(&w, c)| (w, c))
    }

    pub fn support(&self) -> Vec<EltId> {
        self.coords.keys().copied().collect()
    }

    pub fn add(&self, other: &GrothOElt) -> GrothOElt {
        assert!(same_system(&self.sys, &other.sys));
        let mut coords = self.coords.clone();
        for (&w, c) in &other.coords {
            let slot = coords.entry(w).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                coords.remove(&w);
            }
        }
        GrothOElt { sys: self.sys.clone(), coords }
    }

    pub fn sub(&self, other: &GrothOElt) -> GrothOElt {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> GrothOElt {
        if c.is_zero() {
            return GrothOElt::zero(self.sys.clone());
        }
        let coords = self.coords.iter().map(|(&w, a)| (w, a * c)).collect();
        GrothOElt { sys: self.sys.clone(), coords }
    }
}

impl PartialEq for GrothOElt {
    fn eq(&self, other: &GrothOElt) -> bool {
        same_system(&self.sys, &other.sys) && self.coords == other.coords
    }
}

impl Eq for GrothOElt {}

impl fmt::Display for GrothOElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&w, c) in &self.coords {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{c} ")?;
            }
            write!(f, "[M[{}]]", self.sys.word_string(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GrothOElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The translation functor through the s-wall on Verma classes:
/// `[M_w] -> [M_w] + [M_ws]`, extended additively.
pub fn theta_action(s: usize, elt: &GrothOElt) -> GrothOElt {
    let sys = elt.system().clone();
    let mut coords: BTreeMap<EltId, BigInt> = BTreeMap::new();
    for (w, c) in elt.coords() {
        for target in [w, sys.right_mult(w, s)] {
            let slot = coords.entry(target).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                coords.remove(&target);
            }
        }
    }
    GrothOElt::from_coords(sys, coords)
}

/// The orthonormal (Verma-on-Verma) pairing of two classes.
pub fn verma_pairing(a: &GrothOElt, b: &GrothOElt) -> BigInt {
    assert!(same_system(a.system(), b.system()));
    a.coords().map(|(w, c)| c * b.coeff(w)).sum()
}

/// Classes of the indecomposable projectives, built by wall-crossing:
/// `[Pr_e] = [M_e]`, and for x = ws with l(x) = l(w) + 1,
///
/// `[Pr_x] = theta_s [Pr_w] - sum over z with zs < z of mu(z, w) [Pr_z]`.
///
/// Only the mu values of a KL table enter; the resulting Verma multiplicities
/// are an independent route to the specialized KL basis.
pub struct ProjClasses {
    sys: Arc<CoxeterSystem>,
    classes: Vec<GrothOElt>,
}

impl ProjClasses {
    pub fn build(table: &KLTable) -> ProjClasses {
        let sys = table.system().clone();
        let mut classes: Vec<GrothOElt> = Vec::with_capacity(sys.size());
        classes.push(GrothOElt::verma(sys.clone(), sys.identity()));
        for x in sys.elements().skip(1) {
            let (w, s) = sys.parent(x);
            let mut class = theta_action(s as usize, &classes[w.0 as usize]);
            for (&z, m) in table.mu_row(w) {
                if sys.is_right_descent(z, s as usize) {
                    class = class.sub(&classes[z.0 as usize].scale(m));
                }
            }
            classes.push(class);
        }
        ProjClasses { sys, classes }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn class(&self, x: EltId) -> &GrothOElt {
        &self.classes[x.0 as usize]
    }

    /// Verma multiplicity `[Pr_x : M_y]`.
    pub fn multiplicity(&self, y: EltId, x: EltId) -> BigInt {
        self.classes[x.0 as usize].coeff(y)
    }

    /// Writes the projective-to-Verma transition matrix as CSV, one row per
    /// nonzero multiplicity, ordered by (x, y).
    pub fn export_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["x_word", "y_word", "mult"])?;
        for x in self.sys.elements() {
            for (y, c) in self.classes[x.0 as usize].coords() {
                wtr.write_record([
                    self.sys.word_string(x),
                    self.sys.word_string(y),
                    c.to_string(),
                ])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

/// BGG reciprocity check at one pair: the Verma multiplicity of M_y in Pr_x
/// must equal the specialized KL coefficient h_{y,x}(1).
pub fn bgg_check(table: &KLTable, proj: &ProjClasses, x: EltId, y: EltId) -> bool {
    proj.multiplicity(y, x) == table.poly(y, x).eval_one()
}

/// The class of the simple module L_y in the Verma basis:
///
/// `[L_y] = sum over x >= y of (-1)^(l(y) + l(x)) h_{x w0, y w0}(1) [M_x]`.
///
/// Both sign conventions of the inversion identity specialize to this same
/// expression at v = 1 (the summand-dependent sign only reweights the terms
/// of the defining sum, not the inverse matrix), so `conv` does not change
/// the result; it is accepted so callers can name the identity they are
/// invoking.
pub fn simple_class(table: &KLTable, y: EltId, _conv: SignConvention) -> GrothOElt {
    let sys = table.system().clone();
    let w0 = sys.longest_element();
    let yw0 = sys.mult(y, w0);
    let ly = sys.length(y);
    let mut coords = BTreeMap::new();
    for x in sys.elements() {
        if !sys.bruhat_leq(y, x) {
            continue;
        }
        let xw0 = sys.mult(x, w0);
        let h1 = table.poly(xw0, yw0).eval_one();
        if h1.is_zero() {
            continue;
        }
        let sign = if (ly + sys.length(x)) % 2 == 0 { 1 } else { -1 };
        coords.insert(x, h1 * BigInt::from(sign));
    }
    GrothOElt::from_coords(sys, coords)
}
