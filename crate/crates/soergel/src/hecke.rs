//! The Iwahori-Hecke algebra of an enumerated system, its bar involution,
//! and Kazhdan-Lusztig bases.
//!
//! Normalization: the standard basis element of a simple reflection satisfies
//! `d_s^2 = 1 + (v^{-1} - v) d_s`, equivalently `(d_s - v^{-1})(d_s + v) = 0`.
//! The Kazhdan-Lusztig basis element `b_x = sum_y h_{y,x} d_y` is the unique
//! bar-invariant element with `h_{x,x} = 1` and `h_{y,x}` in `v Z[v]` for
//! `y != x`; in the classical q-normalization `h_{y,x} = v^{l(x)-l(y)}
//! P_{y,x}(v^{-2})`.
//!
//! Two independent constructions of the same table are provided: a direct
//! solve of the self-duality equations against the bar involution, and the
//! inductive multiplication rule `b_w b_s = b_{ws} + sum mu(z,w) b_z`.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterSystem, EltId};
use crate::laurent::LaurentPoly;

type Row = BTreeMap<EltId, LaurentPoly>;

/// An element of the Hecke algebra: finitely many standard-basis terms with
/// Laurent-polynomial coefficients.
#[derive(Clone)]
pub struct HeckeElt {
    sys: Arc<CoxeterSystem>,
    terms: Row,
}

pub(crate) fn same_system(a: &CoxeterSystem, b: &CoxeterSystem) -> bool {
    std::ptr::eq(a, b) || a.matrix() == b.matrix()
}

/// Right multiplication of a coefficient row by the standard generator d_s.
fn row_mul_gen(sys: &CoxeterSystem, row: &Row, s: usize) -> Row {
    let down_shift = LaurentPoly::from_pairs(&[(-1, 1), (1, -1)]); // v^{-1} - v
    let mut out = Row::new();
    for (&x, p) in row {
        let xs = sys.right_mult(x, s);
        if sys.length(xs) > sys.length(x) {
            add_into(&mut out, xs, p.clone());
        } else {
            add_into(&mut out, xs, p.clone());
            add_into(&mut out, x, p * &down_shift);
        }
    }
    out
}

fn add_into(row: &mut Row, x: EltId, p: LaurentPoly) {
    if p.is_zero() {
        return;
    }
    let slot = row.entry(x).or_insert_with(LaurentPoly::zero);
    *slot += &p;
    if slot.is_zero() {
        row.remove(&x);
    }
}

fn sub_into(row: &mut Row, x: EltId, p: LaurentPoly) {
    add_into(row, x, -&p)
}

impl HeckeElt {
    pub fn zero(sys: Arc<CoxeterSystem>) -> HeckeElt {
        HeckeElt { sys, terms: Row::new() }
    }

    /// The standard basis element d_x.
    pub fn delta(sys: Arc<CoxeterSystem>, x: EltId) -> HeckeElt {
        let mut terms = Row::new();
        terms.insert(x, LaurentPoly::one());
        HeckeElt { sys, terms }
    }

    pub fn unit(sys: Arc<CoxeterSystem>) -> HeckeElt {
        let id = sys.identity();
        HeckeElt::delta(sys, id)
    }

    pub fn from_terms(sys: Arc<CoxeterSystem>, terms: Row) -> HeckeElt {
        let terms = terms.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        HeckeElt { sys, terms }
    }

    /// The product d_{s_1} ... d_{s_k} over an arbitrary word (0-based).
    pub fn delta_product(sys: Arc<CoxeterSystem>, word: &[u8]) -> HeckeElt {
        let mut row = Row::new();
        row.insert(sys.identity(), LaurentPoly::one());
        for &s in word {
            row = row_mul_gen(&sys, &row, s as usize);
        }
        HeckeElt { sys, terms: row }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: EltId) -> LaurentPoly {
        self.terms.get(&x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (EltId, &LaurentPoly)> {
        self.terms.iter().map(|(&x, p)| (x, p))
    }

    pub fn support(&self) -> Vec<EltId> {
        self.terms.keys().copied().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let terms = self.terms.iter().map(|(&x, p)| (x, p * c)).collect();
        HeckeElt::from_terms(self.sys.clone(), terms)
    }

    /// Right multiplication by the generator d_s.
    pub fn mul_gen(&self, s: usize) -> HeckeElt {
        HeckeElt { sys: self.sys.clone(), terms: row_mul_gen(&self.sys, &self.terms, s) }
    }

    /// Specialization v = 1, landing in the integral group algebra.
    pub fn specialize_v1(&self) -> BTreeMap<EltId, BigInt> {
        self.terms
            .iter()
            .map(|(&x, p)| (x, p.eval_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

impl PartialEq for HeckeElt {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.sys, &other.sys) && self.terms == other.terms
    }
}

impl Eq for HeckeElt {}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&x, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*d[{}]", p, self.sys.word_string(x))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        assert!(same_system(&self.sys, &rhs.sys));
        let mut terms = self.terms.clone();
        for (&x, p) in &rhs.terms {
            add_into(&mut terms, x, p.clone());
        }
        HeckeElt { sys: self.sys.clone(), terms }
    }
}

impl std::ops::Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        assert!(same_system(&self.sys, &rhs.sys));
        let mut terms = self.terms.clone();
        for (&x, p) in &rhs.terms {
            sub_into(&mut terms, x, p.clone());
        }
        HeckeElt { sys: self.sys.clone(), terms }
    }
}

impl std::ops::Mul for &HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: &HeckeElt) -> HeckeElt {
        assert!(same_system(&self.sys, &rhs.sys));
        let sys = &self.sys;
        let mut acc = Row::new();
        for (&y, q) in &rhs.terms {
            // self * d_y, walking the normal word of y, then scaled by q
            let mut cur = self.terms.clone();
            for &s in sys.word(y) {
                cur = row_mul_gen(sys, &cur, s as usize);
            }
            for (x, p) in cur {
                add_into(&mut acc, x, &p * q);
            }
        }
        HeckeElt { sys: self.sys.clone(), terms: acc }
    }
}

/// The symmetric bilinear form with the standard basis orthonormal.
pub fn pairing(a: &HeckeElt, b: &HeckeElt) -> LaurentPoly {
    assert!(same_system(&a.sys, &b.sys));
    let mut out = LaurentPoly::zero();
    for (&x, p) in &a.terms {
        if let Some(q) = b.terms.get(&x) {
            out += &(p * q);
        }
    }
    out
}

/// Which of the two constructions produced a table.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum KLRoute {
    /// Solve the bar self-duality equations degree by degree, descending.
    Direct,
    /// Induct on length with b_w b_s = b_{ws} + sum mu(z,w) b_z.
    MuRecursion,
}

impl fmt::Display for KLRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KLRoute::Direct => "direct",
            KLRoute::MuRecursion => "mu",
        })
    }
}

impl FromStr for KLRoute {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(KLRoute::Direct),
            "mu" => Ok(KLRoute::MuRecursion),
            other => Err(format!("unknown route {other:?} (expected direct|mu)")),
        }
    }
}

/// Sign placement inside the Kazhdan-Lusztig inversion sum. `Paper` applies
/// the constant sign (-1)^{l(y)+l(x)}; `Corrected` applies the
/// summand-dependent sign (-1)^{l(z)+l(x)}. Exactly one of them makes the
/// defect vanish identically; the verification commands report which.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SignConvention {
    Paper,
    Corrected,
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Paper => "paper",
            SignConvention::Corrected => "corrected",
        })
    }
}

impl FromStr for SignConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(SignConvention::Paper),
            "corrected" => Ok(SignConvention::Corrected),
            other => Err(format!("unknown convention {other:?} (expected paper|corrected)")),
        }
    }
}

/// Result of checking the inversion identity over every pair of elements.
#[derive(Clone, Debug)]
pub struct InversionScan {
    pub convention: SignConvention,
    pub pairs_checked: usize,
    pub violations: usize,
    pub first_violation: Option<(EltId, EltId, LaurentPoly)>,
}

impl InversionScan {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// The full Kazhdan-Lusztig table of a finite system: bar involution rows,
/// KL coefficient polynomials, and mu values.
pub struct KLTable {
    sys: Arc<CoxeterSystem>,
    route: KLRoute,
    /// bar(d_x) in the standard basis, indexed by x.
    bar_rows: Vec<Row>,
    /// h_{y,x} keyed by y, indexed by x.
    polys: Vec<Row>,
    /// mu(y, x): the coefficient of v in h_{y,x}, nonzero entries only.
    mus: Vec<BTreeMap<EltId, BigInt>>,
}

impl KLTable {
    pub fn build(sys: Arc<CoxeterSystem>, route: KLRoute) -> KLTable {
        let bar_rows = build_bar_rows(&sys);
        let polys = match route {
            KLRoute::Direct => {
                let ids: Vec<u32> = (0..sys.size() as u32).collect();
                ids.par_iter().map(|&x| solve_self_dual(&sys, &bar_rows, EltId(x))).collect()
            }
            KLRoute::MuRecursion => build_by_mu_recursion(&sys),
        };
        let mus = polys
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(&y, p)| {
                        let m = p.coeff(1);
                        if m.is_zero() {
                            None
                        } else {
                            Some((y, m))
                        }
                    })
                    .collect()
            })
            .collect();
        KLTable { sys, route, bar_rows, polys, mus }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn route(&self) -> KLRoute {
        self.route
    }

    /// The coefficient h_{y,x} of d_y in b_x (zero when y is not below x).
    pub fn poly(&self, y: EltId, x: EltId) -> LaurentPoly {
        self.polys[x.0 as usize].get(&y).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn poly_row(&self, x: EltId) -> &Row {
        &self.polys[x.0 as usize]
    }

    /// mu(y, x): the coefficient of v in h_{y,x}.
    pub fn mu(&self, y: EltId, x: EltId) -> BigInt {
        self.mus[x.0 as usize].get(&y).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn mu_row(&self, x: EltId) -> &BTreeMap<EltId, BigInt> {
        &self.mus[x.0 as usize]
    }

    pub fn kl_basis(&self, x: EltId) -> HeckeElt {
        HeckeElt { sys: self.sys.clone(), terms: self.polys[x.0 as usize].clone() }
    }

    /// bar(d_x) in the standard basis.
    pub fn bar_row(&self, x: EltId) -> HeckeElt {
        HeckeElt { sys: self.sys.clone(), terms: self.bar_rows[x.0 as usize].clone() }
    }

    /// The bar involution: v -> v^{-1}, d_x -> (d_{x^{-1}})^{-1}, extended
    /// to arbitrary elements through the precomputed rows.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        assert!(same_system(&self.sys, &h.sys));
        let mut acc = Row::new();
        for (&x, p) in &h.terms {
            let pb = p.bar();
            for (&y, r) in &self.bar_rows[x.0 as usize] {
                add_into(&mut acc, y, &pb * r);
            }
        }
        HeckeElt { sys: self.sys.clone(), terms: acc }
    }

    /// The inversion sum `sum_z sign * h_{z,x} * h_{z w0, y w0}` minus the
    /// Kronecker delta of (x, y); identically zero iff the identity holds.
    pub fn inversion_defect(&self, x: EltId, y: EltId, conv: SignConvention) -> LaurentPoly {
        let sys = &self.sys;
        let w0 = sys.longest_element();
        let yw0 = sys.mult(y, w0);
        let lx = sys.length(x);
        let ly = sys.length(y);
        let mut acc = LaurentPoly::zero();
        for (&z, hzx) in &self.polys[x.0 as usize] {
            let zw0 = sys.mult(z, w0);
            let other = match self.polys[yw0.0 as usize].get(&zw0) {
                Some(p) => p,
                None => continue,
            };
            let parity = match conv {
                SignConvention::Paper => (ly + lx) % 2,
                SignConvention::Corrected => (sys.length(z) + lx) % 2,
            };
            let term = hzx * other;
            if parity == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        if x == y {
            acc -= &LaurentPoly::one();
        }
        acc
    }

    /// Checks the inversion identity on all pairs, in index order.
    pub fn inversion_scan(&self, conv: SignConvention) -> InversionScan {
        let n = self.sys.size() as u32;
        let mut scan = InversionScan {
            convention: conv,
            pairs_checked: 0,
            violations: 0,
            first_violation: None,
        };
        for x in 0..n {
            for y in 0..n {
                let d = self.inversion_defect(EltId(x), EltId(y), conv);
                scan.pairs_checked += 1;
                if !d.is_zero() {
                    scan.violations += 1;
                    if scan.first_violation.is_none() {
                        scan.first_violation = Some((EltId(x), EltId(y), d));
                    }
                }
            }
        }
        scan
    }

    /// CSV rows `y_word,x_word,poly_json,mu` ordered by (x index, y index).
    pub fn export_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["y_word", "x_word", "poly_json", "mu"])?;
        for x in self.sys.elements() {
            let xw = self.sys.word_string(x);
            for (&y, p) in &self.polys[x.0 as usize] {
                w.write_record([
                    self.sys.word_string(y),
                    xw.clone(),
                    serde_json::to_string(p).expect("poly serialization"),
                    self.mu(y, x).to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .sys
            .elements()
            .flat_map(|x| {
                let sys = &self.sys;
                let xw = sys.word_string(x);
                self.polys[x.0 as usize]
                    .iter()
                    .map(|(&y, p)| {
                        json!({
                            "y": sys.word_string(y),
                            "x": xw.clone(),
                            "poly": serde_json::to_value(p).expect("poly serialization"),
                            "mu": bigint_json(&self.mu(y, x)),
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        json!({ "size": self.sys.size(), "entries": entries })
    }
}

pub fn bigint_json(c: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_string_unchecked(c.to_string()))
}

/// bar(d_x) for every x, bottom-up along parent links:
/// bar(d_{ws}) = bar(d_w) (d_s + (v - v^{-1})).
fn build_bar_rows(sys: &Arc<CoxeterSystem>) -> Vec<Row> {
    let n = sys.size();
    let up_shift = LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]); // v - v^{-1}
    let mut rows: Vec<Row> = Vec::with_capacity(n);
    let mut id_row = Row::new();
    id_row.insert(sys.identity(), LaurentPoly::one());
    rows.push(id_row);
    for xi in 1..n {
        let (w, s) = sys.parent(EltId(xi as u32));
        let prev = &rows[w.0 as usize];
        let mut next = row_mul_gen(sys, prev, s as usize);
        for (&y, p) in prev {
            add_into(&mut next, y, p * &up_shift);
        }
        rows.push(next);
    }
    rows
}

/// Direct construction of b_x: starting from h_{x,x} = 1, walk the support of
/// bar(d_x) downward and solve `h_y - bar(h_y) = sum_{z > y} bar(h_z) r_{y,z}`
/// for the unique solution with strictly positive exponents.
fn solve_self_dual(sys: &CoxeterSystem, bar_rows: &[Row], x: EltId) -> Row {
    let supp: Vec<EltId> = bar_rows[x.0 as usize].keys().copied().collect();
    debug_assert_eq!(supp.last(), Some(&x));
    let mut h = Row::new();
    h.insert(x, LaurentPoly::one());
    for &y in supp.iter().rev().skip(1) {
        let mut g = LaurentPoly::zero();
        for (&z, hz) in &h {
            debug_assert!(z > y);
            if let Some(r) = bar_rows[z.0 as usize].get(&y) {
                g += &(&hz.bar() * r);
            }
        }
        let hy = g.positive_part();
        assert!(
            &(&hy - &hy.bar()) == &g,
            "self-duality solve failed at y={} x={}: asymmetric part {} vs {}",
            sys.word_string(y),
            sys.word_string(x),
            &hy - &hy.bar(),
            g,
        );
        // Kazhdan-Lusztig coefficients are never zero below x, so the row
        // support stays the full lower interval.
        assert!(!hy.is_zero(), "vanishing coefficient at y={}", sys.word_string(y));
        h.insert(y, hy);
    }
    h
}

/// Inductive construction along the enumeration order, one length stratum at
/// a time (each stratum only reads strictly shorter rows, so rows within a
/// stratum are computed in parallel and appended in index order).
fn build_by_mu_recursion(sys: &Arc<CoxeterSystem>) -> Vec<Row> {
    let n = sys.size();
    let mut polys: Vec<Row> = Vec::with_capacity(n);
    let mut id_row = Row::new();
    id_row.insert(sys.identity(), LaurentPoly::one());
    polys.push(id_row);
    let mut start = 1usize;
    while start < n {
        let len = sys.length(EltId(start as u32));
        let mut end = start;
        while end < n && sys.length(EltId(end as u32)) == len {
            end += 1;
        }
        let stratum: Vec<Row> = (start..end)
            .into_par_iter()
            .map(|xi| mu_step(sys, &polys, EltId(xi as u32)))
            .collect();
        polys.extend(stratum);
        start = end;
    }
    polys
}

/// One inductive step: with x = w s along the parent link,
/// b_x = b_w b_s - sum over z with zs < z of mu(z, w) b_z.
fn mu_step(sys: &CoxeterSystem, polys: &[Row], x: EltId) -> Row {
    let (w, s) = sys.parent(x);
    let s = s as usize;
    let v = LaurentPoly::v();
    let v_inv = LaurentPoly::monomial(-1);
    let mut acc = Row::new();
    for (&y, p) in &polys[w.0 as usize] {
        let ys = sys.right_mult(y, s);
        if sys.length(ys) > sys.length(y) {
            add_into(&mut acc, ys, p.clone());
            add_into(&mut acc, y, p * &v);
        } else {
            add_into(&mut acc, ys, p.clone());
            add_into(&mut acc, y, p * &v_inv);
        }
    }
    for (z, m) in mu_of_row(&polys[w.0 as usize]) {
        if sys.is_right_descent(z, s) {
            for (&y, p) in &polys[z.0 as usize] {
                sub_into(&mut acc, y, p.scaled(m));
            }
        }
    }
    debug_assert!(acc.keys().next_back() == Some(&x) && acc[&x].is_one());
    debug_assert!(acc.iter().all(|(&y, p)| y == x || p.in_v_zv()));
    acc
}

// mu values of one row, borrowed lazily; small helper so mu_step does not
// need the finished table.
fn mu_of_row(row: &Row) -> BTreeMap<EltId, &BigInt> {
    row.iter()
        .filter_map(|(&y, p)| p.iter().find(|&(e, _)| e == 1).map(|(_, c)| (y, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_named, parse_word, CoxeterMatrix, DEFAULT_MAX_ELEMENTS};

    fn sys(name: &str) -> Arc<CoxeterSystem> {
        build_named(name, DEFAULT_MAX_ELEMENTS).unwrap()
    }

    fn elt(g: &Arc<CoxeterSystem>, word: &str) -> EltId {
        g.element_of_word(&parse_word(word).unwrap()).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let g = sys("B2");
        for s in 0..g.rank() {
            let d = HeckeElt::delta(g.clone(), elt(&g, &(s + 1).to_string()));
            let sq = &d * &d;
            let expected = &HeckeElt::unit(g.clone())
                + &d.scale(&LaurentPoly::from_pairs(&[(-1, 1), (1, -1)]));
            assert_eq!(sq, expected);
        }
    }

    #[test]
    fn braid_relations_in_the_algebra() {
        let g = sys("A2");
        let sts = HeckeElt::delta_product(g.clone(), &[0, 1, 0]);
        let tst = HeckeElt::delta_product(g.clone(), &[1, 0, 1]);
        assert_eq!(sts, tst);
        assert_eq!(sts.coeff(g.longest_element()), LaurentPoly::one());
        assert_eq!(sts.num_terms(), 1);

        let b2 = sys("B2");
        let lhs = HeckeElt::delta_product(b2.clone(), &[0, 1, 0, 1]);
        let rhs = HeckeElt::delta_product(b2.clone(), &[1, 0, 1, 0]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_of_reduced_words_are_single_deltas() {
        let g = sys("A3");
        for x in g.elements() {
            let p = HeckeElt::delta_product(g.clone(), g.word(x));
            assert_eq!(p, HeckeElt::delta(g.clone(), x));
        }
    }

    #[test]
    fn bar_of_generator_and_involution() {
        let g = sys("A2");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let s = elt(&g, "1");
        // bar(d_s) = d_s + (v - v^{-1}) d_e
        let bs = table.bar_row(s);
        assert_eq!(bs.coeff(s), LaurentPoly::one());
        assert_eq!(bs.coeff(g.identity()), LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]));
        assert_eq!(bs.num_terms(), 2);
        // involution on every standard basis element
        for x in g.elements() {
            let once = table.bar_row(x);
            let twice = table.bar(&once);
            assert_eq!(twice, HeckeElt::delta(g.clone(), x), "bar^2(d_{})", g.word_string(x));
        }
    }

    #[test]
    fn bar_is_a_ring_map_on_samples() {
        let g = sys("B2");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let a = &HeckeElt::delta(g.clone(), elt(&g, "1,2")).scale(&LaurentPoly::v())
            - &HeckeElt::delta(g.clone(), elt(&g, "2"));
        let b = &HeckeElt::delta(g.clone(), elt(&g, "2,1,2"))
            + &HeckeElt::unit(g.clone()).scale(&LaurentPoly::from_pairs(&[(-2, 3)]));
        assert_eq!(table.bar(&(&a * &b)), &table.bar(&a) * &table.bar(&b));
        assert_eq!(table.bar(&(&a + &b)), &table.bar(&a) + &table.bar(&b));
    }

    #[test]
    fn bar_support_is_the_lower_bruhat_interval() {
        let g = sys("A3");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        for x in g.elements() {
            let bar = table.bar_row(x);
            for y in g.elements() {
                let present = !bar.coeff(y).is_zero();
                assert_eq!(
                    present,
                    g.bruhat_leq(y, x),
                    "support of bar(d_{}) at {}",
                    g.word_string(x),
                    g.word_string(y)
                );
            }
        }
    }

    #[test]
    fn kl_basis_elements_are_bar_invariant_and_unitriangular() {
        let g = sys("A3");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        for x in g.elements() {
            let b = table.kl_basis(x);
            assert_eq!(table.bar(&b), b, "b_{} not self-dual", g.word_string(x));
            assert!(b.coeff(x).is_one());
            for (y, p) in b.terms() {
                if y != x {
                    assert!(p.in_v_zv(), "h({},{}) = {} escapes vZ[v]", y, x, p);
                    assert!(g.bruhat_leq(y, x));
                }
            }
        }
    }

    #[test]
    fn the_two_routes_agree_on_s4_and_b2() {
        for name in ["A3", "B2"] {
            let g = sys(name);
            let direct = KLTable::build(g.clone(), KLRoute::Direct);
            let mu = KLTable::build(g.clone(), KLRoute::MuRecursion);
            for x in g.elements() {
                assert_eq!(direct.poly_row(x), mu.poly_row(x), "{name} row {}", x);
                assert_eq!(direct.mu_row(x), mu.mu_row(x));
            }
        }
    }

    #[test]
    fn dihedral_closed_form() {
        // In any dihedral group, h_{y,x} = v^{l(x)-l(y)} for all y <= x.
        for name in ["A2", "I2(5)", "G2"] {
            let g = sys(name);
            let table = KLTable::build(g.clone(), KLRoute::Direct);
            for x in g.elements() {
                for y in g.elements() {
                    let expected = if g.bruhat_leq(y, x) {
                        LaurentPoly::monomial((g.length(x) - g.length(y)) as i64)
                    } else {
                        LaurentPoly::zero()
                    };
                    assert_eq!(table.poly(y, x), expected, "{name} h({y},{x})");
                }
            }
        }
    }

    #[test]
    fn s4_has_the_first_nontrivial_coefficients() {
        let g = sys("A3");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let x = elt(&g, "2,1,3,2");
        let s2 = elt(&g, "2");
        assert_eq!(table.poly(s2, x), LaurentPoly::from_pairs(&[(1, 1), (3, 1)]));
        assert_eq!(table.mu(s2, x), BigInt::from(1));
        // the identity also sees a nontrivial polynomial under the same x
        assert_eq!(table.poly(g.identity(), x), LaurentPoly::from_pairs(&[(2, 1), (4, 1)]));
        // everything in S3 stays monomial
        let a2 = sys("A2");
        let t2 = KLTable::build(a2.clone(), KLRoute::Direct);
        for x in a2.elements() {
            for (_, p) in t2.poly_row(x) {
                assert_eq!(p.num_terms(), 1);
            }
        }
    }

    #[test]
    fn mu_step_is_independent_of_the_descent_chosen() {
        let g = sys("A3");
        let table = KLTable::build(g.clone(), KLRoute::MuRecursion);
        let v = LaurentPoly::v();
        let v_inv = LaurentPoly::monomial(-1);
        for x in g.elements() {
            if x == g.identity() {
                continue;
            }
            for s in 0..g.rank() {
                if !g.is_right_descent(x, s) {
                    continue;
                }
                let w = g.right_mult(x, s);
                let mut acc = Row::new();
                for (&y, p) in table.poly_row(w) {
                    let ys = g.right_mult(y, s);
                    if g.length(ys) > g.length(y) {
                        add_into(&mut acc, ys, p.clone());
                        add_into(&mut acc, y, p * &v);
                    } else {
                        add_into(&mut acc, ys, p.clone());
                        add_into(&mut acc, y, p * &v_inv);
                    }
                }
                for (&z, m) in table.mu_row(w) {
                    if g.is_right_descent(z, s) {
                        for (&y, p) in table.poly_row(z) {
                            sub_into(&mut acc, y, p.scaled(m));
                        }
                    }
                }
                assert_eq!(&acc, table.poly_row(x), "descent {} of {}", s + 1, g.word_string(x));
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let g = sys("A2");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let s = elt(&g, "1");
        let t = elt(&g, "2");
        assert_eq!(
            pairing(&HeckeElt::delta(g.clone(), s), &HeckeElt::delta(g.clone(), s)),
            LaurentPoly::one()
        );
        assert_eq!(
            pairing(&HeckeElt::delta(g.clone(), s), &HeckeElt::delta(g.clone(), t)),
            LaurentPoly::zero()
        );
        // (b_s, b_s) = 1 + v^2
        let bs = table.kl_basis(s);
        assert_eq!(pairing(&bs, &bs), LaurentPoly::from_pairs(&[(0, 1), (2, 1)]));
        // supports of b_s and b_t meet only at e, each with coefficient v
        let bt = table.kl_basis(t);
        assert_eq!(pairing(&bs, &bt), LaurentPoly::from_pairs(&[(2, 1)]));
    }

    #[test]
    fn inversion_holds_only_with_the_summand_sign() {
        let g = sys("A1");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let e = g.identity();
        let s = elt(&g, "1");
        // corrected: zero everywhere
        let scan = table.inversion_scan(SignConvention::Corrected);
        assert!(scan.passed());
        assert_eq!(scan.pairs_checked, 4);
        // paper: fails at (x, y) = (s, e) with defect -2v
        assert_eq!(
            table.inversion_defect(s, e, SignConvention::Paper),
            LaurentPoly::from_pairs(&[(1, -2)])
        );
        let scan = table.inversion_scan(SignConvention::Paper);
        assert!(!scan.passed());
        // trivially-zero pair under both signs: lengths force empty overlap
        assert_eq!(table.inversion_defect(e, s, SignConvention::Paper), LaurentPoly::zero());
        assert_eq!(table.inversion_defect(e, s, SignConvention::Corrected), LaurentPoly::zero());
    }

    #[test]
    fn inversion_scan_across_s3() {
        let g = sys("A2");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let good = table.inversion_scan(SignConvention::Corrected);
        assert!(good.passed());
        assert_eq!(good.pairs_checked, 36);
        let bad = table.inversion_scan(SignConvention::Paper);
        assert!(!bad.passed());
    }

    #[test]
    fn specialization_at_one_is_the_group_algebra() {
        let g = sys("A2");
        for x in g.elements() {
            for y in g.elements() {
                let p = &HeckeElt::delta(g.clone(), x) * &HeckeElt::delta(g.clone(), y);
                let spec = p.specialize_v1();
                let xy = g.mult(x, y);
                assert_eq!(spec.len(), 1, "d_x d_y at v=1 collapses to one element");
                assert_eq!(spec.get(&xy), Some(&BigInt::from(1)));
            }
        }
    }

    #[test]
    fn csv_export_is_stable() {
        let g = sys("A1");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let mut buf = Vec::new();
        table.export_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "y_word,x_word,poly_json,mu\n\
                        e,e,\"{\"\"coeffs\"\":{\"\"0\"\":1}}\",0\n\
                        e,1,\"{\"\"coeffs\"\":{\"\"1\"\":1}}\",1\n\
                        1,1,\"{\"\"coeffs\"\":{\"\"0\"\":1}}\",0\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn json_export_shape() {
        let g = sys("A1");
        let table = KLTable::build(g.clone(), KLRoute::Direct);
        let v = table.to_json();
        assert_eq!(v["size"], json!(2));
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[1]["y"], "e");
        assert_eq!(entries[1]["x"], "1");
        assert_eq!(entries[1]["mu"], json!(1));
        assert_eq!(entries[1]["poly"]["coeffs"]["1"], json!(1));
    }

    #[test]
    fn tables_with_matrix_input_match_named_type() {
        let m = CoxeterMatrix::from_json(r#"{"rank":2,"m":[[1,4],[4,1]]}"#).unwrap();
        let g = Arc::new(CoxeterSystem::build(m, DEFAULT_MAX_ELEMENTS).unwrap());
        let named = sys("B2");
        let t1 = KLTable::build(g, KLRoute::Direct);
        let t2 = KLTable::build(named, KLRoute::Direct);
        for x in t1.system().elements() {
            assert_eq!(t1.poly_row(x), t2.poly_row(x));
        }
    }
}
