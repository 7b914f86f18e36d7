//! Degree-graded bimodule maps between Bott-Samelson bimodules, the
//! idempotent splitting of B_s B_s, and a solver that computes a left basis
//! of a graded Hom space degree by degree.
//!
//! A map is stored as a matrix over the polynomial ring with respect to the
//! free left bases of source and target; left-linearity is then automatic,
//! and being a map of bimodules reduces to commuting with right
//! multiplication by each variable.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::multipoly::{monomials_of_degree, rat, MultiPoly};
use super::tensor::{validate_word, TensorElt};
use super::LabError;
use crate::laurent::LaurentPoly;

/// A left-linear map between Bott-Samelson bimodules, given by a
/// (cod basis) x (dom basis) matrix of polynomials. `degree` is the declared
/// degree; `is_homogeneous` checks the entries against it and
/// `is_bimodule_map` additionally checks right-linearity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BimoduleMap {
    vars: usize,
    dom: Vec<u8>,
    cod: Vec<u8>,
    degree: i64,
    entries: Vec<Vec<MultiPoly>>,
}

fn label_degree(word: &[u8], label: u64) -> i64 {
    2 * label.count_ones() as i64 - word.len() as i64
}

impl BimoduleMap {
    pub fn new(
        vars: usize,
        dom: &[u8],
        cod: &[u8],
        degree: i64,
        entries: Vec<Vec<MultiPoly>>,
    ) -> Result<BimoduleMap, LabError> {
        validate_word(vars, dom)?;
        validate_word(vars, cod)?;
        let rows = 1usize << cod.len();
        let cols = 1usize << dom.len();
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(LabError::ShapeMismatch(format!(
                "expected a {rows} x {cols} matrix for words of lengths {} and {}",
                dom.len(),
                cod.len()
            )));
        }
        for row in &entries {
            for p in row {
                assert_eq!(p.vars(), vars);
            }
        }
        Ok(BimoduleMap { vars, dom: dom.to_vec(), cod: cod.to_vec(), degree, entries })
    }

    pub fn zero(vars: usize, dom: &[u8], cod: &[u8], degree: i64) -> Result<BimoduleMap, LabError> {
        let entries = vec![vec![MultiPoly::zero(vars); 1 << dom.len()]; 1 << cod.len()];
        BimoduleMap::new(vars, dom, cod, degree, entries)
    }

    pub fn identity(vars: usize, word: &[u8]) -> Result<BimoduleMap, LabError> {
        let mut map = BimoduleMap::zero(vars, word, word, 0)?;
        for j in 0..(1usize << word.len()) {
            map.entries[j][j] = MultiPoly::one(vars);
        }
        Ok(map)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn dom_word(&self) -> &[u8] {
        &self.dom
    }

    pub fn cod_word(&self) -> &[u8] {
        &self.cod
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    pub fn apply(&self, t: &TensorElt) -> TensorElt {
        assert_eq!(t.vars(), self.vars);
        assert_eq!(t.word(), &self.dom[..], "map applied to an element of the wrong bimodule");
        let mut out = TensorElt::zero(self.vars, &self.cod).unwrap();
        for (j, f) in t.coords() {
            let mut unit_coords = BTreeMap::new();
            for (i, row) in self.entries.iter().enumerate() {
                let p = &row[j as usize] * &f;
                if !p.is_zero() {
                    unit_coords.insert(i as u64, p);
                }
            }
            out = out.add(&TensorElt::from_raw_coords(self.vars, &self.cod, unit_coords));
        }
        out
    }

    pub fn add(&self, other: &BimoduleMap) -> BimoduleMap {
        assert_eq!(self.dom, other.dom);
        assert_eq!(self.cod, other.cod);
        assert_eq!(self.degree, other.degree);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a + b).collect())
            .collect();
        BimoduleMap { entries, ..self.clone() }
    }

    pub fn sub(&self, other: &BimoduleMap) -> BimoduleMap {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, c: &BigRational) -> BimoduleMap {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.scale(c)).collect())
            .collect();
        BimoduleMap { entries, ..self.clone() }
    }

    /// Multiplies every entry by a polynomial (the left action of R on the
    /// Hom space). The declared degree grows by the polynomial's degree, so
    /// `p` must be homogeneous.
    pub fn mul_left(&self, p: &MultiPoly) -> BimoduleMap {
        let d = p.homogeneous_degree().expect("left multiplier must be homogeneous");
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|q| q * p).collect())
            .collect();
        BimoduleMap { degree: self.degree + d, entries, ..self.clone() }
    }

    /// self after other (matrix product of the coordinate matrices).
    pub fn compose(&self, other: &BimoduleMap) -> Result<BimoduleMap, LabError> {
        if other.cod != self.dom || other.vars != self.vars {
            return Err(LabError::ShapeMismatch(
                "codomain of the first map must match domain of the second".into(),
            ));
        }
        let rows = self.entries.len();
        let mid = self.entries[0].len();
        let cols = other.entries[0].len();
        let mut entries = vec![vec![MultiPoly::zero(self.vars); cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = MultiPoly::zero(self.vars);
                for k in 0..mid {
                    if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                        acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                    }
                }
                entries[i][j] = acc;
            }
        }
        Ok(BimoduleMap {
            vars: self.vars,
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            degree: self.degree + other.degree,
            entries,
        })
    }

    /// Every entry homogeneous of the degree forced by the declared map
    /// degree and the basis degrees (zero entries are always fine).
    pub fn is_homogeneous(&self) -> bool {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let want = self.degree + label_degree(&self.dom, j as u64)
                    - label_degree(&self.cod, i as u64);
                if p.homogeneous_degree() != Some(want) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that the map commutes with right multiplication by every
    /// variable (left-linearity holds by construction), i.e. is a map of
    /// bimodules.
    pub fn is_bimodule_map(&self) -> bool {
        for j in 0..(1u64 << self.dom.len()) {
            let basis = basis_elt(self.vars, &self.dom, j);
            let image = self.apply(&basis);
            for k in 0..self.vars {
                let xk = MultiPoly::var(self.vars, k);
                if self.apply(&basis.mul_right(&xk)) != image.mul_right(&xk) {
                    return false;
                }
            }
        }
        true
    }
}

fn basis_elt(vars: usize, word: &[u8], label: u64) -> TensorElt {
    let mut coords = BTreeMap::new();
    coords.insert(label, MultiPoly::one(vars));
    TensorElt::from_raw_coords(vars, word, coords)
}

/// The idempotent splitting of B_s B_s into B_s(-1) and B_s(1): the four
/// structure maps, the two idempotents they compose to, and the graded left
/// ranks of the two images. Every defining identity is verified; failure of
/// any of them is reported as SplitFailed.
pub struct BsSplit {
    /// B_sB_s -> B_s, f(x)g(x)h |-> f d(g)/2 (x) h, degree -1.
    pub proj_demazure: BimoduleMap,
    /// B_s -> B_sB_s, f(x)h |-> f(x)alpha(x)h, degree +1.
    pub incl_alpha: BimoduleMap,
    /// B_sB_s -> B_s, f(x)g(x)h |-> f (g + sg)/2 (x) h, degree +1.
    pub proj_invariant: BimoduleMap,
    /// B_s -> B_sB_s, f(x)h |-> f(x)1(x)h, degree -1.
    pub incl_unit: BimoduleMap,
    /// incl_alpha . proj_demazure, the projection onto the B_s(-1) summand.
    pub idem_alpha: BimoduleMap,
    /// incl_unit . proj_invariant, the projection onto the B_s(1) summand.
    pub idem_unit: BimoduleMap,
    /// Graded left rank of the image of idem_alpha: 1 + v^2.
    pub rank_alpha: LaurentPoly,
    /// Graded left rank of the image of idem_unit: 1 + v^-2.
    pub rank_unit: LaurentPoly,
}

/// Builds and verifies the splitting B_sB_s = B_s(-1) + B_s(1) for the
/// letter s = s_1 over at least two variables.
pub fn split_bs_bs(vars: usize) -> Result<BsSplit, LabError> {
    let one = MultiPoly::one(vars);
    let word1: &[u8] = &[0];
    let word2: &[u8] = &[0, 0];
    let fail = |what: &str| LabError::SplitFailed(what.to_string());

    // B_sB_s basis by label: 0 = 1(x)1(x)1, 1 = 1(x)a(x)1, 2 = 1(x)1(x)a,
    // 3 = 1(x)a(x)a; B_s basis: 0 = 1(x)1, 1 = 1(x)a.
    let mut pd = BimoduleMap::zero(vars, word2, word1, -1)?;
    pd.entries[0][1] = one.clone();
    pd.entries[1][3] = one.clone();
    let mut ia = BimoduleMap::zero(vars, word1, word2, 1)?;
    ia.entries[1][0] = one.clone();
    ia.entries[3][1] = one.clone();
    let mut pi = BimoduleMap::zero(vars, word2, word1, 1)?;
    pi.entries[0][0] = one.clone();
    pi.entries[1][2] = one.clone();
    let mut iu = BimoduleMap::zero(vars, word1, word2, -1)?;
    iu.entries[0][0] = one.clone();
    iu.entries[2][1] = one.clone();

    for (map, name) in [(&pd, "proj_demazure"), (&ia, "incl_alpha"), (&pi, "proj_invariant"), (&iu, "incl_unit")] {
        if !map.is_homogeneous() {
            return Err(fail(&format!("{name} is not homogeneous")));
        }
        if !map.is_bimodule_map() {
            return Err(fail(&format!("{name} is not right-linear")));
        }
    }

    let id1 = BimoduleMap::identity(vars, word1)?;
    let id2 = BimoduleMap::identity(vars, word2)?;
    if pd.compose(&ia)? != id1 {
        return Err(fail("proj_demazure . incl_alpha is not the identity"));
    }
    if pi.compose(&iu)? != id1 {
        return Err(fail("proj_invariant . incl_unit is not the identity"));
    }
    if !pd.compose(&iu)?.is_zero() || !pi.compose(&ia)?.is_zero() {
        return Err(fail("the cross compositions do not vanish"));
    }
    let e_a = ia.compose(&pd)?;
    let e_u = iu.compose(&pi)?;
    if e_a.compose(&e_a)? != e_a || e_u.compose(&e_u)? != e_u {
        return Err(fail("the idempotent identities fail"));
    }
    if !e_a.compose(&e_u)?.is_zero() || !e_u.compose(&e_a)?.is_zero() {
        return Err(fail("the idempotents are not orthogonal"));
    }
    if e_a.add(&e_u) != id2 {
        return Err(fail("the idempotents do not sum to the identity"));
    }

    // graded ranks of the images, read off the diagonals (both idempotents
    // are diagonal 0/1 matrices by construction; verify rather than trust)
    let mut rank_alpha = LaurentPoly::zero();
    let mut rank_unit = LaurentPoly::zero();
    for (e, rank) in [(&e_a, &mut rank_alpha), (&e_u, &mut rank_unit)] {
        for i in 0..4 {
            for j in 0..4 {
                let p = e.entry(i, j);
                if i == j {
                    if !(p.is_zero() || p == &one) {
                        return Err(fail("idempotent diagonal is not 0/1"));
                    }
                    if p == &one {
                        *rank += &LaurentPoly::monomial(label_degree(word2, i as u64));
                    }
                } else if !p.is_zero() {
                    return Err(fail("idempotent is not diagonal"));
                }
            }
        }
    }

    Ok(BsSplit {
        proj_demazure: pd,
        incl_alpha: ia,
        proj_invariant: pi,
        incl_unit: iu,
        idem_alpha: e_a,
        idem_unit: e_u,
        rank_alpha,
        rank_unit,
    })
}

/// An incremental row space over the rationals for rank and membership
/// computations; rows are kept in echelon form.
struct RowSpace {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RowSpace {
    fn new() -> RowSpace {
        RowSpace { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [BigRational]) {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
    }

    /// Reduces v against the space; if a nonzero remainder is left, inserts
    /// it and returns true.
    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        self.reduce(&mut v);
        match v.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(pivot) => {
                let lead = v[pivot].clone();
                for c in v.iter_mut() {
                    *c /= &lead;
                }
                self.rows.push((pivot, v));
                self.rows.sort_by_key(|(p, _)| *p);
                true
            }
        }
    }
}

/// Nullspace of the linear system given by `rows` (each of length `ncols`),
/// as a list of basis vectors.
fn nullspace(rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    // row-reduce to echelon form
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for mut row in rows {
        for (pivot, r) in &echelon {
            if !row[*pivot].is_zero() {
                let c = row[*pivot].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x -= &c * y;
                }
            }
        }
        if let Some(pivot) = row.iter().position(|c| !c.is_zero()) {
            let lead = row[pivot].clone();
            for c in row.iter_mut() {
                *c /= &lead;
            }
            echelon.push((pivot, row));
            echelon.sort_by_key(|(p, _)| *p);
        }
    }
    // back-substitute to reduced echelon form
    let pivots: Vec<usize> = echelon.iter().map(|(p, _)| *p).collect();
    for i in (0..echelon.len()).rev() {
        for j in 0..i {
            let c = echelon[j].1[echelon[i].0].clone();
            if !c.is_zero() {
                let (left, right) = echelon.split_at_mut(i);
                for (x, y) in left[j].1.iter_mut().zip(&right[0].1) {
                    *x -= &c * y;
                }
            }
        }
    }
    // one basis vector per free column
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (pivot, row) in &echelon {
            v[*pivot] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One generator of a graded Hom space, free as a left module.
pub struct HomGenerator {
    pub degree: i64,
    pub map: BimoduleMap,
}

/// The result of the degreewise Hom solver: a left-module basis (the free
/// generators) and, for reference, the full solution dimension per degree.
pub struct HomBasis {
    pub generators: Vec<HomGenerator>,
    pub solution_dims: BTreeMap<i64, usize>,
}

impl HomBasis {
    pub fn degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.degree).collect()
    }
}

/// The layout of the unknown coefficients for maps of one fixed degree:
/// blocks indexed by (cod label, dom label), each a list of exponent
/// vectors.
struct UnknownLayout {
    index: BTreeMap<(usize, usize, Vec<u32>), usize>,
    slots: Vec<(usize, usize, Vec<u32>)>,
}

impl UnknownLayout {
    fn build(vars: usize, dom: &[u8], cod: &[u8], degree: i64) -> UnknownLayout {
        let mut index = BTreeMap::new();
        let mut slots = Vec::new();
        for i in 0..(1usize << cod.len()) {
            for j in 0..(1usize << dom.len()) {
                let t = degree + label_degree(dom, j as u64) - label_degree(cod, i as u64);
                if t < 0 || t % 2 != 0 {
                    continue;
                }
                for e in monomials_of_degree(vars, (t / 2) as u32) {
                    index.insert((i, j, e.clone()), slots.len());
                    slots.push((i, j, e));
                }
            }
        }
        UnknownLayout { index, slots }
    }

    fn vector_of_map(&self, map: &BimoduleMap) -> Option<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.slots.len()];
        for i in 0..(1usize << map.cod_word().len()) {
            for j in 0..(1usize << map.dom_word().len()) {
                for (e, c) in map.entry(i, j).terms() {
                    let slot = self.index.get(&(i, j, e.clone()))?;
                    v[*slot] = c.clone();
                }
            }
        }
        Some(v)
    }

    fn map_of_vector(
        &self,
        vars: usize,
        dom: &[u8],
        cod: &[u8],
        degree: i64,
        v: &[BigRational],
    ) -> BimoduleMap {
        let mut map = BimoduleMap::zero(vars, dom, cod, degree).unwrap();
        for (slot, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (i, j, e) = &self.slots[slot];
                map.entries[*i][*j].add_term(e.clone(), c.clone());
            }
        }
        map
    }
}

/// Computes a left-module basis of the graded bimodule maps from the
/// Bott-Samelson bimodule of `dom` to that of `cod`, solving the
/// right-linearity equations degree by degree. Degrees are scanned from the
/// lowest where a nonzero map can exist up to the top basis degree gap plus
/// `extra_degree` (pass 4 for the default window).
pub fn hom_basis(
    vars: usize,
    dom: &[u8],
    cod: &[u8],
    extra_degree: i64,
) -> Result<HomBasis, LabError> {
    validate_word(vars, dom)?;
    validate_word(vars, cod)?;
    let dom_degs: Vec<i64> = (0..(1u64 << dom.len())).map(|l| label_degree(dom, l)).collect();
    let cod_degs: Vec<i64> = (0..(1u64 << cod.len())).map(|l| label_degree(cod, l)).collect();
    let lo = cod_degs.iter().min().unwrap() - dom_degs.iter().max().unwrap();
    let hi = cod_degs.iter().max().unwrap() - dom_degs.iter().min().unwrap() + extra_degree;

    // right multiplication of every basis element by every variable, in
    // coordinates
    let dom_action: Vec<Vec<BTreeMap<u64, MultiPoly>>> = (0..vars)
        .map(|k| {
            let xk = MultiPoly::var(vars, k);
            (0..(1u64 << dom.len()))
                .map(|j| {
                    let t = basis_elt(vars, dom, j).mul_right(&xk);
                    t.coords().map(|(l, p)| (l, p.clone())).collect()
                })
                .collect()
        })
        .collect();
    let cod_action: Vec<Vec<BTreeMap<u64, MultiPoly>>> = (0..vars)
        .map(|k| {
            let xk = MultiPoly::var(vars, k);
            (0..(1u64 << cod.len()))
                .map(|i| {
                    let t = basis_elt(vars, cod, i).mul_right(&xk);
                    t.coords().map(|(l, p)| (l, p.clone())).collect()
                })
                .collect()
        })
        .collect();

    let mut generators: Vec<HomGenerator> = Vec::new();
    let mut solution_dims = BTreeMap::new();
    for d in lo..=hi {
        let layout = UnknownLayout::build(vars, dom, cod, d);
        if layout.slots.is_empty() {
            continue;
        }
        // equations: for each variable k, dom label j, cod label i, monomial
        let mut eq_rows: BTreeMap<(usize, usize, usize, Vec<u32>), Vec<BigRational>> =
            BTreeMap::new();
        let mut touch = |key: (usize, usize, usize, Vec<u32>), col: usize, c: BigRational, n: usize| {
            let row = eq_rows.entry(key).or_insert_with(|| vec![BigRational::zero(); n]);
            row[col] += c;
        };
        let n = layout.slots.len();
        for (col, (i0, j0, e0)) in layout.slots.iter().enumerate() {
            for k in 0..vars {
                // the unknown f_{i0 j0} x^{e0} contributes to T(b_j . x_k)
                // wherever b_j . x_k has a coordinate at j0 ...
                for (j, coords) in dom_action[k].iter().enumerate() {
                    if let Some(c) = coords.get(&(*j0 as u64)) {
                        for (em, cm) in c.terms() {
                            let e: Vec<u32> = em.iter().zip(e0).map(|(a, b)| a + b).collect();
                            touch((k, j, *i0, e), col, cm.clone(), n);
                        }
                    }
                }
                // ... and to T(b_{j0}) . x_k through the coordinates of
                // b_{i0} . x_k
                for (i, c) in &cod_action[k][*i0] {
                    for (em, cm) in c.terms() {
                        let e: Vec<u32> = em.iter().zip(e0).map(|(a, b)| a + b).collect();
                        touch((k, *j0, *i as usize, e), col, -cm.clone(), n);
                    }
                }
            }
        }
        let solutions = nullspace(eq_rows.into_values().collect(), n);
        solution_dims.insert(d, solutions.len());

        // span of left multiples of the generators already found
        let mut old = RowSpace::new();
        for g in &generators {
            let gap = d - g.degree;
            if gap < 0 || gap % 2 != 0 {
                continue;
            }
            for e in monomials_of_degree(vars, (gap / 2) as u32) {
                let shifted = g.map.mul_left(&MultiPoly::monomial(vars, e, BigRational::one()));
                let v = layout
                    .vector_of_map(&shifted)
                    .expect("left multiples of solutions stay in the unknown window");
                old.insert(v);
            }
        }
        let old_rank = old.rank();
        let mut new_here = 0;
        for v in solutions {
            if old.insert(v.clone()) {
                let map = layout.map_of_vector(vars, dom, cod, d, &v);
                debug_assert!(map.is_homogeneous());
                debug_assert!(map.is_bimodule_map());
                generators.push(HomGenerator { degree: d, map });
                new_here += 1;
            }
        }
        debug_assert_eq!(old.rank(), old_rank + new_here);
    }
    Ok(HomBasis { generators, solution_dims })
}

/// The endomorphisms of B_s, solved with the default degree window.
pub fn hom_basis_bs_bs(vars: usize) -> Result<HomBasis, LabError> {
    hom_basis(vars, &[0], &[0], 4)
}

/// Decides whether the Bott-Samelson bimodule of `word` is generated as a
/// bimodule by the top tensor 1(x)...(x)1, comparing the span of
/// p . (top tensor) . q against the whole module degree by degree up to the
/// top basis degree.
pub fn cyclic_generation_check(vars: usize, word: &[u8]) -> Result<bool, LabError> {
    let unit = TensorElt::bs_unit(vars, word)?;
    let m = word.len() as i64;
    for d in (-m..=m).step_by(2) {
        // coordinate layout of the degree-d component
        let mut index: BTreeMap<(u64, Vec<u32>), usize> = BTreeMap::new();
        for label in 0u64..(1 << word.len()) {
            let t = d - (2 * label.count_ones() as i64 - m);
            if t < 0 || t % 2 != 0 {
                continue;
            }
            for e in monomials_of_degree(vars, (t / 2) as u32) {
                let next = index.len();
                index.insert((label, e), next);
            }
        }
        let full_dim = index.len();
        if full_dim == 0 {
            continue;
        }
        let mut span = RowSpace::new();
        let budget = ((d + m) / 2) as u32;
        'outer: for left_deg in 0..=budget {
            for el in monomials_of_degree(vars, left_deg) {
                for er in monomials_of_degree(vars, budget - left_deg) {
                    let t = unit
                        .mul_left(&MultiPoly::monomial(vars, el.clone(), BigRational::one()))
                        .mul_right(&MultiPoly::monomial(vars, er, BigRational::one()));
                    let mut v = vec![BigRational::zero(); full_dim];
                    for (label, p) in t.coords() {
                        for (e, c) in p.terms() {
                            v[index[&(label, e.clone())]] = c.clone();
                        }
                    }
                    span.insert(v);
                    if span.rank() == full_dim {
                        break 'outer;
                    }
                }
            }
        }
        if span.rank() < full_dim {
            return Ok(false);
        }
    }
    Ok(true)
}
