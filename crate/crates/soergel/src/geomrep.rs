//! The reflection representation over exact cyclotomic-real scalars.
//!
//! The symmetric bilinear form has (alpha_s, alpha_t) = -cos(pi/m_st) off the
//! diagonal and 1 on it; each generator acts by the reflection
//! `s(x) = x - 2(x, alpha_s) alpha_s` in the basis of simple roots. All
//! entries live in Q(2cos(pi/N)) with N the lcm of the finite bond orders, so
//! every check below is exact.

use crate::algnum::{AlgNum, CosField, CosMatrix};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, EltId};

/// The Gram matrix of the form on the simple roots. Infinite bonds take the
/// limiting value -1; the second component reports whether any occurred.
pub fn build_form(matrix: &CoxeterMatrix, field: &CosField) -> (CosMatrix, bool) {
    let n = matrix.rank();
    let mut g = CosMatrix::identity(field, n);
    let mut saw_infinite = false;
    let half = num_rational::BigRational::new(1.into(), 2.into());
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let m = matrix.get(s, t);
            // -cos(pi/m) = -(1/2) * 2cos(k*pi/N) with k = N/m
            let val = if m == 0 {
                saw_infinite = true;
                field.from_int(-1)
            } else {
                debug_assert_eq!(field.n() % m, 0);
                field.two_cos((field.n() / m) as i64).scale(&-half.clone())
            };
            g.set(s, t, val);
        }
    }
    (g, saw_infinite)
}

/// Matrices of the simple reflections acting on the root basis (row-vector
/// convention is irrelevant here: the matrices below satisfy the defining
/// relations and are taken as the representation).
pub fn reflection_matrices(matrix: &CoxeterMatrix, field: &CosField) -> Vec<CosMatrix> {
    let n = matrix.rank();
    let (form, _) = build_form(matrix, field);
    let mut out = Vec::with_capacity(n);
    let two = field.from_int(2);
    for s in 0..n {
        let mut m = CosMatrix::identity(field, n);
        for j in 0..n {
            let mut entry = field.mul(&two, form.at(s, j)).neg();
            if s == j {
                entry = entry.add(&field.one());
            }
            m.set(s, j, entry);
        }
        out.push(m);
    }
    out
}

pub struct GeomRep {
    matrix: CoxeterMatrix,
    field: CosField,
    form: CosMatrix,
    gens: Vec<CosMatrix>,
    infinite_bond: bool,
}

impl GeomRep {
    pub fn new(matrix: &CoxeterMatrix) -> GeomRep {
        let field = CosField::new(matrix.cos_order());
        let (form, infinite_bond) = build_form(matrix, &field);
        let gens = reflection_matrices(matrix, &field);
        GeomRep { matrix: matrix.clone(), field, form, gens, infinite_bond }
    }

    pub fn field(&self) -> &CosField {
        &self.field
    }

    pub fn form(&self) -> &CosMatrix {
        &self.form
    }

    pub fn form_entry(&self, s: usize, t: usize) -> &AlgNum {
        self.form.at(s, t)
    }

    pub fn reflection(&self, s: usize) -> &CosMatrix {
        &self.gens[s]
    }

    pub fn has_infinite_bond(&self) -> bool {
        self.infinite_bond
    }

    /// Checks the defining relations against `claimed`, returning the pairs
    /// (s, t), s <= t, whose relation fails; infinite bonds are skipped.
    /// Passing the rep's own matrix verifies the construction.
    pub fn verify_relations_against(&self, claimed: &CoxeterMatrix) -> Vec<(usize, usize)> {
        let n = self.matrix.rank().min(claimed.rank());
        let mut bad = Vec::new();
        for s in 0..n {
            let sq = self.gens[s].mul(&self.field, &self.gens[s]);
            if !sq.is_identity(&self.field) {
                bad.push((s, s));
            }
            for t in (s + 1)..n {
                let m = claimed.get(s, t);
                if m == 0 {
                    continue;
                }
                let st = self.gens[s].mul(&self.field, &self.gens[t]);
                if !st.pow(&self.field, m).is_identity(&self.field) {
                    bad.push((s, t));
                }
            }
        }
        bad
    }

    pub fn verify_relations(&self) -> Vec<(usize, usize)> {
        self.verify_relations_against(&self.matrix)
    }

    /// The matrix of an enumerated element, as the product of its normal
    /// word's reflections.
    pub fn element_matrix(&self, sys: &CoxeterSystem, x: EltId) -> CosMatrix {
        let mut m = CosMatrix::identity(&self.field, self.matrix.rank());
        for &s in sys.word(x) {
            m = m.mul(&self.field, &self.gens[s as usize]);
        }
        m
    }

    /// Matrices of all elements, reusing each element's parent product.
    pub fn all_element_matrices(&self, sys: &CoxeterSystem) -> Vec<CosMatrix> {
        let mut mats = Vec::with_capacity(sys.size());
        mats.push(CosMatrix::identity(&self.field, self.matrix.rank()));
        for x in sys.elements().skip(1) {
            let (p, s) = sys.parent(x);
            let m = mats[p.0 as usize].mul(&self.field, &self.gens[s as usize]);
            mats.push(m);
        }
        mats
    }

    /// True when distinct group elements act by distinct matrices.
    pub fn faithfulness_check(&self, sys: &CoxeterSystem) -> bool {
        let mats = self.all_element_matrices(sys);
        let mut seen = std::collections::HashSet::with_capacity(mats.len());
        for m in mats {
            if !seen.insert(m) {
                return false;
            }
        }
        true
    }

    /// Whether `B^T G B = G` for the given matrix.
    pub fn preserves_form(&self, b: &CosMatrix) -> bool {
        let bt = b.transpose();
        bt.mul(&self.field, &self.form).mul(&self.field, b) == self.form
    }
}
