//! Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).
//!
//! Coxeter group elements are compared through their action on the root
//! system, so the scalar ring must decide equality exactly. Elements here are
//! polynomials in t = 2cos(pi/N) reduced modulo the minimal polynomial of t;
//! the reduced coefficient vector is a canonical form, hence equality and
//! hashing are structural. The values 2cos(k*pi/N) are recovered from t with
//! the Chebyshev-style recurrence D_{k+1} = t*D_k - D_{k-1}, which encodes
//! the product rule 2cos(a)2cos(b) = 2cos(a+b) + 2cos(a-b).

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Little-endian integer polynomial helpers for the minimal-polynomial setup.
mod zpoly {
    use super::BigInt;
    use num_traits::Zero;

    pub fn trim(p: &mut Vec<BigInt>) {
        while p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); n + 1];
        p[0] = BigInt::from(-1);
        p[n] = BigInt::from(1);
        p
    }

    /// Exact division by a monic divisor; panics if the division leaves a
    /// remainder, which would mean the cyclotomic bookkeeping is wrong.
    pub fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        assert!(den.last().map_or(false, |c| c == &BigInt::from(1)));
        let mut rem: Vec<BigInt> = num.to_vec();
        trim(&mut rem);
        let dd = den.len() - 1;
        if rem.len() < den.len() {
            assert!(rem.is_empty(), "non-exact polynomial division");
            return vec![];
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        trim(&mut rem);
        assert!(rem.is_empty(), "non-exact polynomial division");
        quot
    }

    /// Cyclotomic polynomial, by dividing x^n - 1 by all proper-divisor
    /// cyclotomics.
    pub fn cyclotomic(n: usize) -> Vec<BigInt> {
        let mut table: Vec<Option<Vec<BigInt>>> = vec![None; n + 1];
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let mut p = x_pow_minus_one(d);
            for e in 1..d {
                if d % e == 0 {
                    p = div_exact_monic(&p, table[e].as_ref().unwrap());
                }
            }
            table[d] = Some(p);
        }
        table[n].take().unwrap()
    }
}

/// Minimal polynomial of 2cos(pi/N) over Q, little-endian, monic.
///
/// For N >= 2 this compresses the (palindromic) cyclotomic polynomial of
/// order 2N through the substitution y = z + 1/z.
fn two_cos_min_poly(n: u32) -> Vec<BigInt> {
    if n == 1 {
        // 2cos(pi) = -2
        return vec![BigInt::from(2), BigInt::from(1)];
    }
    let phi = zpoly::cyclotomic(2 * n as usize);
    let m = phi.len() - 1;
    assert!(m % 2 == 0);
    let half = m / 2;
    let mut rem = phi;
    let mut psi = vec![BigInt::zero(); half + 1];
    // peel z^{half-k}(z^2+1)^k, whose top term is z^{half+k}
    for k in (0..=half).rev() {
        let b = rem[half + k].clone();
        psi[k] = b.clone();
        if b.is_zero() {
            continue;
        }
        // binomial expansion of z^{half-k}(z^2+1)^k
        let mut binom = BigInt::one();
        for j in 0..=k {
            rem[half - k + 2 * j] -= &b * &binom;
            binom = binom * BigInt::from((k - j) as i64) / BigInt::from((j + 1) as i64);
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "palindromic compression failed");
    psi
}

/// An element of Q(2cos(pi/N)) in reduced coordinates over the power basis
/// {1, t, ..., t^{d-1}}. Always interpret through the owning [`CosField`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgNum {
    coeffs: Vec<BigRational>,
}

impl AlgNum {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &AlgNum) -> AlgNum {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        AlgNum { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &AlgNum) -> AlgNum {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        AlgNum { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> AlgNum {
        AlgNum { coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }
}

/// Arithmetic context for one value of N: minimal polynomial, reduction
/// table for high powers of t, and the table of 2cos(k*pi/N).
#[derive(Clone, Debug)]
pub struct CosField {
    n: u32,
    degree: usize,
    minpoly: Vec<BigInt>,
    /// t^j reduced, for j in 0..2*degree-1.
    powers: Vec<Vec<BigRational>>,
    /// 2cos(k*pi/N) for k in 0..=N.
    cos_table: Vec<AlgNum>,
}

impl CosField {
    pub fn new(n: u32) -> CosField {
        assert!(n >= 1);
        let minpoly = two_cos_min_poly(n);
        let degree = minpoly.len() - 1;
        let mp_rat: Vec<BigRational> =
            minpoly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(2 * degree);
        for j in 0..(2 * degree).max(1) {
            if j < degree {
                let mut row = vec![BigRational::zero(); degree];
                row[j] = BigRational::one();
                powers.push(row);
            } else {
                // t^j = t * t^{j-1} reduced
                let prev = powers[j - 1].clone();
                let mut row = vec![BigRational::zero(); degree + 1];
                for (i, c) in prev.iter().enumerate() {
                    row[i + 1] = c.clone();
                }
                let lead = row[degree].clone();
                if !lead.is_zero() {
                    for i in 0..degree {
                        let adj = &lead * &mp_rat[i];
                        row[i] -= adj;
                    }
                }
                row.truncate(degree);
                powers.push(row);
            }
        }
        let mut field = CosField { n, degree, minpoly, powers, cos_table: Vec::new() };
        // D_0 = 2, D_1 = t, D_{k+1} = t*D_k - D_{k-1}
        let mut table = Vec::with_capacity(n as usize + 1);
        table.push(field.from_int(2));
        if n >= 1 {
            let t = field.generator();
            table.push(t.clone());
            for k in 2..=n as usize {
                let next = field.mul(&t, &table[k - 1]).sub(&table[k - 2]);
                table.push(next);
            }
        }
        field.cos_table = table;
        debug_assert_eq!(field.cos_table[n as usize], field.from_int(-2), "2cos(pi) must reduce to -2");
        field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Minimal polynomial of the generator over Q, little-endian and monic.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// The generator t = 2cos(pi/N) itself (reduced, so rational when the
    /// field is trivial).
    pub fn generator(&self) -> AlgNum {
        AlgNum { coeffs: self.powers[1.min(self.powers.len() - 1)].clone() }
    }

    pub fn zero(&self) -> AlgNum {
        AlgNum { coeffs: vec![BigRational::zero(); self.degree] }
    }

    pub fn one(&self) -> AlgNum {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> AlgNum {
        self.from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(&self, r: BigRational) -> AlgNum {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[0] = r;
        AlgNum { coeffs }
    }

    /// 2cos(k*pi/N) for any integer k, via parity and period folding.
    pub fn two_cos(&self, k: i64) -> AlgNum {
        let period = 2 * self.n as i64;
        let mut k = k.rem_euclid(period);
        if k > self.n as i64 {
            k = period - k;
        }
        self.cos_table[k as usize].clone()
    }

    pub fn mul(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        let d = self.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                conv[i + j] += ca * cb;
            }
        }
        let mut out = vec![BigRational::zero(); d];
        for (j, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < d {
                out[j] += c;
            } else {
                for (i, p) in self.powers[j].iter().enumerate() {
                    out[i] += &c * p;
                }
            }
        }
        AlgNum { coeffs: out }
    }

    pub fn to_f64(&self, a: &AlgNum) -> f64 {
        let t = 2.0 * (std::f64::consts::PI / self.n as f64).cos();
        let mut acc = 0.0;
        for c in a.coeffs.iter().rev() {
            acc = acc * t + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Renders as a rational combination of cos(k*pi/N), using that the
    /// Chebyshev polynomials D_k are monic and triangular in the power basis.
    pub fn to_cos_string(&self, a: &AlgNum) -> String {
        let mut rest = a.coeffs.clone();
        let mut parts: Vec<(usize, BigRational)> = Vec::new(); // (k, coefficient of cos(k pi/N))
        for j in (1..self.degree).rev() {
            let c = rest[j].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in self.cos_table[j].coeffs.iter().enumerate() {
                rest[i] -= &c * d;
            }
            parts.push((j, c * BigRational::from_integer(BigInt::from(2))));
        }
        let constant = rest[0].clone();
        debug_assert!(rest.iter().skip(1).all(|c| c.is_zero()));
        let mut out = String::new();
        if !constant.is_zero() || parts.is_empty() {
            out.push_str(&format_rational(&constant));
        }
        for (k, c) in parts.into_iter().rev() {
            let g = gcd(k as u64, self.n as u64);
            let (num, den) = (k as u64 / g, self.n as u64 / g);
            let angle = if num == 1 { format!("pi/{den}") } else { format!("{num}pi/{den}") };
            if out.is_empty() {
                if c == -BigRational::one() {
                    let _ = write!(out, "-cos({angle})");
                } else if c.is_one() {
                    let _ = write!(out, "cos({angle})");
                } else {
                    let _ = write!(out, "{}*cos({angle})", format_rational(&c));
                }
            } else if c.is_negative() {
                let abs = -&c;
                if abs.is_one() {
                    let _ = write!(out, " - cos({angle})");
                } else {
                    let _ = write!(out, " - {}*cos({angle})", format_rational(&abs));
                }
            } else if c.is_one() {
                let _ = write!(out, " + cos({angle})");
            } else {
                let _ = write!(out, " + {}*cos({angle})", format_rational(&c));
            }
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense square matrix over one [`CosField`], row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CosMatrix {
    size: usize,
    entries: Vec<AlgNum>,
}

impl CosMatrix {
    pub fn from_entries(size: usize, entries: Vec<AlgNum>) -> CosMatrix {
        assert_eq!(entries.len(), size * size);
        CosMatrix { size, entries }
    }

    pub fn identity(field: &CosField, size: usize) -> CosMatrix {
        let mut entries = vec![field.zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = field.one();
        }
        CosMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn at(&self, row: usize, col: usize) -> &AlgNum {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: AlgNum) {
        self.entries[row * self.size + col] = value;
    }

    pub fn mul(&self, field: &CosField, rhs: &CosMatrix) -> CosMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = entries[i * n + j].add(&field.mul(a, b));
                }
            }
        }
        CosMatrix { size: n, entries }
    }

    pub fn pow(&self, field: &CosField, mut exp: u32) -> CosMatrix {
        let mut base = self.clone();
        let mut acc = CosMatrix::identity(field, self.size);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> CosMatrix {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                entries.push(self.at(i, j).clone());
            }
        }
        CosMatrix { size: n, entries }
    }

    pub fn is_identity(&self, field: &CosField) -> bool {
        *self == CosMatrix::identity(field, self.size)
    }

    /// Exact determinant via Laplace expansion memoized on column subsets;
    /// fine for the small ranks that occur here.
    pub fn det(&self, field: &CosField) -> AlgNum {
        let n = self.size;
        assert!(n <= 20, "determinant expansion is for small ranks");
        let mut memo: HashMap<u64, AlgNum> = HashMap::new();
        memo.insert(0, field.one());
        self.det_rec(field, ((1u64 << n) - 1) as u64, &mut memo)
    }

    fn det_rec(&self, field: &CosField, mask: u64, memo: &mut HashMap<u64, AlgNum>) -> AlgNum {
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let row = self.size - mask.count_ones() as usize;
        let mut acc = field.zero();
        let mut sign_negative = false;
        for col in 0..self.size {
            let bit = 1u64 << col;
            if mask & bit == 0 {
                continue;
            }
            let entry = self.at(row, col);
            if !entry.is_zero() {
                let sub = self.det_rec(field, mask & !bit, memo);
                let term = field.mul(entry, &sub);
                acc = if sign_negative { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_negative = !sign_negative;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(f: &CosField, k: i64) -> AlgNum {
        f.from_int(k)
    }

    #[test]
    fn minimal_polynomials_of_small_orders() {
        // 2cos(pi/3) = 1, 2cos(pi/2) = 0, 2cos(pi/4) = sqrt2, 2cos(pi/5) = golden
        assert_eq!(two_cos_min_poly(3), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(two_cos_min_poly(2), vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(two_cos_min_poly(4), vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]);
        assert_eq!(
            two_cos_min_poly(5),
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(two_cos_min_poly(1), vec![BigInt::from(2), BigInt::from(1)]);
        // degrees are phi(2N)/2
        assert_eq!(two_cos_min_poly(30).len() - 1, 8);
        assert_eq!(two_cos_min_poly(7).len() - 1, 3);
    }

    #[test]
    fn generator_is_a_root_numerically() {
        for n in [5u32, 7, 12, 30] {
            let psi = two_cos_min_poly(n);
            let t = 2.0 * (std::f64::consts::PI / n as f64).cos();
            let mut acc = 0.0;
            for c in psi.iter().rev() {
                acc = acc * t + c.to_f64().unwrap();
            }
            assert!(acc.abs() < 1e-9, "psi_{n}(2cos(pi/{n})) = {acc}");
        }
    }

    #[test]
    fn trivial_field_collapses_to_rationals() {
        let f = CosField::new(3);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.two_cos(1), int(&f, 1)); // 2cos(pi/3) = 1
        assert_eq!(f.two_cos(2), int(&f, -1));
        assert_eq!(f.mul(&f.two_cos(1), &f.two_cos(1)), int(&f, 1));
    }

    #[test]
    fn chebyshev_product_identity() {
        for n in [5u32, 7, 12, 30] {
            let f = CosField::new(n);
            for a in 0..=n as i64 {
                for b in 0..=n as i64 {
                    let lhs = f.mul(&f.two_cos(a), &f.two_cos(b));
                    let rhs = f.two_cos(a + b).add(&f.two_cos(a - b));
                    assert_eq!(lhs, rhs, "N={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn cos_values_match_floating_point() {
        for n in [4u32, 5, 12, 30] {
            let f = CosField::new(n);
            for k in 0..=n as i64 {
                let exact = f.to_f64(&f.two_cos(k));
                let float = 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos();
                assert!((exact - float).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn folding_respects_parity_and_period() {
        let f = CosField::new(7);
        assert_eq!(f.two_cos(-3), f.two_cos(3));
        assert_eq!(f.two_cos(7 + 2), f.two_cos(14 - 9));
        assert_eq!(f.two_cos(20), f.two_cos(20 - 14));
    }

    #[test]
    fn cos_string_rendering() {
        let f = CosField::new(5);
        let x = f.two_cos(1).scale(&BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(f.to_cos_string(&x), "-cos(pi/5)");
        assert_eq!(f.to_cos_string(&f.from_int(3)), "3");
        let half = f.from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(f.to_cos_string(&half), "-1/2");
    }

    #[test]
    fn matrix_algebra_and_determinant() {
        let f = CosField::new(5);
        let t = f.generator();
        // [[t, 1], [1, 0]] has determinant -1
        let m = CosMatrix::from_entries(2, vec![t.clone(), f.one(), f.one(), f.zero()]);
        assert_eq!(m.det(&f), f.from_int(-1));
        let m2 = m.mul(&f, &m);
        // top-left of m^2 is t^2 + 1 = t + 2 in Q(golden)
        assert_eq!(*m2.at(0, 0), t.add(&f.from_int(2)));
        assert_eq!(m.pow(&f, 2), m2);
        assert!(CosMatrix::identity(&f, 3).is_identity(&f));
        assert_eq!(CosMatrix::identity(&f, 4).det(&f), f.one());
    }
}
