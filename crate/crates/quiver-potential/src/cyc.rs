use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

/// Integer coefficients of the `d`-th cyclotomic polynomial, lowest degree
/// first.
pub fn cyclotomic(d: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    assert!(d >= 1, "cyclotomic polynomials start at d = 1");
    let mut num = vec![0i64; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in (1..d).filter(|e| d % e == 0) {
        num = exact_div(&num, &cyclotomic(e));
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Euler's totient, the degree of the `d`-th cyclotomic field.
pub fn phi(d: usize) -> usize {
    cyclotomic(d).len() - 1
}

/// An element of `Q(z)` with `z` a primitive `d`-th root of unity, stored
/// as its coefficient vector modulo the cyclotomic polynomial.
#[derive(Clone)]
pub struct Cyc {
    d: usize,
    c: Vec<BigRational>,
}

fn reduce(d: usize, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let p = cyclotomic(d);
    let deg = p.len() - 1;
    for i in (deg..v.len()).rev() {
        let lead = std::mem::take(&mut v[i]);
        if lead.is_zero() {
            continue;
        }
        for (j, &pj) in p.iter().enumerate().take(deg) {
            if pj != 0 {
                v[i - deg + j] -= &lead * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

impl Cyc {
    pub fn zero(d: usize) -> Cyc {
        Cyc { d, c: vec![BigRational::zero(); phi(d)] }
    }

    pub fn one(d: usize) -> Cyc {
        Cyc::rational(d, BigRational::one())
    }

    pub fn rational(d: usize, q: BigRational) -> Cyc {
        let mut x = Cyc::zero(d);
        x.c[0] = q;
        x
    }

    pub fn int(d: usize, k: i64) -> Cyc {
        Cyc::rational(d, BigRational::from_integer(k.into()))
    }

    pub fn frac(d: usize, p: i64, q: i64) -> Cyc {
        Cyc::rational(d, BigRational::new(p.into(), q.into()))
    }

    /// `z^e`.
    pub fn zeta(d: usize, e: i64) -> Cyc {
        let e = e.rem_euclid(d as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Cyc { d, c: reduce(d, v) }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then(|| &self.c[0])
    }

    fn promote(&self, d: usize) -> Cyc {
        if self.d == d {
            return self.clone();
        }
        let q = self.as_rational().expect("elements of different cyclotomic fields");
        Cyc::rational(d, q.clone())
    }

    fn common(a: &Cyc, b: &Cyc) -> usize {
        if a.d == b.d || b.as_rational().is_some() {
            a.d
        } else {
            b.d
        }
    }

    pub fn inv(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyc::rational(self.d, q.recip()));
        }
        let p: Vec<BigRational> = cyclotomic(self.d).iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let s = poly_inverse_mod(&trim(self.c.clone()), &p);
        Some(Cyc { d: self.d, c: reduce(self.d, s) })
    }

    /// Image under `z -> z^e`, a field automorphism when `e` is prime to `d`.
    pub fn galois(&self, e: i64) -> Cyc {
        let mut out = Cyc::zero(self.d);
        for (i, q) in self.c.iter().enumerate() {
            if !q.is_zero() {
                out += &(&Cyc::zeta(self.d, e * i as i64) * &Cyc::rational(self.d, q.clone()));
            }
        }
        out
    }
}

/// Rational elements compare equal across fields.
impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        if self.d == other.d {
            return self.c == other.c;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Cyc {}

impl std::hash::Hash for Cyc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.as_rational() {
            Some(q) => q.hash(state),
            None => (self.d, &self.c).hash(state),
        }
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + b.len() - 1] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    (q, trim(r))
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[BigRational], p: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (p.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs.len()), BigRational::zero());
        for (i, x) in qs.into_iter().enumerate() {
            s2[i] -= x;
        }
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, trim(s2));
    }
    let g = r0[0].clone();
    s0.into_iter().map(|x| x / &g).collect()
}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        let d = Cyc::common(self, rhs);
        let (a, b) = (self.promote(d), rhs.promote(d));
        Cyc { d, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        let d = Cyc::common(self, rhs);
        if let Some(q) = self.as_rational() {
            return Cyc { d, c: rhs.promote(d).c.iter().map(|x| x * q).collect() };
        }
        if let Some(q) = rhs.as_rational() {
            return Cyc { d, c: self.promote(d).c.iter().map(|x| x * q).collect() };
        }
        Cyc { d, c: reduce(d, poly_mul(&self.c, &rhs.c)) }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { d: self.d, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, rhs: &Cyc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyc> for Cyc {
    fn sub_assign(&mut self, rhs: &Cyc) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.c.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coeff}{}z", if coeff.is_empty() { "" } else { " " })?,
                _ => write!(f, "{coeff}{}z^{i}", if coeff.is_empty() { "" } else { " " })?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn display() {
        assert_eq!(Cyc::zeta(3, 2).to_string(), "-z - 1");
        assert_eq!(Cyc::frac(9, -1, 9).to_string(), "-1/9");
        assert_eq!(Cyc::zero(5).to_string(), "0");
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let x = &Cyc::one(5) + &Cyc::zeta(5, 1);
        assert!((&x * &x.inv().unwrap()).is_one());
    }
}
