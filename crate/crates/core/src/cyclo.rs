//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! A [`Cyclo`] stores an element of Q[x] reduced modulo the N-th cyclotomic
//! polynomial, with arbitrary-precision rational coefficients. All totally
//! real irrationalities needed by the catalog (sqrt 2, sqrt 5, the golden
//! ratio, cosines of rational angles) live in some Q(zeta_N), so this single
//! scalar type carries every matrix entry in the engine. Equality is exact;
//! mixed-conductor operands are silently promoted to the least common
//! conductor.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn divisors(n: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// Integer coefficients of the N-th cyclotomic polynomial, low degree first,
/// including the leading 1.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = poly_div_exact(&num, &phi_d);
    }
    num
}

/// Exact division of integer polynomials (low degree first). Panics if the
/// division is not exact; cyclotomic factorizations always are.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let nd = rem.len() - 1;
    if nd < dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for j in 0..=dd {
            rem[k + j] -= &c * &den[j];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Per-conductor context: the cyclotomic polynomial and a reduction table for
/// x^k with k up to 2*phi(N)-2, enough to fold schoolbook products.
pub(crate) struct FieldCtx {
    pub n: u32,
    pub phi: usize,
    /// pow_table[k] = coefficients of x^(phi+k) mod Phi_N, k = 0..phi-1.
    pow_table: Vec<Vec<BigRational>>,
}

impl FieldCtx {
    fn new(n: u32) -> FieldCtx {
        let phi = euler_phi(n);
        let poly = cyclotomic_poly(n);
        debug_assert_eq!(poly.len(), phi + 1);
        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(phi);
        let first: Vec<BigRational> = (0..phi)
            .map(|i| BigRational::from_integer(-poly[i].clone()))
            .collect();
        rows.push(first);
        for k in 1..phi {
            // x^(phi+k) = x * x^(phi+k-1)
            let prev = rows[k - 1].clone();
            let mut next = vec![BigRational::zero(); phi];
            for i in 0..phi - 1 {
                next[i + 1] = prev[i].clone();
            }
            let top = prev[phi - 1].clone();
            if !top.is_zero() {
                for i in 0..phi {
                    let add = &top * &rows[0][i];
                    next[i] += add;
                }
            }
            rows.push(next);
        }
        FieldCtx { n, phi, pow_table: rows }
    }

    /// Reduce a polynomial of degree < 2*phi-1 modulo Phi_N.
    fn reduce(&self, raw: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.phi {
                out[k] += c;
            } else {
                let row = &self.pow_table[k - self.phi];
                for i in 0..self.phi {
                    if !row[i].is_zero() {
                        out[i] += c * &row[i];
                    }
                }
            }
        }
        out
    }

    /// Coefficient vector of zeta_N^k (k taken mod N) in the power basis.
    fn zeta_pow(&self, k: i64) -> Vec<BigRational> {
        let k = k.rem_euclid(self.n as i64) as usize;
        if k < self.phi {
            let mut v = vec![BigRational::zero(); self.phi];
            v[k] = BigRational::one();
            return v;
        }
        // repeated reduction: x^k for phi <= k < N
        let mut cur = self.pow_table[0].clone(); // x^phi
        for _ in self.phi..k {
            cur = self.mul_by_x(&cur);
        }
        cur
    }

    fn mul_by_x(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut next = vec![BigRational::zero(); self.phi];
        for i in 0..self.phi - 1 {
            next[i + 1] = v[i].clone();
        }
        let top = v[self.phi - 1].clone();
        if !top.is_zero() {
            for i in 0..self.phi {
                let add = &top * &self.pow_table[0][i];
                next[i] += add;
            }
        }
        next
    }
}

fn field_ctx(n: u32) -> Arc<FieldCtx> {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<FieldCtx>>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = reg.lock().unwrap();
    map.entry(n).or_insert_with(|| Arc::new(FieldCtx::new(n))).clone()
}

/// An exact element of the cyclotomic field Q(zeta_N).
#[derive(Clone)]
pub struct Cyclo {
    conductor: u32,
    /// Coefficients in the power basis 1, zeta, ..., zeta^(phi(N)-1).
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Cyclo {
        Cyclo::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Cyclo {
        Cyclo { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Cyclo {
        Cyclo::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn ratio(num: i64, den: i64) -> Cyclo {
        Cyclo::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// zeta_N^k in canonical reduced form.
    pub fn zeta(n: u32, k: i64) -> Cyclo {
        assert!(n >= 1, "conductor must be positive");
        let ctx = field_ctx(n);
        Cyclo { conductor: n, coeffs: ctx.zeta_pow(k) }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Result<Cyclo> {
        let phi = euler_phi(conductor);
        if coeffs.len() != phi {
            return Err(Error::InvalidConstruction(format!(
                "conductor {conductor} needs exactly {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cyclo { conductor, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) when the value is a plain rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Rewrite in the field of conductor `target`; requires conductor | target.
    pub fn promote(&self, target: u32) -> Cyclo {
        if self.conductor == target {
            return self.clone();
        }
        assert!(
            target % self.conductor == 0,
            "promotion target {target} is not a multiple of {}",
            self.conductor
        );
        let ctx = field_ctx(target);
        let step = (target / self.conductor) as i64;
        let mut acc = vec![BigRational::zero(); ctx.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = ctx.zeta_pow(i as i64 * step);
            for j in 0..ctx.phi {
                if !pw[j].is_zero() {
                    acc[j] += c * &pw[j];
                }
            }
        }
        Cyclo { conductor: target, coeffs: acc }
    }

    /// Try to rewrite in the subfield Q(zeta_d); d must divide the conductor.
    pub fn demote(&self, d: u32) -> Result<Cyclo> {
        assert!(self.conductor % d == 0);
        if d == self.conductor {
            return Ok(self.clone());
        }
        let ctx = field_ctx(self.conductor);
        let phi_d = euler_phi(d);
        // Solve sum_j y_j * embed(zeta_d^j) = self over Q.
        let step = (self.conductor / d) as i64;
        let cols: Vec<Vec<BigRational>> =
            (0..phi_d).map(|j| ctx.zeta_pow(j as i64 * step)).collect();
        // Gaussian elimination on the (phi x phi_d) system.
        let rows = ctx.phi;
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi_d).map(|c| cols[c][r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut piv_rows = Vec::new();
        let mut r0 = 0;
        for c in 0..phi_d {
            let Some(p) = (r0..rows).find(|&r| !aug[r][c].is_zero()) else { continue };
            aug.swap(r0, p);
            let inv = aug[r0][c].recip();
            for x in aug[r0].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows {
                if r != r0 && !aug[r][c].is_zero() {
                    let f = aug[r][c].clone();
                    for j in 0..=phi_d {
                        let sub = &f * &aug[r0][j];
                        aug[r][j] -= sub;
                    }
                }
            }
            piv_rows.push((r0, c));
            r0 += 1;
        }
        // consistency
        for r in r0..rows {
            if !aug[r][phi_d].is_zero() {
                return Err(Error::NotInSubfield(d));
            }
        }
        let mut y = vec![BigRational::zero(); phi_d];
        for (r, c) in piv_rows {
            y[c] = aug[r][phi_d].clone();
        }
        Ok(Cyclo { conductor: d, coeffs: y })
    }

    /// Smallest conductor representation of this value.
    pub fn minimized(&self) -> Cyclo {
        for d in divisors(self.conductor) {
            if let Ok(v) = self.demote(d) {
                return v;
            }
        }
        self.clone()
    }

    fn promoted_pair(&self, other: &Cyclo) -> (Cyclo, Cyclo, u32) {
        let n = self.conductor.lcm(&other.conductor);
        (self.promote(n), other.promote(n), n)
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (a, b, n) = self.promoted_pair(other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Cyclo { conductor: n, coeffs }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        let (a, b, n) = self.promoted_pair(other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x - y)
            .collect();
        Cyclo { conductor: n, coeffs }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        let (a, b, n) = self.promoted_pair(other);
        let ctx = field_ctx(n);
        let phi = ctx.phi;
        let mut raw = vec![BigRational::zero(); 2 * phi - 1];
        for i in 0..phi {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..phi {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                raw[i + j] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
        Cyclo { conductor: n, coeffs: ctx.reduce(&raw) }
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_N, which is irreducible over Q.
    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclo {
                conductor: self.conductor,
                coeffs: {
                    let mut v = vec![BigRational::zero(); self.coeffs.len()];
                    v[0] = q.recip();
                    v
                },
            });
        }
        let n = self.conductor;
        let phi = cyclotomic_poly(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect::<Vec<_>>();
        let a: Vec<BigRational> = self.coeffs.clone();
        // extended gcd over Q[x]: s*a + t*phi = gcd (a constant)
        let (g, s) = ext_gcd_poly(&a, &phi);
        debug_assert!(poly_deg(&g) == Some(0));
        let ginv = g[0].recip();
        let ctx = field_ctx(n);
        let mut coeffs = ctx.reduce(&s);
        for c in coeffs.iter_mut() {
            *c = &*c * &ginv;
        }
        Ok(Cyclo { conductor: n, coeffs })
    }

    pub fn div(&self, other: &Cyclo) -> Result<Cyclo> {
        Ok(self.mul(&other.inv()?))
    }

    /// Field automorphism zeta -> zeta^k; k must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Result<Cyclo> {
        let n = self.conductor as i64;
        if k.rem_euclid(n).gcd(&n) != 1 {
            return Err(Error::GaloisNotCoprime { k, n: self.conductor });
        }
        let ctx = field_ctx(self.conductor);
        let mut acc = vec![BigRational::zero(); ctx.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = ctx.zeta_pow(i as i64 * k);
            for j in 0..ctx.phi {
                if !pw[j].is_zero() {
                    acc[j] += c * &pw[j];
                }
            }
        }
        Ok(Cyclo { conductor: self.conductor, coeffs: acc })
    }

    /// Complex conjugation (the automorphism zeta -> zeta^-1).
    pub fn conj(&self) -> Cyclo {
        self.galois(-1).expect("-1 is always coprime to the conductor")
    }

    /// f64 approximation under the embedding zeta_N -> exp(2 pi i / N).
    /// Test-oracle support only; the engine itself never calls this.
    pub fn approx_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let q = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / n;
            re += q * ang.cos();
            im += q * ang.sin();
        }
        (re, im)
    }

    /// Stable byte key for hashing. Values must share one conductor
    /// representation to compare; the conductor is part of the key so
    /// distinct fields never collide.
    pub fn key_bytes(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.conductor.to_le_bytes());
        for c in &self.coeffs {
            let (num, den) = (c.numer(), c.denom());
            let nb = num.to_signed_bytes_le();
            let db = den.to_signed_bytes_le();
            out.extend_from_slice(&(nb.len() as u32).to_le_bytes());
            out.extend_from_slice(&nb);
            out.extend_from_slice(&(db.len() as u32).to_le_bytes());
            out.extend_from_slice(&db);
        }
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    let num = q.numer();
    let den = q.denom();
    // good enough for test tolerances; values in this engine are tiny
    let nf: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Extended gcd of polynomials over Q, returning (g, s) with
/// s*a + t*b = g for some t.
fn ext_gcd_poly(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    while poly_deg(&r1).is_some() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (da, db) = (poly_deg(a), poly_deg(b));
    let (Some(da), Some(db)) = (da, db) else {
        return vec![BigRational::zero()];
    };
    let mut out = vec![BigRational::zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len()];
    loop {
        let Some(dr) = poly_deg(&rem) else { break };
        if dr < db {
            break;
        }
        let f = &rem[dr] / &b[db];
        let shift = dr - db;
        quot[shift] = f.clone();
        for j in 0..=db {
            let sub = &f * &b[j];
            rem[shift + j] -= sub;
        }
    }
    (quot, rem)
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.promoted_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(n={}; ", self.conductor)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            write!(f, "{q}")
        } else {
            fmt::Debug::fmt(self, f)
        }
    }
}

/// Exact cos(2 pi k/m) and sin(2 pi k/m) at conductor lcm(4, m).
pub fn cos_sin(k: i64, m: u32) -> (Cyclo, Cyclo) {
    assert!(m >= 1);
    let n = (4u32).lcm(&m);
    let step = (n / m) as i64;
    let z = Cyclo::zeta(n, k * step);
    let zb = Cyclo::zeta(n, -k * step);
    let half = Cyclo::ratio(1, 2);
    let cos = z.add(&zb).mul(&half);
    let i = Cyclo::zeta(n, (n / 4) as i64);
    let two_i = i.mul(&Cyclo::from_int(2));
    let sin = z.sub(&zb).div(&two_i).expect("2i is nonzero");
    (cos, sin)
}

/// sqrt(2) as zeta_8 + zeta_8^7.
pub fn sqrt2() -> Cyclo {
    Cyclo::zeta(8, 1).add(&Cyclo::zeta(8, 7))
}

/// sqrt(5) as 2(zeta_5 + zeta_5^4) + 1.
pub fn sqrt5() -> Cyclo {
    let t = Cyclo::zeta(5, 1).add(&Cyclo::zeta(5, 4));
    t.mul(&Cyclo::from_int(2)).add(&Cyclo::one())
}

/// The golden ratio (1 + sqrt 5)/2.
pub fn golden() -> Cyclo {
    sqrt5().add(&Cyclo::one()).mul(&Cyclo::ratio(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclo::zeta(4, 1);
        assert_eq!(i.mul(&i), Cyclo::from_int(-1));
    }

    #[test]
    fn zeta6_cubed_is_minus_one() {
        assert_eq!(Cyclo::zeta(6, 3), Cyclo::from_int(-1));
    }

    #[test]
    fn zeta5_plus_conj_satisfies_quadratic() {
        // t = zeta5 + zeta5^4 = 2cos(2pi/5) is the root of x^2 + x - 1
        let t = Cyclo::zeta(5, 1).add(&Cyclo::zeta(5, 4));
        let lhs = t.mul(&t).add(&t).sub(&Cyclo::one());
        assert!(lhs.is_zero());
        let (re, im) = t.approx_complex();
        assert!((re - 0.6180339887498949).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
    }

    #[test]
    fn zeta8_sum_is_sqrt2() {
        let s = sqrt2();
        assert_eq!(s.mul(&s), Cyclo::from_int(2));
    }

    #[test]
    fn zeta_has_multiplicative_order_n_over_gcd() {
        for n in [1u32, 2, 3, 4, 5, 6, 8, 12] {
            for k in 0..n as i64 {
                let z = Cyclo::zeta(n, k);
                let expected = (n as i64) / (n as i64).gcd(&k);
                let mut p = Cyclo::one();
                let mut ord = 0i64;
                loop {
                    p = p.mul(&z);
                    ord += 1;
                    if p == Cyclo::one() {
                        break;
                    }
                    assert!(ord <= n as i64);
                }
                assert_eq!(ord, expected, "zeta({n},{k})");
            }
        }
    }

    #[test]
    fn cos_sin_pythagorean_and_values() {
        let (c, s) = cos_sin(1, 4);
        assert!(c.is_zero());
        assert_eq!(s, Cyclo::one());
        let (c, s) = cos_sin(0, 7);
        assert_eq!(c, Cyclo::one());
        assert!(s.is_zero());
        // cos(2pi/5) = (sqrt5 - 1)/4: check (4c + 1)^2 = 5
        let (c, s) = cos_sin(1, 5);
        let v = c.mul(&Cyclo::from_int(4)).add(&Cyclo::one());
        assert_eq!(v.mul(&v), Cyclo::from_int(5));
        let one = c.mul(&c).add(&s.mul(&s));
        assert_eq!(one, Cyclo::one());
    }

    #[test]
    fn cos_sin_angle_addition() {
        for m in [5u32, 7, 12] {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    let (ca, sa) = cos_sin(a, m);
                    let (cb, sb) = cos_sin(b, m);
                    let (cab, sab) = cos_sin(a + b, m);
                    assert_eq!(cab, ca.mul(&cb).sub(&sa.mul(&sb)));
                    assert_eq!(sab, sa.mul(&cb).add(&ca.mul(&sb)));
                }
            }
        }
    }

    #[test]
    fn galois_moves_sqrt5_to_its_negative() {
        let s = sqrt5();
        let t = s.galois(2).unwrap();
        assert_eq!(t.mul(&t), Cyclo::from_int(5));
        assert!(s.add(&t).is_zero());
        // rationals are fixed
        let r = Cyclo::from_rational(q(22, 7));
        assert_eq!(r.galois(3).unwrap_or_else(|_| r.clone()), r);
    }

    #[test]
    fn galois_composes_multiplicatively() {
        let a = Cyclo::zeta(5, 1).add(&Cyclo::ratio(2, 3));
        let g2 = a.galois(2).unwrap();
        let g23 = g2.galois(3).unwrap();
        assert_eq!(g23, a.galois(6).unwrap());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = Cyclo::zeta(5, 1);
        assert!(matches!(a.div(&Cyclo::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_round_trips() {
        let a = Cyclo::zeta(12, 1).add(&Cyclo::ratio(3, 2));
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Cyclo::one());
    }

    #[test]
    fn promotion_and_equality_across_conductors() {
        // zeta_6^3 = -1 equals the conductor-1 value -1
        assert_eq!(Cyclo::zeta(6, 3), Cyclo::from_int(-1));
        // sqrt2 promoted into Q(zeta_40) still squares to 2
        let s = sqrt2().promote(40);
        assert_eq!(s.mul(&s), Cyclo::from_int(2));
    }

    #[test]
    fn demote_finds_minimal_conductor() {
        let v = Cyclo::zeta(12, 3); // = i, lives in conductor 4
        let m = v.minimized();
        assert_eq!(m.conductor(), 4);
        assert_eq!(m, Cyclo::zeta(4, 1));
        assert!(Cyclo::zeta(5, 1).demote(1).is_err());
    }
}
