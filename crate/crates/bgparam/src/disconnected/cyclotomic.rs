//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

static CYCLOTOMIC_CACHE: Mutex<Option<HashMap<u64, Vec<BigInt>>>> = Mutex::new(None);

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    if let Some(p) = CYCLOTOMIC_CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    CYCLOTOMIC_CACHE.lock().expect("cache").get_or_insert_with(HashMap::new).insert(n, num.clone());
    num
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        q[i] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Element of `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cyclo {
    pub n: u64,
    pub coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero(n: u64) -> Self {
        Cyclo { n, coeffs: vec![BigRational::zero(); euler_phi(n) as usize] }
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = q;
        c
    }

    pub fn from_int(n: u64, k: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(k.into()))
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::reduce(n, poly)
    }

    fn reduce(n: u64, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        while poly.len() > d {
            let c = poly.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let top = poly.len();
            for (j, pj) in phi.iter().enumerate().take(d) {
                poly[top - d + j] -= &c * BigRational::from_integer(pj.clone());
            }
        }
        poly.resize(d, BigRational::zero());
        Cyclo { n, coeffs: poly }
    }

    /// Same element viewed in `Q(ζ_m)`, `n | m`.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "conductor {} does not divide {}", self.n, m);
        let step = (m / self.n) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::reduce(m, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclo { n: a.n, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut poly = vec![BigRational::zero(); (a.coeffs.len() + b.coeffs.len()).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::reduce(a.n, poly)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|x| x * q).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Galois automorphism `ζ ↦ ζ^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: u64) -> Self {
        let mut acc = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Self::zeta(self.n, (i as u64 * k % self.n) as i64).scale(c));
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        self.galois(self.n - 1)
    }

    /// Multiplicative inverse through the field norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Self::one(self.n);
        for k in 2..self.n.max(2) {
            if k.gcd(&self.n) == 1 {
                others = others.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&others).to_rational().expect("norm is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                _ if c.is_one() => format!("z{}^{}", self.n, i),
                _ => format!("{}*z{}^{}", c, self.n, i),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `exp(2πi q)` for a rational `q`.
pub fn root_of_unity(q: &BigRational) -> Cyclo {
    let d = q.denom().to_u64().expect("small denominator");
    let k = q.numer().mod_floor(q.denom()).to_i64().expect("small numerator");
    Cyclo::zeta(d.max(1), k)
}
