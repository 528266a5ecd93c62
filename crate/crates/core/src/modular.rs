//! Multi-modular expansion backend.
//!
//! For primes `ℓ ≡ 1 (mod p)` the field `F_ℓ` contains an element of exact
//! order `p`, so the product can be expanded over `F_ℓ` with plain machine
//! arithmetic. Integer coefficients are rebuilt by Chinese remaindering once
//! the prime product exceeds twice the largest possible coefficient
//! magnitude `C(p, r) * C(p - r, s)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::params::{Form, GroupParams};
use crate::poly::SparseExactPolynomial;

/// Primes are searched downward from this bound so products fit in `u128`.
const PRIME_CEILING: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularConfig {
    /// Maximum number of primes the backend may use.
    pub pool_size: usize,
}

impl Default for ModularConfig {
    fn default() -> Self {
        ModularConfig { pool_size: 64 }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut twos = 0;
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Up to `count` primes `ℓ ≡ 1 (mod p)` below `2^62`, largest first.
pub fn primes_congruent_one(p: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut m = (PRIME_CEILING - 1) / p;
    while out.len() < count && m > 0 {
        let candidate = m * p + 1;
        if is_prime_u64(candidate) {
            out.push(candidate);
        }
        m -= 1;
    }
    out
}

/// An element of multiplicative order exactly `p` in `F_ell`.
pub fn element_of_order(p: u64, ell: u64) -> u64 {
    debug_assert_eq!((ell - 1) % p, 0);
    let factors = prime_factors(p);
    let cofactor = (ell - 1) / p;
    (2..ell)
        .map(|a| pow_mod(a, cofactor, ell))
        .find(|&h| factors.iter().all(|&f| pow_mod(h, p / f, ell) != 1))
        .expect("F_ell* is cyclic so an element of order p exists")
}

/// Largest `C(p, r) * C(p - r, s)` over `r + s <= p`.
pub fn coefficient_bound(p: u64) -> BigUint {
    let n = p as usize;
    let mut binom = vec![vec![BigUint::zero(); n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = BigUint::one();
        for j in 1..=i {
            binom[i][j] = &binom[i - 1][j - 1] + &binom[i - 1][j];
        }
    }
    let mut best = BigUint::zero();
    for r in 0..=n {
        for s in 0..=(n - r) {
            let b = &binom[n][r] * &binom[n - r][s];
            if b > best {
                best = b;
            }
        }
    }
    best
}

/// Coefficients of `Π_{j}(1 - ζ^{j q1} x - ζ^{j q2} y)` over `F_ell`, as a
/// `(p+1) x (p+1)` grid indexed `[r][s]`.
fn expand_mod_prime(params: &GroupParams, ell: u64) -> Vec<Vec<u64>> {
    let (p, q1, q2) = (params.p(), params.q1(), params.q2());
    let n = p as usize;
    let zeta = element_of_order(p, ell);
    let mut c = vec![vec![0u64; n + 1]; n + 1];
    c[0][0] = 1;
    for j in 0..p {
        let a = pow_mod(zeta, (j * q1) % p, ell);
        let b = pow_mod(zeta, (j * q2) % p, ell);
        let deg = j as usize + 1;
        for r in (0..=deg.min(n)).rev() {
            for s in (0..=(deg - r).min(n - r)).rev() {
                let mut v = c[r][s];
                if r > 0 {
                    v = (v + ell - mul_mod(a, c[r - 1][s], ell)) % ell;
                }
                if s > 0 {
                    v = (v + ell - mul_mod(b, c[r][s - 1], ell)) % ell;
                }
                c[r][s] = v;
            }
        }
    }
    c
}

/// Incremental Garner reconstruction lifted to the symmetric range.
fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let mut x = BigUint::from(residues[0]);
    let mut modulus = BigUint::from(primes[0]);
    for (&res, &ell) in residues.iter().zip(primes).skip(1) {
        let x_mod = (&x % ell).to_u64().expect("reduced below ell");
        let m_mod = (&modulus % ell).to_u64().expect("reduced below ell");
        let inv = pow_mod(m_mod, ell - 2, ell);
        let t = mul_mod((res + ell - x_mod) % ell, inv, ell);
        x += &modulus * t;
        modulus *= ell;
    }
    let half = &modulus >> 1;
    if x > half {
        BigInt::from(x) - BigInt::from(modulus)
    } else {
        BigInt::from(x)
    }
}

pub fn expand_modular(params: &GroupParams) -> Result<SparseExactPolynomial> {
    expand_modular_with(params, &ModularConfig::default())
}

pub fn expand_modular_with(params: &GroupParams, config: &ModularConfig) -> Result<SparseExactPolynomial> {
    let p = params.p();
    let target = coefficient_bound(p) * 2u32;
    let pool = primes_congruent_one(p, config.pool_size);
    let mut product = BigUint::one();
    let mut used = 0;
    while product <= target {
        let Some(&ell) = pool.get(used) else {
            return Err(Error::InsufficientPrimes { needed_bits: target.bits(), pool: config.pool_size });
        };
        product *= ell;
        used += 1;
    }
    let primes = &pool[..used];
    let grids: Vec<Vec<Vec<u64>>> = primes.par_iter().map(|&ell| expand_mod_prime(params, ell)).collect();

    let n = p as usize;
    let mut product_poly = SparseExactPolynomial::new();
    let mut residues = vec![0u64; used];
    for r in 0..=n {
        for s in 0..=(n - r) {
            for (slot, grid) in residues.iter_mut().zip(&grids) {
                *slot = grid[r][s];
            }
            let c = crt_symmetric(&residues, primes);
            product_poly.add_term(r as u64, s as u64, &c);
        }
    }
    let phi = product_poly.one_minus();
    Ok(match params.form() {
        Form::Definite => phi,
        Form::Indefinite => phi.negate_y(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::expand;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn primes_are_one_mod_p() {
        for p in [1u64, 2, 6, 13, 48] {
            for ell in primes_congruent_one(p, 4) {
                assert!(is_prime_u64(ell));
                assert_eq!(ell % p, 1 % p);
                let z = element_of_order(p, ell);
                assert_eq!(pow_mod(z, p, ell), 1);
            }
        }
    }

    #[test]
    fn garner_symmetric_lift() {
        let primes = [101u64, 103, 107];
        for v in [-500_000i64, -1, 0, 1, 12345, 555_000] {
            let res: Vec<u64> = primes.iter().map(|&m| v.rem_euclid(m as i64) as u64).collect();
            assert_eq!(crt_symmetric(&res, &primes), BigInt::from(v));
        }
    }

    #[test]
    fn bound_small() {
        // max multinomial 3!/(1!1!1!) = 6
        assert_eq!(coefficient_bound(3), BigUint::from(6u32));
        assert_eq!(coefficient_bound(1), BigUint::from(1u32));
    }

    #[test]
    fn agrees_with_reference_backend() {
        for (p, q1, q2, form) in [
            (6, 2, 3, Form::Definite),
            (12, 3, 4, Form::Definite),
            (2, 1, 1, Form::Indefinite),
            (1, 0, 0, Form::Definite),
            (9, 0, 4, Form::Indefinite),
        ] {
            let params = GroupParams::new(p, q1, q2, form).unwrap();
            assert_eq!(expand_modular(&params).unwrap(), expand(&params).unwrap(), "{params}");
        }
    }

    #[test]
    fn pool_exhaustion_is_reported() {
        let params = GroupParams::definite(64, 1, 3).unwrap();
        let err = expand_modular_with(&params, &ModularConfig { pool_size: 1 }).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrimes { pool: 1, .. }));
    }
}
