use serde::{Deserialize, Serialize};

use super::products::central_product;
use super::BuiltGroup;
use crate::error::{Error, Result};
use crate::group::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtraspecialSign {
    Plus,
    Minus,
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn check_cap(order: u64, cap: usize) -> Result<usize> {
    if order > cap as u64 {
        return Err(Error::GroupTooLarge { cap });
    }
    Ok(order as usize)
}

/// Right regular representation from a multiplication on `0..order`.
fn regular(
    order: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
    cap: usize,
) -> Result<BuiltGroup> {
    let perms: Vec<Perm> = gens
        .iter()
        .map(|&g| Perm::from_images((0..order).map(|h| mul(h, g) as u32).collect()))
        .collect::<Result<_>>()?;
    BuiltGroup::from_perms(order, &perms, cap, "regular")
}

/// `<x, y | x^m, y^q = x^h, y^-1 x y = x^t>` on normal forms `x^i y^j`,
/// where `s = t^-1 mod m` rewrites `y x = x^s y`. Generators `[x, y]`.
fn metacyclic(m: u64, q: u64, s: u64, h: u64, cap: usize) -> Result<BuiltGroup> {
    let order = check_cap(m * q, cap)?;
    let mut spow = vec![1u64; q as usize];
    for j in 1..q as usize {
        spow[j] = spow[j - 1] * s % m;
    }
    let mul = |a: usize, b: usize| {
        let (i, j) = ((a as u64) / q, (a as u64) % q);
        let (k, l) = ((b as u64) / q, (b as u64) % q);
        let mut e = i + k * spow[j as usize];
        if j + l >= q {
            e += h;
        }
        ((e % m) * q + (j + l) % q) as usize
    };
    regular(order, mul, &[q as usize, 1], cap)
}

pub fn cyclic(n: u32, cap: usize) -> Result<BuiltGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("cyclic group needs n >= 1".into()));
    }
    check_cap(n as u64, cap)?;
    let x = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    BuiltGroup::from_perms(n as usize, &[x], cap, "natural")
}

pub fn dihedral(order: u32, cap: usize) -> Result<BuiltGroup> {
    if order < 2 || order % 2 == 1 {
        return Err(Error::InvalidSpec(format!(
            "dihedral order must be even and >= 2, got {order}"
        )));
    }
    let m = order / 2;
    check_cap(order as u64, cap)?;
    if m < 3 {
        return metacyclic(m as u64, 2, m as u64 - 1, 0, cap);
    }
    let x = Perm::from_images((0..m).map(|i| (i + 1) % m).collect())?;
    let z = Perm::from_images((0..m).map(|i| (m - i) % m).collect())?;
    BuiltGroup::from_perms(m as usize, &[x, z], cap, "natural")
}

fn two_power(order: u32, min_exp: u32, family: &str) -> Result<u32> {
    if !order.is_power_of_two() || order.trailing_zeros() < min_exp {
        return Err(Error::InvalidSpec(format!(
            "{family} order must be 2^n with n >= {min_exp}, got {order}"
        )));
    }
    Ok(order.trailing_zeros())
}

pub fn semidihedral(order: u32, cap: usize) -> Result<BuiltGroup> {
    let n = two_power(order, 4, "semidihedral")?;
    let m = 1u64 << (n - 1);
    let t = (1u64 << (n - 2)) - 1;
    // t is its own inverse mod m
    metacyclic(m, 2, t, 0, cap)
}

pub fn quaternion(order: u32, cap: usize) -> Result<BuiltGroup> {
    let n = two_power(order, 3, "quaternion")?;
    let m = 1u64 << (n - 1);
    metacyclic(m, 2, m - 1, m / 2, cap)
}

pub fn elementary_abelian(p: u32, rank: u32, cap: usize) -> Result<BuiltGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    check_cap((p as u64).checked_pow(rank).unwrap_or(u64::MAX), cap)?;
    let degree = (p * rank.max(1)) as usize;
    let gens: Vec<Perm> = (0..rank)
        .map(|k| {
            let images = (0..degree as u32)
                .map(|i| {
                    if i / p == k {
                        k * p + (i % p + 1) % p
                    } else {
                        i
                    }
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    BuiltGroup::from_perms(degree, &gens, cap, "natural")
}

/// Heisenberg group of order `p^(1+2n)`, exponent `p` for odd `p`.
/// Elements `(a, b, c)` multiply as `(a + a', b + b', c + c' + a.b')`.
fn heisenberg(p: u32, n: u32, cap: usize) -> Result<BuiltGroup> {
    let p = p as usize;
    let n = n as usize;
    let order = check_cap((p as u64).pow(1 + 2 * n as u32), cap)?;
    let digits = |mut x: usize| {
        let mut d = vec![0usize; 2 * n + 1];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &v| acc * p + v);
    let mul = |x: usize, y: usize| {
        let (u, v) = (digits(x), digits(y));
        let mut w: Vec<usize> = (0..2 * n + 1).map(|i| (u[i] + v[i]) % p).collect();
        let dot: usize = (0..n).map(|i| u[i] * v[n + i]).sum();
        w[2 * n] = (w[2 * n] + dot) % p;
        undigits(&w)
    };
    let gens: Vec<usize> = (0..n)
        .flat_map(|i| {
            let mut a = vec![0; 2 * n + 1];
            a[i] = 1;
            let mut b = vec![0; 2 * n + 1];
            b[n + i] = 1;
            [undigits(&a), undigits(&b)]
        })
        .collect();
    regular(order, mul, &gens, cap)
}

pub fn extraspecial(
    p: u32,
    n: u32,
    exponent: Option<u32>,
    sign: Option<ExtraspecialSign>,
    cap: usize,
) -> Result<BuiltGroup> {
    if !is_prime(p) || n == 0 {
        return Err(Error::InvalidSpec(format!(
            "extraspecial needs a prime p and n >= 1, got p={p}, n={n}"
        )));
    }
    check_cap((p as u64).checked_pow(1 + 2 * n).unwrap_or(u64::MAX), cap)?;
    let (first, rest): (BuiltGroup, Box<dyn Fn() -> Result<BuiltGroup>>) = if p == 2 {
        if exponent.is_some() {
            return Err(Error::InvalidSpec(
                "exponent is not a parameter for p = 2; use sign".into(),
            ));
        }
        let d8 = move || dihedral(8, cap);
        match sign.unwrap_or(ExtraspecialSign::Plus) {
            ExtraspecialSign::Plus => (d8()?, Box::new(d8)),
            ExtraspecialSign::Minus => (quaternion(8, cap)?, Box::new(d8)),
        }
    } else {
        if sign.is_some() {
            return Err(Error::InvalidSpec("sign applies only to p = 2".into()));
        }
        let heis = move || heisenberg(p, 1, cap);
        match exponent.unwrap_or(p) {
            e if e == p => {
                let mut h = heisenberg(p, n, cap)?;
                h.group.set_representation("regular");
                return Ok(h);
            }
            e if e == p * p => {
                let (q, pp) = (p as u64, (p * p) as u64);
                // y^-1 x y = x^(1+p); (1+p)^-1 = 1-p mod p^2
                (metacyclic(pp, q, pp + 1 - q, 0, cap)?, Box::new(heis))
            }
            e => {
                return Err(Error::InvalidSpec(format!(
                    "exponent must be {p} or {}, got {e}",
                    p * p
                )))
            }
        }
    };
    let mut acc = first;
    for _ in 1..n {
        let next = rest()?;
        let za = acc.group.comm(acc.generators[0], acc.generators[1]);
        let zb = next.group.comm(next.generators[0], next.generators[1]);
        acc = central_product(&acc, &next, &[(za, zb)], cap)?;
    }
    Ok(acc)
}
