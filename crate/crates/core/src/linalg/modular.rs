//! Row reduction modulo word-sized primes, and exact solutions recovered from
//! several primes by Chinese remaindering and rational reconstruction.
//!
//! Nothing here is trusted on its own: [`solve_multimodular`] only returns a
//! solution after checking it exactly over the rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseVec;
use crate::Coefficient;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'next: for a in BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64..).map(|k| (1u64 << 62) - k).filter(|&n| is_prime(n))
}

/// `c mod p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(c: &Coefficient, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let to_u64 = |x: &BigInt| -> u64 {
        let r = x.mod_floor(&pb);
        r.iter_u64_digits().next().unwrap_or(0)
    };
    let den = to_u64(c.denom());
    if den == 0 {
        return None;
    }
    Some(mul(to_u64(c.numer()), inv(den, p), p))
}

pub fn reduce_vector(v: &SparseVec, p: u64) -> Option<Vec<(u32, u64)>> {
    let mut out = Vec::with_capacity(v.entries.len());
    for (i, c) in &v.entries {
        let x = reduce_rational(c, p)?;
        if x != 0 {
            out.push((*i as u32, x));
        }
    }
    Some(out)
}

const NO_PIVOT: u32 = u32::MAX;

enum Event {
    Install {
        row: u32,
        scale: u64,
        reductions: Vec<(u32, u64)>,
    },
    Eliminate {
        target: u32,
        source: u32,
        factor: u64,
    },
}

/// Fully reduced echelon form over `F_p`, with the same log-based provenance
/// as the rational accumulator.
pub struct ModpEchelon {
    p: u64,
    dim: usize,
    rows: Vec<Vec<(u32, u64)>>,
    pivot_of_row: Vec<u32>,
    row_of_col: Vec<u32>,
    col_rows: Vec<Vec<u32>>,
    source_of_row: Vec<usize>,
    inserted: usize,
    log: Vec<Event>,
    scratch: Vec<u64>,
}

impl ModpEchelon {
    pub fn new(dim: usize, p: u64) -> Self {
        ModpEchelon {
            p,
            dim,
            rows: Vec::new(),
            pivot_of_row: Vec::new(),
            row_of_col: vec![NO_PIVOT; dim],
            col_rows: vec![Vec::new(); dim],
            source_of_row: Vec::new(),
            inserted: 0,
            log: Vec::new(),
            scratch: vec![0; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted_count(&self) -> usize {
        self.inserted
    }

    fn reduce(&mut self, v: &[(u32, u64)]) -> (Vec<(u32, u64)>, Vec<(u32, u64)>) {
        let p = self.p;
        let mut touched: Vec<u32> = Vec::new();
        let mut multipliers = Vec::new();
        for &(col, a) in v {
            let r = self.row_of_col[col as usize];
            if r == NO_PIVOT {
                if self.scratch[col as usize] == 0 {
                    touched.push(col);
                }
                self.scratch[col as usize] = (self.scratch[col as usize] + a) % p;
            } else {
                multipliers.push((r, a));
            }
        }
        for &(r, a) in &multipliers {
            let pivot = self.pivot_of_row[r as usize];
            let neg = p - a;
            for &(col, x) in &self.rows[r as usize] {
                if col == pivot {
                    continue;
                }
                let s = &mut self.scratch[col as usize];
                if *s == 0 {
                    touched.push(col);
                }
                *s = (*s + mul(neg, x, p)) % p;
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut remainder = Vec::new();
        for col in touched {
            let s = std::mem::replace(&mut self.scratch[col as usize], 0);
            if s != 0 {
                remainder.push((col, s));
            }
        }
        (remainder, multipliers)
    }

    pub fn contains(&mut self, v: &[(u32, u64)]) -> bool {
        self.reduce(v).0.is_empty()
    }

    pub fn insert_reduce(&mut self, v: &[(u32, u64)]) -> bool {
        let p = self.p;
        let source = self.inserted;
        self.inserted += 1;
        let (remainder, multipliers) = self.reduce(v);
        if remainder.is_empty() {
            return false;
        }
        let pivot = remainder[0].0;
        let scale = remainder[0].1;
        let s_inv = inv(scale, p);
        let row: Vec<(u32, u64)> = remainder.into_iter().map(|(c, x)| (c, mul(x, s_inv, p))).collect();
        let k = self.rows.len() as u32;

        let mut eliminations = Vec::new();
        let candidates = std::mem::take(&mut self.col_rows[pivot as usize]);
        for j in candidates {
            let target = &self.rows[j as usize];
            let Ok(at) = target.binary_search_by_key(&pivot, |e| e.0) else {
                continue;
            };
            let factor = target[at].1;
            let neg = p - factor;
            let mut updated = Vec::with_capacity(target.len() + row.len());
            let (mut a, mut b) = (0, 0);
            while a < target.len() || b < row.len() {
                if b == row.len() || (a < target.len() && target[a].0 < row[b].0) {
                    updated.push(target[a]);
                    a += 1;
                } else if a == target.len() || row[b].0 < target[a].0 {
                    self.col_rows[row[b].0 as usize].push(j);
                    updated.push((row[b].0, mul(neg, row[b].1, p)));
                    b += 1;
                } else {
                    let x = (target[a].1 + mul(neg, row[b].1, p)) % p;
                    if x != 0 {
                        updated.push((target[a].0, x));
                    }
                    a += 1;
                    b += 1;
                }
            }
            self.rows[j as usize] = updated;
            eliminations.push((j, factor));
        }

        for &(col, _) in row.iter().skip(1) {
            self.col_rows[col as usize].push(k);
        }
        self.row_of_col[pivot as usize] = k;
        self.pivot_of_row.push(pivot);
        self.rows.push(row);
        self.source_of_row.push(source);
        self.log.push(Event::Install {
            row: k,
            scale,
            reductions: multipliers,
        });
        for (j, factor) in eliminations {
            self.log.push(Event::Eliminate {
                target: j,
                source: k,
                factor,
            });
        }
        true
    }

    /// `(inserted index, c)` with `sum c * inserted = v`, or `None` if `v` is
    /// not in the span.
    pub fn express(&mut self, v: &[(u32, u64)]) -> Option<Vec<(usize, u64)>> {
        let p = self.p;
        let (remainder, multipliers) = self.reduce(v);
        if !remainder.is_empty() {
            return None;
        }
        let mut on_rows = vec![0u64; self.rows.len()];
        for (r, a) in multipliers {
            on_rows[r as usize] = (on_rows[r as usize] + a) % p;
        }
        let mut out = Vec::new();
        for event in self.log.iter().rev() {
            match event {
                Event::Eliminate {
                    target,
                    source,
                    factor,
                } => {
                    let t = on_rows[*target as usize];
                    if t != 0 {
                        let s = &mut on_rows[*source as usize];
                        *s = (*s + p - mul(t, *factor, p)) % p;
                    }
                }
                Event::Install {
                    row,
                    scale,
                    reductions,
                } => {
                    let c = std::mem::replace(&mut on_rows[*row as usize], 0);
                    if c == 0 {
                        continue;
                    }
                    let c = mul(c, inv(*scale, p), p);
                    for &(j, a) in reductions {
                        let s = &mut on_rows[j as usize];
                        *s = (*s + p - mul(c, a, p)) % p;
                    }
                    out.push((self.source_of_row[*row as usize], c));
                }
            }
        }
        out.sort_unstable();
        Some(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// The fraction `n/d` with `|n|, d <= sqrt(m/2)` congruent to `a` mod `m`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Coefficient> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    if !n.gcd(&d).is_one() {
        return None;
    }
    Some(Coefficient::new(n, d))
}

/// Exact coefficients `c` with `sum c_i * basis[i] = target`, assuming the
/// basis vectors are linearly independent. Each prime solves the system over
/// `F_p`; the residues are combined and reconstructed, and the candidate is
/// returned only once it checks exactly. `None` if `max_primes` primes do not
/// suffice or the system has no solution modulo those primes.
pub fn solve_multimodular(
    basis: &[SparseVec],
    target: &SparseVec,
    max_primes: usize,
) -> Option<Vec<Coefficient>> {
    let dim = target.dim();
    let n = basis.len();
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); n];
    let mut last: Option<Vec<Coefficient>> = None;
    let mut used = 0;
    for p in primes().take(max_primes * 2) {
        if used == max_primes {
            break;
        }
        let Some(t) = reduce_vector(target, p) else {
            continue;
        };
        let Some(rows) = basis.iter().map(|b| reduce_vector(b, p)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let mut acc = ModpEchelon::new(dim, p);
        if !rows.iter().all(|r| acc.insert_reduce(r)) {
            continue;
        }
        let Some(sol) = acc.express(&t) else {
            continue;
        };
        used += 1;
        let mut x = vec![0u64; n];
        for (i, c) in sol {
            x[i] = c;
        }
        // CRT: r' = r + M * ((x - r) * M^{-1} mod p)
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(inv(
            modulus.mod_floor(&pb).iter_u64_digits().next().unwrap_or(0),
            p,
        ));
        for (r, xi) in residues.iter_mut().zip(&x) {
            let diff = (BigInt::from(*xi) - &*r).mod_floor(&pb);
            let k = (diff * &m_inv).mod_floor(&pb);
            *r += &modulus * k;
        }
        modulus *= &pb;

        let candidate: Option<Vec<Coefficient>> = residues
            .iter()
            .map(|r| rational_reconstruction(r, &modulus))
            .collect();
        if let Some(c) = candidate {
            if last.as_ref() == Some(&c) && check_exact(basis, target, &c) {
                return Some(c);
            }
            last = Some(c);
        }
    }
    None
}

fn check_exact(basis: &[SparseVec], target: &SparseVec, c: &[Coefficient]) -> bool {
    let mut acc = vec![Coefficient::zero(); target.dim()];
    for (b, ci) in basis.iter().zip(c) {
        if ci.is_zero() {
            continue;
        }
        for (i, x) in &b.entries {
            acc[*i] += ci * x;
        }
    }
    for (i, x) in &target.entries {
        acc[*i] -= x;
    }
    acc.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::new(n.into(), d.into())
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p < 1 << 62 && p > 1 << 61));
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(2_305_843_009_213_693_953));
    }

    #[test]
    fn reconstructs_fractions() {
        let m = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        for c in [q(3, 7), q(-22, 5), q(0, 1), q(1, 1)] {
            let num = c.numer().mod_floor(&m);
            let e = c.denom().extended_gcd(&m);
            let a = (num * e.x).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m), Some(c));
        }
    }

    #[test]
    fn solves_small_system() {
        let v = |xs: &[(usize, Coefficient)]| SparseVec::new(3, xs.iter().cloned()).unwrap();
        let b = vec![
            v(&[(0, q(1, 1)), (1, q(2, 1))]),
            v(&[(1, q(1, 3)), (2, q(-1, 1))]),
        ];
        // 5/2 * b0 - 9/4 * b1
        let t = v(&[(0, q(5, 2)), (1, q(5, 1) - q(3, 4)), (2, q(9, 4))]);
        assert_eq!(solve_multimodular(&b, &t, 8), Some(vec![q(5, 2), q(-9, 4)]));
        let off = v(&[(0, q(1, 1))]);
        assert_eq!(solve_multimodular(&b, &off, 4), None);
    }

    #[test]
    fn modp_provenance() {
        let p = primes().next().unwrap();
        let mut acc = ModpEchelon::new(3, p);
        assert!(acc.insert_reduce(&[(0, 1), (1, 1)]));
        assert!(acc.insert_reduce(&[(1, 1), (2, 1)]));
        assert!(!acc.insert_reduce(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(acc.express(&[(0, 2), (1, 3), (2, 1)]), Some(vec![(0, 2), (1, 1)]));
        assert_eq!(acc.express(&[(2, 1)]), None);
    }
}
