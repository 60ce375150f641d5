//! Integer-sequence machinery: Möbius and Mertens functions, Dirichlet
//! convolution and inversion, and the closed-form Dirichlet inverse of the
//! alternating sequence.
//!
//! Sequences here are 1-indexed arithmetic functions stored as real vectors;
//! integer-valued sequences (Möbius, the alternating inverse) are kept as
//! reals so that the cosine coefficient sequence for arbitrary shifts fits
//! the same type.

use std::sync::OnceLock;

use crate::error::{ActError, Result};

/// Leading terms smaller than this are treated as zero when deciding whether
/// a sequence admits a Dirichlet inverse.
pub const INVERTIBILITY_THRESHOLD: f64 = 1e-9;

/// Default upper bound of the process-wide Möbius sieve. Overridable through
/// the `ACT_SIEVE_LIMIT` environment variable (read once, at first use).
pub const DEFAULT_SIEVE_LIMIT: usize = 1 << 20;

struct MobiusSieve {
    mu: Vec<i8>,
    mertens: Vec<i64>,
}

impl MobiusSieve {
    fn new(limit: usize) -> Self {
        let limit = limit.max(2);
        let mut mu = vec![0i8; limit + 1];
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<usize> = Vec::new();
        mu[1] = 1;
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                primes.push(i);
            }
            for &p in &primes {
                let m = i * p;
                if m > limit {
                    break;
                }
                spf[m] = p as u32;
                if i % p == 0 {
                    mu[m] = 0;
                    break;
                }
                mu[m] = -mu[i];
            }
        }
        let mut mertens = vec![0i64; limit + 1];
        for n in 1..=limit {
            mertens[n] = mertens[n - 1] + i64::from(mu[n]);
        }
        Self { mu, mertens }
    }

    fn limit(&self) -> usize {
        self.mu.len() - 1
    }
}

static SIEVE: OnceLock<MobiusSieve> = OnceLock::new();

fn sieve() -> &'static MobiusSieve {
    SIEVE.get_or_init(|| {
        let limit = std::env::var("ACT_SIEVE_LIMIT")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(DEFAULT_SIEVE_LIMIT);
        MobiusSieve::new(limit)
    })
}

fn mobius_by_factoring(n: u64) -> i32 {
    let mut x = n;
    let mut distinct = 0;
    let mut p = 2u64;
    while p * p <= x {
        if x.is_multiple_of(p) {
            x /= p;
            if x.is_multiple_of(p) {
                return 0;
            }
            distinct += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        distinct += 1;
    }
    if distinct % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Möbius function μ(n): 1 at n = 1, (−1)^q when n is a product of q distinct
/// primes, 0 when n is divisible by a square.
///
/// Values up to the sieve limit come from a linear sieve shared by the whole
/// process; larger arguments fall back to trial-division factoring.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(ActError::domain("mobius is defined for n >= 1"));
    }
    let s = sieve();
    if n <= s.limit() as u64 {
        Ok(i32::from(s.mu[n as usize]))
    } else {
        Ok(mobius_by_factoring(n))
    }
}

/// Mertens function M(n) = Σ_{m=1..n} μ(m).
pub fn mertens(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(ActError::domain("mertens is defined for n >= 1"));
    }
    let s = sieve();
    if n <= s.limit() as u64 {
        return Ok(s.mertens[n as usize]);
    }
    let mut acc = s.mertens[s.limit()];
    for m in (s.limit() as u64 + 1)..=n {
        acc += i64::from(mobius_by_factoring(m));
    }
    Ok(acc)
}

/// A real-valued arithmetic function a(1), a(2), ..., a(L), indexed from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithSequence {
    values: Vec<f64>,
}

impl ArithSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(ActError::domain("a sequence needs at least one term"));
        }
        Ok(Self { values })
    }

    /// Builds a sequence of length `len` from `f(n)` for n = 1..=len.
    pub fn from_fn(len: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        if len == 0 {
            return Err(ActError::domain("a sequence needs at least one term"));
        }
        Ok(Self {
            values: (1..=len).map(f).collect(),
        })
    }

    /// The identity for Dirichlet convolution: (1, 0, 0, ...).
    pub fn dirichlet_identity(len: usize) -> Result<Self> {
        Self::from_fn(len, |n| if n == 1 { 1.0 } else { 0.0 })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 1-based index n. Panics when n = 0 or n exceeds the length.
    pub fn get(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn leading(&self) -> f64 {
        self.values[0]
    }

    pub fn is_invertible(&self) -> bool {
        self.leading().abs() >= INVERTIBILITY_THRESHOLD
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len > self.len() {
            return Err(ActError::Length {
                requested: len,
                available: self.len(),
            });
        }
        Ok(())
    }
}

/// Dirichlet convolution (a ⊛ b)(n) = Σ_{d|n} a(d) b(n/d) for n = 1..=len.
pub fn dirichlet_convolve(a: &ArithSequence, b: &ArithSequence, len: usize) -> Result<ArithSequence> {
    if len == 0 {
        return Err(ActError::domain("convolution length must be at least 1"));
    }
    a.check_len(len)?;
    b.check_len(len)?;
    let mut out = vec![0.0; len];
    for d in 1..=len {
        let ad = a.get(d);
        if ad == 0.0 {
            continue;
        }
        let mut m = d;
        while m <= len {
            out[m - 1] += ad * b.get(m / d);
            m += d;
        }
    }
    ArithSequence::new(out)
}

/// Dirichlet inverse of `a`: the sequence b with (a ⊛ b) equal to the
/// convolution identity. Exists only when the leading term is nonzero;
/// computed by the triangular recursion
/// b(n) = −(1/a(1)) Σ_{d|n, d<n} b(d) a(n/d).
pub fn dirichlet_inverse(a: &ArithSequence, len: usize) -> Result<ArithSequence> {
    if len == 0 {
        return Err(ActError::domain("inverse length must be at least 1"));
    }
    a.check_len(len)?;
    if !a.is_invertible() {
        return Err(ActError::not_invertible(a.leading()));
    }
    let lead = a.leading();
    let mut b = vec![0.0; len];
    b[0] = 1.0 / lead;
    for n in 2..=len {
        let mut acc = 0.0;
        for d in 1..n {
            if n % d == 0 {
                acc += b[d - 1] * a.get(n / d);
            }
        }
        b[n - 1] = -acc / lead;
    }
    ArithSequence::new(b)
}

/// Closed form of the Dirichlet inverse of (−1)^n: −μ(n) for odd n and
/// −2^(m−1) μ(s) for n = 2^m s with s odd. Integer-valued.
pub fn alternating_dirichlet_inverse(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(ActError::domain(
            "alternating_dirichlet_inverse is defined for n >= 1",
        ));
    }
    if n % 2 == 1 {
        return Ok(-f64::from(mobius(n)?));
    }
    let m = n.trailing_zeros();
    let s = n >> m;
    let pow = (1u64 << (m - 1)) as f64;
    Ok(-pow * f64::from(mobius(s)?))
}

/// Coefficient sequence a(n) = cos(2πnβ) attached to the shift β.
pub fn coefficient_sequence(beta: f64, len: usize) -> Result<ArithSequence> {
    ArithSequence::from_fn(len, |n| (std::f64::consts::TAU * beta * n as f64).cos())
}

/// Prefix sums: result(n) = Σ_{m=1..n} a(m). Generalizes the Mertens
/// function to any inverse sequence, which is what the mean correction of
/// the reconstruction needs.
pub fn partial_sums(a: &ArithSequence) -> ArithSequence {
    let mut acc = 0.0;
    let values = a
        .values()
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect();
    ArithSequence { values }
}

/// The sequence c(n) = n when n is a power of two and 0 otherwise; its
/// negated convolution with μ reproduces [`alternating_dirichlet_inverse`].
pub fn power_of_two_sequence(len: usize) -> Result<ArithSequence> {
    ArithSequence::from_fn(len, |n| {
        if n.is_power_of_two() {
            n as f64
        } else {
            0.0
        }
    })
}

/// Prefix of the Möbius sequence as an [`ArithSequence`].
pub fn mobius_sequence(len: usize) -> Result<ArithSequence> {
    ArithSequence::from_fn(len, |n| {
        f64::from(mobius(n as u64).expect("index starts at 1"))
    })
}
