//! Gauss–Wantzel constructibility oracle.
//!
//! A regular n-gon is constructible with straightedge and compass iff
//! n = 2^k · p₁·…·p_m with distinct Fermat primes p_i. Rational angles
//! 2π·p/q reduce to the n-gon criterion; the golden angle carries a
//! documented verdict (its sine and cosine are transcendental, which no
//! finite computation here decides).

use thiserror::Error;

/// Trial division works comfortably at desk scale; this is a classifier,
/// not a number-theory library.
pub const MAX_N: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n must be at least 3 (got {0})")]
    OutOfRange(u64),
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("n exceeds the supported bound {MAX_N}")]
    TooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Ngon(u64),
    RationalAngle { p: i64, q: u64 },
    GoldenAngle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// n = 2^pow2 · (product of the listed distinct Fermat primes).
    FermatFactorization {
        power_of_two: u32,
        fermat_primes: Vec<u64>,
    },
    /// A Fermat prime divides n more than once.
    RepeatedFermatPrime(u64),
    /// An odd prime factor that is not a Fermat prime.
    NonFermatOddPrime(u64),
    /// Angle is an integer multiple of pi; trivially constructible.
    MultipleOfPi,
    /// Documented, not computed: the verdict restates a proof, it is not
    /// decided by this artifact.
    DocumentedTranscendence { citation: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibilityVerdict {
    pub subject: Subject,
    pub constructible: bool,
    pub reason: Reason,
}

impl ConstructibilityVerdict {
    pub fn describe(&self) -> String {
        let yn = if self.constructible { "yes" } else { "no" };
        let why = match &self.reason {
            Reason::FermatFactorization {
                power_of_two,
                fermat_primes,
            } => {
                if fermat_primes.is_empty() {
                    format!("n = 2^{power_of_two}")
                } else {
                    let list = fermat_primes
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join("·");
                    format!("n = 2^{power_of_two}·{list} with distinct Fermat primes {list}")
                }
            }
            Reason::RepeatedFermatPrime(p) => {
                format!("Fermat prime {p} divides n with multiplicity > 1")
            }
            Reason::NonFermatOddPrime(p) => format!("{p} is not a Fermat prime"),
            Reason::MultipleOfPi => "angle is a multiple of pi".to_string(),
            Reason::DocumentedTranscendence { citation } => citation.clone(),
        };
        format!("{yn} — {why}")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Fermat primes are tested by form (2^(2^m) + 1) plus primality; the
/// five known ones are recognized without the primality scan.
pub fn is_fermat_prime(p: u64) -> bool {
    if matches!(p, 3 | 5 | 17 | 257 | 65537) {
        return true;
    }
    if p < 3 {
        return false;
    }
    let m = p - 1;
    if !m.is_power_of_two() {
        return false;
    }
    let exp = m.trailing_zeros() as u64;
    if !exp.is_power_of_two() {
        return false;
    }
    is_prime(p)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut mult = 0;
            while n % d == 0 {
                n /= d;
                mult += 1;
            }
            out.push((d, mult));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn ngon_constructible(n: u64) -> Result<ConstructibilityVerdict, OracleError> {
    if n < 3 {
        return Err(OracleError::OutOfRange(n));
    }
    if n > MAX_N {
        return Err(OracleError::TooLarge(n));
    }
    let subject = Subject::Ngon(n);
    let mut power_of_two = 0;
    let mut fermat_primes = Vec::new();
    for (p, mult) in factorize(n) {
        if p == 2 {
            power_of_two = mult;
            continue;
        }
        if !is_fermat_prime(p) {
            return Ok(ConstructibilityVerdict {
                subject,
                constructible: false,
                reason: Reason::NonFermatOddPrime(p),
            });
        }
        if mult > 1 {
            return Ok(ConstructibilityVerdict {
                subject,
                constructible: false,
                reason: Reason::RepeatedFermatPrime(p),
            });
        }
        fermat_primes.push(p);
    }
    Ok(ConstructibilityVerdict {
        subject,
        constructible: true,
        reason: Reason::FermatFactorization {
            power_of_two,
            fermat_primes,
        },
    })
}

/// Constructibility of the angle 2π·p/q.
pub fn angle_constructible(p: i64, q: u64) -> Result<ConstructibilityVerdict, OracleError> {
    if q == 0 {
        return Err(OracleError::ZeroDenominator);
    }
    let g = gcd(p.unsigned_abs(), q);
    let n = q / g;
    let subject = Subject::RationalAngle { p, q };
    if n <= 2 {
        return Ok(ConstructibilityVerdict {
            subject,
            constructible: true,
            reason: Reason::MultipleOfPi,
        });
    }
    let inner = ngon_constructible(n)?;
    Ok(ConstructibilityVerdict {
        subject,
        constructible: inner.constructible,
        reason: inner.reason,
    })
}

/// The paper's verdict for the golden angle. Documented, not computed.
pub fn golden_angle_verdict() -> ConstructibilityVerdict {
    ConstructibilityVerdict {
        subject: Subject::GoldenAngle,
        constructible: false,
        reason: Reason::DocumentedTranscendence {
            citation: "sine and cosine of the golden angle are transcendental \
                       (Gelfond–Schneider: if e^{2πi/φ} were algebraic, its φ-th \
                       power e^{2πi} = 1 would be transcendental); documented \
                       verdict, not decided by this program"
                .to_string(),
        },
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Independent cross-check criterion: the regular n-gon is constructible
/// iff Euler's totient of n is a power of two.
pub fn totient_is_power_of_two(n: u64) -> bool {
    totient(n).is_power_of_two()
}

fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}
