//! Log-space factorials, binomials and binomial tails.

use crate::numerics::LogSum;

/// Below this, `n!` is formed exactly in floating point before the log.
const EXACT_FACTORIAL_LIMIT: u64 = 18;
/// Smaller side of a binomial up to which `ln C(n, k)` is a sum of logs.
const DIRECT_BINOMIAL_LIMIT: u64 = 32;

/// `ln n!`: exact product for small `n`, Stirling series with four
/// correction terms otherwise (truncation error below `1e-16` for `n >= 18`).
pub fn ln_factorial(n: u64) -> f64 {
    if n < EXACT_FACTORIAL_LIMIT {
        return (1..=n).map(|k| k as f64).product::<f64>().ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    x * x.ln() - x + 0.5 * (std::f64::consts::TAU * x).ln() + series
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let m = k.min(n - k);
    if m == 0 {
        return 0.0;
    }
    if m <= DIRECT_BINOMIAL_LIMIT {
        let mut acc = 0.0;
        for i in 0..m {
            acc += ((n - i) as f64 / (i + 1) as f64).ln();
        }
        return acc;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `ln P{Bin(n, p) >= l}` with `p` given as `ln p`.
///
/// Sums upward from `l` when `l` exceeds the mean (the terms then decay
/// geometrically), and takes the complement of the lower sum otherwise, so
/// the result keeps full relative precision for tiny tails.
pub fn ln_binomial_upper_tail(n: u64, ln_p: f64, l: u64) -> f64 {
    if l == 0 {
        return 0.0;
    }
    if l > n || ln_p == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if ln_p >= 0.0 {
        return 0.0;
    }
    let p = ln_p.exp();
    let ln_q = (-p).ln_1p();
    let term = |j: u64| ln_choose(n, j) + j as f64 * ln_p + (n - j) as f64 * ln_q;
    if l as f64 > n as f64 * p {
        let mut acc = LogSum::new();
        let mut ln_t = term(l);
        let mut j = l;
        loop {
            acc.add(ln_t);
            if j == n || ln_t < acc.ln_value() - 40.0 {
                break;
            }
            // ratio of consecutive terms
            ln_t += ((n - j) as f64 / (j + 1) as f64).ln() + ln_p - ln_q;
            j += 1;
        }
        acc.ln_value()
    } else {
        let lower: f64 = (0..l).map(|j| term(j).exp()).sum();
        (-lower.min(1.0)).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        for n in [5u64, 17, 18, 19, 25] {
            let direct: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
            assert!((ln_factorial(n) - direct).abs() < 1e-12, "{n}");
        }
        // ln 100! from its decimal expansion 9.33262154439441e157
        let reference = 9.332_621_544_394_41_f64.ln() + 157.0 * std::f64::consts::LN_10;
        assert!((ln_factorial(100) - reference).abs() < 1e-11);
    }

    #[test]
    fn binomials() {
        assert_eq!(ln_choose(4, 2), 6f64.ln());
        assert!((ln_choose(52, 5) - 2_598_960f64.ln()).abs() < 1e-12);
        assert!((ln_choose(100, 50) - 1.008_913_445_455_641_9e29f64.ln()).abs() < 1e-10);
        assert_eq!(ln_choose(3, 4), f64::NEG_INFINITY);
        assert_eq!(ln_choose(7, 7), 0.0);
    }

    fn tail_oracle(n: u64, p: f64, l: u64) -> f64 {
        (l..=n)
            .map(|j| crate::verifier::n_choose_k(n, j) as f64 * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32))
            .sum()
    }

    #[test]
    fn binomial_tails() {
        for (n, p, l) in [
            (10u64, 0.3f64, 1u64),
            (10, 0.3, 3),
            (10, 0.3, 7),
            (20, 0.01, 2),
            (5, 0.9, 5),
            (30, 0.5, 16),
        ] {
            let v = ln_binomial_upper_tail(n, p.ln(), l).exp();
            let o = tail_oracle(n, p, l);
            assert!((v / o - 1.0).abs() < 1e-12, "{n} {p} {l}: {v} vs {o}");
        }
        assert_eq!(ln_binomial_upper_tail(4, 0.5f64.ln(), 0), 0.0);
        assert_eq!(ln_binomial_upper_tail(4, 0.5f64.ln(), 5), f64::NEG_INFINITY);
        assert_eq!(ln_binomial_upper_tail(4, 0.0, 2), 0.0);
        // tiny tail keeps relative precision: P{Bin(1e6, 1e-12) >= 2} ~ C(1e6,2) 1e-24
        let v = ln_binomial_upper_tail(1_000_000, (1e-12f64).ln(), 2);
        let approx = (1e6 * (1e6 - 1.0) / 2.0 * 1e-24f64).ln();
        assert!((v - approx).abs() < 1e-5);
    }
}
