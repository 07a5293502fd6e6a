use super::rate_function::{cover_term, union_fraction_at_optimum};
use super::{check_s, check_weight, BoundResult, Bounds, Diagnostics, Q_SEARCH_HI, Q_SEARCH_LO};
use crate::error::Result;
use crate::numerics::{h2, maximize_scalar_with};

pub(crate) fn capacity_unchecked(s: u32, q_weight: f64) -> f64 {
    let q0 = union_fraction_at_optimum(s, q_weight);
    h2(q_weight) - cover_term(q_weight, q0)
}

/// `C(s, Q) = h(Q) - [1 - (1-Q)^s] h(Q / (1 - (1-Q)^s))`.
pub fn capacity_at_q(s: u32, q_weight: f64) -> Result<f64> {
    check_s(s)?;
    check_weight(q_weight)?;
    Ok(capacity_unchecked(s, q_weight))
}

/// Expanded form of [`capacity_at_q`], kept as an independent evaluation
/// route:
///
/// `(1 - Q - (1-Q)^s) log2[1 - Q(1-Q)^(s-1) / (1-(1-Q)^s)]
///   - Q log2[1 - (1-Q)^s] - (1-Q)^s log2(1-Q)`.
pub fn capacity_at_q_alt(s: u32, q_weight: f64) -> Result<f64> {
    check_s(s)?;
    check_weight(q_weight)?;
    let p = 1.0 - q_weight;
    let ps = p.powi(s as i32);
    let q0 = 1.0 - ps;
    let coeff = p - ps;
    let first = if coeff == 0.0 {
        0.0
    } else {
        coeff * (1.0 - q_weight * p.powi(s as i32 - 1) / q0).log2()
    };
    Ok(first - q_weight * q0.log2() - ps * p.log2())
}

impl Bounds {
    /// Capacity lower bound `max_Q C(s, Q)`, independent of the list size.
    pub fn capacity(&self, s: u32) -> Result<BoundResult> {
        check_s(s)?;
        let m = maximize_scalar_with(
            |q| capacity_unchecked(s, q),
            Q_SEARCH_LO,
            Q_SEARCH_HI,
            self.tol.argmax,
            self.tol.grid_points,
        )?;
        Ok(BoundResult {
            value: m.f_star,
            inner: Some(union_fraction_at_optimum(s, m.x_star)),
            argmax_q: Some(m.x_star),
            diagnostics: Diagnostics {
                evaluations: m.evaluations,
                ..Diagnostics::default()
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_one_is_entropy() {
        assert!((capacity_at_q(1, 0.5).unwrap() - 1.0).abs() < 1e-15);
        for q in [0.1, 0.3, 0.7] {
            assert!((capacity_at_q(1, q).unwrap() - h2(q)).abs() < 1e-15);
            assert!((capacity_at_q_alt(1, q).unwrap() - h2(q)).abs() < 1e-15);
        }
    }

    #[test]
    fn two_forms_agree() {
        for s in 1..=12 {
            for i in 1..100 {
                let q = i as f64 / 100.0;
                let a = capacity_at_q(s, q).unwrap();
                let b = capacity_at_q_alt(s, q).unwrap();
                assert!((a - b).abs() < 1e-10, "s={s} Q={q}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn printed_capacity_points() {
        assert!((capacity_at_q(2, 0.2864).unwrap() - 0.3832).abs() < 5e-4);
        assert!((capacity_at_q(10, 0.0666).unwrap() - 0.0704).abs() < 5e-4);
    }

    #[test]
    fn capacity_optimum() {
        let b = Bounds::default();
        let c = b.capacity(2).unwrap();
        assert!((c.value - 0.3832).abs() < 5e-4);
        assert!((c.argmax_q.unwrap() - 0.2864).abs() < 5e-3);
        let c = b.capacity(5).unwrap();
        assert!((c.value - 0.1434).abs() < 5e-4);
        assert!((c.argmax_q.unwrap() - 0.1280).abs() < 5e-3);
        let c = b.capacity(9).unwrap();
        assert!((c.value - 0.0784).abs() < 5e-4);
        assert!((c.argmax_q.unwrap() - 0.0736).abs() < 5e-3);
    }
}
