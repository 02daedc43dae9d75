use serde::Serialize;

use crate::error::{domain, ensure_finite, Result};

/// Memory parameter `p`, first-step parameter `q` and the memory index `a = 2p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErwParams {
    p: f64,
    q_first: f64,
    a: f64,
}

impl ErwParams {
    pub fn new(p: f64, q_first: f64) -> Result<Self> {
        ensure_finite("ErwParams", "p", p)?;
        ensure_finite("ErwParams", "q_first", q_first)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(domain("ErwParams", format!("p = {p} not in [0, 1]")));
        }
        if !(0.0..=1.0).contains(&q_first) {
            return Err(domain("ErwParams", format!("q_first = {q_first} not in [0, 1]")));
        }
        Ok(ErwParams {
            p,
            q_first,
            a: 2.0 * p - 1.0,
        })
    }

    /// Parameters with memory index `a ∈ [-1, 1]`, i.e. `p = (1+a)/2`.
    pub fn from_a(a: f64, q_first: f64) -> Result<Self> {
        ensure_finite("ErwParams", "a", a)?;
        let mut params = Self::new((1.0 + a) / 2.0, q_first)?;
        params.a = a;
        Ok(params)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q_first(&self) -> f64 {
        self.q_first
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn is_superdiffusive(&self) -> bool {
        self.a > 0.5 && self.a < 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_index() {
        let p = ErwParams::new(0.8, 1.0).unwrap();
        assert!((p.a() - 0.6).abs() < 1e-15);
        assert!(p.is_superdiffusive());
        let q = ErwParams::from_a(0.75, 0.5).unwrap();
        assert_eq!(q.a(), 0.75);
        assert_eq!(q.p(), 0.875);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ErwParams::new(1.1, 1.0).is_err());
        assert!(ErwParams::new(0.5, -0.1).is_err());
        assert!(ErwParams::new(f64::NAN, 1.0).is_err());
    }
}
