//! Exponent bookkeeping for i u_t - Δ²u = -|u|^α u.
//!
//! Everything here is closed-form arithmetic; other modules read their
//! exponents from an [`ExponentSet`] rather than recomputing them.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance for every exponent comparison.
pub const TOL: f64 = 1e-12;

/// A Lebesgue-type exponent in [-∞, ∞] with infinity kept as a tag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    /// Builds an exponent from its reciprocal; a zero reciprocal is ∞.
    pub fn from_recip(r: f64) -> Self {
        if r == 0.0 {
            Exponent::Infinite
        } else {
            Exponent::Finite(1.0 / r)
        }
    }

    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinite => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// Float view, with ∞ mapped to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    /// Whether the exponent lies in [lo, ∞].
    pub fn at_least(self, lo: f64) -> bool {
        match self {
            Exponent::Finite(p) => p >= lo - TOL,
            Exponent::Infinite => true,
        }
    }
}

impl From<f64> for Exponent {
    fn from(p: f64) -> Self {
        if p.is_infinite() && p > 0.0 {
            Exponent::Infinite
        } else {
            Exponent::Finite(p)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentSet {
    pub d: usize,
    pub alpha: f64,
    pub gamma_c: f64,
    pub alpha_c: f64,
    pub two_star_low: f64,
    pub two_star_high: Exponent,
    pub sigma: f64,
    pub rate_exp: f64,
}

impl ExponentSet {
    /// α_c from its Sobolev-embedding form 2d/(d - 2γ_c).
    pub fn alpha_c_embedding(&self) -> f64 {
        let d = self.d as f64;
        2.0 * d / (d - 2.0 * self.gamma_c)
    }

    /// σ from the explicit form (8 - (d-4)α)/(dα - 8).
    pub fn sigma_explicit(&self) -> f64 {
        let d = self.d as f64;
        (8.0 - (d - 4.0) * self.alpha) / (d * self.alpha - 8.0)
    }

    pub fn dim(&self) -> f64 {
        self.d as f64
    }
}

/// Energy-critical power 8/(d-4), infinite for d ≤ 4.
pub fn energy_critical_power(d: usize) -> Exponent {
    if d <= 4 {
        Exponent::Infinite
    } else {
        Exponent::Finite(8.0 / (d as f64 - 4.0))
    }
}

pub fn critical_exponents(d: usize, alpha: f64) -> Result<ExponentSet> {
    if d == 0 || !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::OutOfWindow { d, alpha });
    }
    let df = d as f64;
    let low = 8.0 / df;
    let high = energy_critical_power(d);
    if (alpha - low).abs() <= TOL {
        return Err(Error::MassCritical { d, alpha });
    }
    if alpha < low || !(high.is_infinite() || alpha < high.value() - TOL) {
        return Err(Error::OutOfWindow { d, alpha });
    }
    let gamma_c = df / 2.0 - 4.0 / alpha;
    Ok(ExponentSet {
        d,
        alpha,
        gamma_c,
        alpha_c: df * alpha / 4.0,
        two_star_low: low,
        two_star_high: high,
        sigma: (2.0 - gamma_c) / gamma_c,
        rate_exp: (2.0 - gamma_c) / 4.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairClassification {
    pub p: Exponent,
    pub q: Exponent,
    pub gamma_pq: f64,
    pub schrodinger_admissible: bool,
    pub biharmonic_admissible: bool,
}

pub fn gamma_pq(p: Exponent, q: Exponent, d: usize) -> f64 {
    d as f64 / 2.0 - d as f64 * q.recip() - 4.0 * p.recip()
}

pub fn classify_pair(p: Exponent, q: Exponent, d: usize) -> PairClassification {
    let df = d as f64;
    let g = gamma_pq(p, q, d);
    let in_range = p.at_least(2.0) && q.at_least(2.0);
    let endpoint = d == 2 && matches!(p, Exponent::Finite(v) if (v - 2.0).abs() <= TOL) && q.is_infinite();
    let schrodinger = in_range && !endpoint && 2.0 * p.recip() + df * q.recip() <= df / 2.0 + TOL;
    PairClassification {
        p,
        q,
        gamma_pq: g,
        schrodinger_admissible: schrodinger,
        biharmonic_admissible: schrodinger && g.abs() <= TOL,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LwpExponents {
    pub n: Exponent,
    pub n_star: Exponent,
    pub m_star: Exponent,
    pub theta: f64,
    pub p: Exponent,
    pub q: Exponent,
    pub m: Exponent,
    pub m_n_admissible: bool,
    pub pq_admissible: bool,
}

/// Exponents of the local well-posedness argument in Ḣ^γc ∩ Ḣ².
///
/// Computed through reciprocals so that boundary cases come out as exact ∞.
pub fn lwp_exponents(d: usize, alpha: f64) -> Result<LwpExponents> {
    if d <= 4 {
        return Err(Error::UnsupportedDimension { d });
    }
    critical_exponents(d, alpha)?;
    let df = d as f64;
    let k = (df - 4.0) * alpha;
    let n_rec = (df + 2.0 - k) / (2.0 * df);
    let n_star_rec = (df + 4.0 - k) / (2.0 * df);
    let m_star_rec = (k - 4.0) / 8.0;
    let p_rec = alpha * (df - 4.0) / (8.0 * (alpha + 2.0));
    let q_rec = (df + 2.0 * alpha) / (df * (alpha + 2.0));
    let m_rec = 1.0 - (alpha + 1.0) * p_rec;
    let m_star = Exponent::from_recip(m_star_rec);
    let n_star = Exponent::from_recip(n_star_rec);
    let p = Exponent::from_recip(p_rec);
    let q = Exponent::from_recip(q_rec);
    Ok(LwpExponents {
        n: Exponent::from_recip(n_rec),
        n_star,
        m_star,
        theta: 1.0 - k / 8.0,
        p,
        q,
        m: Exponent::from_recip(m_rec),
        m_n_admissible: classify_pair(m_star, n_star, d).biharmonic_admissible,
        pq_admissible: classify_pair(p, q, d).biharmonic_admissible,
    })
}
