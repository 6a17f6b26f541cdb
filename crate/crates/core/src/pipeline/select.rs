use std::collections::BTreeMap;

use crate::egt::e_enclosure;
use crate::intmath::{ceil_log2, floor_scaled_root};
use crate::ratcore::{RatSet, Rational, SlopeDecomposition};
use crate::{Error, Result};

/// The dyadic band of lines carrying the most points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonholeSelection {
    /// Smallest line size in the band, so `tau <= |A_λ| < 2 tau` on `S`.
    pub tau: u64,
    pub slopes: RatSet,
    /// `j` of the band `[2^(j-1) t0, 2^j t0)`.
    pub bucket_index: u32,
    /// `Σ_{λ∈S} |A_λ|`.
    pub mass: u64,
}

/// Bands `[2^(j-1) t0, 2^j t0)` with `t0 = n²/(2|A:A|)`; keeps the band of
/// maximal mass (ties go to the smaller `j`).
pub fn dyadic_select(d: &SlopeDecomposition) -> Result<PigeonholeSelection> {
    let n = d.n();
    if n < 2 {
        return Err(Error::TooFewElements { needed: 2, got: n });
    }
    let t0 = Rational::new((n * n) as u64, 2 * d.line_count() as u64)?;
    let mut buckets: BTreeMap<u32, Vec<(Rational, u64)>> = BTreeMap::new();
    for (slope, xs) in d.iter() {
        let size = Rational::from(xs.len());
        if size < t0 {
            continue;
        }
        let mut j = 1u32;
        let mut upper = &t0 * Rational::from(2);
        while size >= upper {
            upper = upper * Rational::from(2);
            j += 1;
        }
        buckets
            .entry(j)
            .or_default()
            .push((slope.clone(), xs.len() as u64));
    }
    let (bucket_index, lines) = buckets
        .into_iter()
        .map(|(j, lines)| (j, lines.iter().map(|(_, m)| m).sum::<u64>(), lines))
        .fold(
            None::<(u32, u64, Vec<(Rational, u64)>)>,
            |best, cur| match best {
                Some(b) if b.1 >= cur.1 => Some(b),
                _ => Some(cur),
            },
        )
        .map(|(j, _, lines)| (j, lines))
        .ok_or_else(|| Error::Invariant("no line reaches n²/(2|A:A|)".into()))?;
    let mass = lines.iter().map(|(_, m)| m).sum::<u64>();
    let tau = lines
        .iter()
        .map(|(_, m)| *m)
        .min()
        .expect("nonempty bucket");
    let slopes = RatSet::from_vec(lines.into_iter().map(|(s, _)| s).collect());

    // τ|S| >= n² / (4(⌈log₂ n⌉ + 1)): at most ⌈log₂ n⌉ + 1 bands share more
    // than n²/2 points.
    let lhs = 4 * tau * slopes.len() as u64 * (u64::from(ceil_log2(n as u64)) + 1);
    if lhs < (n * n) as u64 {
        return Err(Error::Invariant(format!(
            "dyadic band too light: tau={tau}, |S|={}",
            slopes.len()
        )));
    }
    Ok(PigeonholeSelection {
        tau,
        slopes,
        bucket_index,
        mass,
    })
}

/// Constants of the construction. `big_c` and `big_c_prime` are the two
/// unquantified incidence constants; without them conditions (3) and (4)
/// cannot be decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub c_m: Rational,
    pub c_n: Rational,
    pub big_c: Option<Rational>,
    pub big_c_prime: Option<Rational>,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            c_m: Rational::new(1, 2).expect("nonzero"),
            c_n: Rational::new(1, 16).expect("nonzero"),
            big_c: None,
            big_c_prime: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionStatus {
    Ok,
    Violated,
    NotEvaluable,
}

impl ConditionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionStatus::Ok => "ok",
            ConditionStatus::Violated => "violated",
            ConditionStatus::NotEvaluable => "not-evaluable",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            ConditionStatus::Ok
        } else {
            ConditionStatus::Violated
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub id: &'static str,
    pub status: ConditionStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterChoice {
    pub m: usize,
    pub n: usize,
    pub conditions: Vec<ConditionOutcome>,
    pub regime_ok: bool,
}

/// `M = ⌊c_M τ^(1/5)⌋`, `N = ⌊c_N τ^(1/25)⌋` and the condition report.
pub fn choose_parameters(tau: u64, constants: &Constants, s_size: usize) -> ParameterChoice {
    let m = floor_scaled_root(&constants.c_m, tau, 5) as usize;
    let n = floor_scaled_root(&constants.c_n, tau, 25) as usize;
    evaluate_conditions(tau, constants, s_size, m, n)
}

/// Condition report for explicit `M`, `N`. Everything is decided by exact
/// comparisons of integer powers; `e` enters through its rational enclosure.
pub fn evaluate_conditions(
    tau: u64,
    constants: &Constants,
    s_size: usize,
    m: usize,
    n: usize,
) -> ParameterChoice {
    let (c_m, c_n) = (&constants.c_m, &constants.c_n);
    let t = Rational::from(tau);
    let half_s = Rational::new(s_size as u64, 2u64).expect("nonzero");

    let req1 = 1 <= n && n <= m && Rational::from(m) <= half_s;
    // c_N <= (c_M / 4C)^(1/2)  <=>  c_N² · 4C <= c_M
    let cond4 = match &constants.big_c {
        Some(c) if c.is_positive() => {
            ConditionStatus::from_bool(c_n * c_n * Rational::from(4) * c <= *c_m)
        }
        _ => ConditionStatus::NotEvaluable,
    };
    // 4eC'c_M c_N² <= 1, decided at both ends of the enclosure of e.
    let cond3 = match &constants.big_c_prime {
        Some(cp) if cp.is_positive() => {
            let (e_lo, e_hi) = e_enclosure();
            let base = Rational::from(4) * cp * c_m * c_n * c_n;
            if &base * &e_hi <= Rational::one() {
                ConditionStatus::Ok
            } else if &base * &e_lo > Rational::one() {
                ConditionStatus::Violated
            } else {
                ConditionStatus::NotEvaluable
            }
        }
        _ => ConditionStatus::NotEvaluable,
    };
    // c_M τ^(1/5) >= c_N τ^(1/25)  <=>  c_M^25 τ^5 >= c_N^25 τ
    let cond5 = c_m.pow(25) * t.pow(5) >= c_n.pow(25) * &t;
    // c_N τ^(1/25) >= 1  <=>  c_N^25 τ >= 1
    let cond7 = c_n.pow(25) * &t >= Rational::one();
    // c_M τ^(1/5) <= |S|/2  <=>  c_M^5 τ <= (|S|/2)^5
    let cond8 = c_m.pow(5) * &t <= half_s.pow(5);

    let conditions = vec![
        ConditionOutcome {
            id: "req1",
            status: ConditionStatus::from_bool(req1),
        },
        ConditionOutcome {
            id: "req2",
            status: cond4,
        },
        ConditionOutcome {
            id: "req3",
            status: cond3,
        },
        ConditionOutcome {
            id: "1",
            status: ConditionStatus::from_bool(*c_m <= Rational::new(1, 2).expect("nonzero")),
        },
        ConditionOutcome {
            id: "2",
            status: ConditionStatus::from_bool(*c_n <= Rational::new(1, 16).expect("nonzero")),
        },
        ConditionOutcome {
            id: "3",
            status: cond3,
        },
        ConditionOutcome {
            id: "4",
            status: cond4,
        },
        ConditionOutcome {
            id: "5",
            status: ConditionStatus::from_bool(cond5),
        },
        ConditionOutcome {
            id: "7",
            status: ConditionStatus::from_bool(cond7),
        },
        ConditionOutcome {
            id: "8",
            status: ConditionStatus::from_bool(cond8),
        },
    ];
    let regime_ok = conditions.iter().all(|c| c.status == ConditionStatus::Ok);
    ParameterChoice {
        m,
        n,
        conditions,
        regime_ok,
    }
}
