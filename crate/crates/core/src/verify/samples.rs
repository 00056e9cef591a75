use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::series::{Bound, PowerSeries};

/// Explicit odd univalent functions with `a_1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddUnivalent {
    /// `z/(1 − z²)`, every odd coefficient equal to 1.
    OddKoebe,
    /// `z/(1 + z²)`, odd coefficients alternating in sign.
    RotatedOddKoebe,
    Identity,
}

impl OddUnivalent {
    pub const ALL: [OddUnivalent; 3] = [
        OddUnivalent::OddKoebe,
        OddUnivalent::RotatedOddKoebe,
        OddUnivalent::Identity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OddUnivalent::OddKoebe => "z/(1-z^2)",
            OddUnivalent::RotatedOddKoebe => "z/(1+z^2)",
            OddUnivalent::Identity => "z",
        }
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        match self {
            OddUnivalent::OddKoebe => u / (1.0 - u * u),
            OddUnivalent::RotatedOddKoebe => u / (1.0 + u * u),
            OddUnivalent::Identity => u,
        }
    }

    /// `max_{|u| ≤ radius} |f(u)|` for `radius < 1`.
    pub fn max_modulus(&self, radius: f64) -> f64 {
        match self {
            OddUnivalent::OddKoebe | OddUnivalent::RotatedOddKoebe => {
                radius / (1.0 - radius * radius)
            }
            OddUnivalent::Identity => radius,
        }
    }

    /// Truncated expansion with the coefficient bound `|a_n| ≤ 1`.
    pub fn series(&self, order: usize) -> PowerSeries {
        let coeffs: Vec<f64> = (0..=order)
            .map(|n| match self {
                OddUnivalent::OddKoebe => (n % 2) as f64,
                OddUnivalent::RotatedOddKoebe if n % 2 == 1 => {
                    if (n / 2) % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                }
                OddUnivalent::RotatedOddKoebe => 0.0,
                OddUnivalent::Identity => (n == 1) as u8 as f64,
            })
            .collect();
        PowerSeries::from_real(&coeffs)
            .and_then(|s| {
                s.with_bound(Bound::Envelope {
                    scale: 1.0,
                    radius: 1.0,
                })
            })
            .expect("finite coefficients")
    }
}

/// Named truncated expansions of the odd univalent samples.
pub fn odd_univalent_samples(order: usize) -> Vec<(String, PowerSeries)> {
    OddUnivalent::ALL
        .iter()
        .map(|f| (f.name().to_string(), f.series(order)))
        .collect()
}
