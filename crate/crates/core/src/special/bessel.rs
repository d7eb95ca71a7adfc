//! Bessel functions of the first kind and integer order.
//!
//! Values are generated for a whole range of orders at once by Miller's
//! backward recurrence
//!
//! ```text
//! J_{k-1}(z) = (2k/z) J_k(z) - J_{k+1}(z)
//! ```
//!
//! started well above both the largest requested order and the turning point
//! `k ≈ |z|`. The unnormalized sequence is fixed by the completeness relation
//! `J_0² + 2 Σ_{k≥1} J_k² = 1`, with the overall sign taken from
//! `J_0 + 2 Σ_{k≥1} J_{2k} = 1`. Negative orders and negative arguments follow
//! from `J_{-n}(z) = (-1)^n J_n(z)` and `J_n(-z) = (-1)^n J_n(z)`.

use crate::error::{Error, Result};

/// Below this magnitude the argument is treated as zero and `J_n` is the
/// Kronecker delta.
const TINY_ARGUMENT: f64 = 1e-150;

/// Rescale threshold for the backward recurrence. Squares of the running
/// values must stay finite.
const RESCALE_ABOVE: f64 = 1e100;

/// Bessel values `J_n(z)` for consecutive orders `order_min..=order_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselRow {
    order_min: i64,
    order_max: i64,
    argument: f64,
    values: Vec<f64>,
}

impl BesselRow {
    pub fn order_min(&self) -> i64 {
        self.order_min
    }

    pub fn order_max(&self) -> i64 {
        self.order_max
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `J_order(argument)`, or zero when the order is outside the row.
    pub fn get(&self, order: i64) -> f64 {
        if order < self.order_min || order > self.order_max {
            return 0.0;
        }
        self.values[(order - self.order_min) as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `J_order(argument)` for integer order.
pub fn bessel_j(order: i64, argument: f64) -> Result<f64> {
    Ok(bessel_row(order, order, argument)?.values[0])
}

/// `J_n(argument)` for every `n` in `order_min..=order_max`.
pub fn bessel_row(order_min: i64, order_max: i64, argument: f64) -> Result<BesselRow> {
    if !argument.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite, got {argument}"
        )));
    }
    if order_min > order_max {
        return Err(Error::Domain(format!(
            "empty order range {order_min}..={order_max}"
        )));
    }

    let top = order_min.unsigned_abs().max(order_max.unsigned_abs()) as usize;
    let magnitude = argument.abs();
    let nonneg = if magnitude < TINY_ARGUMENT {
        let mut v = vec![0.0; top + 1];
        v[0] = 1.0;
        v
    } else {
        miller(top, magnitude)
    };

    let flip_argument = argument < 0.0;
    let values = (order_min..=order_max)
        .map(|n| {
            let m = n.unsigned_abs() as usize;
            let odd = m % 2 == 1;
            // (-1)^n from a negative order and (-1)^n from a negative argument.
            let negate = odd && ((n < 0) != flip_argument);
            if negate {
                -nonneg[m]
            } else {
                nonneg[m]
            }
        })
        .collect();

    Ok(BesselRow {
        order_min,
        order_max,
        argument,
        values,
    })
}

/// Starting order for the backward recurrence.
fn start_order(top: usize, z: f64) -> usize {
    let margin = (10.0 * z.cbrt()).max(20.0).ceil() as usize;
    let base = top.max(z.ceil() as usize);
    let start = base + margin + 10;
    // even start keeps the J_{2k} normalization sum aligned
    start + (start % 2)
}

/// `J_0(z) ..= J_top(z)` for `z > 0`.
fn miller(top: usize, z: f64) -> Vec<f64> {
    let start = start_order(top, z);
    let mut out = vec![0.0; top + 1];

    let mut above = 0.0_f64; // J_{k+1}
    let mut current = 1e-30_f64; // J_k
    let mut sum_sq = 0.0_f64; // Σ_{k≥1} J_k²
    let mut sum_even = 0.0_f64; // Σ_{k≥1} J_{2k}

    let mut k = start;
    loop {
        if k <= top {
            out[k] = current;
        }
        if k == 0 {
            break;
        }
        sum_sq += current * current;
        if k.is_multiple_of(2) {
            sum_even += current;
        }

        let below = (2.0 * k as f64 / z) * current - above;
        above = current;
        current = below;
        k -= 1;

        if current.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            current *= s;
            above *= s;
            sum_sq *= s * s;
            sum_even *= s;
            for v in out.iter_mut().skip(k + 1) {
                *v *= s;
            }
        }
    }

    let j0 = current;
    let norm_sq = j0 * j0 + 2.0 * sum_sq;
    let signed = j0 + 2.0 * sum_even;
    let norm = norm_sq.sqrt().copysign(signed);
    for v in &mut out {
        *v /= norm;
    }
    out
}
