//! Exact edge costs.
//!
//! Costs are nonnegative rationals. Searches that need dense integer tables
//! rescale a cost vector by the lcm of its denominators first.

use alloc::vec::Vec;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub type Cost = Ratio<i128>;

pub fn cost(num: i128, den: i128) -> Cost {
    Ratio::new(num, den)
}

pub fn int(n: i128) -> Cost {
    Ratio::from_integer(n)
}

/// Integer image of a cost vector: `scaled[i] = costs[i] * scale`.
#[derive(Clone, Debug)]
pub struct ScaledCosts {
    pub scaled: Vec<u64>,
    pub scale: i128,
}

impl ScaledCosts {
    pub fn new(costs: &[Cost]) -> Self {
        let scale = costs.iter().fold(1i128, |acc, c| acc.lcm(c.denom()));
        let scaled = costs
            .iter()
            .map(|c| {
                let v = c * Ratio::from_integer(scale);
                debug_assert!(v.is_integer() && v >= Ratio::zero());
                v.to_integer().to_u64().expect("scaled cost overflows u64")
            })
            .collect();
        ScaledCosts { scaled, scale }
    }

    pub fn to_cost(&self, v: u64) -> Cost {
        Ratio::new(v as i128, self.scale)
    }
}

/// Exact sum of costs.
pub fn total<'a>(it: impl IntoIterator<Item = &'a Cost>) -> Cost {
    it.into_iter().fold(Cost::zero(), |a, b| a + b)
}

/// `ceil(x)` for a nonnegative rational.
pub fn ceil_u64(x: Cost) -> u64 {
    x.ceil().to_integer().max(0) as u64
}

/// `floor(x)` for a nonnegative rational.
pub fn floor_u64(x: Cost) -> u64 {
    x.floor().to_integer().max(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_uses_lcm_of_denominators() {
        let s = ScaledCosts::new(&[cost(1, 2), cost(1, 3), int(2)]);
        assert_eq!(s.scale, 6);
        assert_eq!(s.scaled, [3, 2, 12]);
        assert_eq!(s.to_cost(5), cost(5, 6));
    }
}
