//! Exact fractions for λ and θ.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Frac = Ratio<u64>;

/// Parse `"p/q"` or an integer.
pub fn parse_frac(s: &str) -> Result<Frac> {
    s.trim().parse::<Frac>().map_err(|_| Error::Malformed(format!("not a fraction: {s:?}")))
}

/// `a < f·b` decided exactly.
pub fn lt_frac_times(a: usize, f: Frac, b: usize) -> bool {
    (a as u128) * (*f.denom() as u128) < (*f.numer() as u128) * (b as u128)
}

/// `a > f·b` decided exactly.
pub fn gt_frac_times(a: usize, f: Frac, b: usize) -> bool {
    (a as u128) * (*f.denom() as u128) > (*f.numer() as u128) * (b as u128)
}

pub fn open_unit(f: Frac) -> bool {
    *f.numer() > 0 && f.numer() < f.denom()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_compare() {
        let f = parse_frac("1/8").unwrap();
        assert!(lt_frac_times(0, f, 8));
        assert!(!lt_frac_times(1, f, 8));
        assert!(lt_frac_times(1, f, 9));
        assert!(gt_frac_times(5, parse_frac("1/2").unwrap(), 9));
        assert!(!gt_frac_times(4, parse_frac("2/4").unwrap(), 8));
        assert!(parse_frac("x").is_err());
        assert!(open_unit(f));
        assert!(!open_unit(parse_frac("1").unwrap()));
    }
}
