pub mod converge;
pub mod density;
pub mod hermitian;
pub mod kernel;
pub mod sample;
pub mod selftest;
pub mod verify;

use rmt_kernels::Beta;

use crate::output::{config_error, Failure};

pub fn beta(b: u32) -> Result<Beta, Failure> {
    Ok(Beta::from_int(b)?)
}

/// "lo:hi:n" with n ≥ 1 nodes, end points included.
pub fn parse_axis(s: &str) -> Result<(f64, f64, usize), Failure> {
    let bad = || config_error(format!("axis must look like lo:hi:count, got '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && hi < lo) {
        return Err(bad());
    }
    Ok((lo, hi, n))
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| config_error(format!("bad {what} list '{s}'"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes_and_lists() {
        assert_eq!(parse_axis("-2:2:9").unwrap(), (-2.0, 2.0, 9));
        assert_eq!(parse_axis("0.5:0.5:1").unwrap(), (0.5, 0.5, 1));
        assert!(parse_axis("2:-2:3").is_err());
        assert!(parse_axis("0:1").is_err());
        assert!(parse_axis("0:1:0").is_err());
        assert_eq!(parse_list::<usize>("50, 100,200", "N").unwrap(), vec![50, 100, 200]);
        assert!(parse_list::<f64>("1e-2,x", "sigma").is_err());
    }
}
