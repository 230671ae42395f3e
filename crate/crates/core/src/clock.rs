//! Simulated time for the discrete-event engine.
//!
//! Timestamps are integer milliseconds, so arrival and response-time
//! arithmetic is exact. Wall-clock processing time is a separate concern,
//! measured with `std::time::Instant` where needed.

use std::fmt;
use std::ops::{Add, Mul, Sub};

/// A point on (or span of) the simulated clock, in whole milliseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimTime(u64);

impl SimTime {
    pub const ZERO: SimTime = SimTime(0);

    pub const fn from_ms(ms: u64) -> Self {
        SimTime(ms)
    }

    pub const fn from_secs(secs: u64) -> Self {
        SimTime(secs * 1000)
    }

    pub const fn as_ms(self) -> u64 {
        self.0
    }
}

impl Add for SimTime {
    type Output = SimTime;

    fn add(self, rhs: SimTime) -> SimTime {
        SimTime(self.0.checked_add(rhs.0).expect("simulated time overflow"))
    }
}

impl Sub for SimTime {
    type Output = SimTime;

    fn sub(self, rhs: SimTime) -> SimTime {
        SimTime(self.0.checked_sub(rhs.0).expect("simulated time went backwards"))
    }
}

impl Mul<u64> for SimTime {
    type Output = SimTime;

    fn mul(self, rhs: u64) -> SimTime {
        SimTime(self.0.checked_mul(rhs).expect("simulated time overflow"))
    }
}

/// Prints in seconds, trimming trailing zeros: 37000 ms -> "37", 6500 -> "6.5".
impl fmt::Display for SimTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let secs = self.0 / 1000;
        let ms = self.0 % 1000;
        if ms == 0 {
            write!(f, "{secs}")
        } else {
            let frac = format!("{ms:03}");
            write!(f, "{}.{}", secs, frac.trim_end_matches('0'))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let x = SimTime::from_secs(4);
        assert_eq!(x * 9 + SimTime::from_secs(1), SimTime::from_ms(37_000));
        assert_eq!(SimTime::from_secs(10) - SimTime::from_secs(4), SimTime::from_secs(6));
    }

    #[test]
    #[should_panic(expected = "backwards")]
    fn subtraction_underflow_panics() {
        let _ = SimTime::from_secs(1) - SimTime::from_secs(2);
    }

    #[test]
    fn displays_seconds_trimmed() {
        assert_eq!(SimTime::from_secs(37).to_string(), "37");
        assert_eq!(SimTime::from_ms(6500).to_string(), "6.5");
        assert_eq!(SimTime::from_ms(6050).to_string(), "6.05");
        assert_eq!(SimTime::from_ms(6005).to_string(), "6.005");
        assert_eq!(SimTime::ZERO.to_string(), "0");
    }
}
