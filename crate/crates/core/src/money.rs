//! Exact money arithmetic in integer cents.
//!
//! Bid prices carry at most two decimal places (354.35 means 35435 cents).
//! Keeping amounts as integers makes every sum and comparison exact, so
//! equal-value ties resolve the same way on every platform. Amounts are
//! parsed from decimal strings and never pass through binary floating point.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoneyError {
    #[error("invalid price {literal:?}: {reason}")]
    Parse {
        literal: String,
        reason: &'static str,
    },
    #[error("money arithmetic overflow")]
    Overflow,
}

/// A non-negative amount in hundredths of one currency unit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Money {
    cents: u64,
}

impl Money {
    pub const ZERO: Money = Money { cents: 0 };

    pub const fn from_cents(cents: u64) -> Self {
        Money { cents }
    }

    pub const fn cents(self) -> u64 {
        self.cents
    }

    pub fn checked_add(self, rhs: Money) -> Result<Money, MoneyError> {
        self.cents
            .checked_add(rhs.cents)
            .map(Money::from_cents)
            .ok_or(MoneyError::Overflow)
    }

    /// Scales the amount by an integer factor.
    pub fn checked_mul(self, factor: u64) -> Result<Money, MoneyError> {
        self.cents
            .checked_mul(factor)
            .map(Money::from_cents)
            .ok_or(MoneyError::Overflow)
    }

    /// Sums amounts, failing on overflow instead of wrapping.
    pub fn checked_sum<I>(amounts: I) -> Result<Money, MoneyError>
    where
        I: IntoIterator<Item = Money>,
    {
        amounts.into_iter().try_fold(Money::ZERO, Money::checked_add)
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.cents / 100, self.cents % 100)
    }
}

impl FromStr for Money {
    type Err = MoneyError;

    /// Parses an unsigned decimal with at most two fractional digits.
    fn from_str(s: &str) -> Result<Self, MoneyError> {
        let parse_err = |reason| MoneyError::Parse {
            literal: s.to_string(),
            reason,
        };
        let (units_str, frac_str) = match s.split_once('.') {
            Some((units, frac)) => (units, frac),
            None => (s, ""),
        };
        if units_str.is_empty() || !units_str.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err("expected an unsigned decimal amount"));
        }
        if s.contains('.')
            && (frac_str.is_empty()
                || frac_str.len() > 2
                || !frac_str.bytes().all(|b| b.is_ascii_digit()))
        {
            return Err(parse_err("expected one or two digits after the decimal point"));
        }
        let units: u64 = units_str.parse().map_err(|_| parse_err("amount out of range"))?;
        let frac_cents = match frac_str.len() {
            0 => 0,
            1 => u64::from(frac_str.as_bytes()[0] - b'0') * 10,
            _ => frac_str.parse::<u64>().expect("two ascii digits"),
        };
        units
            .checked_mul(100)
            .and_then(|cents| cents.checked_add(frac_cents))
            .map(Money::from_cents)
            .ok_or_else(|| parse_err("amount out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_decimal_prices_exactly() {
        assert_eq!("354.35".parse::<Money>().unwrap(), Money::from_cents(35435));
        assert_eq!("141.68".parse::<Money>().unwrap(), Money::from_cents(14168));
        assert_eq!("0.00".parse::<Money>().unwrap(), Money::ZERO);
    }

    #[test]
    fn parses_short_forms() {
        assert_eq!("300".parse::<Money>().unwrap(), Money::from_cents(30000));
        assert_eq!("212.6".parse::<Money>().unwrap(), Money::from_cents(21260));
        assert_eq!("0".parse::<Money>().unwrap(), Money::ZERO);
    }

    #[test]
    fn rejects_malformed_prices() {
        for bad in ["", ".", "1.", ".5", "-1", "-0.01", "1.234", "1,50", "abc", "1e3", "+2"] {
            assert!(bad.parse::<Money>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!("184467440737095516.16".parse::<Money>().is_err());
        assert!("99999999999999999999".parse::<Money>().is_err());
    }

    #[test]
    fn displays_with_two_decimals() {
        assert_eq!(Money::from_cents(28338).to_string(), "283.38");
        assert_eq!(Money::from_cents(115033).to_string(), "1150.33");
        assert_eq!(Money::ZERO.to_string(), "0.00");
        assert_eq!(Money::from_cents(5).to_string(), "0.05");
    }

    #[test]
    fn display_round_trips() {
        for cents in [0, 1, 99, 100, 35435, u64::MAX] {
            let money = Money::from_cents(cents);
            assert_eq!(money.to_string().parse::<Money>().unwrap(), money);
        }
    }

    #[test]
    fn addition_never_wraps() {
        let max = Money::from_cents(u64::MAX);
        assert_eq!(max.checked_add(Money::from_cents(1)), Err(MoneyError::Overflow));
        assert_eq!(
            Money::checked_sum([max, Money::from_cents(1)]),
            Err(MoneyError::Overflow)
        );
        assert_eq!(
            Money::checked_sum([Money::from_cents(2), Money::from_cents(3)]).unwrap(),
            Money::from_cents(5)
        );
    }
}
