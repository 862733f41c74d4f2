//! The explicit lower-bound constant for linear forms in logarithms:
//! C = 1.4 * 30^(s+3) * s^4.5 * D^2 (1 + log D)(1 + log B) A_1 ... A_s,
//! so that log|Lambda| >= -C for the nonvanishing form.

use crate::error::{Error, Result};
use crate::numerics::{compare, HPReal, Ordering3};

/// Parameters of one Matveev instantiation.
#[derive(Debug, Clone)]
pub struct MatveevParams {
    /// Number of logarithms.
    pub s: u32,
    /// Degree of the relevant number field.
    pub degree: u32,
    /// The A_j majorants; each must be at least 0.16.
    pub a: Vec<HPReal>,
    /// Bound on the largest |b_i| exponent.
    pub b_cap: HPReal,
}

impl MatveevParams {
    fn working_digits(&self) -> u32 {
        self.a
            .iter()
            .map(HPReal::digits)
            .chain(std::iter::once(self.b_cap.digits()))
            .max()
            .unwrap_or(50)
    }

    fn validate(&self) -> Result<()> {
        if self.s == 0 || self.degree == 0 {
            return Err(Error::Usage(
                "Matveev parameters require s >= 1 and degree >= 1".to_string(),
            ));
        }
        if self.a.len() != self.s as usize {
            return Err(Error::Usage(format!(
                "expected {} majorants, got {}",
                self.s,
                self.a.len()
            )));
        }
        let d = self.working_digits();
        let floor = HPReal::from_decimal_str("0.16", d)?;
        for (j, aj) in self.a.iter().enumerate() {
            if compare(aj, &floor) == Ordering3::Less {
                return Err(Error::Usage(format!(
                    "majorant A_{} is certified below 0.16",
                    j + 1
                )));
            }
        }
        let one = HPReal::from_int(1, d);
        if compare(&self.b_cap, &one) == Ordering3::Less {
            return Err(Error::Usage("exponent bound below 1".to_string()));
        }
        Ok(())
    }
}

/// Evaluate the Matveev constant C(p) as an error-tracked real.
pub fn matveev_constant(p: &MatveevParams) -> Result<HPReal> {
    p.validate()?;
    let d = p.working_digits();

    // 1.4 * 30^(s+3)
    let mut c = HPReal::from_decimal_str("1.4", d)?
        .mul(&HPReal::from_int(30, d).pow_int(i64::from(p.s) + 3)?);
    // s^4.5 = s^4 * sqrt(s)
    let s_hp = HPReal::from_int(i64::from(p.s), d);
    c = c.mul(&s_hp.pow_int(4)?).mul(&s_hp.sqrt()?);
    // D^2 (1 + log D)
    let deg = HPReal::from_int(i64::from(p.degree), d);
    let one = HPReal::from_int(1, d);
    c = c.mul(&deg.pow_int(2)?).mul(&one.add(&deg.ln()?));
    // (1 + log B)
    c = c.mul(&one.add(&p.b_cap.ln()?));
    for aj in &p.a {
        c = c.mul(aj);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{constant, rational, Constant};
    use num_bigint::BigInt;

    #[test]
    fn degenerate_instance_is_exactly_181440() {
        // s = 1, D = 1, A = [0.16], B = 1:
        // C = 1.4 * 30^4 * 1 * 1 * (1+0) * (1+0) * 0.16 = 181440
        let p = MatveevParams {
            s: 1,
            degree: 1,
            a: vec![HPReal::from_decimal_str("0.16", 60).unwrap()],
            b_cap: HPReal::from_int(1, 60),
        };
        let c = matveev_constant(&p).unwrap();
        assert!(c.contains_bigint(&BigInt::from(181_440)));
        // (1 + ln 1) carries a sliver of error, so equality is not exact,
        // but the radius must stay negligible against the value.
        use num_rational::BigRational;
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(10u32).pow(40));
        assert!(c.err_radius() < tiny);
    }

    #[test]
    fn monotone_in_every_parameter() {
        let digits = 80;
        let base = MatveevParams {
            s: 2,
            degree: 2,
            a: vec![
                constant(Constant::LogAlpha, digits).unwrap(),
                constant(Constant::Log32, digits).unwrap(),
            ],
            b_cap: HPReal::from_int(100, digits),
        };
        let c0 = matveev_constant(&base).unwrap();

        let mut bigger_a = base.clone();
        bigger_a.a[0] = bigger_a.a[0].mul(&HPReal::from_int(2, digits));
        assert_eq!(
            compare(&c0, &matveev_constant(&bigger_a).unwrap()),
            Ordering3::Less
        );

        let mut bigger_b = base.clone();
        bigger_b.b_cap = HPReal::from_int(1000, digits);
        assert_eq!(
            compare(&c0, &matveev_constant(&bigger_b).unwrap()),
            Ordering3::Less
        );

        let mut bigger_d = base.clone();
        bigger_d.degree = 3;
        assert_eq!(
            compare(&c0, &matveev_constant(&bigger_d).unwrap()),
            Ordering3::Less
        );

        let mut bigger_s = base.clone();
        bigger_s.s = 3;
        bigger_s.a.push(rational(1, 2, digits));
        assert_eq!(
            compare(&c0, &matveev_constant(&bigger_s).unwrap()),
            Ordering3::Less
        );
    }

    #[test]
    fn rejects_invalid_parameters() {
        let small_a = MatveevParams {
            s: 1,
            degree: 1,
            a: vec![rational(1, 10, 60)],
            b_cap: HPReal::from_int(5, 60),
        };
        assert!(matveev_constant(&small_a).is_err());
        let wrong_len = MatveevParams {
            s: 2,
            degree: 1,
            a: vec![HPReal::from_int(1, 60)],
            b_cap: HPReal::from_int(5, 60),
        };
        assert!(matveev_constant(&wrong_len).is_err());
    }
}
