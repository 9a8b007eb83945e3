use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde_json::{Map, Value};

use crate::strata::{ModelError, RawClass};

/// A Laurent polynomial in `L` with integer coefficients.
///
/// This is the subring `Z[L, L^-1]` of the localized Grothendieck ring in
/// which all classes handled here live. Stored densely as `coeffs[i]` for
/// `L^(low + i)`, trimmed so that both ends are non-zero; zero is the empty
/// vector with `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GClass {
    low: i32,
    coeffs: Vec<i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("GClass coefficient overflow")
}

impl GClass {
    pub fn zero() -> Self {
        GClass::default()
    }

    pub fn one() -> Self {
        GClass::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        GClass::monomial(c, 0)
    }

    /// The class of the affine line.
    pub fn lefschetz() -> Self {
        GClass::monomial(1, 1)
    }

    /// `c * L^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        if c == 0 {
            return GClass::zero();
        }
        GClass { low: k, coeffs: vec![c] }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut g = GClass::zero();
        for (k, c) in terms {
            g.add_monomial(c, k);
        }
        g
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            *self = GClass::zero();
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Grows the storage to cover exponents `low..=high`.
    fn cover(&mut self, low: i32, high: i32) {
        if self.is_zero() {
            self.low = low;
            self.coeffs = vec![0; (high - low + 1) as usize];
            return;
        }
        if low < self.low {
            let extra = (self.low - low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat(0).take(extra));
            self.low = low;
        }
        if high > self.high() {
            self.coeffs.resize((high - self.low + 1) as usize, 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: i32) -> i64 {
        usize::try_from(k - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).copied())
            .unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs with non-zero coefficient, in
    /// increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    pub fn add_monomial(&mut self, c: i64, k: i32) {
        if c == 0 {
            return;
        }
        self.cover(k, k);
        let i = (k - self.low) as usize;
        self.coeffs[i] = checked(self.coeffs[i].checked_add(c));
        self.trim();
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return GClass::zero();
        }
        GClass {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return GClass::zero();
        }
        GClass {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&v| checked(v.checked_mul(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(GClass::one(), |acc, _| &acc * self)
    }

    /// Evaluation at `L = 1` (the Euler characteristic realization).
    pub fn euler(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn from_raw(raw: &RawClass) -> Result<Self, ModelError> {
        let mut g = GClass::zero();
        for (k, &c) in &raw.coefficients {
            let e: i32 = k
                .trim()
                .parse()
                .map_err(|_| ModelError::InvalidClass(format!("exponent `{k}` is not an integer")))?;
            g.add_monomial(c, e);
        }
        Ok(g)
    }

    pub fn to_raw(&self) -> RawClass {
        RawClass {
            coefficients: self.terms().map(|(k, c)| (k.to_string(), c)).collect(),
        }
    }

    /// `{"exponent": coefficient, ...}` with string keys.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, c) in self.terms() {
            map.insert(k.to_string(), Value::from(c));
        }
        Value::Object(map)
    }
}

impl fmt::Debug for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i32, i64)> = self.terms().collect();
        for (n, &(k, c)) in terms.iter().rev().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (k, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "L")?,
                (1, a) => write!(f, "{a}L")?,
                (k, 1) => write!(f, "L^{k}")?,
                (k, a) => write!(f, "{a}L^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for GClass {
    fn from(c: i64) -> Self {
        GClass::constant(c)
    }
}

impl Add for &GClass {
    type Output = GClass;
    fn add(self, rhs: &GClass) -> GClass {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GClass {
    type Output = GClass;
    fn add(mut self, rhs: GClass) -> GClass {
        self += &rhs;
        self
    }
}

impl AddAssign<&GClass> for GClass {
    fn add_assign(&mut self, rhs: &GClass) {
        if rhs.is_zero() {
            return;
        }
        self.cover(rhs.low, rhs.high());
        let offset = (rhs.low - self.low) as usize;
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[offset + i];
            *slot = checked(slot.checked_add(c));
        }
        self.trim();
    }
}

impl Neg for &GClass {
    type Output = GClass;
    fn neg(self) -> GClass {
        self.scale(-1)
    }
}

impl Neg for GClass {
    type Output = GClass;
    fn neg(self) -> GClass {
        self.scale(-1)
    }
}

impl Sub for &GClass {
    type Output = GClass;
    fn sub(self, rhs: &GClass) -> GClass {
        self + &(-rhs)
    }
}

impl Sub for GClass {
    type Output = GClass;
    fn sub(self, rhs: GClass) -> GClass {
        &self - &rhs
    }
}

impl Mul for &GClass {
    type Output = GClass;
    fn mul(self, rhs: &GClass) -> GClass {
        if self.is_zero() || rhs.is_zero() {
            return GClass::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                let p = checked(x.checked_mul(y));
                coeffs[i + j] = checked(coeffs[i + j].checked_add(p));
            }
        }
        let mut out = GClass {
            low: self.low + rhs.low,
            coeffs,
        };
        out.trim();
        out
    }
}

impl Mul for GClass {
    type Output = GClass;
    fn mul(self, rhs: GClass) -> GClass {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_class() -> impl Strategy<Value = GClass> {
        proptest::collection::vec((-4i32..=4, -5i64..=5), 0..5).prop_map(GClass::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_class(), b in arb_class(), c in arb_class()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &GClass::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).euler(), a.euler() * b.euler());
        }
    }

    #[test]
    fn euler_examples() {
        let l = GClass::lefschetz();
        assert_eq!((&l + &GClass::one()).euler(), 2);
        let one_minus_l = &GClass::one() - &l;
        let x = GClass::from_terms([(3, 7), (-2, 1)]);
        assert_eq!((&one_minus_l * &x).euler(), 0);
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let g = GClass::from_terms([(1, 2), (1, -2), (0, 1)]);
        assert_eq!(g.terms().collect::<Vec<_>>(), [(0, 1)]);
    }

    #[test]
    fn display() {
        let g = GClass::from_terms([(1, 1), (0, -1), (-2, 3)]);
        assert_eq!(g.to_string(), "L - 1 + 3L^-2");
        assert_eq!(GClass::zero().to_string(), "0");
    }

    #[test]
    fn raw_parsing() {
        let raw: RawClass = serde_json::from_str(r#"{"L": {"1": 1, "0": -1}}"#).unwrap();
        let g = GClass::from_raw(&raw).unwrap();
        assert_eq!(g, &GClass::lefschetz() - &GClass::one());
        let bad: RawClass = serde_json::from_str(r#"{"L": {"x": 1}}"#).unwrap();
        assert!(GClass::from_raw(&bad).is_err());
    }
}
