use thiserror::Error;

use super::GClass;
use crate::strata::{ComponentSet, StrataModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotivicError {
    #[error("stratum `{0}` has no class")]
    MissingClass(String),
    #[error("ramification index must be positive")]
    ZeroRamification,
}

/// A model whose strata all carry classes, with its relative dimension and
/// ramification index.
#[derive(Debug, Clone)]
pub struct ClassData {
    model: StrataModel,
    relative_dimension: u32,
    ramification: u32,
}

impl ClassData {
    pub fn new(model: StrataModel, relative_dimension: u32, ramification: u32) -> Result<Self, MotivicError> {
        if ramification == 0 {
            return Err(MotivicError::ZeroRamification);
        }
        check_classes(&model)?;
        Ok(ClassData {
            model,
            relative_dimension,
            ramification,
        })
    }

    pub fn model(&self) -> &StrataModel {
        &self.model
    }

    pub fn relative_dimension(&self) -> u32 {
        self.relative_dimension
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    /// The nearby-cycles class `sum_J (1 - L)^{|J|-1} [E_J^o]`.
    pub fn nearby_cycles(&self) -> GClass {
        nearby_cycles(&self.model).expect("classes checked on construction")
    }

    /// The volume before normalization: `L^{-d_rel}` times the nearby cycles.
    pub fn volume(&self) -> GClass {
        self.nearby_cycles().shift(-(self.relative_dimension as i32))
    }
}

fn check_classes(model: &StrataModel) -> Result<(), MotivicError> {
    for (s, st) in model.strata().iter().enumerate() {
        if model.class_of(s).is_none() {
            return Err(MotivicError::MissingClass(st.id.clone()));
        }
    }
    Ok(())
}

/// `sum over non-empty J of (1 - L)^{|J|-1}` times the total class of the
/// strata with `psi = J`.
pub fn nearby_cycles(model: &StrataModel) -> Result<GClass, MotivicError> {
    check_classes(model)?;
    let one_minus_l = &GClass::one() - &GClass::lefschetz();
    let mut total = GClass::zero();
    for j in model.all_components().nonempty_subsets() {
        let class_j = model
            .strata_with_psi(j)
            .into_iter()
            .fold(GClass::zero(), |acc, s| &acc + model.class_of(s).expect("checked"));
        if !class_j.is_zero() {
            total += &(&one_minus_l.pow(j.len() as u32 - 1) * &class_j);
        }
    }
    Ok(total)
}

/// Euler characteristics of the strata with `|psi| = 1`, summed.
pub fn component_euler_sum(model: &StrataModel) -> Result<i64, MotivicError> {
    check_classes(model)?;
    Ok((0..model.component_count())
        .flat_map(|c| model.strata_with_psi(ComponentSet::singleton(c)))
        .map(|s| model.class_of(s).expect("checked").euler())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn examples() {
        let l = GClass::lefschetz();
        let smooth = nearby_cycles(&examples::smooth()).unwrap();
        assert_eq!(smooth, &l + &GClass::one());
        assert_eq!(smooth.euler(), 2);
        let i2 = nearby_cycles(&examples::kodaira_cycle(2)).unwrap();
        assert!(i2.is_zero());
        assert_eq!(i2.euler(), 0);
        let chain = nearby_cycles(&examples::chain_with_classes()).unwrap();
        assert_eq!(chain, &l + &GClass::one());
        assert_eq!(
            nearby_cycles(&examples::kodaira_two_refined()).unwrap(),
            nearby_cycles(&examples::kodaira_cycle(2)).unwrap()
        );
    }

    #[test]
    fn missing_class() {
        assert_eq!(
            nearby_cycles(&examples::triple_point()),
            Err(MotivicError::MissingClass("A".into()))
        );
    }

    #[test]
    fn volume_normalization() {
        let data = ClassData::new(examples::smooth(), 1, 1).unwrap();
        assert_eq!(data.volume(), GClass::from_terms([(0, 1), (-1, 1)]));
        assert!(ClassData::new(examples::smooth(), 1, 0).is_err());
    }
}
