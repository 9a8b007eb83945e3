//! Bundled models.

use std::collections::BTreeMap;

use crate::motivic::GClass;
use crate::strata::{RawModel, RawStratum, StrataModel};

struct Builder {
    raw: RawModel,
}

impl Builder {
    fn new(components: &[&str]) -> Self {
        Builder {
            raw: RawModel {
                components: components.iter().map(|c| c.to_string()).collect(),
                r: None,
                strata: Vec::new(),
                classes: BTreeMap::new(),
            },
        }
    }

    fn stratum(mut self, id: &str, psi: &[&str], faces: &[(&str, &str)]) -> Self {
        self.raw.strata.push(RawStratum {
            id: id.to_string(),
            psi: psi.iter().map(|c| c.to_string()).collect(),
            faces: faces.iter().map(|(c, f)| (c.to_string(), f.to_string())).collect(),
        });
        self
    }

    fn class(mut self, id: &str, class: GClass) -> Self {
        self.raw.classes.insert(id.to_string(), class.to_raw());
        self
    }

    fn build(self) -> StrataModel {
        StrataModel::validate(&self.raw).expect("bundled model is valid")
    }
}

fn l_minus_one() -> GClass {
    &GClass::lefschetz() - &GClass::one()
}

/// Two lines meeting in a point (`xy = 0`).
pub fn node() -> StrataModel {
    Builder::new(&["A", "B"])
        .stratum("sA", &["A"], &[])
        .stratum("sB", &["B"], &[])
        .stratum("sAB", &["A", "B"], &[("A", "sB"), ("B", "sA")])
        .class("sA", l_minus_one())
        .class("sB", l_minus_one())
        .class("sAB", GClass::one())
        .build()
}

/// A single smooth projective line.
pub fn smooth() -> StrataModel {
    Builder::new(&["A"])
        .stratum("sA", &["A"], &[])
        .class("sA", &GClass::lefschetz() + &GClass::one())
        .build()
}

/// Kodaira type `I_n` (`n >= 2`): a cycle of `n` rational curves `E0..E{n-1}`
/// with double points `p{i}` on `E{i}` and `E{i+1 mod n}`.
pub fn kodaira_cycle(n: usize) -> StrataModel {
    assert!(n >= 2, "a strictly semi-stable cycle needs at least two components");
    let names: Vec<String> = (0..n).map(|i| format!("E{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut b = Builder::new(&refs);
    for name in &names {
        b = b.stratum(name, &[name], &[]).class(name, l_minus_one());
    }
    for i in 0..n {
        let (x, y) = (&names[i], &names[(i + 1) % n]);
        let id = format!("p{i}");
        b = b
            .stratum(&id, &[x, y], &[(x, y), (y, x)])
            .class(&id, GClass::one());
    }
    b.build()
}

/// The `I_2` cycle with the double point `p1` replaced by a chain through an
/// exceptional curve `C`: double points `q1 = E1 ∩ C` and `q2 = C ∩ E0`.
pub fn kodaira_two_refined() -> StrataModel {
    Builder::new(&["E0", "E1", "C"])
        .stratum("E0", &["E0"], &[])
        .stratum("E1", &["E1"], &[])
        .stratum("C", &["C"], &[])
        .stratum("p0", &["E0", "E1"], &[("E0", "E1"), ("E1", "E0")])
        .stratum("q1", &["E1", "C"], &[("E1", "C"), ("C", "E1")])
        .stratum("q2", &["C", "E0"], &[("C", "E0"), ("E0", "C")])
        .class("E0", l_minus_one())
        .class("E1", l_minus_one())
        .class("C", l_minus_one())
        .class("p0", GClass::one())
        .class("q1", GClass::one())
        .class("q2", GClass::one())
        .build()
}

/// A chain `A - C - B`: `A` and `B` are affine lines, `C` a line with two
/// points removed.
pub fn chain_with_classes() -> StrataModel {
    Builder::new(&["A", "B", "C"])
        .stratum("A", &["A"], &[])
        .stratum("B", &["B"], &[])
        .stratum("C", &["C"], &[])
        .stratum("pAC", &["A", "C"], &[("A", "C"), ("C", "A")])
        .stratum("pCB", &["C", "B"], &[("C", "B"), ("B", "C")])
        .class("A", GClass::lefschetz())
        .class("B", GClass::lefschetz())
        .class("C", l_minus_one())
        .class("pAC", GClass::one())
        .class("pCB", GClass::one())
        .build()
}

/// Three planes meeting pairwise in lines and all together in a point
/// (`xyz = 0`).
pub fn triple_point() -> StrataModel {
    Builder::new(&["A", "B", "C"])
        .stratum("A", &["A"], &[])
        .stratum("B", &["B"], &[])
        .stratum("C", &["C"], &[])
        .stratum("AB", &["A", "B"], &[("A", "B"), ("B", "A")])
        .stratum("AC", &["A", "C"], &[("A", "C"), ("C", "A")])
        .stratum("BC", &["B", "C"], &[("B", "C"), ("C", "B")])
        .stratum("ABC", &["A", "B", "C"], &[("A", "BC"), ("B", "AC"), ("C", "AB")])
        .build()
}

/// Named bundled models, as accepted by the command line.
pub fn by_name(name: &str) -> Option<StrataModel> {
    match name {
        "node" => Some(node()),
        "smooth" => Some(smooth()),
        "chain" => Some(chain_with_classes()),
        "triple" => Some(triple_point()),
        "i2-refined" => Some(kodaira_two_refined()),
        _ => {
            let n: usize = name.strip_prefix('i')?.parse().ok()?;
            (n >= 2).then(|| kodaira_cycle(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_models_validate() {
        for name in ["node", "smooth", "chain", "triple", "i2-refined", "i2", "i3", "i6"] {
            let m = by_name(name).unwrap();
            assert!(!m.strata().is_empty(), "{name}");
        }
        assert!(by_name("i1").is_none());
        assert!(by_name("unknown").is_none());
    }

    #[test]
    fn cycle_shape() {
        let m = kodaira_cycle(4);
        assert_eq!(m.component_count(), 4);
        assert_eq!(m.strata().len(), 8);
        assert_eq!(m.max_psi(), 2);
    }
}
