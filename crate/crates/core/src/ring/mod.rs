//! Graded polynomial rings over prime fields.
//!
//! A [`Ring`] fixes the coefficient field, the variable names, a `Z^g`
//! grading (`g` is 1 or 2) and the active [`MonomialOrder`]. Rings are
//! shared behind an [`Arc`]; two rings are equal when all four components
//! agree.

mod field;
mod mono;
mod order;
mod parse;
pub(crate) mod poly;

pub use field::{is_prime, PrimeField};
pub use mono::Mono;
pub use order::MonomialOrder;
pub use parse::{format_poly, parse_poly};
pub use poly::{random_linear_form, MultiDegree, Poly, Term};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::collections::HashSet;
use std::sync::Arc;

/// Default characteristic used throughout.
pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

/// A degree vector in `Z^g`.
pub type Degree = SmallVec<[i32; 2]>;

pub type RingRef = Arc<Ring>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    grading: Vec<Degree>,
    arity: usize,
    order: MonomialOrder,
}

/// Builds a ring after validating names, characteristic, grading and order.
pub fn make_ring(
    names: &[&str],
    p: u64,
    grading: &[Vec<i32>],
    order: MonomialOrder,
) -> Result<RingRef> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    Ring::new(names, p, grading.to_vec(), order).map(Arc::new)
}

impl Ring {
    pub fn new(
        vars: Vec<String>,
        p: u64,
        grading: Vec<Vec<i32>>,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!("invalid variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if grading.len() != vars.len() {
            return Err(Error::InvalidGrading(format!(
                "{} degrees for {} variables",
                grading.len(),
                vars.len()
            )));
        }
        let arity = grading.first().map_or(1, |d| d.len());
        if !(1..=2).contains(&arity) {
            return Err(Error::InvalidGrading(format!("grading arity {arity} not in {{1,2}}")));
        }
        for (v, d) in vars.iter().zip(&grading) {
            if d.len() != arity {
                return Err(Error::InvalidGrading(format!("variable `{v}` has degree of wrong length")));
            }
            if d.iter().any(|&x| x < 0) || d.iter().all(|&x| x == 0) {
                return Err(Error::InvalidGrading(format!(
                    "variable `{v}` must have a nonzero, componentwise nonnegative degree"
                )));
            }
        }
        order.validate(vars.len())?;
        Ok(Ring {
            field,
            grading: grading.into_iter().map(Degree::from_vec).collect(),
            vars,
            arity,
            order,
        })
    }

    /// Standard graded ring (every variable of degree 1) in degrevlex.
    pub fn standard(names: &[&str], p: u64) -> Result<RingRef> {
        let grading = vec![vec![1]; names.len()];
        make_ring(names, p, &grading, MonomialOrder::DegRevLex)
    }

    /// Standard graded ring with variables `prefix1..prefixn`.
    pub fn standard_indexed(prefix: &str, n: usize, p: u64) -> Result<RingRef> {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Ring::standard(&refs, p)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Number of grading components.
    #[inline]
    pub fn grading_arity(&self) -> usize {
        self.arity
    }

    pub fn var_degree(&self, i: usize) -> &Degree {
        &self.grading[i]
    }

    pub fn grading(&self) -> &[Degree] {
        &self.grading
    }

    /// True when the ring is `Z`-graded with every variable of degree 1.
    pub fn is_standard_graded(&self) -> bool {
        self.arity == 1 && self.grading.iter().all(|d| d[0] == 1)
    }

    pub fn zero_degree(&self) -> Degree {
        SmallVec::from_elem(0, self.arity)
    }

    pub fn degree_of(&self, m: &Mono) -> Degree {
        let mut d = self.zero_degree();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                for (acc, g) in d.iter_mut().zip(&self.grading[i]) {
                    *acc += e as i32 * g;
                }
            }
        }
        d
    }

    /// Sum of the grading components of each variable; a positive weight
    /// vector compatible with the grading.
    pub fn total_weights(&self) -> Vec<u32> {
        self.grading
            .iter()
            .map(|d| d.iter().map(|&x| x as u32).sum())
            .collect()
    }

    /// Same ring with a different active order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        order.validate(self.nvars())?;
        let mut r = self.clone();
        r.order = order;
        Ok(Arc::new(r))
    }

    /// Same ring with a different grading.
    pub fn with_grading(&self, grading: &[Vec<i32>]) -> Result<RingRef> {
        Ring::new(self.vars.clone(), self.field.characteristic() as u64, grading.to_vec(), self.order.clone())
            .map(Arc::new)
    }

    /// Ring with the given variables appended (names must stay unique).
    pub fn extended(&self, names: &[String], degrees: &[Degree], order: MonomialOrder) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().cloned());
        let mut grading: Vec<Vec<i32>> = self.grading.iter().map(|d| d.to_vec()).collect();
        grading.extend(degrees.iter().map(|d| d.to_vec()));
        Ring::new(vars, self.field.characteristic() as u64, grading, order).map(Arc::new)
    }

    /// A variable name not already used, built from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| self.var_index(n).is_none())
            .unwrap()
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            char: self.field.characteristic() as u64,
            vars: self.vars.clone(),
            grading: Some(self.grading.iter().map(|d| d.to_vec()).collect()),
            order: Some(self.order.to_string()),
        }
    }
}

/// JSON form of a ring: `{"char":p,"vars":[...],"grading":[[...]...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub char: u64,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<i32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl RingDescriptor {
    pub fn build(&self) -> Result<RingRef> {
        let grading = self
            .grading
            .clone()
            .unwrap_or_else(|| vec![vec![1]; self.vars.len()]);
        let order = match &self.order {
            Some(o) => o.parse()?,
            None => MonomialOrder::DegRevLex,
        };
        Ring::new(self.vars.clone(), self.char, grading, order).map(Arc::new)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_two_variable_ring() {
        let r = make_ring(&["x", "y"], 32003, &[vec![1], vec![1]], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.nvars(), 2);
        assert!(r.is_standard_graded());
        assert_eq!(r.characteristic(), 32003);
    }

    #[test]
    fn bigraded_rees_ring() {
        let names = ["a", "b", "c", "d", "y1", "y2", "y3", "y4"];
        let mut grading = vec![vec![1, 0]; 4];
        grading.extend(vec![vec![0, 1]; 4]);
        let r = make_ring(&names, 32003, &grading, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.grading_arity(), 2);
        let m = Mono::from_exponents(&[0, 1, 0, 0, 0, 1, 0, 0]);
        assert_eq!(r.degree_of(&m).as_slice(), &[1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Ring::standard(&["x", "x"], 32003),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(matches!(Ring::standard(&["x"], 32004), Err(Error::NotPrime(_))));
        assert!(make_ring(&["x"], 32003, &[vec![0]], MonomialOrder::DegRevLex).is_err());
        assert!(make_ring(&["x"], 32003, &[vec![1, -1]], MonomialOrder::DegRevLex).is_err());
        assert!(Ring::standard(&["2x"], 32003).is_err());
    }

    #[test]
    fn descriptor_roundtrip() {
        let r = Ring::standard(&["x", "y"], 101).unwrap();
        let json = serde_json::to_string(&r.descriptor()).unwrap();
        let back: RingDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(*back.build().unwrap(), *r);
        let minimal: RingDescriptor = serde_json::from_str(r#"{"char":7,"vars":["u"]}"#).unwrap();
        assert!(minimal.build().unwrap().is_standard_graded());
    }
}
