use std::fmt;

use num_traits::Zero;

use super::AlgebraId;
use crate::exact::{fmt_rat, Rat};

/// An element of a realized Lie algebra, stored as coordinates in the
/// realization's basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub(crate) alg: AlgebraId,
    pub(crate) coords: Vec<Rat>,
}

impl Element {
    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same(&self, other: &Element) {
        assert_eq!(self.alg, other.alg, "elements of different algebras");
    }

    pub fn add(&self, other: &Element) -> Element {
        self.same(other);
        Element {
            alg: self.alg,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.same(other);
        Element {
            alg: self.alg,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Element {
        Element {
            alg: self.alg,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            alg: self.alg,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// `self + c · other`
    pub fn add_scaled(&self, c: &Rat, other: &Element) -> Element {
        self.same(other);
        Element {
            alg: self.alg,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + c * b).collect(),
        }
    }

    /// The scalar `c` with `self = c · other`, if there is one. Requires
    /// `other ≠ 0`.
    pub fn ratio_to(&self, other: &Element) -> Option<Rat> {
        self.same(other);
        let k = other.coords.iter().position(|x| !x.is_zero())?;
        let c = &self.coords[k] / &other.coords[k];
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "{}[{}]", self.alg, c.join(", "))
    }
}
