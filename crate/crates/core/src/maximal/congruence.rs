//! Cosets of `B'` met by the descent, and how squaring moves between them.

use std::fmt;

use crate::basilica::AbImage;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CosetClass {
    /// `ab B'`, image `(1,1)`.
    Ab,
    /// `ab⁻¹ B'`, image `(1,-1)`.
    ABInv,
    /// `a⁻¹b B'`, image `(-1,1)`.
    AInvB,
}

impl CosetClass {
    pub fn image(self) -> AbImage {
        match self {
            CosetClass::Ab => AbImage::new(1, 1),
            CosetClass::ABInv => AbImage::new(1, -1),
            CosetClass::AInvB => AbImage::new(-1, 1),
        }
    }

    pub fn from_image(image: AbImage) -> Result<CosetClass> {
        match (image.s, image.t) {
            (1, 1) => Ok(CosetClass::Ab),
            (1, -1) => Ok(CosetClass::ABInv),
            (-1, 1) => Ok(CosetClass::AInvB),
            _ => Err(Error::input(format!(
                "no congruence transition for the coset of image {image}"
            ))),
        }
    }

    /// The class of both first-level sections of `g²` for `g` in this class.
    pub fn transition(self) -> CosetClass {
        match self {
            CosetClass::Ab => CosetClass::Ab,
            CosetClass::ABInv => CosetClass::AInvB,
            CosetClass::AInvB => CosetClass::ABInv,
        }
    }
}

pub fn congruence_transition(image: AbImage) -> Result<AbImage> {
    Ok(CosetClass::from_image(image)?.transition().image())
}

impl fmt::Display for CosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CosetClass::Ab => "ab",
            CosetClass::ABInv => "aB",
            CosetClass::AInvB => "Ab",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basilica::{ab_image, parse};

    #[test]
    fn transitions() {
        assert_eq!(CosetClass::Ab.transition(), CosetClass::Ab);
        assert_eq!(CosetClass::ABInv.transition(), CosetClass::AInvB);
        assert_eq!(CosetClass::AInvB.transition(), CosetClass::ABInv);
        assert!(congruence_transition(AbImage::new(2, 0)).is_err());
    }

    #[test]
    fn transitions_match_sections_of_squares() {
        for w in ["ab", "aB", "Ab", "abABab", "baBAaB", "AbaBAb"] {
            let g = parse(w).unwrap();
            let class = CosetClass::from_image(ab_image(&g).unwrap()).unwrap();
            for s in g.pow(2).sections() {
                assert_eq!(ab_image(&s).unwrap(), class.transition().image(), "{w}");
            }
        }
    }
}
