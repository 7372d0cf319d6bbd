use crate::error::{Error, Result};

/// Extra Sobolev regularity `p(r)` needed for first-order convergence
/// measured in `H^r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityRequirement {
    pub value: f64,
    /// The requirement is `value + eps` for any small `eps > 0`.
    pub strict_plus: bool,
}

/// Piecewise requirement table for `r >= 1`.
///
/// | r                  | p(r)        |
/// |--------------------|-------------|
/// | 1                  | 1           |
/// | (1, 7/6]           | (3 - 2r)+   |
/// | (7/6, 17/12]       | 2/3         |
/// | (17/12, 3/2]       | (7/2 - 2r)+ |
/// | (3/2, 5/2)         | 5/4 - r/2   |
/// | 5/2                | 0+          |
/// | (5/2, inf)         | 0           |
pub fn regularity_requirement(r: f64) -> Result<RegularityRequirement> {
    if r.is_nan() || r < 1.0 || r.is_infinite() {
        return Err(Error::OutOfDomain(format!(
            "the regularity table is defined for r >= 1, got {r}"
        )));
    }
    let (value, strict_plus) = if r == 1.0 {
        (1.0, false)
    } else if r <= 7.0 / 6.0 {
        (3.0 - 2.0 * r, true)
    } else if r <= 17.0 / 12.0 {
        (2.0 / 3.0, false)
    } else if r <= 1.5 {
        (3.5 - 2.0 * r, true)
    } else if r < 2.5 {
        (1.25 - 0.5 * r, false)
    } else if r == 2.5 {
        (0.0, true)
    } else {
        (0.0, false)
    };
    Ok(RegularityRequirement { value, strict_plus })
}
