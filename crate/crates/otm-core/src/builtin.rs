//! Bundled example data: the Inoue-surface datum over `Q[X]/(X^3 - 2)`,
//! the sextic datum over `Q[X]/(X^6 - 2)` containing it, and a
//! prime-degree quintic datum.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::numfield::{FieldElement, NumberField};
use crate::units::{make_ot_datum, OTDatum};
use crate::{Config, Error, Rat, Result};

/// `L = Q[X]/(X^3 - 2)`: one real and one pair of complex embeddings.
pub fn inoue_field() -> Result<Arc<NumberField>> {
    NumberField::from_int_coeffs(&[-2, 0, 0, 1])
}

/// `U_L` is generated by the totally positive fundamental unit
/// `theta - 1` of `Z[2^(1/3)]`.
pub fn inoue_generators(field: &Arc<NumberField>) -> Vec<FieldElement> {
    vec![field.element_from_ints(&[-1, 1, 0])]
}

/// The Inoue-surface OT datum (s = t = 1).
pub fn inoue_datum(config: &Config) -> Result<OTDatum> {
    let field = inoue_field()?;
    let generators = inoue_generators(&field);
    make_ot_datum(&field, generators, config)?
        .into_datum()
        .map_err(|r| Error::Precondition(alloc::format!("bundled datum rejected: {r}")))
}

/// `K = Q[X]/(X^6 - 2)`: two real embeddings and two complex pairs.
pub fn ot6_field() -> Result<Arc<NumberField>> {
    NumberField::from_int_coeffs(&[-2, 0, 0, 0, 0, 0, 1])
}

/// `u1 = theta^2 - 1` (the Inoue unit, living in the cubic subfield)
/// and `u2 = (theta - 1)^2` (primitive, totally positive).
pub fn ot6_generators(field: &Arc<NumberField>) -> Vec<FieldElement> {
    vec![
        field.element_from_ints(&[-1, 0, 1]),
        field.element_from_ints(&[1, -2, 1]),
    ]
}

/// The sextic OT datum (s = t = 2) with a non-primitive generator.
pub fn ot6_datum(config: &Config) -> Result<OTDatum> {
    let field = ot6_field()?;
    let generators = ot6_generators(&field);
    make_ot_datum(&field, generators, config)?
        .into_datum()
        .map_err(|r| Error::Precondition(alloc::format!("bundled datum rejected: {r}")))
}

/// `Q[X]/(X^5 - X - 1)` with the unit `theta` (inverse `theta^4 - 1`):
/// prime degree, so certification succeeds by the shortcut.
pub fn quintic_datum(config: &Config) -> Result<OTDatum> {
    let field = NumberField::from_int_coeffs(&[-1, -1, 0, 0, 0, 1])?;
    let generators = vec![field.theta()];
    make_ot_datum(&field, generators, config)?
        .into_datum()
        .map_err(|r| Error::Precondition(alloc::format!("bundled datum rejected: {r}")))
}

/// Coordinate embedding of the cubic field into the sextic one,
/// `Y -> X^2` (so `2^(1/3) = (2^(1/6))^2`).
pub fn embed_cubic_into_sextic(
    element: &FieldElement,
    sextic: &Arc<NumberField>,
) -> Result<FieldElement> {
    if element.field().degree() != 3 || sextic.degree() != 6 {
        return Err(Error::Precondition(
            "embedding is defined from the cubic into the sextic field".into(),
        ));
    }
    let mut coords = vec![Rat::zero(); 6];
    for (i, c) in element.coords().iter().enumerate() {
        coords[2 * i] = c.clone();
    }
    Ok(sextic.element(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_is_valid() {
        let config = Config::default();
        let inoue = inoue_datum(&config).unwrap();
        assert_eq!(inoue.signature().s, 1);
        assert_eq!(inoue.signature().t, 1);
        let ot6 = ot6_datum(&config).unwrap();
        assert_eq!(ot6.signature().s, 2);
        assert_eq!(ot6.signature().t, 2);
        let quintic = quintic_datum(&config).unwrap();
        assert_eq!(quintic.signature().s, 1);
        assert_eq!(quintic.signature().t, 2);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let l = inoue_field().unwrap();
        let k = ot6_field().unwrap();
        let a = l.element_from_ints(&[1, 2, 3]);
        let b = l.element_from_ints(&[-1, 1, 0]);
        let ab = a.mul(&b).unwrap();
        let ia = embed_cubic_into_sextic(&a, &k).unwrap();
        let ib = embed_cubic_into_sextic(&b, &k).unwrap();
        let iab = embed_cubic_into_sextic(&ab, &k).unwrap();
        assert_eq!(ia.mul(&ib).unwrap(), iab);
        // the generator maps to theta^2
        let itheta = embed_cubic_into_sextic(&l.theta(), &k).unwrap();
        assert_eq!(itheta, k.theta().pow(2).unwrap());
    }
}
