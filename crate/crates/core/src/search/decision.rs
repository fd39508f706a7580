//! Decisions packed into a signed integer: `±(x·D + a + 1)` where `D` is the
//! largest initial domain size, `+` an assignment `x = a` and `-` a
//! refutation `x != a`.

use crate::domain::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decision(i64);

impl Decision {
    pub fn positive(x: VarId, a: usize, d: usize) -> Self {
        debug_assert!(a < d);
        Decision((x * d + a + 1) as i64)
    }

    pub fn negative(x: VarId, a: usize, d: usize) -> Self {
        Decision(-Self::positive(x, a, d).0)
    }

    pub fn from_encoded(encoded: i64) -> Self {
        assert!(encoded != 0);
        Decision(encoded)
    }

    pub fn encoded(self) -> i64 {
        self.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `(x, a)` of the decision.
    pub fn literal(self, d: usize) -> (VarId, usize) {
        let k = self.0.unsigned_abs() as usize - 1;
        (k / d, k % d)
    }

    pub fn opposite(self) -> Self {
        Decision(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn decode_inverts_encode(x in 0usize..10_000, d in 1usize..1000, a_seed in 0usize..1000, pos: bool) {
            let a = a_seed % d;
            let dec = if pos { Decision::positive(x, a, d) } else { Decision::negative(x, a, d) };
            prop_assert!(dec.encoded() != 0);
            prop_assert_eq!(dec.is_positive(), pos);
            prop_assert_eq!(dec.literal(d), (x, a));
            prop_assert_eq!(Decision::from_encoded(dec.encoded()), dec);
        }
    }
}
