//! BS(1, n) elements as affine maps x ↦ nᵏ·x + q over Z[1/n].
//!
//! The translation part is kept as q = q_num / n^q_exp with the invariant
//! that q_exp > 0 implies n ∤ q_num, and q_num = 0 implies q_exp = 0. This
//! gives bit-identical canonical forms and O(1) equality.

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub q_num: BigInt,
    pub q_exp: u32,
    pub shift: i64,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { q_num: BigInt::zero(), q_exp: 0, shift: 0 }
    }

    /// t: x ↦ x + 1.
    pub fn translation() -> Self {
        Affine { q_num: BigInt::from(1), q_exp: 0, shift: 0 }
    }

    /// s: x ↦ n·x.
    pub fn scaling() -> Self {
        Affine { q_num: BigInt::zero(), q_exp: 0, shift: 1 }
    }

    pub fn is_normalized(&self, n: u64) -> bool {
        if self.q_num.is_zero() {
            self.q_exp == 0
        } else {
            self.q_exp == 0 || !(&self.q_num % n).is_zero()
        }
    }

    pub fn normalize(mut q_num: BigInt, mut q_exp: u32, shift: i64, n: u64) -> Self {
        if q_num.is_zero() {
            q_exp = 0;
        } else {
            while q_exp > 0 && (&q_num % n).is_zero() {
                q_num /= n;
                q_exp -= 1;
            }
        }
        Affine { q_num, q_exp, shift }
    }

    /// Composition (self ∘ other): q = q₁ + n^{k₁}·q₂, k = k₁ + k₂.
    pub fn multiply(&self, other: &Affine, n: u64) -> Affine {
        // other's effective denominator exponent after scaling by n^{k₁}
        let f = i64::from(other.q_exp) - self.shift;
        let e = i64::from(self.q_exp).max(f).max(0);
        let num = &self.q_num * npow(n, (e - i64::from(self.q_exp)) as u32)
            + &other.q_num * npow(n, (e - f) as u32);
        let shift = self
            .shift
            .checked_add(other.shift)
            .expect("BS(1,n) scaling exponent overflow");
        Affine::normalize(num, e as u32, shift, n)
    }

    /// Inverse map x ↦ n^{−k}·(x − q).
    pub fn invert(&self, n: u64) -> Affine {
        let f = i64::from(self.q_exp) + self.shift;
        let (num, exp) = if f >= 0 {
            (-&self.q_num, f as u32)
        } else {
            (-&self.q_num * npow(n, (-f) as u32), 0)
        };
        Affine::normalize(num, exp, -self.shift, n)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.q_num.is_zero()
    }
}

fn npow(n: u64, e: u32) -> BigInt {
    BigInt::from(n).pow(e)
}
