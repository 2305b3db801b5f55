use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Floating-point type the numerical kernels are generic over.
///
/// Implemented for `f32` and `f64`. Besides the usual float arithmetic it
/// provides the dense symmetric eigensolver used by the lattice module.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Eigenvalues (ascending) of the real symmetric `dim × dim` matrix with
    /// entries `entry(i, j)`. Only the lower triangle is read.
    fn symmetric_eigenvalues(dim: usize, entry: &dyn Fn(usize, usize) -> Self) -> Result<Vec<Self>>;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn symmetric_eigenvalues(
                dim: usize,
                entry: &dyn Fn(usize, usize) -> Self,
            ) -> Result<Vec<Self>> {
                if dim == 0 {
                    return Ok(Vec::new());
                }
                let m = faer::Mat::<$t>::from_fn(dim, dim, |i, j| entry(i, j));
                let mut ev = m
                    .self_adjoint_eigenvalues(faer::Side::Lower)
                    .map_err(|e| Error::Computation(format!("eigensolver: {e:?}")))?;
                ev.sort_by(|a, b| a.total_cmp(b));
                Ok(ev)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn c<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable")
}

/// Converts an integer into `T`.
#[inline]
pub(crate) fn ci<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("integer representable")
}

#[inline]
pub(crate) fn cu<T: Scalar>(x: usize) -> T {
    T::from_usize(x).expect("integer representable")
}
