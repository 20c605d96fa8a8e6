//! Carries the first error raised inside a quadrature integrand out of the
//! `Fn(f64) -> f64` closure the integrators expect.

use std::cell::RefCell;

use crate::{Error, Result};

pub(crate) struct ErrorTrap(RefCell<Option<Error>>);

impl ErrorTrap {
    pub(crate) fn new() -> Self {
        ErrorTrap(RefCell::new(None))
    }

    /// The value on success; NaN (which stops the integrator) on failure.
    pub(crate) fn value<E: Into<Error>>(&self, r: std::result::Result<f64, E>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e.into());
                }
                f64::NAN
            }
        }
    }

    pub(crate) fn finish<T, E: Into<Error>>(&self, r: std::result::Result<T, E>) -> Result<T> {
        match self.0.borrow_mut().take() {
            Some(e) => Err(e),
            None => r.map_err(Into::into),
        }
    }
}
