use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Physical parameters of the Boussinesq system in the moving frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    /// Nonlinearity `α`.
    pub alpha: T,
    /// Dispersion `β`.
    pub beta: T,
    /// Small parameter `ε` used by the experiment formulas (obstacle height, Froude offset).
    pub epsilon: T,
    /// Froude number `F`, the speed of the moving frame.
    pub froude: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(alpha: T, beta: T, epsilon: T, froude: T) -> Result<Self> {
        let params = Self {
            alpha,
            beta,
            epsilon,
            froude,
        };
        params.validate()?;
        Ok(params)
    }

    /// `α = β = ε = 0.01`, `F = 0`.
    pub fn reference() -> Self {
        let e = lit(0.01);
        Self {
            alpha: e,
            beta: e,
            epsilon: e,
            froude: T::zero(),
        }
    }

    /// Linear subsystem (`α = 0`); accepted by the time solver only.
    pub fn linearised(beta: T, epsilon: T, froude: T) -> Result<Self> {
        let params = Self {
            alpha: T::zero(),
            beta,
            epsilon,
            froude,
        };
        params.validate_evolution()?;
        Ok(params)
    }

    pub fn with_froude(self, froude: T) -> Self {
        Self { froude, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("epsilon", self.epsilon),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !self.froude.is_finite() {
            return Err(Error::InvalidParameter("froude must be finite".into()));
        }
        Ok(())
    }

    /// Like [`validate`](Self::validate) but also admits `α = 0`.
    pub fn validate_evolution(&self) -> Result<()> {
        if self.alpha == T::zero() {
            Self {
                alpha: T::one(),
                ..*self
            }
            .validate()
        } else {
            self.validate()
        }
    }
}
