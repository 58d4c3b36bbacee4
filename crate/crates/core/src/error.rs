use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An evaluation point or argument lies outside the operation's domain.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A structural parameter (λ, ρ, grid size, ...) is inadmissible.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A bound was requested below the degree at which its theorem applies.
    #[error("degree n = {n} is below the validity threshold n >= {min}")]
    Validity { n: usize, min: usize },

    /// Two interpolation nodes coincide.
    #[error("duplicate interpolation point at index {index} (x = {x})")]
    DuplicatePoint { index: usize, x: f64 },

    /// A total variation of an order beyond the registered smoothness was requested.
    #[error("variation of order {order} is not registered (highest order is {max})")]
    UnsupportedOrder { order: usize, max: usize },

    /// The requested ellipse reaches a singularity of the function.
    #[error("rho = {rho} is not below the analyticity radius {rho_max}")]
    Analyticity { rho: f64, rho_max: f64 },

    /// A quadrature did not reach its tolerance.
    #[error("quadrature did not converge: achieved {achieved:e}, requested {tolerance:e}")]
    Quadrature { achieved: f64, tolerance: f64 },

    /// A Newton or bracketing root search did not converge.
    #[error("root finding did not converge ({0})")]
    RootFinding(String),

    /// A rate fit had too few usable samples.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

impl Error {
    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::RootFinding(_) | Error::DegenerateFit(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(what: &'static str, x: f64) -> Result<()> {
    if x.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: x,
            domain: "[-1, 1]",
        })
    }
}
