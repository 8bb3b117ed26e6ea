pub mod bounds;
pub mod cover;
pub mod delta;
pub mod scattering;
pub mod verify;

use crate::CliError;

pub fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Invalid(msg()))
    }
}
