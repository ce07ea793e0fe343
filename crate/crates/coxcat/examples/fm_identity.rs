//! Verify the F/M transform identity
//! (1-y)^n F((x+y)/(1-y), y/(1-y)) = M(-x, -y/x)
//! with exact integer coefficients, together with the full battery of
//! supporting checks, on a handful of types.
//!
//! Run with: cargo run --example fm_identity

use coxcat::identity::{verify_fm, VerifyOptions};
use coxcat::roots::TypeSpec;

fn main() -> coxcat::CoxResult<()> {
    let opts = VerifyOptions::default();
    for name in ["A2", "B3", "H3", "I2(8)", "A1xA2"] {
        let report = verify_fm(&TypeSpec::parse(name)?, &opts)?;
        print!("{}", report.render_text(false));
    }
    Ok(())
}
