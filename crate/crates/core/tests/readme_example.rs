use cmheight::cmtypes::validate_type;
use cmheight::heights::height_report;
use cmheight::{BigReal, PrecisionContext, Real};

#[test]
fn readme_example() -> cmheight::Result<()> {
    let ctx = PrecisionContext::new(256)?;
    let phi = validate_type(4, &[1])?;
    let report = height_report::<BigReal>(&phi, &ctx)?;
    assert!(report.h_character.to_decimal(30).starts_with("-7.8318878541367355294"));
    assert_eq!(report.calibration.c, 2.into());
    Ok(())
}
