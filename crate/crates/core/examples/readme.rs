//! The README's library example, kept compiling.

use planepart::meinardus::{wright_leading, WrightGamma0};
use planepart::series::plane_partition_table;

fn main() -> planepart::Result<()> {
    let table = plane_partition_table(100)?;
    assert_eq!(table.get(10), &500u32.into());

    let approx = wright_leading(100, WrightGamma0::CorrectedInvSqrt3, 256)?;
    assert_eq!(approx.render(), "59 876 × 10^12");
    Ok(())
}
