//! Two G(2,7) solutions with the same curvature and charge, told apart by
//! the mean curvature.

use sigsurf::exact::{beta_invariants, BetaVector};

fn main() -> sigsurf::Result<()> {
    let a = beta_invariants(&BetaVector::from_indices(7, &[0, 5])?);
    let b = beta_invariants(&BetaVector::from_indices(7, &[2, 3])?);
    for rec in [&a, &b] {
        println!(
            "{}  r={} q={} K={} H^2={}",
            rec.grid, rec.r, rec.q, rec.kappa, rec.h2
        );
    }
    assert_eq!((&a.r, &a.q), (&b.r, &b.q));
    assert_ne!(a.h2, b.h2);
    println!("same (K, q), different H^2");
    Ok(())
}
