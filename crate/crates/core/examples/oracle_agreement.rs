//! Finite-difference r, q, K, H^2 against the exact values, with the
//! projector, Euler-Lagrange and conformality checks, for every solution of
//! G(m,n).

use sigsurf::exact::BetaVector;
use sigsurf::oracle::{verify_veronese, VerifyConfig};
use sigsurf::search::enumerate;

fn main() -> sigsurf::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for m in 1..n {
        for beta in enumerate(n, m, false)? {
            let report = verify_veronese(&beta, &cfg)?;
            if !report.passed() {
                failed += 1;
                println!("{} FAIL", beta.grid());
                for c in report.checks.iter().filter(|c| !c.passed()) {
                    println!("  {c}");
                }
            }
        }
    }
    let total: usize = (1..n)
        .map(|m| enumerate(n, m, false).map(|e| e.count()).unwrap_or(0))
        .sum();
    println!("n={n}: {} of {total} solutions agree", total - failed);
    let worst = verify_veronese(&BetaVector::from_indices(n, &[n - 1])?, &cfg)?;
    for c in &worst.checks {
        println!("  P_{}: {c}", n - 1);
    }
    Ok(())
}
