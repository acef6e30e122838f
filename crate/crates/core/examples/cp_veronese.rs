//! Exact invariants of the CP^{n-1} Veronese tower, checked against the
//! closed forms and against the finite-difference oracle.

use sigsurf::exact::{beta_invariants, cp_invariants, BetaVector};
use sigsurf::oracle::{verify_veronese, VerifyConfig};

fn main() -> sigsurf::Result<()> {
    let n = 5;
    println!("CP^{}: P_i  r  q  H^2", n - 1);
    for i in 0..n {
        let rec = cp_invariants(i, n)?;
        let general = beta_invariants(&BetaVector::from_indices(n, &[i])?);
        assert_eq!(rec.key(), general.key());
        let report = verify_veronese(
            &BetaVector::from_indices(n, &[i])?,
            &VerifyConfig::default(),
        )?;
        println!(
            "  P_{i}  {:>2}  {:>2}  {:<6} numeric {}",
            rec.r,
            rec.q,
            rec.h2.to_string(),
            if report.passed() {
                "agrees"
            } else {
                "DISAGREES"
            }
        );
    }
    Ok(())
}
