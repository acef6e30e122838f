//! The two holomorphic G(2,5) solutions that do not come from the Veronese
//! curve: constant K = 4/5, position-dependent H, and the exact H^2 ratio.

use sigsurf::frames::{frame_z1, frame_z2, verify_g25, G25Config, RatioPolynomial};

fn main() -> sigsurf::Result<()> {
    for (name, frame) in [("Z1", frame_z1()), ("Z2", frame_z2())] {
        let gram = frame.gram_polynomials()?;
        println!(
            "{name}: Gram entry (0,0) has {} monomials",
            gram[0][0].len()
        );
    }
    let report = verify_g25(&G25Config::default())?;
    for c in &report.checks {
        println!("{c}");
    }
    let poly = RatioPolynomial::default();
    for s in report.samples.iter().take(5) {
        println!(
            "|x|^2={:.4}  H1^2={:.6}  H2^2={:.6}  ratio {:.9} vs P1/P2 {:.9}",
            s.y,
            s.h1,
            s.h2,
            s.h1 / s.h2,
            poly.ratio(s.y)
        );
    }
    println!(
        "H1 spread {:.3e}, passed: {}",
        report.h1_spread,
        report.passed()
    );
    Ok(())
}
