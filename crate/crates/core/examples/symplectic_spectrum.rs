//! Symplectic spectrum, physicality and the PPT test for a few covariance matrices.

use cv_entangle::gaussian::{squeezed_thermal_params, two_two_family};
use cv_entangle::symplectic::{gaussian_pt_trace_norm, is_physical, is_ppt, symplectic_eigenvalues};

fn main() -> cv_entangle::Result<()> {
    for (n, r) in [(0.0, 0.0), (0.0, 0.5), (0.3, 0.8)] {
        let v = squeezed_thermal_params(n, r)?.covariance();
        let nus = symplectic_eigenvalues(&v)?.nus;
        println!(
            "squeezed thermal n={n} r={r}: nu = {nus:.6?}, det = {:.6e}, PPT = {}, |rho^T|_1 = {:.6}",
            v.determinant(),
            is_ppt(&v, &[1])?,
            gaussian_pt_trace_norm(&v, &[1])?
        );
    }

    // 2+2 family: PPT across modes {0,1}|{2,3} right up to the physical edge
    for c in [0.5, 0.78, 0.807, 0.81] {
        let v = two_two_family(1.0, 1.0, c)?;
        let physical = is_physical(&v);
        let ppt = if physical { is_ppt(&v, &[2, 3])?.to_string() } else { "-".into() };
        println!("2+2 a=b=1 c={c}: physical = {physical}, PPT = {ppt}");
    }
    Ok(())
}
