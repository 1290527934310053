//! Heat flow of a point mass on the 128-cycle with the discrete Laplacian.

use nclab::fourier::parse_instance;
use nclab::spectral_asymptotics::{default_heat_beta, heat_decay, log_times, point_mass};
use nclab::vn_model::SpectralModel;

fn main() -> nclab::Result<()> {
    let f = parse_instance("cyclic:128")?;
    let laplacian = SpectralModel::new(f.laplacian_symbol()?)?;
    let reference = f.default_reference()?;
    let u0 = point_mass(&f)?;
    let beta = default_heat_beta(1.0, 1.0)?;
    let mut grid = vec![0.0];
    grid.extend(log_times(0.01, 10.0, 50));
    let table = heat_decay(&f, &laplacian, &u0, 1.0, f64::INFINITY, &grid, &reference, beta)?;
    print!("{}", table.to_csv());
    let bad = table.counting_bound_violations();
    println!("# beta = {beta}, cross-norm above counting bound at {} of {} times", bad.len(), grid.len());
    println!("# l2 monotone: {}", table.l2_monotone());
    Ok(())
}
