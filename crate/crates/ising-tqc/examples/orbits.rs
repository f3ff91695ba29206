//! How many distinct states braiding alone can reach from a few starting
//! states.

use ising_tqc::a4::a4_dense;
use ising_tqc::a8::a8_tableau;
use ising_tqc::braids::{orbit_size, orbit_size_dense};
use ising_tqc::tableau::StabilizerTableau;

fn main() -> ising_tqc::Result<()> {
    println!("a4: {}", orbit_size_dense(&a4_dense()));
    println!("a8: {}", orbit_size(&a8_tableau()));
    for n in [2, 4, 6, 8] {
        println!("vacuum on {n} modes: {}", orbit_size(&StabilizerTableau::new_vacuum(n)?));
    }
    Ok(())
}
