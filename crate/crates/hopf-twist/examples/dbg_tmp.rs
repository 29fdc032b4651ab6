use hopf_twist::findim::corpus::*;
use hopf_twist::findim::cocycle::check_cocycle;
use hopf_twist::findim::twist::twist;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let h = group_algebra(&s3_table()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let chi = seeded_algebra_coboundary(&h, &mut rng).unwrap();
    println!("check = {}", check_cocycle(&h, &chi));
    match twist(&h, &chi) {
        Ok(_) => println!("twist ok"),
        Err(e) => println!("twist err: {}", e),
    }
}
