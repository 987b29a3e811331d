use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use equal_quartics::arith::{integer_fourth_root, is_fourth_power};

#[test]
fn million_random_fourth_powers_and_neighbours() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1_000_000 {
        let n: u64 = rng.gen_range(2..=u32::MAX as u64);
        let v = BigUint::from(n).pow(4);
        assert!(is_fourth_power(&v), "{n}^4");
        assert!(!is_fourth_power(&(&v + 1u32)), "{n}^4 + 1");
        assert!(!is_fourth_power(&(&v - 1u32)), "{n}^4 - 1");
    }
}

#[test]
fn wide_roots_beyond_u128() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..2_000 {
        let n = BigUint::from(rng.gen::<u128>()) * BigUint::from(rng.gen::<u64>() | 1);
        let v = n.pow(4);
        assert_eq!(integer_fourth_root(&v), Some(n.clone()));
        assert_eq!(integer_fourth_root(&(&v + 1u32)), None);
    }
}
