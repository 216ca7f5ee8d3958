use fpn_core::counting::Colouring;
use fpn_core::io::{fpnc, generate, GenMode};
use fpn_core::{PrimeField, Space};
use proptest::prelude::*;

fn colouring() -> impl Strategy<Value = Colouring> {
    (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 0..=4usize, 1..=6u8).prop_flat_map(|(p, n, r)| {
        let space = Space::new(PrimeField::new(p).unwrap(), n).unwrap();
        proptest::collection::vec(1..=r, space.size()).prop_map(move |t| Colouring::new(space, r, t).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fpnc_round_trip(phi in colouring()) {
        let bytes = fpnc::encode(&phi).unwrap();
        prop_assert_eq!(bytes.len(), 8 + phi.space().size());
        let back = fpnc::decode(&bytes).unwrap();
        prop_assert_eq!(fpnc::encode(&back).unwrap(), bytes);
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn corrupted_payload_is_rejected(phi in colouring(), at in any::<prop::sample::Index>()) {
        let mut bytes = fpnc::encode(&phi).unwrap();
        let k = 8 + at.index(phi.space().size());
        bytes[k] = phi.r() + 1;
        prop_assert!(fpnc::decode(&bytes).is_err());
        bytes[k] = 0;
        prop_assert!(fpnc::decode(&bytes).is_err());
    }

    #[test]
    fn generation_is_seeded(seed in any::<u64>(), r in 1..=4u8) {
        let space = Space::new(PrimeField::new(3).unwrap(), 3).unwrap();
        let a = generate(space, r, &GenMode::Uniform, seed).unwrap();
        prop_assert_eq!(fpnc::encode(&a).unwrap(), fpnc::encode(&generate(space, r, &GenMode::Uniform, seed).unwrap()).unwrap());
    }
}

#[test]
fn file_round_trip() {
    let dir = std::env::temp_dir().join(format!("fpn-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.fpnc");
    let space = Space::new(PrimeField::new(5).unwrap(), 2).unwrap();
    let phi = generate(space, 3, &"sparse:3:1/5".parse().unwrap(), 4).unwrap();
    assert_eq!(phi.class_sizes()[2], 5);
    fpnc::write(&path, &phi).unwrap();
    assert_eq!(fpnc::read(&path).unwrap(), phi);
    std::fs::remove_dir_all(dir).unwrap();
}
