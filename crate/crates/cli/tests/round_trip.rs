use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracecat::fpcm::CategoryFlag;
use tracecat::sample;
use tracecat_cli::emit::Emitter;
use tracecat_cli::{parse, Bundle};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_kind_survives_serialization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = sample::monoid(&mut rng, "e", 3, 3);
        let n = sample::monoid(&mut rng, "f", 3, 3);
        let h = sample::hom(&mut rng, &m, &n, CategoryFlag::Fpcm);
        let s = sample::space(&mut rng, &m, 4);
        let sm = sample::space_morphism_from(&mut rng, &s, &tracecat::BasicHom::identity(&m), 3);
        let a = sample::system(&mut rng, 4, 3);
        let f = sample::morphism_from(&mut rng, &a, 3, 3);

        let empty = Bundle::default();
        let mut em = Emitter::new(&empty);
        let names = [
            em.monoid(&m, "m"),
            em.hom(&h, "h"),
            em.space(&s, "s"),
            em.space_morphism(&sm, "sm"),
            em.system(&a, "a"),
            em.system_morphism(&f, "f"),
        ];
        let bundle = Bundle::new(em.out);
        let text = bundle.to_json();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back.documents, &bundle.documents);
        prop_assert_eq!(back.to_json(), text);

        prop_assert_eq!(back.monoid(&names[0]).unwrap(), m);
        prop_assert_eq!(back.hom(&names[1]).unwrap(), h);
        prop_assert_eq!(back.space(&names[2]).unwrap(), s);
        prop_assert_eq!(back.space_morphism(&names[3]).unwrap(), sm);
        prop_assert_eq!(back.system(&names[4]).unwrap(), a);
        prop_assert_eq!(back.system_morphism(&names[5]).unwrap(), f);
    }
}

#[test]
fn shapes_diagrams_and_tables_round_trip() {
    for file in ["systems.json", "quotient.json", "free_extension.json", "cyclic.json", "coequalizer.json"] {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(file);
        let b = parse(&std::fs::read_to_string(path).unwrap()).unwrap();
        let back = parse(&b.to_json()).unwrap();
        assert_eq!(back.documents, b.documents, "{file}");
    }
}
