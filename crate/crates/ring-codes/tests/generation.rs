use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ring_codes::*;

#[test]
fn sequences_reproduce_targets() {
    for depth in 1..=3 {
        let spec = RingCodeSpec::loss_only(4, depth).unwrap();
        let g = build_concatenated_ring(&spec).unwrap();
        let seq = generation_sequence(&spec).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert!(seq.reproduces(&g, &mut rng), "depth {depth} seed {seed}");
        }
        let lg = build_ring_line(&spec).unwrap();
        let lseq = line_generation_sequence(&spec).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert!(lseq.reproduces(&lg, &mut rng), "line depth {depth} seed {seed}");
        }
    }
}

#[test]
fn other_ring_sizes_reproduce_targets() {
    for n in [3, 5] {
        for depth in 1..=2 {
            let spec = RingCodeSpec::loss_only(n, depth).unwrap();
            let g = build_concatenated_ring(&spec).unwrap();
            let seq = generation_sequence(&spec).unwrap();
            let lg = build_ring_line(&spec).unwrap();
            let lseq = line_generation_sequence(&spec).unwrap();
            for seed in 0..10 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                assert!(seq.reproduces(&g, &mut rng), "n {n} depth {depth} seed {seed}");
                assert!(lseq.reproduces(&lg, &mut rng), "line n {n} depth {depth} seed {seed}");
            }
        }
    }
}

#[test]
fn dropping_a_correction_breaks_the_state() {
    let spec = RingCodeSpec::loss_only(4, 2).unwrap();
    let g = build_concatenated_ring(&spec).unwrap();
    let mut seq = generation_sequence(&spec).unwrap();
    let i = seq.ops.iter().position(|op| matches!(op, GenOp::Phase { .. })).unwrap();
    seq.ops.remove(i);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(!seq.reproduces(&g, &mut rng));
}

#[test]
fn emission_order_and_json() {
    let spec = RingCodeSpec::loss_only(4, 2).unwrap();
    let seq = generation_sequence(&spec).unwrap();
    let emitted: Vec<usize> = seq
        .ops
        .iter()
        .filter_map(|op| match op {
            GenOp::EmitPhoton { photon, .. } => Some(*photon),
            _ => None,
        })
        .collect();
    assert_eq!(emitted, (0..16).collect::<Vec<_>>());
    assert_eq!(seq.num_spins, 3);
    let json = seq.to_json();
    assert!(json.contains("\"op\": \"CZ\""));
    assert!(json.contains("\"op\": \"EmitPhoton\""));
    let back: GenerationSequence = serde_json::from_str(&json).unwrap();
    assert_eq!(back, seq);
}
