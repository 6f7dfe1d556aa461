use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tomjerry::formats::instantiate;
use tomjerry::groebner::{groebner_basis, Ideal};
use tomjerry::polyring::{h2_coefficient, MonomialOrder, DEFAULT_PRIME};
use tomjerry::verify::{pfaffians, verify_case, VerifyConfig};
use tomjerry_bench::genus_zero_case;

fn kernels(c: &mut Criterion) {
    let fc = genus_zero_case(3, "Tom4");
    let ring = fc.centred.ring(DEFAULT_PRIME).unwrap();
    let m = instantiate(&fc, &ring, &mut ChaCha8Rng::seed_from_u64(1));
    let pf = pfaffians(&m).unwrap();

    c.bench_function("pfaffians 5x5", |b| b.iter(|| pfaffians(black_box(&m)).unwrap()));
    c.bench_function("groebner basis", |b| {
        b.iter_batched(
            || Ideal::new(&ring, pf.clone()),
            |ideal| groebner_basis(&ideal, MonomialOrder::WeightedRevLex).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("h2 series", |b| {
        b.iter(|| h2_coefficient(black_box(&[6, 7, 7, 8, 8, 9]), black_box(&[1, 1, 2, 3, 3, 4, 4])))
    });

    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let config = VerifyConfig::default();
    group.bench_function("tom case", |b| b.iter(|| verify_case(black_box(&fc), &config).unwrap()));
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
