use criterion::{black_box, criterion_group, criterion_main, Criterion};
use strebel::belyi::{deg8_map, deg12_theta_map, min_degree};
use strebel::qdiff::{discriminant_identity_report, pullback, q0};
use strebel::ribbon::{enumerate, EnumerateOptions};
use strebel::GaussRat;

fn pullbacks(c: &mut Criterion) {
    let q = q0();
    let (f8, f12) = (deg8_map(), deg12_theta_map());
    c.bench_function("pullback deg8", |b| b.iter(|| pullback(black_box(&f8), &q)));
    c.bench_function("pullback deg12", |b| b.iter(|| pullback(black_box(&f12), &q)));
}

fn discriminant(c: &mut Criterion) {
    let mut g = c.benchmark_group("grid");
    g.sample_size(10);
    g.bench_function("discriminant identity 21x21", |b| b.iter(discriminant_identity_report));
    g.finish();
}

fn ribbon(c: &mut Criterion) {
    let opts = EnumerateOptions { genus: 0, faces: 4, loopless: false };
    c.bench_function("enumerate cubic 4 faces", |b| b.iter(|| enumerate(black_box(&[3, 3, 3, 3]), &opts).unwrap()));
    let t = |s: &str| s.parse::<GaussRat>().unwrap().re().clone();
    c.bench_function("min degree 1/3 1/6 1/2", |b| b.iter(|| min_degree(&t("1/3"), &t("1/6"), &t("1/2"))));
}

criterion_group!(benches, pullbacks, discriminant, ribbon);
criterion_main!(benches);
