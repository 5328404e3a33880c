use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use multimat::cost;
use multimat::norm::EqnOptions;
use multimat::{build_ball, label_layout, verify_eqn_main, Atom, Boundary};

fn layout_for(counts: &[i64]) -> multimat::LabelLayout {
    let src: Vec<i64> = counts.iter().map(|&c| -c).collect();
    let b = Boundary::new(
        2,
        counts.len(),
        vec![Atom::new(vec![0.0, 0.0], src), Atom::new(vec![1.0, 0.0], counts.to_vec())],
    )
    .unwrap();
    label_layout(&b).unwrap()
}

fn bench_gauge(c: &mut Criterion) {
    let gs = cost::gilbert_steiner(0.5).unwrap();
    let layout = layout_for(&[4]);
    c.bench_function("build ball gilbert-steiner N=4", |b| b.iter(|| build_ball(black_box(&gs), &layout).unwrap()));
    let ball = build_ball(&gs, &layout).unwrap();
    let x = [0.3, -1.2, 0.7, 0.1];
    c.bench_function("gauge hull N=4", |b| b.iter(|| ball.gauge(black_box(&x)).unwrap()));

    let mailing = cost::mailing(2, 0.5).unwrap();
    let layout = layout_for(&[2, 2]);
    let ball = build_ball(&mailing, &layout).unwrap();
    c.bench_function("gauge orthants N=2+2", |b| b.iter(|| ball.gauge(black_box(&x)).unwrap()));
    c.bench_function("eqn_main mailing N=2+2", |b| {
        b.iter(|| verify_eqn_main(&mailing, &ball, &layout, &EqnOptions::default()).unwrap())
    });
}

criterion_group!(benches, bench_gauge);
criterion_main!(benches);
