use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gradwise::abelian::smith_normal_form;
use gradwise::completion::{derived_completion_module, gradedwise_completion};
use gradwise::derived::{koszul_complex, KoszulData};
use gradwise::{Degree, GradedRing, IntMatrix};
use std::hint::black_box;

fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i * 7 + j * 13 + i * j) % 23) as i64 - 11)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [8, 16, 32] {
        let a = dense_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| smith_normal_form(black_box(a)))
        });
    }
    g.finish();
}

fn koszul_homotopy(c: &mut Criterion) {
    let r = GradedRing::integer_graded(&["x1", "x2", "x3"], &[1, 1, 1], &[]).unwrap();
    let seq: Vec<_> = (0..3).map(|i| r.variable(i)).collect();
    let k = koszul_complex(&KoszulData::new(&r, &seq, 1).unwrap()).unwrap();
    let window: Vec<Degree> = (0..=4).map(Degree::int).collect();
    c.bench_function("koszul_x1x2x3_pi1_window_0_4", |b| {
        b.iter(|| {
            // fresh copy so that cached pieces are recomputed
            let k = k.clone();
            k.homotopy_groups(1, black_box(&window)).unwrap()
        })
    });
}

fn completion(c: &mut Criterion) {
    let r = GradedRing::integer_graded(&["x"], &[1], &[]).unwrap();
    let m = r.as_module();
    let x = r.variable(0);
    let window: Vec<Degree> = (0..=8).map(Degree::int).collect();
    c.bench_function("gradedwise_zx_xadic_precision_10", |b| {
        b.iter(|| {
            let a = gradedwise_completion(&m, std::slice::from_ref(&x), 10).unwrap();
            a.limits(0, black_box(&window)).unwrap()
        })
    });
    c.bench_function("derived_zx_xadic_precision_6", |b| {
        b.iter(|| {
            let a = derived_completion_module(&m, std::slice::from_ref(&x), 6).unwrap();
            a.limits(0, black_box(&window[..5])).unwrap()
        })
    });
}

criterion_group!(benches, snf, koszul_homotopy, completion);
criterion_main!(benches);
