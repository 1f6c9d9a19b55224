use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tyang::daha::{principal_series, DahaParams};
use tyang::drinfeld::{drinfeld_bc, DrinfeldParams};
use tyang::exactalg::{rat, ratio};
use tyang::glmn::make_lab;
use tyang::par::{with_mode, Mode};
use tyang::twisted::{b_from_t, verify_b, TwistedContext};
use tyang::yangian::{evaluation_action, tensor_action, verify_rtt};

const MODES: [(&str, Mode); 2] = [
    ("parallel", Mode::Parallel),
    ("sequential", Mode::Sequential),
];

fn bench(c: &mut Criterion) {
    let t = tensor_action(
        &evaluation_action(&make_lab(1, &rat(1), &rat(2)).unwrap(), &rat(0)),
        &evaluation_action(&make_lab(1, &rat(3), &rat(5)).unwrap(), &ratio(1, 2)),
    )
    .unwrap();
    let ctx = TwistedContext::of(&[1, -1], &[1, 1]);
    let b = b_from_t(&t, &ctx).unwrap();

    let daha = DahaParams::bc(2, rat(1), ratio(3, 2)).unwrap();
    let m = principal_series(&daha, &[ratio(1, 3), rat(1)]).unwrap();
    let params = DrinfeldParams::matched(&ctx, 1, &daha).unwrap();

    let mut g = c.benchmark_group("par_vs_seq");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new("rtt_dim4", name), &t, |bn, t| {
            bn.iter(|| with_mode(mode, || verify_rtt(t).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("verify_b_dim4", name), &b, |bn, b| {
            bn.iter(|| with_mode(mode, || verify_b(b).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("drinfeld_bc_k2_l2", name), &m, |bn, m| {
            bn.iter(|| with_mode(mode, || drinfeld_bc(m, &params).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
