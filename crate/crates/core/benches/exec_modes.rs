//! Sequential against rayon-parallel execution on the exhaustive kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfcodes::code::{Mode, BUDGET};
use qfcodes::descent::{DescendedCode, DescentParams};
use qfcodes::{ghw, presets, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn cwe(c: &mut Criterion) {
    let mut g = c.benchmark_group("cwe_brute");
    g.sample_size(10);
    for name in ["example-3.1", "example-3.3"] {
        let code = presets::find(name).unwrap().code().unwrap();
        for (label, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(label, name), &exec, |b, &exec| {
                b.iter(|| code.cwe_brute(Mode::Factored, exec, BUDGET).unwrap())
            });
        }
    }
    g.finish();
}

fn hierarchy(c: &mut Criterion) {
    let mut g = c.benchmark_group("ghw_brute");
    g.sample_size(10);
    for (name, r) in [("example-3.5", 2), ("example-3.6", 3)] {
        let code = presets::find(name).unwrap().code().unwrap();
        for (label, exec) in MODES {
            g.bench_with_input(
                BenchmarkId::new(label, format!("{name}/r={r}")),
                &exec,
                |b, &exec| b.iter(|| ghw::ghw_brute(&code, r, exec, BUDGET, false).unwrap()),
            );
        }
    }
    g.finish();
}

fn descent(c: &mut Criterion) {
    let mut g = c.benchmark_group("descended_ghw");
    g.sample_size(10);
    let pre = presets::find("descent-7-2-1-1-n3").unwrap();
    let tower = pre.tower().unwrap();
    let code = DescendedCode::new(pre.code().unwrap(), DescentParams::new(&tower, 3).unwrap());
    for (label, exec) in MODES {
        g.bench_with_input(
            BenchmarkId::new(label, "q=49,N=3/r=3"),
            &exec,
            |b, &exec| b.iter(|| code.ghw_brute(3, exec, 1_000_000_000).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, cwe, hierarchy, descent);
criterion_main!(benches);
